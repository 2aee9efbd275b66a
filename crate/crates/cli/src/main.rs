//! `ntss`: simulate, check, reduce and solve non-monotone target set
//! instances, and generate instances from restricted CNF formulas.
//!
//! Exit codes: 0 on success, 1 when an input is rejected (or a consistency
//! check fails), 2 on usage errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ntss_core::brute::{cross_validate, cross_validate_random, min_target_bruteforce};
use ntss_core::characterize::{classify, extract_conditions, TargetSetDecider};
use ntss_core::dp::solve;
use ntss_core::hardness::{generate, parse_dimacs};
use ntss_core::kernel::kernelize;
use ntss_core::sim::{run, RunOptions};
use ntss_core::td::parse_td;
use ntss_core::{
    format_vertex_set, is_target_set, parse_instance, parse_vertex_set, serialize_instance,
    ActiveSet, Instance, VertexSet,
};

#[derive(Parser)]
#[command(
    name = "ntss",
    version,
    about = "Exact tools for non-monotone target set selection"
)]
struct Cli {
    /// Worker threads for the parallel solvers; output does not depend on it
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the activation process from a seed set
    Simulate {
        #[arg(long)]
        instance: PathBuf,
        /// Comma-separated vertex ids, e.g. `1,4`; `""` is the empty set
        #[arg(long)]
        seed: String,
        /// Print every state, one per line (`-` for the empty set)
        #[arg(long)]
        trace: bool,
        /// Abort after storing this many distinct states
        #[arg(long, value_name = "N")]
        max_states: Option<usize>,
    },
    /// Decide whether a seed set is a target set
    Check {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        seed: String,
        #[arg(long, value_enum, default_value_t = CheckMethod::Both)]
        method: CheckMethod,
    },
    /// Print the conditions a target set must meet, one per line
    Conditions {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Kernelize: print the forced vertices and kernel statistics
    Reduce {
        #[arg(long)]
        instance: PathBuf,
        /// Write the kernel instance to this file
        #[arg(long, value_name = "FILE")]
        emit_kernel: Option<PathBuf>,
    },
    /// Minimum target set
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveMethod::Tw)]
        method: SolveMethod,
        /// Tree decomposition in PACE `.td` format (tw only)
        #[arg(long, value_name = "FILE")]
        td: Option<PathBuf>,
        /// Also print the witness for the tw method
        #[arg(long)]
        emit_witness: bool,
    },
    /// Build an instance from a restricted DIMACS CNF
    Generate {
        #[arg(long, value_name = "FILE")]
        cnf: PathBuf,
        /// Minimum distance between degree-3 vertices
        #[arg(long, value_name = "D")]
        distance: usize,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Write `<role> <name> <id>` lines to this file
        #[arg(long, value_name = "FILE")]
        labels: Option<PathBuf>,
    },
    /// Compare simulation with the condition-based decision on every subset
    CrossValidate {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        instance: Option<PathBuf>,
        /// Use seeded pseudo-random instances instead of a file
        #[arg(long, requires_all = ["n", "trials", "seed"])]
        random: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMethod {
    Sim,
    Conditions,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    Brute,
    Tw,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl ToString) -> Self {
        Failure {
            code: 1,
            msg: msg.to_string(),
        }
    }

    fn usage(msg: impl ToString) -> Self {
        Failure {
            code: 2,
            msg: msg.to_string(),
        }
    }
}

impl From<ntss_core::Error> for Failure {
    fn from(e: ntss_core::Error) -> Self {
        Failure::input(e)
    }
}

type Outcome = Result<String, (String, Failure)>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn ids(set: &VertexSet) -> String {
    if set.is_empty() {
        "-".to_string()
    } else {
        format_vertex_set(set)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(command: Command) -> Outcome {
    let mut out = String::new();
    let result = execute_into(command, &mut out);
    result.map(|()| out.clone()).map_err(|f| (out, f))
}

fn execute_into(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Simulate {
            instance,
            seed,
            trace,
            max_states,
        } => {
            let inst = load(&instance)?;
            let x = parse_vertex_set(&seed, inst.n())?;
            let opts = RunOptions {
                record_trace: trace,
                max_states,
            };
            let o = run(&inst, &ActiveSet::from_ids(inst.n(), &x), opts)?;
            for state in o.trace.iter().flatten() {
                writeln!(out, "{}", ids(&state.to_set())).unwrap();
            }
            writeln!(out, "reached-all: {}", yes_no(o.reached_all)).unwrap();
            if let Some(t0) = o.t0 {
                writeln!(out, "t0: {t0}").unwrap();
            }
            writeln!(out, "cycle-start: {}", o.cycle_start).unwrap();
            writeln!(out, "cycle-length: {}", o.cycle_length).unwrap();
            writeln!(out, "states: {}", o.states).unwrap();
        }
        Command::Check {
            instance,
            seed,
            method,
        } => {
            let inst = load(&instance)?;
            let x = ActiveSet::from_ids(inst.n(), &parse_vertex_set(&seed, inst.n())?);
            let sim = matches!(method, CheckMethod::Sim | CheckMethod::Both)
                .then(|| is_target_set(&inst, &x));
            let cond = matches!(method, CheckMethod::Conditions | CheckMethod::Both)
                .then(|| TargetSetDecider::new(&inst).decide(&x));
            match (sim, cond) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Failure::input(format!(
                        "MISMATCH simulation {} conditions {}",
                        yes_no(a),
                        yes_no(b)
                    )));
                }
                (Some(a), _) | (None, Some(a)) => {
                    writeln!(out, "target-set: {}", yes_no(a)).unwrap();
                }
                (None, None) => unreachable!(),
            }
        }
        Command::Conditions { instance } => {
            let inst = load(&instance)?;
            let kz = kernelize(&inst);
            let cls = classify(&kz.kernel)?;
            let cond = extract_conditions(&cls, kz.kernel.graph()).lift(&kz.vertex_map);
            if !kz.forced.is_empty() {
                writeln!(out, "forced {}", ids(&kz.forced)).unwrap();
            }
            write!(out, "{cond}").unwrap();
        }
        Command::Reduce {
            instance,
            emit_kernel,
        } => {
            let inst = load(&instance)?;
            let kz = kernelize(&inst);
            writeln!(out, "forced {}", ids(&kz.forced)).unwrap();
            writeln!(out, "rounds {}", kz.rounds.len()).unwrap();
            writeln!(out, "kernel-vertices {}", kz.kernel.n()).unwrap();
            writeln!(out, "kernel-edges {}", kz.kernel.graph().m()).unwrap();
            let map_text = if kz.vertex_map.is_empty() {
                "-".to_string()
            } else {
                format_vertex_set(&kz.vertex_map)
            };
            writeln!(out, "vertex-map {map_text}").unwrap();
            if let Some(path) = emit_kernel {
                write(&path, &serialize_instance(&kz.kernel))?;
            }
        }
        Command::Solve {
            instance,
            method,
            td,
            emit_witness,
        } => {
            let inst = load(&instance)?;
            match method {
                SolveMethod::Brute => {
                    if td.is_some() {
                        return Err(Failure::usage("--td applies to --method tw only"));
                    }
                    let r = min_target_bruteforce(&inst, None)?;
                    writeln!(out, "minimum {}", r.min_size).unwrap();
                    writeln!(out, "witness {}", ids(&r.witness)).unwrap();
                }
                SolveMethod::Tw => {
                    let td = match td {
                        Some(path) => Some(
                            parse_td(&read(&path)?, inst.graph())
                                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
                        ),
                        None => None,
                    };
                    let sol = solve(&inst, td.as_ref())?;
                    writeln!(out, "minimum {}", sol.min_size).unwrap();
                    if emit_witness {
                        writeln!(out, "witness {}", ids(&sol.witness)).unwrap();
                    }
                }
            }
        }
        Command::Generate {
            cnf,
            distance,
            out: out_path,
            labels,
        } => {
            let formula = parse_dimacs(&read(&cnf)?)
                .map_err(|e| Failure::input(format!("{}: {e}", cnf.display())))?;
            if distance == 0 {
                return Err(Failure::usage("--distance must be positive"));
            }
            let gen = generate(&formula, distance)?;
            write(&out_path, &serialize_instance(&gen.instance))?;
            if let Some(path) = labels {
                write(&path, &gen.labels_text())?;
            }
            writeln!(out, "vertices {}", gen.instance.n()).unwrap();
            writeln!(out, "edges {}", gen.instance.graph().m()).unwrap();
            writeln!(out, "k {}", gen.k).unwrap();
        }
        Command::CrossValidate {
            instance,
            random,
            n,
            trials,
            seed,
        } => {
            if random {
                let (n, trials, seed) = (n.unwrap(), trials.unwrap(), seed.unwrap());
                let r = cross_validate_random(n, trials, seed)?;
                match r.failure {
                    None => {
                        writeln!(out, "consistent").unwrap();
                        writeln!(out, "trials {} subsets {}", r.trials, r.subsets).unwrap();
                    }
                    Some((trial, inst, m)) => {
                        writeln!(
                            out,
                            "MISMATCH trial {trial} set {} simulation {} conditions {}",
                            ids(&m.set),
                            yes_no(m.simulation),
                            yes_no(m.conditions)
                        )
                        .unwrap();
                        out.push_str(&serialize_instance(&inst));
                        return Err(Failure::input("simulation and conditions disagree"));
                    }
                }
            } else {
                if n.is_some() || trials.is_some() || seed.is_some() {
                    return Err(Failure::usage("--n, --trials and --seed need --random"));
                }
                let inst = load(&instance.expect("clap enforces --instance"))?;
                let r = cross_validate(&inst)?;
                match r.mismatch {
                    None => {
                        writeln!(out, "consistent").unwrap();
                        writeln!(out, "subsets {} target-sets {}", r.subsets, r.target_sets)
                            .unwrap();
                    }
                    Some(m) => {
                        writeln!(
                            out,
                            "MISMATCH set {} simulation {} conditions {}",
                            ids(&m.set),
                            yes_no(m.simulation),
                            yes_no(m.conditions)
                        )
                        .unwrap();
                        return Err(Failure::input("simulation and conditions disagree"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match execute(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err((text, failure)) => {
            print!("{text}");
            eprintln!("error: {}", failure.msg);
            ExitCode::from(failure.code)
        }
    }
}
