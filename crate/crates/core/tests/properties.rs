use ntss_core::characterize::{classify, extract_conditions, satisfies};
use ntss_core::kernel::kernelize;
use ntss_core::nice::make_nice;
use ntss_core::random::demote_saturated_edges;
use ntss_core::sim::{run, step, RunOptions};
use ntss_core::td::{heuristic_td, parse_td, write_td};
use ntss_core::{
    is_target_set, parse_instance, serialize_instance, ActiveSet, Graph, Instance, ThresholdMap,
};
use proptest::prelude::*;

/// Graph on up to `max_n` vertices with thresholds drawn from {0, 1, deg}.
fn instances(max_n: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), pairs),
                proptest::collection::vec(0..3u8, n),
            )
        })
        .prop_map(|(n, keep, choice)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 1..=n {
                for v in u + 1..=n {
                    if keep[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let tau = g
                .vertices()
                .map(|u| match (choice[u - 1], g.degree(u)) {
                    (_, 0) | (0, _) => 0,
                    (1, _) => 1,
                    (_, d) => d,
                })
                .collect();
            Instance::new(g, ThresholdMap::new(tau)).unwrap()
        })
}

fn with_subset(max_n: usize) -> impl Strategy<Value = (Instance, ActiveSet)> {
    instances(max_n).prop_flat_map(|inst| {
        let n = inst.n();
        (Just(inst), proptest::collection::vec(any::<bool>(), n)).prop_map(|(inst, bits)| {
            let mut x = ActiveSet::empty(inst.n());
            for (i, b) in bits.iter().enumerate() {
                if *b {
                    x.insert(i + 1);
                }
            }
            (inst, x)
        })
    })
}

proptest! {
    #[test]
    fn serialization_round_trips(inst in instances(12)) {
        prop_assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn all_active_is_a_fixed_point(inst in instances(12)) {
        let all = ActiveSet::full(inst.n());
        prop_assert_eq!(step(&inst, &all), all);
    }

    #[test]
    fn runs_are_eventually_periodic((inst, x) in with_subset(10)) {
        let o = run(&inst, &x, RunOptions::default()).unwrap();
        prop_assert!(o.cycle_length >= 1);
        prop_assert!(o.cycle_start + o.cycle_length <= 1 << inst.n());
        prop_assert_eq!(o.reached_all, o.t0.is_some());
    }

    #[test]
    fn kernelization_is_idempotent(inst in instances(12)) {
        let kz = kernelize(&inst);
        prop_assert!(kz.kernel.saturated_edge().is_none());
        prop_assert!(kernelize(&kz.kernel).forced.is_empty());
        prop_assert_eq!(kz.forced.len() + kz.kernel.n(), inst.n());
    }

    /// On a kernel, target sets are closed under adding vertices.
    #[test]
    fn kernel_target_sets_are_upward_closed((inst, x) in with_subset(9)) {
        let inst = demote_saturated_edges(&inst);
        let cond = extract_conditions(&classify(&inst).unwrap(), inst.graph());
        let holds = satisfies(&cond, &x);
        prop_assert_eq!(holds, is_target_set(&inst, &x));
        if holds {
            for u in inst.graph().vertices() {
                let mut y = x.clone();
                y.insert(u);
                prop_assert!(satisfies(&cond, &y));
            }
        }
    }

    #[test]
    fn heuristic_decompositions_are_valid(inst in instances(14)) {
        let g = inst.graph();
        let td = heuristic_td(g);
        td.validate(g).unwrap();
        let nice = make_nice(&td);
        nice.check().unwrap();
        prop_assert_eq!(nice.width(), td.width());
        let again = parse_td(&write_td(&td, g.n()), g).unwrap();
        prop_assert_eq!(again, td);
    }
}
