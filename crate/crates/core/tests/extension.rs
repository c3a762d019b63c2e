mod common;

use common::*;
use highconn::coloring::check_respects;
use highconn::proof::ColoringBranch;
use highconn::{extend_316k, extend_4k, find_respecting_coloring, reduce_classes, Budget, ProofError};
use proptest::prelude::*;

fn extend(inst: &Instance, regime: Regime) -> Result<highconn::ExtensionOutcome, ProofError> {
    match regime {
        Regime::FourK => extend_4k(&inst.graph, &inst.template, &inst.partition, inst.k, inst.palette),
        Regime::ThreeSixteenth => extend_316k(&inst.graph, &inst.template, &inst.partition, inst.k, inst.palette),
    }
}

fn regime() -> impl Strategy<Value = Regime> {
    prop_oneof![Just(Regime::FourK), Just(Regime::ThreeSixteenth)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn random_instances_extend(seed in any::<u64>(), regime in regime()) {
        let inst = random_instance(seed, regime);
        let out = extend(&inst, regime).unwrap();
        prop_assert!(check_respects(&inst.graph, &inst.template, &out.coloring, inst.palette).is_ok());
        prop_assert!(out.trace.discrepancies.is_empty());
        // the exact solver agrees that the template extends
        let sat = find_respecting_coloring(&inst.graph, &inst.template, inst.palette, &Budget::default()).unwrap();
        prop_assert!(sat.is_some());
    }

    #[test]
    fn deep_instances_extend(seed in any::<u64>(), regime in regime()) {
        let inst = deep_instance(seed, regime);
        let out = extend(&inst, regime).unwrap();
        prop_assert!(check_respects(&inst.graph, &inst.template, &out.coloring, inst.palette).is_ok());
        prop_assert!(out.trace.discrepancies.is_empty());
        prop_assert!(out.trace.stages.iter().flat_map(|s| &s.checks).all(|c| c.passed));
    }

    #[test]
    fn reduction_excess_bounds(seed in any::<u64>()) {
        let inst = deep_instance(seed, Regime::ThreeSixteenth);
        let st = reduce_classes(&inst.graph, &inst.template, &inst.partition, inst.k, inst.palette).unwrap();
        for c in &st.classes {
            prop_assert!(c.excess < inst.k as i64);
        }
    }

    #[test]
    fn extension_is_deterministic(seed in any::<u64>()) {
        let inst = deep_instance(seed, Regime::ThreeSixteenth);
        let a = extend(&inst, Regime::ThreeSixteenth).unwrap();
        let b = extend(&inst, Regime::ThreeSixteenth).unwrap();
        prop_assert_eq!(a.coloring, b.coloring);
        prop_assert_eq!(a.branch, b.branch);
    }
}

#[test]
fn deep_sweep_reaches_three_branches() {
    let mut seen = std::collections::BTreeSet::new();
    for seed in 0..600 {
        let inst = deep_instance(seed, Regime::ThreeSixteenth);
        let out = extend(&inst, Regime::ThreeSixteenth).unwrap();
        seen.insert(format!("{:?}", out.branch));
    }
    for b in [ColoringBranch::Empty, ColoringBranch::Descending, ColoringBranch::TwoPhase] {
        assert!(seen.contains(&format!("{:?}", Some(b))), "{b:?} not reached");
    }
}

#[test]
fn tight_instances_use_tight_branch() {
    for seed in 100..110 {
        let inst = tight_instance(seed);
        let out = extend(&inst, Regime::ThreeSixteenth).unwrap();
        assert_eq!(out.branch, Some(ColoringBranch::TightDescending));
        assert!(check_respects(&inst.graph, &inst.template, &out.coloring, inst.palette).is_ok());
    }
}
