mod common;

use proptest::prelude::*;
use visync::automata::{classify, Dfa};
use visync::format::{parse_dfa, write_dfa};
use visync::random::{random_dfa, random_subset};
use visync::reductions::*;
use visync::semantics::SyncModel;
use visync::sync::{decide_sync, Options};
use visync::Error;

fn instance(seed: u64) -> DfaSubsetInstance {
    let mut rng = common::rng(seed);
    let n = 1 + (seed % 4) as usize;
    let dfa = random_dfa(&mut rng, n, 1 + (seed / 4 % 2) as usize);
    let subset = random_subset(&mut rng, n);
    DfaSubsetInstance::new(dfa, subset).unwrap()
}

fn decide(m: &visync::automata::Dvpda, model: SyncModel, turns: Option<usize>) -> bool {
    decide_sync(m, model, turns, &Options::default()).unwrap().answer
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn into_subset_as_same_stack(seed in any::<u64>()) {
        let inst = instance(seed);
        let m = reduce_into_subset_to_same(&inst).unwrap();
        let c = classify(&m);
        prop_assert!(c.has_call && !c.has_return);
        prop_assert_eq!(decide(&m, SyncModel::Same, None), solve_into_subset(&inst).unwrap().is_some());
    }

    #[test]
    fn from_subset_as_arbitrary_stack(seed in any::<u64>()) {
        let inst = instance(seed);
        let m = reduce_from_subset_to_arb(&inst).unwrap();
        prop_assert!(classify(&m).has_return);
        prop_assert_eq!(decide(&m, SyncModel::Arbitrary, None), solve_from_subset(&inst).unwrap().is_some());
    }

    #[test]
    fn into_subset_as_one_turn_counter(seed in any::<u64>()) {
        let inst = instance(seed);
        let m = reduce_into_subset_to_nturn_dvca(&inst, 1).unwrap();
        let c = classify(&m);
        prop_assert!(c.is_counter && c.is_very_visibly);
        prop_assert_eq!(m.num_states(), inst.dfa().num_states() + 3);
        let into = solve_into_subset(&inst).unwrap().is_some();
        for model in SyncModel::ALL {
            prop_assert_eq!(decide(&m, model, Some(1)), into, "{}", model);
        }
    }

    #[test]
    fn from_subset_as_zero_turn_counter(seed in any::<u64>()) {
        let inst = instance(seed);
        let m = reduce_from_subset_to_zero_turn(&inst).unwrap();
        prop_assert!(classify(&m).is_counter);
        let from = solve_from_subset(&inst).unwrap().is_some();
        for model in [SyncModel::Same, SyncModel::Arbitrary] {
            prop_assert_eq!(decide(&m, model, Some(0)), from, "{}", model);
        }
    }

    #[test]
    fn dfa_text_round_trips(seed in any::<u64>()) {
        let inst = instance(seed);
        let text = write_dfa(inst.dfa(), Some(inst.subset()));
        let (dfa, subset) = parse_dfa(&text).unwrap();
        prop_assert_eq!(&dfa, inst.dfa());
        prop_assert_eq!(subset.as_deref(), Some(inst.subset()));
    }
}

#[test]
fn fresh_letter_names_are_enforced() {
    let dfa = Dfa::from_fn(2, vec!["a".into(), "r".into()], |q, _| q).unwrap();
    let inst = DfaSubsetInstance::new(dfa, [0]).unwrap();
    assert!(matches!(reduce_into_subset_to_same(&inst), Err(Error::NameCollision(l)) if l == "a"));
    assert!(matches!(reduce_from_subset_to_arb(&inst), Err(Error::NameCollision(l)) if l == "r"));
}

#[test]
fn subsets_must_be_non_empty_and_in_range() {
    let dfa = Dfa::from_fn(2, vec!["x".into()], |q, _| q).unwrap();
    assert!(DfaSubsetInstance::new(dfa.clone(), []).is_err());
    assert!(DfaSubsetInstance::new(dfa, [2]).is_err());
}

#[test]
fn zero_turn_bound_is_rejected_for_the_counter_chain() {
    let inst = DfaSubsetInstance::new(visync::automata::cerny(3), [0]).unwrap();
    assert!(reduce_into_subset_to_nturn_dvca(&inst, 0).is_err());
}
