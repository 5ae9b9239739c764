mod common;

use proptest::prelude::*;
use visync::automata::{classify, Dvpda, BOTTOM};
use visync::format::{parse_dvpda, parse_vst, write_dvpda, write_vst};
use visync::random::random_vst;
use visync::semantics::{check_witness, is_synchronized, simulate_all, SyncModel};
use visync::sync::{decide_sync, Options};

fn instance(seed: u64, max_states: usize) -> Dvpda {
    common::random_small(&mut common::rng(seed), max_states)
}

fn word_for(m: &Dvpda, raw: &[usize]) -> Vec<usize> {
    let k = m.alphabet().len();
    raw.iter().map(|&x| x % k.max(1)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn runs_share_height_and_keep_bottom(seed in any::<u64>(), raw in prop::collection::vec(0usize..8, 0..24)) {
        let m = instance(seed, 5);
        prop_assume!(!m.alphabet().is_empty());
        let w = word_for(&m, &raw);
        for len in 0..=w.len() {
            let g = simulate_all(&m, &w[..len]).unwrap();
            let h = g.per_start[0].height();
            for c in &g.per_start {
                prop_assert_eq!(c.height(), h);
                prop_assert_eq!(c.stack[0], BOTTOM);
                prop_assert!(c.stack[1..].iter().all(|&s| s != BOTTOM));
            }
        }
    }

    #[test]
    fn model_chain_on_words(seed in any::<u64>(), raw in prop::collection::vec(0usize..8, 0..16)) {
        let m = instance(seed, 4);
        prop_assume!(!m.alphabet().is_empty());
        let g = simulate_all(&m, &word_for(&m, &raw)).unwrap();
        let [e, s, a] = SyncModel::ALL.map(|model| is_synchronized(&g, model));
        prop_assert!(!e || s);
        prop_assert!(!s || a);
    }

    #[test]
    fn turn_bounds_are_monotone_on_words(seed in any::<u64>(), raw in prop::collection::vec(0usize..8, 0..16)) {
        let m = instance(seed, 4);
        prop_assume!(!m.alphabet().is_empty());
        let w = word_for(&m, &raw);
        for model in SyncModel::ALL {
            let unbounded = check_witness(&m, &w, model, None).unwrap();
            for n in 0..4 {
                if check_witness(&m, &w, model, Some(n)).unwrap() {
                    prop_assert!(check_witness(&m, &w, model, Some(n + 1)).unwrap());
                    prop_assert!(unbounded);
                }
            }
        }
    }

    #[test]
    fn renaming_states_preserves_class_and_answers(seed in any::<u64>(), rot in 0usize..5) {
        let m = instance(seed, 4);
        let n = m.num_states();
        let perm: Vec<usize> = (0..n).map(|q| (q + rot) % n).collect();
        let p = m.permute_states(&perm);
        prop_assert_eq!(classify(&m), classify(&p));
        for model in SyncModel::ALL {
            for turns in [None, Some(0), Some(1)] {
                let a = decide_sync(&m, model, turns, &Options::default()).unwrap().answer;
                let b = decide_sync(&p, model, turns, &Options::default()).unwrap().answer;
                prop_assert_eq!(a, b, "{} {:?}", model, turns);
            }
        }
    }

    #[test]
    fn decisions_come_with_sound_witnesses(seed in any::<u64>()) {
        let m = instance(seed, 5);
        for model in SyncModel::ALL {
            for turns in [None, Some(0), Some(1), Some(2)] {
                let d = decide_sync(&m, model, turns, &Options::default()).unwrap();
                if let Some(w) = &d.witness {
                    prop_assert!(d.answer);
                    prop_assert!(check_witness(&m, w, model, turns).unwrap(), "{} via {}", model, d.procedure);
                }
            }
        }
    }

    #[test]
    fn automaton_text_round_trips(seed in any::<u64>()) {
        let m = instance(seed, 5);
        prop_assert_eq!(parse_dvpda(&write_dvpda(&m)).unwrap(), m);
    }

    #[test]
    fn transducer_text_round_trips(seed in any::<u64>(), vv in any::<bool>()) {
        let t = random_vst(&mut common::rng(seed), 3, 2, 2, 3, vv);
        prop_assert_eq!(parse_vst(&write_vst(&t)).unwrap(), t);
    }
}
