//! Turns DFA subset problems into DVPDA synchronization instances and
//! compares answers with the brute-force subset solvers.

use visync::automata::{cerny, Dfa};
use visync::reductions::*;
use visync::semantics::SyncModel;
use visync::sync::{decide_sync, Options};

fn main() -> Result<(), visync::Error> {
    let opts = Options::default();
    let rename = |a: &Dfa| Dfa::from_fn(a.num_states(), vec!["x".into(), "y".into()], |q, l| a.step(q, l)).unwrap();
    let permutation = Dfa::from_fn(3, vec!["x".into(), "y".into()], |q, l| (q + l + 1) % 3).unwrap();
    for (name, dfa) in [("cerny3", rename(&cerny(3))), ("cyclic3", permutation)] {
        let inst = DfaSubsetInstance::new(dfa, [0, 1])?;
        let into = solve_into_subset(&inst)?.is_some();
        let from = solve_from_subset(&inst)?.is_some();
        let cases = [
            ("into-subset / same", reduce_into_subset_to_same(&inst)?, SyncModel::Same, None, into),
            ("from-subset / arbitrary", reduce_from_subset_to_arb(&inst)?, SyncModel::Arbitrary, None, from),
            ("into-subset / 3 turns", reduce_into_subset_to_nturn_dvca(&inst, 3)?, SyncModel::Same, Some(3), into),
            ("from-subset / 0 turns", reduce_from_subset_to_zero_turn(&inst)?, SyncModel::Same, Some(0), from),
        ];
        for (label, m, model, turns, expected) in cases {
            let d = decide_sync(&m, model, turns, &opts)?;
            println!("{name} {label:<24} states {:<2} answer {:<5} expected {expected}", m.num_states(), d.answer);
        }
    }
    Ok(())
}
