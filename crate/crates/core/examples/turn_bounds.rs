//! Random automata whose answer depends on the turn bound.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use visync::random::{random_dvpda, Shape};
use visync::semantics::SyncModel;
use visync::sync::{decide_sync, Options};

fn main() -> Result<(), visync::Error> {
    let mut rng = StdRng::seed_from_u64(7);
    let opts = Options::default();
    let mut shown = 0;
    while shown < 3 {
        let shape =
            Shape { states: rng.gen_range(2..=4), calls: 1, internals: 1, returns: 1, symbols: 1, very_visibly: false };
        let m = random_dvpda(&mut rng, shape);
        let answers: Vec<bool> = (0..4)
            .map(|n| decide_sync(&m, SyncModel::Arbitrary, Some(n), &opts).map(|d| d.answer))
            .collect::<Result<_, _>>()?;
        if answers.iter().all(|&a| a == answers[0]) {
            continue;
        }
        shown += 1;
        let unbounded = decide_sync(&m, SyncModel::Arbitrary, None, &opts)?;
        let witness = unbounded.witness.as_deref().map(|w| m.alphabet().render(w)).unwrap_or_default();
        println!("{} states: answers for 0..=3 turns {answers:?}, unbounded witness '{witness}'", m.num_states());
    }
    Ok(())
}
