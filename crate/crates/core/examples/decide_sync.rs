//! Decides every model, with and without turn bounds, and replays the witnesses.

use visync::format::parse_dvpda;
use visync::semantics::{check_witness, SyncModel};
use visync::sync::{decide_sync, Options};

const M1: &str = "dvpda
states 2
stack BOT X
calls a
ints b
rets d
c 0 a -> 1 push X
c 1 a -> 1 push X
i 0 b -> 1
i 1 b -> 0
r 0 d X -> 0
r 1 d X -> 0
r 0 d BOT -> 0
r 1 d BOT -> 1
";

fn main() -> Result<(), visync::Error> {
    let m = parse_dvpda(M1)?;
    let opts = Options::default();
    for model in SyncModel::ALL {
        for turns in [None, Some(0), Some(1), Some(2)] {
            let d = decide_sync(&m, model, turns, &opts)?;
            let bound = turns.map_or("-".to_string(), |n| n.to_string());
            let witness = d.witness.as_deref().map(|w| m.alphabet().render(w)).unwrap_or_default();
            if let Some(w) = &d.witness {
                assert!(check_witness(&m, w, model, turns)?);
            }
            println!("{model:<9} turns {bound}  answer {:<5} via {:<20} '{witness}'", d.answer, d.procedure);
        }
    }
    Ok(())
}
