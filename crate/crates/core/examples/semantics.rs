//! Runs one word from every state and reports synchronization per model.

use visync::format::parse_dvpda;
use visync::semantics::{check_witness, simulate_all, SyncModel};

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
    for text in ["", "a", "a d", "b a", "a a d d"] {
        let w = m.alphabet().parse_word(text)?;
        let g = simulate_all(&m, &w)?;
        let runs: Vec<String> = g
            .per_start
            .iter()
            .map(|c| {
                let stack: Vec<&str> = c.stack.iter().map(|&s| m.stack().name(s)).collect();
                format!("({}, {})", c.state, stack.join(" "))
            })
            .collect();
        let synced: Vec<String> = SyncModel::ALL
            .iter()
            .map(|&model| format!("{model}={}", check_witness(&m, &w, model, None).unwrap_or(false)))
            .collect();
        println!(
            "{:<9} runs {}  turns {}  {}",
            format!("'{text}'"),
            runs.join(" "),
            g.turns_so_far(),
            synced.join(" ")
        );
    }
    Ok(())
}
