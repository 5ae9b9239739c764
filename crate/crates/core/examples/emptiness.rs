//! Language emptiness with both acceptance modes, with witness words.

use visync::emptiness::{check_emptiness, AcceptanceMode, Explicit};
use visync::format::parse_dvpda;

// accepts a^k b^k: state 1 is reached after the first b
const ANBN: &str = "dvpda
states 3
stack BOT A
calls a
rets b
c 0 a -> 0 push A
c 1 a -> 2 push A
c 2 a -> 2 push A
r 0 b A -> 1
r 1 b A -> 1
r 2 b A -> 2
r 0 b BOT -> 2
r 1 b BOT -> 2
r 2 b BOT -> 2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = parse_dvpda(ANBN)?;
    for mode in [AcceptanceMode::FinalState, AcceptanceMode::FinalStateEmptyStack] {
        let r = check_emptiness(&Explicit::new(&m, 0, [1]), mode, 10_000)?;
        let word = match &r.witness {
            Some(w) => format!("'{}'", m.alphabet().render(&w.expand(1_000)?)),
            None => "none".into(),
        };
        println!("{mode:?}: empty {}, witness {word}, summaries {}", r.is_empty(), r.summaries);
    }
    let r = check_emptiness(&Explicit::new(&m, 2, [1]), AcceptanceMode::FinalState, 10_000)?;
    println!("starting in the trap: empty {}", r.is_empty());
    Ok(())
}
