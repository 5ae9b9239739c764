//! Shortest synchronizing words of the Černý automata found by brute force.

use visync::automata::{cerny, embed_dfa};
use visync::oracle::{oracle_search, Outcome, DEFAULT_BUDGET};
use visync::semantics::SyncModel;

fn main() {
    for n in 2..=5 {
        let m = embed_dfa(&cerny(n));
        let r = oracle_search(&m, SyncModel::Empty, None, 20, DEFAULT_BUDGET);
        match r.outcome {
            Outcome::Found(w) => println!(
                "C{n}: length {} (expected {}), '{}', {} configurations",
                w.len(),
                (n - 1) * (n - 1),
                m.alphabet().render(&w),
                r.explored
            ),
            other => println!("C{n}: {other:?}"),
        }
    }
}
