//! Sub-class membership of two small automata.

use visync::automata::{classify, BOTTOM};
use visync::{DvpdaBuilder, LetterKind, PartitionedAlphabet, StackAlphabet};

fn build(per_state_push: bool) -> visync::Dvpda {
    let alphabet = PartitionedAlphabet::from_letters([("a", LetterKind::Call), ("d", LetterKind::Return)]);
    let mut stack = StackAlphabet::new("BOT");
    let x = stack.push("X");
    let y = stack.push("Y");
    let mut b = DvpdaBuilder::new(2, alphabet, stack);
    b.call(0, 0, 1, x).call(1, 0, 0, if per_state_push { y } else { x });
    for q in 0..2 {
        for g in [BOTTOM, x, y] {
            b.ret(q, 1, g, 0);
        }
    }
    b.build().expect("complete transition table")
}

fn main() {
    for (name, m) in [("one push symbol", build(false)), ("push depends on state", build(true))] {
        let c = classify(&m);
        println!(
            "{name}: very-visibly {}, counter {}, calls {}, returns {}",
            c.is_very_visibly, c.is_counter, c.has_call, c.has_return
        );
    }
}
