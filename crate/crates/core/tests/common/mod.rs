//! Instance pools and independent reference implementations shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use visync::automata::{Dfa, Dvpda, DvpdaBuilder, LetterKind, PartitionedAlphabet, StackAlphabet, StateId, BOTTOM};
use visync::emptiness::AcceptanceMode;
use visync::random::{random_dvpda, Shape};
use visync::transducer::Vst;

/// Every transition table over the given shape, visited in a fixed order.
fn product_of(ranges: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..r).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// All two-state DVPDAs with at most one letter per class (at least one
/// letter overall) and one or two non-bottom stack symbols.
pub fn two_state_family() -> Vec<Dvpda> {
    let mut out = Vec::new();
    for symbols in 1..=2usize {
        for classes in 1..8u8 {
            let (has_c, has_i, has_r) = (classes & 1 != 0, classes & 2 != 0, classes & 4 != 0);
            let mut alphabet = PartitionedAlphabet::new();
            if has_c {
                alphabet.push("a", LetterKind::Call);
            }
            if has_i {
                alphabet.push("b", LetterKind::Internal);
            }
            if has_r {
                alphabet.push("d", LetterKind::Return);
            }
            let mut stack = StackAlphabet::new("BOT");
            for s in 0..symbols {
                stack.push(["X", "Y"][s]);
            }
            let nsym = symbols + 1;
            // per state: call (target, symbol), internal target, return targets per symbol
            let mut ranges = Vec::new();
            for _ in 0..2 {
                if has_c {
                    ranges.push(2 * symbols);
                }
                if has_i {
                    ranges.push(2);
                }
                if has_r {
                    ranges.extend(std::iter::repeat_n(2, nsym));
                }
            }
            for choice in product_of(&ranges) {
                let mut b = DvpdaBuilder::new(2, alphabet.clone(), stack.clone());
                let mut it = choice.into_iter();
                for q in 0..2 {
                    let mut l = 0;
                    if has_c {
                        let x = it.next().unwrap();
                        b.call(q, l, x % 2, 1 + x / 2);
                        l += 1;
                    }
                    if has_i {
                        b.internal(q, l, it.next().unwrap());
                        l += 1;
                    }
                    if has_r {
                        for g in 0..nsym {
                            b.ret(q, l, g, it.next().unwrap());
                        }
                    }
                }
                out.push(b.build().unwrap());
            }
        }
    }
    out
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random DVPDA with up to `max_states` states and small alphabets.
pub fn random_small(rng: &mut StdRng, max_states: usize) -> Dvpda {
    let shape = Shape {
        states: rng.gen_range(1..=max_states),
        calls: rng.gen_range(0..=2),
        internals: rng.gen_range(0..=2),
        returns: rng.gen_range(0..=1),
        symbols: rng.gen_range(1..=2),
        very_visibly: rng.gen_bool(0.3),
    };
    random_dvpda(rng, shape)
}

/// Random instance satisfying `pred`, by rejection.
pub fn random_where(rng: &mut StdRng, max_states: usize, pred: impl Fn(&Dvpda) -> bool) -> Dvpda {
    loop {
        let m = random_small(rng, max_states);
        if pred(&m) {
            return m;
        }
    }
}

/// Is some word of length ≤ `depth` accepted? Breadth-first over explicit
/// configurations (state, stack) from the declared initial state.
pub fn accepts_within(m: &Dvpda, mode: AcceptanceMode, depth: usize) -> bool {
    let finals = m.finals().cloned().unwrap_or_default();
    let start = (m.initial().unwrap_or(0), vec![BOTTOM]);
    let ok =
        |(q, st): &(StateId, Vec<usize>)| finals.contains(q) && (mode == AcceptanceMode::FinalState || st.len() == 1);
    let mut seen = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    for d in 0..=depth {
        if frontier.iter().any(ok) {
            return true;
        }
        if d == depth {
            break;
        }
        let mut next = Vec::new();
        for (q, st) in &frontier {
            for l in 0..m.alphabet().len() {
                let mut st = st.clone();
                let q2 = match m.kind(l) {
                    LetterKind::Call => {
                        let (t, g) = m.call(*q, l);
                        st.push(g);
                        t
                    }
                    LetterKind::Internal => m.internal(*q, l),
                    LetterKind::Return => {
                        let top = *st.last().unwrap();
                        if top != BOTTOM {
                            st.pop();
                        }
                        m.ret(*q, l, top)
                    }
                };
                if seen.insert((q2, st.clone())) {
                    next.push((q2, st));
                }
            }
        }
        frontier = next;
    }
    false
}

/// Adds a fresh return letter leading from accepting states with an empty
/// stack into a fresh accepting sink, and everything else into a trap; the
/// result accepts by final state what `m` accepts with an empty stack.
pub fn with_end_marker(m: &Dvpda) -> Dvpda {
    let n = m.num_states();
    let (sink, trap) = (n, n + 1);
    let mut alphabet = m.alphabet().clone();
    let end = alphabet.push("end_marker", LetterKind::Return);
    let finals = m.finals().cloned().unwrap_or_default();
    let mut b = DvpdaBuilder::new(n + 2, alphabet, m.stack().clone());
    for l in 0..m.alphabet().len() {
        for q in 0..n + 2 {
            let inside = q < n;
            match m.kind(l) {
                LetterKind::Call => {
                    let (t, g) = if inside { m.call(q, l) } else { (trap, 1) };
                    b.call(q, l, t, g);
                }
                LetterKind::Internal => {
                    b.internal(q, l, if inside { m.internal(q, l) } else { trap });
                }
                LetterKind::Return => {
                    for g in 0..m.stack().len() {
                        b.ret(q, l, g, if inside { m.ret(q, l, g) } else { trap });
                    }
                }
            }
        }
    }
    for q in 0..n + 2 {
        for g in 0..m.stack().len() {
            let t = if g == BOTTOM && finals.contains(&q) { sink } else { trap };
            b.ret(q, end, g, t);
        }
    }
    b.initial(m.initial().unwrap_or(0)).finals([sink]);
    b.build().unwrap()
}

/// Definitional trace synchronization: is there a word of length ≤ `depth`
/// after which all runs agree on state and produced output?
pub fn trace_sync_by_simulation(t: &Vst, depth: usize) -> Option<Vec<usize>> {
    let n = t.num_states();
    let k = t.inputs().len();
    let mut queue = VecDeque::from([Vec::<usize>::new()]);
    while let Some(w) = queue.pop_front() {
        let runs: Vec<(StateId, Vec<usize>)> = (0..n).map(|q| simulate(t, q, &w)).collect();
        if runs.windows(2).all(|p| p[0] == p[1]) {
            return Some(w);
        }
        if w.len() < depth {
            for l in 0..k {
                let mut w2 = w.clone();
                w2.push(l);
                queue.push_back(w2);
            }
        }
    }
    None
}

fn simulate(t: &Vst, mut q: StateId, w: &[usize]) -> (StateId, Vec<usize>) {
    let mut out = Vec::new();
    for &l in w {
        let (next, emitted) = t.step(q, l);
        out.extend_from_slice(emitted);
        q = next;
    }
    (q, out)
}

/// All two-state visibly transducers over `letters` inputs and outputs
/// `X`, `Y` with output words of length at most two.
pub fn two_state_transducers(letters: usize) -> Vec<Vst> {
    // per letter: targets of both states, output length, both output words
    let mut per_letter = Vec::new();
    for t0 in 0..2 {
        for t1 in 0..2 {
            for len in 0..=2u32 {
                let words: Vec<Vec<usize>> = product_of(&vec![2; len as usize]);
                for w0 in &words {
                    for w1 in &words {
                        per_letter.push([(t0, w0.clone()), (t1, w1.clone())]);
                    }
                }
            }
        }
    }
    let names: Vec<String> = (0..letters).map(|i| ["a", "b"][i].to_string()).collect();
    product_of(&vec![per_letter.len(); letters])
        .into_iter()
        .map(|pick| {
            Vst::from_fn(2, names.clone(), vec!["X".into(), "Y".into()], |q, l| per_letter[pick[l]][q].clone()).unwrap()
        })
        .collect()
}

/// DFAs with up to `max_states` states and up to `max_letters` letters,
/// one per letter renaming class (letter tables in non-decreasing order).
pub fn small_dfas(max_states: usize, max_letters: usize) -> Vec<Dfa> {
    let mut out = Vec::new();
    for n in 1..=max_states {
        let fns = product_of(&vec![n; n]);
        for k in 1..=max_letters {
            for pick in product_of(&vec![fns.len(); k]) {
                if pick.windows(2).any(|w| w[0] > w[1]) {
                    continue;
                }
                let names = (0..k).map(|i| ["x", "y"][i].to_string()).collect();
                out.push(Dfa::from_fn(n, names, |q, l| fns[pick[l]][q]).unwrap());
            }
        }
    }
    out
}

/// All non-empty subsets of `0..n`.
pub fn subsets(n: usize) -> Vec<Vec<StateId>> {
    (1..1u32 << n).map(|m| (0..n).filter(|q| m >> q & 1 == 1).collect()).collect()
}
