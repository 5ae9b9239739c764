//! Random instances for testing and experiments.

use rand::Rng;

use crate::automata::{Dfa, Dvpda, DvpdaBuilder, LetterKind, PartitionedAlphabet, StackAlphabet, StateId};
use crate::transducer::Vst;

/// Size parameters of a random DVPDA.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub states: usize,
    pub calls: usize,
    pub internals: usize,
    pub returns: usize,
    /// Non-bottom stack symbols (at least one is used when there are calls).
    pub symbols: usize,
    /// Make every call letter push one symbol regardless of the state.
    pub very_visibly: bool,
}

/// Letters are named `c0…`, `i0…`, `r0…`; stack symbols `X0…`.
pub fn random_dvpda<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> Dvpda {
    let n = shape.states.max(1);
    let mut alphabet = PartitionedAlphabet::new();
    for (count, prefix, kind) in [
        (shape.calls, "c", LetterKind::Call),
        (shape.internals, "i", LetterKind::Internal),
        (shape.returns, "r", LetterKind::Return),
    ] {
        for i in 0..count {
            alphabet.push(format!("{prefix}{i}"), kind);
        }
    }
    let mut stack = StackAlphabet::new("BOT");
    for i in 0..shape.symbols.max(1) {
        stack.push(format!("X{i}"));
    }
    let nsym = stack.len();
    let mut b = DvpdaBuilder::new(n, alphabet.clone(), stack);
    for l in 0..alphabet.len() {
        let fixed = rng.gen_range(1..nsym);
        for q in 0..n {
            match alphabet.kind(l) {
                LetterKind::Call => {
                    let g = if shape.very_visibly { fixed } else { rng.gen_range(1..nsym) };
                    b.call(q, l, rng.gen_range(0..n), g);
                }
                LetterKind::Internal => {
                    b.internal(q, l, rng.gen_range(0..n));
                }
                LetterKind::Return => {
                    for g in 0..nsym {
                        b.ret(q, l, g, rng.gen_range(0..n));
                    }
                }
            }
        }
    }
    b.build().expect("random tables are total")
}

/// Random initial state and final states (each state final with probability 1/3).
pub fn with_random_acceptance<R: Rng + ?Sized>(rng: &mut R, m: Dvpda) -> Dvpda {
    let n = m.num_states();
    let init = rng.gen_range(0..n);
    let finals = (0..n).filter(|_| rng.gen_ratio(1, 3)).collect();
    m.with_initial(Some(init)).with_finals(Some(finals))
}

/// Letters are named `x0…`.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, states: usize, letters: usize) -> Dfa {
    let names = (0..letters).map(|i| format!("x{i}")).collect();
    let table: Vec<Vec<StateId>> =
        (0..states).map(|_| (0..letters).map(|_| rng.gen_range(0..states)).collect()).collect();
    Dfa::from_fn(states, names, |q, l| table[q][l]).expect("random table is total")
}

/// Random non-empty subset of `0..n`.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<StateId> {
    loop {
        let s: Vec<StateId> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// Random visibly transducer with inputs `a0…` and outputs `Y0…`; each
/// letter emits words of one random length up to `max_len`.
pub fn random_vst<R: Rng + ?Sized>(
    rng: &mut R,
    states: usize,
    inputs: usize,
    outputs: usize,
    max_len: usize,
    very_visibly: bool,
) -> Vst {
    let outputs = outputs.max(1);
    let in_names = (0..inputs).map(|i| format!("a{i}")).collect();
    let out_names = (0..outputs).map(|i| format!("Y{i}")).collect();
    let word = |rng: &mut R, len: usize| -> Vec<usize> { (0..len).map(|_| rng.gen_range(0..outputs)).collect() };
    // emitted[l][q]
    let mut emitted = Vec::with_capacity(inputs);
    for _ in 0..inputs {
        let len = rng.gen_range(0..=max_len);
        let shared = word(rng, len);
        let per_state: Vec<Vec<usize>> =
            (0..states).map(|_| if very_visibly { shared.clone() } else { word(rng, len) }).collect();
        emitted.push(per_state);
    }
    let targets: Vec<Vec<StateId>> =
        (0..states).map(|_| (0..inputs).map(|_| rng.gen_range(0..states)).collect()).collect();
    Vst::from_fn(states, in_names, out_names, |q, l| (targets[q][l], emitted[l][q].clone()))
        .expect("random transducer is total")
}
