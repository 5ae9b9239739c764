//! Visibly sequential transducers and trace synchronization.
//!
//! A word trace-synchronizes a transducer if, from every start state, it
//! ends in the same state having produced the same output.

use std::collections::BTreeMap;

use crate::automata::{Dfa, Dvpda, DvpdaBuilder, LetterId, LetterKind, PartitionedAlphabet, StackAlphabet, StateId};
use crate::semantics::SyncModel;
use crate::sync::{decide_sync, dfa_pair_sync, Decision, Options};
use crate::Error;

pub type OutputId = usize;

/// Target state and emitted word.
pub type Transition = (StateId, Vec<OutputId>);

/// Complete sequential transducer without initial or final states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vst {
    inputs: Vec<String>,
    outputs: Vec<String>,
    /// `delta[q][l]` = (target, emitted word).
    delta: Vec<Vec<Transition>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VstClass {
    /// Every letter emits words of one length.
    pub is_visibly: bool,
    /// Every letter emits one word.
    pub is_very_visibly: bool,
}

impl Vst {
    /// `table[q][l]` is the transition of `q` on input `l`.
    pub fn new(inputs: Vec<String>, outputs: Vec<String>, table: Vec<Vec<Option<Transition>>>) -> Result<Self, Error> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Invalid("transducer has no states".into()));
        }
        let mut delta = Vec::with_capacity(n);
        for (q, row) in table.into_iter().enumerate() {
            let mut out = Vec::with_capacity(inputs.len());
            for (l, name) in inputs.iter().enumerate() {
                match row.get(l).cloned().flatten() {
                    None => return Err(Error::Invalid(format!("missing transition for state {q}, letter {name}"))),
                    Some((t, _)) if t >= n => return Err(Error::Invalid(format!("state {t} out of range"))),
                    Some((_, w)) if w.iter().any(|&o| o >= outputs.len()) => {
                        return Err(Error::Invalid(format!("unknown output symbol in state {q}, letter {name}")))
                    }
                    Some(tr) => out.push(tr),
                }
            }
            delta.push(out);
        }
        Ok(Self { inputs, outputs, delta })
    }

    pub fn from_fn(
        num_states: usize,
        inputs: Vec<String>,
        outputs: Vec<String>,
        f: impl Fn(StateId, LetterId) -> (StateId, Vec<OutputId>),
    ) -> Result<Self, Error> {
        let k = inputs.len();
        let table = (0..num_states).map(|q| (0..k).map(|l| Some(f(q, l))).collect()).collect();
        Self::new(inputs, outputs, table)
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn step(&self, q: StateId, l: LetterId) -> (StateId, &[OutputId]) {
        let (t, w) = &self.delta[q][l];
        (*t, w)
    }

    /// End state and produced output of the run from `q`.
    pub fn run(&self, q: StateId, word: &[LetterId]) -> (StateId, Vec<OutputId>) {
        let mut out = Vec::new();
        let q = word.iter().fold(q, |q, &l| {
            let (t, w) = self.step(q, l);
            out.extend_from_slice(w);
            t
        });
        (q, out)
    }
}

pub fn classify_vst(t: &Vst) -> VstClass {
    let mut visibly = true;
    let mut very = true;
    for l in 0..t.inputs.len() {
        let first = t.step(0, l).1;
        for q in 1..t.num_states() {
            let w = t.step(q, l).1;
            visibly &= w.len() == first.len();
            very &= w == first;
        }
    }
    VstClass { is_visibly: visibly, is_very_visibly: very }
}

fn symbol_name(t: &Vst, word: &[OutputId]) -> String {
    let names: Vec<&str> = word.iter().map(|&o| t.outputs[o].as_str()).collect();
    if names.iter().all(|n| n.chars().count() == 1) {
        names.concat()
    } else {
        names.join("+")
    }
}

/// DVPDA whose same-stack synchronizing words are the trace-synchronizing
/// words of `t`: letters with only empty outputs are internal, all others
/// are calls pushing their output word as a single stack symbol.
pub fn vst_to_dvpda(t: &Vst) -> Result<Dvpda, Error> {
    if let Some(l) =
        (0..t.inputs.len()).find(|&l| (0..t.num_states()).any(|q| t.step(q, l).1.len() != t.step(0, l).1.len()))
    {
        return Err(Error::NotVisibly(t.inputs[l].clone()));
    }
    let n = t.num_states();
    let kinds: Vec<LetterKind> = (0..t.inputs.len())
        .map(|l| if t.step(0, l).1.is_empty() { LetterKind::Internal } else { LetterKind::Call })
        .collect();
    let alphabet = PartitionedAlphabet::from_letters(t.inputs.iter().cloned().zip(kinds.iter().copied()));
    let mut stack = StackAlphabet::new("BOT");
    let mut symbols: BTreeMap<Vec<OutputId>, usize> = BTreeMap::new();
    for (l, kind) in kinds.iter().enumerate() {
        if *kind == LetterKind::Call {
            for q in 0..n {
                let w = t.step(q, l).1;
                if !symbols.contains_key(w) {
                    let mut name = symbol_name(t, w);
                    if stack.find(&name).is_some() {
                        name = format!("w{}", symbols.len());
                    }
                    symbols.insert(w.to_vec(), stack.push(name));
                }
            }
        }
    }
    let mut b = DvpdaBuilder::new(n, alphabet, stack);
    for q in 0..n {
        for (l, kind) in kinds.iter().enumerate() {
            let (target, w) = t.step(q, l);
            match kind {
                LetterKind::Call => b.call(q, l, target, symbols[w]),
                _ => b.internal(q, l, target),
            };
        }
    }
    Ok(b.build()?)
}

/// Trace synchronization through same-stack synchronization of
/// [`vst_to_dvpda`]; the witness is over the input alphabet of `t`.
pub fn trace_sync_vst(t: &Vst, opts: &Options) -> Result<Decision, Error> {
    decide_sync(&vst_to_dvpda(t)?, SyncModel::Same, None, opts)
}

/// The DFA obtained by ignoring outputs.
pub fn strip_outputs(t: &Vst) -> Dfa {
    Dfa::from_fn(t.num_states(), t.inputs.clone(), |q, l| t.step(q, l).0).expect("transducer is total")
}

/// Trace synchronization of a very visibly transducer: outputs are the
/// same from every state, so plain synchronization of the state map decides.
pub fn trace_sync_vvst(t: &Vst) -> Result<Decision, Error> {
    if let Some(l) = (0..t.inputs.len()).find(|&l| (0..t.num_states()).any(|q| t.step(q, l).1 != t.step(0, l).1)) {
        return Err(Error::NotVeryVisibly(t.inputs[l].clone()));
    }
    Ok(dfa_pair_sync(&strip_outputs(t)))
}
