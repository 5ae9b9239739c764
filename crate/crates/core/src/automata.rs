//! Automaton data model: partitioned alphabets, DVPDAs, DFAs and
//! sub-class detection.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

pub type StateId = usize;
pub type LetterId = usize;
pub type SymbolId = usize;

/// Index of the bottom-of-stack symbol in every [`StackAlphabet`].
pub const BOTTOM: SymbolId = 0;

/// Letter name reserved for the fresh return letter of the same-stack product.
pub const RESERVED_LETTER: &str = "__r";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterKind {
    Call,
    Internal,
    Return,
}

impl fmt::Display for LetterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LetterKind::Call => "call",
            LetterKind::Internal => "internal",
            LetterKind::Return => "return",
        })
    }
}

/// Input alphabet split into call, internal and return letters.
///
/// Letter ids follow declaration order, which is also the tie-breaking
/// order of every search in this crate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartitionedAlphabet {
    names: Vec<String>,
    kinds: Vec<LetterKind>,
}

impl PartitionedAlphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_letters<I, S>(letters: I) -> Self
    where
        I: IntoIterator<Item = (S, LetterKind)>,
        S: Into<String>,
    {
        let mut alphabet = Self::new();
        for (name, kind) in letters {
            alphabet.push(name, kind);
        }
        alphabet
    }

    pub fn push(&mut self, name: impl Into<String>, kind: LetterKind) -> LetterId {
        self.names.push(name.into());
        self.kinds.push(kind);
        self.names.len() - 1
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: LetterId) -> &str {
        &self.names[letter]
    }

    pub fn kind(&self, letter: LetterId) -> LetterKind {
        self.kinds[letter]
    }

    pub fn kinds(&self) -> &[LetterKind] {
        &self.kinds
    }

    pub fn find(&self, name: &str) -> Option<LetterId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn letters_of(&self, kind: LetterKind) -> impl Iterator<Item = LetterId> + '_ {
        self.kinds.iter().enumerate().filter(move |(_, k)| **k == kind).map(|(i, _)| i)
    }

    pub fn has(&self, kind: LetterKind) -> bool {
        self.kinds.contains(&kind)
    }

    /// Renders a word as space-separated letter names.
    pub fn render(&self, word: &[LetterId]) -> String {
        word.iter().map(|&l| self.names[l].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Parses whitespace-separated letter names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<LetterId>, Error> {
        text.split_whitespace().map(|tok| self.find(tok).ok_or_else(|| Error::UnknownLetter(tok.to_string()))).collect()
    }
}

/// Stack alphabet; symbol 0 is the bottom symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackAlphabet {
    names: Vec<String>,
}

impl StackAlphabet {
    pub fn new(bottom: impl Into<String>) -> Self {
        Self { names: vec![bottom.into()] }
    }

    pub fn push(&mut self, name: impl Into<String>) -> SymbolId {
        self.names.push(name.into());
        self.names.len() - 1
    }

    /// Number of symbols including the bottom symbol.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, symbol: SymbolId) -> &str {
        &self.names[symbol]
    }

    pub fn find(&self, name: &str) -> Option<SymbolId> {
        self.names.iter().position(|n| n == name)
    }
}

/// A single violation of the well-formedness rules of a [`Dvpda`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("automaton has no states")]
    NoStates,
    #[error("missing transition for state {state}, letter {letter}{}", symbol.as_ref().map(|s| format!(", symbol {s}")).unwrap_or_default())]
    IncompleteTransition { state: StateId, letter: String, symbol: Option<String> },
    #[error("call letter {letter} pushes the bottom symbol from state {state}")]
    PushesBottom { state: StateId, letter: String },
    #[error("letter {0} declared more than once")]
    DuplicateLetter(String),
    #[error("letter {letter} is a {declared} letter but has a {used} transition")]
    BadPartition { letter: String, declared: LetterKind, used: LetterKind },
    #[error("stack symbol {0} declared more than once")]
    DuplicateSymbol(String),
    #[error("state {0} out of range")]
    StateOutOfRange(StateId),
    #[error("letter name {0} is reserved")]
    ReservedName(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid automaton: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown letter {0}")]
    UnknownLetter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Table {
    Call,
    Internal,
    Return,
}

/// Incrementally assembled DVPDA whose tables may still be partial.
#[derive(Clone, Debug)]
pub struct DvpdaBuilder {
    num_states: usize,
    alphabet: PartitionedAlphabet,
    stack: StackAlphabet,
    calls: BTreeMap<(StateId, LetterId), (StateId, SymbolId)>,
    internals: BTreeMap<(StateId, LetterId), StateId>,
    returns: BTreeMap<(StateId, LetterId, SymbolId), StateId>,
    initial: Option<StateId>,
    finals: Option<BTreeSet<StateId>>,
    misuse: Vec<(LetterId, Table)>,
}

impl DvpdaBuilder {
    pub fn new(num_states: usize, alphabet: PartitionedAlphabet, stack: StackAlphabet) -> Self {
        Self {
            num_states,
            alphabet,
            stack,
            calls: BTreeMap::new(),
            internals: BTreeMap::new(),
            returns: BTreeMap::new(),
            initial: None,
            finals: None,
            misuse: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &PartitionedAlphabet {
        &self.alphabet
    }

    pub fn stack(&self) -> &StackAlphabet {
        &self.stack
    }

    pub fn call(&mut self, from: StateId, letter: LetterId, to: StateId, push: SymbolId) -> &mut Self {
        if self.alphabet.kind(letter) != LetterKind::Call {
            self.misuse.push((letter, Table::Call));
        }
        self.calls.insert((from, letter), (to, push));
        self
    }

    pub fn internal(&mut self, from: StateId, letter: LetterId, to: StateId) -> &mut Self {
        if self.alphabet.kind(letter) != LetterKind::Internal {
            self.misuse.push((letter, Table::Internal));
        }
        self.internals.insert((from, letter), to);
        self
    }

    pub fn ret(&mut self, from: StateId, letter: LetterId, top: SymbolId, to: StateId) -> &mut Self {
        if self.alphabet.kind(letter) != LetterKind::Return {
            self.misuse.push((letter, Table::Return));
        }
        self.returns.insert((from, letter, top), to);
        self
    }

    pub fn remove_return(&mut self, from: StateId, letter: LetterId, top: SymbolId) -> &mut Self {
        self.returns.remove(&(from, letter, top));
        self
    }

    pub fn initial(&mut self, state: StateId) -> &mut Self {
        self.initial = Some(state);
        self
    }

    pub fn finals(&mut self, states: impl IntoIterator<Item = StateId>) -> &mut Self {
        self.finals = Some(states.into_iter().collect());
        self
    }

    /// Lists every violation; empty iff [`build`](Self::build) succeeds.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.num_states;
        if n == 0 {
            out.push(Violation::NoStates);
        }
        let mut seen = HashSet::new();
        for l in 0..self.alphabet.len() {
            let name = self.alphabet.name(l);
            if !seen.insert(name) {
                out.push(Violation::DuplicateLetter(name.to_string()));
            }
            if name == RESERVED_LETTER {
                out.push(Violation::ReservedName(name.to_string()));
            }
        }
        let mut seen = HashSet::new();
        for s in 0..self.stack.len() {
            if !seen.insert(self.stack.name(s)) {
                out.push(Violation::DuplicateSymbol(self.stack.name(s).to_string()));
            }
        }
        for &(letter, used) in &self.misuse {
            let used = match used {
                Table::Call => LetterKind::Call,
                Table::Internal => LetterKind::Internal,
                Table::Return => LetterKind::Return,
            };
            let v = Violation::BadPartition {
                letter: self.alphabet.name(letter).to_string(),
                declared: self.alphabet.kind(letter),
                used,
            };
            if !out.contains(&v) {
                out.push(v);
            }
        }
        let check_state = |q: StateId, out: &mut Vec<Violation>| {
            if q >= n && !out.contains(&Violation::StateOutOfRange(q)) {
                out.push(Violation::StateOutOfRange(q));
            }
        };
        for (&(q, _), &(t, _)) in &self.calls {
            check_state(q, &mut out);
            check_state(t, &mut out);
        }
        for (&(q, _), &t) in &self.internals {
            check_state(q, &mut out);
            check_state(t, &mut out);
        }
        for (&(q, _, _), &t) in &self.returns {
            check_state(q, &mut out);
            check_state(t, &mut out);
        }
        if let Some(q) = self.initial {
            check_state(q, &mut out);
        }
        for &q in self.finals.iter().flatten() {
            check_state(q, &mut out);
        }
        for q in 0..n {
            for l in 0..self.alphabet.len() {
                let letter = || self.alphabet.name(l).to_string();
                match self.alphabet.kind(l) {
                    LetterKind::Call => match self.calls.get(&(q, l)) {
                        None => out.push(Violation::IncompleteTransition { state: q, letter: letter(), symbol: None }),
                        Some(&(_, BOTTOM)) => out.push(Violation::PushesBottom { state: q, letter: letter() }),
                        Some(&(_, g)) if g >= self.stack.len() => out.push(Violation::IncompleteTransition {
                            state: q,
                            letter: letter(),
                            symbol: Some(format!("#{g}")),
                        }),
                        Some(_) => {}
                    },
                    LetterKind::Internal => {
                        if !self.internals.contains_key(&(q, l)) {
                            out.push(Violation::IncompleteTransition { state: q, letter: letter(), symbol: None });
                        }
                    }
                    LetterKind::Return => {
                        for g in 0..self.stack.len() {
                            if !self.returns.contains_key(&(q, l, g)) {
                                out.push(Violation::IncompleteTransition {
                                    state: q,
                                    letter: letter(),
                                    symbol: Some(self.stack.name(g).to_string()),
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn build(&self) -> Result<Dvpda, Error> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let n = self.num_states;
        let nsym = self.stack.len();
        let tables = (0..self.alphabet.len())
            .map(|l| match self.alphabet.kind(l) {
                LetterKind::Call => Transitions::Call((0..n).map(|q| self.calls[&(q, l)]).collect()),
                LetterKind::Internal => Transitions::Internal((0..n).map(|q| self.internals[&(q, l)]).collect()),
                LetterKind::Return => Transitions::Return(
                    (0..n)
                        .flat_map(|q| (0..nsym).map(move |g| (q, g)))
                        .map(|(q, g)| self.returns[&(q, l, g)])
                        .collect(),
                ),
            })
            .collect();
        Ok(Dvpda {
            num_states: n,
            alphabet: self.alphabet.clone(),
            stack: self.stack.clone(),
            tables,
            initial: self.initial,
            finals: self.finals.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Transitions {
    Call(Vec<(StateId, SymbolId)>),
    Internal(Vec<StateId>),
    /// Indexed by `state * |Γ| + symbol`.
    Return(Vec<StateId>),
}

/// A complete deterministic visibly push-down automaton.
///
/// Only constructible through [`DvpdaBuilder::build`], so every value is
/// total and never pushes the bottom symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dvpda {
    num_states: usize,
    alphabet: PartitionedAlphabet,
    stack: StackAlphabet,
    tables: Vec<Transitions>,
    initial: Option<StateId>,
    finals: Option<BTreeSet<StateId>>,
}

impl Dvpda {
    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet(&self) -> &PartitionedAlphabet {
        &self.alphabet
    }

    pub fn stack(&self) -> &StackAlphabet {
        &self.stack
    }

    pub fn initial(&self) -> Option<StateId> {
        self.initial
    }

    pub fn finals(&self) -> Option<&BTreeSet<StateId>> {
        self.finals.as_ref()
    }

    pub fn kind(&self, letter: LetterId) -> LetterKind {
        self.alphabet.kind(letter)
    }

    /// # Panics
    /// If `letter` is not a call letter.
    pub fn call(&self, state: StateId, letter: LetterId) -> (StateId, SymbolId) {
        match &self.tables[letter] {
            Transitions::Call(t) => t[state],
            _ => panic!("letter {} is not a call letter", self.alphabet.name(letter)),
        }
    }

    pub fn internal(&self, state: StateId, letter: LetterId) -> StateId {
        match &self.tables[letter] {
            Transitions::Internal(t) => t[state],
            _ => panic!("letter {} is not an internal letter", self.alphabet.name(letter)),
        }
    }

    /// Return transition on top symbol `top`; `top == BOTTOM` reads without popping.
    pub fn ret(&self, state: StateId, letter: LetterId, top: SymbolId) -> StateId {
        match &self.tables[letter] {
            Transitions::Return(t) => t[state * self.stack.len() + top],
            _ => panic!("letter {} is not a return letter", self.alphabet.name(letter)),
        }
    }

    pub fn with_initial(mut self, state: Option<StateId>) -> Self {
        self.initial = state;
        self
    }

    pub fn with_finals(mut self, finals: Option<BTreeSet<StateId>>) -> Self {
        self.finals = finals;
        self
    }

    /// Builder holding exactly this automaton's tables, for derived variants.
    pub fn to_builder(&self) -> DvpdaBuilder {
        let mut b = DvpdaBuilder::new(self.num_states, self.alphabet.clone(), self.stack.clone());
        for l in 0..self.alphabet.len() {
            for q in 0..self.num_states {
                match self.kind(l) {
                    LetterKind::Call => {
                        let (t, g) = self.call(q, l);
                        b.call(q, l, t, g);
                    }
                    LetterKind::Internal => {
                        b.internal(q, l, self.internal(q, l));
                    }
                    LetterKind::Return => {
                        for g in 0..self.stack.len() {
                            b.ret(q, l, g, self.ret(q, l, g));
                        }
                    }
                }
            }
        }
        b.initial = self.initial;
        b.finals = self.finals.clone();
        b
    }

    /// Renames states by `perm[old] = new`.
    pub fn permute_states(&self, perm: &[StateId]) -> Dvpda {
        let mut b = DvpdaBuilder::new(self.num_states, self.alphabet.clone(), self.stack.clone());
        for l in 0..self.alphabet.len() {
            for q in 0..self.num_states {
                match self.kind(l) {
                    LetterKind::Call => {
                        let (t, g) = self.call(q, l);
                        b.call(perm[q], l, perm[t], g);
                    }
                    LetterKind::Internal => {
                        b.internal(perm[q], l, perm[self.internal(q, l)]);
                    }
                    LetterKind::Return => {
                        for g in 0..self.stack.len() {
                            b.ret(perm[q], l, g, perm[self.ret(q, l, g)]);
                        }
                    }
                }
            }
        }
        if let Some(q) = self.initial {
            b.initial(perm[q]);
        }
        if let Some(f) = &self.finals {
            b.finals(f.iter().map(|&q| perm[q]));
        }
        b.build().expect("permutation of a valid automaton is valid")
    }
}

/// Sub-class membership of a [`Dvpda`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub is_very_visibly: bool,
    pub is_counter: bool,
    pub has_call: bool,
    pub has_return: bool,
}

/// Counter-ness is judged on the symbols actually pushed, not on the
/// declared stack alphabet.
pub fn classify(m: &Dvpda) -> ClassReport {
    let mut very_visibly = true;
    let mut pushed = BTreeSet::new();
    for l in m.alphabet.letters_of(LetterKind::Call) {
        let first = m.call(0, l).1;
        for q in 0..m.num_states {
            let g = m.call(q, l).1;
            pushed.insert(g);
            if g != first {
                very_visibly = false;
            }
        }
    }
    ClassReport {
        is_very_visibly: very_visibly,
        is_counter: pushed.len() <= 1,
        has_call: m.alphabet.has(LetterKind::Call),
        has_return: m.alphabet.has(LetterKind::Return),
    }
}

/// Complete deterministic finite automaton without initial/final states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    num_states: usize,
    letters: Vec<String>,
    delta: Vec<StateId>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DfaError {
    #[error("automaton has no states")]
    NoStates,
    #[error("missing transition for state {state}, letter {letter}")]
    IncompleteTransition { state: StateId, letter: String },
    #[error("state {0} out of range")]
    StateOutOfRange(StateId),
    #[error("letter {0} declared more than once")]
    DuplicateLetter(String),
}

impl Dfa {
    /// `table[q][l]` is the successor of `q` under letter `l`.
    pub fn new(letters: Vec<String>, table: Vec<Vec<Option<StateId>>>) -> Result<Self, DfaError> {
        let n = table.len();
        if n == 0 {
            return Err(DfaError::NoStates);
        }
        let mut seen = HashSet::new();
        for l in &letters {
            if !seen.insert(l.as_str()) {
                return Err(DfaError::DuplicateLetter(l.clone()));
            }
        }
        let mut delta = Vec::with_capacity(n * letters.len());
        for (q, row) in table.iter().enumerate() {
            for (l, name) in letters.iter().enumerate() {
                match row.get(l).copied().flatten() {
                    None => return Err(DfaError::IncompleteTransition { state: q, letter: name.clone() }),
                    Some(t) if t >= n => return Err(DfaError::StateOutOfRange(t)),
                    Some(t) => delta.push(t),
                }
            }
        }
        Ok(Self { num_states: n, letters, delta })
    }

    pub fn from_fn(
        num_states: usize,
        letters: Vec<String>,
        f: impl Fn(StateId, LetterId) -> StateId,
    ) -> Result<Self, DfaError> {
        let k = letters.len();
        let table = (0..num_states).map(|q| (0..k).map(|l| Some(f(q, l))).collect()).collect();
        Self::new(letters, table)
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn step(&self, q: StateId, letter: LetterId) -> StateId {
        self.delta[q * self.letters.len() + letter]
    }

    pub fn run(&self, q: StateId, word: &[LetterId]) -> StateId {
        word.iter().fold(q, |q, &l| self.step(q, l))
    }

    /// Sorted, deduplicated image of `states` under `word`.
    pub fn image(&self, states: &[StateId], word: &[LetterId]) -> Vec<StateId> {
        let mut out: Vec<_> = states.iter().map(|&q| self.run(q, word)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Views a DFA as a DVPDA whose letters are all internal.
pub fn embed_dfa(a: &Dfa) -> Dvpda {
    let alphabet = PartitionedAlphabet::from_letters(a.letters.iter().map(|l| (l.clone(), LetterKind::Internal)));
    let mut b = DvpdaBuilder::new(a.num_states, alphabet, StackAlphabet::new("BOT"));
    for q in 0..a.num_states {
        for l in 0..a.letters.len() {
            b.internal(q, l, a.step(q, l));
        }
    }
    b.build().expect("embedding of a valid DFA is valid")
}

/// Černý automaton `C_n`: `b` rotates, `a` merges state 0 into 1.
pub fn cerny(n: usize) -> Dfa {
    Dfa::from_fn(n, vec!["a".into(), "b".into()], |q, l| match l {
        0 if q == 0 => 1 % n,
        0 => q,
        _ => (q + 1) % n,
    })
    .expect("Černý automaton is total")
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Two-state automaton used throughout the unit tests.
    pub fn m1_builder() -> DvpdaBuilder {
        let alphabet = PartitionedAlphabet::from_letters([
            ("a", LetterKind::Call),
            ("b", LetterKind::Internal),
            ("d", LetterKind::Return),
        ]);
        let mut stack = StackAlphabet::new("BOT");
        let x = stack.push("X");
        let mut b = DvpdaBuilder::new(2, alphabet, stack);
        b.call(0, 0, 1, x).call(1, 0, 1, x);
        b.internal(0, 1, 1).internal(1, 1, 0);
        b.ret(0, 2, x, 0).ret(1, 2, x, 0);
        b.ret(0, 2, BOTTOM, 0).ret(1, 2, BOTTOM, 1);
        b
    }

    pub fn m1() -> Dvpda {
        m1_builder().build().unwrap()
    }

    /// Two states, every letter of every class fixes every state.
    pub fn identity2() -> Dvpda {
        let alphabet = PartitionedAlphabet::from_letters([
            ("a", LetterKind::Call),
            ("b", LetterKind::Internal),
            ("d", LetterKind::Return),
        ]);
        let mut stack = StackAlphabet::new("BOT");
        let x = stack.push("X");
        let mut b = DvpdaBuilder::new(2, alphabet, stack);
        for q in 0..2 {
            b.call(q, 0, q, x).internal(q, 1, q);
            b.ret(q, 2, x, q).ret(q, 2, BOTTOM, q);
        }
        b.build().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn m1_validates() {
        assert!(m1_builder().validate().is_empty());
    }

    #[test]
    fn missing_bottom_return_is_reported() {
        let mut b = m1_builder();
        b.remove_return(1, 2, BOTTOM);
        assert_eq!(
            b.validate(),
            vec![Violation::IncompleteTransition { state: 1, letter: "d".into(), symbol: Some("BOT".into()) }]
        );
        assert!(b.build().is_err());
    }

    #[test]
    fn pushing_bottom_is_reported() {
        let mut b = m1_builder();
        b.call(0, 0, 1, BOTTOM);
        assert_eq!(b.validate(), vec![Violation::PushesBottom { state: 0, letter: "a".into() }]);
    }

    #[test]
    fn duplicate_letters_and_misused_kinds() {
        let alphabet = PartitionedAlphabet::from_letters([("a", LetterKind::Internal), ("a", LetterKind::Call)]);
        let mut b = DvpdaBuilder::new(1, alphabet, StackAlphabet::new("BOT"));
        b.internal(0, 0, 0).call(0, 1, 0, BOTTOM);
        b.ret(0, 0, BOTTOM, 0);
        let v = b.validate();
        assert!(v.contains(&Violation::DuplicateLetter("a".into())));
        assert!(v.contains(&Violation::BadPartition {
            letter: "a".into(),
            declared: LetterKind::Internal,
            used: LetterKind::Return
        }));
    }

    #[test]
    fn empty_state_set_rejected() {
        let b = DvpdaBuilder::new(0, PartitionedAlphabet::new(), StackAlphabet::new("BOT"));
        assert_eq!(b.validate(), vec![Violation::NoStates]);
    }

    #[test]
    fn reserved_letter_rejected() {
        let alphabet = PartitionedAlphabet::from_letters([(RESERVED_LETTER, LetterKind::Internal)]);
        let mut b = DvpdaBuilder::new(1, alphabet, StackAlphabet::new("BOT"));
        b.internal(0, 0, 0);
        assert_eq!(b.validate(), vec![Violation::ReservedName(RESERVED_LETTER.into())]);
    }

    #[test]
    fn classify_m1() {
        assert_eq!(
            classify(&m1()),
            ClassReport { is_very_visibly: true, is_counter: true, has_call: true, has_return: true }
        );
    }

    #[test]
    fn classify_two_pushed_symbols() {
        let b = m1_builder();
        let mut stack = b.stack().clone();
        let y = stack.push("Y");
        let mut b2 = DvpdaBuilder::new(2, b.alphabet().clone(), stack);
        b2.call(0, 0, 1, 1).call(1, 0, 1, y);
        b2.internal(0, 1, 1).internal(1, 1, 0);
        for q in 0..2 {
            for g in 0..3 {
                b2.ret(q, 2, g, if g == BOTTOM { q } else { 0 });
            }
        }
        let r = classify(&b2.build().unwrap());
        assert!(!r.is_very_visibly);
        assert!(!r.is_counter);
    }

    #[test]
    fn classify_without_calls_or_returns() {
        let m = embed_dfa(&cerny(3));
        assert_eq!(
            classify(&m),
            ClassReport { is_very_visibly: true, is_counter: true, has_call: false, has_return: false }
        );
    }

    #[test]
    fn counter_ignores_unused_symbols() {
        let alphabet = PartitionedAlphabet::from_letters([("a", LetterKind::Call)]);
        let mut stack = StackAlphabet::new("BOT");
        stack.push("X");
        let y = stack.push("Y");
        let mut b = DvpdaBuilder::new(2, alphabet, stack);
        b.call(0, 0, 1, y).call(1, 0, 0, y);
        assert!(classify(&b.build().unwrap()).is_counter);
    }

    #[test]
    fn classify_is_stable_under_renaming() {
        let m = m1();
        assert_eq!(classify(&m), classify(&m.permute_states(&[1, 0])));
    }

    #[test]
    fn embed_preserves_tables() {
        let c = cerny(3);
        let m = embed_dfa(&c);
        assert_eq!(m.num_states(), 3);
        assert_eq!(m.stack().len(), 1);
        for q in 0..3 {
            for l in 0..2 {
                assert_eq!(m.internal(q, l), c.step(q, l));
            }
        }
    }

    #[test]
    fn dfa_rejects_partial_tables() {
        let err = Dfa::new(vec!["x".into()], vec![vec![Some(0)], vec![None]]).unwrap_err();
        assert_eq!(err, DfaError::IncompleteTransition { state: 1, letter: "x".into() });
    }
}
