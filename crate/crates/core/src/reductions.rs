//! DFA subset-synchronization problems, brute-force solvers for them, and
//! the constructions turning their instances into DVPDA synchronization
//! instances with the same answer.

use std::collections::{HashMap, VecDeque};

use crate::automata::{
    Dfa, Dvpda, DvpdaBuilder, LetterId, LetterKind, PartitionedAlphabet, StackAlphabet, StateId, BOTTOM,
};
use crate::Error;

/// Largest DFA the subset solvers accept by default.
pub const DEFAULT_SUBSET_CAP: usize = 12;

/// A DFA together with a non-empty subset of its states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfaSubsetInstance {
    dfa: Dfa,
    subset: Vec<StateId>,
}

impl DfaSubsetInstance {
    pub fn new(dfa: Dfa, subset: impl IntoIterator<Item = StateId>) -> Result<Self, Error> {
        let mut subset: Vec<StateId> = subset.into_iter().collect();
        subset.sort_unstable();
        subset.dedup();
        if subset.is_empty() {
            return Err(Error::Invalid("subset must be non-empty".into()));
        }
        if let Some(&q) = subset.iter().find(|&&q| q >= dfa.num_states()) {
            return Err(Error::Invalid(format!("subset state {q} out of range")));
        }
        Ok(Self { dfa, subset })
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// Sorted subset states.
    pub fn subset(&self) -> &[StateId] {
        &self.subset
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.subset.binary_search(&q).is_ok()
    }

    fn least(&self) -> StateId {
        self.subset[0]
    }
}

fn mask(states: &[StateId]) -> u64 {
    states.iter().fold(0, |m, &q| m | 1 << q)
}

fn image_mask(a: &Dfa, set: u64, letter: LetterId) -> u64 {
    (0..a.num_states()).filter(|q| set >> q & 1 == 1).fold(0, |m, q| m | 1 << a.step(q, letter))
}

/// BFS over subsets from `start`; returns a shortest word reaching a set
/// satisfying `goal`.
fn subset_bfs(a: &Dfa, start: u64, cap: usize, goal: impl Fn(u64) -> bool) -> Result<Option<Vec<LetterId>>, Error> {
    let n = a.num_states();
    if n > cap.min(64) {
        return Err(Error::CapExceeded { states: n, cap });
    }
    let mut parent: HashMap<u64, (u64, LetterId)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    parent.insert(start, (start, usize::MAX));
    while let Some(set) = queue.pop_front() {
        if goal(set) {
            let mut word = Vec::new();
            let mut cur = set;
            while cur != start {
                let (prev, l) = parent[&cur];
                word.push(l);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for l in 0..a.num_letters() {
            let next = image_mask(a, set, l);
            if let std::collections::hash_map::Entry::Vacant(v) = parent.entry(next) {
                v.insert((set, l));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// Is there a word mapping every state into the subset? Returns a shortest one.
pub fn solve_into_subset(inst: &DfaSubsetInstance) -> Result<Option<Vec<LetterId>>, Error> {
    solve_into_subset_capped(inst, DEFAULT_SUBSET_CAP)
}

pub fn solve_into_subset_capped(inst: &DfaSubsetInstance, cap: usize) -> Result<Option<Vec<LetterId>>, Error> {
    let all: Vec<StateId> = (0..inst.dfa.num_states()).collect();
    let target = mask(&inst.subset);
    subset_bfs(&inst.dfa, mask(&all), cap, |s| s & !target == 0)
}

/// Is there a word mapping the subset to a single state? Returns a shortest one.
pub fn solve_from_subset(inst: &DfaSubsetInstance) -> Result<Option<Vec<LetterId>>, Error> {
    solve_from_subset_capped(inst, DEFAULT_SUBSET_CAP)
}

pub fn solve_from_subset_capped(inst: &DfaSubsetInstance, cap: usize) -> Result<Option<Vec<LetterId>>, Error> {
    subset_bfs(&inst.dfa, mask(&inst.subset), cap, |s| s.count_ones() == 1)
}

fn check_fresh(a: &Dfa, fresh: &[&str]) -> Result<(), Error> {
    match a.letters().iter().find(|l| fresh.contains(&l.as_str())) {
        Some(l) => Err(Error::NameCollision(l.clone())),
        None => Ok(()),
    }
}

fn letters_as(a: &Dfa, kind: LetterKind) -> PartitionedAlphabet {
    PartitionedAlphabet::from_letters(a.letters().iter().map(|l| (l.clone(), kind)))
}

/// Into-subset instance to same-stack synchronization: the call letter `a`
/// sends subset states to a fresh sink pushing `SMILE`, and pushes `FROWN`
/// elsewhere without moving. No return letters.
pub fn reduce_into_subset_to_same(inst: &DfaSubsetInstance) -> Result<Dvpda, Error> {
    let a = &inst.dfa;
    check_fresh(a, &["a"])?;
    let n = a.num_states();
    let sink = n;
    let mut alphabet = letters_as(a, LetterKind::Internal);
    let call = alphabet.push("a", LetterKind::Call);
    let mut stack = StackAlphabet::new("BOT");
    let smile = stack.push("SMILE");
    let frown = stack.push("FROWN");
    let mut b = DvpdaBuilder::new(n + 1, alphabet, stack);
    for l in 0..a.num_letters() {
        for q in 0..n {
            b.internal(q, l, a.step(q, l));
        }
        b.internal(sink, l, sink);
    }
    for q in 0..n {
        if inst.contains(q) {
            b.call(q, call, sink, smile);
        } else {
            b.call(q, call, q, frown);
        }
    }
    b.call(sink, call, sink, smile);
    Ok(b.build()?)
}

/// From-subset instance to arbitrary-stack synchronization: DFA letters
/// become calls pushing their source state, and the return letter `r`
/// undoes them, or at the bottom sends non-subset states into the subset.
pub fn reduce_from_subset_to_arb(inst: &DfaSubsetInstance) -> Result<Dvpda, Error> {
    let a = &inst.dfa;
    check_fresh(a, &["r"])?;
    let n = a.num_states();
    let mut alphabet = letters_as(a, LetterKind::Call);
    let r = alphabet.push("r", LetterKind::Return);
    let mut stack = StackAlphabet::new("BOT");
    let sym: Vec<_> = (0..n).map(|q| stack.push(format!("q{q}"))).collect();
    let mut b = DvpdaBuilder::new(n, alphabet, stack);
    for q in 0..n {
        for l in 0..a.num_letters() {
            b.call(q, l, a.step(q, l), sym[q]);
        }
        b.ret(q, r, BOTTOM, if inst.contains(q) { q } else { inst.least() });
        for (p, &g) in sym.iter().enumerate() {
            b.ret(q, r, g, p);
        }
    }
    Ok(b.build()?)
}

/// Into-subset instance to `n`-turn synchronization of a counter automaton
/// (`n ≥ 1`): the call `a` leaves the subset into a chain of stall states
/// that can only be crossed by alternately popping and reading the bottom
/// with `b`, ending in a sink.
///
/// States `|Q| + i` are the stall states for `i = 0..=n`; `|Q| + n + 1` is the sink.
pub fn reduce_into_subset_to_nturn_dvca(inst: &DfaSubsetInstance, n: usize) -> Result<Dvpda, Error> {
    if n == 0 {
        return Err(Error::Invalid("turn bound must be at least 1".into()));
    }
    let a = &inst.dfa;
    check_fresh(a, &["a", "b"])?;
    let k = a.num_states();
    let stall = |i: usize| k + i;
    let sink = k + n + 1;
    let fallback = 0;
    let mut alphabet = letters_as(a, LetterKind::Internal);
    let call = alphabet.push("a", LetterKind::Call);
    let ret = alphabet.push("b", LetterKind::Return);
    let mut stack = StackAlphabet::new("BOT");
    let one = stack.push("1");
    let mut b = DvpdaBuilder::new(sink + 1, alphabet, stack);
    for l in 0..a.num_letters() {
        for q in 0..k {
            b.internal(q, l, a.step(q, l));
        }
        for q in k..=sink {
            b.internal(q, l, q);
        }
    }
    for q in 0..k {
        b.call(q, call, if inst.contains(q) { stall(0) } else { q }, one);
        b.ret(q, ret, one, q).ret(q, ret, BOTTOM, q);
    }
    b.call(sink, call, sink, one);
    b.ret(sink, ret, one, sink).ret(sink, ret, BOTTOM, sink);
    for i in 0..n {
        b.call(stall(i), call, stall(i), one);
        if i % 2 == 0 {
            b.ret(stall(i), ret, one, stall(i + 1)).ret(stall(i), ret, BOTTOM, fallback);
        } else {
            b.ret(stall(i), ret, one, fallback).ret(stall(i), ret, BOTTOM, stall(i + 1));
        }
    }
    if n.is_multiple_of(2) {
        b.call(stall(n), call, sink, one);
        b.ret(stall(n), ret, one, fallback).ret(stall(n), ret, BOTTOM, fallback);
    } else {
        b.call(stall(n), call, stall(n), one);
        b.ret(stall(n), ret, one, fallback).ret(stall(n), ret, BOTTOM, sink);
    }
    Ok(b.build()?)
}

/// From-subset instance to 0-turn synchronization of a counter automaton:
/// DFA letters become calls pushing `1`; the return letter `b` sends
/// non-subset states into the subset at the bottom and is the identity
/// otherwise.
pub fn reduce_from_subset_to_zero_turn(inst: &DfaSubsetInstance) -> Result<Dvpda, Error> {
    let a = &inst.dfa;
    check_fresh(a, &["b"])?;
    let n = a.num_states();
    let mut alphabet = letters_as(a, LetterKind::Call);
    let ret = alphabet.push("b", LetterKind::Return);
    let mut stack = StackAlphabet::new("BOT");
    let one = stack.push("1");
    let mut b = DvpdaBuilder::new(n, alphabet, stack);
    for q in 0..n {
        for l in 0..a.num_letters() {
            b.call(q, l, a.step(q, l), one);
        }
        b.ret(q, ret, BOTTOM, if inst.contains(q) { q } else { inst.least() });
        b.ret(q, ret, one, q);
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::classify;
    use crate::semantics::{check_witness, SyncModel};

    fn dfa(n: usize, letters: &[&str], f: impl Fn(StateId, LetterId) -> StateId) -> Dfa {
        Dfa::from_fn(n, letters.iter().map(|s| s.to_string()).collect(), f).unwrap()
    }

    fn merging() -> Dfa {
        dfa(2, &["x"], |_, _| 1)
    }

    fn identity() -> Dfa {
        dfa(2, &["x"], |q, _| q)
    }

    fn cerny3() -> Dfa {
        dfa(3, &["x", "y"], |q, l| match l {
            0 if q == 0 => 1,
            0 => q,
            _ => (q + 1) % 3,
        })
    }

    #[test]
    fn into_subset_solver() {
        let yes = DfaSubsetInstance::new(merging(), [1]).unwrap();
        assert_eq!(solve_into_subset(&yes).unwrap(), Some(vec![0]));
        let all = DfaSubsetInstance::new(identity(), [0, 1]).unwrap();
        assert_eq!(solve_into_subset(&all).unwrap(), Some(vec![]));
        let no = DfaSubsetInstance::new(identity(), [1]).unwrap();
        assert_eq!(solve_into_subset(&no).unwrap(), None);
    }

    #[test]
    fn from_subset_solver() {
        let single = DfaSubsetInstance::new(identity(), [1]).unwrap();
        assert_eq!(solve_from_subset(&single).unwrap(), Some(vec![]));
        let c = DfaSubsetInstance::new(cerny3(), [0, 1, 2]).unwrap();
        assert_eq!(solve_from_subset(&c).unwrap().unwrap().len(), 4);
        let no = DfaSubsetInstance::new(identity(), [0, 1]).unwrap();
        assert_eq!(solve_from_subset(&no).unwrap(), None);
    }

    #[test]
    fn solver_cap() {
        let big = DfaSubsetInstance::new(dfa(13, &["x"], |q, _| q), [0]).unwrap();
        assert!(matches!(solve_from_subset(&big), Err(Error::CapExceeded { states: 13, cap: 12 })));
    }

    #[test]
    fn instances_are_validated() {
        assert!(DfaSubsetInstance::new(identity(), []).is_err());
        assert!(DfaSubsetInstance::new(identity(), [2]).is_err());
    }

    #[test]
    fn name_collisions() {
        let inst = DfaSubsetInstance::new(dfa(1, &["a"], |q, _| q), [0]).unwrap();
        assert!(matches!(reduce_into_subset_to_same(&inst), Err(Error::NameCollision(_))));
        assert!(reduce_from_subset_to_arb(&inst).is_ok());
        assert!(matches!(reduce_into_subset_to_nturn_dvca(&inst, 1), Err(Error::NameCollision(_))));
    }

    #[test]
    fn same_construction_on_yes_instance() {
        let inst = DfaSubsetInstance::new(merging(), [1]).unwrap();
        let m = reduce_into_subset_to_same(&inst).unwrap();
        // "x" moves everything into the subset, "a" into the sink
        assert!(check_witness(&m, &[0, 1], SyncModel::Same, None).unwrap());
        assert!(!classify(&m).has_return);
    }

    #[test]
    fn arb_construction_single_subset_state() {
        let inst = DfaSubsetInstance::new(identity(), [1]).unwrap();
        let m = reduce_from_subset_to_arb(&inst).unwrap();
        assert!(check_witness(&m, &[1], SyncModel::Arbitrary, None).unwrap());
    }

    #[test]
    fn counter_constructions_classify_as_counters() {
        let inst = DfaSubsetInstance::new(cerny3(), [0, 2]).unwrap();
        for n in 1..=3 {
            let m = reduce_into_subset_to_nturn_dvca(&inst, n).unwrap();
            assert_eq!(m.num_states(), 3 + n + 2);
            assert!(classify(&m).is_counter);
        }
        assert!(classify(&reduce_from_subset_to_zero_turn(&inst).unwrap()).is_counter);
    }

    #[test]
    fn nturn_construction_on_yes_instance() {
        let inst = DfaSubsetInstance::new(merging(), [1]).unwrap();
        let m = reduce_into_subset_to_nturn_dvca(&inst, 1).unwrap();
        let (x, a, b) = (0, 1, 2);
        // the first b clears the stall states, then: into S, into the stall
        // chain, pop once, read the bottom into the sink
        assert!(!check_witness(&m, &[x, a, b, b], SyncModel::Empty, Some(1)).unwrap());
        assert!(check_witness(&m, &[b, x, a, b, b], SyncModel::Empty, Some(1)).unwrap());
    }
}
