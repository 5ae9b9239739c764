//! Emptiness of (implicitly represented) DVPDAs by well-matched summary
//! saturation, with witness extraction.
//!
//! The engine explores lazily from the initial state. For every *entry*
//! state `e` (the initial state, targets of bottom-level returns and
//! targets of call transitions) it computes the set `WM(e)` of states
//! reachable from `e` by a well-matched word, closing under
//!
//! * internal steps: `q ∈ WM(e)`, `δi(q, σ) = q'` gives `q' ∈ WM(e)`;
//! * wraps: `q ∈ WM(e)`, `δc(q, σc) = (q1, γ)`, `q2 ∈ WM(q1)`,
//!   `δr(q2, σr, γ) = q3` gives `q3 ∈ WM(e)`.
//!
//! Transitivity follows from extending on the right only. On top of the
//! summaries two root levels are tracked: *bottom* roots, reachable with
//! the stack exactly `⊥` (closed under bottom-reads of return letters),
//! and *reach* roots, reachable with any stack (additionally closed under
//! unmatched calls).

use std::collections::hash_map::Entry;
use std::collections::HashSet;

use rustc_hash::{FxHashMap as HashMap, FxHashSet};
use std::hash::Hash;

use crate::automata::{Dvpda, LetterId, LetterKind, StateId, SymbolId, BOTTOM};

/// Default cap on discovered states of an implicit automaton.
pub const DEFAULT_STATE_BUDGET: usize = 2_000_000;

/// A deterministic, complete DVPDA given by successor functions.
///
/// Stack tops are passed as `None` for the bottom symbol; pushed symbols are
/// never the bottom symbol.
pub trait ImplicitDvpda {
    type State: Clone + Eq + Hash;
    type Symbol: Clone + Eq + Hash;

    fn letter_kinds(&self) -> &[LetterKind];
    fn initial(&self) -> Self::State;
    fn call(&self, q: &Self::State, letter: LetterId) -> (Self::State, Self::Symbol);
    fn internal(&self, q: &Self::State, letter: LetterId) -> Self::State;
    fn ret(&self, q: &Self::State, letter: LetterId, top: Option<&Self::Symbol>) -> Self::State;
    fn accepts(&self, q: &Self::State) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AcceptanceMode {
    /// Accepting state with any stack.
    FinalState,
    /// Accepting state with the stack holding only the bottom symbol.
    FinalStateEmptyStack,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("state budget of {budget} discovered states exceeded")]
pub struct StateBudgetExceeded {
    pub budget: usize,
}

/// An explicit automaton with an initial state and accepting states.
pub struct Explicit<'a> {
    m: &'a Dvpda,
    initial: StateId,
    accept: Vec<bool>,
}

impl<'a> Explicit<'a> {
    pub fn new(m: &'a Dvpda, initial: StateId, accept: impl IntoIterator<Item = StateId>) -> Self {
        let mut flags = vec![false; m.num_states()];
        for q in accept {
            flags[q] = true;
        }
        Self { m, initial, accept: flags }
    }

    /// Uses the automaton's declared `initial`/`finals` (defaults: state 0, no finals).
    pub fn from_declared(m: &'a Dvpda) -> Self {
        let finals = m.finals().map(|f| f.iter().copied().collect::<Vec<_>>()).unwrap_or_default();
        Self::new(m, m.initial().unwrap_or(0), finals)
    }
}

impl ImplicitDvpda for Explicit<'_> {
    type State = StateId;
    type Symbol = SymbolId;

    fn letter_kinds(&self) -> &[LetterKind] {
        self.m.alphabet().kinds()
    }
    fn initial(&self) -> StateId {
        self.initial
    }
    fn call(&self, q: &StateId, letter: LetterId) -> (StateId, SymbolId) {
        self.m.call(*q, letter)
    }
    fn internal(&self, q: &StateId, letter: LetterId) -> StateId {
        self.m.internal(*q, letter)
    }
    fn ret(&self, q: &StateId, letter: LetterId, top: Option<&SymbolId>) -> StateId {
        self.m.ret(*q, letter, top.copied().unwrap_or(BOTTOM))
    }
    fn accepts(&self, q: &StateId) -> bool {
        self.accept[*q]
    }
}

#[derive(Clone, Copy, Debug)]
enum Prov {
    Base,
    Internal { prev: u32, letter: u32 },
    Wrap { prev: u32, call: u32, inner: u32, ret: u32 },
}

#[derive(Clone, Copy, Debug)]
struct PairRec {
    entry: u32,
    exit: u32,
    prov: Prov,
}

#[derive(Clone, Copy, Debug)]
enum RootProv {
    Initial,
    /// Reached by reading `letter` after the summary pair `pair`; `bottom`
    /// says whether the pair's entry must be reached at the bottom level.
    Via {
        pair: u32,
        letter: u32,
        bottom: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Level {
    Bottom,
    Reach,
}

type CallSucc = Box<[(u32, u32)]>;

struct Engine<'a, M: ImplicitDvpda> {
    m: &'a M,
    budget: usize,
    calls: Vec<u32>,
    internals: Vec<u32>,
    returns: Vec<u32>,
    states: Vec<M::State>,
    index: HashMap<M::State, u32>,
    symbols: Vec<M::Symbol>,
    symbol_index: HashMap<M::Symbol, u32>,
    /// Per state and call letter: (target, pushed symbol).
    call_succ: Vec<Option<CallSucc>>,
    int_succ: Vec<Option<Box<[u32]>>>,
    ret_cache: HashMap<(u32, u32, u32), u32>,
    pairs: Vec<PairRec>,
    pair_index: HashMap<(u32, u32), u32>,
    /// Per entry state: known exits with their pair index (`None` until
    /// the state is used as an entry).
    exits: Vec<Option<Vec<(u32, u32)>>>,
    /// Per entry state: call contexts `(entry, state, call, symbol)` leading into it.
    callers: Vec<Vec<(u32, u32, u32, u32)>>,
    caller_seen: FxHashSet<(u32, u32, u32)>,
    bottom_root: Vec<Option<RootProv>>,
    reach_root: Vec<Option<RootProv>>,
    worklist: Vec<u32>,
    all_entries: bool,
}

impl<'a, M: ImplicitDvpda> Engine<'a, M> {
    fn new(m: &'a M, budget: usize, all_entries: bool) -> Self {
        let kinds = m.letter_kinds();
        let of = |k: LetterKind| -> Vec<u32> {
            kinds.iter().enumerate().filter(|(_, x)| **x == k).map(|(i, _)| i as u32).collect()
        };
        Self {
            m,
            budget,
            calls: of(LetterKind::Call),
            internals: of(LetterKind::Internal),
            returns: of(LetterKind::Return),
            states: Vec::new(),
            index: HashMap::default(),
            symbols: Vec::new(),
            symbol_index: HashMap::default(),
            call_succ: Vec::new(),
            int_succ: Vec::new(),
            ret_cache: HashMap::default(),
            pairs: Vec::new(),
            pair_index: HashMap::default(),
            exits: Vec::new(),
            callers: Vec::new(),
            caller_seen: FxHashSet::default(),
            bottom_root: Vec::new(),
            reach_root: Vec::new(),
            worklist: Vec::new(),
            all_entries,
        }
    }

    fn intern(&mut self, s: M::State) -> Result<u32, StateBudgetExceeded> {
        if let Some(&i) = self.index.get(&s) {
            return Ok(i);
        }
        if self.states.len() >= self.budget {
            return Err(StateBudgetExceeded { budget: self.budget });
        }
        let i = self.states.len() as u32;
        self.states.push(s.clone());
        self.index.insert(s, i);
        self.call_succ.push(None);
        self.int_succ.push(None);
        self.exits.push(None);
        self.callers.push(Vec::new());
        self.bottom_root.push(None);
        self.reach_root.push(None);
        if self.all_entries {
            self.ensure_entry(i);
        }
        Ok(i)
    }

    fn intern_symbol(&mut self, g: M::Symbol) -> u32 {
        let next = self.symbols.len() as u32;
        match self.symbol_index.entry(g) {
            Entry::Occupied(e) => *e.get(),
            Entry::Vacant(v) => {
                self.symbols.push(v.key().clone());
                v.insert(next);
                next
            }
        }
    }

    fn call_successors(&mut self, q: u32) -> Result<Box<[(u32, u32)]>, StateBudgetExceeded> {
        if let Some(s) = &self.call_succ[q as usize] {
            return Ok(s.clone());
        }
        let mut out = Vec::with_capacity(self.calls.len());
        for i in 0..self.calls.len() {
            let l = self.calls[i];
            let (t, g) = self.m.call(&self.states[q as usize], l as usize);
            let t = self.intern(t)?;
            let g = self.intern_symbol(g);
            out.push((t, g));
        }
        let out: Box<[_]> = out.into();
        self.call_succ[q as usize] = Some(out.clone());
        Ok(out)
    }

    fn internal_successors(&mut self, q: u32) -> Result<Box<[u32]>, StateBudgetExceeded> {
        if let Some(s) = &self.int_succ[q as usize] {
            return Ok(s.clone());
        }
        let mut out = Vec::with_capacity(self.internals.len());
        for i in 0..self.internals.len() {
            let l = self.internals[i];
            let t = self.m.internal(&self.states[q as usize], l as usize);
            out.push(self.intern(t)?);
        }
        let out: Box<[_]> = out.into();
        self.int_succ[q as usize] = Some(out.clone());
        Ok(out)
    }

    /// `sym == u32::MAX` reads the bottom symbol.
    fn ret_successor(&mut self, q: u32, letter: u32, sym: u32) -> Result<u32, StateBudgetExceeded> {
        if let Some(&t) = self.ret_cache.get(&(q, letter, sym)) {
            return Ok(t);
        }
        let top = (sym != u32::MAX).then(|| &self.symbols[sym as usize]);
        let t = self.m.ret(&self.states[q as usize], letter as usize, top);
        let t = self.intern(t)?;
        self.ret_cache.insert((q, letter, sym), t);
        Ok(t)
    }

    fn add_pair(&mut self, entry: u32, exit: u32, prov: Prov) {
        if let Entry::Vacant(v) = self.pair_index.entry((entry, exit)) {
            let idx = self.pairs.len() as u32;
            v.insert(idx);
            self.pairs.push(PairRec { entry, exit, prov });
            self.exits[entry as usize].get_or_insert_with(Vec::new).push((exit, idx));
            self.worklist.push(idx);
        }
    }

    fn ensure_entry(&mut self, e: u32) {
        if self.exits[e as usize].is_none() {
            self.add_pair(e, e, Prov::Base);
        }
    }

    fn mark_root(&mut self, t: u32, level: Level, prov: RootProv) {
        let mut changed = false;
        if level == Level::Bottom {
            let slot = &mut self.bottom_root[t as usize];
            if slot.is_none() {
                *slot = Some(prov);
                changed = true;
            }
        }
        let slot = &mut self.reach_root[t as usize];
        if slot.is_none() {
            *slot = Some(prov);
            changed = true;
        }
        if changed {
            if let Some(known) = &self.exits[t as usize] {
                // re-run the root hooks on everything already known in WM(t)
                self.worklist.extend(known.iter().map(|&(_, idx)| idx));
            } else {
                self.ensure_entry(t);
            }
        }
    }

    /// Runs the worklist; stops early when a pair satisfies `goal`.
    fn run(&mut self, goal: Option<AcceptanceMode>) -> Result<Option<u32>, StateBudgetExceeded> {
        if self.states.is_empty() {
            let init = self.m.initial();
            let init = self.intern(init)?;
            self.mark_root(init, Level::Bottom, RootProv::Initial);
        }
        while let Some(idx) = self.worklist.pop() {
            let PairRec { entry: e, exit: q, .. } = self.pairs[idx as usize];
            let in_bottom = self.bottom_root[e as usize].is_some();
            let in_reach = self.reach_root[e as usize].is_some();

            if let Some(mode) = goal {
                let level_ok = match mode {
                    AcceptanceMode::FinalState => in_reach,
                    AcceptanceMode::FinalStateEmptyStack => in_bottom,
                };
                if level_ok && self.m.accepts(&self.states[q as usize]) {
                    return Ok(Some(idx));
                }
            }

            let ints = self.internal_successors(q)?;
            for (i, &t) in ints.iter().enumerate() {
                let letter = self.internals[i];
                self.add_pair(e, t, Prov::Internal { prev: q, letter });
            }

            let calls = self.call_successors(q)?;
            for (i, &(q1, g)) in calls.iter().enumerate() {
                let call = self.calls[i];
                self.ensure_entry(q1);
                if self.caller_seen.insert((e, q, call)) {
                    self.callers[q1 as usize].push((e, q, call, g));
                    // exits found later reach this caller through the callers list
                    let known = self.exits[q1 as usize].as_ref().map_or(0, Vec::len);
                    for j in 0..known {
                        let (q2, inner) = self.exits[q1 as usize].as_ref().expect("entry")[j];
                        self.wrap(e, q, call, g, q2, inner)?;
                    }
                }
                if in_reach {
                    self.mark_root(q1, Level::Reach, RootProv::Via { pair: idx, letter: call, bottom: false });
                }
            }

            // callers registered later wrap this pair when they register
            for j in 0..self.callers[e as usize].len() {
                let (ce, cq, call, g) = self.callers[e as usize][j];
                self.wrap(ce, cq, call, g, q, idx)?;
            }

            if in_bottom {
                for i in 0..self.returns.len() {
                    let r = self.returns[i];
                    let t = self.ret_successor(q, r, u32::MAX)?;
                    self.mark_root(t, Level::Bottom, RootProv::Via { pair: idx, letter: r, bottom: true });
                }
            }
        }
        Ok(None)
    }

    /// Closes the inner summary `inner`, which ends in `q2`, under the
    /// call context `(e, q, call, g)`.
    fn wrap(&mut self, e: u32, q: u32, call: u32, g: u32, q2: u32, inner: u32) -> Result<(), StateBudgetExceeded> {
        for i in 0..self.returns.len() {
            let r = self.returns[i];
            let t = self.ret_successor(q2, r, g)?;
            self.add_pair(e, t, Prov::Wrap { prev: q, call, inner, ret: r });
        }
        Ok(())
    }

    fn prev_pair(&self, entry: u32, prev: u32) -> u32 {
        self.pair_index[&(entry, prev)]
    }

    /// Extracts the derivation of `target` (reached at the given level).
    fn witness(&self, target: u32, level: Level) -> Witness {
        let mut pieces = Vec::new();
        let mut cur = target;
        let mut level = level;
        loop {
            pieces.push(Piece::Pair(cur));
            let entry = self.pairs[cur as usize].entry;
            let roots = match level {
                Level::Bottom => &self.bottom_root,
                Level::Reach => &self.reach_root,
            };
            match roots[entry as usize].expect("spine entries are roots") {
                RootProv::Initial => break,
                RootProv::Via { pair, letter, bottom } => {
                    pieces.push(Piece::Letter(letter));
                    cur = pair;
                    if bottom {
                        level = Level::Bottom;
                    }
                }
            }
        }
        pieces.reverse();

        // collect the sub-DAG, keeping insertion order (topological)
        let mut keep = HashSet::new();
        let mut stack: Vec<u32> = pieces
            .iter()
            .filter_map(|p| match p {
                Piece::Pair(i) => Some(*i),
                Piece::Letter(_) => None,
            })
            .collect();
        while let Some(i) = stack.pop() {
            if !keep.insert(i) {
                continue;
            }
            let rec = self.pairs[i as usize];
            match rec.prov {
                Prov::Base => {}
                Prov::Internal { prev, .. } => stack.push(self.prev_pair(rec.entry, prev)),
                Prov::Wrap { prev, inner, .. } => {
                    stack.push(self.prev_pair(rec.entry, prev));
                    stack.push(inner);
                }
            }
        }
        let mut order: Vec<u32> = keep.into_iter().collect();
        order.sort_unstable();
        let remap: HashMap<u32, u32> = order.iter().enumerate().map(|(n, &o)| (o, n as u32)).collect();
        let nodes = order
            .iter()
            .map(|&o| {
                let rec = self.pairs[o as usize];
                match rec.prov {
                    Prov::Base => Node::Empty,
                    Prov::Internal { prev, letter } => {
                        Node::Extend { prev: remap[&self.prev_pair(rec.entry, prev)], letter }
                    }
                    Prov::Wrap { prev, call, inner, ret } => {
                        Node::Wrap { prev: remap[&self.prev_pair(rec.entry, prev)], call, inner: remap[&inner], ret }
                    }
                }
            })
            .collect();
        let spine = pieces
            .into_iter()
            .map(|p| match p {
                Piece::Pair(i) => Piece::Pair(remap[&i]),
                l => l,
            })
            .collect();
        Witness::new(nodes, spine)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Piece {
    Pair(u32),
    Letter(u32),
}

#[derive(Clone, Copy, Debug)]
enum Node {
    Empty,
    Extend { prev: u32, letter: u32 },
    Wrap { prev: u32, call: u32, inner: u32, ret: u32 },
}

/// Derivation DAG of an accepted word; expands lazily.
#[derive(Clone, Debug)]
pub struct Witness {
    nodes: Vec<Node>,
    spine: Vec<Piece>,
    len: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("witness has length {len}, above the expansion limit {limit}")]
pub struct TooLong {
    pub len: u64,
    pub limit: u64,
}

impl Witness {
    fn new(nodes: Vec<Node>, spine: Vec<Piece>) -> Self {
        let mut lens = vec![0u64; nodes.len()];
        for (i, n) in nodes.iter().enumerate() {
            lens[i] = match *n {
                Node::Empty => 0,
                Node::Extend { prev, .. } => lens[prev as usize].saturating_add(1),
                Node::Wrap { prev, inner, .. } => {
                    lens[prev as usize].saturating_add(lens[inner as usize]).saturating_add(2)
                }
            };
        }
        let len = spine.iter().fold(0u64, |acc, p| match p {
            Piece::Pair(i) => acc.saturating_add(lens[*i as usize]),
            Piece::Letter(_) => acc.saturating_add(1),
        });
        Self { nodes, spine, len }
    }

    /// Length of the expanded word (saturating).
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of derivation nodes.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn expand(&self, limit: u64) -> Result<Vec<LetterId>, TooLong> {
        if self.len > limit {
            return Err(TooLong { len: self.len, limit });
        }
        let mut out = Vec::with_capacity(self.len as usize);
        let mut todo: Vec<Piece> = self.spine.iter().rev().copied().collect();
        while let Some(p) = todo.pop() {
            match p {
                Piece::Letter(l) => out.push(l as LetterId),
                Piece::Pair(i) => match self.nodes[i as usize] {
                    Node::Empty => {}
                    Node::Extend { prev, letter } => {
                        todo.push(Piece::Letter(letter));
                        todo.push(Piece::Pair(prev));
                    }
                    Node::Wrap { prev, call, inner, ret } => {
                        todo.push(Piece::Letter(ret));
                        todo.push(Piece::Pair(inner));
                        todo.push(Piece::Letter(call));
                        todo.push(Piece::Pair(prev));
                    }
                },
            }
        }
        Ok(out)
    }

    /// State map of `m` induced by the witnessed word, read from the empty
    /// stack. Only meaningful for witnesses accepted with empty stack, whose
    /// unmatched letters are all returns reading the bottom symbol; the
    /// witness letters must be letters of `m`.
    pub fn state_map(&self, m: &Dvpda) -> Vec<StateId> {
        let n = m.num_states();
        let mut maps: Vec<Vec<StateId>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let f = match *node {
                Node::Empty => (0..n).collect(),
                Node::Extend { prev, letter } => {
                    maps[prev as usize].iter().map(|&q| m.internal(q, letter as usize)).collect()
                }
                Node::Wrap { prev, call, inner, ret } => maps[prev as usize]
                    .iter()
                    .map(|&q| {
                        let (q1, g) = m.call(q, call as usize);
                        m.ret(maps[inner as usize][q1], ret as usize, g)
                    })
                    .collect(),
            };
            maps.push(f);
        }
        let mut cur: Vec<StateId> = (0..n).collect();
        for piece in &self.spine {
            cur = match *piece {
                Piece::Pair(i) => cur.iter().map(|&q| maps[i as usize][q]).collect(),
                Piece::Letter(l) => cur.iter().map(|&q| m.ret(q, l as usize, BOTTOM)).collect(),
            };
        }
        cur
    }
}

/// Outcome of an emptiness query.
#[derive(Clone, Debug)]
pub struct EmptinessResult {
    pub witness: Option<Witness>,
    /// Discovered states of the implicit automaton.
    pub explored: usize,
    /// Summary pairs derived.
    pub summaries: usize,
}

impl EmptinessResult {
    pub fn is_empty(&self) -> bool {
        self.witness.is_none()
    }
}

/// Decides emptiness under `mode`, returning a witness derivation when
/// the language is non-empty.
pub fn check_emptiness<M: ImplicitDvpda>(
    m: &M,
    mode: AcceptanceMode,
    budget: usize,
) -> Result<EmptinessResult, StateBudgetExceeded> {
    let mut engine = Engine::new(m, budget, false);
    let found = engine.run(Some(mode))?;
    let level = match mode {
        AcceptanceMode::FinalState => Level::Reach,
        AcceptanceMode::FinalStateEmptyStack => Level::Bottom,
    };
    Ok(EmptinessResult {
        witness: found.map(|idx| engine.witness(idx, level)),
        explored: engine.states.len(),
        summaries: engine.pairs.len(),
    })
}

pub fn is_empty<M: ImplicitDvpda>(m: &M, mode: AcceptanceMode, budget: usize) -> Result<bool, StateBudgetExceeded> {
    Ok(check_emptiness(m, mode, budget)?.is_empty())
}

pub fn witness<M: ImplicitDvpda>(
    m: &M,
    mode: AcceptanceMode,
    budget: usize,
) -> Result<Option<Witness>, StateBudgetExceeded> {
    Ok(check_emptiness(m, mode, budget)?.witness)
}

/// Saturated well-matched summary relation over all discovered states.
pub struct SummaryRelation<S> {
    states: Vec<S>,
    index: HashMap<S, u32>,
    pairs: Vec<PairRec>,
    pair_index: HashMap<(u32, u32), u32>,
}

impl<S: Clone + Eq + Hash> SummaryRelation<S> {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn contains(&self, p: &S, q: &S) -> bool {
        match (self.index.get(p), self.index.get(q)) {
            (Some(&p), Some(&q)) => self.pair_index.contains_key(&(p, q)),
            _ => false,
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&S, &S)> + '_ {
        self.pairs.iter().map(|r| (&self.states[r.entry as usize], &self.states[r.exit as usize]))
    }

    /// The well-matched word recorded for `(p, q)`.
    pub fn word(&self, p: &S, q: &S) -> Option<Vec<LetterId>> {
        let idx = self.pair_index[&(*self.index.get(p)?, *self.index.get(q)?)];
        let mut out = Vec::new();
        let mut todo = vec![Piece::Pair(idx)];
        while let Some(piece) = todo.pop() {
            match piece {
                Piece::Letter(l) => out.push(l as LetterId),
                Piece::Pair(i) => {
                    let rec = self.pairs[i as usize];
                    let prev = |x: u32| Piece::Pair(self.pair_index[&(rec.entry, x)]);
                    match rec.prov {
                        Prov::Base => {}
                        Prov::Internal { prev: p, letter } => {
                            todo.push(Piece::Letter(letter));
                            todo.push(prev(p));
                        }
                        Prov::Wrap { prev: p, call, inner, ret } => {
                            todo.push(Piece::Letter(ret));
                            todo.push(Piece::Pair(inner));
                            todo.push(Piece::Letter(call));
                            todo.push(prev(p));
                        }
                    }
                }
            }
        }
        Some(out)
    }
}

/// Full saturation: every discovered state gets its own summary set.
pub fn saturate<M: ImplicitDvpda>(m: &M, budget: usize) -> Result<SummaryRelation<M::State>, StateBudgetExceeded> {
    let mut engine = Engine::new(m, budget, true);
    engine.run(None)?;
    Ok(SummaryRelation {
        states: engine.states,
        index: engine.index,
        pairs: engine.pairs,
        pair_index: engine.pair_index,
    })
}
