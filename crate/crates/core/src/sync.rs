//! Synchronization decision procedures and the dispatcher choosing among them.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use crate::automata::{classify, Dfa, Dvpda, LetterId, LetterKind, StateId, SymbolId, BOTTOM};
use crate::emptiness::{check_emptiness, AcceptanceMode, ImplicitDvpda, Witness, DEFAULT_STATE_BUDGET};
use crate::semantics::{check_witness, run, SyncModel};
use crate::Error;

/// Witness words longer than this are reported by length only.
pub const DEFAULT_WITNESS_CAP: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Cap on discovered states of product automata and reachability searches.
    pub budget: usize,
    pub witness_cap: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self { budget: DEFAULT_STATE_BUDGET, witness_cap: DEFAULT_WITNESS_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Procedure {
    SingleState,
    DfaPair,
    PairwiseEmpty,
    SameReturnReduction,
    ArbNoReturnDfa,
    VvEquivalence,
    ZeroTurnDfa,
    ZeroTurnSameReach,
    FullProduct,
    TurnProduct,
}

impl Procedure {
    pub fn name(self) -> &'static str {
        match self {
            Procedure::SingleState => "single-state",
            Procedure::DfaPair => "dfa-pair",
            Procedure::PairwiseEmpty => "pairwise-empty",
            Procedure::SameReturnReduction => "same-return-reduction",
            Procedure::ArbNoReturnDfa => "arb-noreturn-dfa",
            Procedure::VvEquivalence => "vv-equivalence",
            Procedure::ZeroTurnDfa => "zero-turn-dfa",
            Procedure::ZeroTurnSameReach => "zero-turn-same-reach",
            Procedure::FullProduct => "full-product",
            Procedure::TurnProduct => "turn-product",
        }
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// States discovered by the underlying searches.
    pub explored: usize,
    /// Pair-merging rounds, for the pair algorithms.
    pub rounds: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub answer: bool,
    /// Present for yes-answers whose witness fits the expansion cap.
    pub witness: Option<Vec<LetterId>>,
    /// Witness length, also known when the witness itself was too long.
    pub witness_len: Option<u64>,
    pub procedure: Procedure,
    pub stats: Stats,
}

impl Decision {
    fn no(procedure: Procedure) -> Self {
        Self { answer: false, witness: None, witness_len: None, procedure, stats: Stats::default() }
    }

    fn yes(procedure: Procedure, witness: Vec<LetterId>) -> Self {
        Self {
            answer: true,
            witness_len: Some(witness.len() as u64),
            witness: Some(witness),
            procedure,
            stats: Stats::default(),
        }
    }

    fn with_procedure(mut self, procedure: Procedure) -> Self {
        self.procedure = procedure;
        self
    }
}

// ---------------------------------------------------------------------------
// DFA pair algorithm

/// Shortest word merging `p` and `q`, by BFS in the pair automaton.
fn merge_pair(a: &Dfa, p: StateId, q: StateId, explored: &mut usize) -> Option<Vec<LetterId>> {
    let n = a.num_states();
    let key = |x: StateId, y: StateId| x * n + y;
    let mut parent: HashMap<usize, (usize, LetterId)> = HashMap::new();
    let start = key(p, q);
    let mut seen = vec![false; n * n];
    seen[start] = true;
    let mut queue = VecDeque::from([(p, q)]);
    while let Some((x, y)) = queue.pop_front() {
        *explored += 1;
        if x == y {
            let mut word = Vec::new();
            let mut cur = key(x, y);
            while cur != start {
                let (prev, l) = parent[&cur];
                word.push(l);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for l in 0..a.num_letters() {
            let (x2, y2) = (a.step(x, l), a.step(y, l));
            let k = key(x2, y2);
            if !seen[k] {
                seen[k] = true;
                parent.insert(k, (key(x, y), l));
                queue.push_back((x2, y2));
            }
        }
    }
    None
}

/// Classical pair algorithm: repeatedly merge the two least active states.
pub fn dfa_pair_sync(a: &Dfa) -> Decision {
    let start = Instant::now();
    let mut explored = 0;
    let mut active: Vec<StateId> = (0..a.num_states()).collect();
    let mut word = Vec::new();
    let mut rounds = 0;
    while active.len() > 1 {
        let Some(w) = merge_pair(a, active[0], active[1], &mut explored) else {
            let mut d = Decision::no(Procedure::DfaPair);
            d.stats = Stats { explored, rounds, elapsed: start.elapsed() };
            return d;
        };
        active = a.image(&active, &w);
        word.extend(w);
        rounds += 1;
    }
    let mut d = Decision::yes(Procedure::DfaPair, word);
    d.stats = Stats { explored, rounds, elapsed: start.elapsed() };
    d
}

/// Which letters of a DVPDA survive as DFA letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Collapse {
    /// Internal letters only.
    InternalsOnly,
    /// Internal letters plus return letters reading the bottom symbol.
    BottomLevel,
    /// Call letters (ignoring the pushed symbol) plus internal letters.
    CallsAsInternals,
}

/// DFA on the selected letters, plus the map from DFA letters back to
/// letters of `m` (declaration order is kept).
pub fn collapse_to_dfa(m: &Dvpda, how: Collapse) -> (Dfa, Vec<LetterId>) {
    let a = m.alphabet();
    let keep: Vec<LetterId> = (0..a.len())
        .filter(|&l| {
            matches!(
                (how, a.kind(l)),
                (_, LetterKind::Internal)
                    | (Collapse::BottomLevel, LetterKind::Return)
                    | (Collapse::CallsAsInternals, LetterKind::Call)
            )
        })
        .collect();
    let names = keep.iter().map(|&l| a.name(l).to_string()).collect();
    let dfa = Dfa::from_fn(m.num_states(), names, |q, i| {
        let l = keep[i];
        match a.kind(l) {
            LetterKind::Call => m.call(q, l).0,
            LetterKind::Internal => m.internal(q, l),
            LetterKind::Return => m.ret(q, l, BOTTOM),
        }
    })
    .expect("collapse of a valid automaton is total");
    (dfa, keep)
}

fn dfa_route(m: &Dvpda, how: Collapse, procedure: Procedure) -> Decision {
    let (dfa, back) = collapse_to_dfa(m, how);
    let mut d = dfa_pair_sync(&dfa).with_procedure(procedure);
    if let Some(w) = &mut d.witness {
        for l in w.iter_mut() {
            *l = back[*l];
        }
    }
    d
}

// ---------------------------------------------------------------------------
// Pair product

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairState {
    Pair(StateId, StateId),
    /// The merged copy, entered by a bottom-reading return from a diagonal pair.
    Merged(StateId),
}

/// Product of two runs of `m` with a merged copy; accepts in the merged copy.
pub struct PairProduct<'a> {
    m: &'a Dvpda,
    start: (StateId, StateId),
}

pub fn pair_product(m: &Dvpda, p: StateId, q: StateId) -> PairProduct<'_> {
    PairProduct { m, start: (p, q) }
}

impl ImplicitDvpda for PairProduct<'_> {
    type State = PairState;
    type Symbol = (SymbolId, SymbolId);

    fn letter_kinds(&self) -> &[LetterKind] {
        self.m.alphabet().kinds()
    }

    fn initial(&self) -> PairState {
        PairState::Pair(self.start.0, self.start.1)
    }

    fn call(&self, s: &PairState, l: LetterId) -> (PairState, (SymbolId, SymbolId)) {
        match *s {
            PairState::Pair(x, y) => {
                let ((x2, g), (y2, h)) = (self.m.call(x, l), self.m.call(y, l));
                (PairState::Pair(x2, y2), (g, h))
            }
            PairState::Merged(x) => {
                let (x2, g) = self.m.call(x, l);
                (PairState::Merged(x2), (g, g))
            }
        }
    }

    fn internal(&self, s: &PairState, l: LetterId) -> PairState {
        match *s {
            PairState::Pair(x, y) => PairState::Pair(self.m.internal(x, l), self.m.internal(y, l)),
            PairState::Merged(x) => PairState::Merged(self.m.internal(x, l)),
        }
    }

    fn ret(&self, s: &PairState, l: LetterId, top: Option<&(SymbolId, SymbolId)>) -> PairState {
        match (*s, top) {
            (PairState::Pair(x, y), None) if x == y => PairState::Merged(x),
            (PairState::Pair(x, y), None) => PairState::Pair(self.m.ret(x, l, BOTTOM), self.m.ret(y, l, BOTTOM)),
            (PairState::Pair(x, y), Some(&(g, h))) => PairState::Pair(self.m.ret(x, l, g), self.m.ret(y, l, h)),
            (PairState::Merged(x), None) => PairState::Merged(self.m.ret(x, l, BOTTOM)),
            (PairState::Merged(x), Some(&(g, _))) => PairState::Merged(self.m.ret(x, l, g)),
        }
    }

    fn accepts(&self, s: &PairState) -> bool {
        matches!(s, PairState::Merged(_))
    }
}

/// Outcome of one pair query: the word (if expanded) and the full state map.
struct PairMerge {
    word: Option<Vec<LetterId>>,
    len: u64,
    map: Vec<StateId>,
}

fn merge_pair_vpda(
    m: &Dvpda,
    p: StateId,
    q: StateId,
    opts: &Options,
    explored: &mut usize,
) -> Result<Option<PairMerge>, Error> {
    let res = check_emptiness(&pair_product(m, p, q), AcceptanceMode::FinalStateEmptyStack, opts.budget)?;
    *explored += res.explored;
    let Some(w) = res.witness else {
        return Ok(None);
    };
    match w.expand(opts.witness_cap) {
        Ok(word) => {
            // cut at the first point where both runs agree on empty stacks
            let mut cut = word.len();
            for i in 0..=word.len() {
                let (a, b) = (run(m, p, &word[..i])?, run(m, q, &word[..i])?);
                if a == b && a.height() == 0 {
                    cut = i;
                    break;
                }
            }
            let word = word[..cut].to_vec();
            let map = (0..m.num_states()).map(|s| run(m, s, &word).map(|c| c.state)).collect::<Result<_, _>>()?;
            Ok(Some(PairMerge { len: word.len() as u64, word: Some(word), map }))
        }
        Err(_) => Ok(Some(PairMerge { word: None, len: w.len(), map: w.state_map(m) })),
    }
}

/// Empty-model synchronization by merging pairs through the pair product.
///
/// Automata without return letters can never empty a pushed stack, so
/// there the call letters are dropped and the internal letters decide.
pub fn sync_empty_pairwise(m: &Dvpda, opts: &Options) -> Result<Decision, Error> {
    if !m.alphabet().has(LetterKind::Return) {
        return Ok(dfa_route(m, Collapse::InternalsOnly, Procedure::PairwiseEmpty));
    }
    let start = Instant::now();
    let mut explored = 0;
    let mut rounds = 0;
    let mut active: Vec<StateId> = (0..m.num_states()).collect();
    let mut word = Some(Vec::new());
    let mut len = 0u64;
    let stats = |explored, rounds| Stats { explored, rounds, elapsed: start.elapsed() };
    while active.len() > 1 {
        let Some(step) = merge_pair_vpda(m, active[0], active[1], opts, &mut explored)? else {
            let mut d = Decision::no(Procedure::PairwiseEmpty);
            d.stats = stats(explored, rounds);
            return Ok(d);
        };
        rounds += 1;
        let mut next: Vec<StateId> = active.iter().map(|&s| step.map[s]).collect();
        next.sort_unstable();
        next.dedup();
        active = next;
        len = len.saturating_add(step.len);
        word = match (word, step.word) {
            (Some(mut w), Some(s)) if len <= opts.witness_cap => {
                w.extend(s);
                Some(w)
            }
            _ => None,
        };
    }
    Ok(Decision {
        answer: true,
        witness: word,
        witness_len: Some(len),
        procedure: Procedure::PairwiseEmpty,
        stats: stats(explored, rounds),
    })
}

// ---------------------------------------------------------------------------
// Tuple products

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TupleState {
    /// One component per start state, plus the stroke index (always 0
    /// when no turn bound is imposed).
    Tuple(Box<[StateId]>, usize),
    Check,
    Fin,
    Fail,
}

/// The `|Q|`-fold product of `m` started on the enumeration of `Q`,
/// optionally indexed by strokes, with the acceptance gadget of `model`.
///
/// For the same-stack model a fresh return letter (named
/// [`RESERVED_LETTER`](crate::automata::RESERVED_LETTER)) is appended after
/// the letters of `m`; it pops equal symbol tuples from a diagonal tuple
/// down to the bottom.
pub struct TupleProduct<'a> {
    m: &'a Dvpda,
    model: SyncModel,
    bound: Option<usize>,
    kinds: Vec<LetterKind>,
}

fn all_equal<T: PartialEq>(xs: &[T]) -> bool {
    xs.windows(2).all(|w| w[0] == w[1])
}

impl<'a> TupleProduct<'a> {
    fn new(m: &'a Dvpda, model: SyncModel, bound: Option<usize>) -> Self {
        let mut kinds = m.alphabet().kinds().to_vec();
        if model == SyncModel::Same {
            kinds.push(LetterKind::Return);
        }
        Self { m, model, bound, kinds }
    }

    /// The fresh return letter, if the model needs one.
    pub fn check_letter(&self) -> Option<LetterId> {
        (self.model == SyncModel::Same).then(|| self.m.alphabet().len())
    }

    pub fn mode(&self) -> AcceptanceMode {
        match self.model {
            SyncModel::Empty => AcceptanceMode::FinalStateEmptyStack,
            SyncModel::Same | SyncModel::Arbitrary => AcceptanceMode::FinalState,
        }
    }

    /// Stroke index after a push, or `None` if the bound forbids it.
    fn after_push(&self, i: usize) -> Option<usize> {
        let Some(n) = self.bound else { return Some(0) };
        if i < n + 1 {
            Some(if i.is_multiple_of(2) { i + 1 } else { i })
        } else if (n + 1) % 2 == 1 {
            Some(i)
        } else {
            None
        }
    }

    /// Stroke index after a pop of a non-bottom symbol.
    fn after_pop(&self, i: usize) -> Option<usize> {
        let Some(n) = self.bound else { return Some(0) };
        if i == 0 {
            None
        } else if i < n + 1 {
            Some(if i.is_multiple_of(2) { i } else { i + 1 })
        } else if (n + 1) % 2 == 0 {
            Some(i)
        } else {
            None
        }
    }

    /// Strips the appended check letters from an accepted word.
    pub fn strip(&self, mut word: Vec<LetterId>) -> Vec<LetterId> {
        if let Some(r) = self.check_letter() {
            if let Some(i) = word.iter().position(|&l| l == r) {
                word.truncate(i);
            }
        }
        word
    }
}

/// Unbounded product for any model (the empty-stack model accepts
/// diagonal tuples with the stack at bottom).
pub fn full_product(m: &Dvpda, model: SyncModel) -> TupleProduct<'_> {
    TupleProduct::new(m, model, None)
}

/// Product indexed by the stroke counter `I ∈ {0, …, n+1}`.
pub fn turn_product(m: &Dvpda, model: SyncModel, n: usize) -> TupleProduct<'_> {
    TupleProduct::new(m, model, Some(n))
}

impl ImplicitDvpda for TupleProduct<'_> {
    type State = TupleState;
    type Symbol = Box<[SymbolId]>;

    fn letter_kinds(&self) -> &[LetterKind] {
        &self.kinds
    }

    fn initial(&self) -> TupleState {
        TupleState::Tuple((0..self.m.num_states()).collect(), 0)
    }

    fn call(&self, s: &TupleState, l: LetterId) -> (TupleState, Box<[SymbolId]>) {
        let n = self.m.num_states();
        match s {
            TupleState::Tuple(qs, i) => {
                let (next, syms): (Vec<_>, Vec<_>) = qs.iter().map(|&q| self.m.call(q, l)).unzip();
                let state = match self.after_push(*i) {
                    Some(i) => TupleState::Tuple(next.into(), i),
                    None => TupleState::Fail,
                };
                (state, syms.into())
            }
            // the pushed symbol is irrelevant once the run is trapped
            TupleState::Check | TupleState::Fail => (TupleState::Fail, vec![1; n].into()),
            TupleState::Fin => (TupleState::Fin, vec![1; n].into()),
        }
    }

    fn internal(&self, s: &TupleState, l: LetterId) -> TupleState {
        match s {
            TupleState::Tuple(qs, i) => TupleState::Tuple(qs.iter().map(|&q| self.m.internal(q, l)).collect(), *i),
            TupleState::Check | TupleState::Fail => TupleState::Fail,
            TupleState::Fin => TupleState::Fin,
        }
    }

    fn ret(&self, s: &TupleState, l: LetterId, top: Option<&Box<[SymbolId]>>) -> TupleState {
        if Some(l) == self.check_letter() {
            return match (s, top) {
                (TupleState::Tuple(qs, _), None) if all_equal(qs) => TupleState::Fin,
                (TupleState::Tuple(qs, _), Some(g)) if all_equal(qs) && all_equal(g) => TupleState::Check,
                (TupleState::Check, None) => TupleState::Fin,
                (TupleState::Check, Some(g)) if all_equal(g) => TupleState::Check,
                (TupleState::Fin, _) => TupleState::Fin,
                _ => TupleState::Fail,
            };
        }
        match s {
            TupleState::Tuple(qs, i) => match top {
                None => TupleState::Tuple(qs.iter().map(|&q| self.m.ret(q, l, BOTTOM)).collect(), *i),
                Some(g) => match self.after_pop(*i) {
                    Some(i) => {
                        TupleState::Tuple(qs.iter().zip(g.iter()).map(|(&q, &g)| self.m.ret(q, l, g)).collect(), i)
                    }
                    None => TupleState::Fail,
                },
            },
            TupleState::Check | TupleState::Fail => TupleState::Fail,
            TupleState::Fin => TupleState::Fin,
        }
    }

    fn accepts(&self, s: &TupleState) -> bool {
        match self.model {
            SyncModel::Same => matches!(s, TupleState::Fin),
            SyncModel::Empty | SyncModel::Arbitrary => matches!(s, TupleState::Tuple(qs, _) if all_equal(qs)),
        }
    }
}

fn product_route(p: &TupleProduct<'_>, procedure: Procedure, opts: &Options) -> Result<Decision, Error> {
    let start = Instant::now();
    let res = check_emptiness(p, p.mode(), opts.budget)?;
    let mut d = match res.witness {
        None => Decision::no(procedure),
        Some(w) => from_witness(p, &w, procedure, opts),
    };
    d.stats = Stats { explored: res.explored, rounds: 0, elapsed: start.elapsed() };
    Ok(d)
}

fn from_witness(p: &TupleProduct<'_>, w: &Witness, procedure: Procedure, opts: &Options) -> Decision {
    match w.expand(opts.witness_cap) {
        Ok(word) => Decision::yes(procedure, p.strip(word)),
        Err(e) => {
            Decision { answer: true, witness: None, witness_len: Some(e.len), procedure, stats: Stats::default() }
        }
    }
}

// ---------------------------------------------------------------------------
// Zero-turn reachability

/// Reachability over tuples with a "something was pushed" flag: returns
/// read the bottom symbol while the flag is clear and are blocked after;
/// with `agree`, calls are allowed only when every component pushes the
/// same symbol.
fn zero_turn_reach(m: &Dvpda, agree: bool, procedure: Procedure, opts: &Options) -> Result<Decision, Error> {
    let start = Instant::now();
    let a = m.alphabet();
    let init: (Box<[StateId]>, bool) = ((0..m.num_states()).collect(), false);
    let mut index: HashMap<(Box<[StateId]>, bool), usize> = HashMap::new();
    let mut nodes: Vec<(usize, LetterId)> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert(init.clone(), 0);
    nodes.push((usize::MAX, usize::MAX));
    queue.push_back((init, 0usize));
    while let Some(((qs, pushed), id)) = queue.pop_front() {
        if all_equal(&qs) {
            let mut word = Vec::new();
            let mut cur = id;
            while nodes[cur].0 != usize::MAX {
                word.push(nodes[cur].1);
                cur = nodes[cur].0;
            }
            word.reverse();
            let mut d = Decision::yes(procedure, word);
            d.stats.explored = nodes.len();
            d.stats.elapsed = start.elapsed();
            return Ok(d);
        }
        for l in 0..a.len() {
            let next = match a.kind(l) {
                LetterKind::Internal => (qs.iter().map(|&q| m.internal(q, l)).collect(), pushed),
                LetterKind::Return if !pushed => (qs.iter().map(|&q| m.ret(q, l, BOTTOM)).collect(), false),
                LetterKind::Return => continue,
                LetterKind::Call => {
                    let (next, syms): (Vec<_>, Vec<_>) = qs.iter().map(|&q| m.call(q, l)).unzip();
                    if agree && !all_equal(&syms) {
                        continue;
                    }
                    (next.into(), true)
                }
            };
            if let Entry::Vacant(v) = index.entry(next) {
                if nodes.len() >= opts.budget {
                    return Err(Error::Budget(crate::emptiness::StateBudgetExceeded { budget: opts.budget }));
                }
                let key = v.key().clone();
                v.insert(nodes.len());
                queue.push_back((key, nodes.len()));
                nodes.push((id, l));
            }
        }
    }
    let mut d = Decision::no(procedure);
    d.stats.explored = nodes.len();
    d.stats.elapsed = start.elapsed();
    Ok(d)
}

/// 0-turn synchronization in the same-stack model.
pub fn zero_turn_same_reach(m: &Dvpda, opts: &Options) -> Result<Decision, Error> {
    zero_turn_reach(m, true, Procedure::ZeroTurnSameReach, opts)
}

/// 0-turn synchronization in the arbitrary-stack model.
pub fn zero_turn_arbitrary_reach(m: &Dvpda, opts: &Options) -> Result<Decision, Error> {
    zero_turn_reach(m, false, Procedure::ZeroTurnSameReach, opts)
}

// ---------------------------------------------------------------------------
// Dispatch

/// Decides whether `m` has a synchronizing word in `model`, with at most
/// `turns` turns when given, using the cheapest applicable procedure.
pub fn decide_sync(m: &Dvpda, model: SyncModel, turns: Option<usize>, opts: &Options) -> Result<Decision, Error> {
    let start = Instant::now();
    let mut d = dispatch(m, model, turns, opts)?;
    d.stats.elapsed = start.elapsed();
    Ok(d)
}

fn dispatch(m: &Dvpda, model: SyncModel, turns: Option<usize>, opts: &Options) -> Result<Decision, Error> {
    if m.num_states() == 1 {
        return Ok(Decision::yes(Procedure::SingleState, Vec::new()));
    }
    match (turns, model) {
        (Some(0), SyncModel::Empty) => return Ok(dfa_route(m, Collapse::BottomLevel, Procedure::ZeroTurnDfa)),
        (Some(0), SyncModel::Same) => return zero_turn_same_reach(m, opts),
        (Some(0), SyncModel::Arbitrary) => return zero_turn_arbitrary_reach(m, opts),
        // a word ending at the bottom makes an even number of strokes, so an
        // odd number of turns (or none): an even bound admits no more words
        // than the odd bound below it
        (Some(n), _) => {
            let n = if model == SyncModel::Empty && n % 2 == 0 { n - 1 } else { n };
            if let Some(d) = unbounded_shortcut(m, model, n, opts)? {
                return Ok(d);
            }
            return product_route(&turn_product(m, model, n), Procedure::TurnProduct, opts);
        }
        (None, _) => {}
    }
    let class = classify(m);
    if class.is_very_visibly && (class.has_return || model != SyncModel::Empty) {
        // with returns the empty-stack answer is reused for every model
        return Ok(match (class.has_return, model) {
            (true, SyncModel::Empty) => sync_empty_pairwise(m, opts)?,
            (true, _) => sync_empty_pairwise(m, opts)?.with_procedure(Procedure::VvEquivalence),
            (false, _) => dfa_route(m, Collapse::CallsAsInternals, Procedure::VvEquivalence),
        });
    }
    match (model, class.has_return) {
        (SyncModel::Empty, _) => sync_empty_pairwise(m, opts),
        (SyncModel::Same, true) => Ok(sync_empty_pairwise(m, opts)?.with_procedure(Procedure::SameReturnReduction)),
        (SyncModel::Same, false) => zero_turn_same_reach(m, opts),
        (SyncModel::Arbitrary, false) => Ok(dfa_route(m, Collapse::CallsAsInternals, Procedure::ArbNoReturnDfa)),
        (SyncModel::Arbitrary, true) => product_route(&full_product(m, model), Procedure::FullProduct, opts),
    }
}

/// Settles a bounded query from the unbounded one when the latter avoids
/// the general product: a no carries over, and so does a yes whose witness
/// already respects the bound.
fn unbounded_shortcut(m: &Dvpda, model: SyncModel, n: usize, opts: &Options) -> Result<Option<Decision>, Error> {
    if model == SyncModel::Arbitrary && m.alphabet().has(LetterKind::Return) && !classify(m).is_very_visibly {
        return Ok(None);
    }
    let d = dispatch(m, model, None, opts)?;
    if !d.answer {
        return Ok(Some(d));
    }
    match &d.witness {
        Some(w) if check_witness(m, w, model, Some(n))? => Ok(Some(d)),
        _ => Ok(None),
    }
}

/// Decision through the unbounded product alone, bypassing the dispatcher.
pub fn decide_by_product(m: &Dvpda, model: SyncModel, opts: &Options) -> Result<Decision, Error> {
    product_route(&full_product(m, model), Procedure::FullProduct, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures::{identity2, m1};
    use crate::automata::{cerny, embed_dfa, DvpdaBuilder, PartitionedAlphabet, StackAlphabet};
    use crate::emptiness::is_empty;
    use crate::semantics::check_witness;

    const A: LetterId = 0;
    const D: LetterId = 2;

    fn opts() -> Options {
        Options::default()
    }

    #[test]
    fn pair_product_examples() {
        let m = m1();
        let res = check_emptiness(&pair_product(&m, 0, 1), AcceptanceMode::FinalStateEmptyStack, 1000).unwrap();
        let word = res.witness.unwrap().expand(100).unwrap();
        assert!(check_witness(&m, &word[..word.len() - 1], SyncModel::Empty, None).unwrap());
        let res = check_emptiness(&pair_product(&m, 1, 1), AcceptanceMode::FinalStateEmptyStack, 1000).unwrap();
        assert_eq!(res.witness.unwrap().expand(10).unwrap(), vec![D]);
        let id = identity2();
        assert!(is_empty(&pair_product(&id, 0, 1), AcceptanceMode::FinalStateEmptyStack, 1000).unwrap());
    }

    #[test]
    fn pairwise_examples() {
        let d = sync_empty_pairwise(&m1(), &opts()).unwrap();
        assert!(d.answer);
        assert_eq!(d.witness, Some(vec![A, D]));
        assert_eq!(d.stats.rounds, 1);
        assert!(!sync_empty_pairwise(&identity2(), &opts()).unwrap().answer);
    }

    #[test]
    fn full_product_examples() {
        let m = m1();
        let d = decide_by_product(&m, SyncModel::Arbitrary, &opts()).unwrap();
        assert!(d.answer);
        assert!(check_witness(&m, d.witness.as_ref().unwrap(), SyncModel::Arbitrary, None).unwrap());
        let d = decide_by_product(&m, SyncModel::Same, &opts()).unwrap();
        assert!(d.answer);
        assert!(check_witness(&m, d.witness.as_ref().unwrap(), SyncModel::Same, None).unwrap());
        for model in SyncModel::ALL {
            assert!(!decide_by_product(&identity2(), model, &opts()).unwrap().answer);
        }
    }

    #[test]
    fn turn_product_examples() {
        let m = m1();
        let p = turn_product(&m, SyncModel::Empty, 1);
        let d = product_route(&p, Procedure::TurnProduct, &opts()).unwrap();
        assert!(d.answer);
        assert!(check_witness(&m, d.witness.as_ref().unwrap(), SyncModel::Empty, Some(1)).unwrap());
        let p = turn_product(&m, SyncModel::Empty, 0);
        assert!(!product_route(&p, Procedure::TurnProduct, &opts()).unwrap().answer);
    }

    #[test]
    fn zero_turn_examples() {
        let d = zero_turn_same_reach(&m1(), &opts()).unwrap();
        assert_eq!(d.witness, Some(vec![A]));
        // the only merging letter pushes different symbols per state
        let alphabet = PartitionedAlphabet::from_letters([("a", LetterKind::Call)]);
        let mut stack = StackAlphabet::new("BOT");
        let (x, y) = (stack.push("X"), stack.push("Y"));
        let mut b = DvpdaBuilder::new(2, alphabet, stack);
        b.call(0, 0, 0, x).call(1, 0, 0, y);
        let m = b.build().unwrap();
        assert!(!zero_turn_same_reach(&m, &opts()).unwrap().answer);
        assert!(zero_turn_arbitrary_reach(&m, &opts()).unwrap().answer);
    }

    #[test]
    fn dispatch_examples() {
        let m = m1();
        let d = decide_sync(&m, SyncModel::Empty, None, &opts()).unwrap();
        assert_eq!((d.answer, d.procedure), (true, Procedure::PairwiseEmpty));
        assert_eq!(d.witness, Some(vec![A, D]));
        let d = decide_sync(&m, SyncModel::Same, None, &opts()).unwrap();
        assert_eq!((d.answer, d.procedure), (true, Procedure::VvEquivalence));
        let d = decide_sync(&m, SyncModel::Empty, Some(0), &opts()).unwrap();
        assert_eq!((d.answer, d.procedure), (false, Procedure::ZeroTurnDfa));
    }

    #[test]
    fn pairwise_on_general_automaton() {
        // same tables as M1 but a second pushed symbol breaks very-visibility
        let alphabet = PartitionedAlphabet::from_letters([
            ("a", LetterKind::Call),
            ("b", LetterKind::Internal),
            ("d", LetterKind::Return),
        ]);
        let mut stack = StackAlphabet::new("BOT");
        let (x, y) = (stack.push("X"), stack.push("Y"));
        let mut b = DvpdaBuilder::new(2, alphabet, stack);
        b.call(0, 0, 1, x).call(1, 0, 1, y);
        b.internal(0, 1, 1).internal(1, 1, 0);
        for q in 0..2 {
            b.ret(q, 2, x, 0).ret(q, 2, y, 0).ret(q, 2, BOTTOM, q);
        }
        let m = b.build().unwrap();
        let d = decide_sync(&m, SyncModel::Empty, None, &opts()).unwrap();
        assert_eq!((d.answer, d.procedure), (true, Procedure::PairwiseEmpty));
        assert_eq!(d.witness, Some(vec![A, D]));
        let d = decide_sync(&m, SyncModel::Arbitrary, None, &opts()).unwrap();
        assert_eq!((d.answer, d.procedure), (true, Procedure::FullProduct));
        assert_eq!(d.witness, Some(vec![A]));
    }

    #[test]
    fn dfa_pair_examples() {
        let d = dfa_pair_sync(&cerny(3));
        assert!(d.answer);
        let w = d.witness.unwrap();
        assert!(w.len() <= 9);
        assert_eq!(cerny(3).image(&[0, 1, 2], &w).len(), 1);
        let id = Dfa::from_fn(2, vec!["x".into()], |q, _| q).unwrap();
        assert!(!dfa_pair_sync(&id).answer);
        let one = Dfa::from_fn(1, vec!["x".into()], |q, _| q).unwrap();
        assert_eq!(dfa_pair_sync(&one).witness, Some(vec![]));
    }

    #[test]
    fn single_state_is_trivially_synchronized() {
        let m = embed_dfa(&cerny(1));
        for model in SyncModel::ALL {
            let d = decide_sync(&m, model, None, &opts()).unwrap();
            assert_eq!(d.witness, Some(vec![]));
        }
    }

    #[test]
    fn very_visibly_without_returns_differs_in_empty_model() {
        // both states call into 0: same/arbitrary synchronize, empty cannot
        let alphabet = PartitionedAlphabet::from_letters([("a", LetterKind::Call)]);
        let mut stack = StackAlphabet::new("BOT");
        let x = stack.push("X");
        let mut b = DvpdaBuilder::new(2, alphabet, stack);
        b.call(0, 0, 0, x).call(1, 0, 0, x);
        let m = b.build().unwrap();
        assert!(decide_sync(&m, SyncModel::Same, None, &opts()).unwrap().answer);
        assert!(decide_sync(&m, SyncModel::Arbitrary, None, &opts()).unwrap().answer);
        assert!(!decide_sync(&m, SyncModel::Empty, None, &opts()).unwrap().answer);
        assert!(!decide_by_product(&m, SyncModel::Empty, &opts()).unwrap().answer);
    }
}
