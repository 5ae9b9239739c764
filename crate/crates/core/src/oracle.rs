//! Bounded breadth-first search for shortest synchronizing words.
//!
//! Used as ground truth for the decision procedures: it works directly on
//! global configurations and shares no code with them beyond single steps.

use std::collections::HashSet;

use crate::automata::{Dvpda, LetterId};
use crate::semantics::{is_synchronized, step_global, GlobalConfig, SyncModel, TurnCounter};

pub const DEFAULT_LIMIT: usize = 12;
pub const DEFAULT_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Lexicographically least among the shortest synchronizing words.
    Found(Vec<LetterId>),
    NoneWithin(usize),
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub outcome: Outcome,
    /// Distinct configurations visited.
    pub explored: usize,
}

impl OracleResult {
    pub fn found(&self) -> Option<&[LetterId]> {
        match &self.outcome {
            Outcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Visited-set key: states, then the stacks level by level (heights are
/// uniform), then the turn profile when a bound is being enforced.
fn key(g: &GlobalConfig, track_turns: bool) -> Vec<u32> {
    let h = g.height();
    let mut k = Vec::with_capacity(g.per_start.len() * (h + 2) + 2);
    k.extend(g.per_start.iter().map(|c| c.state as u32));
    for level in 1..=h {
        k.extend(g.per_start.iter().map(|c| c.stack[level] as u32));
    }
    if track_turns {
        let TurnCounter { turns, last } = g.turns;
        k.push(u32::MAX);
        k.push(turns as u32);
        k.push(match last {
            None => 0,
            Some(crate::semantics::Direction::Up) => 1,
            Some(crate::semantics::Direction::Down) => 2,
        });
    }
    k
}

pub fn oracle_search(m: &Dvpda, model: SyncModel, turns: Option<usize>, limit: usize, budget: usize) -> OracleResult {
    let ok = |g: &GlobalConfig| is_synchronized(g, model) && turns.is_none_or(|n| g.turns_so_far() <= n);
    let init = GlobalConfig::initial(m);
    if ok(&init) {
        return OracleResult { outcome: Outcome::Found(Vec::new()), explored: 1 };
    }
    // parents[i] = (parent node, letter); the root has parent usize::MAX
    let mut parents: Vec<(usize, LetterId)> = vec![(usize::MAX, 0)];
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(key(&init, turns.is_some()));
    let mut frontier = vec![(init, 0usize)];
    let word_of = |parents: &[(usize, LetterId)], mut i: usize| {
        let mut w = Vec::new();
        while parents[i].0 != usize::MAX {
            w.push(parents[i].1);
            i = parents[i].0;
        }
        w.reverse();
        w
    };
    for _ in 0..limit {
        let mut next = Vec::new();
        for (g, id) in &frontier {
            for l in 0..m.alphabet().len() {
                let mut g2 = g.clone();
                step_global(m, &mut g2, l);
                if turns.is_some_and(|n| g2.turns_so_far() > n) {
                    continue;
                }
                if !seen.insert(key(&g2, turns.is_some())) {
                    continue;
                }
                if seen.len() > budget {
                    return OracleResult { outcome: Outcome::BudgetExceeded, explored: seen.len() };
                }
                parents.push((*id, l));
                let nid = parents.len() - 1;
                if ok(&g2) {
                    return OracleResult { outcome: Outcome::Found(word_of(&parents, nid)), explored: seen.len() };
                }
                next.push((g2, nid));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    OracleResult { outcome: Outcome::NoneWithin(limit), explored: seen.len() }
}
