//! Runs of a DVPDA from single states and from all states at once.

use std::fmt;

use crate::automata::{Dvpda, LetterId, LetterKind, StateId, SymbolId, BOTTOM};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: StateId,
    /// Position 0 is the bottom symbol; the top is the right end.
    pub stack: Vec<SymbolId>,
}

impl Config {
    pub fn initial(state: StateId) -> Self {
        Self { state, stack: vec![BOTTOM] }
    }

    pub fn height(&self) -> usize {
        self.stack.len() - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

/// Stroke bookkeeping for the stack-height profile of a word.
///
/// Only nonzero height changes count; a turn is a sign change between
/// consecutive nonzero changes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TurnCounter {
    pub turns: usize,
    pub last: Option<Direction>,
}

impl TurnCounter {
    pub fn record(&mut self, dir: Option<Direction>) {
        if let Some(d) = dir {
            if self.last.is_some_and(|l| l != d) {
                self.turns += 1;
            }
            self.last = Some(d);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SyncModel {
    Empty,
    Same,
    Arbitrary,
}

impl SyncModel {
    pub const ALL: [SyncModel; 3] = [SyncModel::Empty, SyncModel::Same, SyncModel::Arbitrary];
}

impl fmt::Display for SyncModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            SyncModel::Empty => "empty",
            SyncModel::Same => "same",
            SyncModel::Arbitrary => "arbitrary",
        })
    }
}

impl std::str::FromStr for SyncModel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "empty" => Ok(SyncModel::Empty),
            "same" => Ok(SyncModel::Same),
            "arbitrary" | "arb" => Ok(SyncModel::Arbitrary),
            other => Err(format!("unknown model {other:?} (expected empty, same or arbitrary)")),
        }
    }
}

/// Configurations of the runs started in every state, plus the shared
/// turn profile (stack heights agree across runs).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlobalConfig {
    pub per_start: Vec<Config>,
    pub turns: TurnCounter,
}

impl GlobalConfig {
    pub fn initial(m: &Dvpda) -> Self {
        Self { per_start: (0..m.num_states()).map(Config::initial).collect(), turns: TurnCounter::default() }
    }

    pub fn turns_so_far(&self) -> usize {
        self.turns.turns
    }

    pub fn height(&self) -> usize {
        self.per_start[0].height()
    }
}

fn check_letter(m: &Dvpda, letter: LetterId) -> Result<(), crate::Error> {
    if letter < m.alphabet().len() {
        Ok(())
    } else {
        Err(crate::Error::UnknownLetter(format!("#{letter}")))
    }
}

/// One transition in place; returns the height change direction.
pub(crate) fn step_in_place(m: &Dvpda, c: &mut Config, letter: LetterId) -> Option<Direction> {
    match m.kind(letter) {
        LetterKind::Call => {
            let (q, g) = m.call(c.state, letter);
            c.state = q;
            c.stack.push(g);
            Some(Direction::Up)
        }
        LetterKind::Internal => {
            c.state = m.internal(c.state, letter);
            None
        }
        LetterKind::Return => {
            let top = *c.stack.last().expect("stack always holds the bottom symbol");
            c.state = m.ret(c.state, letter, top);
            if top == BOTTOM {
                None
            } else {
                c.stack.pop();
                Some(Direction::Down)
            }
        }
    }
}

pub fn step(m: &Dvpda, c: &Config, letter: LetterId) -> Result<Config, crate::Error> {
    check_letter(m, letter)?;
    let mut next = c.clone();
    step_in_place(m, &mut next, letter);
    Ok(next)
}

pub fn run(m: &Dvpda, q: StateId, word: &[LetterId]) -> Result<Config, crate::Error> {
    let mut c = Config::initial(q);
    for &l in word {
        check_letter(m, l)?;
        step_in_place(m, &mut c, l);
    }
    Ok(c)
}

pub(crate) fn step_global(m: &Dvpda, g: &mut GlobalConfig, letter: LetterId) {
    let mut dir = None;
    for c in &mut g.per_start {
        dir = step_in_place(m, c, letter);
    }
    g.turns.record(dir);
}

pub fn simulate_all(m: &Dvpda, word: &[LetterId]) -> Result<GlobalConfig, crate::Error> {
    let mut g = GlobalConfig::initial(m);
    for &l in word {
        check_letter(m, l)?;
        step_global(m, &mut g, l);
    }
    Ok(g)
}

pub fn is_synchronized(g: &GlobalConfig, model: SyncModel) -> bool {
    let Some(first) = g.per_start.first() else {
        return true;
    };
    let states_agree = g.per_start.iter().all(|c| c.state == first.state);
    states_agree
        && match model {
            SyncModel::Arbitrary => true,
            SyncModel::Same => g.per_start.iter().all(|c| c.stack == first.stack),
            SyncModel::Empty => g.per_start.iter().all(|c| c.stack.len() == 1),
        }
}

pub fn check_witness(
    m: &Dvpda,
    word: &[LetterId],
    model: SyncModel,
    turn_bound: Option<usize>,
) -> Result<bool, crate::Error> {
    let g = simulate_all(m, word)?;
    Ok(is_synchronized(&g, model) && turn_bound.is_none_or(|n| g.turns_so_far() <= n))
}
