//! Synchronizing words for deterministic visibly push-down automata.
//!
//! Decides whether a DVPDA (or one of its sub-classes: very visibly
//! push-down automata and visibly counter automata) admits a synchronizing
//! word in the empty, same or arbitrary stack model, optionally bounding
//! the number of turns of the stack-height profile. Every positive answer
//! carries a witness word that can be replayed with [`semantics`].
//!
//! ```
//! use visync::{format, sync, semantics::SyncModel};
//!
//! let m = format::parse_dvpda(
//!     "dvpda\nstates 2\nstack BOT X\ncalls a\nints b\nrets d\n\
//!      c 0 a -> 1 push X\nc 1 a -> 1 push X\ni 0 b -> 1\ni 1 b -> 0\n\
//!      r 0 d X -> 0\nr 1 d X -> 0\nr 0 d BOT -> 0\nr 1 d BOT -> 1\n",
//! )?;
//! let d = sync::decide_sync(&m, SyncModel::Empty, None, &sync::Options::default())?;
//! assert!(d.answer);
//! assert_eq!(m.alphabet().render(d.witness.as_deref().unwrap()), "a d");
//! # Ok::<(), visync::Error>(())
//! ```

pub mod automata;
pub mod cli;
pub mod emptiness;
pub mod format;
pub mod oracle;
pub mod random;
pub mod reductions;
pub mod semantics;
pub mod sync;
pub mod transducer;

pub use automata::{ClassReport, Dfa, Dvpda, DvpdaBuilder, LetterKind, PartitionedAlphabet, StackAlphabet};
pub use semantics::SyncModel;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Automaton(#[from] automata::Error),
    #[error(transparent)]
    Dfa(#[from] automata::DfaError),
    #[error(transparent)]
    Parse(#[from] format::ParseError),
    #[error("unknown letter {0}")]
    UnknownLetter(String),
    #[error(transparent)]
    Budget(#[from] emptiness::StateBudgetExceeded),
    #[error(transparent)]
    WitnessTooLong(#[from] emptiness::TooLong),
    #[error("name {0} is already used by the input automaton")]
    NameCollision(String),
    #[error("transducer is not visibly: letter {0} emits outputs of different lengths")]
    NotVisibly(String),
    #[error("transducer is not very visibly: letter {0} emits different outputs")]
    NotVeryVisibly(String),
    #[error("subset search over {states} states exceeds the cap of {cap}")]
    CapExceeded { states: usize, cap: usize },
    #[error("{0}")]
    Invalid(String),
}
