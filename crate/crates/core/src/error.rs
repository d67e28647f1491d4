use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("duplicate transition for state `{state}` on letter `{letter}`")]
    DuplicateTransition { state: String, letter: String },

    #[error("alphabet must not be empty")]
    EmptyAlphabet,

    #[error("state set must not be empty")]
    EmptyStates,

    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("`{0}` needs an explicitly enumerated automaton")]
    Unsupported(&'static str),

    #[error(
        "not invertible: state `{state}` writes `{output}` on both `{first}` and `{second}`"
    )]
    NotInvertible {
        state: String,
        output: String,
        first: String,
        second: String,
    },

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("oracle exploration bound of {0} states exceeded")]
    ExplorationBound(usize),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("tile set is not SW-deterministic: tiles {first} and {second} share west and south colors")]
    NotSwDeterministic { first: String, second: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
