//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors reported by parsing, enumeration, and the algebraic algorithms.
///
/// Size-cap variants signal inputs beyond the intended desk scale rather
/// than recoverable conditions; callers usually surface them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Words are nonempty by definition.
    #[error("empty word")]
    EmptyWord,

    /// A character that starts no letter token.
    #[error("unknown symbol {symbol:?} at byte {position}")]
    UnknownSymbol { symbol: char, position: usize },

    /// An `xN` token with `N = 0` or `N` out of range.
    #[error("invalid letter index in token {token:?}: indices start at 1")]
    InvalidLetterIndex { token: String },

    /// Malformed content, partition, identity, or presentation text.
    #[error("parse error: {0}")]
    Parse(String),

    /// Queried letter does not occur in the word.
    #[error("letter {letter} does not occur in {word}")]
    LetterAbsent { letter: String, word: String },

    /// An enumeration or search would exceed its configured cap.
    #[error("{what} = {value} exceeds cap {cap}")]
    SizeCapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    /// Pattern longer than the target (or the fixed pattern cap).
    #[error("pattern of length {pattern_len} exceeds limit {limit}")]
    PatternTooLong { pattern_len: usize, limit: usize },

    /// Rewriting is defined for balanced identities only.
    #[error("identity {identity:?} is not balanced")]
    UnbalancedIdentity { identity: String },

    /// Permutation group degree beyond the supported range.
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    /// A word mentions letters outside a permutation's degree.
    #[error("letter index {letter_index} exceeds permutation degree {degree}")]
    DegreeMismatch { degree: usize, letter_index: u32 },

    /// Congruence enumeration grew past its cap.
    #[error("congruence count exceeds cap {cap}")]
    LatticeCapExceeded { cap: usize },

    /// Identity evaluation would sweep too many assignments.
    #[error("{count} assignments exceed cap {cap}")]
    AssignmentCapExceeded { count: u128, cap: u128 },

    /// Word too short for the requested end split.
    #[error("word of length {len} is too short: the split needs at least {need} letters")]
    WordTooShort { len: usize, need: usize },

    /// The presentation contains an unbalanced identity, so the variety
    /// it presents is not overcommutative.
    #[error("presentation is not overcommutative: identity {identity:?} is unbalanced")]
    NotOvercommutative { identity: String },

    /// No member of the class satisfies the end condition.  Under the
    /// premises this module verifies, every class must contain one, so
    /// this error indicates a genuine counterexample (or a bug).
    #[error("no member of the class of {word} avoids heavy end letters (k={k}, n={n})")]
    NoNormalFormFound { word: String, k: usize, n: u32 },

    /// Two words share both end segments yet lie in distinct classes.
    /// Impossible when the variety lies below the corresponding
    /// permutational variety; indicates a counterexample (or a bug).
    #[error("boundary property violated: {w1} and {w2} share ends but lie in distinct classes")]
    BoundaryPropertyViolated { w1: String, w2: String },

    /// A relation on a G-set that is not stable under the action.
    #[error("equivalence is not stable under the group action")]
    UnstableEquivalence,

    /// An action table that is not a group action.
    #[error("invalid action: {reason}")]
    InvalidAction { reason: String },

    /// An order table that is not a lattice (or not even an order).
    #[error("invalid lattice: {reason}")]
    InvalidLattice { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
