//! Error types shared across the crate.

use thiserror::Error;

/// Failure to read a permutation from text. Positions are 1-based and refer
/// to characters in the compact form and to whitespace-separated tokens
/// otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("invalid character {ch:?} at position {pos}; compact form allows only digits 1-9")]
    BadChar { ch: char, pos: usize },
    #[error("token {text:?} at position {pos} is not a value")]
    BadToken { text: String, pos: usize },
    #[error("value {value} at position {pos} is outside 1..={len}")]
    OutOfRange { value: usize, len: usize, pos: usize },
    #[error("value {value} at position {pos} occurs more than once")]
    Repeated { value: usize, pos: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("permutations are nonempty; the empty word is excluded")]
    EmptyPermutation,
    #[error("permutations longer than 255 are not supported")]
    TooLong,
    #[error("the single-point permutation has no shadow")]
    ShadowOfPoint,
    #[error("shadow sets are nonempty")]
    EmptyShadowSet,
    #[error("shadow set mixes lengths {a} and {b}")]
    MixedShadowLengths { a: usize, b: usize },
    #[error("shadow inversion requires target length at least 5, got {target}")]
    InvertTargetTooShort { target: usize },
    #[error("inflation of a length-{skeleton} skeleton needs {skeleton} parts, got {parts}")]
    InflationArity { skeleton: usize, parts: usize },
    #[error("bad symmetry word: character {ch:?} at position {pos}")]
    BadSymmetryWord { ch: char, pos: usize },
    #[error("{perm} is not a member of {class}")]
    NotInClass { class: &'static str, perm: String },
    #[error("level {length} exceeds the cap of {cap} members")]
    LevelCap { length: usize, cap: usize },
    #[error("levels materialized through length {have}, but length {need} was requested")]
    LevelsNotMaterialized { need: usize, have: usize },
    #[error("polynomial has no sign change on (0, 1)")]
    NoRootInUnitInterval,
    #[error("series are defined for class ids 2, 3, 5 and 6, got {0}")]
    UnknownSeriesClass(u8),
    #[error("series index {0} is out of the supported range 1..=40")]
    SeriesIndexOutOfRange(usize),
    #[error("invalid seed bijection: {0}")]
    InvalidSeed(String),
    #[error("seed set is not closed under composition: missing {0}")]
    GroupNotClosed(String),
    #[error("candidate has length {got}, but the frontier admits length {want}")]
    WrongCandidateLength { want: usize, got: usize },
    #[error("ab-words longer than 254 letters decode to unsupported lengths")]
    WordTooLong,
    #[error("bad ab-word: character {ch:?} at position {pos}")]
    BadAbWord { ch: char, pos: usize },
}
