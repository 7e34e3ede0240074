use thiserror::Error;

use crate::tableau::TriIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid pyramid: {0}")]
    InvalidPyramid(String),
    #[error("triple {0} is not in the index set of the pyramid")]
    InvalidTriple(TriIndex),
    #[error("invalid relation {greater} -> {lesser}: {reason}")]
    InvalidRelation {
        greater: TriIndex,
        lesser: TriIndex,
        reason: String,
    },
    #[error("relation set contains a loop among top-row triples")]
    TopRowLoop,
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("shift touches the frozen top row at {0}")]
    TopRowShift(TriIndex),
    #[error("critical tableau: coincident entries in row {row}")]
    Critical { row: usize },
    #[error("relation set is critical")]
    CriticalSet,
    #[error("tableau does not satisfy the relation set")]
    SeedViolatesRelations,
    #[error("tableau realizes no relation set: integer-linked entries in row {row} are not related")]
    NotRealizable { row: usize },
    #[error("triple {0} is neither maximal nor minimal")]
    NotExtremal(TriIndex),
    #[error("permutation is not a bijection of row {0}")]
    BadPermutation(usize),
    #[error("window overflow: {0}")]
    WindowOverflow(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("series has zero constant term")]
    NonInvertibleSeries,
    #[error("superscript {superscript} of e_{row} is below the minimal degree {min}")]
    SuperscriptTooSmall {
        row: usize,
        superscript: usize,
        min: usize,
    },
    #[error("depth overflow: {0}")]
    DepthOverflow(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("weight is not good: {0}")]
    NotGood(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
