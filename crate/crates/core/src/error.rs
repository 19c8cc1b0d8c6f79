use thiserror::Error;

use crate::mcs::McsId;
use crate::pauli::Gpm;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(u32),

    #[error("GBS set contains {0} more than once")]
    DuplicateElement(Gpm),

    #[error("GBS set must not be empty")]
    EmptySet,

    #[error("set of size {size} is outside the supported range 2..={max}")]
    SetSizeOutOfRange { size: usize, max: u32 },

    #[error("{id} is not a maximally commutative set label for d = {d}")]
    InvalidMcsId { id: McsId, d: u32 },

    #[error("the indistinguishability pattern is only defined for even d, got {0}")]
    OddDimension(u32),

    #[error("{a} and {b} commute; the orthogonality check needs a non-commuting pair")]
    CommutingPair { a: Gpm, b: Gpm },

    #[error("no representative catalog for d = {0}")]
    UnsupportedDimension(u32),

    #[error("unknown table `{0}`")]
    UnknownTable(String),

    #[error("spectrum stayed degenerate after {attempts} coefficient draws")]
    DegenerateAfterRetries { attempts: usize },

    #[error("table data {file}:{line}: {message}")]
    TableData {
        file: &'static str,
        line: usize,
        message: String,
    },

    #[error("cannot parse {0:?}")]
    Parse(String),
}
