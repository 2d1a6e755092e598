use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix size {0} is out of range (1..=64)")]
    InvalidSize(usize),

    #[error("position ({i},{j}) is not strictly upper-triangular for n={n}")]
    InvalidPosition { n: usize, i: usize, j: usize },

    #[error("diagonal vector has length {len}, expected {n}")]
    DiagLength { n: usize, len: usize },

    #[error("diagonal vector {0:?} is not traceless")]
    NotTraceless(Vec<i64>),

    #[error("cartan generator {0} repeats an earlier generator")]
    DuplicateGenerator(usize),

    #[error("cartan generators are linearly dependent")]
    DependentCartan,

    #[error("subalgebra is not closed under the bracket; missing {}", fmt_positions(.defects))]
    NotClosed { defects: Vec<(usize, usize)> },

    #[error("the zero algebra has no nonzero element")]
    ZeroAlgebra,

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("parse error at byte {position} near `{token}`: {message}")]
    Parse {
        position: usize,
        token: String,
        message: &'static str,
    },

    #[error("not a bijection of 1..={0}")]
    NotBijective(usize),

    #[error("no explicit conjugator recipe covers {0}")]
    NoRecipe(String),

    #[error("{what} requires n <= {max}, got {n}")]
    Guard {
        what: &'static str,
        n: usize,
        max: usize,
    },
}

fn fmt_positions(ps: &[(usize, usize)]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (k, (i, j)) in ps.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        let _ = write!(s, "({i},{j})");
    }
    s
}
