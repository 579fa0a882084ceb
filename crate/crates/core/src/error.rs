use thiserror::Error;

use crate::algebra::AlgebraTag;

/// Errors raised by the algebraic and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot combine {left:?} and {right:?} elements")]
    TagMismatch { left: AlgebraTag, right: AlgebraTag },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("invalid step function: {0}")]
    InvalidStepFunction(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("generator B^{n}_{k} has no truncated action on the order-{order} number vectors")]
    UnsupportedGenerator { n: i64, k: i64, order: u32 },

    #[error("jet order {0} exceeds the supported maximum of 2")]
    UnsupportedOrder(usize),

    #[error("bracket coefficient kN - Kn vanishes for (n,k,N,K) = ({n},{k},{big_n},{big_k})")]
    PrescriptionInapplicable { n: i64, k: i64, big_n: i64, big_k: i64 },

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for errors caused by inputs outside an operation's domain, as
    /// opposed to failures of the computation itself.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Numerical(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
