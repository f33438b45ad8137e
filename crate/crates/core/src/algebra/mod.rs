//! Exact arithmetic over the rationals: multivariate polynomials, dense
//! univariate polynomials, truncated power series and a small sparse
//! elimination kernel used for jet-space rank computations.

mod linalg;
mod parse;
mod poly;
mod rat;
mod resultant;
mod series;
mod univariate;

pub use linalg::EchelonBasis;
pub use parse::{parse_poly, ParseError};
pub use poly::Poly;
pub use rat::{parse_rat, rat, rat_to_f64, rat_to_string, rational_nth_root, Rat};
pub use resultant::resultant;
pub use series::{compose_unchecked, series_compose, TruncSeries};
pub use univariate::{RationalRoots, UniPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// The composed series vanishes through the working order but the inputs
    /// are not exact, so vanishing cannot be certified.
    #[error("series vanishes through order {order}; re-expand with a larger truncation")]
    TruncationInsufficient { order: u32 },
    #[error("polynomial has {found} variables but {expected} series were supplied")]
    ArityMismatch { expected: usize, found: usize },
    #[error("series do not share a common parameter")]
    ParameterMismatch,
}
