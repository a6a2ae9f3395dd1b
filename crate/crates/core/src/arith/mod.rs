//! Exact arithmetic: Laurent polynomials, rational functions of `q`,
//! truncated series in `z`, and q-numbers.

pub mod laurent;
pub mod qnum;
pub mod qrat;
pub mod series;

pub use laurent::LaurentPoly;
pub use qnum::{gbinom, gbinom_i64, q_minus_qinv, qbinom, qfactorial, qint};
pub use qrat::{LPoly, QRat};
pub use series::{series_inverse, Series, SeriesCoeff, ZSeries};
