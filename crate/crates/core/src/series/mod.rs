//! Truncated multivariate power series, log-polynomials over them, and
//! single-variable rational functions.

pub mod logseries;
pub mod qseries;
pub mod ratfunc;

pub use logseries::{series_reversion, LogQSeries};
pub use qseries::{series_exp, series_invert, series_log, series_mul, theta_apply, Coefficient, DegreeBound, QSeries};
pub use ratfunc::{rational_to_series, RationalFunctionQ};
