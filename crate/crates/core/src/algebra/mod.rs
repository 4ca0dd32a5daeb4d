//! Exact bivariate algebra: Laurent polynomials, Euler forms, truncated series.

pub mod euler_form;
pub mod format;
pub mod poly;
pub mod series;

pub use euler_form::{EulerForm, Inversion};
pub use poly::LaurentPoly;
pub use series::{expand_series, TruncatedSeries};
