//! Exact construction and validation of fine Euler factors of pro-isomorphic
//! zeta functions of nilpotent Lie lattices.

pub mod algebra;
pub mod comb;
pub mod coxeter;
pub mod dirichlet;
pub mod error;
pub mod families;
pub mod numberfield;
pub mod oracle;
pub mod symmetry;
pub mod verify;

pub use algebra::{expand_series, EulerForm, LaurentPoly, TruncatedSeries};
pub use error::{Result, ZetaError};
