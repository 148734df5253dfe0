//! Exact character-table workbench.
//!
//! Arithmetic lives in Q(√3) ([`exact::Scalar`]). On top of it sit character
//! tables and class functions ([`chartable`]), Suzuki's special-class calculus
//! ([`suzuki`]), the principal-block column search ([`blocks`]) and a small
//! permutation-group engine used as an independent oracle ([`permgroup`]).

pub mod blocks;
pub mod chartable;
pub mod error;
pub mod exact;
pub mod gram;
pub mod linalg;
pub mod permgroup;
pub mod suzuki;

pub use error::{Error, Result};
pub use exact::{Rational, Scalar};
