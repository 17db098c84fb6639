//! Exact arithmetic toolkit for eta-quotients of prime level.
//!
//! The crate enumerates eta-quotients `η(z)^{r_1} η(pz)^{r_p}` that are
//! holomorphic modular forms on `Γ₀(p)` (with character), expands them as exact
//! `q`-series, checks linear independence by exact rank, and compares the counts
//! against dimension formulas for the corresponding spaces of cusp forms.
//!
//! Every closed-form count has a brute-force counterpart in [`enumeration`] so the
//! two can be compared cell by cell.

pub mod dimensions;
pub mod enumeration;
pub mod error;
pub mod etaquotient;
pub mod exactmath;
pub mod independence;
pub mod multiplier;
pub mod qseries;

pub use error::{Error, Result};
pub use etaquotient::{CuspOrders, EtaQuotient, NebentypusCharacter};
pub use qseries::Q24Series;

/// Arbitrary-precision rational used for exponents, weights and cusp orders.
pub type Rational = num_rational::BigRational;
