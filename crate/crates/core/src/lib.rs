//! Exact Hilbert series and Hilbert depth computations for squarefree
//! Veronese ideals and powers of the irrelevant maximal ideal.
//!
//! Hilbert depth is computed as `max { r : (1 - T)^r H(T) is non-negative }`
//! on the coarse Hilbert series `H(T)`, held exactly as `P(T) / (1 - T)^m`.
//!
//! - [`exactalg`]: big-integer binomials and integer polynomials
//! - [`series`]: canonical rational series, non-negativity, depth scan
//! - [`ideals`]: the four ideal families and closed-form depths
//! - [`multigrade`]: fine series over exponent boxes and enumeration oracles
//! - [`identities`]: verifiers for the identities linking the families

pub mod exactalg;
pub mod ideals;
pub mod identities;
pub mod multigrade;
pub mod series;

pub use exactalg::{binom, binomial, IntPolynomial, Integer, Rational};
pub use ideals::{DepthReport, IdealError, IdealSpec};
pub use identities::{Counterexample, IdentityId, VerificationResult, VerifyRange};
pub use multigrade::{ExponentVector, MultiSeries, MultigradeError};
pub use series::{EventualPolynomial, RationalFunctionSeries, SeriesError};
