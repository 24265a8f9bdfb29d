//! Exponentially improved asymptotic expansions of the modified Bessel
//! functions `I_ν`, `K_ν` and the Kummer functions `U`, `₁F₁` on their Stokes
//! lines, evaluated in arbitrary precision.
//!
//! The crate is layered bottom-up:
//!
//! * [`bigfloat`]: binary floating point with explicit precision, elementary
//!   functions and Γ.
//! * [`exactpoly`]: exact rational power series; reverts the saddle-point map
//!   `w²/2 = τ - ln τ - 1` and derives the coefficient polynomials `g_k(γ)`.
//! * [`coeffs`]: the numeric sequences `a_k(ν)`, `A_j`, `B_j` and the optimal
//!   truncation bookkeeping.
//! * [`expansions`]: the Stokes-line expansions for `I_ν`, `K_ν`, `U`, `₁F₁`
//!   plus the classical compound expansions they correct.
//! * [`oracle`]: independent reference values from convergent series and
//!   connection formulas, including the cancellation-heavy remainders.

pub mod bigfloat;
pub mod coeffs;
pub mod error;
pub mod exactpoly;
pub mod expansions;
pub mod oracle;

pub use bigfloat::{BigComplex, BigReal, Precision};
pub use coeffs::{BesselOrder, CoefficientSet, KummerParams, TruncationInfo, TruncationRule};

pub use error::{Error, Result};
pub use exactpoly::{GammaPoly, Rational, RationalSeries};
pub use expansions::{ExpansionKind, ExpansionResult, StokesSign};
pub use oracle::OracleConfig;
