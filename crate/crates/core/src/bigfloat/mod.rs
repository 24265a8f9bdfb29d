//! Arbitrary-precision real and complex floating point.
//!
//! Values are immutable; every rounding operation takes its [`Precision`]
//! explicitly. Basic arithmetic is correctly rounded (round-to-nearest,
//! ties-to-even). The transcendental functions evaluate with guard bits and
//! round once, which keeps them within one ulp in practice; [`gamma`] is
//! within a few ulp and its truncation error is bounded at run time.

mod complex;
pub mod decimal;
mod elementary;
mod gamma;
mod real;

pub use complex::BigComplex;
pub use decimal::{format_paper, format_paper_complex, format_sci, parse_decimal, parse_rational};
pub use elementary::{cos, cos_pi, exp, ln2, log, pi, pow, powi, sin, sin_cos, sin_cos_pi, sin_pi};
pub use gamma::{gamma, rgamma};
pub use real::{BigReal, Precision};

/// `|a - b|` measured in ulps of `reference` at precision `p`.
pub fn ulp_distance(a: &BigReal, b: &BigReal, reference: &BigReal, p: Precision) -> f64 {
    let d = a.sub_exact(b).abs();
    d.div(
        &reference.ulp(p),
        Precision::new(64).expect("64 bits is valid"),
    )
    .expect("ulp is nonzero")
    .to_f64()
}
