//! Exact rational power series and the `g_k(γ)` coefficient family.

mod gammapoly;
mod saddle;
mod series;

/// Exact rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub use gammapoly::{GammaPoly, GammaPolySeries};
pub use saddle::{
    eval_gamma_poly, g_expansion, g_family, g_polynomials, ghat_polynomials, revert_saddle_map,
    saddle_identity_residual, scale_ghat,
};
pub use series::RationalSeries;
