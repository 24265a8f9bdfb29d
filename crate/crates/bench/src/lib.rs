//! Shared fixtures for the benchmarks.

use stokes_core::bigfloat::parse_rational;
use stokes_core::{BesselOrder, BigReal, Precision, Rational};

/// Precisions swept by the kernel benchmarks.
pub const BITS: [u32; 3] = [128, 512, 2048];

pub fn precision(bits: u32) -> Precision {
    Precision::new(bits).expect("benchmark precision is valid")
}

pub fn rational(s: &str) -> Rational {
    parse_rational(s).expect("benchmark literal parses")
}

/// A non-trivial argument: 7/3 at precision `p`.
pub fn sample_real(p: Precision) -> BigReal {
    BigReal::from_ratio(&rational("7/3"), p)
}

pub fn quarter() -> BesselOrder {
    BesselOrder::parse("1/4").expect("1/4 parses")
}
