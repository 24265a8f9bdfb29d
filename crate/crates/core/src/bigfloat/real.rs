use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Working mantissa precision in bits.
///
/// Every rounding operation takes the precision explicitly; there is no
/// ambient precision setting anywhere in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 64;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::Usage(format!(
                "precision must be at least {} bits, got {bits}",
                Self::MIN_BITS
            )));
        }
        Ok(Precision(bits))
    }

    /// Smallest precision carrying `digits` significant decimal digits.
    pub fn from_digits(digits: u32) -> Self {
        let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 1;
        Precision(bits.max(Self::MIN_BITS))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn with_guard(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }

    /// Number of decimal digits faithfully carried, rounded down.
    pub fn decimal_digits(self) -> u32 {
        (f64::from(self.0 - 1) * std::f64::consts::LOG10_2).floor() as u32
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

/// Arbitrary-precision binary floating-point number `mant * 2^exp`.
///
/// The mantissa is kept odd (or zero, with `exp == 0`), which makes the
/// representation of every value unique, so the derived equality is value
/// equality. Rounding is round-to-nearest, ties-to-even.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
}

impl Default for BigReal {
    fn default() -> Self {
        Self::zero()
    }
}

impl BigReal {
    pub fn zero() -> Self {
        BigReal {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    /// Exact value `mant * 2^exp`.
    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        BigReal {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_parts(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_parts(v, 0)
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::domain(format!("non-finite double {v}")));
        }
        if v == 0.0 {
            return Ok(Self::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1i64 << 52), raw_exp - 1075)
        };
        Ok(Self::from_parts(BigInt::from(sign * m), e))
    }

    /// Exact rational `num/den` rounded to `p`.
    pub fn from_ratio(r: &BigRational, p: Precision) -> Self {
        let n = Self::from_bigint(r.numer().clone());
        let d = Self::from_bigint(r.denom().clone());
        n.div(&d, p).expect("rational denominators are nonzero")
    }

    /// Exact value as a rational.
    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as usize))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_zero() || self.exp >= 0
    }

    /// Number of significant bits held by the mantissa.
    pub fn mantissa_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn magnitude_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64)
        }
    }

    /// Unit in the last place at precision `p` (for zero, the smallest
    /// positive `2^(-p)` is returned so ulp comparisons stay well defined).
    pub fn ulp(&self, p: Precision) -> BigReal {
        let top = self.magnitude_exponent().unwrap_or(0);
        Self::from_parts(BigInt::one(), top - i64::from(p.bits()))
    }

    pub fn neg(&self) -> Self {
        BigReal {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        BigReal {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Round to `p` bits.
    pub fn round(&self, p: Precision) -> Self {
        round_parts(self.mant.clone(), self.exp, false, p)
    }

    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &other.mant << ((other.exp - e) as usize);
        Self::from_parts(a + b, e)
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        Self::from_parts(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn add(&self, other: &Self, p: Precision) -> Self {
        if self.is_zero() {
            return other.round(p);
        }
        if other.is_zero() {
            return self.round(p);
        }
        let (big, small) = if self.magnitude_exponent() >= other.magnitude_exponent() {
            (self, other)
        } else {
            (other, self)
        };
        let top_big = big.magnitude_exponent().unwrap();
        let top_small = small.magnitude_exponent().unwrap();
        // Lowest bit position we keep for the larger operand.
        let floor = big.exp.min(top_big - i64::from(p.bits()) - 3);
        if top_small <= floor {
            // |small| < 2^floor: only its sign below the kept bits matters.
            let widened = &big.mant << ((big.exp - floor) as usize);
            let sticky = BigInt::from(small.signum());
            return round_parts((widened << 1usize) + sticky, floor - 1, false, p);
        }
        let e = big.exp.min(small.exp);
        let a = &big.mant << ((big.exp - e) as usize);
        let b = &small.mant << ((small.exp - e) as usize);
        round_parts(a + b, e, false, p)
    }

    pub fn sub(&self, other: &Self, p: Precision) -> Self {
        self.add(&other.neg(), p)
    }

    pub fn mul(&self, other: &Self, p: Precision) -> Self {
        round_parts(&self.mant * &other.mant, self.exp + other.exp, false, p)
    }

    pub fn mul_i64(&self, k: i64, p: Precision) -> Self {
        round_parts(&self.mant * k, self.exp, false, p)
    }

    pub fn div(&self, other: &Self, p: Precision) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let num_bits = self.mant.bits() as i64;
        let den_bits = other.mant.bits() as i64;
        let shift = (i64::from(p.bits()) + 3 + den_bits - num_bits).max(0);
        let num = self.mant.magnitude() << (shift as usize);
        let (q, r) = num.div_rem(other.mant.magnitude());
        let negative = self.is_negative() != other.is_negative();
        let q = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, q);
        Ok(round_parts(
            q,
            self.exp - other.exp - shift,
            !r.is_zero(),
            p,
        ))
    }

    pub fn div_i64(&self, k: i64, p: Precision) -> Result<Self> {
        self.div(&Self::from_i64(k), p)
    }

    pub fn recip(&self, p: Precision) -> Result<Self> {
        Self::one().div(self, p)
    }

    pub fn sqrt(&self, p: Precision) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::domain("square root of a negative number"));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let bits = self.mant.bits() as i64;
        let mut shift = (2 * (i64::from(p.bits()) + 3) - bits + 1).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let n: BigUint = self.mant.magnitude() << (shift as usize);
        let r = n.sqrt();
        let exact = &r * &r == n;
        Ok(round_parts(
            BigInt::from(r),
            (self.exp - shift) / 2,
            !exact,
            p,
        ))
    }

    pub fn square(&self, p: Precision) -> Self {
        self.mul(self, p)
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as usize)
        } else {
            self.mant
                .div_floor(&(BigInt::one() << ((-self.exp) as usize)))
        }
    }

    /// Nearest integer, ties to even.
    pub fn round_half_even(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << (self.exp as usize);
        }
        let fl = self.floor();
        let frac = self.sub_exact(&Self::from_bigint(fl.clone()));
        let half = Self::from_parts(BigInt::one(), -1);
        match frac.cmp(&half) {
            Ordering::Less => fl,
            Ordering::Greater => fl + 1,
            Ordering::Equal => {
                if fl.is_even() {
                    fl
                } else {
                    fl + 1
                }
            }
        }
    }

    /// Nearest double (for diagnostics and budget estimates only).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let keep = 60i64;
        let (m, e) = if bits > keep {
            (
                &self.mant >> ((bits - keep) as usize),
                self.exp + bits - keep,
            )
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_f64().unwrap_or(f64::NAN);
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        let half = e / 2;
        m * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        self.floor().to_i64()
    }

    pub fn min<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.signum().cmp(&other.signum()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        self.sub_exact(other).signum().cmp(&0)
    }
}

impl From<i64> for BigReal {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl std::ops::Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

impl std::ops::Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::neg(self)
    }
}

/// Round `mant * 2^exp` to `p` bits. `sticky` records that the true value
/// is strictly larger in magnitude than `|mant| * 2^exp` by less than one
/// unit of `2^exp`.
pub(crate) fn round_parts(mant: BigInt, exp: i64, sticky: bool, p: Precision) -> BigReal {
    if mant.is_zero() {
        debug_assert!(!sticky, "sticky bit on an exact zero");
        return BigReal::zero();
    }
    let (sign, mut mag) = mant.into_parts();
    let mut exp = exp;
    let p = u64::from(p.bits());
    let mut bits = mag.bits();
    if sticky && bits < p + 2 {
        let widen = p + 2 - bits;
        mag <<= widen as usize;
        exp -= widen as i64;
        bits += widen;
    }
    if bits <= p {
        return BigReal::from_parts(BigInt::from_biguint(sign, mag), exp);
    }
    let shift = bits - p;
    let mut q: BigUint = &mag >> (shift as usize);
    let half_bit = shift - 1;
    let round_bit = mag.bit(half_bit);
    let below_half = half_bit > 0 && mag.trailing_zeros().unwrap_or(0) < half_bit;
    let round_up = round_bit && (below_half || sticky || q.bit(0));
    if round_up {
        q += 1u32;
    }
    BigReal::from_parts(BigInt::from_biguint(sign, q), exp + shift as i64)
}
