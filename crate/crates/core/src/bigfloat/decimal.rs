//! Exact decimal conversion.
//!
//! Parsing goes literal -> exact rational -> one rounding; printing goes
//! binary value -> exact rational -> round-half-even at the requested number
//! of significant digits. Machine doubles are never involved.
//!
//! The "paper" layout writes `d.ddd x 10^e` as `d.ddd(e)` with a signed,
//! zero-padded exponent, e.g. `-3.539843604(-06)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{BigComplex, BigReal, Precision};
use crate::error::{Error, Result};

/// Parse `[-+]digits[.digits][e[-+]digits]` or `p/q` into an exact rational.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::parse(input, "empty literal"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigRational = parse_rational(n)?;
        let d: BigRational = parse_rational(d)?;
        if d.is_zero() {
            return Err(Error::parse(input, "zero denominator"));
        }
        return Ok(n / d);
    }
    let (body, exp10) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..]
                .parse()
                .map_err(|_| Error::parse(input, "malformed exponent"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, body) = match body.as_bytes().first() {
        Some(b'-') => (true, &body[1..]),
        Some(b'+') => (false, &body[1..]),
        _ => (false, body),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::parse(input, "no digits"));
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(Error::parse(input, "unexpected character"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut mant: BigInt = digits
        .parse()
        .map_err(|_| Error::parse(input, "no digits"))?;
    if negative {
        mant = -mant;
    }
    let scale = exp10 - frac_part.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return Err(Error::parse(input, "exponent out of range"));
    }
    let pow = BigInt::from(10).pow(scale.unsigned_abs() as u32);
    Ok(if scale >= 0 {
        BigRational::from_integer(mant * pow)
    } else {
        BigRational::new(mant, pow)
    })
}

/// Parse a decimal or rational literal, rounding once to `p`.
pub fn parse_decimal(input: &str, p: Precision) -> Result<BigReal> {
    Ok(BigReal::from_ratio(&parse_rational(input)?, p))
}

/// Decimal scientific decomposition: `value = ±digits[0].digits[1..] x 10^exp10`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scientific {
    pub negative: bool,
    pub digits: String,
    pub exp10: i64,
}

fn div_round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    let twice: BigInt = &r * 2;
    match twice.cmp(den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Round `|x|` to `sig` significant decimal digits (round-half-even on the
/// exact value).
pub fn to_scientific(x: &BigReal, sig: usize) -> Scientific {
    assert!(sig >= 1, "at least one significant digit");
    if x.is_zero() {
        return Scientific {
            negative: false,
            digits: "0".repeat(sig),
            exp10: 0,
        };
    }
    let exact = x.to_ratio().abs();
    let top = x.magnitude_exponent().unwrap();
    // Estimate of floor(log10 |x|); corrected below.
    let mut e10 = ((top - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let lower = BigInt::from(10).pow(sig as u32 - 1);
    let upper = &lower * 10;
    loop {
        let shift = sig as i64 - 1 - e10;
        let pow = BigInt::from(10).pow(shift.unsigned_abs() as u32);
        let scaled = if shift >= 0 {
            &exact * BigRational::from_integer(pow)
        } else {
            &exact / BigRational::from_integer(pow)
        };
        let n = div_round_half_even(scaled.numer(), scaled.denom());
        if n >= upper {
            // Either the estimate was low or rounding carried into a new digit.
            if scaled.to_integer() >= upper {
                e10 += 1;
                continue;
            }
            return Scientific {
                negative: x.is_negative(),
                digits: lower.to_string(),
                exp10: e10 + 1,
            };
        }
        if n < lower {
            e10 -= 1;
            continue;
        }
        return Scientific {
            negative: x.is_negative(),
            digits: n.to_string(),
            exp10: e10,
        };
    }
}

fn mantissa_str(s: &Scientific) -> String {
    let sign = if s.negative { "-" } else { "" };
    if s.digits.len() == 1 {
        format!("{sign}{}", s.digits)
    } else {
        format!("{sign}{}.{}", &s.digits[..1], &s.digits[1..])
    }
}

/// `-3.539843604e-06`
pub fn format_sci(x: &BigReal, sig: usize) -> String {
    let s = to_scientific(x, sig);
    format!(
        "{}e{}{:02}",
        mantissa_str(&s),
        if s.exp10 < 0 { '-' } else { '+' },
        s.exp10.abs()
    )
}

/// `-3.539843604(-06)`
pub fn format_paper(x: &BigReal, sig: usize) -> String {
    let s = to_scientific(x, sig);
    format!(
        "{}({}{:02})",
        mantissa_str(&s),
        if s.exp10 < 0 { '-' } else { '+' },
        s.exp10.abs()
    )
}

/// `2.452537123(-12) - 1.839452296i(-13)`, the layout of complex table entries.
pub fn format_paper_complex(z: &BigComplex, sig: usize) -> String {
    let re = format_paper(&z.re, sig);
    let im = to_scientific(&z.im, sig);
    let op = if im.negative { '-' } else { '+' };
    let mag = Scientific {
        negative: false,
        ..im.clone()
    };
    format!(
        "{re} {op} {}i({}{:02})",
        mantissa_str(&mag),
        if im.exp10 < 0 { '-' } else { '+' },
        im.exp10.abs()
    )
}

/// Fixed-point rendering with `frac_digits` digits after the point
/// (truncated toward zero; used for reference-digit comparisons).
pub fn to_fixed(x: &BigReal, frac_digits: usize) -> String {
    let exact = x.to_ratio();
    let scaled = exact.abs() * BigRational::from_integer(BigInt::from(10).pow(frac_digits as u32));
    let n = scaled.to_integer();
    let s = format!("{:0>width$}", n.to_string(), width = frac_digits + 1);
    let (i, f) = s.split_at(s.len() - frac_digits);
    let sign = if x.is_negative() { "-" } else { "" };
    if frac_digits == 0 {
        format!("{sign}{i}")
    } else {
        format!("{sign}{i}.{f}")
    }
}

/// Number of decimal digits that round-trips any value at precision `p`.
pub fn round_trip_digits(p: Precision) -> usize {
    (f64::from(p.bits()) * std::f64::consts::LOG10_2).ceil() as usize + 1
}

/// Parse the `d.ddd(e)` layout back into a rational.
pub fn parse_paper(input: &str) -> Result<BigRational> {
    let s = input.trim();
    let open = s
        .find('(')
        .ok_or_else(|| Error::parse(input, "missing '('"))?;
    let close = s
        .rfind(')')
        .ok_or_else(|| Error::parse(input, "missing ')'"))?;
    let mant = s[..open].trim_end_matches('i');
    let exp = &s[open + 1..close];
    parse_rational(&format!("{mant}e{exp}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn parses_literals() {
        assert_eq!(
            parse_rational("0.25").unwrap(),
            BigRational::new(1.into(), 4.into())
        );
        assert_eq!(
            parse_rational("1/4").unwrap(),
            BigRational::new(1.into(), 4.into())
        );
        assert_eq!(
            parse_rational("-3.5e-2").unwrap(),
            BigRational::new((-7).into(), 200.into())
        );
        assert_eq!(
            parse_rational("15.4").unwrap(),
            BigRational::new(77.into(), 5.into())
        );
        assert_eq!(
            parse_rational("+2E3").unwrap(),
            BigRational::from_integer(2000.into())
        );
        assert_eq!(
            parse_rational(".5").unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        for bad in ["", "abc", "1.2.3", "1e", "1/0", "-", "1e99999999"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_like_the_tables() {
        let p = prec(128);
        let v = parse_decimal("-3.5398436039e-6", p).unwrap();
        assert_eq!(format_paper(&v, 10), "-3.539843604(-06)");
        assert_eq!(format_sci(&v, 10), "-3.539843604e-06");
        let z = BigComplex::new(
            parse_decimal("2.452537123e-12", p).unwrap(),
            parse_decimal("-1.839452296e-13", p).unwrap(),
        );
        assert_eq!(
            format_paper_complex(&z, 10),
            "2.452537123(-12) - 1.839452296i(-13)"
        );
        assert_eq!(format_paper(&BigReal::from_i64(120), 3), "1.20(+02)");
        assert_eq!(format_paper(&BigReal::zero(), 3), "0.00(+00)");
    }

    #[test]
    fn rounding_carries_into_next_decade() {
        let p = prec(128);
        let v = parse_decimal("9.9999999999", p).unwrap();
        assert_eq!(format_sci(&v, 4), "1.000e+01");
        let v = parse_decimal("0.00099996", p).unwrap();
        assert_eq!(format_sci(&v, 4), "1.000e-03");
    }

    #[test]
    fn half_even_on_exact_ties() {
        // 0.125 and 0.375 are exact in binary.
        let p = prec(64);
        assert_eq!(
            format_sci(&parse_decimal("0.125", p).unwrap(), 2),
            "1.2e-01"
        );
        assert_eq!(
            format_sci(&parse_decimal("0.375", p).unwrap(), 2),
            "3.8e-01"
        );
    }

    #[test]
    fn paper_layout_parses_back() {
        let r = parse_paper("-1.185757399(-10)").unwrap();
        assert_eq!(r, parse_rational("-1.185757399e-10").unwrap());
        let r = parse_paper("1.839452296i(-13)").unwrap();
        assert_eq!(r, parse_rational("1.839452296e-13").unwrap());
    }

    #[test]
    fn fixed_rendering() {
        let p = prec(64);
        assert_eq!(to_fixed(&parse_decimal("-0.5", p).unwrap(), 3), "-0.500");
        assert_eq!(to_fixed(&BigReal::from_i64(7), 0), "7");
    }
}
