use proptest::prelude::*;
use stokes_core::bigfloat::{
    exp, format_sci, gamma, log, parse_decimal, sin_cos, ulp_distance, BigReal, Precision,
};
use stokes_core::coeffs::{a_coeffs_exact, optimal_truncation, upper_b_coeffs_exact};
use stokes_core::{BesselOrder, KummerParams, Rational, TruncationRule};

fn prec(bits: u32) -> Precision {
    Precision::new(bits).unwrap()
}

fn real(num: i64, den: i64, p: Precision) -> BigReal {
    BigReal::from_ratio(&Rational::new(num.into(), den.into()), p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_inverts_log(num in 1i64..1_000_000, den in 1i64..1000, bits in 64u32..320) {
        let p = prec(bits);
        let x = real(num, den, p);
        let back = exp(&log(&x, p).unwrap(), p).unwrap();
        // log(x) carries |log x| of conditioning into exp.
        prop_assert!(ulp_distance(&back, &x, &x, p) <= 16.0);
    }

    #[test]
    fn pythagoras(num in -100_000i64..100_000, bits in 64u32..256) {
        let p = prec(bits);
        let x = real(num, 997, p);
        let (s, c) = sin_cos(&x, p).unwrap();
        let one = s.square(p).add(&c.square(p), p);
        prop_assert!(ulp_distance(&one, &BigReal::one(), &BigReal::one(), p) <= 8.0);
    }

    #[test]
    fn gamma_recurrence(num in 1i64..4000, bits in 64u32..200) {
        let p = prec(bits);
        let x = real(num, 113, p);
        let g = gamma(&x, p).unwrap();
        // x + 1 must be exact: Γ amplifies input error by x·ψ(x).
        let g1 = gamma(&x.add_exact(&BigReal::one()), p).unwrap();
        let xg = x.mul(&g, p);
        prop_assert!(ulp_distance(&g1, &xg, &g1, p) <= 16.0);
    }

    #[test]
    fn decimal_round_trip(mant in any::<i64>(), e in -300i64..300, bits in 64u32..256) {
        prop_assume!(mant != 0);
        let p = prec(bits);
        let x = BigReal::from_parts(mant.into(), e).round(p);
        let digits = stokes_core::bigfloat::decimal::round_trip_digits(p);
        let text = format_sci(&x, digits);
        prop_assert_eq!(parse_decimal(&text, p).unwrap(), x);
    }

    #[test]
    fn refinement_agrees(num in 1i64..5000, bits in 64u32..200) {
        let p = prec(bits);
        let hi = prec(bits + 128);
        let x = real(num, 37, hi);
        let lo_val = exp(&x.round(p), p).unwrap();
        let hi_val = exp(&x.round(p), hi).unwrap();
        prop_assert!(ulp_distance(&lo_val, &hi_val, &hi_val, p) <= 1.0);
    }

    #[test]
    fn a_coeffs_even_in_nu(num in -400i64..400, den in 1i64..50) {
        let nu = Rational::new(num.into(), den.into());
        let plus = a_coeffs_exact(&BesselOrder::new(nu.clone()), 12);
        let minus = a_coeffs_exact(&BesselOrder::new(-nu), 12);
        prop_assert_eq!(plus, minus);
    }

    #[test]
    fn truncation_lands_near_x(num in 20i64..20_000, den in 1i64..20) {
        let x = Rational::new(num.into(), den.into());
        prop_assume!(x > Rational::from_integer(2.into()));
        let zero = Rational::from_integer(0.into());
        for rule in [TruncationRule::Nearest, TruncationRule::Floor] {
            let t = optimal_truncation(&x, &zero, rule).unwrap();
            let back = Rational::from_integer(t.m_o().into()) - t.alpha();
            prop_assert_eq!(back, x.clone());
            let a = t.alpha().clone();
            match rule {
                TruncationRule::Floor => prop_assert!(a <= zero && a > Rational::from_integer((-1).into())),
                TruncationRule::Nearest => {
                    let half = Rational::new(1.into(), 2.into());
                    prop_assert!(a <= half && a >= -half);
                }
            }
        }
    }

    #[test]
    fn b0_tracks_alpha(num in -50i64..50) {
        let params = KummerParams::new(Rational::new(3.into(), 4.into()), Rational::new(3.into(), 2.into()));
        let x = Rational::new((4000 + num).into(), 100.into());
        let t = optimal_truncation(&x, &params.two_a_minus_b(), TruncationRule::Nearest).unwrap();
        let b = upper_b_coeffs_exact(&params, &t, 1).unwrap();
        let expected = Rational::new(2.into(), 3.into()) - t.alpha();
        prop_assert_eq!(&b[0], &expected);
    }
}
