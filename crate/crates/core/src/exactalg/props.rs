use super::*;
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = RatFunc> {
    let term = (-3i64..=3, 0usize..3, 0i32..3, 0usize..3, 0i32..2);
    prop::collection::vec(term, 1..4).prop_map(|ts| {
        let mut acc = RatFunc::zero();
        for (c, v1, e1, v2, e2) in ts {
            let m = Monomial::var([0, 1, registry::V][v1], e1).mul(&Monomial::var([0, 1, registry::V][v2], e2));
            acc = acc.add(&RatFunc::monomial(m, Rational::from_integer(c.into())));
        }
        acc
    })
}

fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), small_poly()).prop_filter_map("zero denominator", |(n, d)| n.div(&d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distributive(f in small_ratfunc(), g in small_ratfunc(), h in small_ratfunc()) {
        let lhs = f.add(&g).mul(&h);
        let rhs = f.mul(&h).add(&g.mul(&h));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn self_quotient(f in small_ratfunc()) {
        prop_assume!(!f.is_zero());
        prop_assert!(f.div(&f).unwrap().is_one());
    }

    #[test]
    fn normalize_idempotent(f in small_ratfunc()) {
        let again = rf_normalize(&f.numerator(), &f.denominator()).unwrap();
        prop_assert!(again.rf_equal(&f));
        prop_assert_eq!(again, f);
    }

    #[test]
    fn print_parse_roundtrip(f in small_ratfunc()) {
        let text = f.to_string();
        let back = parse_ratfunc(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn equal_matches_canonical(f in small_ratfunc(), g in small_ratfunc()) {
        prop_assert_eq!(f.rf_equal(&g), f == g);
        let scaled_num = f.numerator().scale(&Rational::from_integer(3.into()));
        let scaled_den = f.denominator().scale(&Rational::from_integer(3.into()));
        let f3 = RatFunc::from_laurent(&scaled_num, &scaled_den).unwrap();
        prop_assert!(f3.rf_equal(&f));
    }

    #[test]
    fn randomized_agrees_with_exact(f in small_ratfunc(), g in small_ratfunc()) {
        let same = random::rf_equal_randomized(&f, &g, 11, 4);
        if let Ok(same) = same {
            prop_assert_eq!(same, f == g);
        }
    }

    #[test]
    fn series_cauchy_product(f in small_poly(), g in small_poly()) {
        let one = RatFunc::one();
        let x = RatFunc::var(registry::X);
        let fx = one.sub(&x.mul(&f)).inv().unwrap();
        let gx = one.add(&x.mul(&x).mul(&g)).inv().unwrap();
        let n = 4;
        let sf = series_expand(&fx, registry::X, n).unwrap();
        let sg = series_expand(&gx, registry::X, n).unwrap();
        let sfg = series_expand(&fx.mul(&gx), registry::X, n).unwrap();
        for k in 0..=n {
            let conv: RatFunc = (0..=k).map(|j| sf[j].mul(&sg[k - j])).sum();
            prop_assert_eq!(&conv, &sfg[k]);
        }
    }
}
