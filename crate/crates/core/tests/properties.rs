use proptest::prelude::*;

use faulhaber::roots::{rational_roots, square_free_decompose, sturm_real_root_count};
use faulhaber::{
    bernoulli_polynomial, brute_force_sum, powersum_faulhaber, BernoulliTable, Polynomial, Rational,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_sum_differences(p in 1i64..=25, n in -30i64..=60) {
        let s = powersum_faulhaber(p, &BernoulliTable::new()).unwrap();
        let x = Rational::from(n);
        let diff = s.evaluate(&x) - s.evaluate(&(&x - Rational::from(1)));
        prop_assert_eq!(diff, x.pow(p as u32));
    }

    #[test]
    fn power_sum_matches_brute_force(p in 1i64..=15, n in 0i64..=200) {
        let s = powersum_faulhaber(p, &BernoulliTable::new()).unwrap();
        prop_assert_eq!(s.evaluate(&Rational::from(n)), Rational::from(brute_force_sum(p, n).unwrap()));
    }

    #[test]
    fn bernoulli_polynomial_difference(m in 1i64..=30, x in small_rational()) {
        // B_m(x + 1) - B_m(x) = m x^(m-1)
        let b = bernoulli_polynomial(m, &BernoulliTable::new()).unwrap();
        let diff = b.evaluate(&(&x + Rational::from(1))) - b.evaluate(&x);
        prop_assert_eq!(diff, Rational::from(m) * x.pow(m as u32 - 1));
    }

    #[test]
    fn roots_of_products_are_recovered(
        roots in prop::collection::vec((small_rational(), 1u32..=3), 1..=4),
        scale in small_rational().prop_filter("nonzero", |c| !c.is_zero()),
    ) {
        let mut expected: Vec<(Rational, u32)> = Vec::new();
        for (r, m) in &roots {
            match expected.iter_mut().find(|(s, _)| s == r) {
                Some(e) => e.1 += m,
                None => expected.push((r.clone(), *m)),
            }
        }
        expected.sort();
        let p = roots
            .iter()
            .fold(Polynomial::constant(scale), |acc, (r, m)| &acc * &Polynomial::linear_factor(r).pow(*m));
        // an irreducible quadratic factor keeps the rational part honest
        let p = &p * &Polynomial::from_integers(&[3, 0, 1]);

        prop_assert_eq!(rational_roots(&p).unwrap(), expected.clone());
        let d = square_free_decompose(&p).unwrap();
        prop_assert_eq!(d.reconstruct(), p.clone());
        prop_assert_eq!(sturm_real_root_count(&d.square_free_part(), None).unwrap(), expected.len());
    }
}
