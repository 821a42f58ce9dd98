//! Exact real-root counting and isolation with Sturm sequences over the rationals.

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::polynomial::{poly_gcd, Polynomial};

/// Interval endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

/// Half-open interval `(lower, upper]`, the natural domain of a Sturm count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lower: Bound,
    pub upper: Bound,
}

impl Interval {
    pub fn whole_line() -> Self {
        Interval {
            lower: Bound::NegInfinity,
            upper: Bound::PosInfinity,
        }
    }

    pub fn new(lower: Bound, upper: Bound) -> Self {
        Interval { lower, upper }
    }
}

/// `p_0 = f`, `p_1 = f'`, `p_{k+1} = -rem(p_{k-1}, p_k)`, each scaled by a
/// positive constant so its leading coefficient is +1 or -1.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<Polynomial>,
}

fn normalize_sign_preserving(p: Polynomial) -> Polynomial {
    match p.leading_coeff() {
        Some(lc) => {
            let scale = lc.abs().recip().expect("nonzero leading coefficient");
            p.scale(&scale)
        }
        None => p,
    }
}

impl SturmSequence {
    pub fn new(f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut chain = vec![normalize_sign_preserving(f.clone())];
        let d = f.derivative();
        if !d.is_zero() {
            chain.push(normalize_sign_preserving(d));
        }
        while chain.len() >= 2 {
            let k = chain.len();
            let (_, r) = chain[k - 2].div_rem(&chain[k - 1])?;
            if r.is_zero() {
                break;
            }
            chain.push(normalize_sign_preserving(-r));
        }
        Ok(SturmSequence { chain })
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn signs_at(&self, x: &Bound) -> Vec<i32> {
        self.chain
            .iter()
            .map(|p| match x {
                Bound::Finite(v) => p.evaluate(v).signum(),
                Bound::PosInfinity => p.leading_coeff().map_or(0, Rational::signum),
                Bound::NegInfinity => {
                    let s = p.leading_coeff().map_or(0, Rational::signum);
                    if p.degree().unwrap_or(0) % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                }
            })
            .collect()
    }

    /// Sign changes along the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Bound) -> usize {
        let signs: Vec<i32> = self.signs_at(x).into_iter().filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(lower, upper]`.
    pub fn count(&self, interval: &Interval) -> usize {
        self.variations(&interval.lower)
            .saturating_sub(self.variations(&interval.upper))
    }
}

/// Exact number of distinct real roots of a square-free polynomial in the
/// interval (the whole line when `None`).
pub fn sturm_real_root_count(p: &Polynomial, interval: Option<&Interval>) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = poly_gcd(p, &p.derivative())?;
    if let Some(d) = g.degree().filter(|&d| d > 0) {
        return Err(Error::NotSquareFree { gcd_degree: d });
    }
    let seq = SturmSequence::new(p)?;
    Ok(match interval {
        Some(iv) => seq.count(iv),
        None => seq.count(&Interval::whole_line()),
    })
}

/// `1 + max |a_i / a_n|`: every root has modulus strictly below this.
pub fn cauchy_bound(p: &Polynomial) -> Rational {
    let Some(lc) = p.leading_coeff() else {
        return Rational::one();
    };
    let n = p.degree().unwrap_or(0);
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| {
            c.checked_div(lc)
                .expect("nonzero leading coefficient")
                .abs()
        })
        .max()
        .unwrap_or_default();
    max + Rational::one()
}

/// Disjoint intervals `(lo, hi]`, ascending, each holding exactly one real root
/// of the square-free polynomial.
pub fn isolate_real_roots(p: &Polynomial) -> Result<Vec<(Rational, Rational)>> {
    let seq = SturmSequence::new(p)?;
    let bound = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = seq.count(&Interval::new(
            Bound::Finite(lo.clone()),
            Bound::Finite(hi.clone()),
        ));
        match count {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) * Rational::frac(1, 2);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn poly(c: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn s2() -> Polynomial {
        poly(&[(0, 1), (1, 6), (1, 2), (1, 3)])
    }

    /// n(n+1)(2n+1)(3n^2+3n-1)/30
    fn s4() -> Polynomial {
        poly(&[(0, 1), (-1, 30), (0, 1), (1, 3), (1, 2), (1, 5)])
    }

    /// Zeros on the grid plus strict sign changes between nonzero neighbours.
    fn grid_root_count(p: &Polynomial, lo: i64, hi: i64, steps_per_unit: i64) -> usize {
        let values: Vec<i32> = (lo * steps_per_unit..=hi * steps_per_unit)
            .map(|k| p.evaluate(&q(k, steps_per_unit)).signum())
            .collect();
        let zeros = values.iter().filter(|&&s| s == 0).count();
        let changes = values.windows(2).filter(|w| w[0] * w[1] < 0).count();
        zeros + changes
    }

    #[test]
    fn counts() {
        assert_eq!(
            sturm_real_root_count(&Polynomial::from_integers(&[0, 1, 1]), None).unwrap(),
            2
        );
        assert_eq!(sturm_real_root_count(&s2(), None).unwrap(), 3);
        assert_eq!(sturm_real_root_count(&s4(), None).unwrap(), 5);
        assert_eq!(grid_root_count(&s4(), -3, 2, 64), 5);
        assert_eq!(
            sturm_real_root_count(&Polynomial::from_integers(&[1, 0, 1]), None).unwrap(),
            0
        );
        assert_eq!(
            sturm_real_root_count(&Polynomial::constant(q(3, 1)), None).unwrap(),
            0
        );
    }

    #[test]
    fn cofactor_discriminant_positive() {
        // 3n^2 + 3n - 1: discriminant 9 + 12 = 21 > 0
        let cof = Polynomial::from_integers(&[-1, 3, 3]);
        assert_eq!(sturm_real_root_count(&cof, None).unwrap(), 2);
        let product = &(&Polynomial::from_integers(&[0, 1]) * &Polynomial::from_integers(&[1, 1]))
            * &(&Polynomial::from_integers(&[1, 2]) * &cof);
        assert_eq!(product.monic(), s4().monic());
    }

    #[test]
    fn half_open_intervals() {
        let iv = |a: i64, b: i64| Interval::new(Bound::Finite(q(a, 1)), Bound::Finite(q(b, 1)));
        // roots of S_2: -1, -1/2, 0
        assert_eq!(sturm_real_root_count(&s2(), Some(&iv(-1, 0))).unwrap(), 2);
        assert_eq!(sturm_real_root_count(&s2(), Some(&iv(-2, -1))).unwrap(), 1);
        let positive = Interval::new(Bound::Finite(Rational::zero()), Bound::PosInfinity);
        assert_eq!(sturm_real_root_count(&s2(), Some(&positive)).unwrap(), 0);
        let negative = Interval::new(Bound::NegInfinity, Bound::Finite(q(-1, 4)));
        assert_eq!(sturm_real_root_count(&s2(), Some(&negative)).unwrap(), 2);
    }

    #[test]
    fn rejects_repeated_roots() {
        let s3 = poly(&[(0, 1), (0, 1), (1, 4), (1, 2), (1, 4)]);
        assert_eq!(
            sturm_real_root_count(&s3, None),
            Err(Error::NotSquareFree { gcd_degree: 2 })
        );
        assert_eq!(
            sturm_real_root_count(&Polynomial::zero(), None),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn isolation() {
        let ivs = isolate_real_roots(&s4()).unwrap();
        assert_eq!(ivs.len(), 5);
        let seq = SturmSequence::new(&s4()).unwrap();
        for (lo, hi) in &ivs {
            let iv = Interval::new(Bound::Finite(lo.clone()), Bound::Finite(hi.clone()));
            assert_eq!(seq.count(&iv), 1);
        }
        for w in ivs.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
    }
}
