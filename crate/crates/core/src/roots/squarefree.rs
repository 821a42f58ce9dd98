//! Square-free decomposition by Yun's algorithm.

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::polynomial::{poly_gcd, Polynomial};

/// `f = c * prod f_i^(m_i)` with monic, square-free, pairwise coprime `f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    /// Nonzero constant `c` (the leading coefficient of the input).
    pub unit: Rational,
    /// Monic factors of positive degree with increasing multiplicity.
    pub factors: Vec<(Polynomial, u32)>,
}

impl SquareFreeDecomposition {
    /// `c * prod f_i^(m_i)`.
    pub fn reconstruct(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m)
            })
    }

    /// Product of the factors, i.e. the monic square-free part of the input.
    pub fn square_free_part(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::one(), |acc, (f, _)| &acc * f)
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

pub fn square_free_decompose(p: &Polynomial) -> Result<SquareFreeDecomposition> {
    let unit = p.leading_coeff().ok_or(Error::ZeroPolynomial)?.clone();
    let f = p.monic();
    let mut factors = Vec::new();
    if f.degree() == Some(0) {
        return Ok(SquareFreeDecomposition { unit, factors });
    }

    let df = f.derivative();
    let g = poly_gcd(&f, &df)?;
    let mut b = f.div_exact(&g)?;
    let mut d = &df.div_exact(&g)? - &b.derivative();
    let mut multiplicity = 1;
    while b.degree() != Some(0) {
        let a = poly_gcd(&b, &d)?;
        b = b.div_exact(&a)?;
        let c = d.div_exact(&a)?;
        d = &c - &b.derivative();
        if a.degree() != Some(0) {
            factors.push((a, multiplicity));
        }
        multiplicity += 1;
    }

    let out = SquareFreeDecomposition { unit, factors };
    if out.reconstruct() != *p {
        return Err(Error::Inconsistent(format!(
            "square-free factors of {p} do not recompose"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::poly_gcd;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn poly(c: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn power_sum_examples() {
        let s3 = poly(&[(0, 1), (0, 1), (1, 4), (1, 2), (1, 4)]);
        let d = square_free_decompose(&s3).unwrap();
        assert_eq!(d.factors, vec![(Polynomial::from_integers(&[0, 1, 1]), 2)]);
        assert_eq!(d.unit, q(1, 4));

        let s2 = poly(&[(0, 1), (1, 6), (1, 2), (1, 3)]);
        let d = square_free_decompose(&s2).unwrap();
        assert_eq!(d.factors, vec![(s2.monic(), 1)]);
        assert!(d.is_square_free());

        let n2 = Polynomial::from_integers(&[0, 0, 1]);
        let d = square_free_decompose(&n2).unwrap();
        assert_eq!(d.factors, vec![(Polynomial::identity(), 2)]);
    }

    #[test]
    fn mixed_multiplicities() {
        // 3 (n - 1) (n + 2)^2 (n^2 + 1)^3
        let a = Polynomial::from_integers(&[-1, 1]);
        let b = Polynomial::from_integers(&[2, 1]);
        let c = Polynomial::from_integers(&[1, 0, 1]);
        let p = (&(&a * &b.pow(2)) * &c.pow(3)).scale(&q(3, 1));
        let d = square_free_decompose(&p).unwrap();
        assert_eq!(d.factors, vec![(a, 1), (b, 2), (c, 3)]);
        assert_eq!(d.reconstruct(), p);
        for (i, (f, _)) in d.factors.iter().enumerate() {
            assert_eq!(poly_gcd(f, &f.derivative()).unwrap(), Polynomial::one());
            for (g, _) in &d.factors[i + 1..] {
                assert_eq!(poly_gcd(f, g).unwrap(), Polynomial::one());
            }
        }
    }

    #[test]
    fn constants_and_zero() {
        let d = square_free_decompose(&Polynomial::constant(q(5, 2))).unwrap();
        assert!(d.factors.is_empty());
        assert_eq!(d.reconstruct(), Polynomial::constant(q(5, 2)));
        assert_eq!(
            square_free_decompose(&Polynomial::zero()),
            Err(Error::ZeroPolynomial)
        );
    }
}
