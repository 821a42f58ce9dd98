//! Roots of the power-sum polynomials.
//!
//! Multiplicities and the distinct real-root count are exact (square-free
//! decomposition and Sturm sequences over the rationals). Rational roots are
//! found and deflated exactly; what remains is solved numerically with
//! certified error radii.

mod aberth;
mod bigfloat;
mod rational;
mod squarefree;
mod sturm;

pub use aberth::{
    complex_roots, ComplexRoot, DEFAULT_PRECISION_BITS, ERROR_BOUND, MAX_ITERATIONS,
    MIN_PRECISION_BITS,
};
pub use rational::{deflate, rational_roots, simplest_between};
pub use squarefree::{square_free_decompose, SquareFreeDecomposition};
pub use sturm::{
    cauchy_bound, isolate_real_roots, sturm_real_root_count, Bound, Interval, SturmSequence,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::powersum::PowerSums;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    pub p: usize,
    pub degree: usize,
    /// Ascending, with multiplicities.
    pub rational_roots: Vec<(Rational, u32)>,
    pub distinct_real_root_count: usize,
    /// Roots of the rational-root-deflated cofactor, ordered by `(re, im)`.
    pub complex_roots: Vec<ComplexRoot>,
    /// Index pairs `(i, j)`, `i <= j`, into the concatenation of
    /// `rational_roots` and `complex_roots`, with root `j` the mirror `-1 - r`
    /// of root `i`.
    pub symmetry_pairs: Vec<(usize, usize)>,
    pub precision_bits: u32,
}

impl RootReport {
    pub fn multiplicity_total(&self) -> usize {
        self.rational_roots
            .iter()
            .map(|(_, m)| *m as usize)
            .sum::<usize>()
            + self
                .complex_roots
                .iter()
                .map(|r| r.multiplicity as usize)
                .sum::<usize>()
    }

    pub fn rational_multiplicity(&self, value: &Rational) -> Option<u32> {
        self.rational_roots
            .iter()
            .find(|(r, _)| r == value)
            .map(|(_, m)| *m)
    }

    /// Distinct real roots that are not rational.
    pub fn irrational_real_count(&self) -> usize {
        self.distinct_real_root_count - self.rational_roots.len()
    }

    /// Distinct roots off the real axis.
    pub fn nonreal_count(&self) -> usize {
        self.complex_roots.len() - self.irrational_real_count()
    }

    pub fn record(&self) -> RootReportRecord {
        let digits = ComplexRoot::decimal_digits(self.precision_bits);
        RootReportRecord {
            p: self.p,
            degree: self.degree,
            rational_roots: self
                .rational_roots
                .iter()
                .map(|(value, multiplicity)| RationalRootRecord {
                    value: value.clone(),
                    multiplicity: *multiplicity,
                })
                .collect(),
            distinct_real_roots: self.distinct_real_root_count,
            complex_roots: self
                .complex_roots
                .iter()
                .map(|r| ComplexRootRecord {
                    re: r.re_decimal(digits),
                    im: r.im_decimal(digits),
                    error_radius: r.decimal_error_radius(digits).to_scientific_upper(6),
                    multiplicity: r.multiplicity,
                })
                .collect(),
            symmetry_pairs: self.symmetry_pairs.clone(),
            precision_bits: self.precision_bits,
            error_bound: ERROR_BOUND.to_string(),
        }
    }

    /// Fields of the one-line CSV summary `p,degree,distinct_real,rational_count,notes`.
    pub fn summary_row(&self) -> [String; 5] {
        let max_mult = self
            .rational_roots
            .iter()
            .map(|(_, m)| *m)
            .chain(self.complex_roots.iter().map(|r| r.multiplicity))
            .max()
            .unwrap_or(0);
        [
            self.p.to_string(),
            self.degree.to_string(),
            self.distinct_real_root_count.to_string(),
            self.rational_roots.len().to_string(),
            format!(
                "irrational_real={}; nonreal={}; max_multiplicity={}",
                self.irrational_real_count(),
                self.nonreal_count(),
                max_mult
            ),
        ]
    }
}

/// JSON form of a [`RootReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReportRecord {
    pub p: usize,
    pub degree: usize,
    pub rational_roots: Vec<RationalRootRecord>,
    pub distinct_real_roots: usize,
    pub complex_roots: Vec<ComplexRootRecord>,
    pub symmetry_pairs: Vec<(usize, usize)>,
    pub precision_bits: u32,
    pub error_bound: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRootRecord {
    pub value: Rational,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRootRecord {
    pub re: String,
    pub im: String,
    pub error_radius: String,
    pub multiplicity: u32,
}

/// Full root analysis of `S_p` using a fresh cache.
pub fn analyze(p: i64, precision_bits: u32) -> Result<RootReport> {
    analyze_with(p, precision_bits, &PowerSums::new())
}

pub fn analyze_with(p: i64, precision_bits: u32, sums: &PowerSums) -> Result<RootReport> {
    if precision_bits < MIN_PRECISION_BITS {
        return Err(Error::out_of_range(
            "precision_bits",
            MIN_PRECISION_BITS as i64,
            precision_bits as i64,
        ));
    }
    let s = sums.recursive(p)?;
    let degree = s.degree().expect("S_p is nonzero");

    let decomposition = square_free_decompose(&s)?;
    let distinct_real_root_count = sturm_real_root_count(&decomposition.square_free_part(), None)?;

    let rational = rational_roots(&s)?;
    let cofactor = deflate(&s, &rational)?;
    let complex = if cofactor.degree().unwrap_or(0) >= 1 {
        complex_roots(&cofactor, precision_bits)?
    } else {
        Vec::new()
    };
    let symmetry_pairs = pair_roots(&rational, &complex)?;

    let report = RootReport {
        p: p as usize,
        degree,
        rational_roots: rational,
        distinct_real_root_count,
        complex_roots: complex,
        symmetry_pairs,
        precision_bits,
    };
    if report.multiplicity_total() != degree {
        return Err(Error::Inconsistent(format!(
            "root multiplicities of S_{p} sum to {}, degree is {degree}",
            report.multiplicity_total()
        )));
    }
    Ok(report)
}

/// Matches every root `r` with a root equal to `-1 - r`: exactly for rational
/// roots, within the summed error radii for numerical ones.
pub fn pair_roots(
    rational: &[(Rational, u32)],
    complex: &[ComplexRoot],
) -> Result<Vec<(usize, usize)>> {
    let minus_one = Rational::from(-1);
    let mut pairs = Vec::new();
    for (i, (r, m)) in rational.iter().enumerate() {
        let mirror = &minus_one - r;
        let j = rational
            .iter()
            .position(|(s, n)| *s == mirror && n == m)
            .ok_or_else(|| {
                Error::Inconsistent(format!("rational root {r} has no mirror partner"))
            })?;
        if i <= j {
            pairs.push((i, j));
        }
    }

    let offset = rational.len();
    let mut partner: Vec<Option<usize>> = vec![None; complex.len()];
    for i in 0..complex.len() {
        if partner[i].is_some() {
            continue;
        }
        let zi = &complex[i];
        let (mre, mim) = (&minus_one - &zi.re, -&zi.im);
        let best = (i..complex.len())
            .filter(|&j| partner[j].is_none() && complex[j].multiplicity == zi.multiplicity)
            .filter_map(|j| {
                let zj = &complex[j];
                let dist = zj.distance_sqr(&mre, &mim);
                let tol = &zi.error_radius + &zj.error_radius;
                (dist <= &tol * &tol).then_some((dist, j))
            })
            .min();
        let Some((_, j)) = best else {
            return Err(Error::Inconsistent(format!(
                "numerical root {} + {}i has no mirror partner",
                zi.re.to_decimal(12),
                zi.im.to_decimal(12)
            )));
        };
        partner[i] = Some(j);
        partner[j] = Some(i);
        pairs.push((offset + i, offset + j));
    }
    pairs.sort();
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Polynomial;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn cubes() {
        let r = analyze(3, 256).unwrap();
        assert_eq!(r.degree, 4);
        assert_eq!(r.rational_roots, vec![(q(-1, 1), 2), (q(0, 1), 2)]);
        assert_eq!(r.distinct_real_root_count, 2);
        assert!(r.complex_roots.is_empty());
        assert_eq!(r.symmetry_pairs, vec![(0, 1)]);
    }

    #[test]
    fn squares() {
        let r = analyze(2, 256).unwrap();
        assert_eq!(r.degree, 3);
        assert_eq!(
            r.rational_roots,
            vec![(q(-1, 1), 1), (q(-1, 2), 1), (q(0, 1), 1)]
        );
        assert_eq!(r.distinct_real_root_count, 3);
        assert_eq!(r.symmetry_pairs, vec![(0, 2), (1, 1)]);
    }

    #[test]
    fn fifth_powers() {
        // S_5 = n^2 (n+1)^2 (2n^2 + 2n - 1) / 12
        let r = analyze(5, 256).unwrap();
        assert_eq!(r.degree, 6);
        assert_eq!(r.multiplicity_total(), 6);
        assert_eq!(r.rational_roots, vec![(q(-1, 1), 2), (q(0, 1), 2)]);
        assert_eq!(r.distinct_real_root_count, 4);
        assert_eq!(r.complex_roots.len(), 2);
        assert_eq!(r.irrational_real_count(), 2);
        assert_eq!(r.nonreal_count(), 0);
        assert_eq!(r.symmetry_pairs, vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn record_shape() {
        let r = analyze(4, 64).unwrap();
        let json = serde_json::to_value(r.record()).unwrap();
        assert_eq!(json["p"], 4);
        assert_eq!(json["degree"], 5);
        assert_eq!(json["distinct_real_roots"], 5);
        assert_eq!(json["precision_bits"], 64);
        assert_eq!(json["rational_roots"][1]["value"], "-1/2");
        let roots = json["complex_roots"].as_array().unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[1]["re"].as_str().unwrap().starts_with("0.26376"));
        assert_eq!(
            r.summary_row()[4],
            "irrational_real=2; nonreal=0; max_multiplicity=1"
        );
    }

    #[test]
    fn pairing_rejects_asymmetric_sets() {
        assert!(pair_roots(&[(q(0, 1), 1)], &[]).is_err());
        assert!(pair_roots(&[(q(0, 1), 1), (q(-1, 1), 2)], &[]).is_err());
        let lone = ComplexRoot {
            re: q(1, 1),
            im: q(1, 1),
            error_radius: q(1, 100),
            multiplicity: 1,
        };
        assert!(pair_roots(&[], &[lone]).is_err());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(analyze(0, 256).is_err());
        assert!(analyze(2, 16).is_err());
        assert!(complex_roots(&Polynomial::from_integers(&[1, 1]), 63).is_err());
    }
}
