//! Simultaneous complex root approximation (Aberth-Ehrlich iteration) in
//! multiprecision floating point, with exact a-posteriori error radii.
//!
//! Each returned approximation `z` is a dyadic rational, and `error_radius`
//! bounds the distance from `z` to a true root: for a square-free factor `f` of
//! degree `d`, the disk of radius `d * |f(z)| / |f'(z)|` about `z` always holds
//! a root of `f`. `f(z)` and `f'(z)` are evaluated exactly and the square root
//! is rounded upward, so the radius is a certified bound.

use std::cmp::Ordering;

use num_traits::One;

use crate::error::{Error, Result};
use crate::numeric::{Integer, Rational};
use crate::polynomial::Polynomial;

use super::bigfloat::{from_f64, from_rational, to_rational, BigComplex};
use super::squarefree::square_free_decompose;
use super::sturm::cauchy_bound;

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const MIN_PRECISION_BITS: u32 = 64;
pub const MAX_ITERATIONS: usize = 1000;
/// Extra working bits carried during iteration beyond the requested precision.
const GUARD_BITS: u32 = 64;
/// Angular offset (radians) of the first starting point on the initial circle.
const START_ANGLE: f64 = 0.4;

/// Text recorded alongside reports to name the error bound in use.
pub const ERROR_BOUND: &str =
    "degree * |f(z)| / |f'(z)| for the square-free factor f, exact evaluation, rounded up";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexRoot {
    pub re: Rational,
    pub im: Rational,
    /// Certified distance bound from `(re, im)` to a true root.
    pub error_radius: Rational,
    pub multiplicity: u32,
}

impl ComplexRoot {
    /// Decimal digits that represent `bits` of binary precision, plus one.
    pub fn decimal_digits(bits: u32) -> usize {
        (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
    }

    pub fn re_decimal(&self, digits: usize) -> String {
        self.re.to_decimal(digits)
    }

    pub fn im_decimal(&self, digits: usize) -> String {
        self.im.to_decimal(digits)
    }

    /// Radius valid for the decimal renderings at `digits` places: rounding each
    /// part moves the point by at most `10^-digits / sqrt(2)`.
    pub fn decimal_error_radius(&self, digits: usize) -> Rational {
        let ulp = Rational::new(1, num_traits::pow(Integer::from(10), digits)).expect("nonzero");
        &self.error_radius + ulp
    }

    /// `|self - other|^2` exactly.
    pub fn distance_sqr(&self, re: &Rational, im: &Rational) -> Rational {
        let dr = &self.re - re;
        let di = &self.im - im;
        &dr * &dr + &di * &di
    }
}

/// All complex roots of a nonzero, non-constant polynomial. Each square-free
/// factor is solved separately, so multiplicities are exact. Output is ordered
/// by `(re, im)`.
pub fn complex_roots(p: &Polynomial, precision_bits: u32) -> Result<Vec<ComplexRoot>> {
    if precision_bits < MIN_PRECISION_BITS {
        return Err(Error::out_of_range(
            "precision_bits",
            MIN_PRECISION_BITS as i64,
            precision_bits as i64,
        ));
    }
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    if degree < 1 {
        return Err(Error::out_of_range("degree", 1, 0));
    }
    let mut roots = Vec::with_capacity(degree);
    for (factor, multiplicity) in square_free_decompose(p)?.factors {
        for z in solve_square_free(&factor, precision_bits)? {
            let (re, im) = (to_rational(&z.re), to_rational(&z.im));
            let error_radius = certified_radius(&factor, &re, &im, precision_bits)?;
            roots.push(ComplexRoot {
                re,
                im,
                error_radius,
                multiplicity,
            });
        }
    }
    roots.sort_by(canonical_order);
    Ok(roots)
}

pub(crate) fn canonical_order(a: &ComplexRoot, b: &ComplexRoot) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

fn horner(coeffs: &[BigComplex], z: &BigComplex, prec: u32) -> BigComplex {
    coeffs
        .iter()
        .rev()
        .fold(BigComplex::zero(prec), |acc, c| &(&acc * z) + c)
}

/// Whether the step `delta` is below `2^-bits` relative to `max(1, |z|)`.
fn negligible(delta: &BigComplex, z: &BigComplex, bits: u32) -> bool {
    match delta.log2_ceiling() {
        None => true,
        Some(d) => d <= z.log2_ceiling().unwrap_or(0).max(0) - bits as i64,
    }
}

/// Aberth-Ehrlich iteration on a monic square-free polynomial. Starting points
/// lie on the circle of radius `1 + max |a_i / a_n|` at angles
/// `2 pi k / d + START_ANGLE`; updates are applied in place (Gauss-Seidel order).
fn solve_square_free(f: &Polynomial, precision_bits: u32) -> Result<Vec<BigComplex>> {
    let degree = f.degree().expect("nonzero factor");
    let work = precision_bits + GUARD_BITS;
    let to_complex = |c: &Rational| BigComplex::from_real(from_rational(c, work));
    let coeffs: Vec<BigComplex> = f.coeffs().iter().map(to_complex).collect();
    let deriv: Vec<BigComplex> = f.derivative().coeffs().iter().map(to_complex).collect();

    let radius = cauchy_bound(f).to_f64();
    let mut z: Vec<BigComplex> = (0..degree)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / degree as f64 + START_ANGLE;
            BigComplex::new(
                from_f64(radius * angle.cos(), work),
                from_f64(radius * angle.sin(), work),
            )
        })
        .collect();

    let one = BigComplex::from_real(from_f64(1.0, work));
    for _ in 0..MAX_ITERATIONS {
        let mut converged = true;
        for i in 0..degree {
            let value = horner(&coeffs, &z[i], work);
            if value.is_zero() {
                continue;
            }
            let slope = horner(&deriv, &z[i], work);
            let mut repulsion = BigComplex::zero(work);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let gap = &z[i] - zj;
                    if !gap.is_zero() {
                        repulsion = &repulsion + &(&one / &gap);
                    }
                }
            }
            // delta = w / (1 - w * s) with w = f / f'; equivalently f / (f' - f * s)
            let denom = &slope - &(&value * &repulsion);
            if denom.is_zero() {
                converged = false;
                continue;
            }
            let delta = &value / &denom;
            if !negligible(&delta, &z[i], precision_bits) {
                converged = false;
            }
            z[i] = &z[i] - &delta;
        }
        if converged {
            return Ok(z.iter().map(|x| x.with_precision(precision_bits)).collect());
        }
    }
    let digits = ComplexRoot::decimal_digits(precision_bits);
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        best: z
            .iter()
            .map(|x| {
                (
                    to_rational(&x.re).to_decimal(digits),
                    to_rational(&x.im).to_decimal(digits),
                )
            })
            .collect(),
    })
}

/// Gaussian-rational Horner evaluation.
fn evaluate_exact(f: &Polynomial, re: &Rational, im: &Rational) -> (Rational, Rational) {
    f.coeffs()
        .iter()
        .rev()
        .fold((Rational::zero(), Rational::zero()), |(a, b), c| {
            (&a * re - &b * im + c, &a * im + &b * re)
        })
}

/// Upper bound on `degree * |f(z)| / |f'(z)|`, with about `precision_bits` of
/// relative resolution.
fn certified_radius(
    f: &Polynomial,
    re: &Rational,
    im: &Rational,
    precision_bits: u32,
) -> Result<Rational> {
    let degree = f.degree().unwrap_or(0) as i64;
    let (fr, fi) = evaluate_exact(f, re, im);
    if fr.is_zero() && fi.is_zero() {
        return Ok(Rational::zero());
    }
    let (dr, di) = evaluate_exact(&f.derivative(), re, im);
    let slope_sqr = &dr * &dr + &di * &di;
    if slope_sqr.is_zero() {
        return Err(Error::Inconsistent(
            "derivative vanishes at a root approximation".into(),
        ));
    }
    let radius_sqr =
        (&fr * &fr + &fi * &fi).checked_div(&slope_sqr)? * Rational::from(degree * degree);
    Ok(sqrt_upper(&radius_sqr, precision_bits))
}

/// Dyadic upper bound on `sqrt(x)` for `x > 0`.
fn sqrt_upper(x: &Rational, bits: u32) -> Rational {
    // choose k so that sqrt(x) * 2^k has about `bits` bits
    let log2 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let k = bits as i64 - log2.div_euclid(2);
    let scaled = x.mul_pow2(2 * k);
    let root = scaled.floor().sqrt() + Integer::one();
    Rational::from(root).mul_pow2(-k)
}
