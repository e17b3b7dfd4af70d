//! Dense univariate polynomials with complex coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::RationalError;
use crate::cjson;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Roots closer than this (relative to `max(1, |r|)`) are treated as one
/// cluster when multiplicities are requested.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-4;

/// A polynomial `c0 + c1 λ + ... + cn λ^n`, coefficients stored in ascending
/// degree with exact trailing zeros trimmed.
#[derive(Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "cjson::ComplexVec", into = "cjson::ComplexVec")]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `λ`.
    pub fn x() -> Self {
        Poly::new(vec![ZERO, ONE])
    }

    /// `c λ^k`.
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// Monic polynomial with the given roots (repeated for multiplicity).
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots
            .iter()
            .fold(Poly::one(), |acc, &r| &acc * &Poly::new(vec![-r, ONE]))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `Σ |c_k| |z|^k`, the natural scale for judging `|p(z)|` small.
    pub fn eval_abs_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `self(g(λ))` by Horner's scheme on polynomials.
    pub fn compose(&self, g: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| &(&acc * g) + &Poly::constant(c))
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Polynomial whose coefficients are the conjugates of these ones.
    pub fn conj_coeffs(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), RationalError> {
        if d.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        let n = self.coeffs.len();
        let m = d.coeffs.len();
        if n < m {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ZERO; n - m + 1];
        let lead = d.leading();
        for k in (0..quot.len()).rev() {
            let q = rem[k + m - 1] / lead;
            quot[k] = q;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= q * dc;
            }
        }
        rem.truncate(m - 1);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Synthetic division by `(λ - r)`, dropping the remainder.
    pub fn deflate(&self, r: Complex64) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let n = self.coeffs.len() - 1;
        let mut out = vec![ZERO; n];
        let mut acc = ZERO;
        for k in (0..n).rev() {
            acc = acc * r + self.coeffs[k + 1];
            out[k] = acc;
        }
        Poly::new(out)
    }

    /// Drops trailing coefficients below `rel_tol · max|c|`.
    pub fn trim_relative(&self, rel_tol: f64) -> Poly {
        let cut = rel_tol * self.max_abs_coeff();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= cut) {
            coeffs.pop();
        }
        Poly::new(coeffs)
    }

    /// All `deg p` roots with multiplicity: eigenvalues of the companion
    /// matrix, each refined by one Newton step.
    pub fn roots(&self) -> Result<Vec<Complex64>, RationalError> {
        if self.degree() == 0 {
            return Err(RationalError::ConstantPolynomial);
        }
        let n = self.degree();
        // Zero roots are split off exactly; the companion matrix only sees the rest.
        let zeros = self.coeffs.iter().take_while(|c| **c == ZERO).count();
        let core = Poly::new(self.coeffs[zeros..].to_vec());
        let mut roots = vec![ZERO; zeros];
        let m = core.degree();
        if m == 1 {
            roots.push(-core.coeffs[0] / core.coeffs[1]);
        } else if m > 1 {
            let lead = core.leading();
            let mut comp = DMatrix::<Complex64>::zeros(m, m);
            for i in 1..m {
                comp[(i, i - 1)] = ONE;
            }
            for i in 0..m {
                comp[(i, m - 1)] = -core.coeffs[i] / lead;
            }
            let eig = companion_eigenvalues(comp);
            let dp = core.derivative();
            for z in eig {
                roots.push(newton_polish(&core, &dp, z));
            }
        }
        debug_assert_eq!(roots.len(), n);
        Ok(roots)
    }

    /// Roots grouped into clusters with multiplicities. Each cluster centre is
    /// the cluster mean, refined by Newton on the `(k-1)`-th derivative.
    pub fn roots_with_multiplicity(
        &self,
        cluster_tol: f64,
    ) -> Result<Vec<(Complex64, usize)>, RationalError> {
        let roots = self.roots()?;
        let mut clusters: Vec<Vec<Complex64>> = Vec::new();
        let mut used = vec![false; roots.len()];
        for i in 0..roots.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let mut members = vec![roots[i]];
            // single-linkage growth
            let mut k = 0;
            while k < members.len() {
                let c = members[k];
                for j in 0..roots.len() {
                    if !used[j] && (roots[j] - c).norm() <= cluster_tol * c.norm().max(1.0) {
                        used[j] = true;
                        members.push(roots[j]);
                    }
                }
                k += 1;
            }
            clusters.push(members);
        }
        let mut out = Vec::with_capacity(clusters.len());
        for members in clusters {
            let k = members.len();
            let mean = members.iter().sum::<Complex64>() / k as f64;
            if k == 1 {
                out.push((members[0], 1));
                continue;
            }
            let mut d = self.clone();
            for _ in 0..k - 1 {
                d = d.derivative();
            }
            let centre = newton_polish(&d, &d.derivative(), mean);
            let centre = if (centre - mean).norm() <= cluster_tol * mean.norm().max(1.0) {
                centre
            } else {
                mean
            };
            out.push((centre, k));
        }
        Ok(out)
    }
}

fn companion_eigenvalues(comp: DMatrix<Complex64>) -> Vec<Complex64> {
    let m = comp.nrows();
    let schur = Schur::try_new(comp.clone(), 1e-15, 10_000).unwrap_or_else(|| Schur::new(comp));
    let (_, t) = schur.unpack();
    (0..m).map(|i| t[(i, i)]).collect()
}

fn newton_polish(p: &Poly, dp: &Poly, z: Complex64) -> Complex64 {
    let d = dp.eval(z);
    if d.norm() == 0.0 {
        return z;
    }
    let next = z - p.eval(z) / d;
    if next.is_finite() && p.eval(next).norm() <= p.eval(z).norm() {
        next
    } else {
        z
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})λ")?,
                _ => write!(f, "({c})λ^{k}")?,
            }
        }
        Ok(())
    }
}

impl From<cjson::ComplexVec> for Poly {
    fn from(v: cjson::ComplexVec) -> Self {
        Poly::new(v.0)
    }
}

impl From<Poly> for cjson::ComplexVec {
    fn from(p: Poly) -> Self {
        cjson::ComplexVec(p.coeffs)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-ONE)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
