use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::DEFAULT_CLUSTER_TOL;
use super::{circle_points, Poly, RationalError};

/// Relative tolerance for deciding that a denominator root is also a root of
/// the numerator.
pub const PAIRING_TOL: f64 = 1e-9;

/// Trailing coefficients below this fraction of the largest one are noise
/// left over from cancellation.
const TRIM_TOL: f64 = 1e-13;

/// Second-smallest singular value below which [`cofactors`] is not trusted.
const COFACTOR_GAP: f64 = 1e-8;
/// Smallest singular value of the normalised cofactor system below which a
/// further common factor is taken to exist.
const AGREE_TOL: f64 = 1e-9;
const AGREE_CONDITION: f64 = 1e-5;
const AGREE_MAX_CIRCLES: usize = 64;
const AGREE_MAX_RADIUS: f64 = 10.0;
const AGREE_TOL_FAR: f64 = 1e-6;
const GCD_TOL: f64 = 1e-11;

/// Sampled circle size for [`RationalMap::is_inner`].
const INNER_SAMPLES: usize = 512;

/// Denominator roots this close to the unit circle count as poles on it.
const POLE_MARGIN: f64 = 1e-10;

/// Quotient `num / den` of two complex polynomials.
///
/// Values produced by [`RationalMap::new`] and by the arithmetic operators are
/// reduced: no root of `den` is a root of `num`. The denominator is scaled so
/// its constant term is 1 whenever it does not vanish at the origin, otherwise
/// so that it is monic.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRationalMap")]
pub struct RationalMap {
    num: Poly,
    den: Poly,
}

impl RationalMap {
    pub fn new(num: Poly, den: Poly) -> Result<Self, RationalError> {
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(RationalMap { num, den }.reduce_nonzero())
    }

    /// Keeps `num` and `den` exactly as given (no reduction, no scaling).
    pub fn from_parts_unreduced(num: Poly, den: Poly) -> Result<Self, RationalError> {
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(RationalMap { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalMap::new(p, Poly::one()).expect("unit denominator")
    }

    pub fn constant(c: Complex64) -> Self {
        RationalMap::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RationalMap { num: Poly::zero(), den: Poly::one() }
    }

    /// The identity map `λ`.
    pub fn identity() -> Self {
        RationalMap::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0
    }

    /// `max(deg num, deg den)`; meaningful on reduced maps.
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// Cancels common roots of numerator and denominator.
    pub fn reduce(&self) -> Result<Self, RationalError> {
        if self.den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(self.clone().reduce_nonzero())
    }

    fn reduce_nonzero(self) -> Self {
        let mut num = self.num.trim_relative(TRIM_TOL);
        let mut den = self.den.trim_relative(TRIM_TOL);
        let (num0, den0) = (num.clone(), den.clone());
        // Trimming can drop a tiny leading coefficient of one side only, so
        // the probe below works on the untrimmed pair.
        let (raw_num, raw_den) = (&self.num, &self.den);
        let mut paired = 0;
        'outer: loop {
            if num.is_zero() {
                return RationalMap::zero();
            }
            if num.degree() == 0 || den.degree() == 0 {
                break;
            }
            let clusters = den
                .roots_with_multiplicity(DEFAULT_CLUSTER_TOL)
                .expect("nonconstant denominator");
            for (c, k) in clusters {
                let shared = shared_multiplicity(&num, c, k);
                if shared > 0 {
                    paired += shared;
                    for _ in 0..shared {
                        num = num.deflate(c);
                        den = den.deflate(c);
                    }
                    num = num.trim_relative(TRIM_TOL);
                    den = den.trim_relative(TRIM_TOL);
                    continue 'outer;
                }
            }
            break;
        }
        if num.is_zero() {
            return RationalMap::zero();
        }
        // Root pairing can miss factors of high multiplicity; look for more.
        let k0 = paired;
        let kmax = raw_num.degree().min(raw_den.degree());
        let mut k = k0;
        let pairing_ok = agrees(&num, &den, raw_num, raw_den);
        // Intermediate probes can have a null space of dimension above one,
        // so only the deepest probe that agrees pointwise is taken.
        let mut probes = Vec::new();
        while k < kmax {
            match cofactors(raw_num, raw_den, raw_num.degree() - k - 1, raw_den.degree() - k - 1) {
                Some(c) if c.sigma_min < GCD_TOL => {
                    probes.push(c);
                    k += 1;
                }
                _ => break,
            }
        }
        if let Some(c) = probes.into_iter().rev().find(|c| agrees(&c.num, &c.den, raw_num, raw_den)) {
            return normalize(c.num, c.den);
        }
        if k0 > 0 {
            if let Some(c) = cofactors(&num0, &den0, num.degree(), den.degree()) {
                if c.sigma_second >= COFACTOR_GAP
                    && agrees(&c.num, &c.den, raw_num, raw_den)
                    && cross_residual(&c.num, &c.den, &num0, &den0) < cross_residual(&num, &den, &num0, &den0)
                {
                    return normalize(c.num, c.den);
                }
            }
            if !pairing_ok {
                return normalize(num0, den0);
            }
        }
        normalize(num, den)
    }

    /// Errors with the offending root when the denominator vanishes somewhere
    /// on the closed unit disc.
    pub fn check_analytic_on_closed_disc(&self) -> Result<(), RationalError> {
        if self.den.degree() == 0 {
            return Ok(());
        }
        for r in self.den.roots()? {
            if r.norm() <= 1.0 + POLE_MARGIN {
                return Err(RationalError::PoleOnClosedDisc(r));
            }
        }
        Ok(())
    }

    /// `sup_θ | |r(e^{iθ})| - 1 |` over 512 equispaced points.
    pub fn inner_defect(&self) -> Result<f64, RationalError> {
        self.check_analytic_on_closed_disc()?;
        Ok(circle_points(INNER_SAMPLES)
            .map(|z| (self.eval(z).norm() - 1.0).abs())
            .fold(0.0, f64::max))
    }

    /// True iff the sampled inner defect is at most `tol`.
    pub fn is_inner(&self, tol: f64) -> Result<bool, RationalError> {
        Ok(self.inner_defect()? <= tol)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        RationalMap { num: self.num.scale(s), den: self.den.clone() }.reduce_nonzero()
    }

    pub fn checked_div(&self, rhs: &RationalMap) -> Result<Self, RationalError> {
        RationalMap::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn powi(&self, k: u32) -> Self {
        RationalMap { num: self.num.pow(k), den: self.den.pow(k) }.reduce_nonzero()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RationalMap) -> Self {
        let n = self.degree();
        let p = &inner.num;
        let q = &inner.den;
        let homogenize = |poly: &Poly| {
            (0..=n).fold(Poly::zero(), |acc, k| {
                let term = (&p.pow(k as u32) * &q.pow((n - k) as u32)).scale(poly.coeff(k));
                &acc + &term
            })
        };
        RationalMap { num: homogenize(&self.num), den: homogenize(&self.den) }.reduce_nonzero()
    }

    /// Largest coefficient difference after both maps are normalised.
    pub fn coeff_distance(&self, other: &RationalMap) -> f64 {
        let d = |a: &Poly, b: &Poly| {
            let n = a.coeffs().len().max(b.coeffs().len());
            (0..n).map(|k| (a.coeff(k) - b.coeff(k)).norm()).fold(0.0, f64::max)
        };
        d(&self.num, &other.num).max(d(&self.den, &other.den))
    }

    /// Relative size of `self.num·other.den - self.den·other.num`; zero iff
    /// the two maps agree as rational functions.
    pub fn cross_distance(&self, other: &RationalMap) -> f64 {
        let lhs = &self.num * &other.den;
        let rhs = &self.den * &other.num;
        let diff = (&lhs - &rhs).max_abs_coeff();
        let scale = lhs.max_abs_coeff().max(rhs.max_abs_coeff()).max(f64::MIN_POSITIVE);
        diff / scale
    }
}

/// Number of times `(λ - c)` divides `num`, capped at `k`.
fn shared_multiplicity(num: &Poly, c: Complex64, k: usize) -> usize {
    let mut d = num.clone();
    let mut count = 0;
    while count < k && count < num.degree() {
        let scale = d.eval_abs_scale(c).max(f64::MIN_POSITIVE);
        if d.eval(c).norm() > PAIRING_TOL * scale {
            break;
        }
        count += 1;
        d = d.derivative();
    }
    count
}

/// Cauchy bound on the moduli of the roots.
fn root_bound(p: &Poly) -> f64 {
    let lead = p.leading().norm();
    1.0 + p.coeffs()[..p.degree()].iter().map(|c| c.norm() / lead).fold(0.0, f64::max)
}

/// Pointwise check of `n/d = num0/den0` on circles from radius 0.5 out past
/// the roots (capped at [`AGREE_MAX_RADIUS`]), so that a cluster of zeros and
/// poles off the disc cannot be replaced by fewer factors that only agree
/// near the disc. Outside radius 1.5 the tolerance is loose since values
/// there lose accuracy. Points where `num0` or
/// `den0` is small against its coefficient scale (near a cancelled root)
/// carry no information and are skipped; at least half must remain.
fn agrees(n: &Poly, d: &Poly, num0: &Poly, den0: &Poly) -> bool {
    let outer = (1.25 * root_bound(num0).max(root_bound(den0))).min(AGREE_MAX_RADIUS);
    let mut used = 0;
    let mut total = 0;
    let mut r: f64 = 0.5;
    for _ in 0..AGREE_MAX_CIRCLES {
        for j in 0..16 {
            total += 1;
            let z = Complex64::from_polar(r, (j as f64 + 0.25) * std::f64::consts::TAU / 16.0);
            let (a, b, c, e) = (n.eval(z), d.eval(z), num0.eval(z), den0.eval(z));
            if c.norm() < AGREE_CONDITION * num0.eval_abs_scale(z) || e.norm() < AGREE_CONDITION * den0.eval_abs_scale(z) {
                continue;
            }
            used += 1;
            let tol = if r <= 1.5 { AGREE_TOL } else { AGREE_TOL_FAR };
            if (a * e - b * c).norm() > tol * (a.norm() * e.norm() + b.norm() * c.norm()) {
                return false;
            }
        }
        if r > outer {
            break;
        }
        r *= 1.6;
    }
    2 * used >= total
}

/// Relative size of `n·den0 − d·num0`.
fn cross_residual(n: &Poly, d: &Poly, num0: &Poly, den0: &Poly) -> f64 {
    let lhs = n * den0;
    let rhs = d * num0;
    (&lhs - &rhs).max_abs_coeff() / lhs.max_abs_coeff().max(rhs.max_abs_coeff()).max(f64::MIN_POSITIVE)
}

struct Cofactors {
    num: Poly,
    den: Poly,
    sigma_min: f64,
    sigma_second: f64,
}

/// `n/d` with the given degrees and `n·den0 = d·num0`, from the null vector of
/// the linear system in their coefficients (with both inputs scaled to unit
/// size). Deflating at computed roots loses accuracy when the cancelled roots
/// are clustered; this does not. A second small singular value means a common
/// factor is still left, and the null vector then carries a spurious factor.
fn cofactors(num0: &Poly, den0: &Poly, dn: usize, dd: usize) -> Option<Cofactors> {
    let (sa, sb) = (num0.max_abs_coeff(), den0.max_abs_coeff());
    let (a, b) = (num0.scale(Complex64::new(1.0 / sa, 0.0)), den0.scale(Complex64::new(1.0 / sb, 0.0)));
    let rows = (dn + den0.degree()).max(dd + num0.degree()) + 1;
    let cols = dn + dd + 2;
    if rows < cols {
        return None;
    }
    let mut m = DMatrix::<Complex64>::zeros(rows, cols);
    for j in 0..=dn {
        for (i, &c) in b.coeffs().iter().enumerate() {
            m[(i + j, j)] += c;
        }
    }
    for j in 0..=dd {
        for (i, &c) in a.coeffs().iter().enumerate() {
            m[(i + j, dn + 1 + j)] -= c;
        }
    }
    let svd = m.svd(false, true);
    let sv = &svd.singular_values;
    let (imin, sigma_min) = sv.argmin();
    let sigma_second =
        sv.iter().enumerate().filter(|(i, _)| *i != imin).map(|(_, s)| *s).fold(f64::INFINITY, f64::min);
    let v: Vec<Complex64> = svd.v_t?.row(imin).iter().map(|c| c.conj()).collect();
    let num = Poly::new(v[..=dn].to_vec()).scale(Complex64::new(sa / sb, 0.0));
    let den = Poly::new(v[dn + 1..].to_vec());
    (!den.is_zero()).then_some(Cofactors { num, den, sigma_min, sigma_second })
}

fn normalize(num: Poly, den: Poly) -> RationalMap {
    let c0 = den.coeff(0);
    let pivot = if c0.norm() > 1e-8 * den.max_abs_coeff() { c0 } else { den.leading() };
    let inv = Complex64::new(1.0, 0.0) / pivot;
    RationalMap { num: num.scale(inv), den: den.scale(inv) }
}

#[derive(Deserialize)]
struct RawRationalMap {
    num: Poly,
    den: Poly,
}

impl TryFrom<RawRationalMap> for RationalMap {
    type Error = RationalError;
    fn try_from(raw: RawRationalMap) -> Result<Self, Self::Error> {
        RationalMap::new(raw.num, raw.den)
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

impl From<Poly> for RationalMap {
    fn from(p: Poly) -> Self {
        RationalMap::from_poly(p)
    }
}

impl Add for &RationalMap {
    type Output = RationalMap;
    fn add(self, rhs: &RationalMap) -> RationalMap {
        if self.den == rhs.den {
            return RationalMap { num: &self.num + &rhs.num, den: self.den.clone() }.reduce_nonzero();
        }
        // Common denominator lcm = den1·v = den2·u where u/v = den1/den2 reduced.
        let (u, v) = if self.den.degree() > 0 && rhs.den.degree() > 0 {
            let r = RationalMap { num: self.den.clone(), den: rhs.den.clone() }.reduce_nonzero();
            (r.num, r.den)
        } else {
            (self.den.clone(), rhs.den.clone())
        };
        RationalMap { num: &(&self.num * &v) + &(&rhs.num * &u), den: &self.den * &v }.reduce_nonzero()
    }
}

impl Sub for &RationalMap {
    type Output = RationalMap;
    fn sub(self, rhs: &RationalMap) -> RationalMap {
        self + &(-rhs)
    }
}

impl Mul for &RationalMap {
    type Output = RationalMap;
    fn mul(self, rhs: &RationalMap) -> RationalMap {
        RationalMap { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.reduce_nonzero()
    }
}

impl Neg for &RationalMap {
    type Output = RationalMap;
    fn neg(self) -> RationalMap {
        RationalMap { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalMap {
            type Output = RationalMap;
            fn $m(self, rhs: RationalMap) -> RationalMap {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::MoebiusMap;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rm(num: &[f64], den: &[f64]) -> RationalMap {
        RationalMap::new(Poly::from_real(num), Poly::from_real(den)).unwrap()
    }

    #[test]
    fn reduce_cancels_common_roots() {
        let r = rm(&[0.0, -1.0, 1.0], &[0.0, 1.0]);
        assert_eq!(r.degree(), 1);
        assert!(r.cross_distance(&rm(&[-1.0, 1.0], &[1.0])) < 1e-14);

        assert_eq!(rm(&[0.0, 0.0, 1.0], &[1.0]).degree(), 2);

        let r = rm(&[0.0, 1.0, 0.0, 1.0], &[1.0, 0.0, 1.0]);
        assert_eq!(r.degree(), 1);
        assert!(r.coeff_distance(&RationalMap::identity()) < 1e-13);
    }

    #[test]
    fn reduce_handles_double_common_factor() {
        let f = Poly::from_roots(&[c(0.2, 0.3), c(0.2, 0.3)]);
        let num = &f * &Poly::from_real(&[1.0, 2.0]);
        let den = &f * &Poly::from_real(&[3.0, 0.0, 1.0]);
        let r = RationalMap::new(num, den).unwrap();
        assert_eq!(r.degree(), 2);
        assert_eq!(r.num().degree(), 1);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalMap::new(Poly::one(), Poly::zero()),
            Err(RationalError::ZeroDenominator)
        );
    }

    #[test]
    fn reduce_is_idempotent() {
        let f = Poly::new(vec![c(0.1, 0.4), c(1.0, 0.0)]);
        let num = &f * &Poly::new(vec![c(0.5, -0.2), c(0.3, 0.1), c(1.0, 1.0)]);
        let den = &f * &Poly::new(vec![c(2.0, 0.0), c(0.0, 0.5)]);
        let once = RationalMap::new(num, den).unwrap();
        let twice = once.reduce().unwrap();
        assert_eq!(once.degree(), twice.degree());
        assert!(once.coeff_distance(&twice) <= 1e-13);
    }

    #[test]
    fn inner_checks() {
        assert!(rm(&[0.0, 0.0, 1.0], &[1.0]).is_inner(1e-12).unwrap());
        assert!(!rm(&[0.0, 0.5], &[1.0]).is_inner(1e-12).unwrap());
        let m = MoebiusMap::new(c(0.5, 0.0)).unwrap().to_rational();
        assert!(m.is_inner(1e-12).unwrap());
        let pole = rm(&[1.0], &[0.5, 1.0]);
        assert!(matches!(pole.is_inner(1e-9), Err(RationalError::PoleOnClosedDisc(_))));
    }

    #[test]
    fn compose_matches_pointwise() {
        let outer = rm(&[0.1, 0.0, 1.0], &[1.0, -0.2]);
        let inner = MoebiusMap::new(c(0.3, -0.1)).unwrap().to_rational();
        let comp = outer.compose(&inner);
        for z in [c(0.1, 0.2), c(-0.5, 0.3), c(0.7, -0.1)] {
            assert!((comp.eval(z) - outer.eval(inner.eval(z))).norm() < 1e-13);
        }
    }

    #[test]
    fn arithmetic_matches_pointwise() {
        let a = rm(&[1.0, 2.0], &[3.0, 1.0]);
        let b = rm(&[0.5, 0.0, 1.0], &[1.0, 0.0, 0.25]);
        let z = c(0.3, 0.4);
        assert!(((&a + &b).eval(z) - (a.eval(z) + b.eval(z))).norm() < 1e-14);
        assert!(((&a - &b).eval(z) - (a.eval(z) - b.eval(z))).norm() < 1e-14);
        assert!(((&a * &b).eval(z) - a.eval(z) * b.eval(z)).norm() < 1e-14);
        assert!((a.checked_div(&b).unwrap().eval(z) - a.eval(z) / b.eval(z)).norm() < 1e-13);
    }

    #[test]
    fn json_shape() {
        let r = rm(&[0.0, 1.0], &[2.0]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":[[0.0,0.0],[0.5,0.0]],"den":[[1.0,0.0]]}"#);
        let back: RationalMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
