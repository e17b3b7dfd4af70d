use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Poly, RationalError, RationalMap};
use crate::cjson;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Input constants within this distance of the unit circle are accepted and
/// projected onto it.
const UNIMODULAR_TOL: f64 = 1e-12;

fn unimodular(u: Complex64) -> Result<Complex64, RationalError> {
    if !u.is_finite() || (u.norm() - 1.0).abs() > UNIMODULAR_TOL {
        return Err(RationalError::NotUnimodular(u));
    }
    Ok(u / u.norm())
}

fn in_open_disc(z: Complex64) -> Result<Complex64, RationalError> {
    if z.is_finite() && z.norm() < 1.0 {
        Ok(z)
    } else {
        Err(RationalError::ZeroOutsideDisc(z))
    }
}

/// The Blaschke factor `m_α(λ) = (α - λ) / (1 - ᾱλ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    #[serde(with = "cjson::complex")]
    alpha: Complex64,
}

impl MoebiusMap {
    pub fn new(alpha: Complex64) -> Result<Self, RationalError> {
        Ok(MoebiusMap { alpha: in_open_disc(alpha)? })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.alpha - z) / (ONE - self.alpha.conj() * z)
    }

    pub fn to_rational(&self) -> RationalMap {
        RationalMap::new(
            Poly::new(vec![self.alpha, -ONE]),
            Poly::new(vec![ONE, -self.alpha.conj()]),
        )
        .expect("nonzero denominator")
    }

    pub fn to_blaschke(&self) -> BlaschkeProduct {
        BlaschkeProduct { unimodular: ONE, zeros: vec![self.alpha] }
    }
}

/// A general automorphism of the disc, `ν(λ) = ω (λ - a) / (1 - āλ)`.
///
/// `m_α` is `ν` with `ω = -1, a = α`; rotations have `a = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDiscAutomorphism")]
pub struct DiscAutomorphism {
    #[serde(with = "cjson::complex")]
    rotation: Complex64,
    #[serde(with = "cjson::complex")]
    alpha: Complex64,
}

#[derive(Deserialize)]
struct RawDiscAutomorphism {
    #[serde(with = "cjson::complex", default = "one")]
    rotation: Complex64,
    #[serde(with = "cjson::complex", default)]
    alpha: Complex64,
}

fn one() -> Complex64 {
    ONE
}

impl TryFrom<RawDiscAutomorphism> for DiscAutomorphism {
    type Error = RationalError;
    fn try_from(raw: RawDiscAutomorphism) -> Result<Self, Self::Error> {
        DiscAutomorphism::new(raw.rotation, raw.alpha)
    }
}

impl DiscAutomorphism {
    pub fn new(rotation: Complex64, alpha: Complex64) -> Result<Self, RationalError> {
        Ok(DiscAutomorphism { rotation: unimodular(rotation)?, alpha: in_open_disc(alpha)? })
    }

    pub fn identity() -> Self {
        DiscAutomorphism { rotation: ONE, alpha: Complex64::new(0.0, 0.0) }
    }

    pub fn rotation(omega: Complex64) -> Result<Self, RationalError> {
        DiscAutomorphism::new(omega, Complex64::new(0.0, 0.0))
    }

    pub fn from_moebius(m: MoebiusMap) -> Self {
        DiscAutomorphism { rotation: -ONE, alpha: m.alpha }
    }

    pub fn omega(&self) -> Complex64 {
        self.rotation
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.rotation * (z - self.alpha) / (ONE - self.alpha.conj() * z)
    }

    pub fn inverse(&self) -> Self {
        DiscAutomorphism { rotation: self.rotation.conj(), alpha: -self.alpha * self.rotation }
    }

    pub fn to_rational(&self) -> RationalMap {
        RationalMap::new(
            Poly::new(vec![-self.rotation * self.alpha, self.rotation]),
            Poly::new(vec![ONE, -self.alpha.conj()]),
        )
        .expect("nonzero denominator")
    }
}

/// `u · Π m_{z_k}(λ)` with `|u| = 1` and every `z_k` in the open disc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBlaschke")]
pub struct BlaschkeProduct {
    #[serde(with = "cjson::complex")]
    unimodular: Complex64,
    #[serde(with = "cjson::complex_vec")]
    zeros: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawBlaschke {
    #[serde(with = "cjson::complex", default = "one")]
    unimodular: Complex64,
    #[serde(with = "cjson::complex_vec")]
    zeros: Vec<Complex64>,
}

impl TryFrom<RawBlaschke> for BlaschkeProduct {
    type Error = RationalError;
    fn try_from(raw: RawBlaschke) -> Result<Self, Self::Error> {
        BlaschkeProduct::new(raw.unimodular, raw.zeros)
    }
}

impl BlaschkeProduct {
    pub fn new(unimodular_const: Complex64, zeros: Vec<Complex64>) -> Result<Self, RationalError> {
        let unimodular = unimodular(unimodular_const)?;
        for &z in &zeros {
            in_open_disc(z)?;
        }
        Ok(BlaschkeProduct { unimodular, zeros })
    }

    /// Unimodular constant (degree 0).
    pub fn constant(u: Complex64) -> Result<Self, RationalError> {
        BlaschkeProduct::new(u, Vec::new())
    }

    /// `λ^k`, i.e. `(-1)^k m_0^k`.
    pub fn power(k: usize) -> Self {
        let sign = if k.is_multiple_of(2) { ONE } else { -ONE };
        BlaschkeProduct { unimodular: sign, zeros: vec![Complex64::new(0.0, 0.0); k] }
    }

    pub fn unimodular(&self) -> Complex64 {
        self.unimodular
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.unimodular, |acc, &a| acc * (a - z) / (ONE - a.conj() * z))
    }

    pub fn mul(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        BlaschkeProduct { unimodular: self.unimodular * other.unimodular, zeros }
    }

    /// Numerator `u Π (z_k - λ)` over denominator `Π (1 - z̄_k λ)`.
    pub fn to_rational(&self) -> RationalMap {
        let (num, den) = self.zeros.iter().fold(
            (Poly::constant(self.unimodular), Poly::one()),
            |(n, d), &a| {
                (&n * &Poly::new(vec![a, -ONE]), &d * &Poly::new(vec![ONE, -a.conj()]))
            },
        );
        RationalMap::from_parts_unreduced(num, den).expect("nonzero denominator")
    }

    /// Recognises an inner rational map as a Blaschke product: zeros are the
    /// numerator roots, the constant is fixed by the value at `λ = 1`.
    pub fn from_inner_rational(r: &RationalMap) -> Result<Self, RationalError> {
        let zeros = if r.num().degree() == 0 { Vec::new() } else { r.num().roots()? };
        for &z in &zeros {
            in_open_disc(z)?;
        }
        let partial = BlaschkeProduct { unimodular: ONE, zeros };
        let u = r.eval(ONE) / partial.eval(ONE);
        BlaschkeProduct::new(u / u.norm(), partial.zeros)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::circle_points;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn moebius_values() {
        let m = MoebiusMap::new(c(0.2, -0.4)).unwrap();
        assert_eq!(m.eval(m.alpha()).norm(), 0.0);
        let m0 = MoebiusMap::new(c(0.0, 0.0)).unwrap();
        assert!((m0.eval(c(0.3, 0.0)) - c(-0.3, 0.0)).norm() < 1e-16);
        let half = MoebiusMap::new(c(0.5, 0.0)).unwrap();
        assert!((half.eval(c(0.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn moebius_rejects_boundary_alpha() {
        assert!(MoebiusMap::new(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn product_degree_and_zeros() {
        let b1 = MoebiusMap::new(c(0.0, 0.0)).unwrap().to_blaschke();
        let b2 = MoebiusMap::new(c(0.5, 0.0)).unwrap().to_blaschke();
        let p = b1.mul(&b2);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.eval(c(0.0, 0.0)).norm(), 0.0);
        let rot = BlaschkeProduct::constant(c(0.0, 1.0)).unwrap();
        assert_eq!(b2.mul(&rot).zeros(), b2.zeros());
    }

    #[test]
    fn unimodular_on_circle() {
        let b = BlaschkeProduct::new(c(0.6, 0.8), vec![c(0.3, 0.2), c(-0.7, 0.1), c(0.0, 0.95)])
            .unwrap();
        for z in circle_points(256) {
            assert!((b.eval(z).norm() - 1.0).abs() <= 1e-12);
        }
        let inside = b.eval(c(0.1, 0.1)).norm();
        assert!(inside < 1.0);
    }

    #[test]
    fn rational_form_agrees_with_factors() {
        let b = BlaschkeProduct::new(c(0.0, -1.0), vec![c(0.3, 0.2), c(-0.5, 0.5)]).unwrap();
        let r = b.to_rational();
        for z in [c(0.1, 0.0), c(-0.4, 0.6), c(0.99, 0.0)] {
            assert!((r.eval(z) - b.eval(z)).norm() < 1e-14);
        }
        let back = BlaschkeProduct::from_inner_rational(&r).unwrap();
        assert_eq!(back.degree(), 2);
        assert!((back.unimodular() - b.unimodular()).norm() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(BlaschkeProduct::new(c(0.5, 0.0), vec![]).is_err());
        assert!(BlaschkeProduct::new(c(1.0, 0.0), vec![c(1.2, 0.0)]).is_err());
        let parsed: Result<BlaschkeProduct, _> =
            serde_json::from_str(r#"{"unimodular":[0.5,0.0],"zeros":[]}"#);
        assert!(parsed.is_err());
    }

    #[test]
    fn automorphism_inverse() {
        let nu = DiscAutomorphism::new(c(0.0, 1.0), c(0.3, -0.2)).unwrap();
        let inv = nu.inverse();
        for z in [c(0.1, 0.2), c(-0.6, 0.1), c(0.0, 0.0)] {
            assert!((inv.eval(nu.eval(z)) - z).norm() < 1e-14);
        }
        let m = MoebiusMap::new(c(0.4, 0.1)).unwrap();
        let as_aut = DiscAutomorphism::from_moebius(m);
        assert!((as_aut.eval(c(0.2, 0.2)) - m.eval(c(0.2, 0.2))).norm() < 1e-15);
    }
}
