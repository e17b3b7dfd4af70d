//! Constructors for the extremal disc families of the ball and the
//! symmetrised bidisc, the lift from `𝔾₂` to symmetric matrix discs, and a
//! shape verifier for 3-extremals of `𝔾₂`.

mod fit;
mod lift;
mod rmatrix;

pub use fit::{fit_rational, FIT_RADIUS, FIT_TOL};
pub use lift::{lift_to_r2, poly_sqrt, LiftBranch, LiftResult, ROUND_TRIP_TOL};
pub use rmatrix::FracMatrix2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automorphisms::{lu_apply, phi_a_apply, AutError};
use crate::cjson;
use crate::disc::{Disc, DiscError, DiscMeta};
use crate::domains::{DomainError, DomainId};
use crate::matrix2::{svd2, CMatrix2, STRUCTURE_TOL};
use crate::rational::{
    circle_points, BlaschkeProduct, DiscAutomorphism, Poly, RationalError, RationalMap,
    DEFAULT_CLUSTER_TOL,
};

/// Unitarity defect accepted for the `U` parameters.
pub const PARAM_UNITARY_TOL: f64 = 1e-12;
/// Samples of the circle used by the shape verifier.
pub const SHAPE_SAMPLES: usize = 512;
/// Shilov tolerance of the shape verifier.
pub const SHAPE_TOL: f64 = 1e-8;
/// Interpolation density of [`family_lem1`], in points per unknown.
pub const LEM1_DENSITY: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("invalid parameter: {0}")]
    ParameterInvalid(String),
    #[error("target {0} is not supported here")]
    UnsupportedTarget(DomainId),
    #[error("disc is not symmetric: |f12 - f21| = {0:e}")]
    NotSymmetric(f64),
    #[error("rational fit residual {0:e} is too large")]
    FitResidualTooLarge(f64),
    #[error("Blaschke product of degree {0} exceeds 2")]
    DegreeTooHigh(usize),
    #[error("zero at {0} has odd multiplicity; no rational lift")]
    OddMultiplicityZero(Complex64),
    #[error("lift does not reproduce the disc: error {0:e}")]
    BranchInconsistent(f64),
    #[error("pole on the closed disc at {0}")]
    PoleOnClosedDisc(Complex64),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn lam() -> RationalMap {
    RationalMap::identity()
}

fn meta(family: &str, candidate: bool, order: Option<usize>, note: Option<String>) -> DiscMeta {
    DiscMeta { family: family.into(), candidate, claimed_order: order, note }
}

fn check_symmetric_contraction(name: &str, a: &CMatrix2) -> Result<(), ConstructionError> {
    if a.symmetry_defect() > STRUCTURE_TOL {
        return Err(ConstructionError::ParameterInvalid(format!("{name} is not symmetric")));
    }
    if !(svd2(a).0 < 1.0) {
        return Err(ConstructionError::ParameterInvalid(format!("{name} is not a strict contraction")));
    }
    Ok(())
}

fn check_unitary(name: &str, u: &CMatrix2, symmetric: bool) -> Result<(), ConstructionError> {
    if !(u.unitarity_defect() <= PARAM_UNITARY_TOL) {
        return Err(ConstructionError::ParameterInvalid(format!("{name} is not unitary")));
    }
    if symmetric && u.symmetry_defect() > STRUCTURE_TOL {
        return Err(ConstructionError::ParameterInvalid(format!("{name} is not symmetric")));
    }
    Ok(())
}

/// A Blaschke product from raw data; anything that is not one (a
/// non-unimodular constant, a zero off the disc) is `ParameterInvalid`.
pub fn blaschke_param(unimodular: Complex64, zeros: Vec<Complex64>) -> Result<BlaschkeProduct, ConstructionError> {
    BlaschkeProduct::new(unimodular, zeros).map_err(|e| ConstructionError::ParameterInvalid(e.to_string()))
}

/// `λ ↦ (a1 λ, √(1−a1²) λ m(λ), 0, …, 0)` into `B_n`.
pub fn ball_three_extremal(a1: f64, m: &DiscAutomorphism, n: usize) -> Result<Disc, ConstructionError> {
    if !(0.0..=1.0).contains(&a1) {
        return Err(ConstructionError::ParameterOutOfRange(format!("a1 = {a1} not in [0, 1]")));
    }
    if n < 2 {
        return Err(ConstructionError::ParameterOutOfRange(format!("dimension {n} < 2")));
    }
    let b = (1.0 - a1 * a1).sqrt();
    let mut comps = vec![lam().scale(c(a1)), (&lam() * &m.to_rational()).scale(c(b))];
    comps.resize(n, RationalMap::zero());
    Ok(Disc::new(comps, DomainId::Ball(n))?.with_meta(meta("ball3", false, Some(3), None)))
}

/// `λ ↦ (a1 λ^k, √(1−a1²) λ^{k+1})` into `B_2`, claimed `(k+2)`-extremal but
/// not a `(k+2)`-geodesic.
pub fn ball_nongeodesic(k: usize, a1: f64) -> Result<Disc, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::ParameterOutOfRange(format!("k = {k} < 2")));
    }
    if !(a1 > 0.0 && a1 < 1.0) {
        return Err(ConstructionError::ParameterOutOfRange(format!("a1 = {a1} not in (0, 1)")));
    }
    let b = (1.0 - a1 * a1).sqrt();
    let comps = vec![
        RationalMap::from_poly(Poly::monomial(c(a1), k)),
        RationalMap::from_poly(Poly::monomial(c(b), k + 1)),
    ];
    let note = format!("{}-extremal which is not a {}-geodesic", k + 2, k + 2);
    Ok(Disc::new(comps, DomainId::Ball(2))?.with_meta(meta("ball-k2", false, Some(k + 2), Some(note))))
}

/// `B·f` for `f` into a balanced target.
pub fn multiply_blaschke(f: &Disc, b: &BlaschkeProduct) -> Result<Disc, ConstructionError> {
    if !f.target().is_balanced() {
        return Err(ConstructionError::UnsupportedTarget(f.target()));
    }
    let br = b.to_rational();
    let comps = f.components().iter().map(|x| x * &br).collect();
    let order = f.meta().and_then(|m| m.claimed_order).map(|k| k + b.degree());
    let family = f.meta().map_or("disc", |m| m.family.as_str());
    Ok(Disc::new(comps, f.target())?.with_meta(meta(&format!("blaschke*{family}"), false, order, None)))
}

/// `φ = (2 f12, −det f)`, so that `ι(φ) = π(τ f)`.
pub fn g2_from_r2_disc(f: &Disc) -> Result<Disc, ConstructionError> {
    if !f.target().is_cartan() || f.components().len() != 4 {
        return Err(ConstructionError::UnsupportedTarget(f.target()));
    }
    let e = f.components();
    let asym = e[1].cross_distance(&e[2]);
    if asym > ROUND_TRIP_TOL {
        return Err(ConstructionError::NotSymmetric(asym));
    }
    let det = &(&e[0] * &e[3]) - &(&e[1] * &e[2]);
    let mut out = Disc::new(vec![e[1].scale(c(2.0)), -&det], DomainId::SymBidisc)?;
    if let Some(m) = f.meta() {
        out = out.with_meta(m.clone());
    }
    Ok(out)
}

/// Parameters of the nested family: `a_list = [a_1, …, a_n]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lem1Params {
    pub a_list: Vec<CMatrix2>,
    pub u: CMatrix2,
    pub z: RationalMap,
}

impl Lem1Params {
    pub fn validate(&self) -> Result<(), ConstructionError> {
        if self.a_list.is_empty() {
            return Err(ConstructionError::ParameterInvalid("a_list is empty".into()));
        }
        for (k, a) in self.a_list.iter().enumerate() {
            check_symmetric_contraction(&format!("a_{}", k + 1), a)?;
        }
        check_unitary("U", &self.u, false)?;
        self.z.check_analytic_on_closed_disc()?;
        if self.z.eval(c(0.0)).norm() > 1e-12 {
            return Err(ConstructionError::ParameterInvalid("Z(0) != 0".into()));
        }
        let sup = circle_points(256).map(|w| self.z.eval(w).norm()).fold(0.0, f64::max);
        if sup > 1.0 + 1e-12 {
            return Err(ConstructionError::ParameterInvalid(format!("sup |Z| = {sup} > 1")));
        }
        Ok(())
    }

    /// `Φ_{a1}(λ Φ_{a2}(… λ Φ_{an}(U diag(λ, Z(λ)) Uᵗ)))` at one point.
    pub fn eval(&self, z: Complex64) -> Result<CMatrix2, ConstructionError> {
        let inner = CMatrix2::diag(z, self.z.eval(z));
        let mut x = lu_apply(&self.u, &inner);
        let (last, rest) = self.a_list.split_last().expect("validated");
        x = phi_a_apply(last, &x)?;
        for a in rest.iter().rev() {
            x = phi_a_apply(a, &x.scale(z))?;
        }
        Ok(x)
    }

    /// Degree bound of the nested entries: `Φ_a` at most doubles the degree
    /// and each `λ·` adds one.
    pub fn degree_bound(&self) -> usize {
        let mut d = 2 * self.z.degree().max(1);
        for _ in 1..self.a_list.len() {
            d = 2 * (d + 1);
        }
        d
    }
}

/// [`family_lem1`] with an explicit interpolation density.
///
/// `φ₁ = 2 F12` and `φ₂ = −det F` are fitted directly: a product of fitted
/// entries would carry slightly mismatched poles that no longer cancel.
pub fn family_lem1_with_density(p: &Lem1Params, density: usize) -> Result<Disc, ConstructionError> {
    p.validate()?;
    let bound = 2 * p.degree_bound();
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let s = fit_rational(&|z| p.eval(z).map_or(nan, |m| m.z12 + m.z21), bound, density)?;
    let q = fit_rational(&|z| p.eval(z).map_or(nan, |m| -m.det()), bound, density)?;
    let n = p.a_list.len();
    let note = format!("n = {n}");
    Ok(Disc::new(vec![s, q], DomainId::SymBidisc)?.with_meta(meta("lem1", true, Some(n + 1), Some(note))))
}

/// The nested family into `𝔾₂`, fitted from point values.
pub fn family_lem1(p: &Lem1Params) -> Result<Disc, ConstructionError> {
    family_lem1_with_density(p, LEM1_DENSITY)
}

/// `(0, B₂)`, optionally moved by the automorphism of `𝔾₂` induced by `ν`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThlaCase1 {
    pub b2: BlaschkeProduct,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<DiscAutomorphism>,
}

/// `(B, B²/4)` is not inner; the royal case is `(2B, B²)` with `B` of degree
/// at most 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThlaCase2 {
    pub b: BlaschkeProduct,
}

/// `π(τ Φ_{a1}(λ Φ_{a2}(U λ)))` with `U` unitary symmetric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThlaCase3 {
    pub a1: CMatrix2,
    pub a2: CMatrix2,
    pub u: CMatrix2,
}

/// `π(τ Φ_a(U diag(λ, λ m(λ)) Uᵗ))` with `U` unitary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThlaCase4 {
    pub a: CMatrix2,
    pub u: CMatrix2,
    pub m: DiscAutomorphism,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum ThlaParams {
    #[serde(rename = "1")]
    One(ThlaCase1),
    #[serde(rename = "2")]
    Two(ThlaCase2),
    #[serde(rename = "3")]
    Three(ThlaCase3),
    #[serde(rename = "4")]
    Four(ThlaCase4),
}

impl ThlaParams {
    pub fn case(&self) -> usize {
        match self {
            ThlaParams::One(_) => 1,
            ThlaParams::Two(_) => 2,
            ThlaParams::Three(_) => 3,
            ThlaParams::Four(_) => 4,
        }
    }
}

/// The automorphism of `𝔾₂` induced by `ν` applied to a rational disc `(s, p)`.
pub fn aut_g2_rational(nu: &DiscAutomorphism, s: &RationalMap, p: &RationalMap) -> Result<(RationalMap, RationalMap), ConstructionError> {
    let (w, a) = (nu.omega(), nu.alpha());
    let ac = a.conj();
    let one = RationalMap::constant(c(1.0));
    let d = &(&one - &s.scale(ac)) + &p.scale(ac * ac);
    let sn = &(&s.scale(c(1.0 + a.norm_sqr())) - &p.scale(2.0 * ac)) - &RationalMap::constant(2.0 * a);
    let pn = &(p - &s.scale(a)) + &RationalMap::constant(a * a);
    Ok((sn.scale(w).checked_div(&d)?, pn.scale(w * w).checked_div(&d)?))
}

fn thla_from_matrix(f: &FracMatrix2, case: usize) -> Result<Disc, ConstructionError> {
    let (s, p) = f.g2_pair()?;
    Ok(Disc::new(vec![s, p], DomainId::SymBidisc)?.with_meta(meta(&format!("thla{case}"), true, Some(3), None)))
}

/// Normal forms of 3-extremals of `𝔾₂` meeting the royal variety. These are
/// necessary forms, so the output is flagged as a candidate.
pub fn family_thla(params: &ThlaParams) -> Result<Disc, ConstructionError> {
    let degree_ok = |b: &BlaschkeProduct| {
        if b.degree() > 2 {
            Err(ConstructionError::ParameterInvalid(format!("Blaschke degree {} > 2", b.degree())))
        } else {
            Ok(())
        }
    };
    let candidate = |comps: Vec<RationalMap>, case: usize| -> Result<Disc, ConstructionError> {
        Ok(Disc::new(comps, DomainId::SymBidisc)?.with_meta(meta(&format!("thla{case}"), true, Some(3), None)))
    };
    match params {
        ThlaParams::One(p) => {
            degree_ok(&p.b2)?;
            let (s, q) = (RationalMap::zero(), p.b2.to_rational());
            match &p.nu {
                None => candidate(vec![s, q], 1),
                Some(nu) => {
                    let (s, q) = aut_g2_rational(nu, &s, &q)?;
                    candidate(vec![s, q], 1)
                }
            }
        }
        ThlaParams::Two(p) => {
            degree_ok(&p.b)?;
            let b = p.b.to_rational();
            candidate(vec![b.scale(c(2.0)), &b * &b], 2)
        }
        ThlaParams::Three(p) => {
            check_symmetric_contraction("a1", &p.a1)?;
            check_symmetric_contraction("a2", &p.a2)?;
            check_unitary("U", &p.u, true)?;
            let f = FracMatrix2::linear(&p.u).phi(&p.a2)?.times_lambda().phi(&p.a1)?;
            thla_from_matrix(&f, 3)
        }
        ThlaParams::Four(p) => {
            check_symmetric_contraction("a", &p.a)?;
            check_unitary("U", &p.u, false)?;
            let f = FracMatrix2::diag(&lam(), &(&lam() * &p.m.to_rational())).lu(&p.u).phi(&p.a)?;
            thla_from_matrix(&f, 4)
        }
    }
}

/// `(B1 + B2, B1·B2)` for Blaschke products of degree at most 2.
pub fn family_thlb(b1: &BlaschkeProduct, b2: &BlaschkeProduct) -> Result<Disc, ConstructionError> {
    for b in [b1, b2] {
        if b.degree() > 2 {
            return Err(ConstructionError::DegreeTooHigh(b.degree()));
        }
    }
    let (r1, r2) = (b1.to_rational(), b2.to_rational());
    let d = Disc::new(vec![&r1 + &r2, &r1 * &r2], DomainId::SymBidisc)?;
    Ok(d.with_meta(meta("thlb", true, Some(3), None)))
}

/// Where `s² − 4p` vanishes in the open disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoyalIntersections {
    Identically,
    Points(Vec<RoyalPoint>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoyalPoint {
    #[serde(with = "cjson::complex")]
    pub z: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub degree: usize,
    pub degree_ok: bool,
    pub inner: bool,
    /// Largest Shilov defect `max(||p|−1|, |s − s̄p|, (|s|−2)⁺)` on the circle.
    pub shilov_defect: f64,
    pub royal_intersections: RoyalIntersections,
}

/// Distance-like defect of `(s, p)` from the Shilov boundary of `𝔾₂`.
pub fn g2_shilov_defect(s: Complex64, p: Complex64) -> f64 {
    (p.norm() - 1.0).abs().max((s - s.conj() * p).norm()).max((s.norm() - 2.0).max(0.0))
}

/// Degree, innerness and royal intersections of a disc into `𝔾₂`.
pub fn verify_three_extremal_shape(phi: &Disc) -> Result<ShapeReport, ConstructionError> {
    if phi.target() != DomainId::SymBidisc {
        return Err(ConstructionError::UnsupportedTarget(phi.target()));
    }
    for comp in phi.components() {
        match comp.check_analytic_on_closed_disc() {
            Err(RationalError::PoleOnClosedDisc(z)) => return Err(ConstructionError::PoleOnClosedDisc(z)),
            other => other?,
        }
    }
    let (s, p) = (phi.component(0), phi.component(1));
    let degree = phi.degree();
    let shilov_defect = circle_points(SHAPE_SAMPLES)
        .map(|z| g2_shilov_defect(s.eval(z), p.eval(z)))
        .fold(0.0, f64::max);
    let royal = &(s * s) - &p.scale(c(4.0));
    let scale = circle_points(256)
        .map(|z| s.eval(z).norm_sqr() + 4.0 * p.eval(z).norm())
        .fold(f64::MIN_POSITIVE, f64::max);
    let sup = circle_points(256).map(|z| royal.eval(z).norm()).fold(0.0, f64::max);
    let royal_intersections = if royal.is_zero() || sup <= 1e-12 * scale {
        RoyalIntersections::Identically
    } else if royal.num().degree() == 0 {
        RoyalIntersections::Points(Vec::new())
    } else {
        let pts = royal
            .num()
            .roots_with_multiplicity(DEFAULT_CLUSTER_TOL)?
            .into_iter()
            .filter(|(z, _)| z.norm() < 1.0)
            .map(|(z, multiplicity)| RoyalPoint { z, multiplicity })
            .collect();
        RoyalIntersections::Points(pts)
    };
    Ok(ShapeReport {
        degree,
        degree_ok: degree <= 4,
        inner: shilov_defect <= SHAPE_TOL,
        shilov_defect,
        royal_intersections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{contains, iota, pi_map, Mode};
    use crate::matrix2::tau_swap;
    use crate::extremality::{certify_disc, left_inverse_check, ball_left_inverse, NodeSet, Verdict};
    use crate::rational::MoebiusMap;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cc(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn takagi_u() -> CMatrix2 {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        CMatrix2::new(cc(r, 0.0), cc(0.0, r), cc(r, 0.0), cc(0.0, -r))
    }

    fn mono(a: f64, k: usize) -> RationalMap {
        RationalMap::from_poly(Poly::monomial(cc(a, 0.0), k))
    }

    fn m_half() -> BlaschkeProduct {
        MoebiusMap::new(cc(0.5, 0.0)).unwrap().to_blaschke()
    }

    #[test]
    fn ball_families() {
        let f = ball_three_extremal(1.0, &DiscAutomorphism::identity(), 3).unwrap();
        assert!(f.component(1).is_zero() && f.component(2).is_zero());
        let f = ball_three_extremal(0.6, &DiscAutomorphism::identity(), 2).unwrap();
        let rep = left_inverse_check(&ball_left_inverse(0.6, 2), &f, 3).unwrap();
        assert!(rep.ok);
        assert!(rep.composite.cross_distance(&mono(1.0, 2)) < 1e-14);
        assert!(ball_three_extremal(1.5, &DiscAutomorphism::identity(), 2).is_err());

        let g = ball_nongeodesic(2, 0.5).unwrap();
        assert!(g.component(0).cross_distance(&mono(0.5, 2)) < 1e-15);
        assert!(g.component(1).cross_distance(&mono(0.75f64.sqrt(), 3)) < 1e-15);
        assert_eq!(g.meta().unwrap().claimed_order, Some(4));
        for z in circle_points(64) {
            let v = g.eval(z);
            assert!((v[0].norm_sqr() + v[1].norm_sqr() - 1.0).abs() < 1e-14);
        }
        let nodes = NodeSet::new(vec![cc(0.1, 0.2), cc(-0.4, 0.1), cc(0.3, -0.5), cc(-0.2, -0.6)]).unwrap();
        assert_eq!(certify_disc(&g, &nodes, 1e-9).unwrap().verdict, Verdict::ExtremallySolvable);
        assert!(matches!(ball_nongeodesic(1, 0.5), Err(ConstructionError::ParameterOutOfRange(_))));
    }

    #[test]
    fn blaschke_multiplication() {
        let geo = Disc::new(vec![lam(), RationalMap::zero()], DomainId::Ball(2)).unwrap();
        let g = multiply_blaschke(&geo, &BlaschkeProduct::power(1)).unwrap();
        assert!(g.component(0).cross_distance(&mono(1.0, 2)) < 1e-15);
        let nodes = [cc(0.2, 0.1), cc(-0.3, 0.4), cc(0.5, -0.2)];
        let m3 = MoebiusMap::new(nodes[2]).unwrap().to_blaschke();
        let g = multiply_blaschke(&geo, &m3).unwrap();
        let cert = certify_disc(&g, &NodeSet::new(nodes.to_vec()).unwrap(), 1e-9).unwrap();
        assert_eq!(cert.verdict, Verdict::ExtremallySolvable);
        let phi = family_thlb(&BlaschkeProduct::power(1), &m_half()).unwrap();
        assert!(matches!(
            multiply_blaschke(&phi, &BlaschkeProduct::power(1)),
            Err(ConstructionError::UnsupportedTarget(DomainId::SymBidisc))
        ));
    }

    #[test]
    fn g2_projection_examples() {
        let anti = Disc::from_matrix([RationalMap::zero(), lam(), lam(), RationalMap::zero()], DomainId::CartanII).unwrap();
        let phi = g2_from_r2_disc(&anti).unwrap();
        assert!(phi.component(0).cross_distance(&mono(2.0, 1)) < 1e-15);
        assert!(phi.component(1).cross_distance(&mono(1.0, 2)) < 1e-15);
        let z = MoebiusMap::new(cc(0.3, 0.1)).unwrap().to_rational();
        let diag = Disc::from_matrix([lam(), RationalMap::zero(), RationalMap::zero(), z.clone()], DomainId::CartanII).unwrap();
        let phi = g2_from_r2_disc(&diag).unwrap();
        assert!(phi.component(0).is_zero());
        assert!(phi.component(1).cross_distance(&-&(&lam() * &z)) < 1e-14);
        let skew = Disc::from_matrix([RationalMap::zero(), lam(), -&lam(), RationalMap::zero()], DomainId::CartanI).unwrap();
        assert!(matches!(g2_from_r2_disc(&skew), Err(ConstructionError::NotSymmetric(_))));
    }

    #[test]
    fn g2_projection_intertwines_pi() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..20 {
            let a = sampling::symmetric_contraction(&mut rng, 0.9);
            let u = sampling::symmetric_unitary(&mut rng);
            let f = FracMatrix2::linear(&u).phi(&a).unwrap();
            let fd = Disc::from_matrix(f.entries().unwrap(), DomainId::CartanII).unwrap();
            let phi = g2_from_r2_disc(&fd).unwrap();
            for k in 0..16 {
                let z = Complex64::from_polar(0.3 + 0.04 * k as f64, 0.7 * k as f64);
                let lhs = iota(phi.component(0).eval(z), phi.component(1).eval(z));
                let rhs = pi_map(&tau_swap(&f.eval(z)));
                for i in 0..3 {
                    assert!((lhs[i] - rhs[i]).norm() < 1e-10);
                }
                assert!(contains(DomainId::SymBidisc, &phi.eval(z), Mode::Open).unwrap());
            }
        }
    }

    #[test]
    fn lem1_examples() {
        let p = Lem1Params { a_list: vec![CMatrix2::zero()], u: takagi_u(), z: lam() };
        let phi = family_lem1(&p).unwrap();
        assert!(phi.component(0).cross_distance(&mono(2.0, 1)) < 1e-10);
        assert!(phi.component(1).cross_distance(&mono(1.0, 2)) < 1e-10);
        assert_eq!(phi.meta().unwrap().claimed_order, Some(2));

        let p = Lem1Params { a_list: vec![CMatrix2::zero()], u: CMatrix2::identity(), z: RationalMap::zero() };
        let phi = family_lem1(&p).unwrap();
        assert!(phi.component(0).is_zero() && phi.component(1).is_zero());

        let m = MoebiusMap::new(cc(0.4, -0.2)).unwrap().to_rational();
        let z = &lam() * &m;
        let p = Lem1Params { a_list: vec![CMatrix2::zero()], u: CMatrix2::identity(), z: z.clone() };
        let phi = family_lem1(&p).unwrap();
        assert!(phi.component(0).is_zero());
        assert!(phi.component(1).cross_distance(&-&(&lam() * &z)) < 1e-9);
    }

    #[test]
    fn lem1_nested_fit_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        let m = MoebiusMap::new(cc(0.3, 0.2)).unwrap().to_rational();
        let p = Lem1Params {
            a_list: vec![sampling::symmetric_contraction(&mut rng, 0.6), sampling::symmetric_contraction(&mut rng, 0.6)],
            u: sampling::unitary(&mut rng),
            z: &lam() * &m,
        };
        let phi = family_lem1(&p).unwrap();
        let again = family_lem1_with_density(&p, 2 * LEM1_DENSITY).unwrap();
        for k in 0..2 {
            assert!(phi.component(k).coeff_distance(again.component(k)) < 1e-8);
        }
        for k in 0..8 {
            let z = Complex64::from_polar(0.7, k as f64);
            let f = p.eval(z).unwrap();
            assert!((phi.component(0).eval(z) - 2.0 * f.z12).norm() < 1e-9);
            assert!((phi.component(1).eval(z) + f.det()).norm() < 1e-9);
        }
        let bad = Lem1Params { z: RationalMap::constant(cc(0.1, 0.0)), ..p.clone() };
        assert!(matches!(family_lem1(&bad), Err(ConstructionError::ParameterInvalid(_))));
    }

    #[test]
    fn thla_examples() {
        let b2 = BlaschkeProduct::power(1).mul(&m_half());
        let phi = family_thla(&ThlaParams::One(ThlaCase1 { b2: b2.clone(), nu: None })).unwrap();
        assert!(phi.component(0).is_zero());
        assert!(phi.component(1).cross_distance(&b2.to_rational()) < 1e-15);
        assert!(phi.meta().unwrap().candidate);

        let nu = DiscAutomorphism::new(cc(0.0, 1.0), cc(0.3, -0.1)).unwrap();
        let moved = family_thla(&ThlaParams::One(ThlaCase1 { b2, nu: Some(nu) })).unwrap();
        assert!(verify_three_extremal_shape(&moved).unwrap().inner);

        let phi = family_thla(&ThlaParams::Two(ThlaCase2 { b: BlaschkeProduct::power(2) })).unwrap();
        let rep = verify_three_extremal_shape(&phi).unwrap();
        assert_eq!(rep.degree, 4);
        assert!(rep.inner);
        assert_eq!(rep.royal_intersections, RoyalIntersections::Identically);

        let p4 = ThlaCase4 { a: CMatrix2::zero(), u: takagi_u(), m: DiscAutomorphism::identity() };
        let phi = family_thla(&ThlaParams::Four(p4)).unwrap();
        let s = RationalMap::from_poly(Poly::from_real(&[0.0, 1.0, 1.0]));
        assert!(phi.component(0).cross_distance(&s) < 1e-14);
        assert!(phi.component(1).cross_distance(&mono(1.0, 3)) < 1e-14);
        assert!(verify_three_extremal_shape(&phi).unwrap().degree_ok);
    }

    #[test]
    fn thla_nested_cases_are_inner_of_degree_at_most_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        for _ in 0..10 {
            let p3 = ThlaCase3 {
                a1: sampling::symmetric_contraction(&mut rng, 0.9),
                a2: sampling::symmetric_contraction(&mut rng, 0.9),
                u: sampling::symmetric_unitary(&mut rng),
            };
            let rep = verify_three_extremal_shape(&family_thla(&ThlaParams::Three(p3)).unwrap()).unwrap();
            assert!(rep.degree_ok && rep.inner, "{rep:?}");
            let m = DiscAutomorphism::new(sampling::unimodular(&mut rng), sampling::disc_point(&mut rng, 0.9)).unwrap();
            let p4 = ThlaCase4 { a: sampling::symmetric_contraction(&mut rng, 0.9), u: sampling::unitary(&mut rng), m };
            let rep = verify_three_extremal_shape(&family_thla(&ThlaParams::Four(p4)).unwrap()).unwrap();
            assert!(rep.degree_ok && rep.inner, "{rep:?}");
        }
        let bad = ThlaCase3 { a1: CMatrix2::zero(), a2: CMatrix2::zero(), u: sampling::unitary(&mut rng) };
        assert!(matches!(family_thla(&ThlaParams::Three(bad)), Err(ConstructionError::ParameterInvalid(_))));
    }

    #[test]
    fn thlb_examples() {
        let phi = family_thlb(&BlaschkeProduct::power(1), &BlaschkeProduct::new(cc(1.0, 0.0), vec![cc(0.0, 0.0)]).unwrap()).unwrap();
        assert!(phi.component(0).is_zero());
        assert!(phi.component(1).cross_distance(&mono(-1.0, 2)) < 1e-15);
        assert!(matches!(blaschke_param(cc(0.5, 0.0), vec![]), Err(ConstructionError::ParameterInvalid(_))));
        assert!(matches!(
            family_thlb(&BlaschkeProduct::power(3), &m_half()),
            Err(ConstructionError::DegreeTooHigh(3))
        ));
        let rep = verify_three_extremal_shape(&family_thlb(&BlaschkeProduct::power(1), &m_half()).unwrap()).unwrap();
        assert_eq!(rep.degree, 2);
        assert!(rep.inner);
        // λ = m_{1/2}(λ) at λ = 2 − √3
        match rep.royal_intersections {
            RoyalIntersections::Points(pts) => {
                assert_eq!(pts.len(), 1);
                assert_eq!(pts[0].multiplicity, 2);
                assert!((pts[0].z - cc(2.0 - 3f64.sqrt(), 0.0)).norm() < 1e-6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shape_rejects_half_disc() {
        let phi = Disc::new(vec![RationalMap::zero(), mono(0.5, 1)], DomainId::SymBidisc).unwrap();
        assert!(!verify_three_extremal_shape(&phi).unwrap().inner);
    }
}
