//! Lifting rational discs of `𝔾₂` to symmetric matrix discs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disc::{Disc, DiscMeta};
use crate::domains::DomainId;
use crate::matrix2::svd2;
use crate::rational::{circle_points, BlaschkeProduct, Poly, RationalMap, DEFAULT_CLUSTER_TOL};

use super::{g2_from_r2_disc, ConstructionError};

/// Zeros of `q` closer than this to the circle belong to the zero-free part.
const INSIDE_MARGIN: f64 = 1e-9;
/// `q` counts as identically zero when its samples stay below this fraction
/// of the size of `φ₁²/4` and `φ₂`.
const VANISHING_TOL: f64 = 1e-12;
/// Relative residual allowed in a polynomial square root.
const SQRT_TOL: f64 = 1e-9;
/// Gauss-Newton steps after the series start of [`poly_sqrt`].
const SQRT_POLISH_STEPS: usize = 4;
/// Round-trip tolerance on `g2_from_r2_disc(lift) = φ`.
pub const ROUND_TRIP_TOL: f64 = 1e-9;

/// How the Blaschke factor `B` of `f11·f22 = B·h` is distributed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LiftBranch {
    /// `f11 = √h`, `f22 = B·√h`: `f11` has no zeros in the disc.
    #[default]
    ZeroFreeCorner,
    /// `f11 = f22 = √B·√h`; needs every zero of `B` to have even multiplicity.
    EvenSplit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftResult {
    pub disc: Disc,
    pub branch: LiftBranch,
    /// `φ₁²/4 − φ₂ ≡ 0`, i.e. `φ` lies in the royal variety.
    pub royal: bool,
    /// `σ1(f) = 1` at sampled interior points: the lift lies in `∂R_I`.
    pub on_boundary: bool,
    pub f11_zero_free: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Square root of a polynomial, or `None` if it is not a square.
///
/// An even power of `λ` is split off; the rest starts from the power series
/// recursion `2 s₀ s_n = p_n − Σ_{0<i<n} s_i s_{n−i}` and is polished by
/// Gauss-Newton steps on `s² = p`, which the recursion alone does not get
/// right when `p` has zeros near the origin.
pub fn poly_sqrt(p: &Poly) -> Option<Poly> {
    if p.is_zero() {
        return None;
    }
    let zero = Complex64::new(0.0, 0.0);
    let low = p.coeffs().iter().take_while(|c| **c == zero).count();
    if low % 2 == 1 || (p.degree() - low) % 2 == 1 {
        return None;
    }
    let core = Poly::new(p.coeffs()[low..].to_vec());
    let k = core.degree() / 2;
    let mut s = vec![core.coeff(0).sqrt()];
    for n in 1..=k {
        let cross: Complex64 = (1..n).map(|i| s[i] * s[n - i]).sum();
        s.push((core.coeff(n) - cross) / (2.0 * s[0]));
    }
    let mut root = Poly::new(s);
    for _ in 0..SQRT_POLISH_STEPS {
        let rhs = &core - &(&root * &root);
        let mut jac = DMatrix::<Complex64>::zeros(2 * k + 1, k + 1);
        for j in 0..=k {
            for (i, &c) in root.coeffs().iter().enumerate() {
                jac[(i + j, j)] += 2.0 * c;
            }
        }
        let b = DVector::from_iterator(2 * k + 1, (0..=2 * k).map(|i| rhs.coeff(i)));
        let Ok(delta) = jac.svd(true, true).solve(&b, 1e-14) else { break };
        let step = Poly::new(delta.iter().copied().collect());
        root = &root + &step;
        if step.max_abs_coeff() <= 1e-16 * root.max_abs_coeff() {
            break;
        }
    }
    let residual = (&(&root * &root) - &core).max_abs_coeff();
    if !(residual <= SQRT_TOL * core.max_abs_coeff()) {
        return None;
    }
    Some(&Poly::monomial(Complex64::new(1.0, 0.0), low / 2) * &root)
}

fn sup_on_circle(r: &RationalMap) -> f64 {
    circle_points(256).map(|z| r.eval(z).norm()).fold(0.0, f64::max)
}

/// Symmetric `f` with `g2_from_r2_disc(f) = φ`, i.e. `f12 = φ₁/2` and
/// `f11·f22 = φ₁²/4 − φ₂`.
///
/// `q = φ₁²/4 − φ₂` is split as `B·h` with `B` the Blaschke product of the
/// zeros of `q` in the disc and `h` free of them; the lift needs `h` to be the
/// square of a rational map.
pub fn lift_to_r2(phi: &Disc, branch: LiftBranch) -> Result<LiftResult, ConstructionError> {
    if phi.target() != DomainId::SymBidisc {
        return Err(ConstructionError::UnsupportedTarget(phi.target()));
    }
    let (s, p) = (phi.component(0), phi.component(1));
    let quarter = Complex64::new(0.25, 0.0);
    let s2 = (s * s).scale(quarter);
    let q = &s2 - p;
    let f12 = s.scale(Complex64::new(0.5, 0.0));
    let scale = sup_on_circle(&s2).max(sup_on_circle(p)).max(f64::MIN_POSITIVE);
    let royal = q.is_zero() || sup_on_circle(&q) <= VANISHING_TOL * scale;

    let (f11, f22, f11_zero_free, warning) = if royal {
        (RationalMap::zero(), RationalMap::zero(), false, None)
    } else if let Some(root) = rational_sqrt(&q) {
        split_square(&root, branch)?
    } else {
        split_general(&q, branch)?
    };

    let disc = Disc::from_matrix([f11, f12.clone(), f12, f22], DomainId::CartanII)?.with_meta(
        DiscMeta { family: "lift".into(), ..Default::default() },
    );
    let back = g2_from_r2_disc(&disc)?;
    let err = back
        .components()
        .iter()
        .zip(phi.components())
        .map(|(a, b)| a.cross_distance(b))
        .fold(0.0, f64::max);
    if !(err <= ROUND_TRIP_TOL) {
        return Err(ConstructionError::BranchInconsistent(err));
    }
    let on_boundary = [0.0, 0.5]
        .iter()
        .all(|&t| svd2(&disc.eval_matrix(Complex64::new(t, 0.0))).0 >= 1.0 - 1e-9);
    Ok(LiftResult { disc, branch, royal, on_boundary, f11_zero_free, warning })
}

type Corners = (RationalMap, RationalMap, bool, Option<String>);

fn rational_sqrt(q: &RationalMap) -> Option<(Poly, Poly)> {
    Some((poly_sqrt(q.num())?, poly_sqrt(q.den())?))
}

fn inside_roots(p: &Poly) -> Result<(Vec<Complex64>, Poly), ConstructionError> {
    if p.degree() == 0 {
        return Ok((Vec::new(), p.clone()));
    }
    let mut rest = p.clone();
    let mut inside = Vec::new();
    let mut roots = p.roots()?;
    roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    for z in roots.into_iter().filter(|z| z.norm() < 1.0 - INSIDE_MARGIN) {
        rest = rest.deflate(z);
        inside.push(z);
    }
    Ok((inside, rest))
}

/// `q = R²` with `R = Rn/Rd`. Writing `Rn = D·Rout` with `D = Π(λ − z_i)`
/// over the zeros of `R` in the disc and `E = Π(1 − z̄_i λ)`, the Blaschke
/// factor of `R` is `B_R = (−1)^k D/E` and `r = (−1)^k E·Rout/Rd` is zero-free.
fn split_square((rn, rd): &(Poly, Poly), branch: LiftBranch) -> Result<Corners, ConstructionError> {
    let (zeros, _) = inside_roots(rn)?;
    let sign = Complex64::new(if zeros.len() % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    let d = Poly::from_roots(&zeros);
    let e = zeros
        .iter()
        .fold(Poly::one(), |acc, z| &acc * &Poly::new(vec![Complex64::new(1.0, 0.0), -z.conj()]));
    match branch {
        LiftBranch::ZeroFreeCorner => {
            // f11 f22 = rn²/rd² holds before reduction, however inexact the
            // computed zeros are; reduction then cancels D and E.
            let f11 = RationalMap::new((&e * rn).scale(sign), rd * &d)?;
            let f22 = RationalMap::new((&d * rn).scale(sign), rd * &e)?;
            Ok((f11, f22, true, None))
        }
        LiftBranch::EvenSplit => {
            let f = RationalMap::new(rn.clone(), rd.clone())?;
            let zero_free = zeros.is_empty();
            let warning = (!zero_free).then(|| "both diagonal entries vanish inside the disc".to_string());
            Ok((f.clone(), f, zero_free, warning))
        }
    }
}

/// `q = B·h` with `B` the Blaschke product of all zeros of `q` in the disc;
/// only `h` has to be a square.
fn split_general(q: &RationalMap, branch: LiftBranch) -> Result<Corners, ConstructionError> {
    let clusters = if q.num().degree() == 0 {
        Vec::new()
    } else {
        q.num().roots_with_multiplicity(DEFAULT_CLUSTER_TOL)?
    };
    let inside: Vec<(Complex64, usize)> =
        clusters.into_iter().filter(|(z, _)| z.norm() < 1.0 - INSIDE_MARGIN).collect();
    if branch == LiftBranch::EvenSplit {
        if let Some(&(z, _)) = inside.iter().find(|(_, k)| k % 2 == 1) {
            return Err(ConstructionError::OddMultiplicityZero(z));
        }
    }
    let zeros: Vec<Complex64> = inside.iter().flat_map(|&(z, k)| std::iter::repeat_n(z, k)).collect();
    let one = Complex64::new(1.0, 0.0);
    let b = BlaschkeProduct::new(one, zeros)?;
    let h = q.checked_div(&b.to_rational())?;
    let odd = |z: Complex64| ConstructionError::OddMultiplicityZero(z);
    let root_num = poly_sqrt(h.num()).ok_or_else(|| odd(first_odd_root(h.num())))?;
    let root_den = poly_sqrt(h.den()).ok_or_else(|| odd(first_odd_root(h.den())))?;
    let r = RationalMap::new(root_num, root_den)?;
    match branch {
        LiftBranch::ZeroFreeCorner => {
            let f22 = &r * &b.to_rational();
            Ok((r, f22, true, None))
        }
        LiftBranch::EvenSplit => {
            let half: Vec<Complex64> =
                inside.iter().flat_map(|&(z, k)| std::iter::repeat_n(z, k / 2)).collect();
            let zero_free = half.is_empty();
            let f = &r * &BlaschkeProduct::new(one, half)?.to_rational();
            let warning = (!zero_free).then(|| "both diagonal entries vanish inside the disc".to_string());
            Ok((f.clone(), f, zero_free, warning))
        }
    }
}

/// A root of odd multiplicity, reported when a square root fails.
fn first_odd_root(p: &Poly) -> Complex64 {
    if p.degree() == 0 {
        return Complex64::new(0.0, 0.0);
    }
    p.roots_with_multiplicity(DEFAULT_CLUSTER_TOL)
        .ok()
        .and_then(|cs| cs.into_iter().find(|(_, k)| k % 2 == 1).map(|(z, _)| z))
        .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}
