//! Pick-matrix certificates of extremal solvability, left-inverse checks for
//! complex geodesics, the four-extremal infeasibility scan and the
//! improvement step for the Lempert function.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cjson::{self, ComplexVec};
use crate::disc::{Disc, DiscMeta};
use crate::domains::{self, DomainId, Mode};
use crate::matrix2::svd2;
use crate::rational::{
    circle_points, poincare_distance, BlaschkeProduct, MoebiusMap, Poly, RationalError,
    RationalMap,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default relative singularity band: `ε = tol · max(λ_max, 1)`.
pub const DEFAULT_PICK_TOL: f64 = 1e-9;
/// Nodes closer than this are rejected.
pub const MIN_NODE_SEPARATION: f64 = 1e-8;
/// Targets may exceed norm 1 by this much before being rejected.
const CONTRACTIVE_SLACK: f64 = 1e-12;
/// Innerness tolerance of [`left_inverse_check`].
pub const LEFT_INVERSE_INNER_TOL: f64 = 1e-9;
/// Circle samples bounding the image of a disc in [`improvement_step`].
pub const IMPROVEMENT_SAMPLES: usize = 256;
/// A Schur-algorithm value within this distance of the circle ends the recursion.
const SCHUR_UNIMODULAR_TOL: f64 = 1e-7;

const CARTAN_II_SCOPE: &str = "certificate computed in R_I; ExtremallySolvable transfers to R_II, \
StrictlySolvable does not refute extremality in R_II";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremalityError {
    #[error("need at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("node {0} is not in the open unit disc")]
    NodeOutsideDisc(Complex64),
    #[error("nodes are only {0:e} apart")]
    NodesTooClose(f64),
    #[error("{nodes} nodes but {targets} targets")]
    SizeMismatch { nodes: usize, targets: usize },
    #[error("target has norm {0} > 1")]
    TargetNotContractive(f64),
    #[error("disc value at node {0} is outside the closed target domain")]
    NodeOutsideDomainImage(Complex64),
    #[error("target {0} is not supported here")]
    UnsupportedTarget(DomainId),
    #[error("composition has a pole on the closed disc at {0}")]
    CompositionNotAnalytic(Complex64),
    #[error("polynomial map has arity {got}, disc has {expected} components")]
    ArityMismatch { expected: usize, got: usize },
    #[error("grid is empty")]
    EmptyGrid,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("perturbation gauge {perturbation} is not below the margin {margin}")]
    PerturbationTooLarge { perturbation: f64, margin: f64 },
    #[error("interpolation data are not extremal; no unique Blaschke interpolant")]
    NotExtremal,
    #[error(transparent)]
    Rational(#[from] RationalError),
}

/// `m ≥ 2` distinct points of the open disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexVec", into = "ComplexVec")]
pub struct NodeSet(Vec<Complex64>);

impl TryFrom<ComplexVec> for NodeSet {
    type Error = ExtremalityError;
    fn try_from(v: ComplexVec) -> Result<Self, Self::Error> {
        NodeSet::new(v.0)
    }
}

impl From<NodeSet> for ComplexVec {
    fn from(n: NodeSet) -> Self {
        ComplexVec(n.0)
    }
}

impl NodeSet {
    pub fn new(nodes: Vec<Complex64>) -> Result<Self, ExtremalityError> {
        if nodes.len() < 2 {
            return Err(ExtremalityError::TooFewNodes(nodes.len()));
        }
        for &z in &nodes {
            if !(z.norm() < 1.0) {
                return Err(ExtremalityError::NodeOutsideDisc(z));
            }
        }
        for i in 0..nodes.len() {
            for j in 0..i {
                let d = (nodes[i] - nodes[j]).norm();
                if d < MIN_NODE_SEPARATION {
                    return Err(ExtremalityError::NodesTooClose(d));
                }
            }
        }
        Ok(NodeSet(nodes))
    }

    pub fn points(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NotSolvable,
    StrictlySolvable,
    ExtremallySolvable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PickCertificate {
    pub nodes: NodeSet,
    /// Target values, flattened row-major per node.
    pub targets: Vec<ComplexVec>,
    pub matrix: Vec<ComplexVec>,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub verdict: Verdict,
    /// Number of eigenvalues above `tolerance`.
    pub rank: usize,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    /// The unique Blaschke interpolant of extremal scalar data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interpolant: Option<BlaschkeProduct>,
}

impl PickCertificate {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Number of eigenvalues within the singularity band.
    pub fn nullity(&self) -> usize {
        self.eigenvalues.iter().filter(|e| e.abs() <= self.tolerance).count()
    }
}

/// Block Pick matrix with blocks `(I − W_i W_j*) / (1 − λ_i λ̄_j)`.
pub fn pick_matrix(nodes: &[Complex64], targets: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    let m = nodes.len();
    let k = targets[0].nrows();
    let mut out = DMatrix::zeros(m * k, m * k);
    for i in 0..m {
        for j in 0..m {
            let kernel = ONE / (ONE - nodes[i] * nodes[j].conj());
            let block = DMatrix::identity(k, k) - &targets[i] * targets[j].adjoint();
            out.view_mut((i * k, j * k), (k, k)).copy_from(&(block * kernel));
        }
    }
    out
}

/// Hermitian eigenvalues in ascending order.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn certificate(
    nodes: &NodeSet,
    targets: &[DMatrix<Complex64>],
    tol: f64,
) -> Result<PickCertificate, ExtremalityError> {
    if targets.len() != nodes.len() {
        return Err(ExtremalityError::SizeMismatch { nodes: nodes.len(), targets: targets.len() });
    }
    for w in targets {
        let norm = w.clone().svd(false, false).singular_values.max();
        if norm > 1.0 + CONTRACTIVE_SLACK {
            return Err(ExtremalityError::TargetNotContractive(norm));
        }
    }
    let matrix = pick_matrix(nodes.points(), targets);
    let eigenvalues = hermitian_eigenvalues(&matrix);
    let top = *eigenvalues.last().expect("nonempty");
    let eps = tol * top.max(1.0);
    let low = eigenvalues[0];
    let verdict = if low < -eps {
        Verdict::NotSolvable
    } else if low <= eps {
        Verdict::ExtremallySolvable
    } else {
        Verdict::StrictlySolvable
    };
    let rank = eigenvalues.iter().filter(|&&e| e > eps).count();
    let flat = |w: &DMatrix<Complex64>| ComplexVec(w.transpose().iter().copied().collect());
    Ok(PickCertificate {
        nodes: nodes.clone(),
        targets: targets.iter().map(flat).collect(),
        matrix: matrix.row_iter().map(|r| ComplexVec(r.iter().copied().collect())).collect(),
        eigenvalues,
        verdict,
        rank,
        tolerance: eps,
        scope: None,
        interpolant: None,
    })
}

/// Classical Pick criterion for data `λ_j ↦ z_j` into the disc. Extremal
/// data also get their unique Blaschke interpolant.
pub fn pick_scalar(
    nodes: &NodeSet,
    targets: &[Complex64],
    tol: f64,
) -> Result<PickCertificate, ExtremalityError> {
    let ws: Vec<DMatrix<Complex64>> =
        targets.iter().map(|&z| DMatrix::from_element(1, 1, z)).collect();
    let mut cert = certificate(nodes, &ws, tol)?;
    if cert.verdict == Verdict::ExtremallySolvable {
        cert.interpolant = schur_interpolant(nodes.points(), targets).ok();
    }
    Ok(cert)
}

/// Matrix Pick criterion for 2×2 targets (R_I).
pub fn pick_block(
    nodes: &NodeSet,
    targets: &[crate::matrix2::CMatrix2],
    tol: f64,
) -> Result<PickCertificate, ExtremalityError> {
    let ws: Vec<DMatrix<Complex64>> =
        targets.iter().map(|w| DMatrix::from_row_slice(2, 2, &w.to_array())).collect();
    certificate(nodes, &ws, tol)
}

/// Pick criterion for row-vector targets (the ball `B_n`).
pub fn pick_row(
    nodes: &NodeSet,
    targets: &[Vec<Complex64>],
    tol: f64,
) -> Result<PickCertificate, ExtremalityError> {
    let ws: Vec<DMatrix<Complex64>> =
        targets.iter().map(|v| DMatrix::from_row_slice(1, v.len(), v)).collect();
    certificate(nodes, &ws, tol)
}

/// Unique interpolant of extremal scalar data by the Schur algorithm:
/// `f = m_{w₁} ∘ (m_{λ₁} · h)` where `h` interpolates the reduced data on the
/// remaining nodes, until a value reaches the circle.
pub fn schur_interpolant(
    nodes: &[Complex64],
    values: &[Complex64],
) -> Result<BlaschkeProduct, ExtremalityError> {
    let r = schur_rational(nodes, values)?;
    let b = BlaschkeProduct::from_inner_rational(&r)?;
    let fits = nodes.iter().zip(values).all(|(&l, &w)| (b.eval(l) - w).norm() < 1e-6);
    if fits {
        Ok(b)
    } else {
        Err(ExtremalityError::NotExtremal)
    }
}

fn schur_rational(nodes: &[Complex64], values: &[Complex64]) -> Result<RationalMap, ExtremalityError> {
    let w1 = values[0];
    if 1.0 - w1.norm() <= SCHUR_UNIMODULAR_TOL {
        return Ok(RationalMap::constant(w1 / w1.norm()));
    }
    if nodes.len() == 1 {
        return Err(ExtremalityError::NotExtremal);
    }
    let (l1, mw) = (nodes[0], MoebiusMap::new(w1)?);
    let ml = MoebiusMap::new(l1)?;
    let reduced: Vec<Complex64> =
        nodes[1..].iter().zip(&values[1..]).map(|(&l, &w)| mw.eval(w) / ml.eval(l)).collect();
    let h = schur_rational(&nodes[1..], &reduced)?;
    Ok(mw.to_rational().compose(&(&ml.to_rational() * &h)))
}

/// Evaluates a disc at the nodes and runs the Pick criterion matching its
/// target.
pub fn certify_disc(f: &Disc, nodes: &NodeSet, tol: f64) -> Result<PickCertificate, ExtremalityError> {
    for c in f.components() {
        c.check_analytic_on_closed_disc()?;
    }
    let target = f.target();
    let values: Vec<Vec<Complex64>> = nodes.points().iter().map(|&l| f.eval(l)).collect();
    for (v, &l) in values.iter().zip(nodes.points()) {
        let inside = domains::contains(target, v, Mode::Closed).unwrap_or(false);
        if !inside {
            return Err(ExtremalityError::NodeOutsideDomainImage(l));
        }
    }
    match target {
        DomainId::Disc => {
            let zs: Vec<Complex64> = values.iter().map(|v| v[0]).collect();
            pick_scalar(nodes, &zs, tol)
        }
        DomainId::Polydisc(n) => {
            let ws: Vec<DMatrix<Complex64>> = values
                .iter()
                .map(|v| DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&v[..n])))
                .collect();
            certificate(nodes, &ws, tol)
        }
        DomainId::Ball(_) => pick_row(nodes, &values, tol),
        DomainId::CartanI | DomainId::CartanII => {
            let ws: Vec<_> = values.iter().map(|v| domains::matrix_from_point(v)).collect();
            let mut cert = pick_block(nodes, &ws, tol)?;
            if target == DomainId::CartanII {
                cert.scope = Some(CARTAN_II_SCOPE.to_string());
            }
            Ok(cert)
        }
        other => Err(ExtremalityError::UnsupportedTarget(other)),
    }
}

/// `coeff · Π z_i^{powers_i}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    #[serde(with = "cjson::complex")]
    pub coeff: Complex64,
    pub powers: Vec<u32>,
}

/// A polynomial map `F: ℂⁿ → ℂ` as a sum of monomials.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PolyMap {
    pub terms: Vec<Monomial>,
}

impl PolyMap {
    pub fn new(terms: Vec<Monomial>) -> Self {
        PolyMap { terms }
    }

    /// The coordinate function `z_i` on `ℂⁿ`.
    pub fn coordinate(i: usize, n: usize) -> Self {
        let mut powers = vec![0; n];
        powers[i] = 1;
        PolyMap::new(vec![Monomial { coeff: ONE, powers }])
    }

    pub fn constant(c: Complex64, n: usize) -> Self {
        PolyMap::new(vec![Monomial { coeff: c, powers: vec![0; n] }])
    }

    pub fn arity(&self) -> Option<usize> {
        self.terms.first().map(|t| t.powers.len())
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.powers.iter().zip(z).fold(t.coeff, |acc, (&p, &x)| acc * x.powu(p)))
            .sum()
    }

    /// `F ∘ f` as a reduced rational map.
    pub fn compose(&self, f: &Disc) -> Result<RationalMap, ExtremalityError> {
        let n = f.components().len();
        for t in &self.terms {
            if t.powers.len() != n {
                return Err(ExtremalityError::ArityMismatch { expected: n, got: t.powers.len() });
            }
        }
        let mut acc = RationalMap::zero();
        for t in &self.terms {
            let term = t
                .powers
                .iter()
                .zip(f.components())
                .filter(|(&p, _)| p > 0)
                .fold(RationalMap::constant(t.coeff), |r, (&p, c)| &r * &c.powi(p));
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

/// The left inverse of the three-extremal ball discs:
/// `F(z) = z1²/(2 − a1²) + (2√(1 − a1²)/(2 − a1²)) z2` on `ℂⁿ`.
pub fn ball_left_inverse(a1: f64, n: usize) -> PolyMap {
    let d = 2.0 - a1 * a1;
    let mut p1 = vec![0; n];
    p1[0] = 2;
    let mut p2 = vec![0; n];
    p2[1] = 1;
    PolyMap::new(vec![
        Monomial { coeff: Complex64::new(1.0 / d, 0.0), powers: p1 },
        Monomial { coeff: Complex64::new(2.0 * (1.0 - a1 * a1).sqrt() / d, 0.0), powers: p2 },
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeftInverseReport {
    pub ok: bool,
    pub composite: RationalMap,
    pub degree: usize,
    pub inner_defect: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blaschke: Option<BlaschkeProduct>,
}

/// Whether `F ∘ f` is a nonconstant Blaschke product of degree at most `m − 1`.
pub fn left_inverse_check(
    big_f: &PolyMap,
    f: &Disc,
    m: usize,
) -> Result<LeftInverseReport, ExtremalityError> {
    let composite = big_f.compose(f)?;
    composite.check_analytic_on_closed_disc().map_err(|e| match e {
        RationalError::PoleOnClosedDisc(z) => ExtremalityError::CompositionNotAnalytic(z),
        other => other.into(),
    })?;
    let degree = composite.degree();
    let inner_defect = composite.inner_defect()?;
    let inner = inner_defect <= LEFT_INVERSE_INNER_TOL;
    let ok = inner && degree >= 1 && degree < m;
    let blaschke = if inner && degree >= 1 {
        BlaschkeProduct::from_inner_rational(&composite).ok()
    } else {
        None
    };
    Ok(LeftInverseReport { ok: ok && blaschke.is_some(), composite, degree, inner_defect, blaschke })
}

/// `E(a1, γ) = (a1² − |γ|²)² + |γ|²(1 − |γ|²)(1 − a1²)`.
pub fn four_extremal_e(a1: f64, gamma: Complex64) -> f64 {
    let g2 = gamma.norm_sqr();
    let a2 = a1 * a1;
    (a2 - g2).powi(2) + g2 * (1.0 - g2) * (1.0 - a2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub min: f64,
    pub argmin_a1: f64,
    #[serde(with = "cjson::complex")]
    pub argmin_gamma: Complex64,
    pub evaluations: usize,
}

pub fn four_extremal_scan(a1_grid: &[f64], gamma_grid: &[Complex64]) -> Result<ScanResult, ExtremalityError> {
    if a1_grid.is_empty() || gamma_grid.is_empty() {
        return Err(ExtremalityError::EmptyGrid);
    }
    if let Some(a) = a1_grid.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
        return Err(ExtremalityError::ParameterOutOfRange(format!("a1 = {a} not in (0, 1)")));
    }
    if let Some(g) = gamma_grid.iter().find(|g| !(g.norm() < 1.0)) {
        return Err(ExtremalityError::ParameterOutOfRange(format!("|γ| = {} not < 1", g.norm())));
    }
    let mut best = ScanResult { min: f64::INFINITY, argmin_a1: 0.0, argmin_gamma: ZERO, evaluations: 0 };
    for &a in a1_grid {
        for &g in gamma_grid {
            let e = four_extremal_e(a, g);
            best.evaluations += 1;
            if e < best.min {
                best.min = e;
                best.argmin_a1 = a;
                best.argmin_gamma = g;
            }
        }
    }
    Ok(best)
}

/// `n` equispaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Minkowski gauge on the balanced targets, in closed form.
fn gauge(target: DomainId, x: &[Complex64]) -> Result<f64, ExtremalityError> {
    if !target.is_balanced() {
        return Err(ExtremalityError::UnsupportedTarget(target));
    }
    Ok(match target {
        DomainId::CartanI | DomainId::CartanII | DomainId::CartanIII => {
            svd2(&domains::matrix_from_point(x)).0
        }
        _ => domains::defect(target, x).expect("dimension checked by Disc"),
    })
}

/// `g̃(λ) = g(λ) + λ (g(σ) − g(tσ)) / (tσ)`, so that `g̃(tσ) = g(σ)` and
/// `g̃(0) = g(0)`.
///
/// Accepted only when the gauge of the perturbation coefficient is below
/// `1 − max μ(g(ζ))` over the sampled circle, which keeps `g̃` in the target.
pub fn improvement_step(g: &Disc, sigma: f64, t: f64) -> Result<Disc, ExtremalityError> {
    for (name, v) in [("σ", sigma), ("t", t)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(ExtremalityError::ParameterOutOfRange(format!("{name} = {v} not in (0, 1)")));
        }
    }
    let target = g.target();
    let mut top: f64 = 0.0;
    for z in circle_points(IMPROVEMENT_SAMPLES) {
        top = top.max(gauge(target, &g.eval(z))?);
    }
    let margin = 1.0 - top;
    let ts = Complex64::new(t * sigma, 0.0);
    let c: Vec<Complex64> = g
        .eval(Complex64::new(sigma, 0.0))
        .iter()
        .zip(g.eval(ts))
        .map(|(a, b)| (a - b) / ts)
        .collect();
    let perturbation = gauge(target, &c)?;
    if !(perturbation < margin) {
        return Err(ExtremalityError::PerturbationTooLarge { perturbation, margin });
    }
    let comps = g
        .components()
        .iter()
        .zip(&c)
        .map(|(gi, &ci)| gi + &RationalMap::from_poly(Poly::monomial(ci, 1)))
        .collect();
    let meta = DiscMeta {
        family: "improvement".into(),
        note: Some(format!("sigma = {sigma}, t = {t}")),
        ..Default::default()
    };
    Ok(Disc::new(comps, target).map_err(|e| match e {
        crate::disc::DiscError::Rational(r) => ExtremalityError::Rational(r),
        other => ExtremalityError::ParameterOutOfRange(other.to_string()),
    })?
    .with_meta(meta))
}

/// The Lempert function of the disc, which is the Poincaré distance.
pub fn lempert_disc(l1: Complex64, l2: Complex64) -> Result<f64, ExtremalityError> {
    Ok(poincare_distance(l1, l2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix2::CMatrix2;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn nodes(v: &[f64]) -> NodeSet {
        NodeSet::new(v.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn node_validation() {
        assert_eq!(NodeSet::new(vec![c(0.0, 0.0)]), Err(ExtremalityError::TooFewNodes(1)));
        assert!(matches!(
            NodeSet::new(vec![c(0.0, 0.0), c(1.0, 0.0)]),
            Err(ExtremalityError::NodeOutsideDisc(_))
        ));
        assert!(matches!(
            NodeSet::new(vec![c(0.1, 0.0), c(0.1 + 1e-9, 0.0)]),
            Err(ExtremalityError::NodesTooClose(_))
        ));
    }

    #[test]
    fn scalar_examples() {
        let n = nodes(&[0.0, 0.5]);
        let cert = pick_scalar(&n, &[c(0.0, 0.0), c(0.5, 0.0)], DEFAULT_PICK_TOL).unwrap();
        assert_eq!(cert.verdict, Verdict::ExtremallySolvable);
        assert!((cert.eigenvalues[1] - 2.0).abs() < 1e-14 && cert.eigenvalues[0].abs() < 1e-15);
        assert_eq!(cert.rank, 1);
        let b = cert.interpolant.unwrap();
        assert_eq!(b.degree(), 1);
        assert!((b.eval(c(0.3, 0.2)) - c(0.3, 0.2)).norm() < 1e-10);

        let cert = pick_scalar(&n, &[c(0.0, 0.0), c(0.25, 0.0)], DEFAULT_PICK_TOL).unwrap();
        assert!((cert.matrix[1].0[1] - c(1.25, 0.0)).norm() < 1e-15);
        assert_eq!(cert.verdict, Verdict::StrictlySolvable);

        let cert = pick_scalar(&n, &[c(0.0, 0.0), c(0.9, 0.0)], DEFAULT_PICK_TOL).unwrap();
        assert_eq!(cert.verdict, Verdict::NotSolvable);

        assert!(matches!(
            pick_scalar(&n, &[c(0.0, 0.0)], DEFAULT_PICK_TOL),
            Err(ExtremalityError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn scalar_blaschke_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for d in 1..=3usize {
            for m in 2..=4usize {
                for _ in 0..10 {
                    let zeros = (0..d).map(|_| sampling::disc_point(&mut rng, 0.8)).collect();
                    let b = BlaschkeProduct::new(sampling::unimodular(&mut rng), zeros).unwrap();
                    let n = NodeSet::new(sampling::nodes(&mut rng, m, 0.8, 0.2)).unwrap();
                    let ws: Vec<_> = n.points().iter().map(|&l| b.eval(l)).collect();
                    let cert = pick_scalar(&n, &ws, DEFAULT_PICK_TOL).unwrap();
                    if m > d {
                        assert_eq!(cert.verdict, Verdict::ExtremallySolvable);
                        assert_eq!(cert.rank, d);
                        let rec = cert.interpolant.expect("interpolant");
                        assert_eq!(rec.degree(), d);
                        let z = c(0.1, -0.3);
                        assert!((rec.eval(z) - b.eval(z)).norm() < 1e-6);
                    } else {
                        assert_eq!(cert.verdict, Verdict::StrictlySolvable);
                    }
                }
            }
        }
    }

    #[test]
    fn block_examples() {
        let n = nodes(&[0.0, 0.4, -0.5]);
        let ws: Vec<_> =
            n.points().iter().map(|&l| CMatrix2::diag(l, l * l)).collect();
        let cert = pick_block(&n, &ws, DEFAULT_PICK_TOL).unwrap();
        assert!(cert.min_eigenvalue().abs() <= 1e-10);
        assert_eq!(cert.verdict, Verdict::ExtremallySolvable);
        // identity data (nullity 2) plus degree-2 Blaschke data (nullity 1)
        assert_eq!(cert.nullity(), 3);

        let zero = vec![CMatrix2::zero(); 3];
        assert_eq!(pick_block(&n, &zero, DEFAULT_PICK_TOL).unwrap().verdict, Verdict::StrictlySolvable);

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let u = sampling::unitary(&mut rng);
        let two = nodes(&[0.0, 0.5]);
        assert_eq!(
            pick_block(&two, &[u, u], DEFAULT_PICK_TOL).unwrap().verdict,
            Verdict::ExtremallySolvable
        );
        let big = CMatrix2::scalar(c(1.5, 0.0));
        assert!(matches!(
            pick_block(&two, &[big, big], DEFAULT_PICK_TOL),
            Err(ExtremalityError::TargetNotContractive(_))
        ));
    }

    #[test]
    fn four_extremal_values() {
        assert!((four_extremal_e(0.5, c(0.5, 0.0)) - 0.140625).abs() < 1e-16);
        assert!((four_extremal_e(0.5, c(0.0, 0.0)) - 0.0625).abs() < 1e-16);
        let a = linspace(0.1, 0.9, 65);
        let g: Vec<Complex64> = linspace(0.0, 0.95, 64).into_iter().map(|x| c(x, 0.0)).collect();
        let r = four_extremal_scan(&a, &g).unwrap();
        assert_eq!(r.evaluations, 65 * 64);
        assert!((r.min - 1e-4).abs() < 1e-12);
        assert!((r.argmin_a1 - 0.1).abs() < 1e-15 && r.argmin_gamma == ZERO);
        assert_eq!(four_extremal_scan(&[], &g), Err(ExtremalityError::EmptyGrid));
    }

    #[test]
    fn improvement_examples() {
        let g = Disc::new(vec![RationalMap::identity().scale(c(0.5, 0.0))], DomainId::Disc).unwrap();
        let gt = improvement_step(&g, 0.5, 0.9).unwrap();
        let slope = gt.component(0).eval(ONE);
        assert!((slope.re - (0.5 + 0.025 / 0.45)).abs() < 1e-15);
        assert!((gt.component(0).eval(c(0.45, 0.0)) - c(0.25, 0.0)).norm() < 1e-15);
        assert!(lempert_disc(ZERO, c(0.45, 0.0)).unwrap() < lempert_disc(ZERO, c(0.5, 0.0)).unwrap());

        let k = Disc::new(vec![RationalMap::constant(c(0.3, 0.1))], DomainId::Disc).unwrap();
        let kt = improvement_step(&k, 0.5, 0.9).unwrap();
        assert!(kt.component(0).cross_distance(k.component(0)) < 1e-15);

        let near = Disc::new(vec![RationalMap::identity().scale(c(0.99, 0.0))], DomainId::Disc).unwrap();
        assert!(matches!(
            improvement_step(&near, 0.5, 0.1),
            Err(ExtremalityError::PerturbationTooLarge { .. })
        ));
    }

    #[test]
    fn lempert_values() {
        assert_eq!(lempert_disc(ZERO, ZERO).unwrap(), 0.0);
        assert!((lempert_disc(ZERO, c(0.5, 0.0)).unwrap() - 0.5 * 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn left_inverse_examples() {
        let a1: f64 = 0.6;
        let f = Disc::new(
            vec![
                RationalMap::identity().scale(c(a1, 0.0)),
                RationalMap::from_poly(Poly::monomial(c((1.0 - a1 * a1).sqrt(), 0.0), 2)),
            ],
            DomainId::Ball(2),
        )
        .unwrap();
        let rep = left_inverse_check(&ball_left_inverse(a1, 2), &f, 3).unwrap();
        assert!(rep.ok && rep.degree == 2);
        assert!(rep.composite.cross_distance(&RationalMap::from_poly(Poly::monomial(ONE, 2))) < 1e-15);
        assert_eq!(rep.blaschke.unwrap().degree(), 2);
        assert!(!left_inverse_check(&ball_left_inverse(a1, 2), &f, 2).unwrap().ok);

        let konst = PolyMap::constant(c(0.5, 0.0), 2);
        assert!(!left_inverse_check(&konst, &f, 3).unwrap().ok);
        let wrong = PolyMap::coordinate(0, 3);
        assert!(matches!(
            left_inverse_check(&wrong, &f, 3),
            Err(ExtremalityError::ArityMismatch { .. })
        ));
    }
}
