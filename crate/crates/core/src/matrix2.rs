//! 2×2 complex matrices: singular values, Takagi factorisation of symmetric
//! matrices, square roots of positive semidefinite matrices and the column
//! swap `τ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cjson::Pair;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Symmetry / hermiticity tolerance for factorisation inputs.
pub const STRUCTURE_TOL: f64 = 1e-12;
/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as zero by [`psd_sqrt2`].
pub const EIGEN_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix is not symmetric (defect {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("matrix has eigenvalue {0:e} below the clamp band")]
    NegativeEigenvalue(f64),
    #[error("matrix is singular")]
    Singular,
}

/// Row-major 2×2 complex matrix `[[z11, z12], [z21, z22]]`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct CMatrix2 {
    pub z11: Complex64,
    pub z12: Complex64,
    pub z21: Complex64,
    pub z22: Complex64,
}

impl CMatrix2 {
    pub const fn new(z11: Complex64, z12: Complex64, z21: Complex64, z22: Complex64) -> Self {
        CMatrix2 { z11, z12, z21, z22 }
    }

    pub fn from_real(rows: [[f64; 2]; 2]) -> Self {
        let c = |x: f64| Complex64::new(x, 0.0);
        CMatrix2::new(c(rows[0][0]), c(rows[0][1]), c(rows[1][0]), c(rows[1][1]))
    }

    pub fn from_array(e: [Complex64; 4]) -> Self {
        CMatrix2::new(e[0], e[1], e[2], e[3])
    }

    pub fn to_array(&self) -> [Complex64; 4] {
        [self.z11, self.z12, self.z21, self.z22]
    }

    pub fn zero() -> Self {
        CMatrix2::default()
    }

    pub fn identity() -> Self {
        CMatrix2::diag(ONE, ONE)
    }

    pub fn diag(a: Complex64, b: Complex64) -> Self {
        CMatrix2::new(a, ZERO, ZERO, b)
    }

    pub fn scalar(s: Complex64) -> Self {
        CMatrix2::diag(s, s)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix2::new(self.z11 * s, self.z12 * s, self.z21 * s, self.z22 * s)
    }

    pub fn transpose(&self) -> Self {
        CMatrix2::new(self.z11, self.z21, self.z12, self.z22)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        CMatrix2::new(self.z11.conj(), self.z21.conj(), self.z12.conj(), self.z22.conj())
    }

    pub fn conj(&self) -> Self {
        CMatrix2::new(self.z11.conj(), self.z12.conj(), self.z21.conj(), self.z22.conj())
    }

    pub fn det(&self) -> Complex64 {
        self.z11 * self.z22 - self.z12 * self.z21
    }

    pub fn trace(&self) -> Complex64 {
        self.z11 + self.z22
    }

    /// Classical adjugate: `a · adj(a) = det(a) · I`.
    pub fn adjugate(&self) -> Self {
        CMatrix2::new(self.z22, -self.z12, -self.z21, self.z11)
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let d = self.det();
        let scale = self.max_abs().powi(2);
        if d.norm() <= 1e-300_f64.max(f64::EPSILON * 1e-3 * scale) || !d.is_finite() {
            return Err(MatrixError::Singular);
        }
        Ok(self.adjugate().scale(ONE / d))
    }

    /// Max-abs entry norm.
    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.to_array().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|z| z.is_finite())
    }

    pub fn symmetry_defect(&self) -> f64 {
        (self.z12 - self.z21).norm()
    }

    pub fn skew_defect(&self) -> f64 {
        (*self + self.transpose()).max_abs()
    }

    pub fn hermitian_defect(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    /// `‖a·a* - I‖∞`.
    pub fn unitarity_defect(&self) -> f64 {
        (*self * self.adjoint() - CMatrix2::identity()).max_abs()
    }

    /// Operator norm `σ1`.
    pub fn op_norm(&self) -> f64 {
        svd2(self).0
    }

    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [self.z11 * v[0] + self.z12 * v[1], self.z21 * v[0] + self.z22 * v[1]]
    }
}

impl fmt::Debug for CMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.z11, self.z12, self.z21, self.z22)
    }
}

impl Serialize for CMatrix2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.to_array().iter().map(|&z| Pair::from(z)))
    }
}

impl<'de> Deserialize<'de> for CMatrix2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = <[Pair; 4]>::deserialize(d)?;
        Ok(CMatrix2::from_array(pairs.map(Complex64::from)))
    }
}

impl Add for CMatrix2 {
    type Output = CMatrix2;
    fn add(self, r: CMatrix2) -> CMatrix2 {
        CMatrix2::new(self.z11 + r.z11, self.z12 + r.z12, self.z21 + r.z21, self.z22 + r.z22)
    }
}

impl Sub for CMatrix2 {
    type Output = CMatrix2;
    fn sub(self, r: CMatrix2) -> CMatrix2 {
        CMatrix2::new(self.z11 - r.z11, self.z12 - r.z12, self.z21 - r.z21, self.z22 - r.z22)
    }
}

impl Neg for CMatrix2 {
    type Output = CMatrix2;
    fn neg(self) -> CMatrix2 {
        self.scale(-ONE)
    }
}

impl Mul for CMatrix2 {
    type Output = CMatrix2;
    fn mul(self, r: CMatrix2) -> CMatrix2 {
        CMatrix2::new(
            self.z11 * r.z11 + self.z12 * r.z21,
            self.z11 * r.z12 + self.z12 * r.z22,
            self.z21 * r.z11 + self.z22 * r.z21,
            self.z21 * r.z12 + self.z22 * r.z22,
        )
    }
}

/// Eigenvalues `(μ1 ≥ μ2)` of a Hermitian 2×2 matrix given its real diagonal
/// and off-diagonal entry.
fn hermitian_eigenvalues(h11: f64, h22: f64, h12: Complex64) -> (f64, f64) {
    let mean = 0.5 * (h11 + h22);
    let half_gap = (0.5 * (h11 - h22)).hypot(h12.norm());
    (mean + half_gap, mean - half_gap)
}

/// Singular values `(σ1, σ2)`, `σ1 ≥ σ2 ≥ 0`.
///
/// `σ1²` is the top eigenvalue of `a·a*`; `σ2` comes from `σ1σ2 = |det a|`,
/// which stays accurate when `a` is nearly singular.
pub fn svd2(a: &CMatrix2) -> (f64, f64) {
    let r1 = a.z11.norm_sqr() + a.z12.norm_sqr();
    let r2 = a.z21.norm_sqr() + a.z22.norm_sqr();
    let off = a.z11 * a.z21.conj() + a.z12 * a.z22.conj();
    let (top, _) = hermitian_eigenvalues(r1, r2, off);
    let s1 = top.max(0.0).sqrt();
    if s1 == 0.0 {
        return (0.0, 0.0);
    }
    let s2 = (a.det().norm() / s1).min(s1);
    (s1, s2)
}

/// Takagi factorisation `a = U diag(σ1, σ2) Uᵗ` of a complex symmetric `a`,
/// with `U` unitary and `σ1 ≥ σ2 ≥ 0`.
///
/// Writing `a = R + iJ`, a column `u = x + iy` of `U` with `a ū = σ u` is an
/// eigenvector `(x, y)` of the real symmetric matrix `[[R, J], [J, -R]]`
/// whose spectrum is `±σ1, ±σ2`. Eigenvectors for the two largest eigenvalues
/// are orthogonal as complex vectors, including when `σ1 = σ2`.
pub fn takagi2(a: &CMatrix2) -> Result<(CMatrix2, f64, f64), MatrixError> {
    let defect = a.symmetry_defect();
    if defect > STRUCTURE_TOL * a.max_abs().max(1.0) {
        return Err(MatrixError::NotSymmetric(defect));
    }
    if a.max_abs() == 0.0 {
        return Ok((CMatrix2::identity(), 0.0, 0.0));
    }
    let off = 0.5 * (a.z12 + a.z21);
    let (r, j) = (
        [[a.z11.re, off.re], [off.re, a.z22.re]],
        [[a.z11.im, off.im], [off.im, a.z22.im]],
    );
    #[rustfmt::skip]
    let big = Matrix4::new(
        r[0][0], r[0][1], j[0][0], j[0][1],
        r[1][0], r[1][1], j[1][0], j[1][1],
        j[0][0], j[0][1], -r[0][0], -r[0][1],
        j[1][0], j[1][1], -r[1][0], -r[1][1],
    );
    let eig = SymmetricEigen::new(big);
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&p, &q| eig.eigenvalues[q].total_cmp(&eig.eigenvalues[p]));
    let column = |k: usize| {
        let v = eig.eigenvectors.column(k);
        let u = [Complex64::new(v[0], v[2]), Complex64::new(v[1], v[3])];
        let n = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
        [u[0] / n, u[1] / n]
    };
    let u1 = column(order[0]);
    let mut u2 = column(order[1]);
    // For a zero σ2 the eigenvector may come from the ±0 pair; re-orthogonalise.
    let overlap = u1[0].conj() * u2[0] + u1[1].conj() * u2[1];
    if overlap.norm() > 1e-8 {
        u2 = [-u1[1].conj(), u1[0].conj()];
    }
    let mut unitary = CMatrix2::new(u1[0], u2[0], u1[1], u2[1]);
    let s1 = eig.eigenvalues[order[0]].max(0.0);
    let mut s2 = eig.eigenvalues[order[1]].max(0.0);
    if overlap.norm() > 1e-8 {
        // Rephase the replacement column so that u2ᵀ a u2 is real nonnegative.
        let u2c = [unitary.z12, unitary.z22];
        let q = u2c[0].conj() * (a.z11 * u2c[0].conj() + off * u2c[1].conj())
            + u2c[1].conj() * (off * u2c[0].conj() + a.z22 * u2c[1].conj());
        if q.norm() > 0.0 {
            let phase = (q / q.norm()).sqrt();
            unitary.z12 *= phase;
            unitary.z22 *= phase;
        }
        s2 = q.norm().min(s1);
    }
    Ok((unitary, s1, s2.min(s1)))
}

/// Square root of a Hermitian positive semidefinite matrix via
/// `√H = (H + √det H · I) / √(tr H + 2√det H)`.
pub fn psd_sqrt2(h: &CMatrix2) -> Result<CMatrix2, MatrixError> {
    let defect = h.hermitian_defect();
    if defect > STRUCTURE_TOL * h.max_abs().max(1.0) {
        return Err(MatrixError::NotHermitian(defect));
    }
    let off = 0.5 * (h.z12 + h.z21.conj());
    let (h11, h22) = (h.z11.re, h.z22.re);
    let (mu1, mu2) = hermitian_eigenvalues(h11, h22, off);
    if mu2 < -EIGEN_CLAMP * mu1.abs().max(1.0) {
        return Err(MatrixError::NegativeEigenvalue(mu2));
    }
    let (mu1, mu2) = (mu1.max(0.0), mu2.max(0.0));
    let root_det = (mu1 * mu2).sqrt();
    let denom = (mu1 + mu2 + 2.0 * root_det).sqrt();
    if denom == 0.0 {
        return Ok(CMatrix2::zero());
    }
    let herm = CMatrix2::new(
        Complex64::new(h11, 0.0),
        off,
        off.conj(),
        Complex64::new(h22, 0.0),
    );
    Ok((herm + CMatrix2::scalar(Complex64::new(root_det, 0.0))).scale(Complex64::new(1.0 / denom, 0.0)))
}

/// Column swap `ᵗa ↦ [[a12, a11], [a22, a21]]`.
pub fn tau_swap(a: &CMatrix2) -> CMatrix2 {
    CMatrix2::new(a.z12, a.z11, a.z22, a.z21)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn svd_examples() {
        assert_eq!(svd2(&CMatrix2::identity()), (1.0, 1.0));
        let (s1, s2) = svd2(&CMatrix2::from_real([[0.0, 1.0], [0.5, 0.0]]));
        assert!((s1 - 1.0).abs() < 1e-15 && (s2 - 0.5).abs() < 1e-15);
        assert_eq!(svd2(&CMatrix2::zero()), (0.0, 0.0));
    }

    #[test]
    fn takagi_examples() {
        let (u, s1, s2) = takagi2(&CMatrix2::diag(c(0.7, 0.0), c(0.3, 0.0))).unwrap();
        assert!((s1 - 0.7).abs() < 1e-14 && (s2 - 0.3).abs() < 1e-14);
        assert!(u.unitarity_defect() < 1e-14);

        let a = CMatrix2::from_real([[0.0, 0.5], [0.5, 0.0]]);
        let (u, s1, s2) = takagi2(&a).unwrap();
        assert!((s1 - 0.5).abs() < 1e-14 && (s2 - 0.5).abs() < 1e-14);
        let back = u * CMatrix2::diag(c(s1, 0.0), c(s2, 0.0)) * u.transpose();
        assert!((back - a).max_abs() < 1e-12);

        let (u, s1, s2) = takagi2(&CMatrix2::zero()).unwrap();
        assert_eq!((u, s1, s2), (CMatrix2::identity(), 0.0, 0.0));
    }

    #[test]
    fn takagi_rank_one() {
        let v = [c(0.3, 0.4), c(-0.2, 0.1)];
        let a = CMatrix2::new(v[0] * v[0], v[0] * v[1], v[1] * v[0], v[1] * v[1]);
        let (u, s1, s2) = takagi2(&a).unwrap();
        assert!(s2 < 1e-14);
        let back = u * CMatrix2::diag(c(s1, 0.0), c(s2, 0.0)) * u.transpose();
        assert!((back - a).max_abs() < 1e-14);
        assert!(u.unitarity_defect() < 1e-12);
    }

    #[test]
    fn takagi_rejects_nonsymmetric() {
        let a = CMatrix2::from_real([[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(takagi2(&a), Err(MatrixError::NotSymmetric(_))));
    }

    #[test]
    fn psd_sqrt_examples() {
        assert!((psd_sqrt2(&CMatrix2::identity()).unwrap() - CMatrix2::identity()).max_abs() < 1e-15);
        let s = psd_sqrt2(&CMatrix2::diag(c(4.0, 0.0), c(9.0, 0.0))).unwrap();
        assert!((s - CMatrix2::diag(c(2.0, 0.0), c(3.0, 0.0))).max_abs() < 1e-15);
        let h = CMatrix2::from_real([[2.0, 1.0], [1.0, 2.0]]);
        let s = psd_sqrt2(&h).unwrap();
        assert!((s * s - h).max_abs() < 1e-12);
    }

    #[test]
    fn psd_sqrt_errors() {
        let not_herm = CMatrix2::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(1.0, 0.0));
        assert!(matches!(psd_sqrt2(&not_herm), Err(MatrixError::NotHermitian(_))));
        let neg = CMatrix2::diag(c(1.0, 0.0), c(-0.5, 0.0));
        assert!(matches!(psd_sqrt2(&neg), Err(MatrixError::NegativeEigenvalue(_))));
        let tiny_neg = CMatrix2::diag(c(1.0, 0.0), c(-1e-14, 0.0));
        assert!(psd_sqrt2(&tiny_neg).is_ok());
    }

    #[test]
    fn tau_examples() {
        let a = CMatrix2::from_real([[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(tau_swap(&a), CMatrix2::from_real([[2.0, 1.0], [4.0, 3.0]]));
        let d = CMatrix2::diag(c(0.3, 0.1), c(-0.2, 0.0));
        assert_eq!(tau_swap(&d), CMatrix2::new(ZERO, d.z11, d.z22, ZERO));
        assert_eq!(tau_swap(&tau_swap(&a)), a);
        assert_eq!(tau_swap(&a).det(), -a.det());
    }

    #[test]
    fn json_row_major_pairs() {
        let a = CMatrix2::new(c(1.0, 0.0), c(0.0, 2.0), c(3.0, 0.0), c(0.0, -4.0));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[1.0,0.0],[0.0,2.0],[3.0,0.0],[0.0,-4.0]]");
        assert_eq!(serde_json::from_str::<CMatrix2>(&s).unwrap(), a);
    }
}
