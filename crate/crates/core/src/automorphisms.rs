//! Automorphisms of the Cartan domains (`Φ_a`, `L_U`), the induced
//! automorphisms of the tetrablock, and Möbius-induced automorphisms of `𝔾₂`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cjson;
use crate::matrix2::{psd_sqrt2, svd2, CMatrix2, MatrixError};
use crate::rational::DiscAutomorphism;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Unitarity tolerance of `L_U` parameters.
pub const UNITARY_TOL: f64 = 1e-12;
/// Smallest admissible denominator magnitude in the tetrablock formula.
pub const DENOMINATOR_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AutError {
    #[error("automorphism parameter has σ1 = {0} ≥ 1")]
    ParameterNotContractive(f64),
    #[error("L_U parameter is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("1 - a*x is not invertible")]
    SingularResolvent,
    #[error("denominator {0:e} vanishes")]
    DenominatorVanishes(f64),
    #[error("parameter {0} must lie in the open unit disc")]
    ParameterOutsideDisc(Complex64),
    #[error("torus parameter {0} is not unimodular")]
    NotUnimodular(Complex64),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The factors `S1 = (1 − aa*)^{-1/2}` and `S2 = (1 − a*a)^{1/2}` of `Φ_a`.
pub fn phi_factors(a: &CMatrix2) -> Result<(CMatrix2, CMatrix2), AutError> {
    let s1 = svd2(a).0;
    if !(s1 < 1.0) {
        return Err(AutError::ParameterNotContractive(s1));
    }
    let id = CMatrix2::identity();
    let left = psd_sqrt2(&(id - *a * a.adjoint()))?.inverse()?;
    let right = psd_sqrt2(&(id - a.adjoint() * *a))?;
    Ok((left, right))
}

/// `Φ_a(x) = (1 − aa*)^{-1/2} (x − a)(1 − a*x)^{-1} (1 − a*a)^{1/2}`.
pub fn phi_a_apply(a: &CMatrix2, x: &CMatrix2) -> Result<CMatrix2, AutError> {
    let (left, right) = phi_factors(a)?;
    let resolvent = (CMatrix2::identity() - a.adjoint() * *x)
        .inverse()
        .map_err(|_| AutError::SingularResolvent)?;
    Ok(left * (*x - *a) * resolvent * right)
}

/// `L_U(x) = U x Uᵗ`.
pub fn lu_apply(u: &CMatrix2, x: &CMatrix2) -> CMatrix2 {
    *u * *x * u.transpose()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutStep {
    Phi(CMatrix2),
    Lu(CMatrix2),
}

impl AutStep {
    pub fn validate(&self) -> Result<(), AutError> {
        match self {
            AutStep::Phi(a) => {
                let s1 = svd2(a).0;
                if s1 < 1.0 {
                    Ok(())
                } else {
                    Err(AutError::ParameterNotContractive(s1))
                }
            }
            AutStep::Lu(u) => {
                let d = u.unitarity_defect();
                if d <= UNITARY_TOL {
                    Ok(())
                } else {
                    Err(AutError::NotUnitary(d))
                }
            }
        }
    }

    pub fn apply(&self, x: &CMatrix2) -> Result<CMatrix2, AutError> {
        match self {
            AutStep::Phi(a) => phi_a_apply(a, x),
            AutStep::Lu(u) => Ok(lu_apply(u, x)),
        }
    }
}

/// A composition of `Φ_a` and `L_U` steps, applied in list order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawChain")]
pub struct AutR2 {
    steps: Vec<AutStep>,
}

#[derive(Deserialize)]
struct RawChain {
    steps: Vec<AutStep>,
}

impl TryFrom<RawChain> for AutR2 {
    type Error = AutError;
    fn try_from(raw: RawChain) -> Result<Self, AutError> {
        AutR2::new(raw.steps)
    }
}

impl AutR2 {
    pub fn new(steps: Vec<AutStep>) -> Result<Self, AutError> {
        for s in &steps {
            s.validate()?;
        }
        Ok(AutR2 { steps })
    }

    pub fn identity() -> Self {
        AutR2::default()
    }

    pub fn steps(&self) -> &[AutStep] {
        &self.steps
    }

    /// Whether every `Φ_a` parameter is symmetric, so the chain maps R_II to itself.
    pub fn preserves_r2(&self) -> bool {
        self.steps.iter().all(|s| match s {
            AutStep::Phi(a) => a.symmetry_defect() <= UNITARY_TOL,
            AutStep::Lu(_) => true,
        })
    }

    pub fn apply(&self, x: &CMatrix2) -> Result<CMatrix2, AutError> {
        self.steps.iter().try_fold(*x, |acc, s| s.apply(&acc))
    }

    /// The chain undoing this one: `Φ_{−a}` and `L_{U*}` in reverse order.
    pub fn inverse(&self) -> AutR2 {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| match s {
                AutStep::Phi(a) => AutStep::Phi(-*a),
                AutStep::Lu(u) => AutStep::Lu(u.adjoint()),
            })
            .collect();
        AutR2 { steps }
    }
}

/// `(x1, x2, x3) ↦` the automorphism of `𝔼` induced by `Φ_{diag(a, b)}`,
/// followed by the torus action `(ωx1, ηx2, ωηx3)` and optionally the swap
/// of the first two coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAutE")]
pub struct AutE {
    #[serde(with = "cjson::complex")]
    a: Complex64,
    #[serde(with = "cjson::complex")]
    b: Complex64,
    #[serde(with = "torus_pair")]
    torus: (Complex64, Complex64),
    swap: bool,
}

mod torus_pair {
    use super::*;
    use crate::cjson::Pair;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &(Complex64, Complex64), s: S) -> Result<S::Ok, S::Error> {
        [Pair::from(t.0), Pair::from(t.1)].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(Complex64, Complex64), D::Error> {
        let [w, e] = <[Pair; 2]>::deserialize(d)?;
        Ok((w.into(), e.into()))
    }
}

#[derive(Deserialize)]
struct RawAutE {
    #[serde(with = "cjson::complex", default)]
    a: Complex64,
    #[serde(with = "cjson::complex", default)]
    b: Complex64,
    #[serde(with = "torus_pair", default = "trivial_torus")]
    torus: (Complex64, Complex64),
    #[serde(default)]
    swap: bool,
}

fn trivial_torus() -> (Complex64, Complex64) {
    (ONE, ONE)
}

impl TryFrom<RawAutE> for AutE {
    type Error = AutError;
    fn try_from(r: RawAutE) -> Result<Self, AutError> {
        AutE::new(r.a, r.b, r.torus, r.swap)
    }
}

impl AutE {
    pub fn new(
        a: Complex64,
        b: Complex64,
        torus: (Complex64, Complex64),
        swap: bool,
    ) -> Result<Self, AutError> {
        for z in [a, b] {
            if !(z.norm() < 1.0) {
                return Err(AutError::ParameterOutsideDisc(z));
            }
        }
        for w in [torus.0, torus.1] {
            if !w.is_finite() || (w.norm() - 1.0).abs() > UNITARY_TOL {
                return Err(AutError::NotUnimodular(w));
            }
        }
        Ok(AutE { a, b, torus, swap })
    }

    /// Pure `Φ_{diag(a, b)}` part.
    pub fn diagonal(a: Complex64, b: Complex64) -> Result<Self, AutError> {
        AutE::new(a, b, trivial_torus(), false)
    }

    pub fn identity() -> Self {
        AutE { a: Complex64::new(0.0, 0.0), b: Complex64::new(0.0, 0.0), torus: trivial_torus(), swap: false }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn torus(&self) -> (Complex64, Complex64) {
        self.torus
    }

    pub fn swap(&self) -> bool {
        self.swap
    }
}

pub fn aut_e_apply(psi: &AutE, x: &[Complex64; 3]) -> Result<[Complex64; 3], AutError> {
    let (a, b) = (psi.a, psi.b);
    let (ac, bc) = (a.conj(), b.conj());
    let [x1, x2, x3] = *x;
    let den = ONE - ac * x1 - bc * x2 + ac * bc * x3;
    if !(den.norm() >= DENOMINATOR_FLOOR) {
        return Err(AutError::DenominatorVanishes(den.norm()));
    }
    let y1 = (x1 - a - bc * x3 + a * bc * x2) / den;
    let y2 = (x2 - b - ac * x3 + ac * b * x1) / den;
    let y3 = (x3 - a * x2 - b * x1 + a * b) / den;
    let (w, e) = psi.torus;
    let (y1, y2, y3) = (w * y1, e * y2, w * e * y3);
    Ok(if psi.swap { [y2, y1, y3] } else { [y1, y2, y3] })
}

/// The automorphism of `𝔾₂` induced by a disc automorphism
/// `ν(λ) = ω(λ − α)/(1 − ᾱλ)`, evaluated on the symmetric functions:
/// with `D = 1 − ᾱs + ᾱ²p`,
/// `s' = ω((1 + |α|²)s − 2ᾱp − 2α)/D` and `p' = ω²(p − αs + α²)/D`.
pub fn aut_g2_apply(nu: &DiscAutomorphism, s: Complex64, p: Complex64) -> (Complex64, Complex64) {
    let (w, al) = (nu.omega(), nu.alpha());
    let ac = al.conj();
    let den = ONE - ac * s + ac * ac * p;
    let s2 = w * ((1.0 + al.norm_sqr()) * s - 2.0 * ac * p - 2.0 * al) / den;
    let p2 = w * w * (p - al * s + al * al) / den;
    (s2, p2)
}
