//! Membership, boundary and Minkowski-gauge predicates for the disc, polydisc,
//! ball, the three 2×2 Cartan domains, the symmetrised bidisc `𝔾₂` and the
//! tetrablock `𝔼`, together with the maps `π`, `ι`, `p` between them.
//!
//! Points are flat coordinate slices; Cartan points are 2×2 matrices
//! flattened row-major.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::matrix2::{svd2, CMatrix2};

/// Tolerance of closed membership and of the Cartan structure constraints.
pub const CLOSED_TOL: f64 = 1e-12;
/// Default tolerance of boundary predicates.
pub const BOUNDARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("point has {got} coordinates, {domain} needs {expected}")]
    DimensionMismatch { domain: String, expected: usize, got: usize },
    #[error("operation not available for {0}")]
    UnsupportedDomain(DomainId),
    #[error("matrix is not on the boundary of R_I (σ1 = {0})")]
    NotOnCartanBoundary(f64),
    #[error("unknown domain tag {0:?}")]
    UnknownTag(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainId {
    Disc,
    Polydisc(usize),
    Ball(usize),
    CartanI,
    CartanII,
    CartanIII,
    SymBidisc,
    Tetrablock,
}

impl DomainId {
    /// Number of complex coordinates of a point.
    pub fn ambient_dim(&self) -> usize {
        match *self {
            DomainId::Disc => 1,
            DomainId::Polydisc(n) | DomainId::Ball(n) => n,
            DomainId::CartanI | DomainId::CartanII | DomainId::CartanIII => 4,
            DomainId::SymBidisc => 2,
            DomainId::Tetrablock => 3,
        }
    }

    pub fn is_cartan(&self) -> bool {
        matches!(self, DomainId::CartanI | DomainId::CartanII | DomainId::CartanIII)
    }

    /// Tags whose Minkowski functional is offered.
    pub fn is_balanced(&self) -> bool {
        !matches!(self, DomainId::SymBidisc | DomainId::Tetrablock)
    }

    pub fn check_dim(&self, x: &[Complex64]) -> Result<(), DomainError> {
        if x.len() == self.ambient_dim() {
            Ok(())
        } else {
            Err(DomainError::DimensionMismatch {
                domain: self.to_string(),
                expected: self.ambient_dim(),
                got: x.len(),
            })
        }
    }
}

impl fmt::Display for DomainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainId::Disc => write!(f, "Disc"),
            DomainId::Polydisc(n) => write!(f, "Polydisc({n})"),
            DomainId::Ball(n) => write!(f, "Ball({n})"),
            DomainId::CartanI => write!(f, "CartanI"),
            DomainId::CartanII => write!(f, "CartanII"),
            DomainId::CartanIII => write!(f, "CartanIII"),
            DomainId::SymBidisc => write!(f, "SymBidisc"),
            DomainId::Tetrablock => write!(f, "Tetrablock"),
        }
    }
}

/// Accepts `Polydisc(2)`, `polydisc:2`, `ball2` style spellings, case-insensitively.
impl FromStr for DomainId {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || DomainError::UnknownTag(s.to_string());
        let lower = s.trim().to_ascii_lowercase();
        let split = lower.find(|c: char| c.is_ascii_digit() || c == '(' || c == ':');
        let (head, tail) = match split {
            Some(i) => lower.split_at(i),
            None => (lower.as_str(), ""),
        };
        let arg = tail.trim_matches(|c| c == '(' || c == ')' || c == ':');
        let dim = || -> Result<usize, DomainError> {
            match arg.parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(unknown()),
            }
        };
        let id = match head {
            "disc" | "d" if arg.is_empty() => DomainId::Disc,
            "polydisc" => DomainId::Polydisc(dim()?),
            "ball" => DomainId::Ball(dim()?),
            "cartani" | "r_i" | "ri" if arg.is_empty() => DomainId::CartanI,
            "cartanii" | "r_ii" | "rii" if arg.is_empty() => DomainId::CartanII,
            "cartaniii" | "r_iii" | "riii" if arg.is_empty() => DomainId::CartanIII,
            "symbidisc" | "g2" if arg.is_empty() => DomainId::SymBidisc,
            "g" if arg == "2" => DomainId::SymBidisc,
            "tetrablock" | "e" if arg.is_empty() => DomainId::Tetrablock,
            _ => return Err(unknown()),
        };
        Ok(id)
    }
}

impl Serialize for DomainId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DomainId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Open,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Royal {
    Sigma,
    T,
}

pub fn matrix_from_point(x: &[Complex64]) -> CMatrix2 {
    CMatrix2::new(x[0], x[1], x[2], x[3])
}

pub fn point_from_matrix(m: &CMatrix2) -> Vec<Complex64> {
    m.to_array().to_vec()
}

fn bidisc_defect(s: Complex64, p: Complex64) -> f64 {
    (s - s.conj() * p).norm() + p.norm_sqr()
}

fn tetrablock_defect(x: &[Complex64]) -> f64 {
    (x[0] - x[1].conj() * x[2]).norm() + (x[1] - x[0].conj() * x[2]).norm() + x[2].norm_sqr()
}

/// The quantity whose comparison with 1 decides membership: `max|z_i|`,
/// the Euclidean norm, `σ1`, or the defining defect of `𝔾₂` / `𝔼`.
///
/// Cartan structure constraints are not part of the defect.
pub fn defect(d: DomainId, x: &[Complex64]) -> Result<f64, DomainError> {
    d.check_dim(x)?;
    Ok(match d {
        DomainId::Disc | DomainId::Polydisc(_) => x.iter().map(|z| z.norm()).fold(0.0, f64::max),
        DomainId::Ball(_) => x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        DomainId::CartanI | DomainId::CartanII | DomainId::CartanIII => {
            svd2(&matrix_from_point(x)).0
        }
        DomainId::SymBidisc => bidisc_defect(x[0], x[1]),
        DomainId::Tetrablock => tetrablock_defect(x),
    })
}

/// Symmetry (R_II) or skew-symmetry (R_III) defect; zero for other tags.
pub fn structure_defect(d: DomainId, x: &[Complex64]) -> Result<f64, DomainError> {
    d.check_dim(x)?;
    Ok(match d {
        DomainId::CartanII => matrix_from_point(x).symmetry_defect(),
        DomainId::CartanIII => matrix_from_point(x).skew_defect(),
        _ => 0.0,
    })
}

pub fn contains(d: DomainId, x: &[Complex64], mode: Mode) -> Result<bool, DomainError> {
    let value = defect(d, x)?;
    if !x.iter().all(|z| z.is_finite()) || structure_defect(d, x)? > CLOSED_TOL {
        return Ok(false);
    }
    Ok(match mode {
        Mode::Open => value < 1.0,
        Mode::Closed => {
            let extra = match d {
                DomainId::SymBidisc => x[0].norm() <= 2.0 + CLOSED_TOL,
                DomainId::Tetrablock => {
                    x[0].norm() <= 1.0 + CLOSED_TOL && x[1].norm() <= 1.0 + CLOSED_TOL
                }
                _ => true,
            };
            extra && value <= 1.0 + CLOSED_TOL
        }
    })
}

/// Minkowski functional by bisection on the ray through `x`.
///
/// Points violating the R_II / R_III structure constraint never enter the
/// domain along the ray and get `+∞`.
pub fn minkowski(d: DomainId, x: &[Complex64], tol: f64) -> Result<f64, DomainError> {
    d.check_dim(x)?;
    if !d.is_balanced() {
        return Err(DomainError::UnsupportedDomain(d));
    }
    if x.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Ok(0.0);
    }
    if structure_defect(d, x)? > CLOSED_TOL {
        return Ok(f64::INFINITY);
    }
    let inside = |t: f64| -> bool {
        let y: Vec<Complex64> = x.iter().map(|z| z / t).collect();
        contains(d, &y, Mode::Open).unwrap_or(false)
    };
    let mut hi = 1.0;
    while !inside(hi) {
        hi *= 2.0;
    }
    let mut lo = hi / 2.0;
    while inside(lo) {
        if lo < f64::MIN_POSITIVE {
            return Ok(0.0);
        }
        hi = lo;
        lo /= 2.0;
    }
    let tol = tol.max(f64::EPSILON * hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `π(z) = (z11, z22, det z)`.
pub fn pi_map(z: &CMatrix2) -> [Complex64; 3] {
    [z.z11, z.z22, z.det()]
}

/// `ι(s, p) = (s/2, s/2, p)`.
pub fn iota(s: Complex64, p: Complex64) -> [Complex64; 3] {
    [s / 2.0, s / 2.0, p]
}

/// `p(x) = (x1 + x2, x3)`.
pub fn p_map(x: &[Complex64; 3]) -> (Complex64, Complex64) {
    (x[0] + x[1], x[2])
}

/// `|s² − 4p|` on `𝔾₂` points, `|x1·x2 − x3|` on tetrablock points.
pub fn royal_defect(which: Royal, x: &[Complex64]) -> Result<f64, DomainError> {
    match which {
        Royal::Sigma => {
            DomainId::SymBidisc.check_dim(x)?;
            Ok((x[0] * x[0] - 4.0 * x[1]).norm())
        }
        Royal::T => {
            DomainId::Tetrablock.check_dim(x)?;
            Ok((x[0] * x[1] - x[2]).norm())
        }
    }
}

/// For `x ∈ ∂R_I`: whether `π(x) ∈ ∂𝔼`, decided by `|x12| = |x21|`.
pub fn tetrablock_boundary_test(x: &CMatrix2, tol: f64) -> Result<bool, DomainError> {
    let s1 = svd2(x).0;
    if (s1 - 1.0).abs() > BOUNDARY_TOL {
        return Err(DomainError::NotOnCartanBoundary(s1));
    }
    Ok((x.z12.norm() - x.z21.norm()).abs() <= tol)
}

/// A unitary `u` with `π(u) = x`, built by taking `u12 = √(1 − |x1|²)` and
/// solving `u21` from `x3 = x1·x2 − u12·u21`. Unitarity is left to the caller.
pub fn tetrablock_shilov_witness(x: &[Complex64; 3]) -> CMatrix2 {
    let r = (1.0 - x[0].norm_sqr()).max(0.0).sqrt();
    let zero = Complex64::new(0.0, 0.0);
    let u21 = if r > 1e-8 { (x[0] * x[1] - x[2]) / r } else { zero };
    CMatrix2::new(x[0], Complex64::new(r, 0.0), u21, x[1])
}

pub fn shilov_test(d: DomainId, x: &[Complex64], tol: f64) -> Result<bool, DomainError> {
    d.check_dim(x)?;
    match d {
        DomainId::SymBidisc => {
            let (s, p) = (x[0], x[1]);
            Ok((p.norm() - 1.0).abs() <= tol
                && (s - s.conj() * p).norm() <= tol
                && s.norm() <= 2.0 + tol)
        }
        DomainId::CartanI => Ok(matrix_from_point(x).unitarity_defect() <= tol),
        DomainId::Tetrablock => {
            let x3 = [x[0], x[1], x[2]];
            let u = tetrablock_shilov_witness(&x3);
            Ok(u.unitarity_defect() <= tol && (u.det() - x[2]).norm() <= tol)
        }
        other => Err(DomainError::UnsupportedDomain(other)),
    }
}
