//! Analytic discs with rational components.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domains::{self, matrix_from_point, DomainId, Mode};
use crate::matrix2::CMatrix2;
use crate::rational::{circle_points, RationalError, RationalMap};

/// Interior sample count of [`Disc::check_membership`].
pub const MEMBERSHIP_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiscError {
    #[error("{target} needs {expected} components, got {got}")]
    ComponentCount { target: DomainId, expected: usize, got: usize },
    #[error(transparent)]
    Rational(#[from] RationalError),
}

/// Provenance attached by constructors.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DiscMeta {
    pub family: String,
    /// Set for outputs of classification theorems: necessary normal forms,
    /// not certified extremals.
    #[serde(default)]
    pub candidate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `f: 𝔻 → target`, one rational map per ambient coordinate (Cartan targets
/// row-major).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDisc")]
pub struct Disc {
    components: Vec<RationalMap>,
    target: DomainId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<DiscMeta>,
}

#[derive(Deserialize)]
struct RawDisc {
    components: Vec<RationalMap>,
    target: DomainId,
    #[serde(default)]
    meta: Option<DiscMeta>,
}

impl TryFrom<RawDisc> for Disc {
    type Error = DiscError;
    fn try_from(raw: RawDisc) -> Result<Self, DiscError> {
        let mut d = Disc::new(raw.components, raw.target)?;
        d.meta = raw.meta;
        Ok(d)
    }
}

impl Disc {
    /// Checks the component count and that every component is analytic on
    /// the closed disc.
    pub fn new(components: Vec<RationalMap>, target: DomainId) -> Result<Self, DiscError> {
        if components.len() != target.ambient_dim() {
            return Err(DiscError::ComponentCount {
                target,
                expected: target.ambient_dim(),
                got: components.len(),
            });
        }
        for c in &components {
            c.check_analytic_on_closed_disc()?;
        }
        Ok(Disc { components, target, meta: None })
    }

    pub fn from_matrix(entries: [RationalMap; 4], target: DomainId) -> Result<Self, DiscError> {
        Disc::new(entries.to_vec(), target)
    }

    pub fn with_meta(mut self, meta: DiscMeta) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn components(&self) -> &[RationalMap] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &RationalMap {
        &self.components[i]
    }

    pub fn target(&self) -> DomainId {
        self.target
    }

    pub fn meta(&self) -> Option<&DiscMeta> {
        self.meta.as_ref()
    }

    /// Largest component degree.
    pub fn degree(&self) -> usize {
        self.components.iter().map(RationalMap::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    /// Value as a matrix; meaningful for Cartan targets.
    pub fn eval_matrix(&self, z: Complex64) -> CMatrix2 {
        matrix_from_point(&self.eval(z))
    }

    /// `f ∘ g` for a rational self-map `g` of the disc.
    pub fn precompose(&self, g: &RationalMap) -> Result<Disc, DiscError> {
        let comps = self.components.iter().map(|c| c.compose(g)).collect();
        Disc::new(comps, self.target)
    }

    /// Membership of `f(ρ e^{iθ})` for `MEMBERSHIP_SAMPLES` points spread over
    /// radii `ρ ∈ {0, 0.3, 0.6, 0.9}`.
    pub fn check_membership(&self, mode: Mode) -> bool {
        let per_ring = MEMBERSHIP_SAMPLES / 4;
        [0.0, 0.3, 0.6, 0.9].iter().all(|&r| {
            circle_points(per_ring).all(|z| {
                domains::contains(self.target, &self.eval(z * r), mode).unwrap_or(false)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Poly;

    #[test]
    fn validates_shape_and_poles() {
        let id = RationalMap::identity();
        assert!(Disc::new(vec![id.clone()], DomainId::Disc).is_ok());
        assert!(matches!(
            Disc::new(vec![id.clone()], DomainId::Ball(2)),
            Err(DiscError::ComponentCount { expected: 2, got: 1, .. })
        ));
        let pole = RationalMap::new(Poly::one(), Poly::from_real(&[0.5, -1.0])).unwrap();
        assert!(matches!(
            Disc::new(vec![pole], DomainId::Disc),
            Err(DiscError::Rational(RationalError::PoleOnClosedDisc(_)))
        ));
    }

    #[test]
    fn json_round_trip() {
        let f = Disc::new(
            vec![RationalMap::identity().scale(Complex64::new(0.6, 0.0)), RationalMap::zero()],
            DomainId::Ball(2),
        )
        .unwrap()
        .with_meta(DiscMeta { family: "test".into(), ..Default::default() });
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<Disc>(&s).unwrap(), f);
        assert!(f.check_membership(Mode::Open));
    }
}
