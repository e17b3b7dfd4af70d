//! Complex polynomials, rational maps, Möbius maps and finite Blaschke
//! products, together with the Poincaré distance of the unit disc.
//!
//! Every analytic disc the library manipulates exactly is a vector of
//! [`RationalMap`]s; the degree of a rational map is always measured after
//! cancelling common roots of numerator and denominator.

mod blaschke;
mod map;
mod poly;

pub use blaschke::{BlaschkeProduct, DiscAutomorphism, MoebiusMap};
pub use map::{RationalMap, PAIRING_TOL};
pub use poly::{Poly, DEFAULT_CLUSTER_TOL};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RationalError {
    #[error("polynomial is constant and has no roots")]
    ConstantPolynomial,
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("rational map has a pole in the closed unit disc at {0}")]
    PoleOnClosedDisc(Complex64),
    #[error("point {0} is not in the open unit disc")]
    PointOnBoundary(Complex64),
    #[error("constant {0} is not unimodular")]
    NotUnimodular(Complex64),
    #[error("Blaschke zero {0} is not in the open unit disc")]
    ZeroOutsideDisc(Complex64),
}

/// `e^{iθ}` for `k` equispaced angles `θ = 2πj/k`.
pub fn circle_points(k: usize) -> impl Iterator<Item = Complex64> {
    (0..k).map(move |j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / k as f64))
}

/// Poincaré distance `½ log((1+δ)/(1-δ))`, `δ = |(a-b)/(1-āb)|`.
///
/// Evaluated through `|1-āb|² = |a-b|² + (1-|a|²)(1-|b|²)`, which keeps the
/// result symmetric in its arguments and accurate near the circle.
pub fn poincare_distance(a: Complex64, b: Complex64) -> Result<f64, RationalError> {
    for z in [a, b] {
        if !(z.norm() < 1.0) {
            return Err(RationalError::PointOnBoundary(z));
        }
    }
    let gap = |z: Complex64| (1.0 - z.norm()) * (1.0 + z.norm());
    let n2 = (a - b).norm_sqr();
    let p = gap(a) * gap(b);
    let delta = (n2 / (n2 + p)).sqrt();
    Ok(delta.ln_1p() + 0.5 * (n2 / p).ln_1p())
}
