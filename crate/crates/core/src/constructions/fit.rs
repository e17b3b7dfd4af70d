//! Rational fitting of a function sampled near the unit circle.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::rational::{Poly, RationalMap};

use super::ConstructionError;

/// Radius of the sampling circle.
pub const FIT_RADIUS: f64 = 0.95;
/// Cross-validation tolerance, relative to `max(1, |f|)`.
pub const FIT_TOL: f64 = 1e-9;
/// `σ_min / σ_max` below which the linearised system is treated as singular.
const NULL_RATIO: f64 = 1e-10;

/// Smallest-degree `P/Q` with `deg P, deg Q ≤ d` matching `f`, for
/// `d = 0, 1, …, max_degree`.
///
/// For each `d`, the coefficients are the null vector of the linearised
/// system `P(λ_k) − f(λ_k) Q(λ_k) = 0` over `density · (2d + 2)` equispaced
/// points of the circle of radius [`FIT_RADIUS`]. A candidate is accepted when
/// it matches `f` to [`FIT_TOL`] at the same number of rotated points.
pub fn fit_rational(
    f: &dyn Fn(Complex64) -> Complex64,
    max_degree: usize,
    density: usize,
) -> Result<RationalMap, ConstructionError> {
    let mut worst = f64::INFINITY;
    for d in 0..=max_degree {
        let n = (density * (2 * d + 2)).max(8);
        let pts: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(FIT_RADIUS, std::f64::consts::TAU * k as f64 / n as f64))
            .collect();
        let vals: Vec<Complex64> = pts.iter().map(|&z| f(z)).collect();
        let mut a = DMatrix::<Complex64>::zeros(n, 2 * d + 2);
        for (row, (&z, &v)) in pts.iter().zip(&vals).enumerate() {
            let mut zk = Complex64::new(1.0, 0.0);
            for k in 0..=d {
                a[(row, k)] = zk;
                a[(row, d + 1 + k)] = -v * zk;
                zk *= z;
            }
        }
        let svd = a.svd(false, true);
        let sv = &svd.singular_values;
        let (imin, smin) = sv.argmin();
        if smin > NULL_RATIO * sv.max() {
            continue;
        }
        let vt = svd.v_t.as_ref().expect("requested V*");
        let null: Vec<Complex64> = vt.row(imin).iter().map(|c| c.conj()).collect();
        let p = Poly::new(null[..=d].to_vec());
        let q = Poly::new(null[d + 1..].to_vec());
        let Ok(r) = RationalMap::new(p, q) else { continue };
        let err = (0..n)
            .map(|k| {
                let z = Complex64::from_polar(
                    FIT_RADIUS,
                    std::f64::consts::TAU * (k as f64 + 0.5) / n as f64,
                );
                let v = f(z);
                (r.eval(z) - v).norm() / v.norm().max(1.0)
            })
            .fold(0.0, f64::max);
        if err <= FIT_TOL {
            return Ok(r);
        }
        worst = worst.min(err);
    }
    Err(ConstructionError::FitResidualTooLarge(worst))
}
