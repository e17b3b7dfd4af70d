//! Seedable random points of the domains, shared by tests and the CLI check
//! registry.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::TAU;

use crate::matrix2::{svd2, CMatrix2};

/// Uniform point of the disc of radius `radius`.
pub fn disc_point(rng: &mut impl Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

pub fn unimodular(rng: &mut impl Rng) -> Complex64 {
    Complex64::from_polar(1.0, TAU * rng.gen::<f64>())
}

/// Matrix with entries uniform in the disc of radius `scale`.
pub fn matrix(rng: &mut impl Rng, scale: f64) -> CMatrix2 {
    CMatrix2::from_array([(); 4].map(|_| disc_point(rng, scale)))
}

pub fn symmetric_matrix(rng: &mut impl Rng, scale: f64) -> CMatrix2 {
    let off = disc_point(rng, scale);
    CMatrix2::new(disc_point(rng, scale), off, off, disc_point(rng, scale))
}

fn rescale(m: CMatrix2, target: f64) -> CMatrix2 {
    let s1 = svd2(&m).0;
    if s1 == 0.0 {
        m
    } else {
        m.scale(Complex64::new(target / s1, 0.0))
    }
}

/// Point of R_I with `σ1` uniform in `[0, max_norm)`.
pub fn contraction(rng: &mut impl Rng, max_norm: f64) -> CMatrix2 {
    let m = matrix(rng, 1.0);
    rescale(m, max_norm * rng.gen::<f64>())
}

/// Point of R_II with `σ1` uniform in `[0, max_norm)`.
pub fn symmetric_contraction(rng: &mut impl Rng, max_norm: f64) -> CMatrix2 {
    let m = symmetric_matrix(rng, 1.0);
    rescale(m, max_norm * rng.gen::<f64>())
}

/// Point of `∂R_I`: a random matrix normalised to `σ1 = 1`.
pub fn cartan_boundary(rng: &mut impl Rng) -> CMatrix2 {
    rescale(matrix(rng, 1.0), 1.0)
}

/// Haar-distributed 2×2 unitary `e^{iφ}[[a, b], [−b̄, ā]]`.
pub fn unitary(rng: &mut impl Rng) -> CMatrix2 {
    let v = loop {
        let v: [f64; 4] = [(); 4].map(|_| rng.gen_range(-1.0..1.0));
        let n = v.iter().map(|x| x * x).sum::<f64>();
        if n > 1e-6 && n <= 1.0 {
            break v.map(|x| x / n.sqrt());
        }
    };
    let (a, b) = (Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]));
    let phase = unimodular(rng);
    CMatrix2::new(a, b, -b.conj(), a.conj()).scale(phase)
}

/// Symmetric unitary `U·Uᵗ`, a point of the Shilov boundary of R_II.
pub fn symmetric_unitary(rng: &mut impl Rng) -> CMatrix2 {
    let u = unitary(rng);
    u * u.transpose()
}

/// `(z + w, zw)` for `z, w` uniform in the disc of radius `radius`.
pub fn g2_point(rng: &mut impl Rng, radius: f64) -> (Complex64, Complex64) {
    let (z, w) = (disc_point(rng, radius), disc_point(rng, radius));
    (z + w, z * w)
}

/// `m` distinct points of the disc of radius `radius`, pairwise at least
/// `separation` apart.
pub fn nodes(rng: &mut impl Rng, m: usize, radius: f64, separation: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(m);
    while out.len() < m {
        let z = disc_point(rng, radius);
        if out.iter().all(|w| (z - w).norm() >= separation) {
            out.push(z);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_have_advertised_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            assert!(unitary(&mut rng).unitarity_defect() < 1e-14);
            let s = symmetric_unitary(&mut rng);
            assert!(s.unitarity_defect() < 1e-14 && s.symmetry_defect() < 1e-15);
            assert!(svd2(&symmetric_contraction(&mut rng, 0.9)).0 < 0.9);
            assert!((svd2(&cartan_boundary(&mut rng)).0 - 1.0).abs() < 1e-14);
            assert!(disc_point(&mut rng, 0.5).norm() < 0.5);
        }
        let n = nodes(&mut rng, 4, 0.9, 0.05);
        assert_eq!(n.len(), 4);
    }
}
