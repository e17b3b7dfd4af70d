use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use xdisc_core::automorphisms::{aut_g2_apply, phi_a_apply};
use xdisc_core::constructions::{family_thlb, lift_to_r2, LiftBranch};
use xdisc_core::domains::{contains, minkowski, DomainId, Mode};
use xdisc_core::matrix2::{takagi2, CMatrix2};
use xdisc_core::rational::{circle_points, BlaschkeProduct, DiscAutomorphism, Poly, RationalMap};
use xdisc_core::sampling;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn point() -> impl Strategy<Value = Complex64> {
    (0.0..0.95f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=max_deg + 1)
        .prop_map(|v| Poly::new(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()))
}

/// A rational map with a denominator free of zeros on the closed disc.
fn rational() -> impl Strategy<Value = RationalMap> {
    (poly(3), prop::collection::vec(point(), 0..3)).prop_map(|(num, poles)| {
        // poles 1/ā outside the closed disc
        let roots: Vec<Complex64> = poles.iter().map(|a| 1.0 / (a.conj() + 1e-3)).collect();
        RationalMap::new(num, Poly::from_roots(&roots)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_arithmetic_matches_pointwise(f in rational(), g in rational(), z in point()) {
        let scale = 1.0 + f.eval(z).norm() * (1.0 + g.eval(z).norm()) + g.eval(z).norm();
        prop_assert!(((&f + &g).eval(z) - f.eval(z) - g.eval(z)).norm() < 1e-9 * scale);
        prop_assert!(((&f * &g).eval(z) - f.eval(z) * g.eval(z)).norm() < 1e-9 * scale);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn reduction_never_raises_degree(f in rational(), g in rational()) {
        let h = &f * &g;
        prop_assert!(h.degree() <= f.degree() + g.degree());
    }

    #[test]
    fn disc_automorphisms_invert(omega in 0.0..std::f64::consts::TAU, a in point(), z in point()) {
        let nu = DiscAutomorphism::new(Complex64::from_polar(1.0, omega), a).unwrap();
        prop_assert!((nu.inverse().eval(nu.eval(z)) - z).norm() < 1e-12);
        prop_assert!(nu.eval(z).norm() < 1.0);
    }

    #[test]
    fn takagi_reconstructs(seed in any::<u64>()) {
        let a = sampling::symmetric_matrix(&mut rng(seed), 2.0);
        let (u, s1, s2) = takagi2(&a).unwrap();
        let back = u * CMatrix2::diag(Complex64::new(s1, 0.0), Complex64::new(s2, 0.0)) * u.transpose();
        prop_assert!((back - a).max_abs() < 1e-10);
        prop_assert!(u.unitarity_defect() < 1e-10);
        prop_assert!(s1 >= s2 && s2 >= 0.0);
    }

    #[test]
    fn phi_a_is_an_involution_up_to_sign(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = sampling::symmetric_contraction(&mut r, 0.95);
        let z = sampling::symmetric_contraction(&mut r, 0.95);
        let w = phi_a_apply(&a, &z).unwrap();
        prop_assert!(contains(DomainId::CartanII, &[w.z11, w.z12, w.z21, w.z22], Mode::Open).unwrap());
        prop_assert!((phi_a_apply(&-a, &w).unwrap() - z).max_abs() < 1e-11);
    }

    #[test]
    fn minkowski_gauge_decides_membership(x in prop::collection::vec(point(), 2), t in 0.1..1.9f64) {
        let y: Vec<Complex64> = x.iter().map(|z| z * t).collect();
        let mu = minkowski(DomainId::Ball(2), &y, 1e-12).unwrap();
        let norm = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((mu - norm).abs() < 1e-9);
        if (mu - 1.0).abs() > 1e-9 {
            prop_assert_eq!(contains(DomainId::Ball(2), &y, Mode::Open).unwrap(), mu < 1.0);
        }
    }

    #[test]
    fn g2_automorphisms_preserve_the_domain(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (s, p) = sampling::g2_point(&mut r, 0.95);
        let nu = DiscAutomorphism::new(sampling::unimodular(&mut r), sampling::disc_point(&mut r, 0.9)).unwrap();
        let (s2, p2) = aut_g2_apply(&nu, s, p);
        prop_assert!(contains(DomainId::SymBidisc, &[s2, p2], Mode::Open).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn thlb_lifts_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let blaschke = |r: &mut ChaCha8Rng| {
            let k = 1 + (sampling::disc_point(r, 1.0).norm() * 2.0) as usize;
            let zeros = (0..k.min(2)).map(|_| sampling::disc_point(r, 0.9)).collect();
            BlaschkeProduct::new(sampling::unimodular(r), zeros).unwrap()
        };
        let (b1, b2) = (blaschke(&mut r), blaschke(&mut r));
        let phi = family_thlb(&b1, &b2).unwrap();
        let lift = lift_to_r2(&phi, LiftBranch::ZeroFreeCorner).unwrap();
        let f = &lift.disc;
        for z in circle_points(256) {
            let d = f.component(0).eval(z).norm() - f.component(3).eval(z).norm();
            prop_assert!(d.abs() < 1e-8);
        }
    }
}
