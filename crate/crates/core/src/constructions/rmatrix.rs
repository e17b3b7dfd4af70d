use num_complex::Complex64;

use crate::automorphisms::{phi_factors, AutError};
use crate::matrix2::CMatrix2;
use crate::rational::{Poly, RationalMap};

use super::ConstructionError;

/// Matrix disc `P(λ) / q(λ)` with polynomial entries over one common
/// denominator. Nothing is reduced until the entries are extracted.
#[derive(Clone, Debug, PartialEq)]
pub struct FracMatrix2 {
    /// Row-major numerators.
    pub p: [Poly; 4],
    pub q: Poly,
}

/// `Σ c_k p_k`.
fn lin(terms: &[(Complex64, &Poly)]) -> Poly {
    terms.iter().fold(Poly::zero(), |acc, (c, p)| &acc + &p.scale(*c))
}

fn left(c: &CMatrix2, p: &[Poly; 4]) -> [Poly; 4] {
    let c = c.to_array();
    [0, 1, 2, 3].map(|k| {
        let (i, j) = (k / 2, k % 2);
        lin(&[(c[2 * i], &p[j]), (c[2 * i + 1], &p[2 + j])])
    })
}

fn right(p: &[Poly; 4], c: &CMatrix2) -> [Poly; 4] {
    let c = c.to_array();
    [0, 1, 2, 3].map(|k| {
        let (i, j) = (k / 2, k % 2);
        lin(&[(c[j], &p[2 * i]), (c[2 + j], &p[2 * i + 1])])
    })
}

fn mul(a: &[Poly; 4], b: &[Poly; 4]) -> [Poly; 4] {
    [0, 1, 2, 3].map(|k| {
        let (i, j) = (k / 2, k % 2);
        &(&a[2 * i] * &b[j]) + &(&a[2 * i + 1] * &b[2 + j])
    })
}

fn det(p: &[Poly; 4]) -> Poly {
    &(&p[0] * &p[3]) - &(&p[1] * &p[2])
}

impl FracMatrix2 {
    /// `m · λ`.
    pub fn linear(m: &CMatrix2) -> Self {
        FracMatrix2 { p: m.to_array().map(|c| Poly::monomial(c, 1)), q: Poly::one() }
    }

    /// `diag(a, b)` from rational maps.
    pub fn diag(a: &RationalMap, b: &RationalMap) -> Self {
        FracMatrix2 {
            p: [a.num() * b.den(), Poly::zero(), Poly::zero(), b.num() * a.den()],
            q: a.den() * b.den(),
        }
    }

    pub fn eval(&self, z: Complex64) -> CMatrix2 {
        let q = self.q.eval(z);
        CMatrix2::from_array([0, 1, 2, 3].map(|k| self.p[k].eval(z) / q))
    }

    /// `λ · self`.
    pub fn times_lambda(&self) -> Self {
        FracMatrix2 { p: self.p.clone().map(|x| &x * &Poly::x()), q: self.q.clone() }
    }

    /// `U X Uᵗ`.
    pub fn lu(&self, u: &CMatrix2) -> Self {
        FracMatrix2 { p: right(&left(u, &self.p), &u.transpose()), q: self.q.clone() }
    }

    /// `Φ_a(X) = S1 (X − a) adj(M) S2 / det M`, `M = 1 − a* X`. With
    /// `X = P/q` and `N = q − a* P` this is `S1 (P − a q) adj(N) S2 / det N`.
    pub fn phi(&self, a: &CMatrix2) -> Result<Self, ConstructionError> {
        let (s1, s2) = phi_factors(a)?;
        let aq = a.to_array().map(|c| self.q.scale(c));
        let shifted: [Poly; 4] = [0, 1, 2, 3].map(|k| &self.p[k] - &aq[k]);
        let mut n = left(&-a.adjoint(), &self.p);
        n[0] = &n[0] + &self.q;
        n[3] = &n[3] + &self.q;
        let q = det(&n);
        if q.is_zero() {
            return Err(AutError::SingularResolvent.into());
        }
        let adj = [n[3].clone(), -&n[1], -&n[2], n[0].clone()];
        let p = right(&left(&s1, &mul(&shifted, &adj)), &s2);
        Ok(FracMatrix2 { p, q })
    }

    /// Reduced entries.
    pub fn entries(&self) -> Result<[RationalMap; 4], ConstructionError> {
        let mut out = Vec::with_capacity(4);
        for x in &self.p {
            out.push(RationalMap::new(x.clone(), self.q.clone())?);
        }
        Ok(out.try_into().expect("four entries"))
    }

    /// `(2 f12, −det f)` as reduced rational maps, after checking `P12 = P21`.
    pub fn g2_pair(&self) -> Result<(RationalMap, RationalMap), ConstructionError> {
        let scale = self.p.iter().map(Poly::max_abs_coeff).fold(f64::MIN_POSITIVE, f64::max);
        let asym = (&self.p[1] - &self.p[2]).max_abs_coeff() / scale;
        if asym > super::ROUND_TRIP_TOL {
            return Err(ConstructionError::NotSymmetric(asym));
        }
        let s = RationalMap::new(&self.p[1] + &self.p[2], self.q.clone())?;
        let p = RationalMap::new(-&det(&self.p), &self.q * &self.q)?;
        Ok((s, p))
    }
}
