//! JSON encodings shared by every public type: a complex number is the pair
//! `[re, im]`, vectors of complex numbers are arrays of such pairs.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `[re, im]` wire form of a complex number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pair(pub f64, pub f64);

impl From<Complex64> for Pair {
    fn from(z: Complex64) -> Self {
        Pair(z.re, z.im)
    }
}

impl From<Pair> for Complex64 {
    fn from(p: Pair) -> Self {
        Complex64::new(p.0, p.1)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ComplexVec(pub Vec<Complex64>);

impl Serialize for ComplexVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&z| Pair::from(z)))
    }
}

impl<'de> Deserialize<'de> for ComplexVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<Pair>::deserialize(d)?;
        Ok(ComplexVec(pairs.into_iter().map(Complex64::from).collect()))
    }
}

/// `#[serde(with = "cjson::complex")]` for a single complex field.
pub mod complex {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Pair::from(*z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        Pair::deserialize(d).map(Complex64::from)
    }
}

/// `#[serde(with = "cjson::complex_vec")]` for a `Vec<Complex64>` field.
pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|&z| Pair::from(z)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        ComplexVec::deserialize(d).map(|v| v.0)
    }
}
