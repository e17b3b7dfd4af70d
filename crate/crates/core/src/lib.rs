//! Computable geometry of extremal analytic discs: domain predicates for the
//! polydisc, ball, 2×2 Cartan domains, symmetrised bidisc and tetrablock,
//! their automorphism groups, Pick-matrix extremality certificates, and
//! constructors for the extremal disc families.

pub mod automorphisms;
pub mod constructions;
pub mod cjson;
pub mod disc;
pub mod domains;
pub mod extremality;
pub mod matrix2;
pub mod rational;
pub mod sampling;
