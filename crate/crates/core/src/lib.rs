//! Exact machinery for coverings of Z^2 by lattices and the binary forms whose
//! value sets they control.
//!
//! * [`lattice`]: subgroups of Z^2, intersections, the cover test, `L(gamma)`.
//! * [`enumerate`]: forced-point search for all coverings by six subgroups.
//! * [`catalog`]: the catalog of minimal coverings and its consistency checks.
//! * [`modular`]: exhaustive congruence scans over small residue rings.
//! * [`poly`] and [`groebner`]: integer polynomials and strong Groebner bases.
//! * [`forms`]: binary forms, dihedral automorphism groups and the
//!   extraordinariness criterion.

pub mod arith;
pub mod catalog;
pub mod enumerate;
pub mod forms;
pub mod groebner;
pub mod lattice;
pub mod modular;
pub mod poly;
pub mod ratmat;

pub use lattice::{density_sum, is_cover, Index, LatticeError, Subgroup, Vec2Z};
pub use ratmat::{Rat, RatMat2};
