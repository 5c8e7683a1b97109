//! Exact rational linear algebra and polyhedral primitives.

pub mod canonical;
pub mod hnf;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod unimodular;

pub use canonical::{are_equivalent, canonical_form, CanonicalForm};
pub use hnf::{hermite_normal_form, IntMatrix};
pub use polytope::{hull, lp_optimize, vertices_of, volume, Facet, HalfSpace, Polytope, Sense};
pub use rational::{Integer, LatticePoint, Point, Rational};
pub use unimodular::UnimodularMap;
