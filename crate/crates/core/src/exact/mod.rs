//! Exact arithmetic: rationals, relation-defined cohomology algebras and the
//! coefficient ring every series coefficient lives in.

pub mod algebra;
pub mod poly;
pub mod rational;
pub mod ring;

pub use algebra::{algebra_from_relations, CohomAlgebra};
pub use poly::Poly;
pub use rational::{int, rat, Rational};
pub use ring::{elem_mul, expand_reciprocal_at_infinity, CoeffRing, Exactness, Key, RingElem, Window};
