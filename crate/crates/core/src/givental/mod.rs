//! Geometry specifications, equivariant I-functions and θ-operators.

pub mod geometry;
pub mod ifunction;
pub mod operator;

pub use geometry::{a_n, builtin, d1, trivalent, x_k, x_k_factored, y_k, Action, Expansion, GeometrySpec, LambdaImage, Readout, Restriction, BUILTIN_NAMES};
pub use ifunction::{ifunction, ifunction_coefficient, ifunction_in};
pub use operator::{annihilation_check, operator_apply, operator_compose, parse_operator, Annihilation, ThetaOperator};
