//! Exact-arithmetic engine for equivariant local mirror symmetry of curve
//! geometries: I-functions from toric charge data, Birkhoff factorization,
//! mirror maps, Gromov-Witten invariants and the closed forms they are
//! compared against.

pub mod cli;
pub mod closed;
pub mod error;
pub mod exact;
pub mod givental;
pub mod mirror;
pub mod series;

pub use error::{Error, Result};
