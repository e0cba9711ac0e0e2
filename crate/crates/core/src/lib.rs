//! Root numbers of hyperelliptic Jacobians over the rationals at primes of
//! tame reduction, computed from cluster pictures.

pub mod arith;
pub mod clusters;
pub mod corpus;
pub mod curve;
pub mod error;
pub mod ff;
pub mod galois_rep;
pub mod lawful;
pub mod padic;
pub mod poly;
pub mod repcalc;
pub mod rootnum;
pub mod twist;

pub use error::{Error, Result};
