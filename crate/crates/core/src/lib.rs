//! Exact zero-sum combinatorics over finite abelian groups: sequence
//! algebra, subsums, factorization counting, exhaustive solvers for the
//! cross-number and length invariants, and a battery of structural checks.

pub mod arith;
pub mod config;
pub mod error;
pub mod factor;
pub mod group;
pub mod invariants;
pub mod rational;
pub mod seq;
pub mod sumset;
pub mod verify;

pub use config::{Caps, Config};
pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec, GroupTable};
pub use rational::Rational;
pub use seq::{Sequence, WeightFunction};
