//! Approximation scheme for budgeted matching and budgeted matroid intersection
//! built on representative sets, with exact oracles and brute-force checkers.

pub mod eptas;
pub mod error;
pub mod exchange;
pub mod generate;
pub mod graph;
pub mod io;
pub mod lagrangian;
pub mod matroid;
pub mod model;
pub mod oracles;
pub mod rational;
pub mod repset;
pub mod set;

pub use error::{Error, Result};
pub use graph::Graph;
pub use model::{Constraint, Instance, SchemeParams, Solution};
pub use rational::Rational;
