//! Exact solvers and exhaustive checkers used as ground truth.

mod blossom;
mod brute;
mod checkers;
mod intersection;

pub use blossom::max_weight_matching;
pub use brute::{brute_force_opt, brute_force_opt_within, enumerate_family, DEFAULT_BOUND};
pub use checkers::{check_exchange_set, check_representative, OracleReport, Witness};
pub use intersection::{max_weight_common_independent, max_weight_common_independent_exhaustive};
