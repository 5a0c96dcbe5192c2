//! Brute-force verifiers for exchange sets and representative sets.

use num_traits::One;
use serde::Serialize;

use super::brute::{brute_force_opt_within, check_bound, enumerate_family};
use crate::error::Result;
use crate::model::{Instance, SchemeParams};
use crate::rational::{int, Rational};
use crate::set;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A bounded feasible set and a class element with no valid swap.
    Exchange { delta: Vec<usize>, a: usize },
    /// Best admissible solution, which fell short of the target.
    Solution { members: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub verdict: bool,
    /// Present exactly when the verdict is negative.
    pub witness: Option<Witness>,
    /// Positive evidence, when the check produces any.
    pub support: Option<Vec<usize>>,
    pub sets_enumerated: u64,
}

/// Verifies that `x` is an exchange set for the class `class` (sorted ids):
/// for every `Δ ∈ M` with `|Δ| ≤ q_eff` and every `a ∈ (Δ ∩ class) \ x` some
/// `b ∈ (class ∩ x) \ Δ` has `c(b) ≤ c(a)` and `Δ − a + b ∈ M`. Reports the
/// first failing pair in lexicographic order of `Δ`.
pub fn check_exchange_set(
    inst: &Instance,
    params: &SchemeParams,
    class: &[usize],
    x: &[usize],
    bound: usize,
) -> Result<OracleReport> {
    check_bound("exchange-set check", inst.len(), bound)?;
    let universe: Vec<usize> = (0..inst.len()).collect();
    let candidates: Vec<usize> = class.iter().copied().filter(|&b| set::contains(x, b)).collect();
    let constraint = inst.constraint();
    let mut witness = None;
    let count = enumerate_family(
        &universe,
        params.q_eff,
        &mut |s| constraint.contains(s),
        &mut |delta| {
            for &a in delta {
                if !class.contains(&a) || x.contains(&a) {
                    continue;
                }
                let swapped = candidates.iter().any(|&b| {
                    !delta.contains(&b) && inst.cost(b) <= inst.cost(a) && {
                        let trial: Vec<usize> = delta.iter().map(|&e| if e == a { b } else { e }).collect();
                        constraint.contains(&trial)
                    }
                });
                if !swapped {
                    witness = Some(Witness::Exchange {
                        delta: delta.to_vec(),
                        a,
                    });
                    return false;
                }
            }
            true
        },
    );
    Ok(OracleReport {
        verdict: witness.is_none(),
        witness,
        support: None,
        sets_enumerated: count,
    })
}

/// Verifies that `r` is a representative set: some feasible `S` with
/// `S ∩ H ⊆ r` has `p(S) ≥ (1 − 4ε)·OPT`, where `H = {e : p(e) > ε·OPT}`.
pub fn check_representative(inst: &Instance, epsilon: &Rational, r: &[usize], bound: usize) -> Result<OracleReport> {
    check_bound("representative-set check", inst.len(), bound)?;
    let all: Vec<usize> = (0..inst.len()).collect();
    let (opt, opt_nodes) = brute_force_opt_within(inst, &all, bound)?;
    let threshold = epsilon * &opt.profit;
    let allowed: Vec<usize> = all
        .into_iter()
        .filter(|&e| *inst.profit(e) <= threshold || r.contains(&e))
        .collect();
    let (best, nodes) = brute_force_opt_within(inst, &allowed, bound)?;
    let target = (Rational::one() - epsilon * int(4)) * &opt.profit;
    let verdict = best.profit >= target;
    Ok(OracleReport {
        verdict,
        witness: (!verdict).then(|| Witness::Solution {
            members: best.members.clone(),
        }),
        support: verdict.then_some(best.members),
        sets_enumerated: opt_nodes + nodes,
    })
}
