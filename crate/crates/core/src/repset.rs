//! The profit estimate `α` and the representative set `R`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exchange::exchange_sets_by_class;
use crate::lagrangian::{solve_or_fall_back, Strategy};
use crate::model::{contract, profit_classes, scheme_params, Instance, ProfitClassing, SchemeParams, Solution};
use crate::oracles::{brute_force_opt, enumerate_family, DEFAULT_BOUND};
use crate::rational::Rational;
use crate::set;

/// Largest seed set tried by [`two_approx`].
pub const SEED_SIZE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaMode {
    /// `α = p(S*)` for the 2-approximation `S*`.
    TwoApprox,
    /// `α = OPT` by exhaustive search.
    Exact,
}

impl std::str::FromStr for AlphaMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-approx" | "default" => Ok(AlphaMode::TwoApprox),
            "exact" => Ok(AlphaMode::Exact),
            other => Err(Error::input(format!("unknown alpha mode {other:?}"))),
        }
    }
}

/// Knobs shared by the scheme's stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Options {
    pub strategy: Strategy,
    pub alpha: AlphaMode,
    /// Ground-set limit for exhaustive search.
    pub max_exhaustive: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            strategy: Strategy::Auto,
            alpha: AlphaMode::TwoApprox,
            max_exhaustive: DEFAULT_BOUND,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TwoApprox {
    pub solution: Solution,
    /// The seed set `F` the winner was grown from.
    pub seed: Vec<usize>,
    pub seeds_tried: u64,
    /// Seeds whose exhaustive solve exceeded capacity and ran the Lagrangian strategy.
    pub fallbacks: u64,
}

/// Best `F ∪ T_F` over feasible seeds `|F| ≤ 4`, where `T_F` solves the
/// instance thinned by `F` and cut down to elements no more profitable than
/// any member of `F`. Exhaustive solves over capacity fall back to the
/// Lagrangian strategy. The seed equal to the four most profitable elements of
/// an optimum bounds the loss by half of `OPT`.
pub fn two_approx(inst: &Instance, strategy: Strategy, bound: usize) -> Result<TwoApprox> {
    let universe: Vec<usize> = (0..inst.len()).collect();
    let mut best = (Solution::empty(), Vec::new());
    let mut failure = None;
    let mut fallbacks = 0;
    let tried = enumerate_family(&universe, SEED_SIZE, &mut |f| inst.is_feasible(f), &mut |f| {
        let floor = f.iter().map(|&e| inst.profit(e)).min().cloned();
        let sub = match contract(inst, f, |e| floor.as_ref().is_none_or(|m| inst.profit(e) <= m)) {
            Ok(sub) => sub,
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        let tail = match solve_or_fall_back(&sub.instance, strategy, bound) {
            Ok((out, fell_back)) => {
                fallbacks += u64::from(fell_back);
                out.solution
            }
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        let cand = Solution::of(inst, set::union(f, &sub.lift(&tail.members)));
        if cand.is_better_than(&best.0) {
            best = (cand, f.to_vec());
        }
        true
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(TwoApprox {
        solution: best.0,
        seed: best.1,
        seeds_tried: tried,
        fallbacks,
    })
}

#[derive(Debug, Clone)]
pub struct RepSetResult {
    pub alpha: Rational,
    /// The solution `α` was read from; absent in exact mode.
    pub estimate: Option<Solution>,
    pub params: SchemeParams,
    /// Absent when `α = 0`.
    pub classing: Option<ProfitClassing>,
    /// Exchange set per nonempty class `r`.
    pub per_class: BTreeMap<usize, Vec<usize>>,
    pub union: Vec<usize>,
}

impl RepSetResult {
    /// `54·q_eff³`, the size ceiling for matching constraints.
    pub fn matching_bound(&self) -> usize {
        54 * self.params.q_eff.pow(3)
    }
}

pub fn alpha_of(inst: &Instance, opts: &Options) -> Result<(Rational, Option<Solution>)> {
    match opts.alpha {
        AlphaMode::TwoApprox => {
            let s = two_approx(inst, opts.strategy, opts.max_exhaustive)?.solution;
            Ok((s.profit.clone(), Some(s)))
        }
        AlphaMode::Exact => Ok((brute_force_opt(inst, opts.max_exhaustive)?.profit, None)),
    }
}

/// Union of per-class exchange sets over the profit classes of `α`.
pub fn repset(inst: &Instance, epsilon: &Rational, opts: &Options) -> Result<RepSetResult> {
    let params = scheme_params(inst, epsilon)?;
    let (alpha, estimate) = alpha_of(inst, opts)?;
    repset_with_alpha(inst, params, alpha, estimate)
}

pub fn repset_with_alpha(
    inst: &Instance,
    params: SchemeParams,
    alpha: Rational,
    estimate: Option<Solution>,
) -> Result<RepSetResult> {
    if alpha.is_zero() {
        return Ok(RepSetResult {
            alpha,
            estimate,
            params,
            classing: None,
            per_class: BTreeMap::new(),
            union: Vec::new(),
        });
    }
    let classing = profit_classes(inst, &params, &alpha)?;
    let per_class = exchange_sets_by_class(inst, &params, &classing.classes)?;
    let union = set::normalized(per_class.values().flatten().copied().collect());
    Ok(RepSetResult {
        alpha,
        estimate,
        params,
        classing: Some(classing),
        per_class,
        union,
    })
}
