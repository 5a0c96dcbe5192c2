//! The approximation scheme: guess the profitable part of an optimum inside
//! the representative set, then fill the residual instance.

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lagrangian::{solve_or_fall_back, Strategy};
use crate::model::{residual, Instance, Solution};
use crate::oracles::enumerate_family;
use crate::rational::{int, Rational};
use crate::repset::{repset, Options, RepSetResult};
use crate::set;

/// One enumerated guess `F` and its completion `K_F = F ∪ T_F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationRecord {
    pub fixed: Vec<usize>,
    /// `T_F` in the ids of the full instance.
    pub completion: Vec<usize>,
    pub solution: Solution,
    pub strategy: Strategy,
    /// The exhaustive residual solve hit its capacity and was rerun with the Lagrangian strategy.
    pub fell_back: bool,
}

#[derive(Debug, Clone)]
pub struct EptasRun {
    /// The accuracy the scheme ran with.
    pub epsilon: Rational,
    pub repset: RepSetResult,
    /// Upper bound on `|F|`.
    pub max_guess: usize,
    pub branches: usize,
    pub best: EnumerationRecord,
    /// Guesses whose residual solve fell back to the Lagrangian strategy.
    pub fallbacks: Vec<Vec<usize>>,
}

impl EptasRun {
    pub fn solution(&self) -> &Solution {
        &self.best.solution
    }
}

fn solve_residual(sub: &Instance, opts: &Options) -> Result<(Solution, Strategy, bool)> {
    let (out, fell_back) = solve_or_fall_back(sub, opts.strategy, opts.max_exhaustive)?;
    Ok((out.solution, out.strategy, fell_back))
}

fn complete(inst: &Instance, epsilon: &Rational, alpha: &Rational, fixed: &[usize], opts: &Options) -> Result<EnumerationRecord> {
    let sub = residual(inst, epsilon, alpha, fixed)?;
    let (tail, strategy, fell_back) = solve_residual(&sub.instance, opts)?;
    let completion = sub.lift(&tail.members);
    let solution = Solution::of(inst, set::union(fixed, &completion));
    if !inst.is_feasible(&solution.members) {
        return Err(Error::Invariant(format!("completion of {fixed:?} is infeasible")));
    }
    Ok(EnumerationRecord {
        fixed: fixed.to_vec(),
        completion,
        solution,
        strategy,
        fell_back,
    })
}

/// Runs the scheme with accuracy `ε` directly; the result has profit at
/// least `(1 − 8ε)·OPT`.
pub fn eptas_core(inst: &Instance, epsilon: &Rational, opts: &Options) -> Result<EptasRun> {
    let rep = repset(inst, epsilon, opts)?;
    let max_guess = epsilon.recip().floor().to_integer().to_usize().unwrap_or(usize::MAX).min(inst.len());
    if rep.alpha.is_zero() {
        let (solution, strategy, fell_back) = solve_residual(inst, opts)?;
        let best = EnumerationRecord {
            fixed: Vec::new(),
            completion: solution.members.clone(),
            solution,
            strategy,
            fell_back,
        };
        return Ok(EptasRun {
            epsilon: epsilon.clone(),
            repset: rep,
            max_guess,
            branches: 1,
            fallbacks: if fell_back { vec![Vec::new()] } else { Vec::new() },
            best,
        });
    }
    let mut guesses = Vec::new();
    enumerate_family(&rep.union, max_guess, &mut |f| inst.is_feasible(f), &mut |f| {
        guesses.push(f.to_vec());
        true
    });
    let records: Vec<EnumerationRecord> = guesses
        .par_iter()
        .map(|f| complete(inst, epsilon, &rep.alpha, f, opts))
        .collect::<Result<_>>()?;
    let fallbacks = records.iter().filter(|r| r.fell_back).map(|r| r.fixed.clone()).collect();
    let best = records
        .into_iter()
        .reduce(|a, b| if b.solution.is_better_than(&a.solution) { b } else { a })
        .expect("the empty guess is always feasible");
    Ok(EptasRun {
        epsilon: epsilon.clone(),
        repset: rep,
        max_guess,
        branches: guesses.len(),
        best,
        fallbacks,
    })
}

/// Profit at least `(1 − ε)·OPT`: the scheme at accuracy `ε/8`.
pub fn approximate(inst: &Instance, epsilon: &Rational, opts: &Options) -> Result<EptasRun> {
    crate::model::check_epsilon(epsilon)?;
    eptas_core(inst, &(epsilon / int(8)), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::model::Constraint;
    use crate::rational::ratio;

    fn fig1() -> Instance {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (2, 3), (1, 3)]).unwrap();
        Instance::new(
            vec![int(5), int(4), int(5), int(4)],
            vec![int(1); 4],
            Constraint::Matching(g),
            int(2),
        )
        .unwrap()
    }

    #[test]
    fn fig1_reaches_optimum() {
        let run = eptas_core(&fig1(), &ratio(1, 4), &Options::default()).unwrap();
        assert_eq!(run.solution().members, vec![0, 2]);
        assert_eq!(run.solution().profit, int(10));
        assert_eq!(run.max_guess, 4);
        assert!(run.fallbacks.is_empty());
    }

    #[test]
    fn wrapper_divides_epsilon() {
        let run = approximate(&fig1(), &ratio(1, 2), &Options::default()).unwrap();
        assert_eq!(run.epsilon, ratio(1, 16));
        assert_eq!(run.solution().profit, int(10));
        assert!(approximate(&fig1(), &ratio(3, 4), &Options::default()).is_err());
    }

    #[test]
    fn empty_optimum() {
        let inst = fig1().with_budget(int(0)).unwrap();
        let run = approximate(&inst, &ratio(1, 3), &Options::default()).unwrap();
        assert!(run.solution().members.is_empty());
    }

    #[test]
    fn capacity_errors_fall_back() {
        let opts = Options {
            strategy: Strategy::Exhaustive,
            max_exhaustive: 1,
            ..Options::default()
        };
        let run = eptas_core(&fig1(), &ratio(1, 4), &opts).unwrap();
        assert!(run.fallbacks.contains(&Vec::new()));
        assert!(fig1().is_feasible(&run.solution().members));
        let exact = Options {
            alpha: crate::repset::AlphaMode::Exact,
            ..opts
        };
        assert!(matches!(eptas_core(&fig1(), &ratio(1, 4), &exact), Err(Error::Capacity { .. })));
    }
}
