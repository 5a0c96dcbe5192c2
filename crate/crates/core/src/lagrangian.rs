//! Solver for instances without profitable elements: Lagrangian relaxation of
//! the budget, exact breakpoint search on the multiplier, and patching of the
//! two relaxation-optimal sets into a feasible one.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{Constraint, Instance, Solution};
use crate::oracles::{brute_force_opt, max_weight_common_independent, max_weight_matching};
use crate::rational::{self, Rational};
use crate::set;

/// Default number of relaxation solves allowed per search.
pub const DEFAULT_PROBES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Exhaustive,
    Lagrangian,
    Auto,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "lagrangian" => Ok(Strategy::Lagrangian),
            "auto" => Ok(Strategy::Auto),
            other => Err(Error::input(format!("unknown strategy {other:?}"))),
        }
    }
}

/// One relaxation solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub lambda: Rational,
    pub set: Vec<usize>,
    /// `λ·β + max (p − λc)(S)`, an upper bound on the budgeted optimum.
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianCertificate {
    pub lambda: Rational,
    /// Relaxation-optimal with cost within budget.
    pub s_minus: Vec<usize>,
    /// Relaxation-optimal with cost above budget; absent when the budget never binds.
    pub s_plus: Option<Vec<usize>>,
    /// `L(λ)`.
    pub value: Rational,
    /// Both sets are optimal at `λ` (false only when the probe budget ran out).
    pub exact: bool,
    pub probes: Vec<Probe>,
}

/// A maximizer of `(p − λc)(S)` over `M(C)`, ignoring the budget.
pub fn relaxation_optimum(inst: &Instance, lambda: &Rational) -> Vec<usize> {
    let w: Vec<Rational> = (0..inst.len()).map(|e| inst.profit(e) - lambda * inst.cost(e)).collect();
    match inst.constraint() {
        Constraint::Matching(g) => max_weight_matching(g, &w),
        Constraint::Intersection(a, b) => max_weight_common_independent(a.as_ref(), b.as_ref(), &w),
    }
}

fn line_at(inst: &Instance, set: &[usize], lambda: &Rational) -> Rational {
    inst.profit_of(set) - lambda * inst.cost_of(set)
}

fn probe(inst: &Instance, lambda: Rational, log: &mut Vec<Probe>) -> Vec<usize> {
    let set = relaxation_optimum(inst, &lambda);
    let value = line_at(inst, &set, &lambda) + &lambda * inst.budget();
    log.push(Probe {
        lambda,
        set: set.clone(),
        value,
    });
    set
}

/// Searches the multiplier by intersecting the lines of the current feasible
/// and infeasible relaxation optima; each probe either certifies the
/// intersection as a breakpoint or contributes a strictly better line.
pub fn lagrangian_search(inst: &Instance, max_probes: usize) -> LagrangianCertificate {
    let mut log = Vec::new();
    let zero = Rational::zero();
    let s0 = probe(inst, zero.clone(), &mut log);
    if inst.cost_of(&s0) <= *inst.budget() {
        let value = log[0].value.clone();
        return LagrangianCertificate {
            lambda: zero,
            s_minus: s0,
            s_plus: None,
            value,
            exact: true,
            probes: log,
        };
    }
    // Above this multiplier every positive-cost element has negative weight.
    let c_min = inst
        .costs()
        .iter()
        .filter(|c| **c > zero)
        .min()
        .cloned()
        .expect("an over-budget set has a positive-cost element");
    let lambda_hi = (rational::sum(inst.profits()) + Rational::from_integer(1.into())) / c_min;
    let mut hi = (lambda_hi.clone(), probe(inst, lambda_hi, &mut log));
    let mut lo = (zero, s0);
    debug_assert!(inst.cost_of(&hi.1) <= *inst.budget());
    let mut exact = false;
    while log.len() < max_probes {
        let (p_lo, c_lo) = (inst.profit_of(&lo.1), inst.cost_of(&lo.1));
        let (p_hi, c_hi) = (inst.profit_of(&hi.1), inst.cost_of(&hi.1));
        let lambda = (&p_lo - &p_hi) / (&c_lo - &c_hi);
        let s = probe(inst, lambda.clone(), &mut log);
        if line_at(inst, &s, &lambda) <= line_at(inst, &lo.1, &lambda) {
            lo.0 = lambda.clone();
            hi.0 = lambda;
            exact = true;
            break;
        }
        if inst.cost_of(&s) > *inst.budget() {
            lo = (lambda, s);
        } else {
            hi = (lambda, s);
        }
    }
    let lambda = if exact { lo.0.clone() } else { hi.0.clone() };
    let value = line_at(inst, &hi.1, &lambda) + &lambda * inst.budget();
    LagrangianCertificate {
        lambda,
        s_minus: hi.1,
        s_plus: Some(lo.1),
        value,
        exact,
        probes: log,
    }
}

/// Connected components of a set of edges, each as a list of edge ids.
fn edge_components(g: &Graph, edges: &[usize]) -> Vec<Vec<usize>> {
    let mut at_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &e in edges {
        let (u, v) = g.endpoints(e);
        at_vertex.entry(u).or_default().push(e);
        at_vertex.entry(v).or_default().push(e);
    }
    let mut done = vec![false; g.edge_count()];
    let mut out = Vec::new();
    for &start in edges {
        if done[start] {
            continue;
        }
        done[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let (u, v) = g.endpoints(comp[i]);
            for w in [u, v] {
                for &f in &at_vertex[&w] {
                    if !done[f] {
                        done[f] = true;
                        comp.push(f);
                    }
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

/// Orders an alternating path or even cycle as units `(g_i, f_i)` where `g`
/// comes from `minus`, `f` from the other side, and `f_i` touches `g_i` and
/// `g_{i+1}`. Missing ends are padded with `None`.
fn alternating_units(g: &Graph, comp: &[usize], minus: &[usize]) -> Vec<(Option<usize>, Option<usize>)> {
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in comp {
        let (u, v) = g.endpoints(e);
        *degree.entry(u).or_default() += 1;
        *degree.entry(v).or_default() += 1;
    }
    // Start at a path end if there is one, otherwise anywhere on the cycle.
    let first = comp
        .iter()
        .copied()
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            degree[&u] == 1 || degree[&v] == 1
        })
        .min()
        .unwrap_or_else(|| comp.iter().copied().filter(|e| set::contains(minus, *e)).min().expect("cycle has a minus edge"));
    let (u0, v0) = g.endpoints(first);
    let mut vertex = if degree[&u0] == 1 { v0 } else if degree[&v0] == 1 { u0 } else { v0 };
    let mut order = vec![first];
    let mut used = vec![first];
    loop {
        let next = comp.iter().copied().find(|&f| {
            !used.contains(&f) && {
                let (a, b) = g.endpoints(f);
                a == vertex || b == vertex
            }
        });
        let Some(f) = next else { break };
        let (a, b) = g.endpoints(f);
        vertex = if a == vertex { b } else { a };
        order.push(f);
        used.push(f);
    }
    let mut seq: Vec<Option<usize>> = order.into_iter().map(Some).collect();
    if !set::contains(minus, seq[0].expect("nonempty")) {
        seq.insert(0, None);
    }
    if seq.len() % 2 == 1 {
        seq.push(None);
    }
    seq.chunks(2).map(|pair| (pair[0], pair[1])).collect()
}

/// Combines the two relaxation optima of a matching instance. Components of
/// `s_minus △ s_plus` are swapped whole while the budget allows; the first
/// component that would overflow is rotated to a start whose running weight
/// change never goes negative and swapped unit by unit, dropping the edge
/// that would cross the budget. With an exact certificate the result loses at
/// most `max p(e)` against `OPT`.
pub fn patch_matching(inst: &Instance, cert: &LagrangianCertificate) -> Result<Solution> {
    let Constraint::Matching(g) = inst.constraint() else {
        return Err(Error::input("matching patch needs a matching constraint"));
    };
    let minus = set::normalized(cert.s_minus.clone());
    let mut best = Solution::of(inst, minus.clone());
    let Some(plus) = cert.s_plus.as_ref().map(|p| set::normalized(p.clone())) else {
        return Ok(best);
    };
    let plus_sol = Solution::of(inst, plus.clone());
    if inst.is_feasible(&plus) {
        return Ok(best.best(plus_sol));
    }
    let lambda = &cert.lambda;
    let weight = |e: usize| inst.profit(e) - lambda * inst.cost(e);
    let diff = set::union(&set::difference(&minus, &plus), &set::difference(&plus, &minus));
    let mut comps = edge_components(g, &diff);
    let delta_cost = |comp: &[usize]| -> Rational {
        rational::sum(comp.iter().filter(|e| set::contains(&plus, **e)).map(|&e| inst.cost(e)))
            - rational::sum(comp.iter().filter(|e| set::contains(&minus, **e)).map(|&e| inst.cost(e)))
    };
    comps.sort_by_key(|c| (delta_cost(c) > Rational::zero(), c.iter().min().copied()));

    let mut current = minus.clone();
    for comp in &comps {
        let swapped = set::normalized(
            current
                .iter()
                .copied()
                .filter(|e| !comp.contains(e))
                .chain(comp.iter().copied().filter(|e| set::contains(&plus, *e)))
                .collect(),
        );
        if inst.cost_of(&swapped) <= *inst.budget() {
            current = swapped;
            best = best.best(Solution::of(inst, current.clone()));
            continue;
        }
        // the crossing component
        let units = alternating_units(g, comp, &minus);
        let m = units.len();
        let delta = |i: usize| -> Rational {
            let (gi, fi) = units[i];
            fi.map(weight).unwrap_or_else(Rational::zero) - gi.map(weight).unwrap_or_else(Rational::zero)
        };
        let mut running = Rational::zero();
        let mut lowest = Rational::zero();
        let mut start = 0;
        for i in 0..m {
            running += delta(i);
            if running < lowest {
                lowest = running.clone();
                start = i + 1;
            }
        }
        let base_cost = inst.cost_of(&current);
        let mut window_cost = base_cost;
        let mut t_star = 0;
        for t in 1..=m {
            let (gi, fi) = units[(start + t - 1) % m];
            window_cost += fi.map(|e| inst.cost(e).clone()).unwrap_or_else(Rational::zero);
            window_cost -= gi.map(|e| inst.cost(e).clone()).unwrap_or_else(Rational::zero);
            if window_cost > *inst.budget() {
                break;
            }
            t_star = t;
        }
        let t_star = t_star.min(m - 1);
        let mut removed = Vec::new();
        let mut added = Vec::new();
        for t in 1..=t_star + 1 {
            let (gi, fi) = units[(start + t - 1) % m];
            removed.extend(gi);
            if t <= t_star {
                added.extend(fi);
            }
        }
        let candidate = set::normalized(
            current
                .iter()
                .copied()
                .filter(|e| !removed.contains(e))
                .chain(added)
                .collect(),
        );
        if inst.is_feasible(&candidate) {
            best = best.best(Solution::of(inst, candidate));
        }
        break;
    }
    if !inst.is_feasible(&best.members) {
        return Err(Error::Invariant("matching patch produced an infeasible set".into()));
    }
    Ok(best)
}

/// Heuristic combination for matroid intersection: greedy additions from
/// `s_plus`, a budget-driven trim of `s_plus`, then single-swap local search.
pub fn patch_intersection(inst: &Instance, cert: &LagrangianCertificate) -> Result<Solution> {
    let minus = set::normalized(cert.s_minus.clone());
    let mut best = Solution::of(inst, minus.clone());
    let Some(plus) = cert.s_plus.as_ref().map(|p| set::normalized(p.clone())) else {
        return Ok(best);
    };
    let by_profit = |items: &mut Vec<usize>| {
        items.sort_by(|&a, &b| inst.profit(b).cmp(inst.profit(a)).then(a.cmp(&b)));
    };

    // greedy additions to s_minus
    let mut grown = minus.clone();
    let mut extra = set::difference(&plus, &minus);
    by_profit(&mut extra);
    for e in extra {
        let trial = set::with(&grown, e);
        if inst.is_feasible(&trial) {
            grown = trial;
        }
    }
    best = best.best(Solution::of(inst, grown));

    // trim s_plus, dropping the least profit per unit cost first
    let mut trimmed = plus.clone();
    let mut order = plus.clone();
    order.sort_by(|&a, &b| {
        let ka = (inst.profit(a).clone(), inst.cost(a).clone());
        let kb = (inst.profit(b).clone(), inst.cost(b).clone());
        // a before b when p(a)/c(a) < p(b)/c(b); zero-cost elements last
        (&ka.0 * &kb.1).cmp(&(&kb.0 * &ka.1)).then(a.cmp(&b))
    });
    for e in order {
        if inst.cost_of(&trimmed) <= *inst.budget() {
            break;
        }
        trimmed = set::without(&trimmed, e);
    }
    if inst.is_feasible(&trimmed) {
        best = best.best(Solution::of(inst, trimmed));
    }

    // single-element additions and swaps over the whole ground set
    let mut current = best.members.clone();
    loop {
        let mut improved = None;
        let here = inst.profit_of(&current);
        for y in 0..inst.len() {
            if set::contains(&current, y) {
                continue;
            }
            let added = set::with(&current, y);
            if inst.is_feasible(&added) {
                improved = Some(added);
                break;
            }
            for &x in &current {
                if inst.profit(y) <= inst.profit(x) {
                    continue;
                }
                let trial = set::with(&set::without(&current, x), y);
                if inst.is_feasible(&trial) && inst.profit_of(&trial) > here {
                    improved = Some(trial);
                    break;
                }
            }
            if improved.is_some() {
                break;
            }
        }
        match improved {
            Some(next) if inst.profit_of(&next) >= here => current = next,
            _ => break,
        }
        if inst.profit_of(&current) == here {
            break;
        }
    }
    best = best.best(Solution::of(inst, current));
    if !inst.is_feasible(&best.members) {
        return Err(Error::Invariant("intersection patch produced an infeasible set".into()));
    }
    Ok(best)
}

#[derive(Debug, Clone)]
pub struct NpsOutcome {
    pub solution: Solution,
    /// The strategy that actually ran.
    pub strategy: Strategy,
    pub certificate: Option<LagrangianCertificate>,
}

/// Solution with `p(S) ≥ OPT − 2·max p(e)`; exhaustive search returns the
/// optimum itself.
pub fn non_profitable_solve(inst: &Instance, strategy: Strategy, bound: usize) -> Result<NpsOutcome> {
    let resolved = match strategy {
        Strategy::Auto if inst.len() <= bound => Strategy::Exhaustive,
        Strategy::Auto => Strategy::Lagrangian,
        s => s,
    };
    if inst.is_empty() {
        return Ok(NpsOutcome {
            solution: Solution::empty(),
            strategy: resolved,
            certificate: None,
        });
    }
    match resolved {
        Strategy::Exhaustive => Ok(NpsOutcome {
            solution: brute_force_opt(inst, bound)?,
            strategy: resolved,
            certificate: None,
        }),
        _ => {
            let cert = lagrangian_search(inst, DEFAULT_PROBES);
            let solution = match inst.constraint() {
                Constraint::Matching(_) => patch_matching(inst, &cert)?,
                Constraint::Intersection(..) => patch_intersection(inst, &cert)?,
            };
            Ok(NpsOutcome {
                solution,
                strategy: Strategy::Lagrangian,
                certificate: Some(cert),
            })
        }
    }
}

/// [`non_profitable_solve`], rerun with the Lagrangian strategy when the
/// exhaustive search exceeds its capacity. The flag reports the rerun.
pub fn solve_or_fall_back(inst: &Instance, strategy: Strategy, bound: usize) -> Result<(NpsOutcome, bool)> {
    match non_profitable_solve(inst, strategy, bound) {
        Ok(out) => Ok((out, false)),
        Err(Error::Capacity { .. }) => Ok((non_profitable_solve(inst, Strategy::Lagrangian, bound)?, true)),
        Err(e) => Err(e),
    }
}
