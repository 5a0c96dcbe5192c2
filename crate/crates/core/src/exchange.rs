//! Exchange sets for a single profit class: disjoint greedy matchings for
//! matching constraints, and the recursive chain construction for matroid
//! intersection.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::greedy_matching;
use crate::matroid::{greedy_basis, MatroidRef};
use crate::model::{Constraint, Instance, SchemeParams};
use crate::set;

/// Hard ceiling on distinct branches explored by [`extend_chain`].
pub const MAX_BRANCHES: usize = 1 << 20;

/// Output of the matching construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingExchange {
    /// `M_1, M_2, …` in construction order; pairwise disjoint.
    pub matchings: Vec<Vec<usize>>,
    /// Union of the matchings, sorted.
    pub union: Vec<usize>,
}

/// Up to `k_eff` rounds of greedy matchings of size at most `n_eff`, each
/// drawn from the class edges not used so far. Stops as soon as no class edge
/// remains.
pub fn exset_matching(inst: &Instance, params: &SchemeParams, class: &[usize]) -> Result<MatchingExchange> {
    let Constraint::Matching(g) = inst.constraint() else {
        return Err(Error::input("matching exchange sets need a matching constraint"));
    };
    let mut remaining = set::normalized(class.to_vec());
    let mut matchings = Vec::new();
    let mut union = Vec::new();
    for _ in 0..params.k_eff {
        if remaining.is_empty() {
            break;
        }
        let m = greedy_matching(g, &remaining, params.n_eff, inst.costs());
        remaining = set::difference(&remaining, &m);
        union.extend_from_slice(&m);
        matchings.push(m);
    }
    Ok(MatchingExchange {
        matchings,
        union: set::normalized(union),
    })
}

/// One explored branch: the chain prefix `S` and its basis `B_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub s: Vec<usize>,
    pub basis: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRun {
    /// Union of all bases, sorted.
    pub union: Vec<usize>,
    /// Every distinct branch with `|S| ≤ cutoff`, in discovery order.
    pub branches: Vec<Branch>,
}

/// Recursion skeleton shared by the real construction and scripted tests:
/// branch `S` with `|S| ≤ cutoff` contributes `basis(S)` and recurses on
/// `S + e` for each `e` in it. Equal sets reached by different orders are
/// explored once.
pub fn extend_chain_with(
    root: &[usize],
    cutoff: usize,
    basis: &mut dyn FnMut(&[usize]) -> Vec<usize>,
) -> Result<ChainRun> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut branches = Vec::new();
    let mut union = BTreeSet::new();
    let mut stack = vec![set::normalized(root.to_vec())];
    while let Some(s) = stack.pop() {
        if s.len() > cutoff || !seen.insert(s.clone()) {
            continue;
        }
        if seen.len() > MAX_BRANCHES {
            return Err(Error::Capacity {
                what: "chain branches",
                size: seen.len(),
                bound: MAX_BRANCHES,
            });
        }
        let b = basis(&s);
        union.extend(b.iter().copied());
        // reversed so that children are explored in ascending id order
        for &e in b.iter().rev() {
            stack.push(set::with(&s, e));
        }
        branches.push(Branch { s, basis: b });
    }
    Ok(ChainRun {
        union: union.into_iter().collect(),
        branches,
    })
}

fn intersection_pair(inst: &Instance) -> Result<(&MatroidRef, &MatroidRef)> {
    match inst.constraint() {
        Constraint::Intersection(a, b) => Ok((a, b)),
        Constraint::Matching(_) => Err(Error::input("chain construction needs a matroid-intersection constraint")),
    }
}

/// Universe of branch `S`: class elements outside `S` that keep `S`
/// independent in the first matroid.
pub fn universe_of(m1: &MatroidRef, class: &[usize], s: &[usize]) -> Vec<usize> {
    class
        .iter()
        .copied()
        .filter(|&e| !set::contains(s, e) && m1.is_independent(&set::with(s, e)))
        .collect()
}

/// Chain recursion from `root`: the first matroid shapes the universe, the
/// second supplies `(cost, id)`-greedy bases truncated at `q_eff`. Branches
/// with more than `q_eff` elements are leaves.
pub fn extend_chain(inst: &Instance, params: &SchemeParams, class: &[usize], root: &[usize]) -> Result<ChainRun> {
    let (m1, m2) = intersection_pair(inst)?;
    if !m1.is_independent(root) {
        return Err(Error::input(format!("chain root {root:?} is dependent in the first matroid")));
    }
    let q = params.q_eff;
    extend_chain_with(root, q, &mut |s| {
        let universe = universe_of(m1, class, s);
        greedy_basis(m2.as_ref(), &universe, inst.costs(), q)
    })
}

pub fn exset_matroid_intersection(inst: &Instance, params: &SchemeParams, class: &[usize]) -> Result<ChainRun> {
    extend_chain(inst, params, class, &[])
}

/// Exchange set for one class, dispatching on the constraint type.
pub fn exchange_set(inst: &Instance, params: &SchemeParams, class: &[usize]) -> Result<Vec<usize>> {
    match inst.constraint() {
        Constraint::Matching(_) => exset_matching(inst, params, class).map(|m| m.union),
        Constraint::Intersection(..) => exset_matroid_intersection(inst, params, class).map(|r| r.union),
    }
}

fn swap(delta: &[usize], a: usize, b: usize) -> Vec<usize> {
    set::with(&set::without(delta, a), b)
}

fn check_shift_args(inst: &Instance, params: &SchemeParams, class: &[usize], delta: &[usize], a: usize, b: usize) -> Result<()> {
    if delta.len() > params.q_eff || !inst.constraint().contains(delta) {
        return Err(Error::input(format!("{delta:?} is not a bounded feasible set")));
    }
    if !set::contains(delta, a) || !class.contains(&a) {
        return Err(Error::input(format!("{a} must lie in both the set and the class")));
    }
    if set::contains(delta, b) || !class.contains(&b) {
        return Err(Error::input(format!("{b} must lie in the class and outside the set")));
    }
    Ok(())
}

/// `c(b) ≤ c(a)` and `Δ − a + b` is a bounded feasible set.
pub fn is_shift(inst: &Instance, params: &SchemeParams, class: &[usize], delta: &[usize], a: usize, b: usize) -> Result<bool> {
    check_shift_args(inst, params, class, delta, a, b)?;
    Ok(inst.cost(b) <= inst.cost(a) && inst.constraint().contains(&swap(delta, a, b)))
}

/// `c(b) ≤ c(a)`, `Δ − a + b` independent in the second matroid but not in the first.
pub fn is_semi_shift(
    inst: &Instance,
    params: &SchemeParams,
    class: &[usize],
    delta: &[usize],
    a: usize,
    b: usize,
) -> Result<bool> {
    let (m1, m2) = intersection_pair(inst)?;
    check_shift_args(inst, params, class, delta, a, b)?;
    let t = swap(delta, a, b);
    Ok(inst.cost(b) <= inst.cost(a) && m2.is_independent(&t) && !m1.is_independent(&t))
}

/// `a ∈ U_S` and every element of `S` is a semi-shift to `a` for `Δ`.
pub fn is_chain(
    inst: &Instance,
    params: &SchemeParams,
    class: &[usize],
    s: &[usize],
    a: usize,
    delta: &[usize],
) -> Result<bool> {
    let (m1, _) = intersection_pair(inst)?;
    if delta.len() > params.q_eff || !inst.constraint().contains(delta) {
        return Err(Error::input(format!("{delta:?} is not a bounded feasible set")));
    }
    if !set::contains(delta, a) || !class.contains(&a) {
        return Err(Error::input(format!("{a} must lie in both the set and the class")));
    }
    if !universe_of(m1, class, s).contains(&a) {
        return Ok(false);
    }
    for &e in s {
        if set::contains(delta, e) || !class.contains(&e) || !is_semi_shift(inst, params, class, delta, a, e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exchange sets for every nonempty class, keyed by class index.
pub fn exchange_sets_by_class(
    inst: &Instance,
    params: &SchemeParams,
    classes: &[Vec<usize>],
) -> Result<BTreeMap<usize, Vec<usize>>> {
    use rayon::prelude::*;
    let built: Vec<(usize, Vec<usize>)> = classes
        .par_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(i, c)| exchange_set(inst, params, c).map(|x| (i + 1, x)))
        .collect::<Result<_>>()?;
    Ok(built.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::Graph;
    use crate::matroid::Uniform;
    use crate::model::scheme_params;
    use crate::rational::{int, ratio};

    fn fig1() -> Instance {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (2, 3), (1, 3)]).unwrap();
        Instance::new(vec![int(5); 4], vec![int(1); 4], Constraint::Matching(g), int(2)).unwrap()
    }

    #[test]
    fn fig1_exchange_set_is_a_and_b() {
        let inst = fig1();
        let params = scheme_params(&inst, &ratio(1, 2)).unwrap();
        let out = exset_matching(&inst, &params, &[0, 1]).unwrap();
        assert_eq!(out.union, vec![0, 1]);
        assert_eq!(out.matchings, vec![vec![0], vec![1]]);
        assert!(exset_matching(&inst, &params, &[]).unwrap().union.is_empty());
    }

    #[test]
    fn path_takes_two_rounds() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let inst = Instance::new(vec![int(1); 3], vec![int(1); 3], Constraint::Matching(g), int(3)).unwrap();
        let params = scheme_params(&inst, &ratio(1, 2)).unwrap();
        let out = exset_matching(&inst, &params, &[0, 1, 2]).unwrap();
        assert_eq!(out.matchings, vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn scripted_figure_two_shape() {
        let (a, b, c, d, e, f) = (0, 1, 2, 3, 4, 5);
        let mut script = |s: &[usize]| -> Vec<usize> {
            match s {
                [] => vec![a, b],
                [x] if *x == a => vec![c, d],
                [x] if *x == b => vec![e, f],
                _ => vec![],
            }
        };
        let run = extend_chain_with(&[], 2, &mut script).unwrap();
        assert_eq!(run.union, vec![a, b, c, d, e, f]);
        let run = extend_chain_with(&[], 0, &mut script).unwrap();
        assert_eq!(run.union, vec![a, b]);
    }

    #[test]
    fn cutoff_and_empty_universe() {
        let u: MatroidRef = Arc::new(Uniform::new(2, 1));
        let inst = Instance::new(
            vec![int(1), int(1)],
            vec![int(2), int(1)],
            Constraint::Intersection(u.clone(), u),
            int(5),
        )
        .unwrap();
        let params = scheme_params(&inst, &ratio(1, 2)).unwrap();
        let run = exset_matroid_intersection(&inst, &params, &[0, 1]).unwrap();
        assert_eq!(run.union, vec![1]);
        assert!(exset_matroid_intersection(&inst, &params, &[]).unwrap().union.is_empty());
        let deep = extend_chain(&inst, &params, &[0, 1], &[1]).unwrap();
        assert!(deep.union.is_empty());
        assert!(is_shift(&inst, &params, &[0, 1], &[0], 0, 1).unwrap());
        assert!(is_chain(&inst, &params, &[0, 1], &[], 0, &[0]).unwrap());
        assert!(is_shift(&inst, &params, &[0, 1], &[0], 0, 0).is_err());
    }
}
