use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Instance, Solution};
use crate::rational::Rational;

/// Default ceiling on the number of elements an exhaustive routine will accept.
pub const DEFAULT_BOUND: usize = 24;

/// Visits every subset `S` of `universe` with `|S| ≤ max_size` such that `ok`
/// holds for `S` and every prefix of `S` (in universe order). For a hereditary
/// `ok` and an ascending universe this is the whole family, in lexicographic
/// order of sorted id vectors. `visit` returns `false` to stop early. Returns
/// the number of sets visited.
pub fn enumerate_family(
    universe: &[usize],
    max_size: usize,
    ok: &mut dyn FnMut(&[usize]) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> u64 {
    fn go(
        universe: &[usize],
        from: usize,
        max_size: usize,
        current: &mut Vec<usize>,
        ok: &mut dyn FnMut(&[usize]) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
        count: &mut u64,
    ) -> bool {
        *count += 1;
        if !visit(current) {
            return false;
        }
        if current.len() >= max_size {
            return true;
        }
        for i in from..universe.len() {
            current.push(universe[i]);
            if ok(current) && !go(universe, i + 1, max_size, current, ok, visit, count) {
                current.pop();
                return false;
            }
            current.pop();
        }
        true
    }
    let mut count = 0;
    if ok(&[]) {
        go(universe, 0, max_size, &mut Vec::new(), ok, visit, &mut count);
    }
    count
}

pub(crate) fn check_bound(what: &'static str, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        Err(Error::Capacity { what, size, bound })
    } else {
        Ok(())
    }
}

/// Exact optimum over all feasible sets, ties broken toward the
/// lexicographically smallest id vector.
pub fn brute_force_opt(inst: &Instance, bound: usize) -> Result<Solution> {
    let all: Vec<usize> = (0..inst.len()).collect();
    brute_force_opt_within(inst, &all, bound).map(|(s, _)| s)
}

/// Exact optimum over feasible subsets of `allowed`; also returns the number of
/// search nodes visited.
pub fn brute_force_opt_within(inst: &Instance, allowed: &[usize], bound: usize) -> Result<(Solution, u64)> {
    check_bound("exhaustive optimum", allowed.len(), bound)?;
    let mut universe = allowed.to_vec();
    universe.sort_unstable();
    universe.dedup();
    if let Some(&e) = universe.iter().find(|&&e| e >= inst.len()) {
        return Err(Error::input(format!("unknown element id {e}")));
    }
    // suffix[i] = total profit of universe[i..]
    let mut suffix = vec![Rational::zero(); universe.len() + 1];
    for i in (0..universe.len()).rev() {
        suffix[i] = &suffix[i + 1] + inst.profit(universe[i]);
    }
    let mut search = Search {
        inst,
        universe: &universe,
        suffix: &suffix,
        current: Vec::new(),
        best: Solution::empty(),
        nodes: 0,
    };
    search.go(0, Rational::zero(), Rational::zero());
    Ok((search.best, search.nodes))
}

struct Search<'a> {
    inst: &'a Instance,
    universe: &'a [usize],
    suffix: &'a [Rational],
    current: Vec<usize>,
    best: Solution,
    nodes: u64,
}

impl Search<'_> {
    // Preorder DFS visits sets in lexicographic order, so a later set only
    // replaces the incumbent with strictly larger profit; branches that cannot
    // beat it strictly are cut.
    fn go(&mut self, from: usize, profit: Rational, cost: Rational) {
        self.nodes += 1;
        if profit > self.best.profit {
            self.best = Solution {
                members: self.current.clone(),
                profit: profit.clone(),
                cost: cost.clone(),
            };
        }
        for i in from..self.universe.len() {
            if &profit + &self.suffix[i] <= self.best.profit {
                return;
            }
            let e = self.universe[i];
            let next_cost = &cost + self.inst.cost(e);
            if next_cost > *self.inst.budget() {
                continue;
            }
            self.current.push(e);
            if self.inst.constraint().contains(&self.current) {
                self.go(i + 1, &profit + self.inst.profit(e), next_cost);
            }
            self.current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::model::Constraint;
    use crate::rational::int;

    fn fig1(profits: [i64; 4], budget: i64) -> Instance {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (2, 3), (1, 3)]).unwrap();
        Instance::new(profits.iter().map(|&p| int(p)).collect(), vec![int(1); 4], Constraint::Matching(g), int(budget))
            .unwrap()
    }

    #[test]
    fn fig1_optimum() {
        let s = brute_force_opt(&fig1([5, 4, 5, 4], 2), DEFAULT_BOUND).unwrap();
        assert_eq!(s.members, vec![0, 2]);
        assert_eq!(s.profit, int(10));
        assert!(brute_force_opt(&fig1([5, 4, 5, 4], 0), DEFAULT_BOUND).unwrap().members.is_empty());
    }

    #[test]
    fn ties_prefer_lexicographically_smallest() {
        let s = brute_force_opt(&fig1([1, 1, 1, 1], 1), DEFAULT_BOUND).unwrap();
        assert_eq!(s.members, vec![0]);
        let s = brute_force_opt(&fig1([1, 1, 1, 1], 2), DEFAULT_BOUND).unwrap();
        assert_eq!(s.members, vec![0, 2]);
    }

    #[test]
    fn refuses_above_bound() {
        assert!(matches!(
            brute_force_opt(&fig1([1, 1, 1, 1], 2), 3),
            Err(Error::Capacity { size: 4, bound: 3, .. })
        ));
    }

    #[test]
    fn enumeration_order_and_count() {
        let mut seen = Vec::new();
        let count = enumerate_family(&[0, 1, 2], 2, &mut |_| true, &mut |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(count, 7);
        assert_eq!(seen, vec![vec![], vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 2], vec![2]]);
    }
}
