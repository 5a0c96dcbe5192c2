//! Maximum-weight common independent sets of two matroids.

use num_traits::Zero;

use super::brute::{check_bound, enumerate_family};
use crate::error::Result;
use crate::matroid::Matroid;
use crate::rational::{self, Rational};
use crate::set;

fn common_ground(m1: &dyn Matroid, m2: &dyn Matroid) -> Vec<usize> {
    (0..m1.ground_size().min(m2.ground_size()))
        .filter(|&e| m1.in_ground(e) && m2.in_ground(e))
        .collect()
}

/// Weighted matroid intersection by shortest augmenting paths in the exchange
/// graph. Each augmentation yields a maximum-weight common independent set of
/// the next cardinality; the search stops once the best path no longer gains.
/// Path lengths are exact and ties resolve toward fewer arcs, then smaller ids.
pub fn max_weight_common_independent(m1: &dyn Matroid, m2: &dyn Matroid, weight: &[Rational]) -> Vec<usize> {
    let ground = common_ground(m1, m2);
    let mut current: Vec<usize> = Vec::new();
    while let Some(path) = best_augmenting_path(m1, m2, weight, &ground, &current) {
        let gain = rational::sum(path.iter().filter(|e| !current.contains(e)).map(|&e| &weight[e]))
            - rational::sum(path.iter().filter(|e| current.contains(e)).map(|&e| &weight[e]));
        if gain <= Rational::zero() {
            break;
        }
        let mut next: Vec<usize> = current.iter().copied().filter(|e| !path.contains(e)).collect();
        next.extend(path.iter().copied().filter(|e| !current.contains(e)));
        current = set::normalized(next);
    }
    current
}

fn with_swap(current: &[usize], out: Option<usize>, add: usize) -> Vec<usize> {
    let mut s: Vec<usize> = current.iter().copied().filter(|&e| Some(e) != out).collect();
    s.push(add);
    s
}

type Label = (Rational, usize);

fn best_augmenting_path(
    m1: &dyn Matroid,
    m2: &dyn Matroid,
    weight: &[Rational],
    ground: &[usize],
    current: &[usize],
) -> Option<Vec<usize>> {
    let outside: Vec<usize> = ground.iter().copied().filter(|e| !current.contains(e)).collect();
    let n = weight.len();
    // vertex length: -w for elements entering, +w for elements leaving
    let length = |e: usize| -> Rational {
        if current.contains(&e) {
            weight[e].clone()
        } else {
            -weight[e].clone()
        }
    };
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &y in current {
        for &x in &outside {
            let swapped = with_swap(current, Some(y), x);
            if m1.is_independent(&swapped) {
                arcs[y].push(x);
            }
            if m2.is_independent(&swapped) {
                arcs[x].push(y);
            }
        }
    }
    let sinks: Vec<bool> = {
        let mut v = vec![false; n];
        for &x in &outside {
            v[x] = m2.is_independent(&with_swap(current, None, x));
        }
        v
    };
    let mut dist: Vec<Option<Label>> = vec![None; n];
    let mut pred = vec![usize::MAX; n];
    for &x in &outside {
        if m1.is_independent(&with_swap(current, None, x)) {
            dist[x] = Some((length(x), 0));
        }
    }
    let nodes: Vec<usize> = ground.to_vec();
    for _ in 0..nodes.len() {
        let mut changed = false;
        for &u in &nodes {
            let Some((du, hu)) = dist[u].clone() else { continue };
            for &v in &arcs[u] {
                let cand = (&du + length(v), hu + 1);
                let better = match &dist[v] {
                    None => true,
                    Some(old) => cand < *old,
                };
                if better {
                    dist[v] = Some(cand);
                    pred[v] = u;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let end = outside
        .iter()
        .copied()
        .filter(|&x| sinks[x] && dist[x].is_some())
        .min_by(|&a, &b| dist[a].cmp(&dist[b]).then(a.cmp(&b)))?;
    let mut path = vec![end];
    let mut v = end;
    while pred[v] != usize::MAX {
        v = pred[v];
        path.push(v);
    }
    path.reverse();
    Some(path)
}

/// Exhaustive reference: best common independent set by weight, ties toward
/// the lexicographically smallest id vector.
pub fn max_weight_common_independent_exhaustive(
    m1: &dyn Matroid,
    m2: &dyn Matroid,
    weight: &[Rational],
    bound: usize,
) -> Result<Vec<usize>> {
    let ground = common_ground(m1, m2);
    check_bound("exhaustive intersection", ground.len(), bound)?;
    let mut best: (Rational, Vec<usize>) = (Rational::zero(), Vec::new());
    enumerate_family(
        &ground,
        usize::MAX,
        &mut |s| m1.is_independent(s) && m2.is_independent(s),
        &mut |s| {
            let w = rational::sum(s.iter().map(|&e| &weight[e]));
            if w > best.0 {
                best = (w, s.to_vec());
            }
            true
        },
    );
    Ok(best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{Partition, Uniform};
    use crate::rational::int;

    fn w(ws: &[i64]) -> Vec<Rational> {
        ws.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn negative_weights_give_empty() {
        let u = Uniform::new(3, 2);
        assert!(max_weight_common_independent(&u, &u, &w(&[-1, 0, -3])).is_empty());
    }

    #[test]
    fn identical_uniforms_take_top_two() {
        let u = Uniform::new(3, 2);
        assert_eq!(max_weight_common_independent(&u, &u, &w(&[5, 4, 3])), vec![0, 1]);
    }

    #[test]
    fn bipartite_fig1() {
        // left vertices {0,3}, right vertices {1,2}; a=0-1, b=0-2, c=3-2, d=3-1
        let left = Partition::new(4, vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
        let right = Partition::new(4, vec![vec![0, 3], vec![1, 2]], vec![1, 1]).unwrap();
        let weights = w(&[3, 2, 3, 2]);
        assert_eq!(max_weight_common_independent(&left, &right, &weights), vec![0, 2]);
        assert_eq!(max_weight_common_independent_exhaustive(&left, &right, &weights, 20).unwrap(), vec![0, 2]);
    }

    #[test]
    fn augmentation_reroutes() {
        // Greedy would take element 1 (weight 5) alone; the optimum swaps it out.
        let left = Partition::new(3, vec![vec![0, 1], vec![2]], vec![1, 1]).unwrap();
        let right = Partition::new(3, vec![vec![0], vec![1, 2]], vec![1, 1]).unwrap();
        let weights = w(&[4, 5, 4]);
        assert_eq!(max_weight_common_independent(&left, &right, &weights), vec![0, 2]);
    }
}
