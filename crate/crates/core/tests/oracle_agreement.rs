use std::sync::Arc;

use budgeted_core::graph::Graph;
use budgeted_core::matroid::{Graphic, MatroidRef, Partition, Uniform};
use budgeted_core::oracles::{
    brute_force_opt, enumerate_family, max_weight_common_independent, max_weight_common_independent_exhaustive,
    max_weight_matching, DEFAULT_BOUND,
};
use budgeted_core::rational::{int, sum, Rational};
use budgeted_core::{Constraint, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn weight_of(set: &[usize], w: &[Rational]) -> Rational {
    sum(set.iter().map(|&e| &w[e]))
}

fn best_by_enumeration(n: usize, ok: &dyn Fn(&[usize]) -> bool, w: &[Rational]) -> Rational {
    let universe: Vec<usize> = (0..n).collect();
    let mut best = int(0);
    enumerate_family(&universe, n, &mut |s| ok(s), &mut |s| {
        let v = weight_of(s, w);
        if v > best {
            best = v;
        }
        true
    });
    best
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| int(rng.gen_range(-5..=20))).collect()
}

#[test]
fn blossom_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let nv = rng.gen_range(2..=8);
        let ne = rng.gen_range(0..=10);
        let edges: Vec<(usize, usize)> = (0..ne)
            .map(|_| {
                let u = rng.gen_range(0..nv);
                let mut v = rng.gen_range(0..nv - 1);
                if v >= u {
                    v += 1;
                }
                (u, v)
            })
            .collect();
        let g = Graph::new(nv, edges).unwrap();
        let w = random_weights(&mut rng, ne);
        let m = max_weight_matching(&g, &w);
        assert!(g.is_matching(&m).unwrap());
        let expect = best_by_enumeration(ne, &|s| g.is_matching_unchecked(s), &w);
        assert_eq!(weight_of(&m, &w), expect, "graph {g:?} weights {w:?}");
    }
}

fn random_matroid(rng: &mut ChaCha8Rng, n: usize) -> MatroidRef {
    match rng.gen_range(0..3) {
        0 => Arc::new(Uniform::new(n, rng.gen_range(0..=n))),
        1 => {
            let blocks = rng.gen_range(1..=3);
            let mut parts = vec![Vec::new(); blocks];
            for e in 0..n {
                parts[rng.gen_range(0..blocks)].push(e);
            }
            let caps = (0..blocks).map(|_| rng.gen_range(0..=2)).collect();
            Arc::new(Partition::new(n, parts, caps).unwrap())
        }
        _ => {
            let nv = rng.gen_range(2..=6);
            let edges = (0..n).map(|_| (rng.gen_range(0..nv), rng.gen_range(0..nv))).collect();
            Arc::new(Graphic::new(nv, edges))
        }
    }
}

#[test]
fn intersection_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=10);
        let (a, b) = (random_matroid(&mut rng, n), random_matroid(&mut rng, n));
        let w = random_weights(&mut rng, n);
        let fast = max_weight_common_independent(a.as_ref(), b.as_ref(), &w);
        let slow = max_weight_common_independent_exhaustive(a.as_ref(), b.as_ref(), &w, 20).unwrap();
        assert!(a.is_independent(&fast) && b.is_independent(&fast));
        assert_eq!(weight_of(&fast, &w), weight_of(&slow, &w), "{a:?} {b:?} {w:?}");
    }
}

#[test]
fn bipartite_encoding_agrees_with_blossom() {
    let g = Graph::new(4, vec![(0, 1), (0, 2), (3, 2), (3, 1)]).unwrap();
    let left: MatroidRef = Arc::new(Partition::new(4, vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap());
    let right: MatroidRef = Arc::new(Partition::new(4, vec![vec![0, 3], vec![1, 2]], vec![1, 1]).unwrap());
    let w: Vec<Rational> = [3, 2, 3, 2].iter().map(|&x| int(x)).collect();
    let via_matroids = max_weight_common_independent(left.as_ref(), right.as_ref(), &w);
    assert_eq!(via_matroids, max_weight_matching(&g, &w));
    assert_eq!(via_matroids, vec![0, 2]);
}

#[test]
fn brute_force_is_monotone_in_budget() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let nv = rng.gen_range(2..=6);
        let ne = rng.gen_range(1..=9);
        let edges = (0..ne)
            .map(|_| {
                let u = rng.gen_range(0..nv);
                (u, (u + rng.gen_range(1..nv)) % nv)
            })
            .collect();
        let g = Graph::new(nv, edges).unwrap();
        let p: Vec<Rational> = (0..ne).map(|_| int(rng.gen_range(0..=20))).collect();
        let c: Vec<Rational> = (0..ne).map(|_| int(rng.gen_range(0..=20))).collect();
        let mut last = int(0);
        for budget in [0, 5, 10, 20, 40, 80] {
            let inst = Instance::new(p.clone(), c.clone(), Constraint::Matching(g.clone()), int(budget)).unwrap();
            let s = brute_force_opt(&inst, DEFAULT_BOUND).unwrap();
            assert!(inst.is_feasible(&s.members));
            assert!(s.profit >= last);
            last = s.profit;
        }
    }
}
