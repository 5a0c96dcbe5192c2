#![allow(dead_code)]

use std::sync::Arc;

use budgeted_core::graph::Graph;
use budgeted_core::matroid::{Explicit, Field, Graphic, Linear, MatroidRef, Partition, Uniform};
use budgeted_core::rational::{int, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn subsets(ground: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << ground.len())
        .map(|mask| (0..ground.len()).filter(|i| mask >> i & 1 == 1).map(|i| ground[i]).collect())
        .collect()
}

pub fn random_costs(rng: &mut ChaCha8Rng, n: usize, hi: i64) -> Vec<Rational> {
    (0..n).map(|_| int(rng.gen_range(0..=hi))).collect()
}

/// A random concrete matroid on `n` elements, cycling through every kind.
pub fn random_matroid(rng: &mut ChaCha8Rng, n: usize) -> MatroidRef {
    match rng.gen_range(0..5) {
        0 => Arc::new(Uniform::new(n, rng.gen_range(0..=n))),
        1 => {
            let count = rng.gen_range(1..=3);
            let mut blocks = vec![Vec::new(); count];
            for e in 0..n {
                // some elements stay outside every block
                if rng.gen_range(0..5) > 0 {
                    blocks[rng.gen_range(0..count)].push(e);
                }
            }
            let caps = (0..count).map(|_| rng.gen_range(0..=2)).collect();
            Arc::new(Partition::new(n, blocks, caps).unwrap())
        }
        2 => {
            let v = rng.gen_range(1..=5);
            Arc::new(Graphic::new(v, (0..n).map(|_| (rng.gen_range(0..v), rng.gen_range(0..v))).collect()))
        }
        3 => {
            let rows = rng.gen_range(1..=3);
            let field = if rng.gen_bool(0.5) { Field::Rationals } else { Field::Prime(2) };
            let cols = (0..n).map(|_| (0..rows).map(|_| int(rng.gen_range(-1..=1))).collect()).collect();
            Arc::new(Linear::new(field, cols).unwrap())
        }
        _ => {
            let inner = random_matroid(rng, n);
            Arc::new(Explicit::from_oracle(inner.as_ref()).unwrap())
        }
    }
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize) -> Graph {
    let nv = rng.gen_range(2..=max_vertices);
    let ne = rng.gen_range(0..=max_edges);
    let edges = (0..ne)
        .map(|_| {
            let u = rng.gen_range(0..nv);
            (u, (u + rng.gen_range(1..nv)) % nv)
        })
        .collect();
    Graph::new(nv, edges).unwrap()
}
