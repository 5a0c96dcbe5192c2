//! Multigraphs whose edges are instance elements, matching predicates, and the
//! bounded greedy matching routine.

use crate::error::{Error, Result};
use crate::matroid::cost_order;
use crate::rational::Rational;

/// Undirected multigraph; edge `i` is element `i`. Parallel edges are allowed,
/// self-loops are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::input(format!("edge {id} has an endpoint outside 0..{num_vertices}")));
            }
            if u == v {
                return Err(Error::input(format!("edge {id} is a self-loop")));
            }
        }
        Ok(Graph { num_vertices, edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn check_ids(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&e| e >= self.edges.len()) {
            Some(e) => Err(Error::input(format!("unknown edge id {e}"))),
            None => Ok(()),
        }
    }

    /// Matching test for ids already known to be in range.
    pub fn is_matching_unchecked(&self, set: &[usize]) -> bool {
        let mut used = vec![false; self.num_vertices];
        let mut seen = vec![false; self.edges.len()];
        for &e in set {
            if seen[e] {
                return false;
            }
            seen[e] = true;
            let (u, v) = self.edges[e];
            if used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }

    pub fn is_matching(&self, set: &[usize]) -> Result<bool> {
        self.check_ids(set)?;
        Ok(self.is_matching_unchecked(set))
    }

    /// Indicator of `V(set)`.
    pub fn covered(&self, set: &[usize]) -> Vec<bool> {
        let mut used = vec![false; self.num_vertices];
        for &e in set {
            let (u, v) = self.edges[e];
            used[u] = true;
            used[v] = true;
        }
        used
    }

    /// `E / F`: every edge with neither endpoint in `V(F)`.
    pub fn thin_edges(&self, fixed: &[usize]) -> Result<Vec<usize>> {
        if !self.is_matching(fixed)? {
            return Err(Error::input(format!("cannot thin by non-matching {fixed:?}")));
        }
        let used = self.covered(fixed);
        Ok((0..self.edges.len())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                !used[u] && !used[v]
            })
            .collect())
    }

    /// Edges sharing at least one endpoint with `e`, parallel copies included.
    pub fn adjacent(&self, e: usize) -> Vec<usize> {
        let (a, b) = self.edges[e];
        (0..self.edges.len())
            .filter(|&f| {
                let (u, v) = self.edges[f];
                f != e && (u == a || u == b || v == a || v == b)
            })
            .collect()
    }

    pub fn shares_endpoint(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (u, v) = self.edges[f];
        u == a || u == b || v == a || v == b
    }
}

/// Greedy matching restricted to `universe`: repeatedly take the `(cost, id)`
/// cheapest edge disjoint from the current matching, stopping at `cap` edges.
/// Output is sorted by id.
pub fn greedy_matching(g: &Graph, universe: &[usize], cap: usize, cost: &[Rational]) -> Vec<usize> {
    let mut used = vec![false; g.num_vertices()];
    let mut out = Vec::new();
    for e in cost_order(universe, cost) {
        if out.len() >= cap {
            break;
        }
        let (u, v) = g.endpoints(e);
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            out.push(e);
        }
    }
    out.sort_unstable();
    out
}
