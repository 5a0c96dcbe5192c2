//! Independence oracles, the restriction / thinning / truncation combinators,
//! and greedy minimum-cost bases.
//!
//! Every oracle answers queries over the id space `0..ground_size()`. Combinators
//! keep that id space and shrink the ground set instead, so a set containing an
//! element outside the ground set is simply dependent. [`Relabel`] is the one
//! wrapper that changes the id space; residual instances use it to hand a
//! compact, contiguous ground set to downstream solvers.

mod axioms;
mod concrete;
mod spec;

pub use axioms::{axiom_check, AxiomReport, AxiomViolation, CheckMode};
pub use concrete::{Explicit, Field, Graphic, Linear, Partition, Uniform, EXPLICIT_MAX_GROUND};
pub use spec::MatroidSpec;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Membership oracle for the independent sets of a matroid.
pub trait Matroid: Send + Sync + fmt::Debug {
    /// Size of the id space; queried sets use ids below this bound.
    fn ground_size(&self) -> usize;

    /// Whether `e` belongs to the ground set of this (possibly derived) matroid.
    fn in_ground(&self, e: usize) -> bool {
        e < self.ground_size()
    }

    /// `set` must hold distinct ids. Ids outside the ground set make it dependent.
    fn is_independent(&self, set: &[usize]) -> bool;

    /// Short tag for diagnostics.
    fn kind(&self) -> String;

    fn ground(&self) -> Vec<usize> {
        (0..self.ground_size()).filter(|&e| self.in_ground(e)).collect()
    }
}

pub type MatroidRef = Arc<dyn Matroid>;

/// `M ∩ F`: independent sets of `M` contained in `F`.
#[derive(Debug)]
pub struct Restriction {
    inner: MatroidRef,
    support: Vec<bool>,
}

impl Matroid for Restriction {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn in_ground(&self, e: usize) -> bool {
        self.support.get(e).copied().unwrap_or(false) && self.inner.in_ground(e)
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().all(|&e| self.in_ground(e)) && self.inner.is_independent(set)
    }
    fn kind(&self) -> String {
        format!("restrict({})", self.inner.kind())
    }
}

/// `M / F`: sets `A` disjoint from `F` with `A ∪ F` independent.
#[derive(Debug)]
pub struct Thinning {
    inner: MatroidRef,
    fixed: Vec<usize>,
    fixed_mask: Vec<bool>,
}

impl Matroid for Thinning {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn in_ground(&self, e: usize) -> bool {
        self.inner.in_ground(e) && !self.fixed_mask[e]
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        if !set.iter().all(|&e| self.in_ground(e)) {
            return false;
        }
        let mut joined = Vec::with_capacity(set.len() + self.fixed.len());
        joined.extend_from_slice(set);
        joined.extend_from_slice(&self.fixed);
        self.inner.is_independent(&joined)
    }
    fn kind(&self) -> String {
        format!("thin({})", self.inner.kind())
    }
}

/// `[M]_{≤q}`: independent sets of `M` with at most `q` elements.
#[derive(Debug)]
pub struct Truncation {
    inner: MatroidRef,
    cap: usize,
}

impl Matroid for Truncation {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn in_ground(&self, e: usize) -> bool {
        self.inner.in_ground(e)
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        set.len() <= self.cap && self.inner.is_independent(set)
    }
    fn kind(&self) -> String {
        format!("truncate({}, {})", self.inner.kind(), self.cap)
    }
}

/// Renames ids: new id `j` stands for old id `map[j]`.
#[derive(Debug)]
pub struct Relabel {
    inner: MatroidRef,
    map: Vec<usize>,
}

impl Matroid for Relabel {
    fn ground_size(&self) -> usize {
        self.map.len()
    }
    fn in_ground(&self, e: usize) -> bool {
        self.map.get(e).is_some_and(|&old| self.inner.in_ground(old))
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        if set.iter().any(|&e| e >= self.map.len()) {
            return false;
        }
        let old: Vec<usize> = set.iter().map(|&e| self.map[e]).collect();
        self.inner.is_independent(&old)
    }
    fn kind(&self) -> String {
        format!("relabel({})", self.inner.kind())
    }
}

pub fn restrict(m: &MatroidRef, support: &[usize]) -> MatroidRef {
    let mut mask = vec![false; m.ground_size()];
    for &e in support {
        if e < mask.len() {
            mask[e] = true;
        }
    }
    Arc::new(Restriction {
        inner: Arc::clone(m),
        support: mask,
    })
}

pub fn thin(m: &MatroidRef, fixed: &[usize]) -> Result<MatroidRef> {
    if !m.is_independent(fixed) {
        return Err(Error::input(format!(
            "cannot thin {} by dependent set {fixed:?}",
            m.kind()
        )));
    }
    let mut mask = vec![false; m.ground_size()];
    for &e in fixed {
        mask[e] = true;
    }
    Ok(Arc::new(Thinning {
        inner: Arc::clone(m),
        fixed: fixed.to_vec(),
        fixed_mask: mask,
    }))
}

pub fn truncate(m: &MatroidRef, cap: usize) -> MatroidRef {
    Arc::new(Truncation {
        inner: Arc::clone(m),
        cap,
    })
}

pub fn relabel(m: &MatroidRef, map: Vec<usize>) -> Result<MatroidRef> {
    if let Some(&bad) = map.iter().find(|&&e| e >= m.ground_size()) {
        return Err(Error::input(format!("relabel target {bad} out of range")));
    }
    Ok(Arc::new(Relabel {
        inner: Arc::clone(m),
        map,
    }))
}

/// Elements of `universe` in ascending `(cost, id)` order.
pub fn cost_order(universe: &[usize], cost: &[Rational]) -> Vec<usize> {
    let mut order = universe.to_vec();
    order.sort_by(|&a, &b| cost[a].cmp(&cost[b]).then(a.cmp(&b)));
    order
}

/// Greedy minimum-cost basis, scanning the ground set in `(cost, id)` order.
pub fn min_cost_basis(m: &dyn Matroid, cost: &[Rational]) -> Vec<usize> {
    greedy_basis(m, &m.ground(), cost, usize::MAX)
}

/// Minimum-cost basis of `[M ∩ universe]_{≤cap}` without materializing the
/// combinators. Output is sorted by id.
pub fn greedy_basis(m: &dyn Matroid, universe: &[usize], cost: &[Rational], cap: usize) -> Vec<usize> {
    let mut basis: Vec<usize> = Vec::new();
    for e in cost_order(universe, cost) {
        if basis.len() >= cap {
            break;
        }
        if !m.in_ground(e) {
            continue;
        }
        basis.push(e);
        if !m.is_independent(&basis) {
            basis.pop();
        }
    }
    basis.sort_unstable();
    basis
}
