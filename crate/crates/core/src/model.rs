//! Instances, solutions, scheme parameters, profit classes and residual
//! instances.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matroid::{relabel, restrict, thin, MatroidRef};
use crate::rational::{self, int, Rational};
use crate::set;

/// Feasibility structure over the element ids.
#[derive(Clone)]
pub enum Constraint {
    Matching(Graph),
    Intersection(MatroidRef, MatroidRef),
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Matching(g) => write!(f, "Matching({} vertices, {} edges)", g.num_vertices(), g.edge_count()),
            Constraint::Intersection(a, b) => write!(f, "Intersection({}, {})", a.kind(), b.kind()),
        }
    }
}

impl Constraint {
    pub fn ground_size(&self) -> usize {
        match self {
            Constraint::Matching(g) => g.edge_count(),
            Constraint::Intersection(a, _) => a.ground_size(),
        }
    }

    /// Membership in `M(C)` for distinct in-range ids.
    pub fn contains(&self, set: &[usize]) -> bool {
        match self {
            Constraint::Matching(g) => g.is_matching_unchecked(set),
            Constraint::Intersection(a, b) => a.is_independent(set) && b.is_independent(set),
        }
    }

    pub fn is_matching(&self) -> bool {
        matches!(self, Constraint::Matching(_))
    }
}

/// A budgeted constrained instance: maximize profit over `M(C)` subject to
/// total cost at most the budget.
#[derive(Debug, Clone)]
pub struct Instance {
    profits: Vec<Rational>,
    costs: Vec<Rational>,
    constraint: Constraint,
    budget: Rational,
}

impl Instance {
    pub fn new(profits: Vec<Rational>, costs: Vec<Rational>, constraint: Constraint, budget: Rational) -> Result<Self> {
        let n = profits.len();
        if costs.len() != n {
            return Err(Error::input("profit and cost vectors differ in length"));
        }
        if constraint.ground_size() != n {
            return Err(Error::input(format!(
                "constraint ground set has {} elements, instance has {n}",
                constraint.ground_size()
            )));
        }
        if let Constraint::Intersection(_, b) = &constraint {
            if b.ground_size() != n {
                return Err(Error::input(format!(
                    "second matroid has {} elements, instance has {n}",
                    b.ground_size()
                )));
            }
        }
        if let Some(e) = (0..n).find(|&e| !rational::is_nonnegative(&profits[e]) || !rational::is_nonnegative(&costs[e])) {
            return Err(Error::input(format!("element {e} has a negative profit or cost")));
        }
        if !rational::is_nonnegative(&budget) {
            return Err(Error::input("budget is negative"));
        }
        Ok(Instance {
            profits,
            costs,
            constraint,
            budget,
        })
    }

    pub fn len(&self) -> usize {
        self.profits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profits.is_empty()
    }

    pub fn profits(&self) -> &[Rational] {
        &self.profits
    }

    pub fn costs(&self) -> &[Rational] {
        &self.costs
    }

    pub fn profit(&self, e: usize) -> &Rational {
        &self.profits[e]
    }

    pub fn cost(&self, e: usize) -> &Rational {
        &self.costs[e]
    }

    pub fn budget(&self) -> &Rational {
        &self.budget
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    pub fn profit_of(&self, set: &[usize]) -> Rational {
        rational::sum(set.iter().map(|&e| &self.profits[e]))
    }

    pub fn cost_of(&self, set: &[usize]) -> Rational {
        rational::sum(set.iter().map(|&e| &self.costs[e]))
    }

    pub fn max_profit(&self) -> Rational {
        self.profits.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// `set ∈ M(C)` and `c(set) ≤ β`, for distinct in-range ids.
    pub fn is_feasible(&self, set: &[usize]) -> bool {
        self.constraint.contains(set) && self.cost_of(set) <= self.budget
    }

    /// Checked feasibility: unknown or repeated ids are input errors.
    pub fn feasible(&self, set: &[usize]) -> Result<bool> {
        let mut seen = vec![false; self.len()];
        for &e in set {
            if e >= self.len() {
                return Err(Error::input(format!("unknown element id {e}")));
            }
            if seen[e] {
                return Err(Error::input(format!("element id {e} listed twice")));
            }
            seen[e] = true;
        }
        Ok(self.is_feasible(set))
    }

    /// Same ground set and constraint with a different budget.
    pub fn with_budget(&self, budget: Rational) -> Result<Self> {
        Instance::new(self.profits.clone(), self.costs.clone(), self.constraint.clone(), budget)
    }
}

/// A set of element ids with cached profit and cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub members: Vec<usize>,
    #[serde(serialize_with = "ser_rat")]
    pub profit: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub cost: Rational,
}

fn ser_rat<S: serde::Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::format(v))
}

impl Solution {
    pub fn empty() -> Self {
        Solution {
            members: Vec::new(),
            profit: Rational::zero(),
            cost: Rational::zero(),
        }
    }

    pub fn of(inst: &Instance, members: Vec<usize>) -> Self {
        let members = set::normalized(members);
        Solution {
            profit: inst.profit_of(&members),
            cost: inst.cost_of(&members),
            members,
        }
    }

    /// `Greater` when `self` is preferred: higher profit, then the
    /// lexicographically smaller sorted id vector.
    pub fn rank_against(&self, other: &Solution) -> Ordering {
        self.profit
            .cmp(&other.profit)
            .then_with(|| other.members.cmp(&self.members))
    }

    pub fn is_better_than(&self, other: &Solution) -> bool {
        self.rank_against(other) == Ordering::Greater
    }

    /// Keeps whichever of the two is preferred.
    pub fn best(self, other: Solution) -> Solution {
        if other.is_better_than(&self) {
            other
        } else {
            self
        }
    }

    /// Recomputes the cached sums and checks feasibility.
    pub fn verify(&self, inst: &Instance) -> Result<()> {
        if !inst.feasible(&self.members)? {
            return Err(Error::Invariant(format!("solution {:?} is infeasible", self.members)));
        }
        if self.profit != inst.profit_of(&self.members) || self.cost != inst.cost_of(&self.members) {
            return Err(Error::Invariant("cached solution totals are stale".into()));
        }
        Ok(())
    }
}

/// Parameters derived from the accuracy `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeParams {
    pub epsilon: Rational,
    /// `⌈ε^(−1/ε)⌉`, exact.
    pub q_nominal: BigUint,
    /// `min(q_nominal, n)`.
    pub q_eff: usize,
    /// Number of greedy matchings, `min(6·q, n)`.
    pub k_eff: usize,
    /// Matching size cap: `min(3·q, ⌊|V|/2⌋ + 1)` for matchings, `min(3·q, n)` otherwise.
    pub n_eff: usize,
    /// `⌊log_{1−ε}(ε/2)⌋ + 1`.
    pub class_count: usize,
}

fn biguint_min(value: &BigUint, cap: usize) -> usize {
    value.to_usize().map_or(cap, |v| v.min(cap))
}

/// Smallest integer `m ≥ 1` with `m ≥ ε^(−1/ε)`, i.e. `m^a · a^b ≥ b^b` for `ε = a/b`.
pub fn q_of(epsilon: &Rational) -> BigUint {
    let a = epsilon.numer().to_biguint().expect("positive epsilon");
    let b = epsilon.denom().to_biguint().expect("positive denominator");
    let a_exp = a.to_u32().expect("epsilon numerator fits u32");
    let b_exp = b.to_u32().expect("epsilon denominator fits u32");
    let target = num_traits::pow(b.clone(), b_exp as usize);
    let scale = num_traits::pow(a.clone(), b_exp as usize);
    let ok = |m: &BigUint| num_traits::pow(m.clone(), a_exp as usize) * &scale >= target;
    let (mut lo, mut hi) = (BigUint::one(), target.clone() + BigUint::one());
    while lo < hi {
        let mid = (&lo + &hi) >> 1;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid + BigUint::one();
        }
    }
    lo
}

/// `⌊log_{1−ε}(ε/2)⌋ + 1`, computed by exact comparison of powers.
pub fn class_count_of(epsilon: &Rational) -> usize {
    let base = Rational::one() - epsilon;
    let floor = epsilon / int(2);
    let mut m = 0;
    let mut power = base.clone();
    while power >= floor {
        m += 1;
        power *= &base;
    }
    m + 1
}

pub fn check_epsilon(epsilon: &Rational) -> Result<()> {
    if *epsilon <= Rational::zero() || *epsilon > rational::ratio(1, 2) {
        return Err(Error::input(format!(
            "epsilon must lie in (0, 1/2], got {}",
            rational::format(epsilon)
        )));
    }
    if epsilon.denom().bits() > 32 {
        return Err(Error::input("epsilon denominator is too large"));
    }
    Ok(())
}

pub fn scheme_params(inst: &Instance, epsilon: &Rational) -> Result<SchemeParams> {
    check_epsilon(epsilon)?;
    let n = inst.len();
    let q_nominal = q_of(epsilon);
    let three_q = &q_nominal * 3u32;
    let n_bound = match inst.constraint() {
        Constraint::Matching(g) => g.num_vertices() / 2 + 1,
        Constraint::Intersection(..) => n,
    };
    Ok(SchemeParams {
        epsilon: epsilon.clone(),
        q_eff: biguint_min(&q_nominal, n),
        k_eff: biguint_min(&(&q_nominal * 6u32), n).max(1),
        n_eff: biguint_min(&three_q, n_bound).max(1),
        class_count: class_count_of(epsilon),
        q_nominal,
    })
}

/// Partition of the profitable elements into geometric profit classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfitClassing {
    pub alpha: Rational,
    /// `classes[r - 1]` is class `r`, sorted by id.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<Option<usize>>,
}

impl ProfitClassing {
    /// Class `r` (1-based).
    pub fn class(&self, r: usize) -> &[usize] {
        &self.classes[r - 1]
    }

    pub fn nonempty(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.classes.len()).filter(|&r| !self.classes[r - 1].is_empty())
    }
}

/// Element `e` is in class `r` iff `(1−ε)^r < p(e)/(2α) ≤ (1−ε)^(r−1)`.
pub fn profit_classes(inst: &Instance, params: &SchemeParams, alpha: &Rational) -> Result<ProfitClassing> {
    if alpha.is_zero() {
        return Err(Error::DegenerateAlpha);
    }
    if *alpha < Rational::zero() {
        return Err(Error::input("alpha must be positive"));
    }
    let base = Rational::one() - &params.epsilon;
    let mut bounds = Vec::with_capacity(params.class_count + 1);
    bounds.push(Rational::one());
    for r in 1..=params.class_count {
        bounds.push(&bounds[r - 1] * &base);
    }
    let two_alpha = alpha * int(2);
    let mut classes = vec![Vec::new(); params.class_count];
    let mut class_of = vec![None; inst.len()];
    for (e, slot) in class_of.iter_mut().enumerate() {
        let t = inst.profit(e) / &two_alpha;
        if let Some(r) = (1..=params.class_count).find(|&r| bounds[r] < t && t <= bounds[r - 1]) {
            classes[r - 1].push(e);
            *slot = Some(r);
        }
    }
    Ok(ProfitClassing {
        alpha: alpha.clone(),
        classes,
        class_of,
    })
}

/// A derived instance together with the id map back to its parent.
#[derive(Debug, Clone)]
pub struct SubInstance {
    pub instance: Instance,
    /// New id `j` is parent id `map[j]`.
    pub map: Vec<usize>,
}

impl SubInstance {
    pub fn lift(&self, set: &[usize]) -> Vec<usize> {
        set::normalized(set.iter().map(|&j| self.map[j]).collect())
    }
}

/// Thins `inst` by the feasible set `fixed` and keeps only the elements that
/// pass `keep`. The budget drops by `c(fixed)`.
pub fn contract(inst: &Instance, fixed: &[usize], keep: impl Fn(usize) -> bool) -> Result<SubInstance> {
    if !inst.feasible(fixed)? {
        return Err(Error::input(format!("{fixed:?} is not a feasible set")));
    }
    let fixed_cost = inst.cost_of(fixed);
    let budget = inst.budget() - &fixed_cost;
    let (map, constraint) = match inst.constraint() {
        Constraint::Matching(g) => {
            let map: Vec<usize> = g.thin_edges(fixed)?.into_iter().filter(|&e| keep(e)).collect();
            let edges = map.iter().map(|&e| g.endpoints(e)).collect();
            (map, Constraint::Matching(Graph::new(g.num_vertices(), edges)?))
        }
        Constraint::Intersection(a, b) => {
            let map: Vec<usize> = (0..inst.len()).filter(|&e| !set::contains(fixed, e) && keep(e)).collect();
            let derive = |m: &MatroidRef| -> Result<MatroidRef> { relabel(&thin(m, fixed)?, map.clone()) };
            let (a2, b2) = (derive(a)?, derive(b)?);
            (map, Constraint::Intersection(a2, b2))
        }
    };
    let profits = map.iter().map(|&e| inst.profit(e).clone()).collect();
    let costs = map.iter().map(|&e| inst.cost(e).clone()).collect();
    Ok(SubInstance {
        instance: Instance::new(profits, costs, constraint, budget)?,
        map,
    })
}

/// Residual instance of `fixed` and `α`: thinning by `fixed`, restricted to
/// `E(α) = {e : p(e) ≤ 2εα}`, budget `β − c(fixed)`.
pub fn residual(inst: &Instance, epsilon: &Rational, alpha: &Rational, fixed: &[usize]) -> Result<SubInstance> {
    let cap = epsilon * alpha * int(2);
    contract(inst, fixed, |e| *inst.profit(e) <= cap)
}

/// Restriction of `inst` to the elements in `keep`, same budget.
pub fn restrict_instance(inst: &Instance, keep: &[usize]) -> Result<SubInstance> {
    let keep = set::normalized(keep.to_vec());
    let constraint = match inst.constraint() {
        Constraint::Matching(g) => Constraint::Matching(Graph::new(
            g.num_vertices(),
            keep.iter().map(|&e| g.endpoints(e)).collect(),
        )?),
        Constraint::Intersection(a, b) => Constraint::Intersection(
            relabel(&restrict(a, &keep), keep.clone())?,
            relabel(&restrict(b, &keep), keep.clone())?,
        ),
    };
    let profits = keep.iter().map(|&e| inst.profit(e).clone()).collect();
    let costs = keep.iter().map(|&e| inst.cost(e).clone()).collect();
    Ok(SubInstance {
        instance: Instance::new(profits, costs, constraint, inst.budget().clone())?,
        map: keep,
    })
}
