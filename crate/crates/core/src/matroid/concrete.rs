use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Matroid;
use crate::error::{Error, Result};
use crate::rational::Rational;

fn distinct_in_range(set: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &e in set {
        if e >= n || seen[e] {
            return false;
        }
        seen[e] = true;
    }
    true
}

/// Every set of at most `rank` elements is independent.
#[derive(Debug, Clone)]
pub struct Uniform {
    n: usize,
    rank: usize,
}

impl Uniform {
    pub fn new(n: usize, rank: usize) -> Self {
        Uniform { n, rank }
    }
}

impl Matroid for Uniform {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        set.len() <= self.rank && distinct_in_range(set, self.n)
    }
    fn kind(&self) -> String {
        format!("uniform(n={}, rank={})", self.n, self.rank)
    }
}

/// At most `capacities[b]` elements from block `b`. Elements listed in no block
/// are unconstrained.
#[derive(Debug, Clone)]
pub struct Partition {
    n: usize,
    block_of: Vec<Option<usize>>,
    capacities: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>, capacities: Vec<usize>) -> Result<Self> {
        if blocks.len() != capacities.len() {
            return Err(Error::input("partition blocks and capacities differ in length"));
        }
        let mut block_of = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n {
                    return Err(Error::input(format!("partition element {e} out of range")));
                }
                if block_of[e].is_some() {
                    return Err(Error::input(format!("element {e} appears in two blocks")));
                }
                block_of[e] = Some(b);
            }
        }
        Ok(Partition {
            n,
            block_of,
            capacities,
        })
    }
}

impl Matroid for Partition {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        if !distinct_in_range(set, self.n) {
            return false;
        }
        let mut used = vec![0usize; self.capacities.len()];
        for &e in set {
            if let Some(b) = self.block_of[e] {
                used[b] += 1;
                if used[b] > self.capacities[b] {
                    return false;
                }
            }
        }
        true
    }
    fn kind(&self) -> String {
        format!("partition(n={}, blocks={})", self.n, self.capacities.len())
    }
}

/// Cycle matroid of a multigraph: element `i` is edge `edges[i]`; independent
/// sets are forests. A self-loop is a dependent singleton.
#[derive(Debug, Clone)]
pub struct Graphic {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graphic {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        Graphic { vertices, edges }
    }

    pub fn try_new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::input(format!("graphic edge ({u},{v}) out of range")));
        }
        Ok(Graphic { vertices, edges })
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Matroid for Graphic {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        if !distinct_in_range(set, self.edges.len()) {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        for &e in set {
            let (u, v) = self.edges[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
        true
    }
    fn kind(&self) -> String {
        format!("graphic(v={}, e={})", self.vertices, self.edges.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Clone)]
enum Columns {
    /// Each rational column scaled to a primitive integer vector.
    Integer(Vec<Vec<BigInt>>),
    Modular(u64, Vec<Vec<u64>>),
}

/// Column matroid of a matrix: a set is independent when its columns are
/// linearly independent. Rank is decided exactly: Bareiss elimination over the
/// integers for `Q`, plain elimination for `GF(p)`.
#[derive(Debug, Clone)]
pub struct Linear {
    rows: usize,
    columns: Columns,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Linear {
    pub fn new(field: Field, columns: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::input("linear matroid columns differ in length"));
        }
        let columns = match field {
            Field::Rationals => Columns::Integer(
                columns
                    .into_iter()
                    .map(|col| {
                        let lcm = col.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                        col.iter()
                            .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
                            .collect()
                    })
                    .collect(),
            ),
            Field::Prime(p) => {
                if !is_prime(p) || p > u32::MAX as u64 {
                    return Err(Error::input(format!("GF({p}) needs a prime below 2^32")));
                }
                let modulus = BigInt::from(p);
                let mut out = Vec::with_capacity(columns.len());
                for col in columns {
                    let mut entries = Vec::with_capacity(rows);
                    for x in col {
                        if !x.is_integer() {
                            return Err(Error::input("GF(p) entries must be integers"));
                        }
                        let r = x.to_integer().mod_floor(&modulus);
                        entries.push(r.to_u64().expect("reduced below p"));
                    }
                    out.push(entries);
                }
                Columns::Modular(p, out)
            }
        };
        Ok(Linear { rows, columns })
    }

    fn column_count(&self) -> usize {
        match &self.columns {
            Columns::Integer(c) => c.len(),
            Columns::Modular(_, c) => c.len(),
        }
    }

    /// Rank of the chosen columns.
    pub fn rank_of(&self, set: &[usize]) -> usize {
        match &self.columns {
            Columns::Integer(cols) => bareiss_rank(set.iter().map(|&e| cols[e].clone()).collect(), self.rows),
            Columns::Modular(p, cols) => modular_rank(set.iter().map(|&e| cols[e].clone()).collect(), self.rows, *p),
        }
    }
}

/// Fraction-free elimination; every intermediate stays an exact integer.
fn bareiss_rank(mut cols: Vec<Vec<BigInt>>, rows: usize) -> usize {
    let k = cols.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for row in 0..rows {
        if rank == k {
            break;
        }
        let Some(pivot) = (rank..k).find(|&c| !cols[c][row].is_zero()) else {
            continue;
        };
        cols.swap(rank, pivot);
        for c in rank + 1..k {
            for r in 0..rows {
                if r == row {
                    continue;
                }
                let v = &cols[rank][row] * &cols[c][r] - &cols[c][row] * &cols[rank][r];
                cols[c][r] = v / &prev;
            }
            cols[c][row] = BigInt::zero();
        }
        prev = cols[rank][row].clone();
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn modular_rank(mut cols: Vec<Vec<u64>>, rows: usize, p: u64) -> usize {
    let k = cols.len();
    let mut rank = 0;
    for row in 0..rows {
        if rank == k {
            break;
        }
        let Some(pivot) = (rank..k).find(|&c| cols[c][row] != 0) else {
            continue;
        };
        cols.swap(rank, pivot);
        let inv = pow_mod(cols[rank][row], p - 2, p);
        let pivot = cols[rank].clone();
        for col in cols.iter_mut().skip(rank + 1) {
            let factor = col[row] * inv % p;
            if factor == 0 {
                continue;
            }
            for (v, &w) in col.iter_mut().zip(&pivot).take(rows) {
                *v = (*v + p - factor * w % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

impl Matroid for Linear {
    fn ground_size(&self) -> usize {
        self.column_count()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        if !distinct_in_range(set, self.column_count()) {
            return false;
        }
        set.len() <= self.rows && self.rank_of(set) == set.len()
    }
    fn kind(&self) -> String {
        let field = match &self.columns {
            Columns::Integer(_) => "Q".to_string(),
            Columns::Modular(p, _) => format!("GF({p})"),
        };
        format!("linear({field}, {}x{})", self.rows, self.column_count())
    }
}

/// Maximum ground size for [`Explicit`] tables.
pub const EXPLICIT_MAX_GROUND: usize = 20;

/// An explicitly listed family of independent sets, stored as bitmasks.
///
/// [`Explicit::from_maximal`] takes the downward closure of the listed sets;
/// [`Explicit::from_table`] stores the family verbatim, which may violate the
/// matroid axioms and is how the axiom checker is exercised.
#[derive(Debug, Clone)]
pub struct Explicit {
    n: usize,
    family: HashSet<u32>,
}

fn to_mask(n: usize, set: &[usize]) -> Result<u32> {
    if n > EXPLICIT_MAX_GROUND {
        return Err(Error::input(format!(
            "explicit matroids support at most {EXPLICIT_MAX_GROUND} elements, got {n}"
        )));
    }
    let mut mask = 0u32;
    for &e in set {
        if e >= n {
            return Err(Error::input(format!("explicit element {e} out of range")));
        }
        mask |= 1 << e;
    }
    Ok(mask)
}

impl Explicit {
    pub fn from_maximal(n: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        to_mask(n, &[])?;
        let mut family = HashSet::new();
        family.insert(0);
        for set in maximal {
            let top = to_mask(n, set)?;
            // enumerate all submasks of `top`
            let mut sub = top;
            loop {
                family.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & top;
            }
        }
        Ok(Explicit { n, family })
    }

    pub fn from_table(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        to_mask(n, &[])?;
        let family = sets.iter().map(|s| to_mask(n, s)).collect::<Result<_>>()?;
        Ok(Explicit { n, family })
    }

    /// Snapshot of any oracle over at most [`EXPLICIT_MAX_GROUND`] ids.
    pub fn from_oracle(m: &dyn Matroid) -> Result<Self> {
        let n = m.ground_size();
        to_mask(n, &[])?;
        let mut family = HashSet::new();
        for mask in 0u32..(1u32 << n) {
            let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if m.is_independent(&set) {
                family.insert(mask);
            }
        }
        Ok(Explicit { n, family })
    }

    /// Inclusion-maximal members of the family, each sorted, in mask order.
    pub fn maximal_sets(&self) -> Vec<Vec<usize>> {
        let mut masks: Vec<u32> = self
            .family
            .iter()
            .copied()
            .filter(|&m| (0..self.n).all(|i| m >> i & 1 == 1 || !self.family.contains(&(m | 1 << i))))
            .collect();
        masks.sort_unstable();
        masks
            .into_iter()
            .map(|m| (0..self.n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }
}

impl Matroid for Explicit {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        if !distinct_in_range(set, self.n) {
            return false;
        }
        let mask = set.iter().fold(0u32, |m, &e| m | 1 << e);
        self.family.contains(&mask)
    }
    fn kind(&self) -> String {
        format!("explicit(n={}, sets={})", self.n, self.family.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn uniform_rejects_duplicates_and_range() {
        let u = Uniform::new(3, 2);
        assert!(u.is_independent(&[0, 2]));
        assert!(!u.is_independent(&[0, 0]));
        assert!(!u.is_independent(&[3]));
        assert!(!u.is_independent(&[0, 1, 2]));
    }

    #[test]
    fn partition_caps_blocks() {
        let p = Partition::new(4, vec![vec![0, 1], vec![2]], vec![1, 1]).unwrap();
        assert!(p.is_independent(&[0, 2, 3]));
        assert!(!p.is_independent(&[0, 1]));
        assert!(Partition::new(2, vec![vec![0], vec![0]], vec![1, 1]).is_err());
    }

    #[test]
    fn graphic_detects_cycles_and_loops() {
        let g = Graphic::new(3, vec![(0, 1), (1, 2), (0, 2), (1, 1), (0, 1)]);
        assert!(g.is_independent(&[0, 1]));
        assert!(!g.is_independent(&[0, 1, 2]));
        assert!(!g.is_independent(&[3]));
        assert!(!g.is_independent(&[0, 4]));
    }

    #[test]
    fn linear_over_rationals() {
        let cols = vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![crate::rational::ratio(1, 2), crate::rational::ratio(1, 2)],
            vec![int(2), int(0)],
        ];
        let m = Linear::new(Field::Rationals, cols).unwrap();
        assert!(m.is_independent(&[0, 1]));
        assert!(m.is_independent(&[0, 2]));
        assert!(!m.is_independent(&[0, 3]));
        assert!(!m.is_independent(&[0, 1, 2]));
        assert_eq!(m.rank_of(&[0, 1, 2, 3]), 2);
    }

    #[test]
    fn bareiss_handles_larger_ranks() {
        // Vandermonde-like columns (1, x, x^2) for distinct x are independent in threes.
        let cols: Vec<Vec<Rational>> = (1..=5).map(|x| vec![int(1), int(x), int(x * x)]).collect();
        let m = Linear::new(Field::Rationals, cols).unwrap();
        assert!(m.is_independent(&[0, 2, 4]));
        assert!(m.is_independent(&[1, 2, 3]));
        assert_eq!(m.rank_of(&[0, 1, 2, 3, 4]), 3);
        let dependent = Linear::new(
            Field::Rationals,
            vec![
                vec![int(1), int(2), int(3)],
                vec![int(4), int(5), int(6)],
                vec![int(7), int(8), int(9)],
            ],
        )
        .unwrap();
        assert_eq!(dependent.rank_of(&[0, 1, 2]), 2);
    }

    #[test]
    fn linear_over_gf2() {
        let cols = vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(1)],
        ];
        let m = Linear::new(Field::Prime(2), cols).unwrap();
        assert!(m.is_independent(&[0, 1]));
        assert!(m.is_independent(&[1, 2]));
        assert!(!m.is_independent(&[0, 1, 2]));
        assert!(Linear::new(Field::Prime(4), vec![]).is_err());
    }

    #[test]
    fn explicit_closure_and_table() {
        let e = Explicit::from_maximal(3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(e.is_independent(&[1]));
        assert!(e.is_independent(&[0, 1]));
        assert!(!e.is_independent(&[0, 2]));
        assert_eq!(e.maximal_sets(), vec![vec![0, 1], vec![2]]);

        let t = Explicit::from_table(2, &[vec![], vec![0], vec![0, 1]]).unwrap();
        assert!(!t.is_independent(&[1]));
        assert!(t.is_independent(&[0, 1]));
        assert!(Explicit::from_table(21, &[]).is_err());
    }
}
