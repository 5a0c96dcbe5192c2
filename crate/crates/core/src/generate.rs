//! Seeded random instance generators.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{ConstraintDoc, EdgeDoc, ElementDoc, InstanceDoc};
use crate::matroid::{Explicit, Field, Linear, MatroidSpec};
use crate::rational::{self, int, RatStr, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatroidKind {
    Uniform,
    Partition,
    Graphic,
    /// Snapshot of a random matroid representable over GF(3).
    Explicit,
}

impl std::str::FromStr for MatroidKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(MatroidKind::Uniform),
            "partition" => Ok(MatroidKind::Partition),
            "graphic" => Ok(MatroidKind::Graphic),
            "explicit" => Ok(MatroidKind::Explicit),
            other => Err(Error::input(format!("unknown matroid kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    RandomBm {
        vertices: usize,
        edge_prob: RatStr,
        /// Edges beyond this count are dropped, keeping the first sampled.
        max_edges: Option<usize>,
        profit_range: (u32, u32),
        cost_range: (u32, u32),
        budget_fraction: RatStr,
    },
    RandomBi {
        kinds: [MatroidKind; 2],
        n: usize,
        profit_range: (u32, u32),
        cost_range: (u32, u32),
        budget_fraction: RatStr,
    },
}

fn check_range(name: &str, (lo, hi): (u32, u32)) -> Result<()> {
    if lo > hi {
        return Err(Error::input(format!("{name} range [{lo}, {hi}] is empty")));
    }
    Ok(())
}

fn unit_interval(name: &str, v: &Rational) -> Result<()> {
    if *v < Rational::zero() || *v > Rational::one() {
        return Err(Error::input(format!("{name} must lie in [0, 1]")));
    }
    Ok(())
}

/// Bernoulli trial with an exact rational probability.
fn coin(rng: &mut ChaCha8Rng, p: &Rational) -> bool {
    use num_traits::ToPrimitive;
    let (num, den) = (p.numer().to_u64(), p.denom().to_u64());
    match (num, den) {
        (Some(num), Some(den)) => rng.gen_range(0..den) < num,
        _ => *p >= Rational::one(),
    }
}

fn elements(rng: &mut ChaCha8Rng, n: usize, profit: (u32, u32), cost: (u32, u32)) -> Vec<ElementDoc> {
    (0..n)
        .map(|id| ElementDoc {
            id,
            profit: RatStr(int(rng.gen_range(profit.0..=profit.1) as i64)),
            cost: RatStr(int(rng.gen_range(cost.0..=cost.1) as i64)),
        })
        .collect()
}

fn budget(elements: &[ElementDoc], fraction: &Rational) -> RatStr {
    RatStr(rational::sum(elements.iter().map(|e| &e.cost.0)) * fraction)
}

fn random_matroid(rng: &mut ChaCha8Rng, kind: MatroidKind, n: usize) -> Result<MatroidSpec> {
    Ok(match kind {
        MatroidKind::Uniform => MatroidSpec::Uniform {
            rank: rng.gen_range(1..=n.max(1)),
        },
        MatroidKind::Partition => {
            let count = rng.gen_range(1..=n.clamp(1, 4));
            let mut blocks = vec![Vec::new(); count];
            for e in 0..n {
                blocks[rng.gen_range(0..count)].push(e);
            }
            let capacities = (0..count).map(|_| rng.gen_range(1..=2)).collect();
            MatroidSpec::Partition { blocks, capacities }
        }
        MatroidKind::Graphic => {
            let vertices = rng.gen_range(2..=(n / 2 + 2).max(3));
            let edges = (0..n)
                .map(|_| {
                    let u = rng.gen_range(0..vertices);
                    (u, (u + rng.gen_range(1..vertices)) % vertices)
                })
                .collect();
            MatroidSpec::Graphic { vertices, edges }
        }
        MatroidKind::Explicit => {
            let rows = rng.gen_range(1..=n.clamp(1, 4));
            let columns: Vec<Vec<Rational>> =
                (0..n).map(|_| (0..rows).map(|_| int(rng.gen_range(0..3))).collect()).collect();
            let linear = Linear::new(Field::Prime(3), columns)?;
            MatroidSpec::Explicit {
                maximal_independent_sets: Explicit::from_oracle(&linear)?.maximal_sets(),
            }
        }
    })
}

/// Deterministic instance for `spec` and `seed`.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<InstanceDoc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match spec {
        GeneratorSpec::RandomBm {
            vertices,
            edge_prob,
            max_edges,
            profit_range,
            cost_range,
            budget_fraction,
        } => {
            check_range("profit", *profit_range)?;
            check_range("cost", *cost_range)?;
            unit_interval("edge_prob", &edge_prob.0)?;
            unit_interval("budget_fraction", &budget_fraction.0)?;
            let mut pairs = Vec::new();
            for u in 0..*vertices {
                for v in u + 1..*vertices {
                    if coin(&mut rng, &edge_prob.0) {
                        pairs.push((u, v));
                    }
                }
            }
            pairs.shuffle(&mut rng);
            if let Some(cap) = max_edges {
                pairs.truncate(*cap);
            }
            let elements = elements(&mut rng, pairs.len(), *profit_range, *cost_range);
            let edges = pairs
                .into_iter()
                .enumerate()
                .map(|(id, (u, v))| EdgeDoc { id, u, v })
                .collect();
            Ok(InstanceDoc {
                budget: budget(&elements, &budget_fraction.0),
                elements,
                constraint: ConstraintDoc::Matching {
                    vertices: *vertices,
                    edges,
                },
            })
        }
        GeneratorSpec::RandomBi {
            kinds,
            n,
            profit_range,
            cost_range,
            budget_fraction,
        } => {
            check_range("profit", *profit_range)?;
            check_range("cost", *cost_range)?;
            unit_interval("budget_fraction", &budget_fraction.0)?;
            if kinds.contains(&MatroidKind::Explicit) && *n > crate::matroid::EXPLICIT_MAX_GROUND {
                return Err(Error::input("explicit matroids are limited to 20 elements"));
            }
            let a = random_matroid(&mut rng, kinds[0], *n)?;
            let b = random_matroid(&mut rng, kinds[1], *n)?;
            let elements = elements(&mut rng, *n, *profit_range, *cost_range);
            Ok(InstanceDoc {
                budget: budget(&elements, &budget_fraction.0),
                elements,
                constraint: ConstraintDoc::MatroidIntersection { matroids: [a, b] },
            })
        }
    }
}

/// Seeds and sizes of the standard desk-scale corpus.
pub const CORPUS_BM: u64 = 300;
pub const CORPUS_BI: u64 = 150;

/// Generator spec for member `seed` of the matching half of the corpus:
/// at most 8 vertices, 14 edges and integer weights up to 20.
pub fn corpus_bm_spec(seed: u64) -> GeneratorSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb0b0);
    GeneratorSpec::RandomBm {
        vertices: rng.gen_range(5..=8),
        edge_prob: RatStr(rational::ratio(rng.gen_range(2..=4), 4)),
        max_edges: Some(14),
        profit_range: (0, 20),
        cost_range: (0, 20),
        budget_fraction: RatStr(rational::ratio(rng.gen_range(1..=3), 10)),
    }
}

/// Generator spec for member `seed` of the intersection half of the corpus.
pub fn corpus_bi_spec(seed: u64) -> GeneratorSpec {
    use MatroidKind::*;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb1b1);
    let kinds = [Uniform, Partition, Graphic, Explicit];
    GeneratorSpec::RandomBi {
        kinds: [*kinds.choose(&mut rng).unwrap(), *kinds.choose(&mut rng).unwrap()],
        n: rng.gen_range(5..=10),
        profit_range: (0, 20),
        cost_range: (0, 20),
        budget_fraction: RatStr(rational::ratio(rng.gen_range(1..=3), 10)),
    }
}

/// The standard corpus as `(name, document)` pairs, matching half first.
pub fn standard_corpus() -> Result<Vec<(String, InstanceDoc)>> {
    let bm = (0..CORPUS_BM).map(|s| Ok((format!("bm-{s:03}"), generate(&corpus_bm_spec(s), s)?)));
    let bi = (0..CORPUS_BI).map(|s| Ok((format!("bi-{s:03}"), generate(&corpus_bi_spec(s), s)?)));
    bm.chain(bi).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn bm(prob: Rational) -> GeneratorSpec {
        GeneratorSpec::RandomBm {
            vertices: 6,
            edge_prob: RatStr(prob),
            max_edges: None,
            profit_range: (0, 20),
            cost_range: (0, 20),
            budget_fraction: RatStr(ratio(1, 3)),
        }
    }

    #[test]
    fn same_seed_same_bytes() {
        let spec = bm(ratio(1, 2));
        assert_eq!(generate(&spec, 42).unwrap().to_json(), generate(&spec, 42).unwrap().to_json());
        assert_ne!(generate(&spec, 42).unwrap().to_json(), generate(&spec, 43).unwrap().to_json());
    }

    #[test]
    fn zero_probability_is_edgeless() {
        let doc = generate(&bm(Rational::zero()), 7).unwrap();
        assert!(doc.elements.is_empty());
        assert!(doc.build().unwrap().is_empty());
    }

    #[test]
    fn every_kind_builds() {
        use MatroidKind::*;
        for (i, kinds) in [[Uniform, Partition], [Graphic, Explicit], [Explicit, Explicit]].into_iter().enumerate() {
            let spec = GeneratorSpec::RandomBi {
                kinds,
                n: 8,
                profit_range: (1, 9),
                cost_range: (1, 9),
                budget_fraction: RatStr(ratio(1, 2)),
            };
            let inst = generate(&spec, i as u64).unwrap().build().unwrap();
            assert_eq!(inst.len(), 8);
        }
    }

    #[test]
    fn rejects_bad_ranges() {
        let mut spec = bm(ratio(3, 2));
        assert!(generate(&spec, 0).is_err());
        if let GeneratorSpec::RandomBm { edge_prob, profit_range, .. } = &mut spec {
            *edge_prob = RatStr(ratio(1, 2));
            *profit_range = (5, 1);
        }
        assert!(generate(&spec, 0).is_err());
    }
}
