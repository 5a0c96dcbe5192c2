use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Matroid;

/// Ground sets up to this size are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    EmptyDependent,
    /// `set` is independent but `set - removed` is not.
    Hereditary { set: Vec<usize>, removed: usize },
    /// `|smaller| < |larger|`, both independent, and no element of
    /// `larger \ smaller` extends `smaller`.
    Exchange { smaller: Vec<usize>, larger: Vec<usize> },
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub mode: CheckMode,
    pub sets_checked: u64,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the matroid axioms. Ground sets of at most [`EXHAUSTIVE_LIMIT`]
/// elements are checked completely; larger ones on `samples` random pairs of
/// independent sets drawn with `seed`.
pub fn axiom_check(m: &dyn Matroid, samples: usize, seed: u64) -> AxiomReport {
    let ground = m.ground();
    if !m.is_independent(&[]) {
        return AxiomReport {
            mode: if ground.len() <= EXHAUSTIVE_LIMIT { CheckMode::Exhaustive } else { CheckMode::Sampled },
            sets_checked: 1,
            violation: Some(AxiomViolation::EmptyDependent),
        };
    }
    if ground.len() <= EXHAUSTIVE_LIMIT {
        exhaustive(m, &ground)
    } else {
        sampled(m, &ground, samples, seed)
    }
}

fn members(ground: &[usize], mask: u32) -> Vec<usize> {
    ground
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

/// With the hereditary axiom established, the exchange axiom is equivalent to
/// `rank(closure(A)) = |A|` for every independent `A`: a larger independent set
/// inside the closure is exactly an exchange counterexample.
fn exhaustive(m: &dyn Matroid, ground: &[usize]) -> AxiomReport {
    let g = ground.len();
    let full = 1usize << g;
    let indep: Vec<bool> = (0..full).map(|mask| m.is_independent(&members(ground, mask as u32))).collect();
    let report = |violation| AxiomReport {
        mode: CheckMode::Exhaustive,
        sets_checked: full as u64,
        violation,
    };

    for mask in 0..full {
        if !indep[mask] {
            continue;
        }
        for i in 0..g {
            if mask >> i & 1 == 1 && !indep[mask & !(1 << i)] {
                return report(Some(AxiomViolation::Hereditary {
                    set: members(ground, mask as u32),
                    removed: ground[i],
                }));
            }
        }
    }

    // rank[X] = size of the largest independent subset of X
    let mut rank = vec![0u8; full];
    for mask in 1..full {
        rank[mask] = if indep[mask] {
            mask.count_ones() as u8
        } else {
            (0..g)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| rank[mask & !(1 << i)])
                .max()
                .unwrap_or(0)
        };
    }

    for mask in 0..full {
        if !indep[mask] {
            continue;
        }
        let closure = (0..g).fold(mask, |acc, i| {
            if mask >> i & 1 == 0 && !indep[mask | 1 << i] {
                acc | 1 << i
            } else {
                acc
            }
        });
        if rank[closure] as u32 > mask.count_ones() {
            let mut larger = closure;
            while !indep[larger] {
                let i = (0..g)
                    .find(|&i| larger >> i & 1 == 1 && rank[larger & !(1 << i)] == rank[larger])
                    .expect("rank is attained after some deletion");
                larger &= !(1 << i);
            }
            return report(Some(AxiomViolation::Exchange {
                smaller: members(ground, mask as u32),
                larger: members(ground, larger as u32),
            }));
        }
    }
    report(None)
}

fn random_independent(m: &dyn Matroid, ground: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut order = ground.to_vec();
    order.shuffle(rng);
    let limit = rng.gen_range(0..=ground.len());
    let mut set = Vec::new();
    for e in order {
        if set.len() >= limit {
            break;
        }
        set.push(e);
        if !m.is_independent(&set) {
            set.pop();
        }
    }
    set.sort_unstable();
    set
}

fn sampled(m: &dyn Matroid, ground: &[usize], samples: usize, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0u64;
    let mut violation = None;
    'outer: for _ in 0..samples {
        let a = random_independent(m, ground, &mut rng);
        let b = random_independent(m, ground, &mut rng);
        checked += 2;
        for set in [&a, &b] {
            for &e in set.iter() {
                let sub: Vec<usize> = set.iter().copied().filter(|&x| x != e).collect();
                if !m.is_independent(&sub) {
                    violation = Some(AxiomViolation::Hereditary {
                        set: set.clone(),
                        removed: e,
                    });
                    break 'outer;
                }
            }
        }
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        if small.len() < large.len() {
            let extends = large.iter().filter(|e| !small.contains(e)).any(|&x| {
                let mut t = small.clone();
                t.push(x);
                m.is_independent(&t)
            });
            if !extends {
                violation = Some(AxiomViolation::Exchange {
                    smaller: small,
                    larger: large,
                });
                break;
            }
        }
    }
    AxiomReport {
        mode: CheckMode::Sampled,
        sets_checked: checked,
        violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{Explicit, Graphic, Uniform};

    #[test]
    fn uniform_passes() {
        for k in 0..=5 {
            let r = axiom_check(&Uniform::new(5, k), 0, 0);
            assert!(r.passed());
            assert_eq!(r.mode, CheckMode::Exhaustive);
        }
    }

    #[test]
    fn missing_singleton_is_hereditary_violation() {
        let t = Explicit::from_table(2, &[vec![], vec![0], vec![0, 1]]).unwrap();
        let r = axiom_check(&t, 0, 0);
        assert_eq!(
            r.violation,
            Some(AxiomViolation::Hereditary {
                set: vec![0, 1],
                removed: 0
            })
        );
    }

    #[test]
    fn exchange_violation_has_witness() {
        // {0} and {1,2} are both maximal: not a matroid.
        let t = Explicit::from_maximal(3, &[vec![0], vec![1, 2]]).unwrap();
        match axiom_check(&t, 0, 0).violation {
            Some(AxiomViolation::Exchange { smaller, larger }) => {
                assert_eq!(smaller, vec![0]);
                assert_eq!(larger, vec![1, 2]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_set_dependent() {
        let t = Explicit::from_table(1, &[vec![0]]).unwrap();
        assert_eq!(axiom_check(&t, 0, 0).violation, Some(AxiomViolation::EmptyDependent));
    }

    #[test]
    fn sampled_mode_on_large_graphic() {
        let edges: Vec<(usize, usize)> = (0..24).map(|i| (i % 9, (i * 5 + 1) % 9)).collect();
        let r = axiom_check(&Graphic::new(9, edges), 200, 7);
        assert_eq!(r.mode, CheckMode::Sampled);
        assert!(r.passed());
    }
}
