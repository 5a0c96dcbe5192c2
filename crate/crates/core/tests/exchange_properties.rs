mod common;

use std::sync::Arc;

use budgeted_core::exchange::{exchange_set, exset_matching, exset_matroid_intersection, is_chain};
use budgeted_core::generate::standard_corpus;
use budgeted_core::graph::greedy_matching;
use budgeted_core::io::load_instance;
use budgeted_core::matroid::{MatroidRef, Partition};
use budgeted_core::model::{profit_classes, scheme_params};
use budgeted_core::oracles::{brute_force_opt, check_exchange_set, enumerate_family, Witness, DEFAULT_BOUND};
use budgeted_core::rational::{int, ratio};
use budgeted_core::set;
use budgeted_core::{Constraint, Graph, Instance};
use common::{random_costs, random_graph, subsets};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> Instance {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    load_instance(&path).unwrap().1
}

#[test]
fn greedy_matching_dichotomy() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..300 {
        let g = random_graph(&mut rng, 10, 16);
        let cost = random_costs(&mut rng, g.edge_count(), 6);
        let all: Vec<usize> = (0..g.edge_count()).collect();
        for cap in 1..=5 {
            let m = greedy_matching(&g, &all, cap, &cost);
            assert!(g.is_matching(&m).unwrap() && m.len() <= cap);
            for a in all.iter().copied().filter(|a| !m.contains(a)) {
                let blocked = m.iter().any(|&b| g.shares_endpoint(a, b) && cost[b] <= cost[a]);
                let full = m.len() == cap && m.iter().all(|&b| cost[b] <= cost[a]) && g.is_matching(&set::with(&m, a)).unwrap();
                assert!(blocked || full, "{g:?} {cost:?} N={cap} a={a}");
            }
        }
    }
}

#[test]
fn fig1_class_ab() {
    let inst = fixture("fig1.json");
    let params = scheme_params(&inst, &ratio(1, 2)).unwrap();
    let out = exset_matching(&inst, &params, &[0, 1]).unwrap();
    assert_eq!(out.union, vec![0, 1]);
    assert!(check_exchange_set(&inst, &params, &[0, 1], &[0, 1], DEFAULT_BOUND).unwrap().verdict);
    // dropping either edge leaves a bounded matching whose class element has no partner
    let a = check_exchange_set(&inst, &params, &[0, 1], &[0], DEFAULT_BOUND).unwrap();
    assert_eq!(a.witness, Some(Witness::Exchange { delta: vec![1, 3], a: 1 }));
    let b = check_exchange_set(&inst, &params, &[0, 1], &[1], DEFAULT_BOUND).unwrap();
    assert_eq!(b.witness, Some(Witness::Exchange { delta: vec![0, 2], a: 0 }));
}

#[test]
fn bipartite_fig1_exchange_set_covers_ab() {
    let left: MatroidRef = Arc::new(Partition::new(4, vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap());
    let right: MatroidRef = Arc::new(Partition::new(4, vec![vec![0, 3], vec![1, 2]], vec![1, 1]).unwrap());
    let inst = Instance::new(vec![int(5), int(4), int(5), int(4)], vec![int(1); 4], Constraint::Intersection(left, right), int(2)).unwrap();
    let params = scheme_params(&inst, &ratio(1, 2)).unwrap();
    let x = exset_matroid_intersection(&inst, &params, &[0, 1]).unwrap().union;
    assert!(set::is_subset(&[0, 1], &x));
    assert!(check_exchange_set(&inst, &params, &[0, 1], &x, DEFAULT_BOUND).unwrap().verdict);
}

#[test]
fn two_level_chain_fixture() {
    let inst = fixture("fig2_shape.json");
    let params = scheme_params(&inst, &ratio(1, 2)).unwrap();
    let class: Vec<usize> = (0..6).collect();
    let run = exset_matroid_intersection(&inst, &params, &class).unwrap();
    let basis_of = |s: &[usize]| run.branches.iter().find(|b| b.s == s).map(|b| b.basis.clone());
    assert_eq!(basis_of(&[]), Some(vec![0, 1]));
    assert_eq!(basis_of(&[0]), Some(vec![2, 3]));
    assert_eq!(basis_of(&[1]), Some(vec![2, 3]));
    assert_eq!(basis_of(&[0, 2]), Some(vec![4, 5]));
    assert_eq!(run.union, class);
    assert!(check_exchange_set(&inst, &params, &class, &run.union, DEFAULT_BOUND).unwrap().verdict);
    // the root basis alone is not: Δ = {0, 2} cannot trade 2 for 1, which shares a block with 0
    let root = check_exchange_set(&inst, &params, &class, &[0, 1], DEFAULT_BOUND).unwrap();
    assert_eq!(root.witness, Some(Witness::Exchange { delta: vec![0, 2], a: 2 }));
}

#[test]
fn corpus_exchange_sets_and_sizes() {
    for (name, doc) in standard_corpus().unwrap().into_iter().step_by(5) {
        let inst = doc.build().unwrap();
        let alpha = brute_force_opt(&inst, DEFAULT_BOUND).unwrap().profit;
        if alpha == int(0) {
            continue;
        }
        for eps in [ratio(1, 2), ratio(1, 3)] {
            let params = scheme_params(&inst, &eps).unwrap();
            let classes = profit_classes(&inst, &params, &alpha).unwrap();
            for r in classes.nonempty() {
                let class = classes.class(r);
                let x = exchange_set(&inst, &params, class).unwrap();
                assert!(set::is_subset(&x, class), "{name}");
                let report = check_exchange_set(&inst, &params, class, &x, DEFAULT_BOUND).unwrap();
                assert!(report.verdict, "{name} eps={eps} r={r}: {:?}", report.witness);
                if let Constraint::Matching(_) = inst.constraint() {
                    assert!(x.len() <= 18 * params.q_eff.pow(2), "{name}");
                }
            }
        }
    }
}

#[test]
fn chains_never_exceed_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let mut chains = 0;
    for seed in 0..60 {
        let n = rng.gen_range(3..=6);
        let m1 = common::random_matroid(&mut rng, n);
        let m2 = common::random_matroid(&mut rng, n);
        let inst = Instance::new(vec![int(1); n], random_costs(&mut rng, n, 4), Constraint::Intersection(m1, m2), int(100)).unwrap();
        // ε = 1/2 caps bounded sets at min(4, n)
        let params = scheme_params(&inst, &ratio(1, 2)).unwrap();
        let class: Vec<usize> = (0..n).collect();
        let mut feasible = Vec::new();
        enumerate_family(&class, params.q_eff, &mut |s| inst.constraint().contains(s), &mut |s| {
            feasible.push(s.to_vec());
            true
        });
        for delta in &feasible {
            for &a in delta {
                for s in subsets(&set::difference(&class, delta)) {
                    if is_chain(&inst, &params, &class, &s, a, delta).unwrap() {
                        chains += 1;
                        assert!(s.len() <= params.q_eff, "seed {seed}: S={s:?} Δ={delta:?}");
                    }
                }
            }
        }
    }
    assert!(chains > 0);
}

#[test]
fn empty_class_gives_empty_set() {
    let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
    let inst = Instance::new(vec![int(1); 2], vec![int(1); 2], Constraint::Matching(g), int(1)).unwrap();
    let params = scheme_params(&inst, &ratio(1, 3)).unwrap();
    assert!(exchange_set(&inst, &params, &[]).unwrap().is_empty());
}
