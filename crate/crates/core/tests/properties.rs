mod common;

use std::collections::BTreeSet;

use graphreal::constrained::{cg_test, colex_less, leftmost_restricted, reduce_by_set, set_leq};
use graphreal::enumeration::{
    all_adjacency_sets, count_parallel, count_realizations, enumerate_all, enumerate_parallel,
    rightmost_adjacency_set,
};
use graphreal::graphicality::{
    erdos_gallai_all_k, erdos_gallai_test, havel_hakimi_construct, havel_hakimi_reduce,
    is_graphical, NodeSelectionPolicy,
};
use graphreal::model::{graph_degree_sequence, AdjacencySet, DegreeSequence, NodeLabel};
use graphreal::oracle::{oracle_count, oracle_enumerate, oracle_exists, OracleQuery};
use graphreal::sampling::{
    early_reject_at, exact_weighted_mean, realization_probability, sample_weighted,
};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::*;

fn label(k: usize) -> NodeLabel {
    NodeLabel::new(k).unwrap()
}

#[test]
fn eg_cutoff_agrees_with_full_check_and_oracle() {
    for d in family(7, 6) {
        let seq = DegreeSequence::new(d.clone()).unwrap();
        let eg = erdos_gallai_test(&seq).graphical;
        assert_eq!(eg, erdos_gallai_all_k(&d), "{d:?}");
        assert_eq!(eg, oracle_exists(&OracleQuery::new(&d)).unwrap(), "{d:?}");
        for policy in NodeSelectionPolicy::ALL {
            assert_eq!(
                eg,
                havel_hakimi_construct(&d, policy).is_ok(),
                "{d:?} {policy:?}"
            );
        }
    }
}

#[test]
fn reduction_preserves_the_verdict() {
    for d in family(7, 6) {
        let seq = DegreeSequence::new(d.clone()).unwrap();
        if d[0] >= d.len() {
            continue;
        }
        let before = erdos_gallai_test(&seq).graphical;
        match havel_hakimi_reduce(&seq) {
            Ok(r) => assert_eq!(before, erdos_gallai_test(&r).graphical, "{d:?}"),
            Err(_) => assert!(!before, "{d:?}"),
        }
    }
}

#[test]
fn degree_shift_preserves_graphicality() {
    for d in family(7, 6).into_iter().filter(|d| is_graphical(d)) {
        for j in 0..d.len() {
            for k in 0..d.len() {
                if d[j] > d[k] {
                    let mut e = d.clone();
                    e[j] -= 1;
                    e[k] += 1;
                    assert!(is_graphical(&e), "{d:?} j={j} k={k}");
                }
            }
        }
    }
}

#[test]
fn constructed_graphs_realize_the_sequence() {
    for d in family(7, 6).into_iter().filter(|d| is_graphical(d)) {
        for policy in NodeSelectionPolicy::ALL {
            let g = havel_hakimi_construct(&d, policy).unwrap();
            assert!(g.realizes(&d), "{d:?} {policy:?}");
        }
    }
}

#[test]
fn star_constrained_test_matches_oracle() {
    for d in graphical_family(6) {
        let n = d.len();
        for i in 1..=n {
            let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
            for x in subsets(&others) {
                if x.len() + d[i - 1] > n - 1 {
                    continue;
                }
                let s = star(i, &x);
                let expected = oracle_exists(&OracleQuery::new(&d).forbidding(s.clone())).unwrap();
                assert_eq!(
                    cg_test(&d, label(i), &s).unwrap(),
                    expected,
                    "{d:?} i={i} X={x:?}"
                );
            }
        }
    }
}

/// All adjacency sets of node `i` of size `d_i`, with their reductions' verdicts.
fn adjacency_sets(d: &[usize], i: usize) -> Vec<(AdjacencySet, bool)> {
    let others: Vec<usize> = (1..=d.len()).filter(|&j| j != i).collect();
    combinations(&others, d[i - 1])
        .into_iter()
        .map(|m| {
            let a = AdjacencySet::from_labels(i, &m).unwrap();
            let ok = reduce_by_set(d, &a).unwrap().is_graphical();
            (a, ok)
        })
        .collect()
}

#[test]
fn left_shift_preserves_graphicality() {
    for d in graphical_family(6) {
        for i in 1..=d.len() {
            let sets = adjacency_sets(&d, i);
            for (a, a_ok) in &sets {
                if !a_ok {
                    continue;
                }
                for (b, b_ok) in &sets {
                    if set_leq(b, a).unwrap() {
                        assert!(b_ok, "{d:?} A={:?} B={:?}", a.labels(), b.labels());
                    }
                }
            }
        }
    }
}

#[test]
fn leftmost_restricted_set_is_below_every_allowed_set() {
    for d in graphical_family(6) {
        let n = d.len();
        for i in 1..=n {
            let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
            for x in subsets(&others) {
                if x.len() + d[i - 1] > n - 1 {
                    continue;
                }
                let l = leftmost_restricted(&d, label(i), &star(i, &x)).unwrap();
                let allowed: Vec<usize> =
                    others.iter().copied().filter(|j| !x.contains(j)).collect();
                for y in combinations(&allowed, d[i - 1]) {
                    let y = AdjacencySet::from_labels(i, &y).unwrap();
                    assert!(
                        set_leq(&l, &y).unwrap(),
                        "{d:?} i={i} X={x:?} Y={:?}",
                        y.labels()
                    );
                }
            }
        }
    }
}

#[test]
fn left_of_implies_colex() {
    for d in graphical_family(6) {
        let sets = adjacency_sets(&d, 1);
        for (a, _) in &sets {
            for (b, _) in &sets {
                if set_leq(b, a).unwrap() && b != a {
                    assert!(colex_less(b, a).unwrap());
                }
            }
        }
    }
}

#[test]
fn joining_the_last_node_never_breaks_graphicality() {
    for d in family(7, 6)
        .into_iter()
        .filter(|d| is_graphical(d) && d.len() > 1)
    {
        let n = d.len();
        let mut residual = d.clone();
        residual[0] -= 1;
        residual[n - 1] -= 1;
        let completes = if residual[0] == 0 {
            is_graphical(&residual)
        } else {
            cg_test(&residual, label(1), &star(1, &[n])).unwrap()
        };
        assert!(completes, "{d:?}");
    }
}

#[test]
fn rightmost_set_is_colex_maximal() {
    for d in graphical_family(6) {
        let ar = rightmost_adjacency_set(&d).unwrap();
        let sets = adjacency_sets(&d, ar.focal().get());
        assert!(sets.iter().any(|(a, ok)| *ok && *a == ar));
        for (a, ok) in &sets {
            if colex_less(&ar, a).unwrap() {
                assert!(
                    !ok,
                    "{d:?} A_R={:?} beaten by {:?}",
                    ar.labels(),
                    a.labels()
                );
            }
        }
        // and the family is exactly the graphical sets, in decreasing colex order
        let family = all_adjacency_sets(&d).unwrap();
        let expected: Vec<_> = {
            let mut v: Vec<_> = sets
                .iter()
                .filter(|(_, ok)| *ok)
                .map(|(a, _)| a.clone())
                .collect();
            v.sort_by(|a, b| {
                if colex_less(b, a).unwrap() {
                    std::cmp::Ordering::Less
                } else if a == b {
                    std::cmp::Ordering::Equal
                } else {
                    std::cmp::Ordering::Greater
                }
            });
            v
        };
        assert_eq!(family, expected, "{d:?}");
        assert_eq!(family[0], ar);
    }
}

#[test]
fn enumeration_matches_oracle_without_duplicates() {
    for d in graphical_family(6) {
        let stream: Vec<_> = enumerate_all(&d).collect();
        let set: BTreeSet<_> = stream.iter().cloned().collect();
        assert_eq!(set.len(), stream.len(), "duplicates for {d:?}");
        assert_eq!(
            set,
            oracle_enumerate(&OracleQuery::new(&d)).unwrap(),
            "{d:?}"
        );
        let memo = count_realizations(&d, true).count;
        assert_eq!(memo, count_realizations(&d, false).count);
        assert_eq!(memo, stream.len().into());
        assert_eq!(count_parallel(&d, 3).count, memo);
    }
}

#[test]
fn ordered_parallel_enumeration_matches_sequential() {
    for d in graphical_family(6)
        .into_iter()
        .step_by(7)
        .chain([two_hub_sequence()])
    {
        let sequential: Vec<_> = enumerate_all(&d).collect();
        let mut ordered = Vec::new();
        enumerate_parallel(&d, 4, true, |g| {
            ordered.push(g);
            std::ops::ControlFlow::Continue(())
        });
        assert_eq!(ordered, sequential, "{d:?}");
        let mut unordered = Vec::new();
        enumerate_parallel(&d, 3, false, |g| {
            unordered.push(g);
            std::ops::ControlFlow::Continue(())
        });
        unordered.sort();
        let mut sorted = sequential.clone();
        sorted.sort();
        assert_eq!(unordered, sorted, "{d:?}");
    }
}

#[test]
fn probabilities_sum_to_one() {
    let mut non_uniform = false;
    for d in graphical_family(6) {
        let mut total = BigRational::zero();
        let mut samples = Vec::new();
        for g in enumerate_all(&d) {
            let s = realization_probability(&d, &g).unwrap();
            total += &s.probability;
            samples.push(s);
        }
        assert!(total.is_one(), "{d:?}: {total}");
        let count = BigRational::from_integer(samples.len().into());
        assert_eq!(exact_weighted_mean(&samples), count, "{d:?}");
        non_uniform |= samples
            .iter()
            .any(|s| s.probability != samples[0].probability);
    }
    assert!(non_uniform, "every small sequence sampled uniformly");
}

#[test]
fn early_rejections_are_never_completable() {
    let mut rejections = 0u64;
    for d in graphical_family(6) {
        for p in partial_graphs(&d) {
            let n = d.len();
            let (deg, _) = graph_degree_sequence(&p);
            let residual: Vec<usize> = d.iter().zip(&deg).map(|(a, b)| a - b).collect();
            let rejected = (1..=n).any(|v| {
                let nbrs: Vec<usize> = p.neighbors(v).iter().map(|u| u - 1).collect();
                early_reject_at(&residual, v - 1, &nbrs)
            });
            if rejected {
                rejections += 1;
                let q = OracleQuery::new(&d).containing(p.clone());
                assert!(!oracle_exists(&q).unwrap(), "{d:?} partial {:?}", p.edges());
            }
        }
    }
    assert!(rejections > 0);
}

#[test]
fn two_hub_count_matches_oracle() {
    let d = two_hub_sequence();
    let expected = oracle_count(&OracleQuery::new(&d)).unwrap();
    assert_eq!(count_realizations(&d, true).count, expected.into());
    assert_eq!(enumerate_all(&d).count() as u64, expected);
}

/// Degree sequences of random graphs, graphical by construction.
fn graphical_sequence(max_n: usize) -> impl Strategy<Value = DegreeSequence> {
    (2usize..max_n, 0.0f64..1.0, any::<u64>()).prop_map(|(n, p, seed)| {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut deg = vec![0usize; n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
        }
        deg.retain(|&x| x > 0);
        deg.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence::new(deg).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_graph_sequences_are_graphical(d in graphical_sequence(60)) {
        prop_assert!(erdos_gallai_test(&d).graphical);
        prop_assert!(erdos_gallai_all_k(&d));
        for policy in NodeSelectionPolicy::ALL {
            prop_assert!(havel_hakimi_construct(&d, policy).unwrap().realizes(&d));
        }
    }

    #[test]
    fn weighted_samples_are_realizations(d in graphical_sequence(13), seed in any::<u64>()) {
        prop_assume!(!d.is_empty());
        let s = sample_weighted(&d, seed).unwrap();
        prop_assert!(s.graph.realizes(&d));
        let replay = realization_probability(&d, &s.graph).unwrap();
        prop_assert_eq!(replay.probability, s.probability);
    }

    #[test]
    fn eg_verdict_is_order_free(mut d in prop::collection::vec(0usize..8, 1..9)) {
        let unsorted = is_graphical(&d);
        d.sort_unstable_by(|a, b| b.cmp(a));
        let seq = DegreeSequence::new(d.clone()).unwrap();
        prop_assert_eq!(unsorted, erdos_gallai_test(&seq).graphical);
        prop_assert_eq!(unsorted, erdos_gallai_all_k(&d));
    }
}
