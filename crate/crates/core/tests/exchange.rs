mod common;

use std::collections::HashSet;

use cluster_scatter::exchange::*;
use cluster_scatter::matrix::IntMatrix;
use cluster_scatter::rational::Rational;
use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_walk_seed(fd: &FixedData, rng: &mut ChaCha8Rng, len: usize) -> TropicalSeed {
    let mut s = fd.root_seed();
    for _ in 0..len {
        s = mutate_seed(fd, &s, rng.gen_range(0..fd.rank())).unwrap();
    }
    s
}

/// `G^T D C` with `D` diagonal.
fn duality(s: &TropicalSeed, d: &[BigInt]) -> IntMatrix {
    s.g.transpose().mul(&s.c.scale_rows(d))
}

#[test]
fn validate_examples() {
    let fd = a2();
    assert_eq!(fd.symmetrizer(), &ints(&[1, 1])[..]);
    let fd = b2();
    assert_eq!(fd.omega()[0][1], Rational::integer(1));
    assert_eq!(fd.omega()[1][0], Rational::integer(-1));
    assert_eq!(fd.symmetrizer(), &ints(&[2, 1])[..]);
    let err = validate_fixed_data(mat(&[&[0, 1], &[1, 0]]), ints(&[1, 1])).unwrap_err();
    assert_eq!(err.code(), "NotSkewSymmetrizable");
}

#[test]
fn mutation_examples() {
    let fd = a2();
    let s = mutate_seed(&fd, &fd.root_seed(), 0).unwrap();
    assert_eq!(s.b, mat(&[&[0, -1], &[1, 0]]));
    assert_eq!(s.c_vector(0), ints(&[-1, 0]));
    assert_eq!(s.path, vec![0]);
    assert!(!is_green(&s, 0).unwrap());
    assert!(is_green(&s, 1).unwrap());
    assert!(matches!(mutate_seed(&fd, &s, 2), Err(ExchangeError::DirectionOutOfRange { direction: 2, rank: 2 })));
}

#[test]
fn enumerated_seeds_satisfy_tropical_identities() {
    for (name, fd, _) in finite_types() {
        let g = complete_graph(&fd);
        let d = fd.symmetrizer();
        let dm = IntMatrix::identity(fd.rank()).scale_rows(d);
        for v in g.vertices() {
            let s = &v.seed;
            assert_eq!(duality(s, d), dm, "{name} duality at {:?}", s.path);
            assert!(s.c.det().abs().is_one() && s.g.det().abs().is_one(), "{name} unimodularity");
            for k in 0..fd.rank() {
                is_green(s, k).unwrap();
            }
            // G = D^{-1} (C^T)^{-1} D
            let ct_inv = s.c.transpose().inverse().unwrap();
            for i in 0..fd.rank() {
                for j in 0..fd.rank() {
                    let expected = &(&ct_inv[i][j] * &Rational::from(&d[j])) / &Rational::from(&d[i]);
                    assert_eq!(Rational::from(s.g.get(i, j)), expected);
                }
            }
        }
    }
}

#[test]
fn keys_are_relabeling_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for fd in [a3(), g2(), kronecker()] {
        for _ in 0..50 {
            let len = rng.gen_range(0..8);
            let s = random_walk_seed(&fd, &mut rng, len);
            let mut perm: Vec<usize> = (0..fd.rank()).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_key(&s), canonical_key(&s.relabeled(&perm)));
        }
    }
}

#[test]
fn distinct_a2_seeds_have_distinct_keys() {
    let fd = a2();
    let root = fd.root_seed();
    let s = mutate_seed(&fd, &root, 0).unwrap();
    assert_ne!(canonical_key(&root), canonical_key(&s));
}

#[test]
fn finite_type_counts() {
    for (name, fd, count) in finite_types() {
        let g = complete_graph(&fd);
        assert_eq!(g.vertex_count(), count, "{name}");
        let r = fd.rank();
        for v in 0..g.vertex_count() {
            assert_eq!(g.out_degree(v) + g.in_degree(v), r, "{name} vertex {v}");
        }
        let sources: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.in_degree(v) == 0).collect();
        assert_eq!(sources, vec![g.root()]);
        assert_eq!(g.out_degree(g.root()), r);
        for e in g.edges() {
            assert!(is_green(&g.vertices()[e.source].seed, e.direction).unwrap());
        }
        let cert = certify_acyclic(&g).unwrap();
        assert_eq!(cert.order.len(), count);
        assert_eq!(cert.order[0], g.root());
    }
}

#[test]
fn a2_has_five_edges() {
    assert_eq!(complete_graph(&a2()).edge_count(), 5);
}

#[test]
fn kronecker_is_truncated() {
    let fd = kronecker();
    let g = match enumerate_graph(&fd, 100_000, 6) {
        Err(ExchangeError::BudgetExceeded(g)) => *g,
        other => panic!("expected truncation, got {:?}", other.map(|g| g.vertex_count())),
    };
    assert_eq!(g.status(), GraphStatus::Truncated { depth: 6 });
    assert!(g.vertex_count() > 12);
    certify_acyclic(&g).unwrap();

    // No all-green walk revisits a key.
    fn dfs(fd: &FixedData, s: &TropicalSeed, seen: &mut Vec<SeedKey>, depth: usize) {
        if depth == 0 {
            return;
        }
        for k in 0..fd.rank() {
            if is_green(s, k).unwrap() {
                let t = mutate_seed(fd, s, k).unwrap();
                let key = canonical_key(&t);
                assert!(!seen.contains(&key));
                seen.push(key);
                dfs(fd, &t, seen, depth - 1);
                seen.pop();
            }
        }
    }
    let root = fd.root_seed();
    dfs(&fd, &root, &mut vec![canonical_key(&root)], 8);
}

#[test]
fn rank_one_graph() {
    let fd = data(&[&[0]], &[1]);
    let g = complete_graph(&fd);
    assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
}

#[test]
fn graph_keys_are_distinct() {
    for (_, fd, _) in finite_types() {
        let g = complete_graph(&fd);
        let keys: HashSet<_> = g.vertices().iter().map(|v| v.key.clone()).collect();
        assert_eq!(keys.len(), g.vertex_count());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutation_is_an_involution(walk in prop::collection::vec(0usize..3, 0..10), k in 0usize..3) {
        let fd = a3();
        let mut s = fd.root_seed();
        for d in walk {
            s = mutate_seed(&fd, &s, d).unwrap();
        }
        let mut back = mutate_seed(&fd, &mutate_seed(&fd, &s, k).unwrap(), k).unwrap();
        back.path.truncate(s.path.len());
        prop_assert_eq!(back, s);
    }

    #[test]
    fn duality_holds_in_infinite_type(walk in prop::collection::vec(0usize..2, 0..14)) {
        let fd = data(&[&[0, 3], &[-2, 0]], &[3, 2]);
        let mut s = fd.root_seed();
        for d in walk {
            s = mutate_seed(&fd, &s, d).unwrap();
            prop_assert!(is_green(&s, 0).is_ok() && is_green(&s, 1).is_ok());
        }
        let dm = IntMatrix::identity(2).scale_rows(fd.symmetrizer());
        prop_assert_eq!(duality(&s, fd.symmetrizer()), dm);
    }
}
