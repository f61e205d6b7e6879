//! Property suites for the lattice invariants.

mod common;

use proptest::prelude::*;

use fiberlat::chain::{cartan_matrix, classify, enumerate_valid_chains, template, Family};
use fiberlat::riemann_roch::{koszul_dual_index, KoszulIndex};
use fiberlat::{CurveClass, Divisor, Edge, FiberConfiguration};

/// A small random configuration of (-2)-curves with arbitrary nonnegative
/// intersections (not necessarily a valid chain; bilinearity needs none of
/// that structure).
fn small_config() -> impl Strategy<Value = FiberConfiguration> {
    (2usize..=4)
        .prop_flat_map(|k| {
            let degrees = proptest::collection::vec(1i64..=3, k);
            let weights = proptest::collection::vec(0i64..=3, k * (k - 1) / 2);
            (Just(k), degrees, weights)
        })
        .prop_map(|(k, degrees, weights)| {
            let curves: Vec<CurveClass> = degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| CurveClass::new(i, d, -2 * d, 0, 1))
                .collect();
            let mut edges = Vec::new();
            let mut w = weights.into_iter();
            for a in 0..k {
                for b in (a + 1)..k {
                    let weight = w.next().unwrap();
                    if weight > 0 {
                        edges.push(Edge {
                            a,
                            b,
                            intersection: weight,
                        });
                    }
                }
            }
            FiberConfiguration::subconfiguration(curves, &edges, 0).unwrap()
        })
}

proptest! {
    #[test]
    fn pairing_is_symmetric_and_bilinear(
        cfg in small_config(),
        seed in proptest::collection::vec(-5i64..=5, 12),
        c in -3i64..=3,
    ) {
        let k = cfg.len();
        let d = Divisor::new(seed[..k].to_vec());
        let e = Divisor::new(seed[4..4 + k].to_vec());
        let f = Divisor::new(seed[8..8 + k].to_vec());

        prop_assert_eq!(cfg.pairing(&d, &e).unwrap(), cfg.pairing(&e, &d).unwrap());
        prop_assert_eq!(
            cfg.pairing(&d.add(&f), &e).unwrap(),
            cfg.pairing(&d, &e).unwrap() + cfg.pairing(&f, &e).unwrap()
        );
        prop_assert_eq!(
            cfg.pairing(&d.scale(c), &e).unwrap(),
            c * cfg.pairing(&d, &e).unwrap()
        );
    }

    #[test]
    fn subcurve_count_is_exact(
        cfg in small_config(),
        seed in proptest::collection::vec(0i64..=3, 4),
    ) {
        let k = cfg.len();
        let coeffs = seed[..k].to_vec();
        prop_assume!(coeffs.iter().any(|&c| c > 0));
        let d = Divisor::new(coeffs.clone());
        let expected: u128 = coeffs.iter().map(|&c| c as u128 + 1).product::<u128>() - 1;
        let count = cfg.subcurves(&d, 1 << 20).unwrap().count() as u128;
        prop_assert_eq!(count, expected);
    }

    #[test]
    fn koszul_duality_is_an_involution(r in 1i64..=10, i in 0i64..=9, j in -5i64..=5) {
        prop_assume!(i < r);
        let idx = KoszulIndex::new(i, j, r).unwrap();
        let dual = koszul_dual_index(idx).unwrap();
        prop_assert_eq!(koszul_dual_index(dual).unwrap(), idx);
    }

    #[test]
    fn classification_is_permutation_invariant(
        pick in 0usize..=8,
        k_seed in 1usize..=7,
        n in 1i64..=3,
        perm_seed in proptest::collection::vec(0u64..1000, 9),
    ) {
        let family = Family::ALL[pick];
        let k = match family.fixed_length() {
            Some(fixed) => fixed,
            None => family.min_length().max(k_seed),
        };
        let t = template(family, k, n).unwrap();

        // permute node ids by sorting the seed
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| (perm_seed[i], i));
        let mut position = vec![0usize; k];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let curves: Vec<CurveClass> = order
            .iter()
            .enumerate()
            .map(|(new, &old)| {
                let c = t.curve(old);
                CurveClass::new(new, c.field_degree, c.self_int, c.canonical_deg, 1)
            })
            .collect();
        let edges: Vec<Edge> = t
            .edges()
            .iter()
            .map(|e| Edge {
                a: position[e.a],
                b: position[e.b],
                intersection: e.intersection,
            })
            .collect();
        let permuted =
            FiberConfiguration::subconfiguration(curves, &edges, t.characteristic()).unwrap();
        let all: Vec<usize> = (0..k).collect();
        let d = classify(&permuted, &all).unwrap();
        prop_assert_eq!((d.family, d.length, d.base_degree), (family, k, n));
    }

    #[test]
    fn adjunction_parity_on_corpus_fibers(
        which in 0usize..64,
        seed in proptest::collection::vec(0i64..=4, 8),
    ) {
        let fibers = common::corpus();
        let (_, cfg) = &fibers[which % fibers.len()];
        let coeffs: Vec<i64> = (0..cfg.len()).map(|i| seed[i % seed.len()]).collect();
        prop_assume!(coeffs.iter().any(|&c| c > 0));
        let d = Divisor::new(coeffs);
        let adjunction = cfg.pairing(&d, &d).unwrap() + cfg.canonical_pairing(&d).unwrap();
        prop_assert_eq!(adjunction.rem_euclid(2), 0);
    }
}

#[test]
fn corpus_fibers_have_null_fiber_class() {
    for (name, cfg) in common::corpus() {
        let f = cfg.fiber_divisor();
        assert_eq!(cfg.pairing(&f, &f).unwrap(), 0, "{name}");
        for i in 0..cfg.len() {
            assert_eq!(
                cfg.pairing(&f, &Divisor::unit(cfg.len(), i)).unwrap(),
                0,
                "{name}, curve {i}"
            );
        }
    }
}

#[test]
fn cartan_bond_products_follow_the_degree_ratios() {
    for cfg in enumerate_valid_chains(6, 3).unwrap() {
        let chain: Vec<usize> = (0..cfg.len()).collect();
        let m = cartan_matrix(&cfg, &chain).unwrap();
        for i in 0..m.size() {
            for j in 0..m.size() {
                if i == j {
                    continue;
                }
                let product = m.entry(i, j) * m.entry(j, i);
                assert!(
                    (0..=3).contains(&product),
                    "bond product {product} outside 0..=3"
                );
            }
        }
    }
}
