mod support;

use hca_dbscan::oracle::epsilon_neighborhood;
use hca_dbscan::{connectivity_components, dbscan, rand_index, refinement_check, ClusterLabeling, Comparator, DbscanParams, Label};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{definitional_dbscan, flood_components, pairwise_rand_index, random_case, same_partition, within};

#[test]
fn dbscan_matches_definitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..60 {
        let (data, eps) = random_case(&mut rng, 200, 1..=4);
        for minpts in [1, 3, 5] {
            for cmp in [Comparator::Le, Comparator::Lt] {
                let got = dbscan(&data, &DbscanParams::new(eps, minpts).with_comparator(cmp)).unwrap();
                let (_, expected) = definitional_dbscan(&data, eps, minpts, cmp);
                assert_eq!(got.labels(), &expected[..], "case {case}, minpts {minpts}");
            }
        }
    }
}

#[test]
fn minpts_one_equals_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..40 {
        let (data, eps) = random_case(&mut rng, 300, 1..=5);
        for cmp in [Comparator::Le, Comparator::Lt] {
            let db = dbscan(&data, &DbscanParams::new(eps, 1).with_comparator(cmp)).unwrap();
            let cc = connectivity_components(&data, eps, cmp);
            assert_eq!(db.noise_count(), 0);
            assert!(db.same_partition(&cc));
        }
    }
}

#[test]
fn components_match_flood_fill() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let coords = (0..2000).map(|_| rng.random::<f64>() * 10.0).collect();
    let data = hca_dbscan::Dataset::new(2, coords).unwrap();
    for eps in [0.1, 0.3, 0.6] {
        let cc = connectivity_components(&data, eps, Comparator::Lt);
        assert!(same_partition(&cc.blocks(), &flood_components(&data, eps, Comparator::Lt)));
    }
}

#[test]
fn strict_components_refine_closed_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        // integer lattice points put many pairs exactly at distance epsilon
        let d = rng.random_range(1..=3);
        let coords = (0..60 * d).map(|_| rng.random_range(0..8) as f64).collect();
        let data = hca_dbscan::Dataset::new(d, coords).unwrap();
        let lt = connectivity_components(&data, 1.0, Comparator::Lt);
        let le = connectivity_components(&data, 1.0, Comparator::Le);
        assert!(refinement_check(&lt, &le).unwrap());
    }
}

#[test]
fn neighborhoods_match_brute_filter() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (data, eps) = random_case(&mut rng, 150, 1..=5);
        let params = DbscanParams::new(eps, 1);
        for i in 0..data.len() {
            let expected: Vec<usize> = (0..data.len()).filter(|&j| within(data.row(i), data.row(j), eps, Comparator::Le)).collect();
            assert_eq!(epsilon_neighborhood(&data, i, &params), expected);
        }
    }
}

fn labeling_strategy(n: usize) -> impl Strategy<Value = ClusterLabeling> {
    prop::collection::vec(0u32..5, n).prop_map(|ids| {
        ClusterLabeling::from_labels(ids.into_iter().map(|i| if i == 0 { Label::Noise } else { Label::Cluster(i) }).collect())
    })
}

proptest! {
    #[test]
    fn rand_index_matches_pair_enumeration((a, b) in (0usize..60).prop_flat_map(|n| (labeling_strategy(n), labeling_strategy(n)))) {
        let fast = rand_index(&a, &b).unwrap();
        let slow = pairwise_rand_index(a.labels(), b.labels());
        prop_assert!((fast - slow).abs() < 1e-12);
        prop_assert_eq!(fast, rand_index(&b, &a).unwrap());
        prop_assert_eq!(fast == 1.0, a.same_partition(&b));
    }

    #[test]
    fn refinement_matches_definition((a, b) in (0usize..30).prop_flat_map(|n| (labeling_strategy(n), labeling_strategy(n)))) {
        let (fa, cb) = (a.blocks(), b.blocks());
        let mut expected = true;
        for i in 0..fa.len() {
            for j in 0..fa.len() {
                if fa[i] == fa[j] && cb[i] != cb[j] {
                    expected = false;
                }
            }
        }
        prop_assert_eq!(refinement_check(&a, &b).unwrap(), expected);
    }
}
