mod common;

use collapse_lab::gh::{MetricError, EXACT_MAX_POINTS};
use collapse_lab::{
    epsilon_net, gh_distance_exact, gh_lower_bound, BergerSphere, FiniteMetricSpace, FlatTorus, Member, Point,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn space(dist: Vec<Vec<f64>>) -> FiniteMetricSpace {
    FiniteMetricSpace::from_matrix(dist).unwrap()
}

fn two_points(d: f64) -> FiniteMetricSpace {
    space(vec![vec![0.0, d], vec![d, 0.0]])
}

#[test]
fn exact_distance_examples() {
    let x = space(vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.5], vec![2.0, 1.5, 0.0]]);
    assert_eq!(gh_distance_exact(&x, &x).unwrap(), 0.0);
    let p = FiniteMetricSpace::single_point();
    assert_eq!(gh_distance_exact(&p, &x).unwrap(), 1.0);
    assert_eq!(gh_distance_exact(&two_points(1.0), &two_points(3.0)).unwrap(), 1.0);
    assert_eq!(common::brute_force_gh(&two_points(1.0), &two_points(3.0)), 1.0);
}

#[test]
fn lower_bound_examples() {
    let x = space(vec![vec![0.0, 2.0], vec![2.0, 0.0]]);
    assert_eq!(gh_lower_bound(&x, &x), 0.0);
    assert_eq!(gh_lower_bound(&FiniteMetricSpace::single_point(), &x), 1.0);
}

#[test]
fn size_gate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let big = common::random_space(&mut rng, EXACT_MAX_POINTS + 1);
    let small = common::random_space(&mut rng, 3);
    assert!(matches!(
        gh_distance_exact(&big, &small),
        Err(MetricError::TooLarge { size: 7, max: 6, .. })
    ));
    assert!(gh_lower_bound(&big, &small).is_finite());
}

#[test]
fn exact_matches_relation_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..40 {
        let n = rng.random_range(1..=4);
        let m = rng.random_range(1..=(20 / n).min(5));
        let x = common::random_space(&mut rng, n);
        let y = common::random_space(&mut rng, m);
        let want = common::brute_force_gh(&x, &y);
        let got = gh_distance_exact(&x, &y).unwrap();
        assert!((got - want).abs() <= 1e-12, "{n}x{m}: {got} vs {want}");
    }
}

#[test]
fn six_point_spaces_are_tractable() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..3 {
        let x = common::random_space(&mut rng, 6);
        let y = common::random_space(&mut rng, 6);
        let d = gh_distance_exact(&x, &y).unwrap();
        assert!(d >= gh_lower_bound(&x, &y) - 1e-12);
        assert!((d - gh_distance_exact(&y, &x).unwrap()).abs() <= 1e-12);
    }
}

#[test]
fn triangle_inequality_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let s: Vec<_> = (0..3)
            .map(|_| {
                let n = rng.random_range(1..=5);
                common::random_space(&mut rng, n)
            })
            .collect();
        let d = |a: usize, b: usize| gh_distance_exact(&s[a], &s[b]).unwrap();
        assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9);
    }
}

#[test]
fn rejects_invalid_matrices() {
    assert!(matches!(
        FiniteMetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0], vec![0.0]]),
        Err(MetricError::Ragged { .. }) | Err(MetricError::LabelCount { .. })
    ));
    let bad_triangle = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
    assert!(matches!(
        FiniteMetricSpace::from_matrix(bad_triangle),
        Err(MetricError::Triangle { .. })
    ));
    assert!(matches!(
        FiniteMetricSpace::from_json("{\"labels\":[\"a\"],\"dist\":[[1.0]]}"),
        Err(MetricError::Json(_)) | Err(MetricError::NonzeroDiagonal { .. })
    ));
    assert!(matches!(FiniteMetricSpace::from_json("not json"), Err(MetricError::Json(_))));
}

#[test]
fn net_examples() {
    let circle = Member::from(FlatTorus::new(vec![1.0]).unwrap());
    let net = epsilon_net(&circle, std::f64::consts::FRAC_PI_2, 0, 100).unwrap();
    assert!(net.points.len() <= 4);
    assert!(net.covering_radius <= std::f64::consts::FRAC_PI_2);

    for member in [
        Member::from(FlatTorus::new(vec![1.0, 0.3]).unwrap()),
        Member::from(BergerSphere::new(0.2).unwrap()),
    ] {
        let net = epsilon_net(&member, member.diameter(), 4, 10).unwrap();
        assert_eq!(net.points.len(), 1);
        assert_eq!(net.space.len(), 1);
    }
}

#[test]
fn torus_net_covering_radius_survives_probes() {
    let t = FlatTorus::new(vec![1.0, 1.0]).unwrap();
    let net = epsilon_net(&Member::from(t.clone()), 0.5, 0, 10_000).unwrap();
    assert!(!net.exhausted);
    assert!(net.covering_radius <= 0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let p = Point::new(t.periods().map(|per| rng.random_range(0.0..per)).collect());
        let d = net
            .points
            .iter()
            .map(|c| t.distance(&p, c).unwrap())
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
    }
    assert!(worst <= net.covering_radius, "{worst} > {}", net.covering_radius);
}

#[test]
fn berger_net_distances_match_the_metric() {
    let b = BergerSphere::new(0.3).unwrap();
    let net = epsilon_net(&Member::from(b), 0.6, 1, 40).unwrap();
    let n = net.points.len();
    assert!(n > 1);
    for i in 0..n {
        for j in 0..n {
            let d = b.distance(&net.points[i], &net.points[j]).unwrap();
            assert!((net.space.dist(i, j) - d).abs() <= 1e-12);
        }
    }
}

#[test]
fn exhausted_nets_are_flagged_but_valid() {
    let t = Member::from(FlatTorus::new(vec![1.0, 1.0]).unwrap());
    let net = epsilon_net(&t, 0.05, 0, 5).unwrap();
    assert!(net.exhausted);
    assert_eq!(net.points.len(), 5);
    assert!(net.covering_radius > 0.05);
}

#[test]
fn net_fidelity_along_thin_tori() {
    // best of five seeds, consecutive members i and i + 1
    let gap = |i: u32| {
        (0..5)
            .map(|seed| {
                let net = |k: u32| {
                    let m = Member::from(FlatTorus::new(vec![1.0, 1.0 / f64::from(k)]).unwrap());
                    epsilon_net(&m, 0.5, seed, 6).unwrap().space
                };
                gh_distance_exact(&net(i), &net(i + 1)).unwrap()
            })
            .fold(f64::INFINITY, f64::min)
    };
    let gaps: Vec<f64> = [1, 2, 4, 8, 16, 32].into_iter().map(gap).collect();
    for w in gaps.windows(2) {
        assert!(w[1] <= w[0] + 0.02, "{gaps:?}");
    }
    assert!(gaps[5] < 0.1 * gaps[0], "{gaps:?}");
}

fn space_strategy(max: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_space(&mut rng, n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_nonnegative_and_bounded_below(x in space_strategy(5), y in space_strategy(5)) {
        let d = gh_distance_exact(&x, &y).unwrap();
        prop_assert!(d >= 0.0);
        prop_assert!((d - gh_distance_exact(&y, &x).unwrap()).abs() <= 1e-12);
        prop_assert!(gh_lower_bound(&x, &y) <= d + 1e-12);
        // the full relation is a correspondence
        prop_assert!(d <= 0.5 * x.diameter().max(y.diameter()) + 1e-12);
    }

    #[test]
    fn zero_on_relabelings(x in space_strategy(6), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..x.len()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let y = x.permuted(&perm);
        prop_assert_eq!(gh_distance_exact(&x, &y).unwrap(), 0.0);
        prop_assert_eq!(gh_lower_bound(&x, &y), 0.0);
    }

    #[test]
    fn point_against_space_is_half_diameter(y in space_strategy(6)) {
        let d = gh_distance_exact(&FiniteMetricSpace::single_point(), &y).unwrap();
        prop_assert_eq!(d, 0.5 * y.diameter());
    }

    #[test]
    fn json_round_trip_is_bit_exact(x in space_strategy(8)) {
        let back = FiniteMetricSpace::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(&back, &x);
        for i in 0..x.len() {
            for j in 0..x.len() {
                prop_assert_eq!(back.dist(i, j).to_bits(), x.dist(i, j).to_bits());
            }
        }
    }
}
