mod common;

use common::points_of;
use ffdist_core::distance::{incidence_audit, norm_distribution, DEFAULT_ENVELOPE};
use ffdist_core::vectorspace::sample_point_set_with;
use ffdist_core::{distance_set, distance_set_between, make_field, rng, sample_point_set, PointSet, Space};
use rand::Rng;

fn space(q: u64, d: usize) -> Space {
    Space::new(&make_field(q).unwrap(), d).unwrap()
}

#[test]
fn distance_sets_match_oracle_on_both_routes() {
    for (q, d) in [(5u64, 2usize), (7, 2), (5, 3), (13, 2)] {
        let s = space(q, d);
        let mut rng = rng::stream(3, "tests/distance", q * 10 + d as u64);
        for _ in 0..15 {
            let e = sample_point_set_with(&s, rng.random_range(1..=s.size() / 2), &mut rng).unwrap();
            let f = sample_point_set_with(&s, rng.random_range(1..=s.size() / 2), &mut rng).unwrap();
            for n in 2..=5 {
                let want = common::distance_set(q, n as u64, &points_of(&e), &points_of(&f));
                assert_eq!(distance_set_between(&e, &f, n).unwrap(), want);
            }
        }
    }
}

#[test]
fn distribution_matches_oracle() {
    let s = space(7, 3);
    let e = sample_point_set(&s, 90, 1).unwrap();
    let f = sample_point_set(&s, 45, 2).unwrap();
    for n in 2..=3 {
        let want = common::pair_distribution(7, n as u64, &points_of(&e), &points_of(&f));
        assert_eq!(norm_distribution(&e, &f, n).unwrap(), want);
    }
}

/// Planar distinct-distances smoke test: `#Δ(E) ≥ 0.1 √#E` once `#E ≥ 10 q`.
#[test]
fn planar_distance_count_lower_bound() {
    for q in [11u64, 13, 17, 19, 23, 31] {
        let s = space(q, 2);
        for n in 2..=4 {
            for trial in 0..5 {
                let mut rng = rng::stream(0, "tests/planar", q * 100 + n as u64 * 10 + trial);
                let size = rng.random_range(10 * q as usize..=s.size());
                let e = sample_point_set_with(&s, size, &mut rng).unwrap();
                let count = distance_set(&e, n).unwrap().len() as f64;
                assert!(count >= 0.1 * (size as f64).sqrt(), "q={q} n={n} |E|={size}: {count}");
            }
        }
    }
}

#[test]
fn incidence_audit_at_threshold_size() {
    let s = space(13, 2);
    let e = sample_point_set(&s, 47, 5).unwrap();
    let f = sample_point_set(&s, 47, 6).unwrap();
    let radii: Vec<u32> = (1..13).collect();
    let audit = incidence_audit(&e, &f, 3, &radii, DEFAULT_ENVELOPE).unwrap();
    assert!(audit.pass && audit.hypothesis_ok);
    assert_eq!(audit.results.len(), 12);
    assert!(audit.max_ratio > 0.0 && audit.max_ratio <= 1.0);
}

#[test]
fn zero_is_attained_when_sets_meet() {
    let s = space(7, 2);
    let e = PointSet::from_points(&s, [&[1u32, 2][..], &[3, 3][..]]).unwrap();
    let f = PointSet::from_points(&s, [&[3u32, 3][..]]).unwrap();
    assert!(distance_set_between(&e, &f, 3).unwrap().contains(&0));
}
