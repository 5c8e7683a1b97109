mod common;

use common::*;
use hollowpoly::exactgeom::rational::{lattice_to_point, rat};
use hollowpoly::lattice::bounding_box_scan;
use hollowpoly::maximality::verify_witness;
use hollowpoly::{
    census_polygons, delta_i, delta_simplex, exceptional_triangle, facet_reports, hull,
    is_maximal_hollow_body, is_maximal_hollow_lattice, GeomError, LatticePoint, MaximalityKind,
    MaximalityOptions, Polytope, Region,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit_square() -> Polytope {
    poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
}

fn with_point(p: &Polytope, z: &[i64]) -> Polytope {
    let mut pts = p.vertices().to_vec();
    pts.push(lattice_to_point(z));
    hull(&pts).unwrap()
}

/// Interior lattice points by box scan, independent of the slicing engine.
fn scanned_hollow(p: &Polytope) -> bool {
    bounding_box_scan(p, 1, Region::Interior).is_empty()
}

/// Relative-interior lattice points of facet `j` by box scan.
fn scanned_relint(p: &Polytope, j: usize) -> Vec<LatticePoint> {
    let f = &p.facets()[j].halfspace;
    bounding_box_scan(p, 1, Region::Closure)
        .into_iter()
        .filter(|z| {
            let x = lattice_to_point(z);
            f.slack(&x) == rat(0)
                && p.facets().iter().enumerate().all(|(k, g)| k == j || g.halfspace.slack(&x) > rat(0))
        })
        .collect()
}

#[test]
fn facet_report_examples() {
    let t = exceptional_triangle();
    let reps = facet_reports(&t).unwrap();
    assert!(reps.iter().all(|r| r.blocked && r.relint_points.len() == 1));
    let mut mids: Vec<_> = reps.iter().map(|r| r.relint_points[0].clone()).collect();
    mids.sort();
    assert_eq!(mids, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    assert!(facet_reports(&unit_square()).unwrap().iter().all(|r| !r.blocked));

    let reps = facet_reports(&delta_i(4).unwrap()).unwrap();
    assert_eq!(reps.len(), 6);
    let mut found: Vec<LatticePoint> = reps.iter().filter(|r| r.blocked).map(|r| r.relint_points[0].clone()).collect();
    found.sort();
    let mut expected: Vec<LatticePoint> = (0..4).map(|i| (0..4).map(|j| i64::from(i != j)).collect()).collect();
    expected.push(vec![1, 1, 1, 1]);
    expected.sort();
    assert_eq!(found, expected);
    assert_eq!(reps.iter().filter(|r| !r.blocked).count(), 1);
}

#[test]
fn body_maximality_examples() {
    assert!(is_maximal_hollow_body(&exceptional_triangle()).unwrap());
    assert!(!is_maximal_hollow_body(&unit_square()).unwrap());
    assert!(!is_maximal_hollow_body(&delta_i(4).unwrap()).unwrap());
    let fat = poly(&[&[0, 0], &[3, 0], &[0, 3]]);
    assert!(matches!(is_maximal_hollow_body(&fat), Err(GeomError::NotHollow { .. })));
    assert!(matches!(is_maximal_hollow_lattice(&fat, MaximalityOptions::default()), Err(GeomError::NotHollow { .. })));
}

#[test]
fn lattice_maximality_examples() {
    let v = is_maximal_hollow_lattice(&delta_i(4).unwrap(), MaximalityOptions::default()).unwrap();
    assert_eq!(v.kind, MaximalityKind::Maximal);
    assert_eq!(v.candidate_region.as_ref().unwrap(), &delta_simplex(4).unwrap());
    assert_eq!(v.extra_points, 0);
    assert_eq!(v.blocked_facets.len(), 5);

    let v = is_maximal_hollow_lattice(&unit_square(), MaximalityOptions::default()).unwrap();
    assert_eq!(v.kind, MaximalityKind::NotMaximal);
    let z = v.witness.unwrap();
    assert!(!unit_square().contains(&lattice_to_point(&z)));
    assert!(scanned_hollow(&with_point(&unit_square(), &z)));

    let v = is_maximal_hollow_lattice(&exceptional_triangle(), MaximalityOptions::default()).unwrap();
    assert_eq!(v.kind, MaximalityKind::Maximal);
    assert_eq!(v.candidate_region.unwrap(), exceptional_triangle());
    assert_eq!(v.candidates_tested, 0);
}

#[test]
fn strip_polygon_is_not_maximal_in_any_radius() {
    // width-one strips stay hollow when extended along the strip
    let strip = poly(&[&[0, 0], &[3, 0], &[0, 1], &[1, 1]]);
    for r in 1..=3 {
        let v = is_maximal_hollow_lattice(&strip, MaximalityOptions { radius: r, candidate_cap: None }).unwrap();
        assert_eq!(v.kind, MaximalityKind::NotMaximal);
        assert!(verify_witness(&strip, v.witness.as_ref().unwrap()).unwrap());
    }
}

#[test]
fn body_maximal_implies_lattice_maximal_on_census() {
    let census = census_polygons(3).unwrap();
    let mut seen = 0;
    for c in census.hollow_classes() {
        let body = is_maximal_hollow_body(&c.polygon).unwrap();
        assert_eq!(body, c.body_maximal);
        let lat = is_maximal_hollow_lattice(&c.polygon, MaximalityOptions::default()).unwrap();
        if body {
            seen += 1;
            assert_eq!(lat.kind, MaximalityKind::Maximal);
        }
        if let Some(z) = &lat.witness {
            assert!(scanned_hollow(&with_point(&c.polygon, z)));
        }
    }
    assert_eq!(seen, 1);
}

#[test]
fn three_dimensional_hollow_polytopes() {
    let prism = poly(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 1], &[2, 0, 1], &[0, 2, 1]]);
    let v = is_maximal_hollow_lattice(&prism, MaximalityOptions::default()).unwrap();
    assert_ne!(v.kind, MaximalityKind::Maximal);
    if let Some(z) = v.witness {
        assert!(scanned_hollow(&with_point(&prism, &z)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn facet_points_match_box_scan(d in 2usize..=3, seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_lattice_polytope(d, 4, d + 3, &mut rng);
        let reps = facet_reports(&p).unwrap();
        for (j, r) in reps.iter().enumerate() {
            prop_assert_eq!(&r.relint_points, &scanned_relint(&p, j));
            prop_assert_eq!(r.blocked, !r.relint_points.is_empty());
        }
    }

    #[test]
    fn blocked_facets_block(d in 2usize..=3, seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_lattice_polytope(d, 3, d + 3, &mut rng);
        for r in facet_reports(&p).unwrap().iter().filter(|r| r.blocked) {
            let h = &r.facet.halfspace;
            for _ in 0..5 {
                let z: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=6)).collect();
                if h.slack(&lattice_to_point(&z)) >= rat(0) {
                    continue;
                }
                let q = with_point(&p, &z);
                for x in &r.relint_points {
                    prop_assert!(q.contains_in_interior(&lattice_to_point(x)));
                }
            }
        }
    }

    #[test]
    fn witnesses_reverify(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_lattice_polytope(2, 3, 4, &mut rng);
        if scanned_hollow(&p) {
            let v = is_maximal_hollow_lattice(&p, MaximalityOptions { radius: 3, candidate_cap: None }).unwrap();
            match v.kind {
                MaximalityKind::NotMaximal => {
                    let z = v.witness.unwrap();
                    prop_assert!(!p.contains(&lattice_to_point(&z)));
                    prop_assert!(scanned_hollow(&with_point(&p, &z)));
                }
                MaximalityKind::Maximal => {
                    let c = v.candidate_region.unwrap();
                    for z in bounding_box_scan(&c, 1, Region::Closure) {
                        if !p.contains(&lattice_to_point(&z)) {
                            prop_assert!(!scanned_hollow(&with_point(&p, &z)));
                        }
                    }
                }
                MaximalityKind::UnknownBeyondRadius => {
                    prop_assert!(v.candidate_region.is_none());
                    prop_assert_eq!(v.radius, Some(3));
                }
            }
        }
    }
}

#[test]
fn candidate_cap_yields_unknown() {
    let v = is_maximal_hollow_lattice(&unit_square(), MaximalityOptions { radius: 2, candidate_cap: Some(0) }).unwrap();
    assert_eq!(v.kind, MaximalityKind::UnknownBeyondRadius);
    assert!(v.capped);
}
