//! Shared fixtures for the criterion benchmarks.

use hollowpoly::exactgeom::rational::point;
use hollowpoly::{hull, Point, Polytope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random lattice points in `[0, side]^d`.
pub fn scattered_points(d: usize, side: i64, n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| point(&(0..d).map(|_| rng.gen_range(0..=side)).collect::<Vec<_>>()))
        .collect()
}

pub fn cube(d: usize, side: i64) -> Polytope {
    let verts: Vec<Point> = (0..1u32 << d)
        .map(|m| point(&(0..d).map(|i| if m >> i & 1 == 1 { side } else { 0 }).collect::<Vec<_>>()))
        .collect();
    hull(&verts).unwrap()
}

/// The quadrilateral conv{(0,0),(k,0),(0,1),(k,-1)}.
pub fn thin_quadrilateral(k: i64) -> Polytope {
    hull(&[point(&[0, 0]), point(&[k, 0]), point(&[0, 1]), point(&[k, -1])]).unwrap()
}

/// The prism over conv{0, 2e1, 2e2} of height one, a hollow lattice 3-polytope.
pub fn hollow_prism() -> Polytope {
    hull(&[
        point(&[0, 0, 0]),
        point(&[2, 0, 0]),
        point(&[0, 2, 0]),
        point(&[0, 0, 1]),
        point(&[2, 0, 1]),
        point(&[0, 2, 1]),
    ])
    .unwrap()
}
