//! Coefficient of asymmetry, δ-centrality and maximal-area triangles.
//!
//! For `w` interior to `P = {x : a_i·x <= b_i}` the supremum over directions `y` of
//! `max{λ : w + λy ∈ P} / max{λ : w - λy ∈ P}` is a ratio of two gauges, which is
//! maximized on the boundary of `P` and hence at a vertex. With `v` a vertex this
//! gives `ca(w, P) = max_{v, i} a_i·(w - v) / (b_i - a_i·w)`.

pub mod bounds;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::exactgeom::polytope::{hull, Polytope};
use crate::exactgeom::rational::{lattice_to_point, rat, sub, Point, Rational};
use crate::lattice::{enumerate_points, Region};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymmetryReport {
    pub point: Point,
    pub ca: Rational,
    /// `1 / (ca + 1)`.
    pub delta: Rational,
}

impl AsymmetryReport {
    fn new(point: Point, ca: Rational) -> Self {
        let delta = Rational::one() / (&ca + Rational::one());
        Self { point, ca, delta }
    }
}

/// `ca(w, P)`; `w` must lie in the interior of `P`.
pub fn coefficient_of_asymmetry(w: &[Rational], p: &Polytope) -> Result<Rational> {
    if w.len() != p.dim() {
        return Err(GeomError::DimensionMismatch { expected: p.dim(), found: w.len() });
    }
    if !p.contains_in_interior(w) {
        return Err(GeomError::NotInterior);
    }
    let slacks: Vec<Rational> = p.halfspaces().map(|h| h.slack(w)).collect();
    let mut best = Rational::zero();
    for v in p.vertices() {
        let back = sub(w, v);
        for (h, sl) in p.halfspaces().zip(&slacks) {
            let r = h.eval(&back) / sl;
            if r > best {
                best = r;
            }
        }
    }
    Ok(best)
}

/// `delta <= 1 / (ca(w, P) + 1)`.
pub fn is_delta_central(w: &[Rational], p: &Polytope, delta: &Rational) -> Result<bool> {
    if *delta <= Rational::zero() || *delta >= Rational::one() {
        return Err(GeomError::InvalidArgument("delta must lie in (0, 1)".into()));
    }
    let ca = coefficient_of_asymmetry(w, p)?;
    Ok(*delta <= Rational::one() / (ca + Rational::one()))
}

/// Point of `int(P) ∩ sZ^d` of smallest `ca`, ties broken lexicographically.
pub fn min_asymmetry_point(p: &Polytope, scale: u64) -> Result<AsymmetryReport> {
    let pts = enumerate_points(p, scale, Region::Interior)?.points;
    let scored = pts
        .par_iter()
        .map(|z| {
            let w = lattice_to_point(z);
            coefficient_of_asymmetry(&w, p).map(|ca| (ca, z.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (ca, z) = scored
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .ok_or(GeomError::NoInteriorPoints)?;
    Ok(AsymmetryReport::new(lattice_to_point(&z), ca))
}

/// All of `ca` per interior point of `sZ^d`, in lexicographic order of the points.
pub fn asymmetry_profile(p: &Polytope, scale: u64) -> Result<Vec<AsymmetryReport>> {
    let pts = enumerate_points(p, scale, Region::Interior)?.points;
    pts.par_iter()
        .map(|z| {
            let w = lattice_to_point(z);
            coefficient_of_asymmetry(&w, p).map(|ca| AsymmetryReport::new(w, ca))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxAreaTriangle {
    pub vertices: [Point; 3],
    pub area: Rational,
    /// `(-2)S + (v_0 + v_1 + v_2)`.
    pub frame: Polytope,
}

fn twice_area(a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
    let ab = sub(b, a);
    let ac = sub(c, a);
    let x = &ab[0] * &ac[1] - &ab[1] * &ac[0];
    if x < Rational::zero() { -x } else { x }
}

/// Largest-area triangle on the vertices of a polygon (first such triple in
/// lexicographic vertex order) with its containment frame.
pub fn max_area_triangle(p: &Polytope) -> Result<MaxAreaTriangle> {
    if p.dim() != 2 {
        return Err(GeomError::InvalidArgument(format!(
            "max_area_triangle needs a polygon, got dimension {}",
            p.dim()
        )));
    }
    let v = p.vertices();
    if v.len() < 3 {
        return Err(GeomError::InvalidArgument("fewer than 3 vertices".into()));
    }
    let mut best: Option<(Rational, [usize; 3])> = None;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            for k in j + 1..v.len() {
                let a = twice_area(&v[i], &v[j], &v[k]);
                if best.as_ref().is_none_or(|(b, _)| a > *b) {
                    best = Some((a, [i, j, k]));
                }
            }
        }
    }
    let (a2, [i, j, k]) = best.unwrap();
    let tri = [v[i].clone(), v[j].clone(), v[k].clone()];
    let frame_pts: Vec<Point> = (0..3)
        .map(|m| {
            let others: Vec<&Point> = (0..3).filter(|&n| n != m).map(|n| &tri[n]).collect();
            (0..2).map(|c| &others[0][c] + &others[1][c] - &tri[m][c]).collect()
        })
        .collect();
    Ok(MaxAreaTriangle { vertices: tri, area: a2 / rat(2), frame: hull(&frame_pts)? })
}
