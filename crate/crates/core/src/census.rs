//! Exhaustive small censuses: lattice polygons in `[0,k]^2` up to unimodular
//! equivalence, and empty lattice 3-polytopes in `[0,k]^3`.
//!
//! States are lattice-point sets `P ∩ Z^n` stored as bitmasks over the box. Every
//! such set is reached from a minimal one by repeatedly adding a point and taking
//! the lattice points of the new hull, since deleting a vertex of a polytope
//! leaves the lattice-point set of a smaller polytope.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::exactgeom::canonical::{are_equivalent, canonical_form, CanonicalForm};
use crate::exactgeom::polytope::{hull, Polytope};
use crate::exactgeom::rational::{lattice_to_point, Integer, Point};
use crate::families::exceptional_triangle;
use crate::lattice::is_hollow;
use crate::maximality::is_maximal_hollow_body;
use crate::project::{lattice_width, WidthResult};

/// Default largest box size for the polygon census.
pub const MAX_CENSUS_BOX: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HollowClass {
    Exceptional,
    /// Width one along `direction`.
    Cayley { direction: Vec<Integer> },
}

/// Exceptional if equivalent to `conv{(0,0),(2,0),(0,2)}`, otherwise Cayley with a
/// width-one direction.
pub fn classify_hollow_polygon(p: &Polytope) -> Result<HollowClass> {
    if p.dim() != 2 {
        return Err(GeomError::InvalidArgument(format!("expected a polygon, got dimension {}", p.dim())));
    }
    p.require_lattice()?;
    if let Some(w) = is_hollow(p, 1)?.witness {
        return Err(GeomError::NotHollow { scale: 1, witness: w });
    }
    if are_equivalent(p, &exceptional_triangle())? {
        return Ok(HollowClass::Exceptional);
    }
    let w = lattice_width(p)?;
    if w.width == crate::exactgeom::rational::rat(1) {
        Ok(HollowClass::Cayley { direction: w.direction })
    } else {
        Err(GeomError::InvariantViolation(format!(
            "hollow polygon with lattice width {} that is not the exceptional triangle",
            crate::exactgeom::rational::format_rational(&w.width)
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonClass {
    pub form: CanonicalForm,
    /// First member in the census, in its box coordinates.
    pub polygon: Polytope,
    pub hollow: bool,
    /// Set for hollow classes only.
    pub tag: Option<HollowClass>,
    pub body_maximal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub k: u32,
    /// Lattice polygons in the box, counted as point sets.
    pub polygons: u64,
    /// Up to translation.
    pub translation_classes: u64,
    /// All unimodular classes, sorted by canonical form.
    pub classes: Vec<PolygonClass>,
}

impl CensusResult {
    pub fn hollow_classes(&self) -> impl Iterator<Item = &PolygonClass> {
        self.classes.iter().filter(|c| c.hollow)
    }

    pub fn non_hollow_classes(&self) -> impl Iterator<Item = &PolygonClass> {
        self.classes.iter().filter(|c| !c.hollow)
    }
}

struct Grid2 {
    side: i64,
    pts: Vec<[i64; 2]>,
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl Grid2 {
    fn new(k: u32) -> Self {
        let side = k as i64 + 1;
        let pts = (0..side).flat_map(|x| (0..side).map(move |y| [x, y])).collect();
        Self { side, pts }
    }

    fn members(&self, mask: u64) -> Vec<[i64; 2]> {
        (0..self.pts.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.pts[i]).collect()
    }

    /// Counter-clockwise hull vertices (monotone chain), no collinear points.
    fn hull(mut pts: Vec<[i64; 2]>) -> Vec<[i64; 2]> {
        pts.sort_unstable();
        pts.dedup();
        if pts.len() < 3 {
            return pts;
        }
        let mut h: Vec<[i64; 2]> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = h.len();
            let iter: Box<dyn Iterator<Item = &[i64; 2]>> =
                if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
            for &p in iter {
                while h.len() >= start + 2 && cross(h[h.len() - 2], h[h.len() - 1], p) <= 0 {
                    h.pop();
                }
                h.push(p);
            }
            h.pop();
        }
        h
    }

    /// Lattice points of the hull of `mask`, or `None` if it is not 2-dimensional.
    fn closure(&self, mask: u64) -> Option<(u64, Vec<[i64; 2]>)> {
        let h = Self::hull(self.members(mask));
        if h.len() < 3 {
            return None;
        }
        let mut out = 0u64;
        for (i, &p) in self.pts.iter().enumerate() {
            if (0..h.len()).all(|j| cross(h[j], h[(j + 1) % h.len()], p) >= 0) {
                out |= 1 << i;
            }
        }
        Some((out, h))
    }

    fn has_interior(&self, h: &[[i64; 2]], mask: u64) -> bool {
        self.members(mask)
            .into_iter()
            .any(|p| (0..h.len()).all(|j| cross(h[j], h[(j + 1) % h.len()], p) > 0))
    }

    fn normalize(&self, mask: u64) -> u64 {
        let m = self.members(mask);
        let mx = m.iter().map(|p| p[0]).min().unwrap();
        let my = m.iter().map(|p| p[1]).min().unwrap();
        m.iter().fold(0u64, |acc, p| acc | 1 << ((p[0] - mx) * self.side + (p[1] - my)))
    }
}

fn to_polytope(vs: &[Vec<i64>]) -> Result<Polytope> {
    let pts: Vec<Point> = vs.iter().map(|v| lattice_to_point(v)).collect();
    hull(&pts)
}

fn grow<F>(seeds: Vec<u64>, n: usize, expand: F) -> HashSet<u64>
where
    F: Fn(u64) -> Option<u64> + Sync,
{
    let mut seen: HashSet<u64> = seeds.iter().copied().collect();
    let mut frontier: Vec<u64> = seen.iter().copied().collect();
    frontier.sort_unstable();
    while !frontier.is_empty() {
        let mut next: Vec<u64> = frontier
            .par_iter()
            .flat_map_iter(|&m| {
                let expand = &expand;
                (0..n).filter(move |&i| m >> i & 1 == 0).filter_map(move |i| expand(m | 1 << i))
            })
            .collect();
        next.sort_unstable();
        next.dedup();
        frontier = next.into_iter().filter(|m| seen.insert(*m)).collect();
    }
    seen
}

fn group_by_form(polys: Vec<Polytope>) -> Result<Vec<(CanonicalForm, Polytope)>> {
    let forms = polys.par_iter().map(canonical_form).collect::<Result<Vec<_>>>()?;
    let mut classes: BTreeMap<CanonicalForm, Polytope> = BTreeMap::new();
    for (f, p) in forms.into_iter().zip(polys) {
        classes.entry(f).or_insert(p);
    }
    Ok(classes.into_iter().collect())
}

/// All lattice polygons with vertices in `[0,k]^2` up to unimodular equivalence.
pub fn census_polygons(k: u32) -> Result<CensusResult> {
    census_polygons_capped(k, MAX_CENSUS_BOX)
}

pub fn census_polygons_capped(k: u32, max_k: u32) -> Result<CensusResult> {
    if k == 0 {
        return Err(GeomError::InvalidArgument("box size must be positive".into()));
    }
    if k > max_k || k > 7 {
        return Err(GeomError::CapExceeded(format!("box size {k} exceeds cap {}", max_k.min(7))));
    }
    let g = Grid2::new(k);
    let n = g.pts.len();
    let mut seeds = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Some((m, _)) = g.closure(1 << a | 1 << b | 1 << c) {
                    seeds.push(m);
                }
            }
        }
    }
    let all = grow(seeds, n, |m| g.closure(m).map(|(c, _)| c));
    let polygons = all.len() as u64;
    let mut shapes: Vec<u64> = all.into_iter().map(|m| g.normalize(m)).collect();
    shapes.sort_unstable();
    shapes.dedup();
    let translation_classes = shapes.len() as u64;
    let polys = shapes
        .par_iter()
        .map(|&m| {
            let h = Grid2::hull(g.members(m));
            to_polytope(&h.iter().map(|p| p.to_vec()).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let classes = group_by_form(polys)?
        .into_par_iter()
        .map(|(form, polygon)| {
            let (h, mask) = {
                let vs: Vec<[i64; 2]> = polygon
                    .vertices()
                    .iter()
                    .map(|v| [v[0].to_integer().try_into().unwrap(), v[1].to_integer().try_into().unwrap()])
                    .collect();
                let h = Grid2::hull(vs);
                let mask = g.pts.iter().enumerate().fold(0u64, |acc, (i, &p)| {
                    if (0..h.len()).all(|j| cross(h[j], h[(j + 1) % h.len()], p) >= 0) {
                        acc | 1 << i
                    } else {
                        acc
                    }
                });
                (h, mask)
            };
            let hollow = !g.has_interior(&h, mask);
            let (tag, body_maximal) = if hollow {
                (Some(classify_hollow_polygon(&polygon)?), is_maximal_hollow_body(&polygon)?)
            } else {
                (None, false)
            };
            Ok(PolygonClass { form, polygon, hollow, tag, body_maximal })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CensusResult { k, polygons, translation_classes, classes })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyClass {
    pub form: CanonicalForm,
    pub polytope: Polytope,
    pub width: WidthResult,
}

struct Grid3 {
    side: i64,
    pts: Vec<[i64; 3]>,
}

fn sub3(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: [i64; 3], b: [i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Supporting planes `n·x <= c` through triples of a full-dimensional point set,
/// or `None` if the set is not full-dimensional.
fn planes3(pts: &[[i64; 3]]) -> Option<Vec<([i64; 3], i64)>> {
    let mut out = Vec::new();
    let mut full = false;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let n = cross3(sub3(pts[j], pts[i]), sub3(pts[k], pts[i]));
                if n == [0, 0, 0] {
                    continue;
                }
                let c = dot3(n, pts[i]);
                let (mut lo, mut hi) = (false, false);
                for &p in pts {
                    let s = dot3(n, p) - c;
                    lo |= s < 0;
                    hi |= s > 0;
                }
                full |= lo || hi;
                match (lo, hi) {
                    (true, false) => out.push((n, c)),
                    (false, true) => out.push(([-n[0], -n[1], -n[2]], -c)),
                    _ => {}
                }
            }
        }
    }
    full.then_some(out)
}

fn inside3(planes: &[([i64; 3], i64)], p: [i64; 3]) -> bool {
    planes.iter().all(|&(n, c)| dot3(n, p) <= c)
}

impl Grid3 {
    fn new(k: u32) -> Self {
        let side = k as i64 + 1;
        let mut pts = Vec::new();
        for x in 0..side {
            for y in 0..side {
                for z in 0..side {
                    pts.push([x, y, z]);
                }
            }
        }
        Self { side, pts }
    }

    fn members(&self, mask: u64) -> Vec<[i64; 3]> {
        (0..self.pts.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.pts[i]).collect()
    }

    /// Full-dimensional, no lattice points besides the set itself, and every
    /// member a vertex.
    fn is_empty_polytope(&self, mask: u64) -> bool {
        let m = self.members(mask);
        let Some(planes) = planes3(&m) else {
            return false;
        };
        for (i, &p) in self.pts.iter().enumerate() {
            if mask >> i & 1 == 0 && inside3(&planes, p) {
                return false;
            }
        }
        for (i, &v) in m.iter().enumerate() {
            let rest: Vec<[i64; 3]> =
                m.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &q)| q).collect();
            if let Some(pl) = planes3(&rest) {
                if inside3(&pl, v) {
                    return false;
                }
            }
        }
        true
    }

    fn normalize(&self, mask: u64) -> u64 {
        let m = self.members(mask);
        let lo: Vec<i64> = (0..3).map(|c| m.iter().map(|p| p[c]).min().unwrap()).collect();
        m.iter().fold(0u64, |acc, p| {
            let idx = ((p[0] - lo[0]) * self.side + (p[1] - lo[1])) * self.side + (p[2] - lo[2]);
            acc | 1 << idx
        })
    }
}

/// Empty lattice 3-polytopes (only lattice points are the vertices) with
/// vertices in `[0,k]^3`, up to unimodular equivalence, with their lattice widths.
pub fn empty_polytopes_3d(k: u32) -> Result<Vec<EmptyClass>> {
    if k == 0 || k > 2 {
        return Err(GeomError::CapExceeded(format!("box size {k} outside 1..=2")));
    }
    let g = Grid3::new(k);
    let n = g.pts.len();
    let mut quads = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    quads.push(1u64 << a | 1 << b | 1 << c | 1 << d);
                }
            }
        }
    }
    let seeds: Vec<u64> = quads.into_par_iter().filter(|&m| g.is_empty_polytope(m)).collect();
    let all = grow(seeds, n, |m| g.is_empty_polytope(m).then_some(m));
    let mut shapes: Vec<u64> = all.into_iter().map(|m| g.normalize(m)).collect();
    shapes.sort_unstable();
    shapes.dedup();
    let polys = shapes
        .par_iter()
        .map(|&m| to_polytope(&g.members(m).iter().map(|p| p.to_vec()).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    group_by_form(polys)?
        .into_par_iter()
        .map(|(form, polytope)| {
            let width = lattice_width(&polytope)?;
            Ok(EmptyClass { form, polytope, width })
        })
        .collect()
}
