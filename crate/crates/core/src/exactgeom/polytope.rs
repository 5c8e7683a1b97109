//! Polytopes in double description over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::linalg::{affine_rank, determinant, nullspace, rank};
use super::lp::{maximize, LpOutcome};
use super::rational::{
    dot, dot_int, is_integral, primitive_integer, rat, sub, Integer, Point, Rational,
};
use crate::error::{GeomError, Result};

/// The closed halfspace `normal · x <= offset` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    normal: Vec<Integer>,
    offset: Rational,
}

impl HalfSpace {
    /// Builds `a·x <= b` from a rational normal; rescales so the normal is primitive.
    pub fn new(normal: &[Rational], offset: Rational) -> Result<Self> {
        if normal.iter().all(|c| c.is_zero()) {
            return Err(GeomError::InvalidArgument("zero halfspace normal".into()));
        }
        let prim = primitive_integer(normal);
        // find the positive factor f with prim = f * normal
        let (idx, _) = normal.iter().enumerate().find(|(_, c)| !c.is_zero()).unwrap();
        let factor = Rational::from_integer(prim[idx].clone()) / &normal[idx];
        Ok(Self { normal: prim, offset: offset * factor })
    }

    pub fn from_ints(normal: &[i64], offset: Rational) -> Result<Self> {
        let n: Vec<Rational> = normal.iter().map(|&c| rat(c)).collect();
        Self::new(&n, offset)
    }

    pub fn normal(&self) -> &[Integer] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot_int(&self.normal, x)
    }

    /// `offset - normal·x`: positive strictly beneath, zero on the hyperplane.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.offset - self.eval(x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn normal_rational(&self) -> Vec<Rational> {
        self.normal.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }
}

/// A facet of a polytope: its supporting halfspace and incident vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub halfspace: HalfSpace,
    pub vertices: Vec<usize>,
}

/// Full-dimensional bounded polytope with both vertex and facet descriptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    is_lattice: bool,
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn halfspaces(&self) -> impl Iterator<Item = &HalfSpace> {
        self.facets.iter().map(|f| &f.halfspace)
    }

    pub fn is_lattice(&self) -> bool {
        self.is_lattice
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.halfspaces().all(|h| h.contains(x))
    }

    pub fn contains_in_interior(&self, x: &[Rational]) -> bool {
        self.halfspaces().all(|h| h.slack(x).is_positive())
    }

    /// True if every vertex of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Polytope) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    pub fn require_lattice(&self) -> Result<()> {
        if self.is_lattice {
            Ok(())
        } else {
            Err(GeomError::NotLattice)
        }
    }

    pub fn volume(&self) -> Rational {
        volume(self)
    }

    /// Mean of the vertices; an interior point.
    pub fn vertex_centroid(&self) -> Point {
        let n = rat(self.vertices.len() as i64);
        (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i].clone()).sum::<Rational>() / &n)
            .collect()
    }
}

/// Convex hull of a finite point set by exact beneath-beyond insertion.
pub fn hull(points: &[Point]) -> Result<Polytope> {
    let first = points.first().ok_or(GeomError::EmptyInput)?;
    let d = first.len();
    if d == 0 {
        return Err(GeomError::InvalidArgument("zero ambient dimension".into()));
    }
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(GeomError::DimensionMismatch { expected: d, found: p.len() });
    }
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if d == 1 {
        return hull_1d(&pts);
    }
    BeneathBeyond::run(pts, d)
}

fn hull_1d(pts: &[Point]) -> Result<Polytope> {
    let lo = pts.first().unwrap().clone();
    let hi = pts.last().unwrap().clone();
    if lo == hi {
        return Err(GeomError::LowerDimensional { found: 0, ambient: 1 });
    }
    let facets = vec![
        Facet { halfspace: HalfSpace::from_ints(&[-1], -lo[0].clone())?, vertices: vec![0] },
        Facet { halfspace: HalfSpace::from_ints(&[1], hi[0].clone())?, vertices: vec![1] },
    ];
    Ok(assemble(1, vec![lo, hi], facets))
}

fn assemble(dim: usize, vertices: Vec<Point>, mut facets: Vec<Facet>) -> Polytope {
    facets.sort_by(|a, b| a.halfspace.cmp(&b.halfspace));
    let is_lattice = vertices.iter().all(|v| is_integral(v));
    Polytope { dim, vertices, facets, is_lattice }
}

struct WorkFacet {
    normal: Vec<Integer>,
    offset: Rational,
    members: Vec<usize>,
}

struct BeneathBeyond {
    d: usize,
    pts: Vec<Point>,
    interior: Point,
    facets: Vec<WorkFacet>,
}

impl BeneathBeyond {
    fn run(pts: Vec<Point>, d: usize) -> Result<Polytope> {
        let simplex = initial_simplex(&pts, d)?;
        let interior: Point = {
            let n = rat(simplex.len() as i64);
            (0..d)
                .map(|i| simplex.iter().map(|&k| pts[k][i].clone()).sum::<Rational>() / &n)
                .collect()
        };
        let mut bb = BeneathBeyond { d, pts, interior, facets: Vec::new() };
        for skip in 0..simplex.len() {
            let members: Vec<usize> =
                simplex.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &k)| k).collect();
            let f = bb.facet_through(members);
            bb.facets.push(f);
        }
        let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
        for k in 0..bb.pts.len() {
            if !in_simplex.contains(&k) {
                bb.insert(k);
            }
        }
        Ok(bb.finish())
    }

    fn facet_through(&self, mut members: Vec<usize>) -> WorkFacet {
        members.sort_unstable();
        let base = &self.pts[members[0]];
        let diffs: Vec<Vec<Rational>> =
            members[1..].iter().map(|&k| sub(&self.pts[k], base)).collect();
        let ns = nullspace(&diffs, self.d);
        debug_assert_eq!(ns.len(), 1);
        let mut normal = primitive_integer(&ns[0]);
        let mut offset = dot_int(&normal, base);
        if dot_int(&normal, &self.interior) > offset {
            normal = normal.into_iter().map(|c| -c).collect();
            offset = -offset;
        }
        WorkFacet { normal, offset, members }
    }

    fn insert(&mut self, k: usize) {
        let p = &self.pts[k];
        let side: Vec<Ordering> = self
            .facets
            .iter()
            .map(|f| dot_int(&f.normal, p).cmp(&f.offset))
            .collect();
        if !side.contains(&Ordering::Greater) {
            return;
        }
        let mut created: Vec<WorkFacet> = Vec::new();
        for (fi, f) in self.facets.iter().enumerate() {
            if side[fi] != Ordering::Greater {
                continue;
            }
            for (gi, g) in self.facets.iter().enumerate() {
                if side[gi] != Ordering::Less {
                    continue;
                }
                let ridge: Vec<usize> =
                    f.members.iter().filter(|m| g.members.binary_search(m).is_ok()).copied().collect();
                if ridge.len() + 1 < self.d {
                    continue;
                }
                let refs: Vec<&[Rational]> = ridge.iter().map(|&m| self.pts[m].as_slice()).collect();
                if affine_rank(&refs) != self.d - 1 {
                    continue;
                }
                let mut members = ridge;
                members.push(k);
                let nf = self.facet_through(members);
                match created
                    .iter_mut()
                    .find(|c| c.normal == nf.normal && c.offset == nf.offset)
                {
                    Some(c) => {
                        for m in nf.members {
                            if let Err(pos) = c.members.binary_search(&m) {
                                c.members.insert(pos, m);
                            }
                        }
                    }
                    None => created.push(nf),
                }
            }
        }
        let old = std::mem::take(&mut self.facets);
        for (f, s) in old.into_iter().zip(side) {
            match s {
                Ordering::Greater => {}
                Ordering::Equal => {
                    let mut f = f;
                    if let Err(pos) = f.members.binary_search(&k) {
                        f.members.insert(pos, k);
                    }
                    self.facets.push(f);
                }
                Ordering::Less => self.facets.push(f),
            }
        }
        self.facets.extend(created);
    }

    fn finish(self) -> Polytope {
        let d = self.d;
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.pts.len()];
        for (fi, f) in self.facets.iter().enumerate() {
            for &m in &f.members {
                incident[m].push(fi);
            }
        }
        let normals: Vec<Vec<Rational>> = self
            .facets
            .iter()
            .map(|f| f.normal.iter().map(|c| Rational::from_integer(c.clone())).collect())
            .collect();
        let vertex_ids: Vec<usize> = (0..self.pts.len())
            .filter(|&k| {
                incident[k].len() >= d && {
                    let rows: Vec<Vec<Rational>> =
                        incident[k].iter().map(|&fi| normals[fi].clone()).collect();
                    rank(&rows) == d
                }
            })
            .collect();
        // pts are sorted, so vertex_ids preserves lexicographic order
        let mut new_index = vec![usize::MAX; self.pts.len()];
        for (i, &k) in vertex_ids.iter().enumerate() {
            new_index[k] = i;
        }
        let vertices: Vec<Point> = vertex_ids.iter().map(|&k| self.pts[k].clone()).collect();
        let facets = self
            .facets
            .into_iter()
            .map(|f| {
                let mut vs: Vec<usize> =
                    f.members.iter().map(|&m| new_index[m]).filter(|&i| i != usize::MAX).collect();
                vs.sort_unstable();
                Facet {
                    halfspace: HalfSpace { normal: f.normal, offset: f.offset },
                    vertices: vs,
                }
            })
            .collect();
        assemble(d, vertices, facets)
    }
}

fn initial_simplex(pts: &[Point], d: usize) -> Result<Vec<usize>> {
    let mut chosen = vec![0usize];
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for k in 1..pts.len() {
        if chosen.len() == d + 1 {
            break;
        }
        let mut trial = basis.clone();
        trial.push(sub(&pts[k], &pts[0]));
        if rank(&trial) == trial.len() {
            basis = trial;
            chosen.push(k);
        }
    }
    if chosen.len() < d + 1 {
        return Err(GeomError::LowerDimensional { found: chosen.len() - 1, ambient: d });
    }
    Ok(chosen)
}

/// Maximizes `t` subject to `a_i·c + t·‖a_i‖₁ <= b_i`; the largest axis-parallel
/// cube `c + [-t, t]^d` inside the system. `None` if the LP is infeasible or,
/// without a cap, unbounded.
pub fn inscribed_cube(halfspaces: &[HalfSpace], cap: Option<Rational>) -> Option<(Rational, Point)> {
    let d = halfspaces.first()?.dim();
    let mut a: Vec<Vec<Rational>> = halfspaces
        .iter()
        .map(|h| {
            let l1: Integer = h.normal().iter().map(|c| c.abs()).sum();
            let mut row = h.normal_rational();
            row.push(Rational::from_integer(l1));
            row
        })
        .collect();
    let mut b: Vec<Rational> = halfspaces.iter().map(|h| h.offset().clone()).collect();
    if let Some(cap) = cap {
        let mut row = vec![Rational::zero(); d];
        row.push(Rational::one());
        a.push(row);
        b.push(cap);
    }
    let mut c = vec![Rational::zero(); d];
    c.push(Rational::one());
    match maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, mut point } => {
            point.pop();
            Some((value, point))
        }
        LpOutcome::Unbounded | LpOutcome::Infeasible => None,
    }
}

/// True if `{x : a_i·x <= b_i}` is bounded (checked by LP in every ± axis direction).
pub fn is_bounded(halfspaces: &[HalfSpace]) -> bool {
    let Some(d) = halfspaces.first().map(|h| h.dim()) else {
        return false;
    };
    let a: Vec<Vec<Rational>> = halfspaces.iter().map(|h| h.normal_rational()).collect();
    let b: Vec<Rational> = halfspaces.iter().map(|h| h.offset().clone()).collect();
    for i in 0..d {
        for sign in [1, -1] {
            let mut c = vec![Rational::zero(); d];
            c[i] = rat(sign);
            if let LpOutcome::Unbounded = maximize(&c, &a, &b) {
                return false;
            }
        }
    }
    true
}

/// Vertex enumeration for a bounded full-dimensional inequality system: every
/// feasible intersection of `d` facet hyperplanes, deduplicated, then re-hulled so
/// the returned facet list is irredundant.
pub fn vertices_of(halfspaces: &[HalfSpace]) -> Result<Polytope> {
    let d = halfspaces.first().ok_or(GeomError::EmptyInput)?.dim();
    if let Some(h) = halfspaces.iter().find(|h| h.dim() != d) {
        return Err(GeomError::DimensionMismatch { expected: d, found: h.dim() });
    }
    let center = match inscribed_cube(halfspaces, Some(Rational::one())) {
        Some((t, c)) if t.is_positive() => c,
        _ => return Err(GeomError::EmptyInterior),
    };
    if !is_bounded(halfspaces) {
        return Err(GeomError::Unbounded);
    }
    // polar body of P - center: facets of the dual hull are the vertices of P
    let dual: Vec<Point> = halfspaces
        .iter()
        .map(|h| {
            let slack = h.slack(&center);
            h.normal_rational().into_iter().map(|a| a / &slack).collect()
        })
        .collect();
    let polar = hull(&dual)?;
    let pts: Vec<Point> = polar
        .facets()
        .iter()
        .map(|f| {
            let c = f.halfspace.offset();
            f.halfspace.normal().iter().zip(&center).map(|(n, w)| Rational::from_integer(n.clone()) / c + w).collect()
        })
        .collect();
    hull(&pts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Exact linear optimization over `P` via the rational simplex; the returned
/// point is the lexicographically smallest vertex attaining the optimum.
pub fn lp_optimize(objective: &[Integer], p: &Polytope, sense: Sense) -> Result<(Rational, Point)> {
    if objective.len() != p.dim() {
        return Err(GeomError::DimensionMismatch { expected: p.dim(), found: objective.len() });
    }
    let sign = match sense {
        Sense::Max => Rational::one(),
        Sense::Min => -Rational::one(),
    };
    let c: Vec<Rational> =
        objective.iter().map(|x| Rational::from_integer(x.clone()) * &sign).collect();
    let a: Vec<Vec<Rational>> = p.halfspaces().map(|h| h.normal_rational()).collect();
    let b: Vec<Rational> = p.halfspaces().map(|h| h.offset().clone()).collect();
    let value = match maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, .. } => value * &sign,
        LpOutcome::Unbounded => return Err(GeomError::Unbounded),
        LpOutcome::Infeasible => return Err(GeomError::EmptyInterior),
    };
    let arg = p
        .vertices()
        .iter()
        .find(|v| dot_int(objective, v) == value)
        .cloned()
        .ok_or_else(|| GeomError::InvalidArgument("optimum not attained at a vertex".into()))?;
    Ok((value, arg))
}

/// Euclidean volume, normalized so the unit cube has volume 1, via a pulling
/// triangulation that cones every face from its smallest vertex.
pub fn volume(p: &Polytope) -> Rational {
    let d = p.dim();
    let all: Vec<usize> = (0..p.vertices().len()).collect();
    let simplices = pulling_triangulation(p, &all, d);
    let fact: BigInt = (1..=d as u64).map(BigInt::from).product();
    let total: Rational = simplices
        .iter()
        .map(|s| {
            let base = &p.vertices()[s[0]];
            let m: Vec<Vec<Rational>> = s[1..].iter().map(|&k| sub(&p.vertices()[k], base)).collect();
            determinant(&m).abs()
        })
        .sum();
    total / Rational::from_integer(fact)
}

/// Simplices (as vertex index lists) of a pulling triangulation of the face with
/// vertex set `face` and dimension `dim`.
pub fn pulling_triangulation(p: &Polytope, face: &[usize], dim: usize) -> Vec<Vec<usize>> {
    if dim == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in p.facets() {
        let sub_face: Vec<usize> = face.iter().filter(|v| f.vertices.contains(v)).copied().collect();
        if sub_face.len() < dim || sub_face.len() == face.len() || sub_face.contains(&apex) {
            continue;
        }
        let refs: Vec<&[Rational]> = sub_face.iter().map(|&k| p.vertices()[k].as_slice()).collect();
        if affine_rank(&refs) == dim {
            subfaces.insert(sub_face);
        }
    }
    let mut out = Vec::new();
    for sf in subfaces {
        for mut s in pulling_triangulation(p, &sf, dim - 1) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// `conv(P ∪ extra)`.
pub fn extend(p: &Polytope, extra: &[Point]) -> Result<Polytope> {
    let mut pts = p.vertices().to_vec();
    pts.extend_from_slice(extra);
    hull(&pts)
}

pub fn max_over_vertices(p: &Polytope, direction: &[Rational]) -> Rational {
    p.vertices().iter().map(|v| dot(direction, v)).max().unwrap()
}
