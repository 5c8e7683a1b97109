//! Enumeration of points of `sZ^d` in polytopes, hollowness tests and integer hulls.
//!
//! Enumeration slices coordinate by coordinate. For each prefix length `k` the
//! polytope is projected onto its first `k` coordinates; the facets of that
//! projection give exact bounds on `x_k` once `x_1, …, x_{k-1}` are fixed. For the
//! interior the same projections are used with strict inequalities, since the
//! projection of the interior of a full-dimensional polytope is the interior of
//! its projection. All inequalities are cleared to integers once, so the inner
//! loops run on `i128`.

use std::ops::ControlFlow;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::exactgeom::polytope::{hull, HalfSpace, Polytope};
use crate::exactgeom::rational::{lattice_to_point, LatticePoint, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Closure,
    Interior,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::Closure => "closure",
            Region::Interior => "interior",
        }
    }
}

/// Points of `sZ^d` in a polytope (closed, or strictly inside every facet).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePointSet {
    pub scale: u64,
    pub region: Region,
    /// Sorted lexicographically, no duplicates; every coordinate divisible by `scale`.
    pub points: Vec<LatticePoint>,
}

impl LatticePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hollowness {
    Hollow,
    NotHollow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HollownessCertificate {
    pub verdict: Hollowness,
    pub scale: u64,
    /// Lexicographically smallest interior point of `sZ^d`, if any.
    pub witness: Option<LatticePoint>,
    pub exhaustion: String,
}

impl HollownessCertificate {
    pub fn is_hollow(&self) -> bool {
        self.verdict == Hollowness::Hollow
    }
}

#[derive(Debug, Clone)]
struct IntRow {
    coeffs: Vec<i128>,
    rhs: i128,
}

/// `c·y <= r` with integer data, from `a·(s y) <= b`.
fn int_row(h: &HalfSpace, scale: u64) -> Result<IntRow> {
    let den = h.offset().denom().clone();
    let s = num_bigint::BigInt::from(scale);
    let coeffs = h
        .normal()
        .iter()
        .map(|a| (a * &den * &s).to_i128().ok_or(GeomError::Overflow))
        .collect::<Result<Vec<i128>>>()?;
    let rhs = h.offset().numer().to_i128().ok_or(GeomError::Overflow)?;
    Ok(IntRow { coeffs, rhs })
}

/// Reusable slicing enumerator for one polytope, scale and region.
#[derive(Debug, Clone)]
pub struct SliceEnumerator {
    dim: usize,
    scale: u64,
    region: Region,
    levels: Vec<Vec<IntRow>>,
}

impl SliceEnumerator {
    pub fn new(p: &Polytope, scale: u64, region: Region) -> Result<Self> {
        if scale == 0 {
            return Err(GeomError::InvalidArgument("scale must be positive".into()));
        }
        let d = p.dim();
        let mut levels = Vec::with_capacity(d);
        for k in 1..=d {
            let hs: Vec<HalfSpace> = if k == d {
                p.halfspaces().cloned().collect()
            } else {
                let proj: Vec<Point> = p.vertices().iter().map(|v| v[..k].to_vec()).collect();
                hull(&proj)?.halfspaces().cloned().collect()
            };
            let rows = hs.iter().map(|h| int_row(h, scale)).collect::<Result<Vec<_>>>()?;
            levels.push(rows);
        }
        Ok(Self { dim: d, scale, region, levels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Range of admissible `y_k` (scaled coordinates) for the given prefix.
    fn range(&self, prefix: &[i64]) -> Result<Option<(i64, i64)>> {
        let k = prefix.len();
        let strict = self.region == Region::Interior;
        let mut lo: Option<i128> = None;
        let mut hi: Option<i128> = None;
        for row in &self.levels[k] {
            let mut r = row.rhs;
            for (c, &y) in row.coeffs[..k].iter().zip(prefix) {
                let t = c.checked_mul(y as i128).ok_or(GeomError::Overflow)?;
                r = r.checked_sub(t).ok_or(GeomError::Overflow)?;
            }
            let ck = row.coeffs[k];
            if ck == 0 {
                if r < 0 || (strict && r == 0) {
                    return Ok(None);
                }
            } else if ck > 0 {
                let ub = if strict { ceil_div(r, ck) - 1 } else { Integer::div_floor(&r, &ck) };
                hi = Some(hi.map_or(ub, |h| h.min(ub)));
            } else {
                let lb = if strict { Integer::div_floor(&r, &ck) + 1 } else { ceil_div(r, ck) };
                lo = Some(lo.map_or(lb, |l| l.max(lb)));
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(GeomError::Unbounded);
        };
        if lo > hi {
            return Ok(None);
        }
        let lo = i64::try_from(lo).map_err(|_| GeomError::Overflow)?;
        let hi = i64::try_from(hi).map_err(|_| GeomError::Overflow)?;
        Ok(Some((lo, hi)))
    }

    /// Visits every fiber `{prefix} × [lo, hi]` along the last coordinate, in
    /// lexicographic order. Coordinates are in units of the scale.
    pub fn for_each_fiber<F>(&self, mut f: F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[i64], i64, i64) -> ControlFlow<()>,
    {
        let mut prefix = Vec::with_capacity(self.dim);
        self.walk(&mut prefix, &mut f)
    }

    fn walk<F>(&self, prefix: &mut Vec<i64>, f: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[i64], i64, i64) -> ControlFlow<()>,
    {
        let Some((lo, hi)) = self.range(prefix)? else {
            return Ok(ControlFlow::Continue(()));
        };
        if prefix.len() + 1 == self.dim {
            return Ok(f(prefix, lo, hi));
        }
        for y in lo..=hi {
            prefix.push(y);
            let flow = self.walk(prefix, f)?;
            prefix.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Visits every point (actual coordinates, multiples of the scale) in lexicographic order.
    pub fn for_each_point<F>(&self, mut f: F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        let s = self.scale as i64;
        let mut buf = vec![0i64; self.dim];
        self.for_each_fiber(|prefix, lo, hi| {
            for (b, &y) in buf.iter_mut().zip(prefix) {
                *b = y * s;
            }
            for y in lo..=hi {
                buf[self.dim - 1] = y * s;
                f(&buf)?;
            }
            ControlFlow::Continue(())
        })
    }

    /// Points that are endpoints of their lattice fiber along every axis. Any
    /// other lattice point lies strictly between two lattice points of the
    /// region on an axis-parallel line, so this set contains every vertex of
    /// the hull of the region's lattice points. Scaled coordinates.
    pub fn axis_endpoints(&self) -> Result<Vec<LatticePoint>> {
        let d = self.dim;
        let rows = &self.levels[d - 1];
        let strict = i128::from(self.region == Region::Interior);
        let mut out = Vec::new();
        let mut slack = vec![0i128; rows.len()];
        let mut x = vec![0i64; d];
        let _ = self.for_each_fiber(|prefix, lo, hi| {
            x[..d - 1].copy_from_slice(prefix);
            let ends = [lo, hi];
            for &y in &ends[..if hi > lo { 2 } else { 1 }] {
                x[d - 1] = y;
                for (sl, row) in slack.iter_mut().zip(rows) {
                    let ax: i128 = row.coeffs.iter().zip(&x).map(|(c, &v)| c * v as i128).sum();
                    *sl = row.rhs - ax - strict;
                }
                let interior_on_axis = (0..d - 1).any(|j| {
                    rows.iter().zip(&slack).all(|(row, &sl)| row.coeffs[j].abs() <= sl)
                });
                if !interior_on_axis {
                    out.push(x.clone());
                }
            }
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    fn collect_from(&self, prefix: &mut Vec<i64>, out: &mut Vec<LatticePoint>) -> Result<()> {
        let s = self.scale as i64;
        let Some((lo, hi)) = self.range(prefix)? else {
            return Ok(());
        };
        if prefix.len() + 1 == self.dim {
            for y in lo..=hi {
                let mut p: LatticePoint = prefix.iter().map(|&c| c * s).collect();
                p.push(y * s);
                out.push(p);
            }
            return Ok(());
        }
        for y in lo..=hi {
            prefix.push(y);
            self.collect_from(prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }

    /// Sequential collection of all points.
    pub fn collect_sequential(&self) -> Result<Vec<LatticePoint>> {
        let mut out = Vec::new();
        self.collect_from(&mut Vec::new(), &mut out)?;
        Ok(out)
    }

    /// Collection split over the first coordinate and evaluated in parallel; the
    /// per-slice results are concatenated in slice order, so the output is
    /// identical to [`collect_sequential`](Self::collect_sequential).
    pub fn collect_parallel(&self) -> Result<Vec<LatticePoint>> {
        if self.dim == 1 {
            return self.collect_sequential();
        }
        let Some((lo, hi)) = self.range(&[])? else {
            return Ok(Vec::new());
        };
        let parts: Vec<Vec<LatticePoint>> = (lo..=hi)
            .into_par_iter()
            .map(|y| {
                let mut out = Vec::new();
                self.collect_from(&mut vec![y], &mut out)?;
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.concat())
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

/// `P ∩ sZ^d` (closure) or `int(P) ∩ sZ^d` (interior).
pub fn enumerate_points(p: &Polytope, scale: u64, region: Region) -> Result<LatticePointSet> {
    let e = SliceEnumerator::new(p, scale, region)?;
    Ok(LatticePointSet { scale, region, points: e.collect_parallel()? })
}

/// Number of points, without materializing them.
pub fn count_points(p: &Polytope, scale: u64, region: Region) -> Result<u64> {
    let e = SliceEnumerator::new(p, scale, region)?;
    let mut n = 0u64;
    let _ = e.for_each_fiber(|_, lo, hi| {
        n += (hi - lo + 1) as u64;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

/// Decides whether `P` is `s`-hollow; the witness is the lexicographically
/// smallest interior point of `sZ^d`.
pub fn is_hollow(p: &Polytope, scale: u64) -> Result<HollownessCertificate> {
    let e = SliceEnumerator::new(p, scale, Region::Interior)?;
    let mut witness = None;
    let mut fibers = 0u64;
    let _ = e.for_each_fiber(|prefix, lo, _| {
        let s = scale as i64;
        let mut w: LatticePoint = prefix.iter().map(|&c| c * s).collect();
        w.push(lo * s);
        witness = Some(w);
        fibers += 1;
        ControlFlow::Break(())
    })?;
    let verdict = if witness.is_some() { Hollowness::NotHollow } else { Hollowness::Hollow };
    let exhaustion = match &witness {
        Some(_) => "interior slice enumeration stopped at first point".to_string(),
        None => format!(
            "interior slice enumeration of {}Z^{} exhausted all {} coordinate levels",
            scale,
            p.dim(),
            p.dim()
        ),
    };
    Ok(HollownessCertificate { verdict, scale, witness, exhaustion })
}

/// Index of a point maximizing `a·x`, first one on ties.
fn argmax(pts: &[LatticePoint], a: &[i128]) -> (usize, i128) {
    let mut best = (0, i128::MIN);
    for (i, x) in pts.iter().enumerate() {
        let v: i128 = a.iter().zip(x).map(|(c, &y)| c * y as i128).sum();
        if v > best.1 {
            best = (i, v);
        }
    }
    best
}

fn to_i128(v: &[crate::exactgeom::rational::Integer]) -> Result<Vec<i128>> {
    v.iter().map(|c| c.to_i128().ok_or(GeomError::Overflow)).collect()
}

/// `conv(P ∩ Z^d)`.
///
/// Starts from the hull of a few extreme lattice points and, while some facet
/// `a·x <= b` of the current hull is violated by a lattice point of `P`, adds a
/// point maximizing `a·x`. When no facet is violated the hull contains every
/// lattice point of `P` and is spanned by them.
pub fn integer_hull(p: &Polytope) -> Result<Polytope> {
    let d = p.dim();
    let pts = SliceEnumerator::new(p, 1, Region::Closure)?.axis_endpoints()?;
    if pts.is_empty() {
        return Err(GeomError::NoLatticePoints);
    }
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..d {
        for sign in [1i128, -1] {
            let mut a = vec![0i128; d];
            a[i] = sign;
            chosen.push(argmax(&pts, &a).0);
        }
    }
    chosen.sort_unstable();
    chosen.dedup();
    // raise to full dimension along normals of the affine hull
    loop {
        let base = lattice_to_point(&pts[chosen[0]]);
        let diffs: Vec<Point> = chosen[1..]
            .iter()
            .map(|&k| crate::exactgeom::rational::sub(&lattice_to_point(&pts[k]), &base))
            .collect();
        let normals = crate::exactgeom::linalg::nullspace(&diffs, d);
        if normals.is_empty() {
            break;
        }
        let mut grew = false;
        for n in &normals {
            let n = to_i128(&crate::exactgeom::rational::primitive_integer(n))?;
            let level: i128 = n.iter().zip(&pts[chosen[0]]).map(|(c, &y)| c * y as i128).sum();
            for dir in [1i128, -1] {
                let a: Vec<i128> = n.iter().map(|c| c * dir).collect();
                let (k, v) = argmax(&pts, &a);
                if v != level * dir && !chosen.contains(&k) {
                    chosen.push(k);
                    grew = true;
                }
            }
        }
        if !grew {
            return Err(GeomError::LowerDimensional { found: chosen.len().min(d) - 1, ambient: d });
        }
    }
    loop {
        let q = hull(&chosen.iter().map(|&k| lattice_to_point(&pts[k])).collect::<Vec<_>>())?;
        let mut added = false;
        for h in q.halfspaces() {
            let a = to_i128(h.normal())?;
            let b = h.offset().to_integer().to_i128().ok_or(GeomError::Overflow)?;
            let (k, v) = argmax(&pts, &a);
            if v > b && !chosen.contains(&k) {
                chosen.push(k);
                added = true;
            }
        }
        if !added {
            return Ok(q);
        }
    }
}

/// Exact membership tests of integer points against a polytope's facets,
/// with right-hand sides rounded once (`a·x <= ⌊b⌋`, resp. `a·x <= ⌈b⌉ - 1`).
#[derive(Debug, Clone)]
pub struct LatticeMembership {
    rows: Vec<(Vec<i128>, i128, i128)>,
}

impl LatticeMembership {
    pub fn new(p: &Polytope) -> Result<Self> {
        let rows = p
            .halfspaces()
            .map(|h| {
                let a = h
                    .normal()
                    .iter()
                    .map(|c| c.to_i128().ok_or(GeomError::Overflow))
                    .collect::<Result<Vec<_>>>()?;
                let b = h.offset();
                let closed = b.floor().to_integer().to_i128().ok_or(GeomError::Overflow)?;
                let open = if b.is_integer() { closed - 1 } else { closed };
                Ok((a, closed, open))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    fn eval(a: &[i128], x: &[i64]) -> i128 {
        a.iter().zip(x).map(|(c, &v)| c * v as i128).sum()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.rows.iter().all(|(a, closed, _)| Self::eval(a, x) <= *closed)
    }

    /// Closed range of the last coordinate keeping `(prefix, t)` in the polytope.
    pub fn fiber_range(&self, prefix: &[i64]) -> Option<(i64, i64)> {
        let k = prefix.len();
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        for (a, closed, _) in &self.rows {
            let r = closed - Self::eval(&a[..k], prefix);
            let c = a[k];
            if c == 0 {
                if r < 0 {
                    return None;
                }
            } else if c > 0 {
                hi = hi.min(Integer::div_floor(&r, &c));
            } else {
                lo = lo.max(ceil_div(r, c));
            }
        }
        if lo > hi {
            return None;
        }
        let clamp = |v: i128| v.clamp(i64::MIN as i128, i64::MAX as i128) as i64;
        Some((clamp(lo), clamp(hi)))
    }

    pub fn contains_in_interior(&self, x: &[i64]) -> bool {
        self.rows.iter().all(|(a, _, open)| Self::eval(a, x) <= *open)
    }
}

/// Reference enumeration by full bounding-box scan. Exponentially slower than
/// slicing; used to cross-check it.
pub fn bounding_box_scan(p: &Polytope, scale: u64, region: Region) -> Vec<LatticePoint> {
    let d = p.dim();
    let s = scale as i64;
    let lo: Vec<i64> = (0..d)
        .map(|i| {
            let m = p.vertices().iter().map(|v| v[i].clone()).min().unwrap();
            (m / crate::exactgeom::rational::rat(s)).ceil().to_integer().to_i64().unwrap()
        })
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| {
            let m = p.vertices().iter().map(|v| v[i].clone()).max().unwrap();
            (m / crate::exactgeom::rational::rat(s)).floor().to_integer().to_i64().unwrap()
        })
        .collect();
    let mut out = Vec::new();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return out;
    }
    let mut cur = lo.clone();
    loop {
        let x: Point = cur.iter().map(|&c| crate::exactgeom::rational::rat(c * s)).collect();
        let keep = match region {
            Region::Closure => p.contains(&x),
            Region::Interior => p.contains_in_interior(&x),
        };
        if keep {
            out.push(cur.iter().map(|&c| c * s).collect());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                cur[i + 1..d].copy_from_slice(&lo[i + 1..d]);
                break;
            }
        }
    }
}
