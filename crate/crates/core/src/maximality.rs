//! Maximality of hollow lattice polytopes, as convex bodies and as lattice polytopes.
//!
//! A point `z` strictly beyond a facet `F` whose relative interior holds a lattice
//! point `p` puts `p` into the interior of `conv(P ∪ {z})`. So every lattice point
//! that can be added while staying hollow lies in the candidate region cut out by
//! the blocked facets alone.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{GeomError, Result};
use crate::exactgeom::hnf::{hermite_normal_form, IntMatrix};
use crate::exactgeom::linalg::inverse;
use crate::exactgeom::polytope::{extend, hull, is_bounded, vertices_of, Facet, HalfSpace, Polytope};
use crate::exactgeom::rational::{lattice_to_point, LatticePoint, Point, Rational};
use crate::lattice::{is_hollow, LatticeMembership, Region, SliceEnumerator};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetReport {
    pub facet: Facet,
    /// Lattice points in the relative interior of the facet, lexicographically sorted.
    pub relint_points: Vec<LatticePoint>,
    pub blocked: bool,
}

fn to_rat_matrix(m: &IntMatrix) -> Vec<Vec<Rational>> {
    m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
}

fn facet_relint(p: &Polytope, f: &Facet) -> Result<Vec<LatticePoint>> {
    let d = p.dim();
    let b = f.halfspace.offset();
    if !b.is_integer() {
        return Ok(Vec::new());
    }
    let verts: Vec<&Point> = f.vertices.iter().map(|&i| &p.vertices()[i]).collect();
    if d == 1 {
        return Ok(verts
            .iter()
            .filter_map(|v| v[0].is_integer().then(|| v[0].to_integer().to_i64()).flatten())
            .map(|x| vec![x])
            .collect());
    }
    // a·U = (1, 0, …, 0), so the hyperplane's lattice points are U·(b, y') for y' ∈ Z^{d-1}
    let (_, u) = hermite_normal_form(&vec![f.halfspace.normal().to_vec()]);
    let ur = to_rat_matrix(&u);
    let uinv = inverse(&ur).ok_or(GeomError::InvalidArgument("singular transform".into()))?;
    let coords: Vec<Point> = verts
        .iter()
        .map(|v| {
            (1..d)
                .map(|r| (0..d).map(|c| &uinv[r][c] * &v[c]).sum::<Rational>())
                .collect()
        })
        .collect();
    let face = hull(&coords)?;
    let inner = SliceEnumerator::new(&face, 1, Region::Interior)?.collect_sequential()?;
    let mut out: Vec<LatticePoint> = inner
        .into_iter()
        .map(|y| {
            let mut full: Vec<BigInt> = vec![b.to_integer()];
            full.extend(y.into_iter().map(BigInt::from));
            (0..d)
                .map(|r| {
                    let x: BigInt = (0..d).map(|c| &u[r][c] * &full[c]).sum();
                    x.to_i64().ok_or(GeomError::Overflow)
                })
                .collect::<Result<LatticePoint>>()
        })
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Relative-interior lattice points of every facet, in facet order.
pub fn facet_reports(p: &Polytope) -> Result<Vec<FacetReport>> {
    p.facets()
        .iter()
        .map(|f| {
            let relint_points = facet_relint(p, f)?;
            let blocked = !relint_points.is_empty();
            Ok(FacetReport { facet: f.clone(), relint_points, blocked })
        })
        .collect()
}

fn require_hollow(p: &Polytope) -> Result<()> {
    p.require_lattice()?;
    let c = is_hollow(p, 1)?;
    match c.witness {
        Some(w) => Err(GeomError::NotHollow { scale: 1, witness: w }),
        None => Ok(()),
    }
}

/// A hollow polytope is maximal among hollow convex bodies iff every facet is blocked.
pub fn is_maximal_hollow_body(p: &Polytope) -> Result<bool> {
    require_hollow(p)?;
    Ok(facet_reports(p)?.iter().all(|r| r.blocked))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximalityKind {
    Maximal,
    NotMaximal,
    UnknownBeyondRadius,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalityVerdict {
    pub kind: MaximalityKind,
    /// Indices into `P.facets()` of the blocked facets.
    pub blocked_facets: Vec<usize>,
    /// The candidate region when it is bounded.
    pub candidate_region: Option<Polytope>,
    /// Lattice points of the candidate region (or scanned box) outside `P`.
    pub extra_points: u64,
    pub candidates_tested: u64,
    /// Lexicographically smallest `z ∉ P` with `conv(P ∪ {z})` hollow.
    pub witness: Option<LatticePoint>,
    /// Box radius used when the candidate region is unbounded.
    pub radius: Option<i64>,
    /// Set when the candidate cap stopped the scan.
    pub capped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaximalityOptions {
    pub radius: i64,
    /// Maximum number of points outside `P` to test before giving up.
    pub candidate_cap: Option<u64>,
}

impl Default for MaximalityOptions {
    fn default() -> Self {
        Self { radius: 2, candidate_cap: None }
    }
}

struct Scan<'a> {
    p: &'a Polytope,
    member: LatticeMembership,
    cap: Option<u64>,
    extra: u64,
    tested: u64,
    witness: Option<LatticePoint>,
    capped: bool,
    error: Option<GeomError>,
}

impl Scan<'_> {
    fn visit(&mut self, z: &[i64]) -> ControlFlow<()> {
        if self.member.contains(z) {
            return ControlFlow::Continue(());
        }
        self.extra += 1;
        if self.cap.is_some_and(|c| self.tested >= c) {
            self.capped = true;
            return ControlFlow::Break(());
        }
        self.tested += 1;
        let q = match extend(self.p, &[lattice_to_point(z)]).and_then(|q| is_hollow(&q, 1)) {
            Ok(c) => c,
            Err(e) => {
                self.error = Some(e);
                return ControlFlow::Break(());
            }
        };
        if q.is_hollow() {
            self.witness = Some(z.to_vec());
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    }
}

/// Decides whether a hollow lattice polytope is maximal among hollow lattice
/// polytopes. Exact when the candidate region is bounded; otherwise only lattice
/// points with `‖z‖∞ <= radius` are examined.
pub fn is_maximal_hollow_lattice(p: &Polytope, opts: MaximalityOptions) -> Result<MaximalityVerdict> {
    if opts.radius < 0 {
        return Err(GeomError::InvalidArgument("radius must be non-negative".into()));
    }
    require_hollow(p)?;
    let reports = facet_reports(p)?;
    let blocked_facets: Vec<usize> =
        reports.iter().enumerate().filter(|(_, r)| r.blocked).map(|(i, _)| i).collect();
    let region: Vec<HalfSpace> =
        blocked_facets.iter().map(|&i| p.facets()[i].halfspace.clone()).collect();
    let bounded = !region.is_empty() && is_bounded(&region);
    let mut scan = Scan {
        p,
        member: LatticeMembership::new(p)?,
        cap: opts.candidate_cap,
        extra: 0,
        tested: 0,
        witness: None,
        capped: false,
        error: None,
    };
    let candidate_region = if bounded {
        let c = vertices_of(&region)?;
        let e = SliceEnumerator::new(&c, 1, Region::Closure)?;
        let mut z = vec![0i64; p.dim()];
        let _ = e.for_each_fiber(|prefix, lo, hi| {
            let inside = scan.member.fiber_range(prefix);
            z[..prefix.len()].copy_from_slice(prefix);
            let outside = match inside {
                Some((a, b)) => [(lo, hi.min(a.saturating_sub(1))), (lo.max(b.saturating_add(1)), hi)],
                None => [(lo, hi), (1, 0)],
            };
            for (from, to) in outside {
                for y in from..=to {
                    *z.last_mut().unwrap() = y;
                    scan.visit(&z)?;
                }
            }
            ControlFlow::Continue(())
        })?;
        Some(c)
    } else {
        let d = p.dim();
        let r = opts.radius;
        let mut z = vec![-r; d];
        'outer: loop {
            let zr = lattice_to_point(&z);
            if region.iter().all(|h| h.contains(&zr)) && scan.visit(&z).is_break() {
                break;
            }
            let mut i = d;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                if z[i] < r {
                    z[i] += 1;
                    for c in z.iter_mut().skip(i + 1) {
                        *c = -r;
                    }
                    break;
                }
            }
        }
        None
    };
    if let Some(e) = scan.error {
        return Err(e);
    }
    let kind = if scan.witness.is_some() {
        MaximalityKind::NotMaximal
    } else if bounded && !scan.capped {
        MaximalityKind::Maximal
    } else {
        MaximalityKind::UnknownBeyondRadius
    };
    Ok(MaximalityVerdict {
        kind,
        blocked_facets,
        candidate_region,
        extra_points: scan.extra,
        candidates_tested: scan.tested,
        witness: scan.witness,
        radius: (!bounded).then_some(opts.radius),
        capped: scan.capped,
    })
}

/// Re-checks a non-maximality witness: `z ∉ P` and `conv(P ∪ {z})` hollow.
pub fn verify_witness(p: &Polytope, z: &[i64]) -> Result<bool> {
    let zp = lattice_to_point(z);
    if p.contains(&zp) {
        return Ok(false);
    }
    Ok(is_hollow(&extend(p, &[zp])?, 1)?.is_hollow())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::point;

    fn poly(v: &[&[i64]]) -> Polytope {
        hull(&v.iter().map(|p| point(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn triangle_all_blocked() {
        let t = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        let mut pts: Vec<LatticePoint> =
            facet_reports(&t).unwrap().into_iter().flat_map(|r| r.relint_points).collect();
        pts.sort();
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(is_maximal_hollow_body(&t).unwrap());
        let v = is_maximal_hollow_lattice(&t, MaximalityOptions::default()).unwrap();
        assert_eq!(v.kind, MaximalityKind::Maximal);
        assert_eq!(v.candidate_region.as_ref(), Some(&t));
        assert_eq!(v.extra_points, 0);
    }

    #[test]
    fn square_not_maximal() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(facet_reports(&sq).unwrap().iter().all(|r| !r.blocked));
        assert!(!is_maximal_hollow_body(&sq).unwrap());
        let v = is_maximal_hollow_lattice(&sq, MaximalityOptions { radius: 1, candidate_cap: None })
            .unwrap();
        assert_eq!(v.kind, MaximalityKind::NotMaximal);
        assert_eq!(v.witness, Some(vec![-1, 0]));
        assert!(verify_witness(&sq, &[-1, 0]).unwrap());
    }

    #[test]
    fn slanted_facet_points() {
        // edge from (0,0) to (3,3) has lattice points (1,1), (2,2)
        let t = poly(&[&[0, 0], &[3, 3], &[3, 0]]);
        let r = facet_reports(&t).unwrap();
        let diag = r.iter().find(|r| r.facet.vertices.len() == 2 && r.relint_points.contains(&vec![1, 1])).unwrap();
        assert_eq!(diag.relint_points, vec![vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn rejects_non_hollow() {
        let t = poly(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert!(matches!(is_maximal_hollow_body(&t), Err(GeomError::NotHollow { .. })));
    }

    #[test]
    fn one_dimensional() {
        let seg = poly(&[&[0], &[1]]);
        assert!(is_maximal_hollow_body(&seg).unwrap());
    }

    #[test]
    fn cap_gives_unknown() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let v = is_maximal_hollow_lattice(&sq, MaximalityOptions { radius: 1, candidate_cap: Some(0) })
            .unwrap();
        assert_eq!(v.kind, MaximalityKind::UnknownBeyondRadius);
        assert!(v.capped);
    }
}
