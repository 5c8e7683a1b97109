//! Lattice projections, lattice width and the search for hollow projections.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{GeomError, Result};
use crate::exactgeom::hnf::{integer_kernel, row_hnf, IntMatrix};
use crate::exactgeom::linalg::rank;
use crate::exactgeom::polytope::{hull, inscribed_cube, Polytope};
use crate::exactgeom::rational::{dot_int, rat, Integer, Point, Rational};
use crate::lattice::is_hollow;

/// Surjective linear map `Z^d → Z^{d-i}` whose kernel is the saturated lattice
/// spanned by `kernel_basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionMap {
    kernel_basis: IntMatrix,
    matrix: IntMatrix,
    saturated: bool,
}

impl ProjectionMap {
    /// Row-HNF basis of the kernel lattice.
    pub fn kernel_basis(&self) -> &IntMatrix {
        &self.kernel_basis
    }

    /// `(d - i) × d` integer matrix.
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// True if the given kernel generators did not span a saturated lattice and
    /// were replaced by the saturation.
    pub fn was_saturated(&self) -> bool {
        self.saturated
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, x: &[Rational]) -> Point {
        self.matrix.iter().map(|row| dot_int(row, x)).collect()
    }
}

fn nonzero_rows(m: IntMatrix) -> IntMatrix {
    m.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Projection along the lattice spanned (after saturation) by `kernel`.
pub fn projection_along(kernel: &[Vec<Integer>], d: usize) -> Result<ProjectionMap> {
    let i = kernel.len();
    if i == 0 || i >= d {
        return Err(GeomError::InvalidArgument(format!(
            "kernel rank must lie in 1..{d}, got {i}"
        )));
    }
    if let Some(k) = kernel.iter().find(|k| k.len() != d) {
        return Err(GeomError::DimensionMismatch { expected: d, found: k.len() });
    }
    let as_rat: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|k| k.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    if rank(&as_rat) < i {
        return Err(GeomError::DependentKernel);
    }
    let matrix = integer_kernel(&kernel.to_vec(), d);
    let saturation = integer_kernel(&matrix, d);
    let given = nonzero_rows(row_hnf(&kernel.to_vec()).0);
    let kernel_basis = nonzero_rows(row_hnf(&saturation).0);
    let saturated = given != kernel_basis;
    Ok(ProjectionMap { kernel_basis, matrix, saturated })
}

pub fn projection_along_i64(kernel: &[Vec<i64>], d: usize) -> Result<ProjectionMap> {
    let k: Vec<Vec<Integer>> =
        kernel.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    projection_along(&k, d)
}

/// `φ(P)`: hull of the images of the vertices.
pub fn project_polytope(p: &Polytope, map: &ProjectionMap) -> Result<Polytope> {
    if p.dim() != map.source_dim() {
        return Err(GeomError::DimensionMismatch { expected: map.source_dim(), found: p.dim() });
    }
    let imgs: Vec<Point> = p.vertices().iter().map(|v| map.apply(v)).collect();
    hull(&imgs)
}

/// `max(u·P) - min(u·P)`.
pub fn width_along(p: &Polytope, u: &[Integer]) -> Rational {
    let vals: Vec<Rational> = p.vertices().iter().map(|v| dot_int(u, v)).collect();
    let max = vals.iter().max().unwrap();
    let min = vals.iter().min().unwrap();
    max - min
}

/// Primitive integer vectors with `‖u‖∞ = bound` whose first nonzero entry is
/// positive, in decreasing lexicographic order.
pub fn shell_directions(d: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-bound; d];
    loop {
        let first_pos = cur.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        if first_pos && cur.iter().any(|x| x.abs() == bound) {
            let g = cur.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g == 1 {
                out.push(cur.clone());
            }
        }
        let mut i = d;
        loop {
            if i == 0 {
                out.sort_by(|a, b| b.cmp(a));
                return out;
            }
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = -bound;
                }
                break;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthResult {
    pub width: Rational,
    /// First minimizing direction in scan order (shell by max-norm, then
    /// decreasing lexicographic, first nonzero entry positive).
    pub direction: Vec<Integer>,
    /// The scan stopped because the inscribed-cube bound excluded all later shells.
    pub certified: bool,
    /// Radius `t` of an inscribed cube `c + [-t, t]^d`.
    pub inscribed_radius: Rational,
    pub shells_scanned: i64,
    pub directions_checked: u64,
}

/// Lattice width with a minimizing primitive direction.
///
/// Directions are scanned shell by shell. If `P` contains a cube of radius `t`,
/// every `u` with `‖u‖∞ >= B + 1` has width at least `2t(B + 1)`, so the scan
/// stops after shell `B` once that exceeds the best width found.
pub fn lattice_width(p: &Polytope) -> Result<WidthResult> {
    let hs: Vec<_> = p.halfspaces().cloned().collect();
    let (t, _) = inscribed_cube(&hs, None).ok_or(GeomError::Unbounded)?;
    if !t.is_positive() {
        return Err(GeomError::LowerDimensional { found: p.dim() - 1, ambient: p.dim() });
    }
    let d = p.dim();
    let mut best: Option<(Rational, Vec<Integer>)> = None;
    let mut checked = 0u64;
    let mut shell = 0i64;
    loop {
        shell += 1;
        for u in shell_directions(d, shell) {
            let u: Vec<Integer> = u.into_iter().map(BigInt::from).collect();
            let w = width_along(p, &u);
            checked += 1;
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, u));
            }
        }
        let (bw, _) = best.as_ref().unwrap();
        if rat(2) * &t * rat(shell + 1) > *bw {
            break;
        }
    }
    let (width, direction) = best.unwrap();
    Ok(WidthResult {
        width,
        direction,
        certified: true,
        inscribed_radius: t,
        shells_scanned: shell,
        directions_checked: checked,
    })
}

/// Cayley polytopes are the lattice polytopes of lattice width one; the witness
/// is the width direction.
pub fn is_cayley(p: &Polytope) -> Result<(bool, Vec<Integer>)> {
    p.require_lattice()?;
    let w = lattice_width(p)?;
    Ok((w.width == Rational::one(), w.direction))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectionSearch {
    Found { direction: Vec<Integer>, map: ProjectionMap, image: Polytope },
    /// No kernel direction with `‖v‖∞ <= radius` gives an `s`-hollow image.
    /// Says nothing about larger directions.
    NoneWithinRadius { radius: i64, directions_checked: u64 },
}

/// Scans primitive kernel directions by increasing max-norm for a projection of
/// the `s`-hollow polytope `P` onto an `s`-hollow `(d-1)`-polytope.
pub fn find_hollow_projection(p: &Polytope, scale: u64, radius: i64) -> Result<ProjectionSearch> {
    if radius < 1 {
        return Err(GeomError::InvalidArgument("radius must be at least 1".into()));
    }
    let d = p.dim();
    if d < 2 {
        return Err(GeomError::InvalidArgument("projection needs dimension at least 2".into()));
    }
    let cert = is_hollow(p, scale)?;
    if let Some(w) = cert.witness {
        return Err(GeomError::NotHollow { scale, witness: w });
    }
    let mut checked = 0u64;
    for shell in 1..=radius {
        for v in shell_directions(d, shell) {
            checked += 1;
            let v: Vec<Integer> = v.into_iter().map(BigInt::from).collect();
            let map = projection_along(std::slice::from_ref(&v), d)?;
            let image = project_polytope(p, &map)?;
            if is_hollow(&image, scale)?.is_hollow() {
                return Ok(ProjectionSearch::Found { direction: v, map, image });
            }
        }
    }
    Ok(ProjectionSearch::NoneWithinRadius { radius, directions_checked: checked })
}
