//! Explicit polytopes: the rational simplices `Δ(d)`, their integer hulls
//! `Δ(d)_I`, the exceptional triangle, and an executable check of the claims made
//! about `Δ(d)_I`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{GeomError, Result};
use crate::exactgeom::polytope::{hull, vertices_of, HalfSpace, Polytope};
use crate::exactgeom::rational::{format_rational, point, rat, Point, Rational};
use crate::lattice::{integer_hull, is_hollow};
use crate::maximality::{
    facet_reports, is_maximal_hollow_body, is_maximal_hollow_lattice, MaximalityKind,
    MaximalityOptions,
};

/// Largest dimension accepted by [`verify_theorem_examples`].
pub const MAX_FAMILY_DIM: usize = 8;

fn pow2(e: usize) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

fn unit(d: usize, i: usize, len: Rational) -> Point {
    let mut v = vec![Rational::zero(); d];
    v[i] = len;
    v
}

/// `α = 1 / (2^(d-2) - 1)`.
pub fn alpha(d: usize) -> Rational {
    Rational::one() / (pow2(d - 2) - rat(1))
}

fn check_dim(d: usize, min: usize) -> Result<()> {
    if d < min {
        return Err(GeomError::InvalidArgument(format!("dimension must be at least {min}, got {d}")));
    }
    Ok(())
}

/// Coefficients of the slanted facet `Σ x_i / c_i <= 1` of `Δ(d)` for a given `α`.
fn slanted_coefficients(d: usize, alpha: &Rational) -> Vec<Rational> {
    let mut c: Vec<Rational> = (1..=d - 2).map(|i| Rational::one() / pow2(i)).collect();
    c.push(Rational::one() / (pow2(d - 1) - rat(1)));
    c.push(Rational::one() / (pow2(d - 1) + rat(1) + alpha));
    c
}

/// Coefficients of the cut `Σ_{i<=d-3} x_i/2^i + (2x_{d-2} + x_{d-1} + x_d)/(2^(d-1)+1) <= 1`.
fn cut_coefficients(d: usize) -> Vec<Rational> {
    let n = pow2(d - 1) + rat(1);
    let mut c: Vec<Rational> = (1..=d - 3).map(|i| Rational::one() / pow2(i)).collect();
    c.push(rat(2) / &n);
    c.push(Rational::one() / &n);
    c.push(Rational::one() / &n);
    c
}

fn nonnegativity(d: usize) -> Result<Vec<HalfSpace>> {
    (0..d).map(|i| HalfSpace::new(&unit(d, i, rat(-1)), Rational::zero())).collect()
}

/// `Δ(d)` with an arbitrary `α >= 0`; [`delta_simplex`] uses `α = 1/(2^(d-2)-1)`.
pub fn delta_simplex_with_alpha(d: usize, alpha: &Rational) -> Result<Polytope> {
    check_dim(d, 3)?;
    if alpha.is_negative() {
        return Err(GeomError::InvalidArgument("alpha must be non-negative".into()));
    }
    let mut v = vec![vec![Rational::zero(); d]];
    for i in 1..=d - 2 {
        v.push(unit(d, i - 1, pow2(i)));
    }
    v.push(unit(d, d - 2, pow2(d - 1) - rat(1)));
    v.push(unit(d, d - 1, pow2(d - 1) + rat(1) + alpha));
    hull(&v)
}

pub fn delta_simplex(d: usize) -> Result<Polytope> {
    check_dim(d, 3)?;
    delta_simplex_with_alpha(d, &alpha(d))
}

/// Inequality description of `Δ(d)`.
pub fn delta_simplex_inequalities(d: usize) -> Result<Vec<HalfSpace>> {
    check_dim(d, 3)?;
    let mut hs = nonnegativity(d)?;
    hs.push(HalfSpace::new(&slanted_coefficients(d, &alpha(d)), rat(1))?);
    Ok(hs)
}

/// The vertex list of `Δ(d)_I`.
pub fn delta_i_vertices(d: usize) -> Result<Vec<Point>> {
    check_dim(d, 4)?;
    let mut v = vec![vec![Rational::zero(); d]];
    for i in 1..=d - 2 {
        v.push(unit(d, i - 1, pow2(i)));
    }
    v.push(unit(d, d - 2, pow2(d - 1) - rat(1)));
    v.push(unit(d, d - 1, pow2(d - 1) + rat(1)));
    let mut a = unit(d, d - 1, pow2(d - 1));
    a[d - 2] = rat(1);
    v.push(a);
    let mut b = unit(d, d - 1, pow2(d - 1) - rat(1));
    b[d - 3] = rat(1);
    v.push(b);
    Ok(v)
}

/// Inequality description of `Δ(d)_I`: nonnegativity, the slanted facet of
/// `Δ(d)`, and the cut.
pub fn delta_i_inequalities(d: usize) -> Result<Vec<HalfSpace>> {
    check_dim(d, 4)?;
    let mut hs = delta_simplex_inequalities(d)?;
    hs.push(delta_i_cut(d)?);
    Ok(hs)
}

pub fn delta_i_cut(d: usize) -> Result<HalfSpace> {
    check_dim(d, 4)?;
    HalfSpace::new(&cut_coefficients(d), rat(1))
}

/// `Δ(d)_I` built from its vertex list.
pub fn delta_i(d: usize) -> Result<Polytope> {
    hull(&delta_i_vertices(d)?)
}

/// `conv{(0,0), (2,0), (0,2)}`.
pub fn exceptional_triangle() -> Polytope {
    hull(&[point(&[0, 0]), point(&[2, 0]), point(&[0, 2])]).expect("triangle is full-dimensional")
}

/// Facet vertex sets of the `k`-fold pyramid over a triangular prism. Prism
/// vertices are `0..6`, apexes `6..6+k`.
pub fn pyramid_over_prism(k: usize) -> (usize, Vec<Vec<usize>>) {
    let n = 6 + k;
    let apexes: Vec<usize> = (6..n).collect();
    let prism: [&[usize]; 5] = [&[0, 1, 2], &[3, 4, 5], &[0, 1, 3, 4], &[1, 2, 4, 5], &[0, 2, 3, 5]];
    let mut facets: Vec<Vec<usize>> = prism
        .iter()
        .map(|f| f.iter().copied().chain(apexes.iter().copied()).collect())
        .collect();
    for &a in &apexes {
        facets.push((0..n).filter(|&v| v != a).collect());
    }
    (n, facets)
}

/// True iff some bijection of vertices carries the facets of `a` onto those of `b`.
pub fn incidence_isomorphic(n: usize, a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let codeg = |fs: &[Vec<usize>]| {
        let mut m = vec![vec![0usize; n]; n];
        for f in fs {
            for &u in f {
                for &v in f {
                    m[u][v] += 1;
                }
            }
        }
        m
    };
    let ca = codeg(a);
    let cb = codeg(b);
    let target: BTreeSet<Vec<usize>> = b
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            f
        })
        .collect();

    fn search(
        u: usize,
        n: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ca: &[Vec<usize>],
        cb: &[Vec<usize>],
        a: &[Vec<usize>],
        target: &BTreeSet<Vec<usize>>,
    ) -> bool {
        if u == n {
            return a.iter().all(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| map[v]).collect();
                g.sort_unstable();
                target.contains(&g)
            });
        }
        for v in 0..n {
            if used[v] || (0..=u).any(|w| {
                let mw = if w == u { v } else { map[w] };
                ca[u][w] != cb[v][mw]
            }) {
                continue;
            }
            used[v] = true;
            map.push(v);
            if search(u + 1, n, map, used, ca, cb, a, target) {
                return true;
            }
            map.pop();
            used[v] = false;
        }
        false
    }

    search(0, n, &mut Vec::with_capacity(n), &mut vec![false; n], &ca, &cb, a, &target)
}

/// Summing the scaled slanted inequality (as `>=`) and the rounded strict cut
/// violation gives `Σ c_i x_i >= r`. With `c_i <= 0` for `i < d`, `c_d = 0` and
/// `r > 0` no nonnegative point satisfies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    /// Step by which `Σ_{i<=d-3} (2^(d-1)+1) x_i/2^i + 2x_{d-2} + x_{d-1} + x_d` moves on `Z^d`.
    pub granularity: Rational,
    pub coefficients: Vec<Rational>,
    pub rhs: Rational,
    pub valid: bool,
}

pub fn infeasibility_certificate(d: usize) -> Result<InfeasibilityCertificate> {
    check_dim(d, 4)?;
    let a = pow2(d - 1) + rat(1) + alpha(d);
    let n = pow2(d - 1) + rat(1);
    // slanted facet times -(2^(d-1)+1+α), as a >= inequality
    let lhs3: Vec<Rational> = slanted_coefficients(d, &alpha(d)).iter().map(|c| -(c * &a)).collect();
    let rhs3 = -a.clone();
    // cut times 2^(d-1)+1, strict > n
    let lhs4: Vec<Rational> = cut_coefficients(d).iter().map(|c| c * &n).collect();
    let lcm = lhs4.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let granularity = Rational::new(BigInt::one(), lcm);
    let rhs4 = &n + &granularity;
    let coefficients: Vec<Rational> = lhs3.iter().zip(&lhs4).map(|(x, y)| x + y).collect();
    let rhs = rhs3 + rhs4;
    let valid = (n.clone() / &granularity).is_integer()
        && coefficients[..d - 1].iter().all(|c| !c.is_positive())
        && coefficients[d - 1].is_zero()
        && rhs.is_positive();
    Ok(InfeasibilityCertificate { granularity, coefficients, rhs, valid })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyVerificationReport {
    pub d: usize,
    pub checks: Vec<Check>,
}

impl FamilyVerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn fmt_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

fn fmt_points(ps: &[Point]) -> String {
    ps.iter().map(|p| fmt_point(p)).collect::<Vec<_>>().join(" ")
}

fn fmt_lattice(p: &[i64]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn run<F>(checks: &mut Vec<Check>, name: &'static str, f: F)
where
    F: FnOnce() -> Result<(bool, String)>,
{
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    checks.push(Check { name, passed, detail });
}

/// Verifies every claim about `Δ(d)_I` for `4 <= d <= max_dim`.
pub fn verify_theorem_examples_up_to(d: usize, max_dim: usize) -> Result<FamilyVerificationReport> {
    if !(4..=max_dim).contains(&d) {
        return Err(GeomError::InvalidArgument(format!("dimension must lie in 4..={max_dim}")));
    }
    let delta = delta_simplex(d)?;
    let di = delta_i(d)?;
    let mut checks = Vec::new();

    run(&mut checks, "integer-hull-equality", || {
        let ih = integer_hull(&delta)?;
        Ok((ih.vertices() == di.vertices(), format!("vertices {}", fmt_points(ih.vertices()))))
    });
    run(&mut checks, "inequality-description", || {
        let q = vertices_of(&delta_i_inequalities(d)?)?;
        Ok((q.vertices() == di.vertices(), format!("vertices {}", fmt_points(q.vertices()))))
    });
    run(&mut checks, "hollow", || {
        let c = is_hollow(&di, 1)?;
        Ok((c.is_hollow(), c.exhaustion))
    });
    run(&mut checks, "vertex-count", || {
        let n = di.vertices().len();
        Ok((n == d + 3, format!("{n} vertices")))
    });
    run(&mut checks, "facet-count", || {
        let n = di.facets().len();
        Ok((n == d + 2, format!("{n} facets")))
    });
    run(&mut checks, "combinatorial-type", || {
        let fs: Vec<Vec<usize>> = di.facets().iter().map(|f| f.vertices.clone()).collect();
        let mut sizes: Vec<usize> = fs.iter().map(|f| f.len()).collect();
        sizes.sort_unstable();
        let (n, model) = pyramid_over_prism(d - 3);
        let ok = n == di.vertices().len() && incidence_isomorphic(n, &fs, &model);
        Ok((ok, format!("facet sizes {sizes:?}; {}-fold pyramid over a triangular prism", d - 3)))
    });
    run(&mut checks, "facet-interior-points", || {
        let reports = facet_reports(&di)?;
        let unblocked: Vec<usize> =
            reports.iter().enumerate().filter(|(_, r)| !r.blocked).map(|(i, _)| i).collect();
        let mut expected: Vec<Vec<i64>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { 0 } else { 1 }).collect())
            .collect();
        expected.push(vec![1; d]);
        let found: Vec<bool> = expected
            .iter()
            .map(|e| reports.iter().any(|r| r.relint_points.contains(e)))
            .collect();
        let cut = delta_i_cut(d)?;
        let ok = unblocked.len() == 1
            && reports[unblocked[0]].facet.halfspace == cut
            && found.iter().all(|&f| f);
        let witnesses: Vec<String> = expected.iter().map(|e| fmt_lattice(e)).collect();
        Ok((ok, format!("unblocked facets {unblocked:?}; relative-interior witnesses {}", witnesses.join(" "))))
    });
    run(&mut checks, "body-maximality", || {
        let m = is_maximal_hollow_body(&di)?;
        Ok((!m, format!("maximal hollow body: {m}")))
    });
    run(&mut checks, "lattice-maximality", || {
        let v = is_maximal_hollow_lattice(&di, MaximalityOptions::default())?;
        let region_ok = v.candidate_region.as_ref().is_some_and(|c| c.vertices() == delta.vertices());
        let ok = v.kind == MaximalityKind::Maximal && region_ok && v.extra_points == 0;
        Ok((
            ok,
            format!(
                "verdict {:?}; candidate region equals simplex: {region_ok}; extra lattice points {}",
                v.kind, v.extra_points
            ),
        ))
    });
    run(&mut checks, "infeasibility-certificate", || {
        let c = infeasibility_certificate(d)?;
        let coeffs: Vec<String> = c.coefficients.iter().map(format_rational).collect();
        Ok((
            c.valid,
            format!(
                "granularity {}; sum [{}] >= {}",
                format_rational(&c.granularity),
                coeffs.join(", "),
                format_rational(&c.rhs)
            ),
        ))
    });
    run(&mut checks, "proper-containment", || {
        let inside = di.is_subset_of(&delta);
        let apex = delta.vertices().iter().find(|v| !di.contains(v)).cloned();
        Ok((
            inside && apex.is_some(),
            format!("subset: {inside}; simplex vertex outside: {}", apex.map_or("none".into(), |p| fmt_point(&p))),
        ))
    });
    run(&mut checks, "simplex-hollow", || {
        let c = is_hollow(&delta, 1)?;
        Ok((c.is_hollow(), c.exhaustion))
    });
    Ok(FamilyVerificationReport { d, checks })
}

pub fn verify_theorem_examples(d: usize) -> Result<FamilyVerificationReport> {
    verify_theorem_examples_up_to(d, MAX_FAMILY_DIM)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::ratio;

    #[test]
    fn delta4_vertices() {
        let p = delta_simplex(4).unwrap();
        assert_eq!(alpha(4), ratio(1, 3));
        assert!(!p.is_lattice());
        let last = p.vertices().iter().map(|v| v[3].clone()).max().unwrap();
        assert_eq!(last, ratio(28, 3));
        let p3 = delta_simplex(3).unwrap();
        assert!(p3.is_lattice());
        assert!(p3.contains(&point(&[0, 0, 6])));
        assert!(delta_simplex(2).is_err());
    }

    #[test]
    fn ones_on_slanted_facet() {
        for d in 3..=8 {
            let s: Rational = slanted_coefficients(d, &alpha(d)).iter().sum();
            assert_eq!(s, rat(1), "d = {d}");
        }
    }

    #[test]
    fn delta_i_four() {
        let p = delta_i(4).unwrap();
        let expect: Vec<Point> = vec![
            point(&[0, 0, 0, 0]),
            point(&[0, 0, 0, 9]),
            point(&[0, 0, 1, 8]),
            point(&[0, 0, 7, 0]),
            point(&[0, 1, 0, 7]),
            point(&[0, 4, 0, 0]),
            point(&[2, 0, 0, 0]),
        ];
        assert_eq!(p.vertices(), &expect[..]);
        assert_eq!(p.facets().len(), 6);
    }

    #[test]
    fn cut_validity() {
        for d in 4..=8 {
            let cut = delta_i_cut(d).unwrap();
            let di = delta_i(d).unwrap();
            assert!(di.vertices().iter().all(|v| cut.contains(v)));
            let top = unit(d, d - 1, pow2(d - 1) + rat(1) + alpha(d));
            assert!(!cut.contains(&top));
            for i in 1..=d - 3 {
                assert!(cut.slack(&unit(d, i - 1, pow2(i))).is_zero());
            }
        }
    }

    #[test]
    fn certificate_matches_closed_form() {
        for d in 4..=8 {
            let c = infeasibility_certificate(d).unwrap();
            let a = alpha(d);
            assert!(c.valid);
            assert_eq!(c.granularity, Rational::one() / pow2(d - 3));
            assert_eq!(c.rhs, Rational::one() / pow2(d - 3) - &a);
            for i in 1..=d - 3 {
                assert_eq!(c.coefficients[i - 1], -(&a) / pow2(i));
            }
            assert_eq!(c.coefficients[d - 3], (rat(-1) - &a) / pow2(d - 2));
            assert_eq!(c.coefficients[d - 2], (rat(-2) - &a) / (pow2(d - 1) - rat(1)));
        }
    }

    #[test]
    fn prism_model() {
        let (n, f) = pyramid_over_prism(0);
        assert_eq!(n, 6);
        assert_eq!(f.len(), 5);
        let (n, f) = pyramid_over_prism(2);
        let mut shuffled: Vec<Vec<usize>> =
            f.iter().rev().map(|x| x.iter().map(|&v| (v + 3) % n).collect()).collect();
        shuffled.rotate_left(2);
        assert!(incidence_isomorphic(n, &f, &shuffled));
        let (_, g) = pyramid_over_prism(1);
        let cube_like: Vec<Vec<usize>> = vec![vec![0, 1, 2, 3, 4, 5, 6]; 7];
        assert!(!incidence_isomorphic(7, &g, &cube_like));
    }

    #[test]
    fn verify_four() {
        let r = verify_theorem_examples(4).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(r.checks.len(), 12);
        assert!(verify_theorem_examples(3).is_err());
        assert!(verify_theorem_examples(9).is_err());
    }
}
