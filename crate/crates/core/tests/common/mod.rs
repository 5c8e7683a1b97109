//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hollowpoly::exactgeom::rational::{lattice_to_point, point, rat, Point, Rational};
use hollowpoly::lattice::bounding_box_scan;
use hollowpoly::{hull, Polytope, Region, UnimodularMap};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn poly(v: &[&[i64]]) -> Polytope {
    hull(&v.iter().map(|p| point(p)).collect::<Vec<_>>()).unwrap()
}

pub fn poly_owned(v: &[Vec<i64>]) -> Polytope {
    hull(&v.iter().map(|p| point(p)).collect::<Vec<_>>()).unwrap()
}

pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

/// Facet hyperplanes `(a, b)` found by trying every `d`-subset of points, with
/// `a` scaled so that its first nonzero entry is ±1. Sorted.
pub fn brute_facets(pts: &[Point]) -> BTreeSet<(Vec<Rational>, Rational)> {
    let d = pts[0].len();
    let n = pts.len();
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        // normal via cofactors of the difference matrix
        let base = &pts[idx[0]];
        let diffs: Vec<Vec<Rational>> = idx[1..]
            .iter()
            .map(|&k| pts[k].iter().zip(base).map(|(x, y)| x - y).collect())
            .collect();
        let normal: Vec<Rational> = (0..d)
            .map(|j| {
                let minor: Vec<Vec<Rational>> = diffs
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let s = if j % 2 == 0 { rat(1) } else { rat(-1) };
                s * det(&minor)
            })
            .collect();
        if normal.iter().any(|x| !x.is_zero()) {
            let b: Rational = normal.iter().zip(base).map(|(a, x)| a * x).sum();
            let sides: Vec<Rational> = pts
                .iter()
                .map(|p| normal.iter().zip(p).map(|(a, x)| a * x).sum::<Rational>() - &b)
                .collect();
            let pos = sides.iter().any(|s| s.is_positive());
            let neg = sides.iter().any(|s| s.is_negative());
            if pos != neg {
                let sign = if pos { rat(-1) } else { rat(1) };
                let lead = normal.iter().find(|x| !x.is_zero()).unwrap().abs();
                let a: Vec<Rational> = normal.iter().map(|x| x * &sign / &lead).collect();
                out.insert((a, &b * &sign / &lead));
            }
        }
        // next combination
        let mut i = d;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if idx[i] < n - d + i {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

/// Facets of a hull, normalized like [`brute_facets`].
pub fn hull_facets(p: &Polytope) -> BTreeSet<(Vec<Rational>, Rational)> {
    p.halfspaces()
        .map(|h| {
            let a = h.normal_rational();
            let lead = a.iter().find(|x| !x.is_zero()).unwrap().abs();
            (a.iter().map(|x| x / &lead).collect(), h.offset() / &lead)
        })
        .collect()
}

/// Volume of a lattice polytope from brute-force counts of `tP ∩ Z^d`:
/// the `d`-th finite difference of the Ehrhart polynomial divided by `d!`.
pub fn ehrhart_volume(p: &Polytope) -> Rational {
    let d = p.dim();
    let count = |t: i64| -> i64 {
        if t == 0 {
            return 1;
        }
        let scaled: Vec<Point> =
            p.vertices().iter().map(|v| v.iter().map(|x| x * rat(t)).collect()).collect();
        bounding_box_scan(&hull(&scaled).unwrap(), 1, Region::Closure).len() as i64
    };
    let mut diff = Rational::zero();
    let mut binom = 1i64;
    for j in 0..=d as i64 {
        let sign = if (d as i64 - j) % 2 == 0 { 1 } else { -1 };
        diff += rat(sign * binom * count(j));
        binom = binom * (d as i64 - j) / (j + 1);
    }
    let fact: i64 = (1..=d as i64).product();
    diff / rat(fact)
}

/// `max{λ : w + λy ∈ P} / max{λ : w - λy ∈ P}` by intersecting the ray with
/// every facet.
pub fn ray_ratio(p: &Polytope, w: &[Rational], y: &[Rational]) -> Rational {
    let mut fwd: Option<Rational> = None;
    let mut back: Option<Rational> = None;
    for h in p.halfspaces() {
        let a = h.normal_rational();
        let ay: Rational = a.iter().zip(y).map(|(x, z)| x * z).sum();
        let slack = h.offset() - a.iter().zip(w).map(|(x, z)| x * z).sum::<Rational>();
        if ay.is_positive() {
            let l = &slack / &ay;
            fwd = Some(fwd.map_or(l.clone(), |f| f.min(l)));
        } else if ay.is_negative() {
            let l = &slack / -&ay;
            back = Some(back.map_or(l.clone(), |f| f.min(l)));
        }
    }
    fwd.unwrap() / back.unwrap()
}

/// Random boundary point: a random convex combination of a random facet's vertices.
pub fn boundary_point(p: &Polytope, rng: &mut ChaCha8Rng) -> Point {
    let f = &p.facets()[rng.gen_range(0..p.facets().len())];
    let weights: Vec<i64> = f.vertices.iter().map(|_| rng.gen_range(0..20)).collect();
    let total: i64 = weights.iter().sum::<i64>().max(1);
    let mut x = vec![Rational::zero(); p.dim()];
    if weights.iter().all(|&w| w == 0) {
        return p.vertices()[f.vertices[0]].clone();
    }
    for (&vi, &wt) in f.vertices.iter().zip(&weights) {
        for (xc, vc) in x.iter_mut().zip(&p.vertices()[vi]) {
            *xc += vc * rat(wt) / rat(total);
        }
    }
    x
}

/// Random unimodular map as a product of elementary operations.
pub fn random_unimodular(d: usize, rng: &mut ChaCha8Rng) -> UnimodularMap {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..(2 * d + 2) {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = rng.gen_range(-2..=2);
                for k in 0..d {
                    m[i][k] += c * m[j][k];
                }
            }
            1 => m.swap(i, j),
            _ => {
                for x in m[i].iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    let t: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
    UnimodularMap::from_i64(&m, &t).unwrap()
}

/// Hull of random lattice points in `[0, side]^d`, retried until full-dimensional.
pub fn random_lattice_polytope(d: usize, side: i64, n: usize, rng: &mut ChaCha8Rng) -> Polytope {
    loop {
        let pts: Vec<Point> = (0..n)
            .map(|_| lattice_to_point(&(0..d).map(|_| rng.gen_range(0..=side)).collect::<Vec<_>>()))
            .collect();
        if let Ok(p) = hull(&pts) {
            return p;
        }
    }
}

/// Hull of random points with coordinates `p/q`, `q ∈ 1..=3`, inside `[-side, side]^d`.
pub fn random_rational_polytope(d: usize, side: i64, n: usize, rng: &mut ChaCha8Rng) -> Polytope {
    loop {
        let pts: Vec<Point> = (0..n)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        let q = rng.gen_range(1..=3i64);
                        Rational::new(rng.gen_range(-side * q..=side * q).into(), q.into())
                    })
                    .collect()
            })
            .collect();
        if let Ok(p) = hull(&pts) {
            return p;
        }
    }
}

/// Lattice width by brute force. Picks `d` independent edge vectors `m_i` from
/// the vertices; any `u` of width at most `W` has `|u·m_i| <= W`, so it suffices
/// to solve `M u = c` for every `c ∈ [-W, W]^d` by Cramer's rule.
pub fn brute_width(p: &Polytope) -> Rational {
    let d = p.dim();
    let vs = p.vertices();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for v in &vs[1..] {
        let diff: Vec<Rational> = v.iter().zip(&vs[0]).map(|(a, b)| a - b).collect();
        let mut trial = rows.clone();
        trial.push(diff.clone());
        if rank_of(&trial) == trial.len() {
            rows = trial;
        }
        if rows.len() == d {
            break;
        }
    }
    let width_of = |u: &[Rational]| {
        let vals: Vec<Rational> =
            vs.iter().map(|v| v.iter().zip(u).map(|(a, b)| a * b).sum()).collect();
        vals.iter().max().unwrap() - vals.iter().min().unwrap()
    };
    let mut best: Option<Rational> = None;
    for i in 0..d {
        let e: Vec<Rational> = (0..d).map(|j| rat(i64::from(i == j))).collect();
        let w = width_of(&e);
        if best.as_ref().is_none_or(|b| w < *b) {
            best = Some(w);
        }
    }
    let bound = best.clone().unwrap().floor().to_integer();
    let bound: i64 = bound.try_into().unwrap();
    let dm = det(&rows);
    let mut c = vec![-bound; d];
    loop {
        if c.iter().any(|&x| x != 0) {
            let u: Vec<Rational> = (0..d)
                .map(|j| {
                    let mut m = rows.clone();
                    for (r, row) in m.iter_mut().enumerate() {
                        row[j] = rat(c[r]);
                    }
                    det(&m) / &dm
                })
                .collect();
            if u.iter().all(|x| x.is_integer()) {
                let w = width_of(&u);
                if best.as_ref().is_none_or(|b| w < *b) {
                    best = Some(w);
                }
            }
        }
        let mut k = 0;
        while k < d && c[k] == bound {
            c[k] = -bound;
            k += 1;
        }
        if k == d {
            break;
        }
        c[k] += 1;
    }
    best.unwrap()
}

fn rank_of(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}
