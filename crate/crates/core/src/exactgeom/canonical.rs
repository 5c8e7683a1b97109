//! Unimodular-equivalence normal form of lattice polytopes.
//!
//! Vertices and facets are colored by iterated refinement of the pairing matrix
//! `PM[j][i] = b_j - a_j·v_i` (lattice distance of vertex `i` from facet `j`), which
//! every affine unimodular map preserves up to relabeling. Remaining ties are
//! split by individualizing one vertex at a time. Every leaf of that search gives
//! a vertex order `v_0, …, v_{n-1}`; the leaf's key is the row Hermite normal form
//! of the difference matrix `[v_1 - v_0 | … | v_{n-1} - v_0]`, and the canonical
//! form is the smallest key. Equal keys exhibit the unimodular map directly.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::hnf::{row_hnf, IntMatrix};
use super::polytope::Polytope;
use crate::error::Result;

/// Canonical representative of a lattice polytope's unimodular class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub dim: usize,
    pub vertex_count: usize,
    /// `dim × (vertex_count - 1)` Hermite normal form of the difference matrix.
    pub matrix: IntMatrix,
}

impl CanonicalForm {
    /// Vertices of the representative polytope: the origin plus the matrix columns.
    pub fn representative_vertices(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::from(0); self.dim]];
        for j in 0..self.vertex_count - 1 {
            out.push(self.matrix.iter().map(|row| row[j].clone()).collect());
        }
        out
    }
}

type Colors = Vec<usize>;

fn relabel<K: Ord + Clone>(sigs: &[K]) -> Colors {
    let mut sorted: Vec<K> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
}

fn distinct(c: &Colors) -> usize {
    let mut v = c.clone();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn refine(pm: &[Vec<i64>], vcol: &mut Colors, fcol: &mut Colors) {
    let nv = vcol.len();
    let nf = fcol.len();
    loop {
        let before = (distinct(vcol), distinct(fcol));
        let vsig: Vec<(usize, Vec<(i64, usize)>)> = (0..nv)
            .map(|i| {
                let mut s: Vec<(i64, usize)> = (0..nf).map(|j| (pm[j][i], fcol[j])).collect();
                s.sort_unstable();
                (vcol[i], s)
            })
            .collect();
        *vcol = relabel(&vsig);
        let fsig: Vec<(usize, Vec<(i64, usize)>)> = (0..nf)
            .map(|j| {
                let mut s: Vec<(i64, usize)> = (0..nv).map(|i| (pm[j][i], vcol[i])).collect();
                s.sort_unstable();
                (fcol[j], s)
            })
            .collect();
        *fcol = relabel(&fsig);
        if (distinct(vcol), distinct(fcol)) == before {
            break;
        }
    }
}

struct Search<'a> {
    pm: &'a [Vec<i64>],
    verts: &'a [Vec<BigInt>],
    dim: usize,
    best: Option<IntMatrix>,
}

impl Search<'_> {
    fn visit(&mut self, vcol: Colors, fcol: Colors) {
        let n = vcol.len();
        if distinct(&vcol) == n {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| vcol[i]);
            let key = self.key(&order);
            if self.best.as_ref().is_none_or(|b| key < *b) {
                self.best = Some(key);
            }
            return;
        }
        // smallest color shared by more than one vertex
        let mut counts = vec![0usize; n];
        for &c in &vcol {
            counts[c] += 1;
        }
        let target = (0..n).find(|&c| counts[c] > 1).unwrap();
        for v in (0..n).filter(|&i| vcol[i] == target) {
            let sig: Vec<(usize, bool)> = (0..n).map(|i| (vcol[i], i != v)).collect();
            let mut vc = relabel(&sig);
            let mut fc = fcol.clone();
            refine(self.pm, &mut vc, &mut fc);
            self.visit(vc, fc);
        }
    }

    fn key(&self, order: &[usize]) -> IntMatrix {
        let base = &self.verts[order[0]];
        let diff: IntMatrix = (0..self.dim)
            .map(|r| order[1..].iter().map(|&k| &self.verts[k][r] - &base[r]).collect())
            .collect();
        row_hnf(&diff).0
    }
}

/// Canonical form of a full-dimensional lattice polytope.
pub fn canonical_form(p: &Polytope) -> Result<CanonicalForm> {
    p.require_lattice()?;
    let verts: Vec<Vec<BigInt>> = p
        .vertices()
        .iter()
        .map(|v| v.iter().map(|c| c.to_integer()).collect())
        .collect();
    let pm: Vec<Vec<i64>> = p
        .facets()
        .iter()
        .map(|f| {
            p.vertices()
                .iter()
                .map(|v| f.halfspace.slack(v).to_integer().to_i64().unwrap_or(i64::MAX))
                .collect()
        })
        .collect();
    let mut vcol = vec![0; verts.len()];
    let mut fcol = vec![0; pm.len()];
    refine(&pm, &mut vcol, &mut fcol);
    let mut search = Search { pm: &pm, verts: &verts, dim: p.dim(), best: None };
    search.visit(vcol, fcol);
    Ok(CanonicalForm { dim: p.dim(), vertex_count: verts.len(), matrix: search.best.unwrap() })
}

/// True iff the two lattice polytopes are unimodularly equivalent.
pub fn are_equivalent(p: &Polytope, q: &Polytope) -> Result<bool> {
    p.require_lattice()?;
    q.require_lattice()?;
    if p.dim() != q.dim() || p.vertices().len() != q.vertices().len() {
        return Ok(false);
    }
    Ok(canonical_form(p)? == canonical_form(q)?)
}
