//! `PolytopeDocument` JSON: `{"dim", "vertices"?, "inequalities"?, "metadata"?}`
//! with rationals as `"p/q"` strings or exact integers.

use std::collections::BTreeMap;

use hollowpoly::exactgeom::rational::{format_rational, parse_rational};
use hollowpoly::{hull, vertices_of, HalfSpace, Integer, Point, Polytope, Rational};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeDocument {
    pub dim: usize,
    pub vertices: Option<Vec<Point>>,
    pub inequalities: Option<Vec<HalfSpace>>,
    pub metadata: BTreeMap<String, String>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Document(msg.into())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(BigInt::from(u)))
            } else {
                Err(bad(format!("non-integer number {n}; write rationals as \"p/q\"")))
            }
        }
        other => Err(bad(format!("expected a rational, found {other}"))),
    }
}

/// Bare number when the value is an integer that fits in `i64`, else a string.
pub fn rational_to_json(q: &Rational) -> Value {
    if q.is_integer() {
        if let Ok(i) = i64::try_from(q.numer().clone()) {
            return json!(i);
        }
    }
    Value::String(format_rational(q))
}

pub fn integer_to_json(n: &Integer) -> Value {
    match i64::try_from(n.clone()) {
        Ok(i) => json!(i),
        Err(_) => Value::String(n.to_string()),
    }
}

pub fn point_to_json(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rational_to_json).collect())
}

pub fn integers_to_json(v: &[Integer]) -> Value {
    Value::Array(v.iter().map(integer_to_json).collect())
}

pub fn lattice_to_json(v: &[i64]) -> Value {
    json!(v)
}

fn point_from_json(v: &Value, dim: usize) -> Result<Point> {
    let arr = v.as_array().ok_or_else(|| bad("a point must be an array"))?;
    if arr.len() != dim {
        return Err(bad(format!("point has {} coordinates, expected {dim}", arr.len())));
    }
    arr.iter().map(rational_from_json).collect()
}

fn halfspace_from_json(v: &Value, dim: usize) -> Result<HalfSpace> {
    let obj = v.as_object().ok_or_else(|| bad("an inequality must be an object {a, b}"))?;
    let a = obj.get("a").and_then(Value::as_array).ok_or_else(|| bad("inequality needs an array \"a\""))?;
    if a.len() != dim {
        return Err(bad(format!("inequality has {} coefficients, expected {dim}", a.len())));
    }
    let a: Vec<Rational> = a
        .iter()
        .map(|c| {
            let q = rational_from_json(c)?;
            if q.is_integer() { Ok(q) } else { Err(bad("inequality coefficients must be integers")) }
        })
        .collect::<Result<_>>()?;
    let b = rational_from_json(obj.get("b").ok_or_else(|| bad("inequality needs \"b\""))?)?;
    Ok(HalfSpace::new(&a, b)?)
}

impl PolytopeDocument {
    pub fn parse_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| bad("document must be a JSON object"))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("\"dim\" must be a positive integer"))? as usize;
        if dim == 0 {
            return Err(bad("\"dim\" must be a positive integer"));
        }
        let vertices = match obj.get("vertices") {
            None | Some(Value::Null) => None,
            Some(Value::Array(vs)) => Some(vs.iter().map(|p| point_from_json(p, dim)).collect::<Result<Vec<_>>>()?),
            Some(_) => return Err(bad("\"vertices\" must be an array")),
        };
        let inequalities = match obj.get("inequalities") {
            None | Some(Value::Null) => None,
            Some(Value::Array(hs)) => Some(hs.iter().map(|h| halfspace_from_json(h, dim)).collect::<Result<Vec<_>>>()?),
            Some(_) => return Err(bad("\"inequalities\" must be an array")),
        };
        if vertices.is_none() && inequalities.is_none() {
            return Err(bad("document needs \"vertices\" or \"inequalities\""));
        }
        let mut metadata = BTreeMap::new();
        if let Some(m) = obj.get("metadata") {
            let m = m.as_object().ok_or_else(|| bad("\"metadata\" must be an object"))?;
            for (k, v) in m {
                let s = v.as_str().ok_or_else(|| bad("metadata values must be strings"))?;
                metadata.insert(k.clone(), s.to_string());
            }
        }
        Ok(Self { dim, vertices, inequalities, metadata })
    }

    /// Builds the polytope; when both descriptions are given they must agree.
    pub fn to_polytope(&self) -> Result<Polytope> {
        let from_v = self.vertices.as_ref().map(|v| hull(v)).transpose()?;
        let from_h = self.inequalities.as_ref().map(|h| vertices_of(h)).transpose()?;
        match (from_v, from_h) {
            (Some(p), Some(q)) if p != q => Err(bad("vertices and inequalities describe different polytopes")),
            (Some(p), _) | (None, Some(p)) => Ok(p),
            (None, None) => unreachable!("checked on parse"),
        }
    }

    pub fn from_polytope(p: &Polytope) -> Self {
        Self {
            dim: p.dim(),
            vertices: Some(p.vertices().to_vec()),
            inequalities: Some(p.halfspaces().cloned().collect()),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<String>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("dim".into(), json!(self.dim));
        if let Some(vs) = &self.vertices {
            m.insert("vertices".into(), Value::Array(vs.iter().map(|v| point_to_json(v)).collect()));
        }
        if let Some(hs) = &self.inequalities {
            let rows = hs
                .iter()
                .map(|h| json!({ "a": integers_to_json(h.normal()), "b": Value::String(format_rational(h.offset())) }))
                .collect();
            m.insert("inequalities".into(), Value::Array(rows));
        }
        if !self.metadata.is_empty() {
            m.insert("metadata".into(), json!(self.metadata));
        }
        Value::Object(m)
    }
}

pub fn polytope_json(p: &Polytope) -> Value {
    PolytopeDocument::from_polytope(p).to_json()
}
