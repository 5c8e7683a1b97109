//! Closed-form bounds: the Pikhurko asymmetry bound, the Kannan–Lovász
//! `Δ_j` sequence, the resulting volume bound for exceptional hollow polytopes,
//! and the sharpened constants for polygons and dimension three.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{GeomError, Result};
use crate::exactgeom::rational::{ratio, Integer, Rational};

/// Largest allowed exponent `e` in `(8s + 7)^(2^e)`.
pub const MAX_TOWER_EXPONENT: u32 = 21;

/// Lower bound for Pikhurko's `β(2, 1)` used for polygons, as an exact rational.
pub fn beta_polygon() -> Rational {
    ratio(124_904, 1_000_000)
}

/// The slightly smaller constant used for `2Δ_1` in dimension three.
pub fn beta_polygon_strict() -> Rational {
    ratio(124_903, 1_000_000)
}

/// `(8s + 7)^(2^e)`.
fn tower(s: u64, e: u32) -> Result<Integer> {
    if e > MAX_TOWER_EXPONENT {
        return Err(GeomError::CapExceeded(format!(
            "exponent 2^{e} exceeds 2^{MAX_TOWER_EXPONENT}"
        )));
    }
    let base = BigInt::from(8u64) * BigInt::from(s) + BigInt::from(7u64);
    Ok(Pow::pow(&base, 1u64 << e))
}

fn positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(GeomError::InvalidArgument(format!("{name} must be positive")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PikhurkoBound {
    pub ca_bound: Integer,
    pub delta: Rational,
}

/// `ca <= 8k(8s+7)^(2^(2k+1)) - 1` and `δ = 1 / (8k(8s+7)^(2^(2k+1)))`.
pub fn pikhurko_bound(k: u64, s: u64) -> Result<PikhurkoBound> {
    positive("k", k)?;
    positive("s", s)?;
    let e = u32::try_from(2 * k + 1).unwrap_or(u32::MAX);
    let c = BigInt::from(8u64) * BigInt::from(k) * tower(s, e)?;
    Ok(PikhurkoBound { ca_bound: &c - BigInt::one(), delta: Rational::new(BigInt::one(), c) })
}

/// `Δ_1, …, Δ_d` with `Δ_j = 1 / (8(d-j)(8s+7)^(2^(2(d-j)+1)) + 1)`.
pub fn kl_delta_sequence(d: u64, s: u64) -> Result<Vec<Rational>> {
    positive("d", d)?;
    positive("s", s)?;
    (1..=d)
        .map(|j| {
            let m = d - j;
            let e = u32::try_from(2 * m + 1).unwrap_or(u32::MAX);
            let t = if m == 0 { BigInt::one() } else { tower(s, e)? };
            let den = BigInt::from(8u64) * BigInt::from(m) * t + BigInt::one();
            Ok(Rational::new(BigInt::one(), den))
        })
        .collect()
}

/// `s^d (8(d-1)(8s+7)^(2^(2d-1)) + 1)^d`.
pub fn exception_volume_bound(d: u64, s: u64) -> Result<Integer> {
    positive("d", d)?;
    positive("s", s)?;
    let inner = if d == 1 {
        BigInt::one()
    } else {
        let e = u32::try_from(2 * d - 1).unwrap_or(u32::MAX);
        BigInt::from(8u64) * BigInt::from(d - 1) * tower(s, e)? + BigInt::one()
    };
    Ok(Pow::pow(&BigInt::from(s), d) * Pow::pow(&inner, d))
}

pub fn decimal_digits(n: &Integer) -> usize {
    let s = n.to_string();
    s.trim_start_matches('-').len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionBound {
    /// `1 / Δ_1^3` with `Δ_1 = 0.124903 / 2`.
    pub value: Rational,
    pub ceiling: Integer,
}

pub fn proposition_bound_3d() -> PropositionBound {
    let delta1 = beta_polygon_strict() / Rational::from_integer(BigInt::from(2));
    let inv = Rational::one() / delta1;
    let value = &inv * &inv * &inv;
    let ceiling = value.ceil().to_integer();
    PropositionBound { value, ceiling }
}

/// `2 / 0.124904 - 1`.
pub fn polygon_asymmetry_bound() -> Rational {
    Rational::from_integer(BigInt::from(2)) / beta_polygon() - Rational::one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    ExceptionVolume,
    Pikhurko,
    Proposition3d,
    KlDeltas,
    PolygonAsymmetry,
}

impl Formula {
    pub fn id(self) -> &'static str {
        match self {
            Formula::ExceptionVolume => "thm21",
            Formula::Pikhurko => "thm25",
            Formula::Proposition3d => "prop16",
            Formula::KlDeltas => "kl-deltas",
            Formula::PolygonAsymmetry => "lemma27",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Formula::ExceptionVolume,
            Formula::Pikhurko,
            Formula::Proposition3d,
            Formula::KlDeltas,
            Formula::PolygonAsymmetry,
        ]
        .into_iter()
        .find(|f| f.id() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub formula: Formula,
    pub d: Option<u64>,
    pub s: Option<u64>,
    pub k: Option<u64>,
    /// One value, except for the `Δ_j` sequence.
    pub values: Vec<Rational>,
}

pub fn bound_report(formula: Formula, d: u64, s: u64, k: u64) -> Result<BoundReport> {
    let r = |values, d, s, k| BoundReport { formula, d, s, k, values };
    Ok(match formula {
        Formula::ExceptionVolume => r(
            vec![Rational::from_integer(exception_volume_bound(d, s)?)],
            Some(d),
            Some(s),
            None,
        ),
        Formula::Pikhurko => {
            let b = pikhurko_bound(k, s)?;
            r(vec![Rational::from_integer(b.ca_bound), b.delta], None, Some(s), Some(k))
        }
        Formula::Proposition3d => r(vec![proposition_bound_3d().value], Some(3), Some(1), None),
        Formula::KlDeltas => r(kl_delta_sequence(d, s)?, Some(d), Some(s), None),
        Formula::PolygonAsymmetry => r(vec![polygon_asymmetry_bound()], Some(2), Some(1), None),
    })
}
