//! Arbitrary-precision scalars and small helpers around them.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GeomError, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Arbitrary-precision integer.
pub type Integer = BigInt;

/// A point of R^d with exact coordinates.
pub type Point = Vec<Rational>;

/// A point of Z^d. Coordinates of every enumerated lattice point fit in `i64`.
pub type LatticePoint = Vec<i64>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Integer {
    BigInt::from(n)
}

pub fn point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| rat(c)).collect()
}

pub fn lattice_to_point(p: &[i64]) -> Point {
    point(p)
}

/// Returns the coordinates as machine integers if the point is integral.
pub fn point_to_lattice(p: &[Rational]) -> Option<LatticePoint> {
    p.iter()
        .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
        .collect()
}

pub fn is_integral(p: &[Rational]) -> bool {
    p.iter().all(|c| c.is_integer())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[Integer], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() {
            acc += y * Rational::from_integer(x.clone());
        }
    }
    acc
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Point {
    a.iter().map(|x| x * s).collect()
}

pub fn floor_int(q: &Rational) -> Integer {
    q.floor().to_integer()
}

pub fn ceil_int(q: &Rational) -> Integer {
    q.ceil().to_integer()
}

/// Scales a nonzero rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Rational]) -> Vec<Integer> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Integer> = v
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

pub fn primitive_integer_i64(v: &[Integer]) -> Vec<Integer> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &g).collect()
}

pub fn gcd_all(v: &[Integer]) -> Integer {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Parses `"p/q"`, `"n"` or `"-p/q"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || GeomError::InvalidArgument(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Formats as `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal approximation, for reporting only.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_positive() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    })
}

pub fn cmp_lex(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    a.iter().cmp(b.iter())
}
