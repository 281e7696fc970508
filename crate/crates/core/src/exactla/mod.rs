//! Exact rational arithmetic and sparse linear algebra.
//!
//! Everything in this crate that needs a rank, a kernel, a linear solve or a
//! characteristic polynomial goes through this module. Scalars are
//! arbitrary-precision rationals, so no result depends on a tolerance.

mod elim;
mod poly;
mod sparse;

pub use elim::{char_poly, determinant, inverse, kernel_basis, rank, rref, solve, Rref};
pub use poly::Poly;
pub use sparse::{SparseMat, SparseVec};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num / den` reduced to lowest terms. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (whitespace tolerated around the slash).
pub fn parse_rat(s: &str) -> Result<Rat, LinAlgError> {
    let err = || LinAlgError::ParseRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rat::new(n, d))
}

/// Dense vector helpers used throughout the crate.
pub fn zero_vec(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Serde helpers writing rationals as `p` or `p/q` strings.
pub mod serde_rat {
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    use super::{fmt_rat, Rat};

    pub fn one<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    pub fn vec<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&fmt_rat(x))?;
        }
        seq.end()
    }

    pub fn matrix<S: Serializer>(m: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
        serde::Serialize::serialize(&rows, s)
    }
}

/// Height of a rational, used as a pivot tie-breaker.
pub(crate) fn bit_size(x: &Rat) -> u64 {
    x.numer().abs().bits() + x.denom().bits()
}
