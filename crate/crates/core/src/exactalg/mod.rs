//! Exact arithmetic over the rationals.
//!
//! Everything symbolic in the crate bottoms out here: arbitrary-precision
//! rationals, sparse multivariate polynomials in graded-lex order, rational
//! functions kept in a normalized form, and a sparse exact Gaussian
//! eliminator used by every membership and relation solve.

mod gcd;
mod linsolve;
mod monomial;
mod poly;
mod ratfunc;

pub use gcd::poly_gcd;
pub use linsolve::{linear_solve_exact, rank, rank_ratfunc, LinearSolution, Rref, SparseSystem};
pub use monomial::Monomial;
pub use poly::Poly;
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Arbitrary-precision rational; always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Build the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Build the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q` (optionally signed) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, AlgError> {
    let s = s.trim();
    let bad = || AlgError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("dimension mismatch: {0} vs {1} variables")]
    DimensionMismatch(usize, usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("malformed rational literal `{0}`")]
    BadRational(String),
    #[error("matrix has {rows} rows but right-hand side has {rhs} entries")]
    ShapeMismatch { rows: usize, rhs: usize },
}
