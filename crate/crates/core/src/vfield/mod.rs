//! Polynomial vector fields on a fixed chart.

mod parse;
mod print;

pub use parse::{parse_function, parse_poly, parse_vf};
pub use print::{format_function, format_poly, format_vf};

use thiserror::Error;

use crate::exactalg::{AlgError, Poly, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VfError {
    #[error("chart mismatch: {0} vs {1} variables")]
    ChartMismatch(usize, usize),
    #[error("invalid chart: {0}")]
    BadChart(String),
    #[error("{line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: unknown identifier `{name}`")]
    UnknownIdentifier {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("denominator vanishes identically on the submanifold")]
    VanishingDenominator,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// Named coordinates `x_1, ..., x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    /// Names must be distinct identifiers. A name may not be `d` or `d`
    /// followed by another name, since those spell differentials.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Chart, VfError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_ident(n) {
                return Err(VfError::BadChart(format!("`{n}` is not an identifier")));
            }
            if n == "d" {
                return Err(VfError::BadChart("`d` is reserved".into()));
            }
            if names[..i].contains(n) {
                return Err(VfError::BadChart(format!("duplicate variable `{n}`")));
            }
            if let Some(rest) = n.strip_prefix('d') {
                if names.iter().any(|m| m == rest) {
                    return Err(VfError::BadChart(format!(
                        "`{n}` clashes with the differential of `{rest}`"
                    )));
                }
            }
        }
        Ok(Chart { names })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// `X = sum_a f_a d/dx_a` with rational-function coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    coeffs: Vec<RatFunc>,
}

impl VectorField {
    pub fn new(coeffs: Vec<RatFunc>) -> VectorField {
        let n = coeffs.len();
        assert!(
            coeffs.iter().all(|c| c.nvars() == n),
            "coefficients must live on the chart"
        );
        VectorField { coeffs }
    }

    pub fn from_polys(coeffs: Vec<Poly>) -> VectorField {
        Self::new(coeffs.into_iter().map(RatFunc::from_poly).collect())
    }

    pub fn zero(n: usize) -> VectorField {
        VectorField {
            coeffs: vec![RatFunc::zero(n); n],
        }
    }

    /// The coordinate field `d/dx_a`.
    pub fn coord(n: usize, a: usize) -> VectorField {
        let mut v = Self::zero(n);
        v.coeffs[a] = RatFunc::one(n);
        v
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, a: usize) -> &RatFunc {
        &self.coeffs[a]
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_zero)
    }

    pub fn has_poly_coeffs(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_poly)
    }

    pub fn poly_coeffs(&self) -> Option<Vec<Poly>> {
        self.coeffs.iter().map(|c| c.as_poly().cloned()).collect()
    }

    /// Largest total degree of a polynomial coefficient (zero field: 0).
    pub fn degree(&self) -> u32 {
        self.coeffs
            .iter()
            .map(|c| {
                c.numer()
                    .degree()
                    .unwrap_or(0)
                    .max(c.denom().degree().unwrap_or(0))
            })
            .max()
            .unwrap_or(0)
    }

    fn check(&self, other: &VectorField) -> Result<(), VfError> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(VfError::ChartMismatch(self.dim(), other.dim()))
        }
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField, VfError> {
        self.check(other)?;
        Ok(VectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField, VfError> {
        self.check(other)?;
        Ok(VectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField {
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// `f X`.
    pub fn mul_fn(&self, f: &RatFunc) -> VectorField {
        VectorField {
            coeffs: self.coeffs.iter().map(|g| f * g).collect(),
        }
    }

    /// `X f = sum_a f_a df/dx_a`.
    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc, VfError> {
        if f.nvars() != self.dim() {
            return Err(VfError::ChartMismatch(self.dim(), f.nvars()));
        }
        let mut out = RatFunc::zero(self.dim());
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.diff(a);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        Ok(out)
    }

    pub fn apply_poly(&self, f: &Poly) -> Result<RatFunc, VfError> {
        self.apply(&RatFunc::from_poly(f.clone()))
    }

    /// Value at a point; `None` if a denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }

    /// Sets the listed variables to zero in every coefficient.
    pub fn set_zero(&self, vars: &[usize]) -> Result<VectorField, VfError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.set_zero(vars).map_err(|_| VfError::VanishingDenominator))
            .collect::<Result<_, _>>()?;
        Ok(VectorField { coeffs })
    }

    /// Re-embeds into a larger chart, variable `i` going to `mapping[i]`.
    pub fn embed(&self, nvars: usize, mapping: &[usize]) -> VectorField {
        let mut coeffs = vec![RatFunc::zero(nvars); nvars];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[mapping[i]] = c.embed(nvars, mapping);
        }
        VectorField { coeffs }
    }
}

/// `[X, Y]^a = sum_b (X^b d_b Y^a - Y^b d_b X^a)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, VfError> {
    x.check(y)?;
    let n = x.dim();
    let mut coeffs = Vec::with_capacity(n);
    for a in 0..n {
        let mut c = x.apply(&y.coeffs[a])?;
        let d = y.apply(&x.coeffs[a])?;
        c = &c - &d;
        coeffs.push(c);
    }
    Ok(VectorField { coeffs })
}

pub fn apply(x: &VectorField, f: &RatFunc) -> Result<RatFunc, VfError> {
    x.apply(f)
}

/// Composition `V_1 V_2 ... V_k` of vector fields, applied rightmost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOpWord {
    pub factors: Vec<VectorField>,
}

impl DiffOpWord {
    pub fn new(factors: Vec<VectorField>) -> Self {
        DiffOpWord { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc, VfError> {
        let mut g = f.clone();
        for v in self.factors.iter().rev() {
            g = v.apply(&g)?;
        }
        Ok(g)
    }
}

pub fn apply_word(word: &DiffOpWord, f: &RatFunc) -> Result<RatFunc, VfError> {
    word.apply(f)
}

/// Restriction to the coordinate subspace where every variable in `fiber`
/// vanishes. The result still lives on the full chart.
pub fn restrict_to_n(f: &RatFunc, fiber: &[usize]) -> Result<RatFunc, VfError> {
    f.set_zero(fiber).map_err(|_| VfError::VanishingDenominator)
}
