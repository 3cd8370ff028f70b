//! Truncated power series in `ε` with `ε^{r+1} = 0`.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Clone> TruncSeries<T> {
    /// Coefficients `c_0, ..., c_r`.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least c_0");
        TruncSeries { coeffs }
    }

    /// `c + 0ε + ... + 0ε^r`.
    pub fn constant(c: T, zero: T, order: usize) -> Self {
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> TruncSeries<U> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> TruncSeries<T>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Product truncated at `ε^{r+1}`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let r = self.order();
        let coeffs = (0..=r)
            .map(|k| {
                let mut acc = &self.coeffs[0] * &other.coeffs[k];
                for i in 1..=k {
                    acc = &acc + &(&self.coeffs[i] * &other.coeffs[k - i]);
                }
                acc
            })
            .collect();
        TruncSeries { coeffs }
    }

    pub fn pow(&self, e: u32, one: &Self) -> Self {
        let mut out = one.clone();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Multiplicative inverse, given an inverse for the constant term.
    pub fn inverse(&self, inv0: impl Fn(&T) -> Option<T>) -> Option<Self>
    where
        T: Neg<Output = T>,
    {
        let b0 = inv0(&self.coeffs[0])?;
        let mut b = vec![b0.clone()];
        for k in 1..=self.order() {
            let mut acc = &self.coeffs[1] * &b[k - 1];
            for i in 2..=k {
                acc = &acc + &(&self.coeffs[i] * &b[k - i]);
            }
            b.push(-(&b0 * &acc));
        }
        Some(TruncSeries { coeffs: b })
    }

    /// `ε^k · self`.
    pub fn shift(&self, k: usize, zero: &T) -> Self {
        let r = self.order();
        let coeffs = (0..=r)
            .map(|i| {
                if i < k {
                    zero.clone()
                } else {
                    self.coeffs[i - k].clone()
                }
            })
            .collect();
        TruncSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat, Rational};

    fn s(v: &[i64]) -> TruncSeries<Rational> {
        TruncSeries::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn truncation() {
        // (1 + ε)^3 mod ε^3 = 1 + 3ε + 3ε^2
        let a = s(&[1, 1, 0]);
        assert_eq!(a.pow(3, &s(&[1, 0, 0])), s(&[1, 3, 3]));
        // ε · ε^r = 0
        let eps = s(&[0, 1, 0]);
        assert_eq!(eps.mul(&eps).mul(&eps), s(&[0, 0, 0]));
    }

    #[test]
    fn inverse_of_geometric_series() {
        let a = s(&[2, 1, 0, 0]);
        let b = a.inverse(|c| Some(int(1) / c)).unwrap();
        assert_eq!(b.coeffs(), &[rat(1, 2), rat(-1, 4), rat(1, 8), rat(-1, 16)]);
        assert_eq!(a.mul(&b), s(&[1, 0, 0, 0]));
        assert!(s(&[0, 1])
            .inverse(|c| if *c == int(0) { None } else { Some(int(1) / c) })
            .is_none());
    }
}
