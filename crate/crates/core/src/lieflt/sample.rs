//! Deterministic sample points for pointwise failure certificates.
//!
//! The sequence is: the origin, then `halton` points of a Halton sequence in
//! `[-2, 2]^n` starting at index `seed + 1`, then (for `n <= 6`) the integer
//! grid `{-2, ..., 2}^n` in lexicographic order. All points are exact.

use num_bigint::BigInt;

use crate::exactalg::{int, Rational};

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplePoints {
    pub seed: u64,
    pub halton: usize,
}

impl Default for SamplePoints {
    fn default() -> Self {
        SamplePoints {
            seed: 0,
            halton: 32,
        }
    }
}

/// Radical inverse of `k` in base `b`: the base-`b` digits of `k` mirrored
/// about the radix point.
fn radical_inverse(mut k: u64, b: u64) -> Rational {
    let mut v = int(0);
    let mut scale = Rational::new(BigInt::from(1), BigInt::from(b));
    while k > 0 {
        v += &scale * int((k % b) as i64);
        scale /= int(b as i64);
        k /= b;
    }
    v
}

impl SamplePoints {
    pub fn points(&self, n: usize) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![int(0); n]];
        for k in 0..self.halton as u64 {
            let idx = self.seed + 1 + k;
            out.push(
                (0..n)
                    .map(|a| int(-2) + int(4) * radical_inverse(idx, PRIMES[a % PRIMES.len()]))
                    .collect(),
            );
        }
        let total = if n <= 6 { 5usize.pow(n as u32) } else { 0 };
        for mut code in 0..total {
            let mut p = vec![int(0); n];
            for a in (0..n).rev() {
                p[a] = int((code % 5) as i64 - 2);
                code /= 5;
            }
            out.push(p);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn van_der_corput_digits() {
        assert_eq!(radical_inverse(1, 2), rat(1, 2));
        assert_eq!(radical_inverse(2, 2), rat(1, 4));
        assert_eq!(radical_inverse(3, 2), rat(3, 4));
        assert_eq!(radical_inverse(1, 3), rat(1, 3));
        assert_eq!(radical_inverse(5, 3), rat(7, 9));
    }

    #[test]
    fn sequence_layout() {
        let s = SamplePoints { seed: 0, halton: 4 };
        let pts = s.points(2);
        assert_eq!(pts.len(), 1 + 4 + 25);
        assert_eq!(pts[0], vec![int(0), int(0)]);
        assert_eq!(pts[1], vec![int(0), rat(-2, 3)]);
        assert_eq!(pts[5], vec![int(-2), int(-2)]);
        assert_eq!(s.points(2), pts);
        let shifted = SamplePoints { seed: 1, halton: 4 }.points(2);
        assert_eq!(shifted[1], pts[2]);
    }
}
