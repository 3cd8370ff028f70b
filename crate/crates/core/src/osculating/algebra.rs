//! Negatively graded nilpotent Lie algebras by structure constants.

use num_traits::Zero;

use crate::exactalg::{int, rank, Rational};

/// Basis `e_0, ..., e_{d-1}` with `deg e_k = -degrees[k]` and
/// `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLieAlg {
    degrees: Vec<u32>,
    c: Vec<Vec<Vec<Rational>>>,
}

impl GradedLieAlg {
    pub fn new(degrees: Vec<u32>) -> Self {
        let d = degrees.len();
        GradedLieAlg {
            degrees,
            c: vec![vec![vec![int(0); d]; d]; d],
        }
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<Rational>) {
        assert_eq!(v.len(), self.dim());
        self.c[j][i] = v.iter().map(|x| -x).collect();
        self.c[i][j] = v;
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn order(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// `dim g^{-1}, ..., dim g^{-r}` for the given `r`.
    pub fn graded_dims(&self, r: u32) -> Vec<usize> {
        (1..=r)
            .map(|i| self.degrees.iter().filter(|&&d| d == i).count())
            .collect()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// Nonzero constants `(i, j, k, c^k_{ij})` with `i < j`.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for k in 0..self.dim() {
                    if !self.c[i][j][k].is_zero() {
                        out.push((i, j, k, self.c[i][j][k].clone()));
                    }
                }
            }
        }
        out
    }

    pub fn basis(&self, k: usize) -> Vec<Rational> {
        let mut v = vec![int(0); self.dim()];
        v[k] = int(1);
        v
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![int(0); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..d {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &xy * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| self.c[i][j][k] == -self.c[j][i][k].clone())))
    }

    pub fn satisfies_jacobi(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let t1 = self.bracket(&a, &self.bracket(&b, &c));
                    let t2 = self.bracket(&b, &self.bracket(&c, &a));
                    let t3 = self.bracket(&c, &self.bracket(&a, &b));
                    if (0..d).any(|l| !(&(&t1[l] + &t2[l]) + &t3[l]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `c^k_{ij} = 0` unless `deg k = deg i + deg j`.
    pub fn respects_grading(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    self.c[i][j][k].is_zero()
                        || self.degrees[k] == self.degrees[i] + self.degrees[j]
                })
            })
        })
    }

    /// `log(exp x exp y)` by the Dynkin series, truncated at bracket length
    /// equal to the largest degree.
    pub fn bch(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let m = self.order().max(1) as usize;
        let mut out = vec![int(0); self.dim()];
        for n in 1..=m {
            let sign = if n % 2 == 1 { int(1) } else { int(-1) };
            let coef_n = sign / int(n as i64);
            for pairs in dynkin_pairs(n, m) {
                let total: usize = pairs.iter().map(|(r, s)| r + s).sum();
                let mut denom = int(total as i64);
                let mut word: Vec<bool> = Vec::new();
                for &(r, s) in &pairs {
                    denom *= factorial(r) * factorial(s);
                    word.extend(std::iter::repeat_n(false, r));
                    word.extend(std::iter::repeat_n(true, s));
                }
                let v = self.nested(&word, x, y);
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                let f = &coef_n / &denom;
                for (o, vi) in out.iter_mut().zip(&v) {
                    *o += &f * vi;
                }
            }
        }
        out
    }

    /// `[w_1, [w_2, ..., [w_{k-1}, w_k]]]` with `false = x`, `true = y`.
    fn nested(&self, word: &[bool], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let pick = |b: bool| if b { y.to_vec() } else { x.to_vec() };
        let mut acc = pick(*word.last().unwrap());
        for &b in word[..word.len() - 1].iter().rev() {
            acc = self.bracket(&pick(b), &acc);
        }
        acc
    }
}

fn factorial(k: usize) -> Rational {
    (2..=k).fold(int(1), |acc, j| acc * int(j as i64))
}

/// Tuples `((r_1, s_1), ..., (r_n, s_n))` with every `r_i + s_i > 0` and
/// total length at most `m`.
fn dynkin_pairs(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        n: usize,
        left: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..=left {
            for s in 0..=left - r {
                if r + s == 0 {
                    continue;
                }
                cur.push((r, s));
                rec(n, left - r - s, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, m, &mut cur, &mut out);
    out
}

/// A graded subspace of a [`GradedLieAlg`], spanned per degree by vectors in
/// the parent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubalg {
    pub spanning: Vec<Vec<Vec<Rational>>>,
}

impl GradedSubalg {
    /// `dim` per degree `-1, ..., -r`.
    pub fn graded_dims(&self) -> Vec<usize> {
        self.spanning.iter().map(|s| rank(s)).collect()
    }

    pub fn dim(&self) -> usize {
        self.graded_dims().iter().sum()
    }

    fn contains(&self, v: &[Rational]) -> bool {
        let all: Vec<Vec<Rational>> = self.spanning.iter().flatten().cloned().collect();
        let r0 = rank(&all);
        let mut with = all;
        with.push(v.to_vec());
        rank(&with) == r0
    }

    pub fn is_closed_in(&self, parent: &GradedLieAlg) -> bool {
        let all: Vec<&Vec<Rational>> = self.spanning.iter().flatten().collect();
        all.iter()
            .all(|a| all.iter().all(|b| self.contains(&parent.bracket(a, b))))
    }
}
