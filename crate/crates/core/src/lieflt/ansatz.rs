//! Degree-bounded ansatz for combinations `sum_j u_j g_j` of polynomial
//! vector fields. Each unknown is the coefficient of one monomial of one
//! `u_j`; equations match coefficients component by component.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactalg::{Monomial, Poly, Rational, SparseSystem};

pub(crate) struct Ansatz {
    pub monos: Vec<Monomial>,
    pub ngens: usize,
    pub nvars: usize,
}

impl Ansatz {
    pub fn new(nvars: usize, ngens: usize, degree: u32) -> Ansatz {
        Ansatz {
            monos: Monomial::all_up_to(nvars, degree),
            ngens,
            nvars,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ngens * self.monos.len()
    }

    pub fn col(&self, gen: usize, mono: usize) -> usize {
        gen * self.monos.len() + mono
    }

    /// Splits a column into `(generator, monomial)`.
    pub fn split(&self, col: usize) -> (usize, usize) {
        (col / self.monos.len(), col % self.monos.len())
    }

    /// Assembles `sum_j u_j gens[j] = target` restricted to the equations
    /// `(component, monomial)` accepted by `keep`. A missing target means the
    /// homogeneous system.
    pub fn system(
        &self,
        gens: &[Vec<Poly>],
        target: Option<&[Poly]>,
        keep: impl Fn(usize, &Monomial) -> bool,
    ) -> SparseSystem {
        assert_eq!(gens.len(), self.ngens);
        let mut rows: BTreeMap<(usize, Monomial), Vec<(usize, Rational)>> = BTreeMap::new();
        for (j, g) in gens.iter().enumerate() {
            for (a, comp) in g.iter().enumerate() {
                for (k, alpha) in self.monos.iter().enumerate() {
                    for (beta, c) in comp.terms() {
                        let mu = alpha.mul(beta);
                        if !keep(a, &mu) {
                            continue;
                        }
                        rows.entry((a, mu))
                            .or_default()
                            .push((self.col(j, k), c.clone()));
                    }
                }
            }
        }
        let mut rhs: BTreeMap<(usize, Monomial), Rational> = BTreeMap::new();
        if let Some(t) = target {
            for (a, comp) in t.iter().enumerate() {
                for (mu, c) in comp.terms() {
                    if keep(a, mu) {
                        rhs.insert((a, mu.clone()), c.clone());
                        rows.entry((a, mu.clone())).or_default();
                    }
                }
            }
        }
        let mut sys = SparseSystem::new(self.ncols());
        for (key, entries) in rows {
            let b = rhs.remove(&key).unwrap_or_else(Rational::zero);
            sys.push_row(entries, b);
        }
        sys
    }

    /// The coefficient polynomials `u_j` encoded by a solution vector.
    pub fn combination(&self, x: &[Rational]) -> Vec<Poly> {
        (0..self.ngens)
            .map(|j| {
                Poly::from_terms(
                    self.nvars,
                    self.monos
                        .iter()
                        .enumerate()
                        .map(|(k, m)| (m.clone(), x[self.col(j, k)].clone())),
                )
            })
            .collect()
    }

    pub fn combination_sparse(&self, x: &[(usize, Rational)]) -> Vec<Poly> {
        let mut terms: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); self.ngens];
        for (c, v) in x {
            let (j, k) = self.split(*c);
            terms[j].push((self.monos[k].clone(), v.clone()));
        }
        terms
            .into_iter()
            .map(|t| Poly::from_terms(self.nvars, t))
            .collect()
    }

    /// Values of the ansatz monomials at a point.
    pub fn mono_values(&self, point: &[Rational]) -> Vec<Rational> {
        self.monos
            .iter()
            .map(|m| Poly::monomial(m.clone(), Rational::from_integer(1.into())).eval(point))
            .collect()
    }

    /// `(u_0(m), ..., u_{k-1}(m))` for the first `k` generators of a sparse
    /// solution vector.
    pub fn values_at(
        &self,
        x: &[(usize, Rational)],
        mono_vals: &[Rational],
        k: usize,
    ) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); k];
        for (c, v) in x {
            let (j, m) = self.split(*c);
            if j < k && !mono_vals[m].is_zero() {
                out[j] += v * &mono_vals[m];
            }
        }
        out
    }
}

/// `sum_j u_j g_j` as coefficient polynomials.
pub(crate) fn combine(u: &[Poly], gens: &[Vec<Poly>], nvars: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(nvars); nvars];
    for (uj, g) in u.iter().zip(gens) {
        if uj.is_zero() {
            continue;
        }
        for (a, comp) in g.iter().enumerate() {
            out[a] = &out[a] + &(uj * comp);
        }
    }
    out
}
