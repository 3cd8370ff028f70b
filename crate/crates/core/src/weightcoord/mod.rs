//! Weighted coordinates for the weighting induced by a clean filtration.
//!
//! A frame adapted to the normal flag is chosen at the base point, the fiber
//! coordinates are normalized against it, and the higher coordinates are
//! corrected one multi-index at a time until every `x̃_a` has filtration
//! degree `w_a`. Functions and vector fields can then be rewritten in the
//! weighted chart, where degrees and homogeneous parts are read off monomials.

mod frame;

pub use frame::{
    filtration_degree, multi_indices, normalize_chart, select_frame, Frame, NormalizedChart,
};

use thiserror::Error;

use crate::exactalg::{int, AlgError, Monomial, Poly, RatFunc, Rational};
use crate::lieflt::{check_clean, weight_sequence, Filtration, LiefltError, Submanifold};
use crate::vfield::{VectorField, VfError};
use frame::OpTower;

#[derive(Debug, Error)]
pub enum WcError {
    #[error("filtration is not clean along N")]
    NotClean,
    #[error("frame spans {found} directions at level {level}, expected {expected}")]
    SpanIncomplete {
        level: usize,
        expected: usize,
        found: usize,
    },
    #[error("frame pairing with the fiber coordinates is singular at the base point")]
    SingularNormalization,
    #[error("normalization constant for slot {slot} at {s:?} is not s!")]
    ConstantMismatch { slot: usize, s: Vec<u32> },
    #[error("coordinate {slot} has filtration degree {found}, expected {expected}")]
    DegreeMismatch {
        slot: usize,
        expected: u32,
        found: u32,
    },
    #[error("{0} is not in the required filtration level")]
    NotInLevel(String),
    #[error(transparent)]
    Lieflt(#[from] LiefltError),
    #[error(transparent)]
    Vf(#[from] VfError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// One step of the correction: `x̃_slot += chi * x̃^s`, where
/// `c_s = (V^s x̃^s)|_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionStep {
    pub slot: usize,
    pub s: Vec<u32>,
    pub c_s: RatFunc,
    pub chi: RatFunc,
}

/// A weighted chart `y = φ(x)` around the base point.
#[derive(Debug, Clone)]
pub struct WeightedChart {
    n: usize,
    order: u32,
    submanifold: Submanifold,
    frame: Frame,
    /// Chart variable carrying each frame slot.
    sigma: Vec<usize>,
    weights: Vec<u32>,
    coords: Vec<RatFunc>,
    inverse: Vec<RatFunc>,
    g: Vec<Vec<RatFunc>>,
    trace: Vec<CorrectionStep>,
}

/// Weighted degree of a function together with a lowest-degree monomial of
/// its rewritten numerator. `degree == None` means the function is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDegree {
    pub degree: Option<u64>,
    pub witness: Option<Monomial>,
}

pub fn weighted_coordinates(f: &Filtration, n: &Submanifold) -> Result<WeightedChart, WcError> {
    let clean = check_clean(f, n)?;
    let frame = select_frame(f, n, &clean)?;
    let nc = normalize_chart(&frame, n)?;
    let dim = n.ambient_dim();
    let w = frame.weights.clone();
    debug_assert_eq!(w, weight_sequence(&clean.ranks)?);
    let k = w.len();

    let mut tilde = nc.coords.clone();
    let mut trace = Vec::new();
    for a in 0..k {
        if w[a] < 3 {
            continue;
        }
        for s in multi_indices(&w, w[a] as u64, 2) {
            let xs = monomial_in(&tilde, &s, dim);
            let vs = OpTower::new(&frame.fields, tilde[a].clone()).get(&s)?;
            let num = n.restrict(&vs)?;
            let c_s = n.restrict(&OpTower::new(&frame.fields, xs.clone()).get(&s)?)?;
            if c_s != RatFunc::constant(dim, factorial(&s)) {
                return Err(WcError::ConstantMismatch { slot: a, s });
            }
            let chi = num.checked_div(&c_s)?.scale(&int(-1));
            if !chi.is_zero() {
                tilde[a] = &tilde[a] + &(&chi * &xs);
            }
            trace.push(CorrectionStep {
                slot: a,
                s,
                c_s,
                chi,
            });
        }
    }

    let mut coords: Vec<RatFunc> = (0..dim)
        .map(|c| RatFunc::from_poly(Poly::var(dim, c)))
        .collect();
    let mut weights = vec![0u32; dim];
    for (b, &c) in nc.sigma.iter().enumerate() {
        coords[c] = tilde[b].clone();
        weights[c] = w[b];
    }

    let inverse = build_inverse(dim, n, &nc, &trace);
    let chart = WeightedChart {
        n: dim,
        order: f.order() as u32,
        submanifold: n.clone(),
        frame,
        sigma: nc.sigma,
        weights,
        coords,
        inverse,
        g: nc.g,
        trace,
    };
    chart.verify()?;
    Ok(chart)
}

fn factorial(s: &[u32]) -> Rational {
    let mut out = int(1);
    for &e in s {
        for j in 2..=e {
            out *= int(j as i64);
        }
    }
    out
}

fn monomial_in(fs: &[RatFunc], s: &[u32], nvars: usize) -> RatFunc {
    let mut out = RatFunc::one(nvars);
    for (f, &e) in fs.iter().zip(s) {
        if e > 0 {
            out = &out * &f.pow(e);
        }
    }
    out
}

/// `x = φ^{-1}(y)`: undo the corrections slot by slot, then the
/// normalization, leaving the tangent variables fixed.
fn build_inverse(
    dim: usize,
    n: &Submanifold,
    nc: &NormalizedChart,
    trace: &[CorrectionStep],
) -> Vec<RatFunc> {
    let y = |c: usize| RatFunc::from_poly(Poly::var(dim, c));
    let k = nc.sigma.len();
    let mut hat: Vec<RatFunc> = (0..k).map(|b| y(nc.sigma[b])).collect();
    for step in trace {
        if step.chi.is_zero() {
            continue;
        }
        let mono = (0..k).fold(RatFunc::one(dim), |acc, b| {
            if step.s[b] == 0 {
                acc
            } else {
                &acc * &y(nc.sigma[b]).pow(step.s[b])
            }
        });
        hat[step.slot] = &hat[step.slot] - &(&step.chi * &mono);
    }
    let mut inv: Vec<RatFunc> = (0..dim).map(y).collect();
    for (c, &var) in n.fiber().iter().enumerate() {
        let mut x = RatFunc::zero(dim);
        for b in 0..k {
            x = &x + &(&nc.g[b][c] * &hat[b]);
        }
        inv[var] = x;
    }
    inv
}

impl WeightedChart {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// The order `r` of the filtration.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn submanifold(&self) -> &Submanifold {
        &self.submanifold
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Weight of each chart variable; tangent variables have weight 0.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// `y_c` as a function of `x`.
    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }

    /// `x_c` as a function of `y`.
    pub fn inverse(&self) -> &[RatFunc] {
        &self.inverse
    }

    /// `(V_a x_c)|_N`, frame slot by fiber position.
    pub fn pairing(&self) -> &[Vec<RatFunc>] {
        &self.g
    }

    pub fn trace(&self) -> &[CorrectionStep] {
        &self.trace
    }

    /// `f` written in the weighted chart.
    pub fn rewrite(&self, f: &RatFunc) -> Result<RatFunc, WcError> {
        Ok(f.subst(&self.inverse)?)
    }

    /// The filtration degree of `f` measured against the frame, capped at `r`.
    pub fn filtration_degree(&self, f: &RatFunc) -> Result<u32, WcError> {
        filtration_degree(f, &self.frame, &self.submanifold, self.order)
    }

    fn mono_weight(&self, m: &Monomial) -> u64 {
        m.weighted_degree(&self.weights)
    }

    fn degree_of_rewritten(&self, g: &RatFunc) -> WeightedDegree {
        let mut best: Option<(u64, Monomial)> = None;
        for (m, _) in g.numer().terms() {
            let d = self.mono_weight(m);
            if best.as_ref().is_none_or(|(b, _)| d < *b) {
                best = Some((d, m.clone()));
            }
        }
        WeightedDegree {
            degree: best.as_ref().map(|b| b.0),
            witness: best.map(|b| b.1),
        }
    }

    /// Largest `i` with `f ∈ C_(i)`, computed from the weighted chart.
    pub fn weighted_degree(&self, f: &RatFunc) -> Result<WeightedDegree, WcError> {
        Ok(self.degree_of_rewritten(&self.rewrite(f)?))
    }

    /// The degree `i` part of the rewritten function, for `f ∈ C_(i)`.
    pub fn homogeneous_approx(&self, f: &RatFunc, i: u64) -> Result<RatFunc, WcError> {
        let g = self.rewrite(f)?;
        self.homogeneous_part(&g, i)
    }

    fn homogeneous_part(&self, g: &RatFunc, i: u64) -> Result<RatFunc, WcError> {
        let d = self.degree_of_rewritten(g);
        match d.degree {
            None => return Ok(RatFunc::zero(self.n)),
            Some(d) if d < i => return Err(WcError::NotInLevel(format!("function of degree {d}"))),
            Some(d) if d > i => return Ok(RatFunc::zero(self.n)),
            _ => {}
        }
        let top = Poly::from_terms(
            self.n,
            g.numer()
                .terms()
                .filter(|(m, _)| self.mono_weight(m) == i)
                .map(|(m, c)| (m.clone(), c.clone())),
        );
        let den0 = RatFunc::from_poly(g.denom().set_zero(self.submanifold.fiber()));
        Ok(RatFunc::from_poly(top).checked_div(&den0)?)
    }

    /// Components `X(y_c)` of a field written in the weighted chart.
    pub fn rewrite_vf(&self, x: &VectorField) -> Result<Vec<RatFunc>, WcError> {
        if x.dim() != self.n {
            return Err(VfError::ChartMismatch(x.dim(), self.n).into());
        }
        self.coords
            .iter()
            .map(|c| self.rewrite(&x.apply(c)?))
            .collect()
    }

    /// Largest `j` with `X C_(k) ⊂ C_(k+j)` for all `k`; `None` for `X = 0`.
    pub fn vf_filtration_degree(&self, x: &VectorField) -> Result<Option<i64>, WcError> {
        let comps = self.rewrite_vf(x)?;
        let mut best: Option<i64> = None;
        for (c, g) in comps.iter().enumerate() {
            if let Some(d) = self.degree_of_rewritten(g).degree {
                let v = d as i64 - self.weights[c] as i64;
                best = Some(best.map_or(v, |b: i64| b.min(v)));
            }
        }
        Ok(best)
    }

    /// The degree `j` part of `X`, as a field on the weighted chart.
    pub fn homogeneous_approx_vf(&self, x: &VectorField, j: i64) -> Result<VectorField, WcError> {
        if let Some(d) = self.vf_filtration_degree(x)? {
            if d < j {
                return Err(WcError::NotInLevel(format!("vector field of degree {d}")));
            }
        }
        let comps = self.rewrite_vf(x)?;
        let mut out = Vec::with_capacity(self.n);
        for (c, g) in comps.iter().enumerate() {
            let target = j + self.weights[c] as i64;
            if target < 0 {
                out.push(RatFunc::zero(self.n));
            } else {
                out.push(self.homogeneous_part(g, target as u64)?);
            }
        }
        Ok(VectorField::new(out))
    }

    /// `∂/∂y_c` written on the original chart.
    pub fn coordinate_field(&self, c: usize) -> Result<VectorField, WcError> {
        let coeffs = self
            .inverse
            .iter()
            .map(|xc| xc.diff(c).subst(&self.coords))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorField::new(coeffs))
    }

    /// `C_(i) ∩ I^2 = sum_{0<j<i} C_(j) C_(i-j)` on the weighted monomials
    /// generating `C_(i) ∩ I^2`, for `1 < i <= r`. Returns the first failing
    /// `(i, s)`.
    pub fn extra_property_failure(&self) -> Option<(u32, Vec<u32>)> {
        let w: Vec<u32> = self.sigma.iter().map(|&c| self.weights[c]).collect();
        let wmax = w.iter().copied().max().unwrap_or(0) as u64;
        for i in 2..=self.order {
            for s in multi_indices(&w, i as u64 + wmax, 2) {
                let sw: u64 = s.iter().zip(&w).map(|(&e, &x)| e as u64 * x as u64).sum();
                if sw < i as u64 {
                    continue;
                }
                let splits = (0..s.len()).filter(|&b| s[b] > 0).any(|b| {
                    let rest = sw - w[b] as u64;
                    (1..i).any(|j| w[b] as u64 >= j as u64 && rest >= (i - j) as u64)
                });
                if !splits {
                    return Some((i, s));
                }
            }
        }
        None
    }

    /// `filtration_degree(x̃_a) = w_a`, and `w_a + w_b` for products within
    /// the order of the filtration.
    fn verify(&self) -> Result<(), WcError> {
        let r = self.order;
        for (b, &c) in self.sigma.iter().enumerate() {
            let expected = self.weights[c];
            let found = self.filtration_degree(&self.coords[c])?;
            if found != expected {
                return Err(WcError::DegreeMismatch {
                    slot: b,
                    expected,
                    found,
                });
            }
        }
        for (a, &ca) in self.sigma.iter().enumerate() {
            for &cb in &self.sigma[a..] {
                let expected = self.weights[ca] + self.weights[cb];
                if expected > r {
                    continue;
                }
                let prod = &self.coords[ca] * &self.coords[cb];
                let found = self.filtration_degree(&prod)?;
                if found != expected.min(r) {
                    return Err(WcError::DegreeMismatch {
                        slot: a,
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(())
    }
}
