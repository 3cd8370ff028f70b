//! Exponentials in the unipotent group acting on `T_rM`, and the flow-out
//! description of `Q`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    eval_jet, eval_jet_ratfunc, lift_ratfunc_all, lift_vf, JetError, JetPoint, TruncSeries,
};
use crate::exactalg::{int, rat, Poly, RatFunc, Rational};
use crate::lieflt::Filtration;
use crate::vfield::VectorField;
use crate::weightcoord::WeightedChart;

/// `exp(t sum_j X_j ε^j)`, with every `j >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct URElem {
    pub order: usize,
    pub terms: Vec<(usize, VectorField)>,
    pub t: Rational,
}

impl URElem {
    pub fn new(
        order: usize,
        terms: Vec<(usize, VectorField)>,
        t: Rational,
    ) -> Result<Self, JetError> {
        for (j, x) in &terms {
            if *j == 0 || *j > order {
                return Err(JetError::IndexOutOfRange(*j, order));
            }
            if !x.has_poly_coeffs() {
                return Err(JetError::NotPolynomial);
            }
        }
        Ok(URElem { order, terms, t })
    }

    pub fn inverse(&self) -> URElem {
        URElem {
            order: self.order,
            terms: self.terms.clone(),
            t: -self.t.clone(),
        }
    }

    /// `(X F)_k = sum_j X_j F_{k-j}` on `C(M) ⊗ A_r`.
    fn apply_generator(&self, f: &TruncSeries<Poly>) -> Result<TruncSeries<Poly>, JetError> {
        let r = self.order;
        let nv = f.coeff(0).nvars();
        let mut out = vec![Poly::zero(nv); r + 1];
        for (j, x) in &self.terms {
            for k in *j..=r {
                let src = f.coeff(k - j);
                if src.is_zero() {
                    continue;
                }
                let v = x
                    .apply_poly(src)?
                    .into_poly()
                    .ok_or(JetError::NotPolynomial)?;
                out[k] = &out[k] + &v;
            }
        }
        Ok(TruncSeries::new(out))
    }
}

/// `exp(tX) f` as a series with polynomial coefficients.
pub fn u_exp_apply(e: &URElem, f: &Poly) -> Result<TruncSeries<Poly>, JetError> {
    let r = e.order;
    let nv = f.nvars();
    let mut term = TruncSeries::constant(f.clone(), Poly::zero(nv), r);
    let mut out = term.clone();
    let mut factor = int(1);
    for k in 1..=r + 1 {
        term = e.apply_generator(&term)?;
        if k == r + 1 {
            debug_assert!(
                term.coeffs().iter().all(Poly::is_zero),
                "X^(r+1) must vanish"
            );
            break;
        }
        factor = &factor * &e.t / int(k as i64);
        out = out.add(&term.map(|p| p.scale(&factor)));
    }
    Ok(out)
}

/// `U · u = u ∘ U^{-1}`.
pub fn u_exp_act(e: &URElem, u: &JetPoint) -> Result<JetPoint, JetError> {
    let n = u.dim();
    let r = e.order;
    if u.order() != r {
        return Err(JetError::IndexOutOfRange(u.order(), r));
    }
    let inv = e.inverse();
    let zero = TruncSeries::constant(int(0), int(0), r);
    let mut out = Vec::with_capacity(n);
    for a in 0..n {
        let f = u_exp_apply(&inv, &Poly::var(n, a))?;
        let mut acc = zero.clone();
        for (k, fk) in f.coeffs().iter().enumerate() {
            if fk.is_zero() {
                continue;
            }
            acc = acc.add(&eval_jet(u, fk)?.shift(k, &int(0)));
        }
        out.push(acc);
    }
    Ok(JetPoint::from_series(&out))
}

/// `u ∈ Q`: the weighted coordinates satisfy `x̃_c^{(i)}(u) = 0` whenever
/// `i < w_c`.
pub fn q_membership(u: &JetPoint, w: &WeightedChart) -> Result<bool, JetError> {
    for (c, &wc) in w.weights().iter().enumerate() {
        if wc == 0 {
            continue;
        }
        let s = eval_jet_ratfunc(u, &w.coords()[c])?;
        if (0..(wc as usize).min(u.order() + 1)).any(|i| !s.coeff(i).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X^{(-j)}` is tangent to `Q` at `q`: it annihilates every defining
/// function `x̃_c^{(i)}`, `i < w_c`, at `q`.
pub fn lift_tangent_to_q(
    x: &VectorField,
    j: usize,
    w: &WeightedChart,
    q: &JetPoint,
) -> Result<bool, JetError> {
    let r = q.order();
    let lifted = lift_vf(x, j, r)?;
    let at = q.jet_coords();
    for (c, &wc) in w.weights().iter().enumerate() {
        if wc == 0 {
            continue;
        }
        let lifts = lift_ratfunc_all(&w.coords()[c], r)?;
        for li in lifts.iter().take(wc as usize) {
            let v = lifted
                .field
                .apply(li)?
                .eval(&at)
                .ok_or(JetError::Singular)?;
            if !v.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowoutReport {
    pub tested: usize,
    pub failed: usize,
    pub first_failure: Option<JetPoint>,
}

/// A nonzero rational `p/q` with `p ∈ {-2, -1, 1, 2}`, `q ∈ {1, 2, 3}`.
pub fn random_nonzero(rng: &mut impl Rng) -> Rational {
    const P: [i64; 4] = [-2, -1, 1, 2];
    rat(P[rng.gen_range(0..4)], rng.gen_range(1..=3))
}

fn random_coefficient(rng: &mut impl Rng, n: usize) -> Poly {
    let c = Poly::constant(n, random_nonzero(rng));
    if rng.gen_bool(0.5) {
        c
    } else {
        &c + &Poly::var(n, rng.gen_range(0..n)).scale(&random_nonzero(rng))
    }
}

fn random_element(f: &Filtration, rng: &mut impl Rng) -> Result<URElem, JetError> {
    let n = f.dim();
    let r = f.order();
    let mut terms = Vec::new();
    for j in 1..=r {
        let mut x = VectorField::zero(n);
        for g in f.module_gens(j) {
            if rng.gen_bool(1.0 / 3.0) {
                continue;
            }
            x = x.add(&g.mul_fn(&RatFunc::from_poly(random_coefficient(rng, n))))?;
        }
        if !x.is_zero() {
            terms.push((j, x));
        }
    }
    URElem::new(r, terms, random_nonzero(rng))
}

fn random_tn_jet(w: &WeightedChart, r: usize, rng: &mut impl Rng) -> JetPoint {
    let n = w.dim();
    let sub = w.submanifold();
    let mut comps = vec![vec![int(0); n]; r + 1];
    for &t in sub.tangent() {
        comps[0][t] = &sub.base_point()[t] + &(random_nonzero(rng) / int(4));
        for row in comps.iter_mut().skip(1) {
            row[t] = random_nonzero(rng);
        }
    }
    JetPoint::new(comps)
}

/// Applies `count` random products of at most three group elements built from
/// the filtration to random jets in `T_rN` and tests membership in `Q`.
pub fn flowout_sample(
    f: &Filtration,
    w: &WeightedChart,
    count: usize,
    seed: u64,
) -> Result<FlowoutReport, JetError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = f.order();
    let mut report = FlowoutReport {
        tested: 0,
        failed: 0,
        first_failure: None,
    };
    while report.tested < count {
        let mut u = random_tn_jet(w, r, &mut rng);
        let len = rng.gen_range(1..=3);
        for _ in 0..len {
            let e = random_element(f, &mut rng)?;
            u = u_exp_act(&e, &u)?;
        }
        let member = match q_membership(&u, w) {
            Ok(b) => b,
            Err(JetError::Singular) => continue,
            Err(e) => return Err(e),
        };
        report.tested += 1;
        if !member {
            report.failed += 1;
            report.first_failure.get_or_insert(u);
        }
    }
    Ok(report)
}

/// `dim Q = k_0 + ... + k_r`, and the graded pieces of its linear
/// approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QDimension {
    pub total: usize,
    pub graded: Vec<usize>,
}

pub fn q_dimension(ranks: &[usize]) -> QDimension {
    QDimension {
        total: ranks.iter().sum(),
        graded: ranks.to_vec(),
    }
}
