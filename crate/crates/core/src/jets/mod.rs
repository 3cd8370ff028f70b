//! The r-th tangent bundle in coordinates.
//!
//! A jet `u ∈ T_rM` is stored by its components `x_a^{(i)}`, and functions on
//! `T_rM` live on the jet chart whose variable `i*n + a` is `x_a^{(i)}`.

mod group;
mod series;

pub use group::{
    flowout_sample, lift_tangent_to_q, q_dimension, q_membership, random_nonzero, u_exp_act,
    u_exp_apply, FlowoutReport, QDimension, URElem,
};
pub use series::TruncSeries;

use thiserror::Error;

use crate::exactalg::{int, AlgError, Poly, RatFunc, Rational};
use crate::vfield::{VectorField, VfError};

#[derive(Debug, Error)]
pub enum JetError {
    #[error("vector field has non-polynomial coefficients")]
    NotPolynomial,
    #[error("lift index {0} exceeds the order {1}")]
    IndexOutOfRange(usize, usize),
    #[error("jet has {found} base components, chart has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("function is singular at the base of the jet")]
    Singular,
    #[error(transparent)]
    Vf(#[from] VfError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Wc(#[from] crate::weightcoord::WcError),
}

/// Index of `x_a^{(i)}` on the jet chart.
pub fn jet_var(n: usize, a: usize, i: usize) -> usize {
    i * n + a
}

pub fn jet_nvars(n: usize, r: usize) -> usize {
    n * (r + 1)
}

/// Components `x_a^{(i)}`, stored row by row: `comps[i][a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetPoint {
    comps: Vec<Vec<Rational>>,
}

impl JetPoint {
    pub fn new(comps: Vec<Vec<Rational>>) -> Self {
        assert!(!comps.is_empty());
        let n = comps[0].len();
        assert!(comps.iter().all(|row| row.len() == n));
        JetPoint { comps }
    }

    /// The constant jet at `point`.
    pub fn at(point: &[Rational], r: usize) -> Self {
        let mut comps = vec![vec![int(0); point.len()]; r + 1];
        comps[0] = point.to_vec();
        JetPoint { comps }
    }

    pub fn dim(&self) -> usize {
        self.comps[0].len()
    }

    pub fn order(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn base(&self) -> &[Rational] {
        &self.comps[0]
    }

    pub fn comp(&self, a: usize, i: usize) -> &Rational {
        &self.comps[i][a]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.comps
    }

    /// Values of the jet-chart variables.
    pub fn jet_coords(&self) -> Vec<Rational> {
        self.comps.iter().flatten().cloned().collect()
    }

    /// The series `sum_i x_a^{(i)} ε^i`.
    pub fn series(&self, a: usize) -> TruncSeries<Rational> {
        TruncSeries::new(self.comps.iter().map(|row| row[a].clone()).collect())
    }

    pub(crate) fn from_series(series: &[TruncSeries<Rational>]) -> Self {
        let r = series[0].order();
        JetPoint {
            comps: (0..=r)
                .map(|i| series.iter().map(|s| s.coeff(i).clone()).collect())
                .collect(),
        }
    }
}

/// `f(s_1, ..., s_n)` for series arguments, with `lift` turning a rational
/// coefficient into a scalar.
fn series_of<T: Clone>(
    f: &Poly,
    args: &[TruncSeries<T>],
    zero: &T,
    lift: impl Fn(&Rational) -> T,
) -> TruncSeries<T>
where
    for<'a> &'a T: std::ops::Add<&'a T, Output = T>
        + std::ops::Mul<&'a T, Output = T>
        + std::ops::Sub<&'a T, Output = T>,
{
    let r = args.first().map_or(0, |s| s.order());
    let mut out = TruncSeries::constant(zero.clone(), zero.clone(), r);
    let mut powers: Vec<Vec<TruncSeries<T>>> = args.iter().map(|_| Vec::new()).collect();
    for (m, c) in f.terms() {
        let mut term = TruncSeries::constant(lift(c), zero.clone(), r);
        for (a, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[a].len() < e as usize {
                let next = match powers[a].last() {
                    None => args[a].clone(),
                    Some(p) => p.mul(&args[a]),
                };
                powers[a].push(next);
            }
            term = term.mul(&powers[a][e as usize - 1]);
        }
        out = out.add(&term);
    }
    out
}

/// `u(f) = sum_i f^{(i)}(u) ε^i`.
pub fn eval_jet(u: &JetPoint, f: &Poly) -> Result<TruncSeries<Rational>, JetError> {
    if f.nvars() != u.dim() {
        return Err(JetError::DimensionMismatch {
            expected: f.nvars(),
            found: u.dim(),
        });
    }
    let args: Vec<_> = (0..u.dim()).map(|a| u.series(a)).collect();
    Ok(series_of(f, &args, &int(0), |c| c.clone()))
}

pub fn eval_jet_ratfunc(u: &JetPoint, f: &RatFunc) -> Result<TruncSeries<Rational>, JetError> {
    let num = eval_jet(u, f.numer())?;
    let den = eval_jet(u, f.denom())?;
    let inv = den
        .inverse(|c| {
            if num_traits::Zero::is_zero(c) {
                None
            } else {
                Some(int(1) / c)
            }
        })
        .ok_or(JetError::Singular)?;
    Ok(num.mul(&inv))
}

fn jet_var_series(n: usize, r: usize) -> Vec<TruncSeries<Poly>> {
    let nv = jet_nvars(n, r);
    (0..n)
        .map(|a| TruncSeries::new((0..=r).map(|i| Poly::var(nv, jet_var(n, a, i))).collect()))
        .collect()
}

/// `f^{(0)}, ..., f^{(r)}` on the jet chart.
pub fn lift_all(f: &Poly, r: usize) -> Vec<Poly> {
    let n = f.nvars();
    let nv = jet_nvars(n, r);
    series_of(f, &jet_var_series(n, r), &Poly::zero(nv), |c| {
        Poly::constant(nv, c.clone())
    })
    .into_coeffs()
}

/// `f^{(i)}`.
pub fn lift_function(f: &Poly, i: usize, r: usize) -> Result<Poly, JetError> {
    if i > r {
        return Err(JetError::IndexOutOfRange(i, r));
    }
    Ok(lift_all(f, r).swap_remove(i))
}

/// `f^{(0)}, ..., f^{(r)}` for a rational function, on the jet chart.
pub fn lift_ratfunc_all(f: &RatFunc, r: usize) -> Result<Vec<RatFunc>, JetError> {
    let nv = jet_nvars(f.nvars(), r);
    let num: TruncSeries<RatFunc> =
        TruncSeries::new(lift_all(f.numer(), r)).map(|p| RatFunc::from_poly(p.clone()));
    let den: TruncSeries<RatFunc> =
        TruncSeries::new(lift_all(f.denom(), r)).map(|p| RatFunc::from_poly(p.clone()));
    let inv = den.inverse(|c| c.recip().ok()).ok_or(JetError::Singular)?;
    debug_assert_eq!(inv.coeff(0).nvars(), nv);
    Ok(num.mul(&inv).into_coeffs())
}

/// `X^{(-j)}` as a field on the jet chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedVF {
    pub field: VectorField,
    pub index: usize,
}

/// `X^{(-j)} = sum_{a, i+j <= r} f_a^{(i)} ∂/∂x_a^{(i+j)}`.
pub fn lift_vf(x: &VectorField, j: usize, r: usize) -> Result<LiftedVF, JetError> {
    if j > r {
        return Err(JetError::IndexOutOfRange(j, r));
    }
    let coeffs = x.poly_coeffs().ok_or(JetError::NotPolynomial)?;
    let n = x.dim();
    let nv = jet_nvars(n, r);
    let mut out = vec![Poly::zero(nv); nv];
    for (a, fa) in coeffs.iter().enumerate() {
        if fa.is_zero() {
            continue;
        }
        for (i, fi) in lift_all(fa, r).into_iter().enumerate() {
            if i + j <= r {
                out[jet_var(n, a, i + j)] = fi;
            }
        }
    }
    Ok(LiftedVF {
        field: VectorField::from_polys(out),
        index: j,
    })
}

/// `g · X^{(-j)}` with `g` on the jet chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftTerm {
    pub coeff: Poly,
    pub field: VectorField,
    pub index: usize,
}

/// A finite combination of lifts; the Koszul action is defined on these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCombo {
    pub order: usize,
    pub terms: Vec<LiftTerm>,
}

impl LiftCombo {
    pub fn single(x: &VectorField, j: usize, r: usize) -> Self {
        let nv = jet_nvars(x.dim(), r);
        LiftCombo {
            order: r,
            terms: vec![LiftTerm {
                coeff: Poly::one(nv),
                field: x.clone(),
                index: j,
            }],
        }
    }

    pub fn to_field(&self, n: usize) -> Result<VectorField, JetError> {
        let nv = jet_nvars(n, self.order);
        let mut out = VectorField::zero(nv);
        for t in &self.terms {
            let lifted = lift_vf(&t.field, t.index, self.order)?;
            out = out.add(&lifted.field.mul_fn(&RatFunc::from_poly(t.coeff.clone())))?;
        }
        Ok(out)
    }
}

/// `ε · L`: every `X^{(-j)}` becomes `X^{(-j-1)}`, and `X^{(-r)}` is killed.
pub fn koszul_shift(l: &LiftCombo) -> LiftCombo {
    LiftCombo {
        order: l.order,
        terms: l
            .terms
            .iter()
            .filter(|t| t.index < l.order)
            .map(|t| LiftTerm {
                coeff: t.coeff.clone(),
                field: t.field.clone(),
                index: t.index + 1,
            })
            .collect(),
    }
}

/// `κ_t u`: `x_a^{(i)} ↦ t^i x_a^{(i)}`.
pub fn scalar_action(t: &Rational, u: &JetPoint) -> JetPoint {
    let mut scale = int(1);
    let mut comps = Vec::with_capacity(u.comps.len());
    for row in &u.comps {
        comps.push(row.iter().map(|c| c * &scale).collect());
        scale *= t;
    }
    JetPoint { comps }
}

/// `v · u = u - v ε^r`.
pub fn tm_action(v: &[Rational], u: &JetPoint) -> JetPoint {
    let mut out = u.clone();
    let r = u.order();
    for (a, va) in v.iter().enumerate() {
        out.comps[r][a] -= va;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vfield::{lie_bracket, parse_poly, parse_vf, Chart};

    fn chart() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn chain_rule_value() {
        let c = Chart::new(&["x"]).unwrap();
        let u = JetPoint::new(vec![vec![int(3)], vec![int(5)]]);
        let s = eval_jet(&u, &parse_poly("x^2", &c).unwrap()).unwrap();
        assert_eq!(s.coeffs(), &[int(9), int(30)]);
        let s = eval_jet(&u, &parse_poly("7", &c).unwrap()).unwrap();
        assert_eq!(s.coeffs(), &[int(7), int(0)]);
    }

    #[test]
    fn lifted_functions() {
        let c = chart();
        let r = 3;
        let nv = jet_nvars(3, r);
        let v = |a: usize, i: usize| Poly::var(nv, jet_var(3, a, i));
        let xy = parse_poly("x*y", &c).unwrap();
        assert_eq!(
            lift_function(&xy, 1, r).unwrap(),
            &(&v(0, 0) * &v(1, 1)) + &(&v(0, 1) * &v(1, 0))
        );
        let f = parse_poly("z - x^2", &c).unwrap();
        let expected = &v(2, 2) - &(&(&v(0, 0) * &v(0, 2)).scale(&int(2)) + &v(0, 1).pow(2));
        assert_eq!(lift_function(&f, 2, r).unwrap(), expected);
        assert_eq!(lift_function(&f, 0, r).unwrap(), &v(2, 0) - &v(0, 0).pow(2));
    }

    #[test]
    fn coordinate_field_lifts_to_coordinate_field() {
        let c = chart();
        let dx = parse_vf("dx", &c).unwrap();
        for j in 0..=2 {
            assert_eq!(
                lift_vf(&dx, j, 2).unwrap().field,
                VectorField::coord(9, jet_var(3, 0, j))
            );
        }
    }

    #[test]
    fn koszul_on_tangent_lift() {
        let c = chart();
        let x = parse_vf("dx + x*dz", &c).unwrap();
        let y = parse_vf("dy", &c).unwrap();
        let r = 2;
        let l = LiftCombo::single(&x, 0, r);
        assert_eq!(
            koszul_shift(&l).to_field(3).unwrap(),
            lift_vf(&x, 1, r).unwrap().field
        );
        let mut top = l.clone();
        for _ in 0..=r {
            top = koszul_shift(&top);
        }
        assert!(top.terms.is_empty());
        let br = lie_bracket(&x, &y).unwrap();
        let b0 = lie_bracket(
            &lift_vf(&x, 0, r).unwrap().field,
            &lift_vf(&y, 0, r).unwrap().field,
        )
        .unwrap();
        assert_eq!(b0, lift_vf(&br, 0, r).unwrap().field);
        assert_eq!(
            koszul_shift(&LiftCombo::single(&br, 0, r))
                .to_field(3)
                .unwrap(),
            lift_vf(&br, 1, r).unwrap().field
        );
    }

    #[test]
    fn scalar_and_tm_actions() {
        let u = JetPoint::new(vec![vec![int(1)], vec![int(2)], vec![int(3)]]);
        assert_eq!(scalar_action(&int(1), &u), u);
        assert_eq!(scalar_action(&int(0), &u), JetPoint::at(&[int(1)], 2));
        assert_eq!(scalar_action(&int(2), &u).rows()[2], vec![int(12)]);
        assert_eq!(tm_action(&[int(5)], &u).rows()[2], vec![int(-2)]);
    }

    #[test]
    fn rational_lift_matches_series_evaluation() {
        let c = Chart::new(&["t"]).unwrap();
        let f = crate::vfield::parse_function("1/(1 + t)", &c).unwrap();
        let lifts = lift_ratfunc_all(&f, 2).unwrap();
        let u = JetPoint::new(vec![vec![int(1)], vec![int(1)], vec![int(0)]]);
        let s = eval_jet_ratfunc(&u, &f).unwrap();
        for i in 0..=2 {
            assert_eq!(lifts[i].eval(&u.jet_coords()).unwrap(), s.coeff(i).clone());
        }
        assert_eq!(
            s.coeffs(),
            &[
                crate::exactalg::rat(1, 2),
                crate::exactalg::rat(-1, 4),
                crate::exactalg::rat(1, 8)
            ]
        );
    }
}
