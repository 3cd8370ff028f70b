use std::collections::HashMap;

use num_traits::Zero;

use super::WcError;
use crate::exactalg::{rank, RatFunc, Rational};
use crate::lieflt::{CleanReport, Filtration, Submanifold, Verdict};
use crate::vfield::VectorField;

/// Vector fields `V_{k_0+1}, ..., V_n` whose classes trivialize the normal
/// flag, with `V_a` taken from level `-w_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub fields: Vec<VectorField>,
    pub weights: Vec<u32>,
}

impl Frame {
    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }
}

/// Greedy scan of the generators of `H_{-1}, H_{-2}, ...` in list order,
/// adopting every generator whose value at the base point enlarges the span
/// of `T_m N` and the fields adopted so far.
pub fn select_frame(
    f: &Filtration,
    n: &Submanifold,
    clean: &CleanReport,
) -> Result<Frame, WcError> {
    if clean.verdict != Verdict::Pass {
        return Err(WcError::NotClean);
    }
    let dim = f.dim();
    let m = n.base_point();
    let mut span: Vec<Vec<Rational>> = n
        .tangent()
        .iter()
        .map(|&b| {
            let mut e = vec![Rational::zero(); dim];
            e[b] = Rational::from_integer(1.into());
            e
        })
        .collect();
    let mut fields = Vec::new();
    let mut weights = Vec::new();
    for i in 1..=f.order() {
        for g in f.module_gens(i) {
            let Some(val) = g.eval(m) else { continue };
            span.push(val);
            if rank(&span) == span.len() {
                fields.push(g);
                weights.push(i as u32);
            } else {
                span.pop();
            }
        }
        if span.len() != clean.ranks[i] {
            return Err(WcError::SpanIncomplete {
                level: i,
                expected: clean.ranks[i],
                found: span.len(),
            });
        }
    }
    Ok(Frame { fields, weights })
}

/// The frame together with fiber coordinates `x̂_b` satisfying
/// `(V_a x̂_b)|_N = δ_ab`.
#[derive(Debug, Clone)]
pub struct NormalizedChart {
    pub frame: Frame,
    /// `G[a][c] = (V_a x_c)|_N` for frame slot `a` and fiber position `c`.
    pub g: Vec<Vec<RatFunc>>,
    pub g_inv: Vec<Vec<RatFunc>>,
    /// Chart variable carrying frame slot `b`.
    pub sigma: Vec<usize>,
    /// `x̂_b = sum_c G^{-1}[c][b] x_c`, one per frame slot.
    pub coords: Vec<RatFunc>,
}

pub fn normalize_chart(frame: &Frame, n: &Submanifold) -> Result<NormalizedChart, WcError> {
    let dim = n.ambient_dim();
    let fiber = n.fiber();
    let k = fiber.len();
    if frame.len() != k {
        return Err(WcError::SpanIncomplete {
            level: 0,
            expected: k,
            found: frame.len(),
        });
    }
    let mut g = Vec::with_capacity(k);
    for v in &frame.fields {
        let row: Vec<RatFunc> = fiber
            .iter()
            .map(|&c| n.restrict(v.coeff(c)))
            .collect::<Result<_, _>>()?;
        g.push(row);
    }
    let m = n.base_point();
    let g_m: Vec<Vec<Rational>> = g
        .iter()
        .map(|row| row.iter().map(|e| e.eval(m)).collect::<Option<_>>())
        .collect::<Option<_>>()
        .ok_or(WcError::SingularNormalization)?;
    let sigma_pos = pivot_assignment(&g_m).ok_or(WcError::SingularNormalization)?;
    let g_inv = invert(&g, dim).ok_or(WcError::SingularNormalization)?;
    let coords = (0..k)
        .map(|b| {
            let mut x = RatFunc::zero(dim);
            for (c, &var) in fiber.iter().enumerate() {
                let e = &g_inv[c][b];
                if !e.is_zero() {
                    x = &x + &e.mul_poly(&crate::exactalg::Poly::var(dim, var));
                }
            }
            x
        })
        .collect();
    Ok(NormalizedChart {
        frame: frame.clone(),
        g,
        g_inv,
        sigma: sigma_pos.into_iter().map(|c| fiber[c]).collect(),
        coords,
    })
}

/// Row-by-row elimination on `G(m)`: row `a` takes the first column not yet
/// used whose entry survives elimination by the earlier rows.
fn pivot_assignment(g: &[Vec<Rational>]) -> Option<Vec<usize>> {
    let k = g.len();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in g {
        let mut r = row.clone();
        for (p, prow) in pivots.iter().zip(&rows) {
            if !r[*p].is_zero() {
                let f = &r[*p] / &prow[*p];
                for c in 0..k {
                    let t = &f * &prow[c];
                    r[c] -= t;
                }
            }
        }
        let p = (0..k).find(|c| !pivots.contains(c) && !r[*c].is_zero())?;
        pivots.push(p);
        rows.push(r);
    }
    Some(pivots)
}

/// Inverse of a square matrix of rational functions by Gauss-Jordan.
pub(crate) fn invert(a: &[Vec<RatFunc>], nvars: usize) -> Option<Vec<Vec<RatFunc>>> {
    let k = a.len();
    let mut m: Vec<Vec<RatFunc>> = a.to_vec();
    let mut inv: Vec<Vec<RatFunc>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        RatFunc::one(nvars)
                    } else {
                        RatFunc::zero(nvars)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..k {
        let p = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        inv.swap(col, p);
        let piv = m[col][col].recip().ok()?;
        for c in 0..k {
            m[col][c] = &m[col][c] * &piv;
            inv[col][c] = &inv[col][c] * &piv;
        }
        for r in 0..k {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..k {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
                let t = &f * &inv[col][c];
                inv[r][c] = &inv[r][c] - &t;
            }
        }
    }
    Some(inv)
}

/// Memoized `V^s f` for a fixed `f`, with
/// `V^s = V_1^{s_1} ... V_k^{s_k}` applied rightmost first.
pub(crate) struct OpTower<'a> {
    fields: &'a [VectorField],
    memo: HashMap<Vec<u32>, RatFunc>,
}

impl<'a> OpTower<'a> {
    pub fn new(fields: &'a [VectorField], f: RatFunc) -> Self {
        let mut memo = HashMap::new();
        memo.insert(vec![0; fields.len()], f);
        OpTower { fields, memo }
    }

    pub fn get(&mut self, s: &[u32]) -> Result<RatFunc, WcError> {
        if let Some(v) = self.memo.get(s) {
            return Ok(v.clone());
        }
        let b = s.iter().position(|&e| e > 0).expect("s = 0 is memoized");
        let mut rest = s.to_vec();
        rest[b] -= 1;
        let inner = self.get(&rest)?;
        let v = self.fields[b].apply(&inner)?;
        self.memo.insert(s.to_vec(), v.clone());
        Ok(v)
    }
}

/// Multi-indices `s` with `s . w < bound` and `|s| >= min_len`, ordered by
/// `|s|` and then lexicographically.
pub fn multi_indices(weights: &[u32], bound: u64, min_len: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    fn rec(
        w: &[u32],
        bound: u64,
        pos: usize,
        used: u64,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == w.len() {
            out.push(cur.clone());
            return;
        }
        let mut e = 0;
        loop {
            let cost = used + e as u64 * w[pos] as u64;
            if cost >= bound {
                break;
            }
            cur[pos] = e;
            rec(w, bound, pos + 1, cost, cur, out);
            if w[pos] == 0 {
                break;
            }
            e += 1;
        }
        cur[pos] = 0;
    }
    if bound > 0 {
        rec(weights, bound, 0, 0, &mut cur, &mut out);
    }
    out.retain(|s| s.iter().sum::<u32>() >= min_len);
    out.sort_by(|a, b| {
        a.iter()
            .sum::<u32>()
            .cmp(&b.iter().sum::<u32>())
            .then_with(|| a.cmp(b))
    });
    out
}

/// `min(cap, min { s . w : (V^s f)|_N != 0 })`.
pub fn filtration_degree(
    f: &RatFunc,
    frame: &Frame,
    n: &Submanifold,
    cap: u32,
) -> Result<u32, WcError> {
    let mut tower = OpTower::new(&frame.fields, f.clone());
    let mut best = cap as u64;
    for s in multi_indices(&frame.weights, cap as u64, 0) {
        let sw: u64 = s
            .iter()
            .zip(&frame.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum();
        if sw >= best {
            continue;
        }
        if !n.restrict(&tower.get(&s)?)?.is_zero() {
            best = sw;
        }
    }
    Ok(best as u32)
}
