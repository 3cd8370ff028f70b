//! Osculating graded Lie algebras of a filtration at a point.
//!
//! `p^{-i}_m = H_{-i}/(H_{-i+1} + I_m H_{-i})` is computed from values at `m`
//! of coefficient tuples: a combination `sum u_j g_j` of the generators of
//! `H_{-i}` has class zero exactly when `u(m)` lies in the relation space
//! spanned by the values at `m` of the solutions of
//! `sum u_j g_j ∈ <generators of H_{-i+1}>`. The solutions are found with
//! coefficients of bounded degree, so relations may be missed but never
//! invented.

mod algebra;

pub use algebra::{GradedLieAlg, GradedSubalg};

use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::{int, linear_solve_exact, rank, Monomial, Poly, Rational};
use crate::lieflt::ansatz::Ansatz;
use crate::lieflt::{
    poly_components, solve_combination, Filtration, LiefltError, Submanifold, Verdict,
};
use crate::vfield::{lie_bracket, VectorField, VfError};
use crate::weightcoord::{multi_indices, WcError, WeightedChart};

#[derive(Debug, Error)]
pub enum OscError {
    #[error("base point has {found} entries, chart has {expected}")]
    BadPoint { expected: usize, found: usize },
    #[error(transparent)]
    Lieflt(#[from] LiefltError),
    #[error(transparent)]
    Vf(#[from] VfError),
    #[error(transparent)]
    Wc(#[from] WcError),
    #[error(transparent)]
    Alg(#[from] crate::exactalg::AlgError),
}

/// The quotient `Q^{G_i} / R_i` for one degree.
#[derive(Debug, Clone)]
pub struct Level {
    /// Generators of `H_{-i}`.
    pub candidates: Vec<VectorField>,
    /// A basis of the relation space.
    pub relations: Vec<Vec<Rational>>,
    /// Candidate indices whose classes form the basis.
    pub basis: Vec<usize>,
}

impl Level {
    /// Coordinates of the class of `v ∈ Q^{G_i}` in the chosen basis.
    pub fn coords(&self, v: &[Rational]) -> Vec<Rational> {
        let g = self.candidates.len();
        let cols = self.relations.len() + self.basis.len();
        if self.basis.is_empty() {
            return Vec::new();
        }
        let a: Vec<Vec<Rational>> = (0..g)
            .map(|row| {
                let mut r: Vec<Rational> =
                    self.relations.iter().map(|rel| rel[row].clone()).collect();
                r.extend(
                    self.basis
                        .iter()
                        .map(|&b| if b == row { int(1) } else { int(0) }),
                );
                debug_assert_eq!(r.len(), cols);
                r
            })
            .collect();
        let sol = linear_solve_exact(&a, v)
            .expect("shapes agree")
            .expect("basis and relations span");
        sol.particular[self.relations.len()..].to_vec()
    }
}

/// `p_m` together with the data used to build it.
#[derive(Debug, Clone)]
pub struct Osculating {
    pub algebra: GradedLieAlg,
    pub levels: Vec<Level>,
    /// Global basis index of the first basis element of each degree.
    pub offsets: Vec<usize>,
    /// Representative field of each basis element.
    pub representatives: Vec<VectorField>,
    /// Pairs of basis elements whose bracket could not be expressed.
    pub unverified: Vec<(usize, usize)>,
    pub verdict: Verdict,
    pub point: Vec<Rational>,
    pub degree_bound: u32,
}

fn values_at_point(
    ans: &Ansatz,
    z: &[(usize, Rational)],
    point: &[Rational],
    k: usize,
) -> Vec<Rational> {
    ans.values_at(z, &ans.mono_values(point), k)
}

fn level_data(f: &Filtration, i: usize, point: &[Rational], d: u32) -> Level {
    let n = f.dim();
    let cands = f.module_gens(i);
    let prev = f.module_gens(i - 1);
    let g = cands.len();
    let mut all: Vec<Vec<Poly>> = cands.iter().map(poly_components).collect();
    for h in &prev {
        all.push(poly_components(h).iter().map(|p| -p).collect());
    }
    let ans = Ansatz::new(n, all.len(), d);
    let rref = ans.system(&all, None, |_, _| true).reduce();
    let mut relations: Vec<Vec<Rational>> = Vec::new();
    for z in rref.nullspace_sparse() {
        let v = values_at_point(&ans, &z, point, g);
        push_independent(&mut relations, v);
    }
    let mut basis = Vec::new();
    let mut span = relations.clone();
    for j in 0..g {
        let mut e = vec![int(0); g];
        e[j] = int(1);
        if push_independent(&mut span, e) {
            basis.push(j);
        }
    }
    Level {
        candidates: cands,
        relations,
        basis,
    }
}

fn push_independent(rows: &mut Vec<Vec<Rational>>, v: Vec<Rational>) -> bool {
    if v.iter().all(Zero::is_zero) {
        return false;
    }
    let r0 = rows.len();
    rows.push(v);
    if rank(rows) > r0 {
        true
    } else {
        rows.pop();
        false
    }
}

/// `p_m` with structure constants from bracketing representatives.
pub fn osculating_at(
    f: &Filtration,
    point: &[Rational],
    degree_bound: u32,
) -> Result<Osculating, OscError> {
    let n = f.dim();
    if point.len() != n {
        return Err(OscError::BadPoint {
            expected: n,
            found: point.len(),
        });
    }
    let r = f.order();
    let levels: Vec<Level> = (1..=r)
        .map(|i| level_data(f, i, point, degree_bound))
        .collect();
    let mut degrees = Vec::new();
    let mut offsets = Vec::new();
    let mut reps = Vec::new();
    for (i, lv) in levels.iter().enumerate() {
        offsets.push(degrees.len());
        for &b in &lv.basis {
            degrees.push(i as u32 + 1);
            reps.push(lv.candidates[b].clone());
        }
    }
    let mut alg = GradedLieAlg::new(degrees.clone());
    let dim = degrees.len();
    let mut unverified = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            let k = (degrees[a] + degrees[b]) as usize;
            if k > r {
                continue;
            }
            let br = lie_bracket(&reps[a], &reps[b])?;
            let lv = &levels[k - 1];
            let gens: Vec<Vec<Poly>> = lv.candidates.iter().map(poly_components).collect();
            match solve_combination(&poly_components(&br), &gens, n, degree_bound) {
                Some(u) => {
                    let vals: Vec<Rational> = u.iter().map(|p| p.eval(point)).collect();
                    let c = lv.coords(&vals);
                    let mut v = vec![int(0); dim];
                    for (t, ct) in c.into_iter().enumerate() {
                        v[offsets[k - 1] + t] = ct;
                    }
                    alg.set_bracket(a, b, v);
                }
                None => unverified.push((a, b)),
            }
        }
    }
    let verdict = if unverified.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    Ok(Osculating {
        algebra: alg,
        levels,
        offsets,
        representatives: reps,
        unverified,
        verdict,
        point: point.to_vec(),
        degree_bound,
    })
}

impl Osculating {
    /// Coordinates in `p_m` of the class of `sum u_j g_j`, given `u(m)` over
    /// the generators of `H_{-i}`.
    pub fn class_of(&self, i: usize, u_at_m: &[Rational]) -> Vec<Rational> {
        let mut v = vec![int(0); self.algebra.dim()];
        for (t, c) in self.levels[i - 1].coords(u_at_m).into_iter().enumerate() {
            v[self.offsets[i - 1] + t] = c;
        }
        v
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.basis.len()).collect()
    }
}

/// `r_m`: classes of the fields in `H_{-i}` tangent to `N`, found by a
/// bounded solve for combinations whose fiber components vanish on `N`.
pub fn tangent_subalg(
    f: &Filtration,
    n: &Submanifold,
    osc: &Osculating,
) -> Result<GradedSubalg, OscError> {
    let dim = f.dim();
    let fiber = n.fiber();
    let mut spanning = Vec::new();
    for (idx, lv) in osc.levels.iter().enumerate() {
        let gens: Vec<Vec<Poly>> = lv.candidates.iter().map(poly_components).collect();
        let ans = Ansatz::new(dim, gens.len(), osc.degree_bound);
        let on_n = |m: &Monomial| fiber.iter().all(|&b| m.exponents()[b] == 0);
        let rref = ans
            .system(&gens, None, |a, m| fiber.contains(&a) && on_n(m))
            .reduce();
        let mut vecs: Vec<Vec<Rational>> = Vec::new();
        for z in rref.nullspace_sparse() {
            let u = values_at_point(&ans, &z, &osc.point, gens.len());
            push_independent(&mut vecs, osc.class_of(idx + 1, &u));
        }
        spanning.push(vecs);
    }
    Ok(GradedSubalg { spanning })
}

/// Monomial fields `x̃^s ∂/∂x̃_a` generating `K_{-i}`: `s` over the fiber
/// variables with `s·w >= w_a - i` and `|s| <= cap`. Tangent directions
/// (`w_a = 0`) appear with `s = 0` only.
pub fn kmodule_generators(w: &WeightedChart, i: u32, cap: u32) -> Vec<(Vec<u32>, usize)> {
    let weights = w.weights();
    let fiber = w.submanifold().fiber().to_vec();
    let fw: Vec<u32> = fiber.iter().map(|&c| weights[c]).collect();
    let bound = fw.iter().map(|&x| x as u64).sum::<u64>() * cap as u64 + 1;
    let mut out = Vec::new();
    for a in 0..w.dim() {
        if weights[a] == 0 {
            out.push((vec![0; w.dim()], a));
            continue;
        }
        for s in multi_indices(&fw, bound, 0) {
            let len: u32 = s.iter().sum();
            let sw: u64 = s.iter().zip(&fw).map(|(&e, &x)| e as u64 * x as u64).sum();
            if len <= cap && sw + i as u64 >= weights[a] as u64 {
                let mut full = vec![0; w.dim()];
                for (k, &c) in fiber.iter().enumerate() {
                    full[c] = s[k];
                }
                out.push((full, a));
            }
        }
    }
    out
}

/// Monomial basis `(s, a)` of `k^{-i}_m`: fiber directions with
/// `s·w - w_a = -i`.
pub fn k_basis(w: &WeightedChart, i: u32) -> Vec<(Vec<u32>, usize)> {
    let weights = w.weights();
    kmodule_generators(w, i, i)
        .into_iter()
        .filter(|(s, a)| {
            let sw: u64 = s
                .iter()
                .zip(weights)
                .map(|(&e, &x)| e as u64 * x as u64)
                .sum();
            weights[*a] > 0 && sw + i as u64 == weights[*a] as u64
        })
        .collect()
}

/// Class in `k^{-i}_m` of a field of filtration degree `>= -i`, over
/// [`k_basis`].
pub fn k_class(w: &WeightedChart, x: &VectorField, i: u32) -> Result<Vec<Rational>, OscError> {
    let h = w.homogeneous_approx_vf(x, -(i as i64))?;
    let m = w.submanifold().base_point();
    let mut out = Vec::new();
    for (s, a) in k_basis(w, i) {
        let coeff = h.coeff(a);
        let mono = Monomial::new(s);
        let num = coeff.numer();
        let den0 = coeff.denom().eval(m);
        let mut v = int(0);
        for (mu, c) in num.terms() {
            let fiber_part: Vec<u32> = mu
                .exponents()
                .iter()
                .enumerate()
                .map(|(k, &e)| if w.weights()[k] > 0 { e } else { 0 })
                .collect();
            if fiber_part == mono.exponents() {
                let base_part: Vec<u32> = mu
                    .exponents()
                    .iter()
                    .enumerate()
                    .map(|(k, &e)| if w.weights()[k] > 0 { 0 } else { e })
                    .collect();
                v += c * Poly::monomial(Monomial::new(base_part), int(1)).eval(m);
            }
        }
        out.push(if den0.is_zero() { v } else { v / den0 });
    }
    Ok(out)
}

/// Outcome of the comparison of `p_m/r_m` with `k_m/l_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HhReport {
    pub p_dims: Vec<usize>,
    pub r_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    pub normal_dims: Vec<usize>,
    pub k_dims: Vec<usize>,
    pub l_dims: Vec<usize>,
    /// Every generator of `H_{-i}` lies in `K_{-i}`.
    pub inclusion: Verdict,
    pub total: Verdict,
    pub graded: Verdict,
    pub r_into_l: Verdict,
    pub isomorphism: Verdict,
    pub verdict: Verdict,
}

pub fn verify_hh(
    f: &Filtration,
    n: &Submanifold,
    w: &WeightedChart,
    ranks: &[usize],
    degree_bound: u32,
) -> Result<HhReport, OscError> {
    let osc = osculating_at(f, n.base_point(), degree_bound)?;
    let rm = tangent_subalg(f, n, &osc)?;
    compare_hh(f, n, w, ranks, &osc, &rm)
}

/// [`verify_hh`] for an already computed `p_m` and `r_m`.
pub fn compare_hh(
    f: &Filtration,
    n: &Submanifold,
    w: &WeightedChart,
    ranks: &[usize],
    osc: &Osculating,
    rm: &GradedSubalg,
) -> Result<HhReport, OscError> {
    let r = f.order();
    let p_dims = osc.graded_dims();
    let r_dims = rm.graded_dims();
    let quotient_dims: Vec<usize> = p_dims
        .iter()
        .zip(&r_dims)
        .map(|(p, q)| p - q.min(p))
        .collect();
    let normal_dims: Vec<usize> = (1..=r).map(|i| ranks[i] - ranks[i - 1]).collect();

    let mut inclusion = Verdict::Pass;
    for i in 1..=r {
        for g in f.module_gens(i) {
            match w.vf_filtration_degree(&g)? {
                Some(d) if d < -(i as i64) => inclusion = Verdict::Fail,
                _ => {}
            }
        }
    }

    let total = if p_dims.iter().sum::<usize>() - r_dims.iter().sum::<usize>() == f.dim() - n.dim()
    {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let graded = if quotient_dims == normal_dims {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    let mut k_dims = Vec::new();
    let mut l_dims = Vec::new();
    let mut r_into_l = Verdict::Pass;
    let mut isomorphism = Verdict::Pass;
    for i in 1..=r as u32 {
        let basis = k_basis(w, i);
        let top: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|(_, (s, _))| s.iter().all(|&e| e == 0))
            .map(|(k, _)| k)
            .collect();
        k_dims.push(basis.len());
        l_dims.push(basis.len() - top.len());
        let lv = &osc.levels[i as usize - 1];
        let off = osc.offsets[i as usize - 1];
        let classes: Vec<Vec<Rational>> = lv
            .basis
            .iter()
            .enumerate()
            .map(|(t, _)| k_class(w, &osc.representatives[off + t], i))
            .collect::<Result<_, _>>()?;
        let to_quot = |coords: &[Rational]| -> Vec<Rational> {
            top.iter()
                .map(|&k| {
                    coords
                        .iter()
                        .zip(&classes)
                        .fold(int(0), |acc, (c, cl)| acc + c * &cl[k])
                })
                .collect()
        };
        for v in &rm.spanning[i as usize - 1] {
            let local = &v[off..off + lv.basis.len()];
            if to_quot(local).iter().any(|x| !x.is_zero()) {
                r_into_l = Verdict::Fail;
            }
        }
        let images: Vec<Vec<Rational>> = (0..lv.basis.len())
            .map(|t| {
                let mut e = vec![int(0); lv.basis.len()];
                e[t] = int(1);
                to_quot(&e)
            })
            .collect();
        let img_rank = if images.is_empty() { 0 } else { rank(&images) };
        if img_rank != top.len() || img_rank + r_dims[i as usize - 1] != p_dims[i as usize - 1] {
            isomorphism = Verdict::Fail;
        }
    }
    let mut verdict = Verdict::all([inclusion, total, graded, r_into_l, isomorphism]);
    if osc.verdict == Verdict::Inconclusive && verdict == Verdict::Pass {
        verdict = Verdict::Inconclusive;
    }
    Ok(HhReport {
        p_dims,
        r_dims,
        quotient_dims,
        normal_dims,
        k_dims,
        l_dims,
        inclusion,
        total,
        graded,
        r_into_l,
        isomorphism,
        verdict,
    })
}
