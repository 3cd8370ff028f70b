//! Singular Lie filtrations given by generators, and the checks needed before
//! a weighting can be built from them.

pub(crate) mod ansatz;
mod sample;

pub use sample::SamplePoints;

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::{rank, rank_ratfunc, Poly, RatFunc, Rational};
use crate::vfield::{lie_bracket, Chart, VectorField, VfError};
use ansatz::{combine, Ansatz};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiefltError {
    #[error("invalid filtration: {0}")]
    BadFiltration(String),
    #[error("invalid submanifold: {0}")]
    BadSubmanifold(String),
    #[error("ranks are not non-decreasing: {0:?}")]
    NotMonotone(Vec<usize>),
    #[error("variable `{0}` occurs in both factors")]
    NameClash(String),
    #[error("submanifold is not clean")]
    NotClean,
    #[error(transparent)]
    Vf(#[from] VfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    /// The worse of two verdicts: fail dominates inconclusive dominates pass.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn all<I: IntoIterator<Item = Verdict>>(it: I) -> Verdict {
        it.into_iter().fold(Verdict::Pass, Verdict::and)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Coefficients `u_j` with `v = sum_j u_j g_j`.
    Combination(Vec<Poly>),
    /// A point where the claimed span condition fails.
    Witness(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriState {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub reason: Option<String>,
}

impl TriState {
    pub fn pass(c: Certificate) -> Self {
        TriState {
            verdict: Verdict::Pass,
            certificate: Some(c),
            reason: None,
        }
    }

    pub fn fail(c: Certificate) -> Self {
        TriState {
            verdict: Verdict::Fail,
            certificate: Some(c),
            reason: None,
        }
    }

    pub fn inconclusive(reason: &str) -> Self {
        TriState {
            verdict: Verdict::Inconclusive,
            certificate: None,
            reason: Some(reason.into()),
        }
    }

    pub fn vacuous() -> Self {
        TriState {
            verdict: Verdict::Pass,
            certificate: None,
            reason: Some("vacuous".into()),
        }
    }
}

/// The coordinate subspace `N = {x_a = 0 : a not tangent}` with a base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submanifold {
    n: usize,
    tangent: Vec<usize>,
    fiber: Vec<usize>,
    base_point: Vec<Rational>,
}

impl Submanifold {
    pub fn new(
        n: usize,
        mut tangent: Vec<usize>,
        base_point: Vec<Rational>,
    ) -> Result<Self, LiefltError> {
        tangent.sort_unstable();
        tangent.dedup();
        if tangent.iter().any(|&a| a >= n) {
            return Err(LiefltError::BadSubmanifold(
                "tangent index out of range".into(),
            ));
        }
        if base_point.len() != n {
            return Err(LiefltError::BadSubmanifold(format!(
                "base point has {} entries, chart has {n}",
                base_point.len()
            )));
        }
        let fiber: Vec<usize> = (0..n).filter(|a| !tangent.contains(a)).collect();
        if fiber.iter().any(|&a| !base_point[a].is_zero()) {
            return Err(LiefltError::BadSubmanifold(
                "base point does not lie on N".into(),
            ));
        }
        Ok(Submanifold {
            n,
            tangent,
            fiber,
            base_point,
        })
    }

    /// The origin as a zero-dimensional submanifold.
    pub fn origin(n: usize) -> Self {
        Self::new(n, Vec::new(), vec![Rational::zero(); n]).expect("origin is valid")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// `k_0 = dim N`.
    pub fn dim(&self) -> usize {
        self.tangent.len()
    }

    pub fn tangent(&self) -> &[usize] {
        &self.tangent
    }

    pub fn fiber(&self) -> &[usize] {
        &self.fiber
    }

    pub fn base_point(&self) -> &[Rational] {
        &self.base_point
    }

    pub fn is_tangent(&self, a: usize) -> bool {
        self.tangent.contains(&a)
    }

    /// `f|_N`, still written on the full chart.
    pub fn restrict(&self, f: &RatFunc) -> Result<RatFunc, VfError> {
        crate::vfield::restrict_to_n(f, &self.fiber)
    }

    pub fn restrict_vf(&self, v: &VectorField) -> Result<VectorField, VfError> {
        v.set_zero(&self.fiber)
    }
}

/// Generators for `H_{-1} ⊂ ... ⊂ H_{-r}`, level by level. `H_{-i}` is the
/// module generated by the lists of levels `1..=i`; `H_{-r}` always contains
/// the coordinate fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    n: usize,
    levels: Vec<Vec<VectorField>>,
}

impl Filtration {
    pub fn new(n: usize, levels: Vec<Vec<VectorField>>) -> Result<Self, LiefltError> {
        if levels.is_empty() {
            return Err(LiefltError::BadFiltration(
                "order must be at least 1".into(),
            ));
        }
        for (i, level) in levels.iter().enumerate() {
            for v in level {
                if v.dim() != n {
                    return Err(LiefltError::Vf(VfError::ChartMismatch(n, v.dim())));
                }
                if !v.has_poly_coeffs() {
                    return Err(LiefltError::BadFiltration(format!(
                        "generator at level -{} has non-polynomial coefficients",
                        i + 1
                    )));
                }
            }
        }
        Ok(Filtration { n, levels })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The order `r`.
    pub fn order(&self) -> usize {
        self.levels.len()
    }

    /// The generator list given for level `-i`, `1 <= i <= r`.
    pub fn level(&self, i: usize) -> &[VectorField] {
        &self.levels[i - 1]
    }

    /// Generators of the module `H_{-i}`: the union of the level lists up to
    /// `i` without repeats, followed by the coordinate fields once `i >= r`.
    pub fn module_gens(&self, i: usize) -> Vec<VectorField> {
        let mut out: Vec<VectorField> = Vec::new();
        for level in self.levels.iter().take(i) {
            for v in level {
                if !v.is_zero() && !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
        if i >= self.order() {
            for a in 0..self.n {
                let e = VectorField::coord(self.n, a);
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        out
    }

    /// Generators of `H_{-i}` not already among those of `H_{-i+1}`.
    pub fn new_gens(&self, i: usize) -> Vec<VectorField> {
        let prev = if i == 0 {
            Vec::new()
        } else {
            self.module_gens(i - 1)
        };
        self.module_gens(i)
            .into_iter()
            .filter(|v| !prev.contains(v))
            .collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.levels
            .iter()
            .flatten()
            .map(VectorField::degree)
            .max()
            .unwrap_or(0)
    }

    /// `2 * (max generator degree) + r`.
    pub fn default_degree_bound(&self) -> u32 {
        2 * self.max_degree() + self.order() as u32
    }
}

pub(crate) fn poly_components(v: &VectorField) -> Vec<Poly> {
    v.poly_coeffs().expect("polynomial vector field")
}

/// Is `v(p)` in the span of the `g_j(p)`? `None` if some value is undefined.
pub fn in_span_at(v: &VectorField, gens: &[VectorField], p: &[Rational]) -> Option<bool> {
    let mut rows: Vec<Vec<Rational>> = gens.iter().map(|g| g.eval(p)).collect::<Option<_>>()?;
    let r0 = rank(&rows);
    rows.push(v.eval(p)?);
    Some(rank(&rows) == r0)
}

/// Decides `v ∈ <gens>` up to coefficient degree `degree_bound`.
///
/// A bounded solve gives `pass` with the coefficients; otherwise a sample
/// point where `v` leaves the pointwise span gives `fail`; otherwise the
/// answer is `inconclusive`.
pub fn module_membership(
    v: &VectorField,
    gens: &[VectorField],
    degree_bound: u32,
    samples: &SamplePoints,
) -> Result<TriState, LiefltError> {
    let n = v.dim();
    for g in gens {
        if g.dim() != n {
            return Err(LiefltError::Vf(VfError::ChartMismatch(n, g.dim())));
        }
    }
    let (Some(target), Some(gpolys)) = (
        v.poly_coeffs(),
        gens.iter()
            .map(VectorField::poly_coeffs)
            .collect::<Option<Vec<_>>>(),
    ) else {
        return Err(LiefltError::BadFiltration(
            "membership needs polynomial fields".into(),
        ));
    };
    if let Some(u) = solve_combination(&target, &gpolys, n, degree_bound) {
        return Ok(TriState::pass(Certificate::Combination(u)));
    }
    for p in samples.points(n) {
        if in_span_at(v, gens, &p) == Some(false) {
            return Ok(TriState::fail(Certificate::Witness(p)));
        }
    }
    Ok(TriState::inconclusive("degree_bound"))
}

/// Solves `target = sum_j u_j gens[j]` with `deg u_j <= degree`.
pub(crate) fn solve_combination(
    target: &[Poly],
    gens: &[Vec<Poly>],
    n: usize,
    degree: u32,
) -> Option<Vec<Poly>> {
    if target.iter().all(Poly::is_zero) {
        return Some(vec![Poly::zero(n); gens.len()]);
    }
    if gens.is_empty() {
        return None;
    }
    let ans = Ansatz::new(n, gens.len(), degree);
    let rref = ans.system(gens, Some(target), |_, _| true).reduce();
    let u = ans.combination(&rref.particular()?);
    debug_assert_eq!(combine(&u, gens, n), target);
    Some(u)
}

/// Re-checks a certificate produced by [`module_membership`].
pub fn verify_certificate(v: &VectorField, gens: &[VectorField], t: &TriState) -> bool {
    match (&t.verdict, &t.certificate) {
        (Verdict::Pass, Some(Certificate::Combination(u))) => {
            let gpolys: Vec<Vec<Poly>> = gens.iter().map(poly_components).collect();
            u.len() == gens.len() && combine(u, &gpolys, v.dim()) == poly_components(v)
        }
        (Verdict::Fail, Some(Certificate::Witness(p))) => in_span_at(v, gens, p) == Some(false),
        (Verdict::Inconclusive, None) => true,
        _ => false,
    }
}

/// One tested bracket `[left, right]` with `left` new at level `-i` and
/// `right` new at level `-j`.
#[derive(Debug, Clone)]
pub struct BracketCheck {
    pub i: usize,
    pub j: usize,
    pub left: VectorField,
    pub right: VectorField,
    pub bracket: VectorField,
    pub result: TriState,
}

/// Tests `[H_{-i}, H_{-j}] ⊂ H_{-i-j}` on generators, for `i <= j`. Pairs with
/// `i + j > r` land in `H_{-r}`, which is everything, and are not listed.
pub fn check_bracket_compat(
    f: &Filtration,
    degree_bound: u32,
    samples: &SamplePoints,
) -> Result<Vec<BracketCheck>, LiefltError> {
    let r = f.order();
    let mut out = Vec::new();
    for i in 1..=r {
        for j in i..=r {
            if i + j > r {
                continue;
            }
            let target = f.module_gens(i + j);
            let (gi, gj) = (f.new_gens(i), f.new_gens(j));
            for (a, x) in gi.iter().enumerate() {
                for (b, y) in gj.iter().enumerate() {
                    if i == j && b <= a {
                        continue;
                    }
                    let bracket = lie_bracket(x, y)?;
                    let result = module_membership(&bracket, &target, degree_bound, samples)?;
                    out.push(BracketCheck {
                        i,
                        j,
                        left: x.clone(),
                        right: y.clone(),
                        bracket,
                        result,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanReport {
    pub verdict: Verdict,
    /// `k_0, ..., k_r`: `dim(T_m N + H_{-i}|_m)`.
    pub ranks: Vec<usize>,
    pub generic_ranks: Vec<usize>,
}

/// Certifies that `dim(T N + H_{-i}|_N)` is locally constant near the base
/// point, by comparing the rank over the function field of `N` with the rank
/// at the base point.
pub fn check_clean(f: &Filtration, n: &Submanifold) -> Result<CleanReport, LiefltError> {
    if f.dim() != n.ambient_dim() {
        return Err(LiefltError::Vf(VfError::ChartMismatch(
            f.dim(),
            n.ambient_dim(),
        )));
    }
    let dim = f.dim();
    let mut ranks = Vec::new();
    let mut generic = Vec::new();
    for i in 0..=f.order() {
        let mut rows: Vec<Vec<RatFunc>> = n
            .tangent()
            .iter()
            .map(|&b| VectorField::coord(dim, b).coeffs().to_vec())
            .collect();
        for g in f.module_gens(i) {
            rows.push(n.restrict_vf(&g)?.coeffs().to_vec());
        }
        let at_m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.eval(n.base_point()))
                    .collect::<Option<_>>()
            })
            .collect::<Option<_>>()
            .ok_or(VfError::VanishingDenominator)?;
        generic.push(rank_ratfunc(&rows));
        ranks.push(rank(&at_m));
    }
    let verdict = if ranks == generic {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(CleanReport {
        verdict,
        ranks,
        generic_ranks: generic,
    })
}

/// Weights of the flag positions `k_0 + 1, ..., k_r`: `w_a = i` for
/// `k_{i-1} < a <= k_i`.
pub fn weight_sequence(ranks: &[usize]) -> Result<Vec<u32>, LiefltError> {
    if ranks.windows(2).any(|w| w[0] > w[1]) {
        return Err(LiefltError::NotMonotone(ranks.to_vec()));
    }
    let mut w = Vec::new();
    for i in 1..ranks.len() {
        for _ in ranks[i - 1]..ranks[i] {
            w.push(i as u32);
        }
    }
    Ok(w)
}

/// Generators of the restriction of `<gens>` to `N`, written on the chart of
/// `N` (the tangent variables, in order).
///
/// Combinations `sum u_j g_j` with `deg u_j <= degree_bound` whose fiber
/// components vanish on `N` are found by a bounded solve, restricted, and
/// pruned to a subset generating the same module at that bound.
pub fn restrict_distribution(
    gens: &[VectorField],
    n: &Submanifold,
    degree_bound: u32,
) -> Result<Vec<VectorField>, LiefltError> {
    let dim = n.ambient_dim();
    let gpolys: Vec<Vec<Poly>> = gens.iter().map(poly_components).collect();
    if gens.is_empty() || n.dim() == 0 {
        return Ok(Vec::new());
    }
    let ans = Ansatz::new(dim, gens.len(), degree_bound);
    let fiber = n.fiber();
    let on_n = |m: &crate::exactalg::Monomial| fiber.iter().all(|&b| m.exponents()[b] == 0);
    let rref = ans
        .system(&gpolys, None, |a, m| fiber.contains(&a) && on_n(m))
        .reduce();
    let mut kept: Vec<Vec<Poly>> = Vec::new();
    for z in rref.nullspace_sparse() {
        let u = ans.combination_sparse(&z);
        let field = combine(&u, &gpolys, dim);
        let restricted: Vec<Poly> = n
            .tangent()
            .iter()
            .map(|&b| field[b].set_zero(fiber).project(n.tangent()))
            .collect();
        if restricted.iter().all(Poly::is_zero) || kept.contains(&restricted) {
            continue;
        }
        if solve_combination(&restricted, &kept, n.dim(), degree_bound).is_some() {
            continue;
        }
        kept.push(restricted);
    }
    Ok(kept.into_iter().map(VectorField::from_polys).collect())
}

/// Generators of the product distribution on the product chart.
pub fn product_distribution(
    chart_a: &Chart,
    gens_a: &[VectorField],
    chart_b: &Chart,
    gens_b: &[VectorField],
) -> Result<(Chart, Vec<VectorField>), LiefltError> {
    if let Some(clash) = chart_a
        .names()
        .iter()
        .find(|x| chart_b.index_of(x).is_some())
    {
        return Err(LiefltError::NameClash(clash.clone()));
    }
    let names: Vec<String> = chart_a
        .names()
        .iter()
        .chain(chart_b.names())
        .cloned()
        .collect();
    let chart = Chart::new(&names)?;
    let (na, nb) = (chart_a.dim(), chart_b.dim());
    let map_a: Vec<usize> = (0..na).collect();
    let map_b: Vec<usize> = (na..na + nb).collect();
    let mut out = Vec::new();
    for g in gens_a {
        out.push(g.embed(na + nb, &map_a));
    }
    for g in gens_b {
        out.push(g.embed(na + nb, &map_b));
    }
    Ok((chart, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use crate::vfield::parse_vf;

    fn chart() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    fn vf(s: &str) -> VectorField {
        parse_vf(s, &chart()).unwrap()
    }

    fn vfs(list: &[&str]) -> Vec<VectorField> {
        list.iter().map(|s| vf(s)).collect()
    }

    fn example1() -> Filtration {
        Filtration::new(
            3,
            vec![vfs(&["dx + x*dz"]), vfs(&["dx + x*dz", "dy"]), vfs(&["dz"])],
        )
        .unwrap()
    }

    fn martinet() -> Filtration {
        let x = "dx + (2*x + y)*dz";
        let y = "dy + (x + x^2)*dz";
        Filtration::new(
            3,
            vec![
                vfs(&[x]),
                vfs(&[x, y]),
                vfs(&[x, y, "2*x*dz"]),
                vfs(&[x, y, "2*x*dz"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn membership_pass_and_fail() {
        let c1 = Chart::new(&["x"]).unwrap();
        let v = parse_vf("x*dx", &c1).unwrap();
        let g = vec![parse_vf("dx", &c1).unwrap()];
        let t = module_membership(&v, &g, 1, &SamplePoints::default()).unwrap();
        assert_eq!(t.verdict, Verdict::Pass);
        assert_eq!(
            t.certificate,
            Some(Certificate::Combination(vec![Poly::var(1, 0)]))
        );
        assert!(verify_certificate(&v, &g, &t));

        let gens = vfs(&["dx", "dy + x*dz"]);
        let t = module_membership(&vf("dz"), &gens, 2, &SamplePoints::default()).unwrap();
        assert_eq!(t.verdict, Verdict::Fail);
        assert_eq!(t.certificate, Some(Certificate::Witness(vec![int(0); 3])));
        assert!(verify_certificate(&vf("dz"), &gens, &t));

        let gens = vfs(&["dx + (2*x + y)*dz", "dy + (x + x^2)*dz"]);
        let t = module_membership(&vf("2*x*dz"), &gens, 2, &SamplePoints::default()).unwrap();
        assert_ne!(t.verdict, Verdict::Pass);
        assert!(verify_certificate(&vf("2*x*dz"), &gens, &t));
    }

    #[test]
    fn bracket_compatibility() {
        let checks = check_bracket_compat(&martinet(), 2, &SamplePoints::default()).unwrap();
        assert!(!checks.is_empty());
        for c in &checks {
            assert_eq!(c.result.verdict, Verdict::Pass, "{c:?}");
            assert!(verify_certificate(
                &c.bracket,
                &martinet().module_gens(c.i + c.j),
                &c.result
            ));
        }
        let h1 = vfs(&["dx", "dy + x*dz"]);
        let broken = Filtration::new(3, vec![h1.clone(), h1, vfs(&["dz"])]).unwrap();
        let checks = check_bracket_compat(&broken, 2, &SamplePoints::default()).unwrap();
        let bad: Vec<_> = checks
            .iter()
            .filter(|c| c.result.verdict == Verdict::Fail)
            .collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].i, bad[0].j), (1, 1));
        assert_eq!(bad[0].bracket, vf("dz"));
    }

    #[test]
    fn cleanness_and_weights() {
        let o = Submanifold::origin(3);
        let c = check_clean(&example1(), &o).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert_eq!(c.ranks, vec![0, 1, 2, 3]);
        assert_eq!(weight_sequence(&c.ranks).unwrap(), vec![1, 2, 3]);
        let c = check_clean(&martinet(), &o).unwrap();
        assert_eq!(c.ranks, vec![0, 1, 2, 2, 3]);
        assert_eq!(weight_sequence(&c.ranks).unwrap(), vec![1, 2, 4]);
        let all = Submanifold::new(3, vec![0, 1, 2], vec![int(0); 3]).unwrap();
        let c = check_clean(&martinet(), &all).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert!(c.ranks.iter().all(|&k| k == 3));
        assert!(weight_sequence(&c.ranks).unwrap().is_empty());
        assert!(weight_sequence(&[0, 2, 1]).is_err());
    }

    #[test]
    fn unclean_line() {
        // along the x-axis, H_{-1} = <x dy> drops rank at the origin
        let f = Filtration::new(3, vec![vfs(&["x*dy"]), vec![]]).unwrap();
        let n = Submanifold::new(3, vec![0], vec![int(0); 3]).unwrap();
        let c = check_clean(&f, &n).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(c.generic_ranks[1], 2);
        assert_eq!(c.ranks[1], 1);
    }

    #[test]
    fn restriction_to_submanifolds() {
        let c2 = Chart::new(&["x", "y"]).unwrap();
        let gens: Vec<VectorField> = ["dx", "dy"]
            .iter()
            .map(|s| parse_vf(s, &c2).unwrap())
            .collect();
        let n = Submanifold::new(2, vec![0], vec![int(0); 2]).unwrap();
        let r = restrict_distribution(&gens, &n, 1).unwrap();
        assert_eq!(r, vec![VectorField::coord(1, 0)]);

        // N = {y = 0} with coordinates (x, z)
        let n = Submanifold::new(3, vec![0, 2], vec![int(0); 3]).unwrap();
        let r = restrict_distribution(&vfs(&["dx + y*dz"]), &n, 1).unwrap();
        assert_eq!(r, vec![VectorField::coord(2, 0)]);

        // along N = {z = 0} the field is transverse where y != 0 and nothing survives
        let n = Submanifold::new(3, vec![0, 1], vec![int(0); 3]).unwrap();
        let r = restrict_distribution(&vfs(&["dx + y*dz"]), &n, 2).unwrap();
        assert!(r.is_empty());

        let n = Submanifold::new(3, vec![0, 1], vec![int(0); 3]).unwrap();
        let r = restrict_distribution(&vfs(&["dx", "x*dy"]), &n, 1).unwrap();
        let c = Chart::new(&["x", "y"]).unwrap();
        assert_eq!(
            r,
            vec![parse_vf("dx", &c).unwrap(), parse_vf("x*dy", &c).unwrap()]
        );
    }

    #[test]
    fn products() {
        let ca = Chart::new(&["x"]).unwrap();
        let cb = Chart::new(&["u"]).unwrap();
        let (c, g) = product_distribution(
            &ca,
            &[parse_vf("dx", &ca).unwrap()],
            &cb,
            &[parse_vf("du", &cb).unwrap()],
        )
        .unwrap();
        assert_eq!(c.names(), &["x".to_string(), "u".to_string()]);
        assert_eq!(g, vec![VectorField::coord(2, 0), VectorField::coord(2, 1)]);
        let (_, g) = product_distribution(&ca, &[], &cb, &[parse_vf("du", &cb).unwrap()]).unwrap();
        assert_eq!(g, vec![VectorField::coord(2, 1)]);
        assert!(product_distribution(&ca, &[], &ca, &[]).is_err());
    }

    #[test]
    fn submanifold_validation() {
        assert!(Submanifold::new(2, vec![0], vec![int(1), int(1)]).is_err());
        assert!(Submanifold::new(2, vec![0], vec![int(1)]).is_err());
        assert!(Submanifold::new(2, vec![0], vec![int(1), int(0)]).is_ok());
    }
}
