//! Problem files, the stage pipeline and report emission for the `liefilt`
//! binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use liefilt::exactalg::{format_rational, parse_rational, Rational};
use liefilt::jets::{flowout_sample, q_dimension};
use liefilt::lieflt::{
    check_bracket_compat, check_clean, verify_certificate, Certificate, Filtration, SamplePoints,
    Submanifold, TriState, Verdict,
};
use liefilt::osculating::{compare_hh, osculating_at, tangent_subalg};
use liefilt::vfield::{format_function, format_poly, format_vf, parse_vf, Chart, VectorField};
use liefilt::weightcoord::{weighted_coordinates, WeightedChart};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("malformed problem file: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> InputError {
    InputError::Invalid(msg.into())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum LevelSpec {
    List(Vec<String>),
    Token(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmanifoldSpec {
    pub tangent: Vec<String>,
    pub base_point: Vec<String>,
}

/// The problem file as written.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub variables: Vec<String>,
    pub order: usize,
    pub filtration: BTreeMap<String, LevelSpec>,
    pub submanifold: SubmanifoldSpec,
    pub degree_bound: Option<u32>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub chart: Chart,
    pub filtration: Filtration,
    pub submanifold: Submanifold,
    pub degree_bound: u32,
    pub seed: u64,
    pub samples: usize,
}

/// Command-line overrides of the problem file settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub degree_bound: Option<u32>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

impl ProblemSpec {
    pub fn from_json(src: &str) -> Result<Self, InputError> {
        serde_json::from_str(src).map_err(|e| InputError::Json(e.to_string()))
    }

    pub fn validate(&self, ov: Overrides) -> Result<Problem, InputError> {
        let chart = Chart::new(&self.variables).map_err(|e| invalid(format!("variables: {e}")))?;
        let n = chart.dim();
        let r = self.order;
        if r == 0 {
            return Err(invalid("order must be at least 1"));
        }
        for key in self.filtration.keys() {
            let ok = key
                .strip_prefix('-')
                .and_then(|k| k.parse::<usize>().ok())
                .is_some_and(|k| (1..=r).contains(&k));
            if !ok {
                return Err(invalid(format!(
                    "filtration key {key:?} is not one of \"-1\"..\"-{r}\""
                )));
            }
        }
        let mut levels: Vec<Vec<VectorField>> = Vec::with_capacity(r);
        for i in 1..=r {
            let key = format!("-{i}");
            let level = match self.filtration.get(&key) {
                None => return Err(invalid(format!("filtration level {key} is missing"))),
                Some(LevelSpec::Token(t)) if t == "full" => {
                    if i != r {
                        return Err(invalid(format!("\"full\" is only allowed at level -{r}")));
                    }
                    let mut l = levels.last().cloned().unwrap_or_default();
                    l.extend((0..n).map(|a| VectorField::coord(n, a)));
                    l
                }
                Some(LevelSpec::Token(t)) => {
                    return Err(invalid(format!("level {key}: unknown token {t:?}")))
                }
                Some(LevelSpec::List(exprs)) => exprs
                    .iter()
                    .map(|s| {
                        parse_vf(s, &chart).map_err(|e| invalid(format!("level {key}: {s:?}: {e}")))
                    })
                    .collect::<Result<_, _>>()?,
            };
            levels.push(level);
        }
        let filtration = Filtration::new(n, levels).map_err(|e| invalid(e.to_string()))?;

        let sm = &self.submanifold;
        let mut tangent = Vec::new();
        for name in &sm.tangent {
            let a = chart
                .index_of(name)
                .ok_or_else(|| invalid(format!("unknown tangent variable {name:?}")))?;
            if tangent.contains(&a) {
                return Err(invalid(format!("tangent variable {name:?} repeated")));
            }
            tangent.push(a);
        }
        if sm.base_point.len() != n {
            return Err(invalid(format!(
                "base point has {} entries, expected {n}",
                sm.base_point.len()
            )));
        }
        let base: Vec<Rational> = sm
            .base_point
            .iter()
            .map(|s| parse_rational(s).map_err(|e| invalid(format!("base point entry {s:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        let submanifold = Submanifold::new(n, tangent, base).map_err(|e| invalid(e.to_string()))?;

        Ok(Problem {
            degree_bound: ov
                .degree_bound
                .or(self.degree_bound)
                .unwrap_or_else(|| filtration.default_degree_bound()),
            seed: ov.seed.or(self.seed).unwrap_or(0),
            samples: ov.samples.or(self.samples).unwrap_or(100),
            chart,
            filtration,
            submanifold,
        })
    }
}

pub fn load_problem(path: &str, ov: Overrides) -> Result<Problem, InputError> {
    let src = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.into(),
        msg: e.to_string(),
    })?;
    ProblemSpec::from_json(&src)?.validate(ov)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Weights,
    Coords,
    Jets,
    Osculate,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StageName {
    BracketCompat,
    Clean,
    Weights,
    Coordinates,
    Jets,
    Osculating,
}

impl StageName {
    pub fn as_str(self) -> &'static str {
        match self {
            StageName::BracketCompat => "bracket-compat",
            StageName::Clean => "clean",
            StageName::Weights => "weights",
            StageName::Coordinates => "coordinates",
            StageName::Jets => "jets",
            StageName::Osculating => "osculating",
        }
    }
}

impl Command {
    pub fn stages(self) -> &'static [StageName] {
        use StageName::*;
        match self {
            Command::Check => &[BracketCompat, Clean],
            Command::Weights => &[BracketCompat, Clean, Weights],
            Command::Coords => &[BracketCompat, Clean, Weights, Coordinates],
            Command::Jets => &[BracketCompat, Clean, Weights, Coordinates, Jets],
            Command::Osculate => &[BracketCompat, Clean, Weights, Coordinates, Osculating],
            Command::Report => &[BracketCompat, Clean, Weights, Coordinates, Jets, Osculating],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub name: StageName,
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub data: Value,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub stages: Vec<Stage>,
}

impl Report {
    pub fn verdict(&self) -> Verdict {
        Verdict::all(self.stages.iter().map(|s| s.verdict))
    }

    /// 0 if every stage passed, 1 on any failure, 2 if some stage was
    /// inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.verdict() {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn stage(&self, name: StageName) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn to_value(&self) -> Value {
        let stages: Vec<Value> = self
            .stages
            .iter()
            .map(|s| {
                let mut o =
                    json!({"name": s.name.as_str(), "verdict": s.verdict.as_str(), "data": s.data});
                if let Some(r) = &s.reason {
                    o["reason"] = json!(r);
                }
                o
            })
            .collect();
        json!({ "stages": stages })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = self
            .stages
            .iter()
            .map(|s| s.name.as_str().len())
            .max()
            .unwrap_or(0);
        for s in &self.stages {
            let _ = write!(out, "{:<w$}  {:<12}", s.name.as_str(), s.verdict.as_str());
            let _ = writeln!(out, "  {}", summary(s));
        }
        out
    }
}

fn summary(s: &Stage) -> String {
    let d = &s.data;
    let get = |k: &str| d.get(k).map(|v| v.to_string()).unwrap_or_default();
    if let Some(e) = d.get("error") {
        return format!("error: {}", e.as_str().unwrap_or_default());
    }
    match s.name {
        StageName::BracketCompat => {
            let checks = d["checks"].as_array().map_or(0, Vec::len);
            let mut t = format!("{checks} bracket(s), degree bound {}", get("degree_bound"));
            if let Some(r) = &s.reason {
                let _ = write!(t, " ({r})");
            }
            t
        }
        StageName::Clean => format!("ranks {}", get("ranks")),
        StageName::Weights => format!("weights {}", get("weights")),
        StageName::Coordinates => {
            let c: Vec<&str> = d["coordinates"]
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(Value::as_str)
                .collect();
            format!("({})", c.join(", "))
        }
        StageName::Jets => {
            format!(
                "{}/{} samples in Q, dim Q = {}",
                d["samples"]["tested"].as_u64().unwrap_or(0)
                    - d["samples"]["failed"].as_u64().unwrap_or(0),
                d["samples"]["tested"],
                d["q_dimension"]["total"]
            )
        }
        StageName::Osculating => format!("p dims {}, r dims {}", get("p_dims"), get("r_dims")),
    }
}

fn q(x: &Rational) -> Value {
    json!(format_rational(x))
}

fn qs(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn error_stage(name: StageName, msg: impl ToString) -> Stage {
    Stage {
        name,
        verdict: Verdict::Fail,
        reason: Some("error".into()),
        data: json!({"error": msg.to_string()}),
    }
}

fn tri_state_json(t: &TriState, chart: &Chart) -> Value {
    let mut o = json!({"verdict": t.verdict.as_str()});
    match &t.certificate {
        Some(Certificate::Combination(u)) => {
            o["combination"] =
                Value::Array(u.iter().map(|p| json!(format_poly(p, chart))).collect())
        }
        Some(Certificate::Witness(p)) => o["witness"] = qs(p),
        None => {}
    }
    if let Some(r) = &t.reason {
        o["reason"] = json!(r);
    }
    o
}

/// Runs the stages of `cmd` in order. A failing stage ends the run: later
/// stages assume what it checks.
pub fn run(cmd: Command, p: &Problem) -> Report {
    let mut report = Report::default();
    let mut chart: Option<WeightedChart> = None;
    let mut ranks: Vec<usize> = Vec::new();
    for &name in cmd.stages() {
        let stage = match name {
            StageName::BracketCompat => bracket_stage(p),
            StageName::Clean => match check_clean(&p.filtration, &p.submanifold) {
                Ok(c) => {
                    ranks = c.ranks.clone();
                    Stage {
                        name,
                        verdict: c.verdict,
                        reason: (c.verdict == Verdict::Fail).then(|| "rank_jump".into()),
                        data: json!({"ranks": c.ranks, "generic_ranks": c.generic_ranks}),
                    }
                }
                Err(e) => error_stage(name, e),
            },
            StageName::Weights => match weighted_coordinates(&p.filtration, &p.submanifold) {
                Ok(w) => {
                    let named: BTreeMap<&str, u32> = p
                        .chart
                        .names()
                        .iter()
                        .map(String::as_str)
                        .zip(w.weights().iter().copied())
                        .collect();
                    let flag: Vec<u32> = w.frame().weights.clone();
                    let st = Stage {
                        name,
                        verdict: Verdict::Pass,
                        reason: None,
                        data: json!({
                            "weights": w.weights(),
                            "by_variable": named,
                            "flag_weights": flag,
                            "ranks": ranks,
                        }),
                    };
                    chart = Some(w);
                    st
                }
                Err(e) => error_stage(name, e),
            },
            StageName::Coordinates => coords_stage(p, chart.as_ref().expect("weights ran")),
            StageName::Jets => jets_stage(p, chart.as_ref().expect("weights ran"), &ranks),
            StageName::Osculating => osc_stage(p, chart.as_ref().expect("weights ran"), &ranks),
        };
        let stop = stage.verdict == Verdict::Fail;
        report.stages.push(stage);
        if stop {
            break;
        }
    }
    report
}

fn bracket_stage(p: &Problem) -> Stage {
    let name = StageName::BracketCompat;
    let samples = SamplePoints {
        seed: p.seed,
        ..SamplePoints::default()
    };
    let checks = match check_bracket_compat(&p.filtration, p.degree_bound, &samples) {
        Ok(c) => c,
        Err(e) => return error_stage(name, e),
    };
    let mut verdict = Verdict::Pass;
    let mut rows = Vec::new();
    for c in &checks {
        let target = p.filtration.module_gens(c.i + c.j);
        let mut v = c.result.verdict;
        if !verify_certificate(&c.bracket, &target, &c.result) {
            v = Verdict::Inconclusive;
        }
        verdict = verdict.and(v);
        let mut row = tri_state_json(&c.result, &p.chart);
        row["i"] = json!(c.i);
        row["j"] = json!(c.j);
        row["left"] = json!(format_vf(&c.left, &p.chart));
        row["right"] = json!(format_vf(&c.right, &p.chart));
        row["bracket"] = json!(format_vf(&c.bracket, &p.chart));
        rows.push(row);
    }
    let reason = match verdict {
        Verdict::Pass => None,
        Verdict::Fail => Some("not_in_module".into()),
        Verdict::Inconclusive => Some("degree_bound".into()),
    };
    Stage {
        name,
        verdict,
        reason,
        data: json!({"degree_bound": p.degree_bound, "checks": rows}),
    }
}

fn coords_stage(p: &Problem, w: &WeightedChart) -> Stage {
    let name = StageName::Coordinates;
    let c = &p.chart;
    let trace: Vec<Value> = w
        .trace()
        .iter()
        .map(|t| {
            json!({
                "slot": t.slot,
                "s": t.s,
                "c_s": format_function(&t.c_s, c),
                "chi": format_function(&t.chi, c),
            })
        })
        .collect();
    let mut verdict = Verdict::Pass;
    let mut data = json!({
        "coordinates": w.coords().iter().map(|f| format_function(f, c)).collect::<Vec<_>>(),
        "inverse": w.inverse().iter().map(|f| format_function(f, c)).collect::<Vec<_>>(),
        "weights": w.weights(),
        "corrections": trace,
    });
    if let Some((i, s)) = w.extra_property_failure() {
        verdict = Verdict::Fail;
        data["extra_property_failure"] = json!({"i": i, "s": s});
    }
    Stage {
        name,
        verdict,
        reason: (verdict == Verdict::Fail).then(|| "extra_property".into()),
        data,
    }
}

fn jets_stage(p: &Problem, w: &WeightedChart, ranks: &[usize]) -> Stage {
    let name = StageName::Jets;
    let rep = match flowout_sample(&p.filtration, w, p.samples, p.seed) {
        Ok(r) => r,
        Err(e) => return error_stage(name, e),
    };
    let qd = q_dimension(ranks);
    let first = rep
        .first_failure
        .as_ref()
        .map(|j| Value::Array(j.rows().iter().map(|r| qs(r)).collect()));
    let verdict = if rep.failed == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Stage {
        name,
        verdict,
        reason: (verdict == Verdict::Fail).then(|| "outside_q".into()),
        data: json!({
            "samples": {"tested": rep.tested, "failed": rep.failed, "first_failure": first},
            "seed": p.seed,
            "q_dimension": {"total": qd.total, "graded": qd.graded},
        }),
    }
}

fn osc_stage(p: &Problem, w: &WeightedChart, ranks: &[usize]) -> Stage {
    let name = StageName::Osculating;
    let f = &p.filtration;
    let n = &p.submanifold;
    let osc = match osculating_at(f, n.base_point(), p.degree_bound) {
        Ok(o) => o,
        Err(e) => return error_stage(name, e),
    };
    let rm = match tangent_subalg(f, n, &osc) {
        Ok(r) => r,
        Err(e) => return error_stage(name, e),
    };
    let hh = match compare_hh(f, n, w, ranks, &osc, &rm) {
        Ok(h) => h,
        Err(e) => return error_stage(name, e),
    };
    let a = &osc.algebra;
    let structural = if a.is_antisymmetric()
        && a.satisfies_jacobi()
        && a.respects_grading()
        && rm.is_closed_in(a)
    {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let verdict = structural.and(hh.verdict).and(osc.verdict);
    let constants: Vec<Value> = a
        .nonzero_constants()
        .into_iter()
        .map(|(i, j, k, c)| json!([i, j, k, format_rational(&c)]))
        .collect();
    let reason = match verdict {
        Verdict::Pass => None,
        Verdict::Fail => Some("check_failed".into()),
        Verdict::Inconclusive => Some("degree_bound".into()),
    };
    Stage {
        name,
        verdict,
        reason,
        data: json!({
            "degrees": a.degrees(),
            "p_dims": hh.p_dims,
            "r_dims": hh.r_dims,
            "quotient_dims": hh.quotient_dims,
            "normal_dims": hh.normal_dims,
            "k_dims": hh.k_dims,
            "l_dims": hh.l_dims,
            "representatives": osc.representatives.iter().map(|v| format_vf(v, &p.chart)).collect::<Vec<_>>(),
            "structure_constants": constants,
            "r_spanning": rm.spanning.iter().map(|lv| lv.iter().map(|v| qs(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "unverified_brackets": osc.unverified,
            "checks": {
                "lie_algebra": structural.as_str(),
                "inclusion": hh.inclusion.as_str(),
                "total_dimension": hh.total.as_str(),
                "graded_dimension": hh.graded.as_str(),
                "r_into_l": hh.r_into_l.as_str(),
                "isomorphism": hh.isomorphism.as_str(),
            },
            "degree_bound": p.degree_bound,
        }),
    }
}
