//! Verb arguments, validation and execution.

use std::collections::BTreeMap;
use std::sync::Arc;

use affinoid_geometry::Affinoid;
use analytic_functions::{estimator_tolerance, DiskSeries};
use confluence_engine::{
    best_admissibility, check_admissible, AdmissibilityReport, confluence, deform, deform_between, derive_frobenius_witness, frobenius_pullback,
    frobenius_radius_law, roundtrip_check, verify_frobenius_structure, ConfluenceError, ConfluenceMode, Gate,
};
use difference_modules::{generic_radius, radius_profile, solution_check, taylor_solution_at, Equation, FnMatrix, SeriesMatrix};
use padic_field::{PAdic, Q};
use rank_one_kernels::{pi_exponential, rank_one_deformed_matrix, solvable_operator, KernelError, UPoly, WittVector};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::problem::{build_matrix, MatrixSpec, Scalar, TaskSpec};
use crate::report::{fmt_q, Verdict};
use crate::CliError;

pub const VERBS: [&str; 9] =
    ["radius", "profile", "admissibility", "deform", "confluence", "roundtrip", "frobenius", "solution_check", "rank1"];

pub struct Ctx {
    pub dom: Arc<Affinoid>,
    pub m: usize,
    pub n: u32,
    pub override_admissibility: bool,
}

impl Ctx {
    fn default_threshold(&self, back: i64) -> Q {
        Q::from_integer(self.n as i64 - back)
    }
}

pub struct Task {
    pub index: usize,
    pub verb: String,
    pub equation: Option<(String, Equation)>,
    pub output: Option<String>,
    job: Job,
}

enum Job {
    Radius { center: PAdic, rho: Q },
    Profile { center: PAdic, grid: Vec<Q> },
    Admissibility { r: Option<Q>, q: Option<PAdic> },
    Deform { q: PAdic, expect: Option<FnMatrix>, threshold: Q, show: usize },
    Confluence { mode: ModeArg, expect: Option<FnMatrix>, threshold: Q },
    Roundtrip { q: PAdic, threshold: Q },
    Frobenius { h: u32, witness: Option<FnMatrix>, threshold: Q, radius_law: bool },
    SolutionCheck { candidate: Option<FnMatrix>, center: PAdic, threshold: Q },
    Rank1Exp { w: WittVector, show: usize },
    Rank1Operator { a0: PAdic, w: WittVector, show: usize },
    Rank1Deform { w: WittVector, q: PAdic },
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum ModeArg {
    Derivative,
    Iterated,
    Both,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Rank1Sub {
    Exp,
    Operator,
    Deform,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RadiusArgs {
    center: Option<Scalar>,
    rho: Scalar,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileArgs {
    center: Option<Scalar>,
    grid: Vec<Scalar>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AdmissibilityArgs {
    r: Option<Scalar>,
    q: Option<Scalar>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeformArgs {
    q: Scalar,
    expect: Option<MatrixSpec>,
    threshold: Option<Scalar>,
    #[serde(default = "default_show")]
    show: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfluenceArgs {
    #[serde(default = "default_mode")]
    mode: ModeArg,
    expect: Option<MatrixSpec>,
    threshold: Option<Scalar>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RoundtripArgs {
    q: Scalar,
    threshold: Option<Scalar>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FrobeniusArgs {
    #[serde(default = "one_u32")]
    h: u32,
    witness: Option<MatrixSpec>,
    threshold: Option<Scalar>,
    #[serde(default)]
    radius_law: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionCheckArgs {
    candidate: Option<MatrixSpec>,
    center: Option<Scalar>,
    threshold: Option<Scalar>,
}

/// Witt components as maps from a non-positive power of `T` to a coefficient.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Rank1Args {
    sub: Rank1Sub,
    witt: Vec<BTreeMap<String, Scalar>>,
    #[serde(default)]
    unchecked: bool,
    a0: Option<Scalar>,
    q: Option<Scalar>,
    #[serde(default = "default_show")]
    show: usize,
}

fn default_show() -> usize {
    8
}

fn default_mode() -> ModeArg {
    ModeArg::Derivative
}

fn one_u32() -> u32 {
    1
}

fn args<T: DeserializeOwned>(verb: &str, a: &serde_json::Map<String, Value>) -> Result<T, CliError> {
    serde_json::from_value(Value::Object(a.clone())).map_err(|e| CliError::Validation(format!("{verb}: {e}")))
}

fn threshold(t: &Option<Scalar>, ctx: &Ctx, back: i64) -> Result<Q, CliError> {
    t.as_ref().map_or(Ok(ctx.default_threshold(back)), |s| s.rational())
}

fn kind_error(verb: &str, want: &str) -> CliError {
    CliError::Validation(format!("{verb} needs a {want} equation"))
}

fn witt_vector(spec: &[BTreeMap<String, Scalar>], unchecked: bool, ctx: &Ctx) -> Result<WittVector, CliError> {
    let f = ctx.dom.field();
    let mut comps = Vec::with_capacity(spec.len());
    for c in spec {
        let mut coeffs: Vec<PAdic> = Vec::new();
        for (k, v) in c {
            let e: i64 = k.trim().parse().map_err(|_| CliError::Validation(format!("witt: bad power {k:?}")))?;
            if e > 0 {
                return Err(CliError::Validation(format!("witt: power {e} of T is positive")));
            }
            let i = (-e) as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, PAdic::zero(f));
            }
            coeffs[i] = &coeffs[i] + &v.element(f)?;
        }
        comps.push(UPoly::new(f, coeffs));
    }
    if unchecked {
        if comps.is_empty() {
            return Err(CliError::Validation("witt: empty vector".into()));
        }
        return Ok(WittVector::new_unchecked(comps));
    }
    WittVector::new(comps).map_err(|e| CliError::Validation(format!("witt: {e}")))
}

pub fn validate(index: usize, spec: &TaskSpec, equations: &BTreeMap<String, Equation>, ctx: &Ctx) -> Result<Task, CliError> {
    let verb = spec.verb.as_str();
    if !VERBS.contains(&verb) {
        return Err(CliError::Validation(format!("task {index}: unknown verb {verb:?}")));
    }
    let equation = match &spec.equation {
        Some(name) => {
            let e = equations.get(name).ok_or_else(|| CliError::Validation(format!("task {index}: unknown equation {name:?}")))?;
            Some((name.clone(), e.clone()))
        }
        None => None,
    };
    if verb != "rank1" && equation.is_none() {
        return Err(CliError::Validation(format!("task {index}: {verb} needs an equation")));
    }
    let f = ctx.dom.field();
    let c0 = || ctx.dom.outer().center.clone();
    let center = |c: &Option<Scalar>| c.as_ref().map_or(Ok(c0()), |s| s.element(f));
    let matrix = |m: &Option<MatrixSpec>| m.as_ref().map(|s| build_matrix(s, &ctx.dom, ctx.m)).transpose();
    let a = &spec.args;
    let job = match verb {
        "radius" => {
            let x: RadiusArgs = args(verb, a)?;
            Job::Radius { center: center(&x.center)?, rho: x.rho.rational()? }
        }
        "profile" => {
            let x: ProfileArgs = args(verb, a)?;
            Job::Profile { center: center(&x.center)?, grid: x.grid.iter().map(|g| g.rational()).collect::<Result<_, _>>()? }
        }
        "admissibility" => {
            let x: AdmissibilityArgs = args(verb, a)?;
            Job::Admissibility { r: x.r.map(|r| r.rational()).transpose()?, q: x.q.map(|q| q.element(f)).transpose()? }
        }
        "deform" => {
            let x: DeformArgs = args(verb, a)?;
            Job::Deform { q: x.q.element(f)?, expect: matrix(&x.expect)?, threshold: threshold(&x.threshold, ctx, 10)?, show: x.show }
        }
        "confluence" => {
            let x: ConfluenceArgs = args(verb, a)?;
            if !matches!(equation, Some((_, Equation::Q(_)))) {
                return Err(kind_error(verb, "q_difference"));
            }
            Job::Confluence { mode: x.mode, expect: matrix(&x.expect)?, threshold: threshold(&x.threshold, ctx, 12)? }
        }
        "roundtrip" => {
            let x: RoundtripArgs = args(verb, a)?;
            if !matches!(equation, Some((_, Equation::D(_)))) {
                return Err(kind_error(verb, "differential"));
            }
            Job::Roundtrip { q: x.q.element(f)?, threshold: threshold(&x.threshold, ctx, 12)? }
        }
        "frobenius" => {
            let x: FrobeniusArgs = args(verb, a)?;
            if x.h == 0 {
                return Err(CliError::Validation("frobenius: h must be positive".into()));
            }
            Job::Frobenius { h: x.h, witness: matrix(&x.witness)?, threshold: threshold(&x.threshold, ctx, 10)?, radius_law: x.radius_law }
        }
        "solution_check" => {
            let x: SolutionCheckArgs = args(verb, a)?;
            Job::SolutionCheck { candidate: matrix(&x.candidate)?, center: center(&x.center)?, threshold: threshold(&x.threshold, ctx, 10)? }
        }
        _ => {
            let x: Rank1Args = args(verb, a)?;
            let w = witt_vector(&x.witt, x.unchecked, ctx)?;
            match x.sub {
                Rank1Sub::Exp => Job::Rank1Exp { w, show: x.show },
                Rank1Sub::Operator => {
                    let a0 = x.a0.as_ref().map_or(Ok(PAdic::zero(f)), |s| s.element(f))?;
                    Job::Rank1Operator { a0, w, show: x.show }
                }
                Rank1Sub::Deform => {
                    let q = x.q.ok_or_else(|| CliError::Validation("rank1 deform needs q".into()))?;
                    Job::Rank1Deform { w, q: q.element(f)? }
                }
            }
        }
    };
    Ok(Task { index, verb: verb.to_string(), equation, output: spec.output.clone(), job })
}

pub struct Outcome {
    pub verdict: Verdict,
    pub min_difference_valuation: Option<Q>,
    pub diagnostics: BTreeMap<String, Value>,
    /// Text written to the task's output path.
    pub file: Option<String>,
}

impl Outcome {
    fn new(verdict: Verdict) -> Outcome {
        Outcome { verdict, min_difference_valuation: None, diagnostics: BTreeMap::new(), file: None }
    }

    fn diag(mut self, k: &str, v: Value) -> Outcome {
        self.diagnostics.insert(k.to_string(), v);
        self
    }

    fn mdv(mut self, v: Q) -> Outcome {
        self.min_difference_valuation = Some(v);
        self
    }
}

/// `None` selects the override gate. A failing report is still passed on
/// without the override so that the refusal carries its reasons.
fn certificate<'a>(
    report: &'a Result<AdmissibilityReport, ConfluenceError>,
    ctx: &Ctx,
) -> Result<Option<&'a AdmissibilityReport>, ConfluenceError> {
    match report {
        Ok(r) if r.admissible() || !ctx.override_admissibility => Ok(Some(r)),
        Err(e) if !ctx.override_admissibility => Err(e.clone()),
        _ => Ok(None),
    }
}

/// Library errors that answer the question negatively rather than signal a
/// malfunction.
fn confluence_failure(e: ConfluenceError) -> Outcome {
    let fail = matches!(
        e,
        ConfluenceError::NotAdmissible(_) | ConfluenceError::Inconclusive | ConfluenceError::Diverged(_) | ConfluenceError::RootOfUnity(_)
    );
    Outcome::new(if fail { Verdict::Fail } else { Verdict::Error }).diag("error", json!(e.to_string()))
}

fn kernel_failure(e: KernelError) -> Outcome {
    let fail = matches!(e, KernelError::QNotNearOne | KernelError::NonIntegral(_));
    Outcome::new(if fail { Verdict::Fail } else { Verdict::Error }).diag("error", json!(e.to_string()))
}

fn error(e: impl std::fmt::Display) -> Outcome {
    Outcome::new(Verdict::Error).diag("error", json!(e.to_string()))
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn opt_q(x: Option<Q>, cap: Q) -> Value {
    x.map_or(Value::Null, |v| json!(fmt_q(v, cap)))
}

/// Leading coefficients of every entry, about the outer centre.
fn show_matrix(a: &FnMatrix, show: usize) -> Value {
    let rows: Vec<Value> = (0..a.dim())
        .map(|i| {
            let r: Vec<Value> = (0..a.dim())
                .map(|j| {
                    let e = a.get(i, j);
                    let mut v = json!({ "poly": e.poly().iter().take(show).map(|c| c.to_string()).collect::<Vec<_>>() });
                    for h in 0..e.domain().holes().len() {
                        if !e.hole_part(h).iter().all(|c| c.is_zero()) {
                            let hp: Vec<String> = e.hole_part(h).iter().take(show).map(|c| c.to_string()).collect();
                            v[format!("hole_{h}")] = json!(hp);
                        }
                    }
                    v
                })
                .collect();
            json!(r)
        })
        .collect();
    json!(rows)
}

fn show_series(s: &DiskSeries, show: usize) -> Value {
    json!(s.coeffs().iter().take(show).map(|c| c.to_string()).collect::<Vec<_>>())
}

pub fn execute(t: &Task, ctx: &Ctx) -> Outcome {
    let cap = Q::from_integer(ctx.n as i64);
    let m = ctx.m;
    let eq = t.equation.as_ref().map(|(_, e)| e);
    match &t.job {
        Job::Radius { center, rho } => match generic_radius(eq.unwrap(), center, *rho, m) {
            Ok(r) => Outcome::new(Verdict::Pass)
                .diag("log_radius", json!(fmt_q(r.log_radius, cap)))
                .diag("rho_generic", json!(fmt_q(r.rho_generic, cap)))
                .diag("estimate", opt_q(r.estimate.map(|e| e.log_radius), cap))
                .diag("saturated", json!(r.saturated))
                .diag("truncation_limited", json!(r.truncation_limited)),
            Err(e) => error(e),
        },
        Job::Profile { center, grid } => match radius_profile(eq.unwrap(), center, grid, m) {
            Ok(pts) => {
                let mut text = String::from("# log_rho log_radius\n");
                let mut rows = Vec::new();
                let mut failures = 0;
                for p in &pts {
                    let v = match &p.result {
                        Ok(r) => fmt_q(r.log_radius, cap),
                        Err(_) => {
                            failures += 1;
                            "NA".to_string()
                        }
                    };
                    text.push_str(&format!("{} {}\n", fmt_q(p.rlog, cap), v));
                    rows.push(json!([fmt_q(p.rlog, cap), v]));
                }
                let mut o = Outcome::new(Verdict::Pass).diag("points", json!(rows)).diag("failed_points", json!(failures));
                o.file = Some(text);
                o
            }
            Err(e) => error(e),
        },
        Job::Admissibility { r, q } => {
            let e = eq.unwrap();
            let rep = match r {
                Some(r) => check_admissible(e, *r, q.as_ref(), m),
                None => match best_admissibility(e, q.as_ref(), m) {
                    Ok(x) => x,
                    Err(err) => return confluence_failure(err),
                },
            };
            Outcome::new(pass_if(rep.admissible()))
                .diag("r", json!(fmt_q(rep.r, cap)))
                .diag("R", opt_q(rep.r_estimate, cap))
                .diag("s_x", json!(fmt_q(rep.s_x, cap)))
                .diag("r_x", json!(fmt_q(rep.r_x, cap)))
                .diag("q_shift", opt_q(rep.q_shift, cap))
                .diag("q_condition", json!(rep.q_condition))
                .diag("lower", json!(rep.lower))
                .diag("upper", json!(rep.upper))
                .diag("inconclusive", json!(rep.inconclusive))
        }
        Job::Deform { q, expect, threshold, show } => {
            let e = eq.unwrap();
            let report = best_admissibility(e, Some(q), m);
            let cert = match certificate(&report, ctx) {
                Ok(c) => c,
                Err(err) => return confluence_failure(err),
            };
            let gate = || cert.map_or(Gate::Override, Gate::Certified);
            let d = match e {
                Equation::D(x) => deform(x, q, m, gate()),
                Equation::SD(x) => deform(x.d_part(), q, m, gate()),
                Equation::Q(x) => deform_between(x, q, m, gate()),
            };
            let d = match d {
                Ok(d) => d,
                Err(err) => return confluence_failure(err),
            };
            let a = d.equation.matrix();
            let mut o = Outcome::new(if d.certified { Verdict::Pass } else { Verdict::Uncertified })
                .diag("certified", json!(d.certified))
                .diag("matrix", show_matrix(a, *show));
            if let Some(x) = expect {
                let v = a.agreement(x);
                o = o.mdv(v).diag("threshold", json!(fmt_q(*threshold, cap)));
                if v < *threshold {
                    o.verdict = Verdict::Fail;
                }
            }
            o
        }
        Job::Confluence { mode, expect, threshold } => {
            let Some(Equation::Q(e)) = eq else { unreachable!() };
            let report = best_admissibility(eq.unwrap(), None, m);
            let cert = match certificate(&report, ctx) {
                Ok(c) => c,
                Err(err) => return confluence_failure(err),
            };
            let run = |md| confluence(e, md, m, cert.map_or(Gate::Override, Gate::Certified));
            let primary = if *mode == ModeArg::Iterated { ConfluenceMode::IteratedLimit } else { ConfluenceMode::DerivativeOfFamily };
            let res = match run(primary) {
                Ok(r) => r,
                Err(err) => return confluence_failure(err),
            };
            let g = res.equation.matrix().clone();
            let mut o = Outcome::new(Verdict::Pass).diag("matrix", show_matrix(&g, default_show()));
            let mut mdv: Option<Q> = None;
            let mut diag = res.diagnostic;
            if *mode == ModeArg::Both {
                match run(ConfluenceMode::IteratedLimit) {
                    Ok(r) => {
                        let v = r.equation.matrix().agreement(&g);
                        o = o.diag("mode_agreement", json!(fmt_q(v, cap)));
                        diag = r.diagnostic;
                        // the iterated limit converges linearly: judge it against its own last step
                        let last = diag.as_ref().and_then(|d| d.difference_valuations.last().copied());
                        if last.is_some_and(|l| v < l) {
                            o.verdict = Verdict::Fail;
                        }
                    }
                    Err(err) => return confluence_failure(err),
                }
            }
            if let Some(d) = &diag {
                let vals: Vec<String> = d.difference_valuations.iter().map(|v| fmt_q(*v, cap)).collect();
                o = o.diag("steps", json!(d.steps)).diag("difference_valuations", json!(vals)).diag("exhausted", json!(d.exhausted));
            }
            if let Some(x) = expect {
                let v = g.agreement(x);
                mdv = Some(v);
                o = o.diag("threshold", json!(fmt_q(*threshold, cap)));
                if v < *threshold {
                    o.verdict = Verdict::Fail;
                }
            }
            if let Some(v) = mdv {
                o = o.mdv(v);
            }
            o
        }
        Job::Roundtrip { q, threshold } => {
            let Some(Equation::D(e)) = eq else { unreachable!() };
            match roundtrip_check(e, q, m, *threshold) {
                Ok(r) => Outcome::new(pass_if(r.passes()))
                    .mdv(r.differential.min(r.difference))
                    .diag("differential", json!(fmt_q(r.differential, cap)))
                    .diag("difference", json!(fmt_q(r.difference, cap)))
                    .diag("threshold", json!(fmt_q(r.threshold, cap))),
                Err(err) => confluence_failure(err),
            }
        }
        Job::Frobenius { h, witness, threshold, radius_law } => {
            let e = eq.unwrap();
            let mut o = match witness {
                Some(hm) => match verify_frobenius_structure(e, hm, *h, m, *threshold) {
                    Ok(c) => Outcome::new(pass_if(c.passes()))
                        .mdv(c.min_difference_valuation)
                        .diag("compared_degree", json!(c.compared_degree))
                        .diag("threshold", json!(fmt_q(c.threshold, cap))),
                    Err(err) => return confluence_failure(err),
                },
                None => match derive_frobenius_witness(e, *h, m) {
                    Ok(w) => Outcome::new(pass_if(w.in_ring()))
                        .diag("in_ring", json!(w.in_ring()))
                        .diag("log_radius", opt_q(w.log_radius, cap))
                        .diag("rho", json!(fmt_q(w.rho, cap)))
                        .diag("witness", json!(w.series.entries().iter().map(|s| show_series(s, default_show())).collect::<Vec<_>>())),
                    Err(err) => return confluence_failure(err),
                },
            };
            o = o.diag("h", json!(h));
            if *radius_law {
                match radius_law_check(e, m) {
                    Ok((before, after, law, ok)) => {
                        o = o
                            .diag("radius_before", json!(fmt_q(before, cap)))
                            .diag("radius_after", json!(fmt_q(after, cap)))
                            .diag("radius_law", json!(fmt_q(law, cap)))
                            .diag("radius_law_holds", json!(ok));
                        if !ok {
                            o.verdict = Verdict::Fail;
                        }
                    }
                    Err(err) => return confluence_failure(err),
                }
            }
            o
        }
        Job::SolutionCheck { candidate, center, threshold } => {
            let e = eq.unwrap();
            let y = match candidate {
                Some(c) => c.try_map(|x| x.taylor_at(center, m)).map_err(|e| e.to_string()),
                None => {
                    let src = match e {
                        Equation::SD(x) => Equation::Q(x.q_part().clone()),
                        other => other.clone(),
                    };
                    taylor_solution_at(&src, center, m).map(|s| s.to_series()).map_err(|e| e.to_string())
                }
            };
            let y: SeriesMatrix = match y {
                Ok(y) => y,
                Err(s) => return error(s),
            };
            match solution_check(e, &y, *threshold) {
                Ok(r) => {
                    let laws: Vec<Value> = r
                        .laws
                        .iter()
                        .map(|l| {
                            json!({
                                "law": format!("{:?}", l.law).to_lowercase(),
                                "min_difference_valuation": fmt_q(l.min_difference_valuation, cap),
                                "passes": l.passes,
                            })
                        })
                        .collect();
                    let failed: Vec<String> = r.failed_laws().iter().map(|l| format!("{l:?}").to_lowercase()).collect();
                    Outcome::new(pass_if(r.passes()))
                        .mdv(r.min_difference_valuation())
                        .diag("laws", json!(laws))
                        .diag("failed_laws", json!(failed))
                        .diag("compared_degree", json!(r.compared_degree))
                        .diag("threshold", json!(fmt_q(r.threshold, cap)))
                }
                Err(err) => error(err),
            }
        }
        Job::Rank1Exp { w, show } => match pi_exponential(w, m) {
            Ok(x) => Outcome::new(Verdict::Pass).diag("in_unit_group", json!(x.in_unit_group())).diag("series_u", show_series(x.series(), *show)),
            Err(err) => kernel_failure(err),
        },
        Job::Rank1Operator { a0, w, show } => match solvable_operator(a0, w, &ctx.dom, m) {
            Ok(d) => Outcome::new(Verdict::Pass).diag("g1", show_matrix(d.matrix(), *show)),
            Err(err) => kernel_failure(err),
        },
        Job::Rank1Deform { w, q } => match rank_one_deformed_matrix(w, q, m) {
            Ok(d) => {
                let g = &d.diagnostic;
                Outcome::new(pass_if(g.passes()))
                    .diag("integral", json!(g.integral))
                    .diag("overconvergent", json!(g.overconvergent))
                    .diag("min_valuation", opt_q(g.min_valuation.fin(), cap))
                    .diag("log_radius", opt_q(g.log_radius, cap))
                    .diag("tolerance", json!(fmt_q(g.tolerance, cap)))
                    .diag("series_u", show_series(&d.series, default_show()))
            }
            Err(err) => kernel_failure(err),
        },
    }
}

/// Generic radius at the outer Shilov point before and after the Frobenius
/// pullback, against the predicted law.
fn radius_law_check(e: &Equation, m: usize) -> Result<(Q, Q, Q, bool), ConfluenceError> {
    let outer = |x: &Equation| -> Result<Q, ConfluenceError> {
        let o = x.domain().outer();
        Ok(generic_radius(x, &o.center, o.rlog, m)?.log_radius)
    };
    let before = outer(e)?;
    let after = outer(&frobenius_pullback(e, 3 * m)?)?;
    let law = frobenius_radius_law(e.domain().field().p(), before);
    let tol = estimator_tolerance(m);
    Ok((before, after, law, after - law <= tol && law - after <= tol))
}
