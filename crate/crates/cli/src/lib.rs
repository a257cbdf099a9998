//! Batch driver for the confluence library: reads a JSON problem file, runs
//! its tasks and produces a versioned JSON report.
//!
//! Exit codes: 0 all tasks pass, 1 a verification failed, 2 the file does
//! not parse, 3 validation failed, 4 internal error.

pub mod expr;
pub mod problem;
pub mod report;
pub mod tasks;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use padic_field::Q;
use thiserror::Error;

use crate::problem::{build_domain, build_equation, build_field, ProblemFile};
use crate::report::{fmt_q, FieldRecord, Report, TaskRecord, Verdict, SCHEMA};
use crate::tasks::{execute, validate, Ctx, Outcome, Task};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Flags {
    pub precision: Option<u32>,
    pub truncation: usize,
    pub parallel: bool,
    pub override_admissibility: bool,
}

impl Default for Flags {
    fn default() -> Flags {
        Flags { precision: None, truncation: difference_modules::DEFAULT_TRUNCATION, parallel: false, override_admissibility: false }
    }
}

#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub report: Report,
}

pub fn parse(src: &str) -> Result<ProblemFile, CliError> {
    serde_json::from_str(src).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => CliError::Validation(e.to_string()),
        _ => CliError::Parse(e.to_string()),
    })
}

pub fn run_file(path: &Path, flags: &Flags) -> Result<RunOutcome, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    run_source(&src, flags)
}

pub fn run_source(src: &str, flags: &Flags) -> Result<RunOutcome, CliError> {
    let pf = parse(src)?;
    if flags.truncation < 4 {
        return Err(CliError::Validation("truncation must be at least 4".into()));
    }
    let f = build_field(&pf.field, flags.precision)?;
    let dom = build_domain(&pf.domain, &f)?;
    let ctx = Ctx { dom, m: flags.truncation, n: f.precision(), override_admissibility: flags.override_admissibility };
    let mut equations = BTreeMap::new();
    for (name, spec) in &pf.equations {
        let e = build_equation(spec, &ctx.dom, ctx.m).map_err(|e| CliError::Validation(format!("equation {name:?}: {e}")))?;
        equations.insert(name.clone(), e);
    }
    let tasks = pf.tasks.iter().enumerate().map(|(i, t)| validate(i, t, &equations, &ctx)).collect::<Result<Vec<_>, _>>()?;

    let outcomes = if flags.parallel { run_parallel(&tasks, &ctx) } else { tasks.iter().map(|t| guarded(t, &ctx)).collect() };

    let cap = Q::from_integer(ctx.n as i64);
    let mut records = Vec::with_capacity(tasks.len());
    for (t, mut o) in tasks.iter().zip(outcomes) {
        if let (Some(path), Some(text)) = (&t.output, &o.file) {
            if let Err(e) = std::fs::write(path, text) {
                o.verdict = Verdict::Error;
                o.diagnostics.insert("write_error".into(), serde_json::json!(format!("{path}: {e}")));
            }
        }
        records.push(TaskRecord {
            index: t.index,
            verb: t.verb.clone(),
            equation: t.equation.as_ref().map(|(n, _)| n.clone()),
            verdict: o.verdict,
            min_difference_valuation: o.min_difference_valuation.map(|v| fmt_q(v, cap)),
            output: t.output.clone(),
            diagnostics: o.diagnostics,
        });
    }
    let exit_code = if records.iter().any(|r| r.verdict == Verdict::Error) {
        4
    } else if records.iter().any(|r| r.verdict == Verdict::Fail) {
        1
    } else {
        0
    };
    let field = FieldRecord { p: f.p(), s: f.level(), n: f.precision() };
    Ok(RunOutcome { exit_code, report: Report { schema: SCHEMA, field, truncation: ctx.m, tasks: records } })
}

fn guarded(t: &Task, ctx: &Ctx) -> Outcome {
    match catch_unwind(AssertUnwindSafe(|| execute(t, ctx))) {
        Ok(o) => o,
        Err(e) => {
            let msg = e.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| e.downcast_ref::<String>().cloned());
            let mut o = Outcome { verdict: Verdict::Error, min_difference_valuation: None, diagnostics: BTreeMap::new(), file: None };
            o.diagnostics.insert("error".into(), serde_json::json!(format!("panic: {}", msg.unwrap_or_default())));
            o
        }
    }
}

fn run_parallel(tasks: &[Task], ctx: &Ctx) -> Vec<Outcome> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(tasks.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Outcome>>> = Mutex::new((0..tasks.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= tasks.len() {
                    break;
                }
                let o = guarded(&tasks[i], ctx);
                slots.lock().unwrap()[i] = Some(o);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|o| o.expect("every task ran")).collect()
}
