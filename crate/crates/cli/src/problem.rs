//! Problem files: a field, one domain, named equations and a task list.

use std::collections::BTreeMap;
use std::sync::Arc;

use affinoid_geometry::{Affinoid, Disk};
use analytic_functions::{exp_series, AnalyticFunction, DiskSeries};
use difference_modules::{DiffEquation, Equation, FnMatrix, QDiffEquation, SigmaDeltaEquation};
use padic_field::{make_field, Field, PAdic, Q};
use serde::Deserialize;
use serde_json::Value;

use crate::expr::parse_element;
use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub domain: DomainSpec,
    #[serde(default)]
    pub equations: BTreeMap<String, EquationSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "minus_one")]
    pub s: i32,
    #[serde(rename = "N")]
    pub n: u32,
}

fn minus_one() -> i32 {
    -1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    #[serde(default = "zero_str")]
    pub center: Scalar,
    pub radius: Scalar,
    #[serde(default)]
    pub holes: Vec<HoleSpec>,
}

fn zero_str() -> Scalar {
    Scalar::Int(0)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoleSpec {
    pub center: Scalar,
    pub radius: Scalar,
}

/// A number written either as a JSON integer or as a string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn element(&self, f: &Field) -> Result<PAdic, CliError> {
        match self {
            Scalar::Int(n) => Ok(PAdic::from_int(f, *n)),
            Scalar::Text(s) => parse_element(s, f).map_err(|e| CliError::Validation(format!("element {s:?}: {e}"))),
        }
    }

    pub fn rational(&self) -> Result<Q, CliError> {
        match self {
            Scalar::Int(n) => Ok(Q::from_integer(*n)),
            Scalar::Text(s) => s.trim().parse::<Q>().map_err(|_| CliError::Validation(format!("not a rational: {s:?}"))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EquationSpec {
    Differential { g1: MatrixSpec },
    QDifference { q: Scalar, a: MatrixSpec },
    SigmaDelta { q: Scalar, a: MatrixSpec, g1: MatrixSpec },
}

pub type MatrixSpec = Vec<Vec<EntrySpec>>;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Scalar(Scalar),
    Function(FunctionSpec),
}

/// `sum_k poly[k] T^k + sum coeff (T - c_hole)^{-order}`, or `exp` of a
/// polynomial in `T`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    #[serde(default)]
    pub poly: Vec<Scalar>,
    #[serde(default)]
    pub poles: Vec<PoleSpec>,
    #[serde(default)]
    pub exp: Option<Vec<Scalar>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleSpec {
    pub hole: usize,
    pub order: usize,
    pub coeff: Scalar,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub verb: String,
    #[serde(default)]
    pub equation: Option<String>,
    #[serde(default)]
    pub args: serde_json::Map<String, Value>,
    #[serde(default)]
    pub output: Option<String>,
}

pub fn build_field(spec: &FieldSpec, precision: Option<u32>) -> Result<Field, CliError> {
    make_field(spec.p, spec.s, precision.unwrap_or(spec.n)).map_err(|e| CliError::Validation(format!("field: {e}")))
}

pub fn build_domain(spec: &DomainSpec, f: &Field) -> Result<Arc<Affinoid>, CliError> {
    let outer = Disk::new(spec.center.element(f)?, spec.radius.rational()?);
    let holes = spec.holes.iter().map(|h| Ok(Disk::new(h.center.element(f)?, h.radius.rational()?))).collect::<Result<Vec<_>, CliError>>()?;
    Affinoid::new(outer, holes).map(Arc::new).map_err(|e| CliError::Validation(format!("domain: {e}")))
}

pub fn build_entry(spec: &EntrySpec, dom: &Arc<Affinoid>, m: usize) -> Result<AnalyticFunction, CliError> {
    let f = dom.field();
    let spec = match spec {
        EntrySpec::Scalar(s) => return Ok(AnalyticFunction::constant(dom, s.element(f)?, m)),
        EntrySpec::Function(x) => x,
    };
    let elems = |v: &[Scalar]| v.iter().map(|s| s.element(f)).collect::<Result<Vec<_>, _>>();
    let mut g = if let Some(e) = &spec.exp {
        if !spec.poly.is_empty() || !spec.poles.is_empty() {
            return Err(CliError::Validation("exp cannot be combined with poly or poles".into()));
        }
        let c0 = &dom.outer().center;
        let s = DiskSeries::from_t_poly(c0, &elems(e)?, m);
        if !s.coeff(0).is_zero() {
            return Err(CliError::Validation("exp needs a polynomial vanishing at the centre".into()));
        }
        let s = exp_series(&s).map_err(|e| CliError::Validation(format!("exp: {e}")))?;
        AnalyticFunction::from_disk_series(dom, &s)
    } else {
        AnalyticFunction::from_t_poly(dom, &elems(&spec.poly)?, m)
    };
    for p in &spec.poles {
        let hole = dom.holes().get(p.hole).ok_or_else(|| CliError::Validation(format!("no hole {}", p.hole)))?;
        if p.order == 0 {
            return Err(CliError::Validation("pole order must be positive".into()));
        }
        let t = AnalyticFunction::pole(dom, &hole.center, p.order, m).map_err(|e| CliError::Validation(format!("pole: {e}")))?;
        g = g.add(&t.scale(&p.coeff.element(f)?));
    }
    Ok(g.pad(m))
}

pub fn build_matrix(spec: &MatrixSpec, dom: &Arc<Affinoid>, m: usize) -> Result<FnMatrix, CliError> {
    let rows = spec
        .iter()
        .map(|r| r.iter().map(|e| build_entry(e, dom, m)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    FnMatrix::from_rows(rows).map_err(|e| CliError::Validation(format!("matrix: {e}")))
}

pub fn build_equation(spec: &EquationSpec, dom: &Arc<Affinoid>, m: usize) -> Result<Equation, CliError> {
    let f = dom.field();
    let bad = |e: difference_modules::ModuleError| CliError::Validation(e.to_string());
    Ok(match spec {
        EquationSpec::Differential { g1 } => Equation::D(DiffEquation::new(dom, build_matrix(g1, dom, m)?).map_err(bad)?),
        EquationSpec::QDifference { q, a } => {
            Equation::Q(QDiffEquation::new(dom, q.element(f)?, build_matrix(a, dom, m)?).map_err(bad)?)
        }
        EquationSpec::SigmaDelta { q, a, g1 } => Equation::SD(
            SigmaDeltaEquation::new(dom, q.element(f)?, build_matrix(a, dom, m)?, build_matrix(g1, dom, m)?).map_err(bad)?,
        ),
    })
}
