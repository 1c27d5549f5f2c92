//! Problem files, task dispatch and reports for the `lie-atiyah` tool.
//!
//! A problem file is TOML. Objects live in named tables (`[algebras.sl2]`, `[pairs.borel]`, ...)
//! and `[[tasks]]` lists commands in execution order. Rationals are integers or `"p/q"` strings.
//! Bracket entries `{ i, j, k, c }` set `[x_i, x_j] = ... + c x_k`; the file header must declare
//! `completion = "antisymmetric"`, meaning `[x_j, x_i] = -[x_i, x_j]` is filled in automatically.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::atiyah::{atiyah_cocycle, extend_connection, Connection, Triad};
use crate::cohomology::{
    atiyah_class, cocycle_cochain, coefficient_module, compatible_connection_solve, unpack_b_assignment, CeComplex,
};
use crate::error::Error;
use crate::extension::{hexagon_diagnostics, model_coherence, ModelIso};
use crate::fixtures::restrict_rep;
use crate::homogeneous::{canonical_connection, reductive_test, wang_dimension_check, wang_solve, WangProblem};
use crate::lie::{LieAlgebra, LiePair, Representation};
use crate::linalg::{parse_scalar, Matrix, Scalar};
use crate::matched::{
    derivation_algebra, equivariant_structure, is_g_invariant, recognize_matched, MatchedPair, MatchedReport,
};
use crate::selftest::{run_selftest, DEFAULT_SEED};

pub const FORMAT_VERSION: &str = "1";
pub const COMPLETION: &str = "antisymmetric";

pub const COMMANDS: [&str; 18] = [
    "validate",
    "pair",
    "bott",
    "eth",
    "cocycle",
    "class",
    "solve-compatible",
    "extensions",
    "hexagon",
    "matched-check",
    "matched-sum",
    "recognize-matched",
    "derivations",
    "equivariant",
    "wang",
    "reductive",
    "canonical-connection",
    "selftest",
];

/// An exact rational read from an integer or a `"p/q"` string and written back as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub Scalar);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational(Scalar::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(Scalar::from_integer(v.into())))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                parse_scalar(v).map(Rational).map_err(E::custom)
            }
        }

        d.deserialize_any(RationalVisitor)
    }
}

/// A matrix given as a list of rows.
pub type Rows = Vec<Vec<Rational>>;

/// A list of vectors, each one a basis vector or column.
pub type Vectors = Vec<Vec<Rational>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub format_version: String,
    pub completion: String,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraData>,
    #[serde(default)]
    pub representations: BTreeMap<String, RepresentationData>,
    #[serde(default)]
    pub pairs: BTreeMap<String, PairData>,
    #[serde(default)]
    pub triads: BTreeMap<String, TriadData>,
    #[serde(default)]
    pub connections: BTreeMap<String, ConnectionData>,
    #[serde(default)]
    pub matched: BTreeMap<String, MatchedData>,
    #[serde(default)]
    pub wang: BTreeMap<String, WangData>,
    #[serde(default)]
    pub equivariant: BTreeMap<String, EquivariantData>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Rational,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraData {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

/// One action matrix (rows) per basis vector of `algebra`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationData {
    pub algebra: String,
    pub dim: usize,
    pub action: Vec<Rows>,
}

/// `subalgebra` and the optional `complement` are lists of vectors of `algebra`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairData {
    pub algebra: String,
    pub subalgebra: Vectors,
    #[serde(default)]
    pub complement: Option<Vectors>,
}

/// The `A`-module is either a representation of `L` restricted to `A`, or explicit
/// action matrices for the basis of `A` on `Q^dim`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriadData {
    pub pair: String,
    #[serde(default)]
    pub representation: Option<String>,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub action: Option<Vec<Rows>>,
}

/// The extending connection of `triad` with the given values on the complement basis.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionData {
    pub triad: String,
    pub b_assignment: Vec<Rows>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchedData {
    pub a: String,
    pub b: String,
    pub a_on_b: Vec<Rows>,
    pub b_on_a: Vec<Rows>,
}

/// Without `k` and `dphi` the problem is the reductive one, `k = h` and `dφ = id`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WangData {
    pub g: String,
    pub isotropy: Vectors,
    #[serde(default)]
    pub k: Option<String>,
    #[serde(default)]
    pub dphi: Option<Rows>,
}

/// `g` acting on `l` by derivations; optionally a `g`-module `E` and an `l`-connection on it.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivariantData {
    pub g: String,
    pub l: String,
    pub action: Vec<Rows>,
    #[serde(default)]
    pub module_action: Option<Vec<Rows>>,
    #[serde(default)]
    pub connection: Option<Vec<Rows>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triad: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matched: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wang: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivariant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_a: Option<Vectors>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_b: Option<Vectors>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi0: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Problems detected before any task runs.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Header(String),
    #[error("{context}: unknown {kind} `{name}`")]
    Unresolved {
        context: String,
        kind: &'static str,
        name: String,
    },
    #[error("task {index}: unknown command `{command}`")]
    UnknownCommand { index: usize, command: String },
    #[error("task {index} ({command}): missing `{field}`")]
    MissingField {
        index: usize,
        command: String,
        field: &'static str,
    },
}

fn line_column(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parses and cross-checks a problem file.
pub fn parse_problem(src: &str) -> Result<ProblemFile, InputError> {
    let file: ProblemFile = toml::from_str(src).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_column(src, s.start));
        InputError::Syntax {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    if file.format_version != FORMAT_VERSION {
        return Err(InputError::Header(format!(
            "unsupported format_version `{}`, expected `{FORMAT_VERSION}`",
            file.format_version
        )));
    }
    if file.completion != COMPLETION {
        return Err(InputError::Header(format!(
            "unsupported completion rule `{}`, expected `{COMPLETION}`",
            file.completion
        )));
    }
    file.check_references()?;
    Ok(file)
}

impl ProblemFile {
    fn check_references(&self) -> Result<(), InputError> {
        fn need<T>(map: &BTreeMap<String, T>, kind: &'static str, name: &str, context: &str) -> Result<(), InputError> {
            if map.contains_key(name) {
                Ok(())
            } else {
                Err(InputError::Unresolved {
                    context: context.to_string(),
                    kind,
                    name: name.to_string(),
                })
            }
        }
        for (n, r) in &self.representations {
            need(&self.algebras, "algebra", &r.algebra, &format!("representation {n}"))?;
        }
        for (n, p) in &self.pairs {
            need(&self.algebras, "algebra", &p.algebra, &format!("pair {n}"))?;
        }
        for (n, t) in &self.triads {
            need(&self.pairs, "pair", &t.pair, &format!("triad {n}"))?;
            if let Some(r) = &t.representation {
                need(&self.representations, "representation", r, &format!("triad {n}"))?;
            }
        }
        for (n, c) in &self.connections {
            need(&self.triads, "triad", &c.triad, &format!("connection {n}"))?;
        }
        for (n, m) in &self.matched {
            need(&self.algebras, "algebra", &m.a, &format!("matched {n}"))?;
            need(&self.algebras, "algebra", &m.b, &format!("matched {n}"))?;
        }
        for (n, w) in &self.wang {
            need(&self.algebras, "algebra", &w.g, &format!("wang {n}"))?;
            if let Some(k) = &w.k {
                need(&self.algebras, "algebra", k, &format!("wang {n}"))?;
            }
        }
        for (n, e) in &self.equivariant {
            need(&self.algebras, "algebra", &e.g, &format!("equivariant {n}"))?;
            need(&self.algebras, "algebra", &e.l, &format!("equivariant {n}"))?;
        }
        for (index, t) in self.tasks.iter().enumerate() {
            let index = index + 1;
            if !COMMANDS.contains(&t.command.as_str()) {
                return Err(InputError::UnknownCommand {
                    index,
                    command: t.command.clone(),
                });
            }
            let ctx = format!("task {index} ({})", t.command);
            let refs: [(&Option<String>, &'static str, bool); 8] = [
                (
                    &t.algebra,
                    "algebra",
                    self.algebras.contains_key(t.algebra.as_deref().unwrap_or("")),
                ),
                (
                    &t.representation,
                    "representation",
                    self.representations
                        .contains_key(t.representation.as_deref().unwrap_or("")),
                ),
                (
                    &t.pair,
                    "pair",
                    self.pairs.contains_key(t.pair.as_deref().unwrap_or("")),
                ),
                (
                    &t.triad,
                    "triad",
                    self.triads.contains_key(t.triad.as_deref().unwrap_or("")),
                ),
                (
                    &t.connection,
                    "connection",
                    self.connections.contains_key(t.connection.as_deref().unwrap_or("")),
                ),
                (
                    &t.matched,
                    "matched",
                    self.matched.contains_key(t.matched.as_deref().unwrap_or("")),
                ),
                (&t.wang, "wang", self.wang.contains_key(t.wang.as_deref().unwrap_or(""))),
                (
                    &t.equivariant,
                    "equivariant",
                    self.equivariant.contains_key(t.equivariant.as_deref().unwrap_or("")),
                ),
            ];
            for (name, kind, found) in refs {
                if let (Some(name), false) = (name, found) {
                    return Err(InputError::Unresolved {
                        context: ctx.clone(),
                        kind,
                        name: name.clone(),
                    });
                }
            }
            let required: &[&'static str] = match t.command.as_str() {
                "pair" | "bott" | "eth" => &["pair"],
                "cocycle" | "extensions" | "hexagon" => &["triad|connection"],
                "class" | "solve-compatible" => &["triad"],
                "matched-check" | "matched-sum" => &["matched"],
                "recognize-matched" => &["algebra", "basis_a", "basis_b"],
                "derivations" => &["algebra"],
                "equivariant" => &["equivariant"],
                "wang" | "reductive" | "canonical-connection" => &["wang"],
                "validate" => &["algebra|representation"],
                _ => &[],
            };
            for field in required {
                let present = field.split('|').any(|f| match f {
                    "algebra" => t.algebra.is_some(),
                    "representation" => t.representation.is_some(),
                    "pair" => t.pair.is_some(),
                    "triad" => t.triad.is_some(),
                    "connection" => t.connection.is_some(),
                    "matched" => t.matched.is_some(),
                    "wang" => t.wang.is_some(),
                    "equivariant" => t.equivariant.is_some(),
                    "basis_a" => t.basis_a.is_some(),
                    "basis_b" => t.basis_b.is_some(),
                    _ => false,
                });
                if !present {
                    return Err(InputError::MissingField {
                        index,
                        command: t.command.clone(),
                        field,
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Obstruction,
    Error,
}

pub type Payload = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub index: usize,
    pub task: TaskSpec,
    pub status: Status,
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }

    pub fn to_text(&self) -> String {
        let status = serde_json::to_value(self.status).expect("status serializes");
        let mut out = format!(
            "task {} {}: {}\n",
            self.index,
            self.task.command,
            status.as_str().unwrap_or("?")
        );
        if let Some(seed) = self.seed {
            out.push_str(&format!("  seed: {seed}\n"));
        }
        if let Some(m) = &self.message {
            out.push_str(&format!("  message: {m}\n"));
        }
        for (k, v) in &self.payload {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub strict: bool,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            strict: false,
            seed: DEFAULT_SEED,
        }
    }
}

/// Runs every task in order, one report per task.
pub fn run_problem(file: &ProblemFile, opts: &RunOptions) -> Vec<Report> {
    let ctx = Context { file };
    file.tasks
        .iter()
        .enumerate()
        .map(|(i, task)| {
            let mut seed = None;
            let (status, payload, message) = match ctx.dispatch(task, opts, &mut seed) {
                Ok((status, payload)) => (status, payload, None),
                Err(e) => (status_of_error(&e), Payload::new(), Some(e.to_string())),
            };
            Report {
                index: i + 1,
                task: task.clone(),
                status,
                payload,
                seed,
                message,
            }
        })
        .collect()
}

/// `0` when nothing failed, `1` on a failure (or an obstruction under `strict`), `2` on a task error.
pub fn exit_code(reports: &[Report], strict: bool) -> i32 {
    if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports
        .iter()
        .any(|r| r.status == Status::Fail || (strict && r.status == Status::Obstruction))
    {
        1
    } else {
        0
    }
}

/// Structural failures of the inputs are reported as `fail`, malformed data as `error`.
fn status_of_error(e: &Error) -> Status {
    match e {
        Error::NotAntisymmetric(..)
        | Error::JacobiFails(..)
        | Error::NotSubalgebra(..)
        | Error::NotFlat(..)
        | Error::NotExtending(_)
        | Error::NotMatched(_)
        | Error::NotMorphism(_)
        | Error::NotASplitting
        | Error::NotCocycle(_) => Status::Fail,
        _ => Status::Error,
    }
}

fn q(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

fn vec_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn mat_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vec_json(&m.row(r))).collect())
}

fn mats_json(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(mat_json).collect())
}

fn pairs_json(v: &[(usize, usize)]) -> Value {
    json!(v.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>())
}

fn triples_json(v: &[(usize, usize, usize)]) -> Value {
    json!(v.iter().map(|&(i, j, k)| [i, j, k]).collect::<Vec<_>>())
}

fn obj(v: Value) -> Payload {
    match v {
        Value::Object(m) => m.into_iter().collect(),
        _ => Payload::new(),
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn scalars(v: &[Rational]) -> Vec<Scalar> {
    v.iter().map(|r| r.0.clone()).collect()
}

fn rows_matrix(rows: &Rows, cols: usize) -> crate::Result<Matrix> {
    let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| scalars(r)).collect();
    Matrix::from_rows(&rows, cols)
}

fn square_matrices(ms: &[Rows], n: usize) -> crate::Result<Vec<Matrix>> {
    ms.iter().map(|m| rows_matrix(m, n)).collect()
}

fn columns_matrix(vectors: &Vectors, ambient: usize) -> crate::Result<Matrix> {
    let cols: Vec<Vec<Scalar>> = vectors.iter().map(|v| scalars(v)).collect();
    Matrix::from_cols(&cols, ambient)
}

fn sparse_brackets(l: &LieAlgebra) -> Value {
    let n = l.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (k, c) in l.basis_bracket(i, j).iter().enumerate() {
                if c != &Scalar::from_integer(0.into()) {
                    out.push(json!({ "i": i, "j": j, "k": k, "c": q(c) }));
                }
            }
        }
    }
    Value::Array(out)
}

fn iso_json(iso: &ModelIso) -> Value {
    json!({
        "mutually_inverse": iso.mutually_inverse,
        "equivariant": iso.equivariant,
        "well_defined": iso.well_defined,
        "forward": mat_json(&iso.forward),
        "inverse": mat_json(&iso.inverse),
    })
}

fn matched_json(r: &MatchedReport) -> Value {
    json!({
        "passed": r.passed(),
        "a_on_b_flatness": pairs_json(&r.a_on_b_flatness),
        "b_on_a_flatness": pairs_json(&r.b_on_a_flatness),
        "condition_i": triples_json(&r.condition_i),
        "condition_ii": triples_json(&r.condition_ii),
        "condition_iii_vacuous": r.condition_iii_vacuous,
        "first_violation": r.first_violation(),
    })
}

struct Context<'a> {
    file: &'a ProblemFile,
}

impl Context<'_> {
    fn algebra(&self, name: &str) -> crate::Result<LieAlgebra> {
        let data = &self.file.algebras[name];
        let entries: Vec<(usize, usize, usize, Scalar)> =
            data.brackets.iter().map(|b| (b.i, b.j, b.k, b.c.0.clone())).collect();
        LieAlgebra::from_brackets(data.dim, &entries)
    }

    fn representation(&self, name: &str) -> crate::Result<Representation> {
        let data = &self.file.representations[name];
        let g = self.algebra(&data.algebra)?;
        Representation::new(g, data.dim, square_matrices(&data.action, data.dim)?)
    }

    fn pair(&self, name: &str) -> crate::Result<LiePair> {
        let data = &self.file.pairs[name];
        let l = self.algebra(&data.algebra)?;
        let n = l.dim();
        let pair = LiePair::new(l, columns_matrix(&data.subalgebra, n)?)?;
        match &data.complement {
            Some(c) => pair.with_splitting(columns_matrix(c, n)?),
            None => Ok(pair),
        }
    }

    fn triad(&self, name: &str) -> crate::Result<Triad> {
        let data = &self.file.triads[name];
        let pair = self.pair(&data.pair)?;
        let rep = match (&data.representation, &data.action) {
            (Some(r), None) => {
                let rep = self.representation(r)?;
                if rep.algebra() != pair.l() {
                    return Err(Error::Dimension(format!(
                        "representation {r} is not a module over the pair's algebra"
                    )));
                }
                restrict_rep(&pair, &rep)
            }
            (None, Some(action)) => {
                let dim = data
                    .dim
                    .ok_or_else(|| Error::Dimension(format!("triad {name} needs `dim`")))?;
                Representation::new(pair.a().clone(), dim, square_matrices(action, dim)?)?
            }
            _ => {
                return Err(Error::Dimension(format!(
                    "triad {name} needs exactly one of `representation` or `action`"
                )))
            }
        };
        Triad::new(pair, rep)
    }

    /// The triad named by the task, or by its connection, with the requested extending connection.
    fn triad_and_connection(&self, task: &TaskSpec) -> crate::Result<(Triad, Connection)> {
        let conn_data = task.connection.as_ref().map(|c| &self.file.connections[c]);
        let triad_name = match (&task.triad, conn_data) {
            (Some(t), Some(c)) if *t != c.triad => {
                return Err(Error::Dimension(format!(
                    "connection belongs to triad {}, not {t}",
                    c.triad
                )))
            }
            (Some(t), _) => t.clone(),
            (None, Some(c)) => c.triad.clone(),
            (None, None) => return Err(Error::Dimension("task names neither a triad nor a connection".into())),
        };
        let triad = self.triad(&triad_name)?;
        let m = triad.module_dim();
        let blocks = match conn_data {
            Some(c) => square_matrices(&c.b_assignment, m)?,
            None => vec![Matrix::zeros(m, m); triad.pair().dim_b()],
        };
        let conn = extend_connection(&triad, &blocks)?;
        Ok((triad, conn))
    }

    fn wang_problem(&self, name: &str) -> crate::Result<WangProblem> {
        let data = &self.file.wang[name];
        let g = self.algebra(&data.g)?;
        let inc = columns_matrix(&data.isotropy, g.dim())?;
        match (&data.k, &data.dphi) {
            (None, None) => WangProblem::reductive(g, inc),
            (Some(k), Some(dphi)) => {
                let k = self.algebra(k)?;
                let dphi = rows_matrix(dphi, data.isotropy.len())?;
                WangProblem::new(g, inc, k, dphi)
            }
            _ => Err(Error::Dimension(format!(
                "wang problem {name} needs both `k` and `dphi` or neither"
            ))),
        }
    }

    fn matched_pair(&self, name: &str) -> crate::Result<MatchedPair> {
        let data = &self.file.matched[name];
        let a = self.algebra(&data.a)?;
        let b = self.algebra(&data.b)?;
        let a_on_b = square_matrices(&data.a_on_b, b.dim())?;
        let b_on_a = square_matrices(&data.b_on_a, a.dim())?;
        MatchedPair::new(a, b, a_on_b, b_on_a)
    }

    fn dispatch(&self, task: &TaskSpec, opts: &RunOptions, seed: &mut Option<u64>) -> crate::Result<(Status, Payload)> {
        let name = |o: &Option<String>| o.clone().unwrap_or_default();
        match task.command.as_str() {
            "validate" => match &task.representation {
                Some(r) => {
                    let rep = self.representation(r)?;
                    let v = rep.flatness_violations();
                    let payload = obj(json!({ "module_dim": rep.module_dim(), "flatness_violations": pairs_json(&v) }));
                    Ok((pass_if(v.is_empty()), payload))
                }
                None => {
                    let l = self.algebra(&name(&task.algebra))?;
                    let v = l.validate();
                    let payload = obj(json!({
                        "dim": l.dim(),
                        "antisymmetry_violations": pairs_json(&v.antisymmetry),
                        "jacobi_violations": triples_json(&v.jacobi),
                    }));
                    Ok((pass_if(v.is_valid()), payload))
                }
            },
            "pair" => {
                let p = self.pair(&name(&task.pair))?;
                let bad = p.bracket_decomposition_check();
                let payload = obj(json!({
                    "dim_l": p.dim_l(),
                    "dim_a": p.dim_a(),
                    "dim_b": p.dim_b(),
                    "i_a": mat_json(p.i_a()),
                    "i_b": mat_json(p.i_b()),
                    "pr_a": mat_json(p.pr_a()),
                    "pr_b": mat_json(p.pr_b()),
                    "complement_is_subalgebra": p.complement_is_subalgebra(),
                    "bracket_decomposition_violations": pairs_json(&bad),
                }));
                Ok((pass_if(bad.is_empty()), payload))
            }
            "bott" => {
                let p = self.pair(&name(&task.pair))?;
                let rep = p.bott_connection()?;
                Ok((
                    Status::Pass,
                    obj(json!({ "dim_b": p.dim_b(), "action": mats_json(rep.action()), "flat": rep.is_flat() })),
                ))
            }
            "eth" => {
                let p = self.pair(&name(&task.pair))?;
                let (na, nb) = (p.dim_a(), p.dim_b());
                let unit = |n: usize, i: usize| crate::linalg::unit_vec(n, i);
                let table: Vec<Value> = (0..nb)
                    .map(|j| Value::Array((0..na).map(|i| vec_json(&p.eth(&unit(nb, j), &unit(na, i)))).collect()))
                    .collect();
                Ok((Status::Pass, obj(json!({ "dim_a": na, "dim_b": nb, "values": table }))))
            }
            "cocycle" => {
                let (triad, conn) = self.triad_and_connection(task)?;
                let form = atiyah_cocycle(&triad, &conn)?;
                let closed = CeComplex::new(coefficient_module(&triad)?)?.is_cocycle(1, &cocycle_cochain(&form))?;
                let (rows, cols) = form.shape();
                let table: Vec<Value> = (0..rows)
                    .map(|i| Value::Array((0..cols).map(|j| mat_json(form.get(i, j))).collect()))
                    .collect();
                let payload = obj(json!({
                    "domain": form.domain().label(),
                    "values": table,
                    "zero": form.is_zero(),
                    "closed": closed,
                }));
                Ok((pass_if(closed), payload))
            }
            "class" => {
                let triad = self.triad(&name(&task.triad))?;
                let c = atiyah_class(&triad)?;
                let m = triad.module_dim();
                let nb = triad.pair().dim_b();
                let payload = obj(json!({
                    "vanishes": c.vanishes,
                    "h0_dim": c.h0_dim,
                    "h1_dim": c.h1_dim,
                    "cocycle": vec_json(&cocycle_cochain(&c.cocycle)),
                    "witness": c.witness.as_ref().map(|w| mats_json(&unpack_b_assignment(m, nb, w))),
                    "certificate": c.certificate.as_ref().map(|n| json!({ "rank_d0": n.rank_d0, "rank_augmented": n.rank_augmented })),
                }));
                Ok((if c.vanishes { Status::Pass } else { Status::Obstruction }, payload))
            }
            "solve-compatible" => {
                let triad = self.triad(&name(&task.triad))?;
                let sol = compatible_connection_solve(&triad)?;
                let (m, nb) = (sol.module_dim, sol.dim_b);
                if sol.set.is_empty() {
                    return Ok((Status::Obstruction, obj(json!({ "empty": true, "h0_dim": sol.h0_dim }))));
                }
                let particular = sol.set.particular().map(|p| mats_json(&unpack_b_assignment(m, nb, p)));
                let basis: Vec<Value> = sol
                    .set
                    .homogeneous()
                    .basis_vectors()
                    .iter()
                    .map(|v| mats_json(&unpack_b_assignment(m, nb, v)))
                    .collect();
                let payload = obj(json!({
                    "empty": false,
                    "dim": sol.set.dim(),
                    "h0_dim": sol.h0_dim,
                    "particular": particular,
                    "homogeneous_basis": basis,
                }));
                Ok((Status::Pass, payload))
            }
            "extensions" => {
                let (triad, conn) = self.triad_and_connection(task)?;
                let c = model_coherence(&triad, &conn)?;
                let payload = obj(json!({
                    "quotient_flat": c.quotient_flat,
                    "quotient_well_defined": c.quotient_well_defined,
                    "embedded_flat": c.embedded_flat,
                    "split_flat": c.split_flat,
                    "quotient_embedded": iso_json(&c.quotient_embedded),
                    "embedded_split": iso_json(&c.embedded_split),
                    "quotient_split": iso_json(&c.quotient_split),
                }));
                Ok((pass_if(c.passed()), payload))
            }
            "hexagon" => {
                let (triad, conn) = self.triad_and_connection(task)?;
                let h = hexagon_diagnostics(&triad, &conn)?;
                let sequences: Vec<Value> = h
                    .sequences
                    .iter()
                    .map(|s| {
                        json!({
                            "name": s.name,
                            "injective": s.injective,
                            "surjective": s.surjective,
                            "composite_zero": s.composite_zero,
                            "exact_middle": s.exact_middle,
                        })
                    })
                    .collect();
                let diagrams: BTreeMap<&str, bool> = h.diagrams.iter().map(|(n, ok)| (n.as_str(), *ok)).collect();
                Ok((
                    pass_if(h.passed()),
                    obj(json!({ "sequences": sequences, "diagrams": diagrams })),
                ))
            }
            "matched-check" => {
                let mp = self.matched_pair(&name(&task.matched))?;
                let r = mp.check();
                Ok((pass_if(r.passed()), obj(matched_json(&r))))
            }
            "matched-sum" => {
                let mp = self.matched_pair(&name(&task.matched))?;
                let sum = mp.matched_sum()?;
                let valid = sum.validate().is_valid();
                Ok((
                    pass_if(valid),
                    obj(json!({ "dim": sum.dim(), "brackets": sparse_brackets(&sum), "valid": valid })),
                ))
            }
            "recognize-matched" => {
                let l = self.algebra(&name(&task.algebra))?;
                let n = l.dim();
                let inc_a = columns_matrix(task.basis_a.as_ref().expect("checked on load"), n)?;
                let inc_b = columns_matrix(task.basis_b.as_ref().expect("checked on load"), n)?;
                let mp = recognize_matched(&l, &inc_a, &inc_b)?;
                let r = mp.check();
                let adapted = l.change_basis(&inc_a.hstack(&inc_b))?;
                let reproduces = mp.matched_sum().map(|s| s == adapted).unwrap_or(false);
                let mut payload = obj(matched_json(&r));
                payload.insert("a_on_b".into(), mats_json(mp.a_on_b.action()));
                payload.insert("b_on_a".into(), mats_json(mp.b_on_a.action()));
                payload.insert("sum_reproduces_algebra".into(), json!(reproduces));
                Ok((pass_if(r.passed() && reproduces), payload))
            }
            "derivations" => {
                let l = self.algebra(&name(&task.algebra))?;
                let d = derivation_algebra(&l)?;
                Ok((
                    Status::Pass,
                    obj(json!({ "dim": d.dim(), "basis": mats_json(&d.basis()), "closed": d.closed })),
                ))
            }
            "equivariant" => {
                let data = &self.file.equivariant[&name(&task.equivariant)];
                let g = self.algebra(&data.g)?;
                let l = self.algebra(&data.l)?;
                let action = square_matrices(&data.action, l.dim())?;
                let mp = equivariant_structure(&g, &l, action)?;
                let sum = mp.matched_sum()?;
                let mut payload = obj(json!({ "sum_dim": sum.dim(), "brackets": sparse_brackets(&sum) }));
                let mut ok = true;
                if let (Some(xe), Some(c)) = (&data.module_action, &data.connection) {
                    let m = xe.first().or(c.first()).map_or(0, |r| r.len());
                    let x_e = Representation::new(g.clone(), m, square_matrices(xe, m)?)?;
                    let conn = Connection::new(l.clone(), m, square_matrices(c, m)?)?;
                    let inv = is_g_invariant(&mp, &x_e, &conn)?;
                    ok = inv.invariant;
                    payload.insert("invariant".into(), json!(inv.invariant));
                    payload.insert("witness".into(), json!(inv.witness.map(|(v, l)| [v, l])));
                    payload.insert("compatible_in_sum".into(), json!(inv.compatible_in_sum));
                }
                Ok((pass_if(ok), payload))
            }
            "wang" => {
                let p = self.wang_problem(&name(&task.wang))?;
                let s = wang_solve(&p)?;
                if s.set.is_empty() {
                    return Ok((
                        Status::Obstruction,
                        obj(json!({ "empty": true, "connected_isotropy_assumed": true })),
                    ));
                }
                let payload = obj(json!({
                    "empty": false,
                    "dim": s.set.dim(),
                    "particular": s.particular().as_ref().map(mat_json),
                    "homogeneous_basis": mats_json(&s.homogeneous_basis()),
                    "connected_isotropy_assumed": s.connected_isotropy_assumed,
                }));
                Ok((Status::Pass, payload))
            }
            "reductive" => {
                let p = self.wang_problem(&name(&task.wang))?;
                let r = reductive_test(p.g(), p.inclusion_h())?;
                let Some(m) = &r.complement else {
                    return Ok((Status::Obstruction, obj(json!({ "reductive": false }))));
                };
                let check = wang_dimension_check(&p)?;
                let payload = obj(json!({
                    "reductive": true,
                    "complement": mat_json(m.basis()),
                    "projection": r.solution.particular().as_ref().map(mat_json),
                    "wang_dim": check.wang_dim,
                    "equivariant_hom_dim": check.equivariant_hom_dim,
                    "dimension_check": check.holds(),
                    "connected_isotropy_assumed": check.connected_isotropy_assumed,
                }));
                Ok((pass_if(check.holds()), payload))
            }
            "canonical-connection" => {
                let p = self.wang_problem(&name(&task.wang))?;
                let phi0 = match &task.phi0 {
                    Some(rows) => rows_matrix(rows, p.g().dim())?,
                    None => match reductive_test(p.g(), p.inclusion_h())?.solution.particular() {
                        Some(phi0) => phi0,
                        None => return Ok((Status::Obstruction, obj(json!({ "reductive": false })))),
                    },
                };
                let phi = canonical_connection(&p, &phi0)?;
                Ok((
                    Status::Pass,
                    obj(json!({ "phi0": mat_json(&phi0), "phi": mat_json(&phi) })),
                ))
            }
            "selftest" => {
                let s = task.seed.unwrap_or(opts.seed);
                *seed = Some(s);
                let report = run_selftest(s);
                let criteria = serde_json::to_value(&report.criteria).expect("criteria serialize");
                Ok((pass_if(report.passed()), obj(json!({ "criteria": criteria }))))
            }
            other => Err(Error::Parse(format!("unknown command `{other}`"))),
        }
    }
}
