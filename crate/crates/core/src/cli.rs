//! Command-line surface: argument parsing, report construction and exit
//! codes. Every report is built as JSON; the text form is a rendering of the
//! same value, so both carry identical data.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::catalog::{self, greedy_magsa, CatalogError};
use crate::connect::{check_witness, connection_classes, connection_witness, ConnectionWitness, RootPartition};
use crate::decomp::{center, certify_simple, global_decomposition, simple_components, ClassIdeal};
use crate::document::{parse_document, AlgebraDocument, DocumentError};
use crate::error::{ConnectError, DecompError, RootError};
use crate::exactlin::{format_rational, Subspace};
use crate::homsuper::{validate, GradedSubspace, Superalgebra};
use crate::oracle::{fuzz_instance, property_suite, OracleVerdict};
use crate::rootspace::{
    check_transport, root_decomposition, verify_magsa, Maximality, RootDecomposition, TwistMode,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCategory {
    Ok = 0,
    Usage = 1,
    Parse = 2,
    Validation = 3,
    NotSplit = 4,
    Internal = 5,
}

impl ExitCategory {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn status(self) -> &'static str {
        match self {
            ExitCategory::Ok => "OK",
            ExitCategory::Usage => "USAGE_ERROR",
            ExitCategory::Parse => "PARSE_ERROR",
            ExitCategory::Validation => "VALIDATION_FAILED",
            ExitCategory::NotSplit => "NOT_SPLIT",
            ExitCategory::Internal => "INTERNAL_ERROR",
        }
    }
}

/// A finished report and the exit category it maps to.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub category: ExitCategory,
    pub report: Value,
}

impl Outcome {
    fn new(command: &str, category: ExitCategory, body: Value) -> Self {
        let mut map = Map::new();
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        map.insert("command".into(), json!(command));
        map.insert("status".into(), json!(category.status()));
        if let Value::Object(fields) = body {
            map.extend(fields);
        }
        Outcome { category, report: Value::Object(map) }
    }

    fn error(command: &str, category: ExitCategory, message: impl Into<String>) -> Self {
        Outcome::new(command, category, json!({ "error": message.into() }))
    }

    fn with_status(mut self, status: &str) -> Self {
        self.report["status"] = json!(status);
        self
    }
}

/// An algebra ready for analysis.
#[derive(Clone, Debug)]
pub struct Session {
    pub algebra: Superalgebra,
    pub magsa: Option<GradedSubspace>,
    pub mode: TwistMode,
}

impl Session {
    /// `non_regular` forces non-regular mode; a document flagged
    /// non-regular is analysed in that mode regardless.
    pub fn new(mut algebra: Superalgebra, magsa: Option<GradedSubspace>, non_regular: bool) -> Self {
        if non_regular {
            algebra.set_regular(false);
        }
        let mode = TwistMode::for_algebra(&algebra);
        Session { algebra, magsa, mode }
    }

    pub fn from_json(text: &str, non_regular: bool) -> Result<Self, DocumentError> {
        let loaded = parse_document(text)?;
        Ok(Session::new(loaded.algebra, loaded.magsa, non_regular))
    }

    pub fn with_magsa_indices(mut self, indices: &[usize]) -> Result<Self, String> {
        let n = self.algebra.dim();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(format!("magsa index {bad} out of range for dimension {n}"));
        }
        self.magsa = Some(GradedSubspace::coordinate(&self.algebra, indices));
        Ok(self)
    }

    fn magsa_or_greedy(&self) -> (GradedSubspace, &'static str) {
        match &self.magsa {
            Some(h) => (h.clone(), "given"),
            None => (greedy_magsa(&self.algebra), "greedy"),
        }
    }
}

fn vectors(alg: &Superalgebra, s: &Subspace) -> Value {
    json!(s.basis_vectors().iter().map(|v| alg.describe(v)).collect::<Vec<_>>())
}

fn graded(alg: &Superalgebra, s: &GradedSubspace) -> Value {
    json!({ "dim": s.dim(), "even": vectors(alg, s.even()), "odd": vectors(alg, s.odd()) })
}

fn label(i: usize) -> String {
    format!("r{i}")
}

fn mode_name(mode: TwistMode) -> &'static str {
    match mode {
        TwistMode::Regular => "regular",
        TwistMode::NonRegular => "non-regular",
    }
}

fn root_error_category(e: &RootError) -> ExitCategory {
    match e {
        RootError::NotSplit(_) | RootError::NonRationalSpectrum(_) => ExitCategory::NotSplit,
        RootError::NotGraded | RootError::InvalidMagsa(_) => ExitCategory::Validation,
    }
}

fn connect_error_category(e: &ConnectError) -> ExitCategory {
    match e {
        ConnectError::UnknownRoot(_) => ExitCategory::Usage,
        ConnectError::EquivalenceViolation(_) | ConnectError::NoRootPermutation => ExitCategory::Internal,
    }
}

fn decomp_error_category(e: &DecompError) -> ExitCategory {
    match e {
        DecompError::PreconditionUnmet(_) => ExitCategory::Validation,
        DecompError::Root(r) => root_error_category(r),
        DecompError::Connect(c) => connect_error_category(c),
        DecompError::Algebra(_)
        | DecompError::Certification { .. }
        | DecompError::DirectSumViolation
        | DecompError::UnknownClass(_)
        | DecompError::VerdictDisagreement(_)
        | DecompError::ComponentNotSimple { .. } => ExitCategory::Internal,
    }
}

fn violations_value(alg: &Superalgebra) -> (bool, Value) {
    let report = validate(alg);
    let list: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "axiom": v.axiom.id(),
                "witness": v.witness.iter().map(|&i| alg.name(i)).collect::<Vec<_>>(),
                "lhs": alg.describe(&v.lhs),
                "rhs": alg.describe(&v.rhs),
            })
        })
        .collect();
    (report.passed, json!(list))
}

pub fn validate_command(session: &Session) -> Outcome {
    let alg = &session.algebra;
    let (passed, violations) = violations_value(alg);
    let category = if passed { ExitCategory::Ok } else { ExitCategory::Validation };
    Outcome::new(
        "validate",
        category,
        json!({
            "dim": alg.dim(),
            "regular": alg.is_regular(),
            "passed": passed,
            "violations": violations,
        }),
    )
}

/// Validation, MAGSA checks and root decomposition shared by every
/// analysis command.
struct Prepared {
    dec: RootDecomposition,
    magsa_report: Value,
}

fn prepare(command: &str, session: &Session) -> Result<Prepared, Outcome> {
    let alg = &session.algebra;
    let (passed, violations) = violations_value(alg);
    if !passed {
        return Err(Outcome::new(command, ExitCategory::Validation, json!({ "violations": violations })));
    }
    let (h, source) = session.magsa_or_greedy();
    let checks = verify_magsa(alg, &h, session.mode);
    let maximality = match &checks.maximality {
        Maximality::Confirmed => json!("MAXIMAL_CONFIRMED"),
        Maximality::Refuted { witness } => json!({ "refuted_by": alg.describe(witness) }),
        Maximality::Unknown => json!("MAXIMALITY_UNKNOWN"),
    };
    let magsa_report = json!({
        "source": source,
        "space": graded(alg, &h),
        "abelian": checks.abelian,
        "twist_stable": checks.twist_stable,
        "twist_injective_on_h": checks.twist_injective_on_h,
        "twist_bijective_on_h0": checks.twist_bijective_on_h0,
        "maximality": maximality,
        "diagnostics": checks.diagnostics,
    });
    match root_decomposition(alg, &h, session.mode) {
        Ok(dec) => Ok(Prepared { dec, magsa_report }),
        Err(e) => Err(Outcome::new(
            command,
            root_error_category(&e),
            json!({ "mode": mode_name(session.mode), "magsa": magsa_report, "error": e.to_string() }),
        )),
    }
}

fn roots_value(dec: &RootDecomposition) -> Value {
    let alg = &dec.algebra;
    json!(dec
        .roots
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "label": label(i),
                "coords": r.coords.iter().map(format_rational).collect::<Vec<_>>(),
                "space": graded(alg, &dec.spaces[i]),
            })
        })
        .collect::<Vec<_>>())
}

pub fn roots_command(session: &Session) -> Outcome {
    let p = match prepare("roots", session) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let dec = &p.dec;
    let alg = &dec.algebra;
    let transport = check_transport(dec);
    let cycles: Vec<Vec<String>> =
        dec.orbits().unwrap_or_default().iter().map(|c| c.iter().map(|&i| label(i)).collect()).collect();
    let violations: Vec<Value> = transport
        .violations
        .iter()
        .map(|v| {
            json!({
                "check": v.check,
                "roots": v.roots.iter().map(|r| r.map(label).unwrap_or_else(|| "0".into())).collect::<Vec<_>>(),
                "detail": v.detail,
            })
        })
        .collect();
    let category = if transport.passed() { ExitCategory::Ok } else { ExitCategory::Internal };
    Outcome::new(
        "roots",
        category,
        json!({
            "mode": mode_name(dec.mode),
            "magsa": p.magsa_report,
            "h_basis": dec.h_basis.iter().map(|v| alg.describe(v)).collect::<Vec<_>>(),
            "roots": roots_value(dec),
            "phi_cycles": cycles,
            "transport": { "passed": transport.passed(), "violations": violations },
        }),
    )
}

fn witness_value(dec: &RootDecomposition, w: &ConnectionWitness) -> Value {
    json!({
        "source": label(w.source),
        "target": label(w.target),
        "start_exponent": w.start_exponent,
        "chain": w.chain.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "partial_sums": w.partial_sums.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "terminal_sign": w.terminal_sign,
        "terminal_exponent": w.terminal_exponent,
        "checked": check_witness(dec, w).is_ok(),
    })
}

fn classes_value(p: &RootPartition) -> Value {
    json!(p
        .classes
        .iter()
        .enumerate()
        .map(|(id, c)| json!({ "class": id, "roots": c.iter().map(|&i| label(i)).collect::<Vec<_>>() }))
        .collect::<Vec<_>>())
}

pub fn connections_command(session: &Session, pair: Option<(usize, usize)>, witnesses: bool) -> Outcome {
    let p = match prepare("connections", session) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let dec = &p.dec;
    let partition = match connection_classes(dec) {
        Ok(x) => x,
        Err(e) => return Outcome::error("connections", connect_error_category(&e), e.to_string()),
    };
    let mut body = json!({
        "roots": roots_value(dec),
        "classes": classes_value(&partition),
    });
    let mut all_checked = true;
    if let Some((a, b)) = pair {
        match connection_witness(dec, a, b) {
            Ok(w) => {
                let witness = w.as_ref().map(|w| witness_value(dec, w));
                all_checked &= w.as_ref().is_none_or(|w| check_witness(dec, w).is_ok());
                body["pair"] = json!({
                    "source": label(a),
                    "target": label(b),
                    "connected": w.is_some(),
                    "witness": if witnesses { witness.unwrap_or(Value::Null) } else { Value::Null },
                });
            }
            Err(e) => return Outcome::error("connections", connect_error_category(&e), e.to_string()),
        }
    } else if witnesses {
        let mut list = Vec::new();
        for class in &partition.classes {
            for &a in class {
                for &b in class {
                    if let Ok(Some(w)) = connection_witness(dec, a, b) {
                        all_checked &= check_witness(dec, &w).is_ok();
                        list.push(witness_value(dec, &w));
                    }
                }
            }
        }
        body["witnesses"] = json!(list);
    }
    let category = if all_checked { ExitCategory::Ok } else { ExitCategory::Internal };
    Outcome::new("connections", category, body)
}

fn ideal_value(alg: &Superalgebra, ideal: &ClassIdeal) -> Value {
    json!({
        "class": ideal.class_id,
        "roots": ideal.roots.iter().map(|&i| label(i)).collect::<Vec<_>>(),
        "dim": ideal.total.dim(),
        "h_part": graded(alg, &ideal.h_part),
        "basis": graded(alg, &ideal.total),
        "certified_subalgebra": ideal.certified_subalgebra,
        "certified_ideal": ideal.certified_ideal,
    })
}

pub fn decompose_command(session: &Session) -> Outcome {
    let p = match prepare("decompose", session) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let dec = &p.dec;
    let alg = &dec.algebra;
    let result = connection_classes(dec).map_err(DecompError::from).and_then(|part| global_decomposition(dec, &part));
    let g = match result {
        Ok(g) => g,
        Err(e) => return Outcome::error("decompose", decomp_error_category(&e), e.to_string()),
    };
    Outcome::new(
        "decompose",
        ExitCategory::Ok,
        json!({
            "u": graded(alg, &g.u),
            "generated_h": graded(alg, &g.generated),
            "center": graded(alg, &center(alg)),
            "ideals": g.ideals.iter().map(|i| ideal_value(alg, i)).collect::<Vec<_>>(),
            "spans": g.spans,
            "direct_sum": g.direct_sum,
            "pairwise_orthogonal": g.pairwise_orthogonal,
        }),
    )
}

pub fn simplicity_command(session: &Session) -> Outcome {
    let p = match prepare("simplicity", session) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let dec = &p.dec;
    let alg = &dec.algebra;
    let result = connection_classes(dec).map_err(DecompError::from).and_then(|part| certify_simple(dec, &part));
    let r = match result {
        Ok(r) => r,
        Err(e) => return Outcome::error("simplicity", decomp_error_category(&e), e.to_string()),
    };
    let flags: Map<String, Value> = r.flags.named().iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let oracle_witness = match &r.oracle {
        OracleVerdict::NotSimple { witness } => graded(alg, &witness.closure),
        _ => Value::Null,
    };
    Outcome::new(
        "simplicity",
        ExitCategory::Ok,
        json!({
            "flags": flags,
            "derived_nonzero": r.derived_nonzero,
            "verdict": r.verdict.label(),
            "criterion": r.criterion,
            "oracle": { "verdict": r.oracle.label(), "witness": oracle_witness },
            "witness": r.witness.as_ref().map(|w| graded(alg, w)),
            "reasons": r.reasons,
        }),
    )
}

pub fn components_command(session: &Session) -> Outcome {
    let p = match prepare("components", session) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let dec = &p.dec;
    let alg = &dec.algebra;
    let result = connection_classes(dec).map_err(DecompError::from).and_then(|part| simple_components(dec, &part));
    match result {
        Ok(comps) => {
            let list: Vec<Value> = comps
                .iter()
                .map(|c| {
                    json!({
                        "class": c.ideal.class_id,
                        "dim": c.algebra.dim(),
                        "basis": graded(alg, &c.ideal.total),
                        "verdict": c.report.verdict.label(),
                        "oracle": c.report.oracle.label(),
                    })
                })
                .collect();
            Outcome::new("components", ExitCategory::Ok, json!({ "components": list, "direct_sum": true }))
        }
        Err(DecompError::PreconditionUnmet(unmet)) => {
            Outcome::new("components", ExitCategory::Validation, json!({ "unmet": unmet }))
                .with_status("PRECONDITION_UNMET")
        }
        Err(e) => Outcome::error("components", decomp_error_category(&e), e.to_string()),
    }
}

pub fn catalog_list() -> Outcome {
    let entries: Vec<Value> = catalog::ENTRIES
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "summary": e.summary,
                "parameter": e.parameter.map(|(n, d, m)| json!({ "name": n, "default": d, "min": m })),
            })
        })
        .collect();
    Outcome::new("catalog", ExitCategory::Ok, json!({ "entries": entries }))
}

/// Builds a catalog entry; returns the document text alongside the report.
pub fn catalog_entry(name: &str, param: Option<u32>) -> Result<(String, Outcome), Outcome> {
    let (fx, exp) = catalog::build(name, param).map_err(|e| {
        let cat = match e {
            CatalogError::Algebra(_) => ExitCategory::Internal,
            _ => ExitCategory::Usage,
        };
        Outcome::error("catalog", cat, e.to_string())
    })?;
    let doc = AlgebraDocument::from_algebra(&fx.algebra, Some(&fx.magsa)).to_json();
    let report = Outcome::new(
        "catalog",
        ExitCategory::Ok,
        json!({
            "entry": name,
            "dim": fx.algebra.dim(),
            "expected": {
                "roots": exp.roots,
                "classes": exp.classes,
                "u_dim": exp.u_dim,
                "ideal_dims": exp.ideal_dims,
                "notes": exp.notes,
            },
        }),
    );
    Ok((doc, report))
}

pub fn fuzz_command(seeds: u64, start: u64, max_dim: usize) -> Outcome {
    if max_dim < 3 {
        return Outcome::error("fuzz", ExitCategory::Usage, "--max-dim must be at least 3");
    }
    let mut instances = Vec::new();
    let mut failed = 0usize;
    let mut checks = 0usize;
    for seed in start..start.saturating_add(seeds) {
        let fx = match fuzz_instance(seed, max_dim) {
            Ok(fx) => fx,
            Err(e) => return Outcome::error("fuzz", ExitCategory::Internal, format!("seed {seed}: {e}")),
        };
        let report = property_suite(&fx);
        checks += report.checks.len();
        if !report.passed() {
            failed += 1;
        }
        let failures: Vec<Value> =
            report.failures().map(|c| json!({ "check": c.name, "detail": c.detail })).collect();
        instances.push(json!({
            "seed": seed,
            "dim": report.dim,
            "roots": report.roots,
            "classes": report.classes,
            "passed": report.passed(),
            "failures": failures,
        }));
    }
    let category = if failed == 0 { ExitCategory::Ok } else { ExitCategory::Internal };
    Outcome::new(
        "fuzz",
        category,
        json!({
            "max_dim": max_dim,
            "instances": instances.len(),
            "failed": failed,
            "checks_run": checks,
            "results": instances,
        }),
    )
}

/// Renders a report as indented `key: value` text.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = report {
        for (k, v) in map {
            render_entry(&mut out, k, v, 0);
        }
    }
    out
}

fn inline_atom(v: &Value) -> bool {
    match v {
        Value::String(s) => !s.is_empty() && !s.contains([',', '[', ']']) && s.trim() == s,
        Value::Array(items) => items.iter().all(inline_atom),
        Value::Object(_) => false,
        _ => true,
    }
}

/// Single-line form of `v`, when it has one.
fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(inline_atom) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_entry(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                render_entry(out, k, x, indent + 2);
            }
        }
        Value::Array(items) => {
            for item in items {
                match (item, scalar(item)) {
                    (_, Some(s)) => out.push_str(&format!("{pad}  - {s}\n")),
                    (Value::Object(map), None) => {
                        out.push_str(&format!("{pad}  -\n"));
                        for (k, x) in map {
                            render_entry(out, k, x, indent + 4);
                        }
                    }
                    (other, None) => render_entry(out, "-", other, indent + 2),
                }
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

#[derive(Parser, Debug)]
#[command(name = "splithom", version, about = "Structure of split regular Hom-Lie superalgebras over Q")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Analyse with the twist only required to be bijective on the even part of H.
    #[arg(long, global = true)]
    pub non_regular: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the axioms on basis tuples.
    Validate { file: PathBuf },
    /// Root-space decomposition.
    Roots {
        file: PathBuf,
        /// Basis indices spanning H (overrides the document).
        #[arg(long, value_delimiter = ',')]
        magsa: Option<Vec<usize>>,
    },
    /// Connection classes of roots.
    Connections {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        magsa: Option<Vec<usize>>,
        /// Decide whether root A is connected to root B (indices into the root list).
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        pair: Option<Vec<usize>>,
        /// Include connection chains.
        #[arg(long)]
        witness: bool,
    },
    /// Decomposition into U and class ideals.
    Decompose {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        magsa: Option<Vec<usize>>,
    },
    /// Structure flags and simplicity verdict.
    Simplicity {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        magsa: Option<Vec<usize>>,
    },
    /// Decomposition into simple components.
    Components {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        magsa: Option<Vec<usize>>,
    },
    /// List built-in fixtures, or write one as a document.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        param: Option<u32>,
        /// Write the document here instead of standard output.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run the property suite on seeded random instances.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        start: u64,
        #[arg(long = "max-dim", default_value_t = 10)]
        max_dim: usize,
    },
}

fn load(path: &PathBuf, command: &str, non_regular: bool, magsa: Option<&[usize]>) -> Result<Session, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::error(command, ExitCategory::Parse, format!("{}: {e}", path.display())))?;
    let session =
        Session::from_json(&text, non_regular).map_err(|e| Outcome::error(command, ExitCategory::Parse, e.to_string()))?;
    match magsa {
        Some(idx) => session.with_magsa_indices(idx).map_err(|e| Outcome::error(command, ExitCategory::Usage, e)),
        None => Ok(session),
    }
}

enum Output {
    Report(Outcome),
    Raw(String, ExitCategory),
}

fn dispatch(cli: &Cli) -> Output {
    let nr = cli.non_regular;
    let analyse = |file: &PathBuf, name: &str, magsa: &Option<Vec<usize>>, f: &dyn Fn(&Session) -> Outcome| {
        match load(file, name, nr, magsa.as_deref()) {
            Ok(s) => f(&s),
            Err(o) => o,
        }
    };
    Output::Report(match &cli.command {
        Command::Validate { file } => analyse(file, "validate", &None, &validate_command),
        Command::Roots { file, magsa } => analyse(file, "roots", magsa, &roots_command),
        Command::Connections { file, magsa, pair, witness } => {
            let pair = pair.as_ref().map(|p| (p[0], p[1]));
            analyse(file, "connections", magsa, &|s| connections_command(s, pair, *witness))
        }
        Command::Decompose { file, magsa } => analyse(file, "decompose", magsa, &decompose_command),
        Command::Simplicity { file, magsa } => analyse(file, "simplicity", magsa, &simplicity_command),
        Command::Components { file, magsa } => analyse(file, "components", magsa, &components_command),
        Command::Catalog { name: None, .. } => catalog_list(),
        Command::Catalog { name: Some(name), param, emit } => match catalog_entry(name, *param) {
            Err(o) => o,
            Ok((doc, report)) => match emit {
                None => return Output::Raw(doc, ExitCategory::Ok),
                Some(path) => match std::fs::write(path, doc) {
                    Ok(()) => {
                        let mut report = report;
                        report.report["path"] = json!(path.display().to_string());
                        report
                    }
                    Err(e) => Outcome::error("catalog", ExitCategory::Usage, format!("{}: {e}", path.display())),
                },
            },
        },
        Command::Fuzz { seeds, start, max_dim } => fuzz_command(*seeds, *start, *max_dim),
    })
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let informational =
                matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let target: &mut dyn Write = if informational { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if informational { 0 } else { ExitCategory::Usage.code() };
        }
    };
    match dispatch(&cli) {
        Output::Raw(text, cat) => {
            let _ = out.write_all(text.as_bytes());
            cat.code()
        }
        Output::Report(o) => {
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&o.report).expect("reports serialize");
                s.push('\n');
                s
            } else {
                render_text(&o.report)
            };
            let _ = out.write_all(text.as_bytes());
            o.category.code()
        }
    }
}
