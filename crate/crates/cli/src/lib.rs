//! Command dispatch for the `wickrot` binary. [`run_command`] parses an
//! argument vector, runs one operation and returns a [`RunReport`] that the
//! binary prints; nothing here writes to stdout directly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use wickrot::cartan::{self, ConjugateBudget, Involution};
use wickrot::format::{self, AlgebraDocument};
use wickrot::metric::{self, Metric};
use wickrot::minvec::{self, BracketSpace, FlowConfig, FlowStatus, SearchBudget};
use wickrot::soliton;
use wickrot::{catalog, Error, LieAlgebra, Matrix, Scalar};

#[derive(Parser, Debug)]
#[command(name = "wickrot", version, about = "Wick rotations of pseudo-Riemannian Lie algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Emit the machine-readable run report.
    #[arg(long, global = true)]
    json: bool,
    /// Numerical tolerance for float comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search budget as STARTS or STARTS,ITERATIONS.
    #[arg(long, global = true, value_parser = parse_budget)]
    budget: Option<(usize, usize)>,
    /// Also write the primary output to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// Named catalog entry.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    catalog: Option<String>,
    /// Algebra document (JSON).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Use the negated metric.
    #[arg(long)]
    negate: bool,
    /// Skip the Jacobi check on load.
    #[arg(long)]
    no_validate: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi, structure, signature, Killing form and bi-invariance.
    Analyze(Source),
    /// Levi-Civita connection, Ricci tensor and operator, identity residuals.
    Curvature(Source),
    /// Decompose Ric = λI + D.
    Soliton(Source),
    /// Cartan involution search, verification and conjugation.
    Cartan {
        #[command(subcommand)]
        op: CartanOp,
    },
    /// Wick-rotate along an isometric automorphic involution.
    Wick {
        #[command(flatten)]
        source: Source,
        /// Involution file, or `found` to search for a Lie-Cartan involution.
        #[arg(long)]
        theta: String,
    },
    /// Minimal vectors of the bracket under O(p,q).
    Minvec {
        #[command(subcommand)]
        op: MinvecOp,
    },
    /// Equivariance of connection and curvature under an involution.
    Equivariance {
        #[command(flatten)]
        source: Source,
        /// Involution file, or `found` (the default).
        #[arg(long, default_value = "found")]
        theta: String,
    },
    /// The built-in example catalog.
    Catalog {
        #[command(subcommand)]
        op: CatalogOp,
    },
}

#[derive(Subcommand, Debug)]
enum CartanOp {
    /// Multi-start search for a Lie-Cartan involution.
    Find(Source),
    /// Check a given involution.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        theta: PathBuf,
    },
    /// Conjugate two Lie-Cartan involutions inside Aut ∩ O(p,q).
    Conjugate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        theta: PathBuf,
        #[arg(long)]
        theta2: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum MinvecOp {
    /// Run the negative-gradient flow of the norm.
    Flow {
        #[command(flatten)]
        source: Source,
        /// Write the per-iteration log as JSON lines.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Test whether the bracket is already a minimal vector.
    Check(Source),
}

#[derive(Subcommand, Debug)]
enum CatalogOp {
    List,
    Show { name: String },
}

fn parse_budget(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad budget {s:?}: {e}"));
    match s.split_once(',') {
        Some((a, b)) => Ok((parse(a)?, parse(b)?)),
        None => Ok((parse(s)?, SearchBudget::default().iterations)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NoCertificate,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputRecord {
    pub source: String,
    pub name: String,
    pub hash: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub tol: f64,
}

/// Result of one invocation. `stdout` and `stderr` hold exactly what the
/// binary prints.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputRecord>,
    pub outputs: Value,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub status: Status,
    #[serde(skip)]
    pub stdout: String,
    #[serde(skip)]
    pub stderr: String,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::NoCertificate => 2,
            Status::Error => 1,
        }
    }

    /// Pretty JSON followed by a newline.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize") + "\n"
    }
}

struct Outcome {
    status: Status,
    outputs: Value,
    human: String,
    /// Written to `--output` instead of the report when present.
    artifact: Option<String>,
}

impl Outcome {
    fn new(status: Status, outputs: Value, human: String) -> Self {
        Outcome { status, outputs, human, artifact: None }
    }
}

struct Ctx {
    global: Global,
    inputs: Vec<InputRecord>,
}

type CmdResult = std::result::Result<Outcome, String>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, S>(argv: I) -> RunReport
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let printed = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            return RunReport {
                command: String::new(),
                inputs: Vec::new(),
                outputs: Value::Null,
                tolerances: Tolerances { tol: 0.0 },
                seed: 0,
                status: if printed { Status::Ok } else { Status::Error },
                stdout: if printed { text.clone() } else { String::new() },
                stderr: if printed { String::new() } else { text },
            };
        }
    };
    let command = command_name(&cli.command);
    let mut ctx = Ctx { global: cli.global.clone(), inputs: Vec::new() };
    let result = dispatch(&mut ctx, &cli.command);
    let mut report = RunReport {
        command,
        inputs: ctx.inputs,
        outputs: Value::Null,
        tolerances: Tolerances { tol: cli.global.tol },
        seed: cli.global.seed,
        status: Status::Error,
        stdout: String::new(),
        stderr: String::new(),
    };
    match result {
        Ok(out) => {
            report.status = out.status;
            report.outputs = out.outputs;
            let json = report.to_json();
            report.stdout = if cli.global.json { json.clone() } else { out.human };
            if let Some(path) = &cli.global.output {
                let body = out.artifact.unwrap_or(json);
                if let Err(e) = std::fs::write(path, body) {
                    report.status = Status::Error;
                    report.stderr = format!("error: cannot write {}: {e}\n", path.display());
                }
            }
        }
        Err(msg) => {
            report.stderr = format!("error: {msg}\n");
            if cli.global.json {
                report.outputs = json!({ "error": msg });
                report.stdout = report.to_json();
            }
        }
    }
    report
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Analyze(_) => "analyze".into(),
        Command::Curvature(_) => "curvature".into(),
        Command::Soliton(_) => "soliton".into(),
        Command::Cartan { op } => match op {
            CartanOp::Find(_) => "cartan find",
            CartanOp::Verify { .. } => "cartan verify",
            CartanOp::Conjugate { .. } => "cartan conjugate",
        }
        .into(),
        Command::Wick { .. } => "wick".into(),
        Command::Minvec { op } => match op {
            MinvecOp::Flow { .. } => "minvec flow",
            MinvecOp::Check(_) => "minvec check",
        }
        .into(),
        Command::Equivariance { .. } => "equivariance".into(),
        Command::Catalog { op } => match op {
            CatalogOp::List => "catalog list",
            CatalogOp::Show { .. } => "catalog show",
        }
        .into(),
    }
}

fn dispatch(ctx: &mut Ctx, c: &Command) -> CmdResult {
    match c {
        Command::Analyze(s) => analyze(ctx, s),
        Command::Curvature(s) => curvature(ctx, s),
        Command::Soliton(s) => soliton_cmd(ctx, s),
        Command::Cartan { op: CartanOp::Find(s) } => cartan_find(ctx, s),
        Command::Cartan { op: CartanOp::Verify { source, theta } } => cartan_verify(ctx, source, theta),
        Command::Cartan { op: CartanOp::Conjugate { source, theta, theta2 } } => {
            cartan_conjugate(ctx, source, theta, theta2)
        }
        Command::Wick { source, theta } => wick(ctx, source, theta),
        Command::Minvec { op: MinvecOp::Flow { source, log } } => minvec_flow(ctx, source, log.as_deref()),
        Command::Minvec { op: MinvecOp::Check(s) } => minvec_check(ctx, s),
        Command::Equivariance { source, theta } => equivariance(ctx, source, theta),
        Command::Catalog { op: CatalogOp::List } => catalog_list(),
        Command::Catalog { op: CatalogOp::Show { name } } => catalog_show(ctx, name),
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

struct Loaded {
    name: String,
    alg: LieAlgebra,
    metric: Metric,
    hash: String,
}

fn load(ctx: &mut Ctx, s: &Source) -> std::result::Result<Loaded, String> {
    let tol = ctx.global.tol;
    let (name, alg, metric, source) = match (&s.catalog, &s.input) {
        (Some(name), _) => {
            let (a, m) = catalog::entry(name).map_err(err)?;
            (name.clone(), a, m, "catalog".to_string())
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let (a, m, doc) = format::parse_algebra(&text, !s.no_validate, tol)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            (doc.name, a, m, path.display().to_string())
        }
        (None, None) => return Err("one of --catalog or --input is required".into()),
    };
    let metric = if s.negate { metric.negated() } else { metric };
    let name = if s.negate { format!("{name}_neg") } else { name };
    let hash = AlgebraDocument::from_parts(&alg, &metric, &name).hash();
    ctx.inputs.push(InputRecord { source, name: name.clone(), hash: hash.clone() });
    Ok(Loaded { name, alg, metric, hash })
}

/// Reads an involution: a bare n×n array of literals or `{"theta": [...]}`.
fn read_matrix(path: &Path) -> std::result::Result<Matrix, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let rows = match value {
        Value::Object(mut map) => map.remove("theta").ok_or(format!("{}: missing \"theta\" field", path.display()))?,
        other => other,
    };
    let rows: Vec<Vec<Scalar>> = serde_json::from_value(rows).map_err(|e| format!("{}: {e}", path.display()))?;
    Matrix::from_rows(rows).map_err(err)
}

fn budget(ctx: &Ctx) -> SearchBudget {
    match ctx.global.budget {
        Some((starts, iterations)) => SearchBudget { starts, iterations },
        None => SearchBudget::default(),
    }
}

fn involution_json(inv: &Involution) -> Value {
    json!({
        "theta": inv.map,
        "flags": inv.flags,
        "evidence": inv.evidence,
        "lie_cartan": inv.is_lie_cartan(),
    })
}

fn matrix_text(m: &Matrix) -> String {
    m.rows_vec()
        .iter()
        .map(|r| format!("  [{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

/// An involution from a file, or from a search when `spec == "found"`.
fn resolve_theta(ctx: &Ctx, l: &Loaded, spec: &str) -> std::result::Result<Option<(Matrix, Value)>, String> {
    if spec == "found" {
        let search = minvec::find_lie_cartan(&l.alg, &l.metric, budget(ctx), ctx.global.seed, ctx.global.tol)
            .map_err(err)?;
        let origin = json!({ "origin": "found", "best_residual": search.best_residual, "starts": search.starts_run });
        Ok(search.best.map(|inv| (inv.map, origin)))
    } else {
        let m = read_matrix(Path::new(spec))?;
        Ok(Some((m, json!({ "origin": spec }))))
    }
}

fn no_theta(l: &Loaded) -> Outcome {
    Outcome::new(
        Status::NoCertificate,
        json!({ "certified": false }),
        format!("{}: no Lie-Cartan involution found within the budget\n", l.name),
    )
}

fn analyze(ctx: &mut Ctx, s: &Source) -> CmdResult {
    let l = load(ctx, s)?;
    let tol = ctx.global.tol;
    let jt = if l.alg.is_exact() { 0.0 } else { tol };
    let jacobi = l.alg.check_jacobi(jt);
    let structure = l.alg.structural_classify(jt);
    let killing = l.alg.killing_form();
    let killing_signature = metric::signature(&killing, tol).ok();
    let bi = metric::bi_invariance(&l.alg, &l.metric, if l.metric.is_exact() && l.alg.is_exact() { 0.0 } else { tol })
        .map_err(err)?;
    let (p, q) = l.metric.signature();
    let outputs = json!({
        "name": l.name,
        "dim": l.alg.dim(),
        "hash": l.hash,
        "jacobi": jacobi,
        "structure": structure,
        "signature": [p, q],
        "killing_form": killing,
        "killing_signature": killing_signature.map(|(a, b)| vec![a, b]),
        "bi_invariant": bi.ok,
        "bi_invariance": bi,
    });
    let mut h = String::new();
    let _ = writeln!(h, "{} (dim {}, hash {})", l.name, l.alg.dim(), &l.hash[..12]);
    let _ = writeln!(h, "jacobi: {} (max residual {:e})", if jacobi.ok { "ok" } else { "FAILS" }, jacobi.max_residual);
    let _ = writeln!(
        h,
        "structure: abelian {}, nilpotent {}, solvable {}, semisimple {}",
        structure.abelian, structure.nilpotent, structure.solvable, structure.semisimple
    );
    let _ = writeln!(h, "metric signature: ({p}, {q})");
    match killing_signature {
        Some((a, b)) => {
            let _ = writeln!(h, "killing signature: ({a}, {b})");
        }
        None => {
            let _ = writeln!(h, "killing form: degenerate");
        }
    }
    let _ = writeln!(h, "bi-invariant: {}", bi.ok);
    let status = if jacobi.ok { Status::Ok } else { Status::Error };
    Ok(Outcome::new(status, outputs, h))
}

fn curvature(ctx: &mut Ctx, s: &Source) -> CmdResult {
    let l = load(ctx, s)?;
    let c = metric::curvature(&l.alg, &l.metric, ctx.global.tol).map_err(err)?;
    let r = c.residuals(&l.alg, &l.metric);
    let outputs = json!({
        "ricci_tensor": c.ricci_tensor,
        "ricci_operator": c.ricci_operator,
        "scalar": c.scalar,
        "residuals": r,
    });
    let h = format!(
        "{}: scalar curvature {}\nRicci operator:\n{}\nmax identity residual {:e}\n",
        l.name,
        c.scalar,
        matrix_text(&c.ricci_operator),
        r.max()
    );
    Ok(Outcome::new(Status::Ok, outputs, h))
}

fn soliton_cmd(ctx: &mut Ctx, s: &Source) -> CmdResult {
    let l = load(ctx, s)?;
    let d = soliton::soliton_decompose(&l.alg, &l.metric, ctx.global.tol).map_err(err)?;
    let h = format!(
        "{}: {:?}, lambda = {}\nD eigenvalues: {:?}\nresidual {:e}\n",
        l.name, d.classification, d.lambda, d.d_eigenvalues, d.residual
    );
    let outputs = serde_json::to_value(&d).map_err(|e| e.to_string())?;
    Ok(Outcome::new(Status::Ok, outputs, h))
}

fn cartan_find(ctx: &mut Ctx, s: &Source) -> CmdResult {
    let l = load(ctx, s)?;
    let b = budget(ctx);
    let search = minvec::find_lie_cartan(&l.alg, &l.metric, b, ctx.global.seed, ctx.global.tol).map_err(err)?;
    let certified = search.best.is_some();
    let outputs = json!({
        "certified": certified,
        "involution": search.best.as_ref().map(involution_json),
        "distinct_certificates": search.certified.len(),
        "best_residual": search.best_residual,
        "budget": b,
    });
    let h = match &search.best {
        Some(inv) => format!(
            "{}: Lie-Cartan involution certified (residual {:e})\n{}\n",
            l.name,
            inv.max_residual(),
            matrix_text(&inv.map)
        ),
        None => format!(
            "{}: no certificate after {} starts (best residual {:e})\n",
            l.name, search.starts_run, search.best_residual
        ),
    };
    Ok(Outcome::new(if certified { Status::Ok } else { Status::NoCertificate }, outputs, h))
}

fn cartan_verify(ctx: &mut Ctx, s: &Source, theta: &Path) -> CmdResult {
    let l = load(ctx, s)?;
    let t = read_matrix(theta)?;
    let inv = cartan::is_lie_cartan(&l.alg, &l.metric, &t, if t.is_exact() && l.metric.is_exact() { 0.0 } else { ctx.global.tol });
    let ok = inv.is_lie_cartan();
    let h = format!(
        "{}: {} (involution {:?}, isometry {:?}, g_theta positive {:?}, automorphism {:?})\n",
        l.name,
        if ok { "Lie-Cartan involution" } else { "not a Lie-Cartan involution" },
        inv.flags.is_involution,
        inv.flags.is_metric_isometry,
        inv.flags.g_theta_positive,
        inv.flags.is_automorphism
    );
    Ok(Outcome::new(if ok { Status::Ok } else { Status::NoCertificate }, involution_json(&inv), h))
}

fn cartan_conjugate(ctx: &mut Ctx, s: &Source, theta: &Path, theta2: &Path) -> CmdResult {
    let l = load(ctx, s)?;
    let (t1, t2) = (read_matrix(theta)?, read_matrix(theta2)?);
    let tol = ctx.global.tol;
    let phi = cartan::conjugate_metric_cartan(&l.metric, &t1, &t2, tol).map_err(err)?;
    let metric_residual = cartan::conjugation_residual(&phi.matrix, &t1, &t2);
    let budget = match ctx.global.budget {
        Some((starts, iterations)) => ConjugateBudget { starts, iterations },
        None => ConjugateBudget::default(),
    };
    let lie = cartan::conjugate_lie_cartan(&l.alg, &l.metric, &t1, &t2, budget, ctx.global.seed, tol).map_err(err)?;
    let outputs = json!({
        "metric_conjugator": phi.matrix,
        "metric_conjugation_residual": metric_residual,
        "lie_conjugator": lie,
    });
    let h = match &lie {
        Some(c) => format!(
            "{}: conjugator in Aut ∩ O(p,q) found (conjugation residual {:e})\n{}\n",
            l.name,
            c.conjugation_residual,
            matrix_text(&c.map)
        ),
        None => format!(
            "{}: metric conjugator found (residual {metric_residual:e}); no automorphic conjugator within the budget\n",
            l.name
        ),
    };
    Ok(Outcome::new(if lie.is_some() { Status::Ok } else { Status::NoCertificate }, outputs, h))
}

fn wick(ctx: &mut Ctx, s: &Source, theta: &str) -> CmdResult {
    let l = load(ctx, s)?;
    let Some((t, origin)) = resolve_theta(ctx, &l, theta)? else { return Ok(no_theta(&l)) };
    let tol = ctx.global.tol;
    let w = cartan::wick_rotate(&l.alg, &l.metric, &t, tol).map_err(err)?;
    let dw = cartan::involutivity_double_wick(&l.alg, &l.metric, &t, tol).map_err(err)?;
    let name = format!("{}_wick", l.name);
    let doc = AlgebraDocument::from_parts(&w.algebra, &w.metric, &name).with_provenance(l.hash.clone(), &t, &w.basis_map);
    let (p, q) = w.metric.signature();
    let outputs = json!({
        "theta": t,
        "theta_source": origin,
        "t_dim": w.t_dim,
        "p_dim": w.p_dim,
        "signature": [p, q],
        "hash": doc.hash(),
        "double_wick": dw,
        "document": doc,
    });
    let h = format!(
        "{} -> {}: dim t = {}, dim p = {}, signature ({p}, {q}), double Wick identical: {}\n{}",
        l.name,
        name,
        w.t_dim,
        w.p_dim,
        dw.identical,
        doc.to_json()
    );
    let mut out = Outcome::new(Status::Ok, outputs, h);
    out.artifact = Some(doc.to_json());
    Ok(out)
}

fn flow_space(l: &Loaded, tol: f64) -> std::result::Result<BracketSpace, String> {
    BracketSpace::new(&l.metric, None, tol).map_err(err)
}

fn minvec_flow(ctx: &mut Ctx, s: &Source, log: Option<&Path>) -> CmdResult {
    let l = load(ctx, s)?;
    let space = flow_space(&l, ctx.global.tol)?;
    let config = FlowConfig { tol: ctx.global.tol, ..FlowConfig::default() };
    let r = minvec::minimal_vector_flow(&l.alg, &l.metric, &space, &config).map_err(err)?;
    if let Some(path) = log {
        std::fs::write(path, r.log_jsonl()).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    let outputs = json!({
        "status": r.status,
        "reason": r.reason,
        "initial_norm": r.initial_norm,
        "final_norm": r.final_norm,
        "moment_norm": r.moment_norm,
        "iterations": r.iterations,
        "transporter": r.transporter,
        "transporter_growth": r.transporter_growth,
        "monotone": r.is_monotone(),
        "involution": r.theta.as_ref().map(involution_json),
    });
    let mut h = format!(
        "{}: {:?} after {} iterations, norm {:e} -> {:e}, moment {:e}\n",
        l.name, r.status, r.iterations, r.initial_norm, r.final_norm, r.moment_norm
    );
    if let Some(reason) = &r.reason {
        let _ = writeln!(h, "reason: {reason}");
    }
    if let Some(inv) = &r.theta {
        let _ = writeln!(h, "Lie-Cartan involution:\n{}", matrix_text(&inv.map));
    }
    let status = if r.status == FlowStatus::CartanFound { Status::Ok } else { Status::NoCertificate };
    Ok(Outcome::new(status, outputs, h))
}

fn minvec_check(ctx: &mut Ctx, s: &Source) -> CmdResult {
    let l = load(ctx, s)?;
    let space = flow_space(&l, ctx.global.tol)?;
    let v = space.vector(&l.alg).map_err(err)?;
    let scale = v.dot(&v).max(1.0);
    let r = minvec::is_minimal(&space, &v, ctx.global.tol * scale, 100, ctx.global.seed);
    let h = format!(
        "{}: {} (moment norm {:e}, worst probe {:e})\n",
        l.name,
        if r.minimal { "minimal vector" } else { "not minimal" },
        r.moment_norm,
        r.worst_probe
    );
    let status = if r.minimal { Status::Ok } else { Status::NoCertificate };
    Ok(Outcome::new(status, serde_json::to_value(&r).map_err(|e| e.to_string())?, h))
}

fn equivariance(ctx: &mut Ctx, s: &Source, theta: &str) -> CmdResult {
    let l = load(ctx, s)?;
    let Some((t, origin)) = resolve_theta(ctx, &l, theta)? else { return Ok(no_theta(&l)) };
    let tol = ctx.global.tol;
    let e = soliton::equivariance_report(&l.alg, &l.metric, &t, tol).map_err(err)?;
    let sol = soliton::soliton_decompose(&l.alg, &l.metric, tol).map_err(err)?;
    let commutator = sol.accepted().then(|| t.commutator(&sol.d).max_abs());
    let outputs = json!({
        "theta": t,
        "theta_source": origin,
        "report": e,
        "max_residual": e.max(),
        "theta_d_commutator": commutator,
    });
    let h = format!(
        "{}: max equivariance residual {:e} (connection {:e}, riemann {:e}, ricci {:e}, [θ, Ric] {:e})\n",
        l.name,
        e.max(),
        e.connection,
        e.riemann,
        e.ricci_tensor,
        e.ricci_operator_commutator
    );
    Ok(Outcome::new(Status::Ok, outputs, h))
}

fn catalog_list() -> CmdResult {
    let entries: Vec<Value> = catalog::all()
        .iter()
        .map(|e| {
            let (p, q) = e.metric.signature();
            json!({ "name": e.name, "dim": e.algebra.dim(), "signature": [p, q], "description": e.description })
        })
        .collect();
    let mut h = String::new();
    for e in catalog::all() {
        let (p, q) = e.metric.signature();
        let _ = writeln!(h, "{:<16} dim {}  ({p},{q})  {}", e.name, e.algebra.dim(), e.description);
    }
    Ok(Outcome::new(Status::Ok, json!({ "entries": entries }), h))
}

fn catalog_show(ctx: &mut Ctx, name: &str) -> CmdResult {
    let (a, m) = catalog::entry(name).map_err(err)?;
    let doc = AlgebraDocument::from_parts(&a, &m, name);
    ctx.inputs.push(InputRecord { source: "catalog".into(), name: name.into(), hash: doc.hash() });
    let text = doc.to_json();
    let mut out = Outcome::new(Status::Ok, json!({ "document": doc, "hash": doc.hash() }), text.clone());
    out.artifact = Some(text);
    Ok(out)
}
