//! Command dispatch. Every command writes to the given streams and returns
//! a process exit code.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use inertia_core::algebra::InertiaSet;
use inertia_core::engine::{Engine, EngineError};
use inertia_core::formulas::{inertia_formula, FormulaError};
use inertia_core::graphs::{FamilySpec, Graph};
use inertia_core::oracle::{
    enumerate_realizations, AttainedReport, Grid, OracleConfig, OracleError, DEFAULT_BUDGET, DEFAULT_MAX_ORDER,
    DEFAULT_SEED, DEFAULT_TOLERANCE,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::dsl::{parse_family_spec, parse_t_notation, ParseError, SpecError};
use crate::render::{render_ascii, render_svg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "inertia-kit", version, about = "Inertia sets of graphs: formulas, recursion and realization sampling")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form inertia set of a family spec
    Formula {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Inertia set by recursion over the block / cut-vertex tree
    Recurse {
        #[arg(required_unless_present = "edges", conflicts_with = "edges")]
        spec: Option<String>,
        /// Edge-list file: `n <order>` then one `u v` pair per line
        #[arg(long, value_name = "FILE")]
        edges: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Sample realizations and report the attained inertia points
    Sample {
        spec: String,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        json: bool,
    },
    /// Check formula, recursion and sampled realizations against each other
    Verify {
        spec: String,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        json: bool,
    },
    /// Draw an inertia table for T-notation or a family spec
    Render {
        target: String,
        /// Also write an SVG drawing to this path
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Parse T-notation and print it in canonical form
    Parse {
        text: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Off-diagonal values, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-2,-1,1,2")]
    offdiag: Vec<f64>,
    /// Diagonal values, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-2,-1,0,1,2")]
    diag: Vec<f64>,
    /// Maximum number of matrices to test
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for sampling when the grid exceeds the budget
    #[arg(long, env = "INERTIA_KIT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Relative zero threshold for eigenvalues
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Largest graph order the oracle accepts (at most 10)
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Worker threads; 0 uses every available core
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

impl OracleArgs {
    fn config(&self) -> Result<OracleConfig, CliError> {
        let grid = Grid::new(self.offdiag.clone(), self.diag.clone())?;
        Ok(OracleConfig {
            grid,
            budget: self.budget,
            seed: self.seed,
            tolerance: self.tol,
            max_order: self.max_order,
            threads: self.threads,
        })
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Unsupported(_) | CliError::Oracle(OracleError::TooLarge { .. }) => EXIT_UNSUPPORTED,
            _ => EXIT_USAGE,
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Parse(p) => CliError::Parse(p),
            SpecError::Invalid(g) => CliError::Usage(format!("invalid spec: {g}")),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::UnsupportedBlock { .. } => CliError::Unsupported(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Formula { spec, json } => formula(&spec, json, out),
        Command::Recurse { spec, edges, json } => recurse(spec.as_deref(), edges, json, out),
        Command::Sample { spec, oracle, json } => sample(&spec, &oracle, json, out),
        Command::Verify { spec, oracle, json } => verify(&spec, &oracle, json, out),
        Command::Render { target, svg, json } => render(&target, svg, json, out),
        Command::Parse { text, json } => parse(&text, json, out),
    }
}

fn set_text(s: &InertiaSet) -> String {
    s.to_string()
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"))?;
    Ok(())
}

fn formula(text: &str, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = parse_family_spec(text)?;
    let res = match inertia_formula(&spec) {
        Ok(r) => r,
        Err(FormulaError::Unsupported(s)) => return Err(CliError::Unsupported(format!("no closed form for {s}"))),
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    if json {
        emit_json(
            out,
            &json!({
                "spec": spec.to_string(),
                "provenance": res.provenance,
                "parameters": res.parameters,
                "set": res.set,
            }),
        )?;
    } else {
        let params: Vec<String> = res.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "{spec}")?;
        writeln!(out, "formula: {:?} ({})", res.provenance, params.join(", "))?;
        writeln!(out, "I = {}", set_text(&res.set))?;
    }
    Ok(EXIT_OK)
}

fn recurse(spec: Option<&str>, edges: Option<PathBuf>, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let (label, g) = match (spec, edges) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(&path)?;
            let g = Graph::from_edge_list(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), g)
        }
        (Some(text), None) => {
            let spec = parse_family_spec(text)?;
            let g = spec.build().map_err(|e| CliError::Usage(e.to_string()))?;
            (spec.to_string(), g)
        }
        (None, None) => return Err(CliError::Usage("give a spec or --edges FILE".into())),
    };
    let mut engine = Engine::new();
    let set = engine.inertia(&g)?;
    if json {
        emit_json(out, &json!({ "graph": label, "order": g.order(), "joins": engine.joins(), "set": set }))?;
    } else {
        writeln!(out, "{label}")?;
        writeln!(out, "order {}, {} join steps", g.order(), engine.joins())?;
        writeln!(out, "I = {}", set_text(&set))?;
    }
    Ok(EXIT_OK)
}

/// Best available prediction: the closed form, else the recursion.
fn predicted_set(spec: &FamilySpec, g: &Graph) -> Option<InertiaSet> {
    inertia_formula(spec).ok().map(|r| r.set).or_else(|| Engine::new().inertia(g).ok())
}

fn write_oracle_text(out: &mut dyn Write, report: &AttainedReport) -> Result<(), CliError> {
    if let (Some(tested), Some(exhaustive), Some(seed)) = (report.matrices_tested, report.exhaustive, report.seed) {
        let mode = if exhaustive { "exhaustive".to_string() } else { format!("sampled, seed {seed}") };
        writeln!(out, "oracle: {tested} matrices ({mode})")?;
    }
    writeln!(out, "attained = {}", set_text(&report.attained))?;
    writeln!(out, "containment: {}", if report.containment_ok { "ok" } else { "VIOLATED" })?;
    if !report.violations.is_empty() {
        writeln!(out, "violations = {}", set_text(&report.violations))?;
    }
    if !report.missing_predicted.is_empty() {
        writeln!(out, "not attained at this grid = {}", set_text(&report.missing_predicted))?;
    }
    Ok(())
}

fn sample(text: &str, args: &OracleArgs, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = parse_family_spec(text)?;
    let g = spec.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let config = args.config()?;
    let e = enumerate_realizations(&g, &config)?;
    let predicted = predicted_set(&spec, &g);
    let report = AttainedReport::from_enumeration(&g, &config, &e, predicted.as_ref().unwrap_or(&e.attained));
    if json {
        let mut v = serde_json::to_value(&report).expect("report serializes");
        if predicted.is_none() {
            v["predicted"] = Value::Null;
        }
        emit_json(out, &v)?;
    } else {
        writeln!(out, "{spec}")?;
        write_oracle_text(out, &report)?;
        for w in &report.witnesses {
            writeln!(out, "witness {}: {:?}", w.point, w.matrix.rows())?;
        }
    }
    Ok(EXIT_OK)
}

fn verify(text: &str, args: &OracleArgs, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = parse_family_spec(text)?;
    let g = spec.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let config = args.config()?;

    let formula = match inertia_formula(&spec) {
        Ok(r) => Some(r.set),
        Err(FormulaError::Unsupported(_)) => None,
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let engine = Engine::new().inertia(&g)?;
    let agree = formula.as_ref().map(|f| *f == engine);
    let predicted = formula.clone().unwrap_or_else(|| engine.clone());

    let (report, skipped) = match enumerate_realizations(&g, &config) {
        Ok(e) => (Some(AttainedReport::from_enumeration(&g, &config, &e, &predicted)), None),
        Err(OracleError::TooLarge { order, cap }) => {
            (None, Some(format!("oracle skipped: order {order} exceeds the cap {cap}")))
        }
        Err(e) => return Err(e.into()),
    };
    let contained = report.as_ref().is_none_or(|r| r.containment_ok);
    let code = if agree != Some(false) && contained { EXIT_OK } else { EXIT_MISMATCH };

    if json {
        emit_json(
            out,
            &json!({
                "spec": spec.to_string(),
                "order": g.order(),
                "formula": formula,
                "engine": engine,
                "formula_equals_engine": agree,
                "only_in_formula": formula.as_ref().map(|f| f.difference(&engine)),
                "only_in_engine": formula.as_ref().map(|f| engine.difference(f)),
                "oracle": report,
                "oracle_skipped": skipped,
                "exit_code": code,
            }),
        )?;
    } else {
        writeln!(out, "{spec}")?;
        match &formula {
            Some(f) => writeln!(out, "formula = {}", set_text(f))?,
            None => writeln!(out, "formula = (no closed form)")?,
        }
        writeln!(out, "engine  = {}", set_text(&engine))?;
        if let (Some(f), Some(false)) = (&formula, agree) {
            writeln!(out, "MISMATCH between formula and engine")?;
            writeln!(out, "  only in formula: {}", set_text(&f.difference(&engine)))?;
            writeln!(out, "  only in engine:  {}", set_text(&engine.difference(f)))?;
        }
        match (&report, &skipped) {
            (Some(r), _) => write_oracle_text(out, r)?,
            (None, Some(note)) => writeln!(out, "{note}")?,
            (None, None) => {}
        }
        writeln!(out, "{}", if code == EXIT_OK { "verified" } else { "FAILED" })?;
    }
    Ok(code)
}

fn render(target: &str, svg: Option<PathBuf>, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let set = if target.trim_start().starts_with('T') || target.trim() == "EMPTY" {
        parse_t_notation(target)?
    } else {
        let spec = parse_family_spec(target)?;
        let g = spec.build().map_err(|e| CliError::Usage(e.to_string()))?;
        match inertia_formula(&spec) {
            Ok(r) => r.set,
            Err(FormulaError::Unsupported(_)) => Engine::new().inertia(&g)?,
            Err(e) => return Err(CliError::Usage(e.to_string())),
        }
    };
    if let Some(path) = &svg {
        std::fs::write(path, render_svg(&set))?;
    }
    if json {
        emit_json(
            out,
            &json!({ "set": set, "ascii": render_ascii(&set), "svg": svg.map(|p| p.display().to_string()) }),
        )?;
    } else {
        writeln!(out, "{}", set_text(&set))?;
        write!(out, "{}", render_ascii(&set))?;
    }
    Ok(EXIT_OK)
}

fn parse(text: &str, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let set = parse_t_notation(text)?;
    if json {
        emit_json(out, &serde_json::to_value(&set).expect("sets serialize"))?;
    } else {
        writeln!(out, "{}", set_text(&set))?;
        let points: Vec<String> = set.iter().map(|p| p.to_string()).collect();
        writeln!(out, "{} points: {}", set.len(), points.join(" "))?;
    }
    Ok(EXIT_OK)
}
