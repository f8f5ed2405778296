//! Command-line dispatch. Every subcommand except `serve` builds the same
//! JSON request the service accepts and runs it through [`execute`], so
//! `--format json` output is the service payload.

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use statespace::Tolerances;

use crate::api::{execute, matrix_to_request, to_payload, ApiError, Context, OPERATIONS};
use crate::format::{self, text_number};
use crate::service::{serve, ServiceConfig};

/// Overrides the validation tolerance (Hermiticity, trace, positivity, unitarity).
pub const TOLERANCE_ENV: &str = "STATESPACE_TOLERANCE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "statespace", version, about = "Geometry of quantum statespaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Density matrix file (`-` for standard input).
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a density matrix and classify it.
    Validate(Input),
    /// Eigen-decomposition, entropy and purity.
    Eig(Input),
    /// Hilbert–Schmidt statespace distance between two states.
    Distance {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
        /// Basis that `b` is written in (name or unitary file); rotated back first.
        #[arg(long, value_name = "BASIS")]
        basis_b: Option<String>,
    },
    /// Angle between statevectors, or at a vertex state.
    Angle {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
        #[arg(long, value_name = "FILE")]
        vertex: Option<PathBuf>,
    },
    /// Mix an ensemble file of `weight path` lines.
    Mix(Input),
    /// Project onto the probability simplex of a basis.
    Project {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "BASIS")]
        basis: Option<String>,
    },
    /// Decoherence-leaf coordinates.
    Leaf {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "BASIS")]
        basis: Option<String>,
    },
    /// Outcome probabilities in a basis.
    Measure {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "BASIS")]
        basis: String,
    },
    /// Damp coherences in a basis for time t.
    Decohere {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "BASIS")]
        basis: String,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long)]
        rate: Option<f64>,
    },
    /// Reconstruct a state from a tomography record file.
    Tomo(Input),
    /// Distances and angles between maximally mixed states.
    Hierarchy {
        #[arg(long)]
        d: usize,
    },
    /// Scene document for a state.
    Scene {
        #[command(flatten)]
        input: Input,
        /// bloch-circle, bloch-sphere, simplex2 or simplex3.
        #[arg(long)]
        kind: String,
        #[arg(long, value_name = "BASIS")]
        basis: Option<String>,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        bind: IpAddr,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Allowed browser origin; repeat for several, `*` for any.
        #[arg(long = "cors-origin", value_name = "ORIGIN")]
        cors_origins: Vec<String>,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DOMAIN, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<ApiError> for Failure {
    fn from(e: ApiError) -> Self {
        Failure::domain(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::domain(format!("stdin: {e}")));
    }
    std::fs::read_to_string(path).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn matrix_file(path: &Path) -> Result<Value, Failure> {
    let m = format::parse_matrix(&read(path)?).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    Ok(json!(matrix_to_request(&m)))
}

/// Builtin names pass through; anything else is read as a unitary matrix file.
fn basis_arg(arg: &str) -> Result<Value, Failure> {
    match arg.to_ascii_lowercase().as_str() {
        "z" | "x" | "y" | "computational" | "fourier" => Ok(json!(arg)),
        _ => matrix_file(Path::new(arg)),
    }
}

fn ensemble_request(path: &Path) -> Result<Value, Failure> {
    let entries =
        format::parse_ensemble(&read(path)?).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let components = entries
        .into_iter()
        .map(|(w, p)| Ok(json!({ "weight": w, "rho": matrix_file(&dir.join(p))? })))
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(json!({ "components": components }))
}

fn record_request(path: &Path) -> Result<Value, Failure> {
    let blocks = format::parse_record(&read(path)?).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    let record: Vec<Value> =
        blocks.iter().map(|(u, p)| json!({ "basis": matrix_to_request(u), "probabilities": p })).collect();
    Ok(json!({ "record": record }))
}

/// Operation name and JSON request for a subcommand.
pub fn request(command: &Command) -> Result<(&'static str, Value), Failure> {
    let with_basis =
        |op: &'static str, input: &Input, basis: &Option<String>| -> Result<(&'static str, Value), Failure> {
            let mut req = json!({ "rho": matrix_file(&input.input)? });
            if let Some(b) = basis {
                req["basis"] = basis_arg(b)?;
            }
            Ok((op, req))
        };
    match command {
        Command::Validate(i) => Ok(("validate", json!({ "rho": matrix_file(&i.input)? }))),
        Command::Eig(i) => Ok(("eig", json!({ "rho": matrix_file(&i.input)? }))),
        Command::Distance { a, b, basis_b } => {
            let mut req = json!({ "a": matrix_file(a)?, "b": matrix_file(b)? });
            if let Some(basis) = basis_b {
                req["basis_b"] = basis_arg(basis)?;
            }
            Ok(("distance", req))
        }
        Command::Angle { a, b, vertex } => {
            let mut req = json!({ "a": matrix_file(a)?, "b": matrix_file(b)? });
            if let Some(v) = vertex {
                req["vertex"] = matrix_file(v)?;
            }
            Ok(("angle", req))
        }
        Command::Mix(i) => Ok(("mix", ensemble_request(&i.input)?)),
        Command::Project { input, basis } => with_basis("project", input, basis),
        Command::Leaf { input, basis } => with_basis("leaf", input, basis),
        Command::Measure { input, basis } => with_basis("measure", input, &Some(basis.clone())),
        Command::Decohere { input, basis, t, rate } => {
            let (op, mut req) = with_basis("decohere", input, &Some(basis.clone()))?;
            req["t"] = json!(t);
            if let Some(r) = rate {
                req["rate"] = json!(r);
            }
            Ok((op, req))
        }
        Command::Tomo(i) => Ok(("tomo", record_request(&i.input)?)),
        Command::Hierarchy { d } => Ok(("hierarchy", json!({ "d": d }))),
        Command::Scene { input, kind, basis } => {
            let (op, mut req) = with_basis("scene", input, basis)?;
            req["kind"] = json!(kind);
            Ok((op, req))
        }
        Command::Serve { .. } => Err(Failure::usage("serve has no request")),
    }
}

fn number(v: &Value) -> String {
    match v {
        Value::Number(n) => n.as_f64().map(text_number).unwrap_or_else(|| n.to_string()),
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => items.iter().map(number).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// Matrix block in the file format (full precision, re-readable).
fn matrix_block(v: &Value) -> String {
    let rows = v.as_array().map(Vec::as_slice).unwrap_or_default();
    let mut out = format!("{}\n", rows.len());
    for row in rows {
        out.push_str(&number(row));
        out.push('\n');
    }
    out
}

fn key_lines(map: &Map<String, Value>, prefix: &str) -> String {
    map.iter().map(|(k, v)| format!("{prefix}{k} {}\n", number(v))).collect()
}

/// Text rendering: scalars with 12 significant digits; matrices and leaf
/// coordinates in their file formats so they can be read back.
pub fn render_text(op: &str, v: &Value) -> String {
    let Some(map) = v.as_object() else { return number(v) + "\n" };
    match op {
        "distance" => number(&map["distance"]) + "\n",
        "measure" => number(&map["probabilities"]) + "\n",
        "scene" => serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n",
        "mix" | "project" | "decohere" | "tomo" => {
            let mut rest = map.clone();
            let rho = rest.remove("rho").unwrap_or(Value::Null);
            matrix_block(&rho) + &key_lines(&rest, "# ")
        }
        "leaf" => {
            let diag = map["diag"].as_array().map(Vec::as_slice).unwrap_or_default();
            let mut out = format!("{}\n", diag.len());
            let exact: Vec<String> = diag.iter().map(|p| format::exact(p.as_f64().unwrap_or(f64::NAN))).collect();
            out.push_str(&exact.join(" "));
            out.push('\n');
            for c in map["offdiag"].as_array().map(Vec::as_slice).unwrap_or_default() {
                let m = c["magnitude"].as_f64().unwrap_or(f64::NAN);
                let p = c["phase"].as_f64().unwrap_or(f64::NAN);
                out.push_str(&format!("{} {}\n", format::exact(m), format::exact(p)));
            }
            out + &format!("# radius {}\n", number(&map["radius"]))
        }
        "eig" => {
            let mut rest = map.clone();
            let vectors = rest.remove("eigenvectors").unwrap_or(Value::Null);
            let mut out = key_lines(&rest, "");
            for (k, vec) in vectors.as_array().map(Vec::as_slice).unwrap_or_default().iter().enumerate() {
                out.push_str(&format!("eigenvector{k} {}\n", number(vec)));
            }
            out
        }
        _ => key_lines(map, ""),
    }
}

fn tolerances_from_env() -> Result<Tolerances, Failure> {
    match std::env::var(TOLERANCE_ENV) {
        Err(_) => Ok(Tolerances::DEFAULT),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(Tolerances::DEFAULT.with_validation(t)),
            _ => Err(Failure::usage(format!("{TOLERANCE_ENV} must be a positive number, got `{s}`"))),
        },
    }
}

fn emit(cli: &Cli, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::domain(format!("{}: {e}", path.display()))),
        None => {
            let newline = if text.ends_with('\n') { "" } else { "\n" };
            write!(stdout, "{text}{newline}").map_err(|e| Failure::domain(e.to_string()))
        }
    }
}

fn run_parsed(cli: &Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    let tolerances = tolerances_from_env()?;
    let ctx = Context { tolerances };
    if let Command::Serve { bind, port, cors_origins } = &cli.command {
        let mut config = ServiceConfig { context: ctx, ..ServiceConfig::default() };
        if !cors_origins.is_empty() {
            config.cors_origins = cors_origins.clone();
        }
        let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::domain(e.to_string()))?;
        return runtime
            .block_on(serve(SocketAddr::new(*bind, *port), config))
            .map_err(|e| Failure::domain(format!("serve: {e}")));
    }
    let (op, req) = request(&cli.command)?;
    debug_assert!(OPERATIONS.contains(&op));
    let result = execute(op, &req, &ctx)?;
    let text = match cli.format {
        OutputFormat::Json => to_payload(&result),
        OutputFormat::Text => render_text(op, &result),
    };
    emit(cli, &text, stdout)
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{rendered}") } else { write!(stdout, "{rendered}") };
            return code;
        }
    };
    match run_parsed(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
