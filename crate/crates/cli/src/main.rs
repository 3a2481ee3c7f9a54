//! `lambda-classify`: classification, counting, verification, extension and
//! isomorphism testing for Λ-modules and Alexander quandles of order `p^n`.

mod spec;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lambda_core::canonical_tables::{enumerate_modules, verify_table, ClassificationReport, Params, MAX_EXPONENT};
use lambda_core::conjugacy::{are_conjugate_oracle, Budget};
use lambda_core::decomposition::lambda_isomorphic;
use lambda_core::quandle::{
    alexander_quandle, count_connected, count_quandles, enumerate_quandles, extend_to_order, image_module,
    minimal_extension_exponent, quandle_isomorphism, quandles_isomorphic, StepKind,
};
use lambda_core::{Error, LambdaModule, Subgroup};

use spec::{format_matrix, format_module, format_shape, parse_module, prime_of};

const SCHEMA_VERSION: &str = "1";

/// Largest quandle for which `isomorphic --quandles` searches for an
/// explicit bijection.
const WITNESS_LIMIT: usize = 64;

#[derive(Parser)]
#[command(name = "lambda-classify", version, about = "Finite Λ-modules and Alexander quandles of order p^n, n <= 4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Order {
    /// The prime p.
    #[arg(long)]
    p: u64,
    /// The exponent n, 0..=4.
    #[arg(long)]
    n: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Every Λ-module of order p^n up to isomorphism.
    Classify {
        #[command(flatten)]
        order: Order,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Every Alexander quandle of order p^n up to isomorphism.
    Quandles {
        #[command(flatten)]
        order: Order,
        /// Only quandles with 1 - t invertible.
        #[arg(long)]
        connected: bool,
        /// Include the operation tables.
        #[arg(long)]
        table: bool,
    },
    /// Check the module table for p^n against the brute-force oracles.
    Verify {
        #[command(flatten)]
        order: Order,
    },
    /// Build M with (1 - t)M equal to the given module.
    Extend {
        /// Module spec, e.g. "2^1^1; [1]".
        module: String,
        /// log_p |M|; defaults to the smallest possible, 2i - j.
        #[arg(long)]
        target_exponent: Option<u32>,
    },
    /// Decide whether two modules, or their Alexander quandles, are isomorphic.
    Isomorphic {
        #[arg(long, conflicts_with = "quandles", required_unless_present = "quandles")]
        modules: bool,
        #[arg(long)]
        quandles: bool,
        a: String,
        b: String,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Verification(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct OutputRecord<T> {
    schema_version: &'static str,
    command: &'static str,
    payload: T,
}

fn emit<T: Serialize>(command: &'static str, payload: T) -> Result<(), Failure> {
    let rec = OutputRecord { schema_version: SCHEMA_VERSION, command, payload };
    let text = serde_json::to_string(&rec).expect("output is serializable");
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").or_else(closed_pipe)
}

/// A reader that stops early (`| head`) is not an error.
fn closed_pipe(e: std::io::Error) -> Result<(), Failure> {
    match e.kind() {
        std::io::ErrorKind::BrokenPipe => Ok(()),
        _ => Err(Failure::Usage(e.to_string())),
    }
}

#[derive(Serialize)]
struct ModuleView {
    spec: String,
    shape: String,
    p: u64,
    log_order: u32,
    matrix: Vec<Vec<u64>>,
}

fn view(m: &LambdaModule) -> ModuleView {
    ModuleView {
        spec: format_module(m),
        shape: m.shape().to_string(),
        p: m.p(),
        log_order: m.log_order(),
        matrix: m.action().rows(),
    }
}

#[derive(Serialize)]
struct RowView {
    shape: String,
    family: String,
    parameters: Params,
    matrix: Vec<Vec<u64>>,
    spec: String,
    image_order: u64,
}

#[derive(Serialize)]
struct ClassifyPayload {
    p: u64,
    n: u32,
    rows: Vec<RowView>,
    shape_totals: Vec<lambda_core::canonical_tables::ShapeTotal>,
    stratum_totals: Vec<lambda_core::canonical_tables::StratumTotal>,
    family_totals: Vec<lambda_core::canonical_tables::FamilyTotal>,
    grand_total: usize,
}

fn order_args(o: &Order) -> Result<lambda_core::Prime, Failure> {
    let p = prime_of(o.p).map_err(Failure::Usage)?;
    if o.n > MAX_EXPONENT {
        return Err(Failure::Usage(format!("n must be at most {MAX_EXPONENT} (got {})", o.n)));
    }
    Ok(p)
}

fn classify(o: &Order, format: Format) -> Result<(), Failure> {
    let p = order_args(o)?;
    let report: ClassificationReport = enumerate_modules(p, o.n)?;
    match format {
        Format::Json => emit(
            "classify",
            ClassifyPayload {
                p: report.p,
                n: report.n,
                rows: report
                    .rows
                    .iter()
                    .map(|r| RowView {
                        shape: r.shape.to_string(),
                        family: r.family.clone(),
                        parameters: r.parameters.clone(),
                        matrix: r.module.action().rows(),
                        spec: format_module(&r.module),
                        image_order: r.image_order,
                    })
                    .collect(),
                shape_totals: report.shape_totals,
                stratum_totals: report.stratum_totals,
                family_totals: report.family_totals,
                grand_total: report.grand_total,
            },
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure::Usage(e.to_string());
            w.write_record(["p", "n", "shape", "family", "params", "matrix", "image_order"]).map_err(io)?;
            for r in &report.rows {
                w.write_record([
                    report.p.to_string(),
                    report.n.to_string(),
                    r.shape.to_string(),
                    r.family.clone(),
                    r.parameters.to_string(),
                    format_matrix(&r.module.action().rows()),
                    r.image_order.to_string(),
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
            std::io::stdout().lock().write_all(&bytes).or_else(closed_pipe)
        }
    }
}

#[derive(Serialize)]
struct QuandleView {
    order: u64,
    module: ModuleView,
    image: ModuleView,
    image_family: String,
    image_parameters: Params,
    connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<u32>>>,
}

#[derive(Serialize)]
struct QuandlesPayload {
    p: u64,
    n: u32,
    connected_only: bool,
    count: usize,
    closed_form: u128,
    quandles: Vec<QuandleView>,
}

fn quandles(o: &Order, connected: bool, table: bool) -> Result<(), Failure> {
    let p = order_args(o)?;
    let mut list = Vec::new();
    for q in enumerate_quandles(p, o.n)? {
        if connected && !q.connected {
            continue;
        }
        let table = if table { Some(q.table()?.rows()) } else { None };
        list.push(QuandleView {
            order: q.order,
            module: view(&q.module),
            image: view(&q.image),
            image_family: q.image_family,
            image_parameters: q.image_parameters,
            connected: q.connected,
            table,
        });
    }
    let closed_form = if connected { count_connected(p, o.n)? } else { count_quandles(p, o.n)? };
    if list.len() as u128 != closed_form {
        return Err(Failure::Verification(format!("{} quandles listed, closed form gives {closed_form}", list.len())));
    }
    emit(
        "quandles",
        QuandlesPayload { p: p.get(), n: o.n, connected_only: connected, count: list.len(), closed_form, quandles: list },
    )
}

fn verify(o: &Order) -> Result<(), Failure> {
    let p = order_args(o)?;
    let report = verify_table(p, o.n, Budget::from_env())?;
    let passed = report.passed();
    emit("verify", &report)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification("some checks failed".into()))
    }
}

#[derive(Serialize)]
struct StepView {
    kind: StepKind,
    shape: String,
    image_log_order: u32,
}

#[derive(Serialize)]
struct MapPair {
    from: Vec<u64>,
    to: Vec<u64>,
}

#[derive(Serialize)]
struct ExtendVerification {
    /// `(1 - t)M` is the embedded copy of the input.
    image_equals_input: bool,
    /// `(1 - t)M` with its induced action is isomorphic to the input.
    image_isomorphic_to_input: bool,
    /// `log_p |M/N| = log_p |N/(1 - t)N|` before padding.
    index: u32,
}

#[derive(Serialize)]
struct ExtendPayload {
    input: ModuleView,
    minimal_exponent: u32,
    target_exponent: u32,
    extended: ModuleView,
    steps: Vec<StepView>,
    inclusion: Vec<MapPair>,
    verification: ExtendVerification,
}

fn extend_cmd(spec: &str, target: Option<u32>) -> Result<(), Failure> {
    let n = parse_module(spec).map_err(Failure::Usage)?;
    let minimal = minimal_extension_exponent(&n);
    let target = target.unwrap_or(minimal);
    let r = extend_to_order(&n, target).map_err(|e| match e {
        Error::ExtensionBound { required, target } => {
            Failure::Usage(format!("no extension of order p^{target}: 2i - j = {required} exceeds {target}"))
        }
        e => e.into(),
    })?;
    let m = &r.extended;
    let embedded = Subgroup::image(&r.inclusion);
    let image = m.image_subgroup();
    let image_equals_input = r.inclusion.is_injective()
        && embedded.log_order() == image.log_order()
        && embedded.is_subgroup_of(&image);
    let image_isomorphic_to_input = lambda_isomorphic(&image_module(m), &n, Budget::from_env())?;
    let inclusion = n
        .shape()
        .elements()?
        .map(|x| MapPair { to: r.inclusion.apply_unchecked(&x).coords, from: x.coords })
        .collect();
    emit(
        "extend",
        ExtendPayload {
            input: view(&n),
            minimal_exponent: minimal,
            target_exponent: target,
            extended: view(m),
            steps: r
                .steps
                .iter()
                .map(|s| StepView { kind: s.kind, shape: format_shape(&s.shape), image_log_order: s.image_log_order })
                .collect(),
            inclusion,
            verification: ExtendVerification {
                image_equals_input,
                image_isomorphic_to_input,
                index: n.log_order() - n.image_log_order(),
            },
        },
    )?;
    if image_equals_input && image_isomorphic_to_input {
        Ok(())
    } else {
        Err(Failure::Verification("extension does not realize the input as (1 - t)M".into()))
    }
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Modules,
    Quandles,
}

#[derive(Serialize)]
struct IsomorphicPayload {
    mode: Mode,
    a: ModuleView,
    b: ModuleView,
    isomorphic: bool,
    /// A conjugator `P` with `P A = B P`, for modules.
    #[serde(skip_serializing_if = "Option::is_none")]
    conjugator: Option<Vec<Vec<u64>>>,
    /// Images of the elements of `a` in `b`, by element index, for quandles.
    #[serde(skip_serializing_if = "Option::is_none")]
    bijection: Option<Vec<usize>>,
}

fn isomorphic(modules: bool, a: &str, b: &str) -> Result<bool, Failure> {
    let ma = parse_module(a).map_err(Failure::Usage)?;
    let mb = parse_module(b).map_err(Failure::Usage)?;
    let budget = Budget::from_env();
    let mut payload = IsomorphicPayload {
        mode: if modules { Mode::Modules } else { Mode::Quandles },
        a: view(&ma),
        b: view(&mb),
        isomorphic: false,
        conjugator: None,
        bijection: None,
    };
    if modules {
        payload.isomorphic = ma.p() == mb.p() && lambda_isomorphic(&ma, &mb, budget)?;
        if payload.isomorphic && ma.log_order() > 0 && budget.allows(ma.shape()) {
            payload.conjugator = are_conjugate_oracle(ma.action(), mb.action(), budget)?
                .map(|w| w.conjugator.rows());
        }
    } else {
        payload.isomorphic = quandles_isomorphic(&ma, &mb, budget)?;
        let size = ma.shape().order()? as usize;
        if payload.isomorphic && size <= WITNESS_LIMIT {
            let (qa, qb) = (alexander_quandle(&ma)?, alexander_quandle(&mb)?);
            payload.bijection = quandle_isomorphism(&qa, &qb, WITNESS_LIMIT)?;
            if payload.bijection.is_none() {
                return Err(Failure::Verification("no bijection found for isomorphic quandles".into()));
            }
        }
    }
    let result = payload.isomorphic;
    emit("isomorphic", payload)?;
    Ok(result)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Classify { order, format } => classify(&order, format).map(|_| true),
        Command::Quandles { order, connected, table } => quandles(&order, connected, table).map(|_| true),
        Command::Verify { order } => verify(&order).map(|_| true),
        Command::Extend { module, target_exponent } => extend_cmd(&module, target_exponent).map(|_| true),
        Command::Isomorphic { modules, a, b, .. } => isomorphic(modules, &a, &b),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, m),
                Failure::Budget(m) => (3, m),
                Failure::Verification(m) => (4, m),
            };
            eprintln!("lambda-classify: {msg}");
            ExitCode::from(code)
        }
    }
}
