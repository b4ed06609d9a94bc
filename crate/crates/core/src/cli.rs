//! Command-line front end: `verify` runs cases or suites, `expand` prints q-expansions.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::series::q_power_label;
use crate::algebra::rational::to_short_string;
use crate::bundles::{Family, Geometry, GeometrySpec, ThetaBundle};
use crate::decomp::Coefficients;
use crate::error::{Error, Result};
use crate::theta::{modular_form, ModularFormId};
use crate::verifier::{run_suite, suite_passed, CaseEntry, CaseId, OutputFormat, Report, SuiteConfig};

/// Every report passed.
pub const EXIT_PASS: i32 = 0;
/// At least one report failed or a suite entry could not run.
pub const EXIT_FAIL: i32 = 1;
/// Invalid flags or arguments.
pub const EXIT_USAGE: i32 = 2;
/// An internal error interrupted a computation.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "anomaly-forms", version, about = "Exact verification of twisted anomaly cancellation formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify one case, a suite file, or the default grid.
    Verify(VerifyArgs),
    /// Print a q-expansion or the decomposition coefficients.
    Expand(ExpandArgs),
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, default_value_t = 1)]
    l: u32,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    b: i64,
    /// AB, AB_XI or TWO_LINE; defaults to the family the case requires, else AB.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// Truncation order in q; defaults to k + 2 (20 for JACOBI_QSERIES, 60 product terms for NUMERIC_MODULARITY).
    #[arg(long = "q-order")]
    q_order: Option<usize>,
}

impl SpecArgs {
    fn spec(&self, fallback: Family) -> Result<GeometrySpec> {
        GeometrySpec::new(self.k, self.l, self.a, self.b, self.family.unwrap_or(fallback))
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Case id such as THM31, COR33, EQ318_TRANSFER or DOUBLE_ROUTE.
    #[arg(long, value_parser = parse_case)]
    case: Option<CaseId>,
    #[command(flatten)]
    spec: SpecArgs,
    /// Report format; a suite file may set its own, text otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON suite configuration file.
    #[arg(long, conflicts_with_all = ["case", "all"])]
    suite: Option<std::path::PathBuf>,
    /// Run the default grid.
    #[arg(long, conflicts_with = "case")]
    all: bool,
    /// Negative control: corrupt one coefficient so the case must fail.
    #[arg(long)]
    perturb: bool,
    /// Override the tolerance of numeric checks.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Seed for extra random numeric sample points.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Object {
    Delta1,
    Eps1,
    Delta2,
    Eps2,
    E2,
    ThetaBundle,
    Br,
    Betar,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    First,
    Second,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    #[arg(long, value_enum)]
    object: Object,
    #[command(flatten)]
    spec: SpecArgs,
    /// Which tensor product for `theta-bundle`.
    #[arg(long, value_enum, default_value = "second")]
    which: Which,
}

fn parse_case(s: &str) -> std::result::Result<CaseId, String> {
    CaseId::parse(s).ok_or_else(|| {
        let names: Vec<&str> = CaseId::ALL.iter().map(|c| c.name()).collect();
        format!("unknown case {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("unknown family {s:?}; expected AB, AB_XI or TWO_LINE"))
}

/// Run the CLI on `args` (including the program name), writing reports to `out`.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a, out, err),
        Command::Expand(a) => expand(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Usage(_) => EXIT_USAGE,
                _ => EXIT_INTERNAL,
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut config = if let Some(path) = &args.suite {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        SuiteConfig::from_json(&text)?
    } else if args.all {
        SuiteConfig::default_grid()
    } else {
        let Some(case) = args.case else {
            return Err(Error::Usage("verify needs --case, --suite or --all".into()));
        };
        let spec = args.spec.spec(case.required_family().unwrap_or(Family::Ab))?;
        let mut entry = CaseEntry::new(case, spec);
        entry.q_order = args.spec.q_order;
        entry.perturb = args.perturb;
        SuiteConfig { cases: vec![entry], ..SuiteConfig::default() }
    };
    if let Some(f) = args.format {
        config.format = match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        };
    }
    config.tolerance = args.tolerance.or(config.tolerance);
    config.seed = args.seed.or(config.seed);

    let entries = run_suite(&config);
    let single = args.suite.is_none() && !args.all;
    let mut reports: Vec<&Report> = Vec::new();
    for e in &entries {
        match e {
            Ok(r) => reports.push(r),
            // a lone request surfaces its error directly; suites record and continue
            Err((_, e)) if single => return Err(e.clone()),
            Err((c, e)) => writeln!(err, "error: {} {}: {e}", c.case, c.spec().map(|s| s.to_string()).unwrap_or_default()).map_err(io)?,
        }
    }
    match config.format {
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(&reports).map_err(|e| Error::Usage(e.to_string()))?;
            writeln!(out, "{text}").map_err(io)?;
        }
        OutputFormat::Text => {
            for r in &reports {
                write!(out, "{}", r.to_text()).map_err(io)?;
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            writeln!(out, "{passed}/{} passed", entries.len()).map_err(io)?;
        }
    }
    Ok(if suite_passed(&entries) { EXIT_PASS } else { EXIT_FAIL })
}

fn expand(args: ExpandArgs, out: &mut dyn Write) -> Result<i32> {
    let default_order = args.spec.k as usize + 2;
    let order = args.spec.q_order.unwrap_or(default_order);
    let form = match args.object {
        Object::Delta1 => Some(ModularFormId::Delta1),
        Object::Eps1 => Some(ModularFormId::Eps1),
        Object::Delta2 => Some(ModularFormId::Delta2),
        Object::Eps2 => Some(ModularFormId::Eps2),
        Object::E2 => Some(ModularFormId::E2),
        _ => None,
    };
    if let Some(id) = form {
        let s = modular_form(id, order);
        writeln!(out, "{s}").map_err(io)?;
        for (h, c) in s.coeffs().iter().enumerate() {
            writeln!(out, "{:<10}{}", q_power_label(h), to_short_string(c)).map_err(io)?;
        }
        return Ok(EXIT_PASS);
    }
    let geo = Geometry::new(args.spec.spec(Family::Ab)?)?;
    writeln!(out, "{}", geo.spec()).map_err(io)?;
    match args.object {
        Object::ThetaBundle => {
            let which = match args.which {
                Which::First => ThetaBundle::First,
                Which::Second => ThetaBundle::Second,
            };
            let s = geo.ch_theta_bundle(which, order)?;
            for (h, c) in s.coeffs().iter().enumerate() {
                writeln!(out, "{:<10}{}", q_power_label(h), geo.describe(c)).map_err(io)?;
            }
        }
        Object::Br | Object::Betar => {
            let (b, beta) = Coefficients::for_family(geo.spec().family);
            let which = if args.object == Object::Br { b } else { beta };
            let e = geo.extract_br_betar(which, order)?;
            for (r, h) in e.result.h.iter().enumerate() {
                writeln!(out, "{}_{r} = {}", which.name(), geo.describe(h)).map_err(io)?;
            }
            for c in &e.checks {
                let verdict = if c.matches { "matches" } else { "differs" };
                writeln!(out, "  r={}: {} closed form {verdict}", c.r, c.reading.label()).map_err(io)?;
            }
        }
        _ => unreachable!("modular forms handled above"),
    }
    Ok(EXIT_PASS)
}
