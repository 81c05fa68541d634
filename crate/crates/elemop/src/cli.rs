//! Batch experiment runner: every capability of the crate behind files and
//! flags. The binary in `src/main.rs` is a thin wrapper around [`run`].
//!
//! Exit codes: 0 success/PASS, 1 verification failure, 2 usage error,
//! 3 numeric error. Identical argument vectors produce byte-identical
//! primary outputs, and every output embeds `{version, seed, tolerances}`.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::io::{self, complex_value, num, Meta, WireMatrix};
use crate::matrix::{CMatrix, Tolerance};
use crate::random::DEFAULT_SEED;
use crate::schur;
use crate::search::{self, SearchConfig, SearchKind, SearchResult};
use crate::semidiag::{self, ProjectionLadder};
use crate::verify::{run_verify, VerifyMode};

#[derive(Debug, Parser)]
#[command(name = "elemop", version, about = "Numerical laboratory for elementary multiplication operators")]
struct Cli {
    /// Absolute tolerance override.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol_abs: f64,
    /// Relative tolerance override.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol_rel: f64,
    /// Run seed; defaults to a fixed constant so runs are reproducible.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Primary output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format for tabular reports.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectrum of the operator described by a family JSON file.
    Spectrum { family: PathBuf },
    /// Structural classification of a family JSON file.
    Classify { family: PathBuf },
    /// Run a theorem-verification harness.
    Verify {
        /// comnor | tens | luders | intertwine
        mode: String,
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
    /// Commutator-budget profile of a random banded or dense family.
    Semidiag {
        #[arg(long)]
        n: usize,
        /// Bandwidth; omit for a dense family.
        #[arg(long)]
        band: Option<usize>,
        #[arg(long, default_value_t = 1)]
        terms: usize,
    },
    /// Optimization searches over the PSD cone.
    Search {
        #[command(subcommand)]
        what: SearchCmd,
    },
    /// Schur-multiplier experiments.
    Schur {
        #[command(subcommand)]
        what: SchurCmd,
    },
    /// Run the built-in acceptance criteria.
    Selftest,
}

#[derive(Debug, Subcommand)]
enum SearchCmd {
    /// Hunt for a factorization λI = Σ_j A_j B_j with PSD coefficients.
    Magajna {
        /// Target λ as RE,IM (the imaginary part may be omitted).
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, default_value_t = 500)]
        iters: usize,
    },
    /// Hunt for a Lüders family with non-real spectrum.
    Luders {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value_t = 5)]
        restarts: usize,
        #[arg(long, default_value_t = 300)]
        iters: usize,
    },
}

#[derive(Debug, Subcommand)]
enum SchurCmd {
    /// Reciprocal-norm growth table for a trigonometric atom symbol.
    Probe {
        /// JSON file with the atom list.
        #[arg(long)]
        atoms: PathBuf,
        /// Section sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        sweeps: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Json,
    Csv,
}

/// Resolved run configuration shared by the handlers.
struct RunConfig {
    tol: Tolerance,
    seed: u64,
    out: Option<PathBuf>,
    format: OutputFormat,
}

/// Entry point for the binary and for in-process tests. Takes the argument
/// vector without the program name and returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv =
        std::iter::once("elemop".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let format = match cli.format.as_str() {
        "json" => OutputFormat::Json,
        "csv" => OutputFormat::Csv,
        other => return Err(Error::Config(format!("unknown format '{other}' (expected json|csv)"))),
    };
    let config = RunConfig {
        tol: Tolerance::new(cli.tol_abs, cli.tol_rel)?,
        seed: cli.seed,
        out: cli.out,
        format,
    };
    match cli.command {
        Command::Spectrum { family } => cmd_spectrum(&config, &family),
        Command::Classify { family } => cmd_classify(&config, &family),
        Command::Verify { mode, instances } => cmd_verify(&config, &mode, instances),
        Command::Semidiag { n, band, terms } => cmd_semidiag(&config, n, band, terms),
        Command::Search { what } => cmd_search(&config, what),
        Command::Schur { what } => cmd_schur(&config, what),
        Command::Selftest => cmd_selftest(&config),
    }
}

fn meta(config: &RunConfig) -> Meta {
    Meta::new(config.seed, config.tol)
}

fn require_json(config: &RunConfig, what: &str) -> Result<()> {
    if config.format != OutputFormat::Json {
        return Err(Error::Config(format!("{what} only supports --format json")));
    }
    Ok(())
}

fn read_family(path: &Path) -> Result<crate::op::ElementaryOperator> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    io::family_from_json(&text)
}

fn cmd_spectrum(config: &RunConfig, family: &Path) -> Result<i32> {
    require_json(config, "spectrum")?;
    let op = read_family(family)?;
    let spec = op.spectrum_tol(config.tol)?;
    let mut map = serde_json::Map::new();
    map.insert("meta".into(), serde_json::to_value(meta(config))?);
    map.insert("provenance".into(), Value::from(spec.provenance.as_str()));
    map.insert(
        "values".into(),
        Value::Array(spec.sorted_values().into_iter().map(complex_value).collect()),
    );
    io::write_output(config.out.as_deref(), &io::to_json_string(&Value::Object(map))?)?;
    Ok(0)
}

fn cmd_classify(config: &RunConfig, family: &Path) -> Result<i32> {
    require_json(config, "classify")?;
    let op = read_family(family)?;
    let c = op.classify(config.tol)?;
    let mut map = serde_json::Map::new();
    map.insert("meta".into(), serde_json::to_value(meta(config))?);
    map.insert("formally_selfadjoint".into(), Value::from(c.formally_selfadjoint));
    map.insert("formally_normal".into(), Value::from(c.formally_normal));
    map.insert("c2_positive".into(), Value::from(c.c2_positive));
    map.insert("is_luders".into(), Value::from(c.is_luders));
    map.insert("haagerup_left".into(), num(c.haagerup_left));
    map.insert("haagerup_right".into(), num(c.haagerup_right));
    io::write_output(config.out.as_deref(), &io::to_json_string(&Value::Object(map))?)?;
    Ok(0)
}

fn cmd_verify(config: &RunConfig, mode: &str, instances: usize) -> Result<i32> {
    let mode = VerifyMode::parse(mode)?;
    let report = run_verify(mode, instances, config.seed, config.tol)?;
    let m = meta(config);
    let body = match config.format {
        OutputFormat::Json => io::to_json_string(&report.to_json(&m))?,
        OutputFormat::Csv => report.to_csv(&m),
    };
    let summary = report.summary_line();
    match &config.out {
        Some(path) => {
            io::write_output(Some(path), &body)?;
            println!("{summary}");
        }
        None => {
            io::write_output(None, &body)?;
            eprintln!("{summary}");
        }
    }
    Ok(if report.all_pass { 0 } else { 1 })
}

fn cmd_semidiag(config: &RunConfig, n: usize, band: Option<usize>, terms: usize) -> Result<i32> {
    if n < 2 {
        return Err(Error::Config(format!("semidiag needs n >= 2, got {n}")));
    }
    let family = match band {
        Some(b) => semidiag::band_family(n, b, terms, config.seed)?,
        None => semidiag::dense_family(n, terms, config.seed),
    };
    let profile = semidiag::semidiag_profile(&family, &ProjectionLadder::full(n))?;
    let m = meta(config);
    let body = match config.format {
        OutputFormat::Json => {
            let mut map = serde_json::Map::new();
            map.insert("meta".into(), serde_json::to_value(&m)?);
            map.insert("n".into(), Value::from(n));
            map.insert("terms".into(), Value::from(terms));
            map.insert(
                "band".into(),
                band.map(Value::from).unwrap_or(Value::Null),
            );
            map.insert(
                "points".into(),
                Value::Array(
                    profile
                        .points
                        .iter()
                        .map(|p| {
                            let mut pm = serde_json::Map::new();
                            pm.insert("r".into(), Value::from(p.rank));
                            pm.insert("s".into(), num(p.budget));
                            Value::Object(pm)
                        })
                        .collect(),
                ),
            );
            map.insert("max_budget".into(), num(profile.max_budget));
            map.insert(
                "growth_exponent".into(),
                profile.growth_exponent.map(num).unwrap_or(Value::Null),
            );
            io::to_json_string(&Value::Object(map))?
        }
        OutputFormat::Csv => {
            let mut out = m.csv_comment();
            out.push_str("N,J,b,r,s\n");
            let b_col = band.map(|b| b.to_string()).unwrap_or_else(|| "dense".into());
            for p in &profile.points {
                out.push_str(&format!("{n},{terms},{b_col},{},{}\n", p.rank, io::fmt_f64(p.budget)));
            }
            out
        }
    };
    io::write_output(config.out.as_deref(), &body)?;
    Ok(0)
}

fn parse_lambda(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').collect();
    let parse = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("cannot parse '{s}' as a real number")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(Error::Parse(format!("lambda must be RE or RE,IM, got '{text}'"))),
    }
}

fn cmd_search(config: &RunConfig, what: SearchCmd) -> Result<i32> {
    require_json(config, "search")?;
    let result = match what {
        SearchCmd::Magajna { lambda, dim, terms, restarts, iters } => {
            let lambda = parse_lambda(&lambda)?;
            let sc = SearchConfig { restarts, iters, seed: config.seed, success_tol: 1e-8 };
            search::search_factorization(lambda, dim, terms, &sc)?
        }
        SearchCmd::Luders { dim, terms, restarts, iters } => {
            let sc = SearchConfig { restarts, iters, seed: config.seed, success_tol: 1e-8 };
            search::luders_nonreal_search(dim, terms, &sc)?
        }
    };
    let body = io::to_json_string(&search_result_json(&result, &meta(config))?)?;
    io::write_output(config.out.as_deref(), &body)?;
    Ok(0)
}

fn matrices_json(ms: &[CMatrix]) -> Result<Value> {
    Ok(Value::Array(
        ms.iter()
            .map(|m| serde_json::to_value(WireMatrix::from_matrix(m)))
            .collect::<std::result::Result<Vec<_>, _>>()?,
    ))
}

fn search_result_json(r: &SearchResult, meta: &Meta) -> Result<Value> {
    let mut map = serde_json::Map::new();
    map.insert("meta".into(), serde_json::to_value(meta)?);
    match r.kind {
        SearchKind::Magajna { lambda } => {
            map.insert("kind".into(), Value::from("magajna"));
            map.insert("lambda".into(), complex_value(lambda));
        }
        SearchKind::LudersNonreal => {
            map.insert("kind".into(), Value::from("luders"));
        }
    }
    map.insert("dim".into(), Value::from(r.dim));
    map.insert("terms".into(), Value::from(r.terms));
    map.insert("seed".into(), Value::from(r.seed));
    map.insert("restarts_used".into(), Value::from(r.restarts_used));
    map.insert("best_restart".into(), Value::from(r.best_restart));
    map.insert("iterations".into(), Value::from(r.iterations));
    map.insert("residual".into(), num(r.residual));
    map.insert(
        "succeeded".into(),
        r.succeeded.map(Value::from).unwrap_or(Value::Null),
    );
    map.insert(
        "residual_trace".into(),
        Value::Array(r.residual_trace.iter().map(|&x| num(x)).collect()),
    );
    map.insert("left_factors".into(), matrices_json(&r.left_factors)?);
    map.insert("right_factors".into(), matrices_json(&r.right_factors)?);
    map.insert("left_coefficients".into(), matrices_json(&r.left_coefficients())?);
    map.insert("right_coefficients".into(), matrices_json(&r.right_coefficients())?);
    let mut cert = serde_json::Map::new();
    cert.insert(
        "psd_mins".into(),
        Value::Array(r.certificate.psd_mins.iter().map(|&x| num(x)).collect()),
    );
    cert.insert("residual_recheck".into(), num(r.certificate.residual_recheck));
    map.insert("certificate".into(), Value::Object(cert));
    Ok(Value::Object(map))
}

fn cmd_schur(config: &RunConfig, what: SchurCmd) -> Result<i32> {
    let SchurCmd::Probe { atoms, sizes, samples, sweeps } = what;
    let text = std::fs::read_to_string(&atoms)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", atoms.display())))?;
    let atoms = io::atoms_from_json(&text)?;
    let report = schur::wiener_pitt_probe(&atoms, &sizes, samples, sweeps, config.seed)?;
    let m = meta(config);
    let body = match config.format {
        OutputFormat::Json => {
            let mut map = serde_json::Map::new();
            map.insert("meta".into(), serde_json::to_value(&m)?);
            map.insert(
                "rows".into(),
                Value::Array(
                    report
                        .rows
                        .iter()
                        .map(|row| {
                            let mut rm = serde_json::Map::new();
                            rm.insert("n".into(), Value::from(row.n));
                            rm.insert("inf_abs_F".into(), num(row.inf_abs));
                            rm.insert("lower".into(), num(row.lower));
                            rm.insert("upper".into(), num(row.upper));
                            rm.insert("upper_route".into(), Value::from(row.upper_route));
                            Value::Object(rm)
                        })
                        .collect(),
                ),
            );
            map.insert("monotone_growth".into(), Value::from(report.monotone_growth));
            io::to_json_string(&Value::Object(map))?
        }
        OutputFormat::Csv => {
            let mut out = m.csv_comment();
            out.push_str("N,inf_abs_F,lower,upper\n");
            for row in &report.rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    row.n,
                    io::fmt_f64(row.inf_abs),
                    io::fmt_f64(row.lower),
                    io::fmt_f64(row.upper)
                ));
            }
            out
        }
    };
    io::write_output(config.out.as_deref(), &body)?;
    Ok(0)
}

fn cmd_selftest(config: &RunConfig) -> Result<i32> {
    let results = crate::selftest::run_all(config.seed);
    for r in &results {
        println!("{}", r.line());
    }
    let all = crate::selftest::all_pass(&results);
    if let Some(path) = &config.out {
        let mut map = serde_json::Map::new();
        map.insert("meta".into(), serde_json::to_value(meta(config))?);
        map.insert("all_pass".into(), Value::from(all));
        map.insert(
            "criteria".into(),
            Value::Array(
                results
                    .iter()
                    .map(|r| {
                        let mut rm = serde_json::Map::new();
                        rm.insert("id".into(), Value::from(r.id));
                        rm.insert("name".into(), Value::from(r.name));
                        rm.insert("passed".into(), Value::from(r.passed));
                        rm.insert("details".into(), Value::from(r.details.clone()));
                        rm.insert("seconds".into(), num(r.seconds));
                        Value::Object(rm)
                    })
                    .collect(),
            ),
        );
        io::write_output(Some(path), &io::to_json_string(&Value::Object(map))?)?;
    }
    Ok(if all { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_parsing() {
        assert_eq!(parse_lambda("-1,0").unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(parse_lambda("2.5").unwrap(), Complex64::new(2.5, 0.0));
        assert_eq!(parse_lambda("1,-3.5").unwrap(), Complex64::new(1.0, -3.5));
        assert!(parse_lambda("a,b").is_err());
        assert!(parse_lambda("1,2,3").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["definitely-not-a-command"]), 2);
        assert_eq!(run(["verify", "nonsense-mode"]), 2);
        assert_eq!(run(Vec::<String>::new()), 2);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(["--help"]), 0);
    }
}
