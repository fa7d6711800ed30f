//! `lsmodel`: build, dump and certify the interval models from the command line.
//!
//! Exit codes: 0 when everything passes, 1 when a check fails, 2 on
//! configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use lsmodel::models::{self, ModelDump};
use lsmodel::sequences::{BernoulliTable, VTable};
use lsmodel::verify::{self, CheckSpec, Format, VerificationReport};
use lsmodel::Error;

#[derive(Parser, Debug)]
#[command(name = "lsmodel", version, about = "Exact Lie models of the interval")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the inductive construction and dump the coefficients
    BuildModel {
        #[arg(long, default_value_t = 20)]
        max: usize,
        /// Word-length truncation (default: max + 2)
        #[arg(long)]
        truncate: Option<usize>,
        /// Also compare the (x, β) cycles against the full (a, b, x) computation
        #[arg(long)]
        cross_check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Bernoulli-coefficient model and check that it squares to zero
    Geometric {
        #[arg(long, default_value_t = 14)]
        max: usize,
        #[arg(long, default_value_t = 16)]
        truncate: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check suite and print the report
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = OutFormat::Markdown)]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the v(n, k) or Bernoulli tables
    Tables {
        #[arg(long, value_enum)]
        which: Table,
        #[arg(long, default_value_t = 7)]
        max: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Markdown)]
        format: OutFormat,
    },
    /// Run a suite and write the report to a file
    Report {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Run only the named checks (repeatable); overrides --suite
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Highest λ index for the inductive checks
    #[arg(long)]
    max_lambda: Option<i64>,
    /// Truncation for the inductive checks (default: max-lambda + 2)
    #[arg(long)]
    truncate: Option<i64>,
    /// Bound on p + q for the adjoint-composition and θ checks
    #[arg(long)]
    max_pq: Option<i64>,
    /// Largest even n for the Euler-type relations
    #[arg(long)]
    max_relation_n: Option<i64>,
    /// Largest n for the v closed-form sweep
    #[arg(long)]
    max_v: Option<i64>,
    /// Coefficient order of the geometric model
    #[arg(long)]
    max_geometric: Option<i64>,
    /// Number of randomized cases per structural check
    #[arg(long)]
    cases: Option<i64>,
    #[arg(long)]
    seed: Option<i64>,
    /// Raw override `check.key=value` (repeatable)
    #[arg(long = "param")]
    params: Vec<String>,
    /// Report 0 ms runtimes so reruns are byte-identical
    #[arg(long)]
    no_timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OutFormat {
    Json,
    Csv,
    Markdown,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
            OutFormat::Markdown => Format::Markdown,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Table {
    V,
    Bernoulli,
}

/// Distinguishes failed checks (exit 1) from bad configuration (exit 2).
enum Outcome {
    Pass,
    Fail,
}

fn set(specs: &mut [CheckSpec], names: &[&str], key: &str, value: Option<i64>) {
    if let Some(v) = value {
        for s in specs.iter_mut().filter(|s| names.contains(&s.name.as_str())) {
            s.params.insert(key.to_string(), v);
        }
    }
}

fn build_specs(run: &RunArgs) -> anyhow::Result<Vec<CheckSpec>> {
    let mut specs = if run.checks.is_empty() {
        verify::suite(&run.suite)?
    } else {
        run.checks.iter().map(|n| CheckSpec::new(n)).collect::<Result<Vec<_>, _>>()?
    };
    let inductive = ["main_theorem", "inductive_certificates"];
    set(&mut specs, &inductive, "max", run.max_lambda);
    let trunc = run.truncate.or(run.max_lambda.map(|m| m + 2));
    set(&mut specs, &inductive, "truncation", trunc);
    set(&mut specs, &["lacle", "theta_composition"], "max_pq", run.max_pq);
    set(&mut specs, &["euler_type_relations"], "max_n", run.max_relation_n);
    set(&mut specs, &["vtable_closed_form"], "max_n", run.max_v);
    set(&mut specs, &["geometric_flatness"], "max", run.max_geometric);
    set(&mut specs, &["geometric_flatness"], "truncation", run.max_geometric.map(|m| m + 2));
    for s in specs.iter_mut() {
        if let Some(c) = run.cases.filter(|_| s.params.contains_key("cases")) {
            s.params.insert("cases".into(), c);
        }
        if let Some(seed) = run.seed.filter(|_| s.params.contains_key("seed")) {
            s.params.insert("seed".into(), seed);
        }
    }
    for raw in &run.params {
        let (lhs, value) = raw.split_once('=').with_context(|| format!("--param {raw:?}: expected check.key=value"))?;
        let (check, key) = lhs.split_once('.').with_context(|| format!("--param {raw:?}: expected check.key=value"))?;
        let value: i64 = value.parse().with_context(|| format!("--param {raw:?}: value is not an integer"))?;
        let Some(spec) = specs.iter_mut().find(|s| s.name == check) else {
            bail!("--param {raw:?}: check {check:?} is not selected");
        };
        spec.params.insert(key.to_string(), value);
    }
    Ok(specs)
}

fn run_report(run: &RunArgs) -> anyhow::Result<VerificationReport> {
    let report = verify::run_suite(&build_specs(run)?)?;
    Ok(if run.no_timings { report.without_timings() } else { report })
}

fn write_out(bytes: &[u8], out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            if !bytes.ends_with(b"\n") {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn table_json(rows: &[serde_json::Value]) -> String {
    serde_json::to_string(rows).expect("table serializes")
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::BuildModel { max, truncate, cross_check, out } => {
            let truncation = truncate.unwrap_or(max + 2);
            let built = models::inductive_build(max, truncation)?;
            write_out(ModelDump::inductive(&built, truncation).to_json().as_bytes(), out.as_ref())?;
            if cross_check {
                for step in 3..=max.min(9) {
                    let o = models::cross_alphabet(step, &built.lambdas, truncation)?;
                    if !o.holds() {
                        eprintln!("cross-check failed at step {step}: xb {} vs abx {}", o.xb_image, o.abx);
                        return Ok(Outcome::Fail);
                    }
                }
                eprintln!("cross-check: steps 3..={} agree", max.min(9));
            }
            Ok(Outcome::Pass)
        }
        Command::Geometric { max, truncate, out } => {
            let model = models::geometric_model(max, truncate)?;
            write_out(ModelDump::geometric(&model).to_json().as_bytes(), out.as_ref())?;
            let o = models::d_squared(&model)?;
            if o.holds() {
                eprintln!("d^2 = 0 on a, b and on x up to length {}", o.checked_up_to);
                Ok(Outcome::Pass)
            } else {
                eprintln!("d^2 fails at lengths {:?}", o.failing_lengths);
                Ok(Outcome::Fail)
            }
        }
        Command::Verify { run, format, out } => {
            let report = run_report(&run)?;
            write_out(&verify::emit(&report, format.into()), out.as_ref())?;
            Ok(if report.all_passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Report { run, out, format } => {
            let report = run_report(&run)?;
            write_out(&verify::emit(&report, format.into()), Some(&out))?;
            let s = &report.summary;
            eprintln!("{} checks: {} passed, {} failed -> {}", s.total, s.passed, s.failed, out.display());
            Ok(if report.all_passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Tables { which, max, format } => {
            let text = match (which, format) {
                (Table::V, OutFormat::Markdown) => VTable::build(max).to_markdown(),
                (Table::V, OutFormat::Csv) => VTable::build(max).to_csv(),
                (Table::V, OutFormat::Json) => {
                    let t = VTable::build(max);
                    let rows: Vec<_> = (0..=max)
                        .flat_map(|n| (0..=n / 2).map(move |k| (n, k)))
                        .map(|(n, k)| serde_json::json!({ "n": n, "k": k, "value": t.get(n, k as i64) }))
                        .collect();
                    table_json(&rows)
                }
                (Table::Bernoulli, OutFormat::Markdown) => BernoulliTable::build(max).to_markdown(),
                (Table::Bernoulli, OutFormat::Csv) => BernoulliTable::build(max).to_csv(),
                (Table::Bernoulli, OutFormat::Json) => {
                    let b = BernoulliTable::build(max);
                    let rows: Vec<_> = b
                        .values()
                        .iter()
                        .enumerate()
                        .map(|(n, v)| serde_json::json!({ "n": n, "value": v }))
                        .collect();
                    table_json(&rows)
                }
            };
            write_out(text.as_bytes(), None)?;
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let lib_failure = matches!(
                e.downcast_ref::<Error>(),
                Some(Error::ProportionalityFailed { .. } | Error::OddCycleNonzero { .. } | Error::NotInSpan)
            );
            ExitCode::from(if lib_failure { 1 } else { 2 })
        }
    }
}
