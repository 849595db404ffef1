//! The `charexp` command line.
//!
//! One subcommand per invocation; every report is available as JSON, CSV or
//! a rounded human-readable table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::expansion::{direct_product, expand, Cutoffs, Expansion};
use crate::genfunc::{self, CoefficientSequence};
use crate::haar::{self, ExtractOptions, IntegralRecord, Integrator};
use crate::partitions::{enumerate_partitions, GeneralizedLabel, Partition};
use crate::symfunc::{self, CharacterEvaluator, EigenvalueSet};

/// Environment variable holding the default `--seed`.
pub const SEED_ENV: &str = "CHAREXP_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "charexp",
    version,
    about = "Characters of U(N) and character expansions of invariant functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,

    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Monte Carlo seed.
    #[arg(long, global = true, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,

    /// Group integration backend.
    #[arg(long, global = true, value_enum, default_value_t = IntegratorKind::Torus)]
    pub integrator: IntegratorKind,

    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: usize,

    /// Torus grid points per angle [default: max(64, 4 (boxes + |det power| + N))].
    #[arg(long, global = true)]
    pub grid: Option<usize>,

    /// Pass/fail tolerance for verify-orthogonality (default 1e-6) and extract (no check unless given).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntegratorKind {
    Mc,
    Torus,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a character by Weyl's formula and by the Jacobi-Trudi determinant.
    Char {
        /// Rank N of U(N).
        #[arg(long = "N")]
        n: usize,
        /// Partition with exactly N parts, e.g. 2,1,0.
        #[arg(long)]
        label: String,
        /// Eigenvalue phases in radians, comma separated, N of them.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        phases: Vec<f64>,
    },
    /// Print the truncated character expansion of prod_i G(x, t_i).
    Expand {
        #[arg(long = "N")]
        n: usize,
        #[command(flatten)]
        seq: SeqArgs,
        #[command(flatten)]
        cutoffs: CutoffArgs,
    },
    /// Compare a truncated expansion with direct evaluation of prod_i G(x, t_i).
    Reconstruct {
        #[arg(long = "N")]
        n: usize,
        #[command(flatten)]
        seq: SeqArgs,
        #[command(flatten)]
        cutoffs: CutoffArgs,
        /// Eigenvalue phases in radians, comma separated, N of them.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        phases: Vec<f64>,
        /// Eigenvalue modulus; 1 evaluates on the group.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    /// Integrate chi_r conj(chi_s) over U(N) for all partitions up to a box count.
    VerifyOrthogonality {
        #[arg(long = "N")]
        n: usize,
        /// Largest number of boxes of the partitions compared.
        #[arg(long, default_value_t = 3)]
        max_boxes: usize,
    },
    /// Recover one expansion coefficient by group integration and compare with the determinant.
    Extract {
        #[arg(long = "N")]
        n: usize,
        #[command(flatten)]
        seq: SeqArgs,
        /// Label as shape[@det_power], shape with an empty last row, e.g. 2,0,0@-1.
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        /// Contour radius r: projects prod_i G(r t_i) and divides by r^degree.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// Builtin generating function: geometric, quadratic, chebyshev-u, exponential, bessel.
    #[arg(long)]
    pub seq: String,
    /// Parameter as name=value, e.g. z=0.5 or z=0.5+0.2i. Repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE", allow_hyphen_values = true)]
    pub params: Vec<String>,
}

#[derive(Debug, Args)]
pub struct CutoffArgs {
    /// Largest number of boxes kept.
    #[arg(long)]
    pub max_boxes: usize,
    /// Powers of det U kept, as LO:HI. Ignored for series without negative powers.
    #[arg(long, default_value = "0:0", allow_hyphen_values = true)]
    pub det_power_range: String,
}

/// A rendered report and whether its checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: String,
    pub passed: bool,
}

/// Builds a builtin sequence from its CLI name and `name=value` parameters.
pub fn build_sequence(name: &str, params: &[String]) -> anyhow::Result<CoefficientSequence> {
    let mut map = BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| anyhow!("parameter `{p}` is not of the form name=value"))?;
        if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            bail!("parameter `{k}` given twice");
        }
    }
    let expected = match name {
        "geometric" => "z",
        "quadratic" | "chebyshev-u" | "exponential" | "bessel" => "x",
        other => bail!(
            "unknown sequence `{other}`; expected one of geometric, quadratic, chebyshev-u, exponential, bessel"
        ),
    };
    if let Some(extra) = map.keys().find(|k| k.as_str() != expected) {
        bail!("sequence `{name}` takes only `{expected}`, got `{extra}`");
    }
    let raw = map
        .get(expected)
        .ok_or_else(|| anyhow!("sequence `{name}` needs --param {expected}=VALUE"))?;
    let real = || -> anyhow::Result<f64> {
        raw.parse::<f64>()
            .with_context(|| format!("`{expected}={raw}` is not a real number"))
    };
    let complex = || -> anyhow::Result<Complex64> {
        raw.parse::<Complex64>()
            .map_err(|_| anyhow!("`{expected}={raw}` is not a complex number"))
    };
    Ok(match name {
        "geometric" => genfunc::geometric(complex()?)?,
        "quadratic" => genfunc::quadratic(real()?),
        "chebyshev-u" => genfunc::chebyshev_u(real()?)?,
        "exponential" => genfunc::exponential(complex()?),
        "bessel" => genfunc::bessel_like(real()?),
        _ => unreachable!(),
    })
}

fn parse_range(s: &str) -> anyhow::Result<(i64, i64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("det power range `{s}` is not of the form LO:HI"))?;
    let lo: i64 = lo.trim().parse().with_context(|| format!("bad range start in `{s}`"))?;
    let hi: i64 = hi.trim().parse().with_context(|| format!("bad range end in `{s}`"))?;
    if lo > hi {
        bail!("det power range `{s}` is empty");
    }
    Ok((lo, hi))
}

fn eigenvalues(n: usize, phases: &[f64], radius: f64) -> anyhow::Result<EigenvalueSet> {
    if phases.len() != n {
        bail!("expected {n} phases, got {}", phases.len());
    }
    if !(radius > 0.0 && radius.is_finite()) {
        bail!("radius must be positive, got {radius}");
    }
    let t = EigenvalueSet::from_phases(phases)?;
    Ok(if radius == 1.0 { t } else { t.scaled(radius) })
}

fn check_rank(n: usize) -> anyhow::Result<()> {
    if n == 0 {
        bail!("--N must be at least 1");
    }
    Ok(())
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// `v` rounded to 10 significant digits.
pub fn sig10(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let rounded: f64 = format!("{v:.9e}").parse().expect("round trip");
    if (1e-4..1e10).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn sig10c(z: Complex64) -> String {
    if z.im == 0.0 {
        sig10(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", sig10(z.re), sig10(-z.im))
    } else {
        format!("{}+{}i", sig10(z.re), sig10(z.im))
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn key_value_csv(rows: &[(&str, String)]) -> String {
    let mut out = String::from("field,value\n");
    for (k, v) in rows {
        let _ = writeln!(out, "{k},\"{v}\"");
    }
    out
}

#[derive(Serialize)]
struct CharReport {
    #[serde(rename = "N")]
    n: usize,
    label: String,
    phases: Vec<f64>,
    weyl: Option<[f64; 2]>,
    jacobi_trudi: [f64; 2],
    difference: Option<f64>,
    value: [f64; 2],
}

#[derive(Serialize)]
struct ReconstructReport {
    #[serde(rename = "N")]
    n: usize,
    source_name: String,
    cutoffs: Cutoffs,
    phases: Vec<f64>,
    radius: f64,
    n_terms: usize,
    truncated: [f64; 2],
    direct: [f64; 2],
    abs_error: f64,
}

#[derive(Serialize)]
struct OrthogonalityReport {
    #[serde(rename = "N")]
    n: usize,
    labels: Vec<String>,
    method: haar::Method,
    n_samples: usize,
    seed: Option<u64>,
    gram: Vec<Vec<[f64; 2]>>,
    std_error: Vec<Vec<f64>>,
    max_deviation: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct ExtractReport {
    #[serde(rename = "N")]
    n: usize,
    source_name: String,
    label: String,
    radius: f64,
    integral: IntegralRecord,
    determinant: [f64; 2],
    abs_difference: f64,
    tolerance: Option<f64>,
    passed: bool,
}

impl Cli {
    fn integrator(&self) -> Integrator {
        match self.integrator {
            IntegratorKind::Mc => Integrator::MonteCarlo {
                samples: self.samples,
                seed: self.seed,
            },
            IntegratorKind::Torus => Integrator::Torus { grid: self.grid },
        }
    }
}

/// Runs the parsed command and renders its report.
pub fn execute(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Char { n, label, phases } => run_char(cli, *n, label, phases),
        Command::Expand { n, seq, cutoffs } => {
            check_rank(*n)?;
            let a = build_sequence(&seq.seq, &seq.params)?;
            let e = expand_from(&a, *n, cutoffs)?;
            let body = match cli.output {
                OutputFormat::Json => {
                    let mut s = e.to_json();
                    s.push('\n');
                    s
                }
                OutputFormat::Csv => e.to_csv(),
                OutputFormat::Table => expansion_table(&e),
            };
            Ok(Report { body, passed: true })
        }
        Command::Reconstruct {
            n,
            seq,
            cutoffs,
            phases,
            radius,
        } => {
            check_rank(*n)?;
            let a = build_sequence(&seq.seq, &seq.params)?;
            let t = eigenvalues(*n, phases, *radius)?;
            let e = expand_from(&a, *n, cutoffs)?;
            let truncated = e.reconstruct(&t)?;
            let direct = direct_product(&a, &t)?;
            let report = ReconstructReport {
                n: *n,
                source_name: e.source_name().to_string(),
                cutoffs: e.to_record().cutoffs,
                phases: phases.clone(),
                radius: *radius,
                n_terms: e.len(),
                truncated: pair(truncated),
                direct: pair(direct),
                abs_error: (truncated - direct).norm(),
            };
            let rows = [
                ("N", n.to_string()),
                ("source", report.source_name.clone()),
                ("terms", report.n_terms.to_string()),
                ("truncated", sig10c(truncated)),
                ("direct", sig10c(direct)),
                ("abs_error", sig10(report.abs_error)),
            ];
            Ok(Report {
                body: render(cli.output, &report, &rows),
                passed: true,
            })
        }
        Command::VerifyOrthogonality { n, max_boxes } => run_orthogonality(cli, *n, *max_boxes),
        Command::Extract { n, seq, label, radius } => run_extract(cli, *n, seq, label, *radius),
    }
}

fn render<T: Serialize>(format: OutputFormat, report: &T, rows: &[(&str, String)]) -> String {
    match format {
        OutputFormat::Json => json(report),
        OutputFormat::Csv => key_value_csv(rows),
        OutputFormat::Table => table(rows),
    }
}

fn expand_from(a: &CoefficientSequence, n: usize, cutoffs: &CutoffArgs) -> anyhow::Result<Expansion> {
    let (lo, hi) = parse_range(&cutoffs.det_power_range)?;
    Ok(expand(a, n, cutoffs.max_boxes, lo..=hi)?)
}

fn expansion_table(e: &Expansion) -> String {
    let (lo, hi) = e.det_power_range();
    let mut out = format!(
        "# N = {}, source = {}, max_boxes = {}, det_power_range = {lo}:{hi}\n",
        e.rank(),
        e.source_name(),
        e.max_boxes()
    );
    let width = e.terms().iter().map(|t| t.label.to_string().len()).max().unwrap_or(5).max(5);
    let _ = writeln!(out, "{:<width$}  {:<24}  zero", "label", "coefficient");
    for t in e.terms() {
        let _ = writeln!(
            out,
            "{:<width$}  {:<24}  {}",
            t.label.to_string(),
            sig10c(t.coefficient),
            if t.flagged_zero { "*" } else { "" }
        );
    }
    out
}

fn run_char(cli: &Cli, n: usize, label: &str, phases: &[f64]) -> anyhow::Result<Report> {
    check_rank(n)?;
    let p: Partition = label.parse()?;
    if p.rank() != n {
        bail!("label `{label}` has {} parts, expected N = {n}", p.rank());
    }
    let t = eigenvalues(n, phases, 1.0)?;
    let jt = symfunc::char_jacobi_trudi(&p, &t)?;
    let weyl = symfunc::char_weyl(&p, &t).ok();
    let value = symfunc::char(&p, &t)?;
    let report = CharReport {
        n,
        label: p.to_string(),
        phases: phases.to_vec(),
        weyl: weyl.map(pair),
        jacobi_trudi: pair(jt),
        difference: weyl.map(|w| (w - jt).norm()),
        value: pair(value),
    };
    let rows = [
        ("N", n.to_string()),
        ("label", report.label.clone()),
        ("weyl", weyl.map_or("degenerate".into(), sig10c)),
        ("jacobi_trudi", sig10c(jt)),
        ("difference", report.difference.map_or("-".into(), sig10)),
        ("value", sig10c(value)),
    ];
    Ok(Report {
        body: render(cli.output, &report, &rows),
        passed: true,
    })
}

fn run_orthogonality(cli: &Cli, n: usize, max_boxes: usize) -> anyhow::Result<Report> {
    check_rank(n)?;
    let labels: Vec<Partition> = enumerate_partitions(n, max_boxes).collect();
    let k = labels.len();
    let integrand = |t: &EigenvalueSet| {
        let mut ev = CharacterEvaluator::new(t.clone());
        let chars: Vec<Complex64> = labels.iter().map(|p| ev.char(p).expect("rank")).collect();
        let mut out = Vec::with_capacity(k * k);
        for a in &chars {
            for b in &chars {
                out.push(a * b.conj());
            }
        }
        out
    };
    let estimates = match cli.integrator() {
        Integrator::MonteCarlo { samples, seed } => haar::mc_integrate_many(integrand, k * k, n, samples, seed)?,
        Integrator::Torus { grid } => haar::torus_integrate_many(integrand, k * k, n, grid.unwrap_or(128))?,
    };
    let tolerance = cli.tolerance.unwrap_or(1e-6);
    let mut max_deviation: f64 = 0.0;
    let mut passed = true;
    let mut gram = vec![Vec::with_capacity(k); k];
    let mut std_error = vec![Vec::with_capacity(k); k];
    for (idx, est) in estimates.iter().enumerate() {
        let (i, j) = (idx / k, idx % k);
        let expected = if i == j { 1.0 } else { 0.0 };
        let dev = (est.value - Complex64::new(expected, 0.0)).norm();
        max_deviation = max_deviation.max(dev);
        if dev > tolerance.max(5.0 * est.std_error) {
            passed = false;
        }
        gram[i].push(pair(est.value));
        std_error[i].push(est.std_error);
    }
    let first = &estimates[0];
    let report = OrthogonalityReport {
        n,
        labels: labels.iter().map(ToString::to_string).collect(),
        method: first.method,
        n_samples: first.n_samples,
        seed: first.seed,
        gram,
        std_error,
        max_deviation,
        tolerance,
        passed,
    };
    let body = match cli.output {
        OutputFormat::Json => json(&report),
        OutputFormat::Csv => {
            let mut out = String::from("row,col,re,im,std_error\n");
            for (idx, est) in estimates.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "\"{}\",\"{}\",{:?},{:?},{:?}",
                    labels[idx / k],
                    labels[idx % k],
                    est.value.re,
                    est.value.im,
                    est.std_error
                );
            }
            out
        }
        OutputFormat::Table => {
            let mut out = format!("# N = {n}, {} irreps, method = {:?}\n", k, first.method);
            for i in 0..k {
                let row: Vec<String> = (0..k)
                    .map(|j| format!("{:>14}", sig10c(estimates[i * k + j].value)))
                    .collect();
                let _ = writeln!(out, "{:>10} {}", labels[i].to_string(), row.join(" "));
            }
            let _ = writeln!(out, "max_deviation  {}", sig10(max_deviation));
            let _ = writeln!(out, "tolerance      {}", sig10(tolerance));
            let _ = writeln!(out, "passed         {passed}");
            out
        }
    };
    Ok(Report { body, passed })
}

fn run_extract(cli: &Cli, n: usize, seq: &SeqArgs, label: &str, radius: f64) -> anyhow::Result<Report> {
    check_rank(n)?;
    let a = build_sequence(&seq.seq, &seq.params)?;
    let g: GeneralizedLabel = label.parse()?;
    if g.rank() != n {
        bail!("label `{label}` has {} parts, expected N = {n}", g.rank());
    }
    let options = ExtractOptions {
        integrator: cli.integrator(),
        radius,
    };
    let est = haar::extract_coefficient(&a, &g, &options)?;
    let det = crate::expansion::coefficient(&a, &g);
    let diff = (est.value - det).norm();
    let passed = cli
        .tolerance
        .is_none_or(|tol| diff <= tol.max(5.0 * est.std_error));
    let report = ExtractReport {
        n,
        source_name: a.name().to_string(),
        label: g.to_string(),
        radius,
        integral: est.to_record(),
        determinant: pair(det),
        abs_difference: diff,
        tolerance: cli.tolerance,
        passed,
    };
    let rows = [
        ("N", n.to_string()),
        ("source", report.source_name.clone()),
        ("label", report.label.clone()),
        ("integral", sig10c(est.value)),
        ("std_error", sig10(est.std_error)),
        ("determinant", sig10c(det)),
        ("abs_difference", sig10(diff)),
        ("passed", passed.to_string()),
    ];
    Ok(Report {
        body: render(cli.output, &report, &rows),
        passed,
    })
}

/// Parses `args`, runs the command and writes the report. Returns the
/// process exit code: 0 on success, 1 when a check exceeded its tolerance,
/// 2 on any error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return 2;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &report.body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", report.body);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return 2;
    }
    if report.passed {
        0
    } else {
        eprintln!("check failed: tolerance exceeded");
        1
    }
}
