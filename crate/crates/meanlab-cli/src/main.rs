//! Command-line driver for the mean-inequality verification laboratory.
//!
//! Five subcommands cover the library's surface: `means` evaluates one
//! scalar mean, `verify` runs a seeded suite, `scan` sweeps a
//! sharp-constant ratio over a grid, `kernel` computes Gram spectra or
//! searches for indefinite point sets, and `reproduce` re-derives the full
//! table of published constants.
//!
//! Report files are pure functions of the configuration: identical flags
//! and seed produce byte-identical JSON or CSV. Wall-clock timings go to
//! stdout only, never into a file. Exit codes: 0 when every checked
//! inequality holds (or a search stays inconclusive), 1 when a violation
//! or negative eigenvalue is exhibited, 2 on usage or domain errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use meanlab::chains::{log_ratio, diff_ratio, GridSpec, ScanReport, ScanTarget};
use meanlab::kernel::{
    gram, search_counterexample, EigenReport, KernelFamily, SearchConfig, SearchStrategy,
    DEFAULT_KERNEL_TOL,
};
use meanlab::matrix::{parse_general, parse_sym, GeneralMatrix, PsdMatrix, DEFAULT_PSD_TOL};
use meanlab::means::{operator_chain_check, OperatorChainParams, DEFAULT_OPERATOR_TOL};
use meanlab::norms::{hs_chain_check, ky_fan_squeeze_check, SqueezeReport, DEFAULT_NORM_TOL};
use meanlab::quad::DEFAULT_NODES;
use meanlab::scalar::{MeanKind, ScalarPair};
use meanlab::suites::{
    fuzz_correction, fuzz_fundamental, fuzz_refined, hsnorm_suite, operator_suite, reproduce,
    uinorm_suite, FuzzConfig, NormSuiteConfig, OperatorSuiteConfig, RefinedFuzzConfig,
    SuiteReport, TrialViolation, DEFAULT_SEED, UINORM_EXPONENTS,
};

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

/// Prints one stdout line, leaving quietly when the reader hung up (for
/// example, piped through `head`); `println!` would panic instead.
fn emit(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_fmt(args).and_then(|()| out.write_all(b"\n")).is_err() {
        std::process::exit(0);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

#[derive(Parser)]
#[command(
    name = "meanlab",
    version,
    about = "Numerical verification of scalar, operator, and norm inequalities between classical means"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scalar mean at a positive pair
    Means(MeansArgs),
    /// Run one seeded verification suite and emit its report
    Verify(VerifyArgs),
    /// Sweep a sharp-constant ratio over a logarithmic grid
    Scan(ScanArgs),
    /// Gram spectrum at fixed points, or a counterexample search
    Kernel(KernelArgs),
    /// Re-derive the full table of published constants
    Reproduce(ReproduceArgs),
}

/// Report file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OutputFormat {
    /// Full report object, pretty-printed.
    Json,
    /// Flat table of the report's row data, for plot pipelines.
    Csv,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

/// Resolved run-wide settings every subcommand folds into its library
/// config. Defaults: seed 7, library tolerances, default grid, no explicit
/// trial count, suite-named output path, JSON format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RunConfig {
    seed: u64,
    /// Overrides the suite's default tolerance when set.
    tolerance: Option<f64>,
    grid: GridSpec,
    /// Overrides the suite's default trial count when set.
    trials: Option<usize>,
    out: Option<PathBuf>,
    format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            tolerance: None,
            grid: GridSpec::default(),
            trials: None,
            out: None,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    /// Output path for a report: the explicit `--out`, else
    /// `meanlab-<stem>.<ext>` in the working directory.
    fn resolve_out(&self, stem: &str) -> PathBuf {
        self.out
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("meanlab-{stem}.{}", self.format.extension())))
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Report file path (default: meanlab-<suite>.<ext> in the working directory)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report file format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct MeansArgs {
    /// Family: A, G, H, L, or a name taking a parameter flag (binomial --p,
    /// heron --s, heronhat --s, heinz --v, bridge --r, lehmer --alpha,
    /// powerdiff --u); canonical specs like `heron:s=0.5` also parse
    kind: String,
    /// First argument (strictly positive)
    a: f64,
    /// Second argument (strictly positive)
    b: f64,
    /// Binomial exponent
    #[arg(long)]
    p: Option<f64>,
    /// Bridge exponent, admissible on [0, 2]
    #[arg(long)]
    r: Option<f64>,
    /// Heron or heron-hat weight, admissible on [0, 1]
    #[arg(long)]
    s: Option<f64>,
    /// Heinz weight, admissible on [0, 1]
    #[arg(long)]
    v: Option<f64>,
    /// Lehmer exponent, admissible on [0, 1]
    #[arg(long)]
    alpha: Option<f64>,
    /// Power-difference exponent
    #[arg(long)]
    u: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    /// Fundamental five-step scalar chain
    Chain,
    /// Refined chains of order 1..=max-order
    Refined,
    /// Eleven-term correction-factor chain
    Rho,
    /// Five-term operator chain in the Loewner order
    Operator,
    /// Hilbert-Schmidt norm chain on congruence maps
    Hsnorm,
    /// Unitarily invariant norm squeeze via Ky Fan dominance
    Uinorm,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(value_enum)]
    suite: SuiteName,
    /// Trial count; for the operator suite, the fixed-corner trials
    #[arg(long)]
    trials: Option<usize>,
    /// Extra random-parameter trials (operator suite only)
    #[arg(long)]
    random_trials: Option<usize>,
    /// Seed for every trial stream
    #[arg(long, env = "MEANLAB_SEED")]
    seed: Option<u64>,
    /// Relative tolerance override
    #[arg(long)]
    tol: Option<f64>,
    /// Largest refinement order checked per pair (refined suite only)
    #[arg(long)]
    max_order: Option<usize>,
    /// Smallest matrix dimension drawn (matrix suites)
    #[arg(long)]
    min_dim: Option<usize>,
    /// Largest matrix dimension drawn (matrix suites)
    #[arg(long = "n")]
    max_dim: Option<usize>,
    /// Lower end of the draw range: pair values for scalar suites,
    /// eigenvalues for matrix suites
    #[arg(long)]
    lo: Option<f64>,
    /// Upper end of the draw range
    #[arg(long)]
    hi: Option<f64>,
    /// Quadrature nodes for the logarithmic operator mean (matrix suites)
    #[arg(long)]
    nodes: Option<usize>,
    /// Left matrix file in the text format (dimension header, then row-major
    /// entries): check exactly this instance instead of random trials
    #[arg(long, requires = "t_file")]
    s_file: Option<PathBuf>,
    /// Right matrix file; pairs with --s-file
    #[arg(long, requires = "s_file")]
    t_file: Option<PathBuf>,
    /// Mapped matrix file (hsnorm/uinorm instances)
    #[arg(long, requires = "s_file")]
    x_file: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanTargetArg {
    /// Supremum of log(L/A)/log(G/A); the bridge-exponent bound, 2/3 from below
    SharpT,
    /// Infimum of (A-L)/(A-G); the Heron-weight bound, 2/3 from above
    SharpS,
}

impl ScanTargetArg {
    fn target(self) -> ScanTarget {
        match self {
            ScanTargetArg::SharpT => ScanTarget::BridgeExponent,
            ScanTargetArg::SharpS => ScanTarget::HeronWeight,
        }
    }

    fn stem(self) -> &'static str {
        match self {
            ScanTargetArg::SharpT => "scan-sharp-t",
            ScanTargetArg::SharpS => "scan-sharp-s",
        }
    }
}

#[derive(Args)]
struct ScanArgs {
    /// Which ratio to sweep
    #[arg(value_enum)]
    target: ScanTargetArg,
    /// Smallest grid ratio
    #[arg(long)]
    min: Option<f64>,
    /// Largest grid ratio
    #[arg(long)]
    max: Option<f64>,
    /// Number of log-spaced base points
    #[arg(long)]
    count: Option<usize>,
    /// Refinement offsets per side toward the diagonal x = 1
    #[arg(long)]
    refine: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["points", "search"])))]
struct KernelArgs {
    /// Family spec, e.g. `phi:r=0.6667`, `sechpow:c=1`, `ratio:L/heron:s=0.6`
    family: String,
    /// Comma-separated evaluation points for a fixed Gram spectrum
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    points: Option<Vec<f64>>,
    /// Counterexample search: point count, strategy
    /// (integer-grid | random-uniform | anneal), evaluation budget
    #[arg(long, num_args = 3, value_names = ["N", "STRATEGY", "BUDGET"])]
    search: Option<Vec<String>>,
    /// Search interval lower end (random-uniform and anneal)
    #[arg(long, default_value_t = 0.0)]
    lo: f64,
    /// Search interval upper end
    #[arg(long, default_value_t = 10.0)]
    hi: f64,
    /// Seed for the search trajectory
    #[arg(long, env = "MEANLAB_SEED")]
    seed: Option<u64>,
    /// Spectrum acceptance tolerance, relative to the trace
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Table file path (default: none, table goes to stdout only)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Table file format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            use std::io::Write;
            let _ = writeln!(std::io::stderr(), "error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Means(args) => cmd_means(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Kernel(args) => cmd_kernel(args),
        Command::Reproduce(args) => cmd_reproduce(args),
    }
}

/// A parameter flag demanded by a bare family name.
fn require_param(value: Option<f64>, flag: &str, family: &str) -> CliResult<f64> {
    value.ok_or_else(|| format!("mean family `{family}` requires {flag} <value>").into())
}

fn resolve_mean_kind(args: &MeansArgs) -> CliResult<MeanKind> {
    let kind = match args.kind.as_str() {
        "arithmetic" => MeanKind::Arithmetic,
        "geometric" => MeanKind::Geometric,
        "harmonic" => MeanKind::Harmonic,
        "logarithmic" => MeanKind::Logarithmic,
        "binomial" => MeanKind::Binomial(require_param(args.p, "--p", "binomial")?),
        "heron" => MeanKind::Heron(require_param(args.s, "--s", "heron")?),
        "heronhat" => MeanKind::HeronHat(require_param(args.s, "--s", "heronhat")?),
        "heinz" => MeanKind::Heinz(require_param(args.v, "--v", "heinz")?),
        "bridge" => MeanKind::Bridge(require_param(args.r, "--r", "bridge")?),
        "lehmer" => MeanKind::Lehmer(require_param(args.alpha, "--alpha", "lehmer")?),
        "powerdiff" => MeanKind::PowerDiff(require_param(args.u, "--u", "powerdiff")?),
        spec => spec.parse::<MeanKind>()?,
    };
    kind.validate()?;
    Ok(kind)
}

fn cmd_means(args: MeansArgs) -> CliResult<ExitCode> {
    let kind = resolve_mean_kind(&args)?;
    let pair = ScalarPair::new(args.a, args.b)?;
    outln!("{}", kind.eval(pair)?);
    Ok(ExitCode::SUCCESS)
}

/// Quotes a CSV field when it contains a delimiter, quote, or newline.
fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

fn violations_csv(violations: &[TrialViolation]) -> String {
    let mut out = String::from("trial,gap,description\n");
    for v in violations {
        out.push_str(&format!("{},{},{}\n", v.trial, v.gap, csv_field(&v.description)));
    }
    out
}

fn write_report<T: Serialize>(
    path: &Path,
    format: OutputFormat,
    report: &T,
    csv: impl FnOnce() -> String,
) -> CliResult<()> {
    let contents = match format {
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(report)?;
            text.push('\n');
            text
        }
        OutputFormat::Csv => csv(),
    };
    std::fs::write(path, contents)?;
    Ok(())
}

/// Emits one suite report and turns it into a summary line plus exit code.
fn finish_suite<C: Serialize>(
    report: &SuiteReport<C>,
    config: &RunConfig,
    elapsed_ms: u128,
) -> CliResult<ExitCode> {
    let path = config.resolve_out(&report.suite);
    write_report(&path, config.format, report, || violations_csv(&report.violations))?;
    outln!(
        "{}: {} trials, {} violations, worst gap {:e} (report {}, {} ms)",
        report.suite,
        report.n_trials,
        report.violations.len(),
        report.worst_gap,
        path.display(),
        elapsed_ms
    );
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_verify(args: VerifyArgs) -> CliResult<ExitCode> {
    let run = RunConfig {
        seed: args.seed.unwrap_or(DEFAULT_SEED),
        tolerance: args.tol,
        grid: GridSpec::default(),
        trials: args.trials,
        out: args.output.out.clone(),
        format: args.output.format,
    };
    if args.s_file.is_some() {
        return verify_instance(&args, &run);
    }

    let fuzz_config = || {
        let mut config = FuzzConfig::default();
        config.seed = run.seed;
        if let Some(trials) = run.trials {
            config.trials = trials;
        }
        if let Some(tol) = run.tolerance {
            config.tolerance = tol;
        }
        if let Some(lo) = args.lo {
            config.ratio_lo = lo;
        }
        if let Some(hi) = args.hi {
            config.ratio_hi = hi;
        }
        config
    };
    let norm_config = || {
        let mut config = NormSuiteConfig::default();
        config.seed = run.seed;
        if let Some(trials) = run.trials {
            config.trials = trials;
        }
        if let Some(tol) = run.tolerance {
            config.tolerance = tol;
        }
        if let Some(min_dim) = args.min_dim {
            config.min_dim = min_dim;
        }
        if let Some(max_dim) = args.max_dim {
            config.max_dim = max_dim;
        }
        if let Some(lo) = args.lo {
            config.eigenvalue_lo = lo;
        }
        if let Some(hi) = args.hi {
            config.eigenvalue_hi = hi;
        }
        if let Some(nodes) = args.nodes {
            config.nodes = nodes;
        }
        config
    };

    let start = Instant::now();
    match args.suite {
        SuiteName::Chain => {
            let report = fuzz_fundamental(fuzz_config())?;
            finish_suite(&report, &run, start.elapsed().as_millis())
        }
        SuiteName::Rho => {
            let report = fuzz_correction(fuzz_config())?;
            finish_suite(&report, &run, start.elapsed().as_millis())
        }
        SuiteName::Refined => {
            let mut config = RefinedFuzzConfig {
                fuzz: fuzz_config(),
                ..RefinedFuzzConfig::default()
            };
            if let Some(max_order) = args.max_order {
                config.max_order = max_order;
            }
            let report = fuzz_refined(config)?;
            finish_suite(&report, &run, start.elapsed().as_millis())
        }
        SuiteName::Operator => {
            let mut config = OperatorSuiteConfig::default();
            config.seed = run.seed;
            if let Some(trials) = run.trials {
                config.corner_trials = trials;
            }
            if let Some(random_trials) = args.random_trials {
                config.random_parameter_trials = random_trials;
            }
            if let Some(tol) = run.tolerance {
                config.tolerance = tol;
            }
            if let Some(min_dim) = args.min_dim {
                config.min_dim = min_dim;
            }
            if let Some(max_dim) = args.max_dim {
                config.max_dim = max_dim;
            }
            if let Some(lo) = args.lo {
                config.eigenvalue_lo = lo;
            }
            if let Some(hi) = args.hi {
                config.eigenvalue_hi = hi;
            }
            if let Some(nodes) = args.nodes {
                config.nodes = nodes;
            }
            let report = operator_suite(config)?;
            finish_suite(&report, &run, start.elapsed().as_millis())
        }
        SuiteName::Hsnorm => {
            let report = hsnorm_suite(norm_config())?;
            finish_suite(&report, &run, start.elapsed().as_millis())
        }
        SuiteName::Uinorm => {
            let report = uinorm_suite(norm_config())?;
            finish_suite(&report, &run, start.elapsed().as_millis())
        }
    }
}

fn load_psd(path: &Path) -> CliResult<PsdMatrix> {
    let text = std::fs::read_to_string(path)?;
    Ok(PsdMatrix::from_sym(parse_sym(&text)?, DEFAULT_PSD_TOL)?)
}

fn load_general(path: &Path) -> CliResult<GeneralMatrix> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_general(&text)?)
}

/// One Ky Fan squeeze verdict at a fixed bridge exponent.
#[derive(Serialize)]
struct SqueezeRow {
    exponent: f64,
    squeeze: SqueezeReport,
}

fn min_margin(margins: &[f64]) -> f64 {
    margins.iter().fold(f64::INFINITY, |acc, &m| acc.min(m))
}

/// Runs one matrix suite's check on a pair (and map argument) read from
/// text files instead of random trials.
fn verify_instance(args: &VerifyArgs, run: &RunConfig) -> CliResult<ExitCode> {
    let s_path = args.s_file.as_ref().expect("caller checked s_file");
    let t_path = args.t_file.as_ref().expect("clap requires t_file with s_file");
    let load_x = || -> CliResult<GeneralMatrix> {
        let path = args
            .x_file
            .as_ref()
            .ok_or("this suite's instance check requires --x-file")?;
        load_general(path)
    };
    let nodes = args.nodes.unwrap_or(DEFAULT_NODES);

    let start = Instant::now();
    match args.suite {
        SuiteName::Operator => {
            let s = load_psd(s_path)?;
            let t = load_psd(t_path)?;
            let tol = run.tolerance.unwrap_or(DEFAULT_OPERATOR_TOL);
            let verdict = operator_chain_check(&s, &t, OperatorChainParams::default(), nodes, tol)?;
            let elapsed_ms = start.elapsed().as_millis();

            let path = run.resolve_out("operator");
            write_report(&path, run.format, &verdict, || {
                let mut out = String::from("label,margin,holds\n");
                for c in &verdict.comparisons {
                    out.push_str(&format!("{},{},{}\n", csv_field(&c.label), c.margin, c.holds));
                }
                out
            })?;
            let worst = verdict
                .comparisons
                .iter()
                .fold(f64::INFINITY, |acc, c| acc.min(c.margin));
            outln!(
                "operator instance: {} comparisons, worst margin {:e}, {} (report {}, {} ms)",
                verdict.comparisons.len(),
                worst,
                if verdict.all_hold { "all hold" } else { "VIOLATED" },
                path.display(),
                elapsed_ms
            );
            Ok(if verdict.all_hold { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        SuiteName::Hsnorm => {
            let s = load_psd(s_path)?;
            let t = load_psd(t_path)?;
            let x = load_x()?;
            let tol = run.tolerance.unwrap_or(DEFAULT_NORM_TOL);
            let report = hs_chain_check(&s, &t, &x, nodes, tol)?;
            let elapsed_ms = start.elapsed().as_millis();

            let path = run.resolve_out("hsnorm");
            write_report(&path, run.format, &report, || {
                let mut out = String::from("label,value\n");
                for (label, value) in report.labels.iter().zip(&report.values) {
                    out.push_str(&format!("{},{}\n", csv_field(label), value));
                }
                out
            })?;
            outln!(
                "hsnorm instance: worst margin {:e}, {} (report {}, {} ms)",
                report.worst_margin(),
                if report.holds() { "chain holds" } else { "VIOLATED" },
                path.display(),
                elapsed_ms
            );
            Ok(if report.holds() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        SuiteName::Uinorm => {
            let s = load_psd(s_path)?;
            let t = load_psd(t_path)?;
            let x = load_x()?;
            let tol = run.tolerance.unwrap_or(DEFAULT_NORM_TOL);
            let rows = UINORM_EXPONENTS
                .iter()
                .map(|&exponent| {
                    Ok(SqueezeRow {
                        exponent,
                        squeeze: ky_fan_squeeze_check(exponent, &s, &t, &x, tol)?,
                    })
                })
                .collect::<Result<Vec<_>, meanlab::error::Error>>()?;
            let elapsed_ms = start.elapsed().as_millis();

            let all_hold = rows.iter().all(|row| row.squeeze.holds);
            let worst = rows.iter().fold(f64::INFINITY, |acc, row| {
                acc.min(min_margin(&row.squeeze.lower.margins))
                    .min(min_margin(&row.squeeze.upper.margins))
            });
            let path = run.resolve_out("uinorm");
            write_report(&path, run.format, &rows, || {
                let mut out = String::from("exponent,lower_margin,upper_margin,holds\n");
                for row in &rows {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        row.exponent,
                        min_margin(&row.squeeze.lower.margins),
                        min_margin(&row.squeeze.upper.margins),
                        row.squeeze.holds
                    ));
                }
                out
            })?;
            outln!(
                "uinorm instance: {} exponents, worst margin {:e}, {} (report {}, {} ms)",
                rows.len(),
                worst,
                if all_hold { "squeeze holds" } else { "VIOLATED" },
                path.display(),
                elapsed_ms
            );
            Ok(if all_hold { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        SuiteName::Chain | SuiteName::Refined | SuiteName::Rho => {
            Err("matrix files apply to the operator, hsnorm, and uinorm suites only".into())
        }
    }
}

/// Both ratio functions tabulated over the scan's grid, the documented
/// format for plot pipelines.
fn scan_csv(report: &ScanReport) -> String {
    let mut out = String::from("x,log_ratio,diff_ratio\n");
    for &x in &report.xs {
        let lr = log_ratio(x).expect("scan grid points are validated positive");
        let dr = diff_ratio(x).expect("scan grid points are validated positive");
        out.push_str(&format!("{x},{lr},{dr}\n"));
    }
    out
}

fn cmd_scan(args: ScanArgs) -> CliResult<ExitCode> {
    let mut grid = GridSpec::default();
    if let Some(min) = args.min {
        grid.min = min;
    }
    if let Some(max) = args.max {
        grid.max = max;
    }
    if let Some(count) = args.count {
        grid.count = count;
    }
    if let Some(refine) = args.refine {
        grid.refine = refine;
    }
    let run = RunConfig {
        grid,
        out: args.output.out.clone(),
        format: args.output.format,
        ..RunConfig::default()
    };

    let start = Instant::now();
    let report = meanlab::chains::scan_ratio(args.target.target(), run.grid)?;
    let elapsed_ms = start.elapsed().as_millis();

    let path = run.resolve_out(args.target.stem());
    write_report(&path, run.format, &report, || scan_csv(&report))?;
    outln!(
        "{}: extremum {} at x = {} over {} grid points (report {}, {} ms)",
        match args.target {
            ScanTargetArg::SharpT => "sharp-t",
            ScanTargetArg::SharpS => "sharp-s",
        },
        report.extremum,
        report.extremum_x,
        report.xs.len(),
        path.display(),
        elapsed_ms
    );
    Ok(ExitCode::SUCCESS)
}

fn eigen_csv(report: &EigenReport) -> String {
    let mut out = String::from("index,eigenvalue\n");
    for (i, e) in report.eigenvalues.iter().enumerate() {
        out.push_str(&format!("{i},{e}\n"));
    }
    out
}

fn parse_strategy(token: &str, lo: f64, hi: f64) -> CliResult<SearchStrategy> {
    match token {
        "integer-grid" | "grid" => Ok(SearchStrategy::IntegerGrid),
        "random-uniform" | "random" => Ok(SearchStrategy::RandomUniform { lo, hi }),
        "anneal" => Ok(SearchStrategy::Anneal { lo, hi }),
        other => Err(format!(
            "unknown search strategy `{other}` (expected integer-grid, random-uniform, or anneal)"
        )
        .into()),
    }
}

fn cmd_kernel(args: KernelArgs) -> CliResult<ExitCode> {
    let family: KernelFamily = args.family.parse()?;
    let tol = args.tol.unwrap_or(DEFAULT_KERNEL_TOL);
    let run = RunConfig {
        seed: args.seed.unwrap_or(DEFAULT_SEED),
        tolerance: args.tol,
        out: args.output.out.clone(),
        format: args.output.format,
        ..RunConfig::default()
    };
    let path = run.resolve_out("kernel");

    if let Some(points) = args.points {
        let start = Instant::now();
        let report = gram(&family, &points, tol)?;
        let elapsed_ms = start.elapsed().as_millis();
        write_report(&path, run.format, &report, || eigen_csv(&report))?;
        outln!(
            "{} on {} points: min eigenvalue {:e}, {} (report {}, {} ms)",
            report.family,
            report.points.len(),
            report.min_eigenvalue,
            if report.psd {
                "positive semidefinite within tolerance"
            } else {
                "not positive semidefinite"
            },
            path.display(),
            elapsed_ms
        );
        return Ok(if report.psd { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }

    let search = args.search.as_ref().expect("clap enforces exactly one mode");
    let n_points: usize = search[0]
        .parse()
        .map_err(|_| format!("search point count `{}` is not an integer", search[0]))?;
    let strategy = parse_strategy(&search[1], args.lo, args.hi)?;
    let budget: usize = search[2]
        .parse()
        .map_err(|_| format!("search budget `{}` is not an integer", search[2]))?;
    let config = SearchConfig {
        n_points,
        strategy,
        budget,
        seed: run.seed,
        tol,
    };

    let start = Instant::now();
    let witness = search_counterexample(&family, &config)?;
    let elapsed_ms = start.elapsed().as_millis();
    match witness {
        Some(report) => {
            write_report(&path, run.format, &report, || eigen_csv(&report))?;
            outln!(
                "{}: witness with min eigenvalue {:e} at points {:?} (report {}, {} ms)",
                report.family, report.min_eigenvalue, report.points, path.display(), elapsed_ms
            );
            Ok(ExitCode::from(1))
        }
        None => {
            outln!(
                "{family}: no witness within budget {budget} ({elapsed_ms} ms)"
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_reproduce(args: ReproduceArgs) -> CliResult<ExitCode> {
    let start = Instant::now();
    let report = reproduce()?;
    let elapsed_ms = start.elapsed().as_millis();

    for check in &report.checks {
        outln!(
            "{}  {}: expected {}, computed {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.label,
            check.expected,
            check.computed
        );
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    outln!(
        "{} checks, {} failed ({} ms)",
        report.checks.len(),
        failed,
        elapsed_ms
    );

    if let Some(path) = args.out {
        write_report(&path, args.format, &report, || {
            let mut out = String::from("label,expected,computed,pass\n");
            for c in &report.checks {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    csv_field(&c.label),
                    csv_field(&c.expected),
                    csv_field(&c.computed),
                    c.pass
                ));
            }
            out
        })?;
    }

    Ok(if report.all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
