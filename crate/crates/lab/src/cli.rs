//! Command-line front end.
//!
//! Exit codes: 0 verified or success, 1 property refuted, 2 usage or parse
//! error, 3 indeterminate (a round or candidate budget ran out).

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynamo_lab_core::analysis::{search_rounds, table1_bounds, SearchOptions};
use dynamo_lab_core::constructions::{self as cons, Claim, ConstructionReport};
use dynamo_lab_core::dynamics::{default_max_rounds, Rule, RunOptions, Simulator, Verdict, Verification};
use dynamo_lab_core::{TorusShape, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{LabError, LabResult};
use crate::limits::shape;
use crate::table::{self, Model};
use crate::{config_file, parallel, pgm};

pub const EXIT_OK: u8 = 0;
pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INDETERMINATE: u8 = 3;

/// Seed used for random configurations when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5eed_d1a0;

/// Default largest torus the search will enumerate.
pub const DEFAULT_SEARCH_CAP: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "dynamo-lab", version, about = "Threshold dynamos on the torus T_n^d")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a configuration with one of the explicit constructions.
    Construct(ConstructArgs),
    /// Run a process and print the number of active vertices per round.
    Simulate(SimulateArgs),
    /// Check that a configuration is a (monotone) dynamo.
    Verify(VerifyArgs),
    /// Find a smallest dynamo by exhaustive enumeration.
    Search(SearchArgs),
    /// Tabulate known leading terms against constructed sizes as CSV.
    Table(TableArgs),
    /// Write one PGM frame per round of a two-dimensional process.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// irreversible r-bootstrap percolation
    Bp,
    /// reversible r-bootstrap percolation
    Rbp,
    /// majority, keeping the current state on ties
    Maj,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Bp => Model::Bp,
            ModelArg::Rbp => Model::Rbp,
            ModelArg::Maj => Model::Maj,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    /// H ∪ S, monotone dynamo of rbp(r) for d < r ≤ 2d
    LargeR,
    /// halved H ∪ S, dynamo of bp(r) for d < r ≤ 2d
    LargeRBp,
    /// sub-torus copies, monotone dynamo of rbp(r) for r ≤ d
    SmallRMonotone,
    /// halved sub-torus copies, dynamo of bp(r) for r ≤ d
    SmallRBp,
    /// activator sub-torus copies, dynamo of rbp(r) for r ≤ d and odd n
    SmallROdd,
    /// the parity class A_0, dynamo of rbp(r) for r ≤ d and odd n
    A0,
    /// H ∪ S for the majority rule
    Majority,
}

impl ConstructionArg {
    fn token(self) -> &'static str {
        match self {
            ConstructionArg::LargeR => "large-r",
            ConstructionArg::LargeRBp => "large-r-bp",
            ConstructionArg::SmallRMonotone => "small-r-monotone",
            ConstructionArg::SmallRBp => "small-r-bp",
            ConstructionArg::SmallROdd => "small-r-odd",
            ConstructionArg::A0 => "a0",
            ConstructionArg::Majority => "majority",
        }
    }

    fn model(self) -> Model {
        match self {
            ConstructionArg::LargeRBp | ConstructionArg::SmallRBp => Model::Bp,
            ConstructionArg::Majority => Model::Maj,
            _ => Model::Rbp,
        }
    }

    fn needs_r(self) -> bool {
        !matches!(self, ConstructionArg::A0 | ConstructionArg::Majority)
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    /// Threshold; for `a0` any 1 ≤ r ≤ d (default d), ignored by `majority`.
    #[arg(long)]
    pub r: Option<usize>,
    /// Must agree with the construction's model when given.
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    #[arg(long, value_enum)]
    pub construction: ConstructionArg,
    /// Configuration file to write [default: <construction>-n<n>-d<d>.cfg]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Where the initial configuration comes from: exactly one of a file, a
/// construction, or a random draw.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Configuration file (`torus n d` header, hex bit-vector).
    #[arg(long)]
    pub seed_file: Option<PathBuf>,
    /// Start from a construction (needs --n, --d and usually --r).
    #[arg(long, value_enum)]
    pub construction: Option<ConstructionArg>,
    /// Start from a random configuration with this activation probability
    /// (needs --n and --d).
    #[arg(long)]
    pub random_density: Option<f64>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Seed for --random-density.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Threshold for bp and rbp.
    #[arg(long)]
    pub r: Option<usize>,
    /// Round budget [default: 4·d·n + 16]
    #[arg(long)]
    pub max_rounds: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Write the last simulated configuration here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Require a monotone dynamo (no vertex ever deactivates).
    #[arg(long)]
    pub monotone: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Only count monotone dynamos.
    #[arg(long)]
    pub monotone: bool,
    /// Maximum number of candidates to test.
    #[arg(long, default_value_t = u64::MAX)]
    pub budget: u64,
    /// Enumerate every candidate instead of fixing vertex 0.
    #[arg(long)]
    pub no_symmetry: bool,
    /// Round budget per simulated candidate [default: 2·d·n^d + 16]
    #[arg(long)]
    pub max_rounds: Option<usize>,
    /// Worker threads [default: available parallelism]
    #[arg(long)]
    pub threads: Option<usize>,
    /// Largest n^d the search accepts.
    #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
    pub max_cells: usize,
    /// Write the witness configuration here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Dimensions, as `a..b` (inclusive) or `a,b,c`.
    #[arg(long, value_parser = parse_list)]
    pub d: NumList,
    /// Thresholds (ignored for maj), same syntax.
    #[arg(long, value_parser = parse_list, default_value = "1")]
    pub r: NumList,
    /// Side lengths, same syntax.
    #[arg(long, value_parser = parse_list)]
    pub n: NumList,
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Tabulate monotone dynamos.
    #[arg(long)]
    pub monotone: bool,
    /// CSV file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Path prefix: frames go to <out>_NNNN.pgm, the index to <out>_index.txt.
    #[arg(long)]
    pub out: PathBuf,
}

/// A list of integers given as `a..b` (inclusive) or `a,b,c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumList(pub Vec<usize>);

fn parse_list(s: &str) -> Result<NumList, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    if let Some((a, b)) = s.split_once("..") {
        let range: RangeInclusive<usize> = num(a)?..=num(b)?;
        return Ok(NumList(range.collect()));
    }
    s.split(',').filter(|t| !t.trim().is_empty()).map(num).collect::<Result<_, _>>().map(NumList)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> LabResult<u8> {
    match cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Search(a) => search(a, out),
        Command::Table(a) => table_cmd(a, out),
        Command::Render(a) => render(a, out),
    }
}

fn emit(out: &mut dyn Write, line: std::fmt::Arguments) -> LabResult<()> {
    writeln!(out, "{line}").map_err(|e| LabError::io("stdout", e))
}

fn need_r(r: Option<usize>, what: &str) -> LabResult<usize> {
    r.ok_or_else(|| LabError::Usage(format!("{what} needs --r")))
}

fn rule_of(args: &RuleArgs) -> LabResult<Rule> {
    Ok(match args.model {
        ModelArg::Maj => Rule::Majority,
        m => Model::from(m).rule(need_r(args.r, "this model")?),
    })
}

/// Runs the builder named by `token` on `s`.
pub fn build(token: ConstructionArg, s: TorusShape, r: Option<usize>) -> LabResult<ConstructionReport> {
    let r = match (token.needs_r(), r) {
        (true, r) => need_r(r, &format!("construction {}", token.token()))?,
        (false, r) => r.unwrap_or(s.d()),
    };
    let rep = match token {
        ConstructionArg::LargeR => cons::build_large_r_monotone(s, r)?,
        ConstructionArg::LargeRBp => cons::build_large_r_bp(s, r)?,
        ConstructionArg::SmallRMonotone => cons::build_small_r_monotone(s, r)?,
        ConstructionArg::SmallRBp => cons::build_small_r_bp(s, r)?,
        ConstructionArg::SmallROdd => cons::build_small_r_reversible_odd(s, r)?,
        ConstructionArg::A0 => {
            if r == 0 || r > s.d() {
                return Err(dynamo_lab_core::Error::InvalidThreshold { r, min: 1, max: s.d() }.into());
            }
            ConstructionReport { model: Rule::ReversibleBp(r), ..cons::build_a0(s)? }
        }
        ConstructionArg::Majority => cons::build_majority_dynamo(s)?,
    };
    Ok(rep)
}

fn claim_token(c: Claim) -> &'static str {
    match c {
        Claim::Dynamo => "dynamo",
        Claim::MonotoneDynamo => "monotone-dynamo",
        Claim::A0Activator => "a0-activator",
    }
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> LabResult<u8> {
    let s = shape(a.n, a.d)?;
    if let Some(m) = a.model {
        let want = a.construction.model();
        if Model::from(m) != want {
            return Err(LabError::Usage(format!(
                "construction {} runs under {}, not {}",
                a.construction.token(),
                want.token(),
                Model::from(m).token()
            )));
        }
    }
    let rep = build(a.construction, s, a.r)?;
    let path = a.out.unwrap_or_else(|| PathBuf::from(format!("{}-n{}-d{}.cfg", a.construction.token(), a.n, a.d)));
    config_file::write(&path, &rep.config)?;
    let monotone = rep.claim == Claim::MonotoneDynamo;
    let table1 = table1_bounds(a.d, rep.model, a.n, monotone)?.upper;
    emit(
        out,
        format_args!(
            "{} on {s}: claim={} model={} size={}, bound={}, table1={}, allowance={}·n^{} -> {}",
            rep.name,
            claim_token(rep.claim),
            rep.model,
            rep.size(),
            rep.predicted_size_bound,
            table1,
            rep.allowance,
            rep.allowance_exponent,
            path.display()
        ),
    )?;
    Ok(EXIT_OK)
}

fn load(input: &InputArgs, r: Option<usize>) -> LabResult<VertexSet> {
    if let Some(path) = &input.source.seed_file {
        return config_file::read(path);
    }
    let dims = || -> LabResult<TorusShape> {
        match (input.n, input.d) {
            (Some(n), Some(d)) => shape(n, d),
            _ => Err(LabError::Usage("this input needs --n and --d".into())),
        }
    };
    if let Some(token) = input.source.construction {
        return Ok(build(token, dims()?, r)?.config);
    }
    let p = input.source.random_density.expect("clap requires one source");
    if !(0.0..=1.0).contains(&p) {
        return Err(LabError::Usage(format!("--random-density must lie in [0, 1], got {p}")));
    }
    let s = dims()?;
    let mut rng = ChaCha8Rng::seed_from_u64(input.seed);
    Ok(VertexSet::from_fn(s, |_| rng.gen_bool(p)))
}

fn rounds(args: &RuleArgs, s: TorusShape) -> usize {
    args.max_rounds.unwrap_or_else(|| default_max_rounds(s))
}

fn describe(v: Verdict) -> String {
    match v {
        Verdict::Percolated { round } => format!("percolated at t={round}"),
        Verdict::Cycle { entry, period } => format!("cycle of period {period} at t={entry}"),
        Verdict::BudgetExhausted { limit } => format!("no verdict within {limit} rounds"),
        Verdict::Decreased { round } => format!("a vertex deactivated at t={round}"),
    }
}

fn simulate(a: SimulateArgs, out: &mut dyn Write) -> LabResult<u8> {
    let config = load(&a.input, a.rule.r)?;
    let s = config.shape();
    let rule = rule_of(&a.rule)?;
    rule.validate(s)?;
    let opts = RunOptions::for_shape(s).max_rounds(rounds(&a.rule, s)).with_trace();
    let outcome = Simulator::new(s).run(&config, rule, opts);
    let trace = outcome.trace.as_deref().unwrap_or_default();
    for (t, state) in trace.iter().enumerate() {
        emit(out, format_args!("t={t} active={}", state.cardinality()))?;
    }
    emit(out, format_args!("{} ({rule} on {s}, monotone={})", describe(outcome.verdict), outcome.monotone))?;
    if let (Some(path), Some(last)) = (&a.out, trace.last()) {
        config_file::write(path, last)?;
    }
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> LabResult<u8> {
    let config = load(&a.input, a.rule.r)?;
    let s = config.shape();
    let rule = rule_of(&a.rule)?;
    rule.validate(s)?;
    let check = Simulator::new(s).check(&config, rule, a.monotone, rounds(&a.rule, s));
    let what = if a.monotone { "monotone dynamo" } else { "dynamo" };
    let detail = describe(check.outcome.verdict);
    let (word, code) = match check.verification {
        Verification::Verified => ("verified", EXIT_OK),
        Verification::Refuted => ("refuted", EXIT_REFUTED),
        Verification::Indeterminate => ("indeterminate", EXIT_INDETERMINATE),
    };
    emit(out, format_args!("{word}: {detail} ({what}, {rule} on {s}, size {})", config.cardinality()))?;
    Ok(code)
}

fn search(a: SearchArgs, out: &mut dyn Write) -> LabResult<u8> {
    let s = shape(a.n, a.d)?;
    if s.vertex_count() > a.max_cells {
        return Err(LabError::Usage(format!(
            "{s} has {} vertices; the search is capped at {} (raise with --max-cells)",
            s.vertex_count(),
            a.max_cells
        )));
    }
    let rule = match a.model {
        ModelArg::Maj => Rule::Majority,
        m => Model::from(m).rule(need_r(a.r, "this model")?),
    };
    let opts = SearchOptions {
        budget: a.budget,
        symmetry_pruning: !a.no_symmetry,
        max_rounds: a.max_rounds.unwrap_or_else(|| search_rounds(s)),
    };
    let threads = a.threads.unwrap_or_else(parallel::default_threads);
    let res = parallel::min_dynamo_search_par(s, rule, a.monotone, opts, threads)?;
    let witness: Vec<String> = res.witness.iter().map(|v| s.coords_of(v).to_string()).collect();
    emit(
        out,
        format_args!(
            "min={} witness=[{}] examined={} exhaustive={} ({rule}{} on {s})",
            res.minimum,
            witness.join(", "),
            res.examined,
            res.exhaustive,
            if a.monotone { ", monotone" } else { "" }
        ),
    )?;
    if let Some(path) = &a.out {
        config_file::write(path, &res.witness)?;
    }
    Ok(if res.exhaustive { EXIT_OK } else { EXIT_INDETERMINATE })
}

fn table_cmd(a: TableArgs, out: &mut dyn Write) -> LabResult<u8> {
    let rows = table::rows(&a.d.0, &a.r.0, &a.n.0, a.model.into(), a.monotone);
    match &a.out {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| LabError::io(path.display().to_string(), e))?;
            table::write_csv(&rows, file)?;
        }
        None => table::write_csv(&rows, &mut *out)?,
    }
    Ok(EXIT_OK)
}

fn frame_path(prefix: &Path, round: usize) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(format!("_{round:04}.pgm"));
    PathBuf::from(name)
}

fn render(a: RenderArgs, out: &mut dyn Write) -> LabResult<u8> {
    let config = load(&a.input, a.rule.r)?;
    let s = config.shape();
    if s.d() != 2 {
        return Err(LabError::Usage(format!("render needs a two-dimensional torus, got {s}")));
    }
    let rule = rule_of(&a.rule)?;
    rule.validate(s)?;
    let opts = RunOptions::for_shape(s).max_rounds(rounds(&a.rule, s)).with_trace();
    let outcome = Simulator::new(s).run(&config, rule, opts);
    let trace = outcome.trace.expect("trace requested");
    // stop before the first repeated state
    let frames = match outcome.verdict {
        Verdict::Cycle { entry, period } => entry + period,
        _ => trace.len(),
    };
    let mut index = String::new();
    for (round, state) in trace.iter().take(frames).enumerate() {
        let path = frame_path(&a.out, round);
        fs::write(&path, pgm::encode(state)).map_err(|e| LabError::io(path.display().to_string(), e))?;
        index.push_str(&format!("{round} {}\n", path.display()));
    }
    index.push_str(&format!("# {}\n", describe(outcome.verdict)));
    let mut index_path = a.out.as_os_str().to_owned();
    index_path.push("_index.txt");
    let index_path = PathBuf::from(index_path);
    fs::write(&index_path, index).map_err(|e| LabError::io(index_path.display().to_string(), e))?;
    emit(out, format_args!("{frames} frames, {} -> {}", describe(outcome.verdict), index_path.display()))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_syntax() {
        assert_eq!(parse_list("9..12").unwrap().0, vec![9, 10, 11, 12]);
        assert_eq!(parse_list("4,5").unwrap().0, vec![4, 5]);
        assert!(parse_list("5..4").unwrap().0.is_empty());
        assert!(parse_list("x").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
