//! Command-line front end: argument parsing, command dispatch and reports.

pub mod config;
pub mod properties;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gfcoh::algebra::{Variety, VarietyKind};
use gfcoh::cochain::stabilized_gf_cohomology;
use gfcoh::coefficients::LPlusModule;
use gfcoh::derham::derham_table;
use gfcoh::kunneth::{compare_main_theorem, lplus_table, lplus_truncation, MainTheoremReport, Verdict};
use gfcoh::util::{binomial, q};
use gfcoh::Error;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use config::{ConfigError, Defaults, FileConfig, RunConfig};
use report::{
    DerhamResult, FullReport, GfResult, LplusResult, Outcome, Report, Status, EXIT_COMPARISON, EXIT_CONFIG, SCHEMA,
};

#[derive(Debug, Parser)]
#[command(name = "gfcoh", version, about = "Exact Gelfand-Fuks cohomology of polynomial vector fields")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Write the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Size of the worker pool (reports do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON configuration file; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Print wall-clock timings to stderr.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ProblemArgs {
    /// affine, torus or sphere (a projective line punctured at ∞ and the given points).
    #[arg(long)]
    pub variety: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Finite punctures of a sphere, comma-separated rationals.
    #[arg(long)]
    pub punctures: Option<String>,
    /// trivial, weight:λ, standard or adjoint:d.
    #[arg(long)]
    pub module: Option<String>,
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Largest cochain order for the direct computation.
    #[arg(long)]
    pub pmax: Option<u32>,
    /// De Rham window size.
    #[arg(long)]
    pub truncation: Option<u32>,
    /// Minimal degree truncation of L₊.
    #[arg(long)]
    pub lplus_truncation: Option<u32>,
    /// Multidegree for the direct computation, comma-separated (default zero).
    #[arg(long)]
    pub weight: Option<String>,
    /// Cases per randomized property.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// De Rham cohomology of a variety.
    Derham(ProblemArgs),
    /// Cohomology of L₊ or the stabilized Gelfand-Fuks cohomology.
    Cohomology {
        #[command(subcommand)]
        which: CohomologyKind,
    },
    /// Comparisons and randomized identity checks.
    Verify {
        #[command(subcommand)]
        which: VerifyKind,
    },
    /// The full table of de Rham, L₊ and main-theorem results.
    Report(ProblemArgs),
}

#[derive(Debug, Subcommand)]
pub enum CohomologyKind {
    Lplus(ProblemArgs),
    Gf(ProblemArgs),
}

#[derive(Debug, Subcommand)]
pub enum VerifyKind {
    /// Direct computation against the de Rham ⊛ L₊ side.
    Main(ProblemArgs),
    StarLeibniz(ProblemArgs),
    Properties(ProblemArgs),
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Config(String),
    Compute(Error),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAComplex { .. } | Error::InconsistentComplex { .. } => Failure::Compute(e),
            other => Failure::Config(other.to_string()),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution {
                    code: EXIT_CONFIG,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Execution {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    let result = execute(&cli);
    let elapsed = start.elapsed().as_secs_f64();
    let mut stderr = String::new();
    let (code, stdout) = match result {
        Ok(report) => {
            let out = if cli.global.json { report.to_json() } else { report.to_text() };
            (report.status.exit_code, out)
        }
        Err(Failure::Config(msg)) => {
            stderr.push_str(&format!("error: {msg}\n"));
            (EXIT_CONFIG, String::new())
        }
        Err(Failure::Compute(e)) => {
            stderr.push_str(&format!("error: {e}\n"));
            (EXIT_COMPARISON, String::new())
        }
    };
    if cli.global.timings {
        stderr.push_str(&format!("timings: total {elapsed:.3}s\n"));
    }
    Execution { code, stdout, stderr }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let file = match &cli.global.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let threads = cli.global.threads.or(file.threads).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Config(e.to_string()))?;
    let (name, args, k_default) = match &cli.command {
        Command::Derham(a) => ("derham", a, 3),
        Command::Cohomology { which: CohomologyKind::Lplus(a) } => ("cohomology lplus", a, 3),
        Command::Cohomology { which: CohomologyKind::Gf(a) } => ("cohomology gf", a, 2),
        Command::Verify { which: VerifyKind::Main(a) } => ("verify main", a, 2),
        Command::Verify { which: VerifyKind::StarLeibniz(a) } => ("verify star-leibniz", a, 2),
        Command::Verify { which: VerifyKind::Properties(a) } => ("verify properties", a, 2),
        Command::Report(a) => ("report", a, 2),
    };
    let config = RunConfig::resolve(args, &file, cli.global.seed, Defaults { k_max: k_default })?;
    let (status, result) = pool.install(|| dispatch(name, &config))?;
    Ok(Report {
        schema: SCHEMA,
        command: name.into(),
        config,
        status,
        result,
    })
}

fn dispatch(name: &str, c: &RunConfig) -> Result<(Status, Outcome), Failure> {
    match name {
        "derham" => {
            let r = derham(&c.variety()?, c.truncation)?;
            let status = Status::new(r.dims == r.expected, r.rows.iter().all(|x| x.stabilized));
            Ok((status, Outcome::Derham(r)))
        }
        "cohomology lplus" => {
            let r = lplus(&c.module()?, c.k_max, c.lplus_truncation)?;
            Ok((Status::new(true, r.table.all_stabilized()), Outcome::Lplus(r)))
        }
        "cohomology gf" => {
            let v = c.variety()?;
            let w = c.module()?;
            let weight = c.weight(v.dim())?;
            let rows = (0..=c.k_max)
                .into_par_iter()
                .map(|k| stabilized_gf_cohomology(&v, &w, k, &weight, c.p_max))
                .collect::<gfcoh::Result<Vec<_>>>()?;
            let status = Status::new(true, rows.iter().all(|r| r.stabilized));
            Ok((
                status,
                Outcome::Gf(GfResult {
                    variety: v.name(),
                    module: w.label().into(),
                    p_max: c.p_max,
                    dims: rows.iter().map(|r| r.value()).collect(),
                    rows,
                }),
            ))
        }
        "verify main" => {
            let r = compare_main_theorem(&c.variety()?, &c.module()?, c.k_max, c.p_max, c.truncation)?;
            Ok((Status::new(r.consistent(), settled(&r)), Outcome::MainTheorem(r)))
        }
        "verify star-leibniz" => {
            let t = properties::star_leibniz(&c.variety()?, &c.module()?, c.samples, c.seed)?;
            Ok((Status::new(t.ok(), true), Outcome::Properties { tallies: vec![t] }))
        }
        "verify properties" => {
            let tallies = properties::all(&c.variety()?, &c.module()?, c.samples, c.seed)?;
            let ok = tallies.iter().all(|t| t.ok());
            Ok((Status::new(ok, true), Outcome::Properties { tallies }))
        }
        "report" => full_report(c),
        _ => unreachable!("unknown command {name}"),
    }
}

fn settled(r: &MainTheoremReport) -> bool {
    r.rows.iter().all(|row| match row.verdict {
        Verdict::EqualStabilized => true,
        Verdict::RhsOnly => row.rhs_stabilized,
        _ => false,
    })
}

/// Closed-form Betti numbers: a point for affine space, binomials for the
/// torus, `(1, m)` for a sphere with `m` finite punctures.
pub fn expected_derham(v: &VarietyKind) -> Vec<usize> {
    let n = v.dim();
    match v {
        VarietyKind::Affine(_) => (0..=n).map(|i| usize::from(i == 0)).collect(),
        VarietyKind::Torus(_) => (0..=n)
            .map(|i| binomial(n as i64, i as u64).to_usize().expect("small binomial"))
            .collect(),
        VarietyKind::PuncturedSphere(p) => vec![1, p.len()],
    }
}

fn derham(v: &Variety, truncation: u32) -> gfcoh::Result<DerhamResult> {
    let rows = derham_table(v, truncation)?;
    Ok(DerhamResult {
        variety: v.name(),
        truncation,
        dims: rows.iter().map(|r| r.dim).collect(),
        expected: expected_derham(v),
        rows,
    })
}

fn lplus(w: &LPlusModule, k_max: usize, min_truncation: u32) -> gfcoh::Result<LplusResult> {
    Ok(LplusResult {
        module: w.label().into(),
        truncation: lplus_truncation(w, min_truncation),
        table: lplus_table(w, k_max, min_truncation)?,
    })
}

fn full_report(c: &RunConfig) -> Result<(Status, Outcome), Failure> {
    let mut varieties = Vec::new();
    for n in 1..=3 {
        varieties.push(VarietyKind::affine(n)?);
        varieties.push(VarietyKind::torus(n)?);
    }
    for m in 1..=3 {
        varieties.push(VarietyKind::punctured_sphere((0..m).map(q).collect())?);
    }
    let derham_rows = varieties
        .par_iter()
        .map(|v| derham(v, c.truncation))
        .collect::<gfcoh::Result<Vec<_>>>()?;
    let line = [0, 1, -1].map(|l| if l == 0 { LPlusModule::trivial(1) } else { LPlusModule::weight(q(l)) });
    let lplus_rows = line
        .par_iter()
        .map(|w| lplus(w, c.k_max.max(3), c.lplus_truncation))
        .collect::<gfcoh::Result<Vec<_>>>()?;
    let a1 = VarietyKind::affine(1)?;
    let t1 = VarietyKind::torus(1)?;
    let mut cases: Vec<(Variety, LPlusModule)> = line.iter().map(|w| (a1.clone(), w.clone())).collect();
    cases.push((t1, LPlusModule::trivial(1)));
    for m in 1..=3 {
        let s = VarietyKind::punctured_sphere((0..m).map(q).collect())?;
        cases.push((s.clone(), line[0].clone()));
        cases.push((s, line[1].clone()));
    }
    let main_rows = cases
        .par_iter()
        .map(|(v, w)| compare_main_theorem(v, w, c.k_max, c.p_max, c.truncation))
        .collect::<gfcoh::Result<Vec<_>>>()?;
    let consistent =
        derham_rows.iter().all(|r| r.dims == r.expected) && main_rows.iter().all(MainTheoremReport::consistent);
    let stabilized = derham_rows.iter().all(|r| r.rows.iter().all(|x| x.stabilized))
        && lplus_rows.iter().all(|r| r.table.all_stabilized())
        && main_rows.iter().all(settled);
    Ok((
        Status::new(consistent, stabilized),
        Outcome::Full(FullReport {
            derham: derham_rows,
            lplus: lplus_rows,
            main_theorem: main_rows,
        }),
    ))
}
