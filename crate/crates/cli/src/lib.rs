//! Batch front end: parse problem files, dispatch computations and
//! verification suites, emit machine-readable reports.

pub mod problem;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use seccyc::complexes::{
    cyclic_quotient_complex, cyclic_subcomplex, secondary_chain_complex, secondary_cochain_complex, triple_chain_complex,
    triple_cochain_complex, ChainComplex,
};
use seccyc::homology::homology_dims;
use seccyc::structure::{regular_bimodule, Bimodule};
use seccyc::suites::{run_suite, Check, Suite, SuiteOptions, SuiteOutcome};
use seccyc::{Field, FieldSpec, PrimeField, Rationals};

use problem::{build, field_of, load, Loaded};
use report::{BettiEntry, BettiTable, Content, RunReport, Settings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theory {
    SecCohomology,
    SecHomology,
    HhCohomology,
    HhHomology,
    HcCohomology,
    HcHomology,
}

impl Theory {
    fn name(self) -> &'static str {
        match self {
            Theory::SecCohomology => "sec-cohomology",
            Theory::SecHomology => "sec-homology",
            Theory::HhCohomology => "hh-cohomology",
            Theory::HhHomology => "hh-homology",
            Theory::HcCohomology => "hc-cohomology",
            Theory::HcHomology => "hc-homology",
        }
    }

    fn cyclic(self) -> bool {
        matches!(self, Theory::HcCohomology | Theory::HcHomology)
    }

    fn secondary(self) -> bool {
        matches!(self, Theory::SecCohomology | Theory::SecHomology)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Simplicial,
    Operators,
    Acyclicity,
    ConnesCo,
    ConnesHo,
    Oracle,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Simplicial => vec![Suite::Simplicial],
            SuiteArg::Operators => vec![Suite::Operators],
            SuiteArg::Acyclicity => vec![Suite::Acyclicity],
            SuiteArg::ConnesCo => vec![Suite::ConnesCo],
            SuiteArg::ConnesHo => vec![Suite::ConnesHo],
            SuiteArg::Oracle => vec![Suite::Oracle],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "seccyc", version, about = "Secondary Hochschild and cyclic (co)homology of algebra triples")]
pub struct Cli {
    /// Ground field, `Q` or `Fp:<p>`; overrides the problem file
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Format printed to standard output
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Directory for report.json and betti.csv
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for sampled checks
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Largest admissible space dimension
    #[arg(long, global = true)]
    pub cap: Option<u64>,

    /// Run cyclic theories and exact sequences over a prime field
    #[arg(long, global = true)]
    pub allow_positive_characteristic: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of every object in a problem file
    Validate { file: PathBuf },
    /// Compute Betti numbers of one theory
    Compute {
        #[arg(long, value_enum)]
        theory: Theory,
        /// `M` (the file's bimodule) or `A` (the regular bimodule)
        #[arg(long)]
        coefficients: Option<String>,
        #[arg(long)]
        max_degree: Option<usize>,
        file: PathBuf,
    },
    /// Run verification suites
    Verify {
        /// Defaults to the file's `options.suites`, else `all`
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
        file: PathBuf,
    },
}

/// A run outcome: the report (when one is produced) and the exit code.
pub struct Outcome {
    pub report: Option<RunReport>,
    pub code: i32,
}

fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<seccyc::Error>() {
        Some(seccyc::Error::DegreeTooLarge { .. }) => EXIT_CAP,
        Some(seccyc::Error::Internal(_) | seccyc::Error::SesNotExact { .. } | seccyc::Error::NotAChainMap(_)) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Parses arguments, runs, writes reports and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            if let Some(r) = &o.report {
                if let Err(e) = emit(&cli, r) {
                    eprintln!("error: {e:#}");
                    return EXIT_USAGE;
                }
            }
            o.code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn emit(cli: &Cli, r: &RunReport) -> Result<()> {
    if let Some(dir) = &cli.out {
        r.write(dir)?;
    }
    match cli.format {
        Format::Json => print!("{}", r.to_json()?),
        Format::Csv => print!("{}", r.to_csv()?),
    }
    Ok(())
}

fn file_of(cmd: &Command) -> &PathBuf {
    match cmd {
        Command::Validate { file } | Command::Compute { file, .. } | Command::Verify { file, .. } => file,
    }
}

/// Runs the parsed command without touching the filesystem beyond reading
/// the problem file.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let loaded = load(file_of(&cli.command))?;
    let spec = field_of(&loaded.problem, cli.field.as_deref())?;
    let jobs = cli.jobs.unwrap_or_else(rayon::current_num_threads).max(1);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let start = Instant::now();
    let content = pool.install(|| match spec {
        FieldSpec::Rationals => run_over(&Rationals, cli, &loaded),
        FieldSpec::PrimeField(p) => run_over(&PrimeField::new(p)?, cli, &loaded),
    })?;
    let Some((content, code)) = content else {
        return Ok(Outcome { report: None, code: EXIT_FAILED });
    };
    let report = RunReport::new(content, start.elapsed(), jobs)?;
    Ok(Outcome { report: Some(report), code })
}

fn settings(cli: &Cli, loaded: &Loaded) -> Settings {
    let o = &loaded.problem.options;
    Settings {
        seed: cli.seed.or(o.seed).unwrap_or(seccyc::simplicial::DEFAULT_SEED),
        cap: cli.cap.or(o.cap).unwrap_or(seccyc::tensor::DEFAULT_CAP as u64),
        allow_positive_characteristic: cli.allow_positive_characteristic,
        ..Settings::default()
    }
}

/// `None` means an invalid input for `compute`, which writes nothing.
fn run_over<K: Field>(k: &K, cli: &Cli, loaded: &Loaded) -> Result<Option<(Content, i32)>> {
    let mut content = Content {
        tool: "seccyc".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        input_digest: report::sha256_hex(&loaded.bytes),
        field: k.spec().to_string(),
        settings: settings(cli, loaded),
        ..Content::default()
    };
    let built = match build(k, &loaded.problem)? {
        Ok(b) => Some(b),
        Err(reports) => {
            content.validation = reports;
            None
        }
    };
    match &cli.command {
        Command::Validate { .. } => {
            content.command = "validate".into();
            content.passed = built.is_some();
            let code = if content.passed { EXIT_OK } else { EXIT_FAILED };
            Ok(Some((content, code)))
        }
        Command::Compute { theory, coefficients, max_degree, .. } => {
            content.command = "compute".into();
            let Some(b) = built else {
                for r in &content.validation {
                    eprint!("{r}");
                }
                return Ok(None);
            };
            let n = max_degree.or(loaded.problem.options.max_degree).unwrap_or(3);
            compute(k, &b, *theory, coefficients.as_deref(), n, &mut content)?;
            Ok(Some((content, EXIT_OK)))
        }
        Command::Verify { suite, .. } => {
            content.command = "verify".into();
            let Some(b) = built else {
                return Ok(Some((content, EXIT_FAILED)));
            };
            let (suites, all) = match suite {
                Some(a) => (a.suites(), *a == SuiteArg::All),
                None => file_suites(loaded.problem.options.suites.as_deref())?,
            };
            let code = verify(k, &b, suites, all, &mut content)?;
            Ok(Some((content, code)))
        }
    }
}

fn characteristic_warnings<K: Field>(k: &K, cyclic: bool, allow: bool, n: usize) -> Result<Vec<String>> {
    let p = k.characteristic();
    let mut w = Vec::new();
    if p == 0 {
        return Ok(w);
    }
    if cyclic && !allow {
        return Err(seccyc::Error::CharacteristicRefused(k.spec().to_string()).into());
    }
    w.push(format!("working over {}; the cyclic theories and exact sequences are stated in characteristic zero", k.spec()));
    if cyclic && p <= n as u64 + 1 {
        w.push(format!("p = {p} ≤ {}: the averaging 1/(n+1) is unavailable in some degree", n + 1));
    }
    Ok(w)
}

fn compute<K: Field>(
    k: &K,
    b: &problem::Built<K>,
    theory: Theory,
    coefficients: Option<&str>,
    n: usize,
    content: &mut Content,
) -> Result<()> {
    let t = &b.triple;
    let cap = content.settings.cap as u128;
    let allow = content.settings.allow_positive_characteristic;
    content.settings.theory = Some(theory.name().into());
    content.settings.max_degree = Some(n);
    content.warnings = characteristic_warnings(k, theory.cyclic(), allow, n)?;
    let module = if theory.secondary() {
        let (name, m) = select_module(t, b.module.as_ref(), coefficients)?;
        content.settings.coefficients = Some(name.clone());
        Some((name, m))
    } else {
        if coefficients.is_some() {
            content.warnings.push(format!("{} takes no coefficients; --coefficients ignored", theory.name()));
        }
        None
    };
    // one degree past the table so that every listed degree is windowed
    let top = n + 1;
    let c: ChainComplex<K> = match (theory, &module) {
        (Theory::SecCohomology, Some((_, m))) => secondary_cochain_complex(t, m, top, cap)?,
        (Theory::SecHomology, Some((_, m))) => secondary_chain_complex(t, m, top, cap)?,
        (Theory::HhCohomology, _) => triple_cochain_complex(t, top, cap)?,
        (Theory::HhHomology, _) => triple_chain_complex(t, top, cap)?,
        (Theory::HcCohomology, _) => cyclic_subcomplex(t, top, cap, allow)?.1.complex,
        (Theory::HcHomology, _) => cyclic_quotient_complex(t, top, cap, allow)?.1.complex,
        _ => bail!("no coefficient module"),
    };
    let h = homology_dims(&c);
    content.betti.push(BettiTable {
        theory: theory.name().into(),
        coefficients: module.map(|(name, _)| name),
        dims: c.dims()[..=n].to_vec(),
        degrees: h.degrees[..=n].iter().map(|d| BettiEntry { degree: d.degree, betti: d.betti, windowed: d.windowed }).collect(),
    });
    content.passed = true;
    Ok(())
}

fn select_module<K: Field>(
    t: &seccyc::structure::Triple<K>,
    file_module: Option<&Bimodule<K>>,
    choice: Option<&str>,
) -> Result<(String, Bimodule<K>)> {
    match (choice, file_module) {
        (Some("M") | None, Some(m)) => Ok(("M".into(), m.clone())),
        (Some("M"), None) => Err(anyhow!(seccyc::Error::Missing("the problem file has no bimodule M".into()))),
        (Some("A") | None, _) => Ok(("A".into(), regular_bimodule(&t.a))),
        (Some(other), _) => Err(anyhow!(seccyc::Error::Parse(format!("unknown coefficients '{other}' (expected M or A)")))),
    }
}

/// Suites named in a problem file; `all` or an absent list selects every suite.
fn file_suites(names: Option<&[String]>) -> Result<(Vec<Suite>, bool)> {
    let names = match names {
        None | Some([]) => return Ok((Suite::ALL.to_vec(), true)),
        Some(n) => n,
    };
    if names.iter().any(|n| n == "all") {
        return Ok((Suite::ALL.to_vec(), true));
    }
    let mut suites = Vec::new();
    for n in names {
        let s: Suite = n.parse()?;
        if !suites.contains(&s) {
            suites.push(s);
        }
    }
    suites.sort_by_key(|s| Suite::ALL.iter().position(|x| x == s));
    Ok((suites, false))
}

fn verify<K: Field>(k: &K, b: &problem::Built<K>, mut suites: Vec<Suite>, all: bool, content: &mut Content) -> Result<i32> {
    let allow = content.settings.allow_positive_characteristic;
    let opts = SuiteOptions {
        seed: content.settings.seed,
        cap: content.settings.cap as u128,
        allow_positive_characteristic: allow,
        ..SuiteOptions::default()
    };
    if k.characteristic() != 0 {
        if suites.iter().any(|s| s.cyclic()) && !allow {
            if !all {
                return Err(seccyc::Error::CharacteristicRefused(k.spec().to_string()).into());
            }
            suites.retain(|s| !s.cyclic());
            content.warnings.push("exact-sequence suites skipped: they need characteristic zero or the override".into());
        }
        content.warnings.extend(characteristic_warnings(k, false, allow, opts.connes_top)?);
    }
    content.settings.suites = suites.iter().map(|s| s.name().to_string()).collect();

    let mut modules: Vec<(&str, Bimodule<K>)> = vec![("A", regular_bimodule(&b.triple.a))];
    if let Some(m) = &b.module {
        modules.push(("M", m.clone()));
    }
    let results: Vec<(Suite, seccyc::Result<SuiteOutcome>)> =
        suites.par_iter().map(|&s| (s, run_suite(&b.triple, &modules, s, &opts))).collect();

    let mut code = EXIT_OK;
    for (suite, r) in results {
        let outcome = match r {
            Ok(o) => o,
            Err(e) => {
                if matches!(e, seccyc::Error::DegreeTooLarge { .. }) {
                    code = EXIT_CAP;
                }
                SuiteOutcome { suite, checks: vec![Check::new("suite ran to completion", false, || e.to_string())], notes: Vec::new() }
            }
        };
        if !outcome.passed() && code == EXIT_OK {
            code = EXIT_FAILED;
        }
        content.suites.push(outcome);
    }
    content.passed = content.suites.iter().all(|s| s.passed());
    Ok(code)
}
