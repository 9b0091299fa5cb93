//! Command-line front end. Exit codes: 0 pass, 1 mathematical failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::{HlxError, Result};
use crate::field::{FieldIo, FieldTask, RingSpec};
use crate::recipe::{build, Recipe, RecipeDoc};
use crate::report::{module_report, ModuleReport};
use crate::suites::blocks::blocks_report;
use crate::suites::cp0::cp0_suite;
use crate::suites::identities::{mutant_sides, verify_identities_with, IdentityGrid};
use crate::suites::lattice::lattice_report;
use crate::suites::paper::paper_report;
use crate::suites::steinberg::{steinberg, SteinbergReport};
use crate::suites::tpd::tpd_grid;

#[derive(Debug, Parser)]
#[command(name = "hlx", version, about = "Exact computations with modules for the hyper loop algebra of sl2")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Characteristic of the working field.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Degree of the finite field over F_p (1..=4).
    #[arg(long, global = true, default_value_t = 1)]
    pub ext_degree: u32,
    /// Seed for the randomised MeatAxe.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest divided power in the identity grid.
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    /// Loop-degree window for generators and lattice closure.
    #[arg(long, global = true)]
    pub rwindow: Option<i64>,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModuleAction {
    Build,
    Chop,
    Drinfeld,
    Dual,
    Twist,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the loop identities exactly over a parameter grid.
    VerifyIdentities {
        /// Negative control: perturb the Garland relation.
        #[arg(long, hide = true)]
        inject_mutant: bool,
    },
    /// Build a module from a JSON recipe and report on it.
    Module {
        action: ModuleAction,
        recipe: PathBuf,
        /// Frobenius power for `twist`.
        #[arg(long)]
        frobenius: Option<u32>,
        /// Loop rescaling parameter for `twist`.
        #[arg(long)]
        psi: Option<String>,
    },
    /// Tabulate V(λ) from base-p digits and certify irreducibility.
    Steinberg {
        #[arg(long, default_value_t = 12)]
        lambda_max: u32,
        /// Spectral parameter.
        #[arg(long, default_value = "1")]
        a: String,
    },
    /// Irreducibility of tensor products of twisted restricted evaluation modules.
    TpdGrid,
    /// Lattice lower bound against the saturation upper bound for coincident residues.
    ConjectureCp0 {
        #[arg(long, default_value_t = 3)]
        degmax: usize,
        /// Common residue of the roots.
        #[arg(long, default_value_t = 1)]
        residue: i64,
    },
    /// The two-point lattice example, symbolically and at sample values.
    PaperExample {
        #[arg(long, requires = "b")]
        a: Option<i64>,
        #[arg(long, requires = "a")]
        b: Option<i64>,
    },
    /// Partition module reports into blocks by spectral character.
    Blocks {
        /// Glob patterns of module report files.
        #[arg(required = true)]
        patterns: Vec<String>,
    },
    /// Lattice through the top (or given) vector of a module over a DVR.
    Lattice { recipe: PathBuf },
}

/// What a command produced.
pub struct Outcome {
    pub json: Value,
    pub summary: String,
    pub pass: bool,
}

impl Outcome {
    fn new<T: Serialize>(report: &T, summary: String, pass: bool) -> Self {
        Outcome { json: serde_json::to_value(report).expect("reports serialize"), summary, pass }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| HlxError::usage(format!("{}: {e}", path.display())))
}

fn config(g: &GlobalArgs) -> Result<RunConfig> {
    let mut c = RunConfig::from_env()?;
    c.p = g.p;
    c.ext_degree = g.ext_degree;
    c.seed = g.seed;
    c.kmax = g.kmax;
    c.rwindow = g.rwindow;
    c.validate()?;
    Ok(c)
}

struct ModuleTask<'a> {
    doc: &'a RecipeDoc,
    action: ModuleAction,
    cfg: &'a RunConfig,
}

impl FieldTask for ModuleTask<'_> {
    type Out = Result<ModuleReport>;

    fn run<F: FieldIo>(self, f: &F) -> Self::Out {
        let m = build(f, &self.doc.build)?;
        module_report(&m, &self.doc.ring, Some(&self.doc.build), self.cfg, self.action == ModuleAction::Chop)
    }
}

fn cmd_module(action: ModuleAction, path: &Path, frobenius: Option<u32>, psi: Option<String>, cfg: &RunConfig) -> Result<Outcome> {
    let mut doc = RecipeDoc::parse(&read(path)?)?;
    let inner = Box::new(doc.build.clone());
    doc.build = match (action, frobenius, psi) {
        (ModuleAction::Dual, None, None) => Recipe::Dual(inner),
        (ModuleAction::Twist, Some(m), None) => Recipe::FrobeniusTwist { inner, m },
        (ModuleAction::Twist, None, Some(a)) => Recipe::PsiTwist { inner, a: Value::String(a) },
        (ModuleAction::Twist, ..) => return Err(HlxError::usage("twist needs exactly one of --frobenius, --psi")),
        (_, None, None) => doc.build,
        _ => return Err(HlxError::usage("--frobenius and --psi only apply to twist")),
    };
    let r = doc.ring.dispatch(ModuleTask { doc: &doc, action, cfg })??;
    let pass = action != ModuleAction::Drinfeld || r.ell_hw.iter().all(|h| h.consistent);
    Ok(Outcome::new(&r, r.summary(), pass))
}

struct SteinbergTask<'a> {
    ring: RingSpec,
    a: &'a str,
    lambda_max: u32,
    cfg: &'a RunConfig,
}

impl FieldTask for SteinbergTask<'_> {
    type Out = Result<SteinbergReport>;

    fn run<F: FieldIo>(self, f: &F) -> Self::Out {
        let a = f.parse(&Value::String(self.a.to_string()))?;
        if f.is_zero(&a) {
            return Err(HlxError::usage("--a must be nonzero"));
        }
        steinberg(f, &self.ring, &a, self.lambda_max, self.cfg)
    }
}

fn primes_or(cfg: &RunConfig, default: &[u64]) -> Vec<u64> {
    cfg.p.map_or_else(|| default.to_vec(), |p| vec![p])
}

fn collect<T: Serialize>(reports: Vec<T>, summary: impl Fn(&T) -> String, pass: impl Fn(&T) -> bool) -> Outcome {
    let ok = reports.iter().all(&pass);
    let text = reports.iter().map(&summary).collect::<Vec<_>>().join("\n");
    if reports.len() == 1 {
        Outcome::new(&reports[0], text, ok)
    } else {
        Outcome::new(&reports, text, ok)
    }
}

fn execute(cmd: Command, cfg: &RunConfig) -> Result<Outcome> {
    Ok(match cmd {
        Command::VerifyIdentities { inject_mutant } => {
            let grid = IdentityGrid::from_kmax(cfg.kmax.unwrap_or(3), cfg.rwindow);
            let sides = if inject_mutant { mutant_sides } else { hlx_core::looppbw::basicrel_sides };
            let r = verify_identities_with(&grid, cfg, sides);
            Outcome::new(&r, r.summary(), r.pass)
        }
        Command::Module { action, recipe, frobenius, psi } => cmd_module(action, &recipe, frobenius, psi, cfg)?,
        Command::Steinberg { lambda_max, a } => {
            let reports = primes_or(cfg, &[2, 3, 5])
                .into_iter()
                .map(|p| {
                    let ring = RingSpec::finite(p, cfg.ext_degree);
                    ring.clone().dispatch(SteinbergTask { ring, a: &a, lambda_max, cfg })?
                })
                .collect::<Result<Vec<_>>>()?;
            collect(reports, SteinbergReport::summary, |r| r.pass)
        }
        Command::TpdGrid => {
            let reports = primes_or(cfg, &[2, 3, 5]).into_iter().map(|p| tpd_grid(p, cfg)).collect::<Result<Vec<_>>>()?;
            collect(reports, |r| r.summary(), |r| r.pass)
        }
        Command::ConjectureCp0 { degmax, residue } => {
            let r = cp0_suite(&primes_or(cfg, &[2, 3]), degmax, residue, cfg)?;
            Outcome::new(&r, r.summary(), r.pass)
        }
        Command::PaperExample { a, b } => {
            let p = cfg.p.unwrap_or(3);
            let numeric = match (a, b) {
                (Some(a), Some(b)) => vec![(p, a, b)],
                _ => vec![(p, 1, 2), (p, 1, 1 + p as i64)],
            };
            let r = paper_report(&numeric, cfg)?;
            Outcome::new(&r, r.summary(), r.pass)
        }
        Command::Blocks { patterns } => {
            let mut files = Vec::new();
            for pat in &patterns {
                let paths = glob::glob(pat).map_err(|e| HlxError::usage(format!("{pat}: {e}")))?;
                for p in paths {
                    files.push(p.map_err(|e| HlxError::usage(e.to_string()))?);
                }
            }
            files.sort();
            files.dedup();
            if files.is_empty() {
                return Err(HlxError::usage("no module reports matched"));
            }
            let reports = files
                .iter()
                .map(|f| {
                    serde_json::from_str::<ModuleReport>(&read(f)?)
                        .map_err(|e| HlxError::usage(format!("{}: not a module report: {e}", f.display())))
                })
                .collect::<Result<Vec<_>>>()?;
            let r = blocks_report(&reports, cfg)?;
            Outcome::new(&r, r.summary(), r.pass)
        }
        Command::Lattice { recipe } => {
            let r = lattice_report(&RecipeDoc::parse(&read(&recipe)?)?, cfg)?;
            Outcome::new(&r, r.summary(), r.invariant)
        }
    })
}

/// Parse `args`, run the command and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = config(&cli.global).and_then(|cfg| execute(cli.command, &cfg));
    match result {
        Ok(o) => {
            let text = serde_json::to_string_pretty(&o.json).expect("reports serialize") + "\n";
            if let Some(path) = &cli.global.out {
                if let Err(e) = std::fs::write(path, &text) {
                    let _ = writeln!(err, "usage error: {}: {e}", path.display());
                    return 2;
                }
            }
            let _ = if cli.global.json { write!(out, "{text}") } else { writeln!(out, "{}", o.summary) };
            if o.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}
