//! Command-line front end for the `tatehh` library: argument types, dispatch
//! and the report cache.

pub mod cache;
pub mod commands;
pub mod error;
pub mod report;
pub mod spec;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cache::Cache;
use crate::commands::Module;
use crate::error::{CliError, Result};
use crate::report::{Report, Status};
use crate::spec::Engine;

#[derive(Debug, Parser)]
#[command(name = "tatehh", version, about = "Tate-Hochschild cohomology of finite-dimensional Frobenius algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// CSV table to print when a report has several.
    #[arg(long, global = true)]
    pub table: Option<String>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for the randomized diagonal construction.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Bypass the report cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Record per-check timings (implies --no-cache).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TateEngine {
    Formula,
    Stable,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingEngine {
    Es,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a spec and check the algebra axioms and the Frobenius form.
    Validate { spec: PathBuf },
    /// Dual basis, Nakayama automorphism and its order.
    Frobenius { spec: PathBuf },
    /// Ordinary Hochschild (co)homology from the bar resolution.
    Hochschild {
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        min: usize,
        #[arg(long, default_value_t = 4)]
        max: usize,
        #[arg(long, default_value = "A")]
        module: String,
    },
    /// Tate-Hochschild (co)homology dimensions.
    Tate {
        spec: PathBuf,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        max: i64,
        /// Defaults to the spec file's `[options] engine`, then to formula.
        #[arg(long, value_enum)]
        engine: Option<TateEngine>,
        #[arg(long, default_value = "A")]
        module: String,
    },
    /// The cup product ring in degrees up to ±max-deg.
    Ring {
        spec: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_deg: usize,
        #[arg(long, value_enum, default_value_t = RingEngine::Es)]
        engine: RingEngine,
    },
    /// Cap product with the fundamental class.
    Duality {
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        range: usize,
    },
    /// The full property suite; exits 4 if anything fails.
    Check { spec: PathBuf },
    /// Inspect or clear the report cache.
    Cache {
        #[arg(long, conflicts_with = "stats")]
        clear: bool,
        #[arg(long)]
        stats: bool,
    },
}

/// The finished report together with its JSON, which is what the cache stores.
pub struct Outcome {
    pub report: Report,
    pub json: String,
    pub cached: bool,
}

impl Outcome {
    fn fresh(report: Report) -> Outcome {
        let json = report.to_json();
        Outcome { report, json, cached: false }
    }

    /// 0, or 4 when a check failed.
    pub fn exit_code(&self) -> i32 {
        if self.report.failed().is_empty() {
            0
        } else {
            4
        }
    }

    pub fn render(&self, format: Format, table: Option<&str>) -> Result<String> {
        match format {
            Format::Json => Ok(self.json.clone()),
            Format::Text => Ok(self.report.to_text()),
            Format::Csv => self.report.to_csv(table).ok_or_else(|| {
                CliError::Usage(match table {
                    Some(t) => format!("no table named {t:?} in the {} report", self.report.command),
                    None => format!("the {} report has no tables", self.report.command),
                })
            }),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let cache = Cache::from_env();
    match &cli.command {
        Command::Cache { clear, .. } => {
            let mut r = Report::new("cache", None);
            r.data("dir", cache.dir.display().to_string());
            if *clear {
                r.data("removed", cache.clear()?);
            } else {
                let s = cache.stats()?;
                r.data("entries", s.entries);
                r.data("bytes", s.bytes);
            }
            return Ok(Outcome::fresh(r));
        }
        Command::Validate { spec } => return Ok(Outcome::fresh(commands::validate(&spec::load(spec)?))),
        Command::Frobenius { spec } => return Ok(Outcome::fresh(commands::frobenius(&spec::load(spec)?))),
        _ => {}
    }

    let (path, argv) = describe(&cli.command);
    let spec = spec::load(path)?;
    let use_cache = !g.no_cache && !g.timings;
    let seed = g.seed.map(|s| s.to_string()).unwrap_or_default();
    let options = format!("{};{:?}", spec.options.window, spec.options.engine);
    let key = Cache::key(&[&spec.hash, &spec.name, &options, &argv, &seed]);
    if use_cache {
        if let Some(json) = cache.get(&key) {
            if let Ok(report) = serde_json::from_str::<Report>(&json) {
                return Ok(Outcome { report, json, cached: true });
            }
        }
    }

    let report = match &cli.command {
        Command::Hochschild { min, max, module, .. } => commands::hochschild(&spec, *min, *max, Module::parse(module)?)?,
        Command::Tate { min, max, engine, module, .. } => {
            let engine = match engine {
                Some(TateEngine::Formula) => Engine::Formula,
                Some(TateEngine::Stable) => Engine::Stable,
                Some(TateEngine::Both) => Engine::Both,
                None => spec.options.engine.unwrap_or(Engine::Formula),
            };
            commands::tate(&spec, *min, *max, engine, Module::parse(module)?)?
        }
        Command::Ring { max_deg, engine, .. } => commands::ring(&spec, *max_deg, *engine == RingEngine::Both, g.seed)?,
        Command::Duality { range, .. } => commands::duality(&spec, *range)?,
        Command::Check { .. } => commands::check(&spec, g.seed, g.timings)?,
        Command::Validate { .. } | Command::Frobenius { .. } | Command::Cache { .. } => unreachable!("handled above"),
    };
    let out = Outcome::fresh(report);
    // A failing report is not cached, so a rerun recomputes it.
    if use_cache && out.report.checks.iter().all(|c| c.status != Status::Fail) {
        cache.put(&key, &out.json)?;
    }
    Ok(out)
}

/// The spec path and a canonical rendering of the remaining arguments.
fn describe(c: &Command) -> (&PathBuf, String) {
    match c {
        Command::Hochschild { spec, min, max, module } => (spec, format!("hochschild;{min};{max};{module}")),
        Command::Tate { spec, min, max, engine, module } => (spec, format!("tate;{min};{max};{engine:?};{module}")),
        Command::Ring { spec, max_deg, engine } => (spec, format!("ring;{max_deg};{engine:?}")),
        Command::Duality { spec, range } => (spec, format!("duality;{range}")),
        Command::Check { spec } => (spec, "check".to_string()),
        Command::Validate { spec } | Command::Frobenius { spec } => (spec, String::new()),
        Command::Cache { .. } => unreachable!("the cache command has no spec"),
    }
}
