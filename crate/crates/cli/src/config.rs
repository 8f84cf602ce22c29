//! Run configuration: command-line flags layered over an optional TOML file.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

/// Bad flags, config files or specs. Exits with status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Every option shared by the subcommands. The same keys are accepted in the
/// TOML file; flags win over the file.
#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// TOML file with any of the options below
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Real numbers for a Dani lattice, joined by `+` (e.g. `golden`, `cubic:7+cubic:7^2`)
    #[arg(long)]
    pub alpha: Option<String>,

    /// Lattice spec (`dani:...`, `minkowski:cubic:7`, `minkowski-primal:...`, `explicit:...`)
    #[arg(long)]
    pub lattice: Option<String>,

    /// Weight spec, e.g. `bspline:m=6,s=2/3`; `;` separates per-coordinate weights
    #[arg(long)]
    pub weight: Option<String>,

    /// Geometric horizon schedule `start:ratio:count`
    #[arg(long = "N")]
    #[serde(rename = "N", alias = "n")]
    pub schedule: Option<String>,

    /// `fit:M`, `const:C`, `logpow:c,a,b` or `log`
    #[arg(long)]
    pub phi: Option<String>,

    /// Dyadic grid depth (radii 0.499 * 2^-j, j <= J)
    #[arg(long = "J")]
    #[serde(rename = "J", alias = "depth")]
    pub depth: Option<u32>,

    /// Target bound on the certified dual tail
    #[arg(long)]
    pub tol: Option<f64>,

    /// Seed for sampled shifts and randomized suites
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Random shifts per radius cell in the sup scan
    #[arg(long)]
    pub gamma_samples: Option<usize>,

    /// Number of randomized configurations (poisson-check)
    #[arg(long)]
    pub count: Option<usize>,

    /// Trajectory horizon (littlewood)
    #[arg(long)]
    pub horizon: Option<u64>,

    /// Largest dual height tried (witness)
    #[arg(long)]
    pub max_height: Option<u64>,

    /// Flip the sign of the dual value (poisson-check self test)
    #[arg(long)]
    #[serde(default)]
    pub inject_fault: bool,
}

impl Options {
    /// Fills unset flags from the TOML file named by `--config`.
    pub fn load(self) -> anyhow::Result<Options> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let file = read_toml(&path)?;
        Ok(Options {
            config: self.config,
            alpha: self.alpha.or(file.alpha),
            lattice: self.lattice.or(file.lattice),
            weight: self.weight.or(file.weight),
            schedule: self.schedule.or(file.schedule),
            phi: self.phi.or(file.phi),
            depth: self.depth.or(file.depth),
            tol: self.tol.or(file.tol),
            seed: self.seed.or(file.seed),
            out: self.out.or(file.out),
            gamma_samples: self.gamma_samples.or(file.gamma_samples),
            count: self.count.or(file.count),
            horizon: self.horizon.or(file.horizon),
            max_height: self.max_height.or(file.max_height),
            inject_fault: self.inject_fault || file.inject_fault,
        })
    }
}

fn read_toml(path: &Path) -> anyhow::Result<Options> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| {
        let (line, col) = e.span().map_or((1, 1), |s| line_col(&text, s.start));
        usage(format!("{}:{line}:{col}: {}", path.display(), e.message()))
    })
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, col)
}

/// `start * ratio^i` for `i < count`, rounded to integers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Schedule {
    pub start: f64,
    pub ratio: f64,
    pub count: usize,
}

impl Schedule {
    pub fn parse(s: &str) -> anyhow::Result<Schedule> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || usage(format!("schedule `{s}` is not start:ratio:count"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let ratio: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if !(start >= 1.0 && start.is_finite()) || !(ratio >= 1.0 && ratio.is_finite()) || count == 0 {
            return Err(usage(format!("schedule `{s}` needs start >= 1, ratio >= 1, count >= 1")));
        }
        Ok(Schedule { start, ratio, count })
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| (self.start * self.ratio.powi(i as i32)).round()).collect()
    }
}

/// The resolved configuration recorded in the run metadata.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub alpha: Option<String>,
    pub lattice: Option<String>,
    pub weight: Option<String>,
    pub schedule: Schedule,
    pub phi: Option<String>,
    pub depth: Option<u32>,
    pub tol: f64,
    pub seed: u64,
    pub out: PathBuf,
    pub gamma_samples: usize,
    pub count: usize,
    pub horizon: u64,
    pub max_height: Option<u64>,
    pub inject_fault: bool,
}

impl RunConfig {
    pub fn resolve(command: &str, o: Options, default_schedule: &str) -> anyhow::Result<RunConfig> {
        let schedule = Schedule::parse(o.schedule.as_deref().unwrap_or(default_schedule))?;
        let tol = o.tol.unwrap_or(smoothdisc::discrepancy::DEFAULT_TOL);
        if !(tol > 0.0) {
            return Err(usage(format!("tolerance {tol} must be positive")));
        }
        Ok(RunConfig {
            command: command.to_string(),
            alpha: o.alpha,
            lattice: o.lattice,
            weight: o.weight,
            schedule,
            phi: o.phi,
            depth: o.depth,
            tol,
            seed: o.seed.unwrap_or(1),
            out: o.out.unwrap_or_else(|| PathBuf::from("out")),
            gamma_samples: o.gamma_samples.unwrap_or(4),
            count: o.count.unwrap_or(200),
            horizon: o.horizon.unwrap_or(1_000_000),
            max_height: o.max_height,
            inject_fault: o.inject_fault,
        })
    }
}
