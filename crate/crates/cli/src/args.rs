//! Command-line surface.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Electron rest energy in eV, used by `--units ev`.
pub const ELECTRON_MASS_EV: f64 = 510_998.95;

#[derive(Debug, Parser)]
#[command(name = "relresp", version, about = "Electromagnetic responses of a relativistic electron gas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scalars and tensors at a single (a, b) point, as one JSON record.
    Response {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[command(flatten)]
        medium: MediumArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Region, subregion and longitudinal responses on an (a, b) grid.
    Scan {
        /// `LO:HI:N` (add `:log` for log spacing).
        #[arg(long)]
        a: Range,
        #[arg(long)]
        b: Range,
        #[command(flatten)]
        medium: MediumArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Plasmon roots in a for every b, plus the b -> 0 extrapolation.
    Dispersion {
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        #[arg(long)]
        a: Range,
        #[arg(long)]
        b: Range,
        #[command(flatten)]
        medium: MediumArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Nonrelativistic absorption cases on an (omega, q) grid at T = 0.
    NrScan {
        /// Frequency `LO:HI:N` in units of m (eV with `--units ev`).
        #[arg(long)]
        omega: Range,
        /// Momentum `LO:HI:N` in units of m (eV with `--units ev`).
        #[arg(long)]
        q: Range,
        /// Fermi momentum in units of m (eV with `--units ev`).
        #[arg(long)]
        pf: f64,
        #[arg(long, default_value_t = relresp::ALPHA)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Units::Natural)]
        units: Units,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct MediumArgs {
    /// Temperature k_B T / m.
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    /// Chemical potential xi / m; at t = 0 this is the Fermi energy x_F.
    /// Defaults to the rest mass, an empty sea at t = 0.
    #[arg(long, visible_alias = "xf", allow_negative_numbers = true)]
    pub xi: Option<f64>,
    #[arg(long, default_value_t = relresp::ALPHA)]
    pub alpha: f64,
    /// Include the vacuum polarisation.
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub vacuum: Switch,
    /// Continuation of the absorptive parts.
    #[arg(long, value_enum, default_value_t = BranchArg::Retarded)]
    pub branch: BranchArg,
    /// Interpret a, b, t, xi as hbar*omega, hbar*q*c, k_B T, xi in eV.
    #[arg(long, value_enum, default_value_t = Units::Natural)]
    pub units: Units,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; relative paths resolve against $RELRESP_OUTPUT_DIR when set.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Retarded,
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Natural,
    Ev,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Longitudinal,
    Transverse,
    Both,
}

/// `LO:HI:N` with `N >= 2` and `LO < HI`, optionally `:log`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub log: bool,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let s = i as f64 / (n - 1) as f64;
                if i == n - 1 {
                    self.hi
                } else if self.log {
                    self.lo * (self.hi / self.lo).powf(s)
                } else {
                    self.lo + (self.hi - self.lo) * s
                }
            })
            .collect()
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            lo: self.lo * k,
            hi: self.hi * k,
            ..*self
        }
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let log = match parts.len() {
            3 => false,
            4 if parts[3] == "log" => true,
            4 if parts[3] == "lin" => false,
            _ => return Err(format!("expected LO:HI:N[:log], got '{s}'")),
        };
        let num = |p: &str| p.parse::<f64>().map_err(|e| format!("'{p}': {e}"));
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        let count: usize = parts[2].parse().map_err(|e| format!("'{}': {e}", parts[2]))?;
        if count < 2 {
            return Err(format!("a range needs at least 2 points, got {count}"));
        }
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(format!("a range needs finite LO < HI, got {lo}:{hi}"));
        }
        if log && lo <= 0.0 {
            return Err(format!("a log range needs LO > 0, got {lo}"));
        }
        Ok(Self { lo, hi, count, log })
    }
}
