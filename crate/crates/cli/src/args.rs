//! Command-line surface of `qwalk`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwalk_core::walk::InitialState;
use qwalk_core::Complex64;

#[derive(Debug, Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Discrete-time quantum walk on the line: series, carpets and Parrondo phase diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve one walk and emit per-step observables (ΔP, bias, m1, m2, p_max)
    Simulate(RunArgs),
    /// Evolve one walk and emit the spacetime probability carpet
    Carpet(RunArgs),
    /// Classify (θ_A, θ_B) pairs into parrondo / anti_parrondo / none
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolKind {
    /// One game throughout
    Single,
    /// Game A on even steps of the game clock, game B on odd
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleKind {
    /// θ_t = (t+1)·θ
    Linear,
    /// θ_t = θ
    Static,
}

impl ScheduleKind {
    pub fn to_mode(self) -> qwalk_core::protocol::ScheduleMode {
        match self {
            ScheduleKind::Linear => qwalk_core::protocol::ScheduleMode::Linear,
            ScheduleKind::Static => qwalk_core::protocol::ScheduleMode::Static,
        }
    }
}

/// Flags shared by `simulate` and `carpet`.
#[derive(Debug, Args)]
pub struct RunArgs {
    /// Game protocol
    #[arg(long, value_enum, default_value_t = ProtocolKind::Single)]
    pub protocol: ProtocolKind,

    /// Coin-angle schedule
    #[arg(long, value_enum, default_value_t = ScheduleKind::Linear)]
    pub schedule: ScheduleKind,

    /// Base angle θ_A in degrees
    #[arg(long)]
    pub theta_a: f64,

    /// Base angle θ_B in degrees (alternating protocol)
    #[arg(long, required_if_eq("protocol", "alternating"))]
    pub theta_b: Option<f64>,

    /// Number of walk steps
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub tmax: u64,

    /// Initial spin: up | down | symmetric | custom:re_u,im_u,re_d,im_d
    #[arg(long, default_value = "up", value_parser = parse_initial)]
    pub initial: InitialState,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Angle grid for both axes, degrees: start:stop:step (stop inclusive)
    #[arg(long, value_parser = parse_grid, conflicts_with_all = ["theta_a", "theta_b"])]
    pub grid: Option<GridSpec>,

    /// Classify just the pair (θ_A, θ_B) instead of a grid
    #[arg(long, requires = "theta_b")]
    pub theta_a: Option<f64>,

    /// θ_B of the single pair
    #[arg(long, requires = "theta_a")]
    pub theta_b: Option<f64>,

    /// Coin-angle schedule
    #[arg(long, value_enum, default_value_t = ScheduleKind::Linear)]
    pub schedule: ScheduleKind,

    /// Steps per run
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub tmax: u64,

    /// Classification threshold ε on the time-averaged bias, in (0,1)
    #[arg(long, default_value_t = 1.0 / 3.0, value_parser = parse_open_unit)]
    pub epsilon: f64,

    /// Fraction of the run discarded before averaging, in (0,1)
    #[arg(long, default_value_t = 0.5, value_parser = parse_open_unit)]
    pub transient_frac: f64,

    /// Initial spin: up | down | symmetric | custom:re_u,im_u,re_d,im_d
    #[arg(long, default_value = "up", value_parser = parse_initial)]
    pub initial: InitialState,

    /// Worker threads for the sweep (results do not depend on this)
    #[arg(long, default_value_t = default_workers(), value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = crate::io::Format::Csv)]
    pub format: crate::io::Format,
}

fn default_workers() -> u64 {
    std::thread::available_parallelism()
        .map(|n| n.get() as u64)
        .unwrap_or(1)
}

/// Inclusive arithmetic progression of angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    /// The full-diagram default: every integer degree in [1°, 89°].
    pub const DEFAULT: GridSpec = GridSpec {
        start: 1.0,
        stop: 89.0,
        step: 1.0,
    };

    /// Values `start + i·step` for `i = 0..` while they stay ≤ stop (with
    /// a small tolerance so float division does not drop the endpoint).
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("grid spec must be start:stop:step in degrees".into());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad grid number `{p}`: {e}"))
        })
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err("grid bounds must be finite".into());
    }
    if step <= 0.0 {
        return Err("grid step must be positive".into());
    }
    if stop < start {
        return Err("grid stop must not be below start".into());
    }
    Ok(GridSpec { start, stop, step })
}

fn parse_open_unit(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("not a number: {e}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("value must lie strictly between 0 and 1, got {v}"))
    }
}

fn parse_initial(s: &str) -> Result<InitialState, String> {
    match s {
        "up" => Ok(InitialState::Up),
        "down" => Ok(InitialState::Down),
        "symmetric" => Ok(InitialState::Symmetric),
        other => {
            let rest = other.strip_prefix("custom:").ok_or_else(|| {
                format!("unknown initial `{other}` (expected up, down, symmetric or custom:re_u,im_u,re_d,im_d)")
            })?;
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 4 {
                return Err(
                    "custom initial takes four comma-separated numbers: re_u,im_u,re_d,im_d".into(),
                );
            }
            let mut vals = [0.0f64; 4];
            for (slot, part) in vals.iter_mut().zip(&parts) {
                *slot = part
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| format!("bad spinor component `{part}`: {e}"))?;
            }
            let state = InitialState::Custom {
                up: Complex64::new(vals[0], vals[1]),
                down: Complex64::new(vals[2], vals[3]),
            };
            // surface zero/non-finite spinors as flag errors
            state.spinor().map_err(|e| e.to_string())?;
            Ok(state)
        }
    }
}
