//! Parrondo-game analysis: long-time bias of single games A and B versus
//! their even/odd alternation, and the phase-diagram sweep over a grid of
//! base-angle pairs.

use rayon::prelude::*;

use crate::error::Error;
use crate::observables::{series, temporal_average};
use crate::protocol::{AngleSchedule, GameProtocol, ScheduleMode};
use crate::walk::{InitialState, WalkerState};

/// Default classification threshold on the time-averaged bias.
pub const DEFAULT_EPSILON: f64 = 1.0 / 3.0;

/// Everything a classification run needs besides the angles themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// θ_A axis values in degrees.
    pub grid_a_deg: Vec<f64>,
    /// θ_B axis values in degrees.
    pub grid_b_deg: Vec<f64>,
    /// Steps per run; also the lattice radius.
    pub t_max: usize,
    /// Records with `t > transient` enter the temporal average.
    pub transient: usize,
    /// Threshold ε of the sign test, in (0, 1).
    pub epsilon: f64,
    pub initial: InitialState,
    pub schedule: ScheduleMode,
}

impl SweepConfig {
    /// Config with the conventional defaults: `transient = t_max/2`,
    /// `ε = 1/3`, linear schedules.
    pub fn new(
        grid_a_deg: Vec<f64>,
        grid_b_deg: Vec<f64>,
        t_max: usize,
        initial: InitialState,
    ) -> Self {
        SweepConfig {
            grid_a_deg,
            grid_b_deg,
            t_max,
            transient: t_max / 2,
            epsilon: DEFAULT_EPSILON,
            initial,
            schedule: ScheduleMode::Linear,
        }
    }

    /// Same angle set on both axes — the usual phase-diagram shape.
    pub fn square(grid_deg: Vec<f64>, t_max: usize, initial: InitialState) -> Self {
        Self::new(grid_deg.clone(), grid_deg, t_max, initial)
    }

    /// Per-run parameters only; [`classify`] needs no grid.
    fn validate_run(&self) -> Result<(), Error> {
        if self.t_max == 0 {
            return Err(Error::InvalidSweepConfig("t_max must be positive".into()));
        }
        if self.transient >= self.t_max {
            return Err(Error::InvalidSweepConfig(format!(
                "transient {} leaves no records below t_max {}",
                self.transient, self.t_max
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidSweepConfig(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        self.initial.spinor()?;
        Ok(())
    }

    pub fn validate(&self) -> Result<(), Error> {
        self.validate_run()?;
        for (name, grid) in [("theta_a", &self.grid_a_deg), ("theta_b", &self.grid_b_deg)] {
            if grid.is_empty() {
                return Err(Error::InvalidSweepConfig(format!("empty {name} grid")));
            }
            if let Some(bad) = grid.iter().find(|d| !d.is_finite()) {
                return Err(Error::InvalidSweepConfig(format!(
                    "{name} grid angle must be finite, got {bad}"
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of the three-bias sign test at threshold ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Both single games transport left, the alternation transports right.
    Parrondo,
    /// Both single games transport right, the alternation transports left.
    AntiParrondo,
    /// Anything else.
    None,
}

impl Classification {
    pub fn from_biases(bias_a: f64, bias_b: f64, bias_combined: f64, epsilon: f64) -> Self {
        if bias_a < -epsilon && bias_b < -epsilon && bias_combined > epsilon {
            Classification::Parrondo
        } else if bias_a > epsilon && bias_b > epsilon && bias_combined < -epsilon {
            Classification::AntiParrondo
        } else {
            Classification::None
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Parrondo => "parrondo",
            Classification::AntiParrondo => "anti_parrondo",
            Classification::None => "none",
        }
    }
}

/// One point of the phase diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramCell {
    pub theta_a_deg: f64,
    pub theta_b_deg: f64,
    /// Time-averaged bias of game A played alone.
    pub bias_a: f64,
    /// Time-averaged bias of game B played alone.
    pub bias_b: f64,
    /// Time-averaged bias of the alternation A(even)/B(odd).
    pub bias_combined: f64,
    pub classification: Classification,
}

fn run_bias(protocol: &GameProtocol, cfg: &SweepConfig) -> Result<f64, Error> {
    let mut state = WalkerState::localized(cfg.initial, cfg.t_max)?;
    let records = series(&mut state, protocol, cfg.t_max)?;
    temporal_average(&records, cfg.transient)
}

fn single_bias(theta_deg: f64, cfg: &SweepConfig) -> Result<f64, Error> {
    let schedule = AngleSchedule::from_degrees(cfg.schedule, theta_deg)?;
    run_bias(&GameProtocol::single(schedule), cfg)
}

fn combined_bias(theta_a_deg: f64, theta_b_deg: f64, cfg: &SweepConfig) -> Result<f64, Error> {
    let a = AngleSchedule::from_degrees(cfg.schedule, theta_a_deg)?;
    let b = AngleSchedule::from_degrees(cfg.schedule, theta_b_deg)?;
    run_bias(&GameProtocol::alternating(a, b), cfg)
}

/// Classify a single `(θ_A, θ_B)` pair: three full runs. The config's
/// grid is ignored.
pub fn classify(
    theta_a_deg: f64,
    theta_b_deg: f64,
    cfg: &SweepConfig,
) -> Result<DiagramCell, Error> {
    cfg.validate_run()?;
    let bias_a = single_bias(theta_a_deg, cfg)?;
    let bias_b = single_bias(theta_b_deg, cfg)?;
    let bias_combined = combined_bias(theta_a_deg, theta_b_deg, cfg)?;
    Ok(DiagramCell {
        theta_a_deg,
        theta_b_deg,
        bias_a,
        bias_b,
        bias_combined,
        classification: Classification::from_biases(bias_a, bias_b, bias_combined, cfg.epsilon),
    })
}

/// Classify every pair on `grid_a × grid_b`. Cells come back row-major:
/// `θ_A` varies slowest, `θ_B` fastest.
///
/// Single-game biases are computed once per axis value and shared across
/// the row/column (the bias of single game A depends only on θ_A), so an
/// n×n sweep costs n² + 2n runs instead of 3n². Work is distributed with
/// rayon but assembled by index, so the output — bit for bit — does not
/// depend on the worker count.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<DiagramCell>, Error> {
    cfg.validate()?;
    let memo_biases = |grid: &[f64]| -> Result<Vec<f64>, Error> {
        grid.par_iter().map(|&deg| single_bias(deg, cfg)).collect()
    };
    let singles_a = memo_biases(&cfg.grid_a_deg)?;
    let singles_b = memo_biases(&cfg.grid_b_deg)?;
    let nb = cfg.grid_b_deg.len();
    (0..cfg.grid_a_deg.len() * nb)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / nb, k % nb);
            let theta_a_deg = cfg.grid_a_deg[i];
            let theta_b_deg = cfg.grid_b_deg[j];
            let bias_combined = combined_bias(theta_a_deg, theta_b_deg, cfg)?;
            Ok(DiagramCell {
                theta_a_deg,
                theta_b_deg,
                bias_a: singles_a[i],
                bias_b: singles_b[j],
                bias_combined,
                classification: Classification::from_biases(
                    singles_a[i],
                    singles_b[j],
                    bias_combined,
                    cfg.epsilon,
                ),
            })
        })
        .collect()
}
