//! Coin-angle schedules, game protocols and the driver loop.
//!
//! A schedule maps a game-clock index `t` to a coin angle; a protocol
//! picks which schedule plays at each `t` (one schedule throughout, or
//! game A on even `t` and game B on odd `t`). The game clock starts at
//! [`SCHEDULE_ORIGIN`], i.e. a walker's first step draws
//! `angle_at(SCHEDULE_ORIGIN)` — see the constant for the consequences.

use std::f64::consts::TAU;

use crate::error::Error;
use crate::walk::{CoinMatrix, WalkerState};

/// Schedule index of the first applied step.
///
/// A walker that has completed `k` steps draws its next coin from
/// `angle_at(k + SCHEDULE_ORIGIN)`: the clock starts at 1, so a linear
/// ramp opens at angle 2θ and an alternating protocol opens with game B.
/// This origin is load-bearing for the alternating games — starting the
/// clock at 0 instead destroys the sign reversal at e.g. (60°, 36°) for
/// every choice of initial spin.
pub const SCHEDULE_ORIGIN: usize = 1;

/// How a schedule turns its base angle into a per-step angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleMode {
    /// `θ_t = (t+1)·θ`, the linearly ramping coin.
    Linear,
    /// `θ_t = θ` for all `t` (textbook constant-coin walk).
    Static,
}

/// Base angle plus ramp mode. The base is stored reduced to `[0, 2π)`,
/// which makes schedules with bases differing by a multiple of 2π not
/// merely equivalent but bit-identical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSchedule {
    mode: ScheduleMode,
    base: f64,
}

impl AngleSchedule {
    pub fn new(mode: ScheduleMode, base: f64) -> Result<Self, Error> {
        if !base.is_finite() {
            return Err(Error::NonFiniteAngle(base));
        }
        Ok(AngleSchedule {
            mode,
            base: base.rem_euclid(TAU),
        })
    }

    pub fn linear(base: f64) -> Result<Self, Error> {
        Self::new(ScheduleMode::Linear, base)
    }

    pub fn constant(base: f64) -> Result<Self, Error> {
        Self::new(ScheduleMode::Static, base)
    }

    /// Angle given in degrees. Reduction happens in the degree domain
    /// (`rem_euclid(360)` before conversion), so every caller that speaks
    /// degrees produces the same bits for equivalent inputs.
    pub fn from_degrees(mode: ScheduleMode, degrees: f64) -> Result<Self, Error> {
        if !degrees.is_finite() {
            return Err(Error::NonFiniteAngle(degrees));
        }
        Self::new(mode, degrees.rem_euclid(360.0).to_radians())
    }

    pub fn mode(&self) -> ScheduleMode {
        self.mode
    }

    /// Base angle, reduced to `[0, 2π)`.
    pub fn base(&self) -> f64 {
        self.base
    }

    /// Coin angle at game-clock index `t`.
    pub fn angle_at(&self, t: usize) -> f64 {
        match self.mode {
            ScheduleMode::Linear => (t as f64 + 1.0) * self.base,
            ScheduleMode::Static => self.base,
        }
    }
}

/// Which schedule plays at each game-clock index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GameProtocol {
    /// One schedule throughout.
    Single(AngleSchedule),
    /// Game A on even `t`, game B on odd `t`.
    Alternating { a: AngleSchedule, b: AngleSchedule },
}

impl GameProtocol {
    pub fn single(schedule: AngleSchedule) -> Self {
        GameProtocol::Single(schedule)
    }

    pub fn alternating(a: AngleSchedule, b: AngleSchedule) -> Self {
        GameProtocol::Alternating { a, b }
    }

    /// Coin angle at game-clock index `t`.
    pub fn angle_at(&self, t: usize) -> f64 {
        match self {
            GameProtocol::Single(s) => s.angle_at(t),
            GameProtocol::Alternating { a, b } => {
                if t.is_multiple_of(2) {
                    a.angle_at(t)
                } else {
                    b.angle_at(t)
                }
            }
        }
    }

    /// Coin matrix at game-clock index `t`.
    pub fn coin_at(&self, t: usize) -> CoinMatrix {
        CoinMatrix::generalized_hadamard(self.angle_at(t))
            .expect("validated schedule bases keep every angle finite")
    }

    /// Angle for the next step of a walker that has completed
    /// `steps_done` steps (game clock = `steps_done + SCHEDULE_ORIGIN`).
    pub fn step_angle(&self, steps_done: usize) -> f64 {
        self.angle_at(steps_done + SCHEDULE_ORIGIN)
    }

    /// Coin for the next step of a walker that has completed
    /// `steps_done` steps.
    pub fn step_coin(&self, steps_done: usize) -> CoinMatrix {
        self.coin_at(steps_done + SCHEDULE_ORIGIN)
    }
}

/// Advance `state` by `steps` walk steps under `protocol`.
pub fn evolve(state: &mut WalkerState, protocol: &GameProtocol, steps: usize) -> Result<(), Error> {
    evolve_with(state, protocol, steps, |_| {})
}

/// [`evolve`] with an observer invoked after every completed step.
pub fn evolve_with<F>(
    state: &mut WalkerState,
    protocol: &GameProtocol,
    steps: usize,
    mut observe: F,
) -> Result<(), Error>
where
    F: FnMut(&WalkerState),
{
    for _ in 0..steps {
        let coin = protocol.step_coin(state.t());
        state.step(&coin)?;
        observe(state);
    }
    Ok(())
}
