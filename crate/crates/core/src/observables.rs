//! Probability-level views of a walker state: site distribution, transport
//! bias, moments, and the per-step series a run records.

use crate::error::Error;
use crate::protocol::{evolve_with, GameProtocol};
use crate::walk::WalkerState;

/// Site occupation probabilities `P_t(x)` over the full lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    t: usize,
    radius: usize,
    p: Vec<f64>,
}

impl Distribution {
    pub fn from_state(state: &WalkerState) -> Self {
        let radius = state.radius();
        let r = radius as i64;
        let p = (-r..=r).map(|x| state.amplitude(x).norm_sqr()).collect();
        Distribution {
            t: state.t(),
            radius,
            p,
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// `P_t(x)`; exactly zero outside the lattice.
    pub fn p(&self, x: i64) -> f64 {
        let r = self.radius as i64;
        if x < -r || x > r {
            return 0.0;
        }
        self.p[(x + r) as usize]
    }

    /// `(x, P_t(x))` over the full lattice in ascending x.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let r = self.radius as i64;
        self.p
            .iter()
            .enumerate()
            .map(move |(i, &p)| (i as i64 - r, p))
    }

    /// Total probability; 1 up to rounding for normalised states.
    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    /// Highest site probability `P_t^max`.
    pub fn p_max(&self) -> f64 {
        self.p.iter().fold(0.0f64, |acc, &p| acc.max(p))
    }

    /// Transport bias `P_R − P_L`: total probability strictly right of the
    /// origin minus total strictly left. Negative means leftward
    /// transport.
    pub fn bias(&self) -> f64 {
        let mut left = 0.0;
        let mut right = 0.0;
        for (x, p) in self.iter() {
            if x < 0 {
                left += p;
            } else if x > 0 {
                right += p;
            }
        }
        right - left
    }

    /// `ΔP = P_L − P_R`, the sign convention used when quoting results;
    /// positive means leftward transport.
    pub fn delta_p(&self) -> f64 {
        -self.bias()
    }

    /// `m_n = Σ_x xⁿ P_t(x)`.
    pub fn moment(&self, n: u32) -> f64 {
        let mut acc = 0.0;
        for (x, p) in self.iter() {
            acc += (x as f64).powi(n as i32) * p;
        }
        acc
    }
}

/// One row of a run's time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRecord {
    pub t: usize,
    /// `P_R − P_L`
    pub bias: f64,
    /// `Σ x·P`
    pub m1: f64,
    /// `Σ x²·P`
    pub m2: f64,
    /// `max_x P_t(x)`
    pub p_max: f64,
}

impl SeriesRecord {
    /// All series observables in a single pass over the state's support.
    /// Bit-identical to going through [`Distribution`], because both
    /// accumulate in ascending x and the sites skipped here hold exact
    /// zeros.
    pub fn measure(state: &WalkerState) -> Self {
        let mut left = 0.0;
        let mut right = 0.0;
        let mut m1 = 0.0;
        let mut m2 = 0.0;
        let mut p_max = 0.0f64;
        for (x, s) in state.iter() {
            let p = s.norm_sqr();
            let xf = x as f64;
            if x < 0 {
                left += p;
            } else if x > 0 {
                right += p;
            }
            m1 += xf * p;
            m2 += xf * xf * p;
            p_max = p_max.max(p);
        }
        SeriesRecord {
            t: state.t(),
            bias: right - left,
            m1,
            m2,
            p_max,
        }
    }

    pub fn delta_p(&self) -> f64 {
        -self.bias
    }
}

/// Evolve `state` by `steps` and record the observables after every step
/// (records carry `t = 1..=steps` when starting from a fresh walker).
pub fn series(
    state: &mut WalkerState,
    protocol: &GameProtocol,
    steps: usize,
) -> Result<Vec<SeriesRecord>, Error> {
    let mut records = Vec::with_capacity(steps);
    evolve_with(state, protocol, steps, |s| {
        records.push(SeriesRecord::measure(s));
    })?;
    Ok(records)
}

/// Mean bias over the records with `t > transient`. Errors when the
/// window is empty rather than returning a silent NaN.
pub fn temporal_average(records: &[SeriesRecord], transient: usize) -> Result<f64, Error> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for r in records {
        if r.t > transient {
            sum += r.bias;
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::EmptyAverageWindow {
            transient,
            len: records.len(),
        });
    }
    Ok(sum / count as f64)
}
