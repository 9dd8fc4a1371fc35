use thiserror::Error as ThisError;

/// Errors shared across the walk kernel, observables and sweep layers.
#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum Error {
    /// Coin angles must be finite; NaN or ±∞ would silently poison every
    /// amplitude downstream.
    #[error("coin angle must be finite, got {0}")]
    NonFiniteAngle(f64),

    /// Initial spinors must have a finite, nonzero norm so they can be
    /// normalised.
    #[error("initial spinor must have finite nonzero norm")]
    InvalidInitialSpinor,

    /// Amplitude data handed to the state constructor contained NaN or ±∞.
    #[error("amplitudes must be finite")]
    NonFiniteAmplitude,

    /// Amplitude arrays describe sites `-radius..=radius` and therefore
    /// must have odd length.
    #[error("amplitude array length must be odd, got {0}")]
    EvenAmplitudeLength(usize),

    /// A step would have moved amplitude across the lattice edge. The
    /// lattice radius must be at least the number of steps taken from a
    /// localized start.
    #[error("step {t} would push amplitude past the lattice edge (radius {radius})")]
    LatticeOverflow { t: usize, radius: usize },

    /// Temporal averages are taken over records with `t > transient`; the
    /// series contained none.
    #[error("no series records beyond transient {transient} (series length {len})")]
    EmptyAverageWindow { transient: usize, len: usize },

    /// The dense oracle is only exact while the light cone stays inside
    /// its lattice, i.e. for at most `radius` steps.
    #[error("oracle horizon exceeded: {steps} steps on a radius-{radius} lattice")]
    OracleHorizon { steps: usize, radius: usize },

    /// The state handed to the oracle already occupies sites outside the
    /// oracle lattice.
    #[error("state support exceeds the radius-{radius} oracle lattice")]
    OracleSupport { radius: usize },

    /// A sweep configuration failed validation.
    #[error("invalid sweep config: {0}")]
    InvalidSweepConfig(String),
}
