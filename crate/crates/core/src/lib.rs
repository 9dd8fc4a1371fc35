//! Two-state discrete-time quantum walk on the integer line.
//!
//! The walker carries a spin-1/2 coin; one step applies a (possibly
//! time-dependent) coin rotation followed by the spin-conditioned shift
//! `|U⟩ → x+1`, `|D⟩ → x−1`. Coin angles are organised into schedules
//! (linear ramps `θ_t = (t+1)θ` or a static angle) and game protocols
//! (a single schedule, or two schedules alternating on even/odd steps).
//!
//! On top of the kernel sit probability observables (site distribution,
//! transport bias, moments) and the Parrondo classifier, which maps a grid
//! of angle pairs `(θ_A, θ_B)` to `parrondo` / `anti_parrondo` / `none`
//! according to the signs of the long-time biases of the two single games
//! and their alternation.
//!
//! `oracle` holds a deliberately naive dense-matrix reference
//! implementation used to cross-check the sparse kernel in tests.

pub mod error;
pub mod observables;
pub mod oracle;
pub mod parrondo;
pub mod protocol;
pub mod walk;

pub use error::Error;
pub use num_complex::Complex64;
