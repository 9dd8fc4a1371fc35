//! Dense-matrix reference implementation.
//!
//! Builds the one-step walk operator `W = T·(C ⊗ I)` explicitly over the
//! basis `(x, spin)` in lexicographic order (`x` ascending, `U` before
//! `D`) and evolves by matrix-vector products. Amplitude that would shift
//! past `±radius` is simply dropped, so `W` is exactly unitary only on
//! the interior; results are exact as long as the light cone stays inside
//! the lattice. Deliberately naive and `O(dim²)` per step — it exists to
//! cross-check the sparse kernel, not to be fast.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::Error;
use crate::protocol::GameProtocol;
use crate::walk::{CoinMatrix, Spinor, WalkerState};

/// One-step walk operator on a bounded lattice.
#[derive(Debug, Clone)]
pub struct DenseUnitary {
    radius: usize,
    matrix: Array2<Complex64>,
}

/// Basis index of `(x, spin)`: sites ascending, `U` (spin 0) before `D`.
fn basis_index(x: i64, spin: usize, radius: usize) -> usize {
    2 * (x + radius as i64) as usize + spin
}

impl DenseUnitary {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Largest entry of `W†W − I` over the interior block (rows and
    /// columns of sites with `|x| < radius`). Boundary truncation makes
    /// the full matrix non-unitary by construction; the interior must be
    /// unitary to rounding.
    pub fn interior_unitarity_deviation(&self) -> f64 {
        let w = &self.matrix;
        let gram = w.mapv(|z| z.conj()).t().dot(w);
        let r = self.radius as i64;
        let mut worst = 0.0f64;
        for xi in -r + 1..r {
            for si in 0..2 {
                let i = basis_index(xi, si, self.radius);
                for xj in -r + 1..r {
                    for sj in 0..2 {
                        let j = basis_index(xj, sj, self.radius);
                        let expected = if i == j { 1.0 } else { 0.0 };
                        worst = worst.max((gram[(i, j)] - expected).norm());
                    }
                }
            }
        }
        worst
    }
}

/// Dense one-step operator for coin angle `theta`: coin block-diagonal
/// first, then the spin-conditioned shift with boundary truncation.
pub fn build_walk_matrix(theta: f64, radius: usize) -> Result<DenseUnitary, Error> {
    let coin = CoinMatrix::generalized_hadamard(theta)?;
    let dim = 2 * (2 * radius + 1);
    let r = radius as i64;

    let mut coin_block = Array2::<Complex64>::zeros((dim, dim));
    for x in -r..=r {
        let u = basis_index(x, 0, radius);
        let d = basis_index(x, 1, radius);
        coin_block[(u, u)] = coin.uu;
        coin_block[(u, d)] = coin.ud;
        coin_block[(d, u)] = coin.du;
        coin_block[(d, d)] = coin.dd;
    }

    let one = Complex64::new(1.0, 0.0);
    let mut shift = Array2::<Complex64>::zeros((dim, dim));
    for x in -r..=r {
        if x < r {
            shift[(basis_index(x + 1, 0, radius), basis_index(x, 0, radius))] = one;
        }
        if x > -r {
            shift[(basis_index(x - 1, 1, radius), basis_index(x, 1, radius))] = one;
        }
    }

    Ok(DenseUnitary {
        radius,
        matrix: shift.dot(&coin_block),
    })
}

/// Evolve `initial` by `steps` under `protocol` entirely with dense
/// matrix-vector products, on a lattice of the given `radius`. Follows
/// the same step clock as [`crate::protocol::evolve`]. Fails if the
/// state's support does not fit the oracle lattice, or if the light cone
/// could reach the boundary within `steps`.
pub fn oracle_evolve(
    initial: &WalkerState,
    protocol: &GameProtocol,
    steps: usize,
    radius: usize,
) -> Result<WalkerState, Error> {
    let (s_lo, s_hi) = initial.support();
    let r = radius as i64;
    if s_lo < -r || s_hi > r {
        return Err(Error::OracleSupport { radius });
    }
    if s_hi + steps as i64 > r || s_lo - (steps as i64) < -r {
        return Err(Error::OracleHorizon { steps, radius });
    }

    let dim = 2 * (2 * radius + 1);
    let mut v = Array1::<Complex64>::zeros(dim);
    for x in -r..=r {
        let s = initial.amplitude(x);
        v[basis_index(x, 0, radius)] = s.up;
        v[basis_index(x, 1, radius)] = s.down;
    }

    for k in 0..steps {
        let w = build_walk_matrix(protocol.step_angle(initial.t() + k), radius)?;
        v = w.matrix().dot(&v);
    }

    let amps: Vec<Spinor> = (-r..=r)
        .map(|x| Spinor::new(v[basis_index(x, 0, radius)], v[basis_index(x, 1, radius)]))
        .collect();
    WalkerState::from_amplitudes(amps, initial.t() + steps)
}
