//! Walk kernel: spinor amplitudes on a bounded integer lattice and the
//! coin/shift step that advances them.
//!
//! Amplitudes live on sites `-radius ..= radius`. The state tracks the
//! support window touched so far, so one step costs `O(t)` rather than
//! `O(radius)`; a full run from a localized start is `O(t_max²)`.

use num_complex::Complex64;

use crate::error::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coin-space amplitude pair at one lattice site.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor {
    pub up: Complex64,
    pub down: Complex64,
}

impl Spinor {
    pub const ZERO: Spinor = Spinor {
        up: ZERO,
        down: ZERO,
    };

    pub fn new(up: Complex64, down: Complex64) -> Self {
        Spinor { up, down }
    }

    /// `|ψ_U|² + |ψ_D|²`, the site occupation probability for a
    /// normalised state.
    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    pub fn is_zero(&self) -> bool {
        self.up == ZERO && self.down == ZERO
    }

    pub fn is_finite(&self) -> bool {
        self.up.re.is_finite()
            && self.up.im.is_finite()
            && self.down.re.is_finite()
            && self.down.im.is_finite()
    }
}

/// 2×2 coin acting on the spin degree of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix {
    pub uu: Complex64,
    pub ud: Complex64,
    pub du: Complex64,
    pub dd: Complex64,
}

impl CoinMatrix {
    /// Generalized Hadamard coin `cosθ·σ_z + sinθ·σ_x`:
    ///
    /// ```text
    /// [ cosθ   sinθ ]
    /// [ sinθ  −cosθ ]
    /// ```
    ///
    /// Real, symmetric, unitary and involutive for every θ. Rejects
    /// non-finite angles.
    pub fn generalized_hadamard(theta: f64) -> Result<Self, Error> {
        if !theta.is_finite() {
            return Err(Error::NonFiniteAngle(theta));
        }
        let (s, c) = theta.sin_cos();
        Ok(CoinMatrix {
            uu: Complex64::new(c, 0.0),
            ud: Complex64::new(s, 0.0),
            du: Complex64::new(s, 0.0),
            dd: Complex64::new(-c, 0.0),
        })
    }

    pub fn apply(&self, s: Spinor) -> Spinor {
        Spinor {
            up: self.uu * s.up + self.ud * s.down,
            down: self.du * s.up + self.dd * s.down,
        }
    }

    /// Largest absolute entry of `C†C − I`. Exactly the machine-level
    /// unitarity defect of the coin.
    pub fn unitarity_deviation(&self) -> f64 {
        let e00 = self.uu.conj() * self.uu + self.du.conj() * self.du - Complex64::new(1.0, 0.0);
        let e01 = self.uu.conj() * self.ud + self.du.conj() * self.dd;
        let e10 = self.ud.conj() * self.uu + self.dd.conj() * self.du;
        let e11 = self.ud.conj() * self.ud + self.dd.conj() * self.dd - Complex64::new(1.0, 0.0);
        e00.norm().max(e01.norm()).max(e10.norm()).max(e11.norm())
    }
}

/// Distinguished spin preparations for a walker starting at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    /// `|U⟩`
    Up,
    /// `|D⟩`
    Down,
    /// `(|U⟩ + i|D⟩)/√2` — the unbiased preparation for real coins.
    Symmetric,
    /// Arbitrary spinor, normalised on use.
    Custom { up: Complex64, down: Complex64 },
}

impl InitialState {
    /// Normalised spinor for this preparation. `Custom` fails on zero or
    /// non-finite input.
    pub fn spinor(&self) -> Result<Spinor, Error> {
        match *self {
            InitialState::Up => Ok(Spinor::new(Complex64::new(1.0, 0.0), ZERO)),
            InitialState::Down => Ok(Spinor::new(ZERO, Complex64::new(1.0, 0.0))),
            InitialState::Symmetric => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                Ok(Spinor::new(Complex64::new(r, 0.0), Complex64::new(0.0, r)))
            }
            InitialState::Custom { up, down } => {
                let s = Spinor::new(up, down);
                if !s.is_finite() {
                    return Err(Error::InvalidInitialSpinor);
                }
                let n2 = s.norm_sqr();
                if n2 == 0.0 || !n2.is_finite() {
                    return Err(Error::InvalidInitialSpinor);
                }
                let inv = 1.0 / n2.sqrt();
                Ok(Spinor::new(up * inv, down * inv))
            }
        }
    }
}

/// Full walker configuration at one time: spinor amplitudes on
/// `-radius ..= radius` plus the step counter.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    t: usize,
    radius: usize,
    /// Support window (array indices). Everything outside is exactly zero.
    lo: usize,
    hi: usize,
    amps: Vec<Spinor>,
}

impl WalkerState {
    /// Walker at the origin of a lattice with sites `-radius ..= radius`.
    /// The radius bounds how many steps can be taken: amplitude may never
    /// cross the edge.
    pub fn localized(initial: InitialState, radius: usize) -> Result<Self, Error> {
        let spin = initial.spinor()?;
        let mut amps = vec![Spinor::ZERO; 2 * radius + 1];
        amps[radius] = spin;
        Ok(WalkerState {
            t: 0,
            radius,
            lo: radius,
            hi: radius,
            amps,
        })
    }

    /// State from raw amplitudes over `-radius ..= radius` (so the length
    /// must be odd). No normalisation is applied; callers working with
    /// non-unit vectors are responsible for interpreting the norm.
    pub fn from_amplitudes(amps: Vec<Spinor>, t: usize) -> Result<Self, Error> {
        if amps.len().is_multiple_of(2) {
            return Err(Error::EvenAmplitudeLength(amps.len()));
        }
        if !amps.iter().all(Spinor::is_finite) {
            return Err(Error::NonFiniteAmplitude);
        }
        let radius = (amps.len() - 1) / 2;
        let lo = amps.iter().position(|s| !s.is_zero()).unwrap_or(radius);
        let hi = amps.iter().rposition(|s| !s.is_zero()).unwrap_or(radius);
        Ok(WalkerState {
            t,
            radius,
            lo,
            hi,
            amps,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    fn x_of(&self, i: usize) -> i64 {
        i as i64 - self.radius as i64
    }

    /// Inclusive x-range of the tracked support window.
    pub fn support(&self) -> (i64, i64) {
        (self.x_of(self.lo), self.x_of(self.hi))
    }

    /// Amplitude at site `x`; exactly zero outside the lattice.
    pub fn amplitude(&self, x: i64) -> Spinor {
        let r = self.radius as i64;
        if x < -r || x > r {
            return Spinor::ZERO;
        }
        self.amps[(x + r) as usize]
    }

    /// Sites of the support window with their amplitudes, in ascending x.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Spinor)> + '_ {
        let base = self.x_of(self.lo);
        self.amps[self.lo..=self.hi]
            .iter()
            .enumerate()
            .map(move |(k, s)| (base + k as i64, s))
    }

    /// `√(Σ_x |ψ_U(x)|² + |ψ_D(x)|²)`; 1 up to rounding for any state
    /// produced by unitary evolution of a normalised start.
    pub fn norm(&self) -> f64 {
        self.amps[self.lo..=self.hi]
            .iter()
            .map(Spinor::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// Apply one coin to every occupied site (no motion, no error).
    pub fn apply_coin(&mut self, coin: &CoinMatrix) {
        for s in &mut self.amps[self.lo..=self.hi] {
            *s = coin.apply(*s);
        }
    }

    /// Spin-conditioned translation: up components move to `x+1`, down
    /// components to `x−1`. Fails (leaving the state untouched) if a
    /// nonzero amplitude would cross the lattice edge.
    pub fn apply_shift(&mut self) -> Result<(), Error> {
        let last = self.amps.len() - 1;
        if (self.hi == last && self.amps[last].up != ZERO)
            || (self.lo == 0 && self.amps[0].down != ZERO)
        {
            return Err(Error::LatticeOverflow {
                t: self.t,
                radius: self.radius,
            });
        }
        let new_hi = (self.hi + 1).min(last);
        let new_lo = self.lo.saturating_sub(1);
        let mut i = new_hi;
        while i > self.lo {
            self.amps[i].up = self.amps[i - 1].up;
            i -= 1;
        }
        self.amps[self.lo].up = ZERO;
        let mut i = new_lo;
        while i < self.hi {
            self.amps[i].down = self.amps[i + 1].down;
            i += 1;
        }
        self.amps[self.hi].down = ZERO;
        self.lo = new_lo;
        self.hi = new_hi;
        Ok(())
    }

    /// One walk step: coin then shift, then advance the clock. The edge
    /// sites must be unoccupied beforehand, which guarantees the shift
    /// cannot overflow and the state is never left half-stepped.
    pub fn step(&mut self, coin: &CoinMatrix) -> Result<(), Error> {
        let last = self.amps.len() - 1;
        if !self.amps[0].is_zero() || !self.amps[last].is_zero() {
            return Err(Error::LatticeOverflow {
                t: self.t,
                radius: self.radius,
            });
        }
        self.apply_coin(coin);
        self.apply_shift()
            .expect("shift cannot overflow: edge sites were empty before the coin");
        self.t += 1;
        Ok(())
    }

    /// Largest componentwise amplitude difference against `other`,
    /// compared site by site over both supports.
    pub fn max_amplitude_difference(&self, other: &WalkerState) -> f64 {
        let (a_lo, a_hi) = self.support();
        let (b_lo, b_hi) = other.support();
        let mut worst = 0.0f64;
        for x in a_lo.min(b_lo)..=a_hi.max(b_hi) {
            let a = self.amplitude(x);
            let b = other.amplitude(x);
            worst = worst
                .max((a.up - b.up).norm())
                .max((a.down - b.down).norm());
        }
        worst
    }
}
