//! Amplitude loading: Grover–Rudolph trees of controlled `R_y` rotations for
//! nonnegative densities, and direct injection of arbitrary samples.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::{for_each_fiber, QuantumState, Register};

/// Register name used by the single-register states built here.
pub const DEFAULT_REGISTER: &str = "q";

/// Nonnegative additive mass on an interval `[lo, hi)`.
pub trait DensityOracle {
    /// The half-open domain `[a, b)` that gets split into `2^m` dyadic bins.
    fn domain(&self) -> (f64, f64);

    /// Mass of `[lo, hi)`; must be additive over adjacent intervals.
    fn mass(&self, lo: f64, hi: f64) -> f64;

    fn total_mass(&self) -> f64 {
        let (a, b) = self.domain();
        self.mass(a, b)
    }
}

/// Point masses `weights[i]` spread uniformly over `[i, i+1)`.
#[derive(Debug, Clone)]
pub struct DiscreteDensity {
    prefix: Vec<f64>,
}

impl DiscreteDensity {
    pub fn new(weights: &[f64]) -> Self {
        let mut prefix = Vec::with_capacity(weights.len() + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for w in weights {
            acc += w;
            prefix.push(acc);
        }
        Self { prefix }
    }

    fn cumulative(&self, x: f64) -> f64 {
        let n = self.prefix.len() - 1;
        if x <= 0.0 {
            return 0.0;
        }
        if x >= n as f64 {
            return self.prefix[n];
        }
        let i = x.floor() as usize;
        let frac = x - i as f64;
        self.prefix[i] + frac * (self.prefix[i + 1] - self.prefix[i])
    }
}

impl DensityOracle for DiscreteDensity {
    fn domain(&self) -> (f64, f64) {
        (0.0, (self.prefix.len() - 1) as f64)
    }

    fn mass(&self, lo: f64, hi: f64) -> f64 {
        // Exact on integer endpoints, which is all a power-of-two weight vector needs.
        if lo.fract() == 0.0 && hi.fract() == 0.0 && lo >= 0.0 && hi <= self.domain().1 {
            return self.prefix[hi as usize] - self.prefix[lo as usize];
        }
        self.cumulative(hi) - self.cumulative(lo)
    }
}

/// Density given by an antiderivative `F`, so `mass([lo, hi)) = F(hi) - F(lo)`.
pub struct AntiderivativeDensity<F: Fn(f64) -> f64> {
    pub lo: f64,
    pub hi: f64,
    pub antiderivative: F,
}

impl<F: Fn(f64) -> f64> DensityOracle for AntiderivativeDensity<F> {
    fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    fn mass(&self, lo: f64, hi: f64) -> f64 {
        (self.antiderivative)(hi) - (self.antiderivative)(lo)
    }
}

/// `x / (x² + (πs)²)` on `[-M/2, M/2)`, with `x = βP`; bins are unit intervals.
#[derive(Debug, Clone, Copy)]
pub struct LorentzianDensity {
    pub beta_p: f64,
    pub bins: usize,
}

impl DensityOracle for LorentzianDensity {
    fn domain(&self) -> (f64, f64) {
        let h = self.bins as f64 / 2.0;
        (-h, h)
    }

    fn mass(&self, lo: f64, hi: f64) -> f64 {
        // arctan(a) - arctan(b) = arctan((a-b)/(1+ab)) whenever ab > -1
        let a = std::f64::consts::PI * hi / self.beta_p;
        let b = std::f64::consts::PI * lo / self.beta_p;
        let diff = if a * b > -1.0 {
            ((a - b) / (1.0 + a * b)).atan()
        } else {
            a.atan() - b.atan()
        };
        diff / std::f64::consts::PI
    }
}

/// Rotation angles of a Grover–Rudolph tree.
///
/// Level `d` rotates register bit `m-1-d` (most significant first), controlled on the
/// `d` bits above it; node `p` at level `d` holds the angle for prefix value `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroverRudolph {
    levels: Vec<Vec<f64>>,
}

impl GroverRudolph {
    /// Builds the tree from the bin masses of `density` on `2^m` dyadic bins.
    pub fn from_density(density: &dyn DensityOracle, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(crate::error::invalid(
                "Grover-Rudolph needs at least one qubit",
            ));
        }
        let (a, b) = density.domain();
        let bins = 1usize << m;
        let width = (b - a) / bins as f64;
        let mut leaf = Vec::with_capacity(bins);
        for i in 0..bins {
            let lo = a + i as f64 * width;
            let hi = if i + 1 == bins { b } else { lo + width };
            let mass = density.mass(lo, hi);
            if mass < 0.0 || mass.is_nan() {
                return Err(Error::NegativeMass { lo, hi, mass });
            }
            leaf.push(mass);
        }
        Self::from_bin_masses(&leaf)
    }

    /// Builds the tree from explicit nonnegative bin masses (length a power of two ≥ 2).
    pub fn from_bin_masses(masses: &[f64]) -> Result<Self> {
        let n = masses.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        if let Some((i, &mass)) = masses.iter().enumerate().find(|(_, m)| !(**m >= 0.0)) {
            return Err(Error::NegativeMass {
                lo: i as f64,
                hi: i as f64 + 1.0,
                mass,
            });
        }
        let m = n.trailing_zeros() as usize;
        // tree[d] holds the 2^d subtree masses at depth d.
        let mut tree = vec![masses.to_vec()];
        for _ in 0..m {
            let prev = tree.last().unwrap();
            let up: Vec<f64> = prev.chunks(2).map(|c| c[0] + c[1]).collect();
            tree.push(up);
        }
        tree.reverse();
        if !(tree[0][0] > 0.0) {
            return Err(Error::ZeroMass);
        }
        let levels = (0..m)
            .map(|d| {
                let children = &tree[d + 1];
                (0..1usize << d)
                    .map(|p| {
                        let (l, r) = (children[2 * p], children[2 * p + 1]);
                        if l + r > 0.0 {
                            2.0 * r.sqrt().atan2(l.sqrt())
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self { levels })
    }

    pub fn qubits(&self) -> usize {
        self.levels.len()
    }

    pub fn angles(&self) -> &[Vec<f64>] {
        &self.levels
    }

    /// Applies the tree to a raw `2^m` amplitude vector.
    pub fn apply_slice(&self, amps: &mut [Complex64]) {
        for d in 0..self.qubits() {
            self.rotate_level(amps, d, 1.0);
        }
    }

    /// Applies the inverse tree (levels reversed, angles negated).
    pub fn apply_inverse_slice(&self, amps: &mut [Complex64]) {
        for d in (0..self.qubits()).rev() {
            self.rotate_level(amps, d, -1.0);
        }
    }

    pub fn apply(&self, state: &mut QuantumState, register: &str) -> Result<()> {
        self.check_register(state, register)?;
        for_each_fiber(state, register, |f| self.apply_slice(f))
    }

    pub fn apply_inverse(&self, state: &mut QuantumState, register: &str) -> Result<()> {
        self.check_register(state, register)?;
        for_each_fiber(state, register, |f| self.apply_inverse_slice(f))
    }

    fn check_register(&self, state: &QuantumState, register: &str) -> Result<()> {
        let layout = state.layout(register)?;
        if layout.qubits != self.qubits() {
            return Err(Error::LengthMismatch {
                expected: 1 << self.qubits(),
                got: layout.dim,
            });
        }
        Ok(())
    }

    fn rotate_level(&self, amps: &mut [Complex64], d: usize, sign: f64) {
        let m = self.qubits();
        let bit = 1usize << (m - 1 - d);
        for v in 0..amps.len() {
            if v & bit != 0 {
                continue;
            }
            let theta = sign * self.levels[d][v >> (m - d)];
            if theta == 0.0 {
                continue;
            }
            let (s, c) = (0.5 * theta).sin_cos();
            let (a0, a1) = (amps[v], amps[v | bit]);
            amps[v] = a0 * c - a1 * s;
            amps[v | bit] = a0 * s + a1 * c;
        }
    }
}

/// Runs the Grover–Rudolph tree for `density` on `|0…0⟩` of an `m`-qubit register.
pub fn grover_rudolph_prepare(density: &dyn DensityOracle, m: usize) -> Result<QuantumState> {
    let tree = GroverRudolph::from_density(density, m)?;
    let mut state = QuantumState::zero(vec![Register::new(DEFAULT_REGISTER, m)])?;
    tree.apply(&mut state, DEFAULT_REGISTER)?;
    Ok(state)
}

/// Normalized single-register state proportional to `samples`.
pub fn inject_amplitudes(samples: &[Complex64]) -> Result<QuantumState> {
    QuantumState::normalized_from(DEFAULT_REGISTER, samples)
}

/// Real-valued convenience wrapper around [`inject_amplitudes`].
pub fn inject_real(samples: &[f64]) -> Result<QuantumState> {
    let c: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    inject_amplitudes(&c)
}
