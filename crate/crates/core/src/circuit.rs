//! Exact statevector simulation of the valuation-mediation circuit.
//!
//! The circuit is `J†(γ) · (U₁ ⊗ … ⊗ U_N) · J(γ)` applied to `|0…0⟩`. The
//! entangler `J(γ) = exp(-i γ/2 σx⊗…⊗σx)` collapses to
//! `cos(γ/2)·I − i·sin(γ/2)·(σx⊗…⊗σx)` because the generator squares to the
//! identity, so it is applied as one pass over amplitude pairs rather than
//! through a general gate compiler. Local gates are stride sweeps. With at
//! most 12 qubits this is exact, allocation-light and deterministic.
//!
//! Amplitude layout: basis index `b` is read as a binary string with qubit 0
//! as the most significant bit, i.e. qubit `q` of an `n`-qubit register is
//! bit `n - 1 - q` of the index. All oracles in the test suite assume this
//! layout.
//!
//! Readout convention: the adjusted valuation of qubit `i` is the
//! probability of reading `|1⟩`, i.e. `(1 − ⟨σz⟩)/2` under `σz|0⟩ = +|0⟩`.
//! The source analysis prose states the `(1 + ⟨σz⟩)/2` form, but its own
//! closed-form payoffs (see [`closed_form_pair`]) and the requirement that
//! the unentangled circuit reproduce the classical market are only
//! consistent with the probability-of-`|1⟩` readout, so the closed forms are
//! treated as normative.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::{Error, Result};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 12;

/// Slack for validating angles that arrive from grid arithmetic.
const ANGLE_SLACK: f64 = 1e-9;

pub const SIGMA_X: [[Complex64; 2]; 2] = [
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
];

pub const SIGMA_Z: [[Complex64; 2]; 2] = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
];

/// Single-qubit strategy gate.
///
/// First column is `U|0⟩ = e^{iφ} cos(θ/2) |0⟩ − e^{iψ} sin(θ/2) |1⟩`.
pub fn local_gate(theta: f64, phi: f64, psi: f64) -> [[Complex64; 2]; 2] {
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    [
        [
            Complex64::from_polar(c, phi),
            Complex64::from_polar(s, -psi),
        ],
        [
            -Complex64::from_polar(s, psi),
            Complex64::from_polar(c, -phi),
        ],
    ]
}

/// Complex amplitudes of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero_state(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::domain(format!(
                "qubit count {n} outside 1..={MAX_QUBITS}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n_qubits: n, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, basis: usize) -> Complex64 {
        self.amps[basis]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn debug_check_norm(&self) {
        debug_assert!(
            (self.norm_sqr() - 1.0).abs() <= 1e-12,
            "state norm drifted to {}",
            self.norm_sqr()
        );
    }

    /// Applies `J(γ)`: pairs each basis state with its all-bits-flipped partner.
    pub fn apply_entangler(&mut self, gamma: f64) {
        self.apply_entangler_signed(gamma, -1.0)
    }

    /// Applies `J†(γ)`.
    pub fn apply_entangler_adjoint(&mut self, gamma: f64) {
        self.apply_entangler_signed(gamma, 1.0)
    }

    fn apply_entangler_signed(&mut self, gamma: f64, sign: f64) {
        let c = (gamma / 2.0).cos();
        let is = Complex64::new(0.0, sign * (gamma / 2.0).sin());
        let mask = self.amps.len() - 1;
        for idx in 0..self.amps.len() {
            let flip = idx ^ mask;
            if idx < flip {
                let a = self.amps[idx];
                let b = self.amps[flip];
                self.amps[idx] = c * a + is * b;
                self.amps[flip] = c * b + is * a;
            }
        }
        self.debug_check_norm();
    }

    /// Applies a single-qubit gate to `qubit` (0-based, MSB-first layout).
    pub fn apply_local_gate(&mut self, qubit: usize, theta: f64, phi: f64, psi: f64) {
        assert!(qubit < self.n_qubits, "qubit index out of range");
        let u = local_gate(theta, phi, psi);
        let bit = 1usize << (self.n_qubits - 1 - qubit);
        for idx in 0..self.amps.len() {
            if idx & bit == 0 {
                let hi = idx | bit;
                let a0 = self.amps[idx];
                let a1 = self.amps[hi];
                self.amps[idx] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[hi] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
        self.debug_check_norm();
    }

    /// Probability that `qubit` reads `|1⟩`, i.e. `(1 − ⟨σz⟩)/2`.
    pub fn one_probability(&self, qubit: usize) -> f64 {
        assert!(qubit < self.n_qubits, "qubit index out of range");
        let bit = 1usize << (self.n_qubits - 1 - qubit);
        self.amps
            .iter()
            .enumerate()
            .filter(|(idx, _)| idx & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Angles of one mediation-circuit evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitParams {
    gamma: f64,
    theta: Vec<f64>,
    phi: Vec<f64>,
    psi: Vec<f64>,
}

impl CircuitParams {
    /// Validates ranges (`γ ∈ [0, π/2]`, `θ ∈ [0, π]`, `φ, ψ ∈ [0, 2π]`)
    /// and equal lengths. Angles within `1e-9` of a bound are clamped onto
    /// it so grid arithmetic does not trip the checks.
    pub fn new(gamma: f64, theta: Vec<f64>, phi: Vec<f64>, psi: Vec<f64>) -> Result<Self> {
        let n = theta.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::domain(format!(
                "{n} qubit angles outside 1..={MAX_QUBITS}"
            )));
        }
        if phi.len() != n || psi.len() != n {
            return Err(Error::domain(format!(
                "angle sequences disagree: theta {}, phi {}, psi {}",
                n,
                phi.len(),
                psi.len()
            )));
        }
        let gamma = checked_angle(gamma, 0.0, PI / 2.0, "gamma")?;
        let mut params = CircuitParams {
            gamma,
            theta,
            phi,
            psi,
        };
        for t in params.theta.iter_mut() {
            *t = checked_angle(*t, 0.0, PI, "theta")?;
        }
        for p in params.phi.iter_mut() {
            *p = checked_angle(*p, 0.0, 2.0 * PI, "phi")?;
        }
        for p in params.psi.iter_mut() {
            *p = checked_angle(*p, 0.0, 2.0 * PI, "psi")?;
        }
        Ok(params)
    }

    pub fn n_qubits(&self) -> usize {
        self.theta.len()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }
}

fn checked_angle(value: f64, lo: f64, hi: f64, name: &str) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::domain(format!("{name} is not finite")));
    }
    if value < lo - ANGLE_SLACK || value > hi + ANGLE_SLACK {
        return Err(Error::domain(format!(
            "{name} = {value} outside [{lo}, {hi}]"
        )));
    }
    Ok(value.clamp(lo, hi))
}

/// Per-qubit `|1⟩` probabilities, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjustedValuations {
    values: Vec<f64>,
}

impl AdjustedValuations {
    fn from_probabilities(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| (-1e-12..=1.0 + 1e-12).contains(v)));
        let values = values.iter().map(|v| v.clamp(0.0, 1.0)).collect();
        AdjustedValuations { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `J(γ)|0…0⟩ = cos(γ/2)|0…0⟩ − i·sin(γ/2)|1…1⟩`.
pub fn entangler_state(gamma: f64, n: usize) -> Result<Statevector> {
    let gamma = checked_angle(gamma, 0.0, PI / 2.0, "gamma")?;
    let mut state = Statevector::zero_state(n)?;
    state.apply_entangler(gamma);
    Ok(state)
}

/// Runs the full mediation circuit and reads out per-qubit valuations.
pub fn adjusted_valuations(params: &CircuitParams) -> Result<AdjustedValuations> {
    let n = params.n_qubits();
    let mut state = Statevector::zero_state(n)?;
    state.apply_entangler(params.gamma);
    for q in 0..n {
        state.apply_local_gate(q, params.theta[q], params.phi[q], params.psi[q]);
    }
    state.apply_entangler_adjoint(params.gamma);
    let probs = (0..n).map(|q| state.one_probability(q)).collect();
    Ok(AdjustedValuations::from_probabilities(probs))
}

/// Closed-form two-player valuations at `(φ, ψ) = (0, 0)`:
///
/// `((1 − cos²γ·cosθ₁ − sin²γ·cosθ₂)/2, (1 − cos²γ·cosθ₂ − sin²γ·cosθ₁)/2)`.
///
/// This is the normative oracle the statevector route is checked against.
pub fn closed_form_pair(theta1: f64, theta2: f64, gamma: f64) -> Result<(f64, f64)> {
    let theta1 = checked_angle(theta1, 0.0, PI, "theta1")?;
    let theta2 = checked_angle(theta2, 0.0, PI, "theta2")?;
    let gamma = checked_angle(gamma, 0.0, PI / 2.0, "gamma")?;
    let c = gamma.cos().powi(2);
    let s = gamma.sin().powi(2);
    Ok((
        (1.0 - c * theta1.cos() - s * theta2.cos()) / 2.0,
        (1.0 - c * theta2.cos() - s * theta1.cos()) / 2.0,
    ))
}

/// Result of encoding raw cash valuations as polar angles.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleEncoding {
    /// `θᵢ = π·$ᵢ/$_max`, all zero in the degenerate case.
    pub thetas: Vec<f64>,
    /// The round's maximum raw valuation, used for the inverse rescale.
    pub max: f64,
    /// True when every raw valuation was zero: the scaling is undefined and
    /// the circuit is skipped (zero bids mean no market).
    pub degenerate: bool,
}

/// Scales raw valuations `$ᵢ ≥ 0` to `θᵢ = π·$ᵢ/$_max`.
pub fn rescale_to_market(raw: &[f64]) -> Result<AngleEncoding> {
    if raw.is_empty() {
        return Err(Error::domain("no valuations to rescale"));
    }
    for (i, v) in raw.iter().enumerate() {
        if !v.is_finite() || *v < 0.0 {
            return Err(Error::domain(format!("valuation {i} = {v} is negative")));
        }
    }
    let max = raw.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(AngleEncoding {
            thetas: vec![0.0; raw.len()],
            max: 0.0,
            degenerate: true,
        });
    }
    let thetas = raw.iter().map(|v| PI * (v / max)).collect();
    Ok(AngleEncoding {
        thetas,
        max,
        degenerate: false,
    })
}
