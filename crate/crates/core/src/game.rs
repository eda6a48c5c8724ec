//! Classical and circuit-mediated p-guessing games.
//!
//! The classical game has players pick `xᵢ ∈ [0, 100]` and pays
//! `uᵢ = −(xᵢ − (p/N)·Σⱼ xⱼ)²`. The quantum variant identifies the `xᵢ`
//! with the circuit's adjusted valuations on the `[0, 1]` scale (Nash sets
//! are invariant under the positive affine rescale, so utilities are not
//! mapped back to cash units here).
//!
//! The analytic best-response helpers ([`p1_extremum`], [`p1_best_response`],
//! [`p2_best_response`]) cover the maximally entangled two-player `p = 2/3`
//! game with the phase offset `(φ₁, φ₂) = (0, π/3)` and `ψ = 0` — the
//! configuration whose best-response sets never intersect, eliminating the
//! pure bust equilibrium.

use std::f64::consts::PI;

use crate::circuit::{adjusted_valuations, CircuitParams};
use crate::{Error, Result};

/// Which strategy scale a game lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueScale {
    /// Raw bids in `[0, 100]` cash units, no circuit.
    Classical0To100,
    /// Polar angles in `[0, π]` read out through the circuit to `[0, 1]`.
    Quantum0To1,
}

/// A p-guessing game configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec {
    n_players: usize,
    p: f64,
    gamma: f64,
    phases: Vec<(f64, f64)>,
    scale: ValueScale,
}

impl GameSpec {
    /// Classical game on the `[0, 100]` scale.
    pub fn classical(n_players: usize, p: f64) -> Result<Self> {
        if n_players < 2 {
            return Err(Error::config(format!("need ≥ 2 players, got {n_players}")));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::config(format!("p = {p} outside (0, 1]")));
        }
        Ok(GameSpec {
            n_players,
            p,
            gamma: 0.0,
            phases: vec![(0.0, 0.0); n_players],
            scale: ValueScale::Classical0To100,
        })
    }

    /// Circuit-mediated game; one `φ` per player, `ψ = 0`.
    pub fn quantum(p: f64, gamma: f64, phis: &[f64]) -> Result<Self> {
        Self::quantum_with_psi(p, gamma, &phis.iter().map(|&f| (f, 0.0)).collect::<Vec<_>>())
    }

    /// Circuit-mediated game with explicit `(φ, ψ)` pairs.
    pub fn quantum_with_psi(p: f64, gamma: f64, phases: &[(f64, f64)]) -> Result<Self> {
        if phases.len() < 2 {
            return Err(Error::config(format!(
                "need ≥ 2 players, got {}",
                phases.len()
            )));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::config(format!("p = {p} outside (0, 1]")));
        }
        if !(0.0..=PI / 2.0 + 1e-9).contains(&gamma) {
            return Err(Error::config(format!("gamma = {gamma} outside [0, π/2]")));
        }
        Ok(GameSpec {
            n_players: phases.len(),
            p,
            gamma: gamma.min(PI / 2.0),
            phases: phases.to_vec(),
            scale: ValueScale::Quantum0To1,
        })
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn phases(&self) -> &[(f64, f64)] {
        &self.phases
    }

    pub fn scale(&self) -> ValueScale {
        self.scale
    }
}

fn guessing_utility(values: &[f64], p: f64, i: usize) -> f64 {
    let n = values.len() as f64;
    let target = p / n * values.iter().sum::<f64>();
    -(values[i] - target).powi(2)
}

/// `uᵢ = −(xᵢ − (p/N)·Σⱼ xⱼ)²` on the classical scale.
pub fn classical_utility(profile: &[f64], spec: &GameSpec, i: usize) -> Result<f64> {
    if spec.scale != ValueScale::Classical0To100 {
        return Err(Error::domain("classical_utility needs a classical game"));
    }
    if profile.len() != spec.n_players {
        return Err(Error::domain(format!(
            "profile has {} entries for {} players",
            profile.len(),
            spec.n_players
        )));
    }
    if i >= spec.n_players {
        return Err(Error::domain(format!("player index {i} out of range")));
    }
    for x in profile {
        if !(0.0..=100.0).contains(x) {
            return Err(Error::domain(format!("bid {x} outside [0, 100]")));
        }
    }
    Ok(guessing_utility(profile, spec.p, i))
}

/// The unique maximizer `xᵢ = (p/(N−p))·Σⱼ≠ᵢ xⱼ`, clamped to `[0, 100]`.
///
/// Uniqueness follows from the utility being a downward parabola in `xᵢ`
/// (second derivative `−2(1 − p/N)² < 0`).
pub fn classical_best_response(others: &[f64], spec: &GameSpec) -> Result<f64> {
    if others.len() + 1 != spec.n_players {
        return Err(Error::domain(format!(
            "{} opponents for an {}-player game",
            others.len(),
            spec.n_players
        )));
    }
    let n = spec.n_players as f64;
    let sum: f64 = others.iter().sum();
    Ok((spec.p / (n - spec.p) * sum).clamp(0.0, 100.0))
}

/// The all-zeros bust profile, the game's single pure Nash equilibrium.
pub fn classical_pure_nash(spec: &GameSpec) -> Result<Vec<f64>> {
    if spec.p >= 1.0 {
        return Err(Error::domain(
            "p = 1 has a continuum of equilibria; only 0 < p < 1 is supported",
        ));
    }
    Ok(vec![0.0; spec.n_players])
}

/// Adjusted valuations for a full strategy profile of raw angles.
pub fn quantum_valuations(angles: &[f64], spec: &GameSpec) -> Result<Vec<f64>> {
    if spec.scale != ValueScale::Quantum0To1 {
        return Err(Error::domain("quantum_valuations needs a quantum game"));
    }
    if angles.len() != spec.n_players {
        return Err(Error::domain(format!(
            "profile has {} entries for {} players",
            angles.len(),
            spec.n_players
        )));
    }
    let params = CircuitParams::new(
        spec.gamma,
        angles.to_vec(),
        spec.phases.iter().map(|p| p.0).collect(),
        spec.phases.iter().map(|p| p.1).collect(),
    )?;
    Ok(adjusted_valuations(&params)?.values().to_vec())
}

/// Guessing-game utility with `xᵢ` identified with the adjusted valuations.
pub fn quantum_utility(angles: &[f64], spec: &GameSpec, i: usize) -> Result<f64> {
    if i >= spec.n_players {
        return Err(Error::domain(format!("player index {i} out of range")));
    }
    let values = quantum_valuations(angles, spec)?;
    Ok(guessing_utility(&values, spec.p, i))
}

/// Both players' utilities in a two-player quantum game, one circuit call.
pub fn quantum_utility_pair(theta1: f64, theta2: f64, spec: &GameSpec) -> Result<(f64, f64)> {
    let values = quantum_valuations(&[theta1, theta2], spec)?;
    Ok((
        guessing_utility(&values, spec.p, 0),
        guessing_utility(&values, spec.p, 1),
    ))
}

/// The analyzed mismatched-phase configuration: maximal entanglement,
/// `p = 2/3`, `(φ₁, φ₂) = (0, π/3)`, `ψ = 0`.
pub fn mismatched_phase_game() -> GameSpec {
    GameSpec::quantum(2.0 / 3.0, PI / 2.0, &[0.0, PI / 3.0]).expect("static config is valid")
}

fn clamped_acos(x: f64) -> f64 {
    debug_assert!(
        (-1.0 - 1e-12..=1.0 + 1e-12).contains(&x),
        "acos argument {x} too far outside [-1, 1]"
    );
    x.clamp(-1.0, 1.0).acos()
}

/// Stationary points of player 1's utility in the mismatched-phase game.
///
/// `cosθ₁ = ±√((1 − 6cosθ₂ + 9cos²θ₂)/(13 − 6cosθ₂ − 3cos²θ₂))`, negative
/// branch below `θ₂ = arccos(1/3)`, positive at and above it. Except at
/// `(0,0)` and `(π,π)` these are utility minima, which is why the best
/// response lives on the boundary (see [`p1_best_response`]).
pub fn p1_extremum(theta2: f64) -> Result<f64> {
    let theta2 = validated_theta(theta2)?;
    let c2 = theta2.cos();
    let num = 1.0 - 6.0 * c2 + 9.0 * c2 * c2;
    let den = 13.0 - 6.0 * c2 - 3.0 * c2 * c2;
    let root = (num / den).max(0.0).sqrt();
    let c1 = if theta2 < clamped_acos(1.0 / 3.0) {
        -root
    } else {
        root
    };
    Ok(clamped_acos(c1))
}

fn validated_theta(theta: f64) -> Result<f64> {
    if !theta.is_finite() || !(-1e-9..=PI + 1e-9).contains(&theta) {
        return Err(Error::domain(format!("theta = {theta} outside [0, π]")));
    }
    Ok(theta.clamp(0.0, PI))
}

/// Player 1's best response in the mismatched-phase game: the better of the
/// boundary values `{0, π}`, ties broken toward `0`.
pub fn p1_best_response(theta2: f64) -> Result<f64> {
    let theta2 = validated_theta(theta2)?;
    let spec = mismatched_phase_game();
    let at_zero = quantum_utility(&[0.0, theta2], &spec, 0)?;
    let at_pi = quantum_utility(&[PI, theta2], &spec, 0)?;
    Ok(if at_zero >= at_pi { 0.0 } else { PI })
}

/// Player 2's best response in the mismatched-phase game.
///
/// The maximizing stationary points satisfy
/// `cosθ₂ = (1 + 4cosθ₁ − 12cos²θ₁ ± 8√6·Δ(θ₁)·sinθ₁)
///          / (12cos²θ₁ − 12cosθ₁ − 49)`
/// with `Δ(θ₁) = √(5 + 2cosθ₁ − cos2θ₁)`; the minus branch exists on
/// `0 ≤ θ₁ ≤ 2π/3` and the plus branch on `π/2 ≤ θ₁ ≤ π` (outside those
/// windows the root leaves `[−1, 1]`). Where both exist the candidate with
/// the higher utility wins, ties toward the minus branch.
///
/// The source text prints the discriminant term with `sin²θ₁`; symbolic
/// differentiation of the utility gives `sinθ₁` (the quadratic's
/// discriminant is `384·sin²θ₁·Δ²`), and only the corrected first power
/// matches the utility's grid argmax, so that is what is implemented. The
/// two spot values `cosθ₂ = 1/7` at `θ₁ = 0` and `3/5` at `θ₁ = π` are
/// unaffected because the term vanishes there.
pub fn p2_best_response(theta1: f64) -> Result<f64> {
    let theta1 = validated_theta(theta1)?;
    let c1 = theta1.cos();
    let s1 = theta1.sin();
    let delta = (5.0 + 2.0 * c1 - (2.0 * theta1).cos()).sqrt();
    let den = 12.0 * c1 * c1 - 12.0 * c1 - 49.0;
    let base = 1.0 + 4.0 * c1 - 12.0 * c1 * c1;
    let term = 8.0 * 6.0f64.sqrt() * delta * s1;

    let mut candidates = Vec::with_capacity(2);
    if theta1 <= 2.0 * PI / 3.0 + 1e-12 {
        candidates.push(clamped_acos((base - term) / den));
    }
    if theta1 >= PI / 2.0 - 1e-12 {
        candidates.push(clamped_acos((base + term) / den));
    }

    let spec = mismatched_phase_game();
    let mut best = candidates[0];
    let mut best_u = quantum_utility(&[theta1, best], &spec, 1)?;
    for &cand in candidates.iter().skip(1) {
        let u = quantum_utility(&[theta1, cand], &spec, 1)?;
        if u > best_u {
            best = cand;
            best_u = u;
        }
    }
    Ok(best)
}

/// Grid cells `(i, j) ↦ (iπ/k, jπ/k)` where both strategies attain the
/// exact argmax of their own utility over the cell's row/column.
///
/// Ties count: a cell qualifies whenever its utility equals the computed
/// column (row) maximum, so weak equilibria are reported. An empty result
/// certifies that the grid has no pure Nash cell.
pub fn pure_nash_scan(spec: &GameSpec, k: usize) -> Result<Vec<(usize, usize)>> {
    if spec.n_players != 2 || spec.scale != ValueScale::Quantum0To1 {
        return Err(Error::domain("pure_nash_scan needs a two-player quantum game"));
    }
    if k < 2 {
        return Err(Error::domain(format!("grid resolution k = {k} below 2")));
    }
    let grid: Vec<f64> = (0..=k).map(|n| PI * (n as f64 / k as f64)).collect();
    let mut u1 = vec![vec![0.0; k + 1]; k + 1];
    let mut u2 = vec![vec![0.0; k + 1]; k + 1];
    for (m, &t1) in grid.iter().enumerate() {
        for (n, &t2) in grid.iter().enumerate() {
            let (a, b) = quantum_utility_pair(t1, t2, spec)?;
            u1[m][n] = a;
            u2[m][n] = b;
        }
    }
    let mut cells = Vec::new();
    for m in 0..=k {
        for n in 0..=k {
            let col_max = (0..=k).map(|r| u1[r][n]).fold(f64::NEG_INFINITY, f64::max);
            let row_max = (0..=k).map(|c| u2[m][c]).fold(f64::NEG_INFINITY, f64::max);
            if u1[m][n] == col_max && u2[m][n] == row_max {
                cells.push((m, n));
            }
        }
    }
    Ok(cells)
}
