//! Discretized bimatrix games and mixed-strategy equilibrium enumeration.
//!
//! [`build_bimatrix`] samples a two-player game on the `k+1`-point strategy
//! grid. [`enumerate_mixed`] finds mixed equilibria: games with at most 13
//! strategies per side get exhaustive support enumeration (complete for
//! isolated equilibria), larger games get Lemke-Howson pivoting restarted
//! from every label, which is best-effort — the completeness class is
//! recorded on the result so downstream reports can label it.
//!
//! Every returned profile passes an ε-best-response audit with `ε = 1e-8`
//! against the unperturbed payoffs.

mod lemke;
mod support;

use std::f64::consts::PI;

use crate::game::{classical_utility, quantum_utility_pair, GameSpec, ValueScale};
use crate::{Error, Result};

/// Weight below which a strategy does not count as support.
pub const SUPPORT_EPS: f64 = 1e-9;
/// Best-response audit slack.
pub const AUDIT_EPS: f64 = 1e-8;
/// L∞ tolerance for deduplicating profiles from different solver starts.
pub const DEDUP_EPS: f64 = 1e-7;
/// Side length above which support enumeration is no longer attempted.
pub const SUPPORT_ENUMERATION_LIMIT: usize = 13;

/// Payoff matrices of a discretized two-player game.
#[derive(Debug, Clone, PartialEq)]
pub struct Bimatrix {
    /// Row player payoffs, `(k+1) × (k+1)`.
    pub a: Vec<Vec<f64>>,
    /// Column player payoffs, same shape.
    pub b: Vec<Vec<f64>>,
    /// Strategy labels: angles `nπ/k` for quantum games, bids `100n/k` for
    /// classical ones.
    pub grid: Vec<f64>,
}

impl Bimatrix {
    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }
}

/// One mixed-strategy equilibrium.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile {
    /// Row-player weights, non-negative, summing to 1.
    pub w1: Vec<f64>,
    /// Column-player weights.
    pub w2: Vec<f64>,
    /// True when the profile was recovered through the lexicographic
    /// payoff perturbation (singular indifference system).
    pub degenerate: bool,
}

impl MixedProfile {
    pub fn support1(&self) -> Vec<usize> {
        support_of(&self.w1)
    }

    pub fn support2(&self) -> Vec<usize> {
        support_of(&self.w2)
    }
}

fn support_of(w: &[f64]) -> Vec<usize> {
    w.iter()
        .enumerate()
        .filter(|(_, &x)| x > SUPPORT_EPS)
        .map(|(i, _)| i)
        .collect()
}

/// Which algorithm produced an equilibrium set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    /// Exhaustive support enumeration; complete for isolated equilibria.
    SupportEnumeration,
    /// Lemke-Howson from every label; may miss equilibria unreachable from
    /// the artificial start.
    LemkeHowson,
}

impl SolverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::SupportEnumeration => "support-enumeration",
            SolverKind::LemkeHowson => "lemke-howson-all-starts",
        }
    }
}

/// Equilibria plus the completeness class of the solver that found them.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSet {
    pub profiles: Vec<MixedProfile>,
    pub solver: SolverKind,
    /// False when the enumeration is best-effort.
    pub complete: bool,
}

/// Samples the game's payoff matrices on the discretization grid.
pub fn build_bimatrix(spec: &GameSpec, k: usize) -> Result<Bimatrix> {
    if spec.n_players() != 2 {
        return Err(Error::domain("bimatrix games need exactly two players"));
    }
    if k < 1 {
        return Err(Error::domain("grid resolution k must be at least 1"));
    }
    let size = k + 1;
    let mut a = vec![vec![0.0; size]; size];
    let mut b = vec![vec![0.0; size]; size];
    let grid: Vec<f64> = match spec.scale() {
        ValueScale::Quantum0To1 => (0..size).map(|n| PI * (n as f64 / k as f64)).collect(),
        ValueScale::Classical0To100 => {
            (0..size).map(|n| 100.0 * (n as f64 / k as f64)).collect()
        }
    };
    for (m, &s1) in grid.iter().enumerate() {
        for (n, &s2) in grid.iter().enumerate() {
            match spec.scale() {
                ValueScale::Quantum0To1 => {
                    let (u1, u2) = quantum_utility_pair(s1, s2, spec)?;
                    a[m][n] = u1;
                    b[m][n] = u2;
                }
                ValueScale::Classical0To100 => {
                    let profile = [s1, s2];
                    a[m][n] = classical_utility(&profile, spec, 0)?;
                    b[m][n] = classical_utility(&profile, spec, 1)?;
                }
            }
        }
    }
    Ok(Bimatrix { a, b, grid })
}

/// Enumerates mixed equilibria, dispatching on game size.
pub fn enumerate_mixed(game: &Bimatrix) -> Result<EquilibriumSet> {
    let (m, n) = (game.rows(), game.cols());
    if m == 0 || n == 0 {
        return Err(Error::domain("empty payoff matrix"));
    }
    for row in game.a.iter().chain(game.b.iter()) {
        if row.len() != n {
            return Err(Error::domain("ragged payoff matrix"));
        }
        if row.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("payoff matrix has non-finite entries"));
        }
    }

    let (mut profiles, solver, complete) = if m.max(n) <= SUPPORT_ENUMERATION_LIMIT {
        (
            support::enumerate(&game.a, &game.b),
            SolverKind::SupportEnumeration,
            true,
        )
    } else {
        (
            lemke::enumerate(&game.a, &game.b),
            SolverKind::LemkeHowson,
            false,
        )
    };

    profiles.retain(|p| best_response_audit(p, game, AUDIT_EPS));
    let mut profiles = dedup(profiles);
    sort_profiles(&mut profiles);
    Ok(EquilibriumSet {
        profiles,
        solver,
        complete,
    })
}

/// Checks that no pure deviation improves either player by more than `eps`.
pub fn best_response_audit(profile: &MixedProfile, game: &Bimatrix, eps: f64) -> bool {
    let (m, n) = (game.rows(), game.cols());
    if profile.w1.len() != m || profile.w2.len() != n {
        return false;
    }
    let sums_ok = |w: &[f64]| {
        w.iter().all(|&x| x >= -SUPPORT_EPS) && (w.iter().sum::<f64>() - 1.0).abs() <= 1e-9
    };
    if !sums_ok(&profile.w1) || !sums_ok(&profile.w2) {
        return false;
    }
    let row_payoffs: Vec<f64> = (0..m)
        .map(|i| (0..n).map(|j| game.a[i][j] * profile.w2[j]).sum())
        .collect();
    let col_payoffs: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| game.b[i][j] * profile.w1[i]).sum())
        .collect();
    let exp1: f64 = (0..m).map(|i| profile.w1[i] * row_payoffs[i]).sum();
    let exp2: f64 = (0..n).map(|j| profile.w2[j] * col_payoffs[j]).sum();
    row_payoffs.iter().all(|&u| u <= exp1 + eps) && col_payoffs.iter().all(|&u| u <= exp2 + eps)
}

/// `(Σₙ w1[n]·grid[n], Σₙ w2[n]·grid[n])`.
pub fn average_strategy(profile: &MixedProfile, game: &Bimatrix) -> (f64, f64) {
    let avg = |w: &[f64]| w.iter().zip(&game.grid).map(|(x, g)| x * g).sum();
    (avg(&profile.w1), avg(&profile.w2))
}

fn dedup(profiles: Vec<MixedProfile>) -> Vec<MixedProfile> {
    let mut kept: Vec<MixedProfile> = Vec::new();
    for p in profiles {
        let dup = kept.iter().any(|q| {
            let d1 = p
                .w1
                .iter()
                .zip(&q.w1)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let d2 = p
                .w2
                .iter()
                .zip(&q.w2)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            d1 <= DEDUP_EPS && d2 <= DEDUP_EPS
        });
        if !dup {
            kept.push(p);
        }
    }
    kept
}

/// Deterministic result order regardless of solver scheduling: by support
/// sets, then by weight vectors.
fn sort_profiles(profiles: &mut [MixedProfile]) {
    profiles.sort_by(|p, q| {
        (p.support1(), p.support2())
            .cmp(&(q.support1(), q.support2()))
            .then_with(|| cmp_weights(&p.w1, &q.w1))
            .then_with(|| cmp_weights(&p.w2, &q.w2))
    });
}

fn cmp_weights(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    std::cmp::Ordering::Equal
}
