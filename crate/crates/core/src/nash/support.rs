//! Exhaustive support enumeration for small bimatrix games.
//!
//! For every pair of equal-size supports the two indifference systems are
//! solved and the candidate kept when both weight vectors are strictly
//! positive on their support and no pure deviation beats the support
//! payoff. Support pairs of unequal size cannot carry isolated equilibria:
//! one of the two indifference systems is then underdetermined, so the
//! equilibrium (if any) lies in a continuum whose extreme points show up
//! under smaller equal-size supports. They are therefore skipped.
//!
//! A singular indifference system marks a degenerate game. The pair is
//! retried with a lexicographic `1e-9` payoff perturbation; a candidate
//! found that way must still pass the unperturbed audit and is flagged
//! [`MixedProfile::degenerate`].

use super::{MixedProfile, AUDIT_EPS, SUPPORT_EPS};

/// Relative pivot threshold for calling a system singular.
const PIVOT_EPS: f64 = 1e-12;

pub(super) fn enumerate(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<MixedProfile> {
    let m = a.len();
    let n = a[0].len();
    let mut out = Vec::new();
    let mut scratch = Scratch::new(m.min(n));
    for size in 1..=m.min(n) {
        let mut rows = Combinations::new(m, size);
        while let Some(s1) = rows.next() {
            let mut cols = Combinations::new(n, size);
            while let Some(s2) = cols.next() {
                match solve_pair(a, b, s1, s2, &mut scratch) {
                    PairOutcome::Equilibrium(p) => out.push(p),
                    PairOutcome::None => {}
                    PairOutcome::Singular => {
                        if let Some(p) = retry_perturbed(a, b, s1, s2, &mut scratch) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

enum PairOutcome {
    Equilibrium(MixedProfile),
    None,
    Singular,
}

struct Scratch {
    /// Augmented system, row-major, (size+1) x (size+2).
    sys: Vec<f64>,
    y: Vec<f64>,
    x: Vec<f64>,
}

impl Scratch {
    fn new(max_size: usize) -> Self {
        let w = max_size + 2;
        Scratch {
            sys: vec![0.0; (max_size + 1) * w],
            y: vec![0.0; max_size + 1],
            x: vec![0.0; max_size + 1],
        }
    }
}

fn solve_pair(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    s1: &[usize],
    s2: &[usize],
    scratch: &mut Scratch,
) -> PairOutcome {
    let size = s1.len();
    let m = a.len();
    let n = a[0].len();

    // Column-player weights y: rows of the support are indifferent.
    //   Σ_c a[i][S2[c]]·y_c − v = 0  for i ∈ S1,   Σ_c y_c = 1
    for (r, &i) in s1.iter().enumerate() {
        for (c, &j) in s2.iter().enumerate() {
            scratch.sys[r * (size + 2) + c] = a[i][j];
        }
        scratch.sys[r * (size + 2) + size] = -1.0;
        scratch.sys[r * (size + 2) + size + 1] = 0.0;
    }
    for c in 0..size {
        scratch.sys[size * (size + 2) + c] = 1.0;
    }
    scratch.sys[size * (size + 2) + size] = 0.0;
    scratch.sys[size * (size + 2) + size + 1] = 1.0;
    if !gaussian_solve(&mut scratch.sys, size + 1, &mut scratch.y) {
        return PairOutcome::Singular;
    }
    let v = scratch.y[size];
    if scratch.y[..size].iter().any(|&w| w <= SUPPORT_EPS) {
        return PairOutcome::None;
    }

    // Row-player weights x: columns of the support are indifferent.
    for (r, &j) in s2.iter().enumerate() {
        for (c, &i) in s1.iter().enumerate() {
            scratch.sys[r * (size + 2) + c] = b[i][j];
        }
        scratch.sys[r * (size + 2) + size] = -1.0;
        scratch.sys[r * (size + 2) + size + 1] = 0.0;
    }
    for c in 0..size {
        scratch.sys[size * (size + 2) + c] = 1.0;
    }
    scratch.sys[size * (size + 2) + size] = 0.0;
    scratch.sys[size * (size + 2) + size + 1] = 1.0;
    if !gaussian_solve(&mut scratch.sys, size + 1, &mut scratch.x) {
        return PairOutcome::Singular;
    }
    let w = scratch.x[size];
    if scratch.x[..size].iter().any(|&x| x <= SUPPORT_EPS) {
        return PairOutcome::None;
    }

    // No pure deviation may beat the support payoff.
    for row in a.iter().take(m) {
        let payoff: f64 = s2
            .iter()
            .enumerate()
            .map(|(c, &j)| scratch.y[c] * row[j])
            .sum();
        if payoff > v + AUDIT_EPS {
            return PairOutcome::None;
        }
    }
    for j in 0..n {
        let payoff: f64 = s1
            .iter()
            .enumerate()
            .map(|(c, &i)| scratch.x[c] * b[i][j])
            .sum();
        if payoff > w + AUDIT_EPS {
            return PairOutcome::None;
        }
    }

    let mut w1 = vec![0.0; m];
    let mut w2 = vec![0.0; n];
    for (c, &i) in s1.iter().enumerate() {
        w1[i] = scratch.x[c];
    }
    for (c, &j) in s2.iter().enumerate() {
        w2[j] = scratch.y[c];
    }
    PairOutcome::Equilibrium(MixedProfile {
        w1,
        w2,
        degenerate: false,
    })
}

fn retry_perturbed(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    s1: &[usize],
    s2: &[usize],
    scratch: &mut Scratch,
) -> Option<MixedProfile> {
    let n = a[0].len();
    // Quadratic residues keep the nudges from being affine in the cell
    // index, which a linear ramp would be (and affine nudges can leave an
    // affinely-degenerate system singular).
    let nudge = |i: usize, j: usize| {
        let idx = (i * n + j + 1) as u64;
        1e-9 * ((idx * idx % 9973) as f64 / 9973.0)
    };
    let pa: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, x)| x + nudge(i, j)).collect())
        .collect();
    let pb: Vec<Vec<f64>> = b
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, x)| x + nudge(i, j)).collect())
        .collect();
    match solve_pair(&pa, &pb, s1, s2, scratch) {
        PairOutcome::Equilibrium(mut p) => {
            p.degenerate = true;
            Some(p)
        }
        _ => None,
    }
}

/// In-place Gaussian elimination with partial pivoting on an `n x (n+1)`
/// augmented system stored row-major with stride `n + 1`. Returns false
/// when a pivot is smaller than `PIVOT_EPS` relative to the system scale.
fn gaussian_solve(sys: &mut [f64], n: usize, out: &mut [f64]) -> bool {
    let stride = n + 1;
    let scale = sys
        .iter()
        .take(n * stride)
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(1.0);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| {
                sys[r * stride + col]
                    .abs()
                    .partial_cmp(&sys[s * stride + col].abs())
                    .unwrap()
            })
            .unwrap();
        if sys[pivot_row * stride + col].abs() < PIVOT_EPS * scale {
            return false;
        }
        if pivot_row != col {
            for k in 0..stride {
                sys.swap(col * stride + k, pivot_row * stride + k);
            }
        }
        let pivot = sys[col * stride + col];
        for row in col + 1..n {
            let factor = sys[row * stride + col] / pivot;
            if factor != 0.0 {
                for k in col..stride {
                    sys[row * stride + k] -= factor * sys[col * stride + k];
                }
            }
        }
    }
    for row in (0..n).rev() {
        let mut acc = sys[row * stride + n];
        for k in row + 1..n {
            acc -= sys[row * stride + k] * out[k];
        }
        out[row] = acc / sys[row * stride + row];
    }
    true
}

/// Lexicographic k-combinations of `0..n` without allocation per step.
struct Combinations {
    indices: Vec<usize>,
    n: usize,
    started: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            indices: (0..k).collect(),
            n,
            started: false,
            done: k > n || k == 0,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.indices);
        }
        let k = self.indices.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.indices[i] != i + self.n - k {
                break;
            }
        }
        self.indices[i] += 1;
        for j in i + 1..k {
            self.indices[j] = self.indices[j - 1] + 1;
        }
        Some(&self.indices)
    }
}
