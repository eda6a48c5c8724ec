//! Lemke-Howson complementary pivoting for bimatrix games.
//!
//! One pivoting run is started from every label (`m + n` starts per game).
//! Each run walks the complementary path from the artificial equilibrium
//! until the dropped label comes back, then reads the equilibrium off the
//! two tableaux. Distinct starts can reach the same equilibrium;
//! deduplication happens in the caller.
//!
//! Payoffs are shifted to be strictly positive first (equilibria are
//! invariant under that). Min-ratio ties break toward the smallest row
//! index; a pivot cap guards against cycling on degenerate games, in which
//! case the start is abandoned (the enumeration is best-effort by
//! construction).

use super::MixedProfile;

/// Coefficient threshold for ratio-test eligibility.
const COEF_EPS: f64 = 1e-12;

pub(super) fn enumerate(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<MixedProfile> {
    let m = a.len();
    let n = a[0].len();
    let mut out = Vec::new();
    for start in 0..m + n {
        if let Some(p) = lemke_howson(a, b, start) {
            out.push(p);
        }
    }
    out
}

/// Tableau with an explicit basis, rows stored dense.
///
/// `cols` counts structural+slack columns; the rhs sits at index `cols`.
struct Tableau {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    /// Label of the basic variable of each row.
    basis: Vec<usize>,
    /// Column owned by each label; fixed at construction.
    label_col: Vec<usize>,
}

impl Tableau {
    fn entry(&self, r: usize, c: usize) -> f64 {
        self.data[r * (self.cols + 1) + c]
    }

    fn entry_mut(&mut self, r: usize, c: usize) -> &mut f64 {
        &mut self.data[r * (self.cols + 1) + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.entry(r, self.cols)
    }

    /// Pivots the variable with `label` into the basis. Returns the label
    /// that leaves, or None when the column is unbounded/empty.
    fn pivot_in(&mut self, label: usize) -> Option<usize> {
        let col = self.label_col[label];
        let mut best: Option<(usize, f64)> = None;
        for r in 0..self.rows {
            let coef = self.entry(r, col);
            if coef > COEF_EPS {
                let ratio = self.rhs(r) / coef;
                match best {
                    Some((_, best_ratio)) if ratio >= best_ratio => {}
                    _ => best = Some((r, ratio)),
                }
            }
        }
        let (row, _) = best?;
        let leaving = self.basis[row];

        let pivot = self.entry(row, col);
        for c in 0..=self.cols {
            *self.entry_mut(row, c) /= pivot;
        }
        for r in 0..self.rows {
            if r != row {
                let factor = self.entry(r, col);
                if factor != 0.0 {
                    for c in 0..=self.cols {
                        let delta = factor * self.entry(row, c);
                        *self.entry_mut(r, c) -= delta;
                    }
                }
            }
        }
        self.basis[row] = label;
        Some(leaving)
    }

    /// Value of the basic variable carrying `label`, 0 when cobasic.
    fn value_of(&self, label: usize) -> f64 {
        self.basis
            .iter()
            .position(|&l| l == label)
            .map_or(0.0, |r| self.rhs(r))
    }
}

/// Runs one Lemke-Howson path dropping `start_label`.
///
/// Row strategies carry labels `0..m`, column strategies `m..m+n`.
fn lemke_howson(a: &[Vec<f64>], b: &[Vec<f64>], start_label: usize) -> Option<MixedProfile> {
    let m = a.len();
    let n = a[0].len();

    // Strictly positive copies; the shift does not move equilibria.
    let shift = a
        .iter()
        .chain(b.iter())
        .flatten()
        .cloned()
        .fold(f64::INFINITY, f64::min)
        - 1.0;

    // Row-player tableau: rows j < n encode Σ_i b[i][j]·x_i + t_j = 1.
    // Structural columns 0..m are x (labels 0..m), slacks carry labels m+j.
    let mut tx = Tableau {
        rows: n,
        cols: m + n,
        data: vec![0.0; n * (m + n + 1)],
        basis: (0..n).map(|j| m + j).collect(),
        label_col: (0..m + n).collect(),
    };
    for j in 0..n {
        for i in 0..m {
            *tx.entry_mut(j, i) = b[i][j] - shift;
        }
        *tx.entry_mut(j, m + j) = 1.0;
        *tx.entry_mut(j, m + n) = 1.0;
    }

    // Column-player tableau: rows i < m encode Σ_j a[i][j]·y_j + s_i = 1.
    // Structural columns 0..n are y (labels m..m+n), slacks carry labels i.
    let mut ty = Tableau {
        rows: m,
        cols: m + n,
        data: vec![0.0; m * (m + n + 1)],
        basis: (0..m).collect(),
        label_col: vec![0; m + n],
    };
    for i in 0..m {
        for j in 0..n {
            *ty.entry_mut(i, j) = a[i][j] - shift;
        }
        *ty.entry_mut(i, n + i) = 1.0;
        *ty.entry_mut(i, m + n) = 1.0;
    }
    for label in 0..m + n {
        ty.label_col[label] = if label < m { n + label } else { label - m };
    }

    // The dropped label enters the tableau where it is cobasic.
    let mut in_tx = start_label < m;
    let mut entering = start_label;
    let max_pivots = 100 * (m + n).max(10);
    for _ in 0..max_pivots {
        let leaving = if in_tx {
            tx.pivot_in(entering)?
        } else {
            ty.pivot_in(entering)?
        };
        if leaving == start_label {
            return extract(&tx, &ty, m, n);
        }
        entering = leaving;
        in_tx = !in_tx;
    }
    None // pivot cap: degenerate cycling, abandon this start
}

fn extract(tx: &Tableau, ty: &Tableau, m: usize, n: usize) -> Option<MixedProfile> {
    let mut w1: Vec<f64> = (0..m).map(|i| tx.value_of(i).max(0.0)).collect();
    let mut w2: Vec<f64> = (0..n).map(|j| ty.value_of(m + j).max(0.0)).collect();
    let s1: f64 = w1.iter().sum();
    let s2: f64 = w2.iter().sum();
    if s1 <= 0.0 || s2 <= 0.0 {
        return None; // artificial equilibrium
    }
    for w in w1.iter_mut() {
        *w /= s1;
    }
    for w in w2.iter_mut() {
        *w /= s2;
    }
    Some(MixedProfile {
        w1,
        w2,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_matching_pennies_mix() {
        let a = vec![vec![1.0, -1.0], vec![-1.0, 1.0]];
        let b = vec![vec![-1.0, 1.0], vec![1.0, -1.0]];
        let profiles = enumerate(&a, &b);
        assert!(!profiles.is_empty());
        for p in profiles {
            for w in p.w1.iter().chain(p.w2.iter()) {
                assert!((w - 0.5).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn finds_pure_equilibrium_of_dominance_game() {
        let a = vec![vec![3.0, 0.0], vec![5.0, 1.0]];
        let b = vec![vec![3.0, 5.0], vec![0.0, 1.0]];
        let profiles = enumerate(&a, &b);
        assert!(!profiles.is_empty());
        for p in profiles {
            assert!((p.w1[1] - 1.0).abs() < 1e-9);
            assert!((p.w2[1] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn battle_of_sexes_reaches_multiple_equilibria() {
        let a = vec![vec![3.0, 0.0], vec![0.0, 2.0]];
        let b = vec![vec![2.0, 0.0], vec![0.0, 3.0]];
        let profiles = enumerate(&a, &b);
        // Both pure equilibria are reachable from some start.
        assert!(profiles.iter().any(|p| p.w1[0] > 0.99 && p.w2[0] > 0.99));
        assert!(profiles.iter().any(|p| p.w1[1] > 0.99 && p.w2[1] > 0.99));
    }
}
