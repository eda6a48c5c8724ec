//! Dense-matrix circuit oracle, independent of the statevector kernels.
//!
//! Builds the full `2^N × 2^N` operators (entangler by truncated power
//! series of the generator, local gates by Kronecker products) and applies
//! them by dense matrix-vector multiplication. Deliberately naive: the
//! point is a second route to the same numbers.

use num_complex::Complex64;

pub type CMat = Vec<Vec<Complex64>>;

pub fn zero(n: usize) -> CMat {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

pub fn identity(n: usize) -> CMat {
    let mut m = zero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = zero(ra * rb);
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    let mut out = zero(n);
    for i in 0..n {
        for k in 0..inner {
            let aik = a[i][k];
            if aik != Complex64::new(0.0, 0.0) {
                for j in 0..m {
                    out[i][j] += aik * b[k][j];
                }
            }
        }
    }
    out
}

pub fn matvec(a: &CMat, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
        .collect()
}

pub fn dagger(a: &CMat) -> CMat {
    let n = a.len();
    let mut out = zero(n);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub fn scale(a: &CMat, c: Complex64) -> CMat {
    a.iter()
        .map(|row| row.iter().map(|x| x * c).collect())
        .collect()
}

pub fn add(a: &CMat, b: &CMat) -> CMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

/// `exp(M)` by the power series, truncated once a term's max entry drops
/// below 1e-30.
pub fn series_expm(m: &CMat) -> CMat {
    let n = m.len();
    let mut sum = identity(n);
    let mut term = identity(n);
    for k in 1..200 {
        term = matmul(&term, m);
        let inv = Complex64::new(1.0 / k as f64, 0.0);
        term = scale(&term, inv);
        sum = add(&sum, &term);
        let biggest = term
            .iter()
            .flatten()
            .map(|x| x.norm())
            .fold(0.0f64, f64::max);
        if biggest < 1e-30 {
            break;
        }
    }
    sum
}

pub fn sigma_x() -> CMat {
    vec![
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    ]
}

pub fn sigma_z() -> CMat {
    vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
    ]
}

fn kron_chain(mats: &[CMat]) -> CMat {
    let mut out = identity(1);
    for m in mats {
        out = kron(&out, m);
    }
    out
}

/// `exp(-i γ/2 σx⊗…⊗σx)` on `n` qubits, via the series.
pub fn dense_entangler(gamma: f64, n: usize) -> CMat {
    let generator = kron_chain(&vec![sigma_x(); n]);
    series_expm(&scale(&generator, Complex64::new(0.0, -gamma / 2.0)))
}

fn dense_local_gate(theta: f64, phi: f64, psi: f64) -> CMat {
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    vec![
        vec![
            Complex64::from_polar(c, phi),
            Complex64::from_polar(s, -psi),
        ],
        vec![
            -Complex64::from_polar(s, psi),
            Complex64::from_polar(c, -phi),
        ],
    ]
}

/// Full dense evaluation: returns the per-qubit `(1 − ⟨σz⟩)/2` readout.
pub fn dense_adjusted(gamma: f64, theta: &[f64], phi: &[f64], psi: &[f64]) -> Vec<f64> {
    let n = theta.len();
    let j = dense_entangler(gamma, n);
    let gates: Vec<CMat> = (0..n)
        .map(|q| dense_local_gate(theta[q], phi[q], psi[q]))
        .collect();
    let u = kron_chain(&gates);
    let mut state = vec![Complex64::new(0.0, 0.0); 1 << n];
    state[0] = Complex64::new(1.0, 0.0);
    let state = matvec(&j, &state);
    let state = matvec(&u, &state);
    let state = matvec(&dagger(&j), &state);
    (0..n)
        .map(|q| {
            let mats: Vec<CMat> = (0..n)
                .map(|i| if i == q { sigma_z() } else { identity(2) })
                .collect();
            let z = kron_chain(&mats);
            let zv = matvec(&z, &state);
            let expect: f64 = state
                .iter()
                .zip(&zv)
                .map(|(a, b)| (a.conj() * b).re)
                .sum();
            (1.0 - expect) / 2.0
        })
        .collect()
}
