//! Seeded random streams for reproducible runs.
//!
//! Every source of randomness in a run is a ChaCha12 stream keyed by the
//! run seed. Stream ids keep the consumers independent:
//!
//! * stream 0 — per-round circuit phases (and the optional matching
//!   shuffle, which draws after the phases),
//! * stream `i + 1` — trader `i` (network initialization first, then one
//!   exploration draw per round).
//!
//! Sweeps derive `run_seed = master_seed + run_index` (wrapping), so any
//! run of an experiment can be reproduced in isolation.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Stream id reserved for circuit phases within a run.
pub const PHASE_STREAM: u64 = 0;

/// A deterministic uniform/Gaussian source backed by ChaCha12.
pub struct Stream {
    rng: ChaCha12Rng,
}

impl Stream {
    /// Stream `stream` of the generator keyed by `seed`.
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Stream { rng }
    }

    /// The stream for trader `trader_id` in the run keyed by `run_seed`.
    pub fn for_trader(run_seed: u64, trader_id: usize) -> Self {
        Stream::new(run_seed, trader_id as u64 + 1)
    }

    /// Uniform draw in `[0, 1)` built from the top 53 bits of a word.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal draw via the Box-Muller transform.
    ///
    /// Consumes exactly two uniforms and discards the sine partner, so the
    /// draw sequence is identical on every platform.
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform(); // (0, 1] keeps the log finite
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = (self.rng.next_u64() % (i as u64 + 1)) as usize;
            items.swap(i, j);
        }
    }
}

/// Seed for run `run_index` of a sweep keyed by `master_seed`.
pub fn derive_run_seed(master_seed: u64, run_index: u64) -> u64 {
    master_seed.wrapping_add(run_index)
}
