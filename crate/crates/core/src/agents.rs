//! Feedforward trading policies trained per round by REINFORCE with Adam.
//!
//! Each policy is a 3→32→32→1 network with rectified-linear hidden layers
//! and an identity output. The action is the output mean plus a standard
//! normal draw (fixed `σ = 1`); its sign picks the side of the order and
//! its magnitude the valuation. One market round is a one-step episode:
//! the gradient of `R·log π(a|μ)` reduces to `R·(a−μ)·∂μ/∂params` and one
//! bias-corrected Adam ascent step is applied per round.

use crate::rng::Stream;
use crate::{Error, Result};

pub const INPUT_DIM: usize = 3;
pub const HIDDEN_DIM: usize = 32;

const W1_LEN: usize = HIDDEN_DIM * INPUT_DIM;
const W2_LEN: usize = HIDDEN_DIM * HIDDEN_DIM;
const W3_LEN: usize = HIDDEN_DIM;

/// Total trainable parameters (weights and biases of the three layers).
pub const PARAM_COUNT: usize = W1_LEN + HIDDEN_DIM + W2_LEN + HIDDEN_DIM + W3_LEN + 1;

/// Pre-activation magnitude under which a ReLU unit counts as sitting on
/// its kink (finite-difference checks skip those draws).
pub const RELU_KINK_EPS: f64 = 1e-6;

/// What a trader observes at the start of a round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub cash: f64,
    pub stock: f64,
    pub prev_price: f64,
}

impl Observation {
    fn to_input(self) -> Result<[f64; INPUT_DIM]> {
        let input = [self.cash, self.stock, self.prev_price];
        if input.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("non-finite observation"));
        }
        Ok(input)
    }
}

/// Buy or sell side of an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Buy,
    Sell,
}

/// Sign decides the side, magnitude the valuation. An exact zero decodes
/// as a sell at valuation zero (a deterministic rule is needed; the event
/// has measure zero).
pub fn decode_order(raw_output: f64) -> (Side, f64) {
    if raw_output > 0.0 {
        (Side::Buy, raw_output)
    } else {
        (Side::Sell, -raw_output)
    }
}

/// Trading policy parameters.
///
/// Flattened layout (used by [`PolicyNet::to_param_vec`] and the optimizer):
/// `w1` row-major (`32 × 3`), `b1`, `w2` row-major (`32 × 32`), `b2`, `w3`
/// (`32`), `b3`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyNet {
    w1: Vec<f64>,
    b1: Vec<f64>,
    w2: Vec<f64>,
    b2: Vec<f64>,
    w3: Vec<f64>,
    b3: f64,
}

impl PolicyNet {
    /// All-zero parameters.
    pub fn zeros() -> Self {
        PolicyNet {
            w1: vec![0.0; W1_LEN],
            b1: vec![0.0; HIDDEN_DIM],
            w2: vec![0.0; W2_LEN],
            b2: vec![0.0; HIDDEN_DIM],
            w3: vec![0.0; W3_LEN],
            b3: 0.0,
        }
    }

    /// Glorot-uniform initialization: weights uniform in
    /// `±√(6/(fan_in + fan_out))` per layer, biases zero. Draw order is
    /// `w1`, `w2`, `w3` in the flattened layout order.
    ///
    /// This scale-preserving init keeps the first round's valuations on
    /// the same order as the observations, so the market starts trading
    /// near the initial commodity price.
    pub fn init(rng: &mut Stream) -> Self {
        let mut net = PolicyNet::zeros();
        let l1 = (6.0 / (INPUT_DIM + HIDDEN_DIM) as f64).sqrt();
        let l2 = (6.0 / (HIDDEN_DIM + HIDDEN_DIM) as f64).sqrt();
        let l3 = (6.0 / (HIDDEN_DIM + 1) as f64).sqrt();
        for w in net.w1.iter_mut() {
            *w = rng.uniform_in(-l1, l1);
        }
        for w in net.w2.iter_mut() {
            *w = rng.uniform_in(-l2, l2);
        }
        for w in net.w3.iter_mut() {
            *w = rng.uniform_in(-l3, l3);
        }
        net
    }

    /// Deterministic forward pass; returns the action mean μ.
    pub fn forward(&self, obs: &Observation) -> Result<f64> {
        Ok(self.forward_trace(obs)?.mu)
    }

    fn forward_trace(&self, obs: &Observation) -> Result<ForwardTrace> {
        let input = obs.to_input()?;
        let mut z1 = [0.0; HIDDEN_DIM];
        let mut h1 = [0.0; HIDDEN_DIM];
        for j in 0..HIDDEN_DIM {
            let mut acc = self.b1[j];
            for (k, x) in input.iter().enumerate() {
                acc += self.w1[j * INPUT_DIM + k] * x;
            }
            z1[j] = acc;
            h1[j] = acc.max(0.0);
        }
        let mut z2 = [0.0; HIDDEN_DIM];
        let mut h2 = [0.0; HIDDEN_DIM];
        for j in 0..HIDDEN_DIM {
            let mut acc = self.b2[j];
            for (k, h) in h1.iter().enumerate() {
                acc += self.w2[j * HIDDEN_DIM + k] * h;
            }
            z2[j] = acc;
            h2[j] = acc.max(0.0);
        }
        let mut mu = self.b3;
        for j in 0..HIDDEN_DIM {
            mu += self.w3[j] * h2[j];
        }
        Ok(ForwardTrace {
            input,
            z1,
            h1,
            z2,
            h2,
            mu,
        })
    }

    /// Gradient of `scale · μ` with respect to the flattened parameters.
    fn gradient(&self, trace: &ForwardTrace, scale: f64) -> Vec<f64> {
        let mut grad = vec![0.0; PARAM_COUNT];
        let (g_w1, rest) = grad.split_at_mut(W1_LEN);
        let (g_b1, rest) = rest.split_at_mut(HIDDEN_DIM);
        let (g_w2, rest) = rest.split_at_mut(W2_LEN);
        let (g_b2, rest) = rest.split_at_mut(HIDDEN_DIM);
        let (g_w3, g_b3) = rest.split_at_mut(W3_LEN);

        g_b3[0] = scale;
        let mut d2 = [0.0; HIDDEN_DIM];
        for j in 0..HIDDEN_DIM {
            g_w3[j] = scale * trace.h2[j];
            d2[j] = if trace.z2[j] > 0.0 {
                scale * self.w3[j]
            } else {
                0.0
            };
        }
        let mut d1 = [0.0; HIDDEN_DIM];
        for j in 0..HIDDEN_DIM {
            g_b2[j] = d2[j];
            for k in 0..HIDDEN_DIM {
                g_w2[j * HIDDEN_DIM + k] = d2[j] * trace.h1[k];
            }
        }
        for k in 0..HIDDEN_DIM {
            if trace.z1[k] > 0.0 {
                let mut acc = 0.0;
                for j in 0..HIDDEN_DIM {
                    acc += d2[j] * self.w2[j * HIDDEN_DIM + k];
                }
                d1[k] = acc;
            }
        }
        for j in 0..HIDDEN_DIM {
            g_b1[j] = d1[j];
            for (k, x) in trace.input.iter().enumerate() {
                g_w1[j * INPUT_DIM + k] = d1[j] * x;
            }
        }
        grad
    }

    /// Smallest pre-activation magnitude across both hidden layers; a tiny
    /// value means the net sits on a ReLU kink for this input.
    pub fn kink_margin(&self, obs: &Observation) -> Result<f64> {
        let trace = self.forward_trace(obs)?;
        Ok(trace
            .z1
            .iter()
            .chain(trace.z2.iter())
            .fold(f64::INFINITY, |m, z| m.min(z.abs())))
    }

    /// Flattened parameters in the documented order.
    pub fn to_param_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(PARAM_COUNT);
        v.extend_from_slice(&self.w1);
        v.extend_from_slice(&self.b1);
        v.extend_from_slice(&self.w2);
        v.extend_from_slice(&self.b2);
        v.extend_from_slice(&self.w3);
        v.push(self.b3);
        v
    }

    /// Rebuilds a policy from [`PolicyNet::to_param_vec`] output.
    pub fn from_param_vec(params: &[f64]) -> Result<Self> {
        if params.len() != PARAM_COUNT {
            return Err(Error::domain(format!(
                "expected {PARAM_COUNT} parameters, got {}",
                params.len()
            )));
        }
        let mut net = PolicyNet::zeros();
        let mut at = 0;
        net.w1.copy_from_slice(&params[at..at + W1_LEN]);
        at += W1_LEN;
        net.b1.copy_from_slice(&params[at..at + HIDDEN_DIM]);
        at += HIDDEN_DIM;
        net.w2.copy_from_slice(&params[at..at + W2_LEN]);
        at += W2_LEN;
        net.b2.copy_from_slice(&params[at..at + HIDDEN_DIM]);
        at += HIDDEN_DIM;
        net.w3.copy_from_slice(&params[at..at + W3_LEN]);
        at += W3_LEN;
        net.b3 = params[at];
        Ok(net)
    }

    /// Text snapshot: one parameter per line, full precision.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(PARAM_COUNT * 24);
        for p in self.to_param_vec() {
            s.push_str(&format!("{:e}\n", p));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let params: std::result::Result<Vec<f64>, _> =
            text.lines().map(|l| l.trim().parse::<f64>()).collect();
        let params = params.map_err(|e| Error::domain(format!("bad snapshot: {e}")))?;
        PolicyNet::from_param_vec(&params)
    }

    fn apply_step(&mut self, step: &[f64]) {
        debug_assert_eq!(step.len(), PARAM_COUNT);
        let mut at = 0;
        for w in self.w1.iter_mut() {
            *w += step[at];
            at += 1;
        }
        for b in self.b1.iter_mut() {
            *b += step[at];
            at += 1;
        }
        for w in self.w2.iter_mut() {
            *w += step[at];
            at += 1;
        }
        for b in self.b2.iter_mut() {
            *b += step[at];
            at += 1;
        }
        for w in self.w3.iter_mut() {
            *w += step[at];
            at += 1;
        }
        self.b3 += step[at];
    }
}

struct ForwardTrace {
    input: [f64; INPUT_DIM],
    z1: [f64; HIDDEN_DIM],
    h1: [f64; HIDDEN_DIM],
    z2: [f64; HIDDEN_DIM],
    h2: [f64; HIDDEN_DIM],
    mu: f64,
}

/// A sampled action and its Gaussian log-density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledAction {
    pub value: f64,
    pub log_density: f64,
}

/// `a = μ + ε` for a given noise draw; `log π(a|μ) = −ε²/2 − log √(2π)`.
pub fn action_from_noise(mu: f64, eps: f64) -> SampledAction {
    const LOG_SQRT_2PI: f64 = 0.9189385332046727;
    SampledAction {
        value: mu + eps,
        log_density: -eps * eps / 2.0 - LOG_SQRT_2PI,
    }
}

/// Draws `ε ~ N(0, 1)` from the stream (Box-Muller) and applies it to μ.
pub fn sample_action(mu: f64, rng: &mut Stream) -> SampledAction {
    action_from_noise(mu, rng.standard_normal())
}

/// Adam accumulator state for one policy.
///
/// Defaults follow the training recipe: learning rate `1e-3`, `β₁ = 0.9`,
/// `β₂ = 0.999`, `ε = 1e-8`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    m: Vec<f64>,
    v: Vec<f64>,
    step: u64,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamState {
    fn default() -> Self {
        AdamState {
            m: vec![0.0; PARAM_COUNT],
            v: vec![0.0; PARAM_COUNT],
            step: 0,
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

impl AdamState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    /// One bias-corrected ascent step along `grad`; returns the applied
    /// parameter deltas.
    fn ascent_step(&mut self, grad: &[f64]) -> Vec<f64> {
        debug_assert_eq!(grad.len(), PARAM_COUNT);
        self.step += 1;
        let bc1 = 1.0 - self.beta1.powi(self.step as i32);
        let bc2 = 1.0 - self.beta2.powi(self.step as i32);
        let mut delta = vec![0.0; PARAM_COUNT];
        for i in 0..PARAM_COUNT {
            self.m[i] = self.beta1 * self.m[i] + (1.0 - self.beta1) * grad[i];
            self.v[i] = self.beta2 * self.v[i] + (1.0 - self.beta2) * grad[i] * grad[i];
            let m_hat = self.m[i] / bc1;
            let v_hat = self.v[i] / bc2;
            delta[i] = self.learning_rate * m_hat / (v_hat.sqrt() + self.epsilon);
        }
        delta
    }
}

/// Outcome of a policy update attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateOutcome {
    Applied,
    /// The reward was not finite; parameters and optimizer state were left
    /// untouched.
    SkippedNonFiniteReward,
}

/// One REINFORCE step: ascend `R·log π(a|μ(obs))` with Adam.
///
/// `action` must be the value previously sampled from this policy at this
/// observation; the score-function gradient is `R·(a−μ)·∂μ/∂params` under
/// the unit-variance Gaussian policy.
pub fn reinforce_update(
    net: &mut PolicyNet,
    opt: &mut AdamState,
    obs: &Observation,
    action: f64,
    reward: f64,
) -> Result<UpdateOutcome> {
    if !reward.is_finite() {
        return Ok(UpdateOutcome::SkippedNonFiniteReward);
    }
    let trace = net.forward_trace(obs)?;
    let grad = net.gradient(&trace, reward * (action - trace.mu));
    let delta = opt.ascent_step(&grad);
    net.apply_step(&delta);
    Ok(UpdateOutcome::Applied)
}
