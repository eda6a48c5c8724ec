//! Single-commodity exchange loop with learning traders.
//!
//! Each round: every trader's policy turns its observation into an order
//! (side + valuation), quantum mode routes the valuations through the
//! mediation circuit, buyers and sellers are matched first-come-first-serve
//! within the bid-ask tolerance, trades settle at the bid-ask midpoint for
//! one stock unit, and every policy takes one REINFORCE step with its net
//! worth as the reward.
//!
//! Determinism: all randomness comes from ChaCha streams keyed by the run
//! seed (see [`crate::rng`]); two runs with the same config produce
//! identical round records.

use crate::agents::{
    decode_order, reinforce_update, sample_action, AdamState, Observation, PolicyNet, Side,
};
use crate::circuit::{adjusted_valuations, rescale_to_market, CircuitParams, MAX_QUBITS};
use crate::rng::{Stream, PHASE_STREAM};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Master seed of the shipped default experiment set.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarketMode {
    /// Raw valuations go straight to matching.
    Classical,
    /// Valuations pass through the entangling circuit before matching.
    Quantum,
}

/// Where the per-qubit circuit phases come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhasePolicy {
    /// Fresh uniform `[0, 2π)` draws for every qubit every round.
    RandomPerRound,
    /// The same pair for all qubits and all rounds.
    Fixed { phi: f64, psi: f64 },
}

/// What the per-round reward is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewardMode {
    /// Absolute net worth at the end of the round (default).
    NetWorth,
    /// Change in net worth versus the previous round.
    NetWorthChange,
}

/// Full description of one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketConfig {
    pub n_traders: usize,
    pub initial_cash: f64,
    pub initial_stock: i64,
    pub initial_price: f64,
    /// Maximum bid-ask gap that still trades.
    pub tolerance: f64,
    pub rounds: usize,
    pub mode: MarketMode,
    pub gamma: f64,
    pub phase_policy: PhasePolicy,
    pub seed: u64,
    pub reward: RewardMode,
    /// Divide observations by their initial values before the policy sees
    /// them. Off by default.
    pub normalize_obs: bool,
    /// Subtract a per-trader running-mean baseline from rewards. Off by
    /// default.
    pub baseline: bool,
    /// Shuffle the matching order each round instead of ascending trader
    /// id. Off by default.
    pub shuffle_matching: bool,
    /// Allow negative cash and stock (disables the feasibility checks at
    /// match time). Off by default.
    pub allow_short: bool,
}

impl Default for MarketConfig {
    fn default() -> Self {
        MarketConfig {
            n_traders: 8,
            initial_cash: 10.0,
            initial_stock: 10,
            initial_price: 10.0,
            tolerance: 1.0,
            rounds: 1000,
            mode: MarketMode::Classical,
            gamma: 0.0,
            phase_policy: PhasePolicy::RandomPerRound,
            seed: DEFAULT_SEED,
            reward: RewardMode::NetWorth,
            normalize_obs: false,
            baseline: false,
            shuffle_matching: false,
            allow_short: false,
        }
    }
}

impl MarketConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_traders < 2 {
            return Err(Error::config("need at least 2 traders"));
        }
        if self.mode == MarketMode::Quantum && self.n_traders > MAX_QUBITS {
            return Err(Error::config(format!(
                "quantum mode supports at most {MAX_QUBITS} traders"
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::config("tolerance must be positive"));
        }
        if self.rounds < 1 {
            return Err(Error::config("need at least 1 round"));
        }
        if !(0.0..=PI / 2.0 + 1e-12).contains(&self.gamma) {
            return Err(Error::config(format!(
                "gamma = {} outside [0, π/2]",
                self.gamma
            )));
        }
        if self.initial_cash < 0.0 || self.initial_stock < 0 || self.initial_price <= 0.0 {
            return Err(Error::config("initial endowments must be non-negative"));
        }
        if self.normalize_obs
            && (self.initial_cash == 0.0 || self.initial_stock == 0 || self.initial_price == 0.0)
        {
            return Err(Error::config(
                "observation normalization needs non-zero initial values",
            ));
        }
        Ok(())
    }
}

/// Cash and stock holdings of one trader.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraderAccount {
    pub id: usize,
    pub cash: f64,
    pub stock: i64,
}

/// One order: which trader, which side, at what valuation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order {
    pub trader: usize,
    pub side: Side,
    pub valuation: f64,
}

/// One executed trade at the bid-ask midpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trade {
    pub buyer: usize,
    pub seller: usize,
    pub price: f64,
}

/// Per-trader state snapshot at the end of a round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraderSnapshot {
    pub cash: f64,
    pub stock: i64,
    pub net_worth: f64,
}

/// Everything recorded about one round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub round: usize,
    /// Average traded price, or the previous price carried forward on a
    /// zero-volume round.
    pub avg_price: f64,
    pub volume: usize,
    pub traders: Vec<TraderSnapshot>,
}

/// Routes raw order valuations through the mediation circuit.
///
/// `θᵢ = π·$ᵢ/$_max` over all orders, phases come from `policy` (drawn
/// from `phase_rng` as φ then ψ per qubit in trader order), and each
/// valuation is replaced by `$̃ᵢ·$_max`. Sides never change. When every
/// valuation is zero the circuit is skipped and the valuations stay zero.
pub fn quantum_mediate(
    orders: &mut [Order],
    gamma: f64,
    policy: PhasePolicy,
    phase_rng: &mut Stream,
) -> Result<()> {
    if orders.is_empty() {
        return Ok(());
    }
    let raw: Vec<f64> = orders.iter().map(|o| o.valuation).collect();
    let encoding = rescale_to_market(&raw)?;
    if encoding.degenerate {
        for order in orders.iter_mut() {
            order.valuation = 0.0;
        }
        return Ok(());
    }
    let n = orders.len();
    let (mut phis, mut psis) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        match policy {
            PhasePolicy::RandomPerRound => {
                phis.push(phase_rng.uniform_in(0.0, 2.0 * PI));
                psis.push(phase_rng.uniform_in(0.0, 2.0 * PI));
            }
            PhasePolicy::Fixed { phi, psi } => {
                phis.push(phi);
                psis.push(psi);
            }
        }
    }
    let params = CircuitParams::new(gamma, encoding.thetas, phis, psis)?;
    let adjusted = adjusted_valuations(&params)?;
    for (order, &value) in orders.iter_mut().zip(adjusted.values()) {
        order.valuation = value * encoding.max;
    }
    Ok(())
}

/// Matches buyers to sellers first-come-first-serve and settles trades.
///
/// Buyers are visited in the given sequence; each takes the first unmatched
/// seller whose ask is within `tolerance` of the bid and for whom the trade
/// is feasible (seller holds a unit, buyer can afford the midpoint —
/// skipped when `allow_short`). The trade moves one stock unit at the
/// midpoint and removes both parties from the pool.
pub fn match_orders(
    orders: &[Order],
    accounts: &mut [TraderAccount],
    tolerance: f64,
    allow_short: bool,
) -> Vec<Trade> {
    let buyers: Vec<&Order> = orders.iter().filter(|o| o.side == Side::Buy).collect();
    let sellers: Vec<&Order> = orders.iter().filter(|o| o.side == Side::Sell).collect();
    let mut seller_taken = vec![false; sellers.len()];
    let mut trades = Vec::new();
    for bid in &buyers {
        for (slot, ask) in sellers.iter().enumerate() {
            if seller_taken[slot] {
                continue;
            }
            if (bid.valuation - ask.valuation).abs() > tolerance {
                continue;
            }
            let price = (bid.valuation + ask.valuation) / 2.0;
            if !allow_short
                && (accounts[ask.trader].stock < 1 || accounts[bid.trader].cash < price)
            {
                continue;
            }
            accounts[bid.trader].cash -= price;
            accounts[bid.trader].stock += 1;
            accounts[ask.trader].cash += price;
            accounts[ask.trader].stock -= 1;
            seller_taken[slot] = true;
            trades.push(Trade {
                buyer: bid.trader,
                seller: ask.trader,
                price,
            });
            break;
        }
    }
    trades
}

/// Live state of one simulation run.
pub struct Market {
    config: MarketConfig,
    accounts: Vec<TraderAccount>,
    policies: Vec<(PolicyNet, AdamState)>,
    agent_rngs: Vec<Stream>,
    phase_rng: Stream,
    shuffle_rng: Stream,
    prev_price: f64,
    prev_net_worth: Vec<f64>,
    reward_means: Vec<(f64, u64)>,
    round: usize,
}

impl Market {
    pub fn new(config: MarketConfig) -> Result<Self> {
        config.validate()?;
        let n = config.n_traders;
        let accounts = (0..n)
            .map(|id| TraderAccount {
                id,
                cash: config.initial_cash,
                stock: config.initial_stock,
            })
            .collect();
        let mut agent_rngs: Vec<Stream> = (0..n)
            .map(|id| Stream::for_trader(config.seed, id))
            .collect();
        let policies = agent_rngs
            .iter_mut()
            .map(|rng| (PolicyNet::init(rng), AdamState::new()))
            .collect();
        let initial_worth = config.initial_cash + config.initial_stock as f64 * config.initial_price;
        Ok(Market {
            phase_rng: Stream::new(config.seed, PHASE_STREAM),
            shuffle_rng: Stream::new(config.seed, n as u64 + 1),
            accounts,
            policies,
            agent_rngs,
            prev_price: config.initial_price,
            prev_net_worth: vec![initial_worth; n],
            reward_means: vec![(0.0, 0); n],
            round: 0,
            config,
        })
    }

    pub fn accounts(&self) -> &[TraderAccount] {
        &self.accounts
    }

    pub fn policy(&self, trader: usize) -> &PolicyNet {
        &self.policies[trader].0
    }

    fn observation(&self, trader: usize) -> Observation {
        let account = &self.accounts[trader];
        let mut obs = Observation {
            cash: account.cash,
            stock: account.stock as f64,
            prev_price: self.prev_price,
        };
        if self.config.normalize_obs {
            obs.cash /= self.config.initial_cash;
            obs.stock /= self.config.initial_stock as f64;
            obs.prev_price /= self.config.initial_price;
        }
        obs
    }

    /// Asks every policy for an order against the previous round's price.
    /// Returns the orders in ascending trader id along with each trader's
    /// raw action and observation (needed for the learning step).
    pub fn collect_orders(&mut self) -> Result<(Vec<Order>, Vec<f64>, Vec<Observation>)> {
        let n = self.config.n_traders;
        let mut orders = Vec::with_capacity(n);
        let mut actions = Vec::with_capacity(n);
        let mut observations = Vec::with_capacity(n);
        for trader in 0..n {
            let obs = self.observation(trader);
            let mu = self.policies[trader].0.forward(&obs)?;
            let action = sample_action(mu, &mut self.agent_rngs[trader]);
            let (side, valuation) = decode_order(action.value);
            orders.push(Order {
                trader,
                side,
                valuation,
            });
            actions.push(action.value);
            observations.push(obs);
        }
        Ok((orders, actions, observations))
    }

    /// Runs one full round and returns its record.
    pub fn run_round(&mut self) -> Result<RoundRecord> {
        let (mut orders, actions, observations) = self.collect_orders()?;
        if self.config.mode == MarketMode::Quantum {
            quantum_mediate(
                &mut orders,
                self.config.gamma,
                self.config.phase_policy,
                &mut self.phase_rng,
            )?;
        }
        if self.config.shuffle_matching {
            self.shuffle_rng.shuffle(&mut orders);
        }
        let trades = match_orders(
            &orders,
            &mut self.accounts,
            self.config.tolerance,
            self.config.allow_short,
        );
        let avg_price = if trades.is_empty() {
            self.prev_price
        } else {
            trades.iter().map(|t| t.price).sum::<f64>() / trades.len() as f64
        };

        let snapshots: Vec<TraderSnapshot> = self
            .accounts
            .iter()
            .map(|a| TraderSnapshot {
                cash: a.cash,
                stock: a.stock,
                net_worth: a.cash + a.stock as f64 * avg_price,
            })
            .collect();
        self.debug_check_invariants(&snapshots);

        // Barrier semantics: every policy updates only after matching is
        // complete, using the round's recorded price.
        for trader in 0..self.config.n_traders {
            let worth = snapshots[trader].net_worth;
            let mut reward = match self.config.reward {
                RewardMode::NetWorth => worth,
                RewardMode::NetWorthChange => worth - self.prev_net_worth[trader],
            };
            if self.config.baseline {
                let (mean, count) = &mut self.reward_means[trader];
                let centered = reward - *mean;
                *count += 1;
                *mean += centered / *count as f64;
                reward = centered;
            }
            let (net, opt) = &mut self.policies[trader];
            reinforce_update(net, opt, &observations[trader], actions[trader], reward)?;
            self.prev_net_worth[trader] = worth;
        }

        self.prev_price = avg_price;
        let record = RoundRecord {
            round: self.round,
            avg_price,
            volume: trades.len(),
            traders: snapshots,
        };
        self.round += 1;
        Ok(record)
    }

    fn debug_check_invariants(&self, snapshots: &[TraderSnapshot]) {
        debug_assert!({
            let total_cash: f64 = snapshots.iter().map(|s| s.cash).sum();
            let expected = self.config.initial_cash * self.config.n_traders as f64;
            (total_cash - expected).abs() <= 1e-6 * expected.max(1.0)
        });
        debug_assert_eq!(
            snapshots.iter().map(|s| s.stock).sum::<i64>(),
            self.config.initial_stock * self.config.n_traders as i64
        );
        if !self.config.allow_short {
            debug_assert!(snapshots.iter().all(|s| s.cash >= 0.0 && s.stock >= 0));
        }
    }
}

/// Runs a full simulation and returns the per-round time series.
pub fn run_simulation(config: MarketConfig) -> Result<Vec<RoundRecord>> {
    let rounds = config.rounds;
    let mut market = Market::new(config)?;
    let mut records = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        records.push(market.run_round()?);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn accounts(n: usize) -> Vec<TraderAccount> {
        (0..n)
            .map(|id| TraderAccount {
                id,
                cash: 10.0,
                stock: 10,
            })
            .collect()
    }

    fn order(trader: usize, side: Side, valuation: f64) -> Order {
        Order {
            trader,
            side,
            valuation,
        }
    }

    #[test]
    fn match_within_tolerance_at_midpoint() {
        let mut accs = accounts(2);
        accs[0].cash = 20.0;
        let orders = vec![order(0, Side::Buy, 10.4), order(1, Side::Sell, 10.0)];
        let trades = match_orders(&orders, &mut accs, 1.0, false);
        assert_eq!(trades.len(), 1);
        assert!(close(trades[0].price, 10.2, 1e-12));
        assert!(close(accs[0].cash, 20.0 - 10.2, 1e-12));
        assert_eq!(accs[0].stock, 11);
        assert!(close(accs[1].cash, 10.0 + 10.2, 1e-12));
        assert_eq!(accs[1].stock, 9);
    }

    #[test]
    fn gap_beyond_tolerance_does_not_trade() {
        let mut accs = accounts(2);
        let orders = vec![order(0, Side::Buy, 9.0), order(1, Side::Sell, 10.5)];
        let trades = match_orders(&orders, &mut accs, 1.0, false);
        assert!(trades.is_empty());
        assert_eq!(accs, accounts(2));
    }

    #[test]
    fn first_come_first_serve_pairing() {
        let mut accs = accounts(4);
        let orders = vec![
            order(0, Side::Buy, 10.0),
            order(1, Side::Sell, 10.0),
            order(2, Side::Buy, 10.0),
            order(3, Side::Sell, 10.0),
        ];
        let trades = match_orders(&orders, &mut accs, 1.0, false);
        assert_eq!(trades.len(), 2);
        assert_eq!((trades[0].buyer, trades[0].seller), (0, 1));
        assert_eq!((trades[1].buyer, trades[1].seller), (2, 3));
        assert!(trades.iter().all(|t| close(t.price, 10.0, 1e-12)));
    }

    #[test]
    fn infeasible_trades_are_skipped() {
        // Seller 1 has no stock; buyer falls through to seller 2.
        let mut accs = accounts(3);
        accs[0].cash = 20.0;
        accs[1].stock = 0;
        let orders = vec![
            order(0, Side::Buy, 10.0),
            order(1, Side::Sell, 10.0),
            order(2, Side::Sell, 10.2),
        ];
        let trades = match_orders(&orders, &mut accs, 1.0, false);
        assert_eq!(trades.len(), 1);
        assert_eq!(trades[0].seller, 2);

        // A buyer who cannot afford the midpoint is skipped entirely.
        let mut accs = accounts(2);
        accs[0].cash = 5.0;
        let orders = vec![order(0, Side::Buy, 10.0), order(1, Side::Sell, 10.0)];
        assert!(match_orders(&orders, &mut accs, 1.0, false).is_empty());
    }

    #[test]
    fn mediation_at_gamma_zero_is_local_and_phase_free() {
        let mut rng_a = Stream::new(5, PHASE_STREAM);
        let mut rng_b = Stream::new(99, PHASE_STREAM);
        let raw = [3.0, 7.0, 1.5, 0.2];
        let build = |vals: &[f64]| {
            vals.iter()
                .enumerate()
                .map(|(i, &v)| {
                    order(i, if i % 2 == 0 { Side::Buy } else { Side::Sell }, v)
                })
                .collect::<Vec<_>>()
        };
        let mut orders_a = build(&raw);
        let mut orders_b = build(&raw);
        quantum_mediate(&mut orders_a, 0.0, PhasePolicy::RandomPerRound, &mut rng_a).unwrap();
        quantum_mediate(&mut orders_b, 0.0, PhasePolicy::RandomPerRound, &mut rng_b).unwrap();
        let max = 7.0f64;
        for (a, b) in orders_a.iter().zip(&orders_b) {
            // Independent of the phase stream, and equal to the local law.
            assert!(close(a.valuation, b.valuation, 1e-12));
            let raw_v = raw[a.trader];
            let expected = max * (PI * raw_v / (2.0 * max)).sin().powi(2);
            assert!(close(a.valuation, expected, 1e-9));
            assert_eq!(a.side, b.side);
        }
        // Ranking of adjusted valuations preserves the raw ranking.
        let mut by_raw: Vec<usize> = (0..raw.len()).collect();
        by_raw.sort_by(|&i, &j| raw[i].partial_cmp(&raw[j]).unwrap());
        let adjusted: Vec<f64> = orders_a.iter().map(|o| o.valuation).collect();
        let mut by_adj: Vec<usize> = (0..adjusted.len()).collect();
        by_adj.sort_by(|&i, &j| adjusted[i].partial_cmp(&adjusted[j]).unwrap());
        assert_eq!(by_raw, by_adj);
    }

    #[test]
    fn mediation_at_maximal_entanglement_swaps_two_traders() {
        let mut rng = Stream::new(1, PHASE_STREAM);
        let mut orders = vec![order(0, Side::Buy, 10.0), order(1, Side::Sell, 0.0)];
        quantum_mediate(
            &mut orders,
            PI / 2.0,
            PhasePolicy::Fixed { phi: 0.0, psi: 0.0 },
            &mut rng,
        )
        .unwrap();
        assert!(close(orders[0].valuation, 0.0, 1e-9));
        assert!(close(orders[1].valuation, 10.0, 1e-9));
        assert_eq!(orders[0].side, Side::Buy);
        assert_eq!(orders[1].side, Side::Sell);
    }

    #[test]
    fn mediation_degenerate_all_zero() {
        let mut rng = Stream::new(1, PHASE_STREAM);
        let mut orders = vec![order(0, Side::Buy, 0.0), order(1, Side::Sell, 0.0)];
        quantum_mediate(&mut orders, PI / 2.0, PhasePolicy::RandomPerRound, &mut rng).unwrap();
        assert!(orders.iter().all(|o| o.valuation == 0.0));
    }

    #[test]
    fn mediation_matches_circuit_oracle_for_eight_traders() {
        let mut phase_rng = Stream::new(77, PHASE_STREAM);
        let raw: Vec<f64> = vec![9.5, 2.0, 4.4, 7.7, 0.1, 5.0, 3.3, 8.8];
        let mut orders: Vec<Order> = raw
            .iter()
            .enumerate()
            .map(|(i, &v)| order(i, Side::Buy, v))
            .collect();
        // Reproduce the phase draws with a twin stream, then check against
        // a direct circuit evaluation.
        let mut twin = Stream::new(77, PHASE_STREAM);
        let mut phis = Vec::new();
        let mut psis = Vec::new();
        for _ in 0..8 {
            phis.push(twin.uniform_in(0.0, 2.0 * PI));
            psis.push(twin.uniform_in(0.0, 2.0 * PI));
        }
        quantum_mediate(
            &mut orders,
            PI / 2.0,
            PhasePolicy::RandomPerRound,
            &mut phase_rng,
        )
        .unwrap();
        let encoding = rescale_to_market(&raw).unwrap();
        let params = CircuitParams::new(PI / 2.0, encoding.thetas, phis, psis).unwrap();
        let adjusted = adjusted_valuations(&params).unwrap();
        for (o, &v) in orders.iter().zip(adjusted.values()) {
            assert!(close(o.valuation, v * encoding.max, 1e-9));
        }
    }

    #[test]
    fn zero_volume_round_carries_price_forward() {
        // A vanishing tolerance makes bid-ask collisions measure-zero, so
        // every round carries the initial price.
        let config = MarketConfig {
            tolerance: 1e-12,
            rounds: 5,
            ..MarketConfig::default()
        };
        let records = run_simulation(config).unwrap();
        assert!(records.iter().all(|r| r.volume == 0));
        assert!(records.iter().all(|r| r.avg_price == 10.0));
    }

    #[test]
    fn conservation_over_many_rounds() {
        let config = MarketConfig {
            rounds: 60,
            mode: MarketMode::Quantum,
            gamma: PI / 2.0,
            ..MarketConfig::default()
        };
        let records = run_simulation(config).unwrap();
        for r in &records {
            let cash: f64 = r.traders.iter().map(|t| t.cash).sum();
            let stock: i64 = r.traders.iter().map(|t| t.stock).sum();
            assert!(close(cash, 80.0, 1e-9));
            assert_eq!(stock, 80);
            assert!(r.traders.iter().all(|t| t.cash >= 0.0 && t.stock >= 0));
        }
    }

    #[test]
    fn config_validation() {
        assert!(MarketConfig {
            rounds: 0,
            ..MarketConfig::default()
        }
        .validate()
        .is_err());
        assert!(MarketConfig {
            n_traders: 1,
            ..MarketConfig::default()
        }
        .validate()
        .is_err());
        assert!(MarketConfig {
            mode: MarketMode::Quantum,
            n_traders: 13,
            ..MarketConfig::default()
        }
        .validate()
        .is_err());
        assert!(MarketConfig {
            tolerance: 0.0,
            ..MarketConfig::default()
        }
        .validate()
        .is_err());
        let records = run_simulation(MarketConfig {
            rounds: 1,
            ..MarketConfig::default()
        })
        .unwrap();
        assert_eq!(records.len(), 1);
    }

    #[test]
    fn identical_seeds_reproduce_bitwise() {
        let config = MarketConfig {
            rounds: 40,
            mode: MarketMode::Quantum,
            gamma: PI / 4.0,
            seed: 1234,
            ..MarketConfig::default()
        };
        let a = run_simulation(config.clone()).unwrap();
        let b = run_simulation(config).unwrap();
        assert_eq!(a.len(), b.len());
        for (ra, rb) in a.iter().zip(&b) {
            assert_eq!(ra.avg_price.to_bits(), rb.avg_price.to_bits());
            assert_eq!(ra.volume, rb.volume);
            for (ta, tb) in ra.traders.iter().zip(&rb.traders) {
                assert_eq!(ta.cash.to_bits(), tb.cash.to_bits());
                assert_eq!(ta.stock, tb.stock);
            }
        }
    }

    #[test]
    fn collect_orders_is_deterministic_and_ordered() {
        let config = MarketConfig {
            seed: 9,
            ..MarketConfig::default()
        };
        let mut m1 = Market::new(config.clone()).unwrap();
        let mut m2 = Market::new(config).unwrap();
        let (o1, a1, _) = m1.collect_orders().unwrap();
        let (o2, a2, _) = m2.collect_orders().unwrap();
        assert_eq!(o1, o2);
        assert_eq!(a1, a2);
        assert_eq!(o1.len(), 8);
        assert!(o1.iter().enumerate().all(|(i, o)| o.trader == i));
    }
}
