//! Seeded Monte Carlo estimation of strategy success rates.

use alloc::vec::Vec;

use super::halving::{halving_answers, SharedBitstring};
use super::strategy::DeterministicStrategy;
use crate::error::{Error, Result};
use crate::game::{self, Digits, GameSpec};

/// SplitMix64: a 64-bit counter passed through a
/// fixed mixing function. Streams are fully determined by the seed.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)`: rejects draws from the incomplete top block,
    /// then reduces modulo `bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return v % bound;
            }
        }
    }

    /// `n - 1` uniform symbols followed by the one forcing `sum = target (mod radix)`.
    fn constrained(&mut self, n: usize, radix: u32, target: u32) -> Vec<u32> {
        let mut out: Vec<u32> = (0..n - 1)
            .map(|_| self.below(radix as u64) as u32)
            .collect();
        let r = radix as u64;
        let partial = out.iter().map(|&v| v as u64).sum::<u64>() % r;
        out.push(((target as u64 + r - partial) % r) as u32);
        out
    }
}

/// What the players do on each sampled round.
#[derive(Debug, Clone, PartialEq)]
pub enum StrategyHandle {
    Deterministic(DeterministicStrategy),
    /// The shared-randomness halving strategy; needs `D = 2`.
    Halving,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub wins: u64,
    pub trials: u64,
    pub estimate: f64,
    /// `1.96 * sqrt(p (1 - p) / trials)`.
    pub halfwidth_95: f64,
}

/// Plays `trials` rounds with `x` uniform over the promise set and, for the
/// halving strategy, `s` uniform over the shared strings. Each round draws `x`
/// first, then `s`, from one SplitMix64 stream.
pub fn monte_carlo(
    spec: &GameSpec,
    strategy: &StrategyHandle,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(Error::MalformedInput(
            "at least one trial is required".into(),
        ));
    }
    if let StrategyHandle::Halving = strategy {
        if spec.d() != 2 {
            return Err(Error::UnsupportedDivisor { d: spec.d() });
        }
    }
    let n = spec.n();
    let mut rng = SplitMix64::new(seed);
    let mut wins = 0u64;
    for _ in 0..trials {
        let x = Digits(rng.constrained(n, spec.d(), 0));
        let y = match strategy {
            StrategyHandle::Deterministic(s) => s.answers(&x),
            StrategyHandle::Halving => {
                let s = SharedBitstring::new(rng.constrained(n, 2, ((n / 2) % 2) as u32))?;
                halving_answers(n, spec.m(), &s, &x)?
            }
        };
        if game::is_winning(spec, &x, &y)? {
            wins += 1;
        }
    }
    let p = wins as f64 / trials as f64;
    Ok(MonteCarloEstimate {
        wins,
        trials,
        estimate: p,
        halfwidth_95: 1.96 * libm::sqrt(p * (1.0 - p) / trials as f64),
    })
}
