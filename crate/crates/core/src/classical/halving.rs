//! The shared-randomness halving strategy for `G(n, 2, 2^m)`.
//!
//! The players share `s` drawn uniformly from
//! `S = { s in {0,1}^n : |s| = floor(n/2) (mod 2) }`. Player `j >= 2` answers
//! `s_j x_j`; player 1 adds the correction `(floor(n/2) - |s|) / 2`. The
//! strategy wins exactly when `|s xor x| = floor(n/2)`, which happens for the
//! same fraction `C(n, floor(n/2)) / 2^(n-1)` of shared strings on every input.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::game::{self, guard, ConstrainedStrings, GameSpec, InputString, Limits, OutputString};
use crate::Rational;

/// A shared string `s` in `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SharedBitstring(Vec<u32>);

impl SharedBitstring {
    pub fn new(bits: Vec<u32>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::MalformedInput("shared string must be binary".into()));
        }
        let n = bits.len();
        let weight = bits.iter().sum::<u32>() as usize;
        if weight % 2 != (n / 2) % 2 {
            return Err(Error::InvalidSharedString { weight, n });
        }
        Ok(SharedBitstring(bits))
    }

    pub fn bits(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum::<u32>() as usize
    }
}

/// All of `S` in lexicographic order, `2^(n-1)` strings.
pub fn shared_strings(n: usize) -> impl Iterator<Item = SharedBitstring> {
    ConstrainedStrings::with_target(n, 2, ((n / 2) % 2) as u32).map(|d| SharedBitstring(d.0))
}

/// Whether `ceil(n/2) < 2M`, where the halving predicate is exact.
pub fn in_regime(n: usize, m: u32) -> bool {
    n.div_ceil(2) < 2 * m as usize
}

fn check_binary_input(n: usize, m: u32, s: &SharedBitstring, x: &InputString) -> Result<GameSpec> {
    let spec = GameSpec::new(n, 2, m)?;
    if s.0.len() != n {
        return Err(Error::MalformedInput(alloc::format!(
            "shared string has length {}, expected {n}",
            s.0.len()
        )));
    }
    if !game::validate_input(&spec, x)? {
        return Err(Error::PromiseViolation {
            sum: x.sum(),
            divisor: 2,
        });
    }
    Ok(spec)
}

/// The answers `S^s(x)` of the halving strategy.
pub fn halving_answers(
    n: usize,
    m: u32,
    s: &SharedBitstring,
    x: &InputString,
) -> Result<OutputString> {
    check_binary_input(n, m, s, x)?;
    let m = m as i64;
    let offset = (n as i64 / 2 - s.weight() as i64) / 2;
    let y =
        s.0.iter()
            .zip(x.as_slice())
            .enumerate()
            .map(|(j, (&sj, &xj))| {
                let own = (sj * xj) as i64;
                if j == 0 {
                    (own + offset).rem_euclid(m) as u32
                } else {
                    own as u32
                }
            })
            .collect::<Vec<_>>();
    Ok(y.into())
}

/// `|s xor x| = floor(n/2)`; equivalent to winning only inside the regime.
pub fn halving_win_predicate(
    n: usize,
    m: u32,
    s: &SharedBitstring,
    x: &InputString,
) -> Result<bool> {
    check_binary_input(n, m, s, x)?;
    if !in_regime(n, m) {
        return Err(Error::OutOfRegime { n, m });
    }
    let distance = s.0.iter().zip(x.as_slice()).filter(|(a, b)| a != b).count();
    Ok(distance == n / 2)
}

/// `Prob[win | x]` for the halving strategy, counted over all of `S`.
pub fn exact_win_probability(
    spec: &GameSpec,
    x: &InputString,
    limits: &Limits,
) -> Result<Rational> {
    if spec.d() != 2 {
        return Err(Error::UnsupportedDivisor { d: spec.d() });
    }
    if !spec.m().is_power_of_two() || !in_regime(spec.n(), spec.m()) {
        return Err(Error::OutOfRegime {
            n: spec.n(),
            m: spec.m(),
        });
    }
    let total = guard("shared strings", spec.promise_size(), limits.items)?;
    let mut wins = 0u64;
    for s in shared_strings(spec.n()) {
        let y = halving_answers(spec.n(), spec.m(), &s, x)?;
        if game::is_winning(spec, x, &y)? {
            wins += 1;
        }
    }
    Ok(Rational::new(BigInt::from(wins), BigInt::from(total)))
}
