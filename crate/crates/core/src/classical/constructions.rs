//! Explicit classical strategies: the perfect Bezout strategy when
//! `gcd(D, M) = 1` and the half-winning construction for `M = 2(2r+1)`.

use num_integer::Integer;

use super::strategy::{eval_deterministic, DeterministicStrategy, StrategyReport};
use crate::error::{Error, Result};
use crate::game::{GameSpec, Limits};

/// `a` in `[0, M)` with `a D = 1 (mod M)`, if it exists.
pub fn bezout_coefficient(d: u32, m: u32) -> Option<u32> {
    let g = (d as i64).extended_gcd(&(m as i64));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i64) as u32)
}

/// Every player answers `a x_j mod M`; wins on every promised input.
pub fn bezout_strategy(spec: &GameSpec) -> Result<(u32, DeterministicStrategy)> {
    let a = bezout_coefficient(spec.d(), spec.m()).ok_or(Error::NoBezoutWitness {
        d: spec.d(),
        m: spec.m(),
    })?;
    let m = spec.m() as u64;
    let strategy = DeterministicStrategy::uniform(spec, |x| ((a as u64 * x as u64) % m) as u32)?;
    Ok((a, strategy))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FootnoteStrategy {
    pub strategy: DeterministicStrategy,
    pub report: StrategyReport,
}

/// For `D = 2`, `M = 2(2r+1)`: every player uses `d_j = (M+2)/4`, making each
/// coefficient `2 d_j - 1 = M/2` a divisor of `2M`. Then `sum_j a_j x_j` is
/// `0` or `M (mod 2M)` according to the parity of `|x|/2`, and player 1's
/// offset `b` in `{M/2, 0}` selects which class of inputs is won. The larger
/// class is taken, preferring `b = M/2` on ties, so the rate is at least 1/2.
pub fn footnote_strategy(spec: &GameSpec, limits: &Limits) -> Result<FootnoteStrategy> {
    let m = spec.m();
    if spec.d() != 2 {
        return Err(Error::UnsupportedDivisor { d: spec.d() });
    }
    if m % 4 != 2 || m < 6 {
        return Err(Error::NotFootnoteModulus { m });
    }
    let step = (m + 2) / 4;
    let build = |b: u32| {
        let mut tables = alloc::vec![alloc::vec![0, step]; spec.n()];
        tables[0] = alloc::vec![b, (b + step) % m];
        DeterministicStrategy::new(spec, tables)
    };
    let odd_halves = build(m / 2)?;
    let even_halves = build(0)?;
    let odd_report = eval_deterministic(spec, &odd_halves, limits)?;
    let even_report = eval_deterministic(spec, &even_halves, limits)?;
    Ok(if even_report.wins > odd_report.wins {
        FootnoteStrategy {
            strategy: even_halves,
            report: even_report,
        }
    } else {
        FootnoteStrategy {
            strategy: odd_halves,
            report: odd_report,
        }
    })
}
