//! Closed-form classical bounds for `G(n, 2, 2^m)` and the pseudo-telepathy
//! classifier for general `G(n, D, M)`.
//!
//! Every bound is an exact rational; floats only appear in the asymptotic
//! formula and in conversions for display.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::classical::{bezout_strategy, DeterministicStrategy};
use crate::game::GameSpec;
use crate::Rational;

/// `floor(lg((n+1)/4)) + 1`: the fewest answer bits `m` for which
/// `ceil(n/2) < 2^(m+1)`. Zero for `n <= 2`.
pub fn ell(n: usize) -> i64 {
    if n + 1 < 4 {
        // (n+1)/4 lies in [1/2, 1) for n = 1, 2
        return 0;
    }
    let quarter = (n + 1) / 4;
    (usize::BITS - quarter.leading_zeros()) as i64
}

/// `max(1, ell(n))`: answers need at least one bit.
pub fn effective_min_m(n: usize) -> u32 {
    ell(n).max(1) as u32
}

/// Whether `ceil(n/2) < 2^(m+1)`.
pub fn regime_holds(n: usize, m_bits: u32) -> bool {
    m_bits < 63 && (n.div_ceil(2) as u128) < (1u128 << (m_bits + 1))
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// `1/2 + 1/2^ceil(n/2)`, the tight classical bound for `G(n, 2, 2)`.
pub fn mermin_bound(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
        + Rational::new(BigInt::one(), pow2(n.div_ceil(2)))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of `s` in `{0,1}^n` with `|s| = j (mod q)`.
///
/// # Panics
/// If `q == 0`.
pub fn binom_mod_q(n: usize, j: usize, q: usize) -> BigUint {
    assert!(q >= 1, "modulus must be positive");
    (j % q..=n).step_by(q).map(|i| binomial(n, i)).sum()
}

/// The largest number of `x` in `{0,1}^n` for which `sum a_j x_j` falls in a
/// set of `r` residues modulo `q`, over all `a_j` coprime to `q`:
/// `sum_{j = ceil((n-r)/2)}^{ceil((n+r)/2) - 1} binom_mod_q(n, j, q)`.
///
/// # Panics
/// Unless `1 <= r <= q`.
pub fn griggs_bound(n: usize, q: usize, r: usize) -> BigUint {
    assert!(r >= 1 && r <= q, "need 1 <= r <= q");
    let lo = Integer::div_ceil(&(n as i64 - r as i64), &2);
    let hi = Integer::div_ceil(&(n as i64 + r as i64), &2) - 1;
    (lo..=hi)
        .map(|j| binom_mod_q(n, j.rem_euclid(q as i64) as usize, q))
        .sum()
}

/// `C(n, floor(n/2)) / 2^(n-1)`.
pub fn tight_bound(n: usize) -> Rational {
    Rational::new(BigInt::from(binomial(n, n / 2)), pow2(n - 1))
}

/// `2 sqrt(2/pi) / sqrt(n)`.
pub fn asymptotic_bound(n: usize) -> f64 {
    2.0 * libm::sqrt(2.0 / PI) / libm::sqrt(n as f64)
}

/// Nearest-ish `f64` of a rational whose parts may be far outside `f64` range.
pub fn rational_to_f64(value: &Rational) -> f64 {
    let negative = value.numer() < &BigInt::zero();
    let num = value.numer().magnitude();
    let den = value.denom().magnitude();
    if num.is_zero() {
        return 0.0;
    }
    // scale so the integer quotient carries ~64 significant bits
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let q = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let v = libm::ldexp(q.to_f64().unwrap_or(f64::INFINITY), -shift as i32);
    if negative {
        -v
    } else {
        v
    }
}

/// All bounds at one point `(n, m)`, `M = 2^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub n: usize,
    pub m_bits: u32,
    pub mermin: Rational,
    pub tight: Rational,
    /// `griggs_bound(n, 2M, 1)`: most inputs any deterministic strategy wins.
    pub griggs_count: BigUint,
    pub asymptote: f64,
    pub ell: i64,
    pub regime_ok: bool,
}

pub fn bounds_report(n: usize, m_bits: u32) -> BoundsReport {
    let q = 2usize.checked_shl(m_bits).unwrap_or(usize::MAX);
    BoundsReport {
        n,
        m_bits,
        mermin: mermin_bound(n),
        tight: tight_bound(n),
        griggs_count: if q == usize::MAX {
            binomial(n, n / 2)
        } else {
            griggs_bound(n, q, 1)
        },
        asymptote: asymptotic_bound(n),
        ell: ell(n),
        regime_ok: regime_holds(n, m_bits),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    /// `gcd(D, M) = 1`: the Bezout strategy `y_j = a x_j` always wins.
    NotPseudoTelepathy {
        a: u32,
        witness: DeterministicStrategy,
    },
    /// `n >= max(3, p)` with `p` the smallest common prime factor of `D`, `M`:
    /// no deterministic strategy always wins.
    PseudoTelepathy { p: u32 },
    /// `gcd(D, M) > 1` but `n < max(3, p)`; the divisibility criteria decide nothing.
    Unresolved { p: u32 },
}

fn smallest_prime_factor(v: u32) -> u32 {
    (2..)
        .take_while(|f| f * f <= v)
        .find(|f| v % f == 0)
        .unwrap_or(v)
}

/// Verdict from the divisibility criteria alone; never runs a search.
pub fn classify_game(spec: &GameSpec) -> Classification {
    let g = spec.d().gcd(&spec.m());
    if g == 1 {
        let (a, witness) = bezout_strategy(spec).expect("coprime");
        return Classification::NotPseudoTelepathy { a, witness };
    }
    let p = smallest_prime_factor(g);
    if spec.n() >= 3.max(p as usize) {
        Classification::PseudoTelepathy { p }
    } else {
        Classification::Unresolved { p }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    pub ell: i64,
    pub regime: bool,
    pub mermin: Rational,
    pub tight: Rational,
    pub asymptote: f64,
}

/// First `n` (within the regime) where the tight bound drops below Mermin's
/// bound, 1/2 and 1/4.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverScan {
    pub m_bits: u32,
    pub rows: Vec<ScanRow>,
    pub below_mermin: Option<usize>,
    pub below_half: Option<usize>,
    pub below_quarter: Option<usize>,
}

pub fn crossover_scan(m_bits: u32, n_max: usize) -> CrossoverScan {
    let rows: Vec<ScanRow> = (1..=n_max)
        .map(|n| ScanRow {
            n,
            ell: ell(n),
            regime: regime_holds(n, m_bits),
            mermin: mermin_bound(n),
            tight: tight_bound(n),
            asymptote: asymptotic_bound(n),
        })
        .collect();
    let first =
        |pred: &dyn Fn(&ScanRow) -> bool| rows.iter().find(|r| r.regime && pred(r)).map(|r| r.n);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    CrossoverScan {
        m_bits,
        below_mermin: first(&|r| r.tight < r.mermin),
        below_half: first(&|r| r.tight < half),
        below_quarter: first(&|r| r.tight < quarter),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::eval_deterministic;
    use crate::game::Limits;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    /// Oracle for ell: the smallest integer m with ceil(n/2) < 2^(m+1).
    fn ell_oracle(n: usize) -> i64 {
        let half = n.div_ceil(2) as f64;
        (-4i64..64)
            .find(|&m| half < 2f64.powi(m as i32 + 1))
            .unwrap()
    }

    #[test]
    fn ell_examples() {
        assert_eq!(ell(14), 2);
        assert_eq!(ell(41), 4);
        assert_eq!(ell(3), 1);
        assert_eq!(ell(1), 0);
        assert_eq!(ell(2), 0);
        assert_eq!(effective_min_m(1), 1);
        for n in 1..5000 {
            assert_eq!(ell(n), ell_oracle(n), "n={n}");
        }
    }

    #[test]
    fn mermin_examples() {
        assert_eq!(mermin_bound(3), r(3, 4));
        assert_eq!(mermin_bound(7), r(9, 16));
        assert_eq!(mermin_bound(1), r(1, 1));
    }

    #[test]
    fn binom_mod_q_examples() {
        assert_eq!(binom_mod_q(4, 0, 8), BigUint::from(1u32));
        assert_eq!(binom_mod_q(4, 0, 2), BigUint::from(8u32));
        assert_eq!(binom_mod_q(7, 3, 8), BigUint::from(35u32));
    }

    #[test]
    fn binom_mod_q_partitions_all_strings() {
        for n in 0..=64 {
            for q in 1..=16 {
                let total: BigUint = (0..q).map(|j| binom_mod_q(n, j, q)).sum();
                assert_eq!(total, BigUint::one() << n);
            }
        }
        for n in 0..20 {
            for j in 0..=n {
                assert_eq!(binom_mod_q(n, j, n + 1), binomial(n, j));
            }
        }
    }

    #[test]
    fn griggs_examples() {
        assert_eq!(griggs_bound(7, 8, 1), BigUint::from(35u32));
        assert_eq!(griggs_bound(7, 8, 8), BigUint::from(128u32));
        assert_eq!(griggs_bound(4, 8, 1), BigUint::from(6u32));
    }

    #[test]
    fn tight_examples() {
        assert_eq!(tight_bound(7), r(35, 64));
        assert!(tight_bound(7) < mermin_bound(7));
        assert_eq!(tight_bound(9), r(63, 128));
        assert!(tight_bound(41) < r(1, 4));
        assert!(tight_bound(40) >= r(1, 4));
    }

    #[test]
    fn tight_equals_griggs_in_regime() {
        for m_bits in 1..=4u32 {
            let q = 2usize << m_bits;
            for n in 1..=80 {
                if regime_holds(n, m_bits) {
                    let via_griggs = Rational::new(griggs_bound(n, q, 1).into(), pow2(n - 1));
                    assert_eq!(via_griggs, tight_bound(n), "n={n} m={m_bits}");
                }
            }
        }
    }

    #[test]
    fn mermin_versus_tight() {
        for n in 1..=6 {
            assert_eq!(mermin_bound(n), tight_bound(n));
        }
        for n in 7..=64 {
            assert!(mermin_bound(n) > tight_bound(n), "n={n}");
        }
    }

    #[test]
    fn asymptote_examples() {
        let ratio = rational_to_f64(&tight_bound(1000)) / asymptotic_bound(1000);
        assert!((asymptotic_bound(1000) - 0.050463).abs() < 5e-7);
        assert!((rational_to_f64(&tight_bound(1000)) - 0.050450).abs() < 5e-7);
        assert!((ratio - 1.0).abs() < 1e-3);
        let mut last = f64::INFINITY;
        for n in [100, 300, 1000, 3000, 10000] {
            let gap = (rational_to_f64(&tight_bound(n)) / asymptotic_bound(n) - 1.0).abs();
            assert!(gap < last, "n={n}");
            last = gap;
        }
        assert!(asymptotic_bound(2) < asymptotic_bound(1) && asymptotic_bound(1) > 0.0);
    }

    #[test]
    fn rational_to_f64_matches_small_values() {
        assert_eq!(rational_to_f64(&r(35, 64)), 0.546875);
        assert_eq!(rational_to_f64(&r(-1, 3)), -1.0 / 3.0);
        assert_eq!(rational_to_f64(&r(0, 3)), 0.0);
        assert_eq!(rational_to_f64(&r(7, 1)), 7.0);
    }

    #[test]
    fn classify_examples() {
        let l = Limits::default();
        let g = |n, d, m| GameSpec::new(n, d, m).unwrap();
        assert_eq!(
            classify_game(&g(3, 2, 2)),
            Classification::PseudoTelepathy { p: 2 }
        );
        match classify_game(&g(3, 3, 2)) {
            Classification::NotPseudoTelepathy { a, witness } => {
                assert_eq!(a, 1);
                let rep = eval_deterministic(&g(3, 3, 2), &witness, &l).unwrap();
                assert_eq!(rep.wins, rep.total);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            classify_game(&g(2, 2, 2)),
            Classification::Unresolved { p: 2 }
        );
        assert_eq!(
            classify_game(&g(4, 5, 5)),
            Classification::Unresolved { p: 5 }
        );
        assert_eq!(
            classify_game(&g(5, 5, 10)),
            Classification::PseudoTelepathy { p: 5 }
        );
        assert_eq!(
            classify_game(&g(3, 6, 4)),
            Classification::PseudoTelepathy { p: 2 }
        );
    }

    #[test]
    fn scan_examples() {
        let scan = crossover_scan(2, 60);
        let regime: Vec<_> = scan.rows.iter().filter(|r| r.regime).map(|r| r.n).collect();
        assert_eq!(regime, (1..=14).collect::<Vec<_>>());
        assert_eq!(scan.below_mermin, Some(7));
        assert_eq!(scan.below_half, Some(9));
        assert_eq!(scan.below_quarter, None);
        assert_eq!(crossover_scan(4, 60).below_quarter, Some(41));
    }
}
