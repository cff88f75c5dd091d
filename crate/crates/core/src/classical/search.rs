//! Exhaustive maximisation of the success rate over deterministic strategies.
//!
//! Both sweeps walk the strategy tree player by player, carrying a histogram
//! of partial inputs so a strategy prefix is scored once for all of its
//! completions. Every strategy is still visited (or, for the last player,
//! maximised in closed form per input symbol), so the maximum is exact.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::strategy::{DeterministicStrategy, ReducedStrategy};
use crate::error::{Error, Result};
use crate::game::{checked_pow, GameSpec, Limits};
use crate::Rational;

/// Best deterministic success rate and the first strategy attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome<W> {
    pub wins: u64,
    pub total: u64,
    pub witness: W,
}

impl<W> SearchOutcome<W> {
    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.wins), BigInt::from(self.total))
    }
}

fn geometric_sum(ratio: u128, terms: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for _ in 0..terms {
        total = total.checked_add(term)?;
        term = term.checked_mul(ratio)?;
    }
    Some(total)
}

fn check_work(required: Option<u128>, limits: &Limits, hint: Option<&'static str>) -> Result<()> {
    match required {
        Some(r) if r <= limits.work as u128 => Ok(()),
        _ => Err(Error::WorkBound {
            required,
            limit: limits.work,
            hint,
        }),
    }
}

/// Elementary evaluations performed by [`brute_force_omega_tilde`].
pub fn full_search_work(spec: &GameSpec) -> Option<u128> {
    let (d, m) = (spec.d() as u128, spec.m() as u128);
    let tables = checked_pow(spec.m() as u64, spec.d() as usize)?;
    geometric_sum(tables, spec.n())?.checked_mul(d * d * m * m * m)
}

/// Elementary evaluations performed by [`brute_force_reduced`].
pub fn reduced_search_work(spec: &GameSpec) -> Option<u128> {
    let m = spec.m() as u128;
    geometric_sum(m, spec.n() + 1)?.checked_mul(4 * m)
}

fn all_tables(d: usize, m: u32) -> Vec<Vec<u32>> {
    let count = (m as usize).pow(d as u32);
    (0..count)
        .map(|mut i| {
            let mut t = vec![0u32; d];
            for slot in t.iter_mut().rev() {
                *slot = (i % m as usize) as u32;
                i /= m as usize;
            }
            t
        })
        .collect()
}

struct FullSearch {
    n: usize,
    d: usize,
    m: usize,
    tables: Vec<Vec<u32>>,
    /// `levels[k][s * M + a]`: partial inputs of players `1..=k` with input sum
    /// `s (mod DM)` and answer sum `a (mod M)`.
    levels: Vec<Vec<u64>>,
    chosen: Vec<usize>,
    best_wins: Option<u64>,
    best: Vec<Vec<u32>>,
}

impl FullSearch {
    fn descend(&mut self, depth: usize) {
        if depth + 1 == self.n {
            self.finish();
            return;
        }
        let (d, m, dm) = (self.d, self.m, self.d * self.m);
        for t in 0..self.tables.len() {
            let (lower, upper) = self.levels.split_at_mut(depth + 1);
            let (src, dst) = (&lower[depth], &mut upper[0]);
            dst.iter_mut().for_each(|c| *c = 0);
            let table = &self.tables[t];
            for s in 0..dm {
                for a in 0..m {
                    let count = src[s * m + a];
                    if count == 0 {
                        continue;
                    }
                    for v in 0..d {
                        let s2 = (s + v) % dm;
                        let a2 = (a + table[v] as usize) % m;
                        dst[s2 * m + a2] += count;
                    }
                }
            }
            self.chosen[depth] = t;
            self.descend(depth + 1);
        }
    }

    /// Scores the best completion of the current prefix: the last player's
    /// answers to distinct symbols are independent, so each is maximised
    /// separately, smallest answer first.
    fn finish(&mut self) {
        let (d, m, dm) = (self.d, self.m, self.d * self.m);
        let counts = &self.levels[self.n - 1];
        let mut wins = 0;
        let mut last = vec![0u32; d];
        for v in 0..d {
            let mut best = (0u64, 0u32);
            for c in 0..m {
                let mut w = 0;
                for s in 0..dm {
                    let u = (s + v) % dm;
                    if u % d != 0 {
                        continue;
                    }
                    let target = (u / d) % m;
                    w += counts[s * m + (target + m - c) % m];
                }
                if c == 0 || w > best.0 {
                    best = (w, c as u32);
                }
            }
            wins += best.0;
            last[v] = best.1;
        }
        if self.best_wins.is_none_or(|b| wins > b) {
            self.best_wins = Some(wins);
            self.best = self.chosen[..self.n - 1]
                .iter()
                .map(|&t| self.tables[t].clone())
                .collect();
            self.best.push(last);
        }
    }
}

/// `~omega(G)`: the best success rate over all `(M^D)^n` deterministic
/// strategies. The witness is the smallest maximiser in encoding order.
pub fn brute_force_omega_tilde(
    spec: &GameSpec,
    limits: &Limits,
) -> Result<SearchOutcome<DeterministicStrategy>> {
    let hint = (spec.d() == 2).then_some("the reduced search handles D=2 games far more cheaply");
    check_work(full_search_work(spec), limits, hint)?;
    let total = spec.promise_size().expect("bounded by work") as u64;
    let (n, d, m) = (spec.n(), spec.d() as usize, spec.m() as usize);
    let mut levels = vec![vec![0u64; d * m * m]; n];
    levels[0][0] = 1;
    let mut search = FullSearch {
        n,
        d,
        m,
        tables: all_tables(d, spec.m()),
        levels,
        chosen: vec![0; n],
        best_wins: None,
        best: Vec::new(),
    };
    search.descend(0);
    let witness = DeterministicStrategy::new(spec, search.best)?;
    Ok(SearchOutcome {
        wins: search.best_wins.expect("at least one strategy"),
        total,
        witness,
    })
}

struct ReducedSearch {
    n: usize,
    m: usize,
    /// `levels[k][p * 2M + r]`: inputs of players `1..=k` with weight parity
    /// `p` and `sum (2 d_j - 1) x_j = r (mod 2M)`.
    levels: Vec<Vec<u64>>,
    d: Vec<u32>,
    best_wins: Option<u64>,
    best: (Vec<u32>, u32),
}

impl ReducedSearch {
    fn descend(&mut self, depth: usize) {
        let q = 2 * self.m;
        if depth == self.n {
            let counts = &self.levels[self.n];
            for b in 0..self.m {
                let wins = counts[(q - 2 * b) % q];
                if self.best_wins.is_none_or(|best| wins > best) {
                    self.best_wins = Some(wins);
                    self.best = (self.d.clone(), b as u32);
                }
            }
            return;
        }
        for dj in 0..self.m {
            let a = (2 * dj + q - 1) % q;
            let (lower, upper) = self.levels.split_at_mut(depth + 1);
            let (src, dst) = (&lower[depth], &mut upper[0]);
            dst.iter_mut().for_each(|c| *c = 0);
            for p in 0..2 {
                for r in 0..q {
                    let count = src[p * q + r];
                    dst[p * q + r] += count;
                    dst[(1 - p) * q + (r + a) % q] += count;
                }
            }
            self.d[depth] = dj as u32;
            self.descend(depth + 1);
        }
    }
}

/// `~omega(G(n, 2, M))` by sweeping every reduced strategy `(d, b)`; the
/// witness is the lexicographically smallest maximiser.
pub fn brute_force_reduced(
    spec: &GameSpec,
    limits: &Limits,
) -> Result<SearchOutcome<ReducedStrategy>> {
    if spec.d() != 2 {
        return Err(Error::UnsupportedDivisor { d: spec.d() });
    }
    check_work(reduced_search_work(spec), limits, None)?;
    let total = spec.promise_size().expect("bounded by work") as u64;
    let (n, m) = (spec.n(), spec.m() as usize);
    let mut levels = vec![vec![0u64; 4 * m]; n + 1];
    levels[0][0] = 1;
    let mut search = ReducedSearch {
        n,
        m,
        levels,
        d: vec![0; n],
        best_wins: None,
        best: (Vec::new(), 0),
    };
    search.descend(0);
    let (d, b) = search.best;
    Ok(SearchOutcome {
        wins: search.best_wins.expect("at least one strategy"),
        total,
        witness: ReducedStrategy::new(spec.m(), d, b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::strategy::eval_deterministic;

    fn g(n: usize, d: u32, m: u32) -> GameSpec {
        GameSpec::new(n, d, m).unwrap()
    }

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    /// Oracle: score every encoded strategy directly and keep the first best.
    fn naive_omega_tilde(spec: &GameSpec) -> (u64, DeterministicStrategy) {
        let l = Limits::default();
        let count = checked_pow(spec.m() as u64, spec.d() as usize * spec.n()).unwrap();
        let mut best: Option<(u64, DeterministicStrategy)> = None;
        for i in 0..count {
            let s = DeterministicStrategy::from_index(spec, i);
            let wins = eval_deterministic(spec, &s, &l).unwrap().wins;
            if best.as_ref().is_none_or(|(b, _)| wins > *b) {
                best = Some((wins, s));
            }
        }
        best.unwrap()
    }

    #[test]
    fn full_examples() {
        let l = Limits::default();
        assert_eq!(
            brute_force_omega_tilde(&g(3, 2, 2), &l).unwrap().value(),
            r(3, 4)
        );
        assert_eq!(
            brute_force_omega_tilde(&g(2, 2, 2), &l).unwrap().value(),
            r(1, 1)
        );
        assert_eq!(
            brute_force_omega_tilde(&g(4, 2, 2), &l).unwrap().value(),
            r(3, 4)
        );
    }

    #[test]
    fn full_matches_naive_oracle() {
        for (n, d, m) in [
            (1, 2, 2),
            (2, 2, 3),
            (3, 2, 2),
            (3, 2, 3),
            (2, 3, 2),
            (3, 3, 2),
            (2, 3, 3),
            (4, 2, 2),
            (2, 4, 2),
        ] {
            let spec = g(n, d, m);
            let found = brute_force_omega_tilde(&spec, &Limits::default()).unwrap();
            let (wins, witness) = naive_omega_tilde(&spec);
            assert_eq!(found.wins, wins, "{spec}");
            assert_eq!(found.witness, witness, "{spec}");
        }
    }

    #[test]
    fn witness_achieves_value() {
        let spec = g(3, 3, 3);
        let found = brute_force_omega_tilde(&spec, &Limits::default()).unwrap();
        let rep = eval_deterministic(&spec, &found.witness, &Limits::default()).unwrap();
        assert_eq!(rep.wins, found.wins);
    }

    #[test]
    fn reduced_examples() {
        let l = Limits::default();
        assert_eq!(
            brute_force_reduced(&g(7, 2, 4), &l).unwrap().value(),
            r(35, 64)
        );
        assert_eq!(
            brute_force_reduced(&g(3, 2, 2), &l).unwrap().value(),
            r(3, 4)
        );
        assert_eq!(
            brute_force_reduced(&g(9, 2, 4), &l).unwrap().value(),
            r(63, 128)
        );
    }

    #[test]
    fn reduced_agrees_with_full() {
        let l = Limits::default();
        for n in 1..=4 {
            for m in 2..=4 {
                let spec = g(n, 2, m);
                let full = brute_force_omega_tilde(&spec, &l).unwrap();
                let red = brute_force_reduced(&spec, &l).unwrap();
                assert_eq!(full.wins, red.wins, "{spec}");
                let rep = eval_deterministic(&spec, &red.witness.to_deterministic(), &l).unwrap();
                assert_eq!(rep.wins, red.wins, "{spec}");
            }
        }
    }

    #[test]
    fn reduced_witness_is_smallest() {
        // n = 1: the single player must answer b on x = 0, so b = 0 wins and d = 0 is first
        let out = brute_force_reduced(&g(1, 2, 4), &Limits::default()).unwrap();
        assert_eq!(
            (out.witness.d.clone(), out.witness.b, out.wins),
            (vec![0], 0, 1)
        );
    }

    #[test]
    fn work_bound_refusals() {
        let tight = Limits {
            work: 1000,
            ..Limits::default()
        };
        let e = brute_force_omega_tilde(&g(5, 2, 2), &tight).unwrap_err();
        assert!(matches!(e, Error::WorkBound { hint: Some(_), .. }));
        let e = brute_force_omega_tilde(&g(5, 3, 2), &tight).unwrap_err();
        assert!(matches!(e, Error::WorkBound { hint: None, .. }));
        assert!(matches!(
            brute_force_reduced(&g(9, 2, 4), &tight),
            Err(Error::WorkBound { .. })
        ));
        assert!(matches!(
            brute_force_reduced(&g(3, 3, 4), &tight),
            Err(Error::UnsupportedDivisor { .. })
        ));
        assert!(matches!(
            brute_force_omega_tilde(&g(40, 6, 6), &Limits::unbounded()),
            Err(Error::WorkBound { required: None, .. })
        ));
    }
}
