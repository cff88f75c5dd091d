use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::game::{self, guard, GameSpec, InputString, Limits, OutputString};
use crate::Rational;

/// One answer table per player, `S_j : [0, D) -> [0, M)`.
///
/// Strategies are ordered by their encoding: the concatenated tables
/// `S_1(0), .., S_1(D-1), S_2(0), ..` read as a base-`M` integer with the first
/// entry most significant. Ascending encoding is lexicographic table order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    m: u32,
    tables: Vec<Vec<u32>>,
}

impl DeterministicStrategy {
    pub fn new(spec: &GameSpec, tables: Vec<Vec<u32>>) -> Result<Self> {
        if tables.len() != spec.n() {
            return Err(Error::MalformedInput(alloc::format!(
                "strategy has {} tables, expected {}",
                tables.len(),
                spec.n()
            )));
        }
        for (j, table) in tables.iter().enumerate() {
            if table.len() != spec.d() as usize {
                return Err(Error::MalformedInput(alloc::format!(
                    "table of player {} has {} entries, expected {}",
                    j + 1,
                    table.len(),
                    spec.d()
                )));
            }
            if let Some(&v) = table.iter().find(|&&v| v >= spec.m()) {
                return Err(Error::MalformedInput(alloc::format!(
                    "table of player {} answers {v}, outside [0, {})",
                    j + 1,
                    spec.m()
                )));
            }
        }
        Ok(DeterministicStrategy {
            m: spec.m(),
            tables,
        })
    }

    /// Every player answers `f(x_j)`.
    pub fn uniform(spec: &GameSpec, f: impl Fn(u32) -> u32) -> Result<Self> {
        let table: Vec<u32> = (0..spec.d()).map(&f).collect();
        Self::new(spec, alloc::vec![table; spec.n()])
    }

    /// Decodes the strategy with the given position in encoding order.
    pub fn from_index(spec: &GameSpec, mut index: u128) -> Self {
        let (n, d, m) = (spec.n(), spec.d() as usize, spec.m() as u128);
        let mut flat = alloc::vec![0u32; n * d];
        for slot in flat.iter_mut().rev() {
            *slot = (index % m) as u32;
            index /= m;
        }
        DeterministicStrategy {
            m: spec.m(),
            tables: flat.chunks(d).map(<[u32]>::to_vec).collect(),
        }
    }

    pub fn index(&self) -> u128 {
        self.tables
            .iter()
            .flatten()
            .fold(0u128, |acc, &v| acc * self.m as u128 + v as u128)
    }

    pub fn tables(&self) -> &[Vec<u32>] {
        &self.tables
    }

    /// `S(x) = (S_j(x_j))`.
    pub fn answers(&self, x: &InputString) -> OutputString {
        x.as_slice()
            .iter()
            .zip(&self.tables)
            .map(|(&xj, t)| t[xj as usize])
            .collect::<Vec<_>>()
            .into()
    }
}

/// Outcome of scoring a strategy against every promised input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategyReport {
    pub wins: u64,
    pub total: u64,
}

impl StrategyReport {
    pub fn rate(&self) -> Rational {
        Rational::new(BigInt::from(self.wins), BigInt::from(self.total))
    }

    /// `<(-1)^(lose)> = 2 * rate - 1`.
    pub fn expectation(&self) -> Rational {
        Rational::new(
            BigInt::from(2 * self.wins) - BigInt::from(self.total),
            BigInt::from(self.total),
        )
    }
}

pub fn eval_deterministic(
    spec: &GameSpec,
    strategy: &DeterministicStrategy,
    limits: &Limits,
) -> Result<StrategyReport> {
    if strategy.tables.len() != spec.n() || strategy.m != spec.m() {
        return Err(Error::MalformedInput(
            "strategy does not belong to this game".into(),
        ));
    }
    let total = guard("promise set", spec.promise_size(), limits.items)?;
    let mut wins = 0;
    for x in game::promise_iter(spec) {
        if game::is_winning(spec, &x, &strategy.answers(&x))? {
            wins += 1;
        }
    }
    Ok(StrategyReport { wins, total })
}

/// The `D = 2` parametrisation `d_j = S_j(1) - S_j(0)`, `b = sum_j S_j(0)`,
/// all modulo `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedStrategy {
    pub d: Vec<u32>,
    pub b: u32,
    m: u32,
}

impl ReducedStrategy {
    pub fn new(m: u32, d: Vec<u32>, b: u32) -> Result<Self> {
        if d.iter().any(|&v| v >= m) || b >= m {
            return Err(Error::MalformedInput(alloc::format!(
                "reduced strategy entries must lie in [0, {m})"
            )));
        }
        Ok(ReducedStrategy { d, b, m })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// The odd coefficients `a_j = 2 d_j - 1`, reduced modulo `2M`.
    pub fn coefficients(&self) -> Vec<u64> {
        let q = 2 * self.m as u64;
        self.d.iter().map(|&d| (2 * d as u64 + q - 1) % q).collect()
    }

    /// `sum_j (2 d_j - 1) x_j = -2b (mod 2M)`, the winning test in reduced form.
    pub fn wins(&self, x: &InputString) -> bool {
        let q = 2 * self.m as u64;
        let lhs = self
            .coefficients()
            .iter()
            .zip(x.as_slice())
            .map(|(&a, &xj)| a * xj as u64)
            .sum::<u64>()
            % q;
        lhs == (q - 2 * self.b as u64 % q) % q
    }

    /// A deterministic strategy with this reduction: player 1 carries `b`.
    pub fn to_deterministic(&self) -> DeterministicStrategy {
        let tables = self
            .d
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let base = if j == 0 { self.b } else { 0 };
                alloc::vec![base, (base + d) % self.m]
            })
            .collect();
        DeterministicStrategy { m: self.m, tables }
    }
}

pub fn reduce_strategy(
    spec: &GameSpec,
    strategy: &DeterministicStrategy,
) -> Result<ReducedStrategy> {
    if spec.d() != 2 {
        return Err(Error::UnsupportedDivisor { d: spec.d() });
    }
    let m = spec.m();
    let d = strategy
        .tables
        .iter()
        .map(|t| (t[1] + m - t[0]) % m)
        .collect();
    let b = (strategy.tables.iter().map(|t| t[0] as u64).sum::<u64>() % m as u64) as u32;
    Ok(ReducedStrategy { d, b, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn g(n: usize, d: u32, m: u32) -> GameSpec {
        GameSpec::new(n, d, m).unwrap()
    }

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn eval_examples() {
        let l = Limits::default();
        let spec = g(2, 2, 2);
        let s = DeterministicStrategy::new(&spec, vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(eval_deterministic(&spec, &s, &l).unwrap().rate(), r(1, 1));

        let spec = g(3, 3, 2);
        let s = DeterministicStrategy::uniform(&spec, |x| x % 2).unwrap();
        let rep = eval_deterministic(&spec, &s, &l).unwrap();
        assert_eq!((rep.wins, rep.total), (9, 9));

        // all-zero answers on G(3,2,2) win iff |x|/2 is even: only x = 000
        let spec = g(3, 2, 2);
        let s = DeterministicStrategy::uniform(&spec, |_| 0).unwrap();
        let rep = eval_deterministic(&spec, &s, &l).unwrap();
        assert_eq!((rep.wins, rep.total), (1, 4));
        assert_eq!(rep.rate(), r(1, 4));
        assert_eq!(rep.expectation(), r(-1, 2));
    }

    #[test]
    fn strategy_validation() {
        let spec = g(2, 2, 2);
        assert!(DeterministicStrategy::new(&spec, vec![vec![0, 1]]).is_err());
        assert!(DeterministicStrategy::new(&spec, vec![vec![0, 1], vec![0]]).is_err());
        assert!(DeterministicStrategy::new(&spec, vec![vec![0, 2], vec![0, 0]]).is_err());
    }

    #[test]
    fn encoding_round_trip() {
        let spec = g(3, 2, 3);
        for i in 0..3u128.pow(6) {
            let s = DeterministicStrategy::from_index(&spec, i);
            assert_eq!(s.index(), i);
        }
        let s = DeterministicStrategy::from_index(&spec, 1);
        assert_eq!(s.tables(), &[vec![0, 0], vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn reduce_examples() {
        let spec = g(3, 2, 4);
        let zero = DeterministicStrategy::uniform(&spec, |_| 0).unwrap();
        let red = reduce_strategy(&spec, &zero).unwrap();
        assert_eq!((red.d.clone(), red.b), (vec![0, 0, 0], 0));

        let s = DeterministicStrategy::uniform(&spec, |x| x + 1).unwrap();
        let red = reduce_strategy(&spec, &s).unwrap();
        assert_eq!((red.d.clone(), red.b), (vec![1, 1, 1], 3));
        assert_eq!(red.coefficients(), vec![1, 1, 1]);

        let e = reduce_strategy(
            &g(3, 3, 4),
            &DeterministicStrategy::uniform(&g(3, 3, 4), |_| 0).unwrap(),
        );
        assert!(matches!(e, Err(Error::UnsupportedDivisor { d: 3 })));
    }

    #[test]
    fn reduction_matches_direct_on_4_2_4() {
        let spec = g(4, 2, 4);
        let inputs: Vec<_> = game::promise_iter(&spec).collect();
        for i in 0..4u128.pow(8) {
            let s = DeterministicStrategy::from_index(&spec, i);
            let red = reduce_strategy(&spec, &s).unwrap();
            for x in &inputs {
                assert_eq!(
                    game::is_winning(&spec, x, &s.answers(x)).unwrap(),
                    red.wins(x)
                );
            }
        }
    }

    #[test]
    fn reduced_to_deterministic_keeps_reduction() {
        let spec = g(3, 2, 4);
        let red = ReducedStrategy::new(4, vec![3, 0, 2], 1).unwrap();
        let s = red.to_deterministic();
        assert_eq!(reduce_strategy(&spec, &s).unwrap(), red);
    }
}
