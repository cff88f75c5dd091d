//! Game instances `G(n, D, M)`: the divisibility promise on inputs and the
//! modular winning relation on answers.
//!
//! Players are numbered `1..=n` in prose and `0..n` in slices. Input strings
//! are sequences of residues in `[0, D)`, answers are residues in `[0, M)`.
//! All enumerations are lexicographic with player 1 as the most significant
//! position.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Size and work guards shared by every enumerating operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of enumerated strings (inputs or winning answers).
    pub items: u64,
    /// Maximum number of amplitudes in a simulated state vector.
    pub amplitudes: u64,
    /// Maximum number of elementary evaluations in a strategy sweep.
    pub work: u64,
}

impl Limits {
    pub const DEFAULT_ITEMS: u64 = 1 << 24;
    pub const DEFAULT_AMPLITUDES: u64 = 1 << 24;
    pub const DEFAULT_WORK: u64 = 1 << 28;

    pub const fn unbounded() -> Self {
        Limits {
            items: u64::MAX,
            amplitudes: u64::MAX,
            work: u64::MAX,
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            items: Self::DEFAULT_ITEMS,
            amplitudes: Self::DEFAULT_AMPLITUDES,
            work: Self::DEFAULT_WORK,
        }
    }
}

/// `base^exp`, or `None` past `u128`.
pub fn checked_pow(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

pub(crate) fn guard(what: &'static str, required: Option<u128>, limit: u64) -> Result<u64> {
    match required {
        Some(r) if r <= limit as u128 => Ok(r as u64),
        _ => Err(Error::TooLarge {
            what,
            required,
            limit,
        }),
    }
}

/// The triple `(n, D, M)` defining a game instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameSpec {
    n: usize,
    d: u32,
    m: u32,
}

impl GameSpec {
    pub fn new(n: usize, d: u32, m: u32) -> Result<Self> {
        if n == 0 || d < 2 || m < 2 {
            return Err(Error::InvalidGame { n, d, m });
        }
        Ok(GameSpec { n, d, m })
    }

    /// Player count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Divisor: inputs are promised to sum to a multiple of it.
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Modulo: answers live in `[0, M)`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// `|P| = D^(n-1)`.
    pub fn promise_size(&self) -> Option<u128> {
        checked_pow(self.d as u64, self.n - 1)
    }

    /// Number of answers accepted on any promised input, `M^(n-1)`.
    pub fn winning_size(&self) -> Option<u128> {
        checked_pow(self.m as u64, self.n - 1)
    }

    /// `M^n`, the dimension of the shared state.
    pub fn answer_space(&self) -> Option<u128> {
        checked_pow(self.m as u64, self.n)
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(n={}, D={}, M={})", self.n, self.d, self.m)
    }
}

/// A string of residues, one per player, player 1 first.
///
/// Used both for inputs (`x`, entries in `[0, D)`) and answers (`y`, entries
/// in `[0, M)`). The canonical text form concatenates the digits when every
/// digit is below 10 and separates them by commas otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Digits(pub Vec<u32>);

pub type InputString = Digits;
pub type OutputString = Digits;

impl Digits {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&v| v as u64).sum()
    }

    /// Renders with single-character digits when `radix <= 10`.
    pub fn to_text(&self, radix: u32) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for (i, v) in self.0.iter().enumerate() {
            if radix > 10 && i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}");
        }
        out
    }
}

impl From<Vec<u32>> for Digits {
    fn from(v: Vec<u32>) -> Self {
        Digits(v)
    }
}

impl From<&[u32]> for Digits {
    fn from(v: &[u32]) -> Self {
        Digits(v.to_vec())
    }
}

impl fmt::Display for Digits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.0.iter().any(|&v| v > 9);
        for (i, v) in self.0.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Digits {
    type Err = Error;

    /// Accepts `"110"` as well as `"1,10,0"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::MalformedInput("empty digit string".into()));
        }
        let parse = |tok: &str| {
            tok.trim().parse::<u32>().map_err(|_| {
                Error::MalformedInput(alloc::format!("`{tok}` is not a non-negative integer"))
            })
        };
        let digits = if s.contains(',') {
            s.split(',').map(parse).collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10).ok_or_else(|| {
                        Error::MalformedInput(alloc::format!("`{c}` is not a decimal digit"))
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Digits(digits))
    }
}

fn check_shape(n: usize, radix: u32, s: &Digits, what: &str) -> Result<()> {
    if s.len() != n {
        return Err(Error::MalformedInput(alloc::format!(
            "{what} has length {}, expected {n}",
            s.len()
        )));
    }
    if let Some(&v) = s.0.iter().find(|&&v| v >= radix) {
        return Err(Error::MalformedInput(alloc::format!(
            "{what} entry {v} is outside [0, {radix})"
        )));
    }
    Ok(())
}

/// Whether `x` satisfies the promise `D | sum(x)`.
///
/// Fails (rather than returning `false`) when `x` is not a well-formed
/// input string for the game.
pub fn validate_input(spec: &GameSpec, x: &InputString) -> Result<bool> {
    check_shape(spec.n, spec.d, x, "input")?;
    Ok(x.sum() % spec.d as u64 == 0)
}

fn require_promise(spec: &GameSpec, x: &InputString) -> Result<()> {
    if validate_input(spec, x)? {
        Ok(())
    } else {
        Err(Error::PromiseViolation {
            sum: x.sum(),
            divisor: spec.d,
        })
    }
}

/// The residue the answers must sum to: `(sum(x) / D) mod M`.
pub fn target_value(spec: &GameSpec, x: &InputString) -> Result<u32> {
    require_promise(spec, x)?;
    Ok(((x.sum() / spec.d as u64) % spec.m as u64) as u32)
}

pub fn is_winning(spec: &GameSpec, x: &InputString, y: &OutputString) -> Result<bool> {
    let t = target_value(spec, x)?;
    check_shape(spec.n, spec.m, y, "output")?;
    Ok(y.sum() % spec.m as u64 == t as u64)
}

/// Lexicographic odometer over `n - 1` free positions whose last position
/// is forced so that the total is `target` modulo `radix`.
#[derive(Debug, Clone)]
pub struct ConstrainedStrings {
    radix: u32,
    target: u32,
    prefix: Vec<u32>,
    prefix_sum: u64,
    done: bool,
}

impl ConstrainedStrings {
    /// Strings of length `n` over `[0, radix)` summing to `target` modulo `radix`.
    pub fn with_target(n: usize, radix: u32, target: u32) -> Self {
        ConstrainedStrings {
            radix,
            target,
            prefix: alloc::vec![0; n - 1],
            prefix_sum: 0,
            done: false,
        }
    }

    fn advance(&mut self) {
        for pos in (0..self.prefix.len()).rev() {
            if self.prefix[pos] + 1 < self.radix {
                self.prefix[pos] += 1;
                self.prefix_sum += 1;
                return;
            }
            self.prefix_sum -= (self.radix - 1) as u64;
            self.prefix[pos] = 0;
        }
        self.done = true;
    }
}

impl Iterator for ConstrainedStrings {
    type Item = Digits;

    fn next(&mut self) -> Option<Digits> {
        if self.done {
            return None;
        }
        let r = self.radix as u64;
        let last = (self.target as u64 + r - self.prefix_sum % r) % r;
        let mut out = Vec::with_capacity(self.prefix.len() + 1);
        out.extend_from_slice(&self.prefix);
        out.push(last as u32);
        self.advance();
        Some(Digits(out))
    }
}

/// Unguarded lexicographic iterator over the promise set `P`.
pub fn promise_iter(spec: &GameSpec) -> ConstrainedStrings {
    ConstrainedStrings::with_target(spec.n, spec.d, 0)
}

/// All of `P` in lexicographic order; `|P| = D^(n-1)`.
pub fn enumerate_promise(spec: &GameSpec, limits: &Limits) -> Result<Vec<InputString>> {
    guard("promise set", spec.promise_size(), limits.items)?;
    Ok(promise_iter(spec).collect())
}

/// `W(x)` in lexicographic order; `|W(x)| = M^(n-1)`.
pub fn winning_set(spec: &GameSpec, x: &InputString, limits: &Limits) -> Result<Vec<OutputString>> {
    let t = target_value(spec, x)?;
    guard("winning set", spec.winning_size(), limits.items)?;
    Ok(ConstrainedStrings::with_target(spec.n, spec.m, t).collect())
}
