//! Serializable report documents. Each verb produces a `Report<T>`; the
//! structs here mirror the library results with exact rationals kept as
//! `{"num", "den", "float"}` triples.

use std::str::FromStr;

use ghz_games::bounds::{self, BoundsReport, CrossoverScan, ScanRow};
use ghz_games::classical::{reduce_strategy, DeterministicStrategy};
use ghz_games::{GameSpec, Rational};
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::config::RunConfig;

pub const TOOL: &str = "ghz-games";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
}

impl Meta {
    pub fn new(config: &RunConfig) -> Self {
        Meta {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: config.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub meta: Meta,
    pub result: T,
}

fn big_number(text: &str) -> Number {
    Number::from_str(text).expect("decimal integers are valid JSON numbers")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: Number,
    pub den: Number,
    pub float: f64,
}

impl RationalJson {
    pub fn to_rational(&self) -> Option<Rational> {
        let num = BigInt::from_str(&self.num.to_string()).ok()?;
        let den = BigInt::from_str(&self.den.to_string()).ok()?;
        (den != BigInt::from(0)).then(|| Rational::new(num, den))
    }
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: big_number(&r.numer().to_string()),
            den: big_number(&r.denom().to_string()),
            float: bounds::rational_to_f64(r),
        }
    }
}

pub fn big_uint(v: &BigUint) -> Number {
    big_number(&v.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameJson {
    pub n: usize,
    pub d: u32,
    pub m: u32,
}

impl From<&GameSpec> for GameJson {
    fn from(g: &GameSpec) -> Self {
        GameJson {
            n: g.n(),
            d: g.d(),
            m: g.m(),
        }
    }
}

/// Answer tables, plus the reduced `(d, b)` form when `D = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyJson {
    pub tables: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
}

impl StrategyJson {
    pub fn new(spec: &GameSpec, s: &DeterministicStrategy) -> Self {
        let reduced = reduce_strategy(spec, s).ok();
        StrategyJson {
            tables: s.tables().to_vec(),
            d: reduced.as_ref().map(|r| r.d.clone()),
            b: reduced.map(|r| r.b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub y: String,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub game: GameJson,
    pub x: String,
    pub outcomes: Vec<Outcome>,
    pub intermediate_state_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certainty {
    pub game: GameJson,
    pub inputs_checked: u64,
    pub min_win_probability: f64,
    pub worst_input: String,
    pub support_matches: bool,
    pub max_uniform_deviation: f64,
    pub certain: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliCheck {
    pub n: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Search {
    pub game: GameJson,
    pub method: String,
    pub wins: u64,
    pub total: u64,
    pub value: RationalJson,
    pub expectation: RationalJson,
    pub witness: StrategyJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalvingExact {
    pub game: GameJson,
    pub inputs_checked: u64,
    pub min_probability: RationalJson,
    pub max_probability: RationalJson,
    pub input_independent: bool,
    pub tight_bound: RationalJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalvingSample {
    pub game: GameJson,
    pub seed: u64,
    pub trials: u64,
    pub wins: u64,
    pub estimate: f64,
    pub halfwidth_95: f64,
    /// The exact value, when the game is in the regime where it is known.
    pub exact: Option<RationalJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Weighted<T> {
    pub item: T,
    pub weight: RationalJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lp {
    pub game: GameJson,
    pub value: RationalJson,
    pub pivots: usize,
    pub mixture: Vec<Weighted<StrategyJson>>,
    pub worst_inputs: Vec<Weighted<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsPoint {
    pub n: usize,
    pub m_bits: u32,
    pub ell: i64,
    pub effective_min_m: u32,
    pub regime: bool,
    pub mermin: RationalJson,
    pub tight: RationalJson,
    pub griggs_count: Number,
    pub asymptote: f64,
}

impl From<&BoundsReport> for BoundsPoint {
    fn from(b: &BoundsReport) -> Self {
        BoundsPoint {
            n: b.n,
            m_bits: b.m_bits,
            ell: b.ell,
            effective_min_m: bounds::effective_min_m(b.n),
            regime: b.regime_ok,
            mermin: (&b.mermin).into(),
            tight: (&b.tight).into(),
            griggs_count: big_uint(&b.griggs_count),
            asymptote: b.asymptote,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRowJson {
    pub n: usize,
    pub ell: i64,
    pub regime: bool,
    pub mermin: RationalJson,
    pub tight: RationalJson,
    pub asymptote: f64,
}

impl From<&ScanRow> for ScanRowJson {
    fn from(r: &ScanRow) -> Self {
        ScanRowJson {
            n: r.n,
            ell: r.ell,
            regime: r.regime,
            mermin: (&r.mermin).into(),
            tight: (&r.tight).into(),
            asymptote: r.asymptote,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scan {
    pub m_bits: u32,
    pub rows: Vec<ScanRowJson>,
    pub below_mermin: Option<usize>,
    pub below_half: Option<usize>,
    pub below_quarter: Option<usize>,
}

impl From<&CrossoverScan> for Scan {
    fn from(s: &CrossoverScan) -> Self {
        Scan {
            m_bits: s.m_bits,
            rows: s.rows.iter().map(Into::into).collect(),
            below_mermin: s.below_mermin,
            below_half: s.below_half,
            below_quarter: s.below_quarter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BezoutWitness {
    pub a: u32,
    pub strategy: StrategyJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corroboration {
    pub omega_tilde: RationalJson,
    pub perfect: bool,
    /// `null` when the verdict is unresolved.
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classify {
    pub game: GameJson,
    pub gcd: u32,
    pub verdict: String,
    pub smallest_common_prime: Option<u32>,
    pub bezout: Option<BezoutWitness>,
    pub corroboration: Option<Corroboration>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyScore {
    pub game: GameJson,
    /// Bezout coefficient, for `bezout` reports.
    pub a: Option<u32>,
    pub strategy: StrategyJson,
    pub wins: u64,
    pub total: u64,
    pub rate: RationalJson,
}

/// CSV rendering, for the reports that have a natural table.
pub trait Tabular {
    fn table(&self) -> Option<(Vec<&'static str>, Vec<Vec<String>>)> {
        None
    }
}

const BOUNDS_HEADER: [&str; 8] = [
    "n",
    "ell",
    "regime",
    "mermin_num",
    "mermin_den",
    "tight_num",
    "tight_den",
    "asymptote",
];

fn bounds_row(
    n: usize,
    ell: i64,
    regime: bool,
    mermin: &RationalJson,
    tight: &RationalJson,
    asymptote: f64,
) -> Vec<String> {
    vec![
        n.to_string(),
        ell.to_string(),
        regime.to_string(),
        mermin.num.to_string(),
        mermin.den.to_string(),
        tight.num.to_string(),
        tight.den.to_string(),
        asymptote.to_string(),
    ]
}

impl Tabular for Scan {
    fn table(&self) -> Option<(Vec<&'static str>, Vec<Vec<String>>)> {
        let rows = self
            .rows
            .iter()
            .map(|r| bounds_row(r.n, r.ell, r.regime, &r.mermin, &r.tight, r.asymptote))
            .collect();
        Some((BOUNDS_HEADER.to_vec(), rows))
    }
}

impl Tabular for BoundsPoint {
    fn table(&self) -> Option<(Vec<&'static str>, Vec<Vec<String>>)> {
        let row = bounds_row(
            self.n,
            self.ell,
            self.regime,
            &self.mermin,
            &self.tight,
            self.asymptote,
        );
        Some((BOUNDS_HEADER.to_vec(), vec![row]))
    }
}

impl Tabular for Distribution {
    fn table(&self) -> Option<(Vec<&'static str>, Vec<Vec<String>>)> {
        let rows = self
            .outcomes
            .iter()
            .map(|o| vec![o.y.clone(), o.p.to_string()])
            .collect();
        Some((vec!["y", "p"], rows))
    }
}

impl Tabular for Certainty {}
impl Tabular for PauliCheck {}
impl Tabular for Search {}
impl Tabular for HalvingExact {}
impl Tabular for HalvingSample {}
impl Tabular for Lp {}
impl Tabular for Classify {}
impl Tabular for StrategyScore {}
