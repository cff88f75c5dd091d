//! Dense qudit state-vector simulation of the GHZ strategy.
//!
//! Basis state `|k_1, ..., k_n>` is stored at index `sum_j k_j * M^(j-1)`, so
//! player 1 is the least significant base-`M` digit. The encoding never leaves
//! this module: outcomes are reported as [`OutputString`]s.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::game::{self, guard, GameSpec, InputString, Limits, OutputString};

/// Probabilities at or below this are treated as zero.
pub const ZERO_TOL: f64 = 1e-9;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

/// `e^(2 i pi k / modulus)`, evaluated directly from the angle.
pub fn root_of_unity(k: u64, modulus: u64) -> Complex64 {
    let k = k % modulus;
    let theta = 2.0 * PI * k as f64 / modulus as f64;
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// A one-party operator, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalGate {
    dim: usize,
    entries: Vec<Complex64>,
}

impl LocalGate {
    pub fn from_rows(rows: &[&[Complex64]]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(LocalGate { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| C1))
    }

    pub fn diagonal(diag: impl IntoIterator<Item = Complex64>) -> Self {
        let diag: Vec<_> = diag.into_iter().collect();
        let dim = diag.len();
        let mut entries = vec![C0; dim * dim];
        for (k, v) in diag.into_iter().enumerate() {
            entries[k * dim + k] = v;
        }
        LocalGate { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![C0; d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.entries[r * d + c].conj();
            }
        }
        LocalGate { dim: d, entries }
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &LocalGate) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let d = self.dim;
        let mut entries = vec![C0; d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                if a == C0 {
                    continue;
                }
                for c in 0..d {
                    entries[r * d + c] += a * rhs.entries[k * d + c];
                }
            }
        }
        Ok(LocalGate { dim: d, entries })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = LocalGate::identity(self.dim);
        for _ in 0..exp {
            acc = acc.compose(self).expect("same dimension");
        }
        acc
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        LocalGate {
            dim: self.dim,
            entries: self.entries.iter().map(|&e| e * factor).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_distance(&self, other: &LocalGate) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let product = self.compose(&self.adjoint()).expect("same dimension");
        product.max_distance(&LocalGate::identity(self.dim)) <= tol
    }
}

/// The quantum Fourier transform on `C^M`: entry `(y, k)` is `w_M^(ky) / sqrt(M)`.
pub fn fourier_gate(m: usize) -> LocalGate {
    let norm = 1.0 / libm::sqrt(m as f64);
    let mut entries = Vec::with_capacity(m * m);
    for y in 0..m {
        for k in 0..m {
            entries.push(root_of_unity((k * y) as u64, m as u64) * norm);
        }
    }
    LocalGate { dim: m, entries }
}

/// `diag(w_{M'}^k)` for `k` in `[0, dim)`.
pub fn phase_gate(m_prime: u64, dim: usize) -> LocalGate {
    LocalGate::diagonal((0..dim as u64).map(|k| root_of_unity(k, m_prime)))
}

pub fn hadamard() -> LocalGate {
    fourier_gate(2)
}

pub fn pauli_x() -> LocalGate {
    LocalGate::from_rows(&[&[C0, C1], &[C1, C0]]).expect("square")
}

pub fn pauli_y() -> LocalGate {
    LocalGate::from_rows(&[&[C0, -CI], &[CI, C0]]).expect("square")
}

pub fn pauli_z() -> LocalGate {
    LocalGate::diagonal([C1, -C1])
}

/// `diag(1, i)`.
pub fn s_gate() -> LocalGate {
    phase_gate(4, 2)
}

/// Amplitudes over `[0, M)^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    m: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps raw amplitudes, player 1 being the least significant digit.
    pub fn from_amplitudes(n: usize, m: usize, amplitudes: Vec<Complex64>) -> Result<StateVector> {
        let expected = game::checked_pow(m as u64, n).filter(|&len| len <= usize::MAX as u128);
        if n == 0 || m == 0 || expected != Some(amplitudes.len() as u128) {
            return Err(Error::DimensionMismatch {
                expected: expected.map_or(usize::MAX, |e| e as usize),
                found: amplitudes.len(),
            });
        }
        Ok(StateVector { n, m, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn index_of(&self, digits: &[u32]) -> usize {
        digits
            .iter()
            .rev()
            .fold(0, |acc, &k| acc * self.m + k as usize)
    }

    pub fn digits_of(&self, mut index: usize) -> OutputString {
        let mut out = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            out.push((index % self.m) as u32);
            index /= self.m;
        }
        out.into()
    }

    pub fn amplitude(&self, digits: &[u32]) -> Complex64 {
        self.amplitudes[self.index_of(digits)]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_distance(&self, other: &StateVector) -> f64 {
        if self.n != other.n || self.m != other.m {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: Complex64) -> StateVector {
        StateVector {
            n: self.n,
            m: self.m,
            amplitudes: self.amplitudes.iter().map(|&a| a * factor).collect(),
        }
    }

    /// `(I ⊗ .. ⊗ gate ⊗ .. ⊗ I) |self>` with the gate on `player` (1-based).
    pub fn apply_local_gate(&self, player: usize, gate: &LocalGate) -> Result<StateVector> {
        let mut out = self.clone();
        out.apply_in_place(player, gate)?;
        Ok(out)
    }

    fn apply_in_place(&mut self, player: usize, gate: &LocalGate) -> Result<()> {
        if gate.dim != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: gate.dim,
            });
        }
        if player == 0 || player > self.n {
            return Err(Error::InvalidPlayer { player, n: self.n });
        }
        let m = self.m;
        let stride = m.pow(player as u32 - 1);
        let block = stride * m;
        let mut column = vec![C0; m];
        for base in (0..self.amplitudes.len()).step_by(block) {
            for lo in 0..stride {
                let start = base + lo;
                for (k, slot) in column.iter_mut().enumerate() {
                    *slot = self.amplitudes[start + k * stride];
                }
                for y in 0..m {
                    let row = &gate.entries[y * m..(y + 1) * m];
                    let mut acc = C0;
                    for (g, v) in row.iter().zip(&column) {
                        acc += g * v;
                    }
                    self.amplitudes[start + y * stride] = acc;
                }
            }
        }
        Ok(())
    }

    /// Born-rule probabilities of a standard-basis measurement.
    pub fn measure_all(&self) -> OutcomeDistribution {
        OutcomeDistribution {
            n: self.n,
            m: self.m,
            probabilities: self.amplitudes.iter().map(|a| a.norm_sqr()).collect(),
        }
    }
}

fn amplitude_count(n: usize, m: usize, limits: &Limits) -> Result<usize> {
    Ok(guard(
        "state vector",
        game::checked_pow(m as u64, n),
        limits.amplitudes,
    )? as usize)
}

/// `(1/sqrt(M)) sum_k |k>^{⊗n}`.
pub fn ghz_state(n: usize, m: usize, limits: &Limits) -> Result<StateVector> {
    if n == 0 || m == 0 {
        return Err(Error::MalformedInput(alloc::format!(
            "GHZ state needs n, M >= 1 (n={n}, M={m})"
        )));
    }
    let len = amplitude_count(n, m, limits)?;
    let mut amplitudes = vec![C0; len];
    let a = Complex64::new(1.0 / libm::sqrt(m as f64), 0.0);
    // |k..k> sits at k * (1 + M + .. + M^(n-1))
    let diag_step: usize = (0..n).map(|j| m.pow(j as u32)).sum();
    for k in 0..m {
        amplitudes[k * diag_step] = a;
    }
    Ok(StateVector { n, m, amplitudes })
}

/// Measurement statistics over `[0, M)^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    n: usize,
    m: usize,
    probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn probability(&self, y: &OutputString) -> f64 {
        let index = y
            .as_slice()
            .iter()
            .rev()
            .fold(0, |acc, &k| acc * self.m + k as usize);
        self.probabilities[index]
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Outcomes with probability above [`ZERO_TOL`], lexicographic in `y`.
    pub fn support(&self) -> Vec<(OutputString, f64)> {
        let mut out: Vec<_> = self
            .probabilities
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > ZERO_TOL)
            .map(|(i, &p)| {
                let mut digits = Vec::with_capacity(self.n);
                let mut rest = i;
                for _ in 0..self.n {
                    digits.push((rest % self.m) as u32);
                    rest /= self.m;
                }
                (OutputString::from(digits), p)
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Total probability of the listed outcomes.
    pub fn mass_on(&self, outcomes: &[OutputString]) -> f64 {
        outcomes.iter().map(|y| self.probability(y)).sum()
    }

    /// Largest absolute difference between corresponding probabilities.
    pub fn max_distance(&self, other: &OutcomeDistribution) -> f64 {
        if self.n != other.n || self.m != other.m {
            return f64::INFINITY;
        }
        self.probabilities
            .iter()
            .zip(&other.probabilities)
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0, f64::max)
    }
}

fn check_game(spec: &GameSpec, x: &InputString) -> Result<()> {
    if !game::validate_input(spec, x)? {
        return Err(Error::PromiseViolation {
            sum: x.sum(),
            divisor: spec.d(),
        });
    }
    Ok(())
}

/// State after every player `j` applies `S_{DM}^{x_j}`.
fn after_phase_step(spec: &GameSpec, x: &InputString, limits: &Limits) -> Result<StateVector> {
    check_game(spec, x)?;
    let m = spec.m() as usize;
    let mut state = ghz_state(spec.n(), m, limits)?;
    let phase = phase_gate(spec.d() as u64 * spec.m() as u64, m);
    for (j, &xj) in x.as_slice().iter().enumerate() {
        state.apply_in_place(j + 1, &phase.pow(xj))?;
    }
    Ok(state)
}

/// The final state before measurement: phases, then `F_M^†` on every player.
pub fn strategy_state(spec: &GameSpec, x: &InputString, limits: &Limits) -> Result<StateVector> {
    let mut state = after_phase_step(spec, x, limits)?;
    let inverse_fourier = fourier_gate(spec.m() as usize).adjoint();
    for j in 1..=spec.n() {
        state.apply_in_place(j, &inverse_fourier)?;
    }
    Ok(state)
}

/// Outcome distribution of the GHZ strategy on input `x`.
pub fn run_quantum_strategy(
    spec: &GameSpec,
    x: &InputString,
    limits: &Limits,
) -> Result<OutcomeDistribution> {
    Ok(strategy_state(spec, x, limits)?.measure_all())
}

/// Compares the state after the phase step with
/// `(1/sqrt(M)) sum_k w_M^(k t) |k>^{⊗n}`, `t` the target residue.
pub fn intermediate_state_check(spec: &GameSpec, x: &InputString, limits: &Limits) -> Result<bool> {
    let state = after_phase_step(spec, x, limits)?;
    let t = game::target_value(spec, x)? as u64;
    let m = spec.m() as usize;
    let mut expected = ghz_state(spec.n(), m, limits)?;
    let diag_step: usize = (0..spec.n()).map(|j| m.pow(j as u32)).sum();
    for k in 0..m {
        expected.amplitudes[k * diag_step] *= root_of_unity(k as u64 * t, m as u64);
    }
    Ok(state.max_distance(&expected) <= ZERO_TOL)
}

/// Sweep of the GHZ strategy over the whole promise set.
#[derive(Debug, Clone, PartialEq)]
pub struct CertaintyReport {
    pub inputs_checked: u64,
    /// `min over x of Prob[y in W(x) | x]`.
    pub min_win_probability: f64,
    pub worst_input: InputString,
    /// Whether every support equals `W(x)` exactly.
    pub support_matches: bool,
    /// `max over x, y in W(x) of |p(y) - 1/M^(n-1)|`.
    pub max_uniform_deviation: f64,
}

pub fn verify_certainty(spec: &GameSpec, limits: &Limits) -> Result<CertaintyReport> {
    guard("promise set", spec.promise_size(), limits.items)?;
    guard("winning set", spec.winning_size(), limits.items)?;
    amplitude_count(spec.n(), spec.m() as usize, limits)?;
    let uniform = 1.0 / spec.winning_size().expect("guarded") as f64;
    let mut report = CertaintyReport {
        inputs_checked: 0,
        min_win_probability: f64::INFINITY,
        worst_input: InputString::default(),
        support_matches: true,
        max_uniform_deviation: 0.0,
    };
    for x in game::promise_iter(spec) {
        let dist = run_quantum_strategy(spec, &x, limits)?;
        let winners = game::winning_set(spec, &x, limits)?;
        let win = dist.mass_on(&winners);
        let support = dist.support();
        if support.len() != winners.len() || support.iter().zip(&winners).any(|((y, _), w)| y != w)
        {
            report.support_matches = false;
        }
        for y in &winners {
            let dev = libm::fabs(dist.probability(y) - uniform);
            report.max_uniform_deviation = report.max_uniform_deviation.max(dev);
        }
        if win < report.min_win_probability {
            report.min_win_probability = win;
            report.worst_input = x;
        }
        report.inputs_checked += 1;
    }
    Ok(report)
}

/// Basis change taking the `(+1, -1)` eigenvectors of `sigma_X` (`bit = 0`) or
/// `sigma_Y` (`bit = 1`) to `|0>, |1>`.
fn pauli_eigenbasis(bit: u32) -> LocalGate {
    let h = 1.0 / libm::sqrt(2.0);
    let (a, b) = if bit == 0 { (C1, C1) } else { (C1, CI) };
    // rows are the conjugated eigenvectors (a, b)/sqrt2 and (a, -b)/sqrt2
    LocalGate::from_rows(&[
        &[a.conj() * h, b.conj() * h],
        &[a.conj() * h, -b.conj() * h],
    ])
    .expect("square")
}

/// Outcome distribution when player `j` measures `sigma_{1 + x_j}` on
/// `|Phi_n^+>` and reports bit `y_j` for eigenvalue `(-1)^{y_j}`.
pub fn pauli_strategy_distribution(
    x: &InputString,
    limits: &Limits,
) -> Result<OutcomeDistribution> {
    let spec = GameSpec::new(x.len(), 2, 2)?;
    check_game(&spec, x)?;
    let mut state = ghz_state(x.len(), 2, limits)?;
    for (j, &xj) in x.as_slice().iter().enumerate() {
        state.apply_in_place(j + 1, &pauli_eigenbasis(xj))?;
    }
    Ok(state.measure_all())
}

/// Checks `sigma_{1+x} |Phi_n^+> = (-1)^{|x|/2} |Phi_n^+>` on every even-weight
/// `x`, together with `sigma_X = H Z H` and `sigma_Y = -S^† H Z H S`.
pub fn pauli_sign_check(n: usize, limits: &Limits) -> Result<bool> {
    let spec = GameSpec::new(n, 2, 2)?;
    let ghz = ghz_state(n, 2, limits)?;
    let (x_gate, y_gate) = (pauli_x(), pauli_y());
    for x in game::promise_iter(&spec) {
        let mut state = ghz.clone();
        for (j, &xj) in x.as_slice().iter().enumerate() {
            let sigma = if xj == 0 { &x_gate } else { &y_gate };
            state.apply_in_place(j + 1, sigma)?;
        }
        let sign = if (x.sum() / 2) % 2 == 0 { C1 } else { -C1 };
        if state.max_distance(&ghz.scaled(sign)) > ZERO_TOL {
            return Ok(false);
        }
    }
    let (h, s, z) = (hadamard(), s_gate(), pauli_z());
    let hzh = h.compose(&z)?.compose(&h)?;
    let x_ok = hzh.max_distance(&x_gate) <= ZERO_TOL;
    let sy = s.adjoint().compose(&hzh)?.compose(&s)?.scale(-C1);
    let y_ok = sy.max_distance(&y_gate) <= ZERO_TOL;
    Ok(x_ok && y_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Digits;

    const TIGHT: f64 = 1e-12;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn x(t: &str) -> Digits {
        t.parse().unwrap()
    }

    fn g(n: usize, d: u32, m: u32) -> GameSpec {
        GameSpec::new(n, d, m).unwrap()
    }

    #[test]
    fn ghz_examples() {
        let l = Limits::default();
        let s = ghz_state(2, 2, &l).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((s.amplitude(&[0, 0]) - c(r, 0.0)).norm() < TIGHT);
        assert!((s.amplitude(&[1, 1]) - c(r, 0.0)).norm() < TIGHT);
        assert_eq!(s.amplitude(&[0, 1]), C0);

        let s = ghz_state(1, 3, &l).unwrap();
        for a in s.amplitudes() {
            assert!((a - c(1.0 / 3f64.sqrt(), 0.0)).norm() < TIGHT);
        }

        let s = ghz_state(3, 4, &l).unwrap();
        let nonzero: Vec<_> = s.amplitudes().iter().filter(|a| a.norm() > 0.0).collect();
        assert_eq!(nonzero.len(), 4);
        assert!(nonzero.iter().all(|a| (a.norm() - 0.5).abs() < TIGHT));
        assert!((s.norm_sqr() - 1.0).abs() < TIGHT);
        for k in 0..4 {
            assert!(s.amplitude(&[k, k, k]).norm() > 0.4);
        }
    }

    #[test]
    fn ghz_guard() {
        let l = Limits {
            amplitudes: 15,
            ..Limits::default()
        };
        assert!(matches!(ghz_state(4, 2, &l), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn fourier_examples() {
        assert!(fourier_gate(2).max_distance(&hadamard()) < TIGHT);
        let r = 1.0 / 2f64.sqrt();
        let h = LocalGate::from_rows(&[&[c(r, 0.0), c(r, 0.0)], &[c(r, 0.0), c(-r, 0.0)]]).unwrap();
        assert!(fourier_gate(2).max_distance(&h) < TIGHT);
        assert!(fourier_gate(2).adjoint().max_distance(&h) < TIGHT);
        assert_eq!(fourier_gate(1), LocalGate::identity(1));
        let f4 = fourier_gate(4);
        assert!((f4.get(1, 1) - c(0.0, 0.5)).norm() < TIGHT);
        assert!((f4.get(2, 3) - c(-0.5, 0.0)).norm() < TIGHT);
        assert!(f4.is_unitary(TIGHT));
    }

    #[test]
    fn fourier_unitary_up_to_16() {
        for m in 1..=16 {
            let f = fourier_gate(m);
            let id = f.compose(&f.adjoint()).unwrap();
            assert!(id.max_distance(&LocalGate::identity(m)) <= TIGHT, "M={m}");
        }
    }

    #[test]
    fn phase_examples() {
        assert!(phase_gate(4, 2).max_distance(&LocalGate::diagonal([C1, CI])) < TIGHT);
        assert!(phase_gate(1, 5).max_distance(&LocalGate::identity(5)) < TIGHT);
        let w8 = c(0.5f64.sqrt(), 0.5f64.sqrt());
        let want = LocalGate::diagonal([C1, w8, CI, w8 * CI]);
        assert!(phase_gate(8, 4).max_distance(&want) < TIGHT);
    }

    #[test]
    fn phase_power_identity() {
        for d in 2..=5u64 {
            for m in 2..=8usize {
                let lhs = phase_gate(d * m as u64, m).pow(d as u32);
                assert!(
                    lhs.max_distance(&phase_gate(m as u64, m)) <= TIGHT,
                    "D={d} M={m}"
                );
            }
        }
    }

    #[test]
    fn apply_examples() {
        let l = Limits::default();
        let ghz = ghz_state(2, 2, &l).unwrap();
        let same = ghz.apply_local_gate(2, &LocalGate::identity(2)).unwrap();
        assert_eq!(same, ghz);

        let zero = StateVector {
            n: 1,
            m: 2,
            amplitudes: vec![C1, C0],
        };
        let plus = zero.apply_local_gate(1, &fourier_gate(2)).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((plus.amplitudes[0] - c(r, 0.0)).norm() < TIGHT);
        assert!((plus.amplitudes[1] - c(r, 0.0)).norm() < TIGHT);

        let s = phase_gate(4, 2);
        let twice = ghz
            .apply_local_gate(1, &s)
            .unwrap()
            .apply_local_gate(1, &s)
            .unwrap();
        assert!((twice.amplitude(&[0, 0]) - c(r, 0.0)).norm() < TIGHT);
        assert!((twice.amplitude(&[1, 1]) - c(-r, 0.0)).norm() < TIGHT);
    }

    #[test]
    fn apply_errors() {
        let ghz = ghz_state(2, 2, &Limits::default()).unwrap();
        assert!(matches!(
            ghz.apply_local_gate(1, &fourier_gate(3)),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
        assert!(matches!(
            ghz.apply_local_gate(3, &hadamard()),
            Err(Error::InvalidPlayer { .. })
        ));
        assert!(matches!(
            ghz.apply_local_gate(0, &hadamard()),
            Err(Error::InvalidPlayer { .. })
        ));
    }

    #[test]
    fn gate_acts_on_the_right_player() {
        // |01> with player 1 = 0, player 2 = 1; flip player 1 only
        let l = Limits::default();
        let mut s = ghz_state(2, 2, &l).unwrap();
        s.amplitudes = vec![C0; 4];
        let idx = s.index_of(&[0, 1]);
        s.amplitudes[idx] = C1;
        let flipped = s.apply_local_gate(1, &pauli_x()).unwrap();
        assert_eq!(flipped.amplitude(&[1, 1]), C1);
        assert_eq!(s.digits_of(idx), Digits(vec![0, 1]));
    }

    fn support_text(d: &OutcomeDistribution) -> Vec<alloc::string::String> {
        d.support()
            .iter()
            .map(|(y, _)| alloc::format!("{y}"))
            .collect()
    }

    #[test]
    fn strategy_examples() {
        let l = Limits::default();
        let d = run_quantum_strategy(&g(3, 2, 2), &x("000"), &l).unwrap();
        assert_eq!(support_text(&d), ["000", "011", "101", "110"]);
        assert!(d.support().iter().all(|(_, p)| (p - 0.25).abs() < 1e-9));

        let spec = g(3, 2, 4);
        let d = run_quantum_strategy(&spec, &x("110"), &l).unwrap();
        let w = game::winning_set(&spec, &x("110"), &l).unwrap();
        let support: Vec<_> = d.support().into_iter().map(|(y, _)| y).collect();
        assert_eq!(support, w);
        assert!(d
            .support()
            .iter()
            .all(|(_, p)| (p - 1.0 / 16.0).abs() < 1e-9));

        let spec = g(2, 3, 3);
        let d = run_quantum_strategy(&spec, &x("12"), &l).unwrap();
        assert_eq!(support_text(&d), ["01", "10", "22"]);
        assert!(d
            .support()
            .iter()
            .all(|(_, p)| (p - 1.0 / 3.0).abs() < 1e-9));
    }

    #[test]
    fn strategy_rejects_promise_violation() {
        let e = run_quantum_strategy(&g(3, 2, 2), &x("100"), &Limits::default()).unwrap_err();
        assert!(matches!(e, Error::PromiseViolation { .. }));
    }

    #[test]
    fn intermediate_examples() {
        let l = Limits::default();
        assert!(intermediate_state_check(&g(3, 2, 2), &x("000"), &l).unwrap());
        assert!(intermediate_state_check(&g(3, 2, 2), &x("110"), &l).unwrap());
        assert!(intermediate_state_check(&g(2, 2, 4), &x("11"), &l).unwrap());

        let spec = g(3, 2, 2);
        let st = after_phase_step(&spec, &x("110"), &l).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((st.amplitude(&[0, 0, 0]) - c(r, 0.0)).norm() < 1e-9);
        assert!((st.amplitude(&[1, 1, 1]) - c(-r, 0.0)).norm() < 1e-9);

        let st = after_phase_step(&g(2, 2, 4), &x("11"), &l).unwrap();
        for k in 0..4u32 {
            let want = root_of_unity(k as u64, 4) * 0.5;
            assert!((st.amplitude(&[k, k]) - want).norm() < 1e-9);
        }
    }

    #[test]
    fn certainty_examples() {
        let l = Limits::default();
        for (n, d, m, inputs) in [(3, 2, 2, 4), (4, 2, 4, 8), (3, 4, 2, 16)] {
            let r = verify_certainty(&g(n, d, m), &l).unwrap();
            assert_eq!(r.inputs_checked, inputs);
            assert!((r.min_win_probability - 1.0).abs() < 1e-9);
            assert!(r.support_matches);
            assert!(r.max_uniform_deviation < 1e-9);
        }
    }

    #[test]
    fn pauli_examples() {
        let l = Limits::default();
        let ghz = ghz_state(2, 2, &l).unwrap();
        let yy = ghz
            .apply_local_gate(1, &pauli_y())
            .unwrap()
            .apply_local_gate(2, &pauli_y())
            .unwrap();
        assert!(yy.max_distance(&ghz.scaled(-C1)) < TIGHT);
        let xx = ghz
            .apply_local_gate(1, &pauli_x())
            .unwrap()
            .apply_local_gate(2, &pauli_x())
            .unwrap();
        assert!(xx.max_distance(&ghz) < TIGHT);
        for n in 1..=6 {
            assert!(pauli_sign_check(n, &l).unwrap(), "n={n}");
        }
    }

    #[test]
    fn pauli_eigenbases_diagonalise() {
        for (bit, sigma) in [(0, pauli_x()), (1, pauli_y())] {
            let u = pauli_eigenbasis(bit);
            assert!(u.is_unitary(TIGHT));
            let diag = u.compose(&sigma).unwrap().compose(&u.adjoint()).unwrap();
            assert!(diag.max_distance(&pauli_z()) < TIGHT);
        }
    }

    #[test]
    fn pauli_and_fourier_formulations_agree() {
        let l = Limits::default();
        for n in 1..=6 {
            let spec = g(n, 2, 2);
            for input in game::promise_iter(&spec) {
                let a = run_quantum_strategy(&spec, &input, &l).unwrap();
                let b = pauli_strategy_distribution(&input, &l).unwrap();
                assert!(a.max_distance(&b) < 1e-9, "n={n} x={input}");
            }
        }
    }
}
