//! `omega(G)` for tiny games: the value of the zero-sum game whose rows are
//! promised inputs and whose columns are deterministic strategies.
//!
//! A floating-point two-phase simplex (Bland's rule) locates an optimal basis
//! of `min sum(u)  s.t.  (A + 1) u >= 1, u >= 0`, where `A[x][S] = 1` when `S`
//! wins on `x`. The basis is then re-solved in exact rationals, giving a mixed
//! strategy and a distribution over inputs whose guarantees coincide, which
//! certifies the value without trusting the floating-point solve.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::strategy::DeterministicStrategy;
use crate::error::{Error, Result};
use crate::game::{self, checked_pow, GameSpec, InputString, Limits};
use crate::Rational;

const PIVOT_EPS: f64 = 1e-9;
const OPT_TOL: f64 = 1e-7;

/// An exactly certified value of the shared-randomness game.
#[derive(Debug, Clone, PartialEq)]
pub struct LpCertificate {
    pub value: Rational,
    /// Optimal mixture over deterministic strategies (support only).
    pub mixture: Vec<(DeterministicStrategy, Rational)>,
    /// Adversarial distribution over inputs (support only); no strategy wins
    /// against it with probability above `value`.
    pub worst_inputs: Vec<(InputString, Rational)>,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    /// Reduced costs, last entry is minus the objective.
    costs: Vec<f64>,
    basis: Vec<usize>,
    /// Columns at or past this index are artificial and never enter.
    first_artificial: usize,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.costs.len();
        let p = self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            let f = other[col];
            if r != row && f != 0.0 {
                for k in 0..width {
                    other[k] -= f * pivot_row[k];
                }
            }
        }
        let f = self.costs[col];
        if f != 0.0 {
            for k in 0..width {
                self.costs[k] -= f * pivot_row[k];
            }
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    fn set_costs(&mut self, cost: impl Fn(usize) -> f64) {
        let width = self.costs.len();
        for k in 0..width {
            self.costs[k] = if k + 1 < width { cost(k) } else { 0.0 };
        }
        for r in 0..self.rows.len() {
            let cb = cost(self.basis[r]);
            if cb != 0.0 {
                for k in 0..width {
                    self.costs[k] -= cb * self.rows[r][k];
                }
            }
        }
    }

    /// Bland's rule: smallest improving column, ties on the ratio test go to
    /// the smallest basic variable.
    fn optimise(&mut self) -> Result<()> {
        let rhs = self.costs.len() - 1;
        loop {
            let Some(col) = (0..self.first_artificial).find(|&k| self.costs[k] < -OPT_TOL) else {
                return Ok(());
            };
            let mut leave: Option<(f64, usize, usize)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[col] > PIVOT_EPS {
                    let ratio = row[rhs] / row[col];
                    let better = match leave {
                        None => true,
                        Some((best, _, var)) => {
                            ratio < best - PIVOT_EPS
                                || (ratio <= best + PIVOT_EPS && self.basis[r] < var)
                        }
                    };
                    if better {
                        leave = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            let Some((_, row, _)) = leave else {
                return Err(Error::Certificate("linear program reported unbounded"));
            };
            self.pivot(row, col);
        }
    }
}

/// Returns an optimal basis of `min sum_{c < cols} u_c` subject to
/// `(A + 1) u - s = 1`, `u, s >= 0`. Columns: `u` then `s` then artificials.
fn simplex_basis(wins: &[Vec<u8>], cols: usize) -> Result<(Vec<usize>, usize)> {
    let rows = wins.len();
    let width = cols + 2 * rows + 1;
    let mut tableau = Tableau {
        rows: wins
            .iter()
            .enumerate()
            .map(|(r, w)| {
                let mut row = vec![0.0; width];
                for (c, &win) in w.iter().enumerate() {
                    row[c] = 1.0 + win as f64;
                }
                row[cols + r] = -1.0;
                row[cols + rows + r] = 1.0;
                row[width - 1] = 1.0;
                row
            })
            .collect(),
        costs: vec![0.0; width],
        basis: (0..rows).map(|r| cols + rows + r).collect(),
        first_artificial: cols + rows,
        pivots: 0,
    };
    let artificial = cols + rows;
    tableau.set_costs(|k| if k >= artificial { 1.0 } else { 0.0 });
    tableau.optimise()?;
    if -tableau.costs[width - 1] > OPT_TOL {
        return Err(Error::Certificate("linear program reported infeasible"));
    }
    for r in 0..rows {
        if tableau.basis[r] >= artificial {
            if let Some(col) = (0..artificial).find(|&k| tableau.rows[r][k].abs() > PIVOT_EPS) {
                tableau.pivot(r, col);
            }
        }
    }
    tableau.set_costs(|k| if k < cols { 1.0 } else { 0.0 });
    tableau.optimise()?;
    Ok((tableau.basis, tableau.pivots))
}

/// Solves `mat * z = rhs` exactly; `None` when singular.
fn solve_exact(mut mat: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = mat[col][col].recip();
        for k in col..n {
            mat[col][k] = &mat[col][k] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r == col || mat[r][col].is_zero() {
                continue;
            }
            let f = mat[r][col].clone();
            for k in col..n {
                let delta = &f * &mat[col][k];
                mat[r][k] -= delta;
            }
            let delta = &f * &rhs[col];
            rhs[r] -= delta;
        }
    }
    Some(rhs)
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Computes `omega(G) = max over mixtures of min over x of Prob[win | x]` and
/// certifies it exactly.
pub fn exact_omega_lp(spec: &GameSpec, limits: &Limits) -> Result<LpCertificate> {
    let strategies = checked_pow(spec.m() as u64, spec.d() as usize * spec.n());
    let inputs = spec.promise_size();
    let entries = strategies.zip(inputs).and_then(|(c, r)| c.checked_mul(r));
    match entries {
        Some(e) if e <= limits.work as u128 => {}
        _ => {
            return Err(Error::WorkBound {
                required: entries,
                limit: limits.work,
                hint: None,
            })
        }
    }
    let (cols, rows) = (strategies.unwrap() as usize, inputs.unwrap() as usize);
    game::guard(
        "simplex tableau",
        Some((rows * (cols + 2 * rows + 1)) as u128),
        limits.items,
    )?;

    let xs: Vec<InputString> = game::promise_iter(spec).collect();
    let mut wins = vec![vec![0u8; cols]; rows];
    for c in 0..cols {
        let s = DeterministicStrategy::from_index(spec, c as u128);
        for (r, x) in xs.iter().enumerate() {
            if game::is_winning(spec, x, &s.answers(x))? {
                wins[r][c] = 1;
            }
        }
    }
    let (basis, pivots) = simplex_basis(&wins, cols)?;

    // exact column of the basis matrix for tableau column k
    let column = |k: usize| -> Vec<Rational> {
        (0..rows)
            .map(|r| {
                if k < cols {
                    int(1 + wins[r][k] as i64)
                } else if k < cols + rows {
                    if k - cols == r {
                        int(-1)
                    } else {
                        Rational::zero()
                    }
                } else if k - cols - rows == r {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    let basis_cols: Vec<Vec<Rational>> = basis.iter().map(|&k| column(k)).collect();
    let by_rows: Vec<Vec<Rational>> = (0..rows)
        .map(|r| basis_cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let primal = solve_exact(by_rows, vec![Rational::one(); rows])
        .ok_or(Error::Certificate("optimal basis is singular"))?;
    let cost: Vec<Rational> = basis
        .iter()
        .map(|&k| {
            if k < cols {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let dual =
        solve_exact(basis_cols, cost).ok_or(Error::Certificate("optimal basis is singular"))?;

    if primal.iter().any(Signed::is_negative) || dual.iter().any(Signed::is_negative) {
        return Err(Error::Certificate("re-solved basis is not optimal"));
    }
    if basis
        .iter()
        .zip(&primal)
        .any(|(&k, z)| k >= cols + rows && !z.is_zero())
    {
        return Err(Error::Certificate("artificial variable left positive"));
    }

    let mut weights = vec![Rational::zero(); cols];
    for (&k, z) in basis.iter().zip(&primal) {
        if k < cols {
            weights[k] = z.clone();
        }
    }
    let total: Rational = weights.iter().sum();
    let dual_total: Rational = dual.iter().sum();
    if total.is_zero() || total != dual_total {
        return Err(Error::Certificate("primal and dual objectives differ"));
    }
    let value = total.recip() - Rational::one();
    let mixture_weights: Vec<Rational> = weights.iter().map(|w| w / &total).collect();
    let input_weights: Vec<Rational> = dual.iter().map(|y| y / &dual_total).collect();

    // the mixture guarantees `value` on every input...
    for w in &wins {
        let p: Rational = w
            .iter()
            .zip(&mixture_weights)
            .filter(|(&win, _)| win == 1)
            .map(|(_, q)| q)
            .sum();
        if p < value {
            return Err(Error::Certificate(
                "mixture falls below the value on some input",
            ));
        }
    }
    // ...and no strategy beats `value` against the input distribution
    for c in 0..cols {
        let p: Rational = (0..rows)
            .filter(|&r| wins[r][c] == 1)
            .map(|r| &input_weights[r])
            .sum();
        if p > value {
            return Err(Error::Certificate(
                "a strategy beats the value on the dual distribution",
            ));
        }
    }

    let mixture = mixture_weights
        .into_iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(c, w)| (DeterministicStrategy::from_index(spec, c as u128), w))
        .collect();
    let worst_inputs = xs
        .into_iter()
        .zip(input_weights)
        .filter(|(_, w)| !w.is_zero())
        .collect();
    Ok(LpCertificate {
        value,
        mixture,
        worst_inputs,
        pivots,
    })
}

impl LpCertificate {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}
