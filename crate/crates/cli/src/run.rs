use std::io::Write;
use std::str::FromStr;

use ghz_games::bounds::{self, Classification};
use ghz_games::classical::{
    bezout_strategy, brute_force_omega_tilde, brute_force_reduced, eval_deterministic,
    exact_omega_lp, exact_win_probability, footnote_strategy, in_regime, monte_carlo,
    StrategyHandle,
};
use ghz_games::quantum::{self, ZERO_TOL};
use ghz_games::{game, Digits, GameSpec, Rational};
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::config::RunConfig;
use crate::emit::emit_report;
use crate::report::*;
use crate::CliError;

fn parse_x(spec: &GameSpec, text: &str) -> Result<Digits, CliError> {
    let x = Digits::from_str(text)?;
    if !game::validate_input(spec, &x)? {
        return Err(ghz_games::Error::PromiseViolation {
            sum: x.sum(),
            divisor: spec.d(),
        }
        .into());
    }
    Ok(x)
}

fn expectation(wins: u64, total: u64) -> Rational {
    Rational::new(
        (2 * wins as i128 - total as i128).into(),
        (total as i128).into(),
    )
}

/// Runs the verb named in `cfg` and writes its report to `out`.
pub fn dispatch(cfg: &RunConfig, out: &mut dyn Write) -> Result<usize, CliError> {
    let limits = cfg.limits();
    match cfg.command.as_str() {
        "quantum" => {
            let spec = cfg.game()?;
            match &cfg.x {
                Some(text) => {
                    let x = parse_x(&spec, text)?;
                    let dist = quantum::run_quantum_strategy(&spec, &x, &limits)?;
                    let outcomes = dist
                        .support()
                        .into_iter()
                        .map(|(y, p)| Outcome {
                            y: y.to_text(spec.m()),
                            p,
                        })
                        .collect();
                    let result = Distribution {
                        game: (&spec).into(),
                        x: x.to_text(spec.d()),
                        outcomes,
                        intermediate_state_ok: quantum::intermediate_state_check(
                            &spec, &x, &limits,
                        )?,
                    };
                    write(cfg, result, out)
                }
                None => {
                    let r = quantum::verify_certainty(&spec, &limits)?;
                    let result = Certainty {
                        game: (&spec).into(),
                        inputs_checked: r.inputs_checked,
                        min_win_probability: r.min_win_probability,
                        worst_input: r.worst_input.to_text(spec.d()),
                        support_matches: r.support_matches,
                        max_uniform_deviation: r.max_uniform_deviation,
                        certain: r.support_matches
                            && (1.0 - r.min_win_probability).abs() <= ZERO_TOL,
                    };
                    write(cfg, result, out)
                }
            }
        }
        "pauli" => {
            let n = cfg.n.expect("pauli sets n");
            let passed = quantum::pauli_sign_check(n, &limits)?;
            write(cfg, PauliCheck { n, passed }, out)
        }
        "search" => {
            let spec = cfg.game()?;
            let (wins, total, witness, method) = if cfg.reduced {
                let found = brute_force_reduced(&spec, &limits)?;
                let w = StrategyJson::new(&spec, &found.witness.to_deterministic());
                (found.wins, found.total, w, "reduced")
            } else {
                let found = brute_force_omega_tilde(&spec, &limits)?;
                (
                    found.wins,
                    found.total,
                    StrategyJson::new(&spec, &found.witness),
                    "full",
                )
            };
            let result = Search {
                game: (&spec).into(),
                method: method.into(),
                wins,
                total,
                value: (&Rational::new(wins.into(), total.into())).into(),
                expectation: (&expectation(wins, total)).into(),
                witness,
            };
            write(cfg, result, out)
        }
        "halving" => {
            let spec = cfg.game()?;
            if cfg.exact {
                let inputs = match &cfg.x {
                    Some(text) => vec![parse_x(&spec, text)?],
                    None => game::enumerate_promise(&spec, &limits)?,
                };
                let probs = inputs
                    .iter()
                    .map(|x| exact_win_probability(&spec, x, &limits))
                    .collect::<Result<Vec<_>, _>>()?;
                let min = probs.iter().min().expect("promise set is never empty");
                let max = probs.iter().max().expect("promise set is never empty");
                let result = HalvingExact {
                    game: (&spec).into(),
                    inputs_checked: probs.len() as u64,
                    min_probability: min.into(),
                    max_probability: max.into(),
                    input_independent: min == max,
                    tight_bound: (&bounds::tight_bound(spec.n())).into(),
                };
                write(cfg, result, out)
            } else {
                let seed = cfg
                    .seed
                    .ok_or_else(|| CliError::Usage("sampling needs --seed".into()))?;
                let trials = cfg.trials.expect("resolved with a default");
                let est = monte_carlo(&spec, &StrategyHandle::Halving, trials, seed)?;
                let known = spec.m().is_power_of_two() && in_regime(spec.n(), spec.m());
                let result = HalvingSample {
                    game: (&spec).into(),
                    seed,
                    trials,
                    wins: est.wins,
                    estimate: est.estimate,
                    halfwidth_95: est.halfwidth_95,
                    exact: known.then(|| (&bounds::tight_bound(spec.n())).into()),
                };
                write(cfg, result, out)
            }
        }
        "lp" => {
            let spec = cfg.game()?;
            let cert = exact_omega_lp(&spec, &limits)?;
            let result = Lp {
                game: (&spec).into(),
                value: (&cert.value).into(),
                pivots: cert.pivots,
                mixture: cert
                    .mixture
                    .iter()
                    .map(|(s, w)| Weighted {
                        item: StrategyJson::new(&spec, s),
                        weight: w.into(),
                    })
                    .collect(),
                worst_inputs: cert
                    .worst_inputs
                    .iter()
                    .map(|(x, w)| Weighted {
                        item: x.to_text(spec.d()),
                        weight: w.into(),
                    })
                    .collect(),
            };
            write(cfg, result, out)
        }
        "bounds" => {
            let m_bits = cfg.m_bits.expect("bounds resolve m_bits");
            match (cfg.n, cfg.n_max) {
                (_, Some(n_max)) => {
                    write(cfg, Scan::from(&bounds::crossover_scan(m_bits, n_max)), out)
                }
                (Some(n), None) => write(
                    cfg,
                    BoundsPoint::from(&bounds::bounds_report(n, m_bits)),
                    out,
                ),
                (None, None) => Err(CliError::Usage("bounds need --n or --n-max".into())),
            }
        }
        "classify" => {
            let spec = cfg.game()?;
            let (verdict, p, bezout) = match bounds::classify_game(&spec) {
                Classification::NotPseudoTelepathy { a, witness } => (
                    "not_pseudo_telepathy",
                    None,
                    Some(BezoutWitness {
                        a,
                        strategy: StrategyJson::new(&spec, &witness),
                    }),
                ),
                Classification::PseudoTelepathy { p } => ("pseudo_telepathy", Some(p), None),
                Classification::Unresolved { p } => ("unresolved", Some(p), None),
            };
            let corroboration = if cfg.corroborate {
                let found = brute_force_omega_tilde(&spec, &limits)?;
                let value = found.value();
                let perfect = value.is_one();
                let agrees = match verdict {
                    "not_pseudo_telepathy" => Some(perfect),
                    "pseudo_telepathy" => Some(!perfect),
                    _ => None,
                };
                Some(Corroboration {
                    omega_tilde: (&value).into(),
                    perfect,
                    agrees,
                })
            } else {
                None
            };
            let result = Classify {
                game: (&spec).into(),
                gcd: spec.d().gcd(&spec.m()),
                verdict: verdict.into(),
                smallest_common_prime: p,
                bezout,
                corroboration,
            };
            write(cfg, result, out)
        }
        "footnote" => {
            let spec = cfg.game()?;
            let f = footnote_strategy(&spec, &limits)?;
            let result = StrategyScore {
                game: (&spec).into(),
                a: None,
                strategy: StrategyJson::new(&spec, &f.strategy),
                wins: f.report.wins,
                total: f.report.total,
                rate: (&f.report.rate()).into(),
            };
            write(cfg, result, out)
        }
        "bezout" => {
            let spec = cfg.game()?;
            let (a, strategy) = bezout_strategy(&spec)?;
            let report = eval_deterministic(&spec, &strategy, &limits)?;
            let result = StrategyScore {
                game: (&spec).into(),
                a: Some(a),
                strategy: StrategyJson::new(&spec, &strategy),
                wins: report.wins,
                total: report.total,
                rate: (&report.rate()).into(),
            };
            write(cfg, result, out)
        }
        other => Err(CliError::Usage(format!("unknown verb `{other}`"))),
    }
}

fn write<T: Serialize + Tabular>(
    cfg: &RunConfig,
    result: T,
    out: &mut dyn Write,
) -> Result<usize, CliError> {
    let report = Report {
        meta: Meta::new(cfg),
        result,
    };
    emit_report(&report, cfg.format, out)
}
