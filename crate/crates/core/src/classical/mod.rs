//! Classical strategies: evaluation, the `D = 2` reduction, exhaustive search
//! for the best deterministic rate, explicit constructions, the halving
//! strategy, Monte Carlo estimates and the LP value of tiny instances.

mod constructions;
mod halving;
mod lp;
mod sampling;
mod search;
mod strategy;

pub use constructions::{bezout_coefficient, bezout_strategy, footnote_strategy, FootnoteStrategy};
pub use halving::{
    exact_win_probability, halving_answers, halving_win_predicate, in_regime, shared_strings,
    SharedBitstring,
};
pub use lp::{exact_omega_lp, LpCertificate};
pub use sampling::{monte_carlo, MonteCarloEstimate, SplitMix64, StrategyHandle};
pub use search::{
    brute_force_omega_tilde, brute_force_reduced, full_search_work, reduced_search_work,
    SearchOutcome,
};
pub use strategy::{
    eval_deterministic, reduce_strategy, DeterministicStrategy, ReducedStrategy, StrategyReport,
};
