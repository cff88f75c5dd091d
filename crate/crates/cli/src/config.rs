//! Command-line surface and the resolved configuration echoed into reports.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ghz_games::{GameSpec, Limits};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_TRIALS: u64 = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "ghz-games",
    version,
    about = "Exact and simulated values of GHZ-type nonlocal games"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<std::path::PathBuf>,

    /// Maximum elementary evaluations in a strategy sweep.
    #[arg(long, global = true, env = "GHZ_WORK_LIMIT", default_value_t = Limits::DEFAULT_WORK)]
    pub work_limit: u64,

    /// Maximum number of enumerated inputs or answers.
    #[arg(long, global = true, env = "GHZ_ITEM_LIMIT", default_value_t = Limits::DEFAULT_ITEMS)]
    pub item_limit: u64,

    /// Maximum state-vector length.
    #[arg(long, global = true, env = "GHZ_AMPLITUDE_LIMIT", default_value_t = Limits::DEFAULT_AMPLITUDES)]
    pub amplitude_limit: u64,

    /// Disable every size and work guard (a warning is printed).
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Debug, Args, Clone)]
#[group(id = "modulus", required = true, multiple = false)]
pub struct ModulusArgs {
    /// Answer modulus M.
    #[arg(long, group = "modulus")]
    pub modulo: Option<u32>,

    /// Answer bit-count m, so that M = 2^m.
    #[arg(long, group = "modulus")]
    pub m_bits: Option<u32>,
}

#[derive(Debug, Args, Clone)]
pub struct GameArgs {
    /// Number of players.
    #[arg(long)]
    pub n: usize,

    /// Promise divisor D.
    #[arg(long, default_value_t = 2)]
    pub d: u32,

    #[command(flatten)]
    pub modulus: ModulusArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the GHZ strategy on one input, or verify certainty on all of them.
    Quantum {
        #[command(flatten)]
        game: GameArgs,
        /// Input string such as `110` (or `1,10,0` for wide digits).
        #[arg(long)]
        x: Option<String>,
    },
    /// Check the Pauli-operator form of the n-player qubit game.
    Pauli {
        #[arg(long)]
        n: usize,
    },
    /// Best deterministic success rate by exhaustive search.
    Search {
        #[command(flatten)]
        game: GameArgs,
        /// Search the (d, b) parametrisation instead (D = 2 only).
        #[arg(long)]
        reduced: bool,
    },
    /// The shared-randomness halving strategy, exactly or by sampling.
    Halving {
        #[command(flatten)]
        game: GameArgs,
        /// Enumerate every input and shared string.
        #[arg(long)]
        exact: bool,
        /// Restrict the exact evaluation to one input.
        #[arg(long, requires = "exact")]
        x: Option<String>,
        /// Monte Carlo trials.
        #[arg(long, conflicts_with = "exact")]
        trials: Option<u64>,
        /// Monte Carlo seed; required unless `--exact`.
        #[arg(long, required_unless_present = "exact", conflicts_with = "exact")]
        seed: Option<u64>,
    },
    /// Exact shared-randomness value by linear programming.
    Lp {
        #[command(flatten)]
        game: GameArgs,
    },
    /// Classical bounds at one point, or a crossover scan up to `--n-max`.
    Bounds {
        #[arg(long, required_unless_present = "n_max", conflicts_with = "n_max")]
        n: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        modulus: ModulusArgs,
    },
    /// Decide pseudo-telepathy from the divisibility criteria.
    Classify {
        #[command(flatten)]
        game: GameArgs,
        /// Also run the exhaustive search as a separate check.
        #[arg(long)]
        corroborate: bool,
    },
    /// The half-winning construction for M = 2(2r+1).
    Footnote {
        #[command(flatten)]
        game: GameArgs,
    },
    /// The perfect strategy y_j = a x_j for coprime D and M.
    Bezout {
        #[command(flatten)]
        game: GameArgs,
    },
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::Quantum { .. } => "quantum",
            Command::Pauli { .. } => "pauli",
            Command::Search { .. } => "search",
            Command::Halving { .. } => "halving",
            Command::Lp { .. } => "lp",
            Command::Bounds { .. } => "bounds",
            Command::Classify { .. } => "classify",
            Command::Footnote { .. } => "footnote",
            Command::Bezout { .. } => "bezout",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitsConfig {
    pub items: u64,
    pub amplitudes: u64,
    pub work: u64,
}

impl From<LimitsConfig> for Limits {
    fn from(l: LimitsConfig) -> Self {
        Limits {
            items: l.items,
            amplitudes: l.amplitudes,
            work: l.work,
        }
    }
}

/// Every setting a run depended on, defaults filled in. Keys are always
/// present; settings a verb ignores are `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub n: Option<usize>,
    pub n_max: Option<usize>,
    pub d: Option<u32>,
    pub m: Option<u32>,
    pub m_bits: Option<u32>,
    pub x: Option<String>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub reduced: bool,
    pub exact: bool,
    pub corroborate: bool,
    pub limits: LimitsConfig,
    pub force: bool,
    pub format: Format,
}

/// Resolves `--modulo` / `--m-bits` into `(M, Some(m))` or `(M, None)`.
pub fn resolve_modulus(args: &ModulusArgs) -> Result<(u32, Option<u32>), CliError> {
    match (args.modulo, args.m_bits) {
        (Some(m), None) => {
            let bits = (m.is_power_of_two()).then(|| m.trailing_zeros());
            Ok((m, bits))
        }
        (None, Some(bits)) => {
            let m = 1u32
                .checked_shl(bits)
                .filter(|_| bits < 32)
                .ok_or_else(|| {
                    CliError::Usage(format!("--m-bits {bits} does not fit a 32-bit modulus"))
                })?;
            Ok((m, Some(bits)))
        }
        _ => Err(CliError::Usage(
            "give exactly one of --modulo and --m-bits".into(),
        )),
    }
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
        let o = &cli.output;
        let limits = if o.force {
            Limits::unbounded()
        } else {
            Limits {
                items: o.item_limit,
                amplitudes: o.amplitude_limit,
                work: o.work_limit,
            }
        };
        let mut cfg = RunConfig {
            command: cli.command.verb().into(),
            n: None,
            n_max: None,
            d: None,
            m: None,
            m_bits: None,
            x: None,
            seed: None,
            trials: None,
            reduced: false,
            exact: false,
            corroborate: false,
            limits: LimitsConfig {
                items: limits.items,
                amplitudes: limits.amplitudes,
                work: limits.work,
            },
            force: o.force,
            format: o.format,
        };
        let set_game = |cfg: &mut RunConfig, g: &GameArgs| -> Result<(), CliError> {
            let (m, bits) = resolve_modulus(&g.modulus)?;
            cfg.n = Some(g.n);
            cfg.d = Some(g.d);
            cfg.m = Some(m);
            cfg.m_bits = bits;
            Ok(())
        };
        match &cli.command {
            Command::Quantum { game, x } => {
                set_game(&mut cfg, game)?;
                cfg.x = x.clone();
            }
            Command::Pauli { n } => {
                cfg.n = Some(*n);
                cfg.d = Some(2);
                cfg.m = Some(2);
                cfg.m_bits = Some(1);
            }
            Command::Search { game, reduced } => {
                set_game(&mut cfg, game)?;
                cfg.reduced = *reduced;
            }
            Command::Halving {
                game,
                exact,
                x,
                trials,
                seed,
            } => {
                set_game(&mut cfg, game)?;
                cfg.exact = *exact;
                cfg.x = x.clone();
                if !exact {
                    cfg.seed = *seed;
                    cfg.trials = Some(trials.unwrap_or(DEFAULT_TRIALS));
                }
            }
            Command::Lp { game } | Command::Footnote { game } | Command::Bezout { game } => {
                set_game(&mut cfg, game)?;
            }
            Command::Classify { game, corroborate } => {
                set_game(&mut cfg, game)?;
                cfg.corroborate = *corroborate;
            }
            Command::Bounds { n, n_max, modulus } => {
                let (m, bits) = resolve_modulus(modulus)?;
                let bits = bits.ok_or_else(|| {
                    CliError::Usage(format!(
                        "bounds need M = 2^m; --modulo {m} is not a power of two"
                    ))
                })?;
                cfg.n = *n;
                cfg.n_max = *n_max;
                cfg.d = Some(2);
                cfg.m = Some(m);
                cfg.m_bits = Some(bits);
            }
        }
        Ok(cfg)
    }

    pub fn limits(&self) -> Limits {
        self.limits.into()
    }

    /// The game named by `n`, `d`, `m`.
    pub fn game(&self) -> Result<GameSpec, CliError> {
        match (self.n, self.d, self.m) {
            (Some(n), Some(d), Some(m)) => Ok(GameSpec::new(n, d, m)?),
            _ => Err(CliError::Usage(format!("`{}` needs a game", self.command))),
        }
    }
}
