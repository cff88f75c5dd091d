use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the laboratory.
///
/// The variants fall in three families, see [`Error::kind`]: malformed
/// arguments, violated preconditions (the referee's promise, regimes,
/// divisibility requirements) and refusals by a size or work guard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidGame {
        n: usize,
        d: u32,
        m: u32,
    },
    MalformedInput(String),
    PromiseViolation {
        sum: u64,
        divisor: u32,
    },
    TooLarge {
        what: &'static str,
        required: Option<u128>,
        limit: u64,
    },
    WorkBound {
        required: Option<u128>,
        limit: u64,
        hint: Option<&'static str>,
    },
    UnsupportedDivisor {
        d: u32,
    },
    InvalidSharedString {
        weight: usize,
        n: usize,
    },
    OutOfRegime {
        n: usize,
        m: u32,
    },
    NoBezoutWitness {
        d: u32,
        m: u32,
    },
    NotFootnoteModulus {
        m: u32,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    InvalidPlayer {
        player: usize,
        n: usize,
    },
    Certificate(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Malformed,
    Precondition,
    Guard,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidGame { .. }
            | Error::MalformedInput(_)
            | Error::DimensionMismatch { .. }
            | Error::InvalidPlayer { .. } => ErrorKind::Malformed,
            Error::TooLarge { .. } | Error::WorkBound { .. } => ErrorKind::Guard,
            _ => ErrorKind::Precondition,
        }
    }
}

fn write_required(f: &mut fmt::Formatter<'_>, required: &Option<u128>) -> fmt::Result {
    match required {
        Some(r) => write!(f, "{r}"),
        None => f.write_str("more than 2^128"),
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGame { n, d, m } => write!(
                f,
                "invalid game (n={n}, D={d}, M={m}): need n >= 1, D >= 2 and M >= 2"
            ),
            Error::MalformedInput(msg) => write!(f, "malformed input: {msg}"),
            Error::PromiseViolation { sum, divisor } => write!(
                f,
                "promise violated: input sum {sum} is not divisible by D={divisor}"
            ),
            Error::TooLarge { what, required, limit } => {
                write!(f, "instance too large: {what} needs ")?;
                write_required(f, required)?;
                write!(f, " items but the limit is {limit}")
            }
            Error::WorkBound { required, limit, hint } => {
                f.write_str("work bound exceeded: ")?;
                write_required(f, required)?;
                write!(f, " elementary evaluations, limit is {limit}")?;
                if let Some(hint) = hint {
                    write!(f, "; {hint}")?;
                }
                Ok(())
            }
            Error::UnsupportedDivisor { d } => {
                write!(f, "operation is only defined for divisor D=2, got D={d}")
            }
            Error::InvalidSharedString { weight, n } => write!(
                f,
                "shared string of weight {weight} does not have the parity of floor({n}/2)"
            ),
            Error::OutOfRegime { n, m } => write!(
                f,
                "out of regime: ceil({n}/2) < 2M fails for M={m}, the halving predicate does not apply"
            ),
            Error::NoBezoutWitness { d, m } => {
                write!(f, "gcd(D={d}, M={m}) != 1, no Bezout strategy exists")
            }
            Error::NotFootnoteModulus { m } => {
                write!(f, "modulus M={m} is not of the form 2(2r+1) with r >= 1")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidPlayer { player, n } => {
                write!(f, "player {player} is not in [1..{n}]")
            }
            Error::Certificate(msg) => write!(f, "LP certificate failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
