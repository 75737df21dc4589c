//! Branching heuristics and the bookkeeping they read.

mod activity;
mod select;
mod tracker;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use activity::ActivityTable;
pub use select::pick_branch;
pub use tracker::OccurrenceTracker;

/// Default divisor applied by periodic activity decay.
pub const DEFAULT_DECAY_DIVISOR: f64 = 2.0;
/// Default number of conflicts between two decays.
pub const DEFAULT_DECAY_PERIOD: u64 = 256;
pub const DEFAULT_COMBO_WEIGHT: u32 = 32;
pub const DEFAULT_MOM_K: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeuristicKind {
    /// Literal with the most occurrences in unresolved clauses.
    Dlis,
    /// Literal with the highest decaying activity.
    Vsids,
    /// Variable maximizing `p + n`.
    Psum,
    /// Variable maximizing `p * n`, falling back to `p + n` when every product is 0.
    PnProd,
    /// Variable maximizing `(p + n) * weight + p * n`.
    MomCombo { weight: u32 },
    /// `(f(x) + f(-x)) * 2^k_exp + f(x) * f(-x)` over the shortest unresolved clauses.
    Mom { k_exp: u32 },
    /// Variable maximizing `a(x) * a(-x)` over decaying activities.
    PnProdDecay,
}

impl HeuristicKind {
    pub fn uses_activities(self) -> bool {
        matches!(self, HeuristicKind::Vsids | HeuristicKind::PnProdDecay)
    }

    /// Short name as accepted on the command line (without parameters).
    pub fn name(self) -> &'static str {
        match self {
            HeuristicKind::Dlis => "dlis",
            HeuristicKind::Vsids => "vsids",
            HeuristicKind::Psum => "psum",
            HeuristicKind::PnProd => "pnprod",
            HeuristicKind::MomCombo { .. } => "momcombo",
            HeuristicKind::Mom { .. } => "mom",
            HeuristicKind::PnProdDecay => "pnprod-decay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    /// Lowest variable index wins, positive polarity before negative.
    #[default]
    ByIndex,
    /// Uniform choice among tied candidates using the run's RNG.
    SeededRandom,
}

impl FromStr for TieBreak {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "index" => Ok(TieBreak::ByIndex),
            "random" => Ok(TieBreak::SeededRandom),
            other => Err(ConfigError::UnknownTieBreak(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("unknown heuristic {0:?}")]
    UnknownHeuristic(String),
    #[error("unknown tie-break rule {0:?}")]
    UnknownTieBreak(String),
    #[error("invalid heuristic parameter in {0:?}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeuristicConfig {
    pub kind: HeuristicKind,
    /// Ignored by kinds without activities.
    pub decay_divisor: f64,
    /// Conflicts between decays; ignored by kinds without activities.
    pub decay_period: u64,
    pub tie_break: TieBreak,
}

impl HeuristicConfig {
    /// Default parameters. VSIDS breaks ties randomly, everything else by index.
    pub fn new(kind: HeuristicKind) -> Self {
        HeuristicConfig {
            kind,
            decay_divisor: DEFAULT_DECAY_DIVISOR,
            decay_period: DEFAULT_DECAY_PERIOD,
            tie_break: if kind == HeuristicKind::Vsids {
                TieBreak::SeededRandom
            } else {
                TieBreak::ByIndex
            },
        }
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn with_decay(mut self, divisor: f64, period: u64) -> Self {
        self.decay_divisor = divisor;
        self.decay_period = period;
        self
    }

    /// The seven configurations compared in the heuristic matrix, in column order.
    pub fn comparison_lineup() -> Vec<HeuristicConfig> {
        [
            HeuristicKind::Dlis,
            HeuristicKind::Vsids,
            HeuristicKind::Psum,
            HeuristicKind::MomCombo { weight: 32 },
            HeuristicKind::MomCombo { weight: 4 },
            HeuristicKind::PnProd,
            HeuristicKind::PnProdDecay,
        ]
        .into_iter()
        .map(HeuristicConfig::new)
        .collect()
    }

    /// Every kind with default parameters, including MOM.
    pub fn all_kinds() -> Vec<HeuristicConfig> {
        let mut all = Self::comparison_lineup();
        all.push(HeuristicConfig::new(HeuristicKind::Mom {
            k_exp: DEFAULT_MOM_K,
        }));
        all
    }

    /// Stable label used in CSV output, e.g. `momcombo-32`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for HeuristicConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            HeuristicKind::MomCombo { weight } => write!(f, "momcombo-{weight}"),
            HeuristicKind::Mom { k_exp } => write!(f, "mom-{k_exp}"),
            kind => f.write_str(kind.name()),
        }
    }
}

/// Parses `dlis`, `vsids`, `psum`, `pnprod`, `pnprod-decay`, `momcombo[-<c>]`
/// and `mom[-<k>]`.
impl FromStr for HeuristicConfig {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let param = |rest: &str, default: u32| -> Result<u32, ConfigError> {
            match rest {
                "" => Ok(default),
                r => r
                    .strip_prefix('-')
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| ConfigError::InvalidParameter(s.to_string())),
            }
        };
        let kind = match s {
            "dlis" => HeuristicKind::Dlis,
            "vsids" => HeuristicKind::Vsids,
            "psum" => HeuristicKind::Psum,
            "pnprod" => HeuristicKind::PnProd,
            "pnprod-decay" => HeuristicKind::PnProdDecay,
            _ if s.starts_with("momcombo") => HeuristicKind::MomCombo {
                weight: param(&s["momcombo".len()..], DEFAULT_COMBO_WEIGHT)?,
            },
            _ if s.starts_with("mom") => HeuristicKind::Mom {
                k_exp: param(&s["mom".len()..], DEFAULT_MOM_K)?,
            },
            _ => return Err(ConfigError::UnknownHeuristic(s.to_string())),
        };
        Ok(HeuristicConfig::new(kind))
    }
}
