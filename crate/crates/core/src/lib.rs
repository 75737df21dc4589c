//! A conflict-driven clause-learning SAT solver with pluggable branching
//! heuristics, including the positive/negative product ("PN product") family.
//!
//! The crate is organised as:
//!
//! * [`formula`]: literals, clauses, DIMACS I/O and seeded random k-SAT generation.
//! * [`pn_metrics`]: PN product of a formula (optionally under a partial
//!   assignment), the post-assignment estimate and simple OLS regression.
//! * [`heuristics`]: occurrence tracker, activity table and the branching rules.
//! * [`cdcl`]: the solver itself (unit propagation, first-UIP learning, backjumping).
//! * [`bench`]: experiment harness (heuristic matrix, aggregation, sign test,
//!   regression and sweep experiments).
//!
//! Real-valued computations are generic over [`Scalar`]/[`Real`]; the aliases
//! below fix the common instantiations.

pub mod bench;
pub mod cdcl;
pub mod formula;
pub mod heuristics;
pub mod pn_metrics;
pub mod scalar;

pub use cdcl::{solve, Limits, SolveError, SolveResult, SolveStats, Solver, Status};
pub use formula::{Clause, CnfFormula, Literal, PartialAssignment};
pub use heuristics::{HeuristicConfig, HeuristicKind, TieBreak};
pub use scalar::{Real, Scalar};

/// Exact rational used for average clause length and exact PN estimates.
pub type Rational = num_rational::Rational64;

/// Solver with double-precision activities (the default).
pub type Solver64 = Solver<f64>;
/// Solver with single-precision activities.
pub type Solver32 = Solver<f32>;

pub type ActivityTable64 = heuristics::ActivityTable<f64>;
pub type ActivityTable32 = heuristics::ActivityTable<f32>;

pub type Regression64 = pn_metrics::RegressionResult<f64>;
pub type Regression32 = pn_metrics::RegressionResult<f32>;
