//! Conflict-driven clause learning.
//!
//! The loop is: decide, propagate units, and on a conflict learn a first-UIP
//! clause, backjump non-chronologically and assert it. Learned clauses are
//! kept for the whole run.

mod analyze;
mod db;
mod solver;
mod trail;

pub use analyze::{analyze_conflict, Learned};
pub use db::{ClauseDb, ClauseRef, PendingUnit};
pub use solver::{
    solve, ConflictInfo, Limits, SolveError, SolveResult, SolveStats, Solver, Status, Step,
    TraceEvent, TraceKind,
};
pub use trail::{Trail, TrailEntry};
