use std::collections::VecDeque;
use std::time::{Duration, Instant};

use thiserror::Error;

use super::{analyze_conflict, ClauseDb, ClauseRef, Learned, PendingUnit, Trail};
use crate::formula::{seeded_rng, Clause, CnfFormula, Literal, PartialAssignment, SeededRng};
use crate::heuristics::{pick_branch, ActivityTable, HeuristicConfig};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Sat,
    Unsat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub decisions: u64,
    /// Literals assigned by unit propagation.
    pub propagations: u64,
    /// Conflicts analyzed (a final conflict at level 0 is not counted).
    pub conflicts: u64,
    pub learned_clauses: u64,
    /// Original plus learned clauses; nothing is ever deleted.
    pub final_clause_count: u64,
    pub max_decision_level: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: Status,
    /// Complete model for SAT; unconstrained variables are set FALSE.
    pub model: Option<PartialAssignment>,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("budget exhausted after {} conflicts", stats.conflicts)]
    Indeterminate { stats: SolveStats },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Limits {
    pub max_conflicts: Option<u64>,
    pub max_time: Option<Duration>,
    /// Restart (backjump to level 0) every this many conflicts. Off by default.
    pub restart_interval: Option<u64>,
}

impl Limits {
    pub fn conflicts(max: u64) -> Self {
        Limits {
            max_conflicts: Some(max),
            ..Limits::default()
        }
    }
}

/// What a single [`Solver::step`] did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Decision(Literal),
    Conflict(ConflictInfo),
    Finished(Status),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictInfo {
    /// Decision level at which the conflict arose.
    pub level: u32,
    pub learned: ClauseRef,
    pub backjump_level: u32,
    /// Learned-clause literals assigned at the conflict level (1 for an asserting clause).
    pub conflict_level_literals: usize,
}

/// One line of an optional search trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEvent {
    pub kind: TraceKind,
    pub level: u32,
    /// Decision literal, or the asserting literal of a learned clause.
    pub literal: Literal,
    /// Zero for decisions.
    pub learned_len: usize,
    /// PN product of the unresolved clauses when the event happened.
    pub pn_product: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    Decision,
    Conflict,
}

impl TraceEvent {
    pub const CSV_HEADER: &'static str = "event,level,literal,learned_len,pn_product";

    pub fn csv_row(&self) -> String {
        let kind = match self.kind {
            TraceKind::Decision => "decision",
            TraceKind::Conflict => "conflict",
        };
        format!(
            "{kind},{},{},{},{}",
            self.level, self.literal, self.learned_len, self.pn_product
        )
    }
}

/// CDCL search state. `T` is the scalar used for branching activities.
pub struct Solver<T: Real = f64> {
    db: ClauseDb,
    trail: Trail,
    pending: VecDeque<PendingUnit>,
    conflict: Option<ClauseRef>,
    /// Only maintained for kinds that read it.
    activities: ActivityTable<T>,
    tracks_activity: bool,
    config: HeuristicConfig,
    rng: SeededRng,
    stats: SolveStats,
    restart_interval: Option<u64>,
    seen: Vec<bool>,
    finished: Option<Status>,
}

impl<T: Real> Solver<T> {
    pub fn new(f: &CnfFormula, config: HeuristicConfig, seed: u64) -> Self {
        let db = ClauseDb::from_formula(f);
        let tracks_activity = config.kind.uses_activities();
        let mut activities =
            ActivityTable::new(f.num_vars(), config.decay_divisor, config.decay_period);
        let mut pending = VecDeque::new();
        let mut finished = None;
        for (i, clause) in f.clauses().iter().enumerate() {
            if tracks_activity {
                activities.on_clause_added(clause.literals());
            }
            match clause.literals() {
                [] => finished = Some(Status::Unsat),
                [unit] => pending.push_back((*unit, ClauseRef(i as u32))),
                _ => {}
            }
        }
        Solver {
            trail: Trail::new(f.num_vars()),
            seen: vec![false; f.num_vars() as usize],
            stats: SolveStats {
                final_clause_count: db.len() as u64,
                ..SolveStats::default()
            },
            db,
            pending,
            conflict: None,
            activities,
            tracks_activity,
            config,
            rng: seeded_rng(seed),
            restart_interval: None,
            finished,
        }
    }

    pub fn set_restart_interval(&mut self, interval: Option<u64>) {
        self.restart_interval = interval.filter(|&i| i > 0);
    }

    pub fn db(&self) -> &ClauseDb {
        &self.db
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    pub fn activities(&self) -> Option<&ActivityTable<T>> {
        self.tracks_activity.then_some(&self.activities)
    }

    pub fn decision_level(&self) -> u32 {
        self.trail.decision_level()
    }

    /// Opens a new decision level and asserts `lit` there (no propagation).
    pub fn decide(&mut self, lit: Literal) {
        assert!(
            !self.db.is_assigned(lit.var()),
            "decision on assigned variable"
        );
        self.trail.new_level();
        self.stats.decisions += 1;
        self.stats.max_decision_level = self
            .stats
            .max_decision_level
            .max(self.trail.decision_level());
        self.trail.push(lit, None);
        if let Some(c) = self.db.assign(lit, &mut self.pending) {
            self.conflict.get_or_insert(c);
        }
    }

    /// Unit propagation to fixpoint, FIFO over forced literals. Returns the
    /// first clause found with every literal FALSE.
    pub fn propagate(&mut self) -> Option<ClauseRef> {
        if let Some(c) = self.conflict.take() {
            self.pending.clear();
            return Some(c);
        }
        while let Some((lit, reason)) = self.pending.pop_front() {
            match self.db.value(lit) {
                Some(true) => continue,
                Some(false) => {
                    self.pending.clear();
                    return Some(reason);
                }
                None => {}
            }
            self.trail.push(lit, Some(reason));
            self.stats.propagations += 1;
            if let Some(c) = self.db.assign(lit, &mut self.pending) {
                self.pending.clear();
                return Some(c);
            }
        }
        None
    }

    pub fn analyze(&mut self, conflict: ClauseRef) -> Learned {
        analyze_conflict(&self.db, &self.trail, conflict, &mut self.seen)
    }

    /// Undoes every assignment above `level`.
    pub fn backjump(&mut self, level: u32) {
        assert!(level <= self.trail.decision_level());
        for entry in self.trail.pop_above(level) {
            self.db.unassign(entry.literal);
        }
        self.pending.clear();
        self.conflict = None;
    }

    /// Learns from `conflict`, backjumps and queues the asserting literal.
    /// A conflict at level 0 finishes the search as UNSAT.
    pub fn resolve_conflict(&mut self, conflict: ClauseRef) -> Step {
        let level = self.trail.decision_level();
        if level == 0 {
            self.finished = Some(Status::Unsat);
            return Step::Finished(Status::Unsat);
        }
        self.stats.conflicts += 1;
        let learned = self.analyze(conflict);
        let conflict_level_literals = learned
            .literals
            .iter()
            .filter(|l| self.trail.level_of(l.var_index()) == level)
            .count();

        let restart = self
            .restart_interval
            .is_some_and(|i| self.stats.conflicts.is_multiple_of(i));
        let target = if restart { 0 } else { learned.backjump_level };
        self.backjump(target);

        let asserting = learned.asserting_literal();
        let cref = self
            .db
            .add_clause(Clause::learned(learned.literals.clone()));
        self.stats.learned_clauses += 1;
        self.stats.final_clause_count = self.db.len() as u64;
        if self.tracks_activity {
            self.activities.on_clause_added(&learned.literals);
            self.activities.on_conflict(self.stats.conflicts);
        }
        if target == learned.backjump_level {
            self.pending.push_back((asserting, cref));
        }
        Step::Conflict(ConflictInfo {
            level,
            learned: cref,
            backjump_level: learned.backjump_level,
            conflict_level_literals,
        })
    }

    /// Propagates; then either handles a conflict, reports the end of the
    /// search, or makes one decision.
    pub fn step(&mut self) -> Step {
        if let Some(status) = self.finished {
            return Step::Finished(status);
        }
        if let Some(conflict) = self.propagate() {
            return self.resolve_conflict(conflict);
        }
        if self.db.unresolved_count() == 0 {
            self.finished = Some(Status::Sat);
            return Step::Finished(Status::Sat);
        }
        let lit = pick_branch(&self.config, &self.db, &self.activities, &mut self.rng).expect(
            "unresolved clauses remain after propagation but no branching candidate exists",
        );
        self.decide(lit);
        Step::Decision(lit)
    }

    /// Complete model (unconstrained variables FALSE). Only meaningful after SAT.
    pub fn model(&self) -> PartialAssignment {
        let partial = self.db.assignment();
        PartialAssignment::from_values(
            (1..=self.db.num_vars())
                .map(|v| Some(partial.value(v).unwrap_or(false)))
                .collect(),
        )
    }

    fn pn_now(&self) -> u64 {
        self.db.tracker().pn_product()
    }

    /// Runs to completion or until a limit is hit.
    pub fn solve(&mut self, limits: &Limits) -> Result<SolveResult, SolveError> {
        self.solve_traced(limits, None)
    }

    pub fn solve_traced(
        &mut self,
        limits: &Limits,
        mut trace: Option<&mut dyn FnMut(&TraceEvent)>,
    ) -> Result<SolveResult, SolveError> {
        if limits.restart_interval.is_some() {
            self.set_restart_interval(limits.restart_interval);
        }
        let start = Instant::now();
        loop {
            let step = self.step();
            match &step {
                Step::Finished(status) => {
                    let model = (*status == Status::Sat).then(|| self.model());
                    if let Some(m) = &model {
                        let original = &self.db.clauses()[..self.db.original_count()];
                        assert!(
                            original.iter().all(|c| c.is_satisfied_by(m)),
                            "model does not satisfy the formula"
                        );
                    }
                    return Ok(SolveResult {
                        status: *status,
                        model,
                        stats: self.stats,
                    });
                }
                Step::Decision(lit) => {
                    if let Some(sink) = trace.as_mut() {
                        sink(&TraceEvent {
                            kind: TraceKind::Decision,
                            level: self.trail.decision_level(),
                            literal: *lit,
                            learned_len: 0,
                            pn_product: self.pn_now(),
                        });
                    }
                }
                Step::Conflict(info) => {
                    if let Some(sink) = trace.as_mut() {
                        let clause = self.db.clause(info.learned);
                        sink(&TraceEvent {
                            kind: TraceKind::Conflict,
                            level: info.level,
                            literal: clause.literals()[0],
                            learned_len: clause.len(),
                            pn_product: self.pn_now(),
                        });
                    }
                    if limits
                        .max_conflicts
                        .is_some_and(|m| self.stats.conflicts >= m)
                    {
                        return Err(SolveError::Indeterminate { stats: self.stats });
                    }
                }
            }
            if limits.max_time.is_some_and(|t| start.elapsed() >= t) {
                return Err(SolveError::Indeterminate { stats: self.stats });
            }
        }
    }
}

/// Solves `f` with double-precision activities.
pub fn solve(
    f: &CnfFormula,
    config: HeuristicConfig,
    seed: u64,
    limits: &Limits,
) -> Result<SolveResult, SolveError> {
    Solver::<f64>::new(f, config, seed).solve(limits)
}
