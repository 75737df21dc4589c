//! Clause database with counter-based propagation.
//!
//! Every clause keeps the number of its literals currently TRUE and FALSE, and
//! every literal has a full occurrence list. Assigning a literal walks the
//! occurrence lists of both polarities, which also keeps the
//! [`OccurrenceTracker`] exact at all times.

use std::collections::VecDeque;

use crate::formula::{Clause, CnfFormula, Literal, PartialAssignment};
use crate::heuristics::OccurrenceTracker;

/// Index of a clause in the database.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseRef(pub u32);

impl ClauseRef {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Counters {
    satisfied: u32,
    falsified: u32,
}

/// A literal forced by a clause that became unit, waiting to be assigned.
pub type PendingUnit = (Literal, ClauseRef);

#[derive(Debug, Clone)]
pub struct ClauseDb {
    clauses: Vec<Clause>,
    counters: Vec<Counters>,
    occurs: Vec<Vec<ClauseRef>>,
    /// Per literal code: 1 true, -1 false, 0 unassigned.
    values: Vec<i8>,
    tracker: OccurrenceTracker,
    unresolved: usize,
    original: usize,
}

impl ClauseDb {
    pub fn new(num_vars: u32) -> Self {
        ClauseDb {
            clauses: Vec::new(),
            counters: Vec::new(),
            occurs: vec![Vec::new(); 2 * num_vars as usize],
            values: vec![0; 2 * num_vars as usize],
            tracker: OccurrenceTracker::new(num_vars),
            unresolved: 0,
            original: 0,
        }
    }

    /// Loads every clause of `f` as an original clause (nothing assigned yet).
    pub fn from_formula(f: &CnfFormula) -> Self {
        let mut db = ClauseDb::new(f.num_vars());
        for c in f.clauses() {
            db.add_clause(c.clone());
        }
        db.original = f.clause_count();
        db
    }

    pub fn num_vars(&self) -> u32 {
        (self.values.len() / 2) as u32
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn original_count(&self) -> usize {
        self.original
    }

    pub fn clause(&self, cref: ClauseRef) -> &Clause {
        &self.clauses[cref.index()]
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn tracker(&self) -> &OccurrenceTracker {
        &self.tracker
    }

    /// Number of clauses with no TRUE literal.
    pub fn unresolved_count(&self) -> usize {
        self.unresolved
    }

    #[inline]
    pub fn value(&self, lit: Literal) -> Option<bool> {
        match self.values[lit.code()] {
            0 => None,
            v => Some(v > 0),
        }
    }

    #[inline]
    pub fn is_assigned(&self, var: u32) -> bool {
        self.values[2 * (var as usize - 1)] != 0
    }

    pub fn is_unresolved(&self, cref: ClauseRef) -> bool {
        self.counters[cref.index()].satisfied == 0
    }

    /// Number of unassigned literals in an unresolved clause.
    pub fn free_len(&self, cref: ClauseRef) -> usize {
        self.clauses[cref.index()].len() - self.counters[cref.index()].falsified as usize
    }

    pub fn assignment(&self) -> PartialAssignment {
        PartialAssignment::from_values(
            self.values
                .chunks_exact(2)
                .map(|pair| match pair[0] {
                    0 => None,
                    v => Some(v > 0),
                })
                .collect(),
        )
    }

    /// Appends a clause, initialising its counters from the current assignment.
    pub fn add_clause(&mut self, clause: Clause) -> ClauseRef {
        let cref = ClauseRef(self.clauses.len() as u32);
        let mut counters = Counters::default();
        for &lit in clause.literals() {
            self.occurs[lit.code()].push(cref);
            match self.value(lit) {
                Some(true) => counters.satisfied += 1,
                Some(false) => counters.falsified += 1,
                None => {}
            }
        }
        if counters.satisfied == 0 {
            self.unresolved += 1;
            for &lit in clause.literals() {
                if self.value(lit).is_none() {
                    self.tracker.increment(lit);
                }
            }
        }
        self.clauses.push(clause);
        self.counters.push(counters);
        cref
    }

    /// Makes `lit` TRUE and updates counters and the tracker.
    ///
    /// Clauses that become unit push their forced literal onto `units`. Returns
    /// the first clause that became entirely FALSE, if any; all bookkeeping is
    /// completed regardless so that [`ClauseDb::unassign`] stays exact.
    pub fn assign(&mut self, lit: Literal, units: &mut VecDeque<PendingUnit>) -> Option<ClauseRef> {
        debug_assert_eq!(self.value(lit), None, "literal {lit} already assigned");

        // Clauses containing `lit` become (or stay) satisfied.
        for &cref in &self.occurs[lit.code()] {
            let counters = &mut self.counters[cref.index()];
            if counters.satisfied == 0 {
                self.unresolved -= 1;
                for &other in self.clauses[cref.index()].literals() {
                    if self.values[other.code()] == 0 {
                        self.tracker.decrement(other);
                    }
                }
            }
            counters.satisfied += 1;
        }

        self.values[lit.code()] = 1;
        self.values[(!lit).code()] = -1;

        // Clauses containing `!lit` lose a free literal.
        let mut conflict = None;
        let neg = !lit;
        for &cref in &self.occurs[neg.code()] {
            let counters = &mut self.counters[cref.index()];
            counters.falsified += 1;
            if counters.satisfied != 0 {
                continue;
            }
            self.tracker.decrement(neg);
            let clause = &self.clauses[cref.index()];
            let free = clause.len() - counters.falsified as usize;
            if free == 0 {
                conflict.get_or_insert(cref);
            } else if free == 1 {
                let forced = clause
                    .literals()
                    .iter()
                    .copied()
                    .find(|l| self.values[l.code()] == 0)
                    .expect("unit clause has a free literal");
                units.push_back((forced, cref));
            }
        }
        conflict
    }

    /// Exact inverse of [`ClauseDb::assign`] for the most recent assignment of `lit`.
    pub fn unassign(&mut self, lit: Literal) {
        debug_assert_eq!(self.value(lit), Some(true));
        let neg = !lit;
        for &cref in &self.occurs[neg.code()] {
            let counters = &mut self.counters[cref.index()];
            counters.falsified -= 1;
            if counters.satisfied == 0 {
                self.tracker.increment(neg);
            }
        }

        self.values[lit.code()] = 0;
        self.values[neg.code()] = 0;

        for &cref in &self.occurs[lit.code()] {
            let counters = &mut self.counters[cref.index()];
            counters.satisfied -= 1;
            if counters.satisfied == 0 {
                self.unresolved += 1;
                for &other in self.clauses[cref.index()].literals() {
                    if self.values[other.code()] == 0 {
                        self.tracker.increment(other);
                    }
                }
            }
        }
    }

    /// Recomputes the tracker from scratch (test oracle).
    pub fn recount_tracker(&self) -> OccurrenceTracker {
        let mut counts = vec![0u32; self.values.len()];
        for clause in &self.clauses {
            if clause
                .literals()
                .iter()
                .any(|&l| self.value(l) == Some(true))
            {
                continue;
            }
            for &l in clause.literals() {
                if self.value(l).is_none() {
                    counts[l.code()] += 1;
                }
            }
        }
        OccurrenceTracker::from_counts(counts)
    }

    /// Current database (original plus learned clauses) as a formula.
    pub fn to_formula(&self) -> CnfFormula {
        CnfFormula::new(self.num_vars(), self.clauses.clone())
            .expect("database literals are in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::generate_ksat;
    use crate::pn_metrics::pn_product;
    use proptest::prelude::*;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    #[test]
    fn assignment_updates_counts() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[-1, -2]]);
        let mut db = ClauseDb::from_formula(&f);
        let mut units = VecDeque::new();
        assert_eq!(db.assign(lit(1), &mut units), None);
        assert_eq!(db.tracker().count(lit(-1)), 0);
        assert_eq!(db.tracker().count(lit(-2)), 1);
        assert_eq!(units, [(lit(-2), ClauseRef(0))]);
    }

    #[test]
    fn satisfied_clause_drops_all_free_literals() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]);
        let mut db = ClauseDb::from_formula(&f);
        db.assign(lit(2), &mut VecDeque::new());
        assert!(db.tracker().counts().iter().all(|&c| c == 0));
        assert_eq!(db.unresolved_count(), 0);
    }

    #[test]
    fn three_literal_clause_forces_last() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]);
        let mut db = ClauseDb::from_formula(&f);
        let mut units = VecDeque::new();
        db.assign(lit(-1), &mut units);
        assert!(units.is_empty());
        db.assign(lit(-2), &mut units);
        assert_eq!(units, [(lit(3), ClauseRef(0))]);
    }

    #[test]
    fn conflict_is_reported() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]);
        let mut db = ClauseDb::from_formula(&f);
        assert_eq!(db.assign(lit(1), &mut VecDeque::new()), Some(ClauseRef(1)));
    }

    #[test]
    fn added_clause_respects_assignment() {
        let mut db = ClauseDb::new(3);
        db.assign(lit(1), &mut VecDeque::new());
        db.add_clause(Clause::from_dimacs(&[1, 2]));
        db.add_clause(Clause::from_dimacs(&[-1, 2, 3]));
        assert_eq!(db.unresolved_count(), 1);
        assert_eq!(db.free_len(ClauseRef(1)), 2);
        assert_eq!(db.tracker(), &db.recount_tracker());
    }

    proptest! {
        #[test]
        fn assign_unassign_is_identity(n in 3u32..20, m in 0usize..80, seed: u64, order in proptest::collection::vec((1u32..20, any::<bool>()), 1..20)) {
            let f = generate_ksat(n, m, 3, seed).unwrap();
            let mut db = ClauseDb::from_formula(&f);
            let before = db.tracker().clone();
            let mut done = Vec::new();
            let mut units = VecDeque::new();
            for (v, neg) in order {
                if v > n || db.is_assigned(v) { continue; }
                let l = Literal::new(v, neg);
                db.assign(l, &mut units);
                done.push(l);
                prop_assert_eq!(db.tracker(), &db.recount_tracker());
                prop_assert_eq!(db.tracker().pn_product(), pn_product(&f, Some(&db.assignment())));
            }
            for l in done.into_iter().rev() {
                db.unassign(l);
                prop_assert_eq!(db.tracker(), &db.recount_tracker());
            }
            prop_assert_eq!(db.tracker(), &before);
            prop_assert_eq!(db.unresolved_count(), m);
        }
    }
}
