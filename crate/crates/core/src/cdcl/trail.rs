use super::ClauseRef;
use crate::formula::Literal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrailEntry {
    pub literal: Literal,
    pub level: u32,
    /// `None` exactly for decisions.
    pub reason: Option<ClauseRef>,
}

/// Assigned literals in assignment order, with their decision levels and
/// antecedents. Together with the clause database this encodes the
/// implication graph.
#[derive(Debug, Clone, Default)]
pub struct Trail {
    entries: Vec<TrailEntry>,
    /// Index of the first entry of each level >= 1.
    level_starts: Vec<usize>,
    var_level: Vec<u32>,
    var_reason: Vec<Option<ClauseRef>>,
}

impl Trail {
    pub fn new(num_vars: u32) -> Self {
        Trail {
            entries: Vec::with_capacity(num_vars as usize),
            level_starts: Vec::new(),
            var_level: vec![0; num_vars as usize],
            var_reason: vec![None; num_vars as usize],
        }
    }

    pub fn decision_level(&self) -> u32 {
        self.level_starts.len() as u32
    }

    pub fn entries(&self) -> &[TrailEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn level_starts(&self) -> &[usize] {
        &self.level_starts
    }

    /// Level of an assigned variable (zero-based index).
    #[inline]
    pub fn level_of(&self, var_index: usize) -> u32 {
        self.var_level[var_index]
    }

    #[inline]
    pub fn reason_of(&self, var_index: usize) -> Option<ClauseRef> {
        self.var_reason[var_index]
    }

    pub fn new_level(&mut self) {
        self.level_starts.push(self.entries.len());
    }

    pub fn push(&mut self, literal: Literal, reason: Option<ClauseRef>) {
        let level = self.decision_level();
        self.var_level[literal.var_index()] = level;
        self.var_reason[literal.var_index()] = reason;
        self.entries.push(TrailEntry {
            literal,
            level,
            reason,
        });
    }

    /// Removes every entry above `level`, most recent first.
    pub fn pop_above(&mut self, level: u32) -> impl Iterator<Item = TrailEntry> + '_ {
        let start = if level < self.decision_level() {
            self.level_starts[level as usize]
        } else {
            self.entries.len()
        };
        self.level_starts.truncate(level as usize);
        self.entries.drain(start..).rev()
    }
}
