//! Propositional problem representation.

mod dimacs;
mod random;

use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

pub use dimacs::{emit_dimacs, parse_dimacs, ParseError, ParsedCnf};
pub use random::{generate_ksat, seeded_rng, SeededRng};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("literal x{var} exceeds the declared variable count {num_vars}")]
    VariableOutOfRange { var: u32, num_vars: u32 },
    #[error("invalid generator parameters: k={k}, n={n} (need 1 <= k <= n)")]
    InvalidParameters { n: u32, k: u32 },
    #[error("average clause length is undefined for a formula without clauses")]
    UndefinedAverage,
}

/// A literal: a variable (1-based) together with a polarity.
///
/// Stored as a dense code `2 * (var - 1) + negative`, so `code()` can index
/// per-literal tables directly and `!lit` flips the low bit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    /// Panics if `var == 0`.
    pub fn new(var: u32, negative: bool) -> Self {
        assert!(var >= 1, "variables are 1-based");
        Literal(((var - 1) << 1) | negative as u32)
    }

    pub fn positive(var: u32) -> Self {
        Self::new(var, false)
    }

    pub fn negative(var: u32) -> Self {
        Self::new(var, true)
    }

    /// Builds a literal from its DIMACS integer. Returns `None` for 0.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 || value.unsigned_abs() > u32::MAX as u64 {
            return None;
        }
        Some(Self::new(value.unsigned_abs() as u32, value < 0))
    }

    pub fn from_code(code: usize) -> Self {
        Literal(code as u32)
    }

    pub fn var(self) -> u32 {
        (self.0 >> 1) + 1
    }

    /// Zero-based variable index.
    pub fn var_index(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn to_dimacs(self) -> i64 {
        if self.is_negative() {
            -(self.var() as i64)
        } else {
            self.var() as i64
        }
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal(self.0 ^ 1)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
    learned: bool,
}

impl Clause {
    /// Removes repeated literals (keeping first occurrences in order).
    /// Returns `None` if the clause contains a complementary pair.
    pub fn normalized(literals: impl IntoIterator<Item = Literal>) -> Option<Self> {
        let mut out: Vec<Literal> = Vec::new();
        for lit in literals {
            if out.contains(&!lit) {
                return None;
            }
            if !out.contains(&lit) {
                out.push(lit);
            }
        }
        Some(Clause {
            literals: out,
            learned: false,
        })
    }

    /// Builds a learned clause. The literals must already be normalized.
    pub fn learned(literals: Vec<Literal>) -> Self {
        debug_assert!(
            Clause::normalized(literals.iter().copied()).map(|c| c.len()) == Some(literals.len())
        );
        Clause {
            literals,
            learned: true,
        }
    }

    /// Convenience constructor from DIMACS integers; panics on 0 or a tautology.
    pub fn from_dimacs(lits: &[i64]) -> Self {
        Clause::normalized(
            lits.iter()
                .map(|&l| Literal::from_dimacs(l).expect("literal 0")),
        )
        .expect("tautological clause")
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_learned(&self) -> bool {
        self.learned
    }

    pub fn is_satisfied_by(&self, assignment: &PartialAssignment) -> bool {
        self.literals
            .iter()
            .any(|&l| assignment.literal_value(l) == Some(true))
    }
}

impl<'a> IntoIterator for &'a Clause {
    type Item = &'a Literal;
    type IntoIter = std::slice::Iter<'a, Literal>;

    fn into_iter(self) -> Self::IntoIter {
        self.literals.iter()
    }
}

/// A CNF formula over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for clause in &clauses {
            if let Some(&lit) = clause.literals.iter().find(|l| l.var() > num_vars) {
                return Err(FormulaError::VariableOutOfRange {
                    var: lit.var(),
                    num_vars,
                });
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Panics if a literal is out of range. Handy for fixtures.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[&[i64]]) -> Self {
        let clauses = clauses.iter().map(|c| Clause::from_dimacs(c)).collect();
        CnfFormula::new(num_vars, clauses).expect("literal out of range")
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn learned_count(&self) -> usize {
        self.clauses.iter().filter(|c| c.learned).count()
    }

    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    /// Appends a learned clause, checking its variables.
    pub fn push_learned(&mut self, literals: Vec<Literal>) -> Result<(), FormulaError> {
        if let Some(&lit) = literals.iter().find(|l| l.var() > self.num_vars) {
            return Err(FormulaError::VariableOutOfRange {
                var: lit.var(),
                num_vars: self.num_vars,
            });
        }
        self.clauses.push(Clause::learned(literals));
        Ok(())
    }

    /// Total literal occurrences divided by the number of clauses, exactly.
    pub fn avg_clause_len(&self) -> Result<Rational64, FormulaError> {
        if self.clauses.is_empty() {
            return Err(FormulaError::UndefinedAverage);
        }
        Ok(Rational64::new(
            self.literal_count() as i64,
            self.clauses.len() as i64,
        ))
    }

    /// True if every clause has a literal made true by `model`.
    pub fn is_satisfied_by(&self, model: &PartialAssignment) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(model))
    }
}

/// A (possibly partial) truth assignment, indexed by 1-based variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
}

impl PartialAssignment {
    pub fn unassigned(num_vars: u32) -> Self {
        PartialAssignment {
            values: vec![None; num_vars as usize],
        }
    }

    pub fn from_values(values: Vec<Option<bool>>) -> Self {
        PartialAssignment { values }
    }

    /// Complete assignment from a bit mask: bit `i` is the value of variable `i + 1`.
    pub fn from_bits(num_vars: u32, bits: u64) -> Self {
        PartialAssignment {
            values: (0..num_vars).map(|i| Some(bits >> i & 1 == 1)).collect(),
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn set(&mut self, lit: Literal) {
        self.values[lit.var_index()] = Some(!lit.is_negative());
    }

    pub fn unset(&mut self, var: u32) {
        self.values[var as usize - 1] = None;
    }

    pub fn value(&self, var: u32) -> Option<bool> {
        self.values.get(var as usize - 1).copied().flatten()
    }

    pub fn literal_value(&self, lit: Literal) -> Option<bool> {
        self.values
            .get(lit.var_index())
            .copied()
            .flatten()
            .map(|v| v != lit.is_negative())
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Literals made true by the assignment, in variable order.
    pub fn true_literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|b| Literal::new(i as u32 + 1, !b)))
    }
}
