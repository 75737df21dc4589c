#![allow(dead_code)]

pub mod props;

use pnsat::{Clause, CnfFormula, PartialAssignment};

/// Clause as a pair of bit masks over variables (bit `v-1`).
fn masks(c: &Clause) -> (u32, u32) {
    c.literals().iter().fold((0, 0), |(pos, neg), l| {
        let bit = 1u32 << l.var_index();
        if l.is_negative() {
            (pos, neg | bit)
        } else {
            (pos | bit, neg)
        }
    })
}

/// Every satisfying assignment of `f`, as bit vectors. `f` must have at most 24 variables.
pub fn models(f: &CnfFormula) -> Vec<u32> {
    assert!(f.num_vars() <= 24);
    let ms: Vec<(u32, u32)> = f.clauses().iter().map(masks).collect();
    (0..1u32 << f.num_vars())
        .filter(|&bits| ms.iter().all(|&(p, n)| bits & p != 0 || !bits & n != 0))
        .collect()
}

/// Brute-force satisfiability by enumeration of all `2^n` assignments.
pub fn brute_force_sat(f: &CnfFormula) -> bool {
    assert!(f.num_vars() <= 24);
    let ms: Vec<(u32, u32)> = f.clauses().iter().map(masks).collect();
    (0..1u32 << f.num_vars()).any(|bits| ms.iter().all(|&(p, n)| bits & p != 0 || !bits & n != 0))
}

pub fn clause_holds(c: &Clause, bits: u32) -> bool {
    let (p, n) = masks(c);
    bits & p != 0 || !bits & n != 0
}

/// Substitution check, independent of `CnfFormula::is_satisfied_by`.
pub fn model_satisfies(f: &CnfFormula, model: &PartialAssignment) -> bool {
    f.clauses().iter().all(|c| {
        c.literals()
            .iter()
            .any(|l| model.value(l.var()) == Some(!l.is_negative()))
    })
}

/// Twelve variables, eleven clauses; P = 16, N = 10.
pub fn example12() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(
        12,
        &[
            &[-1, -2],
            &[-1, 3],
            &[-3, -4],
            &[2, 4, 5],
            &[-5, 6, -7],
            &[2, 7, 8],
            &[-8, -9],
            &[-8, 10],
            &[9, -10, 11],
            &[-10, -12],
            &[-11, 12],
        ],
    )
}
