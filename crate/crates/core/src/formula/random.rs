//! Uniform random k-SAT generation.
//!
//! All randomness in the crate comes from `ChaCha8Rng` (rand_chacha) seeded with
//! `seed_from_u64`, whose output stream is fixed across platforms and releases.
//! Draws use only `u32` ranges and raw `u64` words so that sampling does not
//! depend on the target's pointer width.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Clause, CnfFormula, FormulaError, Literal};

/// The generator used for instances and randomized tie-breaking.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generates `m` clauses over `n` variables, each with `k` distinct variables
/// drawn uniformly without replacement and independent fair polarities.
///
/// Clauses repeated across the formula are kept.
pub fn generate_ksat(n: u32, m: usize, k: u32, seed: u64) -> Result<CnfFormula, FormulaError> {
    if k == 0 || k > n {
        return Err(FormulaError::InvalidParameters { n, k });
    }
    let mut rng = seeded_rng(seed);
    let mut clauses = Vec::with_capacity(m);
    let mut vars: Vec<u32> = Vec::with_capacity(k as usize);
    for _ in 0..m {
        vars.clear();
        while vars.len() < k as usize {
            let v = rng.gen_range(0..n) + 1;
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let lits = vars
            .iter()
            .map(|&v| Literal::new(v, rng.next_u64() >> 63 == 1));
        clauses.push(Clause::normalized(lits).expect("distinct variables cannot clash"));
    }
    Ok(CnfFormula::new(n, clauses).expect("variables drawn from 1..=n"))
}
