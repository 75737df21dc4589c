//! Positive/negative product of a formula.
//!
//! For every variable the more frequent polarity (over unresolved clauses,
//! counting only unassigned occurrences) forms the positive group and the other
//! polarity the negative group. `P` and `N` sum the two groups over all
//! variables; the PN product is `P * N`.

mod ols;

use thiserror::Error;

use crate::formula::{generate_ksat, CnfFormula, FormulaError, Literal, PartialAssignment};
use crate::scalar::{from_count, Scalar};

pub use ols::{ols_simple, RegressionError, RegressionResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PnError {
    #[error("P + N is zero; the post-assignment estimate divides by it")]
    ZeroTotal,
    #[error("invalid estimate arguments: {0}")]
    InvalidArguments(&'static str),
    #[error("clause counts must be strictly increasing")]
    NonIncreasingSweep,
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// Per-variable group counts for one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VarGroup {
    /// The literal forming the positive group.
    pub positive_polarity: Option<Literal>,
    /// `p`: occurrences of the positive-group polarity.
    pub pos_count: u64,
    /// `n`: occurrences of the negative-group polarity.
    pub neg_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarityGroups {
    /// Indexed by zero-based variable.
    pub vars: Vec<VarGroup>,
    /// Sum of positive-group counts.
    pub total_pos: u64,
    /// Sum of negative-group counts.
    pub total_neg: u64,
}

impl PolarityGroups {
    /// Builds groups from raw per-literal counts (indexed by literal code).
    /// Equal counts put the un-negated polarity in the positive group.
    pub fn from_literal_counts(counts: &[u64]) -> Self {
        let mut vars = Vec::with_capacity(counts.len() / 2);
        let (mut total_pos, mut total_neg) = (0, 0);
        for (i, pair) in counts.chunks_exact(2).enumerate() {
            let var = i as u32 + 1;
            let (pos, neg) = (pair[0], pair[1]);
            let group = if pos >= neg {
                VarGroup {
                    positive_polarity: Some(Literal::positive(var)),
                    pos_count: pos,
                    neg_count: neg,
                }
            } else {
                VarGroup {
                    positive_polarity: Some(Literal::negative(var)),
                    pos_count: neg,
                    neg_count: pos,
                }
            };
            total_pos += group.pos_count;
            total_neg += group.neg_count;
            vars.push(group);
        }
        PolarityGroups {
            vars,
            total_pos,
            total_neg,
        }
    }

    pub fn pn_product(&self) -> u64 {
        self.total_pos * self.total_neg
    }

    pub fn var(&self, var: u32) -> &VarGroup {
        &self.vars[var as usize - 1]
    }
}

/// Per-literal occurrence counts over clauses not satisfied by `assignment`,
/// counting unassigned literals only.
pub fn literal_counts(f: &CnfFormula, assignment: Option<&PartialAssignment>) -> Vec<u64> {
    let mut counts = vec![0u64; 2 * f.num_vars() as usize];
    for clause in f.clauses() {
        match assignment {
            None => {
                for lit in clause {
                    counts[lit.code()] += 1;
                }
            }
            Some(a) => {
                if clause.is_satisfied_by(a) {
                    continue;
                }
                for &lit in clause {
                    if a.literal_value(lit).is_none() {
                        counts[lit.code()] += 1;
                    }
                }
            }
        }
    }
    counts
}

pub fn polarity_groups(f: &CnfFormula, assignment: Option<&PartialAssignment>) -> PolarityGroups {
    PolarityGroups::from_literal_counts(&literal_counts(f, assignment))
}

pub fn pn_product(f: &CnfFormula, assignment: Option<&PartialAssignment>) -> u64 {
    polarity_groups(f, assignment).pn_product()
}

/// Estimated PN product after asserting the positive-group polarity of a
/// variable with counts `p`, `n`, given totals `P`, `N` and average clause
/// length `k`:
///
/// `(P - p - p(k-1)·P/(P+N)) · (N - n - p(k-1)·N/(P+N))`
///
/// The estimate is approximate and is returned unclamped, so it can be
/// negative when `p` is large relative to `P`.
pub fn predicted_new_pn_product<S: Scalar>(
    total_pos: u64,
    total_neg: u64,
    p: u64,
    n: u64,
    k: S,
) -> Result<S, PnError> {
    if total_pos + total_neg == 0 {
        return Err(PnError::ZeroTotal);
    }
    if p > total_pos || n > total_neg {
        return Err(PnError::InvalidArguments("p <= P and n <= N required"));
    }
    if k < S::one() {
        return Err(PnError::InvalidArguments("k >= 1 required"));
    }
    let big_p: S = from_count(total_pos);
    let big_n: S = from_count(total_neg);
    let p: S = from_count(p);
    let n: S = from_count(n);
    let total = big_p + big_n;
    let spill = p * (k - S::one());
    let pos_left = big_p - p - spill * big_p / total;
    let neg_left = big_n - n - spill * big_n / total;
    Ok(pos_left * neg_left)
}

/// One row of a clause-count sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub clauses: usize,
    pub mean_pn_product: f64,
}

/// Mean initial PN product of fresh random instances for each clause count.
///
/// Point `j`, repetition `r` uses seed `seed0 + j * seeds_per_point + r`.
pub fn pn_sweep(
    n: u32,
    k: u32,
    m_values: &[usize],
    seeds_per_point: usize,
    seed0: u64,
) -> Result<Vec<SweepPoint>, PnError> {
    if m_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PnError::NonIncreasingSweep);
    }
    if seeds_per_point == 0 {
        return Err(PnError::InvalidArguments("seeds_per_point >= 1 required"));
    }
    let mut out = Vec::with_capacity(m_values.len());
    for (j, &m) in m_values.iter().enumerate() {
        let mut sum = 0u128;
        for r in 0..seeds_per_point {
            let seed = seed0.wrapping_add((j * seeds_per_point + r) as u64);
            sum += pn_product(&generate_ksat(n, m, k, seed)?, None) as u128;
        }
        out.push(SweepPoint {
            clauses: m,
            mean_pn_product: sum as f64 / seeds_per_point as f64,
        });
    }
    Ok(out)
}

/// CSV with header `m,mean_pn_product`.
pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("m,mean_pn_product\n");
    for p in points {
        out.push_str(&format!("{},{}\n", p.clauses, p.mean_pn_product));
    }
    out
}
