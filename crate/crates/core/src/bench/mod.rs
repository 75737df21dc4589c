//! Experiment harness: heuristic comparison matrix, aggregation, paired sign
//! test and the solvability-vs-PN-product regression.

mod aggregate;
mod sign_test;
mod solvability;

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::cdcl::{Limits, SolveError, Solver, Status};
use crate::formula::{generate_ksat, CnfFormula, FormulaError};
use crate::heuristics::HeuristicConfig;
use crate::pn_metrics::{pn_product, RegressionError};

pub use aggregate::{aggregate, markdown_table, AggregateStats, HeuristicSummary};
pub use sign_test::{paired_sign_test, SignTest};
pub use solvability::{solvability_regression, SolvabilityOutcome, SolvabilityParams};

/// Conflict cap applied per instance unless overridden.
pub const DEFAULT_CONFLICT_BUDGET: u64 = 500_000;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("repetitions must be at least 1")]
    NoRepetitions,
    #[error("at least one heuristic is required")]
    NoHeuristics,
    #[error("need at least {min} instances, got {got}")]
    TooFewInstances { min: usize, got: usize },
    #[error("failed to build worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Regression(#[from] RegressionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RunStatus {
    Sat,
    Unsat,
    Indeterminate,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Sat => "SAT",
            RunStatus::Unsat => "UNSAT",
            RunStatus::Indeterminate => "INDETERMINATE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub instance_seed: u64,
    pub heuristic: String,
    pub status: RunStatus,
    pub final_clause_count: u64,
    pub conflicts: u64,
    pub decisions: u64,
    pub initial_pn_product: u64,
    pub wall_time_s: f64,
}

pub const RECORD_CSV_HEADER: &str =
    "heuristic,instance_seed,status,final_clauses,conflicts,decisions,initial_pn_product,wall_time_s";

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.6}",
            self.heuristic,
            self.instance_seed,
            self.status.as_str(),
            self.final_clause_count,
            self.conflicts,
            self.decisions,
            self.initial_pn_product,
            self.wall_time_s
        )
    }
}

/// Header plus one row per record, in the given order.
pub fn records_csv(records: &[BenchRecord]) -> String {
    let mut out = String::new();
    writeln!(out, "{RECORD_CSV_HEADER}").unwrap();
    for r in records {
        writeln!(out, "{}", r.csv_row()).unwrap();
    }
    out
}

#[derive(Debug, Clone)]
pub struct MatrixParams {
    pub num_vars: u32,
    pub num_clauses: usize,
    pub clause_len: u32,
    pub repetitions: usize,
    pub heuristics: Vec<HeuristicConfig>,
    pub seed0: u64,
    pub conflict_budget: Option<u64>,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
}

impl MatrixParams {
    /// 100 variables, 426 clauses, 3 literals, 100 repetitions, the seven
    /// comparison heuristics and the default conflict budget.
    pub fn standard() -> Self {
        MatrixParams {
            num_vars: 100,
            num_clauses: 426,
            clause_len: 3,
            repetitions: 100,
            heuristics: HeuristicConfig::comparison_lineup(),
            seed0: 0,
            conflict_budget: Some(DEFAULT_CONFLICT_BUDGET),
            jobs: 1,
        }
    }
}

/// Solves one instance and summarizes the run. The solver RNG is seeded with
/// the instance seed.
pub fn run_one(
    f: &CnfFormula,
    instance_seed: u64,
    cfg: &HeuristicConfig,
    budget: Option<u64>,
) -> BenchRecord {
    let limits = Limits {
        max_conflicts: budget,
        ..Limits::default()
    };
    let initial_pn_product = pn_product(f, None);
    let start = Instant::now();
    let outcome = Solver::<f64>::new(f, *cfg, instance_seed).solve(&limits);
    let wall_time_s = start.elapsed().as_secs_f64();
    let (status, stats) = match outcome {
        Ok(r) => (
            match r.status {
                Status::Sat => RunStatus::Sat,
                Status::Unsat => RunStatus::Unsat,
            },
            r.stats,
        ),
        Err(SolveError::Indeterminate { stats }) => (RunStatus::Indeterminate, stats),
    };
    BenchRecord {
        instance_seed,
        heuristic: cfg.label(),
        status,
        final_clause_count: stats.final_clause_count,
        conflicts: stats.conflicts,
        decisions: stats.decisions,
        initial_pn_product,
        wall_time_s,
    }
}

/// Runs every heuristic on the same instances (repetition `i` uses seed
/// `seed0 + i`). `on_record` sees each record as soon as it is produced; the
/// returned list is ordered by heuristic (input order) then instance seed,
/// independent of scheduling.
pub fn run_matrix(
    params: &MatrixParams,
    on_record: impl Fn(&BenchRecord) + Sync,
) -> Result<Vec<BenchRecord>, BenchError> {
    if params.repetitions == 0 {
        return Err(BenchError::NoRepetitions);
    }
    if params.heuristics.is_empty() {
        return Err(BenchError::NoHeuristics);
    }
    let instances: Vec<(u64, CnfFormula)> = (0..params.repetitions)
        .map(|i| {
            let seed = params.seed0.wrapping_add(i as u64);
            generate_ksat(params.num_vars, params.num_clauses, params.clause_len, seed)
                .map(|f| (seed, f))
        })
        .collect::<Result<_, _>>()?;

    let tasks: Vec<(usize, usize)> = (0..params.heuristics.len())
        .flat_map(|h| (0..instances.len()).map(move |i| (h, i)))
        .collect();
    let run = |&(h, i): &(usize, usize)| {
        let (seed, f) = &instances[i];
        let record = run_one(f, *seed, &params.heuristics[h], params.conflict_budget);
        on_record(&record);
        ((h, i), record)
    };

    let mut keyed: Vec<((usize, usize), BenchRecord)> = if params.jobs == 1 {
        tasks.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(params.jobs)
            .build()?;
        pool.install(|| tasks.par_iter().map(run).collect())
    };
    keyed.sort_by_key(|(k, _)| *k);
    Ok(keyed.into_iter().map(|(_, r)| r).collect())
}

/// Final clause counts of two heuristics, paired by instance seed. Pairs in
/// which either run is indeterminate are dropped.
pub fn paired_counts(records: &[BenchRecord], a: &str, b: &str) -> (Vec<u64>, Vec<u64>) {
    let pick = |label: &str| {
        let mut v: Vec<&BenchRecord> = records.iter().filter(|r| r.heuristic == label).collect();
        v.sort_by_key(|r| r.instance_seed);
        v
    };
    let (ra, rb) = (pick(a), pick(b));
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for x in &ra {
        if let Some(y) = rb.iter().find(|y| y.instance_seed == x.instance_seed) {
            if x.status != RunStatus::Indeterminate && y.status != RunStatus::Indeterminate {
                xs.push(x.final_clause_count);
                ys.push(y.final_clause_count);
            }
        }
    }
    (xs, ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heuristics::HeuristicKind;
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn small(heuristics: Vec<HeuristicConfig>, reps: usize) -> MatrixParams {
        MatrixParams {
            num_vars: 30,
            num_clauses: 128,
            clause_len: 3,
            repetitions: reps,
            heuristics,
            seed0: 7,
            conflict_budget: Some(DEFAULT_CONFLICT_BUDGET),
            jobs: 1,
        }
    }

    #[test]
    fn minimal_run() {
        let recs = run_matrix(
            &small(vec![HeuristicConfig::new(HeuristicKind::Dlis)], 1),
            |_| {},
        )
        .unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].instance_seed, 7);
        assert_eq!(recs[0].final_clause_count - 128, recs[0].conflicts);
    }

    #[test]
    fn paired_design_and_streaming() {
        let seen = AtomicUsize::new(0);
        let params = small(HeuristicConfig::comparison_lineup(), 4);
        let recs = run_matrix(&params, |_| {
            seen.fetch_add(1, Ordering::Relaxed);
        })
        .unwrap();
        assert_eq!(recs.len(), 28);
        assert_eq!(seen.load(Ordering::Relaxed), 28);
        for chunk in recs.chunks(4) {
            let seeds: Vec<u64> = chunk.iter().map(|r| r.instance_seed).collect();
            assert_eq!(seeds, [7, 8, 9, 10]);
            let pns: Vec<u64> = chunk.iter().map(|r| r.initial_pn_product).collect();
            assert_eq!(
                pns,
                recs[..4]
                    .iter()
                    .map(|r| r.initial_pn_product)
                    .collect::<Vec<_>>()
            );
        }
        for r in &recs {
            assert!(r.final_clause_count >= 128);
            assert_eq!(r.final_clause_count - 128, r.conflicts);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let mut params = small(HeuristicConfig::comparison_lineup(), 3);
        let seq = run_matrix(&params, |_| {}).unwrap();
        params.jobs = 3;
        let par = run_matrix(&params, |_| {}).unwrap();
        let strip = |v: &[BenchRecord]| {
            v.iter()
                .map(|r| BenchRecord {
                    wall_time_s: 0.0,
                    ..r.clone()
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&seq), strip(&par));
    }

    #[test]
    fn rejects_empty_runs() {
        assert!(matches!(
            run_matrix(&small(HeuristicConfig::comparison_lineup(), 0), |_| {}),
            Err(BenchError::NoRepetitions)
        ));
        assert!(matches!(
            run_matrix(&small(vec![], 1), |_| {}),
            Err(BenchError::NoHeuristics)
        ));
    }

    #[test]
    fn indeterminate_is_recorded() {
        let mut params = small(vec![HeuristicConfig::new(HeuristicKind::Dlis)], 3);
        params.num_vars = 60;
        params.num_clauses = 256;
        params.conflict_budget = Some(1);
        let recs = run_matrix(&params, |_| {}).unwrap();
        assert!(recs.iter().any(|r| r.status == RunStatus::Indeterminate));
    }

    #[test]
    fn csv_schema() {
        let recs = run_matrix(
            &small(vec![HeuristicConfig::new(HeuristicKind::PnProd)], 2),
            |_| {},
        )
        .unwrap();
        let csv = records_csv(&recs);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("heuristic,instance_seed,status,final_clauses,conflicts,decisions,initial_pn_product,wall_time_s")
        );
        assert!(lines.next().unwrap().starts_with("pnprod,7,"));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn pairs_by_seed() {
        let recs = run_matrix(&small(HeuristicConfig::comparison_lineup(), 3), |_| {}).unwrap();
        let (a, b) = paired_counts(&recs, "pnprod-decay", "dlis");
        assert_eq!((a.len(), b.len()), (3, 3));
    }
}
