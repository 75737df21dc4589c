use std::fmt::Write as _;

use rayon::prelude::*;

use super::{run_one, BenchError, RunStatus, DEFAULT_CONFLICT_BUDGET};
use crate::formula::generate_ksat;
use crate::heuristics::{HeuristicConfig, HeuristicKind};
use crate::pn_metrics::{ols_simple, RegressionResult};

pub const MIN_INSTANCES: usize = 30;

#[derive(Debug, Clone)]
pub struct SolvabilityParams {
    pub num_vars: u32,
    pub num_clauses: usize,
    pub clause_len: u32,
    pub instances: usize,
    pub seed0: u64,
    pub conflict_budget: Option<u64>,
    /// Heuristic that decides solvability.
    pub heuristic: HeuristicConfig,
    pub jobs: usize,
}

impl SolvabilityParams {
    /// 1,000 instances of 100 variables / 426 clauses, labelled with pnprod-decay.
    pub fn standard() -> Self {
        SolvabilityParams {
            num_vars: 100,
            num_clauses: 426,
            clause_len: 3,
            instances: 1000,
            seed0: 0,
            conflict_budget: Some(DEFAULT_CONFLICT_BUDGET),
            heuristic: HeuristicConfig::new(HeuristicKind::PnProdDecay),
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolvabilityOutcome {
    pub regression: RegressionResult<f64>,
    /// `(instance_seed, initial_pn_product, solvable)` for decided instances.
    pub points: Vec<(u64, u64, bool)>,
    pub excluded: usize,
    pub total: usize,
}

impl SolvabilityOutcome {
    /// Set when more than 10% of the instances were undecided.
    pub fn warning(&self) -> Option<String> {
        (self.excluded * 10 > self.total).then(|| {
            format!(
                "warning: {} of {} instances hit the budget and were excluded",
                self.excluded, self.total
            )
        })
    }

    /// `slope,intercept,stderr,t,n`.
    pub fn regression_csv(&self) -> String {
        self.regression.to_csv()
    }

    /// `instance_seed,initial_pn_product,solvable`, one row per decided instance.
    pub fn points_csv(&self) -> String {
        let mut out = String::from("instance_seed,initial_pn_product,solvable\n");
        for (seed, pn, sat) in &self.points {
            writeln!(out, "{seed},{pn},{}", *sat as u8).unwrap();
        }
        out
    }
}

/// Regresses solvability (1/0) on the initial PN product over fresh
/// instances with seeds `seed0..seed0 + instances`.
pub fn solvability_regression(
    params: &SolvabilityParams,
) -> Result<SolvabilityOutcome, BenchError> {
    if params.instances < MIN_INSTANCES {
        return Err(BenchError::TooFewInstances {
            min: MIN_INSTANCES,
            got: params.instances,
        });
    }
    let seeds: Vec<u64> = (0..params.instances as u64)
        .map(|i| params.seed0.wrapping_add(i))
        .collect();
    let run = |&seed: &u64| -> Result<_, BenchError> {
        let f = generate_ksat(params.num_vars, params.num_clauses, params.clause_len, seed)?;
        Ok(run_one(&f, seed, &params.heuristic, params.conflict_budget))
    };
    let records: Vec<_> = if params.jobs == 1 {
        seeds.iter().map(run).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(params.jobs)
            .build()?;
        pool.install(|| seeds.par_iter().map(run).collect::<Result<_, _>>())?
    };

    let mut points = Vec::with_capacity(records.len());
    let mut excluded = 0;
    for r in &records {
        match r.status {
            RunStatus::Indeterminate => excluded += 1,
            s => points.push((r.instance_seed, r.initial_pn_product, s == RunStatus::Sat)),
        }
    }
    let xs: Vec<f64> = points.iter().map(|p| p.1 as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| if p.2 { 1.0 } else { 0.0 }).collect();
    let regression = ols_simple(&xs, &ys)?;
    Ok(SolvabilityOutcome {
        regression,
        points,
        excluded,
        total: params.instances,
    })
}
