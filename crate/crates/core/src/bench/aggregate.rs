use std::fmt::Write as _;

use super::{BenchRecord, RunStatus};

/// Summary of final clause counts for one heuristic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregateStats {
    pub maximum: u64,
    pub mean: f64,
    /// Average of the two middle values when the count is even.
    pub median: f64,
    pub n_runs: usize,
}

impl AggregateStats {
    /// `None` for an empty slice.
    pub fn from_counts(counts: &[u64]) -> Option<Self> {
        if counts.is_empty() {
            return None;
        }
        let mut sorted = counts.to_vec();
        sorted.sort_unstable();
        let n = sorted.len();
        let median = if n % 2 == 1 {
            sorted[n / 2] as f64
        } else {
            (sorted[n / 2 - 1] as f64 + sorted[n / 2] as f64) / 2.0
        };
        let sum: u128 = sorted.iter().map(|&c| c as u128).sum();
        Some(AggregateStats {
            maximum: sorted[n - 1],
            mean: sum as f64 / n as f64,
            median,
            n_runs: n,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicSummary {
    pub heuristic: String,
    /// `None` when every run of this heuristic was excluded.
    pub stats: Option<AggregateStats>,
    /// Indeterminate runs left out of `stats`.
    pub excluded: usize,
}

/// Groups records by heuristic label (first-appearance order) and summarizes
/// final clause counts, excluding indeterminate runs.
pub fn aggregate(records: &[BenchRecord]) -> Vec<HeuristicSummary> {
    let mut labels: Vec<&str> = Vec::new();
    for r in records {
        if !labels.contains(&r.heuristic.as_str()) {
            labels.push(&r.heuristic);
        }
    }
    labels
        .into_iter()
        .map(|label| {
            let group = records.iter().filter(|r| r.heuristic == label);
            let (decided, excluded): (Vec<&BenchRecord>, Vec<&BenchRecord>) =
                group.partition(|r| r.status != RunStatus::Indeterminate);
            let counts: Vec<u64> = decided.iter().map(|r| r.final_clause_count).collect();
            HeuristicSummary {
                heuristic: label.to_string(),
                stats: AggregateStats::from_counts(&counts),
                excluded: excluded.len(),
            }
        })
        .collect()
}

/// Heuristics as columns; maximum, average and median as rows.
pub fn markdown_table(summaries: &[HeuristicSummary]) -> String {
    let mut out = String::from("|         |");
    for s in summaries {
        write!(out, " {} |", s.heuristic).unwrap();
    }
    out.push_str("\n|---|");
    for _ in summaries {
        out.push_str("---|");
    }
    out.push('\n');
    let row = |out: &mut String, name: &str, f: &dyn Fn(&AggregateStats) -> String| {
        write!(out, "| {name} |").unwrap();
        for s in summaries {
            let cell = s.stats.as_ref().map(f).unwrap_or_else(|| "n/a".into());
            write!(out, " {cell} |").unwrap();
        }
        out.push('\n');
    };
    row(&mut out, "maximum", &|a| a.maximum.to_string());
    row(&mut out, "average", &|a| format!("{:.3}", a.mean));
    row(&mut out, "median", &|a| format!("{:.1}", a.median));
    if summaries.iter().any(|s| s.excluded > 0) {
        write!(out, "| excluded |").unwrap();
        for s in summaries {
            write!(out, " {} |", s.excluded).unwrap();
        }
        out.push('\n');
    }
    out
}
