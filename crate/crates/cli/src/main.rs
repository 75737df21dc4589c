use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pnsat::bench::{
    aggregate, markdown_table, paired_counts, paired_sign_test, records_csv, run_matrix,
    solvability_regression, MatrixParams, SolvabilityParams, DEFAULT_CONFLICT_BUDGET,
};
use pnsat::cdcl::TraceEvent;
use pnsat::formula::{emit_dimacs, generate_ksat, parse_dimacs};
use pnsat::heuristics::{
    DEFAULT_COMBO_WEIGHT, DEFAULT_DECAY_DIVISOR, DEFAULT_DECAY_PERIOD, DEFAULT_MOM_K,
};
use pnsat::pn_metrics::{pn_sweep, polarity_groups, sweep_csv};
use pnsat::{HeuristicConfig, HeuristicKind, Limits, SolveError, Solver64, Status, TieBreak};

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;
const EXIT_UNKNOWN: u8 = 30;

#[derive(Parser)]
#[command(
    name = "pnsat",
    version,
    about = "CDCL SAT solver with PN-product branching heuristics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a DIMACS CNF file. Exit code 10 = SAT, 20 = UNSAT, 30 = budget exhausted.
    Solve(SolveArgs),
    /// Generate a uniform random k-SAT instance in DIMACS format.
    Gen(GenArgs),
    /// Compare heuristics on paired random instances.
    Bench(BenchArgs),
    /// Regress solvability on the initial PN product.
    Regress(RegressArgs),
    /// Mean initial PN product over a range of clause counts.
    PnSweep(SweepArgs),
    /// Print the PN product of a DIMACS file.
    Pn { file: PathBuf },
}

#[derive(Args, Clone)]
struct HeuristicArgs {
    /// dlis, vsids, psum, pnprod, momcombo, mom or pnprod-decay
    #[arg(long, default_value = "pnprod-decay")]
    heuristic: String,
    /// Weight c in (p+n)*c + p*n.
    #[arg(long, default_value_t = DEFAULT_COMBO_WEIGHT)]
    combo_weight: u32,
    /// Exponent k in the MOM score.
    #[arg(long, default_value_t = DEFAULT_MOM_K)]
    mom_k: u32,
    #[arg(long, default_value_t = DEFAULT_DECAY_DIVISOR)]
    decay_divisor: f64,
    /// Conflicts between activity decays.
    #[arg(long, default_value_t = DEFAULT_DECAY_PERIOD)]
    decay_period: u64,
    /// index or random; defaults to random for vsids and index otherwise.
    #[arg(long)]
    tie_break: Option<TieBreak>,
}

impl HeuristicArgs {
    fn config(&self) -> Result<HeuristicConfig> {
        let base: HeuristicConfig = self.heuristic.parse()?;
        let kind = match base.kind {
            HeuristicKind::MomCombo { .. } if self.heuristic == "momcombo" => {
                HeuristicKind::MomCombo {
                    weight: self.combo_weight,
                }
            }
            HeuristicKind::Mom { .. } if self.heuristic == "mom" => {
                HeuristicKind::Mom { k_exp: self.mom_k }
            }
            k => k,
        };
        self.apply(HeuristicConfig::new(kind))
    }

    fn apply(&self, cfg: HeuristicConfig) -> Result<HeuristicConfig> {
        if self.decay_divisor.is_nan() || self.decay_divisor <= 1.0 {
            bail!("--decay-divisor must be greater than 1");
        }
        if self.decay_period == 0 {
            bail!("--decay-period must be at least 1");
        }
        let cfg = cfg.with_decay(self.decay_divisor, self.decay_period);
        Ok(match self.tie_break {
            Some(t) => cfg.with_tie_break(t),
            None => cfg,
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[command(flatten)]
    heuristic: HeuristicArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of conflicts.
    #[arg(long)]
    budget: Option<u64>,
    /// Write a per-decision/per-conflict CSV trace here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(short = 'n')]
    vars: u32,
    #[arg(short = 'm')]
    clauses: usize,
    #[arg(short = 'k', default_value_t = 3)]
    clause_len: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(short = 'n', default_value_t = 100)]
    vars: u32,
    #[arg(short = 'm', default_value_t = 426)]
    clauses: usize,
    #[arg(short = 'k', default_value_t = 3)]
    clause_len: u32,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    /// Comma-separated labels, e.g. dlis,momcombo-4,mom-2. Defaults to the seven-way comparison.
    #[arg(long, value_delimiter = ',')]
    heuristics: Option<Vec<String>>,
    #[arg(long, default_value_t = DEFAULT_DECAY_DIVISOR)]
    decay_divisor: f64,
    #[arg(long, default_value_t = DEFAULT_DECAY_PERIOD)]
    decay_period: u64,
    #[arg(long)]
    tie_break: Option<TieBreak>,
    /// Instance seeds are seed, seed+1, ...
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CONFLICT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Per-run CSV; stdout when omitted.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Markdown summary table; stderr when omitted.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args)]
struct RegressArgs {
    #[arg(short = 'n', default_value_t = 100)]
    vars: u32,
    #[arg(short = 'm', default_value_t = 426)]
    clauses: usize,
    #[arg(short = 'k', default_value_t = 3)]
    clause_len: u32,
    #[arg(long, default_value_t = 1000)]
    instances: usize,
    #[command(flatten)]
    heuristic: HeuristicArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CONFLICT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Regression CSV; stdout when omitted.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Per-instance CSV of (seed, initial PN product, solvable).
    #[arg(long)]
    points: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(short = 'n', default_value_t = 100)]
    vars: u32,
    #[arg(short = 'k', default_value_t = 3)]
    clause_len: u32,
    /// start:end:step, inclusive.
    #[arg(long = "m", default_value = "100:800:100", value_parser = parse_range)]
    m: ClauseCounts,
    #[arg(long, default_value_t = 30)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Debug)]
struct ClauseCounts(Vec<usize>);

fn parse_range(s: &str) -> Result<ClauseCounts, String> {
    let parts: Vec<usize> = s
        .split(':')
        .map(|p| p.parse().map_err(|_| format!("bad number {p:?} in {s:?}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [single] => Ok(ClauseCounts(vec![single])),
        [start, end, step] if step > 0 && start <= end => {
            Ok(ClauseCounts((start..=end).step_by(step).collect()))
        }
        _ => Err(format!("expected start:end:step, got {s:?}")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Gen(a) => {
            let f = generate_ksat(a.vars, a.clauses, a.clause_len, a.seed)?;
            write_output(a.output.as_deref(), &emit_dimacs(&f))?;
            Ok(0)
        }
        Command::Bench(a) => bench(a),
        Command::Regress(a) => regress(a),
        Command::PnSweep(a) => {
            let points = pn_sweep(a.vars, a.clause_len, &a.m.0, a.reps, a.seed)?;
            write_output(a.output.as_deref(), &with_cmd_line(&sweep_csv(&points)))?;
            Ok(0)
        }
        Command::Pn { file } => {
            let parsed = read_cnf(&file)?;
            let groups = polarity_groups(&parsed.formula, None);
            eprintln!("P = {}, N = {}", groups.total_pos, groups.total_neg);
            println!("{}", groups.pn_product());
            Ok(0)
        }
    }
}

fn read_cnf(path: &Path) -> Result<pnsat::formula::ParsedCnf> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_dimacs(&text).with_context(|| format!("cannot parse {}", path.display()))
}

/// Prefixes CSV output with the command line that produced it.
fn with_cmd_line(csv: &str) -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("# cmd: pnsat {}\n{csv}", args.join(" "))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("cannot write to stdout"),
    }
}

fn solve(a: SolveArgs) -> Result<u8> {
    let parsed = read_cnf(&a.file)?;
    if parsed.dropped_tautologies > 0 {
        eprintln!(
            "c dropped {} tautological clauses",
            parsed.dropped_tautologies
        );
    }
    let cfg = a.heuristic.config()?;
    let limits = Limits {
        max_conflicts: a.budget,
        ..Limits::default()
    };
    let mut solver = Solver64::new(&parsed.formula, cfg, a.seed);
    let outcome = match &a.trace {
        Some(path) => {
            let mut trace = format!("{}\n", TraceEvent::CSV_HEADER);
            let mut record = |e: &TraceEvent| {
                trace.push_str(&e.csv_row());
                trace.push('\n');
            };
            let outcome = solver.solve_traced(&limits, Some(&mut record));
            write_output(Some(path), &with_cmd_line(&trace))?;
            outcome
        }
        None => solver.solve(&limits),
    };

    let mut out = String::new();
    let (code, stats) = match outcome {
        Ok(r) => {
            match r.status {
                Status::Sat => {
                    out.push_str("s SATISFIABLE\n");
                    let model = r.model.as_ref().expect("SAT result carries a model");
                    let lits: Vec<String> = (1..=parsed.formula.num_vars())
                        .map(|v| {
                            let value = model.value(v).unwrap_or(false);
                            (if value { v as i64 } else { -(v as i64) }).to_string()
                        })
                        .collect();
                    for chunk in lits.chunks(10) {
                        out.push_str(&format!("v {}\n", chunk.join(" ")));
                    }
                    out.push_str("v 0\n");
                }
                Status::Unsat => out.push_str("s UNSATISFIABLE\n"),
            }
            (
                if r.status == Status::Sat {
                    EXIT_SAT
                } else {
                    EXIT_UNSAT
                },
                r.stats,
            )
        }
        Err(SolveError::Indeterminate { stats }) => {
            out.push_str("s UNKNOWN\n");
            (EXIT_UNKNOWN, stats)
        }
    };
    print!("{out}");
    println!("c heuristic {cfg}");
    println!("c decisions {}", stats.decisions);
    println!("c propagations {}", stats.propagations);
    println!("c conflicts {}", stats.conflicts);
    println!("c learned_clauses {}", stats.learned_clauses);
    println!("c final_clauses {}", stats.final_clause_count);
    println!("c max_decision_level {}", stats.max_decision_level);
    Ok(code)
}

fn bench(a: BenchArgs) -> Result<u8> {
    let knobs = HeuristicArgs {
        heuristic: String::new(),
        combo_weight: DEFAULT_COMBO_WEIGHT,
        mom_k: DEFAULT_MOM_K,
        decay_divisor: a.decay_divisor,
        decay_period: a.decay_period,
        tie_break: a.tie_break,
    };
    let heuristics = match &a.heuristics {
        Some(labels) => labels
            .iter()
            .map(|l| knobs.apply(l.trim().parse::<HeuristicConfig>()?))
            .collect::<Result<Vec<_>>>()?,
        None => HeuristicConfig::comparison_lineup()
            .into_iter()
            .map(|c| knobs.apply(c))
            .collect::<Result<_>>()?,
    };
    let params = MatrixParams {
        num_vars: a.vars,
        num_clauses: a.clauses,
        clause_len: a.clause_len,
        repetitions: a.reps,
        heuristics,
        seed0: a.seed,
        conflict_budget: Some(a.budget),
        jobs: a.jobs,
    };
    let records = run_matrix(&params, |_| {})?;
    write_output(a.output.as_deref(), &with_cmd_line(&records_csv(&records)))?;

    let summaries = aggregate(&records);
    let table = markdown_table(&summaries);
    match &a.summary {
        Some(path) => write_output(Some(path), &table)?,
        None => eprint!("{table}"),
    }
    let labels: Vec<&str> = summaries.iter().map(|s| s.heuristic.as_str()).collect();
    if labels.contains(&"pnprod-decay") && labels.contains(&"dlis") {
        let (x, y) = paired_counts(&records, "pnprod-decay", "dlis");
        let t = paired_sign_test(&x, &y);
        match t.one_sided_p {
            Some(p) => eprintln!(
                "sign test pnprod-decay < dlis: {} wins, {} losses, {} ties, one-sided p = {p:.4}",
                t.wins_a, t.wins_b, t.ties
            ),
            None => eprintln!("sign test pnprod-decay < dlis: all {} pairs tied", t.ties),
        }
    }
    Ok(0)
}

fn regress(a: RegressArgs) -> Result<u8> {
    let params = SolvabilityParams {
        num_vars: a.vars,
        num_clauses: a.clauses,
        clause_len: a.clause_len,
        instances: a.instances,
        seed0: a.seed,
        conflict_budget: Some(a.budget),
        heuristic: a.heuristic.config()?,
        jobs: a.jobs,
    };
    let out = solvability_regression(&params)?;
    if let Some(w) = out.warning() {
        eprintln!("{w}");
    }
    eprintln!("{} of {} instances excluded", out.excluded, out.total);
    write_output(a.output.as_deref(), &with_cmd_line(&out.regression_csv()))?;
    if let Some(path) = &a.points {
        write_output(Some(path), &with_cmd_line(&out.points_csv()))?;
    }
    Ok(0)
}
