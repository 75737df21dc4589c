//! Decision literal selection.

use rand::Rng;

use super::{ActivityTable, HeuristicConfig, HeuristicKind, TieBreak};
use crate::cdcl::{ClauseDb, ClauseRef};
use crate::formula::Literal;
use crate::scalar::Real;

/// Running argmax with the configured tie rule. Candidates must be offered
/// in index order (variable, then positive before negative) for `ByIndex`.
struct ArgMax<'r, S, R> {
    best: Option<(S, Literal)>,
    ties: u32,
    rule: TieBreak,
    rng: &'r mut R,
}

impl<'r, S: PartialOrd + Copy, R: Rng> ArgMax<'r, S, R> {
    fn new(rule: TieBreak, rng: &'r mut R) -> Self {
        ArgMax {
            best: None,
            ties: 0,
            rule,
            rng,
        }
    }

    #[inline]
    fn offer(&mut self, score: S, lit: Literal) {
        match self.best {
            Some((best, _)) if score < best => {}
            Some((best, _)) if score == best => {
                if self.rule == TieBreak::SeededRandom {
                    self.ties += 1;
                    if self.rng.gen_range(0..self.ties) == 0 {
                        self.best = Some((score, lit));
                    }
                }
            }
            _ => {
                self.best = Some((score, lit));
                self.ties = 1;
            }
        }
    }

    fn finish(self) -> Option<(S, Literal)> {
        self.best
    }
}

/// Chooses the literal to assert TRUE at the next decision.
///
/// Candidates are unassigned variables with at least one occurrence in an
/// unresolved clause. Returns `None` when there is none, which after
/// propagation means every clause is satisfied.
pub fn pick_branch<T: Real, R: Rng>(
    config: &HeuristicConfig,
    db: &ClauseDb,
    activities: &ActivityTable<T>,
    rng: &mut R,
) -> Option<Literal> {
    let tracker = db.tracker();
    let active = (1..=db.num_vars()).filter(|&v| tracker.p(v) > 0);
    let rule = config.tie_break;
    let choice = match config.kind {
        HeuristicKind::Dlis => {
            let mut best = ArgMax::new(rule, rng);
            for v in active {
                for lit in [Literal::positive(v), Literal::negative(v)] {
                    let c = tracker.count(lit);
                    if c > 0 {
                        best.offer(c, lit);
                    }
                }
            }
            best.finish().map(|(_, l)| l)
        }
        HeuristicKind::Vsids => {
            let mut best = ArgMax::new(rule, rng);
            for v in active {
                for lit in [Literal::positive(v), Literal::negative(v)] {
                    best.offer(activities.get(lit), lit);
                }
            }
            best.finish().map(|(_, l)| l)
        }
        HeuristicKind::Psum => by_counts(db, rule, rng, |p, n| p + n),
        HeuristicKind::PnProd => match by_counts_scored(db, rule, rng, |p, n| p * n) {
            Some((0, _)) => by_counts(db, rule, rng, |p, n| p + n),
            other => other.map(|(_, l)| l),
        },
        HeuristicKind::MomCombo { weight } => {
            by_counts(db, rule, rng, move |p, n| (p + n) * weight as u64 + p * n)
        }
        HeuristicKind::Mom { k_exp } => mom(db, k_exp, rule, rng),
        HeuristicKind::PnProdDecay => {
            let scored = by_activity(db, activities, rule, rng, |a, b| a * b);
            match scored {
                Some((s, _)) if s == T::zero() => {
                    by_activity(db, activities, rule, rng, |a, b| a + b).map(|(_, l)| l)
                }
                other => other.map(|(_, l)| l),
            }
        }
    };
    debug_assert!(choice.is_none_or(|l| !db.is_assigned(l.var())));
    choice
}

fn by_counts<R: Rng>(
    db: &ClauseDb,
    rule: TieBreak,
    rng: &mut R,
    score: impl Fn(u64, u64) -> u64,
) -> Option<Literal> {
    by_counts_scored(db, rule, rng, score).map(|(_, l)| l)
}

/// Scores each active variable from its `(p, n)` and asserts the positive group.
fn by_counts_scored<R: Rng>(
    db: &ClauseDb,
    rule: TieBreak,
    rng: &mut R,
    score: impl Fn(u64, u64) -> u64,
) -> Option<(u64, Literal)> {
    let tracker = db.tracker();
    let mut best = ArgMax::new(rule, rng);
    for v in 1..=db.num_vars() {
        let (p, n) = (tracker.p(v) as u64, tracker.n(v) as u64);
        if p > 0 {
            best.offer(score(p, n), tracker.positive_group(v));
        }
    }
    best.finish()
}

/// Scores each active variable from its two activities and asserts the
/// higher-activity polarity (ties: positive).
fn by_activity<T: Real, R: Rng>(
    db: &ClauseDb,
    activities: &ActivityTable<T>,
    rule: TieBreak,
    rng: &mut R,
    score: impl Fn(T, T) -> T,
) -> Option<(T, Literal)> {
    let tracker = db.tracker();
    let mut best = ArgMax::new(rule, rng);
    for v in 1..=db.num_vars() {
        if tracker.p(v) == 0 {
            continue;
        }
        let (pos, neg) = (Literal::positive(v), Literal::negative(v));
        let (a, b) = (activities.get(pos), activities.get(neg));
        best.offer(score(a, b), if b > a { neg } else { pos });
    }
    best.finish()
}

/// Literal frequencies restricted to the shortest unresolved clauses
/// (length measured in unassigned literals). Indexed by literal code.
pub(crate) fn shortest_clause_counts(db: &ClauseDb) -> Vec<u64> {
    let mut counts = vec![0u64; 2 * db.num_vars() as usize];
    let refs = || {
        (0..db.len() as u32)
            .map(ClauseRef)
            .filter(|&c| db.is_unresolved(c))
    };
    let Some(min_len) = refs().map(|c| db.free_len(c)).min() else {
        return counts;
    };
    for cref in refs().filter(|&c| db.free_len(c) == min_len) {
        for &lit in db.clause(cref).literals() {
            if db.value(lit).is_none() {
                counts[lit.code()] += 1;
            }
        }
    }
    counts
}

/// `(f(x) + f(-x)) * 2^k + f(x) * f(-x)`.
pub fn mom_score(f_pos: u64, f_neg: u64, k_exp: u32) -> u64 {
    (f_pos + f_neg) * (1u64 << k_exp) + f_pos * f_neg
}

fn mom<R: Rng>(db: &ClauseDb, k_exp: u32, rule: TieBreak, rng: &mut R) -> Option<Literal> {
    let counts = shortest_clause_counts(db);
    let mut best = ArgMax::new(rule, rng);
    for (i, pair) in counts.chunks_exact(2).enumerate() {
        let (fp, fn_) = (pair[0], pair[1]);
        if fp + fn_ == 0 {
            continue;
        }
        let var = i as u32 + 1;
        best.offer(mom_score(fp, fn_, k_exp), Literal::new(var, fn_ > fp));
    }
    best.finish().map(|(_, l)| l)
}
