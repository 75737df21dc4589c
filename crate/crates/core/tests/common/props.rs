use pnsat::cdcl::{ClauseRef, Step};
use pnsat::formula::{generate_ksat, seeded_rng};
use pnsat::heuristics::pick_branch;
use pnsat::pn_metrics::predicted_new_pn_product;
use pnsat::{
    ActivityTable64, HeuristicConfig, HeuristicKind, Limits, Solver, Solver32, Solver64, Status,
    TieBreak,
};

fn instance(n: u32, seed: u64) -> pnsat::CnfFormula {
    let m = (4.26 * n as f64).round() as usize;
    generate_ksat(n, m, 3, seed).unwrap()
}

/// Steps a solver to completion, calling `at_decision` before every
/// decision and `at_conflict` after every learned clause is added.
fn drive(
    solver: &mut Solver64,
    mut at_decision: impl FnMut(&Solver64),
    mut at_conflict: impl FnMut(&Solver64, ClauseRef, u32),
) -> Status {
    loop {
        if let Some(c) = solver.propagate() {
            match solver.resolve_conflict(c) {
                Step::Conflict(info) => at_conflict(solver, info.learned, info.level),
                Step::Finished(s) => return s,
                Step::Decision(_) => unreachable!(),
            }
            continue;
        }
        if solver.db().unresolved_count() > 0 {
            at_decision(solver);
        }
        match solver.step() {
            Step::Decision(_) => {}
            Step::Finished(s) => return s,
            Step::Conflict(_) => unreachable!("propagation already at fixpoint"),
        }
    }
}

pub fn tracker_matches_recount_at_every_decision() {
    let mut checked = 0usize;
    for seed in 0..120u64 {
        let n = 10 + (seed % 21) as u32;
        let f = instance(n, seed);
        let kind = HeuristicConfig::all_kinds()[seed as usize % 8];
        let mut solver = Solver64::new(&f, kind, seed);
        drive(
            &mut solver,
            |s| {
                assert_eq!(s.db().tracker(), &s.db().recount_tracker(), "seed {seed}");
                checked += 1;
            },
            |s, _, _| assert_eq!(s.db().tracker(), &s.db().recount_tracker()),
        );
    }
    assert!(checked > 500);
}

pub fn learned_clauses_are_asserting() {
    for seed in 0..100u64 {
        let f = instance(40, seed);
        let cfg = HeuristicConfig::comparison_lineup()[seed as usize % 7];
        let mut solver = Solver64::new(&f, cfg, seed);
        drive(
            &mut solver,
            |_| {},
            |s, cref, level| {
                let db = s.db();
                let lits = db.clause(cref).literals();
                let free: Vec<_> = lits.iter().filter(|l| db.value(**l).is_none()).collect();
                assert_eq!(
                    free.len(),
                    1,
                    "seed {seed}: learned clause {lits:?} is not unit"
                );
                assert!(lits.iter().all(|l| db.value(*l) != Some(true)));
                assert!(s.decision_level() < level);
            },
        );
    }
}

pub fn learned_clauses_are_implied() {
    for seed in 0..60u64 {
        let n = 8 + (seed % 8) as u32;
        let f = instance(n, 1000 + seed);
        let models = super::models(&f);
        for cfg in HeuristicConfig::all_kinds() {
            let mut solver = Solver64::new(&f, cfg, seed);
            drive(&mut solver, |_| {}, |_, _, _| {});
            for c in &solver.db().clauses()[f.clause_count()..] {
                assert!(c.is_learned());
                assert!(
                    models.iter().all(|&m| super::clause_holds(c, m)),
                    "seed {seed} {cfg}: learned {:?} not implied",
                    c.literals()
                );
            }
        }
    }
}

pub fn decay_preserves_argmax() {
    for kind in [HeuristicKind::Vsids, HeuristicKind::PnProdDecay] {
        for tie in [TieBreak::ByIndex, TieBreak::SeededRandom] {
            let cfg = HeuristicConfig::new(kind)
                .with_tie_break(tie)
                .with_decay(2.0, 4);
            for seed in 0..30u64 {
                let f = instance(50, seed);
                let mut solver = Solver64::new(&f, cfg, seed);
                let mut decisions = 0;
                drive(
                    &mut solver,
                    |s| {
                        let table = s.activities().unwrap();
                        let mut decayed = table.clone();
                        decayed.decay();
                        let a = pick_branch(&cfg, s.db(), table, &mut seeded_rng(decisions));
                        let b = pick_branch(&cfg, s.db(), &decayed, &mut seeded_rng(decisions));
                        assert_eq!(a, b, "{cfg} seed {seed}");
                        decisions += 1;
                    },
                    |_, _, _| {},
                );
            }
        }
    }
}

pub fn pnprod_pick_beats_dominated_candidates() {
    let cfg = HeuristicConfig::new(HeuristicKind::PnProd);
    for seed in 0..40u64 {
        let f = instance(60, seed);
        let mut solver = Solver64::new(&f, cfg, seed);
        let empty = ActivityTable64::new(f.num_vars(), 2.0, 256);
        drive(
            &mut solver,
            |s| {
                let db = s.db();
                let t = db.tracker();
                let Some(pick) = pick_branch(&cfg, db, &empty, &mut seeded_rng(0)) else {
                    return;
                };
                let (big_p, big_n) = t.pn_totals();
                let sel = pick.var();
                let (sp, sn) = (t.p(sel) as u64, t.n(sel) as u64);
                if sp * sn == 0 {
                    return;
                }
                let k = 3.0f64;
                let est = |p: u64, n: u64| predicted_new_pn_product(big_p, big_n, p, n, k).unwrap();
                let spill = sp as f64 * (k - 1.0) / (big_p + big_n) as f64;
                if (big_p as f64) * (1.0 - spill) < sp as f64
                    || (big_n as f64) * (1.0 - spill) < sn as f64
                {
                    return;
                }
                for v in 1..=db.num_vars() {
                    let (p, n) = (t.p(v) as u64, t.n(v) as u64);
                    if p == 0 || db.is_assigned(v) {
                        continue;
                    }
                    assert!(p * n <= sp * sn);
                    if p <= sp && n <= sn {
                        assert!(
                            est(sp, sn) <= est(p, n) + 1e-9,
                            "seed {seed}: var {v} beats pick {sel}"
                        );
                    }
                }
            },
            |_, _, _| {},
        );
    }
}

pub fn f32_and_f64_agree_on_status() {
    for seed in 0..40u64 {
        let f = instance(40, seed);
        for kind in [HeuristicKind::Vsids, HeuristicKind::PnProdDecay] {
            let cfg = HeuristicConfig::new(kind);
            let a = Solver32::new(&f, cfg, seed)
                .solve(&Limits::default())
                .unwrap();
            let b = Solver64::new(&f, cfg, seed)
                .solve(&Limits::default())
                .unwrap();
            assert_eq!(a.status, b.status);
            if let Some(m) = &a.model {
                assert!(super::model_satisfies(&f, m));
            }
        }
    }
}

pub fn runs_are_reproducible() {
    for seed in 0..20u64 {
        let f = instance(60, seed);
        for cfg in HeuristicConfig::all_kinds() {
            let a = Solver::<f64>::new(&f, cfg, seed)
                .solve(&Limits::default())
                .unwrap();
            let b = Solver::<f64>::new(&f, cfg, seed)
                .solve(&Limits::default())
                .unwrap();
            assert_eq!(a.stats, b.stats);
            assert_eq!(a.model, b.model);
        }
    }
}

pub fn generator_is_deterministic_and_fair() {
    for seed in 0..20 {
        assert_eq!(instance(50, seed).clauses(), instance(50, seed).clauses());
    }
    assert_ne!(instance(50, 1).clauses(), instance(50, 2).clauses());
    let (mut neg, mut total) = (0usize, 0usize);
    for seed in 0..10 {
        let f = generate_ksat(100, 426, 3, seed).unwrap();
        for c in f.clauses() {
            neg += c.literals().iter().filter(|l| l.is_negative()).count();
            total += c.len();
        }
    }
    assert!(total >= 10_000);
    let frac = neg as f64 / total as f64;
    assert!((frac - 0.5).abs() <= 0.02, "negative fraction {frac}");
}
