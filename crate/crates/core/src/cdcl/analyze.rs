use super::{ClauseDb, ClauseRef, Trail};
use crate::formula::Literal;

/// Result of first-UIP conflict analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Learned {
    /// The asserting literal comes first; when there is more than one
    /// literal, the second one has the highest level among the rest.
    pub literals: Vec<Literal>,
    pub backjump_level: u32,
}

impl Learned {
    pub fn asserting_literal(&self) -> Literal {
        self.literals[0]
    }
}

/// Resolves the conflict clause with antecedents of current-level literals,
/// newest first, until a single current-level literal (the first UIP) is left.
/// Literals assigned at level 0 are dropped from the learned clause.
///
/// `seen` is scratch space with one flag per variable, all false on entry and exit.
pub fn analyze_conflict(
    db: &ClauseDb,
    trail: &Trail,
    conflict: ClauseRef,
    seen: &mut [bool],
) -> Learned {
    let level = trail.decision_level();
    assert!(level > 0, "conflicts at level 0 are not analyzed");

    let mut literals = vec![Literal::positive(1)];
    let mut pending = 0usize;
    let mut index = trail.len();
    let mut clause = conflict;
    let mut resolved_on: Option<Literal> = None;

    loop {
        for &q in db.clause(clause).literals() {
            if Some(q) == resolved_on {
                continue;
            }
            let v = q.var_index();
            if seen[v] || trail.level_of(v) == 0 {
                continue;
            }
            seen[v] = true;
            if trail.level_of(v) == level {
                pending += 1;
            } else {
                literals.push(q);
            }
        }
        let entry = loop {
            index -= 1;
            let e = trail.entries()[index];
            if seen[e.literal.var_index()] {
                break e;
            }
        };
        seen[entry.literal.var_index()] = false;
        pending -= 1;
        if pending == 0 {
            literals[0] = !entry.literal;
            break;
        }
        resolved_on = Some(entry.literal);
        clause = entry.reason.expect("only the first UIP can be a decision");
    }

    for l in &literals[1..] {
        seen[l.var_index()] = false;
    }

    let mut backjump_level = 0;
    if literals.len() > 1 {
        let (best, lvl) = literals[1..]
            .iter()
            .enumerate()
            .map(|(i, l)| (i + 1, trail.level_of(l.var_index())))
            .max_by_key(|&(i, lvl)| (lvl, std::cmp::Reverse(i)))
            .expect("nonempty");
        literals.swap(1, best);
        backjump_level = lvl;
    }
    Learned {
        literals,
        backjump_level,
    }
}
