use num_traits::NumCast;

use crate::formula::Literal;
use crate::scalar::Real;

/// Per-literal additive counters with periodic division.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivityTable<T> {
    activity: Vec<T>,
    decay_divisor: T,
    decay_period: u64,
}

impl<T: Real> ActivityTable<T> {
    /// Panics unless `decay_divisor > 1` and `decay_period >= 1`.
    pub fn new(num_vars: u32, decay_divisor: f64, decay_period: u64) -> Self {
        assert!(decay_divisor > 1.0, "decay divisor must exceed 1");
        assert!(decay_period >= 1, "decay period must be positive");
        ActivityTable {
            activity: vec![T::zero(); 2 * num_vars as usize],
            decay_divisor: <T as NumCast>::from(decay_divisor).expect("divisor representable"),
            decay_period,
        }
    }

    #[inline]
    pub fn get(&self, lit: Literal) -> T {
        self.activity[lit.code()]
    }

    pub fn decay_period(&self) -> u64 {
        self.decay_period
    }

    /// Bumps every literal of a newly added clause by one.
    pub fn on_clause_added(&mut self, literals: &[Literal]) {
        for lit in literals {
            let a = &mut self.activity[lit.code()];
            *a = *a + T::one();
        }
    }

    /// Divides every counter by the decay divisor.
    pub fn decay(&mut self) {
        for a in &mut self.activity {
            *a = *a / self.decay_divisor;
        }
    }

    /// Decays if `conflicts` is a multiple of the period.
    pub fn on_conflict(&mut self, conflicts: u64) -> bool {
        let due = conflicts > 0 && conflicts.is_multiple_of(self.decay_period);
        if due {
            self.decay();
        }
        due
    }

    pub fn values(&self) -> &[T] {
        &self.activity
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bumps_on_load() {
        let mut t = ActivityTable::<f64>::new(2, 2.0, 256);
        assert!(t.values().iter().all(|&a| a == 0.0));
        t.on_clause_added(&[Literal::positive(1), Literal::negative(2)]);
        assert_eq!(t.values(), &[1.0, 0.0, 0.0, 1.0]);
        t.on_clause_added(&[Literal::positive(1), Literal::negative(2)]);
        assert_eq!(t.get(Literal::positive(1)), 2.0);
        assert_eq!(t.get(Literal::negative(2)), 2.0);
    }

    #[test]
    fn decay_divides() {
        let mut t = ActivityTable::<f32>::new(1, 2.0, 3);
        for _ in 0..5 {
            t.on_clause_added(&[Literal::positive(1)]);
        }
        for _ in 0..3 {
            t.on_clause_added(&[Literal::negative(1)]);
        }
        t.decay();
        assert_eq!(t.values(), &[2.5, 1.5]);

        let mut zero = ActivityTable::<f64>::new(3, 2.0, 1);
        zero.decay();
        assert!(zero.values().iter().all(|&a| a == 0.0));
    }

    #[test]
    fn periodic_schedule() {
        let mut t = ActivityTable::<f64>::new(1, 4.0, 3);
        t.on_clause_added(&[Literal::positive(1)]);
        assert!(!t.on_conflict(1));
        assert!(!t.on_conflict(2));
        assert!(t.on_conflict(3));
        assert_eq!(t.get(Literal::positive(1)), 0.25);
    }

    #[test]
    #[should_panic]
    fn divisor_must_exceed_one() {
        ActivityTable::<f64>::new(1, 1.0, 1);
    }
}
