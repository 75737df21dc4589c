use crate::formula::Literal;
use crate::pn_metrics::PolarityGroups;

/// Per-literal count of unassigned occurrences in unresolved clauses.
///
/// The clause database drives it with one event per (clause, literal) pair:
/// a literal leaves the count when it gets assigned or its clause becomes
/// satisfied, and comes back on the exact reverse events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceTracker {
    counts: Vec<u32>,
}

impl OccurrenceTracker {
    pub fn new(num_vars: u32) -> Self {
        OccurrenceTracker {
            counts: vec![0; 2 * num_vars as usize],
        }
    }

    /// Builds a tracker from precomputed counts (indexed by literal code).
    pub fn from_counts(counts: Vec<u32>) -> Self {
        assert!(counts.len().is_multiple_of(2));
        OccurrenceTracker { counts }
    }

    pub fn num_vars(&self) -> u32 {
        (self.counts.len() / 2) as u32
    }

    #[inline]
    pub fn count(&self, lit: Literal) -> u32 {
        self.counts[lit.code()]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Frequency of the more frequent polarity of `var`.
    #[inline]
    pub fn p(&self, var: u32) -> u32 {
        let (a, b) = self.pair(var);
        a.max(b)
    }

    /// Frequency of the less frequent polarity of `var`.
    #[inline]
    pub fn n(&self, var: u32) -> u32 {
        let (a, b) = self.pair(var);
        a.min(b)
    }

    /// The more frequent polarity; ties give the un-negated literal.
    #[inline]
    pub fn positive_group(&self, var: u32) -> Literal {
        let (a, b) = self.pair(var);
        Literal::new(var, b > a)
    }

    #[inline]
    fn pair(&self, var: u32) -> (u32, u32) {
        let i = 2 * (var as usize - 1);
        (self.counts[i], self.counts[i + 1])
    }

    #[inline]
    pub(crate) fn increment(&mut self, lit: Literal) {
        self.counts[lit.code()] += 1;
    }

    /// Panics on underflow: that means an event was delivered out of order.
    #[inline]
    pub(crate) fn decrement(&mut self, lit: Literal) {
        let c = &mut self.counts[lit.code()];
        *c = c
            .checked_sub(1)
            .unwrap_or_else(|| panic!("occurrence count underflow for literal {lit}"));
    }

    pub fn polarity_groups(&self) -> PolarityGroups {
        let wide: Vec<u64> = self.counts.iter().map(|&c| c as u64).collect();
        PolarityGroups::from_literal_counts(&wide)
    }

    /// `(P, N)` over the current counts.
    pub fn pn_totals(&self) -> (u64, u64) {
        self.counts.chunks_exact(2).fold((0, 0), |(p, n), pair| {
            (
                p + pair[0].max(pair[1]) as u64,
                n + pair[0].min(pair[1]) as u64,
            )
        })
    }

    pub fn pn_product(&self) -> u64 {
        let (p, n) = self.pn_totals();
        p * n
    }
}
