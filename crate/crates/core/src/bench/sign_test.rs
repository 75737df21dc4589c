use statrs::distribution::{Binomial, DiscreteCDF};

/// Outcome of a one-sided paired sign test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignTest {
    /// Pairs where `a < b`.
    pub wins_a: usize,
    /// Pairs where `b < a`.
    pub wins_b: usize,
    pub ties: usize,
    /// `P(X >= wins_a)` for `X ~ Binomial(wins_a + wins_b, 1/2)`; `None` if every pair tied.
    pub one_sided_p: Option<f64>,
}

/// Tests whether `a` tends to be smaller than `b` (smaller is better).
///
/// Panics if the slices have different lengths.
pub fn paired_sign_test(a: &[u64], b: &[u64]) -> SignTest {
    assert_eq!(a.len(), b.len(), "sign test needs paired samples");
    let (mut wins_a, mut wins_b, mut ties) = (0, 0, 0);
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Less => wins_a += 1,
            std::cmp::Ordering::Greater => wins_b += 1,
            std::cmp::Ordering::Equal => ties += 1,
        }
    }
    let trials = (wins_a + wins_b) as u64;
    let one_sided_p = (trials > 0).then(|| {
        if wins_a == 0 {
            1.0
        } else {
            let dist = Binomial::new(0.5, trials).expect("valid binomial parameters");
            dist.sf(wins_a as u64 - 1)
        }
    });
    SignTest {
        wins_a,
        wins_b,
        ties,
        one_sided_p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Exact upper tail with integer binomial coefficients.
    fn exact_tail(k: u64, n: u64) -> f64 {
        let choose = |n: u64, j: u64| -> u128 {
            (0..j).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
        };
        let num: u128 = (k..=n).map(|j| choose(n, j)).sum();
        num as f64 / 2f64.powi(n as i32)
    }

    #[test]
    fn fifteen_of_twenty() {
        let a: Vec<u64> = (0..20).map(|i| if i < 15 { 1 } else { 3 }).collect();
        let b = vec![2u64; 20];
        let t = paired_sign_test(&a, &b);
        assert_eq!((t.wins_a, t.wins_b, t.ties), (15, 5, 0));
        let expected = (15504 + 4845 + 1140 + 190 + 20 + 1) as f64 / 1_048_576.0;
        assert_relative_eq!(t.one_sided_p.unwrap(), expected, epsilon = 1e-9);
        assert_relative_eq!(t.one_sided_p.unwrap(), 0.0207, epsilon = 1e-4);
    }

    #[test]
    fn all_ties() {
        let t = paired_sign_test(&[4, 5, 6], &[4, 5, 6]);
        assert_eq!(t.ties, 3);
        assert_eq!(t.one_sided_p, None);
    }

    #[test]
    fn two_wins() {
        let t = paired_sign_test(&[1, 1], &[2, 2]);
        assert_relative_eq!(t.one_sided_p.unwrap(), 0.25, epsilon = 1e-12);
        let t = paired_sign_test(&[3, 3], &[2, 2]);
        assert_eq!(t.one_sided_p, Some(1.0));
    }

    proptest! {
        #[test]
        fn matches_exact_tail(k in 0u64..=60, extra in 0u64..=60) {
            let n = k + extra;
            prop_assume!(n > 0);
            let a: Vec<u64> = (0..n).map(|i| if i < k { 0 } else { 2 }).collect();
            let b = vec![1u64; n as usize];
            let p = paired_sign_test(&a, &b).one_sided_p.unwrap();
            prop_assert!((p - exact_tail(k, n)).abs() < 1e-9);
        }
    }
}
