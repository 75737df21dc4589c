//! Simple (one predictor) ordinary least squares.

use thiserror::Error;

use crate::scalar::{from_count, Real};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegressionError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("x and y have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("x has zero variance")]
    DegenerateX,
}

/// Fit of `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionResult<T> {
    pub slope: T,
    pub intercept: T,
    pub slope_stderr: T,
    pub intercept_stderr: T,
    /// `slope / slope_stderr`; `None` when the residual variance is exactly zero.
    pub t_stat: Option<T>,
    pub n_points: usize,
}

impl<T: Real> RegressionResult<T> {
    /// CSV with header `slope,intercept,stderr,t,n`. An undefined t is left empty.
    pub fn to_csv(&self) -> String {
        let t = self.t_stat.map(|t| format!("{t:?}")).unwrap_or_default();
        format!(
            "slope,intercept,stderr,t,n\n{:?},{:?},{:?},{},{}\n",
            self.slope, self.intercept, self.slope_stderr, t, self.n_points
        )
    }
}

pub fn ols_simple<T: Real>(xs: &[T], ys: &[T]) -> Result<RegressionResult<T>, RegressionError> {
    if xs.len() != ys.len() {
        return Err(RegressionError::LengthMismatch(xs.len(), ys.len()));
    }
    let n = xs.len();
    if n < 3 {
        return Err(RegressionError::TooFewPoints(n));
    }
    let count: T = from_count(n as u64);
    let mean_x = xs.iter().fold(T::zero(), |a, &x| a + x) / count;
    let mean_y = ys.iter().fold(T::zero(), |a, &y| a + y) / count;

    let (mut sxx, mut sxy) = (T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        sxx = sxx + dx * dx;
        sxy = sxy + dx * (y - mean_y);
    }
    if sxx == T::zero() {
        return Err(RegressionError::DegenerateX);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let ssr = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = y - intercept - slope * x;
            r * r
        })
        .fold(T::zero(), |a, r| a + r);
    let sigma2 = ssr / from_count::<T>(n as u64 - 2);
    let slope_stderr = (sigma2 / sxx).sqrt();
    let intercept_stderr = (sigma2 * (T::one() / count + mean_x * mean_x / sxx)).sqrt();
    let t_stat = (slope_stderr > T::zero()).then(|| slope / slope_stderr);

    Ok(RegressionResult {
        slope,
        intercept,
        slope_stderr,
        intercept_stderr,
        t_stat,
        n_points: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exact_line() {
        let r = ols_simple(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap();
        assert_relative_eq!(r.slope, 2.0);
        assert_relative_eq!(r.intercept, 0.0, epsilon = 1e-12);
        assert_eq!(r.slope_stderr, 0.0);
        assert_eq!(r.t_stat, None);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            ols_simple(&[0.0, 1.0], &[0.0, 1.0]),
            Err(RegressionError::TooFewPoints(2))
        );
        assert_eq!(
            ols_simple(&[1.0, 1.0, 1.0], &[0.0, 1.0, 2.0]),
            Err(RegressionError::DegenerateX)
        );
        assert!(matches!(
            ols_simple(&[1.0, 2.0, 3.0], &[0.0]),
            Err(RegressionError::LengthMismatch(3, 1))
        ));
    }

    #[test]
    fn constant_response() {
        let r = ols_simple(&[1.0, 5.0, 9.0, 2.0], &[1.0; 4]).unwrap();
        assert_eq!(r.slope, 0.0);
        assert_eq!(r.intercept, 1.0);
        assert_eq!(r.t_stat, None);
    }

    #[test]
    fn matches_textbook_values() {
        // x = 1..5, y = [2, 4, 5, 4, 5]:
        // Sxx = 10, Sxy = 6, b = 0.6, a = 2.2, SSR = 2.4, s^2 = 0.8,
        // se(b) = sqrt(0.08), se(a) = sqrt(0.8 * (1/5 + 9/10)).
        let r = ols_simple(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 4.0, 5.0, 4.0, 5.0]).unwrap();
        assert_relative_eq!(r.slope, 0.6, epsilon = 1e-12);
        assert_relative_eq!(r.intercept, 2.2, epsilon = 1e-12);
        assert_relative_eq!(r.slope_stderr, 0.08f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(r.intercept_stderr, 0.88f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(r.t_stat.unwrap(), 0.6 / 0.08f64.sqrt(), epsilon = 1e-12);

        let r32 = ols_simple(&[1.0f32, 2.0, 3.0, 4.0, 5.0], &[2.0, 4.0, 5.0, 4.0, 5.0]).unwrap();
        assert_relative_eq!(r32.slope, 0.6, epsilon = 1e-5);
    }

    #[test]
    fn csv_layout() {
        let r = ols_simple(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 4.0, 5.0, 4.0, 5.0]).unwrap();
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("slope,intercept,stderr,t,n"));
        assert!(lines.next().unwrap().ends_with(",5"));
        let exact = ols_simple(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0])
            .unwrap()
            .to_csv();
        assert!(exact.lines().nth(1).unwrap().ends_with(",,3"));
    }
}
