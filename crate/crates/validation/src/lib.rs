//! Bookkeeping for acceptance runs: timed criteria with one-line verdicts.

use std::fmt;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} [{:.2} s of {:.0} s]",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs_f64()
        )
    }
}

/// Runs `check`, which returns its verdict and a detail line. The outcome
/// also fails if the run takes longer than `limit`.
pub fn timed<F>(id: &'static str, limit: Duration, check: F) -> Outcome
where
    F: FnOnce() -> (bool, String),
{
    let start = Instant::now();
    let (ok, detail) = check();
    let elapsed = start.elapsed();
    Outcome {
        id,
        passed: ok && elapsed <= limit,
        detail,
        elapsed,
        limit,
    }
}

/// Least-squares slope of ln y against ln x.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}
