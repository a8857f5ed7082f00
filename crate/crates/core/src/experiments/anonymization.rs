use serde::{Deserialize, Serialize};

use super::TraceRecord;
use crate::stats::median;

/// Estimated `β`-anonymization time of one correctness series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnonymizationEstimate {
    pub beta: f64,
    /// First checkpoint step opening a window of `persistence` consecutive
    /// checkpoints that all shuffle more than `n^β` non-seed vertices.
    pub t_hat: Option<u64>,
    pub persistence: usize,
}

fn shuffled(correctness: f64, n_free: usize) -> f64 {
    ((1.0 - correctness) * n_free as f64).round()
}

/// Whether a checkpoint with this correctness shuffles more than `n^β` of the
/// `n_free` non-seed vertices.
pub(crate) fn exceeds(correctness: f64, n: usize, n_free: usize, beta: f64) -> bool {
    shuffled(correctness, n_free) > (n as f64).powf(beta)
}

fn detect<I>(series: I, n: usize, n_free: usize, beta: f64, persistence: usize) -> AnonymizationEstimate
where
    I: Iterator<Item = (u64, f64)>,
{
    let persistence = persistence.max(1);
    let mut run = 0;
    let mut start = None;
    let mut t_hat = None;
    for (step, c) in series {
        if exceeds(c, n, n_free, beta) {
            if run == 0 {
                start = Some(step);
            }
            run += 1;
            if run == persistence {
                t_hat = start;
                break;
            }
        } else {
            run = 0;
        }
    }
    AnonymizationEstimate { beta, t_hat, persistence }
}

/// Anonymization time of the overall correctness series. The shuffle count
/// at a checkpoint is `round((1 − correctness) · n_free)`.
pub fn detect_anonymization(
    trace: &[TraceRecord],
    n: usize,
    n_free: usize,
    beta: f64,
    persistence: usize,
) -> AnonymizationEstimate {
    detect(trace.iter().map(|r| (r.step, r.correctness)), n, n_free, beta, persistence)
}

/// Anonymization time of community `k`, with `n_k` its size and `n_free_k`
/// its number of non-seed vertices. Records without per-community data never
/// count as anonymized.
pub fn detect_community(
    trace: &[TraceRecord],
    k: usize,
    n_k: usize,
    n_free_k: usize,
    beta: f64,
    persistence: usize,
) -> AnonymizationEstimate {
    let series = trace
        .iter()
        .map(|r| (r.step, r.per_community.as_ref().and_then(|c| c.get(k).copied()).unwrap_or(1.0)));
    detect(series, n_k, n_free_k, beta, persistence)
}

/// Median over replicates where a missing estimate counts as `+∞`; `None` if
/// the median itself is infinite.
pub fn median_t_hat(estimates: &[Option<u64>]) -> Option<f64> {
    if estimates.is_empty() {
        return None;
    }
    let xs: Vec<f64> = estimates.iter().map(|t| t.map_or(f64::INFINITY, |t| t as f64)).collect();
    let m = median(&xs);
    m.is_finite().then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace(points: &[(u64, f64)]) -> Vec<TraceRecord> {
        points
            .iter()
            .map(|&(step, correctness)| TraceRecord { step, correctness, cover_rate: 0.0, per_community: None, objective: 0 })
            .collect()
    }

    #[test]
    fn constant_traces() {
        let ones = trace(&[(0, 1.0), (10, 1.0), (20, 1.0)]);
        assert_eq!(detect_anonymization(&ones, 100, 95, 0.5, 1).t_hat, None);
        let zeros = trace(&[(5, 0.0), (10, 0.0)]);
        assert_eq!(detect_anonymization(&zeros, 100, 95, 0.5, 1).t_hat, Some(5));
    }

    #[test]
    fn transient_dip_ignored() {
        // n = 100, 100 free: anonymized once more than 10 vertices are wrong
        let mut pts: Vec<(u64, f64)> = (0..=12).map(|i| (i * 60, 0.95)).collect();
        pts[5].1 = 0.5; // step 300, one checkpoint only
        for p in pts.iter_mut().filter(|p| p.0 >= 480) {
            p.1 = 0.8;
        }
        let est = detect_anonymization(&trace(&pts), 100, 100, 0.5, 3);
        assert_eq!(est.t_hat, Some(480));
        assert_eq!(detect_anonymization(&trace(&pts), 100, 100, 0.5, 1).t_hat, Some(300));
    }

    #[test]
    fn window_must_complete() {
        let t = trace(&[(0, 1.0), (1, 0.0), (2, 0.0)]);
        assert_eq!(detect_anonymization(&t, 16, 16, 0.5, 3).t_hat, None);
    }

    #[test]
    fn medians_with_missing() {
        assert_eq!(median_t_hat(&[Some(3), None, Some(1)]), Some(3.0));
        assert_eq!(median_t_hat(&[None, None, Some(1)]), None);
        assert_eq!(median_t_hat(&[Some(2), Some(4)]), Some(3.0));
    }
}
