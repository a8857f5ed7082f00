use serde::{Deserialize, Serialize};

/// Matching quality at one checkpoint of a walk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: u64,
    /// Fraction of non-seed vertices matched to themselves.
    pub correctness: f64,
    /// Fraction of vertex pairs traversed so far.
    pub cover_rate: f64,
    pub per_community: Option<Vec<f64>>,
    /// Exact objective of the returned matching.
    pub objective: u64,
}
