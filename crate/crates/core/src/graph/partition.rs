use crate::error::{Error, Result};

/// Assignment of every vertex to one of `K` communities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from per-vertex labels in `0..K`; every label in
    /// that range must be used.
    pub fn from_labels(labels: Vec<usize>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidPartition("no vertices".into()));
        }
        let k = labels.iter().max().map_or(0, |&m| m + 1);
        let mut members = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            members[l].push(v);
        }
        if let Some(empty) = members.iter().position(|m| m.is_empty()) {
            return Err(Error::InvalidPartition(format!("community {empty} is empty")));
        }
        Ok(Self { labels, members })
    }

    /// Contiguous blocks: the first `sizes[0]` vertices form community 0, the
    /// next `sizes[1]` community 1, and so on.
    pub fn contiguous(sizes: &[usize]) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::InvalidPartition("community sizes must be positive".into()));
        }
        let labels = sizes
            .iter()
            .enumerate()
            .flat_map(|(k, &s)| std::iter::repeat_n(k, s))
            .collect();
        Self::from_labels(labels)
    }

    /// The one-block partition.
    pub fn trivial(n: usize) -> Self {
        Self::from_labels(vec![0; n]).expect("n >= 1")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn members(&self, community: usize) -> &[usize] {
        &self.members[community]
    }

    pub fn size(&self, community: usize) -> usize {
        self.members[community].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// Index of the smallest community (lowest index on ties).
    pub fn smallest(&self) -> usize {
        (0..self.k()).min_by_key(|&c| (self.size(c), c)).expect("K >= 1")
    }

    /// Index of the largest community (lowest index on ties).
    pub fn largest(&self) -> usize {
        (0..self.k())
            .max_by_key(|&c| (self.size(c), std::cmp::Reverse(c)))
            .expect("K >= 1")
    }
}
