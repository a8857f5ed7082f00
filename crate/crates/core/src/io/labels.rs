use std::collections::BTreeMap;
use std::path::PathBuf;

use super::LoadedGraph;
use crate::error::{Error, Result};
use crate::graph::Partition;

/// `vertex_id label` lines, `#` comments allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelFile {
    pub path: PathBuf,
}

pub fn parse_labels(file: &LabelFile) -> Result<BTreeMap<u64, u64>> {
    parse_labels_str(&std::fs::read_to_string(&file.path)?)
}

pub fn parse_labels_str(text: &str) -> Result<BTreeMap<u64, u64>> {
    let mut labels = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse = |s: &str| s.parse::<u64>().map_err(|_| Error::Parse { line, msg: format!("invalid integer {s:?}") });
        match fields.as_slice() {
            [v, l, ..] => {
                let (v, l) = (parse(v)?, parse(l)?);
                if let Some(old) = labels.insert(v, l) {
                    if old != l {
                        return Err(Error::Parse { line, msg: format!("vertex {v} relabelled from {old} to {l}") });
                    }
                }
            }
            _ => return Err(Error::Parse { line, msg: format!("expected `vertex label`, got {content:?}") }),
        }
    }
    if labels.is_empty() {
        return Err(Error::EmptyInput("label file has no entries".into()));
    }
    Ok(labels)
}

impl LoadedGraph {
    /// Partition of the loaded vertices by label. Labels present among the
    /// retained vertices are renumbered densely in increasing order.
    pub fn partition(&self, labels: &BTreeMap<u64, u64>) -> Result<Partition> {
        let raw: Vec<u64> = self
            .original_ids
            .iter()
            .map(|id| labels.get(id).copied().ok_or_else(|| Error::InvalidPartition(format!("vertex {id} has no label"))))
            .collect::<Result<_>>()?;
        let mut distinct = raw.clone();
        distinct.sort_unstable();
        distinct.dedup();
        Partition::from_labels(raw.iter().map(|l| distinct.binary_search(l).expect("present")).collect())
    }
}
