use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A whitespace-separated edge list; lines starting with `#` (or `%`) are
/// comments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListFile {
    pub path: PathBuf,
    /// Directed inputs are symmetrized, so this only documents the source.
    pub directed: bool,
    /// Ids start at 1; they are shifted to start at 0.
    pub one_indexed: bool,
}

impl EdgeListFile {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into(), directed: false, one_indexed: false }
    }
}

/// A parsed graph together with the original id of every dense vertex.
/// Dense ids follow the sorted order of original ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub original_ids: Vec<u64>,
}

impl LoadedGraph {
    /// Dense id of an original id.
    pub fn dense_id(&self, original: u64) -> Option<usize> {
        self.original_ids.binary_search(&original).ok()
    }

    /// Subgraph induced by dense vertex ids, keeping their original ids.
    pub fn induced(&self, vertices: &[usize]) -> Result<LoadedGraph> {
        let (graph, kept) = super::induced_subgraph(&self.graph, vertices)?;
        Ok(LoadedGraph { graph, original_ids: kept.iter().map(|&v| self.original_ids[v]).collect() })
    }

    /// Subgraph induced by the original ids in `lo..=hi`.
    pub fn induced_id_range(&self, lo: u64, hi: u64) -> Result<LoadedGraph> {
        let vertices: Vec<usize> =
            (0..self.original_ids.len()).filter(|&v| (lo..=hi).contains(&self.original_ids[v])).collect();
        if vertices.is_empty() {
            return Err(Error::EmptyInput(format!("no vertices with ids in {lo}..={hi}")));
        }
        self.induced(&vertices)
    }

    pub fn largest_component(&self) -> LoadedGraph {
        let (graph, kept) = super::largest_connected_component(&self.graph);
        LoadedGraph { graph, original_ids: kept.iter().map(|&v| self.original_ids[v]).collect() }
    }
}

pub fn parse_edge_list(file: &EdgeListFile) -> Result<LoadedGraph> {
    let text = std::fs::read_to_string(&file.path)?;
    parse_edge_list_str(&text, file.one_indexed)
}

fn parse_id(token: &str, line: usize, one_indexed: bool) -> Result<u64> {
    let id: u64 = token.parse().map_err(|_| Error::Parse { line, msg: format!("invalid vertex id {token:?}") })?;
    if one_indexed {
        id.checked_sub(1).ok_or(Error::Parse { line, msg: "id 0 in a one-indexed file".into() })
    } else {
        Ok(id)
    }
}

/// Parses edge-list text: duplicates collapse, self-loops are dropped and
/// directed edges become undirected. Vertices are those appearing in any
/// line, including self-loop lines.
pub fn parse_edge_list_str(text: &str, one_indexed: bool) -> Result<LoadedGraph> {
    let mut pairs = Vec::new();
    let mut ids = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') || content.starts_with('%') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(Error::Parse { line, msg: format!("expected two vertex ids, got {content:?}") });
        };
        let (u, v) = (parse_id(a, line, one_indexed)?, parse_id(b, line, one_indexed)?);
        ids.insert(u);
        ids.insert(v);
        pairs.push((u, v));
    }
    if ids.is_empty() {
        return Err(Error::EmptyInput("edge list has no edges".into()));
    }
    let original_ids: Vec<u64> = ids.into_iter().collect();
    let dense = |id: u64| original_ids.binary_search(&id).expect("id collected above");
    let graph = Graph::from_edges(original_ids.len(), pairs.iter().map(|&(u, v)| (dense(u), dense(v))));
    Ok(LoadedGraph { graph, original_ids })
}

/// Edge list text with one `u v` line per edge (`u < v`, dense ids) after a
/// comment header. Isolated vertices are not representable.
pub fn write_edge_list(graph: &Graph) -> String {
    let mut s = format!("# vertices {} edges {}\n", graph.n(), graph.edge_count());
    for (u, v) in graph.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Writes [`write_edge_list`] output to `path`.
pub fn write_edge_list_file(graph: &Graph, path: &Path) -> Result<()> {
    std::fs::write(path, write_edge_list(graph))?;
    Ok(())
}
