use crate::error::{Error, Result};
use crate::graph::Graph;

/// Subgraph induced by `vertices`, relabelled densely in increasing vertex
/// order. Returns the graph and the kept vertices (sorted, deduplicated).
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
    let mut kept = vertices.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() {
        return Err(Error::EmptyInput("empty vertex selection".into()));
    }
    if let Some(&v) = kept.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidArgument(format!("vertex {v} out of range for n = {}", g.n())));
    }
    let mut sub = Graph::empty(kept.len());
    for i in 0..kept.len() {
        for j in (i + 1)..kept.len() {
            if g.has_edge(kept[i], kept[j]) {
                sub.add_edge(i, j);
            }
        }
    }
    Ok((sub, kept))
}

/// Largest connected component; among equally large components the one with
/// the smallest vertex id wins. Returns the component and its vertices.
pub fn largest_connected_component(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut best: Vec<usize> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut component = vec![start];
        let mut head = 0;
        while head < component.len() {
            let u = component[head];
            head += 1;
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    component.push(v);
                }
            }
        }
        if component.len() > best.len() {
            best = component;
        }
    }
    if best.is_empty() {
        return (Graph::empty(0), best);
    }
    induced_subgraph(g, &best).expect("nonempty in-range selection")
}
