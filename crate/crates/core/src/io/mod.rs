//! Reading SNAP-style edge lists and label files, subgraph extraction, and
//! deterministic CSV/SVG output.

mod edge_list;
mod labels;
mod plot;
mod subgraph;
mod trace_csv;

pub use edge_list::{
    parse_edge_list, parse_edge_list_str, write_edge_list, write_edge_list_file, EdgeListFile, LoadedGraph,
};
pub use labels::{parse_labels, parse_labels_str, LabelFile};
pub use plot::{loglog_svg, trace_svg, write_svg_plot};
pub use subgraph::{induced_subgraph, largest_connected_component};
pub use trace_csv::{parse_trace_csv, summary_csv, trace_csv, write_trace_csv};
