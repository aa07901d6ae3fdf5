//! The JSON graph file format:
//!
//! ```json
//! {"n": 3, "edges": [
//!   {"u": 0, "v": 1, "gain": {"re": "3/5", "im": "4/5"}},
//!   {"u": 1, "v": 2, "gain": {"re": "1", "im": "0"}}
//! ]}
//! ```
//!
//! Angle gains use `{"angle_deg": 90.0}` instead of `re`/`im`; the two gain
//! forms must not be mixed in one file.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gain::UnitGain;
use crate::graph::GainGraph;

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<EdgeFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeFile {
    u: usize,
    v: usize,
    gain: UnitGain,
}

/// Parses a graph from the JSON format, validating simplicity, vertex
/// ranges, unit modulus and gain-mode homogeneity.
pub fn graph_from_json(text: &str) -> Result<GainGraph> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::GraphFormat(e.to_string()))?;
    GainGraph::new(
        file.n,
        file.edges.into_iter().map(|e| (e.u, e.v, e.gain)).collect(),
    )
}

/// Serializes a graph into the JSON format (canonical edge orientation).
pub fn graph_to_json(g: &GainGraph) -> String {
    let file = GraphFile {
        n: g.vertex_count(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeFile {
                u: e.u,
                v: e.v,
                gain: e.gain.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("graph serialization cannot fail")
}
