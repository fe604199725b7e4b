//! JSON wire formats: fatgraph serialization, per-bucket checkpoint files,
//! and run reports.

use serde::{Deserialize, Serialize};

use crate::fatgraph::{Fatgraph, Orientation, Vertex};
use crate::{Error, Result};

pub const CHECKPOINT_SCHEMA_VERSION: u32 = 1;

/// A fatgraph on the wire: vertex label lists plus an optional orientation
/// position list.  The orientation is omitted when it is the listing-order
/// default, so serializing a loaded graph reproduces the input exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatgraphDto {
    pub vertices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orient: Option<Vec<usize>>,
}

impl FatgraphDto {
    pub fn from_graph(g: &Fatgraph) -> FatgraphDto {
        FatgraphDto {
            vertices: g.vertices().iter().map(|v| v.labels().to_vec()).collect(),
            orient: if g.orientation().is_default() {
                None
            } else {
                Some(g.orientation().positions().to_vec())
            },
        }
    }

    pub fn into_graph(self) -> Result<Fatgraph> {
        let vertices = self.vertices.into_iter().map(Vertex::new).collect();
        let orient = self.orient.map(Orientation::from_positions).transpose()?;
        Fatgraph::build(vertices, orient)
    }
}

/// Parse and validate a single fatgraph from JSON text.
pub fn parse_fatgraph_json(text: &str) -> Result<Fatgraph> {
    let dto: FatgraphDto = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    dto.into_graph()
}

pub fn fatgraph_to_json(g: &Fatgraph) -> String {
    serde_json::to_string(&FatgraphDto::from_graph(g)).expect("serialization cannot fail")
}

/// One generation checkpoint: every graph of a `(g, n)` family with a fixed
/// edge count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointDto {
    pub schema_version: u32,
    pub g: usize,
    pub n: usize,
    pub m: usize,
    pub graphs: Vec<FatgraphDto>,
}

impl CheckpointDto {
    pub fn new(g: usize, n: usize, m: usize, graphs: &[Fatgraph]) -> CheckpointDto {
        CheckpointDto {
            schema_version: CHECKPOINT_SCHEMA_VERSION,
            g,
            n,
            m,
            graphs: graphs.iter().map(FatgraphDto::from_graph).collect(),
        }
    }

    /// Validate and rebuild the graphs; every graph must have the bucket's
    /// edge count and the checkpoint's surface signature.
    pub fn into_graphs(self) -> Result<Vec<Fatgraph>> {
        if self.schema_version != CHECKPOINT_SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "unsupported checkpoint schema version {}",
                self.schema_version
            )));
        }
        let mut out = Vec::with_capacity(self.graphs.len());
        for dto in self.graphs {
            let graph = dto.into_graph()?;
            if graph.num_edges() != self.m
                || graph.genus() != self.g
                || graph.num_boundary_cycles() != self.n
            {
                return Err(Error::Format(format!(
                    "checkpoint graph has signature (g={}, n={}, m={}), expected (g={}, n={}, m={})",
                    graph.genus(),
                    graph.num_boundary_cycles(),
                    graph.num_edges(),
                    self.g,
                    self.n,
                    self.m
                )));
            }
            out.push(graph);
        }
        Ok(out)
    }
}

/// Parse and validate a checkpoint file body.
pub fn parse_checkpoint_json(text: &str) -> Result<Vec<Fatgraph>> {
    let dto: CheckpointDto =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    dto.into_graphs()
}

/// The per-run report emitted by the homology command.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RunReport {
    pub g: usize,
    pub n: usize,
    /// Wall-clock seconds per stage: family generation, operator assembly,
    /// rank computation.
    pub generation_seconds: f64,
    pub matrices_seconds: f64,
    pub ranks_seconds: f64,
    /// Abstract fatgraph counts per edge count.
    pub graph_counts: Vec<(usize, usize)>,
    /// Orientable marked dimensions per edge count.
    pub dims: Vec<(usize, usize)>,
    /// Boundary-operator ranks per source edge count.
    pub ranks: Vec<(usize, usize)>,
    pub betti: Vec<u64>,
    pub classical_chi: i64,
    /// Exact rationals as "p/q" strings.
    pub virtual_chi: String,
    pub virtual_chi_signed: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}
