use serde::Serialize;
use sha2::{Digest, Sha256};

use degseq::{EdgeSubset, Graph};

/// The single JSON object printed by the solve commands.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub instance_digest: String,
    pub solver: &'static str,
    pub feasible: bool,
    pub value: Option<i64>,
    /// 1-based endpoints of the chosen edges.
    pub witness: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub color_counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criteria_point: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_queries: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forest_height: Option<usize>,
    pub wall_time_ms: f64,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

pub fn edge_list(graph: &Graph, subset: &EdgeSubset) -> Vec<[usize; 2]> {
    subset
        .indices()
        .into_iter()
        .map(|e| {
            let (a, b) = graph.edges()[e];
            [a + 1, b + 1]
        })
        .collect()
}
