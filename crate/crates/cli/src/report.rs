use serde::Serialize;
use sha2::{Digest, Sha256};

/// Machine-readable record of one invocation. Numbers that may exceed 64
/// bits are strings.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub input_sha256: String,
    pub vertex_count: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<VertexResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reduction: Vec<ReductionRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bench: Vec<BenchRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &'static str, input: &[u8], vertex_count: usize) -> Self {
        RunReport {
            command,
            input_sha256: hex::encode(Sha256::digest(input)),
            vertex_count,
            results: Vec::new(),
            components: Vec::new(),
            sampling: None,
            alpha: None,
            reduction: Vec::new(),
            passed: None,
            bench: Vec::new(),
            timing_ms: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexResult {
    pub vertex: usize,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples_used: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub method: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct SamplingReport {
    pub epsilon: String,
    pub delta: String,
    pub seed: u64,
    pub runs: usize,
    pub samples_per_run: u64,
    pub mode: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionRow {
    pub k: usize,
    pub raw_value: String,
    pub recovered: String,
    pub counted: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub method: &'static str,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}
