//! The machine-readable report record shared by every CLI subcommand.

use serde::{Deserialize, Serialize};

/// One report line: which operation ran, on what, what came out, and any
/// diagnostic witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub op: String,
    pub inputs: serde_json::Value,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Report {
    pub fn new(op: impl Into<String>, inputs: serde_json::Value, result: serde_json::Value) -> Self {
        Report {
            op: op.into(),
            inputs,
            result,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
