use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Outcome of a verification: what was claimed, for which parameters, and a
/// witness (a counterexample when `result` is false).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub parameters: Map<String, Value>,
    pub result: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Certificate {
    pub fn new(claim: impl Into<String>) -> Self {
        Certificate { claim: claim.into(), parameters: Map::new(), result: true, witness: None }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).expect("parameter serializes");
        self.parameters.insert(key.to_owned(), v);
        self
    }

    pub fn passed(mut self) -> Self {
        self.result = true;
        self
    }

    pub fn failed(mut self, witness: impl Serialize) -> Self {
        self.result = false;
        self.witness = Some(serde_json::to_value(witness).expect("witness serializes"));
        self
    }

    /// Attaches an informational witness without changing the verdict.
    pub fn with_witness(mut self, witness: impl Serialize) -> Self {
        self.witness = Some(serde_json::to_value(witness).expect("witness serializes"));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}
