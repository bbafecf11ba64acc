//! JSON input and output documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::factorizer::Certificate;
use crate::polymatrix::PolyMatrix;
use crate::polyring::Polynomial;

pub const SCHEMA_VERSION: u32 = 1;

/// Input file: a matrix of expression strings over `z1..z{nvars}`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub nvars: usize,
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
pub struct BudgetSettings {
    pub max_ops: usize,
    pub max_degree: u32,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
pub struct CertificateBasis {
    pub generators: Vec<String>,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cofactors: Option<Vec<String>>,
}

impl From<&Certificate> for CertificateBasis {
    fn from(c: &Certificate) -> Self {
        let strings = |ps: &[Polynomial]| ps.iter().map(|p| p.to_string()).collect();
        CertificateBasis {
            generators: strings(&c.generators),
            basis: strings(&c.basis),
            cofactors: c.cofactors.as_deref().map(strings),
        }
    }
}

/// Output of every command, written to standard output.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CertificateDocument {
    pub schema: u32,
    pub command: CommandEcho,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// Named matrices, entries in canonical expression form.
    #[serde(default)]
    pub witnesses: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateBasis>,
    /// Command-specific report.
    #[serde(default)]
    pub details: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: f64,
    pub budget: BudgetSettings,
}

impl CertificateDocument {
    pub fn new(command: CommandEcho, budget: BudgetSettings) -> Self {
        CertificateDocument {
            schema: SCHEMA_VERSION,
            command,
            outcome: String::new(),
            r: None,
            witnesses: BTreeMap::new(),
            certificate: None,
            details: serde_json::Value::Null,
            verified: None,
            error: None,
            timing_ms: 0.0,
            budget,
        }
    }

    pub fn add_witness(&mut self, name: &str, m: &PolyMatrix) {
        self.witnesses.insert(name.to_string(), m.to_strings());
    }
}
