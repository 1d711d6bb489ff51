//! Output records and their JSON / text renderings.

use std::fmt::Write as _;

use gctlab_core::gct::{ObstructionCandidate, SeparabilityCertificate};
use gctlab_core::kron::KroneckerResult;
use gctlab_core::Partition;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "gctlab/1";

/// Top-level record printed by every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: String,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub method: String,
    pub cache_hits: u64,
    pub elapsed_ms: u64,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Value, result: Value, method: &str) -> Self {
        OutputRecord {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            inputs,
            result,
            method: method.to_string(),
            cache_hits: 0,
            elapsed_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output record serializes")
    }

    /// The record minus `elapsed_ms`, for determinism comparisons.
    pub fn payload(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("output record serializes");
        if let Value::Object(map) = &mut v {
            map.remove("elapsed_ms");
        }
        v
    }

    /// One `path: value` line per leaf of the JSON form.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let v = serde_json::to_value(self).expect("output record serializes");
        flatten("", &v, &mut out);
        out
    }
}

/// Scalars and flat scalar arrays are leaves; everything else is descended.
fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_array() && !i.is_object()),
        Value::Object(map) => map.is_empty(),
        _ => true,
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    if is_leaf(v) {
        let text = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        writeln!(out, "{path}: {text}").expect("writing to a String");
        return;
    }
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&join(k), child, out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), child, out);
            }
        }
        _ => unreachable!(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KronOutput {
    pub value: u64,
    pub method: String,
    pub cross_checked: bool,
}

impl From<&KroneckerResult> for KronOutput {
    fn from(r: &KroneckerResult) -> Self {
        KronOutput {
            value: r.value,
            method: r.method.as_str().to_string(),
            cross_checked: r.cross_checked,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateOutput {
    pub lambda: Partition,
    pub mu: Partition,
    pub n: usize,
    pub m_used: usize,
    pub rho: Partition,
    pub coeff_target: u64,
    pub coeff_rect: u64,
    pub case_tag: String,
}

impl From<&SeparabilityCertificate> for CertificateOutput {
    fn from(c: &SeparabilityCertificate) -> Self {
        CertificateOutput {
            lambda: c.lambda.clone(),
            mu: c.mu.clone(),
            n: c.n,
            m_used: c.m_used,
            rho: c.rho.clone(),
            coeff_target: c.coeff_target,
            coeff_rect: c.coeff_rect,
            case_tag: c.case_tag.as_str().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateOutput {
    pub lambda: Partition,
    pub passes_ambient: bool,
    pub passes_height: bool,
    pub det_coefficient: u64,
    pub is_candidate: bool,
}

impl From<&ObstructionCandidate> for CandidateOutput {
    fn from(c: &ObstructionCandidate) -> Self {
        CandidateOutput {
            lambda: c.lambda.clone(),
            passes_ambient: c.passes_ambient,
            passes_height: c.passes_height,
            det_coefficient: c.det_coefficient,
            is_candidate: c.is_candidate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructOutput {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    /// Condition 2 is tested on the connected stabilizer `GL_m × GL_m` only.
    pub stabilizer: String,
    pub rows: Vec<CandidateOutput>,
    pub candidates: usize,
}

impl ObstructOutput {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["lambda", "passes_ambient", "passes_height", "det_coefficient", "is_candidate"])
            .expect("in-memory csv");
        for r in &self.rows {
            w.write_record([
                r.lambda.to_string(),
                r.passes_ambient.to_string(),
                r.passes_height.to_string(),
                r.det_coefficient.to_string(),
                r.is_candidate.to_string(),
            ])
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn human_lines_cover_every_leaf() {
        let mut r = OutputRecord::new(
            "kron",
            json!({"alpha": [2, 2], "beta": [], "nested": {"x": [[1], [2, 1]]}}),
            json!({"value": 1, "cross_checked": true}),
            "oracle",
        );
        r.cache_hits = 3;
        let text = r.to_human();
        for line in [
            "schema: gctlab/1",
            "command: kron",
            "inputs.alpha: [2,2]",
            "inputs.beta: []",
            "inputs.nested.x.0: [1]",
            "inputs.nested.x.1: [2,1]",
            "result.value: 1",
            "result.cross_checked: true",
            "method: oracle",
            "cache_hits: 3",
            "elapsed_ms: 0",
        ] {
            assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
        }
    }

    #[test]
    fn json_round_trip() {
        let r = OutputRecord::new("verify", json!({"suite": "rw"}), json!({"passed": true}), "oracle");
        let back: OutputRecord = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.payload().get("elapsed_ms").is_none());
    }

    #[test]
    fn csv_quotes_partitions() {
        let out = ObstructOutput {
            n: 1,
            m: 2,
            d: 1,
            stabilizer: "GL_m x GL_m".into(),
            rows: vec![CandidateOutput {
                lambda: Partition::new(vec![1, 1]).unwrap(),
                passes_ambient: false,
                passes_height: true,
                det_coefficient: 0,
                is_candidate: false,
            }],
            candidates: 0,
        };
        assert_eq!(
            out.to_csv(),
            "lambda,passes_ambient,passes_height,det_coefficient,is_candidate\n\"1,1\",false,true,0,false\n"
        );
    }
}
