use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
    pub bytes: usize,
}

/// A produced file. With an output directory only the path and digest are
/// recorded; without one the content is carried inline.
#[derive(Clone, Debug, Serialize)]
pub struct Artifact {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub content: Option<String>,
}

/// Everything a run claims, in a fixed field order with sorted map keys so
/// that reruns serialise byte for byte the same.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub exit_code: i32,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<Artifact>,
    pub counts: Map<String, Value>,
    pub certificates: Map<String, Value>,
    pub budgets: Map<String, Value>,
    pub provenance: Vec<String>,
    pub result: Value,
}

impl Manifest {
    pub fn new(command: String) -> Self {
        Manifest {
            command,
            exit_code: 0,
            inputs: Vec::new(),
            outputs: Vec::new(),
            counts: Map::new(),
            certificates: Map::new(),
            budgets: Map::new(),
            provenance: Vec::new(),
            result: Value::Null,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serialises");
        s.push('\n');
        s
    }

    /// `key: value` lines, nested keys joined with dots.
    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("manifest serialises");
        let mut out = String::new();
        flatten(&v, "", &mut out);
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(x, &key, out);
            }
        }
        Value::Array(a) if a.iter().all(is_scalar) => {
            let items: Vec<String> = a.iter().map(scalar_text).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(x, &format!("{prefix}[{i}]"), out);
            }
        }
        scalar => out.push_str(&format!("{prefix}: {}\n", scalar_text(scalar))),
    }
}

/// Writes artifacts under `dir` (when given) and returns their records.
pub fn store(dir: Option<&Path>, files: &[(String, String)]) -> std::io::Result<Vec<Artifact>> {
    if let Some(d) = dir {
        fs::create_dir_all(d)?;
    }
    files
        .iter()
        .map(|(name, content)| {
            let sha256 = sha256_hex(content.as_bytes());
            Ok(match dir {
                Some(d) => {
                    let path = d.join(name);
                    fs::write(&path, content)?;
                    Artifact {
                        name: name.clone(),
                        path: Some(path.display().to_string()),
                        sha256,
                        content: None,
                    }
                }
                None => Artifact {
                    name: name.clone(),
                    path: None,
                    sha256,
                    content: Some(content.clone()),
                },
            })
        })
        .collect()
}

/// Small integers as JSON numbers, larger ones as decimal strings.
pub fn bigint_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_flattening() {
        let mut m = Manifest::new("homology -".into());
        m.result = json!({"h1": {"rank": 0, "torsion": []}, "list": [{"a": 1}]});
        let t = m.to_text();
        assert!(t.contains("result.h1.rank: 0\n"));
        assert!(t.contains("result.h1.torsion: []\n"));
        assert!(t.contains("result.list[0].a: 1\n"));
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(bigint_value(&BigInt::from(7)), json!(7));
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(bigint_value(&big), json!("123456789012345678901234567890"));
    }
}
