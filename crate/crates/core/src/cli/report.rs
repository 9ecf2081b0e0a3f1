//! Machine-readable reports. Everything is ordered deterministically and
//! coefficients are exact strings; timing is never recorded here.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::schema::ProblemFile;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    Sh,
}

/// One verified identity and, when it fails, the first offending element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check {
            name: name.into(),
            ok: true,
            witness: None,
        }
    }

    pub fn from_witness(name: &str, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            ok: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub complex: String,
    /// `[degree, rank]` pairs.
    pub ranks: Vec<(i32, usize)>,
}

impl Homology {
    pub fn new(complex: &str, ranks: &BTreeMap<i32, usize>, window: Option<[i32; 2]>) -> Self {
        Homology {
            complex: complex.into(),
            ranks: ranks
                .iter()
                .filter(|(&d, _)| window.map_or(true, |[lo, hi]| lo <= d && d <= hi))
                .map(|(&d, &r)| (d, r))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub tool: String,
    pub mode: Mode,
    pub max_weight: u32,
    pub problem: ProblemFile,
    /// Corestriction of the transferred structure `𝒟` on `S^c[sM]`.
    pub structure: Vec<[String; 3]>,
    /// The twisting cochain `τ`.
    pub tau: Vec<[String; 3]>,
    pub checks: Vec<Check>,
    pub homology: Vec<Homology>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> String {
        to_compact_json(self)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }
}

pub fn tool_name() -> String {
    format!("shlie {}", env!("CARGO_PKG_VERSION"))
}

/// Pretty JSON with arrays of scalars and objects of scalars kept on one
/// line, so that triples read as rows.
pub fn to_compact_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &serde_json::Value) -> bool {
    use serde_json::Value;
    let scalar = |x: &Value| !matches!(x, Value::Array(_) | Value::Object(_));
    match v {
        Value::Array(a) => a.iter().all(|x| scalar(x) || matches!(x, Value::Array(b) if b.iter().all(scalar))),
        Value::Object(o) => o.values().all(scalar),
        _ => true,
    }
}

fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(a) if !a.is_empty() && !is_flat(v) || a.iter().any(|x| x.is_array()) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(o) if !o.is_empty() && !is_flat(v) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("string"));
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(inline).collect();
            out.push_str(&format!("[{}]", items.join(", ")));
        }
        _ => out.push_str(&inline(v)),
    }
}

fn inline(v: &serde_json::Value) -> String {
    use serde_json::Value;
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(o) => {
            let items: Vec<String> = o
                .iter()
                .map(|(k, x)| format!("{}: {}", serde_json::to_string(k).expect("string"), inline(x)))
                .collect();
            format!("{{{}}}", items.join(", "))
        }
        _ => serde_json::to_string(v).expect("serializable"),
    }
}
