//! On-disk workspace document and its canonical printer.

use crate::error::{Error, Result};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt;

/// Rows of decimal integer strings.
pub type MatrixSpec = Vec<Vec<String>>;

/// Map keyed by degree, written with string keys in numeric order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeMap<T>(pub BTreeMap<i64, T>);

impl<T: Serialize> Serialize for DegreeMap<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for DegreeMap<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V<T>(std::marker::PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = DegreeMap<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from integer degrees")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> std::result::Result<Self::Value, A::Error> {
                let mut out = BTreeMap::new();
                while let Some(k) = a.next_key::<String>()? {
                    let deg: i64 = k
                        .parse()
                        .map_err(|_| de::Error::custom(format!("degree key '{k}' is not an integer")))?;
                    let v = a.next_value()?;
                    if out.insert(deg, v).is_some() {
                        return Err(de::Error::custom(format!("degree {deg} given twice")));
                    }
                }
                Ok(DegreeMap(out))
            }
        }
        d.deserialize_map(V(std::marker::PhantomData))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub ranks: DegreeMap<usize>,
    #[serde(default)]
    pub diffs: DegreeMap<MatrixSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub comps: DegreeMap<MatrixSpec>,
}

/// Exactly one of `constant_from` and `repeat_from` (with `endo`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant_from: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeat_from: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endo: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub entries: Vec<String>,
    /// `maps[s]` names the structure map from entry `s + 1` to entry `s`.
    #[serde(default)]
    pub maps: Vec<String>,
    pub tail: TailSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProMapSpec {
    pub source: String,
    pub target: String,
    /// `comps[t]` names a chain map from source entry `shift[t]` to target entry `t`.
    pub comps: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<usize>>,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub tail_step: usize,
}

fn one() -> usize {
    1
}

fn is_one(x: &usize) -> bool {
    *x == 1
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Objects {
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub towers: BTreeMap<String, TowerSpec>,
    #[serde(default)]
    pub promaps: BTreeMap<String, ProMapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "default_filler")]
    pub budget_filler: usize,
    #[serde(default = "default_reindex")]
    pub budget_reindex: usize,
    #[serde(default = "default_lim_window")]
    pub lim_window: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
}

fn default_filler() -> usize {
    32
}

fn default_reindex() -> usize {
    16
}

fn default_lim_window() -> usize {
    8
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget_filler: default_filler(),
            budget_reindex: default_reindex(),
            lim_window: default_lim_window(),
            output_dir: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub ring: String,
    #[serde(default)]
    pub objects: Objects,
    #[serde(default)]
    pub config: Config,
}

impl WorkspaceFile {
    pub fn parse(text: &str) -> Result<WorkspaceFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Canonical text: two-space indentation, arrays of scalars and matrix rows
    /// kept on one line, trailing newline.
    pub fn to_canonical(&self) -> String {
        let v = serde_json::to_value(self).expect("workspace documents serialize");
        let mut out = String::new();
        write_value(&v, 0, &mut out);
        out.push('\n');
        out
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => a.iter().all(|x| !matches!(x, Value::Object(_) | Value::Array(_))),
        _ => true,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("string keys"));
                out.push_str(": ");
                write_value(x, indent + 1, out);
                if i + 1 < m.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(a) if a.iter().all(is_flat) => {
            // matrices and name lists stay on one line
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(x, indent, out);
            }
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                if i + 1 < a.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("scalars serialize")),
    }
}
