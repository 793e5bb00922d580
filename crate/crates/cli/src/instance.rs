//! Instance files: one JSON document holding a matroid and its weighting.
//!
//! ```json
//! {
//!   "kind": "graphic",
//!   "vertices": 3,
//!   "edges": [{"id": "a", "u": 0, "v": 1}, {"id": "b", "u": 1, "v": 2}, {"id": "c", "u": 0, "v": 2}],
//!   "weights": {"a": "1", "b": "2", "c": "3"}
//! }
//! ```
//!
//! The other kinds are `uniform` (`k`, `elements`), `linear` (`elements`,
//! `rows` of rational strings, one entry per element) and `explicit`
//! (`bases`, optionally `elements` to fix the ground order). Rationals are
//! always strings: `"3"`, `"-7/2"`.

use std::fmt;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use tropmat::instances::{
    explicit, graphic, linear, uniform, ExplicitBases, GraphDescription, GraphEdge,
    RationalMatrix, UniformParams,
};
use tropmat::{format_rational, parse_rational, Matroid, Rational, Weighting};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidSpec {
    Graphic {
        vertices: usize,
        edges: Vec<Edge>,
    },
    Uniform {
        k: usize,
        elements: Vec<String>,
    },
    Linear {
        elements: Vec<String>,
        rows: Vec<Vec<String>>,
    },
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        elements: Option<Vec<String>>,
        bases: Vec<Vec<String>>,
    },
}

/// Weight entries in file order. Duplicate keys are rejected on parse.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightEntries(pub Vec<(String, String)>);

impl Serialize for WeightEntries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for WeightEntries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = WeightEntries;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from element id to rational string")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<WeightEntries, A::Error> {
                let mut entries: Vec<(String, String)> = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    if entries.iter().any(|(seen, _)| *seen == k) {
                        return Err(serde::de::Error::custom(format!(
                            "element `{k}` has more than one weight"
                        )));
                    }
                    entries.push((k, v));
                }
                Ok(WeightEntries(entries))
            }
        }

        d.deserialize_map(EntriesVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(flatten)]
    pub matroid: MatroidSpec,
    pub weights: WeightEntries,
}

/// A parsed and validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub file: InstanceFile,
    pub matroid: Matroid,
    pub weights: Weighting,
}

fn rational_entry(s: &str, context: impl FnOnce() -> String) -> anyhow::Result<Rational> {
    parse_rational(s).map_err(|e| anyhow!("{}: {e}", context()))
}

impl MatroidSpec {
    pub fn build(&self) -> anyhow::Result<Matroid> {
        let m = match self {
            MatroidSpec::Graphic { vertices, edges } => graphic(&GraphDescription {
                vertices: *vertices,
                edges: edges
                    .iter()
                    .map(|e| GraphEdge { id: e.id.clone(), u: e.u, v: e.v })
                    .collect(),
            })?,
            MatroidSpec::Uniform { k, elements } => uniform(&UniformParams {
                k: *k,
                ground: elements.clone(),
            })?,
            MatroidSpec::Linear { elements, rows } => {
                let mut parsed = Vec::with_capacity(rows.len());
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != elements.len() {
                        bail!(
                            "row {} has {} entries but there are {} elements",
                            i + 1,
                            row.len(),
                            elements.len()
                        );
                    }
                    let mut out = Vec::with_capacity(row.len());
                    for (j, s) in row.iter().enumerate() {
                        out.push(rational_entry(s, || {
                            format!("row {}, element `{}`", i + 1, elements[j])
                        })?);
                    }
                    parsed.push(out);
                }
                linear(&RationalMatrix {
                    columns: elements.clone(),
                    rows: parsed,
                })?
            }
            MatroidSpec::Explicit { elements, bases } => {
                let spec = match elements {
                    Some(ground) => ExplicitBases {
                        ground: ground.clone(),
                        bases: bases.clone(),
                    },
                    None => {
                        let refs: Vec<Vec<&str>> = bases
                            .iter()
                            .map(|b| b.iter().map(String::as_str).collect())
                            .collect();
                        let slices: Vec<&[&str]> = refs.iter().map(Vec::as_slice).collect();
                        ExplicitBases::from_bases(&slices)
                    }
                };
                explicit(&spec)?
            }
        };
        Ok(m)
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> anyhow::Result<Instance> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let file = Self::parse(&text).with_context(|| format!("{}", path.display()))?;
        file.instantiate().with_context(|| format!("{}", path.display()))
    }

    pub fn instantiate(self) -> anyhow::Result<Instance> {
        let matroid = self.matroid.build()?;
        let mut weights = Weighting::new();
        for (label, value) in &self.weights.0 {
            let e = matroid
                .element(label)
                .map_err(|_| anyhow!("weight given for `{label}`, which is not a ground element"))?;
            weights.set(e, rational_entry(value, || format!("weight of `{label}`"))?);
        }
        weights.check_total(&matroid)?;
        Ok(Instance {
            file: self,
            matroid,
            weights,
        })
    }
}

impl Instance {
    /// The file with weights listed in ground order and every rational in
    /// lowest terms.
    pub fn canonical(&self) -> InstanceFile {
        let mut spec = self.file.matroid.clone();
        if let MatroidSpec::Linear { rows, .. } = &mut spec {
            for s in rows.iter_mut().flatten() {
                *s = format_rational(&parse_rational(s).expect("validated on load"));
            }
        }
        let weights = self
            .weights
            .iter()
            .map(|(e, q)| (self.matroid.label(e).to_string(), format_rational(q)))
            .collect();
        InstanceFile {
            matroid: spec,
            weights: WeightEntries(weights),
        }
    }

    /// `sha256:` digest of the compact canonical serialization.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(&self.canonical()).expect("instance serializes");
        format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
    }
}
