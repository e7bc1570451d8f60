//! Serde mirror of the JSON interchange format for graphs, labels and types.

use serde::{Deserialize, Serialize};

use super::{EdgeLabel, EdgeSpec, Hypergraph};
use crate::error::{Error, Result};
use crate::types::{HLType, TypeKind};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawGraph {
    nodes: Vec<String>,
    edges: Vec<RawEdge>,
    ext: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: String,
    label: RawLabel,
    att: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawLabel {
    Dollar {
        dollar: usize,
    },
    Symbol {
        sym: String,
        arity: usize,
    },
    Type(RawType),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum RawType {
    Prim { prim: String, arity: usize },
    Div { div: Box<RawDiv> },
    Times { times: RawGraph },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawDiv {
    num: RawType,
    den: RawGraph,
}

impl From<&Hypergraph> for RawGraph {
    fn from(g: &Hypergraph) -> Self {
        RawGraph {
            nodes: g.nodes.clone(),
            edges: g
                .edges
                .iter()
                .map(|e| RawEdge {
                    id: e.id.clone(),
                    label: RawLabel::from(&e.label),
                    att: g.att_ids(e).into_iter().map(String::from).collect(),
                })
                .collect(),
            ext: g.ext_ids().into_iter().map(String::from).collect(),
        }
    }
}

impl From<&EdgeLabel> for RawLabel {
    fn from(l: &EdgeLabel) -> Self {
        match l {
            EdgeLabel::Type(t) => RawLabel::Type(RawType::from(t)),
            EdgeLabel::Dollar(k) => RawLabel::Dollar { dollar: *k },
            EdgeLabel::Symbol { name, arity } => RawLabel::Symbol {
                sym: name.clone(),
                arity: *arity,
            },
        }
    }
}

impl From<&HLType> for RawType {
    fn from(t: &HLType) -> Self {
        match t.kind() {
            TypeKind::Primitive { name, arity } => RawType::Prim {
                prim: name.clone(),
                arity: *arity,
            },
            TypeKind::Division {
                numerator,
                denominator,
            } => RawType::Div {
                div: Box::new(RawDiv {
                    num: RawType::from(numerator),
                    den: RawGraph::from(denominator),
                }),
            },
            TypeKind::Product { body } => RawType::Times {
                times: RawGraph::from(body),
            },
        }
    }
}

impl RawGraph {
    pub(crate) fn build(self) -> Result<Hypergraph> {
        let edges = self
            .edges
            .into_iter()
            .map(|e| {
                Ok(EdgeSpec {
                    id: e.id,
                    label: e.label.build()?,
                    att: e.att,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(self.nodes, edges, self.ext)
    }
}

impl RawLabel {
    fn build(self) -> Result<EdgeLabel> {
        Ok(match self {
            RawLabel::Dollar { dollar } => EdgeLabel::Dollar(dollar),
            RawLabel::Symbol { sym, arity } => EdgeLabel::Symbol { name: sym, arity },
            RawLabel::Type(t) => EdgeLabel::Type(t.build()?),
        })
    }
}

impl RawType {
    pub(crate) fn build(self) -> Result<HLType> {
        match self {
            RawType::Prim { prim, arity } => Ok(HLType::primitive(prim, arity)),
            RawType::Div { div } => {
                let RawDiv { num, den } = *div;
                HLType::division(num.build()?, den.build()?)
            }
            RawType::Times { times } => HLType::product(times.build()?),
        }
    }
}

pub(crate) fn type_to_json(t: &HLType) -> String {
    serde_json::to_string(&RawType::from(t)).expect("type serializes")
}

pub(crate) fn type_from_json(text: &str) -> Result<HLType> {
    let raw: RawType = serde_json::from_str(text).map_err(|e| Error::from_json(&e))?;
    raw.build()
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawGraph::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RawGraph::deserialize(d)?
            .build()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for HLType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawType::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HLType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RawType::deserialize(d)?
            .build()
            .map_err(serde::de::Error::custom)
    }
}
