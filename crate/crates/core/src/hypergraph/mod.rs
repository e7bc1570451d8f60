//! Hypergraphs with ordered attachment and external nodes, hyperedge
//! replacement and isomorphism.
//!
//! Node and edge identifiers are opaque strings, unique within one graph.
//! Internally attachment and external sequences store indices into the node
//! list; the string ids are what the JSON format and rule witnesses refer to.
//!
//! Loops in the general sense are rejected: the attachment sequence of an edge
//! and the external sequence of a graph never repeat a node.

mod canon;
pub(crate) mod json;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::types::HLType;

pub use canon::CanonicalKey;

/// Label of a hyperedge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// An HL type. Equality is structural up to isomorphism of inner graphs.
    Type(HLType),
    /// The `$` placeholder of a division denominator, with its arity.
    Dollar(usize),
    /// An opaque symbol, for plain hyperedge-replacement use.
    Symbol { name: String, arity: usize },
}

impl EdgeLabel {
    pub fn symbol(name: impl Into<String>, arity: usize) -> Self {
        EdgeLabel::Symbol {
            name: name.into(),
            arity,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            EdgeLabel::Type(t) => t.arity(),
            EdgeLabel::Dollar(k) => *k,
            EdgeLabel::Symbol { arity, .. } => *arity,
        }
    }

    pub fn as_type(&self) -> Option<&HLType> {
        match self {
            EdgeLabel::Type(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_dollar(&self) -> bool {
        matches!(self, EdgeLabel::Dollar(_))
    }

    /// Isomorphism-invariant fingerprint of the label.
    pub(crate) fn key_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        match self {
            EdgeLabel::Type(t) => {
                out.push(b'T');
                out.extend_from_slice(t.key());
            }
            EdgeLabel::Dollar(k) => {
                out.push(b'$');
                out.extend_from_slice(&(*k as u32).to_le_bytes());
            }
            EdgeLabel::Symbol { name, arity } => {
                out.push(b'S');
                out.extend_from_slice(&(name.len() as u32).to_le_bytes());
                out.extend_from_slice(name.as_bytes());
                out.extend_from_slice(&(*arity as u32).to_le_bytes());
            }
        }
        out
    }
}

impl From<HLType> for EdgeLabel {
    fn from(t: HLType) -> Self {
        EdgeLabel::Type(t)
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Type(t) => write!(f, "{t}"),
            EdgeLabel::Dollar(k) => write!(f, "$:{k}"),
            EdgeLabel::Symbol { name, arity } => write!(f, "{name}:{arity}"),
        }
    }
}

/// A hyperedge: id, label and attachment nodes (indices into the node list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    id: String,
    label: EdgeLabel,
    att: Vec<usize>,
}

impl Edge {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn label(&self) -> &EdgeLabel {
        &self.label
    }

    /// Attachment nodes as indices into [`Hypergraph::nodes`].
    pub fn att(&self) -> &[usize] {
        &self.att
    }
}

/// Edge description used by [`Hypergraph::new`], attachment given by node id.
#[derive(Clone, Debug)]
pub struct EdgeSpec {
    pub id: String,
    pub label: EdgeLabel,
    pub att: Vec<String>,
}

impl EdgeSpec {
    pub fn new<S: Into<String>>(
        id: impl Into<String>,
        label: impl Into<EdgeLabel>,
        att: impl IntoIterator<Item = S>,
    ) -> Self {
        EdgeSpec {
            id: id.into(),
            label: label.into(),
            att: att.into_iter().map(Into::into).collect(),
        }
    }
}

/// A hypergraph `⟨V, E, att, lab, ext⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    nodes: Vec<String>,
    edges: Vec<Edge>,
    ext: Vec<usize>,
}

impl Hypergraph {
    /// Builds a graph, checking that ids are unique, every referenced node
    /// exists, no sequence repeats a node and label arities match.
    pub fn new<N: Into<String>, X: Into<String>>(
        nodes: impl IntoIterator<Item = N>,
        edges: impl IntoIterator<Item = EdgeSpec>,
        ext: impl IntoIterator<Item = X>,
    ) -> Result<Self> {
        let nodes: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.as_str(), i).is_some() {
                return Err(Error::DuplicateId(n.clone()));
            }
        }
        let resolve = |ids: &[String], context: &str| -> Result<Vec<usize>> {
            let mut seen = HashSet::new();
            ids.iter()
                .map(|id| {
                    let i = *index
                        .get(id.as_str())
                        .ok_or_else(|| Error::UnknownNode(id.clone()))?;
                    if !seen.insert(i) {
                        return Err(Error::DuplicateNodeInSequence {
                            node: id.clone(),
                            context: context.to_string(),
                        });
                    }
                    Ok(i)
                })
                .collect()
        };
        let mut edge_ids = HashSet::new();
        let mut built = Vec::new();
        for spec in edges {
            if !edge_ids.insert(spec.id.clone()) {
                return Err(Error::DuplicateId(spec.id));
            }
            let context = format!("attachment of edge `{}`", spec.id);
            let att = resolve(&spec.att, &context)?;
            if spec.label.arity() != att.len() {
                return Err(Error::arity(context, spec.label.arity(), att.len()));
            }
            built.push(Edge {
                id: spec.id,
                label: spec.label,
                att,
            });
        }
        let ext: Vec<String> = ext.into_iter().map(Into::into).collect();
        let ext = resolve(&ext, "external nodes")?;
        Ok(Hypergraph {
            nodes,
            edges: built,
            ext,
        })
    }

    pub(crate) fn from_parts(nodes: Vec<String>, edges: Vec<Edge>, ext: Vec<usize>) -> Self {
        let g = Hypergraph { nodes, edges, ext };
        debug_assert!(g.check().is_ok(), "{:?}", g.check());
        g
    }

    /// Re-validates the invariants of an already built graph.
    pub fn check(&self) -> Result<()> {
        let mut ids = HashSet::new();
        for n in &self.nodes {
            if !ids.insert(n) {
                return Err(Error::DuplicateId(n.clone()));
            }
        }
        let mut eids = HashSet::new();
        let n = self.nodes.len();
        let distinct = |seq: &[usize], context: &str| -> Result<()> {
            let mut seen = HashSet::new();
            for &v in seq {
                if v >= n {
                    return Err(Error::UnknownNode(format!("#{v}")));
                }
                if !seen.insert(v) {
                    return Err(Error::DuplicateNodeInSequence {
                        node: self.nodes[v].clone(),
                        context: context.to_string(),
                    });
                }
            }
            Ok(())
        };
        for e in &self.edges {
            if !eids.insert(&e.id) {
                return Err(Error::DuplicateId(e.id.clone()));
            }
            distinct(&e.att, &format!("attachment of edge `{}`", e.id))?;
            if e.label.arity() != e.att.len() {
                return Err(Error::arity(
                    format!("edge `{}`", e.id),
                    e.label.arity(),
                    e.att.len(),
                ));
            }
        }
        distinct(&self.ext, "external nodes")
    }

    /// The handle `a•`: one edge attached to all nodes, which are external.
    pub fn handle(label: impl Into<EdgeLabel>) -> Self {
        let label = label.into();
        let k = label.arity();
        let nodes: Vec<String> = (1..=k).map(|i| format!("v{i}")).collect();
        let att: Vec<usize> = (0..k).collect();
        Hypergraph::from_parts(
            nodes,
            vec![Edge {
                id: "e1".into(),
                label,
                att: att.clone(),
            }],
            att,
        )
    }

    /// The string graph `(a1…an)•`: a path v0 → … → vn with `ext = v0 vn`.
    pub fn string_graph<L: Into<EdgeLabel>>(labels: impl IntoIterator<Item = L>) -> Result<Self> {
        let labels: Vec<EdgeLabel> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidSequent(
                "a string graph needs at least one edge".into(),
            ));
        }
        let mut b = GraphBuilder::default();
        let mut prev = b.node("v0");
        for (i, label) in labels.into_iter().enumerate() {
            if label.arity() != 2 {
                return Err(Error::arity(
                    format!("string graph position {}", i + 1),
                    2,
                    label.arity(),
                ));
            }
            let next = b.node(format!("v{}", i + 1));
            b.edge(format!("e{}", i + 1), label, vec![prev, next]);
            prev = next;
        }
        Ok(b.finish(vec![0, prev]))
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// External nodes as indices into [`Hypergraph::nodes`].
    pub fn ext(&self) -> &[usize] {
        &self.ext
    }

    pub fn ext_ids(&self) -> Vec<&str> {
        self.ext.iter().map(|&v| self.nodes[v].as_str()).collect()
    }

    pub fn att_ids(&self, edge: &Edge) -> Vec<&str> {
        edge.att.iter().map(|&v| self.nodes[v].as_str()).collect()
    }

    /// `type(G) = |ext_G|`.
    pub fn arity(&self) -> usize {
        self.ext.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub(crate) fn require_edge(&self, id: &str) -> Result<usize> {
        self.edge_index(id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Whether node `v` (an index) is external.
    pub fn is_external(&self, v: usize) -> bool {
        self.ext.contains(&v)
    }

    /// Incidence lists: for each node, the edges attached to it.
    pub(crate) fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in &e.att {
                inc[v].push(i);
            }
        }
        inc
    }

    /// `f(H)`: replaces the labels of the mapped edges.
    pub fn relabel(&self, mapping: &BTreeMap<String, EdgeLabel>) -> Result<Self> {
        for id in mapping.keys() {
            self.require_edge(id)?;
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            if let Some(label) = mapping.get(&e.id) {
                if label.arity() != e.att.len() {
                    return Err(Error::arity(
                        format!("relabeling edge `{}`", e.id),
                        e.att.len(),
                        label.arity(),
                    ));
                }
                e.label = label.clone();
            }
        }
        Ok(g)
    }

    /// `H[e0 := a]`.
    pub fn relabel_one(&self, edge: &str, label: impl Into<EdgeLabel>) -> Result<Self> {
        let mut mapping = BTreeMap::new();
        mapping.insert(edge.to_string(), label.into());
        self.relabel(&mapping)
    }

    /// Hyperedge replacement `G[e/H]`.
    pub fn replace(&self, edge: &str, h: &Hypergraph) -> Result<Self> {
        let idx = self.require_edge(edge)?;
        Ok(self.replace_at(idx, h)?.graph)
    }

    /// Simultaneous replacement `G[e1/H1, …, ek/Hk]` of distinct edges.
    pub fn replace_many(&self, assignments: &[(String, Hypergraph)]) -> Result<Self> {
        let mut seen = HashSet::new();
        for (id, h) in assignments {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId(id.clone()));
            }
            let e = &self.edges[self.require_edge(id)?];
            if e.att.len() != h.arity() {
                return Err(Error::arity(
                    format!("replacement of edge `{id}`"),
                    e.att.len(),
                    h.arity(),
                ));
            }
        }
        // Edges outside the inserted copies keep their ids, so the remaining
        // targets can be found by id after each step.
        let mut g = self.clone();
        for (id, h) in assignments {
            let idx = g.require_edge(id)?;
            g = g.replace_at(idx, h)?.graph;
        }
        Ok(g)
    }

    /// Replacement returning where the nodes and edges of `h` ended up.
    pub(crate) fn replace_at(&self, idx: usize, h: &Hypergraph) -> Result<Replaced> {
        let target = &self.edges[idx];
        if target.att.len() != h.arity() {
            return Err(Error::arity(
                format!("replacement of edge `{}`", target.id),
                target.att.len(),
                h.arity(),
            ));
        }
        let mut nodes = self.nodes.clone();
        let mut node_names: HashSet<String> = nodes.iter().cloned().collect();
        let mut node_map = vec![usize::MAX; h.nodes.len()];
        for (i, &x) in h.ext.iter().enumerate() {
            node_map[x] = target.att[i];
        }
        for (v, name) in h.nodes.iter().enumerate() {
            if node_map[v] == usize::MAX {
                let fresh = fresh_name(name, &node_names);
                node_names.insert(fresh.clone());
                node_map[v] = nodes.len();
                nodes.push(fresh);
            }
        }
        let mut edge_names: HashSet<String> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, e)| e.id.clone())
            .collect();
        let mut inserted = Vec::with_capacity(h.edges.len());
        let mut edge_map = Vec::with_capacity(h.edges.len());
        for e in &h.edges {
            let fresh = fresh_name(&e.id, &edge_names);
            edge_names.insert(fresh.clone());
            edge_map.push(idx + inserted.len());
            inserted.push(Edge {
                id: fresh,
                label: e.label.clone(),
                att: e.att.iter().map(|&v| node_map[v]).collect(),
            });
        }
        let mut edges = Vec::with_capacity(self.edges.len() + h.edges.len());
        edges.extend_from_slice(&self.edges[..idx]);
        edges.extend(inserted);
        edges.extend_from_slice(&self.edges[idx + 1..]);
        Ok(Replaced {
            graph: Hypergraph::from_parts(nodes, edges, self.ext.clone()),
            edge_map,
        })
    }

    /// Isomorphism-invariant fingerprint.
    pub fn canonical_key(&self) -> CanonicalKey {
        canon::canonical_key(self)
    }

    pub fn is_isomorphic(&self, other: &Hypergraph) -> bool {
        self.node_count() == other.node_count()
            && self.edge_count() == other.edge_count()
            && self.arity() == other.arity()
            && self.canonical_key() == other.canonical_key()
    }

    /// Compact JSON in the interchange format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&json::RawGraph::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: json::RawGraph = serde_json::from_str(text).map_err(|e| Error::from_json(&e))?;
        raw.build()
    }

    /// Graphviz rendering: nodes as points, edges as boxes with numbered tentacles.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n  node [shape=point];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            match self.ext.iter().position(|&x| x == i) {
                Some(p) => out.push_str(&format!(
                    "  n{i} [xlabel=\"({}) {}\"];\n",
                    p + 1,
                    escape(n)
                )),
                None => out.push_str(&format!("  n{i} [xlabel=\"{}\"];\n", escape(n))),
            }
        }
        for (j, e) in self.edges.iter().enumerate() {
            out.push_str(&format!(
                "  e{j} [shape=box, label=\"{}\"];\n",
                escape(&e.label.to_string())
            ));
            for (k, &v) in e.att.iter().enumerate() {
                out.push_str(&format!("  e{j} -- n{v} [label=\"{}\"];\n", k + 1));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

pub(crate) struct Replaced {
    pub graph: Hypergraph,
    /// Edge of the inserted graph -> edge of the result.
    pub edge_map: Vec<usize>,
}

/// `base` if unused, otherwise `base.k` for the smallest free `k`.
pub(crate) fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}.{k}"))
        .find(|c| !taken.contains(c))
        .expect("unbounded counter")
}

/// Unchecked incremental construction for graphs whose validity follows from
/// how they are built.
#[derive(Default)]
pub(crate) struct GraphBuilder {
    nodes: Vec<String>,
    edges: Vec<Edge>,
}

impl GraphBuilder {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&mut self, name: impl Into<String>) -> usize {
        self.nodes.push(name.into());
        self.nodes.len() - 1
    }

    pub fn edge(&mut self, id: impl Into<String>, label: impl Into<EdgeLabel>, att: Vec<usize>) {
        self.edges.push(Edge {
            id: id.into(),
            label: label.into(),
            att,
        });
    }

    pub fn finish(self, ext: Vec<usize>) -> Hypergraph {
        Hypergraph::from_parts(self.nodes, self.edges, ext)
    }
}
