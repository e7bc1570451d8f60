//! Rule instances, derivation trees, the cut rule and an independent
//! derivation checker.
//!
//! Rules are applied conclusion → premises. Every rule instance carries a
//! witness from which the premises can be recomputed out of the conclusion
//! alone; the checked entry points then rebuild the conclusion forward from
//! those premises and compare up to isomorphism.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeSpec, Hypergraph};
use crate::types::{HLType, Sequent};

/// Edges and internal nodes of the conclusion's antecedent that make up one
/// replaced subgraph. Attachment nodes come from the node map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Part {
    pub edges: BTreeSet<String>,
    pub nodes: BTreeSet<String>,
}

/// How a denominator `D` (for `÷→`) or a product body `M` (for `→×`) sits in
/// the conclusion's antecedent: where its nodes go and which subgraph
/// replaces each of its typed edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Embedding {
    pub node_map: BTreeMap<String, String>,
    pub parts: BTreeMap<String, Part>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleTag {
    Axiom,
    DivLeft,
    DivRight,
    TimesLeft,
    TimesRight,
    Cut,
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleInstance {
    Axiom,
    /// `÷→` on the edge `edge` labeled `N ÷ D`.
    DivLeft { edge: String, embedding: Embedding },
    DivRight,
    /// `×→` on the edge `edge` labeled `×(F)`.
    TimesLeft { edge: String },
    TimesRight { embedding: Embedding },
    /// Cut on the edge `edge` of the right premise's antecedent.
    Cut { edge: String },
}

impl RuleInstance {
    pub fn tag(&self) -> RuleTag {
        match self {
            RuleInstance::Axiom => RuleTag::Axiom,
            RuleInstance::DivLeft { .. } => RuleTag::DivLeft,
            RuleInstance::DivRight => RuleTag::DivRight,
            RuleInstance::TimesLeft { .. } => RuleTag::TimesLeft,
            RuleInstance::TimesRight { .. } => RuleTag::TimesRight,
            RuleInstance::Cut { .. } => RuleTag::Cut,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRule {
    tag: RuleTag,
    #[serde(default)]
    witness: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeWitness {
    edge: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivLeftWitness {
    edge: String,
    node_map: BTreeMap<String, String>,
    parts: BTreeMap<String, Part>,
}

impl Serialize for RuleInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde_json::to_value;
        let witness = match self {
            RuleInstance::Axiom | RuleInstance::DivRight => Ok(serde_json::Value::Null),
            RuleInstance::TimesLeft { edge } | RuleInstance::Cut { edge } => {
                to_value(EdgeWitness { edge: edge.clone() })
            }
            RuleInstance::DivLeft { edge, embedding } => to_value(DivLeftWitness {
                edge: edge.clone(),
                node_map: embedding.node_map.clone(),
                parts: embedding.parts.clone(),
            }),
            RuleInstance::TimesRight { embedding } => to_value(embedding),
        }
        .map_err(serde::ser::Error::custom)?;
        RawRule {
            tag: self.tag(),
            witness,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RuleInstance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        use serde_json::from_value;
        let raw = RawRule::deserialize(d)?;
        let w = raw.witness;
        let null = |w: &serde_json::Value| {
            if w.is_null() {
                Ok(())
            } else {
                Err(D::Error::custom(format!("{} takes no witness", raw.tag)))
            }
        };
        Ok(match raw.tag {
            RuleTag::Axiom => null(&w).map(|_| RuleInstance::Axiom)?,
            RuleTag::DivRight => null(&w).map(|_| RuleInstance::DivRight)?,
            RuleTag::TimesLeft => RuleInstance::TimesLeft {
                edge: from_value::<EdgeWitness>(w).map_err(D::Error::custom)?.edge,
            },
            RuleTag::Cut => RuleInstance::Cut {
                edge: from_value::<EdgeWitness>(w).map_err(D::Error::custom)?.edge,
            },
            RuleTag::DivLeft => {
                let d: DivLeftWitness = from_value(w).map_err(D::Error::custom)?;
                RuleInstance::DivLeft {
                    edge: d.edge,
                    embedding: Embedding {
                        node_map: d.node_map,
                        parts: d.parts,
                    },
                }
            }
            RuleTag::TimesRight => RuleInstance::TimesRight {
                embedding: from_value(w).map_err(D::Error::custom)?,
            },
        })
    }
}

/// A derivation tree. Children are ordered as the rule's premises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationTree {
    pub conclusion: Sequent,
    pub rule: RuleInstance,
    pub children: Vec<DerivationTree>,
}

impl DerivationTree {
    pub fn axiom(p: HLType) -> Self {
        DerivationTree {
            conclusion: Sequent::handle(p),
            rule: RuleInstance::Axiom,
            children: Vec::new(),
        }
    }

    /// Number of rule applications, axioms included.
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Self::node_count).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Self::depth).max().unwrap_or(0)
    }

    /// Pre-order walk over all subtrees.
    pub fn walk(&self) -> Vec<&DerivationTree> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.walk());
        }
        out
    }

    pub fn count(&self, tag: RuleTag) -> usize {
        self.walk().iter().filter(|t| t.rule.tag() == tag).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("derivation serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("derivation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::from_json(&e))
    }
}

fn witness(msg: impl Into<String>) -> Error {
    Error::InvalidWitness(msg.into())
}

/// Whether `s` is an instance of the axiom `p• → p`.
pub fn is_axiom(s: &Sequent) -> bool {
    s.succedent().is_primitive() && s.antecedent().is_isomorphic(&Hypergraph::handle(s.succedent().clone()))
}

/// `×→`: `G → A` from `G[e/F] → A`.
pub fn premise_times_left(goal: &Sequent, edge: &str) -> Result<Sequent> {
    let g = goal.antecedent();
    let idx = g.require_edge(edge)?;
    let body = g.edges()[idx]
        .label()
        .as_type()
        .and_then(HLType::as_product)
        .ok_or_else(|| Error::NotProduct(edge.to_string()))?;
    let out = g.replace_at(idx, body)?.graph;
    Sequent::new(out, goal.succedent().clone())
}

/// `→÷`: `F → N ÷ D` from `D[d0/F] → N`.
pub fn premise_div_right(goal: &Sequent) -> Result<Sequent> {
    let (num, den, d0) = goal.succedent().as_division().ok_or(Error::NotDivision)?;
    let out = den.replace_at(d0, goal.antecedent())?.graph;
    Sequent::new(out, num.clone())
}

/// `÷→`, checked: recomputes `[H → A, H_1 → lab(d_1), …]` and verifies that
/// `H[e/D][d0 := N÷D][d_i/H_i]` is isomorphic to the conclusion's antecedent.
pub fn premises_div_left(
    conclusion: &Sequent,
    edge: &str,
    embedding: &Embedding,
) -> Result<Vec<Sequent>> {
    let premises = div_left_premises(conclusion, edge, embedding)?;
    let g = conclusion.antecedent();
    let ty = g.edges()[g.require_edge(edge)?]
        .label()
        .as_type()
        .expect("checked above")
        .clone();
    let rebuilt = rebuild_div_left(&premises, edge, &ty)?;
    if !rebuilt.is_isomorphic(g) {
        return Err(witness("forward reconstruction differs from the conclusion"));
    }
    Ok(premises)
}

/// `→×`, checked: recomputes `[H_i → lab(m_i)]` and verifies that
/// `M[m_i/H_i]` is isomorphic to the antecedent.
pub fn premises_times_right(goal: &Sequent, embedding: &Embedding) -> Result<Vec<Sequent>> {
    let premises = times_right_premises(goal, embedding)?;
    let body = goal.succedent().as_product().expect("checked above");
    let rebuilt = rebuild_times_right(body, &premises)?;
    if !rebuilt.is_isomorphic(goal.antecedent()) {
        return Err(witness("forward reconstruction differs from the conclusion"));
    }
    Ok(premises)
}

/// The cut rule: from `H → A` and `G → B` with `lab(e0) = A`, `G[e0/H] → B`.
pub fn cut(left: &Sequent, right: &Sequent, edge: &str) -> Result<Sequent> {
    let g = right.antecedent();
    let idx = g.require_edge(edge)?;
    if g.edges()[idx].label().as_type() != Some(left.succedent()) {
        return Err(Error::LabelMismatch(edge.to_string()));
    }
    let out = g.replace_at(idx, left.antecedent())?.graph;
    Sequent::new(out, right.succedent().clone())
}

/// Premises of a non-cut rule instance, recomputed from the conclusion and
/// checked against it.
pub fn premises(conclusion: &Sequent, rule: &RuleInstance) -> Result<Vec<Sequent>> {
    match rule {
        RuleInstance::Axiom => {
            if is_axiom(conclusion) {
                Ok(Vec::new())
            } else {
                Err(witness("not an axiom p• → p"))
            }
        }
        RuleInstance::DivLeft { edge, embedding } => premises_div_left(conclusion, edge, embedding),
        RuleInstance::DivRight => Ok(vec![premise_div_right(conclusion)?]),
        RuleInstance::TimesLeft { edge } => Ok(vec![premise_times_left(conclusion, edge)?]),
        RuleInstance::TimesRight { embedding } => premises_times_right(conclusion, embedding),
        RuleInstance::Cut { .. } => Err(witness(
            "cut premises are not determined by the conclusion",
        )),
    }
}

fn node_of(g: &Hypergraph, id: &str) -> Result<usize> {
    g.node_index(id)
        .ok_or_else(|| witness(format!("unknown node `{id}`")))
}

fn mapped<'a>(map: &'a BTreeMap<String, String>, node: &str) -> Result<&'a str> {
    map.get(node)
        .map(String::as_str)
        .ok_or_else(|| witness(format!("node `{node}` is not mapped")))
}

/// Builds `H_i` for an edge of `D`/`M` attached to `att` (inner node ids).
fn part_graph(
    g: &Hypergraph,
    map: &BTreeMap<String, String>,
    att: &[&str],
    part: &Part,
) -> Result<Hypergraph> {
    let ext: Vec<String> = att
        .iter()
        .map(|n| mapped(map, n).map(String::from))
        .collect::<Result<_>>()?;
    let mut nodes = ext.clone();
    for v in g.nodes() {
        if part.nodes.contains(v) {
            if ext.contains(v) {
                return Err(witness(format!("node `{v}` is both attachment and internal")));
            }
            nodes.push(v.clone());
        }
    }
    if nodes.len() != ext.len() + part.nodes.len() {
        return Err(witness("part lists an unknown node"));
    }
    let mut edges = Vec::new();
    for e in g.edges() {
        if part.edges.contains(e.id()) {
            edges.push(EdgeSpec::new(e.id(), e.label().clone(), g.att_ids(e)));
        }
    }
    if edges.len() != part.edges.len() {
        return Err(witness("part lists an unknown edge"));
    }
    Hypergraph::new(nodes, edges, ext).map_err(|e| witness(format!("part is not a graph: {e}")))
}

fn check_partition(
    g: &Hypergraph,
    map: &BTreeMap<String, String>,
    inner: &Hypergraph,
    parts: &BTreeMap<String, Part>,
    skip: Option<usize>,
) -> Result<()> {
    let expected: BTreeSet<&str> = inner
        .edges()
        .iter()
        .filter(|e| !e.label().is_dollar())
        .map(|e| e.id())
        .collect();
    let given: BTreeSet<&str> = parts.keys().map(String::as_str).collect();
    if expected != given {
        return Err(witness("parts must name exactly the typed edges"));
    }
    let keys: BTreeSet<&str> = map.keys().map(String::as_str).collect();
    let inner_nodes: BTreeSet<&str> = inner.nodes().iter().map(String::as_str).collect();
    if keys != inner_nodes {
        return Err(witness("node map must cover exactly the inner graph's nodes"));
    }
    let mut image = HashSet::new();
    for v in map.values() {
        node_of(g, v)?;
        if !image.insert(v.as_str()) {
            return Err(witness(format!("node map is not injective at `{v}`")));
        }
    }
    let mut used_edges = HashSet::new();
    let mut used_nodes = HashSet::new();
    for part in parts.values() {
        for e in &part.edges {
            let idx = g.require_edge(e).map_err(|_| witness(format!("unknown edge `{e}`")))?;
            if Some(idx) == skip || !used_edges.insert(e.as_str()) {
                return Err(witness(format!("edge `{e}` is used twice")));
            }
        }
        for v in &part.nodes {
            node_of(g, v)?;
            if image.contains(v.as_str()) || !used_nodes.insert(v.as_str()) {
                return Err(witness(format!("node `{v}` is used twice")));
            }
        }
    }
    Ok(())
}

pub(crate) fn div_left_premises(
    conclusion: &Sequent,
    edge: &str,
    embedding: &Embedding,
) -> Result<Vec<Sequent>> {
    let g = conclusion.antecedent();
    let idx = g.require_edge(edge)?;
    let target = &g.edges()[idx];
    let (num, den, d0) = target
        .label()
        .as_type()
        .and_then(HLType::as_division)
        .ok_or_else(|| witness(format!("edge `{edge}` is not labeled by a division")))?;
    let map = &embedding.node_map;
    check_partition(g, map, den, &embedding.parts, Some(idx))?;
    for (dv, gv) in den.att_ids(&den.edges()[d0]).into_iter().zip(g.att_ids(target)) {
        if mapped(map, dv)? != gv {
            return Err(witness("node map must send att(d0) to the attachment of the edge"));
        }
    }

    let mut removed: HashSet<&str> = HashSet::new();
    for (i, v) in den.nodes().iter().enumerate() {
        if !den.is_external(i) {
            removed.insert(mapped(map, v)?);
        }
    }
    let mut part_edges = HashSet::new();
    for p in embedding.parts.values() {
        removed.extend(p.nodes.iter().map(String::as_str));
        part_edges.extend(p.edges.iter().map(String::as_str));
    }
    let nodes: Vec<&str> = g
        .nodes()
        .iter()
        .map(String::as_str)
        .filter(|v| !removed.contains(v))
        .collect();
    let mut edges = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if i == idx {
            let att: Vec<&str> = den
                .ext_ids()
                .into_iter()
                .map(|v| mapped(map, v))
                .collect::<Result<_>>()?;
            edges.push(EdgeSpec::new(edge, num.clone(), att));
        } else if !part_edges.contains(e.id()) {
            edges.push(EdgeSpec::new(e.id(), e.label().clone(), g.att_ids(e)));
        }
    }
    let residue = Hypergraph::new(nodes, edges, g.ext_ids())
        .map_err(|e| witness(format!("residue is not a graph: {e}")))?;
    let mut out = vec![Sequent::new(residue, conclusion.succedent().clone())?];
    for (id, part) in &embedding.parts {
        let d = den.edge(id).expect("checked by partition");
        let h = part_graph(g, map, &den.att_ids(d), part)?;
        out.push(Sequent::new(h, d.label().as_type().expect("typed").clone())?);
    }
    Ok(out)
}

pub(crate) fn times_right_premises(goal: &Sequent, embedding: &Embedding) -> Result<Vec<Sequent>> {
    let body = goal
        .succedent()
        .as_product()
        .ok_or_else(|| witness("succedent is not a product"))?;
    let g = goal.antecedent();
    let map = &embedding.node_map;
    check_partition(g, map, body, &embedding.parts, None)?;
    for (mv, gv) in body.ext_ids().into_iter().zip(g.ext_ids()) {
        if mapped(map, mv)? != gv {
            return Err(witness("node map must send ext(M) to the external nodes"));
        }
    }
    embedding
        .parts
        .iter()
        .map(|(id, part)| {
            let m = body.edge(id).expect("checked by partition");
            let h = part_graph(g, map, &body.att_ids(m), part)?;
            Sequent::new(h, m.label().as_type().expect("typed").clone())
        })
        .collect()
}

/// Forward `÷→` from the premises. `edge` is the main premise's `N`-edge.
fn rebuild_div_left(premises: &[Sequent], edge: &str, ty: &HLType) -> Result<Hypergraph> {
    let (_, den, d0) = ty.as_division().expect("division");
    let h = premises[0].antecedent();
    let r = h.replace_at(h.require_edge(edge)?, den)?;
    let ids: Vec<String> = r.edge_map.iter().map(|&i| r.graph.edges()[i].id().to_string()).collect();
    let g = r.graph.relabel_one(&ids[d0], ty.clone())?;
    let typed: Vec<usize> = (0..den.edge_count()).filter(|&i| i != d0).collect();
    let mut order: Vec<(&str, usize)> = typed.iter().map(|&i| (den.edges()[i].id(), i)).collect();
    order.sort();
    let assignments: Vec<(String, Hypergraph)> = order
        .iter()
        .zip(&premises[1..])
        .map(|(&(_, i), p)| (ids[i].clone(), p.antecedent().clone()))
        .collect();
    g.replace_many(&assignments)
}

fn rebuild_times_right(body: &Hypergraph, premises: &[Sequent]) -> Result<Hypergraph> {
    let mut ids: Vec<&str> = body.edges().iter().map(|e| e.id()).collect();
    ids.sort();
    let assignments: Vec<(String, Hypergraph)> = ids
        .into_iter()
        .zip(premises)
        .map(|(id, p)| (id.to_string(), p.antecedent().clone()))
        .collect();
    body.replace_many(&assignments)
}

/// Forward `÷→`: the conclusion built from the premises `H → A` (with the
/// `N`-edge `edge`) and `H_i → lab(d_i)` ordered by the id of `d_i`.
pub fn apply_div_left(
    main: &Sequent,
    edge: &str,
    ty: &HLType,
    minor: &[Sequent],
) -> Result<Sequent> {
    let (num, den, d0) = ty.as_division().ok_or(Error::NotDivision)?;
    let h = main.antecedent();
    let idx = h.require_edge(edge)?;
    if h.edges()[idx].label().as_type() != Some(num) {
        return Err(Error::LabelMismatch(edge.to_string()));
    }
    let mut typed: Vec<&crate::hypergraph::Edge> =
        den.edges().iter().enumerate().filter(|(i, _)| *i != d0).map(|(_, e)| e).collect();
    typed.sort_by(|a, b| a.id().cmp(b.id()));
    if typed.len() != minor.len() {
        return Err(Error::arity("÷→ minor premises", typed.len(), minor.len()));
    }
    for (d, p) in typed.iter().zip(minor) {
        if d.label().as_type() != Some(p.succedent()) {
            return Err(Error::LabelMismatch(d.id().to_string()));
        }
    }
    let mut premises = vec![main.clone()];
    premises.extend_from_slice(minor);
    Sequent::new(rebuild_div_left(&premises, edge, ty)?, main.succedent().clone())
}

/// Forward `→×`: `M[m_i/H_i] → ×(M)`, premises ordered by the id of `m_i`.
pub fn apply_times_right(ty: &HLType, premises: &[Sequent]) -> Result<Sequent> {
    let body = ty
        .as_product()
        .ok_or_else(|| Error::InvalidType("expected a product type".into()))?;
    let mut typed: Vec<&crate::hypergraph::Edge> = body.edges().iter().collect();
    typed.sort_by(|a, b| a.id().cmp(b.id()));
    if typed.len() != premises.len() {
        return Err(Error::arity("→× premises", typed.len(), premises.len()));
    }
    for (m, p) in typed.iter().zip(premises) {
        if m.label().as_type() != Some(p.succedent()) {
            return Err(Error::LabelMismatch(m.id().to_string()));
        }
    }
    Sequent::new(rebuild_times_right(body, premises)?, ty.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    CutFree,
    WithCut,
}

/// Where and why a derivation failed to check. `path` lists child indices
/// from the root.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at {path:?}: {reason}")]
pub struct VerifyError {
    pub path: Vec<usize>,
    pub reason: String,
}

/// Checks every node of `tree`: axioms are `p• → p` for primitive `p`, and
/// every other node's recomputed premises are isomorphic, in order, to its
/// children's conclusions. Cut nodes are checked forward.
pub fn verify_derivation(tree: &DerivationTree, mode: Mode) -> std::result::Result<(), VerifyError> {
    let mut path = Vec::new();
    verify_node(tree, mode, &mut path)
}

pub fn is_valid_derivation(tree: &DerivationTree, mode: Mode) -> bool {
    verify_derivation(tree, mode).is_ok()
}

fn verify_node(
    tree: &DerivationTree,
    mode: Mode,
    path: &mut Vec<usize>,
) -> std::result::Result<(), VerifyError> {
    let fail = |path: &[usize], reason: String| VerifyError {
        path: path.to_vec(),
        reason,
    };
    let conclusions: Vec<&Sequent> = tree.children.iter().map(|c| &c.conclusion).collect();
    match &tree.rule {
        RuleInstance::Cut { edge } => {
            if mode == Mode::CutFree {
                return Err(fail(path, "cut in cut-free mode".into()));
            }
            let [left, right] = conclusions[..] else {
                return Err(fail(path, format!("cut needs 2 premises, got {}", conclusions.len())));
            };
            let composed = cut(left, right, edge).map_err(|e| fail(path, e.to_string()))?;
            if !composed.is_isomorphic(&tree.conclusion) {
                return Err(fail(path, "cut composite differs from the conclusion".into()));
            }
        }
        rule => {
            let expected = premises(&tree.conclusion, rule).map_err(|e| fail(path, e.to_string()))?;
            if expected.len() != conclusions.len() {
                return Err(fail(
                    path,
                    format!(
                        "{} expects {} premises, got {}",
                        rule.tag(),
                        expected.len(),
                        conclusions.len()
                    ),
                ));
            }
            for (i, (want, got)) in expected.iter().zip(&conclusions).enumerate() {
                if !want.is_isomorphic(got) {
                    return Err(fail(path, format!("premise {i} does not match its subtree")));
                }
            }
        }
    }
    for (i, c) in tree.children.iter().enumerate() {
        path.push(i);
        verify_node(c, mode, path)?;
        path.pop();
    }
    Ok(())
}
