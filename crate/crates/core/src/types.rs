//! HL types, sequents, the size measure and the structural predicates used
//! by the wolf lemma.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::json::{type_from_json, type_to_json, RawGraph, RawType};
use crate::hypergraph::{CanonicalKey, EdgeLabel, Hypergraph};

/// An HL type. Cheap to clone; compared structurally up to isomorphism of
/// the graphs inside it.
#[derive(Clone)]
pub struct HLType(Arc<Node>);

struct Node {
    kind: TypeKind,
    arity: usize,
    size: usize,
    key: Vec<u8>,
}

#[derive(Debug)]
pub enum TypeKind {
    /// A primitive type. Name and arity together identify it.
    Primitive { name: String, arity: usize },
    /// `N ÷ D`: the denominator has exactly one `$`-labeled edge.
    Division {
        numerator: HLType,
        denominator: Hypergraph,
    },
    /// `×(M)`.
    Product { body: Hypergraph },
}

impl HLType {
    pub fn primitive(name: impl Into<String>, arity: usize) -> Self {
        let name = name.into();
        let mut key = vec![b'P'];
        key.extend_from_slice(&(name.len() as u32).to_le_bytes());
        key.extend_from_slice(name.as_bytes());
        key.extend_from_slice(&(arity as u32).to_le_bytes());
        HLType(Arc::new(Node {
            kind: TypeKind::Primitive { name, arity },
            arity,
            size: 1,
            key,
        }))
    }

    pub fn division(numerator: HLType, denominator: Hypergraph) -> Result<Self> {
        let mut dollar = None;
        let mut size = numerator.size() + 1;
        for e in denominator.edges() {
            match e.label() {
                EdgeLabel::Dollar(k) => {
                    if dollar.replace(*k).is_some() {
                        return Err(Error::InvalidType(
                            "denominator has more than one `$` edge".into(),
                        ));
                    }
                }
                EdgeLabel::Type(t) => size += t.size(),
                EdgeLabel::Symbol { name, .. } => {
                    return Err(Error::InvalidType(format!(
                        "denominator edge labeled by non-type symbol `{name}`"
                    )))
                }
            }
        }
        let arity = dollar
            .ok_or_else(|| Error::InvalidType("denominator has no `$` edge".into()))?;
        if numerator.arity() != denominator.arity() {
            return Err(Error::arity(
                "numerator vs denominator",
                denominator.arity(),
                numerator.arity(),
            ));
        }
        let mut key = vec![b'D'];
        push_block(&mut key, numerator.key());
        push_block(&mut key, denominator.canonical_key().as_bytes());
        Ok(HLType(Arc::new(Node {
            kind: TypeKind::Division {
                numerator,
                denominator,
            },
            arity,
            size,
            key,
        })))
    }

    pub fn product(body: Hypergraph) -> Result<Self> {
        let mut size = 1;
        for e in body.edges() {
            match e.label() {
                EdgeLabel::Type(t) => size += t.size(),
                other => {
                    return Err(Error::InvalidType(format!(
                        "product body edge `{}` labeled by `{other}`",
                        e.id()
                    )))
                }
            }
        }
        let mut key = vec![b'X'];
        push_block(&mut key, body.canonical_key().as_bytes());
        Ok(HLType(Arc::new(Node {
            arity: body.arity(),
            kind: TypeKind::Product { body },
            size,
            key,
        })))
    }

    pub fn kind(&self) -> &TypeKind {
        &self.0.kind
    }

    /// The type's arity (number of attachment nodes of an edge it labels).
    pub fn arity(&self) -> usize {
        self.0.arity
    }

    /// `|p| = 1`, `|N÷D| = |N| + Σ|lab(d_i)| + 1`, `|×(M)| = Σ|lab(m_i)| + 1`.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub(crate) fn key(&self) -> &[u8] {
        &self.0.key
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey(self.0.key.clone())
    }

    pub fn is_primitive(&self) -> bool {
        matches!(self.kind(), TypeKind::Primitive { .. })
    }

    pub fn as_primitive(&self) -> Option<(&str, usize)> {
        match self.kind() {
            TypeKind::Primitive { name, arity } => Some((name, *arity)),
            _ => None,
        }
    }

    /// For `N ÷ D`: numerator, denominator and the index of the `$` edge.
    pub fn as_division(&self) -> Option<(&HLType, &Hypergraph, usize)> {
        match self.kind() {
            TypeKind::Division {
                numerator,
                denominator,
            } => {
                let d0 = denominator
                    .edges()
                    .iter()
                    .position(|e| e.label().is_dollar())
                    .expect("validated denominator");
                Some((numerator, denominator, d0))
            }
            _ => None,
        }
    }

    pub fn as_product(&self) -> Option<&Hypergraph> {
        match self.kind() {
            TypeKind::Product { body } => Some(body),
            _ => None,
        }
    }

    /// Types labeling the edges of an inner graph (all edges but `$`).
    fn children(&self) -> Vec<&HLType> {
        match self.kind() {
            TypeKind::Primitive { .. } => Vec::new(),
            TypeKind::Division {
                numerator,
                denominator,
            } => std::iter::once(numerator)
                .chain(denominator.edges().iter().filter_map(|e| e.label().as_type()))
                .collect(),
            TypeKind::Product { body } => body
                .edges()
                .iter()
                .filter_map(|e| e.label().as_type())
                .collect(),
        }
    }

    /// Every subtype occurrence, including `self` and those in denominators.
    pub fn subtypes(&self) -> Vec<HLType> {
        let mut out = vec![self.clone()];
        for c in self.children() {
            out.extend(c.subtypes());
        }
        out
    }

    /// Occurrences reachable through product bodies and division numerators.
    pub fn top_occurrences(&self) -> Vec<Occurrence> {
        let mut out = Vec::new();
        self.collect_top(&mut Vec::new(), &mut out);
        out
    }

    fn collect_top(&self, path: &mut Vec<Step>, out: &mut Vec<Occurrence>) {
        out.push(Occurrence {
            path: path.clone(),
            ty: self.clone(),
        });
        match self.kind() {
            TypeKind::Primitive { .. } => {}
            TypeKind::Division { numerator, .. } => {
                path.push(Step::Numerator);
                numerator.collect_top(path, out);
                path.pop();
            }
            TypeKind::Product { body } => {
                for e in body.edges() {
                    if let Some(t) = e.label().as_type() {
                        path.push(Step::Edge(e.id().to_string()));
                        t.collect_top(path, out);
                        path.pop();
                    }
                }
            }
        }
    }

    /// Whether every top occurrence of `prim` labels an edge of a product
    /// body with at least two edges.
    pub fn is_lonely(&self, prim: &HLType) -> bool {
        fn visit(t: &HLType, prim: &HLType, guarded: bool) -> bool {
            match t.kind() {
                TypeKind::Primitive { .. } => t != prim || guarded,
                TypeKind::Division { numerator, .. } => visit(numerator, prim, false),
                TypeKind::Product { body } => {
                    let guard = body.edge_count() >= 2;
                    body.edges()
                        .iter()
                        .filter_map(|e| e.label().as_type())
                        .all(|c| visit(c, prim, guard))
                }
            }
        }
        visit(self, prim, false)
    }

    /// `×(M)` with no edges and every node external.
    pub fn is_skeleton(&self) -> bool {
        match self.kind() {
            TypeKind::Product { body } => {
                body.edge_count() == 0 && body.arity() == body.node_count()
            }
            _ => false,
        }
    }

    pub fn has_skeleton_subtype(&self) -> bool {
        self.is_skeleton() || self.children().into_iter().any(|c| c.has_skeleton_subtype())
    }

    pub fn to_json(&self) -> String {
        type_to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        type_from_json(text)
    }

    /// Parses the text syntax: `p:2`, `x(<graph json>)`, `div(<type>,<graph json>)`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut p = TextParser { src: text, pos: 0 };
        p.skip_ws();
        let t = p.parse_type()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

/// Parses an edge label in text syntax: a type, or `$:k` for the placeholder.
pub fn parse_label_text(text: &str) -> Result<EdgeLabel> {
    let trimmed = text.trim();
    if let Some(k) = trimmed.strip_prefix("$:") {
        let k = k.trim().parse().map_err(|_| Error::Parse {
            line: 1,
            column: 3,
            message: "expected arity after `$:`".into(),
        })?;
        return Ok(EdgeLabel::Dollar(k));
    }
    HLType::parse_text(text).map(EdgeLabel::Type)
}

fn push_block(out: &mut Vec<u8>, bytes: &[u8]) {
    out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
    out.extend_from_slice(bytes);
}

impl PartialEq for HLType {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.key == other.0.key
    }
}

impl Eq for HLType {}

impl Hash for HLType {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.key.hash(state);
    }
}

impl PartialOrd for HLType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HLType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.key.cmp(&other.0.key)
    }
}

impl fmt::Display for HLType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TypeKind::Primitive { name, arity } => write!(f, "{name}:{arity}"),
            TypeKind::Division {
                numerator,
                denominator,
            } => write!(f, "div({numerator},{})", denominator.to_json()),
            TypeKind::Product { body } => write!(f, "x({})", body.to_json()),
        }
    }
}

impl fmt::Debug for HLType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One step of an occurrence path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Into the label of the product body edge with this id.
    Edge(String),
    Numerator,
}

#[derive(Clone, Debug)]
pub struct Occurrence {
    pub path: Vec<Step>,
    pub ty: HLType,
}

struct TextParser<'a> {
    src: &'a str,
    pos: usize,
}

impl TextParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error(&self, message: &str) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn parse_type(&mut self) -> Result<HLType> {
        self.skip_ws();
        if self.eat("x(") {
            let body = self.parse_graph()?;
            self.expect(")")?;
            return HLType::product(body);
        }
        if self.eat("div(") {
            let num = self.parse_type()?;
            self.expect(",")?;
            let den = self.parse_graph()?;
            self.expect(")")?;
            return HLType::division(num, den);
        }
        let name: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_alphanumeric() || *c == '_' || *c == '\'')
            .collect();
        if name.is_empty() {
            return Err(self.error("expected a type"));
        }
        self.pos += name.len();
        self.expect(":")?;
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.error("expected arity"));
        }
        self.pos += digits.len();
        Ok(HLType::primitive(name, digits.parse().expect("digits")))
    }

    fn parse_graph(&mut self) -> Result<Hypergraph> {
        self.skip_ws();
        let mut stream = serde_json::Deserializer::from_str(self.rest()).into_iter::<RawGraph>();
        match stream.next() {
            Some(Ok(raw)) => {
                self.pos += stream.byte_offset();
                raw.build()
            }
            Some(Err(e)) => Err(self.error(&e.to_string())),
            None => Err(self.error("expected a graph")),
        }
    }
}

/// A graph sequent `H → A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sequent {
    antecedent: Hypergraph,
    succedent: HLType,
}

impl Sequent {
    pub fn new(antecedent: Hypergraph, succedent: HLType) -> Result<Self> {
        for e in antecedent.edges() {
            if e.label().as_type().is_none() {
                return Err(Error::InvalidSequent(format!(
                    "antecedent edge `{}` is labeled by `{}`, not a type",
                    e.id(),
                    e.label()
                )));
            }
        }
        if antecedent.arity() != succedent.arity() {
            return Err(Error::arity(
                "sequent antecedent vs succedent",
                succedent.arity(),
                antecedent.arity(),
            ));
        }
        Ok(Sequent {
            antecedent,
            succedent,
        })
    }

    /// `T• → T`.
    pub fn handle(t: HLType) -> Self {
        Sequent {
            antecedent: Hypergraph::handle(t.clone()),
            succedent: t,
        }
    }

    pub fn antecedent(&self) -> &Hypergraph {
        &self.antecedent
    }

    pub fn succedent(&self) -> &HLType {
        &self.succedent
    }

    /// Type labeling antecedent edge `i`.
    pub fn label(&self, i: usize) -> &HLType {
        self.antecedent.edges()[i]
            .label()
            .as_type()
            .expect("sequent antecedents carry types")
    }

    /// Sum of label sizes in the antecedent plus the size of the succedent.
    pub fn size(&self) -> usize {
        (0..self.antecedent.edge_count())
            .map(|i| self.label(i).size())
            .sum::<usize>()
            + self.succedent.size()
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let mut bytes = self.antecedent.canonical_key().0;
        bytes.push(b'>');
        bytes.extend_from_slice(self.succedent.key());
        CanonicalKey(bytes)
    }

    pub fn is_isomorphic(&self, other: &Sequent) -> bool {
        self.succedent == other.succedent && self.antecedent.is_isomorphic(&other.antecedent)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequent serializes")
    }

    /// Syntax errors come back as [`Error::Parse`]; validation errors keep
    /// their own variant.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            antecedent: RawGraph,
            succedent: RawType,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::from_json(&e))?;
        Sequent::new(raw.antecedent.build()?, raw.succedent.build()?)
    }
}

impl<'de> Deserialize<'de> for Sequent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            antecedent: Hypergraph,
            succedent: HLType,
        }
        let raw = Raw::deserialize(d)?;
        Sequent::new(raw.antecedent, raw.succedent).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.antecedent, self.succedent)
    }
}

/// `seq_size` as a free function.
pub fn seq_size(s: &Sequent) -> usize {
    s.size()
}
