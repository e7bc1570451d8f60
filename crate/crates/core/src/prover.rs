//! Backward proof search for HL sequents.
//!
//! Every rule removes exactly one unit of sequent size, so the search tree is
//! finite and plain depth-first search with a memo keyed by canonical sequent
//! forms decides derivability.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::calculus::{self, DerivationTree, Embedding, Part, RuleInstance};
use crate::hypergraph::{CanonicalKey, Hypergraph};
use crate::types::{HLType, Sequent, TypeKind};

#[derive(Clone, Debug)]
pub struct ProverConfig {
    /// Goals larger than this are rejected. `None` means no limit beyond the
    /// goal itself, which is always enough.
    pub max_seq_size: Option<usize>,
    pub timeout: Duration,
    /// Refute `H → p` when every label avoids skeletons and keeps `p` lonely.
    pub enable_wolf_pruning: bool,
    /// Refute sequents whose primitive occurrences are unbalanced by polarity.
    pub enable_count_check: bool,
    /// Apply `×→` and `→÷` eagerly: both are invertible.
    pub invertible_first: bool,
    /// Maximum number of memo entries kept.
    pub memo_capacity: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            max_seq_size: None,
            timeout: Duration::from_secs(30),
            enable_wolf_pruning: true,
            enable_count_check: true,
            invertible_first: true,
            memo_capacity: 1 << 20,
        }
    }
}

impl ProverConfig {
    /// Exhaustive search with every shortcut disabled.
    pub fn plain() -> Self {
        ProverConfig {
            enable_wolf_pruning: false,
            enable_count_check: false,
            invertible_first: false,
            ..ProverConfig::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub nodes_expanded: u64,
    pub memo_hits: u64,
    pub instances_tried: u64,
    pub pruned_wolf: u64,
    pub pruned_count: u64,
    pub memo_entries: usize,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Derivable(DerivationTree),
    NotDerivable,
}

impl Outcome {
    pub fn is_derivable(&self) -> bool {
        matches!(self, Outcome::Derivable(_))
    }

    pub fn tree(&self) -> Option<&DerivationTree> {
        match self {
            Outcome::Derivable(t) => Some(t),
            Outcome::NotDerivable => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search timed out after expanding {} goals", .0.nodes_expanded)]
    Timeout(Stats),
    #[error("sequent size {size} exceeds the limit {limit}")]
    SizeLimit { size: usize, limit: usize },
}

/// A prover handle. The memo survives across queries on the same handle.
pub struct Prover {
    cfg: ProverConfig,
    memo: HashMap<CanonicalKey, Option<Arc<DerivationTree>>>,
    stats: Stats,
    deadline: Option<Instant>,
}

impl Prover {
    pub fn new(cfg: ProverConfig) -> Self {
        Prover {
            cfg,
            memo: HashMap::new(),
            stats: Stats::default(),
            deadline: None,
        }
    }

    pub fn config(&self) -> &ProverConfig {
        &self.cfg
    }

    pub fn stats(&self) -> Stats {
        Stats {
            memo_entries: self.memo.len(),
            ..self.stats.clone()
        }
    }

    pub fn prove(&mut self, goal: &Sequent) -> Result<Outcome, SearchError> {
        if let Some(limit) = self.cfg.max_seq_size {
            if goal.size() > limit {
                return Err(SearchError::SizeLimit {
                    size: goal.size(),
                    limit,
                });
            }
        }
        self.deadline = Some(Instant::now() + self.cfg.timeout);
        let found = self.search(goal).and_then(|found| match found {
            // A memo hit from an earlier query may use other ids at the root.
            Some(tree) if tree.conclusion != *goal => self.expand(goal),
            other => Ok(other),
        });
        self.deadline = None;
        Ok(match found? {
            Some(tree) => Outcome::Derivable(DerivationTree::clone(&tree)),
            None => Outcome::NotDerivable,
        })
    }

    pub fn derivable(&mut self, goal: &Sequent) -> Result<bool, SearchError> {
        Ok(self.prove(goal)?.is_derivable())
    }

    fn search(&mut self, goal: &Sequent) -> Result<Option<Arc<DerivationTree>>, SearchError> {
        if calculus::is_axiom(goal) {
            return Ok(Some(Arc::new(DerivationTree {
                conclusion: goal.clone(),
                rule: RuleInstance::Axiom,
                children: Vec::new(),
            })));
        }
        let key = goal.canonical_key();
        if let Some(hit) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(hit.clone());
        }
        if self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(SearchError::Timeout(self.stats()));
        }
        self.stats.nodes_expanded += 1;
        let verdict = self.expand(goal)?;
        if self.memo.len() < self.cfg.memo_capacity {
            self.memo.insert(key, verdict.clone());
        }
        Ok(verdict)
    }

    fn expand(&mut self, goal: &Sequent) -> Result<Option<Arc<DerivationTree>>, SearchError> {
        if self.cfg.enable_count_check && !polarity_balanced(goal) {
            self.stats.pruned_count += 1;
            return Ok(None);
        }
        if self.cfg.enable_wolf_pruning && wolf_refutes(goal) {
            self.stats.pruned_wolf += 1;
            return Ok(None);
        }
        if self.cfg.invertible_first {
            if let Some(rule) = invertible_instance(goal) {
                let premises = calculus::premises(goal, &rule).expect("invertible rule applies");
                return self.try_instance(goal, rule, premises);
            }
        }
        let mut seen = HashSet::new();
        for (rule, premises) in instances(goal) {
            let mut keys: Vec<CanonicalKey> = premises.iter().map(Sequent::canonical_key).collect();
            keys.sort();
            if !seen.insert(keys) {
                continue;
            }
            if let Some(tree) = self.try_instance(goal, rule, premises)? {
                return Ok(Some(tree));
            }
        }
        Ok(None)
    }

    fn try_instance(
        &mut self,
        goal: &Sequent,
        rule: RuleInstance,
        premises: Vec<Sequent>,
    ) -> Result<Option<Arc<DerivationTree>>, SearchError> {
        self.stats.instances_tried += 1;
        let mut order: Vec<usize> = (0..premises.len()).collect();
        order.sort_by_key(|&i| premises[i].size());
        let mut children = vec![None; premises.len()];
        for i in order {
            match self.search(&premises[i])? {
                Some(t) => children[i] = Some(t),
                None => return Ok(None),
            }
        }
        // Memo hits may be trees for isomorphic copies of a premise. Every
        // witness refers to its own node's conclusion, so they stay valid.
        let children = children
            .into_iter()
            .map(|t| DerivationTree::clone(&t.expect("all premises proved")))
            .collect();
        Ok(Some(Arc::new(DerivationTree {
            conclusion: goal.clone(),
            rule,
            children,
        })))
    }
}

/// `×→` on the first product edge, else `→÷` when the succedent is a division.
fn invertible_instance(goal: &Sequent) -> Option<RuleInstance> {
    for e in goal.antecedent().edges() {
        if e.label().as_type().and_then(HLType::as_product).is_some() {
            return Some(RuleInstance::TimesLeft {
                edge: e.id().to_string(),
            });
        }
    }
    goal.succedent()
        .as_division()
        .map(|_| RuleInstance::DivRight)
}

/// One-shot query with a fresh prover.
pub fn prove(goal: &Sequent, cfg: &ProverConfig) -> Result<Outcome, SearchError> {
    Prover::new(cfg.clone()).prove(goal)
}

pub fn derivable(goal: &Sequent, cfg: &ProverConfig) -> Result<bool, SearchError> {
    Prover::new(cfg.clone()).derivable(goal)
}

/// Every rule instance applicable to `goal`, one per distinct premise list.
pub fn enumerate_rule_instances(goal: &Sequent) -> Vec<RuleInstance> {
    let mut seen = HashSet::new();
    instances(goal)
        .into_iter()
        .filter(|(rule, premises)| {
            let edge = match rule {
                RuleInstance::DivLeft { edge, .. } | RuleInstance::TimesLeft { edge } => edge.clone(),
                _ => String::new(),
            };
            let keys: Vec<CanonicalKey> = premises.iter().map(Sequent::canonical_key).collect();
            seen.insert((rule.tag(), edge, keys))
        })
        .map(|(rule, _)| rule)
        .collect()
}

fn instances(goal: &Sequent) -> Vec<(RuleInstance, Vec<Sequent>)> {
    let mut out = Vec::new();
    if calculus::is_axiom(goal) {
        out.push((RuleInstance::Axiom, Vec::new()));
    }
    if let Ok(p) = calculus::premise_div_right(goal) {
        out.push((RuleInstance::DivRight, vec![p]));
    }
    let g = goal.antecedent();
    for e in g.edges() {
        let Some(t) = e.label().as_type() else { continue };
        match t.kind() {
            TypeKind::Product { .. } => {
                let p = calculus::premise_times_left(goal, e.id()).expect("product edge");
                out.push((
                    RuleInstance::TimesLeft {
                        edge: e.id().to_string(),
                    },
                    vec![p],
                ));
            }
            TypeKind::Division { .. } => {
                for embedding in div_left_embeddings(g, e.id(), t) {
                    let rule = RuleInstance::DivLeft {
                        edge: e.id().to_string(),
                        embedding,
                    };
                    let RuleInstance::DivLeft { edge, embedding } = &rule else { unreachable!() };
                    let premises = calculus::div_left_premises(goal, edge, embedding)
                        .expect("enumerated witnesses are well formed");
                    out.push((rule, premises));
                }
            }
            TypeKind::Primitive { .. } => {}
        }
    }
    if let Some(body) = goal.succedent().as_product() {
        for embedding in times_right_embeddings(g, body) {
            let premises = calculus::times_right_premises(goal, &embedding)
                .expect("enumerated witnesses are well formed");
            out.push((RuleInstance::TimesRight { embedding }, premises));
        }
    }
    out
}

fn div_left_embeddings(g: &Hypergraph, edge: &str, t: &HLType) -> Vec<Embedding> {
    let (_, den, d0) = t.as_division().expect("division edge");
    let idx = g.edge_index(edge).expect("edge exists");
    let anchor: Vec<(usize, usize)> = den.edges()[d0]
        .att()
        .iter()
        .copied()
        .zip(g.edges()[idx].att().iter().copied())
        .collect();
    let typed: Vec<usize> = (0..den.edge_count()).filter(|&i| i != d0).collect();
    embeddings(g, den, &anchor, Some(idx), &typed, true)
}

fn times_right_embeddings(g: &Hypergraph, body: &Hypergraph) -> Vec<Embedding> {
    // Node maps are injective. Edge counts give no bound: a body edge may be
    // matched by an edgeless subgraph.
    if body.node_count() > g.node_count() {
        return Vec::new();
    }
    let anchor: Vec<(usize, usize)> = body
        .ext()
        .iter()
        .copied()
        .zip(g.ext().iter().copied())
        .collect();
    let typed: Vec<usize> = (0..body.edge_count()).collect();
    embeddings(g, body, &anchor, None, &typed, false)
}

/// Enumerates the ways `inner` (a denominator or a product body) can sit in
/// `g`: injective node maps extending `anchor`, then every assignment of the
/// remaining material to a typed edge of `inner` (or, with `residue`, to the
/// rest of the graph). Internal nodes of `inner` never land on external
/// nodes of `g`.
fn embeddings(
    g: &Hypergraph,
    inner: &Hypergraph,
    anchor: &[(usize, usize)],
    skip: Option<usize>,
    typed: &[usize],
    residue: bool,
) -> Vec<Embedding> {
    let n = g.node_count();
    let mut phi = vec![usize::MAX; inner.node_count()];
    let mut used = vec![false; n];
    for &(v, w) in anchor {
        if !inner.is_external(v) && g.is_external(w) {
            return Vec::new();
        }
        phi[v] = w;
        used[w] = true;
    }
    let g_degree = g_degrees(g, skip);
    let inner_attached: Vec<bool> = {
        let mut a = vec![false; inner.node_count()];
        for &i in typed {
            for &v in inner.edges()[i].att() {
                a[v] = true;
            }
        }
        a
    };
    let free_inner: Vec<usize> = (0..inner.node_count())
        .filter(|&v| phi[v] == usize::MAX)
        .collect();

    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let ctx = Ctx {
        g,
        inner,
        skip,
        typed,
        residue,
        g_degree: &g_degree,
        inner_attached: &inner_attached,
    };
    extend_map(&ctx, &free_inner, 0, &mut phi, &mut used, &mut |phi| {
        for e in assignments(&ctx, phi) {
            let key = (e.node_map.clone(), e.parts.clone());
            if seen.insert(key) {
                out.push(e);
            }
        }
    });
    out
}

struct Ctx<'a> {
    g: &'a Hypergraph,
    inner: &'a Hypergraph,
    skip: Option<usize>,
    typed: &'a [usize],
    residue: bool,
    g_degree: &'a [usize],
    inner_attached: &'a [bool],
}

fn g_degrees(g: &Hypergraph, skip: Option<usize>) -> Vec<usize> {
    let mut d = vec![0; g.node_count()];
    for (i, e) in g.edges().iter().enumerate() {
        if Some(i) != skip {
            for &v in e.att() {
                d[v] += 1;
            }
        }
    }
    d
}

fn extend_map(
    ctx: &Ctx,
    free_inner: &[usize],
    k: usize,
    phi: &mut Vec<usize>,
    used: &mut Vec<bool>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if k == free_inner.len() {
        emit(phi);
        return;
    }
    let v = free_inner[k];
    let internal = !ctx.inner.is_external(v);
    for w in 0..ctx.g.node_count() {
        if used[w] || (internal && ctx.g.is_external(w)) {
            continue;
        }
        // An internal node touched by no typed edge can only absorb an
        // isolated node of g.
        if internal && !ctx.inner_attached[v] && ctx.g_degree[w] > 0 {
            continue;
        }
        phi[v] = w;
        used[w] = true;
        extend_map(ctx, free_inner, k + 1, phi, used, emit);
        used[w] = false;
        phi[v] = usize::MAX;
    }
}

/// A connected lump of material outside the image of the node map.
struct Component {
    edges: Vec<usize>,
    nodes: Vec<usize>,
    boundary: BTreeSet<usize>,
    has_ext: bool,
}

/// Destination of a component: `None` for the residue, `Some(i)` for the
/// `i`-th typed edge of `inner`.
type Slot = Option<usize>;

fn assignments(ctx: &Ctx, phi: &[usize]) -> Vec<Embedding> {
    let g = ctx.g;
    let n = g.node_count();
    let mut in_image = vec![false; n];
    for &w in phi {
        in_image[w] = true;
    }
    let comps = components(g, ctx.skip, &in_image);

    let residue_boundary: BTreeSet<usize> = ctx.inner.ext().iter().map(|&v| phi[v]).collect();
    let slot_boundary: Vec<BTreeSet<usize>> = ctx
        .typed
        .iter()
        .map(|&i| ctx.inner.edges()[i].att().iter().map(|&v| phi[v]).collect())
        .collect();

    let mut options: Vec<Vec<Slot>> = Vec::with_capacity(comps.len());
    for c in &comps {
        let mut opts = Vec::new();
        if ctx.residue && c.boundary.is_subset(&residue_boundary) {
            opts.push(None);
        }
        if !c.has_ext {
            for (k, b) in slot_boundary.iter().enumerate() {
                if c.boundary.is_subset(b) {
                    opts.push(Some(k));
                }
            }
        }
        if opts.is_empty() {
            return Vec::new();
        }
        options.push(opts);
    }

    let node_map: BTreeMap<String, String> = ctx
        .inner
        .nodes()
        .iter()
        .zip(phi)
        .map(|(v, &w)| (v.clone(), g.nodes()[w].clone()))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; comps.len()];
    loop {
        let mut parts: BTreeMap<String, Part> = ctx
            .typed
            .iter()
            .map(|&i| (ctx.inner.edges()[i].id().to_string(), Part::default()))
            .collect();
        for (c, (comp, &k)) in comps.iter().zip(&choice).enumerate() {
            if let Some(slot) = options[c][k] {
                let part = parts
                    .get_mut(ctx.inner.edges()[ctx.typed[slot]].id())
                    .expect("slot exists");
                part.edges.extend(comp.edges.iter().map(|&e| g.edges()[e].id().to_string()));
                part.nodes.extend(comp.nodes.iter().map(|&v| g.nodes()[v].clone()));
            }
        }
        out.push(Embedding {
            node_map: node_map.clone(),
            parts,
        });
        // Odometer over the option lists.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Groups the edges other than `skip`, and the nodes outside the image, into
/// components connected through nodes outside the image.
fn components(g: &Hypergraph, skip: Option<usize>, in_image: &[bool]) -> Vec<Component> {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (i, e) in g.edges().iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let free: Vec<usize> = e.att().iter().copied().filter(|&v| !in_image[v]).collect();
        for w in free.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comps: Vec<Component> = Vec::new();
    for v in 0..n {
        if in_image[v] {
            continue;
        }
        let r = find(&mut parent, v);
        let c = *by_root.entry(r).or_insert_with(|| {
            comps.push(Component {
                edges: Vec::new(),
                nodes: Vec::new(),
                boundary: BTreeSet::new(),
                has_ext: false,
            });
            comps.len() - 1
        });
        comps[c].nodes.push(v);
        comps[c].has_ext |= g.is_external(v);
    }
    for (i, e) in g.edges().iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let c = match e.att().iter().find(|&&v| !in_image[v]) {
            Some(&v) => by_root[&find(&mut parent, v)],
            None => {
                comps.push(Component {
                    edges: Vec::new(),
                    nodes: Vec::new(),
                    boundary: BTreeSet::new(),
                    has_ext: false,
                });
                comps.len() - 1
            }
        };
        comps[c].edges.push(i);
        comps[c]
            .boundary
            .extend(e.att().iter().copied().filter(|&v| in_image[v]));
    }
    comps
}

/// Signed primitive occurrence counts: antecedent labels count negatively,
/// the succedent positively, and the polarity flips inside denominators.
/// A derivable sequent has every count at zero.
pub fn polarity_balanced(goal: &Sequent) -> bool {
    let mut counts: HashMap<(String, usize), i64> = HashMap::new();
    for e in goal.antecedent().edges() {
        tally(e.label().as_type().expect("typed"), -1, &mut counts);
    }
    tally(goal.succedent(), 1, &mut counts);
    counts.values().all(|&c| c == 0)
}

fn tally(t: &HLType, sign: i64, counts: &mut HashMap<(String, usize), i64>) {
    match t.kind() {
        TypeKind::Primitive { name, arity } => {
            *counts.entry((name.clone(), *arity)).or_default() += sign;
        }
        TypeKind::Division {
            numerator,
            denominator,
        } => {
            tally(numerator, sign, counts);
            for e in denominator.edges() {
                if let Some(d) = e.label().as_type() {
                    tally(d, -sign, counts);
                }
            }
        }
        TypeKind::Product { body } => {
            for e in body.edges() {
                tally(e.label().as_type().expect("typed"), sign, counts);
            }
        }
    }
}

/// The wolf-lemma refutation: `H → p` where every label of `H` is `p` itself
/// or is skeleton-free with `p` lonely in it, and `H` is not `p•`.
pub fn wolf_refutes(goal: &Sequent) -> bool {
    let p = goal.succedent();
    if !p.is_primitive() || calculus::is_axiom(goal) {
        return false;
    }
    goal.antecedent().edges().iter().all(|e| {
        let t = e.label().as_type().expect("typed");
        t == p || (!t.has_skeleton_subtype() && t.is_lonely(p))
    })
}
