#![allow(dead_code)]

use hlcalc::embeddings::{Antecedent, Flavor, StringSequent, StringType, Term};
use hlcalc::calculus::{DerivationTree, RuleTag};
use hlcalc::{EdgeLabel, EdgeSpec, HLType, Hypergraph, Sequent};

pub fn prim(name: &str, arity: usize) -> HLType {
    HLType::primitive(name, arity)
}

pub fn graph(nodes: &[&str], edges: Vec<EdgeSpec>, ext: &[&str]) -> Hypergraph {
    Hypergraph::new(nodes.iter().copied(), edges, ext.iter().copied()).unwrap()
}

pub fn e(id: &str, label: impl Into<EdgeLabel>, att: &[&str]) -> EdgeSpec {
    EdgeSpec::new(id, label, att.iter().copied())
}

/// The four types of the worked example.
pub fn a1() -> HLType {
    let den = graph(
        &["n1", "n2"],
        vec![
            e("s", prim("s", 1), &["n1"]),
            e("d", EdgeLabel::Dollar(2), &["n1", "n2"]),
            e("r", prim("r", 1), &["n2"]),
        ],
        &[],
    );
    HLType::division(prim("q", 0), den).unwrap()
}

pub fn a2() -> HLType {
    let den = graph(
        &["n1", "n2", "n3"],
        vec![
            e("r", prim("r", 1), &["n1"]),
            e("d", EdgeLabel::Dollar(2), &["n3", "n2"]),
            e("s", prim("s", 1), &["n3"]),
        ],
        &["n1", "n2"],
    );
    HLType::division(prim("t", 2), den).unwrap()
}

pub fn a3() -> HLType {
    let den = graph(
        &["n1", "n2", "n3"],
        vec![
            e("d", EdgeLabel::Dollar(3), &["n2", "n3", "n1"]),
            e("t", prim("t", 2), &["n3", "n2"]),
        ],
        &[],
    );
    HLType::division(prim("q", 0), den).unwrap()
}

pub fn a4() -> HLType {
    let body = graph(
        &["n1", "n2"],
        vec![e("p", prim("p", 2), &["n1", "n2"]), e("a1", a1(), &["n1", "n2"])],
        &["n1", "n2"],
    );
    HLType::product(body).unwrap()
}

/// The derivable sequent of the worked example.
pub fn example_sequent() -> Sequent {
    let h = graph(
        &["1", "2", "3", "4"],
        vec![
            e("e1", prim("p", 2), &["1", "2"]),
            e("e2", a2(), &["1", "3"]),
            e("e3", a3(), &["3", "2", "4"]),
        ],
        &["1", "2"],
    );
    Sequent::new(h, a4()).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Over,
    Under,
    Prod,
    Dia,
    Box,
    Rev,
}

/// All types with exactly `k` connectives from `ops` over `atoms`.
pub fn types_with(k: usize, atoms: &[&str], ops: &[Op]) -> Vec<StringType> {
    let mut table: Vec<Vec<StringType>> = vec![atoms.iter().map(|a| StringType::atom(*a)).collect()];
    for n in 1..=k {
        let mut level = Vec::new();
        for &op in ops {
            match op {
                Op::Dia | Op::Box | Op::Rev => {
                    for a in &table[n - 1] {
                        level.push(match op {
                            Op::Dia => StringType::dia(a.clone()),
                            Op::Box => StringType::boxed(a.clone()),
                            _ => StringType::rev(a.clone()),
                        });
                    }
                }
                _ => {
                    for i in 0..n {
                        for a in &table[i] {
                            for b in &table[n - 1 - i] {
                                level.push(match op {
                                    Op::Over => StringType::over(a.clone(), b.clone()),
                                    Op::Under => StringType::under(a.clone(), b.clone()),
                                    _ => StringType::prod(a.clone(), b.clone()),
                                });
                            }
                        }
                    }
                }
            }
        }
        table.push(level);
    }
    table.swap_remove(k)
}

/// Atom names in first-occurrence order must be a prefix of `atoms`: one
/// representative per renaming class.
pub fn canonically_named(types: &[&StringType], atoms: &[&str]) -> bool {
    let mut seen: Vec<&str> = Vec::new();
    for t in types {
        for a in t.atoms() {
            if !seen.contains(&a) {
                if atoms.get(seen.len()) != Some(&a) {
                    return false;
                }
                seen.push(a);
            }
        }
    }
    true
}

fn compositions(total: usize, parts: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if cur.len() + 1 == parts {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for k in 0..=total {
        cur.push(k);
        compositions(total - k, parts, out, cur);
        cur.pop();
    }
}

/// Type tuples of length `slots` with at most `max_conn` connectives in total
/// and at most `max_ops` uses of the counted operators.
pub fn type_tuples(slots: usize, max_conn: usize, atoms: &[&str], ops: &[Op], counted: &[Op], max_ops: usize) -> Vec<Vec<StringType>> {
    let by_size: Vec<Vec<StringType>> = (0..=max_conn)
        .map(|k| {
            types_with(k, atoms, ops)
                .into_iter()
                .filter(|t| count_ops(t, counted) <= max_ops)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for total in 0..=max_conn {
        let mut comps = Vec::new();
        compositions(total, slots, &mut comps, &mut Vec::new());
        for comp in comps {
            let mut acc: Vec<Vec<StringType>> = vec![Vec::new()];
            for &k in &comp {
                let mut next = Vec::new();
                for prefix in &acc {
                    for t in &by_size[k] {
                        let mut v = prefix.clone();
                        v.push(t.clone());
                        let refs: Vec<&StringType> = v.iter().collect();
                        if canonically_named(&refs, atoms) {
                            next.push(v);
                        }
                    }
                }
                acc = next;
            }
            out.extend(
                acc.into_iter()
                    .filter(|v| v.iter().map(|t| count_ops(t, counted)).sum::<usize>() <= max_ops),
            );
        }
    }
    out
}

pub fn count_ops(t: &StringType, ops: &[Op]) -> usize {
    let here = |op: Op| usize::from(ops.contains(&op));
    match t {
        StringType::Atom(_) => 0,
        StringType::Over(a, b) => here(Op::Over) + count_ops(a, ops) + count_ops(b, ops),
        StringType::Under(a, b) => here(Op::Under) + count_ops(a, ops) + count_ops(b, ops),
        StringType::Prod(a, b) => here(Op::Prod) + count_ops(a, ops) + count_ops(b, ops),
        StringType::Dia(a) => here(Op::Dia) + count_ops(a, ops),
        StringType::Box(a) => here(Op::Box) + count_ops(a, ops),
        StringType::Rev(a) => here(Op::Rev) + count_ops(a, ops),
    }
}

/// Sequents `Γ → C` with `|Γ| ≤ max_len`, the succedent last in the tuple.
pub fn sequence_family(flavor: Flavor, max_conn: usize, max_len: usize, atoms: &[&str], ops: &[Op], counted: &[Op], max_ops: usize) -> Vec<StringSequent> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for mut tuple in type_tuples(len + 1, max_conn, atoms, ops, counted, max_ops) {
            let c = tuple.pop().unwrap();
            out.push(StringSequent::sequence(flavor, tuple, c).unwrap());
        }
    }
    out
}

/// Bracketings of `leaves` (in order), each subterm optionally wrapped in
/// structural diamonds, at most `budget` diamonds overall.
pub fn bracketings(leaves: &[StringType], budget: usize) -> Vec<(Term, usize)> {
    let mut bare = Vec::new();
    if leaves.len() == 1 {
        bare.push((Term::Leaf(leaves[0].clone()), 0));
    } else {
        for k in 1..leaves.len() {
            for (l, dl) in bracketings(&leaves[..k], budget) {
                for (r, dr) in bracketings(&leaves[k..], budget - dl) {
                    bare.push((Term::pair(l.clone(), r), dl + dr));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (t, d) in bare {
        let mut t = t;
        for extra in 0..=budget - d {
            out.push((t.clone(), d + extra));
            t = Term::diamond(t);
        }
    }
    out
}

/// Term sequents over every bracketing of each type sequence; modal
/// operators (type-level and structural together) at most `max_modal`.
pub fn term_family(flavor: Flavor, max_conn: usize, max_len: usize, atoms: &[&str], ops: &[Op], max_modal: usize) -> Vec<StringSequent> {
    let modal = [Op::Dia, Op::Box];
    let mut out = Vec::new();
    for len in 1..=max_len {
        for mut tuple in type_tuples(len + 1, max_conn, atoms, ops, &modal, max_modal) {
            let c = tuple.pop().unwrap();
            let used: usize = tuple.iter().chain([&c]).map(|t| count_ops(t, &modal)).sum();
            let budget = if flavor == Flavor::NLD { max_modal - used } else { 0 };
            for (term, _) in bracketings(&tuple, budget) {
                out.push(StringSequent::term(flavor, term, c.clone()).unwrap());
            }
        }
    }
    out
}

pub fn antecedent_types(seq: &StringSequent) -> Vec<StringType> {
    match &seq.antecedent {
        Antecedent::Sequence(v) => v.clone(),
        Antecedent::Term(t) => t.leaves().into_iter().cloned().collect(),
    }
}

use rand::seq::SliceRandom;
use rand::Rng;

const NAMES: [&str; 3] = ["p", "q", "r"];

fn distinct<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all
}

fn split_budget<R: Rng + ?Sized>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let mut v = vec![1; parts];
    for _ in parts..total {
        if rng.gen_bool(0.6) {
            let i = rng.gen_range(0..parts);
            v[i] += 1;
        }
    }
    v
}

/// Edges of random arity over `n` nodes named `n0..`, labels drawn by `label`.
fn random_edges<R: Rng + ?Sized>(rng: &mut R, n: usize, budgets: &[usize], mut label: impl FnMut(&mut dyn rand::RngCore, usize, usize) -> EdgeLabel) -> Vec<EdgeSpec> {
    let mut out = Vec::new();
    for (i, &b) in budgets.iter().enumerate() {
        let arity = rng.gen_range(0..=n.min(3));
        let att: Vec<String> = distinct(rng, n, arity).into_iter().map(|j| format!("n{j}")).collect();
        let mut inner = rand_chacha::ChaCha8Rng::seed_from_u64(rng.gen());
        out.push(EdgeSpec::new(format!("e{}", i + 1), label(&mut inner, b, arity), att));
    }
    out
}

use rand::SeedableRng;

/// A random type of size at most `budget` and the given arity.
pub fn random_type(rng: &mut dyn rand::RngCore, budget: usize, arity: usize) -> HLType {
    let pick = rng.gen_range(0..10);
    if budget < 2 || pick < 3 {
        return HLType::primitive(*NAMES.choose(rng).unwrap(), arity);
    }
    let extra = rng.gen_range(0..=1);
    if pick < 7 {
        // division: numerator of arity k over a denominator with $ of `arity`
        let k = rng.gen_range(0..=3);
        let n = k.max(arity) + extra;
        let parts = rng.gen_range(0..=(budget - 2).min(2));
        let num_budget = if parts == 0 { budget - 1 } else { rng.gen_range(1..budget - parts) };
        let budgets = if parts == 0 { Vec::new() } else { split_budget(rng, budget - 1 - num_budget, parts) };
        let num = random_type(rng, num_budget, k);
        let mut edges = random_edges(rng, n, &budgets, |r, b, a| random_type(r, b, a).into());
        let att: Vec<String> = distinct(rng, n, arity).into_iter().map(|j| format!("n{j}")).collect();
        edges.insert(rng.gen_range(0..=edges.len()), EdgeSpec::new("d0", EdgeLabel::Dollar(arity), att));
        let ext: Vec<String> = distinct(rng, n, k).into_iter().map(|j| format!("n{j}")).collect();
        let nodes: Vec<String> = (0..n).map(|j| format!("n{j}")).collect();
        let den = Hypergraph::new(nodes, edges, ext).unwrap();
        HLType::division(num, den).unwrap()
    } else {
        let n = arity + extra;
        let parts = rng.gen_range(0..=(budget - 1).min(3));
        let budgets = if parts == 0 { Vec::new() } else { split_budget(rng, budget - 1, parts) };
        let edges = random_edges(rng, n, &budgets, |r, b, a| random_type(r, b, a).into());
        let ext: Vec<String> = distinct(rng, n, arity).into_iter().map(|j| format!("n{j}")).collect();
        let nodes: Vec<String> = (0..n).map(|j| format!("n{j}")).collect();
        HLType::product(Hypergraph::new(nodes, edges, ext).unwrap()).unwrap()
    }
}

/// A random graph over primitive labels, at most `max_nodes` nodes.
pub fn random_graph(rng: &mut impl Rng, max_nodes: usize, max_edges: usize) -> Hypergraph {
    let k = rng.gen_range(0..=max_nodes.min(3));
    random_graph_of_arity(rng, max_nodes, max_edges, k)
}

pub fn random_graph_of_arity(rng: &mut impl Rng, max_nodes: usize, max_edges: usize, k: usize) -> Hypergraph {
    let n = rng.gen_range(k.max(1)..=max_nodes.max(k));
    let m = rng.gen_range(0..=max_edges);
    let edges = random_edges(rng, n, &vec![1; m], |r, _, a| {
        HLType::primitive(*NAMES[..2].choose(r).unwrap(), a).into()
    });
    let ext: Vec<String> = distinct(rng, n, k).into_iter().map(|j| format!("n{j}")).collect();
    let nodes: Vec<String> = (0..n).map(|j| format!("n{j}")).collect();
    Hypergraph::new(nodes, edges, ext).unwrap()
}

/// The same graph with nodes and edges reordered and renamed.
pub fn shuffled(g: &Hypergraph, rng: &mut impl Rng) -> Hypergraph {
    let mut perm: Vec<usize> = (0..g.node_count()).collect();
    perm.shuffle(rng);
    let name = |v: usize| format!("u{}", perm[v]);
    let mut nodes: Vec<String> = (0..g.node_count()).map(name).collect();
    nodes.shuffle(rng);
    let mut edges: Vec<EdgeSpec> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| EdgeSpec::new(format!("f{}", g.edge_count() - i), e.label().clone(), e.att().iter().map(|&v| name(v))))
        .collect();
    edges.shuffle(rng);
    let ext: Vec<String> = g.ext().iter().map(|&v| name(v)).collect();
    Hypergraph::new(nodes, edges, ext).unwrap()
}

/// Brute-force isomorphism over labels compared by equality: tries every
/// node bijection that maps ext to ext positionally.
pub fn brute_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() || a.arity() != b.arity() {
        return false;
    }
    let n = a.node_count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for (&x, &y) in a.ext().iter().zip(b.ext()) {
        map[x] = y;
        used[y] = true;
    }
    let mut target: Vec<(String, Vec<usize>)> = b.edges().iter().map(|e| (e.label().to_string(), e.att().to_vec())).collect();
    target.sort();
    fn go(i: usize, a: &Hypergraph, map: &mut Vec<usize>, used: &mut Vec<bool>, target: &[(String, Vec<usize>)]) -> bool {
        if i == map.len() {
            let mut mine: Vec<(String, Vec<usize>)> = a
                .edges()
                .iter()
                .map(|e| (e.label().to_string(), e.att().iter().map(|&v| map[v]).collect()))
                .collect();
            mine.sort();
            return mine == target;
        }
        if map[i] != usize::MAX {
            return go(i + 1, a, map, used, target);
        }
        for y in 0..map.len() {
            if !used[y] {
                used[y] = true;
                map[i] = y;
                if go(i + 1, a, map, used, target) {
                    return true;
                }
                map[i] = usize::MAX;
                used[y] = false;
            }
        }
        false
    }
    go(0, a, &mut map, &mut used, &target)
}

/// A small edit of `g`: a relabeled edge, a moved tentacle or a swapped ext.
pub fn perturbed(g: &Hypergraph, rng: &mut impl Rng) -> Hypergraph {
    let mut nodes: Vec<String> = g.nodes().to_vec();
    let mut edges: Vec<EdgeSpec> = g
        .edges()
        .iter()
        .map(|e| EdgeSpec::new(e.id(), e.label().clone(), g.att_ids(e)))
        .collect();
    let mut ext: Vec<String> = g.ext_ids().into_iter().map(String::from).collect();
    match rng.gen_range(0..4) {
        0 if !g.edges().is_empty() => {
            let i = rng.gen_range(0..g.edge_count());
            let e = &g.edges()[i];
            let other = if e.label().to_string().starts_with('p') { "q" } else { "p" };
            edges[i] = EdgeSpec::new(e.id(), HLType::primitive(other, e.att().len()), g.att_ids(e));
        }
        1 if ext.len() >= 2 => ext.swap(0, 1),
        2 if !g.edges().is_empty() => {
            let i = rng.gen_range(0..g.edge_count());
            let e = &g.edges()[i];
            let mut att = g.att_ids(e).into_iter().map(String::from).collect::<Vec<_>>();
            if let Some(free) = g.nodes().iter().find(|v| !att.contains(v)) {
                if !att.is_empty() {
                    att[0] = free.clone();
                }
            }
            edges[i] = EdgeSpec::new(e.id(), e.label().clone(), att);
        }
        _ => {
            nodes.push("extra".into());
        }
    }
    Hypergraph::new(nodes, edges, ext).unwrap()
}

/// Every non-axiom, non-cut node has premise sizes summing to its size − 1.
pub fn sizes_account(tree: &DerivationTree) -> bool {
    tree.walk().into_iter().all(|node| match node.rule.tag() {
        RuleTag::Axiom | RuleTag::Cut => true,
        _ => node.children.iter().map(|c| c.conclusion.size()).sum::<usize>() + 1 == node.conclusion.size(),
    })
}

/// A rule instance as drawn: the conclusion, the premises in rule order,
/// and for the two rules with a forward form, the conclusion rebuilt from
/// those premises.
pub struct RuleExample {
    pub name: &'static str,
    pub tag: RuleTag,
    pub conclusion: Sequent,
    pub premises: Vec<Sequent>,
    pub forward: Option<Sequent>,
}

impl RuleExample {
    /// The forward build matches the figure and the backward enumeration
    /// finds an instance whose premises match it, in order.
    pub fn reproduced(&self) -> bool {
        use hlcalc::calculus::premises;
        use hlcalc::prover::enumerate_rule_instances;
        self.forward.as_ref().is_none_or(|f| f.is_isomorphic(&self.conclusion))
            && enumerate_rule_instances(&self.conclusion).into_iter().any(|inst| {
                inst.tag() == self.tag
                    && premises(&self.conclusion, &inst).is_ok_and(|ps| {
                        ps.len() == self.premises.len() && ps.iter().zip(&self.premises).all(|(a, b)| a.is_isomorphic(b))
                    })
            })
    }
}

fn word(names: &[&str]) -> Hypergraph {
    Hypergraph::string_graph(names.iter().map(|n| prim(n, 2))).unwrap()
}

fn chain(labels: Vec<EdgeLabel>) -> Hypergraph {
    Hypergraph::string_graph(labels).unwrap()
}

fn sq(h: Hypergraph, t: HLType) -> Sequent {
    Sequent::new(h, t).unwrap()
}

/// The four rule illustrations over string graphs, with `T1..T3` taken to
/// be binary primitives.
pub fn rule_examples() -> Vec<RuleExample> {
    use hlcalc::calculus::{apply_div_left, apply_times_right, premise_div_right, premise_times_left};
    let (t1, t2, t3) = (prim("t1", 2), prim("t2", 2), prim("t3", 2));
    let mut out = Vec::new();

    let t = HLType::division(prim("q", 2), chain(vec![t2.clone().into(), EdgeLabel::Dollar(2), t3.clone().into()])).unwrap();
    let premises = vec![sq(word(&["p", "q"]), t1.clone()), sq(word(&["r", "s"]), t2.clone()), sq(word(&["t", "u"]), t3.clone())];
    let forward = apply_div_left(&premises[0], "e2", &t, &premises[1..]).unwrap();
    let labels = vec![prim("p", 2).into(), prim("r", 2).into(), prim("s", 2).into(), t.into(), prim("t", 2).into(), prim("u", 2).into()];
    out.push(RuleExample {
        name: "division left",
        tag: RuleTag::DivLeft,
        conclusion: sq(chain(labels), t1.clone()),
        premises,
        forward: Some(forward),
    });

    let big = HLType::product(word(&["p", "q", "r"])).unwrap();
    let ty = HLType::division(big.clone(), chain(vec![EdgeLabel::Dollar(2), prim("r", 2).into()])).unwrap();
    let conclusion = sq(word(&["p", "q"]), ty);
    let premise = sq(word(&["p", "q", "r"]), big);
    assert!(premise_div_right(&conclusion).unwrap().is_isomorphic(&premise));
    out.push(RuleExample {
        name: "division right",
        tag: RuleTag::DivRight,
        forward: None,
        conclusion,
        premises: vec![premise],
    });

    let u = HLType::product(word(&["p", "q", "r", "s"])).unwrap();
    let inner = HLType::product(word(&["q", "r"])).unwrap();
    let conclusion = sq(chain(vec![prim("p", 2).into(), inner.into(), prim("s", 2).into()]), u.clone());
    let premise = sq(word(&["p", "q", "r", "s"]), u);
    assert!(premise_times_left(&conclusion, "e2").unwrap().is_isomorphic(&premise));
    out.push(RuleExample {
        name: "product left",
        tag: RuleTag::TimesLeft,
        forward: None,
        conclusion,
        premises: vec![premise],
    });

    let ty = HLType::product(chain(vec![t1.clone().into(), t2.clone().into(), t3.clone().into()])).unwrap();
    let premises = vec![sq(word(&["p", "q"]), t1), sq(word(&["r", "s"]), t2), sq(word(&["t", "u"]), t3)];
    let forward = apply_times_right(&ty, &premises).unwrap();
    out.push(RuleExample {
        name: "product right",
        tag: RuleTag::TimesRight,
        conclusion: sq(word(&["p", "q", "r", "s", "t", "u"]), ty),
        premises,
        forward: Some(forward),
    });
    out
}

/// Merges `∃y∃z` into one block, so the paper's nested quantifiers compare
/// with the printer's blocks.
pub fn merge_blocks(f: hlcalc::foint::Formula) -> hlcalc::foint::Formula {
    match f {
        hlcalc::foint::Formula::Forall(mut vs, body) => match merge_blocks(*body) {
            hlcalc::foint::Formula::Forall(ws, inner) => {
                vs.extend(ws);
                hlcalc::foint::Formula::Forall(vs, inner)
            }
            other => hlcalc::foint::Formula::Forall(vs, Box::new(other)),
        },
        hlcalc::foint::Formula::Exists(mut vs, body) => match merge_blocks(*body) {
            hlcalc::foint::Formula::Exists(ws, inner) => {
                vs.extend(ws);
                hlcalc::foint::Formula::Exists(vs, inner)
            }
            other => hlcalc::foint::Formula::Exists(vs, Box::new(other)),
        },
        hlcalc::foint::Formula::And(items) => hlcalc::foint::Formula::And(items.into_iter().map(merge_blocks).collect()),
        hlcalc::foint::Formula::Implies(a, b) => hlcalc::foint::Formula::implies(merge_blocks(*a), merge_blocks(*b)),
        other => other,
    }
}

pub struct FoRow {
    pub name: &'static str,
    pub sequent: Sequent,
    pub paper: &'static str,
    pub derivable: bool,
}

/// The FO-Int table and the typable bad examples, with the paper's formulas
/// in the printer's syntax (variable names as in the paper).
pub fn fo_rows() -> Vec<FoRow> {
    use hlcalc::embeddings::{parse_sequent, parse_type, tr_lp, translate, Flavor};
    let l = |text: &str| translate(&parse_sequent(Flavor::L, text).unwrap()).unwrap();
    let unary = |ext: &[&str], nodes: &[&str], edges: Vec<EdgeSpec>, t: &str| {
        Sequent::new(graph(nodes, edges, ext), prim(t, 1)).unwrap()
    };
    let two = graph(&["v0", "v1"], vec![], &["v0", "v1"]);
    vec![
        FoRow {
            name: "axiom",
            sequent: Sequent::handle(prim("p", 2)),
            paper: "p(x,y) -> p(x,y)",
            derivable: true,
        },
        FoRow {
            name: "composition",
            sequent: l("p/q, q/r -> p/r"),
            paper: "(exists z. ((forall a. (q(z,a) -> p(x,a))) & (forall b. (r(y,b) -> q(z,b))))) -> (forall c. (r(y,c) -> p(x,c)))",
            derivable: true,
        },
        FoRow {
            name: "product",
            sequent: l("p/q, q, r -> p*r"),
            paper: "(exists z. (exists t. ((forall a. (q(z,a) -> p(x,a))) & q(z,t) & r(t,y)))) -> (exists u. (p(x,u) & r(u,y)))",
            derivable: true,
        },
        FoRow {
            name: "shared node",
            sequent: unary(&["1"], &["1", "2"], vec![e("a", prim("t", 1), &["1"]), e("b", prim("t", 1), &["1"])], "t"),
            paper: "(exists y. (t(x) & t(x))) -> t(x)",
            derivable: false,
        },
        FoRow {
            name: "bad: separate nodes",
            sequent: unary(&["1"], &["1", "2"], vec![e("a", prim("p", 1), &["1"]), e("b", prim("p", 1), &["2"])], "p"),
            paper: "(exists y. (p(x) & p(y))) -> p(x)",
            derivable: false,
        },
        FoRow {
            name: "bad: commutative square",
            sequent: Sequent::new(
                Hypergraph::handle(tr_lp(&parse_type("p").unwrap()).unwrap()),
                tr_lp(&parse_type("p*p").unwrap()).unwrap(),
            )
            .unwrap(),
            paper: "p(x) -> (p(x) & p(x))",
            derivable: false,
        },
        FoRow {
            name: "bad: edgeless",
            sequent: Sequent::new(two.clone(), HLType::product(two).unwrap()).unwrap(),
            paper: "T -> T",
            derivable: true,
        },
    ]
}
