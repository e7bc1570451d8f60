use super::{Antecedent, Flavor, StringSequent, StringType, Term};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeLabel, GraphBuilder, Hypergraph};
use crate::types::{HLType, Sequent, TypeKind};

/// Primitive names used by the bracket and diamond gadgets.
pub const RESERVED_PRIMITIVES: [&str; 4] = ["p_l", "p_r", "p_dia", "p_br"];

/// Variant of the nonassociative translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NldMode {
    /// NL with ◇ and □.
    Nld,
    Nl,
    /// Both bracket edges carry `p_br`, so pairs become unordered.
    Nlp,
}

impl NldMode {
    fn of(flavor: Flavor) -> Option<Self> {
        match flavor {
            Flavor::NLD => Some(NldMode::Nld),
            Flavor::NL => Some(NldMode::Nl),
            Flavor::NLP => Some(NldMode::Nlp),
            _ => None,
        }
    }

    fn flavor(self) -> Flavor {
        match self {
            NldMode::Nld => Flavor::NLD,
            NldMode::Nl => Flavor::NL,
            NldMode::Nlp => Flavor::NLP,
        }
    }

    fn left(self) -> HLType {
        HLType::primitive(if self == NldMode::Nlp { "p_br" } else { "p_l" }, 2)
    }

    fn right(self) -> HLType {
        HLType::primitive(if self == NldMode::Nlp { "p_br" } else { "p_r" }, 2)
    }

    fn dia() -> HLType {
        HLType::primitive("p_dia", 2)
    }
}

fn unsupported(t: &StringType, flavor: Flavor) -> Error {
    Error::InvalidType(format!("`{t}` is not a {} type", flavor.name()))
}

fn check_reserved(t: &StringType) -> Result<()> {
    match t.atoms().into_iter().find(|a| RESERVED_PRIMITIVES.contains(a)) {
        Some(a) => Err(Error::ReservedPrimitiveClash(a.to_string())),
        None => Ok(()),
    }
}

fn dollar_string(first: Option<EdgeLabel>, second: Option<EdgeLabel>) -> Hypergraph {
    let d = || EdgeLabel::Dollar(2);
    let labels = [first.unwrap_or_else(d), second.unwrap_or_else(d)];
    Hypergraph::string_graph(labels).expect("two binary labels")
}

fn string_tr(t: &StringType, reversal: bool) -> Result<HLType> {
    let flavor = if reversal { Flavor::LR } else { Flavor::L };
    let rec = |x: &StringType| string_tr(x, reversal);
    match t {
        StringType::Atom(p) => Ok(HLType::primitive(p.clone(), 2)),
        StringType::Over(a, b) => {
            HLType::division(rec(a)?, dollar_string(None, Some(rec(b)?.into())))
        }
        StringType::Under(b, a) => {
            HLType::division(rec(a)?, dollar_string(Some(rec(b)?.into()), None))
        }
        StringType::Prod(a, b) => {
            HLType::product(Hypergraph::string_graph([rec(a)?, rec(b)?]).expect("binary"))
        }
        StringType::Rev(a) if reversal => {
            let mut g = GraphBuilder::default();
            let v1 = g.node("v1");
            let v2 = g.node("v2");
            g.edge("e1", rec(a)?, vec![v2, v1]);
            HLType::product(g.finish(vec![v1, v2]))
        }
        _ => Err(unsupported(t, flavor)),
    }
}

/// `tr`: L types as types of arity 2.
pub fn tr_l(t: &StringType) -> Result<HLType> {
    string_tr(t, false)
}

/// `tr_R`: L^R types, where `A^R` becomes a product over one reversed edge.
pub fn tr_r(t: &StringType) -> Result<HLType> {
    string_tr(t, true)
}

fn sequence(seq: &StringSequent) -> Result<&[StringType]> {
    match &seq.antecedent {
        Antecedent::Sequence(v) => Ok(v),
        Antecedent::Term(_) => Err(Error::InvalidSequent(format!(
            "{} sequents have sequence antecedents",
            seq.flavor.name()
        ))),
    }
}

fn term(seq: &StringSequent) -> Result<&Term> {
    match &seq.antecedent {
        Antecedent::Term(t) => Ok(t),
        Antecedent::Sequence(_) => Err(Error::InvalidSequent(format!(
            "{} sequents have term antecedents",
            seq.flavor.name()
        ))),
    }
}

fn string_sequent(seq: &StringSequent, f: fn(&StringType) -> Result<HLType>) -> Result<Sequent> {
    let labels = sequence(seq)?.iter().map(f).collect::<Result<Vec<_>>>()?;
    Sequent::new(Hypergraph::string_graph(labels)?, f(&seq.succedent)?)
}

/// `tr(Γ → A) = tr(Γ)• → tr(A)`.
pub fn tr_l_sequent(seq: &StringSequent) -> Result<Sequent> {
    string_sequent(seq, tr_l)
}

pub fn tr_r_sequent(seq: &StringSequent) -> Result<Sequent> {
    string_sequent(seq, tr_r)
}

/// The generalized string graph with edge `i` running backwards when `reversed[i]`.
fn generalized_string(labels: Vec<HLType>, reversed: &[bool]) -> Hypergraph {
    let mut g = GraphBuilder::default();
    let mut prev = g.node("v0");
    for (i, label) in labels.into_iter().enumerate() {
        let next = g.node(format!("v{}", i + 1));
        let att = if reversed[i] { vec![next, prev] } else { vec![prev, next] };
        g.edge(format!("e{}", i + 1), label, att);
        prev = next;
    }
    g.finish(vec![0, prev])
}

/// All sequents obtained from `tr_R(seq)` by turning some `tr_R(B^R)` edges
/// into backwards `tr_R(B)` edges, in binary counting order over the
/// reversible entries (the first member is `tr_R(seq)` itself).
pub fn tr_r_prime(seq: &StringSequent) -> Result<Vec<Sequent>> {
    let entries = sequence(seq)?;
    let succedent = tr_r(&seq.succedent)?;
    let reversible: Vec<usize> = (0..entries.len())
        .filter(|&i| matches!(entries[i], StringType::Rev(_)))
        .collect();
    let mut out = Vec::with_capacity(1 << reversible.len());
    for mask in 0..1usize << reversible.len() {
        let mut reversed = vec![false; entries.len()];
        for (bit, &i) in reversible.iter().enumerate() {
            reversed[i] = mask >> bit & 1 == 1;
        }
        let labels = entries
            .iter()
            .zip(&reversed)
            .map(|(a, &r)| match (a, r) {
                (StringType::Rev(b), true) => tr_r(b),
                _ => tr_r(a),
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(Sequent::new(generalized_string(labels, &reversed), succedent.clone())?);
    }
    Ok(out)
}

/// One node, external, carrying the given unary edges.
fn star(labels: Vec<EdgeLabel>) -> Hypergraph {
    let mut g = GraphBuilder::default();
    let v = g.node("v0");
    for (i, l) in labels.into_iter().enumerate() {
        g.edge(format!("e{}", i + 1), l, vec![v]);
    }
    g.finish(vec![v])
}

/// `tr_P`: LP types as types of arity 1. `A/B` and `B\A` coincide.
pub fn tr_lp(t: &StringType) -> Result<HLType> {
    match t {
        StringType::Atom(p) => Ok(HLType::primitive(p.clone(), 1)),
        StringType::Over(a, b) | StringType::Under(b, a) => HLType::division(
            tr_lp(a)?,
            star(vec![EdgeLabel::Dollar(1), tr_lp(b)?.into()]),
        ),
        StringType::Prod(a, b) => HLType::product(star(vec![tr_lp(a)?.into(), tr_lp(b)?.into()])),
        _ => Err(unsupported(t, Flavor::LP)),
    }
}

pub fn tr_lp_sequent(seq: &StringSequent) -> Result<Sequent> {
    let labels = sequence(seq)?
        .iter()
        .map(|t| tr_lp(t).map(EdgeLabel::from))
        .collect::<Result<Vec<_>>>()?;
    Sequent::new(star(labels), tr_lp(&seq.succedent)?)
}

/// Gadget shapes with their holes filled by labels.
enum Gadget {
    Br(EdgeLabel, EdgeLabel),
    Diam(EdgeLabel),
}

fn gadget(g: Gadget, mode: NldMode) -> Hypergraph {
    let mut b = GraphBuilder::default();
    match g {
        Gadget::Br(x, y) => {
            let n1 = b.node("n1");
            let n2 = b.node("n2");
            let n3 = b.node("n3");
            b.edge("e1", x, vec![n1]);
            b.edge("e2", mode.left(), vec![n2, n1]);
            b.edge("e3", mode.right(), vec![n2, n3]);
            b.edge("e4", y, vec![n3]);
            b.finish(vec![n2])
        }
        Gadget::Diam(x) => {
            let n2 = b.node("n2");
            let n3 = b.node("n3");
            b.edge("e1", NldMode::dia(), vec![n2, n3]);
            b.edge("e2", x, vec![n3]);
            b.finish(vec![n2])
        }
    }
}

fn nld_type(t: &StringType, mode: NldMode) -> Result<HLType> {
    let rec = |x: &StringType| nld_type(x, mode).map(EdgeLabel::from);
    let dollar = || EdgeLabel::Dollar(1);
    let modal = mode == NldMode::Nld;
    match t {
        StringType::Atom(p) => Ok(HLType::primitive(p.clone(), 1)),
        StringType::Over(a, b) => HLType::division(
            nld_type(a, mode)?,
            gadget(Gadget::Br(dollar(), rec(b)?), mode),
        ),
        StringType::Under(b, a) => HLType::division(
            nld_type(a, mode)?,
            gadget(Gadget::Br(rec(b)?, dollar()), mode),
        ),
        StringType::Box(a) if modal => {
            HLType::division(nld_type(a, mode)?, gadget(Gadget::Diam(dollar()), mode))
        }
        StringType::Prod(a, b) => HLType::product(gadget(Gadget::Br(rec(a)?, rec(b)?), mode)),
        StringType::Dia(a) if modal => HLType::product(gadget(Gadget::Diam(rec(a)?), mode)),
        _ => Err(unsupported(t, mode.flavor())),
    }
}

/// `tr_◇` on types; fails on reserved primitive names.
pub fn tr_nld(t: &StringType, mode: NldMode) -> Result<HLType> {
    check_reserved(t)?;
    nld_type(t, mode)
}

/// `tr_◇` on antecedent terms: a tree of gadgets, nodes and edges named in pre-order.
pub fn tr_nld_term(t: &Term, mode: NldMode) -> Result<Hypergraph> {
    fn go(t: &Term, at: usize, mode: NldMode, b: &mut GraphBuilder, edges: &mut usize) -> Result<()> {
        let mut edge = |b: &mut GraphBuilder, label: EdgeLabel, att: Vec<usize>| {
            *edges += 1;
            b.edge(format!("e{edges}"), label, att);
        };
        match t {
            Term::Leaf(a) => edge(b, tr_nld(a, mode)?.into(), vec![at]),
            Term::Pair(x, y) => {
                let count = b.node_count();
                let l = b.node(format!("v{count}"));
                let r = b.node(format!("v{}", count + 1));
                edge(b, mode.left().into(), vec![at, l]);
                edge(b, mode.right().into(), vec![at, r]);
                go(x, l, mode, b, edges)?;
                go(y, r, mode, b, edges)?;
            }
            Term::Diamond(x) => {
                if mode != NldMode::Nld {
                    return Err(Error::InvalidSequent(
                        "structural diamond outside nld".into(),
                    ));
                }
                let count = b.node_count();
                let c = b.node(format!("v{count}"));
                edge(b, NldMode::dia().into(), vec![at, c]);
                go(x, c, mode, b, edges)?;
            }
        }
        Ok(())
    }
    let mut b = GraphBuilder::default();
    let root = b.node("v0");
    let mut edges = 0;
    go(t, root, mode, &mut b, &mut edges)?;
    Ok(b.finish(vec![root]))
}

pub fn tr_nld_sequent(seq: &StringSequent, mode: NldMode) -> Result<Sequent> {
    Sequent::new(tr_nld_term(term(seq)?, mode)?, tr_nld(&seq.succedent, mode)?)
}

/// Translates a type with the embedding of `flavor`.
pub fn translate_type(t: &StringType, flavor: Flavor) -> Result<HLType> {
    match flavor {
        Flavor::L => tr_l(t),
        Flavor::LR => tr_r(t),
        Flavor::LP => tr_lp(t),
        _ => tr_nld(t, NldMode::of(flavor).expect("nonassociative")),
    }
}

/// Translates a sequent with the embedding of its flavor.
pub fn translate(seq: &StringSequent) -> Result<Sequent> {
    match seq.flavor {
        Flavor::L => tr_l_sequent(seq),
        Flavor::LR => tr_r_sequent(seq),
        Flavor::LP => tr_lp_sequent(seq),
        f => tr_nld_sequent(seq, NldMode::of(f).expect("nonassociative")),
    }
}

fn not_in_image(what: impl Into<String>) -> Error {
    Error::NotInImage(what.into())
}

fn atom_arity(flavor: Flavor) -> usize {
    match flavor {
        Flavor::L | Flavor::LR => 2,
        _ => 1,
    }
}

fn is_gadget_label(t: &HLType, flavor: Flavor) -> bool {
    flavor.is_nonassociative()
        && matches!(t.as_primitive(), Some((name, 2)) if RESERVED_PRIMITIVES.contains(&name))
}

/// Inverts the type translation of `flavor` when `t` lies in its image.
pub fn untranslate_type(t: &HLType, flavor: Flavor) -> Option<StringType> {
    let inner = |g: &Hypergraph| -> Option<Vec<StringType>> {
        g.edges()
            .iter()
            .filter_map(|e| e.label().as_type())
            .filter(|x| !is_gadget_label(x, flavor))
            .map(|x| untranslate_type(x, flavor))
            .collect()
    };
    let candidates = match t.kind() {
        TypeKind::Primitive { name, arity } => {
            if *arity != atom_arity(flavor) || is_gadget_label(t, flavor) {
                return None;
            }
            vec![StringType::Atom(name.clone())]
        }
        TypeKind::Division {
            numerator,
            denominator,
        } => {
            let a = untranslate_type(numerator, flavor)?;
            match inner(denominator)?.as_slice() {
                [] => vec![StringType::boxed(a)],
                [b] => vec![
                    StringType::over(a.clone(), b.clone()),
                    StringType::under(b.clone(), a),
                ],
                _ => return None,
            }
        }
        TypeKind::Product { body } => match inner(body)?.as_slice() {
            [x] => vec![StringType::rev(x.clone()), StringType::dia(x.clone())],
            [x, y] => vec![
                StringType::prod(x.clone(), y.clone()),
                StringType::prod(y.clone(), x.clone()),
            ],
            _ => return None,
        },
    };
    candidates
        .into_iter()
        .filter(|c| flavor.allows(c))
        .find(|c| translate_type(c, flavor).is_ok_and(|x| &x == t))
}

fn label_of(g: &Hypergraph, edge: usize, flavor: Flavor) -> Result<StringType> {
    let e = &g.edges()[edge];
    e.label()
        .as_type()
        .and_then(|t| untranslate_type(t, flavor))
        .ok_or_else(|| not_in_image(format!("label of edge `{}`", e.id())))
}

/// Walks a (generalized) string graph from `ext[0]` to `ext[1]`, returning
/// each edge with whether it points backwards.
fn walk_path(g: &Hypergraph, allow_reversed: bool) -> Result<Vec<(usize, bool)>> {
    let shape = || not_in_image("antecedent is not a string graph");
    let &[start, end] = g.ext() else {
        return Err(shape());
    };
    if g.edge_count() == 0 || g.node_count() != g.edge_count() + 1 {
        return Err(shape());
    }
    let inc = g.incidence();
    let mut used = vec![false; g.edge_count()];
    let mut path = Vec::new();
    let mut at = start;
    while at != end {
        let mut next = None;
        for &e in &inc[at] {
            if used[e] {
                continue;
            }
            let att = g.edges()[e].att();
            if att.len() != 2 {
                return Err(shape());
            }
            let step = if att[0] == at {
                (att[1], false)
            } else if allow_reversed {
                (att[0], true)
            } else {
                return Err(shape());
            };
            if next.replace((e, step)).is_some() {
                return Err(shape());
            }
        }
        let (e, (to, reversed)) = next.ok_or_else(shape)?;
        used[e] = true;
        path.push((e, reversed));
        at = to;
    }
    if path.len() != g.edge_count() {
        return Err(shape());
    }
    Ok(path)
}

fn recognize_term(g: &Hypergraph, flavor: Flavor) -> Result<Term> {
    let shape = || not_in_image("antecedent is not a bracket tree");
    let &[root] = g.ext() else {
        return Err(shape());
    };
    let inc = g.incidence();
    let mut used = vec![false; g.edge_count()];
    let mut seen = vec![false; g.node_count()];

    fn go(
        v: usize,
        g: &Hypergraph,
        flavor: Flavor,
        inc: &[Vec<usize>],
        used: &mut [bool],
        seen: &mut [bool],
    ) -> Result<Term> {
        let shape = || not_in_image("antecedent is not a bracket tree");
        if std::mem::replace(&mut seen[v], true) {
            return Err(shape());
        }
        let own: Vec<usize> = inc[v].iter().copied().filter(|&e| !used[e]).collect();
        for &e in &own {
            used[e] = true;
        }
        let child = |e: usize| -> Result<usize> {
            match g.edges()[e].att() {
                &[a, b] if a == v => Ok(b),
                _ => Err(shape()),
            }
        };
        let name = |e: usize| {
            g.edges()[e]
                .label()
                .as_type()
                .and_then(|t| t.as_primitive())
                .filter(|&(_, k)| k == 2)
                .map(|(n, _)| n)
        };
        match *own.as_slice() {
            [e] if g.edges()[e].att().len() == 1 => Ok(Term::Leaf(label_of(g, e, flavor)?)),
            [e] if name(e) == Some("p_dia") && flavor == Flavor::NLD => {
                let c = child(e)?;
                Ok(Term::diamond(go(c, g, flavor, inc, used, seen)?))
            }
            [e1, e2] => {
                let (l, r) = match (name(e1), name(e2)) {
                    (Some("p_l"), Some("p_r")) if flavor != Flavor::NLP => (e1, e2),
                    (Some("p_r"), Some("p_l")) if flavor != Flavor::NLP => (e2, e1),
                    (Some("p_br"), Some("p_br")) if flavor == Flavor::NLP => (e1, e2),
                    _ => return Err(shape()),
                };
                let (l, r) = (child(l)?, child(r)?);
                let left = go(l, g, flavor, inc, used, seen)?;
                let right = go(r, g, flavor, inc, used, seen)?;
                Ok(Term::pair(left, right))
            }
            _ => Err(shape()),
        }
    }

    let t = go(root, g, flavor, &inc, &mut used, &mut seen)?;
    if used.iter().all(|&u| u) && seen.iter().all(|&s| s) {
        Ok(t)
    } else {
        Err(shape())
    }
}

/// Recovers a string antecedent `Γ` with `G ≅ tr(Γ)` for the embedding of
/// `flavor`. For L^R, backwards edges come back as `B^R`, so the result is
/// the entry list of a sequent whose tr_R′ class contains `G`.
pub fn recognize_string_image(g: &Hypergraph, flavor: Flavor) -> Result<Antecedent> {
    match flavor {
        Flavor::L | Flavor::LR => {
            let path = walk_path(g, flavor == Flavor::LR)?;
            path.into_iter()
                .map(|(e, reversed)| {
                    let t = label_of(g, e, flavor)?;
                    Ok(if reversed { StringType::rev(t) } else { t })
                })
                .collect::<Result<Vec<_>>>()
                .map(Antecedent::Sequence)
        }
        Flavor::LP => {
            if g.node_count() != 1 || g.ext().len() != 1 || g.edge_count() == 0 {
                return Err(not_in_image("antecedent is not a one-node star"));
            }
            (0..g.edge_count())
                .map(|e| label_of(g, e, flavor))
                .collect::<Result<Vec<_>>>()
                .map(Antecedent::Sequence)
        }
        _ => recognize_term(g, flavor).map(Antecedent::Term),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::{parse_sequent, parse_term, parse_type};

    fn ty(s: &str) -> StringType {
        parse_type(s).unwrap()
    }

    #[test]
    fn l_clauses() {
        let got = tr_l(&ty("r\\(p*q)")).unwrap();
        let pq = HLType::product(
            Hypergraph::string_graph([HLType::primitive("p", 2), HLType::primitive("q", 2)]).unwrap(),
        )
        .unwrap();
        let den = Hypergraph::string_graph([
            EdgeLabel::from(HLType::primitive("r", 2)),
            EdgeLabel::Dollar(2),
        ])
        .unwrap();
        assert_eq!(got, HLType::division(pq, den).unwrap());
        assert_eq!(tr_l(&ty("p")).unwrap(), HLType::primitive("p", 2));
        assert!(tr_l(&ty("p^R")).is_err());
    }

    #[test]
    fn lp_slashes_collapse() {
        assert_eq!(tr_lp(&ty("p/q")).unwrap(), tr_lp(&ty("q\\p")).unwrap());
        let s = tr_lp_sequent(&parse_sequent(Flavor::LP, "p, q -> q*p").unwrap()).unwrap();
        assert_eq!(s.antecedent().node_count(), 1);
        assert_eq!(s.antecedent().edge_count(), 2);
    }

    #[test]
    fn nld_example_tree() {
        let t = parse_term("((p,q))^d, ((r)^d,(s,t))").unwrap();
        let g = tr_nld_term(&t, NldMode::Nld).unwrap();
        assert_eq!(g.node_count(), 11);
        assert_eq!(g.ext().len(), 1);
        assert_eq!(recognize_string_image(&g, Flavor::NLD).unwrap(), Antecedent::Term(t));
        let boxed = tr_nld(&ty("box(p)"), NldMode::Nld).unwrap();
        let den = gadget(Gadget::Diam(EdgeLabel::Dollar(1)), NldMode::Nld);
        assert_eq!(boxed, HLType::division(HLType::primitive("p", 1), den).unwrap());
        assert!(matches!(
            tr_nld(&ty("p_l/q"), NldMode::Nl),
            Err(Error::ReservedPrimitiveClash(_))
        ));
    }

    #[test]
    fn nlp_commutes() {
        let a = tr_nld_term(&parse_term("p, q/r").unwrap(), NldMode::Nlp).unwrap();
        let b = tr_nld_term(&parse_term("q/r, p").unwrap(), NldMode::Nlp).unwrap();
        assert!(a.is_isomorphic(&b));
        assert_eq!(tr_nld(&ty("p/q"), NldMode::Nlp).unwrap(), tr_nld(&ty("q\\p"), NldMode::Nlp).unwrap());
        assert_ne!(tr_nld(&ty("p/q"), NldMode::Nl).unwrap(), tr_nld(&ty("q\\p"), NldMode::Nl).unwrap());
    }

    #[test]
    fn reversal() {
        let t = tr_r(&ty("p^R")).unwrap();
        let body = t.as_product().unwrap();
        let e = &body.edges()[0];
        assert_eq!(e.att(), &[body.ext()[1], body.ext()[0]]);
        let seq = parse_sequent(Flavor::LR, "p^R, q^R, r -> p").unwrap();
        let class = tr_r_prime(&seq).unwrap();
        assert_eq!(class.len(), 4);
        assert!(class[0].is_isomorphic(&tr_r_sequent(&seq).unwrap()));
        for member in &class {
            let back = recognize_string_image(member.antecedent(), Flavor::LR).unwrap();
            assert_eq!(back, seq.antecedent);
        }
    }

    #[test]
    fn round_trips() {
        let cases = [
            (Flavor::L, "p/q, (q\\r)*p, p/(q/r) -> p"),
            (Flavor::LR, "(p/q)^R, q^R^R -> p"),
            (Flavor::LP, "p/q, q*r, r -> p"),
            (Flavor::NL, "(p/q, (q\\r, r*p)) -> p"),
            (Flavor::NLD, "((p)^d, box(q)) -> dia(p)"),
        ];
        for (flavor, text) in cases {
            let seq = parse_sequent(flavor, text).unwrap();
            let hl = translate(&seq).unwrap();
            let back = recognize_string_image(hl.antecedent(), flavor).unwrap();
            assert_eq!(back, seq.antecedent, "{text}");
            assert_eq!(untranslate_type(hl.succedent(), flavor), Some(seq.succedent.clone()));
        }
    }

    #[test]
    fn rejects_non_images() {
        let p = HLType::primitive("p", 2);
        let g = Hypergraph::new(
            ["a", "b", "c"],
            [
                crate::EdgeSpec::new("e1", p.clone(), ["a", "b"]),
                crate::EdgeSpec::new("e2", p, ["a", "c"]),
            ],
            ["b", "c"],
        )
        .unwrap();
        assert!(matches!(recognize_string_image(&g, Flavor::L), Err(Error::NotInImage(_))));
        let r = recognize_string_image(&g, Flavor::LR).unwrap();
        assert_eq!(r, Antecedent::Sequence(vec![StringType::rev(ty("p")), ty("p")]));
    }
}
