//! Canonical keys by colour refinement plus individualization.
//!
//! Labels are ranked by their own (recursively canonical) fingerprints, node
//! colours are refined until stable, and the search branches over the first
//! non-singleton cell. The key is the lexicographically least encoding over
//! all leaves. Non-external nodes without incidences are interchangeable and
//! never branched on.

use std::collections::BTreeMap;
use std::fmt;

use super::Hypergraph;

/// Fingerprint of a hypergraph up to isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub(crate) Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

struct Prepared {
    n: usize,
    /// (label rank, attachment) per edge.
    edges: Vec<(u32, Vec<usize>)>,
    ext: Vec<usize>,
    /// node -> list of (edge index, position in attachment).
    incidence: Vec<Vec<(usize, usize)>>,
}

pub(super) fn canonical_key(g: &Hypergraph) -> CanonicalKey {
    let label_keys: Vec<Vec<u8>> = g.edges.iter().map(|e| e.label.key_bytes()).collect();
    let mut table: Vec<&Vec<u8>> = label_keys.iter().collect();
    table.sort();
    table.dedup();
    let rank: BTreeMap<&Vec<u8>, u32> = table
        .iter()
        .enumerate()
        .map(|(i, k)| (*k, i as u32))
        .collect();
    let edges: Vec<(u32, Vec<usize>)> = g
        .edges
        .iter()
        .zip(&label_keys)
        .map(|(e, k)| (rank[k], e.att.clone()))
        .collect();
    let mut incidence = vec![Vec::new(); g.nodes.len()];
    for (i, (_, att)) in edges.iter().enumerate() {
        for (pos, &v) in att.iter().enumerate() {
            incidence[v].push((i, pos));
        }
    }
    let prep = Prepared {
        n: g.nodes.len(),
        edges,
        ext: g.ext.clone(),
        incidence,
    };

    let mut initial = vec![0usize; prep.n];
    for (i, &v) in prep.ext.iter().enumerate() {
        initial[v] = i + 1;
    }
    let colours = refine(&prep, initial);
    let mut best: Option<Vec<u32>> = None;
    search(&prep, colours, &mut best);

    let mut out = Vec::new();
    out.push(b'G');
    push_u32(&mut out, table.len());
    for k in &table {
        push_u32(&mut out, k.len());
        out.extend_from_slice(k);
    }
    for x in best.expect("search visits at least one leaf") {
        out.extend_from_slice(&x.to_le_bytes());
    }
    CanonicalKey(out)
}

fn push_u32(out: &mut Vec<u8>, x: usize) {
    out.extend_from_slice(&(x as u32).to_le_bytes());
}

/// Refines `colours` to a stable partition. Returned colours are dense ranks
/// of sorted signatures, so they depend only on the isomorphism class.
fn refine(prep: &Prepared, mut colours: Vec<usize>) -> Vec<usize> {
    colours = rerank(colours.iter().map(|&c| vec![c]).collect());
    let mut count = distinct(&colours);
    loop {
        let sigs: Vec<Vec<usize>> = (0..prep.n)
            .map(|v| {
                let mut around: Vec<Vec<usize>> = prep.incidence[v]
                    .iter()
                    .map(|&(e, pos)| {
                        let (rank, att) = &prep.edges[e];
                        let mut s = Vec::with_capacity(att.len() + 2);
                        s.push(*rank as usize);
                        s.push(pos);
                        s.extend(att.iter().map(|&u| colours[u]));
                        s
                    })
                    .collect();
                around.sort();
                let mut sig = vec![colours[v], around.len()];
                for a in around {
                    sig.push(a.len());
                    sig.extend(a);
                }
                sig
            })
            .collect();
        let next = rerank(sigs);
        let next_count = distinct(&next);
        colours = next;
        if next_count == count {
            return colours;
        }
        count = next_count;
    }
}

fn rerank(sigs: Vec<Vec<usize>>) -> Vec<usize> {
    let mut sorted: Vec<&Vec<usize>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(&s).expect("present"))
        .collect()
}

fn distinct(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(prep: &Prepared, colours: Vec<usize>, best: &mut Option<Vec<u32>>) {
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colours.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let target = cells
        .values()
        .find(|cell| cell.len() > 1 && !prep.incidence[cell[0]].is_empty());
    let Some(cell) = target else {
        let code = encode(prep, &colours);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    for &chosen in cell {
        let split: Vec<usize> = colours
            .iter()
            .enumerate()
            .map(|(v, &c)| if v == chosen { 2 * c } else { 2 * c + 1 })
            .collect();
        search(prep, refine(prep, split), best);
    }
}

/// Encodes the graph under the ordering given by `colours`. Remaining ties
/// are between isolated internal nodes, whose relative order is irrelevant.
fn encode(prep: &Prepared, colours: &[usize]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..prep.n).collect();
    order.sort_by_key(|&v| colours[v]);
    let mut pos = vec![0u32; prep.n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i as u32;
    }
    let mut edges: Vec<Vec<u32>> = prep
        .edges
        .iter()
        .map(|(rank, att)| {
            let mut e = vec![*rank, att.len() as u32];
            e.extend(att.iter().map(|&v| pos[v]));
            e
        })
        .collect();
    edges.sort();
    let mut code = vec![prep.n as u32, prep.ext.len() as u32];
    code.extend(prep.ext.iter().map(|&v| pos[v]));
    code.push(edges.len() as u32);
    for e in edges {
        code.extend(e);
    }
    code
}

#[cfg(test)]
mod tests {
    use crate::hypergraph::{EdgeLabel, EdgeSpec, Hypergraph};

    fn sym(name: &str, arity: usize) -> EdgeLabel {
        EdgeLabel::symbol(name, arity)
    }

    #[test]
    fn symmetric_graph_is_handled() {
        // Triangle of identical undirected-looking edges in both directions.
        let g = Hypergraph::new(
            ["a", "b", "c"],
            [
                EdgeSpec::new("1", sym("t", 2), ["a", "b"]),
                EdgeSpec::new("2", sym("t", 2), ["b", "c"]),
                EdgeSpec::new("3", sym("t", 2), ["c", "a"]),
            ],
            Vec::<String>::new(),
        )
        .unwrap();
        let h = Hypergraph::new(
            ["x", "y", "z"],
            [
                EdgeSpec::new("1", sym("t", 2), ["y", "x"]),
                EdgeSpec::new("2", sym("t", 2), ["x", "z"]),
                EdgeSpec::new("3", sym("t", 2), ["z", "y"]),
            ],
            Vec::<String>::new(),
        )
        .unwrap();
        assert!(g.is_isomorphic(&h));
        let path = Hypergraph::new(
            ["x", "y", "z"],
            [
                EdgeSpec::new("1", sym("t", 2), ["x", "y"]),
                EdgeSpec::new("2", sym("t", 2), ["y", "z"]),
                EdgeSpec::new("3", sym("t", 2), ["x", "z"]),
            ],
            Vec::<String>::new(),
        )
        .unwrap();
        assert!(!g.is_isomorphic(&path));
    }

    #[test]
    fn isolated_nodes_count() {
        let one = Hypergraph::new(["a", "b"], [], ["a"]).unwrap();
        let two = Hypergraph::new(["a", "b", "c"], [], ["a"]).unwrap();
        assert_ne!(one.canonical_key(), two.canonical_key());
        let two_again = Hypergraph::new(["z", "y", "a"], [], ["y"]).unwrap();
        assert_eq!(two.canonical_key(), two_again.canonical_key());
    }
}
