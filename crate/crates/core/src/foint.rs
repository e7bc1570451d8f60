//! Translation `v` of HL types and sequents into first-order intuitionistic
//! formulas.
//!
//! Free variables are `x1..xk` in external-node order. Bound variables are
//! `y1, y2, ...` drawn from one counter per translation, so every quantifier
//! block gets fresh names; within a block they follow the node list order of
//! the graph being translated.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::types::{HLType, Sequent, TypeKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Atom { predicate: String, args: Vec<String> },
    And(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
}

impl Formula {
    /// Conjunction; none is `⊤`, one is the conjunct itself.
    pub fn and(mut items: Vec<Formula>) -> Formula {
        match items.len() {
            0 => Formula::Top,
            1 => items.pop().expect("one item"),
            _ => Formula::And(items),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// `∀vars body`, or just `body` when there are no variables.
    pub fn forall(vars: Vec<String>, body: Formula) -> Formula {
        if vars.is_empty() {
            body
        } else {
            Formula::Forall(vars, Box::new(body))
        }
    }

    pub fn exists(vars: Vec<String>, body: Formula) -> Formula {
        if vars.is_empty() {
            body
        } else {
            Formula::Exists(vars, Box::new(body))
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(self, Formula::Top | Formula::Atom { .. })
    }

    /// Variables occurring free, in first-occurrence order.
    pub fn free_variables(&self) -> Vec<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match f {
                Formula::Top => {}
                Formula::Atom { args, .. } => {
                    for a in args {
                        if !bound.contains(a) && !out.contains(a) {
                            out.push(a.clone());
                        }
                    }
                }
                Formula::And(items) => items.iter().for_each(|i| go(i, bound, out)),
                Formula::Implies(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
                    let n = bound.len();
                    bound.extend(vs.iter().cloned());
                    go(body, bound, out);
                    bound.truncate(n);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Predicate names with every arity they are used at.
    pub fn predicates(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Atom { predicate, args } = f {
                let p = (predicate.clone(), args.len());
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        });
        out
    }

    fn visit(&self, f: &mut dyn FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Top | Formula::Atom { .. } => {}
            Formula::And(items) => items.iter().for_each(|i| i.visit(f)),
            Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.visit(f),
        }
    }

    /// Equality up to a bijective renaming of variables, free and bound alike.
    pub fn equivalent_up_to_renaming(&self, other: &Formula) -> bool {
        fn pair(a: &str, b: &str, fw: &mut HashMap<String, String>, bw: &mut HashMap<String, String>) -> bool {
            match (fw.get(a), bw.get(b)) {
                (None, None) => {
                    fw.insert(a.into(), b.into());
                    bw.insert(b.into(), a.into());
                    true
                }
                (Some(x), Some(y)) => x == b && y == a,
                _ => false,
            }
        }
        fn go(a: &Formula, b: &Formula, fw: &mut HashMap<String, String>, bw: &mut HashMap<String, String>) -> bool {
            match (a, b) {
                (Formula::Top, Formula::Top) => true,
                (
                    Formula::Atom { predicate: p, args: xs },
                    Formula::Atom { predicate: q, args: ys },
                ) => p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| pair(x, y, fw, bw)),
                (Formula::And(xs), Formula::And(ys)) => {
                    xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| go(x, y, fw, bw))
                }
                (Formula::Implies(a1, b1), Formula::Implies(a2, b2)) => {
                    go(a1, a2, fw, bw) && go(b1, b2, fw, bw)
                }
                (Formula::Forall(v1, b1), Formula::Forall(v2, b2))
                | (Formula::Exists(v1, b1), Formula::Exists(v2, b2)) => {
                    v1.len() == v2.len()
                        && v1.iter().zip(v2).all(|(x, y)| pair(x, y, fw, bw))
                        && go(b1, b2, fw, bw)
                }
                _ => false,
            }
        }
        go(self, other, &mut HashMap::new(), &mut HashMap::new())
    }

    /// TPTP `fof` with the free variables universally closed.
    pub fn to_tptp(&self, name: &str) -> String {
        fn var(v: &str) -> String {
            let mut c = v.chars();
            match c.next() {
                Some(h) => h.to_uppercase().chain(c).collect(),
                None => "V".into(),
            }
        }
        fn go(f: &Formula, out: &mut String) {
            let wrap = |g: &Formula, out: &mut String| {
                if g.is_atomic() {
                    go(g, out);
                } else {
                    out.push('(');
                    go(g, out);
                    out.push(')');
                }
            };
            match f {
                Formula::Top => out.push_str("$true"),
                Formula::Atom { predicate, args } => {
                    out.push_str(predicate);
                    if !args.is_empty() {
                        let args: Vec<String> = args.iter().map(|a| var(a)).collect();
                        out.push_str(&format!("({})", args.join(",")));
                    }
                }
                Formula::And(items) => {
                    for (i, g) in items.iter().enumerate() {
                        if i > 0 {
                            out.push_str(" & ");
                        }
                        wrap(g, out);
                    }
                }
                Formula::Implies(a, b) => {
                    wrap(a, out);
                    out.push_str(" => ");
                    wrap(b, out);
                }
                Formula::Forall(vs, b) | Formula::Exists(vs, b) => {
                    out.push(if matches!(f, Formula::Forall(..)) { '!' } else { '?' });
                    let vs: Vec<String> = vs.iter().map(|v| var(v)).collect();
                    out.push_str(&format!("[{}]: ", vs.join(",")));
                    out.push('(');
                    go(b, out);
                    out.push(')');
                }
            }
        }
        let mut body = String::new();
        go(self, &mut body);
        let free = self.free_variables();
        if free.is_empty() {
            format!("fof({name}, conjecture, {body}).")
        } else {
            let free: Vec<String> = free.iter().map(|v| var(v)).collect();
            format!("fof({name}, conjecture, ![{}]: ({body})).", free.join(","))
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrapped(g: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if g.is_atomic() {
                write!(f, "{g}")
            } else {
                write!(f, "({g})")
            }
        }
        match self {
            Formula::Top => f.write_str("T"),
            Formula::Atom { predicate, args } if args.is_empty() => f.write_str(predicate),
            Formula::Atom { predicate, args } => write!(f, "{predicate}({})", args.join(",")),
            Formula::And(items) => {
                for (i, g) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    wrapped(g, f)?;
                }
                Ok(())
            }
            Formula::Implies(a, b) => {
                wrapped(a, f)?;
                f.write_str(" -> ")?;
                wrapped(b, f)
            }
            Formula::Forall(vs, b) => write!(f, "forall {}. ({b})", vs.join(" ")),
            Formula::Exists(vs, b) => write!(f, "exists {}. ({b})", vs.join(" ")),
        }
    }
}

#[derive(Default)]
struct Namer {
    next: usize,
}

impl Namer {
    fn fresh(&mut self) -> String {
        self.next += 1;
        format!("y{}", self.next)
    }

    /// Assigns `args` to `fixed` nodes and fresh variables to the rest.
    fn assign(&mut self, g: &Hypergraph, fixed: &[usize], args: &[String]) -> (Vec<String>, Vec<String>) {
        let mut names = vec![String::new(); g.node_count()];
        for (&v, a) in fixed.iter().zip(args) {
            names[v] = a.clone();
        }
        let mut bound = Vec::new();
        for (v, name) in names.iter_mut().enumerate() {
            if !fixed.contains(&v) {
                *name = self.fresh();
                bound.push(name.clone());
            }
        }
        (names, bound)
    }

    fn edges(&mut self, g: &Hypergraph, names: &[String], skip: Option<usize>) -> Vec<Formula> {
        g.edges()
            .iter()
            .enumerate()
            .filter(|&(i, _)| Some(i) != skip)
            .filter_map(|(_, e)| {
                let t = e.label().as_type()?;
                let args: Vec<String> = e.att().iter().map(|&v| names[v].clone()).collect();
                Some(self.ty(t, &args))
            })
            .collect()
    }

    fn ty(&mut self, t: &HLType, args: &[String]) -> Formula {
        match t.kind() {
            TypeKind::Primitive { name, .. } => Formula::Atom {
                predicate: name.clone(),
                args: args.to_vec(),
            },
            TypeKind::Division {
                numerator,
                denominator,
            } => {
                let (_, d, d0) = t.as_division().expect("division");
                let (names, bound) = self.assign(d, d.edges()[d0].att(), args);
                let premises = self.edges(d, &names, Some(d0));
                let ext: Vec<String> = denominator.ext().iter().map(|&v| names[v].clone()).collect();
                let conclusion = self.ty(numerator, &ext);
                Formula::forall(bound, Formula::implies(Formula::and(premises), conclusion))
            }
            TypeKind::Product { body } => self.product(body, args),
        }
    }

    fn product(&mut self, m: &Hypergraph, args: &[String]) -> Formula {
        let (names, bound) = self.assign(m, m.ext(), args);
        let parts = self.edges(m, &names, None);
        Formula::exists(bound, Formula::and(parts))
    }
}

fn check_args(what: &str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::arity(what, expected, found))
    }
}

/// `v(t)[args]`.
pub fn foint_type(t: &HLType, args: &[String]) -> Result<Formula> {
    check_args("translated type", t.arity(), args.len())?;
    Ok(Namer::default().ty(t, args))
}

/// `v(×(g))[args]`, defined for any graph whose labels are types.
pub fn foint_graph(g: &Hypergraph, args: &[String]) -> Result<Formula> {
    check_args("translated graph", g.arity(), args.len())?;
    Ok(Namer::default().product(g, args))
}

/// The free variables `x1..xk`.
pub fn free_variables(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("x{i}")).collect()
}

/// `v(H → A) = v(×(H))[x] → v(A)[x]`.
pub fn foint_sequent(s: &Sequent) -> Formula {
    let xs = free_variables(s.succedent().arity());
    let mut namer = Namer::default();
    let lhs = namer.product(s.antecedent(), &xs);
    let rhs = namer.ty(s.succedent(), &xs);
    Formula::implies(lhs, rhs)
}

/// Parses the printer's syntax. Quantifier bodies must be atomic or parenthesized.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = FormulaParser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

struct FormulaParser {
    chars: Vec<char>,
    pos: usize,
}

impl FormulaParser {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars[self.pos.min(self.chars.len())..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.conj()?;
        if self.eat("->") {
            Ok(Formula::implies(lhs, self.formula()?))
        } else {
            Ok(lhs)
        }
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut items = vec![self.unary()?];
        while self.eat("&") {
            items.push(self.unary()?);
        }
        Ok(Formula::and(items))
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("(") {
            let f = self.formula()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(f);
        }
        let word = self.ident().ok_or_else(|| self.err("expected a formula"))?;
        match word.as_str() {
            "T" => Ok(Formula::Top),
            "forall" | "exists" => {
                let mut vars = Vec::new();
                while !self.eat(".") {
                    vars.push(self.ident().ok_or_else(|| self.err("expected a variable or `.`"))?);
                }
                if vars.is_empty() {
                    return Err(self.err("empty quantifier block"));
                }
                let body = self.unary()?;
                Ok(if word == "forall" {
                    Formula::Forall(vars, Box::new(body))
                } else {
                    Formula::Exists(vars, Box::new(body))
                })
            }
            _ => {
                let mut args = Vec::new();
                if self.eat("(") {
                    loop {
                        args.push(self.ident().ok_or_else(|| self.err("expected a variable"))?);
                        if self.eat(")") {
                            break;
                        }
                        if !self.eat(",") {
                            return Err(self.err("expected `,` or `)`"));
                        }
                    }
                }
                Ok(Formula::Atom {
                    predicate: word,
                    args,
                })
            }
        }
    }
}
