//! Brute-force cut-free provers for the string calculi, used to cross-check
//! the embeddings.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::embeddings::{Antecedent, Flavor, StringSequent, StringType, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("string search timed out")]
    Timeout,
}

type Seq = (Vec<StringType>, StringType);

/// Memoizing oracle; the memo is kept across queries.
#[derive(Default)]
pub struct Oracle {
    timeout: Option<Duration>,
    lp_empty: bool,
    deadline: Option<Instant>,
    seq_memo: HashMap<(bool, Seq), bool>,
    term_memo: HashMap<(Flavor, Term, StringType), bool>,
}

/// Derivability of `seq` in its own calculus.
pub fn string_derivable(seq: &StringSequent) -> bool {
    Oracle::new().derivable(seq).expect("no timeout configured")
}

/// Pushes `^R` down to the atoms: `(A/B)^R = B^R\A^R`, `(B\A)^R = A^R/B^R`,
/// `(A·B)^R = B^R·A^R`, `A^RR = A`.
pub fn normalize_reversal(t: &StringType) -> StringType {
    fn rev(t: StringType) -> StringType {
        match t {
            StringType::Atom(_) => StringType::rev(t),
            StringType::Rev(a) => *a,
            StringType::Over(a, b) => StringType::under(rev(*b), rev(*a)),
            StringType::Under(b, a) => StringType::over(rev(*a), rev(*b)),
            StringType::Prod(a, b) => StringType::prod(rev(*b), rev(*a)),
            StringType::Dia(_) | StringType::Box(_) => unreachable!("no modalities in L^R"),
        }
    }
    match t {
        StringType::Atom(_) => t.clone(),
        StringType::Rev(a) => rev(normalize_reversal(a)),
        StringType::Over(a, b) => StringType::over(normalize_reversal(a), normalize_reversal(b)),
        StringType::Under(b, a) => StringType::under(normalize_reversal(b), normalize_reversal(a)),
        StringType::Prod(a, b) => StringType::prod(normalize_reversal(a), normalize_reversal(b)),
        StringType::Dia(a) => StringType::dia(normalize_reversal(a)),
        StringType::Box(a) => StringType::boxed(normalize_reversal(a)),
    }
}

/// Atoms, and `p^R` after normalization.
fn is_literal(t: &StringType) -> bool {
    match t {
        StringType::Atom(_) => true,
        StringType::Rev(a) => matches!(**a, StringType::Atom(_)),
        _ => false,
    }
}

fn concat(parts: &[&[StringType]]) -> Vec<StringType> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Oracle {
            timeout: Some(timeout),
            ..Self::default()
        }
    }

    /// LP with empty antecedents allowed in premises: `Π` in `/→` and either
    /// side of a `→·` split may be empty. This is the calculus that the
    /// commutative embedding actually captures.
    pub fn with_empty_lp_antecedents(mut self) -> Self {
        self.lp_empty = true;
        self.seq_memo.clear();
        self
    }

    pub fn derivable(&mut self, seq: &StringSequent) -> Result<bool, OracleError> {
        self.deadline = self.timeout.map(|t| Instant::now() + t);
        match (&seq.antecedent, seq.flavor) {
            (Antecedent::Sequence(v), Flavor::L) => self.seq(false, v, &seq.succedent),
            (Antecedent::Sequence(v), Flavor::LR) => {
                let v: Vec<_> = v.iter().map(normalize_reversal).collect();
                self.seq(false, &v, &normalize_reversal(&seq.succedent))
            }
            (Antecedent::Sequence(v), Flavor::LP) => {
                let mut v = v.clone();
                v.sort();
                self.seq(true, &v, &seq.succedent)
            }
            (Antecedent::Term(t), f) => {
                let t = if f == Flavor::NLP { commute_normal(t) } else { t.clone() };
                self.term(f, &t, &seq.succedent)
            }
            (Antecedent::Sequence(_), _) => unreachable!("sequent shape is checked on construction"),
        }
    }

    fn tick(&self) -> Result<(), OracleError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(OracleError::Timeout),
            _ => Ok(()),
        }
    }

    /// L when `!perm`, LP (antecedent kept sorted) when `perm`.
    fn seq(&mut self, perm: bool, ant: &[StringType], c: &StringType) -> Result<bool, OracleError> {
        let key = (perm, (ant.to_vec(), c.clone()));
        if let Some(&v) = self.seq_memo.get(&key) {
            return Ok(v);
        }
        self.tick()?;
        let v = if perm {
            self.lp_search(ant, c)?
        } else {
            self.l_search(ant, c)?
        };
        self.seq_memo.insert(key, v);
        Ok(v)
    }

    fn lp(&mut self, mut ant: Vec<StringType>, c: &StringType) -> Result<bool, OracleError> {
        ant.sort();
        self.seq(true, &ant, c)
    }

    fn l_search(&mut self, ant: &[StringType], c: &StringType) -> Result<bool, OracleError> {
        if ant.len() == 1 && &ant[0] == c && is_literal(c) {
            return Ok(true);
        }
        match c {
            StringType::Over(a, b) => {
                if self.seq(false, &concat(&[ant, &[(**b).clone()]]), a)? {
                    return Ok(true);
                }
            }
            StringType::Under(b, a) => {
                if self.seq(false, &concat(&[&[(**b).clone()], ant]), a)? {
                    return Ok(true);
                }
            }
            StringType::Prod(a, b) => {
                for k in 1..ant.len() {
                    if self.seq(false, &ant[..k], a)? && self.seq(false, &ant[k..], b)? {
                        return Ok(true);
                    }
                }
            }
            _ => {}
        }
        for i in 0..ant.len() {
            match &ant[i] {
                StringType::Prod(a, b) => {
                    let v = concat(&[&ant[..i], &[(**a).clone(), (**b).clone()], &ant[i + 1..]]);
                    if self.seq(false, &v, c)? {
                        return Ok(true);
                    }
                }
                StringType::Over(a, b) => {
                    for j in i + 1..ant.len() {
                        if self.seq(false, &ant[i + 1..=j], b)?
                            && self.seq(false, &concat(&[&ant[..i], &[(**a).clone()], &ant[j + 1..]]), c)?
                        {
                            return Ok(true);
                        }
                    }
                }
                StringType::Under(b, a) => {
                    for j in 0..i {
                        if self.seq(false, &ant[j..i], b)?
                            && self.seq(false, &concat(&[&ant[..j], &[(**a).clone()], &ant[i + 1..]]), c)?
                        {
                            return Ok(true);
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(false)
    }

    fn lp_search(&mut self, ant: &[StringType], c: &StringType) -> Result<bool, OracleError> {
        if ant.len() == 1 && &ant[0] == c && is_literal(c) {
            return Ok(true);
        }
        match c {
            StringType::Over(a, b) | StringType::Under(b, a) => {
                if self.lp(concat(&[ant, &[(**b).clone()]]), a)? {
                    return Ok(true);
                }
            }
            StringType::Prod(a, b) => {
                let n = ant.len();
                let (lo, hi) = if self.lp_empty { (0, 1usize << n) } else { (1, (1usize << n) - 1) };
                for mask in lo..hi {
                    let (l, r) = split(ant, mask);
                    if self.lp(l, a)? && self.lp(r, b)? {
                        return Ok(true);
                    }
                }
            }
            _ => {}
        }
        for i in 0..ant.len() {
            let rest = concat(&[&ant[..i], &ant[i + 1..]]);
            match &ant[i] {
                StringType::Prod(a, b) => {
                    if self.lp(concat(&[&rest, &[(**a).clone(), (**b).clone()]]), c)? {
                        return Ok(true);
                    }
                }
                StringType::Over(a, b) | StringType::Under(b, a) => {
                    let lo = usize::from(!self.lp_empty);
                    for mask in lo..1usize << rest.len() {
                        let (pi, others) = split(&rest, mask);
                        if self.lp(pi, b)? && self.lp(concat(&[&others, &[(**a).clone()]]), c)? {
                            return Ok(true);
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(false)
    }

    fn term(&mut self, f: Flavor, t: &Term, c: &StringType) -> Result<bool, OracleError> {
        let t = if f == Flavor::NLP { commute_normal(t) } else { t.clone() };
        let key = (f, t, c.clone());
        if let Some(&v) = self.term_memo.get(&key) {
            return Ok(v);
        }
        self.tick()?;
        let v = self.term_search(f, &key.1, c)?;
        self.term_memo.insert(key, v);
        Ok(v)
    }

    fn term_search(&mut self, f: Flavor, t: &Term, c: &StringType) -> Result<bool, OracleError> {
        let comm = f == Flavor::NLP;
        if let Term::Leaf(x) = t {
            if x == c && is_literal(c) {
                return Ok(true);
            }
        }
        let leaf = |x: &StringType| Term::Leaf(x.clone());
        match (c, t) {
            (StringType::Over(a, b), _) => {
                if self.term(f, &Term::pair(t.clone(), leaf(b)), a)? {
                    return Ok(true);
                }
            }
            (StringType::Under(b, a), _) => {
                if self.term(f, &Term::pair(leaf(b), t.clone()), a)? {
                    return Ok(true);
                }
            }
            (StringType::Prod(a, b), Term::Pair(x, y)) => {
                if self.term(f, x, a)? && self.term(f, y, b)? {
                    return Ok(true);
                }
                if comm && self.term(f, y, a)? && self.term(f, x, b)? {
                    return Ok(true);
                }
            }
            (StringType::Dia(a), Term::Diamond(x)) => {
                if self.term(f, x, a)? {
                    return Ok(true);
                }
            }
            (StringType::Box(a), _)
                if self.term(f, &Term::diamond(t.clone()), a)? => {
                    return Ok(true);
                }
            _ => {}
        }
        for path in subterm_paths(t) {
            let s = at(t, &path);
            // (premise for Π, replacement for the matched occurrence)
            let mut steps: Vec<(Option<(&Term, &StringType)>, Term)> = Vec::new();
            match s {
                Term::Leaf(StringType::Prod(a, b)) => {
                    steps.push((None, Term::pair(leaf(a), leaf(b))));
                }
                Term::Leaf(StringType::Dia(a)) => steps.push((None, Term::diamond(leaf(a)))),
                Term::Diamond(inner) => {
                    if let Term::Leaf(StringType::Box(a)) = &**inner {
                        steps.push((None, leaf(a)));
                    }
                }
                Term::Pair(x, y) => {
                    if let Term::Leaf(StringType::Under(b, a)) = &**y {
                        steps.push((Some((x, b)), leaf(a)));
                    }
                    if let Term::Leaf(StringType::Over(a, b)) = &**x {
                        steps.push((Some((y, b)), leaf(a)));
                    }
                    if comm {
                        if let Term::Leaf(StringType::Under(b, a)) = &**x {
                            steps.push((Some((y, b)), leaf(a)));
                        }
                        if let Term::Leaf(StringType::Over(a, b)) = &**y {
                            steps.push((Some((x, b)), leaf(a)));
                        }
                    }
                }
                Term::Leaf(_) => {}
            }
            for (minor, replacement) in steps {
                if let Some((pi, b)) = minor {
                    if !self.term(f, pi, b)? {
                        continue;
                    }
                }
                if self.term(f, &replace(t, &path, replacement), c)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

fn split(items: &[StringType], mask: usize) -> (Vec<StringType>, Vec<StringType>) {
    let mut l = Vec::new();
    let mut r = Vec::new();
    for (i, x) in items.iter().enumerate() {
        if mask >> i & 1 == 1 {
            l.push(x.clone());
        } else {
            r.push(x.clone());
        }
    }
    (l, r)
}

/// Sorts the components of every pair, a normal form modulo commutativity.
fn commute_normal(t: &Term) -> Term {
    match t {
        Term::Leaf(_) => t.clone(),
        Term::Pair(a, b) => {
            let (a, b) = (commute_normal(a), commute_normal(b));
            if a <= b {
                Term::pair(a, b)
            } else {
                Term::pair(b, a)
            }
        }
        Term::Diamond(a) => Term::diamond(commute_normal(a)),
    }
}

/// Paths (0 = left or diamond body, 1 = right) to every subterm occurrence.
fn subterm_paths(t: &Term) -> Vec<Vec<u8>> {
    fn go(t: &Term, path: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        out.push(path.clone());
        match t {
            Term::Leaf(_) => {}
            Term::Pair(a, b) => {
                path.push(0);
                go(a, path, out);
                path.pop();
                path.push(1);
                go(b, path, out);
                path.pop();
            }
            Term::Diamond(a) => {
                path.push(0);
                go(a, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

fn at<'a>(t: &'a Term, path: &[u8]) -> &'a Term {
    match (t, path.split_first()) {
        (_, None) => t,
        (Term::Pair(a, _), Some((0, rest))) | (Term::Diamond(a), Some((0, rest))) => at(a, rest),
        (Term::Pair(_, b), Some((1, rest))) => at(b, rest),
        _ => unreachable!("path from subterm_paths"),
    }
}

fn replace(t: &Term, path: &[u8], with: Term) -> Term {
    match (t, path.split_first()) {
        (_, None) => with,
        (Term::Pair(a, b), Some((0, rest))) => Term::Pair(Box::new(replace(a, rest, with)), b.clone()),
        (Term::Pair(a, b), Some((1, rest))) => Term::Pair(a.clone(), Box::new(replace(b, rest, with))),
        (Term::Diamond(a), Some((0, rest))) => Term::diamond(replace(a, rest, with)),
        _ => unreachable!("path from subterm_paths"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::parse_sequent;

    fn holds(flavor: Flavor, text: &str) -> bool {
        string_derivable(&parse_sequent(flavor, text).unwrap())
    }

    #[test]
    fn lambek_basics() {
        assert!(holds(Flavor::L, "p/q, q/r -> p/r"));
        assert!(!holds(Flavor::L, "p -> q"));
        assert!(!holds(Flavor::L, "p, q -> q*p"));
        assert!(holds(Flavor::LP, "p, q -> q*p"));
        assert!(holds(Flavor::L, "p -> q/(p\\q)"));
        assert!(holds(Flavor::L, "(p/q)/r -> p/(r*q)"));
        assert!(!holds(Flavor::L, "p/q -> q\\p"));
        assert!(holds(Flavor::LP, "p/q -> q\\p"));
    }

    #[test]
    fn nonassociative() {
        assert!(holds(Flavor::NL, "(p/q, q) -> p"));
        assert!(!holds(Flavor::NL, "((p/q, q/r), r) -> p"));
        assert!(holds(Flavor::NL, "(p/q, (q/r, r)) -> p"));
        assert!(holds(Flavor::NLP, "(q, p/q) -> p"));
        assert!(!holds(Flavor::NL, "(q, p/q) -> p"));
        assert!(holds(Flavor::NLD, "(box(p))^d -> p"));
        assert!(holds(Flavor::NLD, "p -> box(dia(p))"));
        assert!(!holds(Flavor::NLD, "p -> dia(box(p))"));
        assert!(holds(Flavor::NLD, "dia(box(p)) -> p"));
    }

    #[test]
    fn reversal() {
        assert!(holds(Flavor::LR, "p^R^R -> p"));
        assert!(holds(Flavor::LR, "(p*q)^R -> q^R*p^R"));
        assert!(holds(Flavor::LR, "q^R, (p/q)^R -> p^R"));
        assert!(!holds(Flavor::LR, "(p/q)^R, q^R -> p^R"));
        assert!(!holds(Flavor::LR, "p^R -> p"));
        assert_eq!(
            normalize_reversal(&crate::embeddings::parse_type("(p/q)^R").unwrap()).to_string(),
            "q^R\\p^R"
        );
    }

    #[test]
    fn empty_lp_antecedents() {
        let seq = parse_sequent(Flavor::LP, "p/(p/p) -> p").unwrap();
        assert!(!string_derivable(&seq));
        assert!(Oracle::new().with_empty_lp_antecedents().derivable(&seq).unwrap());
        let seq = parse_sequent(Flavor::LP, "p -> p*(q/q)").unwrap();
        assert!(Oracle::new().with_empty_lp_antecedents().derivable(&seq).unwrap());
        let seq = parse_sequent(Flavor::LP, "p -> q").unwrap();
        assert!(!Oracle::new().with_empty_lp_antecedents().derivable(&seq).unwrap());
    }

    #[test]
    fn timeout() {
        let seq = parse_sequent(Flavor::LP, "p/q, q/r, r/p, p/q, q/r, r/p -> p").unwrap();
        let mut o = Oracle::with_timeout(Duration::ZERO);
        assert_eq!(o.derivable(&seq), Err(OracleError::Timeout));
    }
}
