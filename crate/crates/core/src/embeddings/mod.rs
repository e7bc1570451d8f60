//! String calculi (L, LP, NL◇, NL, NLP, L^R) and their translations into HL.

mod syntax;
mod translate;

use std::fmt;

pub use syntax::{parse_sequent, parse_term, parse_type};
pub use translate::{
    recognize_string_image, tr_l, tr_l_sequent, tr_lp, tr_lp_sequent, tr_nld, tr_nld_sequent,
    tr_nld_term, tr_r, tr_r_prime, tr_r_sequent, translate, translate_type, untranslate_type, NldMode,
    RESERVED_PRIMITIVES,
};

/// Which string calculus a sequent belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    L,
    LP,
    /// NL with the unary modalities ◇ and □.
    NLD,
    NL,
    NLP,
    /// L with the reversal connective.
    LR,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::L => "l",
            Flavor::LP => "lp",
            Flavor::NLD => "nld",
            Flavor::NL => "nl",
            Flavor::NLP => "nlp",
            Flavor::LR => "lr",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "l" => Flavor::L,
            "lp" => Flavor::LP,
            "nld" => Flavor::NLD,
            "nl" => Flavor::NL,
            "nlp" => Flavor::NLP,
            "lr" => Flavor::LR,
            _ => return None,
        })
    }

    /// Bracketed (term) antecedents rather than sequences.
    pub fn is_nonassociative(self) -> bool {
        matches!(self, Flavor::NLD | Flavor::NL | Flavor::NLP)
    }

    fn allows(self, t: &StringType) -> bool {
        match t {
            StringType::Atom(_) => true,
            StringType::Over(a, b) | StringType::Under(a, b) | StringType::Prod(a, b) => {
                self.allows(a) && self.allows(b)
            }
            StringType::Dia(a) | StringType::Box(a) => self == Flavor::NLD && self.allows(a),
            StringType::Rev(a) => self == Flavor::LR && self.allows(a),
        }
    }
}

/// A type of one of the string calculi.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StringType {
    Atom(String),
    /// `A / B`
    Over(Box<StringType>, Box<StringType>),
    /// `B \ A`, stored as `(B, A)`.
    Under(Box<StringType>, Box<StringType>),
    /// `A * B`
    Prod(Box<StringType>, Box<StringType>),
    Dia(Box<StringType>),
    Box(Box<StringType>),
    /// `A^R`
    Rev(Box<StringType>),
}

impl StringType {
    pub fn atom(name: impl Into<String>) -> Self {
        StringType::Atom(name.into())
    }

    pub fn over(a: StringType, b: StringType) -> Self {
        StringType::Over(Box::new(a), Box::new(b))
    }

    /// `b \ a`
    pub fn under(b: StringType, a: StringType) -> Self {
        StringType::Under(Box::new(b), Box::new(a))
    }

    pub fn prod(a: StringType, b: StringType) -> Self {
        StringType::Prod(Box::new(a), Box::new(b))
    }

    pub fn dia(a: StringType) -> Self {
        StringType::Dia(Box::new(a))
    }

    pub fn boxed(a: StringType) -> Self {
        StringType::Box(Box::new(a))
    }

    pub fn rev(a: StringType) -> Self {
        StringType::Rev(Box::new(a))
    }

    pub fn connectives(&self) -> usize {
        match self {
            StringType::Atom(_) => 0,
            StringType::Over(a, b) | StringType::Under(a, b) | StringType::Prod(a, b) => {
                1 + a.connectives() + b.connectives()
            }
            StringType::Dia(a) | StringType::Box(a) | StringType::Rev(a) => 1 + a.connectives(),
        }
    }

    pub fn atoms(&self) -> Vec<&str> {
        match self {
            StringType::Atom(p) => vec![p.as_str()],
            StringType::Over(a, b) | StringType::Under(a, b) | StringType::Prod(a, b) => {
                let mut v = a.atoms();
                v.extend(b.atoms());
                v
            }
            StringType::Dia(a) | StringType::Box(a) | StringType::Rev(a) => a.atoms(),
        }
    }
}

/// Bracketed antecedent structure of the nonassociative calculi.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Leaf(StringType),
    Pair(Box<Term>, Box<Term>),
    /// `(Γ)^◇`
    Diamond(Box<Term>),
}

impl Term {
    pub fn pair(a: Term, b: Term) -> Self {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn diamond(a: Term) -> Self {
        Term::Diamond(Box::new(a))
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<&StringType> {
        match self {
            Term::Leaf(t) => vec![t],
            Term::Pair(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
            Term::Diamond(a) => a.leaves(),
        }
    }

    /// Connectives in the leaves plus structural operators.
    pub fn connectives(&self) -> usize {
        match self {
            Term::Leaf(t) => t.connectives(),
            Term::Pair(a, b) => a.connectives() + b.connectives(),
            Term::Diamond(a) => a.connectives(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Antecedent {
    Sequence(Vec<StringType>),
    Term(Term),
}

impl Antecedent {
    pub fn types(&self) -> Vec<&StringType> {
        match self {
            Antecedent::Sequence(v) => v.iter().collect(),
            Antecedent::Term(t) => t.leaves(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringSequent {
    pub flavor: Flavor,
    pub antecedent: Antecedent,
    pub succedent: StringType,
}

impl StringSequent {
    /// Checks that the antecedent shape and connectives fit the flavor.
    pub fn new(flavor: Flavor, antecedent: Antecedent, succedent: StringType) -> crate::Result<Self> {
        let seq = StringSequent {
            flavor,
            antecedent,
            succedent,
        };
        seq.check()?;
        Ok(seq)
    }

    pub fn sequence(flavor: Flavor, antecedent: Vec<StringType>, succedent: StringType) -> crate::Result<Self> {
        Self::new(flavor, Antecedent::Sequence(antecedent), succedent)
    }

    pub fn term(flavor: Flavor, antecedent: Term, succedent: StringType) -> crate::Result<Self> {
        Self::new(flavor, Antecedent::Term(antecedent), succedent)
    }

    fn check(&self) -> crate::Result<()> {
        let bad = |m: String| Err(crate::Error::InvalidSequent(m));
        match (&self.antecedent, self.flavor.is_nonassociative()) {
            (Antecedent::Sequence(v), false) if v.is_empty() => {
                return bad("empty antecedent".into())
            }
            (Antecedent::Sequence(_), false) | (Antecedent::Term(_), true) => {}
            _ => return bad(format!("antecedent shape does not fit {}", self.flavor.name())),
        }
        if let Antecedent::Term(t) = &self.antecedent {
            if self.flavor != Flavor::NLD && has_diamond(t) {
                return bad("structural diamond outside nld".to_string());
            }
        }
        for t in self.antecedent.types().into_iter().chain([&self.succedent]) {
            if !self.flavor.allows(t) {
                return bad(format!("type `{t}` is not a {} type", self.flavor.name()));
            }
        }
        Ok(())
    }

    pub fn connectives(&self) -> usize {
        self.antecedent
            .types()
            .iter()
            .map(|t| t.connectives())
            .sum::<usize>()
            + self.succedent.connectives()
    }
}

fn has_diamond(t: &Term) -> bool {
    match t {
        Term::Leaf(_) => false,
        Term::Pair(a, b) => has_diamond(a) || has_diamond(b),
        Term::Diamond(_) => true,
    }
}

impl fmt::Display for StringType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn inner(t: &StringType, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                StringType::Atom(_) | StringType::Dia(_) | StringType::Box(_) | StringType::Rev(_) => {
                    write!(f, "{t}")
                }
                _ => write!(f, "({t})"),
            }
        }
        match self {
            StringType::Atom(p) => write!(f, "{p}"),
            StringType::Over(a, b) => {
                inner(a, f)?;
                f.write_str("/")?;
                inner(b, f)
            }
            StringType::Under(b, a) => {
                inner(b, f)?;
                f.write_str("\\")?;
                inner(a, f)
            }
            StringType::Prod(a, b) => {
                inner(a, f)?;
                f.write_str("*")?;
                inner(b, f)
            }
            StringType::Dia(a) => write!(f, "dia({a})"),
            StringType::Box(a) => write!(f, "box({a})"),
            StringType::Rev(a) => {
                inner(a, f)?;
                f.write_str("^R")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(t) => match t {
                StringType::Atom(_) | StringType::Dia(_) | StringType::Box(_) => write!(f, "{t}"),
                _ => write!(f, "({t})"),
            },
            Term::Pair(a, b) => write!(f, "({a}, {b})"),
            Term::Diamond(a) => write!(f, "({a})^d"),
        }
    }
}

impl fmt::Display for Antecedent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Antecedent::Sequence(v) => {
                for (i, t) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            Antecedent::Term(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Display for StringSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.antecedent, self.succedent)
    }
}
