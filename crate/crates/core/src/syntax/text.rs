//! S-expression text form of sentences.
//!
//! `(and (atom 0) (not (atom 1)))`, `(exists x (= (S x) (0)))`, and `(C n)` for
//! the sentence saying there is an S-cycle of size exactly `n`.

use std::fmt;

use thiserror::Error;

use super::{Formula, Sentence, Signature, SyntaxError, Term, TermBase};
use crate::sexp::{self, Sexp};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] sexp::SexpError),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Sentence(#[from] SyntaxError),
}

pub fn var_name(v: u32) -> String {
    match v {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        3 => "w".into(),
        n => format!("v{n}"),
    }
}

fn var_index(s: &str) -> Option<u32> {
    match s {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        "w" => Some(3),
        _ => s.strip_prefix('v')?.parse().ok(),
    }
}

/// `∃x (S^n x = x ∧ ¬(S x = x) ∧ ... ∧ ¬(S^{n-1} x = x))`, conjunction right-nested.
pub fn cycle_formula(n: u32) -> Formula {
    assert!(n >= 1, "cycle size must be positive");
    let x = || Term::var(0);
    let mut parts = vec![Formula::eq(x().s(n), x())];
    parts.extend((1..n).map(|m| Formula::eq(x().s(m), x()).not()));
    let last = parts.pop().expect("non-empty");
    let body = parts.into_iter().rev().fold(last, |acc, p| p.and(acc));
    Formula::exists(0, body)
}

fn as_cycle(f: &Formula) -> Option<u32> {
    if let Formula::Exists(0, body) = f {
        let first = match &**body {
            Formula::And(a, _) => &**a,
            other => other,
        };
        if let Formula::Eq(l, r) = first {
            if l.base == TermBase::Var(0) && *r == Term::var(0) && l.succs >= 1 {
                let n = l.succs;
                if *f == cycle_formula(n) {
                    return Some(n);
                }
            }
        }
    }
    None
}

struct TermText<'a>(&'a Term);

impl fmt::Display for TermText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.0.succs {
            write!(f, "(S ")?;
        }
        match self.0.base {
            TermBase::Zero => write!(f, "(0)")?,
            TermBase::Var(v) => write!(f, "{}", var_name(v))?,
        }
        for _ in 0..self.0.succs {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        if let Some(n) = as_cycle(self) {
            return write!(f, "(C {n})");
        }
        match self {
            Top => write!(f, "(top)"),
            Bottom => write!(f, "(bottom)"),
            Atom(n) => write!(f, "(atom {n})"),
            Not(a) => write!(f, "(not {a})"),
            And(a, b) => write!(f, "(and {a} {b})"),
            Or(a, b) => write!(f, "(or {a} {b})"),
            Implies(a, b) => write!(f, "(implies {a} {b})"),
            Iff(a, b) => write!(f, "(iff {a} {b})"),
            Eq(s, t) => write!(f, "(= {} {})", TermText(s), TermText(t)),
            Forall(v, a) => write!(f, "(forall {} {a})", var_name(*v)),
            Exists(v, a) => write!(f, "(exists {} {a})", var_name(*v)),
        }
    }
}

/// Display with atom indices above 256 bits shown by size only.
pub struct Brief<'a>(pub &'a Formula);

impl fmt::Display for Brief<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self.0 {
            Atom(n) if n.bits() > 256 => write!(f, "(atom <{}-bit index>)", n.bits()),
            Not(a) => write!(f, "(not {})", Brief(a)),
            And(x, y) => write!(f, "(and {} {})", Brief(x), Brief(y)),
            Or(x, y) => write!(f, "(or {} {})", Brief(x), Brief(y)),
            Implies(x, y) => write!(f, "(implies {} {})", Brief(x), Brief(y)),
            Iff(x, y) => write!(f, "(iff {} {})", Brief(x), Brief(y)),
            other => other.fmt(f),
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body().fmt(f)
    }
}

fn shape(msg: impl Into<String>) -> ParseError {
    ParseError::Shape(msg.into())
}

fn term(e: &Sexp) -> Result<Term, ParseError> {
    match e {
        Sexp::Atom(a) if a == "0" => Ok(Term::zero()),
        Sexp::Atom(a) => var_index(a).map(Term::var).ok_or_else(|| shape(format!("bad term {a:?}"))),
        Sexp::List(items) => match items.as_slice() {
            [Sexp::Atom(z)] if z == "0" => Ok(Term::zero()),
            [Sexp::Atom(s), t] if s == "S" => Ok(term(t)?.s(1)),
            _ => Err(shape("bad term")),
        },
    }
}

fn formula(e: &Sexp) -> Result<Formula, ParseError> {
    let items = match e {
        Sexp::Atom(a) if a == "top" => return Ok(Formula::Top),
        Sexp::Atom(a) if a == "bottom" => return Ok(Formula::Bottom),
        Sexp::Atom(a) => return Err(shape(format!("unexpected atom {a:?}"))),
        Sexp::List(items) => items,
    };
    let head = match items.first() {
        Some(Sexp::Atom(h)) => h.as_str(),
        _ => return Err(shape("missing operator")),
    };
    let args = &items[1..];
    let n_ary = |build: fn(Formula, Formula) -> Formula| -> Result<Formula, ParseError> {
        if args.len() < 2 {
            return Err(shape(format!("{head} needs at least two operands")));
        }
        let fs = args.iter().map(formula).collect::<Result<Vec<_>, _>>()?;
        let mut it = fs.into_iter().rev();
        let last = it.next().expect("two operands");
        Ok(it.fold(last, |acc, f| build(f, acc)))
    };
    let count = |n: usize| -> Result<(), ParseError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(shape(format!("{head} takes {n} operands")))
        }
    };
    let number = |e: &Sexp| -> Result<String, ParseError> {
        match e {
            Sexp::Atom(a) if a.chars().all(|c| c.is_ascii_digit()) => Ok(a.clone()),
            _ => Err(shape(format!("{head}: expected a number"))),
        }
    };
    let var = |e: &Sexp| -> Result<u32, ParseError> {
        match e {
            Sexp::Atom(a) => var_index(a).ok_or_else(|| shape(format!("bad variable {a:?}"))),
            _ => Err(shape("expected a variable")),
        }
    };
    match head {
        "top" => count(0).map(|_| Formula::Top),
        "bottom" => count(0).map(|_| Formula::Bottom),
        "atom" => {
            count(1)?;
            let n = number(&args[0])?;
            Ok(Formula::Atom(n.parse().map_err(|_| shape("bad atom index"))?))
        }
        "not" => {
            count(1)?;
            Ok(formula(&args[0])?.not())
        }
        "and" => n_ary(Formula::and),
        "or" => n_ary(Formula::or),
        "implies" => {
            count(2)?;
            Ok(formula(&args[0])?.implies(formula(&args[1])?))
        }
        "iff" => {
            count(2)?;
            Ok(formula(&args[0])?.iff(formula(&args[1])?))
        }
        "=" => {
            count(2)?;
            Ok(Formula::eq(term(&args[0])?, term(&args[1])?))
        }
        "forall" | "exists" => {
            count(2)?;
            let v = var(&args[0])?;
            let b = formula(&args[1])?;
            Ok(if head == "forall" { Formula::forall(v, b) } else { Formula::exists(v, b) })
        }
        "C" => {
            count(1)?;
            let n: u32 = number(&args[0])?.parse().map_err(|_| shape("cycle size too large"))?;
            if n == 0 {
                return Err(shape("cycle size must be at least 1"));
            }
            Ok(cycle_formula(n))
        }
        other => Err(shape(format!("unknown operator {other:?}"))),
    }
}

fn infer(f: &Formula) -> Signature {
    let (mut atoms, mut succ) = (false, false);
    f.uses(&mut atoms, &mut succ);
    if succ {
        Signature::Succ
    } else {
        Signature::Prop
    }
}

/// Parses a sentence; without `sig` the signature is inferred (prop if undetermined).
pub fn parse_sentence(src: &str, sig: Option<Signature>) -> Result<Sentence, ParseError> {
    let f = formula(&sexp::parse_one(src)?)?;
    let sig = sig.unwrap_or_else(|| infer(&f));
    Ok(Sentence::new(sig, f)?)
}

/// Parses every top-level sentence in `src`, each inferred separately without `sig`.
pub fn parse_sentences(src: &str, sig: Option<Signature>) -> Result<Vec<Sentence>, ParseError> {
    sexp::parse_all(src)?
        .iter()
        .map(|e| {
            let f = formula(e)?;
            let sig = sig.unwrap_or_else(|| infer(&f));
            Ok(Sentence::new(sig, f)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_forms() {
        let s = parse_sentence("(and (atom 0) (not (atom 1)))", None).unwrap();
        assert_eq!(s.sig(), Signature::Prop);
        let s = parse_sentence("(exists x (= (S x) (0)))", None).unwrap();
        assert_eq!(s.sig(), Signature::Succ);
        let s = parse_sentence("(or (C 3) (not (C 3)))", None).unwrap();
        assert_eq!(s.to_string(), "(or (C 3) (not (C 3)))");
    }

    #[test]
    fn cycle_one_and_two() {
        assert_eq!(
            parse_sentence("(C 1)", None).unwrap(),
            parse_sentence("(exists x (= (S x) x))", None).unwrap()
        );
        assert_eq!(
            parse_sentence("(C 2)", None).unwrap(),
            parse_sentence("(exists x (and (= (S (S x)) x) (not (= (S x) x))))", None).unwrap()
        );
    }

    #[test]
    fn nary_and_is_right_nested() {
        let a = parse_sentence("(and (atom 0) (atom 1) (atom 2))", None).unwrap();
        let b = parse_sentence("(and (atom 0) (and (atom 1) (atom 2)))", None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn several_sentences() {
        let v = parse_sentences("(atom 0) ; first\n(not (atom 1))", None).unwrap();
        assert_eq!(v, vec![Sentence::atom(0), Sentence::atom(1).not()]);
        assert_eq!(parse_sentences("", None).unwrap(), vec![]);
        assert!(parse_sentences("(C 1)", Some(Signature::Prop)).is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_sentence("(exists x (= x y))", None).is_err());
        assert!(parse_sentence("(and (atom 0) (= 0 0))", None).is_err());
        assert!(parse_sentence("(C 0)", None).is_err());
        assert!(parse_sentence("(frob)", None).is_err());
    }
}
