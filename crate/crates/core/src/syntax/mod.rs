//! Sentences over the two fixed signatures, their Gödel codes and text form.
//!
//! `Prop` has atoms `p0, p1, ...`; `Succ` has `0`, `S` and equality. A
//! sentence code is the sequence code of `[signature, prefix tokens...]`, so
//! the signature is part of the code and every code has a unique reading.

mod enumerate;
mod prop;
mod sets;
mod text;

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::kernel::code::{decode_seq, encode_seq, nat, Nat};

pub use enumerate::nth_sentence;
pub use prop::{prop_consequence, prop_satisfiable, MAX_ATOMS};
pub use sets::{
    cup, cup_extends, cup_template, hat, hat_template, mono_consequence, mono_to_seq, section_template,
    seq_to_mono, CupReport, MonoAnswer, SentenceSet, SequencePresentation,
};
pub use text::{cycle_formula, Brief, parse_sentence, parse_sentences, var_name, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signature {
    Prop,
    Succ,
}

impl Signature {
    pub fn tag(self) -> u64 {
        match self {
            Signature::Prop => 0,
            Signature::Succ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Signature::Prop => "prop",
            Signature::Succ => "succ",
        }
    }
}

/// `S^succs(base)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub base: TermBase,
    pub succs: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermBase {
    Zero,
    Var(u32),
}

impl Term {
    pub fn zero() -> Term {
        Term { base: TermBase::Zero, succs: 0 }
    }

    pub fn var(v: u32) -> Term {
        Term { base: TermBase::Var(v), succs: 0 }
    }

    pub fn s(mut self, n: u32) -> Term {
        self.succs += n;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bottom,
    Atom(Nat),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Eq(Term, Term),
    Forall(u32, Box<Formula>),
    Exists(u32, Box<Formula>),
}

impl Formula {
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, b: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(b))
    }

    pub fn or(self, b: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(b))
    }

    pub fn implies(self, b: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(b))
    }

    pub fn iff(self, b: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(b))
    }

    pub fn atom(n: u64) -> Formula {
        Formula::Atom(nat(n))
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn forall(v: u32, b: Formula) -> Formula {
        Formula::Forall(v, Box::new(b))
    }

    pub fn exists(v: u32, b: Formula) -> Formula {
        Formula::Exists(v, Box::new(b))
    }

    fn free_vars_into(&self, bound: &mut Vec<u32>, out: &mut BTreeSet<u32>) {
        use Formula::*;
        match self {
            Top | Bottom | Atom(_) => {}
            Not(a) => a.free_vars_into(bound, out),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Eq(s, t) => {
                for t in [s, t] {
                    if let TermBase::Var(v) = t.base {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Forall(v, a) | Exists(v, a) => {
                bound.push(*v);
                a.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    fn uses(&self, atoms: &mut bool, succ: &mut bool) {
        use Formula::*;
        match self {
            Top | Bottom => {}
            Atom(_) => *atoms = true,
            Not(a) => a.uses(atoms, succ),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.uses(atoms, succ);
                b.uses(atoms, succ);
            }
            Eq(..) => *succ = true,
            Forall(_, a) | Exists(_, a) => {
                *succ = true;
                a.uses(atoms, succ);
            }
        }
    }

    /// Maximal nesting of quantifiers.
    pub fn quantifier_rank(&self) -> u32 {
        use Formula::*;
        match self {
            Top | Bottom | Atom(_) | Eq(..) => 0,
            Not(a) => a.quantifier_rank(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.quantifier_rank().max(b.quantifier_rank())
            }
            Forall(_, a) | Exists(_, a) => 1 + a.quantifier_rank(),
        }
    }

    /// Largest number of `S` applications in a single term.
    pub fn succ_depth(&self) -> u32 {
        use Formula::*;
        match self {
            Top | Bottom | Atom(_) => 0,
            Eq(s, t) => s.succs.max(t.succs),
            Not(a) | Forall(_, a) | Exists(_, a) => a.succ_depth(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.succ_depth().max(b.succ_depth()),
        }
    }

    /// Connective nesting depth; atoms, constants and equations have depth 0.
    pub fn depth(&self) -> u32 {
        use Formula::*;
        match self {
            Top | Bottom | Atom(_) | Eq(..) => 0,
            Not(a) | Forall(_, a) | Exists(_, a) => 1 + a.depth(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn atoms_into(&self, out: &mut BTreeSet<Nat>) {
        use Formula::*;
        match self {
            Atom(n) => {
                out.insert(n.clone());
            }
            Top | Bottom | Eq(..) => {}
            Not(a) | Forall(_, a) | Exists(_, a) => a.atoms_into(out),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.atoms_into(out);
                b.atoms_into(out);
            }
        }
    }

    fn tokens(&self, out: &mut Vec<Nat>) {
        use Formula::*;
        let mut push = |v: u64| out.push(nat(v));
        match self {
            Top => push(0),
            Bottom => push(1),
            Atom(n) => {
                push(2);
                out.push(n.clone());
            }
            Not(a) => {
                push(3);
                a.tokens(out);
            }
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                push(match self {
                    And(..) => 4,
                    Or(..) => 5,
                    Implies(..) => 6,
                    _ => 7,
                });
                a.tokens(out);
                b.tokens(out);
            }
            Eq(s, t) => {
                push(8);
                for t in [s, t] {
                    out.push(nat(match t.base {
                        TermBase::Zero => 0,
                        TermBase::Var(v) => v as u64 + 1,
                    }));
                    out.push(nat(t.succs as u64));
                }
            }
            Forall(v, a) | Exists(v, a) => {
                push(if matches!(self, Forall(..)) { 9 } else { 10 });
                push(*v as u64);
                a.tokens(out);
            }
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("signature mismatch: expected {expected:?}, found {found:?}")]
    SignatureMismatch { expected: Signature, found: Signature },
    #[error("{0}")]
    Invalid(String),
}

/// A closed formula tagged with its signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sentence {
    sig: Signature,
    body: Formula,
}

impl Sentence {
    pub fn new(sig: Signature, body: Formula) -> Result<Sentence, SyntaxError> {
        let (mut atoms, mut succ) = (false, false);
        body.uses(&mut atoms, &mut succ);
        match sig {
            Signature::Prop if succ => {
                return Err(SyntaxError::Invalid("equations or quantifiers in a prop sentence".into()))
            }
            Signature::Succ if atoms => {
                return Err(SyntaxError::Invalid("propositional atom in a succ sentence".into()))
            }
            _ => {}
        }
        if let Some(v) = body.free_vars().into_iter().next() {
            return Err(SyntaxError::Invalid(format!("free variable {}", text::var_name(v))));
        }
        Ok(Sentence { sig, body })
    }

    /// Panics on ill-formed input; for building fixtures in code.
    pub fn of(sig: Signature, body: Formula) -> Sentence {
        Sentence::new(sig, body).expect("well-formed sentence")
    }

    pub fn prop(body: Formula) -> Sentence {
        Sentence::of(Signature::Prop, body)
    }

    pub fn succ(body: Formula) -> Sentence {
        Sentence::of(Signature::Succ, body)
    }

    pub fn atom(n: u64) -> Sentence {
        Sentence::prop(Formula::atom(n))
    }

    pub fn atom_big(n: Nat) -> Sentence {
        Sentence::prop(Formula::Atom(n))
    }

    pub fn top(sig: Signature) -> Sentence {
        Sentence { sig, body: Formula::Top }
    }

    pub fn bottom(sig: Signature) -> Sentence {
        Sentence { sig, body: Formula::Bottom }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    /// Text form with huge atom indices shown by size only.
    pub fn brief(&self) -> String {
        text::Brief(self.body()).to_string()
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    pub fn into_body(self) -> Formula {
        self.body
    }

    fn same_sig(&self, other: &Sentence) -> Result<(), SyntaxError> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(SyntaxError::SignatureMismatch { expected: self.sig, found: other.sig })
        }
    }

    pub fn not(&self) -> Sentence {
        Sentence { sig: self.sig, body: self.body.clone().not() }
    }

    pub fn and(&self, b: &Sentence) -> Result<Sentence, SyntaxError> {
        self.same_sig(b)?;
        Ok(Sentence { sig: self.sig, body: self.body.clone().and(b.body.clone()) })
    }

    pub fn or(&self, b: &Sentence) -> Result<Sentence, SyntaxError> {
        self.same_sig(b)?;
        Ok(Sentence { sig: self.sig, body: self.body.clone().or(b.body.clone()) })
    }

    pub fn implies(&self, b: &Sentence) -> Result<Sentence, SyntaxError> {
        self.same_sig(b)?;
        Ok(Sentence { sig: self.sig, body: self.body.clone().implies(b.body.clone()) })
    }

    pub fn iff(&self, b: &Sentence) -> Result<Sentence, SyntaxError> {
        self.same_sig(b)?;
        Ok(Sentence { sig: self.sig, body: self.body.clone().iff(b.body.clone()) })
    }

    /// Right-nested conjunction `a0 ∧ (a1 ∧ (... ∧ an))`; `None` for an empty list.
    pub fn conj(items: &[Sentence]) -> Option<Result<Sentence, SyntaxError>> {
        let (last, init) = items.split_last()?;
        Some(init.iter().rev().try_fold(last.clone(), |acc, s| s.and(&acc)))
    }

    /// Conjunction of all items, `⊤` when empty.
    pub fn conj_or_top(sig: Signature, items: &[Sentence]) -> Result<Sentence, SyntaxError> {
        Sentence::conj(items).unwrap_or_else(|| Ok(Sentence::top(sig)))
    }

    /// `(l, r)` when this is a conjunction.
    pub fn conjuncts(&self) -> Option<(Sentence, Sentence)> {
        match &self.body {
            Formula::And(a, b) => Some((
                Sentence { sig: self.sig, body: (**a).clone() },
                Sentence { sig: self.sig, body: (**b).clone() },
            )),
            _ => None,
        }
    }

    pub fn negated(&self) -> Option<Sentence> {
        match &self.body {
            Formula::Not(a) => Some(Sentence { sig: self.sig, body: (**a).clone() }),
            _ => None,
        }
    }

    pub fn atoms(&self) -> BTreeSet<Nat> {
        let mut out = BTreeSet::new();
        self.body.atoms_into(&mut out);
        out
    }

    pub fn goedel(&self) -> Nat {
        goedel(self)
    }
}

pub fn goedel(s: &Sentence) -> Nat {
    let mut toks = vec![nat(s.sig.tag())];
    s.body.tokens(&mut toks);
    encode_seq(&toks)
}

struct TokenReader {
    toks: Vec<Nat>,
    pos: usize,
}

impl TokenReader {
    fn next(&mut self) -> Option<&Nat> {
        let t = self.toks.get(self.pos)?;
        self.pos += 1;
        Some(t)
    }

    fn small(&mut self) -> Option<u32> {
        self.next()?.to_u32()
    }

    fn term(&mut self) -> Option<Term> {
        let b = self.small()?;
        let succs = self.small()?;
        let base = if b == 0 { TermBase::Zero } else { TermBase::Var(b - 1) };
        Some(Term { base, succs })
    }

    fn formula(&mut self, depth: usize) -> Option<Formula> {
        // codes are finite so this only guards pathological host recursion
        if depth > 10_000 {
            return None;
        }
        let d = depth + 1;
        Some(match self.small()? {
            0 => Formula::Top,
            1 => Formula::Bottom,
            2 => Formula::Atom(self.next()?.clone()),
            3 => self.formula(d)?.not(),
            k @ 4..=7 => {
                let a = self.formula(d)?;
                let b = self.formula(d)?;
                match k {
                    4 => a.and(b),
                    5 => a.or(b),
                    6 => a.implies(b),
                    _ => a.iff(b),
                }
            }
            8 => Formula::Eq(self.term()?, self.term()?),
            9 => Formula::forall(self.small()?, self.formula(d)?),
            10 => Formula::exists(self.small()?, self.formula(d)?),
            _ => return None,
        })
    }
}

/// `None` (malformed) for codes outside the image of `goedel`.
pub fn ungoedel(n: &Nat) -> Option<Sentence> {
    let toks = decode_seq(n)?;
    let mut r = TokenReader { toks, pos: 0 };
    let sig = match r.small()? {
        0 => Signature::Prop,
        1 => Signature::Succ,
        _ => return None,
    };
    let body = r.formula(0)?;
    if r.pos != r.toks.len() {
        return None;
    }
    Sentence::new(sig, body).ok()
}
