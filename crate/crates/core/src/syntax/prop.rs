//! Truth-table consequence for the propositional signature.

use std::collections::BTreeMap;

use super::{Formula, Sentence, Signature, SyntaxError};
use crate::kernel::code::Nat;

/// Largest number of distinct atoms a truth table is built over.
pub const MAX_ATOMS: usize = 24;

/// A formula with atoms renumbered to bit positions.
pub(crate) enum Compiled {
    Const(bool),
    Var(usize),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    pub(crate) fn eval(&self, v: u64) -> bool {
        use Compiled::*;
        match self {
            Const(b) => *b,
            Var(i) => v >> i & 1 == 1,
            Not(a) => !a.eval(v),
            And(a, b) => a.eval(v) && b.eval(v),
            Or(a, b) => a.eval(v) || b.eval(v),
            Implies(a, b) => !a.eval(v) || b.eval(v),
            Iff(a, b) => a.eval(v) == b.eval(v),
        }
    }
}

pub(crate) fn compile(f: &Formula, index: &BTreeMap<Nat, usize>) -> Compiled {
    use Formula::*;
    let c = |g: &Formula| Box::new(compile(g, index));
    match f {
        Top => Compiled::Const(true),
        Bottom => Compiled::Const(false),
        Atom(n) => Compiled::Var(index[n]),
        Not(a) => Compiled::Not(c(a)),
        And(a, b) => Compiled::And(c(a), c(b)),
        Or(a, b) => Compiled::Or(c(a), c(b)),
        Implies(a, b) => Compiled::Implies(c(a), c(b)),
        Iff(a, b) => Compiled::Iff(c(a), c(b)),
        Eq(..) | Forall(..) | Exists(..) => unreachable!("prop sentences have no equations"),
    }
}

fn check_prop(s: &Sentence) -> Result<(), SyntaxError> {
    if s.sig() == Signature::Prop {
        Ok(())
    } else {
        Err(SyntaxError::SignatureMismatch { expected: Signature::Prop, found: s.sig() })
    }
}

/// Compiles all sentences over a shared atom numbering.
pub(crate) fn compile_all(items: &[&Sentence]) -> Result<(Vec<Compiled>, usize), SyntaxError> {
    let mut index = BTreeMap::new();
    for s in items {
        check_prop(s)?;
        for a in s.atoms() {
            let k = index.len();
            index.entry(a).or_insert(k);
        }
    }
    if index.len() > MAX_ATOMS {
        return Err(SyntaxError::Invalid(format!("more than {MAX_ATOMS} atoms for a truth table")));
    }
    let compiled = items.iter().map(|s| compile(s.body(), &index)).collect();
    Ok((compiled, index.len()))
}

/// Is there a valuation making every item true?
pub fn prop_satisfiable(items: &[Sentence]) -> Result<bool, SyntaxError> {
    let refs: Vec<&Sentence> = items.iter().collect();
    let (cs, n) = compile_all(&refs)?;
    Ok((0..1u64 << n).any(|v| cs.iter().all(|c| c.eval(v))))
}

/// `axioms ⊢ phi` in classical propositional logic.
pub fn prop_consequence(axioms: &[Sentence], phi: &Sentence) -> Result<bool, SyntaxError> {
    let mut refs: Vec<&Sentence> = axioms.iter().collect();
    refs.push(phi);
    let (cs, n) = compile_all(&refs)?;
    let (goal, prem) = cs.split_last().expect("phi present");
    Ok((0..1u64 << n).all(|v| !prem.iter().all(|c| c.eval(v)) || goal.eval(v)))
}
