//! The fixed table of total functions reachable through `CALL`.
//!
//! Each native maps one natural to one natural, multiple arguments are
//! Cantor-paired. Sentence arguments are Gödel codes; a malformed code, or a
//! signature clash, yields 0, which is never a sentence code.

use num_traits::{One, Zero};

use crate::kernel::code::{nat, pair, to_u64, unpair, Nat};
use crate::syntax::{nth_sentence, ungoedel, Sentence, Signature};
use crate::theories::{self, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Native {
    /// `pair(a, b) ↦ [a = b]`
    Eq,
    /// `pair(a, b) ↦ a + b`
    Add,
    /// `φ ↦ ¬φ`
    Neg,
    /// `pair(φ, ψ) ↦ φ ∧ ψ`
    And,
    Or,
    Implies,
    Iff,
    /// `φ ↦ 1 + signature tag`, or 0 when malformed
    SigOf,
    /// `φ ∧ ψ ↦ 1 + pair(φ, ψ)`, otherwise 0
    AndParts,
    /// `¬φ ↦ 1 + φ`, otherwise 0
    NegBody,
    /// `pair(τ, φ) ↦` 0 provable, 1 refutable, 2 independent, 3 inconsistent `τ`,
    /// 4 malformed or outside the decision procedure, over the base theory of
    /// the signature extended by the single axiom `τ`
    Decide,
    /// `φ ↦` the base theory's ef-witness for `φ`
    EfWitness,
    /// `n ↦ p_n`
    Atom,
    /// `p_n ↦ 1 + n`, otherwise 0
    AtomIndex,
    /// `pair(tag, k) ↦` the `k`-th sentence of the signature with that tag, 0 for an unknown tag
    Nth,
}

const ALL: [Native; 15] = [
    Native::Eq,
    Native::Add,
    Native::Neg,
    Native::And,
    Native::Or,
    Native::Implies,
    Native::Iff,
    Native::SigOf,
    Native::AndParts,
    Native::NegBody,
    Native::Decide,
    Native::EfWitness,
    Native::Atom,
    Native::AtomIndex,
    Native::Nth,
];

impl Native {
    pub fn id(self) -> u64 {
        ALL.iter().position(|&n| n == self).expect("listed") as u64
    }

    pub fn from_id(id: u64) -> Option<Native> {
        ALL.get(usize::try_from(id).ok()?).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Native::Eq => "eq",
            Native::Add => "add",
            Native::Neg => "neg",
            Native::And => "and",
            Native::Or => "or",
            Native::Implies => "implies",
            Native::Iff => "iff",
            Native::SigOf => "sig",
            Native::AndParts => "and_parts",
            Native::NegBody => "neg_body",
            Native::Decide => "decide",
            Native::EfWitness => "ef_witness",
            Native::Atom => "atom",
            Native::AtomIndex => "atom_index",
            Native::Nth => "nth",
        }
    }

    pub fn from_name(s: &str) -> Option<Native> {
        let s = s.to_ascii_lowercase();
        ALL.iter().copied().find(|n| n.name() == s)
    }
}

fn bool_nat(b: bool) -> Nat {
    if b {
        Nat::one()
    } else {
        Nat::zero()
    }
}

fn binary(x: &Nat, f: fn(&Sentence, &Sentence) -> Result<Sentence, crate::syntax::SyntaxError>) -> Nat {
    let (a, b) = unpair(x);
    match (ungoedel(&a), ungoedel(&b)) {
        (Some(a), Some(b)) => f(&a, &b).map(|s| s.goedel()).unwrap_or_default(),
        _ => Nat::zero(),
    }
}

pub fn verdict_code(v: &Result<Verdict, theories::DecideError>) -> u64 {
    match v {
        Ok(Verdict::Provable) => 0,
        Ok(Verdict::Refutable) => 1,
        Ok(Verdict::Independent) => 2,
        Ok(Verdict::Inconsistent) => 3,
        Err(_) => 4,
    }
}

pub fn call(n: Native, x: &Nat) -> Nat {
    match n {
        Native::Eq => {
            let (a, b) = unpair(x);
            bool_nat(a == b)
        }
        Native::Add => {
            let (a, b) = unpair(x);
            a + b
        }
        Native::Neg => ungoedel(x).map(|s| s.not().goedel()).unwrap_or_default(),
        Native::And => binary(x, Sentence::and),
        Native::Or => binary(x, Sentence::or),
        Native::Implies => binary(x, Sentence::implies),
        Native::Iff => binary(x, Sentence::iff),
        Native::SigOf => ungoedel(x).map(|s| nat(1 + s.sig().tag())).unwrap_or_default(),
        Native::AndParts => match ungoedel(x).and_then(|s| s.conjuncts()) {
            Some((a, b)) => pair(&a.goedel(), &b.goedel()) + 1u32,
            None => Nat::zero(),
        },
        Native::NegBody => match ungoedel(x).and_then(|s| s.negated()) {
            Some(a) => a.goedel() + 1u32,
            None => Nat::zero(),
        },
        Native::Decide => {
            let (t, phi) = unpair(x);
            let v = match (ungoedel(&t), ungoedel(&phi)) {
                (Some(t), Some(phi)) => theories::decide(&[t], &phi),
                _ => Err(theories::DecideError::Malformed),
            };
            nat(verdict_code(&v))
        }
        Native::EfWitness => ungoedel(x)
            .and_then(|s| theories::ef_witness(&s).ok())
            .map(|w| w.goedel())
            .unwrap_or_default(),
        Native::Atom => Sentence::atom_big(x.clone()).goedel(),
        Native::AtomIndex => match ungoedel(x).map(|s| s.into_body()) {
            Some(crate::syntax::Formula::Atom(n)) => n + 1u32,
            _ => Nat::zero(),
        },
        Native::Nth => {
            let (tag, k) = unpair(x);
            let sig = match to_u64(&tag) {
                Some(0) => Signature::Prop,
                Some(1) => Signature::Succ,
                _ => return Nat::zero(),
            };
            match to_u64(&k).and_then(|k| usize::try_from(k).ok()) {
                Some(k) => nth_sentence(sig, k).goedel(),
                None => Nat::zero(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for n in ALL {
            assert_eq!(Native::from_id(n.id()), Some(n));
            assert_eq!(Native::from_name(n.name()), Some(n));
        }
        assert_eq!(Native::from_id(ALL.len() as u64), None);
    }

    #[test]
    fn sentence_natives() {
        let p0 = Sentence::atom(0);
        let p1 = Sentence::atom(1);
        assert_eq!(call(Native::Neg, &p0.goedel()), p0.not().goedel());
        let both = call(Native::And, &pair(&p0.goedel(), &p1.goedel()));
        assert_eq!(both, p0.and(&p1).unwrap().goedel());
        assert_eq!(call(Native::AndParts, &both), pair(&p0.goedel(), &p1.goedel()) + 1u32);
        assert_eq!(call(Native::AndParts, &p0.goedel()), nat(0));
        assert_eq!(call(Native::Atom, &nat(1)), p1.goedel());
        assert_eq!(call(Native::AtomIndex, &p1.goedel()), nat(2));
        assert_eq!(call(Native::Neg, &nat(0)), nat(0));
        assert_eq!(call(Native::Nth, &pair(&nat(0), &nat(0))), Sentence::top(Signature::Prop).goedel());
        assert_eq!(call(Native::Nth, &pair(&nat(7), &nat(0))), nat(0));
    }

    #[test]
    fn decide_native() {
        let p0 = Sentence::atom(0);
        let code = |t: &Sentence, f: &Sentence| call(Native::Decide, &pair(&t.goedel(), &f.goedel()));
        assert_eq!(code(&p0, &p0), nat(0));
        assert_eq!(code(&p0, &p0.not()), nat(1));
        assert_eq!(code(&p0, &Sentence::atom(1)), nat(2));
        assert_eq!(code(&p0.and(&p0.not()).unwrap(), &p0), nat(3));
    }
}
