//! C.e. sets of sentences and the hat, cup and mono-consequence combinators.
//!
//! A `SentenceSet` has two faces that agree: a machine index (domain
//! convention, over Gödel codes) and a host-side staged enumeration used for
//! searches. Conjunctions built by `hat` and `cup` are right-nested and keep
//! enumeration order, duplicates included.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::{nth_sentence, Sentence, Signature, SyntaxError};
use crate::cesets::{self, union};
use crate::kernel::{nat, pair, run, smn, Asm, Nat};
use crate::natives::Native;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Finite(Vec<Sentence>),
    Index(Nat),
    Hat(Box<SentenceSet>),
    Cup(Box<SentenceSet>, Box<SentenceSet>),
    Union(Vec<SentenceSet>),
    Mono(Box<SequencePresentation>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceSet {
    sig: Signature,
    kind: Kind,
}

/// A sequence of theories `T_0, T_1, ...` in one signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequencePresentation {
    /// Finitely many theories; the rest are empty.
    Finite(Signature, Vec<SentenceSet>),
    /// `T_i` is what the set enumerates first at stage `i`.
    Stages(SentenceSet),
    /// `T_i = {φ | pair(i, ⌜φ⌝) ∈ W_r}`.
    Relation(Signature, Nat),
}

fn push_new(out: &mut Vec<Sentence>, seen: &mut BTreeSet<Sentence>, s: Sentence) {
    if seen.insert(s.clone()) {
        out.push(s);
    }
}

fn check(a: Signature, b: Signature) -> Result<(), SyntaxError> {
    if a == b {
        Ok(())
    } else {
        Err(SyntaxError::SignatureMismatch { expected: a, found: b })
    }
}

impl SentenceSet {
    pub fn finite(sig: Signature, items: Vec<Sentence>) -> Result<SentenceSet, SyntaxError> {
        for s in &items {
            check(sig, s.sig())?;
        }
        Ok(SentenceSet { sig, kind: Kind::Finite(items) })
    }

    pub fn empty(sig: Signature) -> SentenceSet {
        SentenceSet { sig, kind: Kind::Finite(vec![]) }
    }

    /// Members of `W_e` that are sentences of `sig`.
    pub fn from_index(sig: Signature, e: Nat) -> SentenceSet {
        SentenceSet { sig, kind: Kind::Index(e) }
    }

    pub fn union(sets: Vec<SentenceSet>) -> Result<SentenceSet, SyntaxError> {
        let sig = sets.first().map_or(Signature::Prop, |s| s.sig);
        for s in &sets {
            check(sig, s.sig)?;
        }
        Ok(SentenceSet { sig, kind: Kind::Union(sets) })
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    /// The finite approximation at stage `s`, monotone in `s`.
    pub fn stage(&self, s: usize) -> Vec<Sentence> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        match &self.kind {
            Kind::Finite(items) => {
                for it in items.iter().take(s) {
                    push_new(&mut out, &mut seen, it.clone());
                }
            }
            Kind::Index(e) => {
                for k in 0..s {
                    let phi = nth_sentence(self.sig, k);
                    if run(e, &phi.goedel(), s as u64).converged() {
                        out.push(phi);
                    }
                }
            }
            Kind::Hat(u) => {
                let base = u.stage(s);
                // conjunctions of length 1..=s, built right to left
                let mut layer: Vec<Sentence> = base.clone();
                for len in 1..=s {
                    for x in &layer {
                        push_new(&mut out, &mut seen, x.clone());
                    }
                    if len == s || base.is_empty() {
                        break;
                    }
                    let mut next = Vec::new();
                    for a in &base {
                        for rest in &layer {
                            next.push(a.and(rest).expect("same signature"));
                        }
                    }
                    layer = next;
                }
            }
            Kind::Cup(u, v) => {
                let vs = v.stage(s);
                for a in u.stage(s) {
                    for b in &vs {
                        push_new(&mut out, &mut seen, a.and(b).expect("same signature"));
                    }
                }
            }
            Kind::Union(sets) => {
                for set in sets {
                    for x in set.stage(s) {
                        push_new(&mut out, &mut seen, x);
                    }
                }
            }
            Kind::Mono(seq) => {
                for i in 0..s {
                    for x in hat(&seq.theory(i)).stage(s) {
                        push_new(&mut out, &mut seen, x);
                    }
                }
            }
        }
        out
    }

    /// Machine index whose domain is the set of codes of members.
    pub fn index(&self) -> Nat {
        match &self.kind {
            Kind::Finite(items) => {
                let codes: Vec<Nat> = items.iter().map(|s| s.goedel()).collect();
                cesets::CeSet::finite(&codes).e
            }
            Kind::Index(e) => signature_filter(self.sig, e),
            Kind::Hat(u) => hat_index(&u.index()),
            Kind::Cup(u, v) => cup_index(&u.index(), &v.index()),
            Kind::Union(sets) => {
                let mut it = sets.iter().map(|s| s.index());
                match it.next() {
                    None => SentenceSet::empty(self.sig).index(),
                    Some(first) => it.fold(first, |acc, e| union(&acc, &e)),
                }
            }
            Kind::Mono(seq) => match &**seq {
                SequencePresentation::Finite(sig, ts) => SentenceSet::union(ts.iter().map(hat).collect())
                    .map(|u| u.index())
                    .unwrap_or_else(|_| SentenceSet::empty(*sig).index()),
                SequencePresentation::Stages(u) => hat(u).index(),
                SequencePresentation::Relation(_, r) => mono_relation_index(r),
            },
        }
    }

    /// The listed members, when the set is given as a finite list.
    pub fn finite_items(&self) -> Option<&[Sentence]> {
        match &self.kind {
            Kind::Finite(items) => Some(items),
            _ => None,
        }
    }

    /// Is `phi` certified a member within `budget` steps of the index?
    pub fn contains_within(&self, phi: &Sentence, budget: u64) -> bool {
        phi.sig() == self.sig && run(&self.index(), &phi.goedel(), budget).converged()
    }
}

impl SequencePresentation {
    pub fn sig(&self) -> Signature {
        match self {
            SequencePresentation::Finite(sig, _) | SequencePresentation::Relation(sig, _) => *sig,
            SequencePresentation::Stages(u) => u.sig,
        }
    }

    /// Index of `{pair(i, ⌜φ⌝) | φ ∈ T_i}`; stage-split sequences have none.
    pub fn relation_index(&self) -> Option<Nat> {
        match self {
            SequencePresentation::Relation(_, r) => Some(r.clone()),
            SequencePresentation::Finite(_, ts) => {
                let mut a = Asm::new();
                a.unpair_l(1, 0).unpair_r(0, 0);
                for (k, t) in ts.iter().enumerate() {
                    let next = a.label();
                    a.konst(2, k as u64).pair(2, 1, 2).call(2, Native::Eq, 2).decjz(2, next);
                    a.konst(3, t.index()).univ(0, 3, 0).halt();
                    a.place(next);
                }
                a.diverge();
                Some(a.code())
            }
            SequencePresentation::Stages(_) => None,
        }
    }

    /// `T_i` as a set.
    pub fn theory(&self, i: usize) -> SentenceSet {
        match self {
            SequencePresentation::Finite(sig, ts) => {
                ts.get(i).cloned().unwrap_or_else(|| SentenceSet::empty(*sig))
            }
            SequencePresentation::Stages(u) => {
                let prev: BTreeSet<Sentence> = u.stage(i.saturating_sub(1)).into_iter().collect();
                let fresh = if i == 0 {
                    vec![]
                } else {
                    u.stage(i).into_iter().filter(|s| !prev.contains(s)).collect()
                };
                SentenceSet { sig: u.sig, kind: Kind::Finite(fresh) }
            }
            SequencePresentation::Relation(sig, r) => {
                SentenceSet::from_index(*sig, smn(section_template(), &pair(r, &nat(i as u64))))
            }
        }
    }
}

fn signature_filter(sig: Signature, e: &Nat) -> Nat {
    let mut a = Asm::new();
    let no = a.label();
    a.call(1, Native::SigOf, 0).konst(2, 1 + sig.tag()).pair(1, 1, 2).call(1, Native::Eq, 1);
    a.decjz(1, no).konst(3, e.clone()).univ(0, 3, 0).halt();
    a.place(no);
    a.diverge();
    a.code()
}

// Expects `u` in r1 and `n` in r0. At stages s = 1, 2, 4, ... walks the
// right spine `a1 ∧ (a2 ∧ ...)` of `n`: halts when the current tail is in U
// within `s` steps, descends while the left conjunct is.
fn hat_core(a: &mut Asm) {
    let stage = a.label();
    let walk = a.label();
    let not_here = a.label();
    let next_stage = a.label();
    a.konst(2, 1u32);
    a.place(stage);
    a.copy(3, 0);
    a.place(walk);
    a.runb(4, 1, 3, 2).decjz(4, not_here).halt();
    a.place(not_here);
    a.call(4, Native::AndParts, 3).decjz(4, next_stage);
    a.unpair_l(5, 4).unpair_r(3, 4);
    a.runb(6, 1, 5, 2).decjz(6, next_stage).jmp(walk);
    a.place(next_stage);
    a.pair(7, 2, 2).call(2, Native::Add, 7).jmp(stage);
}

fn hat_index(u: &Nat) -> Nat {
    let mut a = Asm::new();
    a.konst(1, u.clone());
    hat_core(&mut a);
    a.code()
}

/// Template reading `pair(u, n)`, for hats built at run time.
pub fn hat_template() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        let mut a = Asm::new();
        a.unpair_l(1, 0).unpair_r(0, 0);
        hat_core(&mut a);
        a.code()
    })
}

// Expects `n` in r0 and the indices of U, V in r2, r3.
fn cup_core(a: &mut Asm) {
    let no = a.label();
    // n = a ∧ b with a ∈ U and b ∈ V
    a.call(4, Native::AndParts, 0).decjz(4, no);
    a.unpair_l(5, 4).unpair_r(6, 4).univ(7, 2, 5).univ(7, 3, 6).halt();
    a.place(no);
    a.diverge();
}

fn cup_index(u: &Nat, v: &Nat) -> Nat {
    let mut a = Asm::new();
    a.konst(2, u.clone()).konst(3, v.clone());
    cup_core(&mut a);
    a.code()
}

/// Template reading `pair(pair(u, v), n)`, for cups built at run time.
pub fn cup_template() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        let mut a = Asm::new();
        a.unpair_l(1, 0).unpair_r(0, 0).unpair_l(2, 1).unpair_r(3, 1);
        cup_core(&mut a);
        a.code()
    })
}

/// Template reading `pair(pair(r, i), m)`: the `i`-th section of the relation `W_r`.
pub fn section_template() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        let mut a = Asm::new();
        // input pair(pair(r, i), m): pair(i, m) ∈ W_r
        a.unpair_l(1, 0).unpair_r(0, 0).unpair_l(2, 1).unpair_r(3, 1);
        a.pair(0, 3, 0).univ(0, 2, 0).halt();
        a.code()
    })
}

// n ∈ (T_i)^ for some i, searched over i < s at stages s = 1, 2, 4, ...
fn mono_relation_index(r: &Nat) -> Nat {
    let mut a = Asm::new();
    let stage = a.label();
    let each = a.label();
    let miss = a.label();
    let next_stage = a.label();
    a.konst(1, r.clone()).konst(2, 1u32);
    a.konst(10, section_template().clone()).konst(11, hat_template().clone());
    a.place(stage);
    a.konst(3, 0u32).copy(4, 2);
    a.place(each);
    a.decjz(4, next_stage);
    a.pair(5, 1, 3).smn(5, 10, 5).smn(6, 11, 5);
    a.runb(8, 6, 0, 2).decjz(8, miss).halt();
    a.place(miss);
    a.inc(3).jmp(each);
    a.place(next_stage);
    a.pair(9, 2, 2).call(2, Native::Add, 9).jmp(stage);
    a.code()
}

pub fn hat(u: &SentenceSet) -> SentenceSet {
    SentenceSet { sig: u.sig, kind: Kind::Hat(Box::new(u.clone())) }
}

/// `U ⋓ V = {φ ∧ ψ | φ ∈ U, ψ ∈ V}`.
pub fn cup(u: &SentenceSet, v: &SentenceSet) -> Result<SentenceSet, SyntaxError> {
    check(u.sig, v.sig)?;
    Ok(SentenceSet { sig: u.sig, kind: Kind::Cup(Box::new(u.clone()), Box::new(v.clone())) })
}

pub fn seq_to_mono(t: &SequencePresentation) -> SentenceSet {
    SentenceSet { sig: t.sig(), kind: Kind::Mono(Box::new(t.clone())) }
}

pub fn mono_to_seq(u: &SentenceSet) -> SequencePresentation {
    SequencePresentation::Stages(u.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoAnswer {
    /// Found a single member entailing the goal.
    Entailed(Sentence),
    Unknown,
}

impl MonoAnswer {
    pub fn is_entailed(&self) -> bool {
        matches!(self, MonoAnswer::Entailed(_))
    }
}

/// Searches stages `1..=stages` for a member `ψ` with `ψ ⊢ φ` per `oracle`.
pub fn mono_consequence(
    u: &SentenceSet,
    phi: &Sentence,
    stages: usize,
    oracle: &dyn Fn(&Sentence, &Sentence) -> bool,
) -> MonoAnswer {
    let mut tried = BTreeSet::new();
    for s in 1..=stages {
        for psi in u.stage(s) {
            if tried.insert(psi.clone()) && oracle(&psi, phi) {
                return MonoAnswer::Entailed(psi);
            }
        }
    }
    MonoAnswer::Unknown
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupReport {
    pub probed: usize,
    /// Members of `U ⋓ V` not mono-entailed by `V` within the stage bound.
    pub counterexamples: Vec<Sentence>,
}

impl CupReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `U ⋐ V` on the members of `U ⋓ V` up to `stages`.
pub fn cup_extends(
    u: &SentenceSet,
    v: &SentenceSet,
    stages: usize,
    oracle: &dyn Fn(&Sentence, &Sentence) -> bool,
) -> Result<CupReport, SyntaxError> {
    let probes = cup(u, v)?.stage(stages);
    let counterexamples = probes
        .iter()
        .filter(|m| !mono_consequence(v, m, stages, oracle).is_entailed())
        .cloned()
        .collect();
    Ok(CupReport { probed: probes.len(), counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::prop_consequence;

    fn p(n: u64) -> Sentence {
        Sentence::atom(n)
    }

    fn fin(items: Vec<Sentence>) -> SentenceSet {
        SentenceSet::finite(Signature::Prop, items).unwrap()
    }

    fn entails(a: &Sentence, b: &Sentence) -> bool {
        prop_consequence(std::slice::from_ref(a), b).unwrap()
    }

    const B: u64 = 200_000;

    #[test]
    fn hat_contains_conjunctions() {
        let u = fin(vec![p(0), p(1)]);
        let h = hat(&u);
        let st = h.stage(3);
        let p01 = p(0).and(&p(1)).unwrap();
        let p10 = p(1).and(&p(0)).unwrap();
        let p001 = p(0).and(&p01).unwrap();
        for s in [&p(0), &p(1), &p01, &p10, &p001] {
            assert!(st.contains(s), "{s}");
            assert!(h.contains_within(s, B), "index misses {s}");
        }
        assert!(!h.contains_within(&p(2), B));
        assert!(!h.contains_within(&p(0).and(&p(2)).unwrap(), B));
    }

    #[test]
    fn hat_of_empty_is_empty() {
        let h = hat(&SentenceSet::empty(Signature::Prop));
        assert!(h.stage(5).is_empty());
        assert!(!h.contains_within(&p(0), 10_000));
    }

    #[test]
    fn cup_enumerates_exact_pairs() {
        let u = fin(vec![p(0), p(1)]);
        let v = fin(vec![p(2)]);
        let c = cup(&u, &v).unwrap();
        let got: BTreeSet<_> = c.stage(100).into_iter().collect();
        let want: BTreeSet<_> =
            [p(0).and(&p(2)).unwrap(), p(1).and(&p(2)).unwrap()].into_iter().collect();
        assert_eq!(got, want);
        assert!(c.contains_within(&p(1).and(&p(2)).unwrap(), B));
        assert!(!c.contains_within(&p(2).and(&p(1)).unwrap(), B));
    }

    #[test]
    fn cup_signature_mismatch() {
        let u = fin(vec![p(0)]);
        let v = SentenceSet::empty(Signature::Succ);
        assert!(cup(&u, &v).is_err());
    }

    #[test]
    fn mono_consequence_cases() {
        let u = fin(vec![p(0)]);
        assert!(mono_consequence(&u, &p(0), 1, &entails).is_entailed());
        let empty = SentenceSet::empty(Signature::Prop);
        assert_eq!(mono_consequence(&empty, &p(0), 10, &entails), MonoAnswer::Unknown);
    }

    #[test]
    fn seq_to_mono_fixture() {
        let t = SequencePresentation::Finite(Signature::Prop, vec![fin(vec![p(0)]), fin(vec![p(1)])]);
        let m = seq_to_mono(&t);
        let p00 = p(0).and(&p(0)).unwrap();
        let p01 = p(0).and(&p(1)).unwrap();
        assert!(mono_consequence(&m, &p00, 3, &entails).is_entailed());
        assert!(!mono_consequence(&m, &p01, 3, &entails).is_entailed());
        assert!(m.contains_within(&p00, B));
        assert!(!m.contains_within(&p01, B));
    }

    #[test]
    fn relation_presentation_index() {
        // pair(i, n) ∈ W_r iff n is the code of p_i
        let mut a = Asm::new();
        let no = a.label();
        a.unpair_l(1, 0).unpair_r(2, 0).call(1, Native::Atom, 1).pair(1, 1, 2).call(1, Native::Eq, 1);
        a.decjz(1, no).halt();
        a.place(no);
        a.diverge();
        let r = a.code();
        let m = seq_to_mono(&SequencePresentation::Relation(Signature::Prop, r));
        assert!(m.contains_within(&p(2).and(&p(2)).unwrap(), 2_000_000));
        assert!(!m.contains_within(&p(1).and(&p(2)).unwrap(), 200_000));
    }

    #[test]
    fn mono_to_seq_stages() {
        let u = fin(vec![p(0), p(1), p(2)]);
        let t = mono_to_seq(&u);
        assert!(t.theory(0).stage(10).is_empty());
        assert_eq!(t.theory(2).stage(10), vec![p(1)]);
        assert!(t.theory(7).stage(10).is_empty());
    }

    #[test]
    fn cup_extends_cases() {
        let u = fin(vec![p(0)]);
        assert!(cup_extends(&u, &u, 3, &entails).unwrap().holds());
        let v = fin(vec![p(1)]);
        assert!(!cup_extends(&u, &v, 3, &entails).unwrap().holds());
        let e = SentenceSet::empty(Signature::Prop);
        assert!(cup_extends(&e, &v, 3, &entails).unwrap().holds());
    }
}
