//! Machine indices for theorem and refutation sets of `τ + W_e` over a base.

use crate::cesets::{union, union_template};
use crate::kernel::{Asm, Label, Nat, Reg};
use crate::natives::Native;
use crate::syntax::{Sentence, Signature};
use crate::theories::TheoryPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// `{φ | T ⊢ φ}`
    Provable,
    /// `{φ | T ⊢ ¬φ}`
    Refutable,
}

/// Jumps to `yes` when the `Decide` code in `v` counts for `pol`, else to `no`.
/// An inconsistent theory counts for both.
pub(crate) fn accept(a: &mut Asm, v: Reg, pol: Polarity, yes: Label, no: Label) {
    match pol {
        Polarity::Provable => a.decjz(v, yes).decjz(v, no).decjz(v, no).decjz(v, yes).jmp(no),
        Polarity::Refutable => a.decjz(v, no).decjz(v, yes).decjz(v, no).decjz(v, yes).jmp(no),
    };
}

// Expects `φ` in r0, `τ` in r1 and, with `extra`, an index in r2. At stages
// s = 1, 2, 4, ... conjoins `τ` with the members of `W_extra` among the first
// `s` sentences, each certified within `s` steps, and asks the base.
fn core(a: &mut Asm, sig: Signature, pol: Polarity, extra: bool) {
    let yes = a.label();
    let no = a.label();
    if !extra {
        a.pair(10, 1, 0).call(10, Native::Decide, 10);
        accept(a, 10, pol, yes, no);
        a.place(no);
        a.diverge();
        a.place(yes);
        a.halt();
        return;
    }
    let stage = a.label();
    let each = a.label();
    let body = a.label();
    let skip = a.label();
    let check = a.label();
    a.konst(3, sig.tag()).konst(4, 1u32);
    a.place(stage);
    a.copy(5, 1).konst(6, 0u32);
    a.place(each);
    a.pair(7, 6, 4).call(7, Native::Eq, 7).decjz(7, body).jmp(check);
    a.place(body);
    a.pair(8, 3, 6).call(8, Native::Nth, 8);
    a.runb(9, 2, 8, 4).decjz(9, skip);
    a.pair(10, 5, 8).call(5, Native::And, 10);
    a.place(skip);
    a.inc(6).jmp(each);
    a.place(check);
    a.pair(10, 5, 0).call(10, Native::Decide, 10);
    accept(a, 10, pol, yes, no);
    a.place(no);
    a.pair(11, 4, 4).call(4, Native::Add, 11).jmp(stage);
    a.place(yes);
    a.halt();
}

/// Index of the theorems (or refutables) of `τ + W_extra` over the base of `sig`.
pub fn theory_set(sig: Signature, tau: &Sentence, extra: Option<&Nat>, pol: Polarity) -> Nat {
    let mut a = Asm::new();
    a.konst(1, tau.goedel());
    if let Some(e) = extra {
        a.konst(2, e.clone());
    }
    core(&mut a, sig, pol, extra.is_some());
    a.code()
}

/// Template reading `pair(e, φ)` for the theory `τ + W_c + W_e`, `W_c` optional.
pub fn theory_template(sig: Signature, tau: &Sentence, c: Option<&Nat>, pol: Polarity) -> Nat {
    let mut a = Asm::new();
    a.unpair_l(2, 0).unpair_r(0, 0).konst(1, tau.goedel());
    if let Some(c) = c {
        a.konst(12, c.clone()).pair(2, 12, 2).konst(13, union_template()).smn(2, 13, 2);
        a.konst(12, 0u32).konst(13, 0u32);
    }
    core(&mut a, sig, pol, true);
    a.code()
}

/// Conjunction of the listed axioms of `u`; `⊤` when it has none or is not listed.
pub fn base_conj(u: &TheoryPresentation) -> Sentence {
    let items = u.axioms.finite_items().unwrap_or(&[]);
    Sentence::conj_or_top(u.sig(), items).expect("axioms share the signature")
}

/// Index of the axioms of `u` when they are not given as a finite list.
pub(crate) fn ce_part(u: &TheoryPresentation) -> Option<Nat> {
    match u.axioms.finite_items() {
        Some(_) => None,
        None => Some(u.axioms.index()),
    }
}

/// Index of the axiom set of `u` itself.
pub fn axiom_index(u: &TheoryPresentation) -> Nat {
    u.axioms.index()
}

/// `(U + W_extra)_p` or `_r`, baked.
pub(crate) fn theory_of(u: &TheoryPresentation, extra: Option<&Nat>, pol: Polarity) -> Nat {
    let tau = base_conj(u);
    let more = match (ce_part(u), extra) {
        (None, None) => None,
        (Some(c), None) => Some(c),
        (None, Some(e)) => Some(e.clone()),
        (Some(c), Some(e)) => Some(union(&c, e)),
    };
    theory_set(u.sig(), &tau, more.as_ref(), pol)
}

/// Template reading `pair(e, φ)` for `(U + W_e)_p` or `_r`.
pub(crate) fn theory_of_template(u: &TheoryPresentation, pol: Polarity) -> Nat {
    theory_template(u.sig(), &base_conj(u), ce_part(u).as_ref(), pol)
}

/// `0_U` theorems or refutables: the base alone.
pub(crate) fn logic_of(sig: Signature, pol: Polarity) -> Nat {
    theory_set(sig, &Sentence::top(sig), None, pol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cesets::CeSet;
    use crate::kernel::{run, smn};
    use crate::syntax::SentenceSet;
    use crate::theories::Engine;

    fn member(e: &Nat, s: &Sentence) -> bool {
        run(e, &s.goedel(), 200_000).converged()
    }

    #[test]
    fn finite_theory_sets() {
        let p0 = Sentence::atom(0);
        let p1 = Sentence::atom(1);
        let prov = theory_set(Signature::Prop, &p0, None, Polarity::Provable);
        let refu = theory_set(Signature::Prop, &p0, None, Polarity::Refutable);
        assert!(member(&prov, &p0));
        assert!(member(&prov, &p0.or(&p1).unwrap()));
        assert!(!member(&prov, &p1));
        assert!(member(&refu, &p0.not()));
        assert!(!member(&refu, &p1));
    }

    #[test]
    fn extra_axioms_are_enumerated() {
        let p0 = Sentence::atom(0);
        let p1 = Sentence::atom(1);
        let w = CeSet::finite(&[p1.goedel()]).e;
        let top = Sentence::top(Signature::Prop);
        let prov = theory_set(Signature::Prop, &p0, Some(&w), Polarity::Provable);
        assert!(member(&prov, &p0.and(&p1).unwrap()));
        assert!(!member(&prov, &Sentence::atom(2)));
        let t = theory_template(Signature::Prop, &top, None, Polarity::Refutable);
        let refu = smn(&t, &w);
        assert!(member(&refu, &p1.not()));
        assert!(!member(&refu, &p0.not()));
    }

    #[test]
    fn listed_and_indexed_axioms_agree() {
        let p0 = Sentence::atom(0);
        let listed = TheoryPresentation::new(
            SentenceSet::finite(Signature::Prop, vec![p0.clone()]).unwrap(),
            Engine::Decidable,
        );
        let indexed = TheoryPresentation::new(
            SentenceSet::from_index(Signature::Prop, CeSet::finite(&[p0.goedel()]).e),
            Engine::Decidable,
        );
        let goal = p0.or(&Sentence::atom(3)).unwrap();
        for u in [&listed, &indexed] {
            assert!(member(&theory_of(u, None, Polarity::Provable), &goal));
            let t = theory_of_template(u, Polarity::Provable);
            let e = smn(&t, &CeSet::finite(&[Sentence::atom(3).goedel()]).e);
            assert!(member(&e, &p0.and(&Sentence::atom(3)).unwrap()));
        }
    }
}
