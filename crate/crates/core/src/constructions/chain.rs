//! The cycle of transformers between the six forms of effective
//! inseparability, the sentence-level EI fixture, and totalization.
//!
//! Conventions: an EI witness reads `pair(i, j)`; a sequence of theories is a
//! relation index `r` with `T_i = {φ | pair(i, ⌜φ⌝) ∈ W_r}` and `U'_i = U ∪ T_i`;
//! a sequence of sentences is a program `i ↦ ⌜ν_i⌝`; the last two forms read
//! the index of a set of sentences.

use std::sync::OnceLock;

use crate::cesets::{kleene_ei_witness_program, preimage_template, union_template};
use crate::kernel::{run, Asm, Nat, Outcome};
use crate::natives::Native;
use crate::syntax::{cup_template, hat, section_template, Sentence};
use crate::theories::TheoryPresentation;

use super::theory::{theory_of, theory_of_template, Polarity};
use super::{Role, WitnessFunction};

fn compose(f: &WitnessFunction, pre: Asm, role: Role, claims: &str) -> WitnessFunction {
    // `pre` leaves the argument for `f` in r0
    let mut a = pre;
    a.konst(1, f.e.clone()).univ(0, 1, 0).halt();
    WitnessFunction::new(a.code(), role, format!("{claims}; then {}", f.claims))
}

// Reads pair(r, φ): φ ∈ (U ∪ T_i)_pol for some i, at stages 1, 2, 4, ...
fn sequence_union_template(u: &TheoryPresentation, pol: Polarity) -> Nat {
    let mut a = Asm::new();
    let stage = a.label();
    let each = a.label();
    let next_stage = a.label();
    a.unpair_l(1, 0).unpair_r(0, 0).konst(2, 1u32);
    a.konst(10, section_template().clone()).konst(11, theory_of_template(u, pol));
    a.place(stage);
    a.konst(3, 0u32).copy(4, 2);
    a.place(each);
    a.decjz(4, next_stage);
    a.pair(5, 1, 3).smn(5, 10, 5).smn(6, 11, 5).runb(7, 6, 0, 2);
    let miss = a.label();
    a.decjz(7, miss).halt();
    a.place(miss);
    a.inc(3).jmp(each);
    a.place(next_stage);
    a.pair(8, 2, 2).call(2, Native::Add, 8).jmp(stage);
    a.code()
}

/// (a) to (b): `Ψ0(r) = Φ(k, ℓ)` with `W_k = ⋃ U'_{i p}` and `W_ℓ = ⋃ U'_{i r}`.
pub fn a_to_b(phi: &WitnessFunction, u: &TheoryPresentation) -> WitnessFunction {
    let mut a = Asm::new();
    a.konst(1, sequence_union_template(u, Polarity::Provable)).smn(1, 1, 0);
    a.konst(2, sequence_union_template(u, Polarity::Refutable)).smn(2, 2, 0);
    a.pair(0, 1, 2);
    compose(phi, a, Role::UniformWitness, "unions of theorems and refutables of the sequence")
}

/// Budgeted `Ψ0(r)` for the sequence relation `r`.
pub fn ehrenfeucht_a_to_b(phi: &WitnessFunction, u: &TheoryPresentation, r: &Nat, steps: u64) -> Outcome {
    run(&a_to_b(phi, u).e, r, steps)
}

fn sentence_relation_template() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        // input pair(j, pair(i, φ)): φ = ν_i
        let mut a = Asm::new();
        let no = a.label();
        a.unpair_l(1, 0).unpair_r(2, 0).unpair_l(3, 2).unpair_r(4, 2);
        a.univ(5, 1, 3).pair(5, 5, 4).call(5, Native::Eq, 5).decjz(5, no).halt();
        a.place(no);
        a.diverge();
        a.code()
    })
}

/// (b) to (c): the sentence sequence `j` becomes the theory sequence `U + ν_i`.
pub fn b_to_c(psi0: &WitnessFunction) -> WitnessFunction {
    let mut a = Asm::new();
    a.konst(1, sentence_relation_template().clone()).smn(0, 1, 0);
    compose(psi0, a, Role::UniformWitness, "sequence of theories U + nu_i")
}

/// (c) to (d): the same function.
pub fn c_to_d(psi1: &WitnessFunction) -> WitnessFunction {
    psi1.clone()
}

fn enumeration_template(u: &TheoryPresentation) -> Nat {
    // input pair(j, pair(m, t)): the m-th sentence if it is in W_j within t steps, else ⊤
    let mut a = Asm::new();
    let no = a.label();
    a.unpair_l(1, 0).unpair_r(2, 0).unpair_l(3, 2).unpair_r(4, 2);
    a.konst(5, u.sig().tag()).pair(5, 5, 3).call(0, Native::Nth, 5).runb(6, 1, 0, 4).decjz(6, no).halt();
    a.place(no);
    a.konst(0, Sentence::top(u.sig()).goedel()).halt();
    a.code()
}

/// (d) to (e): `Ψ3(j) = Ψ2(k)` with `k` enumerating `W_j`, padded with `⊤`.
pub fn d_to_e(psi2: &WitnessFunction, u: &TheoryPresentation) -> WitnessFunction {
    let mut a = Asm::new();
    a.konst(1, enumeration_template(u)).smn(0, 1, 0);
    compose(psi2, a, Role::UniformWitness, "enumeration of W_j")
}

/// (e) to (f): `Ψ4(j) = Ψ3(k)` with `W_k = Û ⋓ W_j`.
pub fn e_to_f(psi3: &WitnessFunction, u: &TheoryPresentation) -> WitnessFunction {
    let mut a = Asm::new();
    a.konst(1, hat(&u.axioms).index()).pair(0, 1, 0).konst(1, cup_template().clone()).smn(0, 1, 0);
    compose(psi3, a, Role::UniformWitness, "U-hat cup W_j")
}

fn neg_preimage_template() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        // input pair(j, χ): ¬χ ∈ W_j
        let mut a = Asm::new();
        a.unpair_l(1, 0).unpair_r(0, 0).call(0, Native::Neg, 0).univ(0, 1, 0).halt();
        a.code()
    })
}

/// (f) to (a): `Φ(i, j) = Ψ4(k)` with `W_k = W_i ∪ {χ | ¬χ ∈ W_j}`.
pub fn f_to_a(psi4: &WitnessFunction) -> WitnessFunction {
    let mut a = Asm::new();
    a.unpair_l(1, 0).unpair_r(2, 0).konst(3, neg_preimage_template().clone()).smn(2, 3, 2);
    a.pair(0, 1, 2).konst(3, union_template()).smn(0, 3, 0);
    compose(psi4, a, Role::EIWitness, "W_i with the negation preimage of W_j")
}

/// `Φ ↦ f_to_a(e_to_f(d_to_e(c_to_d(b_to_c(a_to_b(Φ))))))`.
pub fn ehrenfeucht_chain(phi: &WitnessFunction, u: &TheoryPresentation) -> WitnessFunction {
    let b = a_to_b(phi, u);
    let c = b_to_c(&b);
    let d = c_to_d(&c);
    let e = d_to_e(&d, u);
    let f = e_to_f(&e, u);
    f_to_a(&f)
}

/// Program `i ↦ ⌜items[min(i, len - 1)]⌝`; `⊤` for an empty list.
pub fn sequence_enumeration(items: &[Sentence]) -> Nat {
    let mut a = Asm::new();
    for (k, s) in items.iter().enumerate().take(items.len().saturating_sub(1)) {
        let next = a.label();
        a.konst(1, k as u64).pair(1, 0, 1).call(1, Native::Eq, 1).decjz(1, next);
        a.konst(0, s.goedel()).halt();
        a.place(next);
    }
    let last = items.last().map(|s| s.goedel()).unwrap_or_else(|| Sentence::top(crate::syntax::Signature::Prop).goedel());
    a.konst(0, last).halt();
    a.code()
}

/// The Kleene pair moved onto atoms: `pair(i, j) ↦ p_n` with `n` the
/// diagonal index for the atom preimages `{e | p_e ∈ W_i}`, `{e | p_e ∈ W_j}`.
pub fn sentence_ei_fixture() -> WitnessFunction {
    let mut atom = Asm::new();
    atom.call(0, Native::Atom, 0).halt();
    let mut a = Asm::new();
    a.unpair_l(1, 0).unpair_r(2, 0).konst(3, atom.code()).konst(4, preimage_template().clone());
    a.pair(1, 3, 1).smn(1, 4, 1).pair(2, 3, 2).smn(2, 4, 2).pair(0, 1, 2);
    a.konst(5, kleene_ei_witness_program()).univ(0, 5, 0).call(0, Native::Atom, 0).halt();
    WitnessFunction::new(a.code(), Role::EIWitness, "Kleene diagonal on atom preimages")
}

/// `(i, j) ↦ Φ(U_p ∪ W_i, U_r ∪ W_j)`.
pub fn widen_pair(phi: &WitnessFunction, u: &TheoryPresentation) -> WitnessFunction {
    let mut a = Asm::new();
    a.unpair_l(1, 0).unpair_r(2, 0).konst(3, union_template());
    a.konst(4, theory_of(u, None, Polarity::Provable)).pair(1, 4, 1).smn(1, 3, 1);
    a.konst(4, theory_of(u, None, Polarity::Refutable)).pair(2, 4, 2).smn(2, 3, 2);
    a.pair(0, 1, 2);
    compose(phi, a, phi.role, "widened by theorems and refutables")
}

/// Search on `pair(i, j)` for `σ ∈ W_i ∩ U_r` or `σ ∈ W_j ∩ U_p`; returns `σ`.
pub fn separation_guard(u: &TheoryPresentation) -> WitnessFunction {
    let mut a = Asm::new();
    let stage = a.label();
    let each = a.label();
    let body = a.label();
    let try_j = a.label();
    let skip = a.label();
    let next_stage = a.label();
    let found = a.label();
    a.unpair_l(1, 0).unpair_r(2, 0).konst(3, u.sig().tag()).konst(4, 1u32);
    a.konst(12, theory_of(u, None, Polarity::Provable)).konst(13, theory_of(u, None, Polarity::Refutable));
    a.place(stage);
    a.konst(5, 0u32);
    a.place(each);
    a.pair(6, 5, 4).call(6, Native::Eq, 6).decjz(6, body).jmp(next_stage);
    a.place(body);
    a.pair(7, 3, 5).call(7, Native::Nth, 7);
    a.runb(8, 1, 7, 4).decjz(8, try_j).runb(8, 13, 7, 4).decjz(8, try_j).jmp(found);
    a.place(try_j);
    a.runb(8, 2, 7, 4).decjz(8, skip).runb(8, 12, 7, 4).decjz(8, skip).jmp(found);
    a.place(skip);
    a.inc(5).jmp(each);
    a.place(next_stage);
    a.pair(9, 4, 4).call(4, Native::Add, 9).jmp(stage);
    a.place(found);
    a.copy(0, 7).halt();
    WitnessFunction::new(a.code(), Role::EIWitness, "counterexample to weak biseparation")
}

/// Races `Φ` against `guard` on the same input and returns whichever value comes first.
pub fn totalize_pair(phi: &WitnessFunction, guard: &WitnessFunction) -> WitnessFunction {
    let mut a = Asm::new();
    a.konst(1, crate::kernel::race(&phi.e, &guard.e)).univ(0, 1, 0).unpair_r(0, 0).halt();
    WitnessFunction::new(a.code(), phi.role, format!("{} raced against {}", phi.claims, guard.claims))
}
