//! Stock programs, both recursion theorems, and dovetailed races.
//!
//! Fixed points follow Kleene's construction: with `diag(u) = smn(u, u)` and a
//! program `V` computing `(u, y) ↦ φ_{φ_t(pair(p, diag(u)))}(y)`, the index
//! `diag(V)` is the fixed point. Everything is code construction; no user
//! program is run while building an index.

use std::sync::OnceLock;

use super::asm::Asm;
use super::code::{nat, pack, pair, Nat};
use super::program::{decode_program, smn, Reg};

pub fn identity() -> Nat {
    let mut a = Asm::new();
    a.halt();
    a.code()
}

pub fn diverge() -> Nat {
    let mut a = Asm::new();
    a.diverge();
    a.code()
}

pub fn constant(v: impl Into<Nat>) -> Nat {
    let mut a = Asm::new();
    a.konst(0, v).halt();
    a.code()
}

pub fn successor() -> Nat {
    let mut a = Asm::new();
    a.inc(0).halt();
    a.code()
}

/// `pair(x, y) ↦ x`
pub fn project_left() -> Nat {
    let mut a = Asm::new();
    a.unpair_l(0, 0).halt();
    a.code()
}

/// `pair(x, y) ↦ y`
pub fn project_right() -> Nat {
    let mut a = Asm::new();
    a.unpair_r(0, 0).halt();
    a.code()
}

/// `x ↦ f(g(x))`
pub fn compose(f: &Nat, g: &Nat) -> Nat {
    let mut a = Asm::new();
    a.konst(1, g.clone()).univ(0, 1, 0).konst(1, f.clone()).univ(0, 1, 0).halt();
    a.code()
}

fn fix_template() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        let mut a = Asm::new();
        // input pair(pair(t, p), pair(u, y))
        a.unpair_l(1, 0)
            .unpair_r(2, 0)
            .unpair_l(3, 2)
            .unpair_r(4, 2)
            .smn(5, 3, 3) // diag(u)
            .unpair_l(6, 1)
            .unpair_r(7, 1)
            .pair(7, 7, 5)
            .univ(8, 6, 7)
            .univ(0, 8, 4)
            .halt();
        a.code()
    })
}

fn double_fix_template() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        let mut a = Asm::new();
        let second = a.label();
        let apply = a.label();
        // input pair(pair(pair(t0, t1), p), pair(pair(u, b), y))
        a.unpair_l(1, 0)
            .unpair_r(2, 0)
            .unpair_l(3, 2)
            .unpair_r(4, 2) // y
            .unpair_l(5, 3) // u
            .unpair_r(6, 3) // b
            .konst(7, 0u32)
            .pair(7, 5, 7)
            .smn(7, 5, 7) // e0 = smn(u, pair(u, 0))
            .konst(8, 1u32)
            .pair(8, 5, 8)
            .smn(8, 5, 8) // e1 = smn(u, pair(u, 1))
            .pair(7, 7, 8)
            .unpair_r(9, 1)
            .pair(9, 9, 7)
            .unpair_l(10, 1)
            .decjz(6, second)
            .unpair_r(10, 10)
            .jmp(apply);
        a.place(second);
        a.unpair_l(10, 10);
        a.place(apply);
        a.univ(11, 10, 9).univ(0, 11, 4).halt();
        a.code()
    })
}

/// Index `e*` with `φ_{e*} ≃ φ_{φ_t(pair(pack(params), e*))}`.
///
/// Same construction as the template, with `t` and the parameters written in
/// as constants rather than paired into the input.
pub fn fix(t: &Nat, params: &[Nat]) -> Nat {
    let mut a = Asm::new();
    // input pair(u, y)
    a.konst(1, t.clone())
        .konst(7, pack(params))
        .unpair_l(3, 0)
        .unpair_r(4, 0)
        .smn(5, 3, 3)
        .pair(7, 7, 5)
        .univ(8, 1, 7)
        .univ(0, 8, 4)
        .halt();
    let w = a.code();
    smn(&w, &w)
}

/// Emits code setting `dst` to `fix(regs[t], [regs[p]])`; clobbers `scratch`.
pub fn emit_fix(a: &mut Asm, dst: Reg, t: Reg, p: Reg, scratch: Reg) {
    a.pair(dst, t, p).konst(scratch, fix_template().clone()).smn(dst, scratch, dst).smn(dst, dst, dst);
}

/// Indices `(e0, e1)` with `φ_{e_b} ≃ φ_{φ_{t_b}(pair(pack(params), pair(e0, e1)))}`.
pub fn double_fix(t0: &Nat, t1: &Nat, params: &[Nat]) -> (Nat, Nat) {
    let w = smn(double_fix_template(), &pair(&pair(t0, t1), &pack(params)));
    let e = |b: u64| smn(&w, &pair(&w, &nat(b)));
    (e(0), e(1))
}

/// Transformer `z ↦ smn(body, z)`: fixing it makes `φ_{e*}(y) ≃ φ_body(pair(pair(p, e*), y))`.
pub fn body_transformer(body: &Nat) -> Nat {
    let mut a = Asm::new();
    a.konst(1, body.clone()).smn(0, 1, 0).halt();
    a.code()
}

/// Fixed point of a program body that reads `pair(pair(params, self), y)`.
///
/// Extensionally `fix(body_transformer(body), params)`; the body is inlined
/// after a prelude that builds its input and clears the prelude's registers.
pub fn fix_body(body: &Nat, params: &[Nat]) -> Nat {
    use super::program::Instr;
    let prelude = vec![
        Instr::UnpairL(1, 0),
        Instr::UnpairR(2, 0),
        Instr::Smn(3, 1, 1),
        Instr::Const(4, pack(params)),
        Instr::Pair(4, 4, 3),
        Instr::Pair(0, 4, 2),
        Instr::Const(1, nat(0)),
        Instr::Const(2, nat(0)),
        Instr::Const(3, nat(0)),
        Instr::Const(4, nat(0)),
    ];
    let w = decode_program(body).after(prelude).encode();
    smn(&w, &w)
}

/// Double fixed point of bodies reading `pair(pair(params, pair(e0, e1)), y)`.
///
/// Both bodies are inlined into one program `w` reading `pair(pair(w, b), y)`
/// that rebuilds `e_b = smn(w, pair(w, b))` for both `b` and dispatches on `b`.
pub fn double_fix_body(body0: &Nat, body1: &Nat, params: &[Nat]) -> (Nat, Nat) {
    use super::program::{Instr, Program};
    let mut instrs = vec![
        Instr::UnpairL(1, 0),
        Instr::UnpairR(2, 0),
        Instr::UnpairL(3, 1),
        Instr::UnpairR(4, 1),
        Instr::Const(5, nat(0)),
        Instr::Pair(5, 3, 5),
        Instr::Smn(5, 3, 5),
        Instr::Const(6, nat(1)),
        Instr::Pair(6, 3, 6),
        Instr::Smn(6, 3, 6),
        Instr::Pair(5, 5, 6),
        Instr::Const(6, pack(params)),
        Instr::Pair(5, 6, 5),
        Instr::Pair(0, 5, 2),
    ];
    for r in [1, 2, 3, 5, 6] {
        instrs.push(Instr::Const(r, nat(0)));
    }
    let b0 = decode_program(body0);
    let b1 = decode_program(body1);
    let p0 = instrs.len() + 2;
    let p1 = p0 + b0.len() + 1;
    instrs.push(Instr::Decjz(4, p0));
    instrs.push(Instr::Jmp(p1));
    let mut w = Program::new(vec![]).after(instrs);
    w = b0.after(w.instrs);
    w.instrs.push(Instr::Halt);
    let w = b1.after(w.instrs).encode();
    let e = |b: u64| smn(&w, &pair(&w, &nat(b)));
    (e(0), e(1))
}

/// Dovetails `φ_{e0}(x)` and `φ_{e1}(x)` at stages 1, 2, ... and returns
/// `pair(tag, value)` for the first to converge; `e0` wins ties.
pub fn race(e0: &Nat, e1: &Nat) -> Nat {
    let mut a = Asm::new();
    let lp = a.label();
    let next = a.label();
    a.konst(1, e0.clone()).konst(2, e1.clone());
    a.place(lp);
    a.inc(3).runb(4, 1, 0, 3).decjz(4, next);
    a.konst(5, 0u32).pair(0, 5, 4).halt();
    a.place(next);
    a.runb(4, 2, 0, 3).decjz(4, lp);
    a.konst(5, 1u32).pair(0, 5, 4).halt();
    a.code()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::code::pair_u64;
    use crate::kernel::machine::{run, Outcome};

    const B: u64 = 1_000_000;

    #[test]
    fn smn_projections() {
        let l = smn(&project_left(), &nat(7));
        assert_eq!(run(&l, &nat(123), B), Outcome::Converged(nat(7)));
        let r = smn(&project_right(), &nat(7));
        assert_eq!(run(&r, &nat(9), B), Outcome::Converged(nat(9)));
        assert_ne!(smn(&project_left(), &nat(7)), smn(&project_left(), &nat(8)));
    }

    #[test]
    fn fix_of_constant_transformer() {
        let t = constant(identity());
        let e = fix(&t, &[]);
        for x in 0..10u64 {
            assert_eq!(run(&e, &nat(x), B), Outcome::Converged(nat(x)));
        }
    }

    #[test]
    fn fix_sees_itself() {
        // body returns its own index, so φ_e(y) = e
        let mut a = Asm::new();
        a.unpair_l(0, 0).unpair_r(0, 0).halt();
        let e = fix_body(&a.code(), &[nat(42)]);
        assert_eq!(run(&e, &nat(3), B), Outcome::Converged(e.clone()));
    }

    #[test]
    fn double_fix_cross_reference() {
        // e0 outputs e1's value on the same input; e1 is the successor
        let mut a = Asm::new();
        a.unpair_l(1, 0).unpair_r(2, 0).unpair_r(1, 1).unpair_r(1, 1).univ(0, 1, 2).halt();
        let body0 = a.code();
        let body1 = compose(&successor(), &project_right());
        let (e0, e1) = double_fix_body(&body0, &body1, &[]);
        assert_eq!(run(&e1, &nat(4), B), Outcome::Converged(nat(5)));
        assert_eq!(run(&e0, &nat(4), B), Outcome::Converged(nat(5)));
    }

    #[test]
    fn race_tags() {
        let r = race(&identity(), &diverge());
        assert_eq!(run(&r, &nat(6), B), Outcome::Converged(pair_u64(0, 6)));
        let r = race(&diverge(), &successor());
        assert_eq!(run(&r, &nat(6), B), Outcome::Converged(pair(&nat(1), &nat(7))));
    }

    #[test]
    fn race_tie_goes_left() {
        // both take exactly five steps
        let mut a = Asm::new();
        a.inc(1).inc(1).inc(1).inc(1).halt();
        let five_a = a.code();
        let mut b = Asm::new();
        b.inc(0).inc(2).inc(2).inc(2).halt();
        let five_b = b.code();
        let r = race(&five_a, &five_b);
        assert_eq!(run(&r, &nat(0), B), Outcome::Converged(pair_u64(0, 0)));
        let r = race(&five_b, &five_a);
        assert_eq!(run(&r, &nat(0), B), Outcome::Converged(pair_u64(0, 1)));
    }
}
