//! C.e. sets as domains of machine programs, witness comparison, and the
//! Kleene pair and creative set used as fixtures.
//!
//! `n ∈ W_e` iff `φ_e(n)` converges. The stage at which `n` is first certified
//! is the least budget under which that run converges.

use std::collections::BTreeSet;
use std::fmt;
use std::rc::Rc;
use std::sync::OnceLock;

use thiserror::Error;

use crate::kernel::recursion::{body_transformer, diverge, emit_fix, fix_body, identity};
use crate::kernel::{halting_steps, pair, run, smn, Asm, Nat, Outcome};
use crate::natives::Native;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CeSet {
    pub e: Nat,
}

impl CeSet {
    pub fn new(e: Nat) -> CeSet {
        CeSet { e }
    }

    pub fn everything() -> CeSet {
        CeSet::new(identity())
    }

    pub fn nothing() -> CeSet {
        CeSet::new(diverge())
    }

    /// The finite set `items`, by comparison against each element.
    pub fn finite(items: &[Nat]) -> CeSet {
        let mut a = Asm::new();
        let yes = a.label();
        for it in items {
            let next = a.label();
            a.konst(1, it.clone()).pair(1, 0, 1).call(1, Native::Eq, 1).decjz(1, next).jmp(yes);
            a.place(next);
        }
        a.diverge();
        a.place(yes);
        a.halt();
        CeSet::new(a.code())
    }
}

/// Membership certified within `s` steps. Unlike the textbook `W_{e,s}`
/// there is no `n < s` cut-off, since sentence codes are large numbers.
pub fn member_within(a: &CeSet, n: &Nat, s: u64) -> bool {
    run(&a.e, n, s).converged()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StagePoint {
    pub stage: u64,
}

/// The exact stage at which `n` enters `W_a`, if that happens within `limit`.
pub fn stage_point(a: &CeSet, n: &Nat, limit: u64) -> Option<StagePoint> {
    halting_steps(&a.e, n, limit).map(|stage| StagePoint { stage })
}

// Expects `n` in r0 and the two indices in r2, r3; stages 1, 2, 4, ...
fn or_core(a: &mut Asm) {
    let lp = a.label();
    let next = a.label();
    let dbl = a.label();
    let yes = a.label();
    a.konst(4, 1u32);
    a.place(lp);
    a.runb(5, 2, 0, 4).decjz(5, next).jmp(yes);
    a.place(next);
    a.runb(5, 3, 0, 4).decjz(5, dbl).jmp(yes);
    a.place(dbl);
    a.pair(6, 4, 4).call(4, Native::Add, 6).jmp(lp);
    a.place(yes);
    a.halt();
}

fn or_template() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        let mut a = Asm::new();
        // input pair(pair(a, b), n)
        a.unpair_l(1, 0).unpair_r(0, 0).unpair_l(2, 1).unpair_r(3, 1);
        or_core(&mut a);
        a.code()
    })
}

/// `W_a ∪ W_b` by dovetailing at doubling stages.
pub fn union(a: &Nat, b: &Nat) -> Nat {
    let mut asm = Asm::new();
    asm.konst(2, a.clone()).konst(3, b.clone());
    or_core(&mut asm);
    asm.code()
}

/// Template reading `pair(pair(a, b), n)`, for unions built at run time.
pub fn union_template() -> Nat {
    or_template().clone()
}

// Expects `n` in r0 and `i`, `j` in r2, r3; stages 1, 2, 3, ...
fn wc_core(a: &mut Asm, side: u64) {
    let lp = a.label();
    let not_i = a.label();
    let i_first = a.label();
    let j_first = a.label();
    a.place(lp);
    a.inc(4).runb(5, 2, 0, 4).decjz(5, not_i).jmp(i_first);
    a.place(not_i);
    a.runb(5, 3, 0, 4).decjz(5, lp).jmp(j_first);
    let (win, lose) = if side == 0 { (i_first, j_first) } else { (j_first, i_first) };
    a.place(win);
    a.halt();
    a.place(lose);
    a.diverge();
}

/// `(k0, k1)` with `W_{k0} = {n | (n ∈ W_i) ≤ (n ∈ W_j)}` and
/// `W_{k1} = {n | (n ∈ W_j) < (n ∈ W_i)}`; ties go to `k0`.
pub fn wc_split(i: &Nat, j: &Nat) -> (Nat, Nat) {
    let side = |k| {
        let mut a = Asm::new();
        a.konst(2, i.clone()).konst(3, j.clone());
        wc_core(&mut a, k);
        a.code()
    };
    (side(0), side(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Neither,
}

/// A total decision of which side of a disjoint pair a point lies on.
pub type Hint = Rc<dyn Fn(&Nat) -> Option<Side>>;

#[derive(Clone)]
pub struct DisjointPairFixture {
    pub left: CeSet,
    pub right: CeSet,
    pub hint: Option<Hint>,
}

impl fmt::Debug for DisjointPairFixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DisjointPairFixture")
            .field("left", &self.left)
            .field("right", &self.right)
            .field("hint", &self.hint.is_some())
            .finish()
    }
}

fn kleene_side(v: u64) -> Nat {
    let mut a = Asm::new();
    let no = a.label();
    a.univ(1, 0, 0).konst(2, v).pair(1, 1, 2).call(1, Native::Eq, 1).decjz(1, no).halt();
    a.place(no);
    a.diverge();
    a.code()
}

/// `left = {e | φ_e(e) = 0}`, `right = {e | φ_e(e) = 1}`.
pub fn kleene_pair() -> DisjointPairFixture {
    DisjointPairFixture { left: CeSet::new(kleene_side(0)), right: CeSet::new(kleene_side(1)), hint: None }
}

fn diagonal_body() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        let mut a = Asm::new();
        let lp = a.label();
        let not_i = a.label();
        let i_first = a.label();
        // input pair(pair(pair(i, j), self), z); z is ignored
        a.unpair_l(0, 0).unpair_l(1, 0).unpair_r(6, 0).unpair_l(2, 1).unpair_r(3, 1);
        a.place(lp);
        a.inc(4).runb(5, 2, 6, 4).decjz(5, not_i).jmp(i_first);
        a.place(not_i);
        a.runb(5, 3, 6, 4).decjz(5, lp);
        a.konst(0, 0u32).halt();
        a.place(i_first);
        a.konst(0, 1u32).halt();
        a.code()
    })
}

/// The diagonal index `n` for the Kleene pair: `φ_n(n)` is 1 if `n` shows up
/// in `W_i` first, 0 if it shows up in `W_j` first, and diverges otherwise.
pub fn kleene_ei_witness(i: &Nat, j: &Nat) -> Nat {
    fix_body(diagonal_body(), &[pair(i, j)])
}

/// Program computing `pair(i, j) ↦ kleene_ei_witness(i, j)`.
pub fn kleene_ei_witness_program() -> Nat {
    let mut a = Asm::new();
    a.konst(1, body_transformer(diagonal_body()));
    emit_fix(&mut a, 0, 1, 0, 2);
    a.halt();
    a.code()
}

/// `K = {e | e ∈ W_e}`.
pub fn creative_set() -> CeSet {
    let mut a = Asm::new();
    a.univ(0, 0, 0).halt();
    CeSet::new(a.code())
}

fn productive_body() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        let mut a = Asm::new();
        // input pair(pair(i, self), z): converge iff self ∈ W_i
        a.unpair_l(0, 0).unpair_l(1, 0).unpair_r(2, 0).univ(0, 1, 2).halt();
        a.code()
    })
}

/// `p(i)`: the fixed point `n` with `n ∈ W_n ⟺ n ∈ W_i`.
pub fn productive_value(i: &Nat) -> Nat {
    fix_body(productive_body(), std::slice::from_ref(i))
}

/// `K` together with the index of its total productive function.
#[allow(non_snake_case)]
pub fn creative_K() -> (CeSet, Nat) {
    let mut a = Asm::new();
    a.konst(1, body_transformer(productive_body()));
    emit_fix(&mut a, 0, 1, 0, 2);
    a.halt();
    (creative_set(), a.code())
}

/// Template reading `pair(pair(psi, i), n)`: `n` is in the set iff `psi(n) ∈ W_i`.
pub fn preimage_template() -> &'static Nat {
    static T: OnceLock<Nat> = OnceLock::new();
    T.get_or_init(|| {
        let mut a = Asm::new();
        // input pair(pair(psi, i), n): n ∈ W iff psi(n) ∈ W_i
        a.unpair_l(1, 0).unpair_r(0, 0).unpair_l(2, 1).unpair_r(3, 1);
        a.univ(0, 2, 0).univ(0, 3, 0).halt();
        a.code()
    })
}

/// `{n | ψ(n) ∈ W_i}`.
pub fn preimage(psi: &Nat, i: &Nat) -> Nat {
    smn(preimage_template(), &pair(psi, i))
}

/// `Φ'(i, j) = ψ(θ(k, ℓ))` with `W_k`, `W_ℓ` the ψ-preimages of `W_i`, `W_j`.
pub fn set_semi_reduce_transfer(theta: &Nat, psi: &Nat) -> Nat {
    let mut a = Asm::new();
    a.unpair_l(1, 0)
        .unpair_r(2, 0)
        .konst(3, preimage_template().clone())
        .konst(4, psi.clone())
        .pair(5, 4, 1)
        .smn(5, 3, 5)
        .pair(6, 4, 2)
        .smn(6, 3, 6)
        .pair(5, 5, 6)
        .konst(7, theta.clone())
        .univ(0, 7, 5)
        .univ(0, 4, 0)
        .halt();
    a.code()
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Leq1Error {
    #[error("no decision available for probe {0}")]
    ProbeUndecidable(Nat),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Leq1Report {
    pub checked: usize,
    /// Probe pairs with equal images.
    pub collisions: Vec<(Nat, Nat)>,
    /// Probes whose image lands on the wrong side.
    pub misplaced: Vec<Nat>,
    /// Probes on which `f` did not converge within the budget.
    pub undefined: Vec<Nat>,
}

impl Leq1Report {
    pub fn passed(&self) -> bool {
        self.collisions.is_empty() && self.misplaced.is_empty() && self.undefined.is_empty()
    }
}

/// Checks that `f` is injective on `probes` and maps left to left and right to right.
pub fn leq1_check(
    f: &Nat,
    probes: &[Nat],
    source: &Hint,
    target: &Hint,
    budget: u64,
) -> Result<Leq1Report, Leq1Error> {
    let mut report = Leq1Report::default();
    let mut seen: Vec<(Nat, Nat)> = Vec::new();
    for n in probes {
        report.checked += 1;
        let side = source(n).ok_or_else(|| Leq1Error::ProbeUndecidable(n.clone()))?;
        let v = match run(f, n, budget) {
            Outcome::Converged(v) => v,
            Outcome::Exhausted => {
                report.undefined.push(n.clone());
                continue;
            }
        };
        if let Some((m, _)) = seen.iter().find(|(_, w)| *w == v) {
            report.collisions.push((m.clone(), n.clone()));
        }
        let image = target(&v).ok_or_else(|| Leq1Error::ProbeUndecidable(v.clone()))?;
        let ok = match side {
            Side::Left => image == Side::Left,
            Side::Right => image == Side::Right,
            Side::Neither => true,
        };
        if !ok {
            report.misplaced.push(n.clone());
        }
        seen.push((n.clone(), v));
    }
    Ok(report)
}

/// Elements of `probes` certified in `W_a` within `s` steps.
pub fn enumerate_probes(a: &CeSet, probes: &[Nat], s: u64) -> BTreeSet<Nat> {
    probes.iter().filter(|n| member_within(a, n, s)).cloned().collect()
}
