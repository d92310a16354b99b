//! Pour-El's diagonal, its double-generativity variant, the closure lift and
//! the semi-reduction into `(U_p, U_r)`.

use crate::cesets::{stage_point, union, CeSet};
use crate::kernel::recursion::{body_transformer, emit_fix};
use crate::kernel::{fix_body, pair, run, Asm, Label, Nat, Outcome, Reg};
use crate::natives::Native;
use crate::syntax::{ungoedel, Sentence};
use crate::theories::{decide, TheoryPresentation};

use super::theory::{base_conj, theory_of, Polarity};
use super::{
    probe_list, probe_set, show_code, show_outcome, verdict_text, BranchReport, Budget, Certificate, Role,
    WitnessFunction,
};

/// Indices built by a construction, the witness value, and the fired branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub indices: Vec<Nat>,
    pub value: Outcome,
    pub report: BranchReport,
}

/// Body for a fixed point `e` with `W_e = W_base ∪ {n | φ_body(pair(pair(p, e), n))↓}`.
pub(crate) fn fix_union_body(base: &Nat, body: &Nat) -> Nat {
    let mut a = Asm::new();
    let stage = a.label();
    let next = a.label();
    let dbl = a.label();
    a.copy(20, 0).unpair_r(21, 0).konst(22, base.clone()).konst(23, body.clone()).konst(24, 1u32);
    a.place(stage);
    a.runb(25, 22, 21, 24).decjz(25, next).halt();
    a.place(next);
    a.runb(25, 23, 20, 24).decjz(25, dbl).halt();
    a.place(dbl);
    a.pair(26, 24, 24).call(24, Native::Add, 26).jmp(stage);
    a.code()
}

pub(crate) fn fix_union(base: &Nat, body: &Nat, params: &[Nat]) -> Nat {
    fix_body(&fix_union_body(base, body), params)
}

/// Program `p ↦ fix_union(base, body, [p])`, built at run time.
pub(crate) fn fix_union_builder(base: &Nat, body: &Nat) -> Nat {
    let mut a = Asm::new();
    a.konst(1, body_transformer(&fix_union_body(base, body)));
    emit_fix(&mut a, 0, 1, 0, 2);
    a.halt();
    a.code()
}

/// Witness comparison on `x`: goes to `yes` when `(x ∈ W_ra) ≤ (x ∈ W_rb)`
/// for side 0, or `(x ∈ W_rb) < (x ∈ W_ra)` for side 1, else to `no`. The
/// witness is the step count; loops while neither is certified.
pub(crate) fn compare(a: &mut Asm, x: Reg, ra: Reg, rb: Reg, s: Reg, t: Reg, side: u8, yes: Label, no: Label) {
    let lp = a.label();
    let not_a = a.label();
    let a_first = a.label();
    a.konst(s, 0u32);
    a.place(lp);
    a.inc(s).runb(t, ra, x, s).decjz(t, not_a).jmp(a_first);
    a.place(not_a);
    a.runb(t, rb, x, s).decjz(t, lp);
    let (b_first_to, a_first_to) = if side == 0 { (no, yes) } else { (yes, no) };
    a.jmp(b_first_to);
    a.place(a_first);
    a.jmp(a_first_to);
}

/// Host side of [`compare`]: which side wins, `None` when neither is certified.
pub(crate) fn compare_host(ea: &Nat, eb: &Nat, x: &Nat, steps: u64) -> (Option<u64>, Option<u64>, Option<u8>) {
    let sa = stage_point(&CeSet::new(ea.clone()), x, steps).map(|p| p.stage);
    let sb = stage_point(&CeSet::new(eb.clone()), x, steps).map(|p| p.stage);
    let side = match (sa, sb) {
        (Some(a), Some(b)) => Some(if a <= b { 0 } else { 1 }),
        (Some(_), None) => Some(0),
        (None, Some(_)) => Some(1),
        (None, None) => None,
    };
    (sa, sb, side)
}

// Reads pair(pair(pair(i, j), self), n). With v = Φ(self): n = v and v ∈ W_i,
// or n = ¬v and v ∈ W_j.
fn pourel_body(f: &Nat) -> Nat {
    let mut a = Asm::new();
    let not_pos = a.label();
    let no = a.label();
    a.unpair_l(1, 0).unpair_r(2, 0).unpair_l(3, 1).unpair_r(4, 1).unpair_l(5, 3).unpair_r(6, 3);
    a.konst(7, f.clone()).univ(8, 7, 4);
    a.pair(9, 2, 8).call(9, Native::Eq, 9).decjz(9, not_pos).univ(9, 5, 8).halt();
    a.place(not_pos);
    a.call(10, Native::Neg, 8).pair(9, 2, 10).call(9, Native::Eq, 9).decjz(9, no).univ(9, 6, 8).halt();
    a.place(no);
    a.diverge();
    a.code()
}

fn stage_cert(subject: &str, e: &Nat, x: &Nat, steps: u64) -> (Option<u64>, Certificate) {
    let s = stage_point(&CeSet::new(e.clone()), x, steps).map(|p| p.stage);
    (s, Certificate::Stage { subject: subject.into(), stage: s })
}

fn listed(u: &TheoryPresentation) -> Vec<Sentence> {
    u.axioms.finite_items().map(|x| x.to_vec()).unwrap_or_default()
}

/// `U ∪ extra` membership as the displayed definitions intend it.
fn in_axioms(u: &TheoryPresentation, phi: &Sentence, steps: u64) -> bool {
    match u.axioms.finite_items() {
        Some(items) => items.contains(phi),
        None => u.axioms.contains_within(phi, steps),
    }
}

/// Builds `k*` with `W_{k*} = U ∪ {φ | Φ(k*) ≃ φ ∈ W_i} ∪ {¬φ | Φ(k*) ≃ φ ∈ W_j}`
/// and reports which of the three displayed cases is observed.
pub fn pourel_construct(
    phi: &WitnessFunction,
    u: &TheoryPresentation,
    i: &Nat,
    j: &Nat,
    budget: Budget,
) -> Construction {
    let ax = u.axioms.index();
    let k = fix_union(&ax, &pourel_body(&phi.e), &[pair(i, j)]);
    let value = run(&phi.e, &k, budget.steps);
    let mut certs = vec![Certificate::Value { subject: "Phi(k*)".into(), value: show_outcome(&value) }];
    let mut extra = vec![];
    let mut expect_pos = None;
    let mut expect_neg = None;
    let branch = match value.value() {
        None => "case3",
        Some(v) => {
            let (si, ci) = stage_cert("Phi(k*) in W_i", i, v, budget.steps);
            let (sj, cj) = stage_cert("Phi(k*) in W_j", j, v, budget.steps);
            certs.extend([ci, cj]);
            if let Some(s) = ungoedel(v) {
                if s.sig() == u.sig() {
                    let items = listed(u);
                    certs.push(Certificate::Verdict { subject: "U ? Phi(k*)".into(), verdict: verdict_text(decide(&items, &s)) });
                }
                expect_pos = Some((s.clone(), si.is_some()));
                expect_neg = Some((s.not(), sj.is_some()));
                extra.extend([s.clone(), s.not()]);
            }
            match (si, sj) {
                (Some(_), _) => "case1",
                (None, Some(_)) => "case2",
                _ => "case3",
            }
        }
    };
    let mut report = BranchReport::new("pourel", branch, show_outcome(&value));
    report.certificates = certs;
    extra.extend(listed(u));
    let probes: Vec<(Sentence, bool)> = probe_list(u.sig(), &extra)
        .into_iter()
        .map(|s| {
            let mut exp = in_axioms(u, &s, budget.steps);
            for (t, b) in [&expect_pos, &expect_neg].into_iter().flatten() {
                if *t == s {
                    exp |= *b;
                }
            }
            (s, exp)
        })
        .collect();
    probe_set(&mut report, "W_k*", &k, &probes, budget.stages);
    Construction { indices: vec![k], value, report }
}

/// The derived witness `Ψ(i, j) = Φ(k*(i, j))`, with `k*` built at run time.
pub fn pourel_witness(phi: &WitnessFunction, u: &TheoryPresentation) -> WitnessFunction {
    let builder = fix_union_builder(&u.axioms.index(), &pourel_body(&phi.e));
    let mut a = Asm::new();
    a.konst(1, builder).univ(1, 1, 0).konst(2, phi.e.clone()).univ(0, 2, 1).halt();
    WitnessFunction::new(a.code(), Role::EIWitness, "Phi at the Pour-El fixed point for pair(i, j)")
}

// Expects `v` in r1 and the set index in r2; halts with the found sentence in r0.
// Tries `v` itself first, then the k-th sentences, at stages 1, 2, 4, ...
fn closure_search(a: &mut Asm, u: &TheoryPresentation, output: bool) {
    let stage = a.label();
    let each = a.label();
    let body = a.label();
    let skip = a.label();
    let next_stage = a.label();
    let found_v = a.label();
    let found = a.label();
    a.konst(3, u.sig().tag()).konst(4, 1u32).konst(12, base_conj(u).goedel());
    a.place(stage);
    a.runb(5, 2, 1, 4).decjz(5, each).jmp(found_v);
    a.place(each);
    a.konst(6, 0u32);
    let lp = a.here();
    a.pair(7, 6, 4).call(7, Native::Eq, 7).decjz(7, body).jmp(next_stage);
    a.place(body);
    a.pair(8, 3, 6).call(8, Native::Nth, 8);
    a.runb(9, 2, 8, 4).decjz(9, skip);
    a.pair(10, 8, 1).call(10, Native::Iff, 10).pair(10, 12, 10).call(10, Native::Decide, 10);
    let yes = a.label();
    super::theory::accept(a, 10, Polarity::Provable, yes, skip);
    a.place(yes);
    a.jmp(found);
    a.place(skip);
    a.inc(6).jmp(lp);
    a.place(next_stage);
    a.pair(11, 4, 4).call(4, Native::Add, 11).jmp(stage);
    a.place(found_v);
    if output {
        a.copy(0, 1);
    }
    a.halt();
    a.place(found);
    if output {
        a.copy(0, 8);
    }
    a.halt();
}

/// `Ψ'(i)`: the first member of `X` found `U`-provably equivalent to `Ψ(i)`.
pub fn lift_to_closure(psi: &WitnessFunction, x: &CeSet, u: &TheoryPresentation) -> WitnessFunction {
    let mut a = Asm::new();
    a.konst(1, psi.e.clone()).univ(1, 1, 0).konst(2, x.e.clone());
    closure_search(&mut a, u, true);
    WitnessFunction::new(a.code(), psi.role, format!("{} (lifted into a c.e. class up to provable equivalence)", psi.claims))
}

/// Index of `[X]_U`.
pub(crate) fn closure_set(u: &TheoryPresentation, x: &CeSet) -> Nat {
    let mut a = Asm::new();
    a.copy(1, 0).konst(2, x.e.clone());
    closure_search(&mut a, u, false);
    a.code()
}

// Reads pair(pair(0, self), n), comparing v = Φ(self) between W_a and W_b.
fn double_gen_body(f: &Nat, sa: &Nat, sb: &Nat) -> Nat {
    let mut a = Asm::new();
    let not_pos = a.label();
    let yes = a.label();
    let no = a.label();
    a.unpair_l(1, 0).unpair_r(2, 0).unpair_r(4, 1);
    a.konst(7, f.clone()).univ(8, 7, 4).konst(11, sa.clone()).konst(12, sb.clone());
    a.pair(9, 2, 8).call(9, Native::Eq, 9).decjz(9, not_pos);
    compare(&mut a, 8, 11, 12, 13, 14, 0, yes, no);
    a.place(not_pos);
    a.call(10, Native::Neg, 8).pair(9, 2, 10).call(9, Native::Eq, 9).decjz(9, no);
    compare(&mut a, 8, 11, 12, 13, 14, 1, yes, no);
    a.place(yes);
    a.halt();
    a.place(no);
    a.diverge();
    a.code()
}

/// `W_{Ψ(i,j)}` by witness comparison of `(U_p ∪ W_i)` against `(U_r ∪ W_j)`.
pub fn double_generative_construct(
    phi: &WitnessFunction,
    u: &TheoryPresentation,
    i: &Nat,
    j: &Nat,
    budget: Budget,
) -> Construction {
    let sa = union(&theory_of(u, None, Polarity::Provable), i);
    let sb = union(&theory_of(u, None, Polarity::Refutable), j);
    let k = fix_union(&u.axioms.index(), &double_gen_body(&phi.e, &sa, &sb), &[]);
    let value = run(&phi.e, &k, budget.steps);
    let mut certs = vec![Certificate::Value { subject: "Phi*(i,j)".into(), value: show_outcome(&value) }];
    let mut expect = vec![];
    let branch = match value.value() {
        None => "otherwise",
        Some(v) => {
            let (a, b, side) = compare_host(&sa, &sb, v, budget.steps);
            certs.push(Certificate::Stage { subject: "Phi* in U_p + W_i".into(), stage: a });
            certs.push(Certificate::Stage { subject: "Phi* in U_r + W_j".into(), stage: b });
            certs.push(stage_cert("Phi* in W_i", i, v, budget.steps).1);
            certs.push(stage_cert("Phi* in W_j", j, v, budget.steps).1);
            if let Some(s) = ungoedel(v).filter(|s| s.sig() == u.sig()) {
                let items = listed(u);
                certs.push(Certificate::Verdict { subject: "U ? Phi*".into(), verdict: verdict_text(decide(&items, &s)) });
                expect.push((s.clone(), side == Some(0)));
                expect.push((s.not(), side == Some(1)));
            }
            match side {
                Some(0) => "le",
                Some(_) => "lt",
                None => "otherwise",
            }
        }
    };
    let mut report = BranchReport::new("double_generative", branch, show_outcome(&value));
    report.certificates = certs;
    let mut extra: Vec<Sentence> = expect.iter().map(|(s, _)| s.clone()).collect();
    extra.extend(listed(u));
    let probes: Vec<(Sentence, bool)> = probe_list(u.sig(), &extra)
        .into_iter()
        .map(|s| {
            let hit = expect.iter().any(|(t, b)| *t == s && *b);
            let exp = in_axioms(u, &s, budget.steps) || hit;
            (s, exp)
        })
        .collect();
    probe_set(&mut report, "W_Psi(i,j)", &k, &probes, budget.stages);
    Construction { indices: vec![k], value, report }
}

// Reads pair(pair(x, self), n): with v = Φ(self), n = v and x ∈ Y, or n = ¬v and x ∈ X.
fn smullyan_body(f: &Nat, x: &Nat, y: &Nat) -> Nat {
    let mut a = Asm::new();
    let not_pos = a.label();
    let no = a.label();
    a.unpair_l(1, 0).unpair_r(2, 0).unpair_l(3, 1).unpair_r(4, 1);
    a.konst(7, f.clone()).univ(8, 7, 4).konst(11, x.clone()).konst(12, y.clone());
    a.pair(9, 2, 8).call(9, Native::Eq, 9).decjz(9, not_pos).univ(9, 12, 3).halt();
    a.place(not_pos);
    a.call(10, Native::Neg, 8).pair(9, 2, 10).call(9, Native::Eq, 9).decjz(9, no).univ(9, 11, 3).halt();
    a.place(no);
    a.diverge();
    a.code()
}

fn smullyan_builder(phi: &WitnessFunction, u: &TheoryPresentation, x: &CeSet, y: &CeSet) -> Nat {
    fix_union_builder(&u.axioms.index(), &smullyan_body(&phi.e, &x.e, &y.e))
}

/// `Ψ(n)`: the theory `U ∪ {Φ*(n) if n ∈ Y} ∪ {¬Φ*(n) if n ∈ X}` with `Φ* = Φ ∘ Ψ`.
pub fn smullyan_theory(phi: &WitnessFunction, u: &TheoryPresentation, x: &CeSet, y: &CeSet, n: &Nat) -> Nat {
    match run(&smullyan_builder(phi, u, x, y), n, u64::MAX) {
        Outcome::Converged(k) => k,
        Outcome::Exhausted => unreachable!("the builder only composes codes"),
    }
}

/// Index of `Φ*(n) = Φ(Ψ(n))`, the semi-reduction of `(X, Y)` to `(U_p, U_r)`.
pub fn smullyan_embed(phi: &WitnessFunction, u: &TheoryPresentation, x: &CeSet, y: &CeSet) -> WitnessFunction {
    let mut a = Asm::new();
    a.konst(1, smullyan_builder(phi, u, x, y)).univ(1, 1, 0).konst(2, phi.e.clone()).univ(0, 2, 1).halt();
    WitnessFunction::new(a.code(), Role::SemiReduction, "Phi at the fixed point Psi(n)")
}

/// Report for `W_{Ψ(n)}` against its three-case display.
pub fn smullyan_report(
    phi: &WitnessFunction,
    u: &TheoryPresentation,
    x: &CeSet,
    y: &CeSet,
    n: &Nat,
    budget: Budget,
) -> Construction {
    let k = smullyan_theory(phi, u, x, y, n);
    let value = run(&phi.e, &k, budget.steps);
    let in_x = run(&x.e, n, budget.steps).converged();
    let in_y = run(&y.e, n, budget.steps).converged();
    let mut expect = vec![];
    let branch = match (value.value(), in_y, in_x) {
        (Some(_), true, _) => "in_Y",
        (Some(_), false, true) => "in_X",
        _ => "otherwise",
    };
    let mut report = BranchReport::new("smullyan", branch, show_outcome(&value));
    report.certificates.push(Certificate::Value { subject: "Phi*(n)".into(), value: show_outcome(&value) });
    report.certificates.push(Certificate::Value { subject: "n".into(), value: Some(show_code(n)) });
    if let Some(s) = value.value().and_then(ungoedel).filter(|s| s.sig() == u.sig()) {
        expect.push((s.clone(), value.converged() && in_y));
        expect.push((s.not(), value.converged() && in_x));
        report.certificates.push(Certificate::Verdict {
            subject: "U ? Phi*(n)".into(),
            verdict: verdict_text(decide(&listed(u), &s)),
        });
    }
    let mut extra: Vec<Sentence> = expect.iter().map(|(s, _)| s.clone()).collect();
    extra.extend(listed(u));
    let probes: Vec<(Sentence, bool)> = probe_list(u.sig(), &extra)
        .into_iter()
        .map(|s| {
            let hit = expect.iter().any(|(t, b)| *t == s && *b);
            (s.clone(), in_axioms(u, &s, budget.steps) || hit)
        })
        .collect();
    probe_set(&mut report, "W_Psi(n)", &k, &probes, budget.stages);
    Construction { indices: vec![k], value, report }
}
