//! Hereditary creativity: the normal forms of its witnesses, the two
//! double-recursion constructions, combining a creative and an inseparability
//! witness, and the subtraction map.

use crate::cesets::{creative_K, preimage_template, union};
use crate::kernel::{double_fix_body, pair, run, Asm, Label, Nat, Outcome};
use crate::natives::Native;
use crate::syntax::{ungoedel, Sentence};
use crate::theories::{decide, TheoryPresentation};

use super::pourel::{compare, compare_host, Construction};
use super::theory::{accept, base_conj, logic_of, theory_of, theory_of_template, theory_set, Polarity};
use super::{probe_list, probe_set, show_outcome, verdict_text, BranchReport, Budget, Certificate, Role, WitnessFunction};

/// Code returned by [`subtraction_map`] on inputs that are not sentence codes.
pub const JUNK: u64 = 0;

pub type HeredityResult = Construction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `Φ(i, j, k)` to `Ψ(i, j)`.
    IToII,
    /// `Ψ(i, j)` to `Φ(i, j, k)`.
    IIToI,
}

/// Converts between the three- and two-argument witness forms.
pub fn eehc1_normalize(direction: Direction, w: &WitnessFunction, u: &TheoryPresentation) -> WitnessFunction {
    let mut a = Asm::new();
    match direction {
        Direction::IToII => {
            // pair(i, j) ↦ Φ(pair(i, pair(j, k))) with W_k = (U ∪ W_i)_p
            a.unpair_l(1, 0).unpair_r(2, 0).konst(3, theory_of_template(u, Polarity::Provable)).smn(3, 3, 1);
            a.pair(2, 2, 3).pair(0, 1, 2);
        }
        Direction::IIToI => {
            a.unpair_l(1, 0).unpair_r(2, 0).unpair_l(2, 2).pair(0, 1, 2);
        }
    }
    a.konst(4, w.e.clone()).univ(0, 4, 0).halt();
    WitnessFunction::new(a.code(), Role::HereditaryCreative, format!("{} in the other argument form", w.claims))
}

/// `Ψ(i, j) = Φ(k0, k1)` with `W_{k0} = W_{i p}` and `W_{k1} = U_r ∪ W_j`.
pub fn strong_to_hered_witness(phi: &WitnessFunction, u: &TheoryPresentation) -> WitnessFunction {
    let sig = u.sig();
    let mut a = Asm::new();
    a.unpair_l(1, 0).unpair_r(2, 0);
    a.konst(3, super::theory::theory_template(sig, &Sentence::top(sig), None, Polarity::Provable)).smn(1, 3, 1);
    a.konst(3, theory_of(u, None, Polarity::Refutable)).pair(2, 3, 2);
    a.konst(3, crate::cesets::union_template()).smn(2, 3, 2).pair(0, 1, 2);
    a.konst(4, phi.e.clone()).univ(0, 4, 0).halt();
    WitnessFunction::new(a.code(), Role::HereditaryCreative, format!("{} on theorems of W_i and U_r + W_j", phi.claims))
}

/// Budgeted value of [`strong_to_hered_witness`] at `(i, j)`.
pub fn eehc2_strong_to_hered(phi: &WitnessFunction, u: &TheoryPresentation, i: &Nat, j: &Nat, steps: u64) -> Outcome {
    strong_to_hered_witness(phi, u).eval(&pair(i, j), steps)
}

// Bodies read pair(pair(pair(i, j), pair(e0, e1)), n); leaves v = Ψ(pair(e0, e1)) in r8.
fn prelude(a: &mut Asm, psi: &Nat) {
    a.unpair_l(1, 0).unpair_r(2, 0).unpair_l(3, 1).unpair_r(4, 1).unpair_l(5, 3).unpair_r(6, 3);
    a.konst(7, psi.clone()).univ(8, 7, 4);
}

// n refutable in pure logic: jumps to `yes`, else falls through.
fn logic_refutes(a: &mut Asm, sig_top: &Nat, yes: Label) {
    let no = a.label();
    a.konst(10, sig_top.clone()).pair(10, 10, 2).call(10, Native::Decide, 10);
    accept(a, 10, Polarity::Refutable, yes, no);
    a.place(no);
}

// ¬v refutes n: halts, else diverges.
fn neg_refutes(a: &mut Asm) {
    let yes = a.label();
    let no = a.label();
    a.call(11, Native::Neg, 8).pair(11, 11, 2).call(11, Native::Decide, 11);
    accept(a, 11, Polarity::Refutable, yes, no);
    a.place(no);
    a.diverge();
    a.place(yes);
    a.halt();
}

fn hered_bodies(u: &TheoryPresentation, psi: &Nat) -> (Nat, Nat) {
    let top = Sentence::top(u.sig()).goedel();
    let mut b0 = Asm::new();
    let no = b0.label();
    prelude(&mut b0, psi);
    b0.pair(9, 2, 8).call(9, Native::Eq, 9).decjz(9, no).univ(9, 5, 8).halt();
    b0.place(no);
    b0.diverge();
    let mut b1 = Asm::new();
    let yes = b1.label();
    b1.copy(12, 0);
    b1.unpair_r(2, 12);
    logic_refutes(&mut b1, &top, yes);
    b1.copy(0, 12);
    prelude(&mut b1, psi);
    b1.univ(9, 6, 8);
    neg_refutes(&mut b1);
    b1.place(yes);
    b1.halt();
    (b0.code(), b1.code())
}

fn listed(u: &TheoryPresentation) -> Vec<Sentence> {
    u.axioms.finite_items().map(|x| x.to_vec()).unwrap_or_default()
}

fn refuted_by(ext: &[Sentence], s: &Sentence) -> bool {
    decide(ext, s).map(|v| v.is_refutable()).unwrap_or(false)
}

/// Probes of `W_{k0}` and `W_{k1}` against their displayed definitions.
fn probe_pair(
    report: &mut BranchReport,
    u: &TheoryPresentation,
    k: (&Nat, &Nat),
    v: Option<&Sentence>,
    fired: (bool, bool),
    stages: u64,
) {
    let mut extra: Vec<Sentence> = v.map(|s| vec![s.clone(), s.not()]).unwrap_or_default();
    extra.push(Sentence::bottom(u.sig()));
    let probes = probe_list(u.sig(), &extra);
    let p0: Vec<(Sentence, bool)> = probes.iter().map(|s| (s.clone(), fired.0 && Some(s) == v)).collect();
    probe_set(report, "W_k0", k.0, &p0, stages);
    let p1: Vec<(Sentence, bool)> = probes
        .iter()
        .map(|s| {
            let neg = fired.1 && v.map(|v| refuted_by(&[v.not()], s)).unwrap_or(false);
            (s.clone(), refuted_by(&[], s) || neg)
        })
        .collect();
    probe_set(report, "W_k1", k.1, &p1, stages);
}

/// Double fixed point `(k0, k1)`: `W_{k0} = {φ}` when `Ψ(k0, k1) ≃ φ ∈ W_i`,
/// and `W_{k1} = {¬φ}_r` when `φ ∈ W_j`, else `0_{U r}`.
pub fn eehc2_hered_to_strong(
    psi: &WitnessFunction,
    u: &TheoryPresentation,
    i: &Nat,
    j: &Nat,
    budget: Budget,
) -> HeredityResult {
    let (b0, b1) = hered_bodies(u, &psi.e);
    let (k0, k1) = double_fix_body(&b0, &b1, &[pair(i, j)]);
    let value = run(&psi.e, &pair(&k0, &k1), budget.steps);
    let mut certs = vec![Certificate::Value { subject: "Psi(k0,k1)".into(), value: show_outcome(&value) }];
    let v = value.value().and_then(ungoedel).filter(|s| s.sig() == u.sig());
    let (in_i, in_j) = match value.value() {
        Some(x) => {
            let si = crate::cesets::stage_point(&crate::cesets::CeSet::new(i.clone()), x, budget.steps);
            let sj = crate::cesets::stage_point(&crate::cesets::CeSet::new(j.clone()), x, budget.steps);
            certs.push(Certificate::Stage { subject: "phi in W_i".into(), stage: si.map(|p| p.stage) });
            certs.push(Certificate::Stage { subject: "phi in W_j".into(), stage: sj.map(|p| p.stage) });
            (si.is_some(), sj.is_some())
        }
        None => (false, false),
    };
    if let Some(s) = &v {
        certs.push(Certificate::Verdict { subject: "U ? phi".into(), verdict: verdict_text(decide(&listed(u), s)) });
    }
    let branch = match (in_i, in_j) {
        (true, _) => "phi_in_i",
        (false, true) => "phi_in_j",
        _ => "neutral",
    };
    let mut report = BranchReport::new("eehc2", branch, show_outcome(&value));
    report.certificates = certs;
    probe_pair(&mut report, u, (&k0, &k1), v.as_ref(), (in_i, in_j), budget.stages);
    Construction { indices: vec![k0, k1], value, report }
}

fn eehc3_bodies(u: &TheoryPresentation, psi: &Nat, sa: &Nat, sb: &Nat) -> (Nat, Nat) {
    let top = Sentence::top(u.sig()).goedel();
    let mut b0 = Asm::new();
    let yes = b0.label();
    let no = b0.label();
    prelude(&mut b0, psi);
    b0.konst(11, sa.clone()).konst(12, sb.clone());
    b0.pair(9, 2, 8).call(9, Native::Eq, 9).decjz(9, no);
    compare(&mut b0, 8, 11, 12, 13, 14, 0, yes, no);
    b0.place(yes);
    b0.halt();
    b0.place(no);
    b0.diverge();
    let mut b1 = Asm::new();
    let yes = b1.label();
    let lost = b1.label();
    let won = b1.label();
    b1.copy(15, 0);
    b1.unpair_r(2, 15);
    logic_refutes(&mut b1, &top, yes);
    b1.copy(0, 15);
    prelude(&mut b1, psi);
    b1.konst(11, sa.clone()).konst(12, sb.clone());
    compare(&mut b1, 8, 11, 12, 13, 14, 1, won, lost);
    b1.place(lost);
    b1.diverge();
    b1.place(won);
    neg_refutes(&mut b1);
    b1.place(yes);
    b1.halt();
    (b0.code(), b1.code())
}

/// `(Θ0, Θ1)` at `(i, j)` by witness comparison of `(0_{U p} ∪ W_i)` against `(U_r ∪ W_j)`.
pub fn eehc3_construct(
    psi: &WitnessFunction,
    u: &TheoryPresentation,
    i: &Nat,
    j: &Nat,
    budget: Budget,
) -> HeredityResult {
    let sa = union(&logic_of(u.sig(), Polarity::Provable), i);
    let sb = union(&theory_of(u, None, Polarity::Refutable), j);
    let (b0, b1) = eehc3_bodies(u, &psi.e, &sa, &sb);
    let (t0, t1) = double_fix_body(&b0, &b1, &[pair(i, j)]);
    let value = run(&psi.e, &pair(&t0, &t1), budget.steps);
    let mut certs = vec![Certificate::Value { subject: "Phi*(i,j)".into(), value: show_outcome(&value) }];
    let v = value.value().and_then(ungoedel).filter(|s| s.sig() == u.sig());
    let side = match value.value() {
        Some(x) => {
            let (a, b, side) = compare_host(&sa, &sb, x, budget.steps);
            certs.push(Certificate::Stage { subject: "phi* in 0_Up + W_i".into(), stage: a });
            certs.push(Certificate::Stage { subject: "phi* in U_r + W_j".into(), stage: b });
            side
        }
        None => None,
    };
    if let Some(s) = &v {
        certs.push(Certificate::Verdict { subject: "U ? phi*".into(), verdict: verdict_text(decide(&listed(u), s)) });
        certs.push(Certificate::Verdict { subject: "0_U ? phi*".into(), verdict: verdict_text(decide(&[], s)) });
    }
    let branch = match side {
        Some(0) => "le",
        Some(_) => "lt",
        None => "otherwise",
    };
    let mut report = BranchReport::new("eehc3", branch, show_outcome(&value));
    report.certificates = certs;
    probe_pair(&mut report, u, (&t0, &t1), v.as_ref(), (side == Some(0), side == Some(1)), budget.stages);
    Construction { indices: vec![t0, t1], value, report }
}

/// `X`-creative witness for `U` given by listed axioms `τ`: `i ↦ τ ∧ p_m`
/// with `m` the productive value of `K` at `{n | τ ∧ p_n ∈ W_i}`.
pub fn productive_fixture(u: &TheoryPresentation) -> WitnessFunction {
    let tau = base_conj(u);
    let mut emb = Asm::new();
    emb.konst(1, tau.goedel()).call(0, Native::Atom, 0).pair(0, 1, 0).call(0, Native::And, 0).halt();
    let emb = emb.code();
    let (_, p) = creative_K();
    let mut a = Asm::new();
    a.konst(1, emb.clone()).pair(0, 1, 0).konst(2, preimage_template().clone()).smn(0, 2, 0);
    a.konst(3, p).univ(0, 3, 0).konst(3, emb).univ(0, 3, 0).halt();
    WitnessFunction::new(a.code(), Role::Creative, "axioms with a fresh atom from the productive function of K")
}

/// Indices and values built by [`domi_combine`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomiResult {
    /// Index of `{ψ | U ∪ {ψ} ⊢ φ for some φ ∈ W_j}`.
    pub w: Nat,
    pub phi_star: Outcome,
    pub i_star: Option<Nat>,
    pub j_star: Option<Nat>,
    pub psi_star: Outcome,
    pub value: Option<Sentence>,
}

fn entails_some(u: &TheoryPresentation, j: &Nat) -> Nat {
    let mut a = Asm::new();
    let stage = a.label();
    let each = a.label();
    let body = a.label();
    let skip = a.label();
    let next_stage = a.label();
    let yes = a.label();
    a.konst(1, j.clone()).konst(2, base_conj(u).goedel()).pair(2, 2, 0).call(2, Native::And, 2);
    a.konst(3, u.sig().tag()).konst(4, 1u32);
    a.place(stage);
    a.konst(5, 0u32);
    a.place(each);
    a.pair(6, 5, 4).call(6, Native::Eq, 6).decjz(6, body).jmp(next_stage);
    a.place(body);
    a.pair(7, 3, 5).call(7, Native::Nth, 7).runb(8, 1, 7, 4).decjz(8, skip);
    a.pair(9, 2, 7).call(9, Native::Decide, 9);
    accept(&mut a, 9, Polarity::Provable, yes, skip);
    a.place(skip);
    a.inc(5).jmp(each);
    a.place(next_stage);
    a.pair(10, 4, 4).call(4, Native::Add, 10).jmp(stage);
    a.place(yes);
    a.halt();
    a.code()
}

fn and_preimage(phi: &Sentence, i: &Nat) -> Nat {
    let mut a = Asm::new();
    a.konst(1, phi.goedel()).pair(0, 1, 0).call(0, Native::And, 0).konst(1, i.clone()).univ(0, 1, 0).halt();
    a.code()
}

/// `φ* ∧ ψ*` with `φ*` from the creative witness at `𝒲` and `ψ*` from the
/// inseparability witness at `(i*, j*)`.
pub fn domi_combine(
    creative: &WitnessFunction,
    insep: &WitnessFunction,
    u: &TheoryPresentation,
    i: &Nat,
    j: &Nat,
    steps: u64,
) -> DomiResult {
    let w = entails_some(u, j);
    let phi_star = run(&creative.e, &w, steps);
    let Some(ps) = phi_star.value().and_then(ungoedel) else {
        return DomiResult { w, phi_star, i_star: None, j_star: None, psi_star: Outcome::Exhausted, value: None };
    };
    let i_star = union(&and_preimage(&ps, i), &theory_set(u.sig(), &ps, None, Polarity::Provable));
    let j_star = and_preimage(&ps, j);
    let psi_star = run(&insep.e, &pair(&i_star, &j_star), steps);
    let value = psi_star.value().and_then(ungoedel).and_then(|q| ps.and(&q).ok());
    DomiResult { w, phi_star, i_star: Some(i_star), j_star: Some(j_star), psi_star, value }
}

/// Index of `ψ ↦ φ ∧ ψ`; non-sentences and other signatures go to [`JUNK`].
pub fn subtraction_map(phi: &Sentence) -> Nat {
    let mut a = Asm::new();
    let junk = a.label();
    a.call(1, Native::SigOf, 0).decjz(1, junk);
    a.konst(1, phi.goedel()).pair(0, 1, 0).call(0, Native::And, 0).halt();
    a.place(junk);
    a.konst(0, JUNK).halt();
    a.code()
}
