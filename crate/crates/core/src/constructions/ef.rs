//! Refuting claimed if-witnesses over decidable theories, the tuinsmurf
//! shift, and sentences independent of finitely many finite extensions.

use thiserror::Error;

use crate::cesets::CeSet;
use crate::kernel::{run, Asm, Nat};
use crate::natives::Native;
use crate::syntax::{nth_sentence, ungoedel, Sentence, Signature};
use crate::theories::{consistent, decide, ef_witness, DecideError, TheoryPresentation, Verdict};

use super::pourel::fix_union;
use super::theory::base_conj;
use super::{show_outcome, verdict_text, BranchReport, Budget, Certificate, ConstraintClass, Role, WitnessFunction};

/// How a claimed if-witness was seen to fail on its diagonal index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefutationOutcome {
    /// `Φ(i)` did not converge although `W_i` is a consistent finite extension.
    F1,
    /// `Φ(i) = φ ∈ X` with `U ∪ {φ}` inconsistent.
    F2,
    /// `Φ(i)` is not in `X`.
    F3,
    /// `Φ(i)` independent of `W_i`: impossible unless the machinery is broken.
    F4,
    /// `Φ(i) = φ ∈ X`, `U ∪ {φ}` consistent, so `W_i` proves `φ`.
    F5,
}

impl RefutationOutcome {
    pub fn name(self) -> &'static str {
        match self {
            RefutationOutcome::F1 => "F1",
            RefutationOutcome::F2 => "F2",
            RefutationOutcome::F3 => "F3",
            RefutationOutcome::F4 => "F4",
            RefutationOutcome::F5 => "F5",
        }
    }
}

// Reads pair(pair(0, self), n): n = Φ(self) and Φ(self) ∈ X.
fn diagonal_body(f: &Nat, x: &Nat) -> Nat {
    let mut a = Asm::new();
    let no = a.label();
    a.unpair_l(1, 0).unpair_r(2, 0).unpair_r(4, 1);
    a.konst(7, f.clone()).univ(8, 7, 4);
    a.pair(9, 2, 8).call(9, Native::Eq, 9).decjz(9, no).konst(10, x.clone()).univ(9, 10, 8).halt();
    a.place(no);
    a.diverge();
    a.code()
}

/// Builds `i` with `W_i = U ∪ {Φ(i) | Φ(i) ∈ X}` and classifies how `Φ` fails at `i`.
pub fn keukensmurf_refute(
    phi: &WitnessFunction,
    u: &TheoryPresentation,
    x: &ConstraintClass,
    budget: Budget,
) -> (RefutationOutcome, BranchReport) {
    let items = u.axioms.finite_items().map(|s| s.to_vec()).unwrap_or_default();
    let i = fix_union(&u.axioms.index(), &diagonal_body(&phi.e, &x.index(u)), &[]);
    let value = run(&phi.e, &i, budget.steps);
    let mut certs = vec![Certificate::Value { subject: "Phi(i)".into(), value: show_outcome(&value) }];
    let base = decide(&items, &Sentence::top(u.sig()));
    certs.push(Certificate::Verdict { subject: "U consistent".into(), verdict: verdict_text(base) });
    let outcome = match value.value() {
        None => RefutationOutcome::F1,
        Some(v) => match ungoedel(v).filter(|s| s.sig() == u.sig()) {
            None => RefutationOutcome::F3,
            Some(s) if !x.contains(u, &s, budget.steps) => RefutationOutcome::F3,
            Some(s) => {
                let mut ext = items.clone();
                ext.push(s.clone());
                let cons = consistent(&ext, u.sig());
                certs.push(Certificate::Verdict {
                    subject: "U + Phi(i) ? Phi(i)".into(),
                    verdict: verdict_text(decide(&ext, &s)),
                });
                let seen = run(&i, &s.goedel(), budget.steps).converged();
                certs.push(Certificate::Probe {
                    set: "W_i".into(),
                    sentence: s.to_string(),
                    expected: true,
                    observed: seen,
                });
                match cons {
                    Ok(false) => RefutationOutcome::F2,
                    _ if !seen && decide(&items, &s) == Ok(Verdict::Independent) => RefutationOutcome::F4,
                    _ => RefutationOutcome::F5,
                }
            }
        },
    };
    let mut report = BranchReport::new("keukensmurf", outcome.name(), show_outcome(&value));
    report.certificates = certs;
    (outcome, report)
}

/// The ef-witness applied to the index read as a sentence code; diverges
/// on indices that are not sentence codes.
pub fn wrong_lift() -> WitnessFunction {
    let mut a = Asm::new();
    let no = a.label();
    a.call(1, Native::SigOf, 0).decjz(1, no).call(0, Native::EfWitness, 0).halt();
    a.place(no);
    a.diverge();
    WitnessFunction::new(a.code(), Role::IfWitness, "ef-witness of the index decoded as a sentence")
}

/// `k ↦ ef(⊤ ∧ ...)` over the members of `W_k` among the first `n`
/// sentences, each certified within `n` steps.
pub fn ef_lift(sig: Signature, n: u64) -> WitnessFunction {
    let mut a = Asm::new();
    let lp = a.label();
    let body = a.label();
    let skip = a.label();
    let done = a.label();
    a.copy(1, 0).konst(2, Sentence::top(sig).goedel()).konst(3, sig.tag()).konst(4, n).konst(5, 0u32);
    a.place(lp);
    a.pair(6, 5, 4).call(6, Native::Eq, 6).decjz(6, body).jmp(done);
    a.place(body);
    a.pair(7, 3, 5).call(7, Native::Nth, 7).runb(8, 1, 7, 4).decjz(8, skip);
    a.pair(9, 2, 7).call(2, Native::And, 9);
    a.place(skip);
    a.inc(5).jmp(lp);
    a.place(done);
    a.call(0, Native::EfWitness, 2).halt();
    WitnessFunction::new(a.code(), Role::IfWitness, format!("ef-witness of the first {n} sentences of W_k"))
}

/// `Ψ(φ) = φ → Φ(φ)` and the index of its range.
pub fn tuinsmurf_shift(phi: &WitnessFunction, u: &TheoryPresentation) -> (WitnessFunction, CeSet) {
    let mut a = Asm::new();
    a.konst(1, phi.e.clone()).univ(2, 1, 0).pair(2, 0, 2).call(0, Native::Implies, 2).halt();
    let psi = a.code();
    // n is in the range when some k-th sentence maps to n within s steps, s = 1, 2, 4, ...
    let mut b = Asm::new();
    let stage = b.label();
    let each = b.label();
    let body = b.label();
    let skip = b.label();
    let next_stage = b.label();
    b.konst(1, psi.clone()).konst(2, u.sig().tag()).konst(3, 1u32).copy(11, 0).inc(11);
    b.place(stage);
    b.konst(4, 0u32);
    b.place(each);
    b.pair(5, 4, 3).call(5, Native::Eq, 5).decjz(5, body).jmp(next_stage);
    b.place(body);
    b.pair(6, 2, 4).call(6, Native::Nth, 6).runb(7, 1, 6, 3).pair(7, 7, 11).call(7, Native::Eq, 7);
    b.decjz(7, skip).halt();
    b.place(skip);
    b.inc(4).jmp(each);
    b.place(next_stage);
    b.pair(8, 3, 3).call(3, Native::Add, 8).jmp(stage);
    let claims = format!("phi -> ({})", phi.claims);
    (WitnessFunction::new(psi, Role::EfWitness, claims), CeSet::new(b.code()))
}

/// Consistency of probed members of the shifted range with `U`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonoConsistency {
    pub checked: usize,
    pub inconsistent: Vec<Sentence>,
    /// Probes on which `Ψ` did not produce a sentence within budget.
    pub undefined: Vec<Sentence>,
    pub errors: Vec<String>,
}

impl MonoConsistency {
    pub fn passed(&self) -> bool {
        self.inconsistent.is_empty() && self.undefined.is_empty() && self.errors.is_empty()
    }
}

/// Checks `U + Ψ(φ)` consistent for the first `n` sentences `φ`.
pub fn tuinsmurf_probe(psi: &WitnessFunction, u: &TheoryPresentation, n: usize, steps: u64) -> MonoConsistency {
    let items = u.axioms.finite_items().map(|s| s.to_vec()).unwrap_or_else(|| vec![base_conj(u)]);
    let mut out = MonoConsistency::default();
    for k in 0..n {
        let phi = nth_sentence(u.sig(), k);
        out.checked += 1;
        let Some(w) = run(&psi.e, &phi.goedel(), steps).value().and_then(ungoedel) else {
            out.undefined.push(phi);
            continue;
        };
        let mut ext = items.clone();
        ext.push(w.clone());
        match consistent(&ext, u.sig()) {
            Ok(true) => {}
            Ok(false) => out.inconsistent.push(w),
            Err(e) => out.errors.push(format!("{w}: {e}")),
        }
    }
    out
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FUniformError {
    #[error("extension {0} is inconsistent")]
    InconsistentExtension(usize),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

/// A sentence independent of each `U + ext_i`.
///
/// Consistent pairs are merged, since independence from the union implies
/// independence from each part. Once the last theory `U_k` is inconsistent
/// with every earlier one, `φ = ⋀U_k` separates it from them and
/// `ρ_{k+1} = (ρ ∧ φ) ∨ (ρ_k ∧ ¬φ)` with `ρ` the ef-witness of `φ`.
pub fn f_uniform_independent(exts: &[Vec<Sentence>], u: &TheoryPresentation) -> Result<Sentence, FUniformError> {
    let sig = u.sig();
    let base = u.axioms.finite_items().map(|s| s.to_vec()).unwrap_or_default();
    let mut theories: Vec<Vec<Sentence>> = vec![];
    for (n, e) in exts.iter().enumerate() {
        let mut t = base.clone();
        t.extend(e.iter().cloned());
        if !consistent(&t, sig)? {
            return Err(FUniformError::InconsistentExtension(n));
        }
        theories.push(t);
    }
    rho(theories, sig)
}

fn rho(mut theories: Vec<Vec<Sentence>>, sig: Signature) -> Result<Sentence, FUniformError> {
    let Some(last) = theories.pop() else {
        return Ok(Sentence::top(sig));
    };
    for t in theories.iter_mut() {
        let mut merged = t.clone();
        merged.extend(last.iter().cloned());
        if consistent(&merged, sig)? {
            *t = merged;
            return rho(theories, sig);
        }
    }
    let phi = Sentence::conj_or_top(sig, &last).map_err(DecideError::from)?;
    let r = ef_witness(&phi)?;
    let prev = rho(theories, sig)?;
    let both = |a: &Sentence, b: &Sentence| a.and(b).map_err(DecideError::from);
    let out = both(&r, &phi)?.or(&both(&prev, &phi.not())?).map_err(DecideError::from)?;
    Ok(out)
}
