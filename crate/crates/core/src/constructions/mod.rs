//! Proofs that "effectively find" something, run as index transformers.
//!
//! Theories here are a decidable base (propositional logic or Succ°) plus an
//! axiom set. The base plays the part of pure logic: `0_U` is the base with no
//! axioms. Every construction builds real machine indices; reports are
//! produced by running them under explicit budgets.

mod chain;
mod ef;
pub mod fixtures;
mod heredity;
mod pourel;
mod theory;

use serde::Serialize;

use crate::cesets::CeSet;
use crate::kernel::{run, Nat, Outcome};
use crate::syntax::{ungoedel, Sentence};
use crate::theories::{DecideError, TheoryPresentation};

pub use chain::{
    a_to_b, b_to_c, c_to_d, d_to_e, e_to_f, ehrenfeucht_a_to_b, ehrenfeucht_chain, f_to_a, sentence_ei_fixture,
    sequence_enumeration, separation_guard, totalize_pair, widen_pair,
};
pub use ef::{
    ef_lift, f_uniform_independent, keukensmurf_refute, tuinsmurf_probe, tuinsmurf_shift, wrong_lift, FUniformError,
    MonoConsistency, RefutationOutcome,
};
pub use heredity::{
    domi_combine, eehc1_normalize, eehc2_hered_to_strong, eehc2_strong_to_hered, eehc3_construct, productive_fixture,
    strong_to_hered_witness, subtraction_map, Direction, DomiResult, HeredityResult, JUNK,
};
pub use pourel::{
    double_generative_construct, lift_to_closure, pourel_construct, pourel_witness, smullyan_embed, smullyan_report,
    smullyan_theory, Construction,
};
pub use theory::{axiom_index, base_conj, theory_set, theory_template, Polarity};

/// What a witness index claims to compute, and how its arguments are packed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    /// `⌜φ⌝ ↦ ψ`
    EfWitness,
    /// index of a finite extension `↦ ψ`
    IfWitness,
    /// `pair(i, j) ↦ ψ`
    EIWitness,
    /// index of a sequence or mono-theory `↦ ψ`
    UniformWitness,
    /// `pair(i, j) ↦ ψ`, total
    DoubleGenerator,
    /// `pair(i, j) ↦ ψ`, total
    StrongDoubleGenerator,
    /// index `↦ ψ`
    Creative,
    /// `pair(i, pair(j, k)) ↦ ψ`, or `pair(i, j) ↦ ψ` in the two-argument form
    HereditaryCreative,
    /// `n ↦ ψ`
    SemiReduction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFunction {
    pub e: Nat,
    pub role: Role,
    pub claims: String,
}

impl WitnessFunction {
    pub fn new(e: Nat, role: Role, claims: impl Into<String>) -> WitnessFunction {
        WitnessFunction { e, role, claims: claims.into() }
    }

    pub fn eval(&self, x: &Nat, steps: u64) -> Outcome {
        run(&self.e, x, steps)
    }
}

/// The named maps from axiom sets to sentence sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedMap {
    /// `[X]_U`: sentences `U`-provably equivalent to a member of `X`.
    Closure(CeSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintClass {
    ConstantSet(CeSet),
    MapHandle(NamedMap),
}

impl ConstraintClass {
    /// Budgeted membership of `phi` in the class at `u`.
    pub fn contains(&self, u: &TheoryPresentation, phi: &Sentence, steps: u64) -> bool {
        match self {
            ConstraintClass::ConstantSet(x) => run(&x.e, &phi.goedel(), steps).converged(),
            ConstraintClass::MapHandle(NamedMap::Closure(x)) => {
                let lifted = lift_to_closure_set(u, x);
                run(&lifted, &phi.goedel(), steps).converged()
            }
        }
    }

    /// An index for the class at `u`.
    pub fn index(&self, u: &TheoryPresentation) -> Nat {
        match self {
            ConstraintClass::ConstantSet(x) => x.e.clone(),
            ConstraintClass::MapHandle(NamedMap::Closure(x)) => lift_to_closure_set(u, x),
        }
    }
}

fn lift_to_closure_set(u: &TheoryPresentation, x: &CeSet) -> Nat {
    pourel::closure_set(u, x)
}

/// Step and stage budgets; every construction takes one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Steps for evaluating a witness.
    pub steps: u64,
    /// Steps per membership query when enumerating a constructed set.
    pub stages: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { steps: 1_000_000, stages: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Step at which `subject` was first certified, if within budget.
    Stage { subject: String, stage: Option<u64> },
    Verdict { subject: String, verdict: String },
    /// One probe of a constructed set against its displayed definition.
    Probe { set: String, sentence: String, expected: bool, observed: bool },
    Value { subject: String, value: Option<String> },
}

/// Which case of a case analysis fired, with the data certifying it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub construction: String,
    pub branch: String,
    pub value: Option<String>,
    pub certificates: Vec<Certificate>,
}

impl BranchReport {
    pub fn new(construction: &str, branch: &str, value: Option<String>) -> BranchReport {
        BranchReport { construction: construction.into(), branch: branch.into(), value, certificates: vec![] }
    }

    /// Probes whose observed membership differs from the displayed definition.
    pub fn mismatches(&self) -> Vec<&Certificate> {
        self.certificates
            .iter()
            .filter(|c| matches!(c, Certificate::Probe { expected, observed, .. } if expected != observed))
            .collect()
    }

    pub fn probes(&self) -> usize {
        self.certificates.iter().filter(|c| matches!(c, Certificate::Probe { .. })).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// A code shown as a sentence when it is one, else as a number.
pub fn show_code(v: &Nat) -> String {
    match ungoedel(v) {
        Some(s) => s.to_string(),
        None => v.to_string(),
    }
}

pub fn show_outcome(o: &Outcome) -> Option<String> {
    o.value().map(show_code)
}

fn verdict_text(v: Result<crate::theories::Verdict, DecideError>) -> String {
    match v {
        Ok(v) => v.name().to_string(),
        Err(e) => format!("ERROR: {e}"),
    }
}

/// `extra` followed by the first sentences of `sig`, without repeats.
fn probe_list(sig: crate::syntax::Signature, extra: &[Sentence]) -> Vec<Sentence> {
    let mut out: Vec<Sentence> = vec![];
    let more = (0..8).map(|k| crate::syntax::nth_sentence(sig, k));
    for s in extra.iter().cloned().chain(more) {
        if s.sig() == sig && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Records observed against expected membership of `probes` in `W_e`.
fn probe_set(report: &mut BranchReport, set: &str, e: &Nat, probes: &[(Sentence, bool)], stages: u64) {
    for (phi, expected) in probes {
        let observed = run(e, &phi.goedel(), stages).converged();
        report.certificates.push(Certificate::Probe {
            set: set.into(),
            sentence: phi.to_string(),
            expected: *expected,
            observed,
        });
    }
}
