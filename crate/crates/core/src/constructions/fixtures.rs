//! Engineered inputs that drive each case of the multi-case constructions,
//! and the candidate if-witnesses used against the diagonal refutation.

use crate::cesets::CeSet;
use crate::kernel::recursion::{constant, diverge};
use crate::kernel::Nat;
use crate::syntax::{Sentence, SentenceSet, Signature};
use crate::theories::{Engine, TheoryPresentation};

use super::{
    double_generative_construct, eehc2_hered_to_strong, eehc3_construct, ef_lift, pourel_construct,
    smullyan_report, wrong_lift, Budget, Construction, Role, WitnessFunction,
};

/// Propositional theory with the listed axioms.
pub fn prop_theory(items: Vec<Sentence>) -> TheoryPresentation {
    TheoryPresentation::new(SentenceSet::finite(Signature::Prop, items).expect("prop sentences"), Engine::Decidable)
}

/// Index of the finite set of the listed sentences.
pub fn finite_sentences(items: &[Sentence]) -> Nat {
    CeSet::finite(&items.iter().map(|s| s.goedel()).collect::<Vec<_>>()).e
}

fn konst(s: &Sentence, role: Role) -> WitnessFunction {
    WitnessFunction::new(constant(s.goedel()), role, format!("constant {s}"))
}

type Driver = Box<dyn Fn(Budget) -> Construction>;

/// One case of one construction with the inputs that select it.
pub struct BranchFixture {
    pub construction: &'static str,
    pub branch: &'static str,
    drive: Driver,
}

impl BranchFixture {
    pub fn run(&self, budget: Budget) -> Construction {
        (self.drive)(budget)
    }
}

fn fixture(construction: &'static str, branch: &'static str, drive: Driver) -> BranchFixture {
    BranchFixture { construction, branch, drive }
}

/// Three fixtures per construction, in a fixed order.
pub fn branch_fixtures() -> Vec<BranchFixture> {
    let top = || prop_theory(vec![Sentence::top(Signature::Prop)]);
    let p1 = Sentence::atom(1);
    let some = || finite_sentences(&[Sentence::atom(1)]);
    let none = || finite_sentences(&[]);
    let mut out = vec![];

    let phi = konst(&p1, Role::IfWitness);
    let never = WitnessFunction::new(diverge(), Role::IfWitness, "diverging");
    for (branch, f, i, j) in [
        ("case1", phi.clone(), some(), none()),
        ("case2", phi.clone(), none(), some()),
        ("case3", never, some(), some()),
    ] {
        out.push(fixture("pour-el", branch, Box::new(move |b| pourel_construct(&f, &top(), &i, &j, b))));
    }

    let all = CeSet::everything().e;
    let nothing = CeSet::nothing().e;
    for (branch, i, j) in [("le", all.clone(), nothing.clone()), ("lt", nothing.clone(), all.clone()), ("otherwise", nothing.clone(), nothing.clone())] {
        let f = ef_lift(Signature::Prop, 6);
        out.push(fixture("double-generativity", branch, Box::new(move |b| double_generative_construct(&f, &top(), &i, &j, b))));
    }

    let psi = konst(&p1, Role::HereditaryCreative);
    for (branch, i, j) in [("phi_in_i", some(), none()), ("phi_in_j", none(), some()), ("neutral", none(), none())] {
        let f = psi.clone();
        out.push(fixture("eehc2", branch, Box::new(move |b| eehc2_hered_to_strong(&f, &top(), &i, &j, b))));
    }

    for (branch, i, j) in [("le", some(), none()), ("lt", none(), some()), ("otherwise", none(), none())] {
        let f = psi.clone();
        let u = prop_theory(vec![Sentence::atom(0)]);
        out.push(fixture("eehc3", branch, Box::new(move |b| eehc3_construct(&f, &u, &i, &j, b))));
    }

    let p0 = konst(&Sentence::atom(0), Role::IfWitness);
    let three = CeSet::finite(&[Nat::from(3u32)]);
    for (branch, x, y, n) in [
        ("in_X", three.clone(), CeSet::nothing(), 3u32),
        ("in_Y", CeSet::nothing(), three.clone(), 3),
        ("otherwise", three.clone(), CeSet::nothing(), 5),
    ] {
        let f = p0.clone();
        out.push(fixture(
            "smullyan",
            branch,
            Box::new(move |b| smullyan_report(&f, &top(), &x, &y, &Nat::from(n), b)),
        ));
    }
    out
}

/// Candidate if-witnesses over propositional logic: a lift that ignores its
/// index, constant falsum, and a diverging program.
pub fn if_candidates() -> Vec<WitnessFunction> {
    vec![
        wrong_lift(),
        WitnessFunction::new(constant(Sentence::bottom(Signature::Prop).goedel()), Role::IfWitness, "constant falsum"),
        WitnessFunction::new(diverge(), Role::IfWitness, "diverging"),
    ]
}

/// A random sentence of depth at most `depth`: over atoms `p0..p4` for
/// propositional logic, over the cycle sentences `C1..C4` for Succ°.
pub fn random_sentence(rng: &mut impl rand::Rng, sig: Signature, depth: u32) -> Sentence {
    if depth == 0 || rng.gen_range(0..3) == 0 {
        return match sig {
            Signature::Prop => Sentence::atom(rng.gen_range(0..5)),
            Signature::Succ => crate::theories::succ_cycle_sentence(rng.gen_range(1..5)).expect("small cycle"),
        };
    }
    let a = random_sentence(rng, sig, depth - 1);
    match rng.gen_range(0..3) {
        0 => a.not(),
        1 => a.and(&random_sentence(rng, sig, depth - 1)).expect("same signature"),
        _ => a.or(&random_sentence(rng, sig, depth - 1)).expect("same signature"),
    }
}

/// A random finite extension of one to three sentences that is consistent over the base.
pub fn random_extension(rng: &mut impl rand::Rng, sig: Signature) -> Vec<Sentence> {
    loop {
        let n = rng.gen_range(1..4);
        let ext: Vec<Sentence> = (0..n).map(|_| random_sentence(rng, sig, 2)).collect();
        if crate::theories::consistent(&ext, sig) == Ok(true) {
            return ext;
        }
    }
}
