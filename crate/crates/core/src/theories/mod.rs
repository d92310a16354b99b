//! Decidable base theories: propositional logic over infinitely many atoms and
//! Succ°, each with a decision procedure and an ef-witness.

mod prop;
mod succ;

use std::cell::Cell;

use thiserror::Error;

use crate::syntax::{mono_consequence, Sentence, SentenceSet, Signature, SyntaxError};

pub use prop::{prop_decide, prop_ef_witness};
pub use succ::{
    cycle_bound, model_radius, succ_cycle_sentence, succ_decide, succ_ef_witness, succ_model_check,
    succ_normal_form, BoolCombo, CycleSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Provable,
    Refutable,
    Independent,
    /// The extension is inconsistent, so everything is provable.
    Inconsistent,
}

impl Verdict {
    pub fn is_provable(self) -> bool {
        matches!(self, Verdict::Provable | Verdict::Inconsistent)
    }

    pub fn is_refutable(self) -> bool {
        matches!(self, Verdict::Refutable | Verdict::Inconsistent)
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Provable => "PROVABLE",
            Verdict::Refutable => "REFUTABLE",
            Verdict::Independent => "INDEPENDENT",
            Verdict::Inconsistent => "PROVABLE (inconsistent)",
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("quantifier rank {rank} exceeds the limit {max}")]
    RankTooHigh { rank: u32, max: u32 },
    #[error("normal form would sweep {0} cycle sizes")]
    TooDeep(u32),
    #[error("radius {radius} below the required {required}")]
    RadiusTooSmall { radius: u64, required: u64 },
    #[error("too many independent atoms")]
    TooManyAtoms,
    #[error("malformed sentence code")]
    Malformed,
}

pub const DEFAULT_Q_MAX: u32 = 3;

thread_local! {
    static Q_MAX: Cell<u32> = const { Cell::new(DEFAULT_Q_MAX) };
}

/// Quantifier-rank limit of the Succ° procedure on this thread.
pub fn q_max() -> u32 {
    Q_MAX.with(|q| q.get())
}

pub fn set_q_max(q: u32) {
    Q_MAX.with(|c| c.set(q));
}

fn same_sig(ext: &[Sentence], phi: &Sentence) -> Result<(), DecideError> {
    match ext.iter().find(|s| s.sig() != phi.sig()) {
        Some(s) => Err(SyntaxError::SignatureMismatch { expected: phi.sig(), found: s.sig() }.into()),
        None => Ok(()),
    }
}

/// Classifies `phi` over the base theory of its signature plus `ext`.
pub fn decide(ext: &[Sentence], phi: &Sentence) -> Result<Verdict, DecideError> {
    same_sig(ext, phi)?;
    match phi.sig() {
        Signature::Prop => prop_decide(ext, phi),
        Signature::Succ => succ_decide(ext, phi),
    }
}

/// A sentence independent of `phi` over the base theory whenever `phi` is consistent.
pub fn ef_witness(phi: &Sentence) -> Result<Sentence, DecideError> {
    match phi.sig() {
        Signature::Prop => Ok(prop_ef_witness(phi)),
        Signature::Succ => succ_ef_witness(phi),
    }
}

pub fn consistent(ext: &[Sentence], sig: Signature) -> Result<bool, DecideError> {
    let v = decide(ext, &Sentence::top(sig))?;
    Ok(v != Verdict::Inconsistent)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Decide finite stages with the base theory's procedure.
    Decidable,
    /// Search single members of the hat for one entailing the goal.
    Budgeted { stages: usize },
}

/// A theory given by a c.e. axiom set over a decidable base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryPresentation {
    pub axioms: SentenceSet,
    pub engine: Engine,
}

impl TheoryPresentation {
    pub fn new(axioms: SentenceSet, engine: Engine) -> TheoryPresentation {
        TheoryPresentation { axioms, engine }
    }

    pub fn sig(&self) -> Signature {
        self.axioms.sig()
    }

    /// Classifies `phi` against the axioms enumerated by stage `s`.
    pub fn classify(&self, phi: &Sentence, s: usize) -> Result<Verdict, DecideError> {
        if phi.sig() != self.sig() {
            return Err(SyntaxError::SignatureMismatch { expected: self.sig(), found: phi.sig() }.into());
        }
        match self.engine {
            Engine::Decidable => decide(&self.axioms.stage(s), phi),
            Engine::Budgeted { stages } => {
                let single = |a: &Sentence, b: &Sentence| {
                    decide(std::slice::from_ref(a), b).map(Verdict::is_provable).unwrap_or(false)
                };
                let stages = stages.min(s);
                let hat = crate::syntax::hat(&self.axioms);
                let bottom = Sentence::bottom(self.sig());
                if mono_consequence(&hat, &bottom, stages, &single).is_entailed() {
                    return Ok(Verdict::Inconsistent);
                }
                let pos = mono_consequence(&hat, phi, stages, &single).is_entailed();
                let neg = mono_consequence(&hat, &phi.not(), stages, &single).is_entailed();
                Ok(match (pos, neg) {
                    (true, true) => Verdict::Inconsistent,
                    (true, false) => Verdict::Provable,
                    (false, true) => Verdict::Refutable,
                    (false, false) => Verdict::Independent,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decide_checks_signatures() {
        let c1 = succ_cycle_sentence(1).unwrap();
        assert!(matches!(decide(&[Sentence::atom(0)], &c1), Err(DecideError::Syntax(_))));
    }

    #[test]
    fn presentation_engines_agree() {
        let ax = SentenceSet::finite(Signature::Prop, vec![Sentence::atom(0), Sentence::atom(1)]).unwrap();
        let goal = Sentence::atom(0).and(&Sentence::atom(1)).unwrap();
        for engine in [Engine::Decidable, Engine::Budgeted { stages: 3 }] {
            let t = TheoryPresentation::new(ax.clone(), engine);
            assert_eq!(t.classify(&goal, 3).unwrap(), Verdict::Provable, "{engine:?}");
            assert_eq!(t.classify(&Sentence::atom(2), 3).unwrap(), Verdict::Independent);
            assert_eq!(t.classify(&Sentence::atom(1).not(), 3).unwrap(), Verdict::Refutable);
        }
    }

    #[test]
    fn q_max_is_configurable() {
        let deep = crate::syntax::parse_sentence("(exists x (exists y (exists z (= x (S y)))))", None).unwrap();
        set_q_max(2);
        assert!(matches!(decide(&[], &deep), Err(DecideError::RankTooHigh { rank: 3, max: 2 })));
        set_q_max(DEFAULT_Q_MAX);
        assert_eq!(decide(&[], &deep).unwrap(), Verdict::Provable);
    }
}
