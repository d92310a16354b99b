//! Propositional logic over atoms `p0, p1, ...` decided by truth tables.

use num_traits::ToPrimitive;

use super::{DecideError, Verdict};
use crate::syntax::{prop_satisfiable, Sentence};

pub fn prop_decide(ext: &[Sentence], phi: &Sentence) -> Result<Verdict, DecideError> {
    let mut items = ext.to_vec();
    if !prop_satisfiable(&items)? {
        // signature of phi still has to match
        prop_satisfiable(std::slice::from_ref(phi))?;
        return Ok(Verdict::Inconsistent);
    }
    items.push(phi.not());
    let provable = !prop_satisfiable(&items)?;
    *items.last_mut().expect("pushed") = phi.clone();
    let refutable = !prop_satisfiable(&items)?;
    Ok(match (provable, refutable) {
        (true, _) => Verdict::Provable,
        (false, true) => Verdict::Refutable,
        (false, false) => Verdict::Independent,
    })
}

/// `p_k` for the least `k` with `p_k` not occurring in `phi`.
pub fn prop_ef_witness(phi: &Sentence) -> Sentence {
    let used = phi.atoms();
    let k = (0u64..)
        .find(|k| !used.iter().any(|a| a.to_u64() == Some(*k)))
        .expect("finitely many atoms");
    Sentence::atom(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_sentence, Signature};

    fn p(s: &str) -> Sentence {
        parse_sentence(s, Some(Signature::Prop)).unwrap()
    }

    #[test]
    fn decide_examples() {
        let p0 = Sentence::atom(0);
        assert_eq!(prop_decide(std::slice::from_ref(&p0), &p0).unwrap(), Verdict::Provable);
        assert_eq!(prop_decide(std::slice::from_ref(&p0), &Sentence::atom(1)).unwrap(), Verdict::Independent);
        assert_eq!(prop_decide(&[p0.clone(), p0.not()], &Sentence::atom(5)).unwrap(), Verdict::Inconsistent);
        assert_eq!(prop_decide(std::slice::from_ref(&p0), &p0.not()).unwrap(), Verdict::Refutable);
        assert_eq!(prop_decide(&[], &p("(or (atom 3) (not (atom 3)))")).unwrap(), Verdict::Provable);
    }

    #[test]
    fn witness_examples() {
        assert_eq!(prop_ef_witness(&p("(and (atom 0) (atom 2))")), Sentence::atom(1));
        assert_eq!(prop_ef_witness(&Sentence::top(Signature::Prop)), Sentence::atom(0));
    }
}
