//! A fixed enumeration of all sentences of a signature, by weight.
//!
//! Weights: constants 1, atom `p_n` is `n + 1`, connectives and quantifiers add
//! 1, a bound variable `v` adds `v + 1`, a term adds its base weight plus one
//! per `S`. Each weight has finitely many sentences, so listing weight by
//! weight reaches every sentence. Raw c.e. sets of sentences are enumerated by
//! dovetailing membership over this list.

use std::cell::RefCell;

use super::{Formula, Sentence, Signature, Term, TermBase};

fn terms_of_weight(w: usize) -> Vec<Term> {
    let mut out = Vec::new();
    for s in 0..w {
        let base_w = w - s;
        if base_w == 1 {
            out.push(Term { base: TermBase::Zero, succs: s as u32 });
        }
        // Var(v) weighs v + 1
        if base_w >= 1 {
            out.push(Term { base: TermBase::Var(base_w as u32 - 1), succs: s as u32 });
        }
    }
    out
}

#[derive(Default)]
struct Table {
    by_weight: Vec<Vec<Formula>>,
    closed: Vec<Sentence>,
    done_weight: usize,
}

impl Table {
    fn weight(&mut self, sig: Signature, w: usize) -> &Vec<Formula> {
        while self.by_weight.len() <= w {
            let k = self.by_weight.len();
            let layer = self.build(sig, k);
            self.by_weight.push(layer);
        }
        &self.by_weight[w]
    }

    fn build(&mut self, sig: Signature, w: usize) -> Vec<Formula> {
        let mut out = Vec::new();
        if w == 0 {
            return out;
        }
        if w == 1 {
            out.push(Formula::Top);
            out.push(Formula::Bottom);
        }
        match sig {
            Signature::Prop => out.push(Formula::atom(w as u64 - 1)),
            Signature::Succ => {
                for lw in 1..w.saturating_sub(1) {
                    let rw = w - 1 - lw;
                    for l in terms_of_weight(lw) {
                        for r in terms_of_weight(rw) {
                            out.push(Formula::eq(l.clone(), r));
                        }
                    }
                }
            }
        }
        for a in self.weight(sig, w - 1).clone() {
            out.push(a.not());
        }
        for lw in 1..w.saturating_sub(1) {
            let rw = w - 1 - lw;
            let ls = self.weight(sig, lw).clone();
            let rs = self.weight(sig, rw).clone();
            for mk in [Formula::and, Formula::or, Formula::implies, Formula::iff] {
                for l in &ls {
                    for r in &rs {
                        out.push(mk(l.clone(), r.clone()));
                    }
                }
            }
        }
        if sig == Signature::Succ {
            for v in 0..w.saturating_sub(2) {
                let bw = w - 2 - v;
                for b in self.weight(sig, bw).clone() {
                    out.push(Formula::forall(v as u32, b.clone()));
                    out.push(Formula::exists(v as u32, b));
                }
            }
        }
        out
    }
}

thread_local! {
    static TABLES: RefCell<[Table; 2]> = RefCell::new([Table::default(), Table::default()]);
}

/// The `k`-th sentence of `sig` in the fixed enumeration.
pub fn nth_sentence(sig: Signature, k: usize) -> Sentence {
    TABLES.with(|t| {
        let mut tables = t.borrow_mut();
        let table = &mut tables[sig.tag() as usize];
        while table.closed.len() <= k {
            table.done_weight += 1;
            let w = table.done_weight;
            let layer = table.weight(sig, w).clone();
            for f in layer {
                if f.free_vars().is_empty() {
                    table.closed.push(Sentence::of(sig, f));
                }
            }
        }
        table.closed[k].clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn prop_prefix_is_distinct_and_starts_small() {
        assert_eq!(nth_sentence(Signature::Prop, 0), Sentence::top(Signature::Prop));
        let first: BTreeSet<_> = (0..2000).map(|k| nth_sentence(Signature::Prop, k)).collect();
        assert_eq!(first.len(), 2000);
        assert!(first.contains(&Sentence::atom(0)));
        assert!(first.contains(&Sentence::atom(0).and(&Sentence::atom(1)).unwrap()));
    }

    #[test]
    fn succ_sentences_are_closed() {
        let first: BTreeSet<_> = (0..500).map(|k| nth_sentence(Signature::Succ, k)).collect();
        assert_eq!(first.len(), 500);
        let c1 = crate::syntax::parse_sentence("(C 1)", None).unwrap();
        assert!((0..50_000).any(|k| nth_sentence(Signature::Succ, k) == c1));
    }
}
