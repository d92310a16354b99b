//! Succ°: zero and successor with at most one cycle of each size.
//!
//! A model is the spine `0, S0, SS0, ...` plus at most one cycle per size
//! (`Z`-chains are invisible to first-order sentences and are left out). Every
//! sentence is equivalent to a Boolean combination of the cycle sentences
//! `C_n`; normal forms are read off semantically by sweeping cycle sets.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use super::{q_max, DecideError, Verdict};
use crate::syntax::{cycle_formula, Formula, Sentence, Signature, SyntaxError, Term, TermBase};

/// Largest number of cycle sizes swept for one quantified subsentence.
const SWEEP_MAX: u32 = 12;
/// Largest number of distinct cycle atoms in one decision.
const ATOMS_MAX: usize = 20;

/// A model shape: the spine plus one cycle of each listed size.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CycleSpec {
    pub cycles: BTreeSet<u32>,
}

impl CycleSpec {
    pub fn new(cycles: impl IntoIterator<Item = u32>) -> CycleSpec {
        CycleSpec { cycles: cycles.into_iter().filter(|&n| n >= 1).collect() }
    }
}

/// A Boolean formula over the cycle sentences `C_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolCombo {
    Const(bool),
    Cycle(u32),
    Not(Box<BoolCombo>),
    And(Box<BoolCombo>, Box<BoolCombo>),
    Or(Box<BoolCombo>, Box<BoolCombo>),
}

impl BoolCombo {
    pub fn not(self) -> BoolCombo {
        match self {
            BoolCombo::Const(b) => BoolCombo::Const(!b),
            BoolCombo::Not(a) => *a,
            a => BoolCombo::Not(Box::new(a)),
        }
    }

    pub fn and(self, b: BoolCombo) -> BoolCombo {
        match (self, b) {
            (BoolCombo::Const(false), _) | (_, BoolCombo::Const(false)) => BoolCombo::Const(false),
            (BoolCombo::Const(true), x) | (x, BoolCombo::Const(true)) => x,
            (a, b) => BoolCombo::And(Box::new(a), Box::new(b)),
        }
    }

    pub fn or(self, b: BoolCombo) -> BoolCombo {
        match (self, b) {
            (BoolCombo::Const(true), _) | (_, BoolCombo::Const(true)) => BoolCombo::Const(true),
            (BoolCombo::Const(false), x) | (x, BoolCombo::Const(false)) => x,
            (a, b) => BoolCombo::Or(Box::new(a), Box::new(b)),
        }
    }

    pub fn eval(&self, has: &dyn Fn(u32) -> bool) -> bool {
        match self {
            BoolCombo::Const(b) => *b,
            BoolCombo::Cycle(n) => has(*n),
            BoolCombo::Not(a) => !a.eval(has),
            BoolCombo::And(a, b) => a.eval(has) && b.eval(has),
            BoolCombo::Or(a, b) => a.eval(has) || b.eval(has),
        }
    }

    pub fn eval_in(&self, m: &CycleSpec) -> bool {
        self.eval(&|n| m.cycles.contains(&n))
    }

    pub fn mentioned(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.mentioned_into(&mut out);
        out
    }

    fn mentioned_into(&self, out: &mut BTreeSet<u32>) {
        match self {
            BoolCombo::Const(_) => {}
            BoolCombo::Cycle(n) => {
                out.insert(*n);
            }
            BoolCombo::Not(a) => a.mentioned_into(out),
            BoolCombo::And(a, b) | BoolCombo::Or(a, b) => {
                a.mentioned_into(out);
                b.mentioned_into(out);
            }
        }
    }

    /// The combination written with the cycle sentences.
    pub fn to_sentence(&self) -> Sentence {
        let f = |c: &BoolCombo| c.to_sentence().into_body();
        Sentence::of(
            Signature::Succ,
            match self {
                BoolCombo::Const(true) => Formula::Top,
                BoolCombo::Const(false) => Formula::Bottom,
                BoolCombo::Cycle(n) => cycle_formula(*n),
                BoolCombo::Not(a) => f(a).not(),
                BoolCombo::And(a, b) => f(a).and(f(b)),
                BoolCombo::Or(a, b) => f(a).or(f(b)),
            },
        )
    }

    /// Shannon expansion of `f` over `vars`, skipping variables it ignores.
    fn shannon(vars: &[u32], f: &dyn Fn(&BTreeSet<u32>) -> bool) -> BoolCombo {
        fn go(vars: &[u32], on: &mut BTreeSet<u32>, f: &dyn Fn(&BTreeSet<u32>) -> bool) -> BoolCombo {
            let Some((&v, rest)) = vars.split_first() else {
                return BoolCombo::Const(f(on));
            };
            on.insert(v);
            let hi = go(rest, on, f);
            on.remove(&v);
            let lo = go(rest, on, f);
            let c = BoolCombo::Cycle(v);
            if hi == lo {
                return hi;
            }
            match (&hi, &lo) {
                (BoolCombo::Const(true), _) => c.or(lo),
                (BoolCombo::Const(false), _) => c.not().and(lo),
                (_, BoolCombo::Const(true)) => c.not().or(hi),
                (_, BoolCombo::Const(false)) => c.and(hi),
                _ => c.clone().and(hi).or(c.not().and(lo)),
            }
        }
        go(vars, &mut BTreeSet::new(), f)
    }
}

impl std::fmt::Display for BoolCombo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_sentence())
    }
}

/// `C_n`: there is a cycle of size exactly `n`.
pub fn succ_cycle_sentence(n: u32) -> Result<Sentence, SyntaxError> {
    if n == 0 {
        return Err(SyntaxError::Invalid("cycle size must be at least 1".into()));
    }
    Ok(Sentence::of(Signature::Succ, cycle_formula(n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Elem {
    Spine(u64),
    /// position within the cycle of the given size
    Cyc(u32, u32),
}

fn term_value(t: &Term, env: &[(u32, Elem)]) -> Elem {
    let base = match t.base {
        TermBase::Zero => Elem::Spine(0),
        TermBase::Var(v) => env.iter().rev().find(|(w, _)| *w == v).expect("closed formula").1,
    };
    match base {
        Elem::Spine(k) => Elem::Spine(k + t.succs as u64),
        Elem::Cyc(n, i) => Elem::Cyc(n, ((i as u64 + t.succs as u64) % n as u64) as u32),
    }
}

/// Evaluates `f` with each quantifier ranging over the candidates `dom` offers.
fn eval(f: &Formula, env: &mut Vec<(u32, Elem)>, dom: &dyn Fn(&Formula, &[(u32, Elem)]) -> Vec<Elem>) -> bool {
    use Formula::*;
    match f {
        Top => true,
        Bottom => false,
        Atom(_) => unreachable!("succ sentences have no atoms"),
        Eq(s, t) => term_value(s, env) == term_value(t, env),
        Not(a) => !eval(a, env, dom),
        And(a, b) => eval(a, env, dom) && eval(b, env, dom),
        Or(a, b) => eval(a, env, dom) || eval(b, env, dom),
        Implies(a, b) => !eval(a, env, dom) || eval(b, env, dom),
        Iff(a, b) => eval(a, env, dom) == eval(b, env, dom),
        Forall(v, a) | Exists(v, a) => {
            let want = matches!(f, Exists(..));
            for e in dom(a, env) {
                env.push((*v, e));
                let r = eval(a, env, dom);
                env.pop();
                if r == want {
                    return want;
                }
            }
            !want
        }
    }
}

fn cycle_elems(m: &CycleSpec, out: &mut Vec<Elem>) {
    for &n in &m.cycles {
        out.extend((0..n).map(|i| Elem::Cyc(n, i)));
    }
}

fn depth_of(phi: &Formula) -> u64 {
    phi.succ_depth().max(1) as u64
}

/// Spine radius the brute-force model check needs for rank `q` and term depth `d`.
pub fn model_radius(q: u32, d: u32) -> u64 {
    (d.max(1) as u64 + 1) << (q + 2)
}

/// Largest cycle size a sentence of rank `q` and term depth `d` can see.
pub fn cycle_bound(q: u32, d: u32) -> u32 {
    if q == 0 {
        0
    } else {
        d.max(1) << (q - 1)
    }
}

/// Truth of `phi` in the model `m`, by brute force over a truncated spine.
///
/// A quantifier at nesting depth `k` ranges over spine elements below
/// `(k + 1) * radius` and over every cycle element of `m`.
pub fn succ_model_check(m: &CycleSpec, phi: &Sentence, radius: u64) -> Result<bool, DecideError> {
    check_succ(phi)?;
    let f = phi.body();
    let required = model_radius(f.quantifier_rank(), f.succ_depth());
    if radius < required {
        return Err(DecideError::RadiusTooSmall { radius, required });
    }
    let dom = |_: &Formula, env: &[(u32, Elem)]| {
        let limit = (env.len() as u64 + 1) * radius;
        let mut out: Vec<Elem> = (0..limit).map(Elem::Spine).collect();
        cycle_elems(m, &mut out);
        out
    };
    Ok(eval(f, &mut Vec::new(), &dom))
}

/// Evaluation with small local candidate sets: spine elements near 0 or near
/// an earlier choice, one far spine element, and one representative of each
/// cycle that holds no earlier choice.
fn eval_local(f: &Formula, m: &CycleSpec, d: u64) -> bool {
    let dom = |body: &Formula, env: &[(u32, Elem)]| {
        let reach = (d + 1) << (body.quantifier_rank() + 1);
        let mut anchors: BTreeSet<u64> = BTreeSet::from([0]);
        let mut used: BTreeSet<u32> = BTreeSet::new();
        for (_, e) in env {
            match e {
                Elem::Spine(k) => {
                    anchors.insert(*k);
                }
                Elem::Cyc(n, _) => {
                    used.insert(*n);
                }
            }
        }
        let mut near = BTreeSet::new();
        for &a in &anchors {
            near.extend(a.saturating_sub(reach)..=a + reach);
        }
        let far = anchors.iter().max().expect("has 0") + reach + 1;
        let mut out: Vec<Elem> = near.into_iter().map(Elem::Spine).collect();
        out.push(Elem::Spine(far));
        for &n in &m.cycles {
            if used.contains(&n) {
                out.extend((0..n).map(|i| Elem::Cyc(n, i)));
            } else {
                out.push(Elem::Cyc(n, 0));
            }
        }
        out
    };
    eval(f, &mut Vec::new(), &dom)
}

fn check_succ(phi: &Sentence) -> Result<(), DecideError> {
    if phi.sig() != Signature::Succ {
        return Err(SyntaxError::SignatureMismatch { expected: Signature::Succ, found: phi.sig() }.into());
    }
    Ok(())
}

fn check_rank(f: &Formula) -> Result<(), DecideError> {
    let (rank, max) = (f.quantifier_rank(), q_max());
    if rank > max {
        return Err(DecideError::RankTooHigh { rank, max });
    }
    Ok(())
}

/// Normal form of a closed quantified formula by sweeping cycle sets.
fn quantified_nf(f: &Formula) -> Result<BoolCombo, DecideError> {
    let q = f.quantifier_rank();
    let d = depth_of(f);
    let bound = cycle_bound(q, d as u32);
    if q == 1 {
        // a single quantifier over a quantifier-free body: the body's truth on
        // a cycle element depends only on the cycle size
        let (v, body, exists) = match f {
            Formula::Exists(v, b) => (*v, &**b, true),
            Formula::Forall(v, b) => (*v, &**b, false),
            _ => unreachable!("rank 1 at the root"),
        };
        let on_spine = eval_local(f, &CycleSpec::default(), d);
        if on_spine == exists {
            return Ok(BoolCombo::Const(exists));
        }
        let mut acc = BoolCombo::Const(!exists);
        for n in 1..=bound {
            let holds = eval(body, &mut vec![(v, Elem::Cyc(n, 0))], &|_, _| unreachable!("quantifier-free"));
            if holds == exists {
                let c = BoolCombo::Cycle(n);
                acc = if exists { acc.or(c) } else { acc.and(c.not()) };
            }
        }
        return Ok(acc);
    }
    if bound > SWEEP_MAX {
        return Err(DecideError::TooDeep(bound));
    }
    let sizes: Vec<u32> = (1..=bound).collect();
    Ok(BoolCombo::shannon(&sizes, &|on| eval_local(f, &CycleSpec { cycles: on.clone() }, d)))
}

thread_local! {
    static NF_CACHE: RefCell<HashMap<Formula, BoolCombo>> = RefCell::new(HashMap::new());
}

fn nf(f: &Formula) -> Result<BoolCombo, DecideError> {
    use Formula::*;
    Ok(match f {
        Top => BoolCombo::Const(true),
        Bottom => BoolCombo::Const(false),
        Atom(_) => return Err(DecideError::Malformed),
        Eq(s, t) => BoolCombo::Const(term_value(s, &[]) == term_value(t, &[])),
        Not(a) => nf(a)?.not(),
        And(a, b) => nf(a)?.and(nf(b)?),
        Or(a, b) => nf(a)?.or(nf(b)?),
        Implies(a, b) => nf(a)?.not().or(nf(b)?),
        Iff(a, b) => {
            let (a, b) = (nf(a)?, nf(b)?);
            a.clone().and(b.clone()).or(a.not().and(b.not()))
        }
        Forall(..) | Exists(..) => {
            if let Some(c) = NF_CACHE.with(|c| c.borrow().get(f).cloned()) {
                return Ok(c);
            }
            let c = quantified_nf(f)?;
            NF_CACHE.with(|cache| {
                let mut cache = cache.borrow_mut();
                if cache.len() >= 4096 {
                    cache.clear();
                }
                cache.insert(f.clone(), c.clone());
            });
            c
        }
    })
}

/// Equivalent Boolean combination of cycle sentences.
pub fn succ_normal_form(phi: &Sentence) -> Result<BoolCombo, DecideError> {
    check_succ(phi)?;
    check_rank(phi.body())?;
    let c = nf(phi.body())?;
    let vars: Vec<u32> = c.mentioned().into_iter().collect();
    if vars.len() <= SWEEP_MAX as usize {
        Ok(BoolCombo::shannon(&vars, &|on| c.eval(&|n| on.contains(&n))))
    } else {
        Ok(c)
    }
}

/// Decides `phi` over Succ° plus `ext`; the `C_n` are mutually independent.
pub fn succ_decide(ext: &[Sentence], phi: &Sentence) -> Result<Verdict, DecideError> {
    let hyps = ext.iter().map(succ_normal_form).collect::<Result<Vec<_>, _>>()?;
    let goal = succ_normal_form(phi)?;
    let mut vars = goal.mentioned();
    for h in &hyps {
        vars.extend(h.mentioned());
    }
    if vars.len() > ATOMS_MAX {
        return Err(DecideError::TooManyAtoms);
    }
    let vars: Vec<u32> = vars.into_iter().collect();
    let (mut consistent, mut sometimes_true, mut sometimes_false) = (false, false, false);
    for mask in 0u64..1 << vars.len() {
        let has = |n: u32| vars.iter().position(|&v| v == n).is_some_and(|i| mask >> i & 1 == 1);
        if hyps.iter().all(|h| h.eval(&has)) {
            consistent = true;
            if goal.eval(&has) {
                sometimes_true = true;
            } else {
                sometimes_false = true;
            }
        }
    }
    Ok(match (consistent, sometimes_true, sometimes_false) {
        (false, _, _) => Verdict::Inconsistent,
        (true, true, false) => Verdict::Provable,
        (true, false, true) => Verdict::Refutable,
        _ => Verdict::Independent,
    })
}

/// `C_k` for the least `k` not occurring in the normal form of `phi`.
pub fn succ_ef_witness(phi: &Sentence) -> Result<Sentence, DecideError> {
    let used = succ_normal_form(phi)?.mentioned();
    let k = (1u32..).find(|k| !used.contains(k)).expect("finitely many");
    Ok(succ_cycle_sentence(k).expect("k >= 1"))
}
