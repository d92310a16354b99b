//! Acceptance suite: ten criteria, one PASS/FAIL line each.
//!
//! Every criterion also appends JSON lines to an archive; the last criterion
//! reruns the others and compares the two archives byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lab::cesets::{kleene_ei_witness, kleene_pair, CeSet};
use lab::constructions::fixtures::{branch_fixtures, if_candidates, prop_theory, random_extension};
use lab::constructions::{
    f_uniform_independent, keukensmurf_refute, tuinsmurf_probe, tuinsmurf_shift, Budget, ConstraintClass,
    RefutationOutcome, Role, WitnessFunction,
};
use lab::kernel::recursion::{body_transformer, constant, identity, project_left, project_right, successor};
use lab::kernel::{double_fix, fix, nat, pack, pair, run, smn, Asm, Nat, Outcome};
use lab::natives::Native;
use lab::syntax::{hat, Formula, Sentence, SentenceSet, Signature, Term};
use lab::theories::{
    decide, ef_witness, model_radius, succ_model_check, succ_normal_form, CycleSpec, Engine, TheoryPresentation,
    Verdict,
};

type Archive = Vec<String>;
type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- criterion 1

const B1: u64 = 1_000_000;

/// Two-argument programs reading `pair(x, y)`.
fn pair_programs() -> Vec<Nat> {
    let mut add = Asm::new();
    let lp = add.label();
    let done = add.label();
    add.unpair_l(1, 0).unpair_r(0, 0);
    add.place(lp);
    add.decjz(1, done).inc(0).jmp(lp);
    add.place(done);
    add.halt();
    let mut swap = Asm::new();
    swap.unpair_l(1, 0).unpair_r(2, 0).pair(0, 2, 1).halt();
    let mut odd_loop = Asm::new();
    // diverges when x is odd, else returns y
    let top = odd_loop.label();
    let even = odd_loop.label();
    let spin = odd_loop.label();
    odd_loop.unpair_l(1, 0).unpair_r(0, 0);
    odd_loop.place(top);
    odd_loop.decjz(1, even).decjz(1, spin).jmp(top);
    odd_loop.place(spin);
    odd_loop.jmp(spin);
    odd_loop.place(even);
    odd_loop.halt();
    let mut neg = Asm::new();
    neg.unpair_r(0, 0).call(0, Native::Neg, 0).halt();
    vec![project_left(), project_right(), add.code(), swap.code(), odd_loop.code(), neg.code(), identity()]
}

/// Ten transformers reading `pair(params, self)`, with their parameters.
fn transformer_corpus() -> Vec<(&'static str, Nat, Vec<Nat>)> {
    let body = |f: &dyn Fn(&mut Asm)| {
        let mut a = Asm::new();
        f(&mut a);
        body_transformer(&a.code())
    };
    // body input: pair(pair(p, self), y)
    let quine = body(&|a| {
        a.unpair_l(0, 0).unpair_r(0, 0).halt();
    });
    let param = body(&|a| {
        a.unpair_l(0, 0).unpair_l(0, 0).halt();
    });
    let add_param = body(&|a| {
        let lp = a.label();
        let done = a.label();
        a.unpair_l(1, 0).unpair_l(1, 1).unpair_r(0, 0);
        a.place(lp);
        a.decjz(1, done).inc(0).jmp(lp);
        a.place(done);
        a.halt();
    });
    let double = body(&|a| {
        // φ_self(y) = 0 if y = 0, else φ_self(y - 1) + 2
        let zero = a.label();
        a.unpair_l(1, 0).unpair_r(1, 1).unpair_r(0, 0).decjz(0, zero).univ(0, 1, 0).inc(0).inc(0).halt();
        a.place(zero);
        a.konst(0, 0u32).halt();
    });
    let parity = body(&|a| {
        // y when y is even, diverge when odd
        let top = a.label();
        let even = a.label();
        let spin = a.label();
        a.unpair_r(0, 0).copy(1, 0);
        a.place(top);
        a.decjz(1, even).decjz(1, spin).jmp(top);
        a.place(spin);
        a.jmp(spin);
        a.place(even);
        a.halt();
    });
    let with_self = body(&|a| {
        a.unpair_l(1, 0).unpair_r(1, 1).unpair_r(0, 0).pair(0, 1, 0).halt();
    });
    let mut smn_self = Asm::new();
    // t(pair(p, e)) = smn(identity, e): φ(y) = pair(e, y)
    smn_self.unpair_r(0, 0).konst(1, identity()).smn(0, 1, 0).halt();
    let mut endless = Asm::new();
    // t(pair(p, e)) = index of y ↦ φ_e(y) + 1, which never bottoms out
    endless.unpair_r(1, 0).pair(1, 1, 1).konst(2, successor()).konst(3, compose_template()).pair(2, 2, 1);
    endless.smn(0, 3, 2).halt();
    vec![
        ("constant identity", constant(identity()), vec![]),
        ("constant successor", constant(successor()), vec![]),
        ("quine", quine, vec![]),
        ("parameter", param, vec![nat(42)]),
        ("add parameter", add_param, vec![nat(5)]),
        ("self-recursive doubling", double, vec![]),
        ("even or diverge", parity, vec![]),
        ("pair with self", with_self, vec![nat(1), nat(2)]),
        ("smn of self", smn_self.code(), vec![]),
        ("endless self-successor", endless.code(), vec![]),
    ]
}

/// Template on `pair(f, pair(g, g))` computing `y ↦ φ_f(φ_g(y))`.
fn compose_template() -> Nat {
    let mut a = Asm::new();
    a.unpair_l(1, 0).unpair_r(2, 0).unpair_l(2, 2).unpair_r(0, 0).univ(0, 2, 0).univ(0, 1, 0).halt();
    a.code()
}

fn agree(a: &Nat, b: &Nat, probes: u64) -> Result<(), String> {
    for y in 0..probes {
        let (l, r) = (run(a, &nat(y), B1), run(b, &nat(y), B1));
        // the fixed point spends a few more steps than its unfolding
        let r_more = run(b, &nat(y), B1 + 1000);
        let l_more = run(a, &nat(y), B1 + 1000);
        let ok = match (&l, &r) {
            (Outcome::Converged(x), _) => r_more == Outcome::Converged(x.clone()),
            (Outcome::Exhausted, Outcome::Converged(_)) => l_more == r,
            (Outcome::Exhausted, Outcome::Exhausted) => true,
        };
        ensure(ok, || format!("probe {y}: {l:?} vs {r:?}"))?;
    }
    Ok(())
}

fn criterion1(archive: &mut Archive) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let progs = pair_programs();
    let mut converged = 0;
    for k in 0..200 {
        let e = &progs[rng.gen_range(0..progs.len())];
        let (x, y) = (nat(rng.gen_range(0..50)), nat(rng.gen_range(0..50)));
        let direct = run(e, &pair(&x, &y), B1);
        let via = run(&smn(e, &x), &y, B1 + 3);
        if let Outcome::Converged(v) = &direct {
            converged += 1;
            ensure(via == direct, || format!("smn probe {k}: {via:?} vs {v}"))?;
        } else {
            ensure(!via.converged(), || format!("smn probe {k}: converged without the direct run"))?;
        }
        archive.push(format!("{{\"c\":1,\"smn\":{k},\"value\":{:?}}}", direct.value().map(|v| v.to_string())));
    }
    let corpus = transformer_corpus();
    for (name, t, params) in &corpus {
        let e = fix(t, params);
        let unfolded = run(t, &pair(&pack(params), &e), B1).value().cloned().ok_or(format!("{name}: transformer diverged"))?;
        agree(&e, &unfolded, 10).map_err(|m| format!("fix {name}: {m}"))?;
        let values: Vec<_> = (0..10u64).map(|y| run(&e, &nat(y), B1).value().map(|v| v.bits())).collect();
        archive.push(format!("{{\"c\":1,\"fix\":{name:?},\"bits\":{values:?}}}"));
    }
    for k in 0..corpus.len() {
        let (n0, t0, p) = &corpus[k];
        let (n1, t1, _) = &corpus[(k + 1) % corpus.len()];
        let (e0, e1) = double_fix(t0, t1, p);
        let input = pair(&pack(p), &pair(&e0, &e1));
        for (b, t, e) in [(0, t0, &e0), (1, t1, &e1)] {
            let unfolded = run(t, &input, B1).value().cloned().ok_or(format!("{n0}/{n1}: transformer diverged"))?;
            agree(e, &unfolded, 10).map_err(|m| format!("double_fix {n0}/{n1} component {b}: {m}"))?;
        }
    }
    Ok(format!("200 s-m-n probes ({converged} converged), 10 fix and 10 double_fix transformers on probes 0..9"))
}

// ---------------------------------------------------------------- criterion 2

/// Truth table over `p0..p3` as a 16-bit mask; bit `v` is the value under valuation `v`.
fn table(f: &Formula) -> u16 {
    match f {
        Formula::Top => 0xffff,
        Formula::Bottom => 0,
        Formula::Atom(n) => {
            let k: u32 = n.try_into().expect("small atom");
            (0..16u16).filter(|v| v >> k & 1 == 1).fold(0, |m, v| m | 1 << v)
        }
        Formula::Not(a) => !table(a),
        Formula::And(a, b) => table(a) & table(b),
        Formula::Or(a, b) => table(a) | table(b),
        Formula::Implies(a, b) => !table(a) | table(b),
        Formula::Iff(a, b) => !(table(a) ^ table(b)),
        _ => panic!("not propositional"),
    }
}

/// One formula of least depth for each truth table reachable within `depth`.
fn tables_up_to(depth: u32) -> BTreeMap<u16, Formula> {
    let mut reps: BTreeMap<u16, Formula> = BTreeMap::new();
    let mut leaves = vec![Formula::Top, Formula::Bottom];
    leaves.extend((0..4).map(Formula::atom));
    for f in leaves {
        reps.entry(table(&f)).or_insert(f);
    }
    for _ in 0..depth {
        let prev: Vec<Formula> = reps.values().cloned().collect();
        let mut next = reps.clone();
        for a in &prev {
            next.entry(!table(a)).or_insert_with(|| a.clone().not());
        }
        for a in &prev {
            for b in &prev {
                let (x, y) = (table(a), table(b));
                for (m, f) in [
                    (x & y, Formula::And as fn(Box<Formula>, Box<Formula>) -> Formula),
                    (x | y, Formula::Or),
                    (!x | y, Formula::Implies),
                    (!(x ^ y), Formula::Iff),
                ] {
                    next.entry(m).or_insert_with(|| f(Box::new(a.clone()), Box::new(b.clone())));
                }
            }
        }
        reps = next;
    }
    reps
}

fn criterion2(archive: &mut Archive) -> Check {
    let p = |k| Sentence::atom(k);
    let pool = [p(0),
        p(1).not(),
        p(0).or(&p(2)).unwrap(),
        p(1).implies(&p(3)).unwrap(),
        p(2).and(&p(3)).unwrap().not(),
        p(0).iff(&p(1)).unwrap()];
    let mut fixtures: Vec<Vec<Sentence>> = vec![];
    for a in 0..pool.len() {
        fixtures.push(vec![pool[a].clone()]);
        for b in a + 1..pool.len() {
            fixtures.push(vec![pool[a].clone(), pool[b].clone()]);
            for c in b + 1..pool.len() {
                fixtures.push(vec![pool[a].clone(), pool[b].clone(), pool[c].clone()]);
            }
        }
    }
    let reps = tables_up_to(3);
    let mut checked = 0usize;
    for ax in &fixtures {
        let u = SentenceSet::finite(Signature::Prop, ax.clone()).unwrap();
        let members = hat(&u).stage(ax.len());
        let member_tables: Vec<u16> = members.iter().map(|s| table(s.body())).collect();
        let theory = ax.iter().fold(0xffffu16, |m, s| m & table(s.body()));
        let mut provable = 0;
        for (&m, f) in &reps {
            let phi = Sentence::prop(f.clone());
            let proves = decide(ax, &phi).map_err(|e| e.to_string())?.is_provable();
            let mono = member_tables.iter().any(|&t| t & !m == 0);
            ensure(proves == mono, || format!("U = {ax:?}, phi = {phi}: U proves {proves}, hat mono-proves {mono}"))?;
            ensure(proves == (theory & !m == 0), || format!("decision procedure disagrees with truth tables on {phi}"))?;
            provable += proves as usize;
            checked += 1;
        }
        archive.push(format!("{{\"c\":2,\"axioms\":{},\"hat\":{},\"provable\":{provable}}}", ax.len(), members.len()));
    }
    // the empty theory proves the tautologies while its hat is empty
    let empty = hat(&SentenceSet::empty(Signature::Prop)).stage(3);
    ensure(empty.is_empty(), || "hat of the empty set is not empty".into())?;
    let top = hat(&SentenceSet::finite(Signature::Prop, vec![Sentence::top(Signature::Prop)]).unwrap()).stage(1);
    for (&m, f) in &reps {
        let phi = Sentence::prop(f.clone());
        let proves = decide(&[], &phi).map_err(|e| e.to_string())?.is_provable();
        ensure(proves == (m == 0xffff), || format!("empty theory on {phi}: {proves}"))?;
        let mono = top.iter().any(|s| table(s.body()) & !m == 0);
        ensure(proves == mono, || format!("U = {{top}}, phi = {phi}: U proves {proves}, hat mono-proves {mono}"))?;
    }
    Ok(format!(
        "{} fixtures with 1 to 3 axioms x {} truth tables of depth <= 3 ({checked} pairs), zero discrepancies; \
         the axiom-free theory differs exactly on tautologies while {{top}} has none",
        fixtures.len(),
        reps.len()
    ))
}

// ---------------------------------------------------------------- criterion 3

fn succ_term(rng: &mut ChaCha8Rng, bound: &[u32]) -> Term {
    let base = if bound.is_empty() || rng.gen_range(0..4) == 0 { Term::zero() } else { Term::var(bound[rng.gen_range(0..bound.len())]) };
    base.s(rng.gen_range(0..3))
}

fn succ_formula(rng: &mut ChaCha8Rng, bound: &mut Vec<u32>, rank: u32, depth: u32) -> Formula {
    let pick = if depth == 0 { 0 } else { rng.gen_range(0..6) };
    match pick {
        0 => Formula::eq(succ_term(rng, bound), succ_term(rng, bound)),
        1 => succ_formula(rng, bound, rank, depth - 1).not(),
        2 => succ_formula(rng, bound, rank, depth - 1).and(succ_formula(rng, bound, rank, depth - 1)),
        3 => succ_formula(rng, bound, rank, depth - 1).or(succ_formula(rng, bound, rank, depth - 1)),
        _ if rank == 0 => Formula::eq(succ_term(rng, bound), succ_term(rng, bound)),
        k => {
            let v = bound.len() as u32;
            bound.push(v);
            let b = succ_formula(rng, bound, rank - 1, depth - 1);
            bound.pop();
            if k == 4 {
                Formula::exists(v, b)
            } else {
                Formula::forall(v, b)
            }
        }
    }
}

/// Distinct Succ° sentences of quantifier rank at most 2.
fn succ_corpus(n: usize, seed: u64) -> Vec<Sentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    while out.len() < n {
        let q = rng.gen_range(1..3);
        let mut bound = (0..q).collect::<Vec<u32>>();
        let body = succ_formula(&mut rng, &mut bound, 2 - q, 3);
        let f = (0..q).rev().fold(body, |b, v| if rng.gen() { Formula::exists(v, b) } else { Formula::forall(v, b) });
        let Ok(s) = Sentence::new(Signature::Succ, f) else { continue };
        if s.body().quantifier_rank() <= 2 && seen.insert(s.clone()) {
            out.push(s);
        }
    }
    out
}

fn criterion3(archive: &mut Archive) -> Check {
    let corpus = succ_corpus(520, 3);
    let models: Vec<CycleSpec> = (0u32..8).map(|m| CycleSpec::new((1..=3).filter(|i| m >> (i - 1) & 1 == 1))).collect();
    let mut trues = 0;
    for phi in &corpus {
        let nf = succ_normal_form(phi).map_err(|e| format!("{phi}: {e}"))?;
        let r = model_radius(phi.body().quantifier_rank(), phi.body().succ_depth());
        let mut row = String::new();
        for m in &models {
            let want = nf.eval_in(m);
            for extra in 0..=5 {
                let got = succ_model_check(m, phi, r + extra).map_err(|e| format!("{phi}: {e}"))?;
                ensure(got == want, || format!("{phi} in {:?} at radius {}: model {got}, normal form {want}", m.cycles, r + extra))?;
            }
            trues += want as usize;
            row.push(if want { '1' } else { '0' });
        }
        archive.push(format!("{{\"c\":3,\"row\":\"{row}\"}}"));
    }
    Ok(format!("{} sentences x 8 cycle sets x radii r..r+5, zero discrepancies ({trues} true cells)", corpus.len()))
}

// ---------------------------------------------------------------- criterion 4

fn criterion4(archive: &mut Archive) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut succ_pool = succ_corpus(400, 44).into_iter();
    for sig in [Signature::Prop, Signature::Succ] {
        let mut n = 0;
        while n < 100 {
            // half the succ extensions come from the quantified corpus
            let ext = if sig == Signature::Succ && n % 2 == 1 {
                let s = succ_pool.next().ok_or("succ corpus exhausted")?;
                if decide(std::slice::from_ref(&s), &Sentence::top(sig)) != Ok(Verdict::Provable) {
                    continue;
                }
                vec![s]
            } else {
                random_extension(&mut rng, sig)
            };
            let conj = Sentence::conj(&ext).expect("non-empty").map_err(|e| e.to_string())?;
            let w = ef_witness(&conj).map_err(|e| format!("{conj}: {e}"))?;
            let v = decide(&ext, &w).map_err(|e| format!("{w}: {e}"))?;
            ensure(v == Verdict::Independent, || format!("{}: witness {w} of {conj} is {}", sig.name(), v.name()))?;
            archive.push(format!("{{\"c\":4,\"ext\":{:?},\"witness\":{:?}}}", conj.to_string(), w.to_string()));
            n += 1;
        }
    }
    Ok("100 consistent extensions per base theory, every ef-witness independent".into())
}

// ---------------------------------------------------------------- criterion 5

fn criterion5(archive: &mut Archive) -> Check {
    let u = prop_theory(vec![Sentence::top(Signature::Prop)]);
    let everything = ConstraintClass::ConstantSet(CeSet::everything());
    let budget = Budget { steps: 10_000_000, stages: 10_000 };
    let mut seen = vec![];
    for c in if_candidates() {
        let (o, report) = keukensmurf_refute(&c, &u, &everything, budget);
        archive.push(report.to_json());
        ensure(o != RefutationOutcome::F4, || format!("{}: F4, {}", c.claims, report.to_json()))?;
        ensure(matches!(o, RefutationOutcome::F1 | RefutationOutcome::F2 | RefutationOutcome::F3), || {
            format!("{}: outcome {} outside F1..F3", c.claims, o.name())
        })?;
        seen.push(format!("{}: {}", c.claims, o.name()));
    }
    Ok(seen.join("; "))
}

// ---------------------------------------------------------------- criterion 6

fn criterion6(archive: &mut Archive) -> Check {
    let mut a = Asm::new();
    a.call(0, Native::EfWitness, 0).halt();
    let ef = WitnessFunction::new(a.code(), Role::EfWitness, "ef-witness");
    let mut parts = vec![];
    for (name, u) in [
        ("prop {p0}", prop_theory(vec![Sentence::atom(0)])),
        ("succ", TheoryPresentation::new(SentenceSet::empty(Signature::Succ), Engine::Decidable)),
    ] {
        let (psi, _range) = tuinsmurf_shift(&ef, &u);
        let r = tuinsmurf_probe(&psi, &u, 200, 1_000_000);
        archive.push(format!("{{\"c\":6,\"theory\":{name:?},\"checked\":{},\"passed\":{}}}", r.checked, r.passed()));
        ensure(r.checked >= 200 && r.passed(), || format!("{name}: {r:?}"))?;
        parts.push(format!("{name}: {} probes consistent", r.checked));
    }
    Ok(parts.join("; "))
}

// ---------------------------------------------------------------- criterion 7

fn criterion7(archive: &mut Archive) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, u) in [
        ("prop", prop_theory(vec![])),
        ("succ", TheoryPresentation::new(SentenceSet::empty(Signature::Succ), Engine::Decidable)),
    ] {
        for f in 0..50 {
            let k = rng.gen_range(2..5);
            let family: Vec<Vec<Sentence>> = (0..k).map(|_| random_extension(&mut rng, u.sig())).collect();
            let rho = f_uniform_independent(&family, &u).map_err(|e| format!("{name} family {f}: {e}"))?;
            for (n, ext) in family.iter().enumerate() {
                let v = decide(ext, &rho).map_err(|e| e.to_string())?;
                ensure(v == Verdict::Independent, || format!("{name} family {f} member {n}: {}", v.name()))?;
            }
            archive.push(format!("{{\"c\":7,\"theory\":{name:?},\"size\":{k},\"rho\":{:?}}}", rho.to_string()));
        }
    }
    Ok("50 families of 2 to 4 extensions per base theory, rho independent of every member".into())
}

// ---------------------------------------------------------------- criterion 8

fn criterion8(archive: &mut Archive) -> Check {
    let fixtures = branch_fixtures();
    let budget = Budget { steps: 1_000_000, stages: 10_000 };
    let mut probes = 0;
    for fx in &fixtures {
        let c = fx.run(budget);
        archive.push(c.report.to_json());
        ensure(c.report.branch == fx.branch, || {
            format!("{}: expected {}, got {}", fx.construction, fx.branch, c.report.branch)
        })?;
        ensure(c.report.probes() > 0, || format!("{} {}: no probes", fx.construction, fx.branch))?;
        ensure(c.report.mismatches().is_empty(), || c.report.to_json())?;
        probes += c.report.probes();
    }
    ensure(fixtures.len() == 15, || format!("{} fixtures", fixtures.len()))?;
    Ok(format!("15 fixtures, each branch reached, {probes} probes match the displayed sets"))
}

// ---------------------------------------------------------------- criterion 9

fn criterion9(archive: &mut Archive) -> Check {
    let all = CeSet::everything().e;
    let none = CeSet::nothing().e;
    let pair = kleene_pair();
    let b = 10_000_000;
    let n = kleene_ei_witness(&all, &none);
    let v = run(&n, &n, b);
    ensure(v == Outcome::Converged(nat(1)), || format!("everything/nothing: {v:?}"))?;
    ensure(run(&pair.right.e, &n, b).converged(), || "everything/nothing: n not in the right set".into())?;
    ensure(!run(&pair.left.e, &n, 100_000).converged(), || "everything/nothing: n in the left set".into())?;
    archive.push(format!("{{\"c\":9,\"fixture\":\"everything/nothing\",\"value\":{:?}}}", v.value().map(|v| v.to_string())));

    let n = kleene_ei_witness(&none, &none);
    for budget in [1_000, 100_000, b] {
        let v = run(&n, &n, budget);
        ensure(v == Outcome::Exhausted, || format!("nothing/nothing at {budget}: {v:?}"))?;
    }
    archive.push("{\"c\":9,\"fixture\":\"nothing/nothing\",\"value\":null}".into());

    let n = kleene_ei_witness(&none, &all);
    let v = run(&n, &n, b);
    ensure(v == Outcome::Converged(nat(0)), || format!("nothing/everything: {v:?}"))?;
    ensure(run(&pair.left.e, &n, b).converged(), || "nothing/everything: n not in the left set".into())?;
    archive.push(format!("{{\"c\":9,\"fixture\":\"nothing/everything\",\"value\":{:?}}}", v.value().map(|v| v.to_string())));
    Ok("everything/nothing gives 1 and lands in the right set; nothing/nothing diverges; nothing/everything gives 0 and lands in the left set".into())
}

// ---------------------------------------------------------------- criterion 10

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_lab")).args(args).env_remove("LAB_BUDGET").env_remove("LAB_QMAX").output().expect("runs");
    let mut bytes = out.stdout;
    bytes.extend(format!("exit {}\n", out.status.code().unwrap_or(-1)).into_bytes());
    bytes
}

fn cli_archive() -> Vec<u8> {
    let (succ, lp, wl, bot, every, p1, empty, p0, np0) = (
        fixture("succ.sexp"),
        fixture("loop.sexp"),
        fixture("wrong_lift.sexp"),
        fixture("const_bottom.sexp"),
        fixture("everything.sexp"),
        fixture("p1.sexp"),
        fixture("empty.sexp"),
        fixture("p0.sexp"),
        fixture("not_p0.sexp"),
    );
    let runs: Vec<Vec<&str>> = vec![
        vec!["run", "--program", &succ, "--input", "41", "--trace"],
        vec!["run", "--program", &wl, "--input", "7", "--trace"],
        vec!["run", "--program", &lp, "--input", "0", "--budget", "100"],
        vec!["refute-if", "--theory", "prop", "--candidate", &wl],
        vec!["refute-if", "--theory", "prop", "--candidate", &bot],
        vec!["kleene-witness", "--i", &every, "--j", &lp],
        vec!["pourel", "--theory", "prop", "--candidate", &bot, "--i", &p1, "--j", &empty],
        vec!["chain", "--to", "b", "--i", &p0, "--j", &np0],
        vec!["funiform", "--theory", "succ", "--random", "3", "--seed", "5"],
        vec!["succ", "decide", "--sentence", "(or (C 3) (not (C 3)))"],
    ];
    runs.iter().flat_map(|a| cli(a)).collect()
}

type Criterion = fn(&mut Archive) -> Check;

fn criteria() -> Vec<(&'static str, Criterion, Duration)> {
    let s = Duration::from_secs;
    vec![
        ("kernel soundness", criterion1 as Criterion, s(60)),
        ("hat theorem oracle equivalence", criterion2, s(120)),
        ("Succ oracle agreement", criterion3, s(300)),
        ("ef-witness independence", criterion4, s(600)),
        ("keukensmurf demonstration", criterion5, s(120)),
        ("tuinsmurf mono-consistency", criterion6, s(600)),
        ("f-uniform independence", criterion7, s(600)),
        ("branch fidelity", criterion8, s(300)),
        ("Kleene diagonal taxonomy", criterion9, s(600)),
    ]
}

fn run_criterion(f: Criterion, archive: &mut Archive) -> Check {
    match catch_unwind(AssertUnwindSafe(|| f(archive))) {
        Ok(r) => r,
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())),
    }
}

#[test]
fn acceptance() {
    let mut lines = vec![];
    let mut failed = vec![];
    let mut first: Archive = vec![];
    for (k, (name, f, limit)) in criteria().into_iter().enumerate() {
        let t = Instant::now();
        let r = run_criterion(f, &mut first);
        let took = t.elapsed();
        let r = r.and_then(|d| if took <= limit { Ok(d) } else { Err(format!("took {took:.1?}, limit {limit:?}")) });
        let line = match &r {
            Ok(d) => format!("criterion {:>2} PASS {name} [{took:.1?}]: {d}", k + 1),
            Err(e) => format!("criterion {:>2} FAIL {name} [{took:.1?}]: {e}", k + 1),
        };
        println!("{line}");
        if r.is_err() {
            failed.push(k + 1);
        }
        lines.push(line);
    }

    let t = Instant::now();
    let mut second: Archive = vec![];
    for (_, f, _) in criteria() {
        let _ = run_criterion(f, &mut second);
    }
    let cli_a = cli_archive();
    let cli_b = cli_archive();
    let a = first.join("\n").into_bytes();
    let b = second.join("\n").into_bytes();
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let _ = std::fs::write(dir.join("acceptance-archive.ndjson"), [&a[..], b"\n", &cli_a[..]].concat());
    let ok = a == b && cli_a == cli_b && !a.is_empty();
    let line = format!(
        "criterion 10 {} determinism [{:.1?}]: {} archive lines and {} CLI bytes, {}",
        if ok { "PASS" } else { "FAIL" },
        t.elapsed(),
        first.len(),
        cli_a.len(),
        if ok { "byte-identical across two runs" } else { "runs differ" }
    );
    println!("{line}");
    if !ok {
        failed.push(10);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
