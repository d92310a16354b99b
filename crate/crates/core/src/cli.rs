//! Command-line interface.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 budget exhausted where a
//! value was required, 3 a refutation report of kind F4.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cesets::{kleene_ei_witness, CeSet};
use crate::constructions::fixtures::{finite_sentences, random_extension};
use crate::constructions::{
    a_to_b, b_to_c, c_to_d, d_to_e, domi_combine, e_to_f, f_to_a, f_uniform_independent, keukensmurf_refute,
    pourel_construct, productive_fixture, sentence_ei_fixture, sequence_enumeration, show_outcome, theory_set, Budget,
    ConstraintClass, NamedMap, Polarity, RefutationOutcome, Role, WitnessFunction,
};
use crate::kernel::{decode_program, fix, parse_program, Machine, Nat, Outcome};
use crate::syntax::{parse_sentence, parse_sentences, ungoedel, Sentence, SentenceSet, SequencePresentation, Signature};
use crate::theories::{decide, ef_witness, set_q_max, Engine, TheoryPresentation, DEFAULT_Q_MAX};

pub const DEFAULT_BUDGET: u64 = 1_000_000;
pub const DEFAULT_STAGES: u64 = 10_000;

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub budget: u64,
    pub stage_limit: u64,
    pub q_max: u32,
    pub trace: bool,
    pub seed: u64,
}

impl RunConfig {
    fn budgets(&self) -> Budget {
        Budget { steps: self.budget, stages: self.stage_limit }
    }
}

#[derive(Parser, Debug)]
#[command(name = "lab", version, about = "Run programs and constructions on the reflective register machine")]
struct Cli {
    /// Step budget for evaluations
    #[arg(long, global = true, env = "LAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Steps per membership query when probing constructed sets
    #[arg(long, global = true, default_value_t = DEFAULT_STAGES)]
    stages: u64,
    /// Quantifier-rank limit of the Succ° decision procedure
    #[arg(long, global = true, env = "LAB_QMAX", default_value_t = DEFAULT_Q_MAX)]
    qmax: u32,
    /// Seed for generated inputs
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoryArg {
    Prop,
    Succ,
}

impl TheoryArg {
    fn sig(self) -> Signature {
        match self {
            TheoryArg::Prop => Signature::Prop,
            TheoryArg::Succ => Signature::Succ,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Clause {
    A,
    B,
    C,
    D,
    E,
    F,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChainFixture {
    /// The Kleene diagonal moved onto atoms
    SentenceEi,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run a program file on an input
    Run {
        #[arg(long)]
        program: PathBuf,
        #[arg(long, default_value = "0")]
        input: Nat,
        /// Print one JSON line per executed instruction
        #[arg(long)]
        trace: bool,
    },
    /// Print the canonical form and code of a sentence
    Parse {
        #[arg(long)]
        sentence: String,
        #[arg(long, value_enum)]
        sig: Option<TheoryArg>,
    },
    /// Fixed point of a transformer program
    Fix {
        #[arg(long)]
        transformer: PathBuf,
        #[arg(long = "param")]
        params: Vec<Nat>,
        /// Also run the fixed point on this input
        #[arg(long)]
        input: Option<Nat>,
    },
    /// Diagonal index for the Kleene pair against the domains of two programs
    KleeneWitness {
        #[arg(long)]
        i: PathBuf,
        #[arg(long)]
        j: PathBuf,
    },
    /// Decide sentences or compute ef-witnesses over Succ°
    Succ {
        #[command(subcommand)]
        op: BaseOp,
    },
    /// Decide sentences or compute ef-witnesses over propositional logic
    Prop {
        #[command(subcommand)]
        op: BaseOp,
    },
    /// Pour-El construction for a claimed if-witness and two finite sets
    Pourel {
        #[arg(long, value_enum)]
        theory: TheoryArg,
        /// Axioms of U; defaults to the single axiom ⊤
        #[arg(long)]
        axioms: Option<PathBuf>,
        /// Program claimed to be an if-witness
        #[arg(long)]
        candidate: PathBuf,
        /// Sentences of W_i
        #[arg(long)]
        i: PathBuf,
        /// Sentences of W_j
        #[arg(long)]
        j: PathBuf,
    },
    /// Diagonal refutation of a claimed if-witness
    RefuteIf {
        #[arg(long, value_enum)]
        theory: TheoryArg,
        #[arg(long)]
        axioms: Option<PathBuf>,
        #[arg(long)]
        candidate: PathBuf,
        /// Sentences of the constraint set X; every sentence when absent
        #[arg(long)]
        class: Option<PathBuf>,
        /// Close X under U-provable equivalence
        #[arg(long, requires = "class")]
        closure: bool,
    },
    /// Run the cycle of transformers between forms of effective inseparability
    Chain {
        #[arg(long, value_enum, default_value = "a")]
        from: Clause,
        #[arg(long, value_enum)]
        to: Clause,
        #[arg(long, value_enum, default_value = "sentence-ei")]
        fixture: ChainFixture,
        #[arg(long, value_enum, default_value = "prop")]
        theory: TheoryArg,
        #[arg(long)]
        axioms: Option<PathBuf>,
        /// Sentences of the first probe set
        #[arg(long)]
        i: Option<PathBuf>,
        /// Sentences of the second probe set
        #[arg(long)]
        j: Option<PathBuf>,
    },
    /// A sentence independent of each of several finite extensions
    Funiform {
        #[arg(long, value_enum)]
        theory: TheoryArg,
        #[arg(long)]
        axioms: Option<PathBuf>,
        /// One file of sentences per extension
        #[arg(long = "ext", num_args = 1..)]
        exts: Vec<PathBuf>,
        /// Add this many random consistent extensions, drawn from the seed
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Combine a creative and an inseparability witness over U = {p0}
    Domi,
}

#[derive(Subcommand, Debug)]
enum BaseOp {
    /// PROVABLE, REFUTABLE or INDEPENDENT over the base plus the assumptions
    Decide {
        #[arg(long)]
        sentence: String,
        /// File of assumed sentences
        #[arg(long)]
        assume: Option<PathBuf>,
    },
    /// A sentence independent of the given one whenever it is consistent
    Witness {
        #[arg(long)]
        sentence: String,
    },
}

/// Either a message for stderr with exit 1, or an exit code.
enum Stop {
    Input(String),
    Code(i32),
}

type Res = Result<(), Stop>;

fn input<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> Stop + '_ {
    move |e| Stop::Input(format!("{what}: {e}"))
}

fn read(path: &Path) -> Result<String, Stop> {
    std::fs::read_to_string(path).map_err(input(&path.display().to_string()))
}

fn load_program(path: &Path) -> Result<Nat, Stop> {
    let src = read(path)?;
    let p = parse_program(&src).map_err(input(&path.display().to_string()))?;
    Ok(p.encode())
}

fn load_sentences(path: &Path, sig: Option<Signature>) -> Result<Vec<Sentence>, Stop> {
    let src = read(path)?;
    parse_sentences(&src, sig).map_err(input(&path.display().to_string()))
}

fn theory(t: TheoryArg, axioms: &Option<PathBuf>) -> Result<TheoryPresentation, Stop> {
    let sig = t.sig();
    let items = match axioms {
        Some(p) => load_sentences(p, Some(sig))?,
        None => vec![Sentence::top(sig)],
    };
    let set = SentenceSet::finite(sig, items).map_err(input("axioms"))?;
    Ok(TheoryPresentation::new(set, Engine::Decidable))
}

fn line(out: &mut dyn Write, s: &str) -> Res {
    writeln!(out, "{s}").map_err(input("output"))
}

fn json<T: Serialize>(out: &mut dyn Write, v: &T) -> Res {
    line(out, &serde_json::to_string(v).expect("plain data"))
}

/// Parses `args` (program name first) and runs the command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let _ = write!(err, "{}\n{}", e.render(), Cli::command().render_long_help());
            return 1;
        }
    };
    let trace = matches!(cli.cmd, Cmd::Run { trace: true, .. });
    let cfg = RunConfig { budget: cli.budget, stage_limit: cli.stages, q_max: cli.qmax, trace, seed: cli.seed };
    set_q_max(cfg.q_max);
    match dispatch(cli.cmd, &cfg, out) {
        Ok(()) => 0,
        Err(Stop::Code(c)) => c,
        Err(Stop::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// Entry point of the `lab` binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run_with(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}

fn dispatch(cmd: Cmd, cfg: &RunConfig, out: &mut dyn Write) -> Res {
    match cmd {
        Cmd::Run { program, input, .. } => run_program(&load_program(&program)?, &input, cfg, out),
        Cmd::Parse { sentence, sig } => {
            let s = parse_sentence(&sentence, sig.map(TheoryArg::sig)).map_err(input("sentence"))?;
            line(out, &s.to_string())?;
            line(out, &s.goedel().to_string())
        }
        Cmd::Fix { transformer, params, input } => fix_cmd(&load_program(&transformer)?, &params, input, cfg, out),
        Cmd::KleeneWitness { i, j } => kleene(&load_program(&i)?, &load_program(&j)?, cfg, out),
        Cmd::Succ { op } => base(Signature::Succ, op, out),
        Cmd::Prop { op } => base(Signature::Prop, op, out),
        Cmd::Pourel { theory: t, axioms, candidate, i, j } => {
            let u = theory(t, &axioms)?;
            let phi = WitnessFunction::new(load_program(&candidate)?, Role::IfWitness, "candidate");
            let wi = finite_sentences(&load_sentences(&i, Some(t.sig()))?);
            let wj = finite_sentences(&load_sentences(&j, Some(t.sig()))?);
            let c = pourel_construct(&phi, &u, &wi, &wj, cfg.budgets());
            line(out, &c.report.to_json())
        }
        Cmd::RefuteIf { theory: t, axioms, candidate, class, closure } => {
            let u = theory(t, &axioms)?;
            let phi = WitnessFunction::new(load_program(&candidate)?, Role::IfWitness, "candidate");
            let x = match class {
                None => ConstraintClass::ConstantSet(CeSet::everything()),
                Some(p) => {
                    let set = CeSet::new(finite_sentences(&load_sentences(&p, Some(t.sig()))?));
                    if closure {
                        ConstraintClass::MapHandle(NamedMap::Closure(set))
                    } else {
                        ConstraintClass::ConstantSet(set)
                    }
                }
            };
            let (outcome, report) = keukensmurf_refute(&phi, &u, &x, cfg.budgets());
            line(out, &report.to_json())?;
            if outcome == RefutationOutcome::F4 {
                return Err(Stop::Code(3));
            }
            Ok(())
        }
        Cmd::Chain { from, to, fixture, theory: t, axioms, i, j } => {
            let u = theory(t, &axioms)?;
            let load = |p: &Option<PathBuf>| match p {
                Some(p) => load_sentences(p, Some(t.sig())),
                None => Ok(vec![]),
            };
            chain(from, to, fixture, &u, &load(&i)?, &load(&j)?, cfg, out)
        }
        Cmd::Funiform { theory: t, axioms, exts, random } => {
            let u = theory(t, &axioms)?;
            let mut family = exts.iter().map(|p| load_sentences(p, Some(t.sig()))).collect::<Result<Vec<_>, _>>()?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            family.extend((0..random).map(|_| random_extension(&mut rng, t.sig())));
            funiform(&u, &family, out)
        }
        Cmd::Domi => domi(cfg, out),
    }
}

fn regs_json(regs: &[Nat]) -> String {
    let mut s = String::from("{");
    for (k, v) in regs.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        let _ = write!(s, "\"{k}\":{v}");
    }
    s.push('}');
    s
}

fn run_program(e: &Nat, x: &Nat, cfg: &RunConfig, out: &mut dyn Write) -> Res {
    let mut m = Machine::new();
    let mut failed = None;
    let (o, _) = if cfg.trace {
        let mut sink = |t: &crate::kernel::TraceEvent| {
            if failed.is_none() {
                let l = format!(
                    "{{\"step\":{},\"pc\":{},\"op\":\"{}\",\"regs\":{},\"depth\":{}}}",
                    t.step,
                    t.pc,
                    t.instr.mnemonic(),
                    regs_json(t.regs),
                    t.depth
                );
                if let Err(e) = writeln!(out, "{l}") {
                    failed = Some(e);
                }
            }
        };
        m.run_traced(e, x, cfg.budget, &mut sink)
    } else {
        m.run_counted(e, x, cfg.budget)
    };
    if let Some(e) = failed {
        return Err(Stop::Input(format!("output: {e}")));
    }
    outcome(&o, out)
}

fn outcome(o: &Outcome, out: &mut dyn Write) -> Res {
    match o {
        Outcome::Converged(v) => line(out, &format!("CONVERGED {v}")),
        Outcome::Exhausted => {
            line(out, "EXHAUSTED")?;
            Err(Stop::Code(2))
        }
    }
}

#[derive(Serialize)]
struct Indexed {
    index: String,
    program: String,
}

fn fix_cmd(t: &Nat, params: &[Nat], x: Option<Nat>, cfg: &RunConfig, out: &mut dyn Write) -> Res {
    let e = fix(t, params);
    json(out, &Indexed { index: e.to_string(), program: decode_program(&e).to_string() })?;
    match x {
        Some(x) => outcome(&crate::kernel::run(&e, &x, cfg.budget), out),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct KleeneReport {
    index: String,
    branch: &'static str,
    value: Option<String>,
    program: String,
}

/// Which way `φ_n(n)` went for the diagonal index `n`.
pub fn kleene_branch(o: &Outcome) -> &'static str {
    match o.value().map(|v| v.to_string()).as_deref() {
        Some("1") => "i_first",
        Some("0") => "j_first",
        Some(_) => "other",
        None => "neither",
    }
}

fn kleene(i: &Nat, j: &Nat, cfg: &RunConfig, out: &mut dyn Write) -> Res {
    let n = kleene_ei_witness(i, j);
    let o = crate::kernel::run(&n, &n, cfg.budget);
    json(
        out,
        &KleeneReport {
            index: n.to_string(),
            branch: kleene_branch(&o),
            value: o.value().map(|v| v.to_string()),
            program: decode_program(&n).to_string(),
        },
    )
}

fn base(sig: Signature, op: BaseOp, out: &mut dyn Write) -> Res {
    match op {
        BaseOp::Decide { sentence, assume } => {
            let phi = parse_sentence(&sentence, Some(sig)).map_err(input("sentence"))?;
            let ext = match assume {
                Some(p) => load_sentences(&p, Some(sig))?,
                None => vec![],
            };
            let v = decide(&ext, &phi).map_err(input("decide"))?;
            line(out, v.name())
        }
        BaseOp::Witness { sentence } => {
            let phi = parse_sentence(&sentence, Some(sig)).map_err(input("sentence"))?;
            let w = ef_witness(&phi).map_err(input("witness"))?;
            line(out, &w.to_string())
        }
    }
}

#[derive(Serialize)]
struct ChainStep {
    step: String,
    claims: String,
    bits: u64,
}

#[derive(Serialize)]
struct ChainResult {
    clause: String,
    value: Option<String>,
}

fn clause_name(c: Clause) -> String {
    format!("{c:?}").to_lowercase()
}

#[allow(clippy::too_many_arguments)]
fn chain(
    from: Clause,
    to: Clause,
    fixture: ChainFixture,
    u: &TheoryPresentation,
    si: &[Sentence],
    sj: &[Sentence],
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Res {
    if from != Clause::A {
        return Err(Stop::Input("only form (a) has a fixture; use --from a".into()));
    }
    let mut w = match fixture {
        ChainFixture::SentenceEi => sentence_ei_fixture(),
    };
    let order = [Clause::B, Clause::C, Clause::D, Clause::E, Clause::F, Clause::A];
    let mut at = Clause::A;
    for next in order {
        w = match next {
            Clause::B => a_to_b(&w, u),
            Clause::C => b_to_c(&w),
            Clause::D => c_to_d(&w),
            Clause::E => d_to_e(&w, u),
            Clause::F => e_to_f(&w, u),
            Clause::A => f_to_a(&w),
        };
        json(
            out,
            &ChainStep {
                step: format!("{}_to_{}", clause_name(at), clause_name(next)),
                claims: w.claims.clone(),
                bits: w.e.bits(),
            },
        )?;
        at = next;
        if at == to {
            break;
        }
    }
    let sig = u.sig();
    let both: Vec<Sentence> = si.iter().chain(sj).cloned().collect();
    let x = match at {
        Clause::A => crate::kernel::pair(&finite_sentences(si), &finite_sentences(sj)),
        Clause::B => {
            let set = |v: &[Sentence]| SentenceSet::finite(sig, v.to_vec()).expect("one signature");
            SequencePresentation::Finite(sig, vec![set(si), set(sj)]).relation_index().expect("finite sequence")
        }
        Clause::C | Clause::D => sequence_enumeration(&both),
        Clause::E | Clause::F => finite_sentences(&both),
    };
    let o = w.eval(&x, cfg.budget);
    json(out, &ChainResult { clause: clause_name(at), value: show_outcome(&o) })?;
    if o.converged() {
        Ok(())
    } else {
        Err(Stop::Code(2))
    }
}

#[derive(Serialize)]
struct FUniformReport {
    rho: String,
    verdicts: Vec<String>,
}

fn funiform(u: &TheoryPresentation, family: &[Vec<Sentence>], out: &mut dyn Write) -> Res {
    let rho = f_uniform_independent(family, u).map_err(input("family"))?;
    let base = u.axioms.finite_items().map(|s| s.to_vec()).unwrap_or_default();
    let verdicts = family
        .iter()
        .map(|e| {
            let mut t = base.clone();
            t.extend(e.iter().cloned());
            decide(&t, &rho).map(|v| v.name().to_string()).unwrap_or_else(|e| format!("ERROR: {e}"))
        })
        .collect();
    json(out, &FUniformReport { rho: rho.to_string(), verdicts })
}

#[derive(Serialize)]
struct DomiReport {
    phi_star: Option<String>,
    psi_star: Option<String>,
    value: Option<String>,
    /// Verdict over `U`.
    verdict_u: Option<String>,
    /// Verdict over the base alone.
    verdict_logic: Option<String>,
}

fn domi(cfg: &RunConfig, out: &mut dyn Write) -> Res {
    let p0 = Sentence::atom(0);
    let u = crate::constructions::fixtures::prop_theory(vec![p0.clone()]);
    let i = theory_set(Signature::Prop, &p0, None, Polarity::Provable);
    let j = theory_set(Signature::Prop, &Sentence::top(Signature::Prop), None, Polarity::Refutable);
    let r = domi_combine(&productive_fixture(&u), &sentence_ei_fixture(), &u, &i, &j, cfg.budget);
    let verdict = |ext: &[Sentence], s: &Sentence| decide(ext, s).map(|v| v.name().to_string()).ok();
    let brief = |o: &Outcome| o.value().map(|v| ungoedel(v).map(|s| s.brief()).unwrap_or_else(|| v.to_string()));
    let report = DomiReport {
        phi_star: brief(&r.phi_star),
        psi_star: brief(&r.psi_star),
        value: r.value.as_ref().map(|s| s.brief()),
        verdict_u: r.value.as_ref().and_then(|s| verdict(std::slice::from_ref(&p0), s)),
        verdict_logic: r.value.as_ref().and_then(|s| verdict(&[], s)),
    };
    json(out, &report)?;
    match r.value {
        Some(_) => Ok(()),
        None => Err(Stop::Code(2)),
    }
}
