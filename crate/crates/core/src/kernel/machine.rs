//! The budgeted reference interpreter.
//!
//! Nested `UNIV`/`RUNB` calls run on an explicit frame stack, so deep
//! self-reference costs heap rather than host stack. Every executed
//! instruction costs one step, inner steps included. A `RUNB` frame carries an
//! absolute deadline; when the step counter reaches the deadline of some open
//! `RUNB` frames, control returns to the outermost of them with the result 0.

use std::collections::HashMap;
use std::rc::Rc;

use num_traits::Zero;

use super::code::{pair, unpair, Nat};
use super::program::{decode_program, Instr, Program};
use crate::natives;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Outcome {
    Converged(Nat),
    Exhausted,
}

impl Outcome {
    pub fn value(&self) -> Option<&Nat> {
        match self {
            Outcome::Converged(v) => Some(v),
            Outcome::Exhausted => None,
        }
    }

    pub fn converged(&self) -> bool {
        matches!(self, Outcome::Converged(_))
    }
}

/// Frames beyond this depth make a run report `Exhausted`; memory guard only.
pub const MAX_DEPTH: usize = 100_000;

const CACHE_LIMIT: usize = 1 << 14;

/// One executed instruction, as seen by a trace sink.
pub struct TraceEvent<'a> {
    pub step: u64,
    pub depth: usize,
    pub pc: usize,
    pub instr: &'a Instr,
    pub regs: &'a [Nat],
}

struct Loaded {
    prog: Program,
    regs: usize,
}

enum Return {
    Top,
    Univ(usize),
    Runb(usize),
}

struct Frame {
    code: Rc<Loaded>,
    pc: usize,
    regs: Vec<Nat>,
    ret: Return,
}

/// Interpreter with decode and s-m-n caches. Results never depend on cache state.
#[derive(Default)]
pub struct Machine {
    programs: HashMap<Nat, Rc<Loaded>>,
    smn_cache: HashMap<(Nat, Nat), Nat>,
    unpair_cache: HashMap<Nat, (Nat, Nat)>,
    pair_cache: HashMap<(Nat, Nat), Nat>,
}

/// Values below this many bits are paired and unpaired without the memo.
const MEMO_BITS: u64 = 512;

impl Machine {
    pub fn new() -> Self {
        Self::default()
    }

    fn load(&mut self, e: &Nat) -> Rc<Loaded> {
        if let Some(l) = self.programs.get(e) {
            return l.clone();
        }
        if self.programs.len() >= CACHE_LIMIT {
            self.programs.clear();
        }
        let prog = decode_program(e);
        let regs = prog.register_count();
        let l = Rc::new(Loaded { prog, regs });
        self.programs.insert(e.clone(), l.clone());
        l
    }

    fn unpair(&mut self, z: &Nat) -> (Nat, Nat) {
        if z.bits() < MEMO_BITS {
            return unpair(z);
        }
        if let Some(v) = self.unpair_cache.get(z) {
            return v.clone();
        }
        if self.unpair_cache.len() >= CACHE_LIMIT {
            self.unpair_cache.clear();
        }
        let v = unpair(z);
        self.unpair_cache.insert(z.clone(), v.clone());
        v
    }

    fn pair(&mut self, a: &Nat, b: &Nat) -> Nat {
        if a.bits().max(b.bits()) < MEMO_BITS {
            return pair(a, b);
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.pair_cache.get(&key) {
            return v.clone();
        }
        if self.pair_cache.len() >= CACHE_LIMIT {
            self.pair_cache.clear();
        }
        let v = pair(a, b);
        self.pair_cache.insert(key, v.clone());
        v
    }

    pub fn smn(&mut self, e: &Nat, x: &Nat) -> Nat {
        let key = (e.clone(), x.clone());
        if let Some(v) = self.smn_cache.get(&key) {
            return v.clone();
        }
        if self.smn_cache.len() >= CACHE_LIMIT {
            self.smn_cache.clear();
        }
        let p = self.load(e);
        let v = p
            .prog
            .after(vec![Instr::Const(1, x.clone()), Instr::Pair(0, 1, 0), Instr::Const(1, Nat::zero())])
            .encode();
        self.smn_cache.insert(key, v.clone());
        v
    }

    fn frame(&mut self, e: &Nat, x: Nat, ret: Return) -> Frame {
        let code = self.load(e);
        let mut regs = vec![Nat::zero(); code.regs];
        regs[0] = x;
        Frame { code, pc: 0, regs, ret }
    }

    pub fn run(&mut self, e: &Nat, x: &Nat, budget: u64) -> Outcome {
        self.run_counted(e, x, budget).0
    }

    /// Also returns the number of steps charged.
    pub fn run_counted(&mut self, e: &Nat, x: &Nat, budget: u64) -> (Outcome, u64) {
        self.exec(e, x, budget, None)
    }

    pub fn run_traced(
        &mut self,
        e: &Nat,
        x: &Nat,
        budget: u64,
        sink: &mut dyn FnMut(&TraceEvent),
    ) -> (Outcome, u64) {
        self.exec(e, x, budget, Some(sink))
    }

    fn exec(
        &mut self,
        e: &Nat,
        x: &Nat,
        budget: u64,
        mut sink: Option<&mut dyn FnMut(&TraceEvent)>,
    ) -> (Outcome, u64) {
        let mut frames = vec![self.frame(e, x.clone(), Return::Top)];
        // (frame index, own deadline, min deadline of this and enclosing RUNB frames)
        let mut deadlines: Vec<(usize, u64, u64)> = Vec::new();
        let mut steps: u64 = 0;
        loop {
            let top = frames.len() - 1;
            if frames[top].pc >= frames[top].code.prog.len() {
                let mut f = frames.pop().expect("frame");
                let v = std::mem::take(&mut f.regs[0]);
                match f.ret {
                    Return::Top => return (Outcome::Converged(v), steps),
                    Return::Univ(dst) => frames[top - 1].regs[dst] = v,
                    Return::Runb(dst) => {
                        frames[top - 1].regs[dst] = v + 1u32;
                        deadlines.pop();
                    }
                }
                continue;
            }
            if steps >= budget {
                return (Outcome::Exhausted, steps);
            }
            if let Some(&(_, _, eff)) = deadlines.last() {
                if steps >= eff {
                    let k = deadlines
                        .iter()
                        .position(|&(_, own, _)| steps >= own)
                        .expect("some deadline reached");
                    let fi = deadlines[k].0;
                    let dst = match frames[fi].ret {
                        Return::Runb(d) => d,
                        _ => unreachable!("deadline on a non-RUNB frame"),
                    };
                    frames.truncate(fi);
                    frames[fi - 1].regs[dst] = Nat::zero();
                    deadlines.truncate(k);
                    continue;
                }
            }
            let code = frames[top].code.clone();
            let f = &mut frames[top];
            let ins = &code.prog.instrs[f.pc];
            if let Some(s) = sink.as_mut() {
                s(&TraceEvent { step: steps, depth: top, pc: f.pc, instr: ins, regs: &f.regs });
            }
            steps += 1;
            f.pc += 1;
            match ins {
                Instr::Halt => f.pc = code.prog.len(),
                Instr::Const(r, v) => f.regs[*r] = v.clone(),
                Instr::Copy(d, s) => f.regs[*d] = f.regs[*s].clone(),
                Instr::Inc(r) => f.regs[*r] += 1u32,
                Instr::Decjz(r, l) => {
                    if f.regs[*r].is_zero() {
                        f.pc = *l;
                    } else {
                        f.regs[*r] -= 1u32;
                    }
                }
                Instr::Jmp(l) => f.pc = *l,
                Instr::Pair(d, a, b) => f.regs[*d] = self.pair(&f.regs[*a], &f.regs[*b]),
                Instr::UnpairL(d, s) => f.regs[*d] = self.unpair(&f.regs[*s]).0,
                Instr::UnpairR(d, s) => f.regs[*d] = self.unpair(&f.regs[*s]).1,
                Instr::Call(d, n, s) => f.regs[*d] = natives::call(*n, &f.regs[*s]),
                Instr::Smn(d, er, xr) => {
                    let (ev, xv) = (f.regs[*er].clone(), f.regs[*xr].clone());
                    let v = self.smn(&ev, &xv);
                    frames[top].regs[*d] = v;
                }
                Instr::Univ(d, er, xr) => {
                    if top + 1 >= MAX_DEPTH {
                        return (Outcome::Exhausted, steps);
                    }
                    let (ev, xv) = (f.regs[*er].clone(), f.regs[*xr].clone());
                    let child = self.frame(&ev, xv, Return::Univ(*d));
                    frames.push(child);
                }
                Instr::Runb(d, er, xr, br) => {
                    if top + 1 >= MAX_DEPTH {
                        return (Outcome::Exhausted, steps);
                    }
                    let (ev, xv) = (f.regs[*er].clone(), f.regs[*xr].clone());
                    let b: u64 = (&f.regs[*br]).try_into().unwrap_or(u64::MAX);
                    let own = steps.saturating_add(b);
                    let eff = deadlines.last().map_or(own, |&(_, _, e)| e.min(own));
                    let child = self.frame(&ev, xv, Return::Runb(*d));
                    frames.push(child);
                    deadlines.push((frames.len() - 1, own, eff));
                }
            }
        }
    }
}

thread_local! {
    static MACHINE: std::cell::RefCell<Machine> = std::cell::RefCell::new(Machine::new());
}

/// Runs `φ_e(x)` for at most `budget` steps on a thread-local machine.
pub fn run(e: &Nat, x: &Nat, budget: u64) -> Outcome {
    run_counted(e, x, budget).0
}

pub fn run_counted(e: &Nat, x: &Nat, budget: u64) -> (Outcome, u64) {
    MACHINE.with(|m| m.borrow_mut().run_counted(e, x, budget))
}

/// The least budget at which `φ_e(x)` converges, if it does within `limit`.
pub fn halting_steps(e: &Nat, x: &Nat, limit: u64) -> Option<u64> {
    match run_counted(e, x, limit) {
        (Outcome::Converged(_), s) => Some(s),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::code::nat;
    use crate::kernel::program::parse_program;

    fn code(src: &str) -> Nat {
        parse_program(src).unwrap().encode()
    }

    #[test]
    fn identity_and_successor() {
        assert_eq!(run(&code("(HALT)"), &nat(5), 10), Outcome::Converged(nat(5)));
        assert_eq!(run(&code("(INC 0) (HALT)"), &nat(4), 10), Outcome::Converged(nat(5)));
        assert_eq!(run(&code("(JMP 0)"), &nat(3), 1000), Outcome::Exhausted);
    }

    #[test]
    fn falling_off_the_end_is_free() {
        assert_eq!(run_counted(&code("(INC 0)"), &nat(0), 1), (Outcome::Converged(nat(1)), 1));
        assert_eq!(run(&code("(INC 0) (HALT)"), &nat(0), 1), Outcome::Exhausted);
    }

    #[test]
    fn univ_charges_inner_steps() {
        let succ = code("(INC 0) (HALT)");
        let wrapper = parse_program(&format!("(CONST 1 {succ}) (UNIV 0 1 0) (HALT)")).unwrap().encode();
        // CONST, UNIV, inner INC, inner HALT, HALT
        assert_eq!(run_counted(&wrapper, &nat(7), 100), (Outcome::Converged(nat(8)), 5));
        assert_eq!(run(&wrapper, &nat(7), 4), Outcome::Exhausted);
    }

    #[test]
    fn runb_reports_exhaustion_as_zero() {
        let lp = code("(JMP 0)");
        let succ = code("(INC 0) (HALT)");
        let probe = |e: &Nat, b: u64| {
            let w = parse_program(&format!("(CONST 1 {e}) (CONST 2 {b}) (RUNB 0 1 0 2) (HALT)"))
                .unwrap()
                .encode();
            run(&w, &nat(3), 10_000)
        };
        assert_eq!(probe(&lp, 50), Outcome::Converged(nat(0)));
        assert_eq!(probe(&succ, 2), Outcome::Converged(nat(5)));
        assert_eq!(probe(&succ, 1), Outcome::Converged(nat(0)));
    }

    #[test]
    fn nested_runb_unwinds_to_outermost_expired() {
        let lp = code("(JMP 0)");
        // inner RUNB with a large bound, wrapped in an outer RUNB with a small one
        let inner = code(&format!("(CONST 1 {lp}) (CONST 2 1000000) (RUNB 0 1 0 2) (HALT)"));
        let outer = code(&format!("(CONST 1 {inner}) (CONST 2 20) (RUNB 0 1 0 2) (HALT)"));
        assert_eq!(run_counted(&outer, &nat(0), 1000), (Outcome::Converged(nat(0)), 24));
    }
}
