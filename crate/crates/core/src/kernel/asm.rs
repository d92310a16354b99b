//! A small assembler with symbolic labels, used to author construction programs.

use super::code::Nat;
use super::program::{Instr, Program, Reg};
use crate::natives::Native;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Label(usize);

enum Slot {
    Ready(Instr),
    Decjz(Reg, Label),
    Jmp(Label),
}

#[derive(Default)]
pub struct Asm {
    slots: Vec<Slot>,
    labels: Vec<Option<usize>>,
}

impl Asm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn label(&mut self) -> Label {
        self.labels.push(None);
        Label(self.labels.len() - 1)
    }

    /// Binds `l` to the next emitted instruction.
    pub fn place(&mut self, l: Label) {
        assert!(self.labels[l.0].is_none(), "label placed twice");
        self.labels[l.0] = Some(self.slots.len());
    }

    pub fn here(&mut self) -> Label {
        let l = self.label();
        self.place(l);
        l
    }

    fn emit(&mut self, i: Instr) -> &mut Self {
        self.slots.push(Slot::Ready(i));
        self
    }

    pub fn konst(&mut self, r: Reg, v: impl Into<Nat>) -> &mut Self {
        self.emit(Instr::Const(r, v.into()))
    }

    pub fn copy(&mut self, d: Reg, s: Reg) -> &mut Self {
        self.emit(Instr::Copy(d, s))
    }

    pub fn inc(&mut self, r: Reg) -> &mut Self {
        self.emit(Instr::Inc(r))
    }

    pub fn decjz(&mut self, r: Reg, l: Label) -> &mut Self {
        self.slots.push(Slot::Decjz(r, l));
        self
    }

    pub fn jmp(&mut self, l: Label) -> &mut Self {
        self.slots.push(Slot::Jmp(l));
        self
    }

    pub fn pair(&mut self, d: Reg, a: Reg, b: Reg) -> &mut Self {
        self.emit(Instr::Pair(d, a, b))
    }

    pub fn unpair_l(&mut self, d: Reg, s: Reg) -> &mut Self {
        self.emit(Instr::UnpairL(d, s))
    }

    pub fn unpair_r(&mut self, d: Reg, s: Reg) -> &mut Self {
        self.emit(Instr::UnpairR(d, s))
    }

    pub fn smn(&mut self, d: Reg, e: Reg, x: Reg) -> &mut Self {
        self.emit(Instr::Smn(d, e, x))
    }

    pub fn univ(&mut self, d: Reg, e: Reg, x: Reg) -> &mut Self {
        self.emit(Instr::Univ(d, e, x))
    }

    pub fn runb(&mut self, d: Reg, e: Reg, x: Reg, b: Reg) -> &mut Self {
        self.emit(Instr::Runb(d, e, x, b))
    }

    pub fn call(&mut self, d: Reg, n: Native, s: Reg) -> &mut Self {
        self.emit(Instr::Call(d, n, s))
    }

    pub fn halt(&mut self) -> &mut Self {
        self.emit(Instr::Halt)
    }

    /// Loops forever at this point.
    pub fn diverge(&mut self) -> &mut Self {
        let l = self.here();
        self.jmp(l)
    }

    /// Splits `src` as `pair(regs[0], pair(regs[1], ...))`; `src` may be reused.
    pub fn unpack(&mut self, src: Reg, regs: &[Reg]) -> &mut Self {
        let mut cur = src;
        for (k, &r) in regs.iter().enumerate() {
            if k + 1 == regs.len() {
                self.copy(r, cur);
            } else {
                let rest = regs[k + 1];
                self.unpair_r(rest, cur);
                self.unpair_l(r, cur);
                cur = rest;
            }
        }
        self
    }

    pub fn build(&self) -> Program {
        let at = |l: &Label| self.labels[l.0].expect("label never placed");
        let instrs = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::Ready(i) => i.clone(),
                Slot::Decjz(r, l) => Instr::Decjz(*r, at(l)),
                Slot::Jmp(l) => Instr::Jmp(at(l)),
            })
            .collect();
        Program::new(instrs)
    }

    pub fn code(&self) -> Nat {
        self.build().encode()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::code::{nat, pack};
    use crate::kernel::machine::{run, Outcome};

    #[test]
    fn countdown_loop() {
        // doubles the input by moving it into register 1 twice
        let mut a = Asm::new();
        let top = a.here();
        let done = a.label();
        a.decjz(0, done).inc(1).inc(1).jmp(top);
        a.place(done);
        a.copy(0, 1).halt();
        assert_eq!(run(&a.code(), &nat(6), 1000), Outcome::Converged(nat(12)));
    }

    #[test]
    fn unpack_three() {
        let mut a = Asm::new();
        a.unpack(0, &[1, 2, 3]).copy(0, 2).halt();
        let x = pack(&[nat(4), nat(5), nat(6)]);
        assert_eq!(run(&a.code(), &x, 100), Outcome::Converged(nat(5)));
    }
}
