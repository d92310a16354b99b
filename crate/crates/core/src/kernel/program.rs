//! Instructions, programs, their Gödel coding and the program text format.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::code::{decode_seq, encode_seq, nat, Nat};
use crate::natives::Native;
use crate::sexp::{self, Sexp};

pub type Reg = usize;

/// Registers above this bound make a code non-canonical.
pub const MAX_REG: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instr {
    Halt,
    Const(Reg, Nat),
    Copy(Reg, Reg),
    Inc(Reg),
    /// Jump when the register is zero, otherwise decrement it.
    Decjz(Reg, usize),
    Jmp(usize),
    Pair(Reg, Reg, Reg),
    UnpairL(Reg, Reg),
    UnpairR(Reg, Reg),
    /// `dst := smn(e, x)`
    Smn(Reg, Reg, Reg),
    /// `dst := φ_e(x)`; blocks forever if `φ_e(x)` diverges.
    Univ(Reg, Reg, Reg),
    /// `dst := v + 1` if `φ_e(x)` converges to `v` within `b` steps, else `dst := 0`.
    Runb(Reg, Reg, Reg, Reg),
    /// `dst := f(src)` for a fixed total native `f`.
    Call(Reg, Native, Reg),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub instrs: Vec<Instr>,
}

impl Instr {
    fn regs(&self) -> Vec<Reg> {
        use Instr::*;
        match self {
            Halt | Jmp(_) => vec![],
            Const(r, _) | Inc(r) | Decjz(r, _) => vec![*r],
            Copy(a, b) | UnpairL(a, b) | UnpairR(a, b) | Call(a, _, b) => vec![*a, *b],
            Pair(a, b, c) | Smn(a, b, c) | Univ(a, b, c) => vec![*a, *b, *c],
            Runb(a, b, c, d) => vec![*a, *b, *c, *d],
        }
    }

    fn target(&self) -> Option<usize> {
        match self {
            Instr::Decjz(_, l) | Instr::Jmp(l) => Some(*l),
            _ => None,
        }
    }

    fn shifted(&self, by: usize) -> Instr {
        match self {
            Instr::Decjz(r, l) => Instr::Decjz(*r, l + by),
            Instr::Jmp(l) => Instr::Jmp(l + by),
            other => other.clone(),
        }
    }

    pub fn mnemonic(&self) -> &'static str {
        use Instr::*;
        match self {
            Halt => "HALT",
            Const(..) => "CONST",
            Copy(..) => "COPY",
            Inc(..) => "INC",
            Decjz(..) => "DECJZ",
            Jmp(..) => "JMP",
            Pair(..) => "PAIR",
            UnpairL(..) => "UNPAIR_L",
            UnpairR(..) => "UNPAIR_R",
            Smn(..) => "SMN",
            Univ(..) => "UNIV",
            Runb(..) => "RUNB",
            Call(..) => "CALL",
        }
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Instr::*;
        let m = self.mnemonic();
        match self {
            Halt => write!(f, "({m})"),
            Const(r, v) => write!(f, "({m} {r} {v})"),
            Inc(r) => write!(f, "({m} {r})"),
            Jmp(l) => write!(f, "({m} {l})"),
            Decjz(r, l) => write!(f, "({m} {r} {l})"),
            Copy(a, b) | UnpairL(a, b) | UnpairR(a, b) => write!(f, "({m} {a} {b})"),
            Pair(a, b, c) | Smn(a, b, c) | Univ(a, b, c) => write!(f, "({m} {a} {b} {c})"),
            Runb(a, b, c, d) => write!(f, "({m} {a} {b} {c} {d})"),
            Call(a, n, b) => write!(f, "({m} {a} {} {b})", n.name()),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ins) in self.instrs.iter().enumerate() {
            writeln!(f, "{ins} ; {i}")?;
        }
        Ok(())
    }
}

impl Program {
    pub fn new(instrs: Vec<Instr>) -> Self {
        Program { instrs }
    }

    /// The program every non-canonical code decodes to.
    pub fn diverging() -> Self {
        Program::new(vec![Instr::Jmp(0)])
    }

    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    /// One more than the highest register mentioned (at least 1 for the I/O register).
    pub fn register_count(&self) -> usize {
        self.instrs
            .iter()
            .flat_map(|i| i.regs())
            .max()
            .map_or(1, |m| m + 1)
    }

    pub fn is_well_formed(&self) -> bool {
        self.instrs.iter().all(|i| {
            i.regs().iter().all(|&r| r < MAX_REG) && i.target().is_none_or(|l| l <= self.len())
        })
    }

    /// Prepends `prefix` and relocates this program's labels after it.
    pub fn after(&self, prefix: Vec<Instr>) -> Program {
        let by = prefix.len();
        let mut instrs = prefix;
        instrs.extend(self.instrs.iter().map(|i| i.shifted(by)));
        Program { instrs }
    }

    pub fn encode(&self) -> Nat {
        encode_program(self)
    }
}

fn opcode(i: &Instr) -> u64 {
    use Instr::*;
    match i {
        Halt => 0,
        Const(..) => 1,
        Copy(..) => 2,
        Inc(..) => 3,
        Decjz(..) => 4,
        Jmp(..) => 5,
        Pair(..) => 6,
        UnpairL(..) => 7,
        UnpairR(..) => 8,
        Smn(..) => 9,
        Univ(..) => 10,
        Runb(..) => 11,
        Call(..) => 12,
    }
}

/// Flattens each instruction to `opcode, operands...` and codes the whole
/// stream with the linear sequence code.
pub fn encode_program(p: &Program) -> Nat {
    let mut items: Vec<Nat> = Vec::new();
    for ins in &p.instrs {
        use Instr::*;
        items.push(nat(opcode(ins)));
        let u = |v: usize| nat(v as u64);
        match ins {
            Halt => {}
            Const(r, v) => {
                items.push(u(*r));
                items.push(v.clone());
            }
            Inc(r) => items.push(u(*r)),
            Jmp(l) => items.push(u(*l)),
            Decjz(r, l) => items.extend([u(*r), u(*l)]),
            Copy(a, b) | UnpairL(a, b) | UnpairR(a, b) => items.extend([u(*a), u(*b)]),
            Pair(a, b, c) | Smn(a, b, c) | Univ(a, b, c) => items.extend([u(*a), u(*b), u(*c)]),
            Runb(a, b, c, d) => items.extend([u(*a), u(*b), u(*c), u(*d)]),
            Call(a, n, b) => items.extend([u(*a), nat(n.id()), u(*b)]),
        }
    }
    encode_seq(&items)
}

fn decode_canonical(e: &Nat) -> Option<Program> {
    let items = decode_seq(e)?;
    let mut it = items.into_iter();
    let mut instrs = Vec::new();
    let small = |v: Option<Nat>| -> Option<usize> { v?.to_usize() };
    while let Some(op) = it.next() {
        use Instr::*;
        let ins = match op.to_u64()? {
            0 => Halt,
            1 => Const(small(it.next())?, it.next()?),
            2 => Copy(small(it.next())?, small(it.next())?),
            3 => Inc(small(it.next())?),
            4 => Decjz(small(it.next())?, small(it.next())?),
            5 => Jmp(small(it.next())?),
            6 => Pair(small(it.next())?, small(it.next())?, small(it.next())?),
            7 => UnpairL(small(it.next())?, small(it.next())?),
            8 => UnpairR(small(it.next())?, small(it.next())?),
            9 => Smn(small(it.next())?, small(it.next())?, small(it.next())?),
            10 => Univ(small(it.next())?, small(it.next())?, small(it.next())?),
            11 => Runb(
                small(it.next())?,
                small(it.next())?,
                small(it.next())?,
                small(it.next())?,
            ),
            12 => {
                let d = small(it.next())?;
                let n = Native::from_id(it.next()?.to_u64()?)?;
                Call(d, n, small(it.next())?)
            }
            _ => return None,
        };
        instrs.push(ins);
    }
    let p = Program { instrs };
    p.is_well_formed().then_some(p)
}

/// Total: codes outside the image of `encode_program` give `Program::diverging()`.
pub fn decode_program(e: &Nat) -> Program {
    decode_canonical(e).unwrap_or_else(Program::diverging)
}

pub fn is_canonical(e: &Nat) -> bool {
    decode_canonical(e).is_some()
}

/// Code of the program computing `y ↦ φ_e(pair(x, y))`.
///
/// The prefix loads `x` through register 1 and clears it again so the
/// original program still starts from zeroed registers.
pub fn smn(e: &Nat, x: &Nat) -> Nat {
    let p = decode_program(e);
    p.after(vec![
        Instr::Const(1, x.clone()),
        Instr::Pair(0, 1, 0),
        Instr::Const(1, Nat::zero()),
    ])
    .encode()
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ProgramTextError {
    #[error(transparent)]
    Syntax(#[from] sexp::SexpError),
    #[error("instruction {index}: {msg}")]
    Bad { index: usize, msg: String },
}

fn parse_instr(e: &Sexp, index: usize) -> Result<Instr, ProgramTextError> {
    let bad = |msg: String| ProgramTextError::Bad { index, msg };
    let items = match e {
        Sexp::List(items) if !items.is_empty() => items,
        _ => return Err(bad("expected a parenthesised instruction".into())),
    };
    let head = match &items[0] {
        Sexp::Atom(a) => a.to_ascii_uppercase(),
        _ => return Err(bad("missing mnemonic".into())),
    };
    let args = &items[1..];
    let atom = |k: usize| -> Result<&str, ProgramTextError> {
        match args.get(k) {
            Some(Sexp::Atom(a)) => Ok(a.as_str()),
            _ => Err(bad(format!("{head}: missing operand {k}"))),
        }
    };
    let num = |k: usize| -> Result<usize, ProgramTextError> {
        let a = atom(k)?;
        a.parse::<usize>().map_err(|_| bad(format!("{head}: bad operand {a:?}")))
    };
    let big = |k: usize| -> Result<Nat, ProgramTextError> {
        let a = atom(k)?;
        a.parse::<Nat>().map_err(|_| bad(format!("{head}: bad constant {a:?}")))
    };
    let arity = |n: usize| -> Result<(), ProgramTextError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(bad(format!("{head}: expected {n} operands, got {}", args.len())))
        }
    };
    use Instr::*;
    let ins = match head.as_str() {
        "HALT" => {
            arity(0)?;
            Halt
        }
        "CONST" => {
            arity(2)?;
            Const(num(0)?, big(1)?)
        }
        "COPY" => {
            arity(2)?;
            Copy(num(0)?, num(1)?)
        }
        "INC" => {
            arity(1)?;
            Inc(num(0)?)
        }
        "DECJZ" => {
            arity(2)?;
            Decjz(num(0)?, num(1)?)
        }
        "JMP" => {
            arity(1)?;
            Jmp(num(0)?)
        }
        "PAIR" => {
            arity(3)?;
            Pair(num(0)?, num(1)?, num(2)?)
        }
        "UNPAIR_L" => {
            arity(2)?;
            UnpairL(num(0)?, num(1)?)
        }
        "UNPAIR_R" => {
            arity(2)?;
            UnpairR(num(0)?, num(1)?)
        }
        "SMN" => {
            arity(3)?;
            Smn(num(0)?, num(1)?, num(2)?)
        }
        "UNIV" => {
            arity(3)?;
            Univ(num(0)?, num(1)?, num(2)?)
        }
        "RUNB" => {
            arity(4)?;
            Runb(num(0)?, num(1)?, num(2)?, num(3)?)
        }
        "CALL" => {
            arity(3)?;
            let name = atom(1)?;
            let n = Native::from_name(name)
                .or_else(|| name.parse::<u64>().ok().and_then(Native::from_id))
                .ok_or_else(|| bad(format!("CALL: unknown native {name:?}")))?;
            Call(num(0)?, n, num(2)?)
        }
        other => return Err(bad(format!("unknown mnemonic {other:?}"))),
    };
    Ok(ins)
}

/// Parses program text: one S-expression instruction per line, `;` comments.
pub fn parse_program(src: &str) -> Result<Program, ProgramTextError> {
    let exprs = sexp::parse_all(src)?;
    let instrs = exprs
        .iter()
        .enumerate()
        .map(|(i, e)| parse_instr(e, i))
        .collect::<Result<Vec<_>, _>>()?;
    let p = Program { instrs };
    for (index, ins) in p.instrs.iter().enumerate() {
        if let Some(l) = ins.target() {
            if l > p.len() {
                return Err(ProgramTextError::Bad { index, msg: format!("label {l} out of range") });
            }
        }
        if ins.regs().iter().any(|&r| r >= MAX_REG) {
            return Err(ProgramTextError::Bad { index, msg: "register out of range".into() });
        }
    }
    Ok(p)
}
