//! A reflective register machine: indices, budgeted evaluation, s-m-n and
//! both recursion theorems.
//!
//! Registers hold arbitrary naturals and start at zero. A program reads its
//! argument from register 0 and leaves its result there. Besides the basic
//! register instructions there are `SMN` and `UNIV`, a step-bounded universal
//! `RUNB` used for dovetailing, and `CALL` into a fixed table of total
//! sentence operations (see [`crate::natives`]).

pub mod asm;
pub mod code;
pub mod machine;
pub mod program;
pub mod recursion;

pub use asm::{Asm, Label};
pub use code::{decode_seq, encode_seq, nat, pack, pair, unpack, unpair, Nat};
pub use machine::{halting_steps, run, run_counted, Machine, Outcome, TraceEvent};
pub use program::{
    decode_program, encode_program, is_canonical, parse_program, smn, Instr, Program, Reg,
    ProgramTextError,
};
pub use recursion::{double_fix, double_fix_body, fix, fix_body, race};
