//! Executable constructions around effective inseparability and essential
//! incompleteness, on top of a reflective register machine.

pub mod cesets;
pub mod cli;
pub mod constructions;
pub mod kernel;
pub mod natives;
pub mod sexp;
pub mod syntax;
pub mod theories;
