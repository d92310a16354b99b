//! Minimal S-expression reader shared by the program and sentence text formats.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SexpError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected ')' at byte {0}")]
    StrayClose(usize),
    #[error("trailing input at byte {0}")]
    Trailing(usize),
}

fn tokens(src: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c == b';' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'(' || c == b')' {
            out.push((i, &src[i..i + 1]));
            i += 1;
        } else {
            let start = i;
            while i < bytes.len()
                && !bytes[i].is_ascii_whitespace()
                && bytes[i] != b'('
                && bytes[i] != b')'
                && bytes[i] != b';'
            {
                i += 1;
            }
            out.push((start, &src[start..i]));
        }
    }
    out
}

fn read(toks: &[(usize, &str)], pos: &mut usize) -> Result<Sexp, SexpError> {
    let (at, t) = *toks.get(*pos).ok_or(SexpError::Eof)?;
    *pos += 1;
    match t {
        "(" => {
            let mut items = Vec::new();
            loop {
                match toks.get(*pos) {
                    None => return Err(SexpError::Eof),
                    Some((_, ")")) => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read(toks, pos)?),
                }
            }
        }
        ")" => Err(SexpError::StrayClose(at)),
        _ => Ok(Sexp::Atom(t.to_string())),
    }
}

/// Reads every top-level expression in `src`.
pub fn parse_all(src: &str) -> Result<Vec<Sexp>, SexpError> {
    let toks = tokens(src);
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < toks.len() {
        out.push(read(&toks, &mut pos)?);
    }
    Ok(out)
}

/// Reads exactly one expression.
pub fn parse_one(src: &str) -> Result<Sexp, SexpError> {
    let toks = tokens(src);
    let mut pos = 0;
    let e = read(&toks, &mut pos)?;
    match toks.get(pos) {
        None => Ok(e),
        Some((at, _)) => Err(SexpError::Trailing(*at)),
    }
}
