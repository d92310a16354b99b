//! Natural-number codecs shared by programs and sentences.
//!
//! Two codings live here. `pair`/`unpair` is the Cantor pairing used for data
//! at run time. `encode_seq`/`decode_seq` turns a finite list of naturals into
//! a single natural whose bit length is linear in the total size of the list:
//! a leading `1` bit followed by the Elias-gamma code of `n + 1` for each item.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub type Nat = BigUint;

pub fn nat(v: u64) -> Nat {
    Nat::from(v)
}

/// Cantor pairing `(x+y)(x+y+1)/2 + y`.
pub fn pair(x: &Nat, y: &Nat) -> Nat {
    let s = x + y;
    ((&s * (&s + 1u32)) >> 1) + y
}

pub fn unpair(z: &Nat) -> (Nat, Nat) {
    // w = floor((sqrt(8z+1) - 1) / 2)
    let disc: Nat = (z << 3) + 1u32;
    let w: Nat = (disc.sqrt() - 1u32) >> 1;
    let t: Nat = (&w * (&w + 1u32)) >> 1;
    let y = z - &t;
    let x = &w - &y;
    (x, y)
}

pub fn pair_u64(x: u64, y: u64) -> Nat {
    pair(&nat(x), &nat(y))
}

/// Packs a list left to right as `pair(a, pair(b, c))`; `[]` is 0 and `[a]` is `a`.
pub fn pack(items: &[Nat]) -> Nat {
    match items {
        [] => Nat::zero(),
        [a] => a.clone(),
        [a, rest @ ..] => pair(a, &pack(rest)),
    }
}

/// Inverse of `pack` for a known arity.
pub fn unpack(z: &Nat, arity: usize) -> Vec<Nat> {
    match arity {
        0 => vec![],
        1 => vec![z.clone()],
        _ => {
            let (a, rest) = unpair(z);
            let mut out = vec![a];
            out.extend(unpack(&rest, arity - 1));
            out
        }
    }
}

struct BitWriter {
    words: Vec<u64>,
    len: usize,
}

impl BitWriter {
    fn new() -> Self {
        BitWriter { words: Vec::new(), len: 0 }
    }

    fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            let w = self.len / 64;
            self.words[w] |= 1 << (63 - self.len % 64);
        }
        self.len += 1;
    }

    fn push_gamma(&mut self, v: &Nat) {
        let m = v + 1u32;
        let bits = m.bits() as usize;
        for _ in 1..bits {
            self.push(false);
        }
        for i in (0..bits).rev() {
            self.push(m.bit(i as u64));
        }
    }

    /// Interprets the written bits as a big-endian binary numeral.
    fn finish(self) -> Nat {
        let bytes: Vec<u8> = self.words.iter().flat_map(|w| w.to_be_bytes()).collect();
        let pad = self.words.len() * 64 - self.len;
        BigUint::from_bytes_be(&bytes) >> pad
    }
}

struct BitReader<'a> {
    code: &'a Nat,
    // index of the next bit to read, counting down from the most significant
    next: Option<u64>,
}

impl<'a> BitReader<'a> {
    fn read(&mut self) -> Option<bool> {
        let i = self.next?;
        self.next = i.checked_sub(1);
        Some(self.code.bit(i))
    }

    fn at_end(&self) -> bool {
        self.next.is_none()
    }

    fn read_gamma(&mut self) -> Option<Nat> {
        let mut zeros = 0u64;
        loop {
            if self.read()? {
                break;
            }
            zeros += 1;
        }
        let m = if zeros < 64 {
            let mut m = 1u64;
            for _ in 0..zeros {
                m = (m << 1) | u64::from(self.read()?);
            }
            Nat::from(m)
        } else {
            let i = self.next?;
            let low = i.checked_sub(zeros - 1)?;
            let mask = (Nat::one() << zeros) - 1u32;
            let m = (Nat::one() << zeros) | ((self.code >> low) & mask);
            self.next = low.checked_sub(1);
            m
        };
        Some(m - 1u32)
    }
}

pub fn encode_seq(items: &[Nat]) -> Nat {
    let mut w = BitWriter::new();
    w.push(true);
    for it in items {
        w.push_gamma(it);
    }
    w.finish()
}

pub fn encode_seq_u64(items: &[u64]) -> Nat {
    let items: Vec<Nat> = items.iter().map(|&v| nat(v)).collect();
    encode_seq(&items)
}

/// `None` when `code` is not in the image of `encode_seq`.
pub fn decode_seq(code: &Nat) -> Option<Vec<Nat>> {
    if code.is_zero() {
        return None;
    }
    let top = code.bits() - 1;
    let mut r = BitReader { code, next: top.checked_sub(1) };
    let mut out = Vec::new();
    while !r.at_end() {
        out.push(r.read_gamma()?);
    }
    Some(out)
}

pub fn to_u64(v: &Nat) -> Option<u64> {
    v.to_u64()
}
