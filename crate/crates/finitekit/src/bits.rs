//! Bit strings: the input/output alphabet of the machine and the problem
//! packs.

use num::BigUint;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finite bit string. Bit 0 is the leftmost (most significant when the
/// string is read as a number).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bits(pub Vec<bool>);

impl Bits {
    pub fn empty() -> Self {
        Bits(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn push(&mut self, b: bool) {
        self.0.push(b);
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Bits)
    }

    /// The `width`-bit big-endian encoding of `value`.
    pub fn from_value(value: u64, width: usize) -> Self {
        let mut v = Vec::with_capacity(width);
        for i in (0..width).rev() {
            v.push((value >> i) & 1 == 1);
        }
        Bits(v)
    }

    /// Reads the string as a big-endian natural number.
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::from(0u32);
        for &b in &self.0 {
            acc = (acc << 1) + BigUint::from(b as u32);
        }
        acc
    }

    /// Reads the string as a big-endian natural number, failing on overflow.
    pub fn value_u64(&self) -> Option<u64> {
        if self.len() > 64 {
            return None;
        }
        let mut acc = 0u64;
        for &b in &self.0 {
            acc = (acc << 1) | b as u64;
        }
        Some(acc)
    }

    /// All bit strings of length exactly `n`, in numeric order.
    pub fn all_of_len(n: usize) -> Vec<Bits> {
        assert!(n < 32, "universe too large to enumerate");
        (0..(1u64 << n)).map(|v| Bits::from_value(v, n)).collect()
    }

    /// All bit strings of length at most `n`, ordered by length then value.
    /// There are `2^(n+1) - 1` of them.
    pub fn all_up_to_len(n: usize) -> Vec<Bits> {
        let mut out = Vec::new();
        for len in 0..=n {
            out.extend(Bits::all_of_len(len));
        }
        out
    }

    /// Packs into bytes, first bit in the high bit of the first byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len().div_ceil(8)];
        for (i, &b) in self.0.iter().enumerate() {
            if b {
                out[i / 8] |= 0x80 >> (i % 8);
            }
        }
        out
    }

    /// Inverse of [`Bits::to_bytes`] given the original bit length.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Self {
        let mut v = Vec::with_capacity(len);
        for i in 0..len {
            let byte = bytes.get(i / 8).copied().unwrap_or(0);
            v.push(byte & (0x80 >> (i % 8)) != 0);
        }
        Bits(v)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits(\"{}\")", self)
    }
}

/// FNV-1a 64-bit hash; used for run digests and tabu keys.
pub fn fnv1a(data: impl IntoIterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for byte in data {
        h ^= byte as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
