//! Canonical program enumeration: by length ascending, then
//! lexicographically over a fixed opcode numbering. Cursors are plain
//! values; resuming from one continues the exact sequence, and disjoint
//! cursor intervals can be swept in parallel.

use super::{Bytecode, Error, Op, Result};
use serde::{Deserialize, Serialize};

/// Bounds of the enumeration alphabet: programs address at most
/// `input_bits` input positions and `hint_bits` hint positions; jumps may
/// target any instruction of the enclosing program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumConfig {
    pub max_len: usize,
    pub input_bits: u32,
    pub hint_bits: u32,
}

impl EnumConfig {
    /// Alphabet size for programs of length `len`: 13 fixed opcodes plus
    /// the operand-carrying forms (`2·len` jump targets).
    pub fn alphabet_size(&self, len: usize) -> u64 {
        13 + self.input_bits as u64 + self.hint_bits as u64 + 2 * len as u64
    }

    fn symbol(&self, len: usize, pos: usize, s: u64) -> Op {
        let inp = self.input_bits as u64;
        let hint = self.hint_bits as u64;
        let l = len as u64;
        let mut s = s;
        if s == 0 {
            return Op::Push0;
        }
        s -= 1;
        if s == 0 {
            return Op::Push1;
        }
        s -= 1;
        if s < inp {
            return Op::ReadInput(s as u32);
        }
        s -= inp;
        if s < hint {
            return Op::ReadHint(s as u32);
        }
        s -= hint;
        const PLAIN: [Op; 9] = [
            Op::Dup,
            Op::Swap,
            Op::Pop,
            Op::Not,
            Op::And,
            Op::Or,
            Op::Xor,
            Op::Add,
            Op::Lt,
        ];
        if s < 9 {
            return PLAIN[s as usize];
        }
        s -= 9;
        if s < l {
            return Op::Jz((s as i64 - pos as i64) as i32);
        }
        s -= l;
        if s < l {
            return Op::Jmp((s as i64 - pos as i64) as i32);
        }
        s -= l;
        if s == 0 {
            Op::Output
        } else {
            Op::Halt
        }
    }
}

/// Position in the enumeration: `index` within the block of programs of
/// length `len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cursor {
    pub len: usize,
    pub index: u128,
}

impl Cursor {
    pub fn start() -> Self {
        Cursor { len: 1, index: 0 }
    }
}

/// Number of programs of length exactly `len`.
pub fn program_count(config: &EnumConfig, len: usize) -> Result<u128> {
    let n = config.alphabet_size(len) as u128;
    n.checked_pow(len as u32)
        .ok_or_else(|| Error::SpaceTooLarge(format!("{n}^{len} overflows")))
}

fn decode(config: &EnumConfig, cursor: Cursor) -> Bytecode {
    let n = config.alphabet_size(cursor.len) as u128;
    let mut digits = vec![0u64; cursor.len];
    let mut rest = cursor.index;
    for d in digits.iter_mut().rev() {
        *d = (rest % n) as u64;
        rest /= n;
    }
    let ops = digits
        .iter()
        .enumerate()
        .map(|(pos, &s)| config.symbol(cursor.len, pos, s))
        .collect();
    // Jump targets are in range by construction.
    Bytecode { ops }
}

/// Returns the program at `cursor` (or the very first program when `None`)
/// together with the cursor of the next program. Errors with `Exhausted`
/// once past the last program of length `max_len`.
pub fn enumerate_programs(
    config: &EnumConfig,
    cursor: Option<Cursor>,
) -> Result<(Bytecode, Cursor)> {
    let mut cur = cursor.unwrap_or_else(Cursor::start);
    // Normalize a cursor that sits past its block's end.
    loop {
        if cur.len > config.max_len {
            return Err(Error::Exhausted);
        }
        let count = program_count(config, cur.len)?;
        if cur.index < count {
            break;
        }
        cur = Cursor {
            len: cur.len + 1,
            index: 0,
        };
    }
    let program = decode(config, cur);
    let next = Cursor {
        len: cur.len,
        index: cur.index + 1,
    };
    Ok((program, next))
}

/// Iterator-style wrapper for sequential sweeps.
#[derive(Debug, Clone)]
pub struct ProgramEnumerator {
    config: EnumConfig,
    cursor: Option<Cursor>,
    exhausted: bool,
}

impl ProgramEnumerator {
    pub fn new(config: EnumConfig) -> Self {
        ProgramEnumerator {
            config,
            cursor: None,
            exhausted: false,
        }
    }

    pub fn from_cursor(config: EnumConfig, cursor: Cursor) -> Self {
        ProgramEnumerator {
            config,
            cursor: Some(cursor),
            exhausted: false,
        }
    }

    pub fn cursor(&self) -> Cursor {
        self.cursor.unwrap_or_else(Cursor::start)
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn next_program(&mut self) -> Option<Bytecode> {
        if self.exhausted {
            return None;
        }
        match enumerate_programs(&self.config, self.cursor) {
            Ok((program, next)) => {
                self.cursor = Some(next);
                Some(program)
            }
            Err(_) => {
                self.exhausted = true;
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(max_len: usize, input_bits: u32, hint_bits: u32) -> EnumConfig {
        EnumConfig {
            max_len,
            input_bits,
            hint_bits,
        }
    }

    #[test]
    fn order_starts_with_push_opcodes() {
        let c = cfg(1, 2, 0);
        let mut e = ProgramEnumerator::new(c);
        assert_eq!(e.next_program().unwrap().ops, vec![Op::Push0]);
        assert_eq!(e.next_program().unwrap().ops, vec![Op::Push1]);
        assert_eq!(e.next_program().unwrap().ops, vec![Op::ReadInput(0)]);
        assert_eq!(e.next_program().unwrap().ops, vec![Op::ReadInput(1)]);
        assert_eq!(e.next_program().unwrap().ops, vec![Op::Dup]);
    }

    #[test]
    fn length_two_count_is_alphabet_squared() {
        let c = cfg(2, 1, 1);
        let mut e = ProgramEnumerator::new(c);
        let mut len1 = 0u64;
        let mut len2 = 0u64;
        while let Some(p) = e.next_program() {
            match p.len() {
                1 => len1 += 1,
                2 => len2 += 1,
                _ => panic!("unexpected length"),
            }
        }
        assert_eq!(len1, c.alphabet_size(1));
        assert_eq!(len2, c.alphabet_size(2) * c.alphabet_size(2));
    }

    #[test]
    fn every_enumerated_program_is_valid_and_unique() {
        let c = cfg(2, 1, 1);
        let mut e = ProgramEnumerator::new(c);
        let mut seen = std::collections::HashSet::new();
        while let Some(p) = e.next_program() {
            p.validate().expect("jump targets in bounds");
            assert!(seen.insert(p.ops.clone()), "duplicate {:?}", p.ops);
        }
    }

    #[test]
    fn completeness_matches_cross_product_at_length_three() {
        // The multiset of length <= 3 programs equals the cross product of
        // per-position symbol choices.
        let c = cfg(3, 1, 0);
        let mut count = 0u128;
        let mut e = ProgramEnumerator::new(c);
        while e.next_program().is_some() {
            count += 1;
        }
        let expect: u128 = (1..=3)
            .map(|l| program_count(&c, l).unwrap())
            .sum();
        assert_eq!(count, expect);
    }

    #[test]
    fn resume_equals_uninterrupted() {
        let c = cfg(3, 2, 2);
        let mut full = ProgramEnumerator::new(c);
        let mut head = ProgramEnumerator::new(c);
        for _ in 0..137 {
            head.next_program().unwrap();
        }
        let mut resumed = ProgramEnumerator::from_cursor(c, head.cursor());
        for _ in 0..137 {
            full.next_program().unwrap();
        }
        for i in 0..1000 {
            let a = full.next_program();
            let b = resumed.next_program();
            assert_eq!(a, b, "diverged at step {i}");
            if a.is_none() {
                break;
            }
        }
    }

    #[test]
    fn exhaustion_is_signaled() {
        let c = cfg(1, 0, 0);
        let total = program_count(&c, 1).unwrap();
        let mut cursor = None;
        for _ in 0..total {
            let (_, next) = enumerate_programs(&c, cursor).unwrap();
            cursor = Some(next);
        }
        assert!(matches!(
            enumerate_programs(&c, cursor),
            Err(Error::Exhausted)
        ));
    }
}
