//! Flat bytecode over a bit-valued operand stack, and its line-oriented
//! text format.

use super::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// One instruction. Values on the stack are single bits; ADD is addition
/// mod 2 with the carry dropped. Jumps are relative to the instruction's
/// own index and must land inside the program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    Push0,
    Push1,
    ReadInput(u32),
    ReadHint(u32),
    Dup,
    Swap,
    Pop,
    Not,
    And,
    Or,
    Xor,
    Add,
    Lt,
    Jz(i32),
    Jmp(i32),
    Output,
    Halt,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Push0 => write!(f, "PUSH0"),
            Op::Push1 => write!(f, "PUSH1"),
            Op::ReadInput(i) => write!(f, "READ_INPUT {i}"),
            Op::ReadHint(i) => write!(f, "READ_HINT {i}"),
            Op::Dup => write!(f, "DUP"),
            Op::Swap => write!(f, "SWAP"),
            Op::Pop => write!(f, "POP"),
            Op::Not => write!(f, "NOT"),
            Op::And => write!(f, "AND"),
            Op::Or => write!(f, "OR"),
            Op::Xor => write!(f, "XOR"),
            Op::Add => write!(f, "ADD"),
            Op::Lt => write!(f, "LT"),
            Op::Jz(rel) => write!(f, "JZ {rel}"),
            Op::Jmp(rel) => write!(f, "JMP {rel}"),
            Op::Output => write!(f, "OUTPUT"),
            Op::Halt => write!(f, "HALT"),
        }
    }
}

/// A validated instruction sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Bytecode {
    pub ops: Vec<Op>,
}

impl Bytecode {
    /// Wraps and checks jump targets: every `JZ`/`JMP` at index `i` with
    /// offset `rel` must satisfy `0 <= i + rel < len`.
    pub fn new(ops: Vec<Op>) -> Result<Self> {
        let code = Bytecode { ops };
        code.validate()?;
        Ok(code)
    }

    pub fn validate(&self) -> Result<()> {
        let len = self.ops.len() as i64;
        for (i, op) in self.ops.iter().enumerate() {
            if let Op::Jz(rel) | Op::Jmp(rel) = op {
                let target = i as i64 + *rel as i64;
                if target < 0 || target >= len {
                    return Err(Error::JumpOutOfBounds { index: i });
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Largest hint bit index the program can address statically, if any.
    pub fn max_hint_index(&self) -> Option<u32> {
        self.ops
            .iter()
            .filter_map(|op| match op {
                Op::ReadHint(i) => Some(*i),
                _ => None,
            })
            .max()
    }

    /// The distinct hint bit indices addressed anywhere in the program.
    pub fn hint_indices(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .ops
            .iter()
            .filter_map(|op| match op {
                Op::ReadHint(i) => Some(*i),
                _ => None,
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// One mnemonic per line, uppercase, decimal operands.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for op in &self.ops {
            s.push_str(&op.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses the text format; the inverse of [`Bytecode::to_text`] and
    /// byte-stable under round-trip.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut ops = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() {
                continue;
            }
            let mut parts = t.split_whitespace();
            let mnemonic = parts.next().unwrap();
            let operand = parts.next();
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line,
                    message: "too many fields".into(),
                });
            }
            let need = |o: Option<&str>| -> Result<i64> {
                o.ok_or(Error::Parse {
                    line,
                    message: "missing operand".into(),
                })?
                .parse()
                .map_err(|_| Error::Parse {
                    line,
                    message: "bad operand".into(),
                })
            };
            let none = |o: Option<&str>, op: Op| -> Result<Op> {
                if o.is_some() {
                    Err(Error::Parse {
                        line,
                        message: "unexpected operand".into(),
                    })
                } else {
                    Ok(op)
                }
            };
            let op = match mnemonic {
                "PUSH0" => none(operand, Op::Push0)?,
                "PUSH1" => none(operand, Op::Push1)?,
                "READ_INPUT" => Op::ReadInput(need(operand)? as u32),
                "READ_HINT" => Op::ReadHint(need(operand)? as u32),
                "DUP" => none(operand, Op::Dup)?,
                "SWAP" => none(operand, Op::Swap)?,
                "POP" => none(operand, Op::Pop)?,
                "NOT" => none(operand, Op::Not)?,
                "AND" => none(operand, Op::And)?,
                "OR" => none(operand, Op::Or)?,
                "XOR" => none(operand, Op::Xor)?,
                "ADD" => none(operand, Op::Add)?,
                "LT" => none(operand, Op::Lt)?,
                "JZ" => Op::Jz(need(operand)? as i32),
                "JMP" => Op::Jmp(need(operand)? as i32),
                "OUTPUT" => none(operand, Op::Output)?,
                "HALT" => none(operand, Op::Halt)?,
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown mnemonic `{other}`"),
                    })
                }
            };
            ops.push(op);
        }
        Bytecode::new(ops)
    }
}
