//! The fuel-metered interpreter: every instruction costs one fuel unit,
//! memory is the bit stack plus read-only input/hint arrays, and every
//! fault is a trap reported in the outcome, never a host panic.

use super::{Bytecode, Op};
use crate::bits::{fnv1a, Bits};
use serde::{Deserialize, Serialize};

/// A per-size hint: a finite byte string addressed bit-wise by READ_HINT
/// (bit i lives in byte i/8, high bit first).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Hint {
    pub bytes: Vec<u8>,
}

impl Hint {
    pub fn empty() -> Self {
        Hint { bytes: Vec::new() }
    }

    pub fn from_bits(bits: &Bits) -> Self {
        Hint {
            bytes: bits.to_bytes(),
        }
    }

    pub fn len_bytes(&self) -> usize {
        self.bytes.len()
    }

    pub fn len_bits(&self) -> usize {
        self.bytes.len() * 8
    }

    pub fn bit(&self, i: u32) -> Option<bool> {
        let byte = self.bytes.get(i as usize / 8)?;
        Some(byte & (0x80 >> (i % 8)) != 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrapKind {
    StackUnderflow,
    InputOutOfBounds,
    HintOutOfBounds,
    PcOutOfBounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunStatus {
    Halted,
    FuelExhausted,
    Trapped(TrapKind),
}

/// A fixed-width snapshot of the machine state at one step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateDigest {
    pub step: u64,
    pub hash: u64,
    /// Up to the top four stack bits, top first.
    pub top: Vec<bool>,
}

/// Everything a run produced. `output` is present exactly when the run
/// halted cleanly; `emitted` always carries the bits written so far (the
/// compression procedures consume mid-run output).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub output: Option<Bits>,
    pub emitted: Bits,
    pub fuel_used: u64,
    pub fuel_granted: u64,
    pub digests: Vec<StateDigest>,
    /// READ_INPUT executions.
    pub input_probes: u64,
    /// READ_HINT executions (table probes for lookup solvers).
    pub hint_probes: u64,
}

fn snapshot(step: u64, pc: usize, stack: &[bool], emitted: &Bits) -> StateDigest {
    let mut data = Vec::with_capacity(stack.len() + 16);
    data.extend_from_slice(&(pc as u64).to_le_bytes());
    data.extend(stack.iter().map(|&b| b as u8));
    data.extend_from_slice(&(emitted.len() as u64).to_le_bytes());
    let top = stack.iter().rev().take(4).copied().collect();
    StateDigest {
        step,
        hash: fnv1a(data),
        top,
    }
}

/// Executes at most `fuel` instructions. Records a state digest every
/// `snapshot_every` steps (0 disables snapshots). Pure: identical inputs
/// give identical outcomes.
pub fn run(
    code: &Bytecode,
    hint: &Hint,
    input: &Bits,
    fuel: u64,
    snapshot_every: u64,
) -> RunOutcome {
    let mut stack: Vec<bool> = Vec::with_capacity(16);
    let mut emitted = Bits::empty();
    let mut digests = Vec::new();
    let mut pc: usize = 0;
    let mut fuel_used: u64 = 0;
    let mut input_probes = 0;
    let mut hint_probes = 0;

    let finish = |status, emitted: Bits, fuel_used, digests, input_probes, hint_probes| {
        let output = if status == RunStatus::Halted {
            Some(emitted.clone())
        } else {
            None
        };
        RunOutcome {
            status,
            output,
            emitted,
            fuel_used,
            fuel_granted: fuel,
            digests,
            input_probes,
            hint_probes,
        }
    };

    macro_rules! trap {
        ($kind:expr) => {
            return finish(
                RunStatus::Trapped($kind),
                emitted,
                fuel_used,
                digests,
                input_probes,
                hint_probes,
            )
        };
    }

    loop {
        if fuel_used == fuel {
            return finish(
                RunStatus::FuelExhausted,
                emitted,
                fuel_used,
                digests,
                input_probes,
                hint_probes,
            );
        }
        let Some(op) = code.ops.get(pc) else {
            trap!(TrapKind::PcOutOfBounds);
        };
        fuel_used += 1;
        let mut next_pc = pc + 1;
        match *op {
            Op::Push0 => stack.push(false),
            Op::Push1 => stack.push(true),
            Op::ReadInput(i) => {
                input_probes += 1;
                match input.bit(i as usize) {
                    Some(b) => stack.push(b),
                    None => trap!(TrapKind::InputOutOfBounds),
                }
            }
            Op::ReadHint(i) => {
                hint_probes += 1;
                match hint.bit(i) {
                    Some(b) => stack.push(b),
                    None => trap!(TrapKind::HintOutOfBounds),
                }
            }
            Op::Dup => {
                let Some(&top) = stack.last() else {
                    trap!(TrapKind::StackUnderflow);
                };
                stack.push(top);
            }
            Op::Swap => {
                let n = stack.len();
                if n < 2 {
                    trap!(TrapKind::StackUnderflow);
                }
                stack.swap(n - 1, n - 2);
            }
            Op::Pop => {
                if stack.pop().is_none() {
                    trap!(TrapKind::StackUnderflow);
                }
            }
            Op::Not => {
                let Some(top) = stack.last_mut() else {
                    trap!(TrapKind::StackUnderflow);
                };
                *top = !*top;
            }
            Op::And | Op::Or | Op::Xor | Op::Add | Op::Lt => {
                let (Some(rhs), Some(lhs)) = (stack.pop(), stack.pop()) else {
                    trap!(TrapKind::StackUnderflow);
                };
                let v = match *op {
                    Op::And => lhs & rhs,
                    Op::Or => lhs | rhs,
                    // Addition mod 2 with the carry dropped.
                    Op::Xor | Op::Add => lhs ^ rhs,
                    Op::Lt => !lhs & rhs,
                    _ => unreachable!(),
                };
                stack.push(v);
            }
            Op::Jz(rel) => {
                let Some(cond) = stack.pop() else {
                    trap!(TrapKind::StackUnderflow);
                };
                if !cond {
                    next_pc = (pc as i64 + rel as i64) as usize;
                }
            }
            Op::Jmp(rel) => {
                next_pc = (pc as i64 + rel as i64) as usize;
            }
            Op::Output => {
                let Some(bit) = stack.pop() else {
                    trap!(TrapKind::StackUnderflow);
                };
                emitted.push(bit);
            }
            Op::Halt => {
                if snapshot_every > 0 && fuel_used % snapshot_every == 0 {
                    digests.push(snapshot(fuel_used, pc, &stack, &emitted));
                }
                return finish(
                    RunStatus::Halted,
                    emitted,
                    fuel_used,
                    digests,
                    input_probes,
                    hint_probes,
                );
            }
        }
        if snapshot_every > 0 && fuel_used % snapshot_every == 0 {
            digests.push(snapshot(fuel_used, next_pc, &stack, &emitted));
        }
        pc = next_pc;
    }
}

/// A fixed-size aggregate of a run, suitable for the search state log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunDigest {
    pub status: RunStatus,
    pub fuel_used: u64,
    pub fuel_granted: u64,
    pub output_hash: u64,
    pub first_state: Option<StateDigest>,
    pub last_state: Option<StateDigest>,
}

/// Summarizes an outcome; identical runs summarize identically.
pub fn digest(outcome: &RunOutcome) -> RunDigest {
    let mut data: Vec<u8> = outcome.emitted.to_bytes();
    data.push(match outcome.status {
        RunStatus::Halted => 1,
        RunStatus::FuelExhausted => 2,
        RunStatus::Trapped(_) => 3,
    });
    data.extend_from_slice(&(outcome.emitted.len() as u64).to_le_bytes());
    RunDigest {
        status: outcome.status,
        fuel_used: outcome.fuel_used,
        fuel_granted: outcome.fuel_granted,
        output_hash: fnv1a(data),
        first_state: outcome.digests.first().cloned(),
        last_state: outcome.digests.last().cloned(),
    }
}
