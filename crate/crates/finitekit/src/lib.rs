//! Finite-case algorithmics workbench.
//!
//! The crate measures *bounded-domain* complexity: instead of asymptotic
//! classes it classifies measured operation-count traces over an explicit
//! size interval, computes the thresholds where a trace leaves or re-enters
//! a class, and drives constructive searches for hinted programs (a fixed
//! bit-level bytecode plus a per-size hint blob) on desk-scale problem
//! packs: 3CNF-SAT, bounded string compression, and budgeted integer
//! factorization.
//!
//! The main entry points:
//!
//! * [`complexity`] — minimal-constant bounds, the three rank functions,
//!   and the seven-level classification of a [`complexity::RuntimeTrace`].
//! * [`thresholds`] — explode/collapse scans, doubling-stability evidence,
//!   and rank composition arithmetic.
//! * [`vm`] — the fuel-metered bit stack machine, its canonical program
//!   enumerator, and the structured mini-language that validates family
//!   membership.
//! * [`search`] — lookup-hint construction, decision reduction, exhaustive
//!   optimal search, doubling search, and the stateful bandit-driven
//!   exploration loop.
//! * [`problems`] — SAT/compression/factorization verifiers, generators,
//!   golden data, and problem-specific procedures.
//! * [`annex`] — hardware budgets and the maximum-tractable-difficulty
//!   tables.
//! * [`cli`] — the subcommand surface used by the `finitekit` binary.
//!
//! Every operation is deterministic: randomized procedures take explicit
//! seeds and replay bit-exactly.

pub mod annex;
pub mod bits;
pub mod cli;
pub mod complexity;
pub mod hiprec;
pub mod problems;
pub mod report;
pub mod search;
pub mod thresholds;
pub mod vm;

pub use bits::Bits;
