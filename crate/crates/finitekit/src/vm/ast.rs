//! The structured candidate language: enough shape to express the family
//! constraints (typed procedures, bounded nesting, the solver interface
//! pair) and to author hand-written candidates that compile onto the
//! stack bytecode.
//!
//! The compiler substitutes single-static bindings; loop-carried mutation
//! has no bytecode realization (the machine has no local-variable
//! instructions), so reassignment is rejected at compile time. The walker
//! interprets the full statement set and is the reference semantics for
//! differential testing.

use super::{Bytecode, Error, Op, Result};
use crate::bits::Bits;
use crate::vm::{run, Hint, RunStatus};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    And,
    Or,
    Xor,
    Add,
    Lt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    Input(u32),
    Hint(u32),
    Var(String),
    Not(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

/// The statement kinds of the candidate family: assignment, bare
/// evaluation, loop control, two-armed conditionals, unconditional loops,
/// and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Assign { name: String, value: Expr },
    Eval(Expr),
    If {
        cond: Expr,
        then_block: Vec<Stmt>,
        else_block: Vec<Stmt>,
    },
    WhileTrue(Vec<Stmt>),
    Break,
    Continue,
    Return(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Procedure {
    pub name: String,
    pub params: Vec<String>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ast {
    pub procedures: Vec<Procedure>,
    pub global_constants: Vec<bool>,
}

impl Ast {
    /// A solver skeleton: a trivial `Initialize(hint)` plus the given
    /// `Query(instance)` body.
    pub fn solver(query_body: Vec<Stmt>) -> Self {
        Ast {
            procedures: vec![
                Procedure {
                    name: "Initialize".into(),
                    params: vec!["hint".into()],
                    body: vec![],
                },
                Procedure {
                    name: "Query".into(),
                    params: vec!["instance".into()],
                    body: query_body,
                },
            ],
            global_constants: vec![],
        }
    }

    /// Plain text rendering; its byte length is what the program-size
    /// limit measures.
    pub fn render(&self) -> String {
        fn expr(e: &Expr, out: &mut String) {
            match e {
                Expr::Const(b) => out.push(if *b { '1' } else { '0' }),
                Expr::Input(i) => {
                    let _ = write!(out, "input[{i}]");
                }
                Expr::Hint(i) => {
                    let _ = write!(out, "hint[{i}]");
                }
                Expr::Var(n) => out.push_str(n),
                Expr::Not(a) => {
                    out.push_str("NOT(");
                    expr(a, out);
                    out.push(')');
                }
                Expr::Bin(op, a, b) => {
                    let name = match op {
                        BinOp::And => "AND",
                        BinOp::Or => "OR",
                        BinOp::Xor => "XOR",
                        BinOp::Add => "ADD",
                        BinOp::Lt => "LT",
                    };
                    let _ = write!(out, "{name}(");
                    expr(a, out);
                    out.push(',');
                    expr(b, out);
                    out.push(')');
                }
            }
        }
        fn block(stmts: &[Stmt], indent: usize, out: &mut String) {
            for s in stmts {
                for _ in 0..indent {
                    out.push_str("  ");
                }
                match s {
                    Stmt::Assign { name, value } => {
                        let _ = write!(out, "{name} = ");
                        expr(value, out);
                    }
                    Stmt::Eval(e) => expr(e, out),
                    Stmt::If {
                        cond,
                        then_block,
                        else_block,
                    } => {
                        out.push_str("IF(");
                        expr(cond, out);
                        out.push_str(")\n");
                        block(then_block, indent + 1, out);
                        for _ in 0..indent {
                            out.push_str("  ");
                        }
                        out.push_str("ELSE\n");
                        block(else_block, indent + 1, out);
                        continue;
                    }
                    Stmt::WhileTrue(body) => {
                        out.push_str("WHILE(true)\n");
                        block(body, indent + 1, out);
                        continue;
                    }
                    Stmt::Break => out.push_str("BREAK"),
                    Stmt::Continue => out.push_str("CONTINUE"),
                    Stmt::Return(e) => {
                        out.push_str("RETURN(");
                        expr(e, out);
                        out.push(')');
                    }
                }
                out.push('\n');
            }
        }
        let mut out = String::new();
        for p in &self.procedures {
            let _ = write!(out, "{}({})\n", p.name, p.params.join(","));
            block(&p.body, 1, &mut out);
        }
        out
    }
}

/// Structural limits of the candidate family. The defaults mirror the
/// family's published constants; enumeration-scale configurations shrink
/// them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyLimits {
    pub max_procedures: usize,
    pub max_statements_per_procedure: usize,
    pub max_nesting: usize,
    pub max_expression_arity: usize,
    pub max_global_constants: usize,
    pub max_program_bytes: usize,
}

impl Default for FamilyLimits {
    fn default() -> Self {
        FamilyLimits {
            max_procedures: 20,
            max_statements_per_procedure: 400,
            max_nesting: 5,
            max_expression_arity: 20,
            max_global_constants: 400,
            max_program_bytes: 20000,
        }
    }
}

impl FamilyLimits {
    /// A tighter configuration for tests and enumeration experiments.
    pub fn small() -> Self {
        FamilyLimits {
            max_procedures: 5,
            max_statements_per_procedure: 40,
            max_nesting: 3,
            max_expression_arity: 5,
            max_global_constants: 40,
            max_program_bytes: 2000,
        }
    }
}

/// A family-constraint breach, tagged with the constraint item it breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub item: u8,
    pub message: String,
}

fn stmt_count(stmts: &[Stmt]) -> usize {
    stmts
        .iter()
        .map(|s| match s {
            Stmt::If {
                then_block,
                else_block,
                ..
            } => 1 + stmt_count(then_block) + stmt_count(else_block),
            Stmt::WhileTrue(body) => 1 + stmt_count(body),
            _ => 1,
        })
        .sum()
}

fn nesting_depth(stmts: &[Stmt]) -> usize {
    stmts
        .iter()
        .map(|s| match s {
            Stmt::If {
                then_block,
                else_block,
                ..
            } => 1 + nesting_depth(then_block).max(nesting_depth(else_block)),
            Stmt::WhileTrue(body) => 1 + nesting_depth(body),
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

/// Distinct variable-like leaves (locals, input cells, hint cells) of an
/// expression; the family's notion of expression arity.
fn expr_arity(e: &Expr) -> usize {
    fn leaves(e: &Expr, set: &mut std::collections::HashSet<String>) {
        match e {
            Expr::Const(_) => {}
            Expr::Input(i) => {
                set.insert(format!("i{i}"));
            }
            Expr::Hint(i) => {
                set.insert(format!("h{i}"));
            }
            Expr::Var(n) => {
                set.insert(format!("v{n}"));
            }
            Expr::Not(a) => leaves(a, set),
            Expr::Bin(_, a, b) => {
                leaves(a, set);
                leaves(b, set);
            }
        }
    }
    let mut set = std::collections::HashSet::new();
    leaves(e, &mut set);
    set.len()
}

fn for_each_expr<'a>(stmts: &'a [Stmt], f: &mut impl FnMut(&'a Expr)) {
    for s in stmts {
        match s {
            Stmt::Assign { value, .. } => f(value),
            Stmt::Eval(e) => f(e),
            Stmt::If {
                cond,
                then_block,
                else_block,
            } => {
                f(cond);
                for_each_expr(then_block, f);
                for_each_expr(else_block, f);
            }
            Stmt::WhileTrue(body) => for_each_expr(body, f),
            Stmt::Break | Stmt::Continue => {}
            Stmt::Return(e) => f(e),
        }
    }
}

/// Checks every structural family constraint; an empty result means the
/// candidate is a family member. Each violation names the constraint item
/// it breaches.
pub fn validate_family(ast: &Ast, limits: &FamilyLimits) -> Vec<Violation> {
    let mut out = Vec::new();
    if ast.procedures.len() > limits.max_procedures {
        out.push(Violation {
            item: 2,
            message: format!(
                "{} procedures exceed the limit {}",
                ast.procedures.len(),
                limits.max_procedures
            ),
        });
    }
    if ast.global_constants.len() > limits.max_global_constants {
        out.push(Violation {
            item: 17,
            message: format!(
                "{} global constants exceed the limit {}",
                ast.global_constants.len(),
                limits.max_global_constants
            ),
        });
    }
    let mut heavy = 0usize;
    let mut light = 0usize;
    for p in &ast.procedures {
        let count = stmt_count(&p.body);
        if count > limits.max_statements_per_procedure {
            out.push(Violation {
                item: 15,
                message: format!(
                    "procedure `{}` has {count} statements, limit {}",
                    p.name, limits.max_statements_per_procedure
                ),
            });
        }
        let depth = nesting_depth(&p.body);
        if depth > limits.max_nesting {
            out.push(Violation {
                item: 13,
                message: format!(
                    "procedure `{}` has nesting level {depth}, limit {}",
                    p.name, limits.max_nesting
                ),
            });
        }
        for_each_expr(&p.body, &mut |e| {
            let arity = expr_arity(e);
            if arity > limits.max_expression_arity {
                out.push(Violation {
                    item: 10,
                    message: format!(
                        "expression of arity {arity} exceeds the limit {}",
                        limits.max_expression_arity
                    ),
                });
            } else if arity >= 6 {
                heavy += 1;
            } else {
                light += 1;
            }
        });
    }
    // Heavy/light expression budgets scale with the procedure/statement
    // limits (20 and 400 at the defaults).
    if heavy > limits.max_procedures {
        out.push(Violation {
            item: 10,
            message: format!("{heavy} heavy expressions exceed the limit"),
        });
    }
    if light > limits.max_statements_per_procedure {
        out.push(Violation {
            item: 11,
            message: format!("{light} light expressions exceed the limit"),
        });
    }
    let bytes = ast.render().len();
    if bytes > limits.max_program_bytes {
        out.push(Violation {
            item: 16,
            message: format!(
                "rendered source is {bytes} bytes, limit {}",
                limits.max_program_bytes
            ),
        });
    }
    for (name, item) in [("Initialize", 18u8), ("Query", 18u8)] {
        match ast.procedures.iter().find(|p| p.name == name) {
            None => out.push(Violation {
                item,
                message: format!("solver interface procedure `{name}` is missing"),
            }),
            Some(p) if p.params.len() != 1 => out.push(Violation {
                item,
                message: format!(
                    "`{name}` must take exactly one parameter, has {}",
                    p.params.len()
                ),
            }),
            _ => {}
        }
    }
    out
}

struct Compiler {
    ops: Vec<Op>,
    env: Vec<HashMap<String, Expr>>,
}

struct LoopCtx {
    start: usize,
    breaks: Vec<usize>,
}

impl Compiler {
    fn lookup(&self, name: &str) -> Option<&Expr> {
        self.env.iter().rev().find_map(|scope| scope.get(name))
    }

    fn bound_anywhere(&self, name: &str) -> bool {
        self.env.iter().any(|scope| scope.contains_key(name))
    }

    fn expr(&mut self, e: &Expr) -> Result<()> {
        match e {
            Expr::Const(false) => self.ops.push(Op::Push0),
            Expr::Const(true) => self.ops.push(Op::Push1),
            Expr::Input(i) => self.ops.push(Op::ReadInput(*i)),
            Expr::Hint(i) => self.ops.push(Op::ReadHint(*i)),
            Expr::Var(name) => {
                let bound = self
                    .lookup(name)
                    .cloned()
                    .ok_or_else(|| Error::Compile(format!("unknown identifier `{name}`")))?;
                self.expr(&bound)?;
            }
            Expr::Not(a) => {
                self.expr(a)?;
                self.ops.push(Op::Not);
            }
            Expr::Bin(op, a, b) => {
                self.expr(a)?;
                self.expr(b)?;
                self.ops.push(match op {
                    BinOp::And => Op::And,
                    BinOp::Or => Op::Or,
                    BinOp::Xor => Op::Xor,
                    BinOp::Add => Op::Add,
                    BinOp::Lt => Op::Lt,
                });
            }
        }
        Ok(())
    }

    fn block(&mut self, stmts: &[Stmt], loop_ctx: Option<&mut LoopCtx>) -> Result<()> {
        self.env.push(HashMap::new());
        let mut loop_ctx = loop_ctx;
        for s in stmts {
            match s {
                Stmt::Assign { name, value } => {
                    if self.bound_anywhere(name) {
                        self.env.pop();
                        return Err(Error::Compile(format!(
                            "reassignment to `{name}` is not supported by the stack compiler"
                        )));
                    }
                    // Close over the current bindings so later shadow scopes
                    // cannot change the meaning.
                    let closed = self.substitute(value)?;
                    self.env.last_mut().unwrap().insert(name.clone(), closed);
                }
                Stmt::Eval(e) => {
                    self.expr(e)?;
                    self.ops.push(Op::Pop);
                }
                Stmt::If {
                    cond,
                    then_block,
                    else_block,
                } => {
                    self.expr(cond)?;
                    let jz_at = self.ops.len();
                    self.ops.push(Op::Jz(0)); // patched to the else arm
                    self.block(then_block, loop_ctx.as_deref_mut())?;
                    let jmp_at = self.ops.len();
                    self.ops.push(Op::Jmp(0)); // patched past the else arm
                    let else_start = self.ops.len();
                    self.block(else_block, loop_ctx.as_deref_mut())?;
                    let end = self.ops.len();
                    self.ops[jz_at] = Op::Jz((else_start as i64 - jz_at as i64) as i32);
                    self.ops[jmp_at] = Op::Jmp((end as i64 - jmp_at as i64) as i32);
                }
                Stmt::WhileTrue(body) => {
                    let mut ctx = LoopCtx {
                        start: self.ops.len(),
                        breaks: Vec::new(),
                    };
                    self.block(body, Some(&mut ctx))?;
                    let back = self.ops.len();
                    self.ops
                        .push(Op::Jmp((ctx.start as i64 - back as i64) as i32));
                    let end = self.ops.len();
                    for at in ctx.breaks {
                        self.ops[at] = Op::Jmp((end as i64 - at as i64) as i32);
                    }
                }
                Stmt::Break => match loop_ctx.as_deref_mut() {
                    Some(ctx) => {
                        ctx.breaks.push(self.ops.len());
                        self.ops.push(Op::Jmp(0)); // patched to the loop end
                    }
                    None => {
                        self.env.pop();
                        return Err(Error::Compile("break outside a loop".into()));
                    }
                },
                Stmt::Continue => match loop_ctx.as_deref_mut() {
                    Some(ctx) => {
                        let at = self.ops.len();
                        self.ops.push(Op::Jmp((ctx.start as i64 - at as i64) as i32));
                    }
                    None => {
                        self.env.pop();
                        return Err(Error::Compile("continue outside a loop".into()));
                    }
                },
                Stmt::Return(e) => {
                    self.expr(e)?;
                    self.ops.push(Op::Output);
                    self.ops.push(Op::Halt);
                }
            }
        }
        self.env.pop();
        Ok(())
    }

    /// Replaces bound variables inside `e` by their closed definitions.
    fn substitute(&self, e: &Expr) -> Result<Expr> {
        Ok(match e {
            Expr::Var(name) => self
                .lookup(name)
                .cloned()
                .ok_or_else(|| Error::Compile(format!("unknown identifier `{name}`")))?,
            Expr::Not(a) => Expr::Not(Box::new(self.substitute(a)?)),
            Expr::Bin(op, a, b) => Expr::Bin(
                *op,
                Box::new(self.substitute(a)?),
                Box::new(self.substitute(b)?),
            ),
            other => other.clone(),
        })
    }
}

/// Compiles the solver's `Query` procedure (or the sole procedure) to
/// bytecode with identical semantics: conditionals lower to one JZ and one
/// JMP, loops and loop control lower to JMPs, RETURN lowers to
/// OUTPUT+HALT. Requires a family-valid candidate.
pub fn compile(ast: &Ast) -> Result<Bytecode> {
    let entry = ast
        .procedures
        .iter()
        .find(|p| p.name == "Query")
        .or_else(|| {
            if ast.procedures.len() == 1 {
                ast.procedures.first()
            } else {
                None
            }
        })
        .ok_or_else(|| Error::Compile("no Query procedure to compile".into()))?;
    if entry.params.len() > 1 {
        return Err(Error::Compile(format!(
            "arity mismatch: `{}` takes {} parameters, expected 1",
            entry.name,
            entry.params.len()
        )));
    }
    let mut c = Compiler {
        ops: Vec::new(),
        env: Vec::new(),
    };
    c.block(&entry.body, None)?;
    // Seal the program: fall-through halts with empty output. Skipped only
    // when the body already ends in HALT and nothing jumps past it.
    let len = c.ops.len() as i64;
    let jumps_to_end = c.ops.iter().enumerate().any(|(i, op)| match op {
        Op::Jz(rel) | Op::Jmp(rel) => i as i64 + *rel as i64 == len,
        _ => false,
    });
    if c.ops.last() != Some(&Op::Halt) || jumps_to_end {
        c.ops.push(Op::Halt);
    }
    Bytecode::new(c.ops)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkStatus {
    Completed,
    OutOfSteps,
    Trapped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkOutcome {
    pub status: WalkStatus,
    pub emitted: Bits,
}

enum Flow {
    Next,
    Break,
    Continue,
    Return,
}

/// Direct interpreter over the structured form; the reference semantics
/// the compiler is tested against. Supports the full statement set,
/// including rebinding.
pub fn walk(ast: &Ast, input: &Bits, hint: &Hint, step_budget: u64) -> WalkOutcome {
    let Some(entry) = ast
        .procedures
        .iter()
        .find(|p| p.name == "Query")
        .or(ast.procedures.first())
    else {
        return WalkOutcome {
            status: WalkStatus::Trapped,
            emitted: Bits::empty(),
        };
    };

    struct W<'a> {
        input: &'a Bits,
        hint: &'a Hint,
        budget: u64,
        env: HashMap<String, bool>,
        emitted: Bits,
    }

    enum WalkErr {
        OutOfSteps,
        Trap,
    }

    impl W<'_> {
        fn tick(&mut self) -> std::result::Result<(), WalkErr> {
            if self.budget == 0 {
                return Err(WalkErr::OutOfSteps);
            }
            self.budget -= 1;
            Ok(())
        }

        fn eval(&mut self, e: &Expr) -> std::result::Result<bool, WalkErr> {
            self.tick()?;
            match e {
                Expr::Const(b) => Ok(*b),
                Expr::Input(i) => self.input.bit(*i as usize).ok_or(WalkErr::Trap),
                Expr::Hint(i) => self.hint.bit(*i).ok_or(WalkErr::Trap),
                Expr::Var(n) => self.env.get(n).copied().ok_or(WalkErr::Trap),
                Expr::Not(a) => Ok(!self.eval(a)?),
                Expr::Bin(op, a, b) => {
                    let x = self.eval(a)?;
                    let y = self.eval(b)?;
                    Ok(match op {
                        BinOp::And => x & y,
                        BinOp::Or => x | y,
                        BinOp::Xor | BinOp::Add => x ^ y,
                        BinOp::Lt => !x & y,
                    })
                }
            }
        }

        fn block(&mut self, stmts: &[Stmt]) -> std::result::Result<Flow, WalkErr> {
            for s in stmts {
                self.tick()?;
                match s {
                    Stmt::Assign { name, value } => {
                        let v = self.eval(value)?;
                        self.env.insert(name.clone(), v);
                    }
                    Stmt::Eval(e) => {
                        self.eval(e)?;
                    }
                    Stmt::If {
                        cond,
                        then_block,
                        else_block,
                    } => {
                        let arm = if self.eval(cond)? {
                            then_block
                        } else {
                            else_block
                        };
                        match self.block(arm)? {
                            Flow::Next => {}
                            other => return Ok(other),
                        }
                    }
                    Stmt::WhileTrue(body) => loop {
                        self.tick()?;
                        match self.block(body)? {
                            Flow::Next | Flow::Continue => {}
                            Flow::Break => break,
                            Flow::Return => return Ok(Flow::Return),
                        }
                    },
                    Stmt::Break => return Ok(Flow::Break),
                    Stmt::Continue => return Ok(Flow::Continue),
                    Stmt::Return(e) => {
                        let v = self.eval(e)?;
                        self.emitted.push(v);
                        return Ok(Flow::Return);
                    }
                }
            }
            Ok(Flow::Next)
        }
    }

    let mut w = W {
        input,
        hint,
        budget: step_budget,
        env: HashMap::new(),
        emitted: Bits::empty(),
    };
    let status = match w.block(&entry.body) {
        Ok(_) => WalkStatus::Completed,
        Err(WalkErr::OutOfSteps) => WalkStatus::OutOfSteps,
        Err(WalkErr::Trap) => WalkStatus::Trapped,
    };
    WalkOutcome {
        status,
        emitted: w.emitted,
    }
}

/// Runs both semantics and checks they agree on the emitted bits whenever
/// both complete. Used by the differential tests.
pub fn agree_on(ast: &Ast, input: &Bits, hint: &Hint) -> bool {
    let code = match compile(ast) {
        Ok(c) => c,
        Err(_) => return true,
    };
    let walked = walk(ast, input, hint, 100_000);
    let ran = run(&code, hint, input, 100_000, 0);
    match (walked.status, ran.status) {
        (WalkStatus::Completed, RunStatus::Halted) => walked.emitted == ran.emitted,
        (WalkStatus::Trapped, RunStatus::Trapped(_)) => true,
        (WalkStatus::OutOfSteps, RunStatus::FuelExhausted) => true,
        // Budget units differ between the two interpreters; a budget stop
        // on one side cannot contradict the other.
        (WalkStatus::OutOfSteps, _) | (_, RunStatus::FuelExhausted) => true,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validate_accepts_small_solver() {
        let body = vec![
            Stmt::Assign {
                name: "x".into(),
                value: Expr::Bin(
                    BinOp::And,
                    Box::new(Expr::Input(0)),
                    Box::new(Expr::Input(1)),
                ),
            },
            Stmt::If {
                cond: Expr::Var("x".into()),
                then_block: vec![Stmt::Return(Expr::Const(true))],
                else_block: vec![Stmt::Return(Expr::Const(false))],
            },
        ];
        let ast = Ast::solver(body);
        assert_eq!(validate_family(&ast, &FamilyLimits::default()), vec![]);
    }

    #[test]
    fn validate_flags_deep_nesting_as_item_13() {
        // Six nested IFs.
        let mut body = vec![Stmt::Return(Expr::Const(true))];
        for _ in 0..6 {
            body = vec![Stmt::If {
                cond: Expr::Input(0),
                then_block: body,
                else_block: vec![],
            }];
        }
        let ast = Ast::solver(body);
        let violations = validate_family(&ast, &FamilyLimits::default());
        assert!(violations.iter().any(|v| v.item == 13), "{violations:?}");
    }

    #[test]
    fn validate_flags_missing_query_as_item_18() {
        let ast = Ast {
            procedures: vec![Procedure {
                name: "Initialize".into(),
                params: vec!["hint".into()],
                body: vec![],
            }],
            global_constants: vec![],
        };
        let violations = validate_family(&ast, &FamilyLimits::default());
        assert!(violations.iter().any(|v| v.item == 18));
    }

    #[test]
    fn compile_return_first_input() {
        let ast = Ast::solver(vec![Stmt::Return(Expr::Input(0))]);
        let code = compile(&ast).unwrap();
        assert_eq!(code.ops, vec![Op::ReadInput(0), Op::Output, Op::Halt]);
    }

    #[test]
    fn compile_if_else_uses_one_jz_one_jmp() {
        let ast = Ast::solver(vec![Stmt::If {
            cond: Expr::Input(0),
            then_block: vec![Stmt::Return(Expr::Const(true))],
            else_block: vec![Stmt::Return(Expr::Const(false))],
        }]);
        let code = compile(&ast).unwrap();
        let jz = code.ops.iter().filter(|o| matches!(o, Op::Jz(_))).count();
        let jmp = code.ops.iter().filter(|o| matches!(o, Op::Jmp(_))).count();
        assert_eq!((jz, jmp), (1, 1));
    }

    #[test]
    fn compile_rejects_reassignment() {
        let ast = Ast::solver(vec![
            Stmt::Assign {
                name: "x".into(),
                value: Expr::Input(0),
            },
            Stmt::Assign {
                name: "x".into(),
                value: Expr::Const(true),
            },
        ]);
        assert!(matches!(compile(&ast), Err(Error::Compile(_))));
    }

    #[test]
    fn compile_rejects_unknown_identifier() {
        let ast = Ast::solver(vec![Stmt::Return(Expr::Var("ghost".into()))]);
        let err = compile(&ast).unwrap_err();
        assert!(err.to_string().contains("unknown identifier"));
    }

    #[test]
    fn loop_with_break_and_continue_agrees_with_walker() {
        // Loops forever on input 0 (continue path), exits on input 1.
        let ast = Ast::solver(vec![
            Stmt::WhileTrue(vec![Stmt::If {
                cond: Expr::Input(0),
                then_block: vec![Stmt::Break],
                else_block: vec![Stmt::Continue],
            }]),
            Stmt::Return(Expr::Const(true)),
        ]);
        let code = compile(&ast).unwrap();
        let one = Bits::parse("1").unwrap();
        let zero = Bits::parse("0").unwrap();
        let out = run(&code, &Hint::empty(), &one, 1000, 0);
        assert_eq!(out.status, RunStatus::Halted);
        assert_eq!(out.emitted, Bits::parse("1").unwrap());
        let spin = run(&code, &Hint::empty(), &zero, 1000, 0);
        assert_eq!(spin.status, RunStatus::FuelExhausted);
        assert!(agree_on(&ast, &one, &Hint::empty()));
        assert!(agree_on(&ast, &zero, &Hint::empty()));
    }

    fn gen_expr(rng: &mut ChaCha8Rng, depth: usize, names: &[String]) -> Expr {
        let leaf = depth == 0 || rng.gen_bool(0.4);
        if leaf {
            match rng.gen_range(0..4) {
                0 => Expr::Const(rng.gen()),
                1 => Expr::Input(rng.gen_range(0..4)),
                2 => Expr::Hint(rng.gen_range(0..8)),
                _ => {
                    if names.is_empty() {
                        Expr::Const(rng.gen())
                    } else {
                        Expr::Var(names[rng.gen_range(0..names.len())].clone())
                    }
                }
            }
        } else if rng.gen_bool(0.25) {
            Expr::Not(Box::new(gen_expr(rng, depth - 1, names)))
        } else {
            let op = match rng.gen_range(0..5) {
                0 => BinOp::And,
                1 => BinOp::Or,
                2 => BinOp::Xor,
                3 => BinOp::Add,
                _ => BinOp::Lt,
            };
            Expr::Bin(
                op,
                Box::new(gen_expr(rng, depth - 1, names)),
                Box::new(gen_expr(rng, depth - 1, names)),
            )
        }
    }

    fn gen_block(
        rng: &mut ChaCha8Rng,
        depth: usize,
        names: &mut Vec<String>,
        fresh: &mut u32,
    ) -> Vec<Stmt> {
        let mut out = Vec::new();
        for _ in 0..rng.gen_range(1..4) {
            match rng.gen_range(0..6) {
                0 => {
                    let name = format!("v{}", *fresh);
                    *fresh += 1;
                    out.push(Stmt::Assign {
                        name: name.clone(),
                        value: gen_expr(rng, 2, names),
                    });
                    names.push(name);
                }
                1 => out.push(Stmt::Eval(gen_expr(rng, 2, names))),
                2 if depth > 0 => {
                    let scope_mark = names.len();
                    let then_block = gen_block(rng, depth - 1, names, fresh);
                    names.truncate(scope_mark);
                    let else_block = gen_block(rng, depth - 1, names, fresh);
                    names.truncate(scope_mark);
                    out.push(Stmt::If {
                        cond: gen_expr(rng, 2, names),
                        then_block,
                        else_block,
                    });
                }
                3 if depth > 0 => {
                    // Always-terminating loop: body ends with BREAK.
                    let scope_mark = names.len();
                    let mut body = gen_block(rng, depth - 1, names, fresh);
                    names.truncate(scope_mark);
                    body.push(Stmt::Break);
                    out.push(Stmt::WhileTrue(body));
                }
                _ => {
                    out.push(Stmt::Return(gen_expr(rng, 2, names)));
                    return out;
                }
            }
        }
        out
    }

    #[test]
    fn differential_compile_vs_walker() {
        // 100 random family candidates, 32 random inputs each: the
        // compiled bytecode and the walker emit identical results.
        for seed in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut names = Vec::new();
            let mut fresh = 0;
            let body = gen_block(&mut rng, 2, &mut names, &mut fresh);
            let ast = Ast::solver(body);
            if compile(&ast).is_err() {
                // Generator only emits compilable forms; a failure here is
                // a bug.
                panic!("generated candidate failed to compile: {ast:?}");
            }
            for _ in 0..32 {
                let input = Bits::from_value(rng.gen_range(0..16), 4);
                let hint = Hint {
                    bytes: vec![rng.gen()],
                };
                assert!(agree_on(&ast, &input, &hint), "seed {seed}: {ast:?}");
            }
        }
    }

    #[test]
    fn render_is_stable() {
        let ast = Ast::solver(vec![Stmt::Return(Expr::Input(0))]);
        assert_eq!(ast.render(), ast.render());
        assert!(ast.render().contains("Query(instance)"));
    }
}
