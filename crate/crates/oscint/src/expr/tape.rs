//! Compiled evaluation tapes. A DAG is flattened once into a topologically
//! ordered instruction list over value slots; evaluation is then a tight
//! loop with no hashing or allocation, which is what quadrature needs.
//!
//! Instructions run with IEEE semantics (no per-node checks); products apply
//! the same exact-zero annihilation rule as the interpretive evaluator. A
//! non-finite final value falls back to the interpretive evaluator for error
//! attribution.

use super::{Axis, DomainError, Expr, Node};
use std::collections::HashMap;

#[derive(Clone, Debug)]
enum Instr {
    Const(f64),
    X(u32),
    T(u32),
    Sum(Box<[u32]>),
    Prod(Box<[u32]>),
    Pow(u32, i32),
    Sqrt(u32),
    Exp(u32),
    Sin(u32),
    Cos(u32),
    Step(u32, u32),
}

/// A single compiled expression.
#[derive(Debug)]
pub struct CompiledExpr {
    instrs: Vec<Instr>,
    root: u32,
    source: Expr,
}

/// Two expressions compiled into one tape with shared slots; used for the
/// real/imaginary parts of complex amplitudes.
#[derive(Debug)]
pub struct CompiledPair {
    instrs: Vec<Instr>,
    roots: (u32, u32),
    sources: (Expr, Expr),
}

struct Builder {
    instrs: Vec<Instr>,
    slots: HashMap<usize, u32>,
}

impl Builder {
    fn new() -> Self {
        Builder { instrs: Vec::new(), slots: HashMap::new() }
    }

    fn compile(&mut self, e: &Expr) -> u32 {
        if let Some(&slot) = self.slots.get(&e.ptr_id()) {
            return slot;
        }
        let instr = match e.node() {
            Node::Num(n) => Instr::Const(n.value()),
            Node::Var(Axis::X(i)) => Instr::X(*i as u32),
            Node::Var(Axis::Theta(j)) => Instr::T(*j as u32),
            Node::Sum(items) => {
                let slots: Vec<u32> = items.iter().map(|c| self.compile(c)).collect();
                Instr::Sum(slots.into_boxed_slice())
            }
            Node::Prod(items) => {
                let slots: Vec<u32> = items.iter().map(|c| self.compile(c)).collect();
                Instr::Prod(slots.into_boxed_slice())
            }
            Node::Pow(b, k) => Instr::Pow(self.compile(b), *k),
            Node::Sqrt(c) => Instr::Sqrt(self.compile(c)),
            Node::Exp(c) => Instr::Exp(self.compile(c)),
            Node::Sin(c) => Instr::Sin(self.compile(c)),
            Node::Cos(c) => Instr::Cos(self.compile(c)),
            Node::Step(k, c) => Instr::Step(*k, self.compile(c)),
        };
        let slot = self.instrs.len() as u32;
        self.instrs.push(instr);
        self.slots.insert(e.ptr_id(), slot);
        slot
    }
}

fn run(instrs: &[Instr], x: &[f64], theta: &[f64], values: &mut Vec<f64>) {
    values.clear();
    values.reserve(instrs.len());
    for instr in instrs {
        let v = match instr {
            Instr::Const(c) => *c,
            Instr::X(i) => x[*i as usize],
            Instr::T(j) => theta[*j as usize],
            Instr::Sum(slots) => {
                let mut acc = 0.0;
                for &s in slots.iter() {
                    acc += values[s as usize];
                }
                acc
            }
            Instr::Prod(slots) => {
                let mut acc = 1.0;
                for &s in slots.iter() {
                    let f = values[s as usize];
                    if f == 0.0 {
                        acc = 0.0;
                        break;
                    }
                    acc *= f;
                }
                acc
            }
            Instr::Pow(s, k) => values[*s as usize].powi(*k),
            Instr::Sqrt(s) => values[*s as usize].sqrt(),
            Instr::Exp(s) => values[*s as usize].exp(),
            Instr::Sin(s) => values[*s as usize].sin(),
            Instr::Cos(s) => values[*s as usize].cos(),
            Instr::Step(k, s) => super::step::step_deriv_value(*k, values[*s as usize]),
        };
        values.push(v);
    }
}

/// Reusable evaluation scratch; one per thread in hot loops.
#[derive(Default)]
pub struct Scratch {
    values: Vec<f64>,
}

impl CompiledExpr {
    pub fn compile(e: &Expr) -> Self {
        let mut b = Builder::new();
        let root = b.compile(e);
        CompiledExpr { instrs: b.instrs, root, source: e.clone() }
    }

    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    /// Evaluation without the finiteness check; NaN/inf pass through.
    pub fn eval_unchecked(&self, x: &[f64], theta: &[f64]) -> f64 {
        let mut values = Vec::new();
        run(&self.instrs, x, theta, &mut values);
        values[self.root as usize]
    }

    pub fn eval_with(&self, scratch: &mut Scratch, x: &[f64], theta: &[f64]) -> f64 {
        run(&self.instrs, x, theta, &mut scratch.values);
        scratch.values[self.root as usize]
    }

    /// Checked evaluation; a non-finite result is re-attributed through the
    /// interpretive evaluator.
    pub fn eval(&self, x: &[f64], theta: &[f64]) -> Result<f64, DomainError> {
        let v = self.eval_unchecked(x, theta);
        if v.is_finite() {
            Ok(v)
        } else {
            self.source.eval(x, theta)
        }
    }
}

impl CompiledPair {
    pub fn compile(re: &Expr, im: &Expr) -> Self {
        let mut b = Builder::new();
        let r = b.compile(re);
        let i = b.compile(im);
        CompiledPair { instrs: b.instrs, roots: (r, i), sources: (re.clone(), im.clone()) }
    }

    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn eval_unchecked(&self, x: &[f64], theta: &[f64]) -> (f64, f64) {
        let mut values = Vec::new();
        run(&self.instrs, x, theta, &mut values);
        (values[self.roots.0 as usize], values[self.roots.1 as usize])
    }

    pub fn eval_with(&self, scratch: &mut Scratch, x: &[f64], theta: &[f64]) -> (f64, f64) {
        run(&self.instrs, x, theta, &mut scratch.values);
        (values_at(&scratch.values, self.roots.0), values_at(&scratch.values, self.roots.1))
    }

    pub fn eval(&self, x: &[f64], theta: &[f64]) -> Result<(f64, f64), DomainError> {
        let (re, im) = self.eval_unchecked(x, theta);
        if re.is_finite() && im.is_finite() {
            Ok((re, im))
        } else {
            Ok((self.sources.0.eval(x, theta)?, self.sources.1.eval(x, theta)?))
        }
    }
}

fn values_at(values: &[f64], slot: u32) -> f64 {
    values[slot as usize]
}
