//! Interpretive evaluation with error attribution.
//!
//! Products use a zero-annihilation rule: if any factor evaluates to exactly
//! 0.0, the product is 0.0 even if another factor is non-finite or would
//! fault. Cutoff plateaus rely on this — terms like `step_1(u) * t1/|θ|` are
//! exactly zero on the plateau where the radial direction is undefined.

use super::{Expr, Node};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug)]
pub struct DomainError {
    /// Rendering of the offending subexpression (truncated).
    pub node: String,
    pub value: f64,
    pub reason: &'static str,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at `{}` (value {})", self.reason, self.node, self.value)
    }
}

impl std::error::Error for DomainError {}

fn describe(e: &Expr) -> String {
    let mut s = e.to_string();
    if s.len() > 120 {
        s.truncate(117);
        s.push_str("...");
    }
    s
}

fn fault(e: &Expr, value: f64, reason: &'static str) -> DomainError {
    DomainError { node: describe(e), value, reason }
}

impl Expr {
    /// IEEE double value of the expression at `(x, theta)`.
    pub fn eval(&self, x: &[f64], theta: &[f64]) -> Result<f64, DomainError> {
        let mut memo: HashMap<usize, Result<f64, DomainError>> = HashMap::new();
        let v = eval_memo(self, x, theta, &mut memo)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fault(self, v, "non-finite result"))
        }
    }
}

fn eval_memo(
    e: &Expr,
    x: &[f64],
    theta: &[f64],
    memo: &mut HashMap<usize, Result<f64, DomainError>>,
) -> Result<f64, DomainError> {
    if let Some(r) = memo.get(&e.ptr_id()) {
        return r.clone();
    }
    let result = eval_node(e, x, theta, memo);
    memo.insert(e.ptr_id(), result.clone());
    result
}

fn eval_node(
    e: &Expr,
    x: &[f64],
    theta: &[f64],
    memo: &mut HashMap<usize, Result<f64, DomainError>>,
) -> Result<f64, DomainError> {
    match e.node() {
        Node::Num(n) => Ok(n.value()),
        Node::Var(super::Axis::X(i)) => x
            .get(*i)
            .copied()
            .ok_or_else(|| fault(e, *i as f64, "x index out of range")),
        Node::Var(super::Axis::Theta(j)) => theta
            .get(*j)
            .copied()
            .ok_or_else(|| fault(e, *j as f64, "theta index out of range")),
        Node::Sum(items) => {
            let mut acc = 0.0;
            for item in items {
                acc += eval_memo(item, x, theta, memo)?;
            }
            Ok(acc)
        }
        Node::Prod(items) => {
            let mut acc = 1.0;
            let mut pending: Option<DomainError> = None;
            for item in items {
                match eval_memo(item, x, theta, memo) {
                    Ok(v) => {
                        if v == 0.0 {
                            return Ok(0.0);
                        }
                        acc *= v;
                    }
                    Err(err) => pending = pending.or(Some(err)),
                }
            }
            match pending {
                Some(err) => Err(err),
                None => Ok(acc),
            }
        }
        Node::Pow(base, k) => {
            let b = eval_memo(base, x, theta, memo)?;
            if b == 0.0 && *k < 0 {
                return Err(fault(e, b, "division by zero"));
            }
            Ok(b.powi(*k))
        }
        Node::Sqrt(inner) => {
            let v = eval_memo(inner, x, theta, memo)?;
            if v < 0.0 {
                return Err(fault(e, v, "square root of a negative value"));
            }
            Ok(v.sqrt())
        }
        Node::Exp(inner) => Ok(eval_memo(inner, x, theta, memo)?.exp()),
        Node::Sin(inner) => Ok(eval_memo(inner, x, theta, memo)?.sin()),
        Node::Cos(inner) => Ok(eval_memo(inner, x, theta, memo)?.cos()),
        Node::Step(k, inner) => {
            let u = eval_memo(inner, x, theta, memo)?;
            Ok(super::step::step_deriv_value(*k, u))
        }
    }
}
