//! Exact symbolic differentiation. Total on the expression grammar; shared
//! subtrees are differentiated once per call via a pointer-keyed memo.

use super::{Axis, Expr, MultiIndex, Node};
use std::collections::HashMap;

pub fn diff(e: &Expr, axis: Axis) -> Expr {
    let mut memo: HashMap<usize, Expr> = HashMap::new();
    diff_memo(e, axis, &mut memo)
}

fn diff_memo(e: &Expr, axis: Axis, memo: &mut HashMap<usize, Expr>) -> Expr {
    if !e.uses_axis(axis) {
        return Expr::int(0);
    }
    if let Some(d) = memo.get(&e.ptr_id()) {
        return d.clone();
    }
    let result = match e.node() {
        Node::Num(_) => Expr::int(0),
        Node::Var(v) => {
            if *v == axis {
                Expr::int(1)
            } else {
                Expr::int(0)
            }
        }
        Node::Sum(items) => {
            Expr::sum(items.iter().map(|c| diff_memo(c, axis, memo)).collect())
        }
        Node::Prod(items) => {
            let mut terms = Vec::with_capacity(items.len());
            for (i, c) in items.iter().enumerate() {
                if !c.uses_axis(axis) {
                    continue;
                }
                let dc = diff_memo(c, axis, memo);
                let mut factors: Vec<Expr> = Vec::with_capacity(items.len());
                factors.push(dc);
                for (j, other) in items.iter().enumerate() {
                    if j != i {
                        factors.push(other.clone());
                    }
                }
                terms.push(Expr::prod(factors));
            }
            Expr::sum(terms)
        }
        Node::Pow(base, k) => {
            let db = diff_memo(base, axis, memo);
            Expr::prod(vec![Expr::int(*k as i64), Expr::pow(base.clone(), k - 1), db])
        }
        Node::Sqrt(inner) => {
            // d sqrt(u) = u' / (2 sqrt(u))
            let du = diff_memo(inner, axis, memo);
            Expr::prod(vec![Expr::rat(1, 2), du, Expr::pow(e.clone(), -1)])
        }
        Node::Exp(inner) => {
            let du = diff_memo(inner, axis, memo);
            Expr::mul(du, e.clone())
        }
        Node::Sin(inner) => {
            let du = diff_memo(inner, axis, memo);
            Expr::mul(du, Expr::cos(inner.clone()))
        }
        Node::Cos(inner) => {
            let du = diff_memo(inner, axis, memo);
            Expr::neg(Expr::mul(du, Expr::sin(inner.clone())))
        }
        Node::Step(k, inner) => {
            let du = diff_memo(inner, axis, memo);
            Expr::mul(Expr::step(k + 1, inner.clone()), du)
        }
    };
    memo.insert(e.ptr_id(), result.clone());
    result
}

/// Mixed partial of the given multiindex, applied axis by axis.
pub fn diff_multi(e: &Expr, index: &MultiIndex) -> Expr {
    let mut out = e.clone();
    for (i, &count) in index.alpha.iter().enumerate() {
        for _ in 0..count {
            out = diff(&out, Axis::X(i));
        }
    }
    for (j, &count) in index.beta.iter().enumerate() {
        for _ in 0..count {
            out = diff(&out, Axis::Theta(j));
        }
    }
    out
}
