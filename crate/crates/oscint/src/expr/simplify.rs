//! Simplification pass: rebuilds the tree bottom-up through the normalizing
//! constructors (constant folding, identity elimination, flattening,
//! like-term and exponent collection), with a guard that keeps the original
//! subtree whenever a rewrite would grow it.

use super::{Expr, Node};
use std::collections::HashMap;

pub fn simplify(e: &Expr) -> Expr {
    let mut memo: HashMap<usize, Expr> = HashMap::new();
    simplify_memo(e, &mut memo)
}

fn simplify_memo(e: &Expr, memo: &mut HashMap<usize, Expr>) -> Expr {
    if let Some(s) = memo.get(&e.ptr_id()) {
        return s.clone();
    }
    let rebuilt = match e.node() {
        Node::Num(_) | Node::Var(_) => e.clone(),
        Node::Sum(items) => Expr::sum(items.iter().map(|c| simplify_memo(c, memo)).collect()),
        Node::Prod(items) => Expr::prod(items.iter().map(|c| simplify_memo(c, memo)).collect()),
        Node::Pow(b, k) => Expr::pow(simplify_memo(b, memo), *k),
        Node::Sqrt(c) => Expr::sqrt(simplify_memo(c, memo)),
        Node::Exp(c) => Expr::exp(simplify_memo(c, memo)),
        Node::Sin(c) => Expr::sin(simplify_memo(c, memo)),
        Node::Cos(c) => Expr::cos(simplify_memo(c, memo)),
        Node::Step(k, c) => Expr::step(*k, simplify_memo(c, memo)),
    };
    let result = if rebuilt.tree_size() <= e.tree_size() { rebuilt } else { e.clone() };
    memo.insert(e.ptr_id(), result.clone());
    result
}
