//! Immutable expression trees over position variables `x1..xn` and fiber
//! variables `t1..ts`.
//!
//! Expressions are reference-counted DAGs: shared subtrees are built once and
//! reused, which keeps repeated operator application (differentiation,
//! reducer powers) from exploding memory. All constructors normalize:
//! commutative operands are flattened and sorted by a fixed structural key,
//! constants are folded exactly (rational arithmetic where possible), and
//! like terms/factors are collected. Every `Expr` is therefore always in
//! canonical form, and structural equality doubles as semantic equality for
//! the normalizations applied.

mod diff;
mod eval;
mod parse;
mod print;
mod simplify;
mod step;
#[cfg(test)]
mod tests;
mod tape;

pub use diff::{diff, diff_multi};
pub use eval::DomainError;
pub use parse::{parse, ParseError};
pub use simplify::simplify;
pub use step::step_deriv_value;
pub use tape::{CompiledExpr, CompiledPair, Scratch};

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A variable axis: position `X(i)` or fiber `Theta(j)`, zero-based.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X(usize),
    Theta(usize),
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X(i) => write!(f, "x{}", i + 1),
            Axis::Theta(j) => write!(f, "t{}", j + 1),
        }
    }
}

/// Position/fiber dimensions `(n, s)`. Both are at least 1 and at most 64
/// (variable occurrence masks are 64-bit).
#[derive(Copy, Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Dims {
    pub n: usize,
    pub s: usize,
}

impl Dims {
    pub fn new(n: usize, s: usize) -> Result<Self, String> {
        if n == 0 || s == 0 || n > 64 || s > 64 {
            return Err(format!("dims must satisfy 1 <= n, s <= 64, got ({n}, {s})"));
        }
        Ok(Dims { n, s })
    }

    pub fn contains(&self, axis: Axis) -> bool {
        match axis {
            Axis::X(i) => i < self.n,
            Axis::Theta(j) => j < self.s,
        }
    }
}

/// A pair of derivative multiindices: `alpha` over x-axes, `beta` over
/// theta-axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndex {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl MultiIndex {
    pub fn zero(dims: Dims) -> Self {
        MultiIndex { alpha: vec![0; dims.n], beta: vec![0; dims.s] }
    }

    pub fn order_alpha(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn order_beta(&self) -> u32 {
        self.beta.iter().sum()
    }

    pub fn total_order(&self) -> u32 {
        self.order_alpha() + self.order_beta()
    }
}

/// An exact rational (`p/q`, reduced, `q >= 1`) or a real literal. Rational
/// arithmetic is checked; on overflow the value degrades to a real.
#[derive(Copy, Clone, Debug)]
pub enum Number {
    Rat(i64, i64),
    Real(f64),
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Number {
    pub fn rat(p: i64, q: i64) -> Self {
        assert!(q != 0, "rational with zero denominator");
        let sign = if q < 0 { -1 } else { 1 };
        let (p, q) = (p.saturating_mul(sign), q.saturating_mul(sign).abs());
        let g = gcd(p, q).max(1);
        Number::Rat(p / g, q / g)
    }

    pub fn int(v: i64) -> Self {
        Number::Rat(v, 1)
    }

    pub fn value(&self) -> f64 {
        match *self {
            Number::Rat(p, q) => p as f64 / q as f64,
            Number::Real(v) => v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            Number::Rat(p, _) => p == 0,
            Number::Real(v) => v == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match *self {
            Number::Rat(p, q) => p == 1 && q == 1,
            Number::Real(v) => v == 1.0,
        }
    }

    fn checked_add(self, other: Number) -> Number {
        match (self, other) {
            (Number::Rat(a, b), Number::Rat(c, d)) => {
                let num = a.checked_mul(d).and_then(|x| c.checked_mul(b).and_then(|y| x.checked_add(y)));
                let den = b.checked_mul(d);
                match (num, den) {
                    (Some(p), Some(q)) => Number::rat(p, q),
                    _ => Number::Real(self.value() + other.value()),
                }
            }
            _ => Number::Real(self.value() + other.value()),
        }
    }

    fn checked_mul(self, other: Number) -> Number {
        match (self, other) {
            (Number::Rat(a, b), Number::Rat(c, d)) => match (a.checked_mul(c), b.checked_mul(d)) {
                (Some(p), Some(q)) => Number::rat(p, q),
                _ => Number::Real(self.value() * other.value()),
            },
            _ => Number::Real(self.value() * other.value()),
        }
    }

    fn checked_powi(self, k: i32) -> Option<Number> {
        match self {
            Number::Rat(p, q) => {
                if k >= 0 {
                    let (mut np, mut nq) = (1i64, 1i64);
                    for _ in 0..k {
                        np = np.checked_mul(p)?;
                        nq = nq.checked_mul(q)?;
                    }
                    Some(Number::rat(np, nq))
                } else {
                    if p == 0 {
                        return None; // division by zero stays symbolic
                    }
                    let (mut np, mut nq) = (1i64, 1i64);
                    for _ in 0..(-k) {
                        np = np.checked_mul(q)?;
                        nq = nq.checked_mul(p)?;
                    }
                    Some(Number::rat(np, nq))
                }
            }
            Number::Real(v) => {
                if v == 0.0 && k < 0 {
                    return None;
                }
                Some(Number::Real(v.powi(k)))
            }
        }
    }

    fn is_negative(&self) -> bool {
        match *self {
            Number::Rat(p, _) => p < 0,
            Number::Real(v) => v < 0.0,
        }
    }
}

impl PartialEq for Number {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Number::Rat(a, b), Number::Rat(c, d)) => a == c && b == d,
            (Number::Real(a), Number::Real(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }
}
impl Eq for Number {}

/// Expression node kinds. `Sum` and `Prod` are flattened n-ary forms;
/// subtraction, negation, and division are represented through negative
/// coefficients and negative integer powers. `Step(k, u)` is the k-th
/// derivative of the canonical smooth step `h` (exactly 0 for `u <= 0`,
/// exactly 1 for `u >= 1`); it is what makes cutoff functions expressible
/// and differentiable inside the tree.
#[derive(Clone, Debug)]
pub enum Node {
    Num(Number),
    Var(Axis),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Pow(Expr, i32),
    Sqrt(Expr),
    Exp(Expr),
    Sin(Expr),
    Cos(Expr),
    Step(u32, Expr),
}

#[derive(Debug)]
pub struct ExprInner {
    node: Node,
    hash: u64,
    /// Plain tree size (without subtree sharing), saturating.
    tree_size: u64,
    x_mask: u64,
    t_mask: u64,
}

/// An immutable, canonically normalized expression. Cheap to clone (Arc).
#[derive(Clone, Debug)]
pub struct Expr(Arc<ExprInner>);

fn mix(h: u64, v: u64) -> u64 {
    // FNV-style mixing; deterministic across runs and platforms.
    (h ^ v).wrapping_mul(0x100_0000_01b3).rotate_left(13)
}

impl Expr {
    fn new(node: Node) -> Self {
        let (hash, tree_size, x_mask, t_mask) = match &node {
            Node::Num(n) => {
                let h = match *n {
                    Number::Rat(p, q) => mix(mix(1, p as u64), q as u64),
                    Number::Real(v) => mix(2, v.to_bits()),
                };
                (h, 1, 0, 0)
            }
            Node::Var(Axis::X(i)) => (mix(3, *i as u64), 1, 1u64 << i, 0),
            Node::Var(Axis::Theta(j)) => (mix(4, *j as u64), 1, 0, 1u64 << j),
            Node::Sum(items) | Node::Prod(items) => {
                let tag = if matches!(node, Node::Sum(_)) { 5 } else { 6 };
                let mut h = tag;
                let mut size = 1u64;
                let (mut xm, mut tm) = (0u64, 0u64);
                for e in items {
                    h = mix(h, e.0.hash);
                    size = size.saturating_add(e.0.tree_size);
                    xm |= e.0.x_mask;
                    tm |= e.0.t_mask;
                }
                (h, size, xm, tm)
            }
            Node::Pow(b, k) => (
                mix(mix(7, b.0.hash), *k as u64),
                1u64.saturating_add(b.0.tree_size),
                b.0.x_mask,
                b.0.t_mask,
            ),
            Node::Sqrt(e) | Node::Exp(e) | Node::Sin(e) | Node::Cos(e) => {
                let tag = match node {
                    Node::Sqrt(_) => 8,
                    Node::Exp(_) => 9,
                    Node::Sin(_) => 10,
                    _ => 11,
                };
                (mix(tag, e.0.hash), 1u64.saturating_add(e.0.tree_size), e.0.x_mask, e.0.t_mask)
            }
            Node::Step(k, e) => (
                mix(mix(12, *k as u64), e.0.hash),
                1u64.saturating_add(e.0.tree_size),
                e.0.x_mask,
                e.0.t_mask,
            ),
        };
        Expr(Arc::new(ExprInner { node, hash, tree_size, x_mask, t_mask }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn ptr_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn tree_size(&self) -> u64 {
        self.0.tree_size
    }

    /// Number of distinct nodes in the shared DAG (the true memory cost).
    pub fn dag_size(&self) -> usize {
        fn walk(e: &Expr, seen: &mut std::collections::HashSet<usize>) {
            if !seen.insert(e.ptr_id()) {
                return;
            }
            match e.node() {
                Node::Sum(items) | Node::Prod(items) => {
                    for c in items {
                        walk(c, seen);
                    }
                }
                Node::Pow(b, _) => walk(b, seen),
                Node::Sqrt(c) | Node::Exp(c) | Node::Sin(c) | Node::Cos(c) | Node::Step(_, c) => {
                    walk(c, seen)
                }
                _ => {}
            }
        }
        let mut seen = std::collections::HashSet::new();
        walk(self, &mut seen);
        seen.len()
    }

    pub fn uses_x(&self) -> bool {
        self.0.x_mask != 0
    }

    pub fn uses_theta(&self) -> bool {
        self.0.t_mask != 0
    }

    pub fn uses_axis(&self, axis: Axis) -> bool {
        match axis {
            Axis::X(i) => self.0.x_mask & (1 << i) != 0,
            Axis::Theta(j) => self.0.t_mask & (1 << j) != 0,
        }
    }

    /// Largest 1-based variable indices used, as `(max_x, max_t)`; 0 if unused.
    pub fn max_indices(&self) -> (usize, usize) {
        let hx = 64 - self.0.x_mask.leading_zeros() as usize;
        let ht = 64 - self.0.t_mask.leading_zeros() as usize;
        (hx, ht)
    }

    pub fn check_dims(&self, dims: Dims) -> Result<(), String> {
        let (hx, ht) = self.max_indices();
        if hx > dims.n {
            return Err(format!("expression uses x{} but n = {}", hx, dims.n));
        }
        if ht > dims.s {
            return Err(format!("expression uses t{} but s = {}", ht, dims.s));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.node(), Node::Num(n) if n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self.node(), Node::Num(n) if n.is_one())
    }

    pub fn as_number(&self) -> Option<Number> {
        match self.node() {
            Node::Num(n) => Some(*n),
            _ => None,
        }
    }

    // ---- constructors -------------------------------------------------

    pub fn num(n: Number) -> Self {
        Expr::new(Node::Num(n))
    }

    pub fn int(v: i64) -> Self {
        Expr::num(Number::int(v))
    }

    pub fn rat(p: i64, q: i64) -> Self {
        Expr::num(Number::rat(p, q))
    }

    pub fn real(v: f64) -> Self {
        // Integral reals become exact so that printing stays stable.
        if v.fract() == 0.0 && v.abs() < 1e15 {
            Expr::int(v as i64)
        } else {
            Expr::num(Number::Real(v))
        }
    }

    pub fn var(axis: Axis) -> Self {
        Expr::new(Node::Var(axis))
    }

    pub fn x(i: usize) -> Self {
        Expr::var(Axis::X(i))
    }

    pub fn theta(j: usize) -> Self {
        Expr::var(Axis::Theta(j))
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::sum(vec![a, b])
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::sum(vec![a, Expr::neg(b)])
    }

    pub fn neg(a: Expr) -> Self {
        Expr::mul(Expr::int(-1), a)
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::prod(vec![a, b])
    }

    pub fn div(a: Expr, b: Expr) -> Self {
        Expr::mul(a, Expr::pow(b, -1))
    }

    /// n-ary sum with flattening, exact constant folding, and like-term
    /// collection keyed on the non-constant core of each term.
    pub fn sum(items: Vec<Expr>) -> Self {
        let mut constant = Number::int(0);
        // core -> coefficient, insertion order preserved for determinism
        let mut cores: Vec<Expr> = Vec::new();
        let mut coeffs: Vec<Number> = Vec::new();
        let mut stack: Vec<Expr> = items;
        stack.reverse();
        while let Some(e) = stack.pop() {
            match e.node() {
                Node::Sum(children) => {
                    for c in children.iter().rev() {
                        stack.push(c.clone());
                    }
                }
                Node::Num(n) => constant = constant.checked_add(*n),
                _ => {
                    let (coeff, core) = e.split_coeff();
                    match cores.iter().position(|c| c == &core) {
                        Some(idx) => coeffs[idx] = coeffs[idx].checked_add(coeff),
                        None => {
                            cores.push(core);
                            coeffs.push(coeff);
                        }
                    }
                }
            }
        }
        let mut out: Vec<Expr> = Vec::with_capacity(cores.len() + 1);
        for (core, coeff) in cores.into_iter().zip(coeffs) {
            if coeff.is_zero() {
                continue;
            }
            if coeff.is_one() {
                out.push(core);
            } else {
                out.push(Expr::mul(Expr::num(coeff), core));
            }
        }
        if !constant.is_zero() {
            out.push(Expr::num(constant));
        }
        out.sort_by(cmp_expr);
        match out.len() {
            0 => Expr::int(0),
            1 => out.pop().unwrap(),
            _ => Expr::new(Node::Sum(out)),
        }
    }

    /// Splits a term into `(numeric coefficient, core)`.
    fn split_coeff(&self) -> (Number, Expr) {
        match self.node() {
            Node::Num(n) => (*n, Expr::int(1)),
            Node::Prod(items) => {
                if let Node::Num(n) = items[0].node() {
                    let rest: Vec<Expr> = items[1..].to_vec();
                    let core = match rest.len() {
                        0 => Expr::int(1),
                        1 => rest.into_iter().next().unwrap(),
                        _ => Expr::new(Node::Prod(rest)),
                    };
                    (*n, core)
                } else {
                    (Number::int(1), self.clone())
                }
            }
            _ => (Number::int(1), self.clone()),
        }
    }

    /// n-ary product with flattening, exact constant folding, and exponent
    /// collection by base. A symbolic zero factor annihilates the product.
    pub fn prod(items: Vec<Expr>) -> Self {
        let mut constant = Number::int(1);
        let mut bases: Vec<Expr> = Vec::new();
        let mut exps: Vec<i64> = Vec::new();
        let mut stack: Vec<Expr> = items;
        stack.reverse();
        while let Some(e) = stack.pop() {
            match e.node() {
                Node::Prod(children) => {
                    for c in children.iter().rev() {
                        stack.push(c.clone());
                    }
                }
                Node::Num(n) => {
                    if n.is_zero() {
                        return Expr::int(0);
                    }
                    constant = constant.checked_mul(*n);
                }
                Node::Pow(b, k) => {
                    let (base, extra) = (b.clone(), *k as i64);
                    match bases.iter().position(|x| x == &base) {
                        Some(idx) => exps[idx] += extra,
                        None => {
                            bases.push(base);
                            exps.push(extra);
                        }
                    }
                }
                _ => match bases.iter().position(|x| x == &e) {
                    Some(idx) => exps[idx] += 1,
                    None => {
                        bases.push(e);
                        exps.push(1);
                    }
                },
            }
        }
        let mut out: Vec<Expr> = Vec::with_capacity(bases.len() + 1);
        for (base, exp) in bases.into_iter().zip(exps) {
            if exp == 0 {
                continue;
            }
            let exp = exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
            let factor = Expr::pow(base, exp);
            match factor.node() {
                Node::Num(n) => {
                    if n.is_zero() {
                        return Expr::int(0);
                    }
                    constant = constant.checked_mul(*n);
                }
                Node::Prod(children) => {
                    // pow() distributed over a product; merge the pieces
                    for c in children {
                        match c.node() {
                            Node::Num(n) => constant = constant.checked_mul(*n),
                            _ => out.push(c.clone()),
                        }
                    }
                }
                _ => out.push(factor),
            }
        }
        if constant.is_zero() {
            return Expr::int(0);
        }
        out.sort_by(cmp_expr);
        if !constant.is_one() {
            out.insert(0, Expr::num(constant));
        }
        match out.len() {
            0 => Expr::int(1),
            1 => out.pop().unwrap(),
            _ => Expr::new(Node::Prod(out)),
        }
    }

    /// Integer power with folding: `e^0 = 1`, `e^1 = e`, constants exact,
    /// nested powers multiply, even powers of `sqrt` collapse, and powers
    /// distribute over products (valid for integer exponents over reals).
    pub fn pow(base: Expr, k: i32) -> Self {
        if k == 0 {
            return Expr::int(1);
        }
        if k == 1 {
            return base;
        }
        match base.node() {
            Node::Num(n) => {
                if let Some(folded) = n.checked_powi(k) {
                    return Expr::num(folded);
                }
                Expr::new(Node::Pow(base, k))
            }
            Node::Pow(b, j) => {
                let combined = (*j as i64) * (k as i64);
                if combined.abs() <= i32::MAX as i64 {
                    Expr::pow(b.clone(), combined as i32)
                } else {
                    Expr::new(Node::Pow(base, k))
                }
            }
            Node::Sqrt(inner) if k % 2 == 0 => Expr::pow(inner.clone(), k / 2),
            Node::Prod(items) => {
                let factors: Vec<Expr> = items.iter().map(|f| Expr::pow(f.clone(), k)).collect();
                Expr::prod(factors)
            }
            _ => Expr::new(Node::Pow(base, k)),
        }
    }

    pub fn sqrt(e: Expr) -> Self {
        if let Node::Num(n) = e.node() {
            match *n {
                Number::Rat(p, q) if p >= 0 => {
                    let (sp, sq) = ((p as f64).sqrt() as i64, (q as f64).sqrt() as i64);
                    if sp * sp == p && sq * sq == q {
                        return Expr::rat(sp, sq);
                    }
                }
                Number::Real(v) if v >= 0.0 => return Expr::num(Number::Real(v.sqrt())),
                _ => {}
            }
        }
        Expr::new(Node::Sqrt(e))
    }

    pub fn exp(e: Expr) -> Self {
        if e.is_zero() {
            return Expr::int(1);
        }
        if let Node::Num(Number::Real(v)) = e.node() {
            return Expr::num(Number::Real(v.exp()));
        }
        Expr::new(Node::Exp(e))
    }

    pub fn sin(e: Expr) -> Self {
        if e.is_zero() {
            return Expr::int(0);
        }
        Expr::new(Node::Sin(e))
    }

    pub fn cos(e: Expr) -> Self {
        if e.is_zero() {
            return Expr::int(1);
        }
        Expr::new(Node::Cos(e))
    }

    /// k-th derivative of the canonical smooth step evaluated at `arg`.
    pub fn step(k: u32, arg: Expr) -> Self {
        if let Node::Num(n) = arg.node() {
            let u = n.value();
            if u <= 0.0 || u >= 1.0 {
                return if k == 0 && u >= 1.0 { Expr::int(1) } else { Expr::int(0) };
            }
            return Expr::num(Number::Real(step::step_deriv_value(k, u)));
        }
        Expr::new(Node::Step(k, arg))
    }

    /// Sum of squares of the given expressions.
    pub fn sum_of_squares(items: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::sum(items.into_iter().map(|e| Expr::pow(e, 2)).collect())
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash {
            return false;
        }
        match (self.node(), other.node()) {
            (Node::Num(a), Node::Num(b)) => a == b,
            (Node::Var(a), Node::Var(b)) => a == b,
            (Node::Sum(a), Node::Sum(b)) | (Node::Prod(a), Node::Prod(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
            }
            (Node::Pow(a, i), Node::Pow(b, j)) => i == j && a == b,
            (Node::Sqrt(a), Node::Sqrt(b))
            | (Node::Exp(a), Node::Exp(b))
            | (Node::Sin(a), Node::Sin(b))
            | (Node::Cos(a), Node::Cos(b)) => a == b,
            (Node::Step(i, a), Node::Step(j, b)) => i == j && a == b,
            _ => false,
        }
    }
}
impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

fn kind_rank(e: &Expr) -> u8 {
    match e.node() {
        Node::Num(_) => 0,
        Node::Var(_) => 1,
        Node::Step(_, _) => 2,
        Node::Sqrt(_) => 3,
        Node::Exp(_) => 4,
        Node::Sin(_) => 5,
        Node::Cos(_) => 6,
        Node::Pow(_, _) => 7,
        Node::Prod(_) => 8,
        Node::Sum(_) => 9,
    }
}

/// Fixed structural ordering used to canonicalize commutative operand lists.
pub fn cmp_expr(a: &Expr, b: &Expr) -> Ordering {
    if Arc::ptr_eq(&a.0, &b.0) {
        return Ordering::Equal;
    }
    let (ra, rb) = (kind_rank(a), kind_rank(b));
    if ra != rb {
        return ra.cmp(&rb);
    }
    match (a.node(), b.node()) {
        (Node::Num(x), Node::Num(y)) => x.value().partial_cmp(&y.value()).unwrap_or(Ordering::Equal),
        (Node::Var(x), Node::Var(y)) => x.cmp(y),
        (Node::Sum(xs), Node::Sum(ys)) | (Node::Prod(xs), Node::Prod(ys)) => {
            for (x, y) in xs.iter().zip(ys.iter()) {
                let c = cmp_expr(x, y);
                if c != Ordering::Equal {
                    return c;
                }
            }
            xs.len().cmp(&ys.len())
        }
        (Node::Pow(x, i), Node::Pow(y, j)) => cmp_expr(x, y).then(i.cmp(j)),
        (Node::Sqrt(x), Node::Sqrt(y))
        | (Node::Exp(x), Node::Exp(y))
        | (Node::Sin(x), Node::Sin(y))
        | (Node::Cos(x), Node::Cos(y)) => cmp_expr(x, y),
        (Node::Step(i, x), Node::Step(j, y)) => i.cmp(j).then_with(|| cmp_expr(x, y)),
        _ => Ordering::Equal,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::format_expr(self))
    }
}

/// Canonical text form of an expression; `parse(format(e)) == e`.
pub fn format_expr(e: &Expr) -> String {
    print::format_expr(e)
}
