//! The canonical smooth step `h` and its derivatives.
//!
//! `h(u) = g(u) / (g(u) + g(1-u))` with `g(t) = exp(-1/t)` for `t > 0` and 0
//! otherwise. `h` is exactly 0 for `u <= 0`, exactly 1 for `u >= 1`, and
//! C-infinity everywhere; all derivatives vanish outside `(0, 1)`.
//!
//! Derivative formulas are produced symbolically (differentiating the
//! interior expression of `h` in one variable) and compiled once per order,
//! so evaluation is exact up to rounding rather than finite-differenced.

use super::tape::CompiledExpr;
use super::{Axis, Expr};
use std::sync::{Mutex, OnceLock};

const EDGE: f64 = 1e-12;

fn interior_h() -> Expr {
    let u = Expr::x(0);
    let g = Expr::exp(Expr::neg(Expr::pow(u.clone(), -1)));
    let one_minus = Expr::sub(Expr::int(1), u);
    let gt = Expr::exp(Expr::neg(Expr::pow(one_minus, -1)));
    Expr::div(g.clone(), Expr::add(g, gt))
}

struct StepCache {
    exprs: Vec<Expr>,
    tapes: Vec<CompiledExpr>,
}

fn cache() -> &'static Mutex<StepCache> {
    static CACHE: OnceLock<Mutex<StepCache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let h = crate::expr::simplify::simplify(&interior_h());
        let tape = CompiledExpr::compile(&h);
        Mutex::new(StepCache { exprs: vec![h], tapes: vec![tape] })
    })
}

/// Value of `h^(k)(u)`. Exact plateau values outside `(0, 1)`.
pub fn step_deriv_value(k: u32, u: f64) -> f64 {
    if u <= EDGE {
        return 0.0;
    }
    if u >= 1.0 - EDGE {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let mut guard = cache().lock().expect("step cache poisoned");
    while guard.exprs.len() <= k as usize {
        let prev = guard.exprs.last().unwrap().clone();
        let next = crate::expr::simplify::simplify(&super::diff::diff(&prev, Axis::X(0)));
        let tape = CompiledExpr::compile(&next);
        guard.exprs.push(next);
        guard.tapes.push(tape);
    }
    guard.tapes[k as usize].eval_unchecked(&[u], &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateaus_are_exact() {
        assert_eq!(step_deriv_value(0, -0.5), 0.0);
        assert_eq!(step_deriv_value(0, 0.0), 0.0);
        assert_eq!(step_deriv_value(0, 1.0), 1.0);
        assert_eq!(step_deriv_value(0, 2.0), 1.0);
        assert_eq!(step_deriv_value(3, 0.0), 0.0);
        assert_eq!(step_deriv_value(3, 1.0), 0.0);
    }

    #[test]
    fn midpoint_symmetry() {
        // g(1/2) appears in both numerator and denominator
        assert!((step_deriv_value(0, 0.5) - 0.5).abs() < 1e-15);
        // h(u) + h(1-u) = 1
        for &u in &[0.1, 0.25, 0.4, 0.7, 0.93] {
            let s = step_deriv_value(0, u) + step_deriv_value(0, 1.0 - u);
            assert!((s - 1.0).abs() < 1e-14, "h({u}) + h(1-{u}) = {s}");
        }
    }

    #[test]
    fn first_derivative_matches_central_difference() {
        let h = 1e-6;
        for &u in &[0.2, 0.35, 0.5, 0.65, 0.8] {
            let fd = (step_deriv_value(0, u + h) - step_deriv_value(0, u - h)) / (2.0 * h);
            let d = step_deriv_value(1, u);
            assert!((fd - d).abs() < 1e-6 * (1.0 + d.abs()), "u={u}: fd={fd} d={d}");
        }
    }

    #[test]
    fn higher_derivatives_vanish_near_edges() {
        for k in 1..=6 {
            assert_eq!(step_deriv_value(k, 1e-13), 0.0);
            let v = step_deriv_value(k, 1e-4);
            assert!(v.abs() < 1e-10, "h^({k})(1e-4) = {v}");
        }
    }
}
