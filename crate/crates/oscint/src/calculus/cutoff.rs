//! Smooth radial cutoffs with exact plateaus.
//!
//! A cutoff is 1 on `|v - c| <= r0`, 0 on `|v - c| >= r1`, and follows the
//! smooth step `h` in between: `chi(v) = 1 - h((|v - c| - r0) / (r1 - r0))`.
//! Plateau values are exact by construction, not approximate, and all
//! derivatives are bounded.

use super::CalculusError;
use crate::expr::{Dims, Expr};

/// Which variable block the cutoff lives on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VarSpace {
    X,
    Theta,
}

#[derive(Clone, Debug)]
pub struct CutoffFn {
    pub space: VarSpace,
    /// Center; empty means the origin.
    pub center: Vec<f64>,
    pub r0: f64,
    pub r1: f64,
}

/// Radial smooth step on fiber space with inner radius `r0`, outer `r1`.
pub fn build_cutoff(r0: f64, r1: f64) -> Result<CutoffFn, CalculusError> {
    CutoffFn::new(VarSpace::Theta, Vec::new(), r0, r1)
}

impl CutoffFn {
    pub fn new(space: VarSpace, center: Vec<f64>, r0: f64, r1: f64) -> Result<Self, CalculusError> {
        if !(r0 > 0.0 && r1 > r0 && r1.is_finite()) {
            return Err(CalculusError::BadRadii { r0, r1 });
        }
        Ok(CutoffFn { space, center, r0, r1 })
    }

    fn center_coord(&self, i: usize) -> f64 {
        self.center.get(i).copied().unwrap_or(0.0)
    }

    /// Radial profile value at distance `r` from the center.
    pub fn profile(&self, r: f64) -> f64 {
        let u = (r - self.r0) / (self.r1 - self.r0);
        1.0 - crate::expr::step_deriv_value(0, u)
    }

    pub fn value(&self, v: &[f64]) -> f64 {
        let r = v
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let d = c - self.center_coord(i);
                d * d
            })
            .sum::<f64>()
            .sqrt();
        self.profile(r)
    }

    /// The cutoff as an expression over the declared dimensions.
    pub fn expr(&self, dims: Dims) -> Expr {
        let count = match self.space {
            VarSpace::X => dims.n,
            VarSpace::Theta => dims.s,
        };
        let coords: Vec<Expr> = (0..count)
            .map(|i| {
                let v = match self.space {
                    VarSpace::X => Expr::x(i),
                    VarSpace::Theta => Expr::theta(i),
                };
                let c = self.center_coord(i);
                if c == 0.0 {
                    v
                } else {
                    Expr::sub(v, Expr::real(c))
                }
            })
            .collect();
        let radius = Expr::sqrt(Expr::sum_of_squares(coords));
        let u = Expr::mul(
            Expr::sub(radius, Expr::real(self.r0)),
            Expr::real(1.0 / (self.r1 - self.r0)),
        );
        Expr::sub(Expr::int(1), Expr::step(0, u))
    }

    /// `1 - chi` as an expression.
    pub fn one_minus_expr(&self, dims: Dims) -> Expr {
        Expr::sub(Expr::int(1), self.expr(dims))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_values_are_exact() {
        let chi = build_cutoff(1.0, 2.0).unwrap();
        assert_eq!(chi.profile(0.5), 1.0);
        assert_eq!(chi.profile(1.0), 1.0);
        assert_eq!(chi.profile(4.0), 0.0);
        assert_eq!(chi.profile(2.0), 0.0);
    }

    #[test]
    fn midpoint_is_half() {
        let chi = build_cutoff(1.0, 2.0).unwrap();
        assert!((chi.profile(1.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_radii() {
        assert!(build_cutoff(2.0, 1.0).is_err());
        assert!(build_cutoff(0.0, 1.0).is_err());
    }

    #[test]
    fn expr_matches_direct_evaluation() {
        let dims = Dims::new(1, 3).unwrap();
        let chi = build_cutoff(1.0, 2.0).unwrap();
        let e = chi.expr(dims);
        for t in [[0.2, 0.3, 0.1], [1.0, 1.0, 0.5], [3.0, 0.0, 0.0], [0.9, 0.9, 0.9]] {
            let direct = chi.value(&t);
            let via_expr = e.eval(&[0.0], &t).unwrap();
            assert!((direct - via_expr).abs() < 1e-15, "{t:?}: {direct} vs {via_expr}");
        }
    }

    #[test]
    fn x_space_bump_with_center() {
        let dims = Dims::new(2, 1).unwrap();
        let psi = CutoffFn::new(VarSpace::X, vec![1.0, -0.5], 0.5, 1.0).unwrap();
        let e = psi.expr(dims);
        assert_eq!(e.eval(&[1.0, -0.5], &[0.0]).unwrap(), 1.0);
        assert_eq!(e.eval(&[3.0, -0.5], &[0.0]).unwrap(), 0.0);
    }
}
