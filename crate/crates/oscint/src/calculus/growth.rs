//! Growth-order estimation: the fitted slope of `log max |e(x, lambda
//! theta_hat)|` against `log lambda` over the asymptotic window of a
//! geometric ladder.

use super::{linear_fit, CalculusError, ScanConfig};
use crate::exec;
use crate::expr::{CompiledExpr, Dims, Expr};

#[derive(Clone, Debug, serde::Serialize)]
pub struct OrderEstimate {
    /// Fitted growth exponent.
    pub slope: f64,
    pub intercept: f64,
    /// Max |log deviation| over the fit window.
    pub residual: f64,
    pub lambda_window: (f64, f64),
    pub directions_sampled: usize,
}

pub fn estimate_growth(
    e: &Expr,
    dims: Dims,
    cfg: &ScanConfig,
) -> Result<OrderEstimate, CalculusError> {
    e.check_dims(dims).map_err(CalculusError::Invalid)?;
    let tape = CompiledExpr::compile(e);
    let grid = cfg.bounds.grid(cfg.grid_per_axis);
    let dirs = super::unit_directions(dims.s, cfg.directions, cfg.seed);
    let lambdas = cfg.ladder.values();

    let maxima: Vec<Result<f64, CalculusError>> =
        exec::map_indexed(lambdas.len(), cfg.exec, |j| {
            let lambda = lambdas[j];
            let mut scratch = crate::expr::Scratch::default();
            let mut best = 0.0f64;
            let mut theta = vec![0.0; dims.s];
            for x in &grid {
                for dir in &dirs {
                    for (t, d) in theta.iter_mut().zip(dir) {
                        *t = lambda * d;
                    }
                    let v = tape.eval_with(&mut scratch, x, &theta);
                    if !v.is_finite() {
                        let err = e.eval(x, &theta).err().unwrap_or_else(|| {
                            crate::expr::DomainError {
                                node: e.to_string(),
                                value: v,
                                reason: "non-finite result",
                            }
                        });
                        return Err(CalculusError::EvaluationFailed {
                            context: format!("growth scan at lambda = {lambda}"),
                            source: err,
                        });
                    }
                    best = best.max(v.abs());
                }
            }
            Ok(best)
        });

    let mut values = Vec::with_capacity(lambdas.len());
    for m in maxima {
        values.push(m?);
    }

    let window = cfg.ladder.window();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for j in window.clone() {
        if values[j] > 0.0 {
            xs.push(lambdas[j].ln());
            ys.push(values[j].ln());
        }
    }
    if xs.len() < 2 {
        return Err(CalculusError::DegenerateFit { context: "growth estimate".into() });
    }
    let (slope, intercept, residual) = linear_fit(&xs, &ys);
    Ok(OrderEstimate {
        slope,
        intercept,
        residual,
        lambda_window: (lambdas[window.start], lambdas[window.end - 1]),
        directions_sampled: dirs.len(),
    })
}
