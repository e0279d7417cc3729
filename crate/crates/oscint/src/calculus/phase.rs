//! Phase-function certification.
//!
//! A phase of order mu > 0 must be a symbol of that order and satisfy the
//! nondegeneracy bound `eta(x, theta) = |grad_x phi|^2 + |theta|^2
//! |grad_theta phi|^2 >= C |theta|^(2 mu)` for `|theta| >= D`, uniformly
//! over the compact box. Validation estimates the growth order, scans the
//! ratio `eta / lambda^(2 mu)` over the ladder, and on success returns the
//! certificate `(C, D)` together with the low-fiber cutoff built from it.

use super::{
    build_cutoff, estimate_growth, linear_fit, CalculusError, CutoffFn, ScanBox, ScanConfig,
};
use crate::exec;
use crate::expr::{diff, simplify, CompiledExpr, Dims, Expr, Scratch};

/// Witness of a failed nondegeneracy bound: the sampled point, direction,
/// and the decaying ratio sequence along the ladder.
#[derive(Clone, Debug)]
pub struct DegenerateWitness {
    pub x: Vec<f64>,
    pub theta_hat: Vec<f64>,
    pub ratios: Vec<(f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct PhaseCertificate {
    /// Certified lower constant (half the observed minimum ratio).
    pub c_bound: f64,
    /// Radius beyond which the bound holds on the sampled ladder.
    pub d_radius: f64,
    /// Minimum observed `eta / lambda^(2 mu)` over the asymptotic window.
    pub min_ratio: f64,
    pub bounds: ScanBox,
    pub directions: usize,
    pub rungs: usize,
}

/// A validated phase function: expression, order, certificate, and the
/// smooth cutoff that excises the low-fiber region.
#[derive(Clone, Debug)]
pub struct PhaseFn {
    pub expr: Expr,
    pub dims: Dims,
    pub mu: f64,
    pub certificate: PhaseCertificate,
    pub chi: CutoffFn,
    pub grad_x: Vec<Expr>,
    pub grad_theta: Vec<Expr>,
    pub eta: Expr,
}

/// The exact symbolic nondegeneracy quantity
/// `sum_i (d phi/d x_i)^2 + (sum_j t_j^2) * sum_j (d phi/d t_j)^2`.
pub fn eta_expr(phi: &Expr, dims: Dims) -> Expr {
    let gx: Vec<Expr> = (0..dims.n).map(|i| diff(phi, crate::expr::Axis::X(i))).collect();
    let gt: Vec<Expr> = (0..dims.s).map(|j| diff(phi, crate::expr::Axis::Theta(j))).collect();
    let theta_sq = Expr::sum_of_squares((0..dims.s).map(Expr::theta));
    simplify(&Expr::add(
        Expr::sum_of_squares(gx),
        Expr::mul(theta_sq, Expr::sum_of_squares(gt)),
    ))
}

pub fn validate_phase(
    phi: &Expr,
    mu: f64,
    dims: Dims,
    cfg: &ScanConfig,
) -> Result<PhaseFn, CalculusError> {
    phi.check_dims(dims).map_err(CalculusError::Invalid)?;
    if !(mu > 0.0) {
        return Err(CalculusError::Invalid(format!("phase order must be positive, got {mu}")));
    }

    let growth = estimate_growth(phi, dims, cfg)?;
    if growth.slope > mu + cfg.tol_order {
        return Err(CalculusError::NotASymbol { estimated: growth.slope, declared: mu });
    }

    let eta = eta_expr(phi, dims);
    let tape = CompiledExpr::compile(&eta);
    let grid = cfg.bounds.grid(cfg.grid_per_axis);
    let dirs = super::unit_directions(dims.s, cfg.directions, cfg.seed);
    let lambdas = cfg.ladder.values();

    // Per rung: minimum ratio over grid x directions, with its argmin.
    let rows: Vec<Result<(f64, usize, usize), CalculusError>> =
        exec::map_indexed(lambdas.len(), cfg.exec, |j| {
            let lambda = lambdas[j];
            let denom = lambda.powf(2.0 * mu);
            let mut scratch = Scratch::default();
            let mut theta = vec![0.0; dims.s];
            let mut min_ratio = f64::INFINITY;
            let mut arg = (0usize, 0usize);
            for (gi, x) in grid.iter().enumerate() {
                for (di, dir) in dirs.iter().enumerate() {
                    for (t, d) in theta.iter_mut().zip(dir) {
                        *t = lambda * d;
                    }
                    let v = tape.eval_with(&mut scratch, x, &theta);
                    if !v.is_finite() {
                        return Err(CalculusError::EvaluationFailed {
                            context: format!("nondegeneracy scan at lambda = {lambda}"),
                            source: eta.eval(x, &theta).err().unwrap_or_else(|| {
                                crate::expr::DomainError {
                                    node: "eta".into(),
                                    value: v,
                                    reason: "non-finite result",
                                }
                            }),
                        });
                    }
                    let ratio = v / denom;
                    if ratio < min_ratio {
                        min_ratio = ratio;
                        arg = (gi, di);
                    }
                }
            }
            Ok((min_ratio, arg.0, arg.1))
        });

    let mut min_ratios = Vec::with_capacity(lambdas.len());
    let mut argmins = Vec::with_capacity(lambdas.len());
    for row in rows {
        let (r, gi, di) = row?;
        min_ratios.push(r);
        argmins.push((gi, di));
    }

    // Degeneracy test on the asymptotic window: the minimum ratio must not
    // trend to zero nor collapse outright.
    let window = cfg.ladder.window();
    let eps_floor = 1e-9;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut tail_min = f64::INFINITY;
    let mut tail_arg = window.start;
    for j in window.clone() {
        if min_ratios[j] < tail_min {
            tail_min = min_ratios[j];
            tail_arg = j;
        }
        if min_ratios[j] > 0.0 {
            xs.push(lambdas[j].ln());
            ys.push(min_ratios[j].ln());
        }
    }
    let decaying = if xs.len() >= 2 {
        let (slope, _, _) = linear_fit(&xs, &ys);
        slope < -cfg.slope_tol
    } else {
        true
    };
    if decaying || tail_min < eps_floor {
        let (gi, di) = argmins[tail_arg];
        return Err(CalculusError::DegeneratePhase(Box::new(DegenerateWitness {
            x: grid[gi].clone(),
            theta_hat: dirs[di].clone(),
            ratios: lambdas.iter().copied().zip(min_ratios.iter().copied()).collect(),
        })));
    }

    let c_bound = 0.5 * tail_min;
    // Smallest rung beyond which every sampled ratio stays above C.
    let mut d_idx = window.start;
    for j in (0..lambdas.len()).rev() {
        if min_ratios[j] < c_bound {
            d_idx = (j + 1).min(lambdas.len() - 1);
            break;
        }
        d_idx = j;
    }
    let d_radius = lambdas[d_idx];

    let chi = build_cutoff(d_radius, 2.0 * d_radius)?;
    let grad_x: Vec<Expr> =
        (0..dims.n).map(|i| simplify(&diff(phi, crate::expr::Axis::X(i)))).collect();
    let grad_theta: Vec<Expr> =
        (0..dims.s).map(|j| simplify(&diff(phi, crate::expr::Axis::Theta(j)))).collect();

    Ok(PhaseFn {
        expr: simplify(phi),
        dims,
        mu,
        certificate: PhaseCertificate {
            c_bound,
            d_radius,
            min_ratio: tail_min,
            bounds: cfg.bounds.clone(),
            directions: dirs.len(),
            rungs: lambdas.len(),
        },
        chi,
        grad_x,
        grad_theta,
        eta,
    })
}

impl PhaseFn {
    /// Re-scans the certificate with a finer ladder and denser directions;
    /// returns the minimum ratio found for `lambda >= D`.
    pub fn resample_certificate(&self, cfg: &ScanConfig) -> Result<f64, CalculusError> {
        let tape = CompiledExpr::compile(&self.eta);
        let grid = cfg.bounds.grid(cfg.grid_per_axis);
        let dirs = super::unit_directions(self.dims.s, cfg.directions, cfg.seed);
        let lambdas = cfg.ladder.values();
        let mut scratch = Scratch::default();
        let mut theta = vec![0.0; self.dims.s];
        let mut min_ratio = f64::INFINITY;
        for &lambda in &lambdas {
            if lambda < self.certificate.d_radius {
                continue;
            }
            let denom = lambda.powf(2.0 * self.mu);
            for x in &grid {
                for dir in &dirs {
                    for (t, d) in theta.iter_mut().zip(dir) {
                        *t = lambda * d;
                    }
                    let v = tape.eval_with(&mut scratch, x, &theta);
                    if v.is_finite() {
                        min_ratio = min_ratio.min(v / denom);
                    }
                }
            }
        }
        Ok(min_ratio)
    }
}
