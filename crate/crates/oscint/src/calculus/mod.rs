//! Numerical symbol-class calculus: growth-order estimation on geometric
//! fiber ladders, seminorm boundedness checks, smooth cutoffs with exact
//! plateaus, and certification of the phase-function nondegeneracy bound.

mod cutoff;
mod growth;
mod phase;
mod verify;

pub use cutoff::{build_cutoff, CutoffFn, VarSpace};
pub use growth::{estimate_growth, OrderEstimate};
pub use phase::{eta_expr, validate_phase, DegenerateWitness, PhaseCertificate, PhaseFn};
pub use verify::{verify_symbol_order, SeminormEntry, SeminormReport, SeminormWitness};

use crate::exec::ExecMode;
use crate::expr::{Dims, DomainError, Expr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// A compact axis-aligned box in position space.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ScanBox(pub Vec<[f64; 2]>);

impl ScanBox {
    pub fn new(intervals: Vec<[f64; 2]>) -> Result<Self, CalculusError> {
        if intervals.is_empty() {
            return Err(CalculusError::Invalid("box must have at least one axis".into()));
        }
        for [lo, hi] in &intervals {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(CalculusError::Invalid(format!("bad interval [{lo}, {hi}]")));
            }
        }
        Ok(ScanBox(intervals))
    }

    pub fn cube(half_width: f64, dim: usize) -> Self {
        ScanBox(vec![[-half_width, half_width]; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Uniform lattice with `per_axis` points per axis (endpoints included;
    /// a single point sits at the center).
    pub fn grid(&self, per_axis: usize) -> Vec<Vec<f64>> {
        let per_axis = per_axis.max(1);
        let mut points = vec![Vec::new()];
        for [lo, hi] in &self.0 {
            let coords: Vec<f64> = if per_axis == 1 {
                vec![0.5 * (lo + hi)]
            } else {
                (0..per_axis)
                    .map(|i| lo + (hi - lo) * i as f64 / (per_axis - 1) as f64)
                    .collect()
            };
            let mut next = Vec::with_capacity(points.len() * coords.len());
            for p in &points {
                for &c in &coords {
                    let mut q = p.clone();
                    q.push(c);
                    next.push(q);
                }
            }
            points = next;
        }
        points
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        self.0
            .iter()
            .map(|[lo, hi]| if lo == hi { *lo } else { rng.gen_range(*lo..*hi) })
            .collect()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.0.len()
            && p.iter().zip(&self.0).all(|(v, [lo, hi])| *v >= *lo && *v <= *hi)
    }
}

/// Geometric fiber ladder `lambda_j = base^j`, `j = 0..rungs`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Ladder {
    pub base: f64,
    pub rungs: usize,
}

impl Default for Ladder {
    fn default() -> Self {
        Ladder { base: 2.0, rungs: 15 }
    }
}

impl Ladder {
    pub fn values(&self) -> Vec<f64> {
        (0..self.rungs).map(|j| self.base.powi(j as i32)).collect()
    }

    /// Indices of the asymptotic window (upper half of the ladder).
    pub fn window(&self) -> std::ops::Range<usize> {
        self.rungs / 2..self.rungs
    }
}

/// Shared scan parameters: sampling box, direction density, ladder, seed,
/// and tolerances.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub bounds: ScanBox,
    pub directions: usize,
    pub ladder: Ladder,
    pub seed: u64,
    pub grid_per_axis: usize,
    pub tol_order: f64,
    pub tol_plateau: f64,
    pub slope_tol: f64,
    pub exec: ExecMode,
}

impl ScanConfig {
    pub fn new(bounds: ScanBox) -> Self {
        ScanConfig {
            bounds,
            directions: 0,
            ladder: Ladder::default(),
            seed: 7,
            grid_per_axis: 5,
            tol_order: 0.1,
            tol_plateau: 0.1,
            slope_tol: 0.1,
            exec: ExecMode::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_directions(mut self, directions: usize) -> Self {
        self.directions = directions;
        self
    }
}

/// Unit fiber directions. Default density by fiber dimension: `{+1, -1}`
/// for s = 1, 64 uniform angles for s = 2, 256 Fibonacci-sphere points for
/// s = 3, and 512 seeded uniform unit vectors for s >= 4.
pub fn unit_directions(s: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    match s {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => {
            let count = if count == 0 { 64 } else { count };
            (0..count)
                .map(|i| {
                    let a = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
                    vec![a.cos(), a.sin()]
                })
                .collect()
        }
        3 => {
            let count = if count == 0 { 256 } else { count };
            let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
            (0..count)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let a = golden * i as f64;
                    vec![r * a.cos(), r * a.sin(), z]
                })
                .collect()
        }
        _ => {
            let count = if count == 0 { 512 } else { count };
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_d1ec);
            (0..count)
                .map(|_| loop {
                    // Box-Muller pairs, normalized
                    let v: Vec<f64> = (0..s)
                        .map(|_| {
                            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                            let u2: f64 = rng.gen_range(0.0..1.0);
                            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
                        })
                        .collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 1e-6 {
                        return v.into_iter().map(|x| x / norm).collect();
                    }
                })
                .collect()
        }
    }
}

/// An amplitude with its growth order.
#[derive(Clone, Debug)]
pub struct SymbolFn {
    pub expr: Expr,
    pub dims: Dims,
    pub order: f64,
    pub provenance: OrderProvenance,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrderProvenance {
    Declared,
    Estimated,
}

impl SymbolFn {
    pub fn declared(expr: Expr, dims: Dims, order: f64) -> Result<Self, CalculusError> {
        expr.check_dims(dims).map_err(CalculusError::Invalid)?;
        Ok(SymbolFn { expr, dims, order, provenance: OrderProvenance::Declared })
    }

    /// Declares the amplitude with the growth order estimated on the box.
    pub fn estimated(expr: Expr, dims: Dims, cfg: &ScanConfig) -> Result<Self, CalculusError> {
        expr.check_dims(dims).map_err(CalculusError::Invalid)?;
        let est = estimate_growth(&expr, dims, cfg)?;
        Ok(SymbolFn { expr, dims, order: est.slope, provenance: OrderProvenance::Estimated })
    }
}

#[derive(Debug)]
pub enum CalculusError {
    EvaluationFailed { context: String, source: DomainError },
    DegenerateFit { context: String },
    NotASymbol { estimated: f64, declared: f64 },
    DegeneratePhase(Box<DegenerateWitness>),
    BadRadii { r0: f64, r1: f64 },
    Invalid(String),
}

impl fmt::Display for CalculusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CalculusError::EvaluationFailed { context, source } => {
                write!(f, "evaluation failed during {context}: {source}")
            }
            CalculusError::DegenerateFit { context } => {
                write!(f, "degenerate fit during {context}: all samples zero, slope reported as -inf")
            }
            CalculusError::NotASymbol { estimated, declared } => write!(
                f,
                "growth estimate {estimated:.3} exceeds declared order {declared:.3}"
            ),
            CalculusError::DegeneratePhase(w) => write!(
                f,
                "nondegeneracy bound fails at x = {:?}, direction = {:?} (tail ratio {:.3e})",
                w.x,
                w.theta_hat,
                w.ratios.last().map(|(_, r)| *r).unwrap_or(f64::NAN)
            ),
            CalculusError::BadRadii { r0, r1 } => {
                write!(f, "cutoff radii must satisfy 0 < r0 < r1, got ({r0}, {r1})")
            }
            CalculusError::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CalculusError {}

/// Least-squares slope/intercept of `y` against `x`, with max |deviation|.
pub(crate) fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0f64, f64::max);
    (slope, intercept, residual)
}
