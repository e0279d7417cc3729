//! Seminorm boundedness check: for every multiindex pair up to the given
//! depth, the weighted derivative sup `|D_x^a D_t^b f| (1+|theta|)^(|b|-m)`
//! must plateau over the top half of the ladder instead of drifting upward.

use super::{CalculusError, ScanConfig};
use crate::exec;
use crate::expr::{diff_multi, simplify, CompiledExpr, Dims, Expr, MultiIndex, Scratch};

#[derive(Clone, Debug)]
pub struct SeminormWitness {
    pub index: MultiIndex,
    pub x: Vec<f64>,
    pub theta_hat: Vec<f64>,
    pub lambda: f64,
    /// Observed per-octave growth of the weighted sup at the witness rung.
    pub drift: f64,
}

#[derive(Clone, Debug)]
pub struct SeminormEntry {
    pub index: MultiIndex,
    /// Largest weighted sup over the ladder window.
    pub sup: f64,
}

#[derive(Clone, Debug)]
pub struct SeminormReport {
    pub ok: bool,
    /// Worst per-octave growth across all checked indices (1.0 = flat).
    pub worst_ratio: f64,
    pub witness: Option<SeminormWitness>,
    pub seminorms: Vec<SeminormEntry>,
}

/// Enumerates all multiindex pairs with total order at most `depth`.
fn multiindices(dims: Dims, depth: u32) -> Vec<MultiIndex> {
    let axes = dims.n + dims.s;
    let mut out = Vec::new();
    let mut current = vec![0u32; axes];
    fn rec(axes: usize, pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == axes {
            out.push(current.clone());
            return;
        }
        for v in 0..=left {
            current[pos] = v;
            rec(axes, pos + 1, left - v, current, out);
        }
        current[pos] = 0;
    }
    let mut raw = Vec::new();
    rec(axes, 0, depth, &mut current, &mut raw);
    raw.sort();
    raw.dedup();
    for v in raw {
        out.push(MultiIndex {
            alpha: v[..dims.n].to_vec(),
            beta: v[dims.n..].to_vec(),
        });
    }
    out
}

pub fn verify_symbol_order(
    a: &Expr,
    m: f64,
    depth: u32,
    dims: Dims,
    cfg: &ScanConfig,
) -> Result<SeminormReport, CalculusError> {
    a.check_dims(dims).map_err(CalculusError::Invalid)?;
    let indices = multiindices(dims, depth);
    let grid = cfg.bounds.grid(cfg.grid_per_axis);
    let dirs = super::unit_directions(dims.s, cfg.directions, cfg.seed);
    let lambdas = cfg.ladder.values();
    let window = cfg.ladder.window();

    let per_index: Vec<Result<(Vec<(f64, usize, usize)>, f64), CalculusError>> =
        exec::map_indexed(indices.len(), cfg.exec, |idx| {
            let index = &indices[idx];
            let deriv = simplify(&diff_multi(a, index));
            let tape = CompiledExpr::compile(&deriv);
            let weight_pow = index.order_beta() as f64 - m;
            let mut scratch = Scratch::default();
            let mut theta = vec![0.0; dims.s];
            // per rung: (weighted sup, argmax grid point, argmax direction)
            let mut sups = Vec::with_capacity(lambdas.len());
            let mut overall = 0.0f64;
            for &lambda in &lambdas {
                let weight = (1.0 + lambda).powf(weight_pow);
                let mut best = 0.0f64;
                let mut arg = (0usize, 0usize);
                for (gi, x) in grid.iter().enumerate() {
                    for (di, dir) in dirs.iter().enumerate() {
                        for (t, d) in theta.iter_mut().zip(dir) {
                            *t = lambda * d;
                        }
                        let v = tape.eval_with(&mut scratch, x, &theta);
                        if !v.is_finite() {
                            return Err(CalculusError::EvaluationFailed {
                                context: format!(
                                    "seminorm scan (|alpha|={}, |beta|={}) at lambda = {lambda}",
                                    index.order_alpha(),
                                    index.order_beta()
                                ),
                                source: deriv.eval(x, &theta).err().unwrap_or_else(|| {
                                    crate::expr::DomainError {
                                        node: deriv.to_string(),
                                        value: v,
                                        reason: "non-finite result",
                                    }
                                }),
                            });
                        }
                        let w = v.abs() * weight;
                        if w > best {
                            best = w;
                            arg = (gi, di);
                        }
                    }
                }
                overall = overall.max(best);
                sups.push((best, arg.0, arg.1));
            }
            Ok((sups, overall))
        });

    let mut ok = true;
    let mut worst_ratio = 1.0f64;
    let mut witness = None;
    let mut seminorms = Vec::with_capacity(indices.len());
    let allowed = 1.0 + cfg.tol_plateau;

    for (index, result) in indices.iter().zip(per_index) {
        let (sups, overall) = result?;
        seminorms.push(SeminormEntry { index: index.clone(), sup: overall });
        for j in window.start..window.end - 1 {
            let (w0, _, _) = sups[j];
            let (w1, gi, di) = sups[j + 1];
            if w0 <= 1e-300 {
                continue;
            }
            let octaves = (lambdas[j + 1] / lambdas[j]).log2();
            let per_octave = (w1 / w0).powf(1.0 / octaves.max(1e-9));
            if per_octave > worst_ratio {
                worst_ratio = per_octave;
                witness = Some(SeminormWitness {
                    index: index.clone(),
                    x: grid[gi].clone(),
                    theta_hat: dirs[di].clone(),
                    lambda: lambdas[j + 1],
                    drift: per_octave,
                });
            }
            if per_octave > allowed {
                ok = false;
            }
        }
    }

    Ok(SeminormReport { ok, worst_ratio, witness, seminorms })
}
