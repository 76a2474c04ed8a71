//! Simplicial distances, Fréchet means and the metric-axiom checks.
//!
//! Three distances are provided: the raw Euclidean distance Δ_RDA, the
//! log-ratio (Aitchison) distance Δ_LRA, and the one-parameter family Δ_α
//! that interpolates between them (Δ_α → Δ_LRA as α → 0; Δ_α = D·Δ_RDA at
//! α = 1). Each distance has a matching Fréchet mean with a closed form;
//! [`frechet_oracle`] minimizes the Fréchet objective numerically and exists
//! to catch implementation error in the closed forms, not to be fast.

use crate::composition::{Composition, CompositionDataset};
use crate::error::{Error, Result};
use crate::helmert::HelmertBasis;
use crate::transforms::{alpha_power, clr, ilr, inverse_alpha_isometric};

/// Selector among the three distances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceKind {
    Rda,
    Lra,
    Alpha,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceSpec {
    pub kind: DistanceKind,
    /// Used when `kind == Alpha`; must lie in `[-1, 1] \ {0}`.
    pub alpha: f64,
}

impl DistanceSpec {
    pub fn rda() -> Self {
        Self { kind: DistanceKind::Rda, alpha: f64::NAN }
    }

    pub fn lra() -> Self {
        Self { kind: DistanceKind::Lra, alpha: f64::NAN }
    }

    pub fn alpha(alpha: f64) -> Self {
        Self { kind: DistanceKind::Alpha, alpha }
    }

    pub fn distance(&self, x: &Composition, w: &Composition) -> Result<f64> {
        match self.kind {
            DistanceKind::Rda => dist_rda(x, w),
            DistanceKind::Lra => dist_lra(x, w),
            DistanceKind::Alpha => dist_alpha(x, w, self.alpha),
        }
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

/// Δ_RDA: Euclidean distance between the raw parts.
pub fn dist_rda(x: &Composition, w: &Composition) -> Result<f64> {
    x.require_same_dim(w)?;
    Ok(euclidean(x.parts(), w.parts()))
}

/// Δ_LRA: Euclidean distance between the clr images (Aitchison's distance).
pub fn dist_lra(x: &Composition, w: &Composition) -> Result<f64> {
    x.require_same_dim(w)?;
    Ok(euclidean(&clr(x)?, &clr(w)?))
}

/// Δ_α: `(D/α) ‖u(x) − u(w)‖` with `u` the power transform.
pub fn dist_alpha(x: &Composition, w: &Composition, alpha: f64) -> Result<f64> {
    x.require_same_dim(w)?;
    let ux = alpha_power(x, alpha)?;
    let uw = alpha_power(w, alpha)?;
    let dim = x.dim() as f64;
    Ok((dim / alpha).abs() * euclidean(ux.parts(), uw.parts()))
}

/// A Fréchet mean together with the value of its objective.
#[derive(Debug, Clone)]
pub struct FrechetMeanResult {
    pub mean: Composition,
    pub alpha: f64,
    /// Sum of squared α-distances from the data to the mean.
    pub objective: f64,
}

/// μ₍₁₎: component-wise arithmetic mean, re-closed.
pub fn mean_arithmetic(ds: &CompositionDataset) -> Composition {
    let dim = ds.dim();
    let n = ds.len() as f64;
    let mut acc = vec![0.0; dim];
    for row in ds.rows() {
        for (a, &p) in acc.iter_mut().zip(row.parts()) {
            *a += p;
        }
    }
    for a in &mut acc {
        *a /= n;
    }
    Composition::closure(&acc).expect("mean of compositions is valid")
}

/// μ₍₀₎: closure of the component-wise geometric means.
pub fn mean_geometric_closed(ds: &CompositionDataset) -> Result<Composition> {
    if let Some((i, id)) = ds.first_zero_row() {
        let _ = id;
        let index = ds.rows()[i].first_zero().unwrap_or(0);
        return Err(Error::ZeroPartNotAllowed { index });
    }
    let dim = ds.dim();
    let n = ds.len() as f64;
    let mut mean_log = vec![0.0; dim];
    for row in ds.rows() {
        for (a, &p) in mean_log.iter_mut().zip(row.parts()) {
            *a += p.ln();
        }
    }
    // exp of mean logs, shifted by the max for stability before closure
    let max = mean_log.iter().cloned().fold(f64::NEG_INFINITY, f64::max) / n;
    let raw: Vec<f64> = mean_log.iter().map(|l| (l / n - max).exp()).collect();
    Composition::closure(&raw)
}

/// μ₍α₎: closure of `((1/n) Σⱼ uᵢⱼ)^(1/α)`.
///
/// Dispatches to [`mean_arithmetic`] at α = 1 and to
/// [`mean_geometric_closed`] at α = 0, the two endpoints the family
/// interpolates. The power step runs in the log domain so small |α| does not
/// underflow.
pub fn mean_frechet_alpha(ds: &CompositionDataset, alpha: f64) -> Result<FrechetMeanResult> {
    if !alpha.is_finite() || !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha { alpha, domain: "[-1, 1]" });
    }
    let mean = if alpha == 1.0 {
        mean_arithmetic(ds)
    } else if alpha == 0.0 {
        mean_geometric_closed(ds)?
    } else {
        let dim = ds.dim();
        let n = ds.len() as f64;
        let mut acc = vec![0.0; dim];
        for row in ds.rows() {
            let u = alpha_power(row, alpha)?;
            for (a, &p) in acc.iter_mut().zip(u.parts()) {
                *a += p;
            }
        }
        for a in &mut acc {
            *a /= n;
            if *a <= 0.0 {
                return Err(Error::DegenerateInput);
            }
        }
        let t: Vec<f64> = acc.iter().map(|a| a.ln() / alpha).collect();
        let max = t.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let raw: Vec<f64> = t.iter().map(|v| (v - max).exp()).collect();
        Composition::closure(&raw)?
    };
    let objective = frechet_objective(ds, &mean, alpha)?;
    Ok(FrechetMeanResult { mean, alpha, objective })
}

/// Sum of squared α-distances (LRA distances at α = 0) to `h`.
pub fn frechet_objective(ds: &CompositionDataset, h: &Composition, alpha: f64) -> Result<f64> {
    let mut total = 0.0;
    for row in ds.rows() {
        let d = if alpha == 0.0 {
            dist_lra(row, h)?
        } else {
            dist_alpha(row, h, alpha)?
        };
        total += d * d;
    }
    Ok(total)
}

const ORACLE_MAX_ITERS: usize = 50_000;

/// Direct numerical minimizer of the Fréchet objective, for tests.
///
/// Minimizes over the d-dimensional isometric chart (ilr coordinates at
/// α = 0) with Nelder–Mead, so boundary handling never arises; converged when
/// the simplex's objective spread drops below 1e-12.
pub fn frechet_oracle(ds: &CompositionDataset, alpha: f64) -> Result<Composition> {
    if !alpha.is_finite() || !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha { alpha, domain: "[-1, 1]" });
    }
    let h = HelmertBasis::new(ds.dim())?;
    let d = ds.dim() - 1;

    let from_chart = |z: &[f64]| -> Option<Composition> {
        if alpha == 0.0 {
            let back = h.apply_transpose(z).ok()?;
            let raw: Vec<f64> = back.iter().map(|v| v.exp()).collect();
            Composition::closure(&raw).ok()
        } else {
            inverse_alpha_isometric(z, alpha, &h).ok()
        }
    };
    let objective = |z: &[f64]| -> f64 {
        match from_chart(z) {
            Some(c) => frechet_objective(ds, &c, alpha).unwrap_or(f64::INFINITY),
            None => f64::INFINITY,
        }
    };

    // start at the chart image of the arithmetic mean; any interior start works
    let start_comp = mean_arithmetic(ds);
    let start = if alpha == 0.0 {
        ilr(&start_comp, &h)?
    } else {
        crate::transforms::alpha_isometric(&start_comp, alpha, &h)?
    };

    let z = nelder_mead(&objective, &start, d)?;
    from_chart(&z).ok_or(Error::OracleNonConvergence { iterations: ORACLE_MAX_ITERS })
}

/// Plain Nelder–Mead over R^d, tuned for smooth low-dimensional objectives.
fn nelder_mead<F: Fn(&[f64]) -> f64>(f: &F, start: &[f64], d: usize) -> Result<Vec<f64>> {
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    simplex.push(start.to_vec());
    for i in 0..d {
        let mut v = start.to_vec();
        v[i] += if v[i].abs() > 1e-3 { 0.05 * v[i].abs() } else { 0.01 };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    for _ in 0..ORACLE_MAX_ITERS {
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let best = order[0];
        let worst = order[d];
        let second_worst = order[d - 1];

        if values[worst].is_finite() && values[worst] - values[best] < 1e-12 {
            return Ok(simplex[best].clone());
        }

        let mut centroid = vec![0.0; d];
        for &i in &order[..d] {
            for (c, v) in centroid.iter_mut().zip(&simplex[i]) {
                *c += v;
            }
        }
        for c in &mut centroid {
            *c /= d as f64;
        }

        let point_at = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = point_at(1.0);
        let fr = f(&reflected);
        if fr < values[best] {
            let expanded = point_at(2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if fr < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            let contracted = if fr < values[worst] {
                point_at(0.5)
            } else {
                point_at(-0.5)
            };
            let fc = f(&contracted);
            if fc < values[worst].min(fr) {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                // shrink toward the best vertex
                let best_point = simplex[best].clone();
                for i in 0..=d {
                    if i == best {
                        continue;
                    }
                    for (v, b) in simplex[i].iter_mut().zip(&best_point) {
                        *v = b + 0.5 * (*v - b);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    Err(Error::OracleNonConvergence { iterations: ORACLE_MAX_ITERS })
}

/// True iff the distance between the closed subvectors does not exceed the
/// distance between the full compositions (within 1e-12).
pub fn check_subcompositional_dominance(
    x: &Composition,
    w: &Composition,
    subset: &[usize],
    spec: &DistanceSpec,
) -> Result<bool> {
    let full = spec.distance(x, w)?;
    let xs = x.subcomposition(subset)?;
    let ws = w.subcomposition(subset)?;
    let sub = spec.distance(&xs, &ws)?;
    Ok(sub <= full + 1e-12)
}
