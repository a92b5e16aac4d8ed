//! Least-squares fit of `A = c1 + (total - c1) exp(-c2 N)`.
//!
//! A coarse grid over `c1 in [0, total]`, `c2 in [0, 1]` picks a starting
//! point; golden-section search on `c2` then refines it, with `c1` solved in
//! closed form for each trial `c2` (the model is linear in `c1`).

use super::atable::ATablePoint;
use crate::error::FitError;

const GRID: usize = 400;
const C2_MAX: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpFit {
    pub c1: f64,
    pub c2: f64,
    /// Sum of squared residuals at the optimum.
    pub sse: f64,
}

pub fn model(c1: f64, c2: f64, total: f64, n: f64) -> f64 {
    c1 + (total - c1) * (-c2 * n).exp()
}

fn sse(points: &[(f64, f64)], total: f64, c1: f64, c2: f64) -> f64 {
    points
        .iter()
        .map(|&(n, a)| (a - model(c1, c2, total, n)).powi(2))
        .sum()
}

/// Best `c1 in [0, total]` for fixed `c2`: `A - total e = c1 (1 - e)`.
fn profile_c1(points: &[(f64, f64)], total: f64, c2: f64) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for &(n, a) in points {
        let e = (-c2 * n).exp();
        num += (1.0 - e) * (a - total * e);
        den += (1.0 - e) * (1.0 - e);
    }
    if den == 0.0 {
        return 0.0;
    }
    (num / den).clamp(0.0, total)
}

/// Fits `(depth, A)` pairs.
pub fn fit_exponential_xy(points: &[(f64, f64)], total: f64) -> Result<ExpFit, FitError> {
    if points.len() < 3 {
        return Err(FitError::TooFewPoints(points.len()));
    }
    if points.iter().all(|p| p.0 == points[0].0) {
        return Err(FitError::DegenerateDepths);
    }

    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=GRID {
        let c1 = total * i as f64 / GRID as f64;
        for j in 0..=GRID {
            let c2 = C2_MAX * j as f64 / GRID as f64;
            let s = sse(points, total, c1, c2);
            if s < best.0 {
                best = (s, c1, c2);
            }
        }
    }

    let step = C2_MAX / GRID as f64;
    let profiled = |c2: f64| sse(points, total, profile_c1(points, total, c2), c2);
    let (mut lo, mut hi) = ((best.2 - 2.0 * step).max(0.0), (best.2 + 2.0 * step).min(C2_MAX));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (profiled(x1), profiled(x2));
    while hi - lo > 1e-13 * hi.max(1e-3) {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = profiled(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = profiled(x2);
        }
    }
    let c2 = 0.5 * (lo + hi);
    let c1 = profile_c1(points, total, c2);
    let refined = ExpFit {
        c1,
        c2,
        sse: sse(points, total, c1, c2),
    };
    // the grid point can beat the refinement only at a boundary kink
    if refined.sse <= best.0 {
        Ok(refined)
    } else {
        Ok(ExpFit {
            c1: best.1,
            c2: best.2,
            sse: best.0,
        })
    }
}

pub fn fit_exponential(points: &[ATablePoint], total: u64) -> Result<ExpFit, FitError> {
    let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.depth as f64, p.a as f64)).collect();
    fit_exponential_xy(&xy, total as f64)
}
