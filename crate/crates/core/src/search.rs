//! One-dimensional scans: a uniform grid followed by golden-section refinement.

use serde::{Deserialize, Serialize};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Settings for a grid-plus-golden-section scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Number of uniform grid points.
    pub grid: usize,
    /// Bracket width at which golden-section refinement stops.
    pub tol: f64,
}

/// Location and value of the best point found by a scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Returns the best point among all evaluations, so a non-unimodal `f` still yields a value
/// no worse than any point that was actually probed.
pub fn golden_section_min<F, E>(f: &mut F, lo: f64, hi: f64, tol: f64) -> Result<Extremum, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut best = if f2 < f1 { Extremum { x: x2, value: f2 } } else { Extremum { x: x1, value: f1 } };

    while (b - a).abs() > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
            if f1 < best.value {
                best = Extremum { x: x1, value: f1 };
            }
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
            if f2 < best.value {
                best = Extremum { x: x2, value: f2 };
            }
        }
    }
    Ok(best)
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
pub fn golden_section_max<F, E>(f: &mut F, lo: f64, hi: f64, tol: f64) -> Result<Extremum, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let mut neg = |x: f64| f(x).map(|v| -v);
    golden_section_min(&mut neg, lo, hi, tol).map(|e| Extremum { x: e.x, value: -e.value })
}

/// Minimizes `f` over `[lo, hi]`: evaluates a uniform grid of `cfg.grid` points (endpoints
/// included), then refines the bracket around the best grid point. `extra` points are
/// evaluated too and compete with the grid.
pub fn grid_golden_min<F, E>(f: &mut F, lo: f64, hi: f64, cfg: ScanConfig, extra: &[f64]) -> Result<Extremum, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let n = cfg.grid.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    let mut values = Vec::with_capacity(n);
    let mut best_idx = 0;
    for k in 0..n {
        let x = if k == n - 1 { hi } else { lo + step * k as f64 };
        let v = f(x)?;
        if v < values.get(best_idx).map_or(f64::INFINITY, |&(_, bv)| bv) {
            best_idx = k;
        }
        values.push((x, v));
    }
    let mut best = Extremum { x: values[best_idx].0, value: values[best_idx].1 };
    for &x in extra {
        let v = f(x)?;
        if v < best.value {
            best = Extremum { x, value: v };
        }
    }
    let a = values[best_idx.saturating_sub(1)].0;
    let b = values[(best_idx + 1).min(n - 1)].0;
    let refined = golden_section_min(f, a, b, cfg.tol)?;
    if refined.value < best.value {
        best = refined;
    }
    Ok(best)
}
