//! Numerical radius `w(A) = max_{|x|=1} |<Ax, x>|`.
//!
//! The main route is the rotation identity `w(A) = max_theta lambda_max(Re(e^{i theta} A))`,
//! scanned on a uniform theta grid and polished by golden-section search. An independent
//! sphere-sampling oracle provides certified lower bounds for cross-checking.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{lambda_max_unchecked, vector_norm, ComplexMatrix, C64};
use crate::search::golden_section_max;

/// Grid cells whose value is within this (relative) distance of the best are treated as tied.
const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusConfig {
    pub theta_grid: usize,
    pub refine_tol: f64,
}

impl Default for RadiusConfig {
    fn default() -> Self {
        Self { theta_grid: 1024, refine_tol: 1e-10 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusMethod {
    Rotation,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub omega: f64,
    /// Rotation angle in `[0, 2 pi)` at which `Re(e^{i theta} A)` attains `omega`.
    pub argmax_theta: f64,
    pub method: RadiusMethod,
    pub theta_grid_size: usize,
}

/// Hermitian real and imaginary parts, `A = B + iC`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartesianPair {
    pub real: ComplexMatrix,
    pub imag: ComplexMatrix,
}

impl CartesianPair {
    pub fn reconstruct(&self) -> ComplexMatrix {
        &self.real + &self.imag.scale(C64::new(0.0, 1.0))
    }
}

/// `B = (A + A^*)/2`, `C = (A - A^*)/(2i)`.
pub fn cartesian(a: &ComplexMatrix) -> CartesianPair {
    let a_star = a.adjoint();
    let real = (a + &a_star).scale_real(0.5);
    let imag = (a - &a_star).scale(C64::new(0.0, -0.5));
    CartesianPair { real, imag }
}

fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// `lambda_max(Re(e^{i theta_k} A))` on the uniform grid `theta_k = 2 pi k / n`.
///
/// For even `n`, `theta_{k + n/2} = theta_k + pi` flips the sign of the rotated real part, so one
/// spectrum yields both `lambda_max` at `theta_k` and `-lambda_min` at `theta_k + pi`.
fn grid_values(b: &DMatrix<C64>, c: &DMatrix<C64>, n: usize) -> Vec<f64> {
    let step = TAU / n as f64;
    let rotated = |theta: f64| -> DMatrix<C64> { b * C64::new(theta.cos(), 0.0) - c * C64::new(theta.sin(), 0.0) };
    if n % 2 == 1 {
        return (0..n).map(|k| lambda_max_unchecked(rotated(step * k as f64))).collect();
    }
    let half = n / 2;
    let mut values = vec![0.0; n];
    for k in 0..half {
        let spectrum = rotated(step * k as f64).symmetric_eigenvalues();
        let (lo, hi) = spectrum.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        values[k] = hi;
        values[k + half] = -lo;
    }
    values
}

/// Exact numerical radius via the rotation method.
pub fn numerical_radius(a: &ComplexMatrix, cfg: &RadiusConfig) -> Result<RadiusResult> {
    if cfg.theta_grid < 64 {
        return Err(Error::InvalidConfig(format!("theta grid must have at least 64 points, got {}", cfg.theta_grid)));
    }
    if cfg.refine_tol.is_nan() || cfg.refine_tol <= 0.0 {
        return Err(Error::InvalidConfig("refine tolerance must be positive".into()));
    }
    if a.dim() == 1 {
        let z = a.get(0, 0);
        let theta = if z.norm() == 0.0 { 0.0 } else { wrap_angle(-z.arg()) };
        return Ok(RadiusResult {
            omega: z.norm(),
            argmax_theta: theta,
            method: RadiusMethod::Rotation,
            theta_grid_size: cfg.theta_grid,
        });
    }

    let CartesianPair { real, imag } = cartesian(a);
    let (b, c) = (real.into_matrix(), imag.into_matrix());
    let mut phi = |theta: f64| -> Result<f64> {
        let h: DMatrix<C64> = &b * C64::new(theta.cos(), 0.0) - &c * C64::new(theta.sin(), 0.0);
        Ok(lambda_max_unchecked(h))
    };

    let n = cfg.theta_grid;
    let step = TAU / n as f64;
    let grid = grid_values(&b, &c, n);
    let grid_max = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tie = TIE_TOL * grid_max.abs().max(1.0);
    let tied: Vec<bool> = grid.iter().map(|&v| v >= grid_max - tie).collect();

    let mut candidates: Vec<(f64, f64)> =
        grid.iter().enumerate().filter(|(k, _)| tied[*k]).map(|(k, &v)| (step * k as f64, v)).collect();

    // Cells inside a flat run are skipped: their whole bracket already sits on the plateau.
    let mut refine: Vec<usize> = (0..n).filter(|&k| tied[k] && !(tied[(k + n - 1) % n] && tied[(k + 1) % n])).collect();
    if refine.is_empty() {
        refine.push(tied.iter().position(|&t| t).unwrap_or(0));
    }
    for k in refine {
        let centre = step * k as f64;
        let e = golden_section_max(&mut phi, centre - step, centre + step, cfg.refine_tol)?;
        candidates.push((wrap_angle(e.x), e.value));
    }

    let omega = candidates.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let tie = TIE_TOL * omega.abs().max(1.0);
    let argmax_theta = candidates.iter().filter(|c| c.1 >= omega - tie).map(|c| c.0).fold(f64::INFINITY, f64::min);

    Ok(RadiusResult {
        omega: omega.max(0.0),
        argmax_theta,
        method: RadiusMethod::Rotation,
        theta_grid_size: cfg.theta_grid,
    })
}

/// Settings for [`radius_oracle`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub samples: usize,
    pub polish_steps: usize,
    /// Number of best samples that get polished.
    pub candidates: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { samples: 4096, polish_steps: 2000, candidates: 8, seed: 0x5eed }
    }
}

fn random_unit_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))).collect();
        let norm = vector_norm(&v);
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Sphere-sampling lower bound on `w(A)`.
///
/// Samples complex-Gaussian unit vectors, then polishes the best ones by projected ascent on
/// `x -> |<Ax, x>|`: with `phi = arg <Ax, x>`, each step moves `x` along
/// `Re(e^{-i phi} A) x + s x` and renormalizes. The shift `s >= |A|` makes every step
/// nondecreasing. The returned value is `|<Ax, x>|` for an explicit unit vector.
pub fn radius_oracle(a: &ComplexMatrix, cfg: &OracleConfig) -> Result<RadiusResult> {
    if cfg.samples < 1000 {
        return Err(Error::InvalidConfig(format!("oracle needs at least 1000 samples, got {}", cfg.samples)));
    }
    let n = a.dim();
    let a_star = a.adjoint();
    let shift = a.frobenius_norm();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut pool: Vec<(f64, Vec<C64>)> = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        let x = random_unit_vector(n, &mut rng);
        pool.push((a.quadratic_form(&x).norm(), x));
    }
    pool.sort_by(|p, q| q.0.total_cmp(&p.0));
    pool.truncate(cfg.candidates.max(1));

    let mut best = (0.0_f64, C64::new(0.0, 0.0));
    for (_, mut x) in pool {
        for _ in 0..cfg.polish_steps {
            let q = a.quadratic_form(&x);
            let phase = if q.norm() > 0.0 { q.conj() / q.norm() } else { C64::new(1.0, 0.0) };
            let ax = a.apply(&x);
            let a_star_x = a_star.apply(&x);
            let step: Vec<C64> =
                (0..n).map(|i| 0.5 * (phase * ax[i] + phase.conj() * a_star_x[i]) + shift * x[i]).collect();
            let norm = vector_norm(&step);
            if norm == 0.0 {
                break;
            }
            x = step.into_iter().map(|z| z / norm).collect();
        }
        let q = a.quadratic_form(&x);
        if q.norm() > best.0 {
            best = (q.norm(), q);
        }
    }

    let theta = if best.0 > 0.0 { wrap_angle(-best.1.arg()) } else { 0.0 };
    Ok(RadiusResult { omega: best.0, argmax_theta: theta, method: RadiusMethod::Oracle, theta_grid_size: 0 })
}

/// `(w(A^n), w(A)^n)` for the power inequality `w(A^n) <= w(A)^n`.
pub fn power_check(a: &ComplexMatrix, n: u32, cfg: &RadiusConfig) -> Result<(f64, f64)> {
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidConfig(format!("power must lie in 1..=8, got {n}")));
    }
    let omega = numerical_radius(a, cfg)?.omega;
    let omega_pow = numerical_radius(&a.powi(n), cfg)?.omega;
    Ok((omega_pow, omega.powi(n as i32)))
}
