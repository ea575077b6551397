//! Upper and lower bounds on the numerical radius, and verifiers for the orderings between them.
//!
//! Every bound has a stable name (`upper.kittaneh07`, `lower.half_norm`, ...) and lives in a
//! [`Catalog`]; the harness and CLI iterate the catalog instead of naming bounds one by one.
//! Bounds of `w(A)^2` carry [`Target::OmegaSquared`].

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{abs_pair, hermitian_norm, op_norm, vector_norm, ComplexMatrix, FunctionPair, HermitianPsd, C64};
use crate::radius::{cartesian, numerical_radius, RadiusConfig, RadiusResult};
use crate::search::{grid_golden_min, ScanConfig};

/// Absolute floor under every relative link tolerance.
pub const ABS_TOL_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Omega,
    OmegaSquared,
    NormSum,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub name: String,
    pub value: f64,
    pub side: Side,
    pub target: Target,
}

impl BoundValue {
    fn new(name: impl Into<String>, value: f64, side: Side, target: Target) -> Self {
        Self { name: name.into(), value, side, target }
    }

    fn term(&self) -> Term {
        Term { name: self.name.clone(), value: self.value }
    }
}

/// A named quantity appearing in a chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub value: f64,
}

impl Term {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Self { name: name.into(), value }
    }
}

/// One claimed inequality `lesser <= greater`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainLink {
    pub lesser: Term,
    pub greater: Term,
    /// `greater - lesser`.
    pub slack: f64,
    /// Absolute slack deficit the link may show and still hold.
    pub tolerance: f64,
}

impl ChainLink {
    pub fn holds(&self) -> bool {
        self.slack >= -self.tolerance
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainVerdict {
    pub chain_name: String,
    pub links: Vec<ChainLink>,
    pub holds: bool,
    /// Relative tolerance the link tolerances were derived from.
    pub tolerance: f64,
}

impl ChainVerdict {
    pub fn failing_links(&self) -> impl Iterator<Item = &ChainLink> {
        self.links.iter().filter(|l| !l.holds())
    }
}

/// `tol_rel * max(1, |a|, |b|)`, floored at [`ABS_TOL_FLOOR`].
pub fn link_tolerance(tol_rel: f64, a: f64, b: f64) -> f64 {
    (tol_rel * 1f64.max(a.abs()).max(b.abs())).max(ABS_TOL_FLOOR)
}

/// Accumulates links and produces a [`ChainVerdict`].
#[derive(Debug)]
pub struct ChainBuilder {
    name: String,
    tol_rel: f64,
    links: Vec<ChainLink>,
}

impl ChainBuilder {
    pub fn new(name: impl Into<String>, tol_rel: f64) -> Self {
        Self { name: name.into(), tol_rel, links: Vec::new() }
    }

    /// Adds `lesser <= greater` under the relative tolerance.
    pub fn le(mut self, lesser: Term, greater: Term) -> Self {
        let tolerance = link_tolerance(self.tol_rel, lesser.value, greater.value);
        self.push(lesser, greater, tolerance);
        self
    }

    /// Adds `lesser <= greater` with an explicit absolute tolerance.
    pub fn le_abs(mut self, lesser: Term, greater: Term, tolerance: f64) -> Self {
        self.push(lesser, greater, tolerance);
        self
    }

    /// Adds the pair of links asserting `|x - y| <= tolerance`.
    pub fn eq_abs(self, x: Term, y: Term, tolerance: f64) -> Self {
        self.le_abs(x.clone(), y.clone(), tolerance).le_abs(y, x, tolerance)
    }

    fn push(&mut self, lesser: Term, greater: Term, tolerance: f64) {
        let slack = greater.value - lesser.value;
        self.links.push(ChainLink { lesser, greater, slack, tolerance });
    }

    pub fn finish(self) -> ChainVerdict {
        let holds = self.links.iter().all(ChainLink::holds);
        ChainVerdict { chain_name: self.name, links: self.links, holds, tolerance: self.tol_rel }
    }
}

/// Settings shared by every bound evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub radius: RadiusConfig,
    pub v_scan: ScanConfig,
    pub tol_rel: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { radius: RadiusConfig::default(), v_scan: ScanConfig { grid: 65, tol: 1e-10 }, tol_rel: 1e-8 }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.v_scan.grid < 3 {
            return Err(Error::InvalidConfig(format!("v grid must have at least 3 points, got {}", self.v_scan.grid)));
        }
        if self.v_scan.tol.is_nan() || self.v_scan.tol <= 0.0 {
            return Err(Error::InvalidConfig("v refinement tolerance must be positive".into()));
        }
        if !(self.tol_rel > 0.0 && self.tol_rel <= 1e-2) {
            return Err(Error::InvalidConfig(format!(
                "relative tolerance must lie in (0, 1e-2], got {}",
                self.tol_rel
            )));
        }
        if self.radius.theta_grid < 64 {
            return Err(Error::InvalidConfig(format!(
                "theta grid must have at least 64 points, got {}",
                self.radius.theta_grid
            )));
        }
        Ok(())
    }
}

/// Result of minimizing `h(v) = 1/2 || |A|^{2(1-v)} + |A^*|^{2v} ||` over `v` in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VScan {
    pub value: f64,
    pub argmin_v: f64,
}

/// The operands every bound of a matrix `A` is built from, computed once.
///
/// Quantities that need a numerical-radius computation are evaluated lazily and cached.
#[derive(Debug)]
pub struct BoundContext {
    a: ComplexMatrix,
    cfg: EvalConfig,
    abs: HermitianPsd,
    abs_star: HermitianPsd,
    norm: f64,
    a_squared: ComplexMatrix,
    norm_a_squared: f64,
    /// `||A^*A + AA^*|| = || |A|^2 + |A^*|^2 ||`.
    sum_squares_norm: f64,
    /// `|A| |A^*|`.
    cross: ComplexMatrix,
    /// `|| |A||A^*| + |A^*||A| ||`.
    cross_sym_norm: f64,
    omega: OnceLock<Result<RadiusResult>>,
    omega_a_squared: OnceLock<Result<f64>>,
    omega_cross: OnceLock<Result<f64>>,
    v_scan: OnceLock<Result<VScan>>,
}

impl BoundContext {
    pub fn new(a: &ComplexMatrix, cfg: &EvalConfig) -> Result<Self> {
        cfg.validate()?;
        let (abs, abs_star) = abs_pair(a)?;
        let a_star = a.adjoint();
        let norm = abs.norm();
        let a_squared = a * a;
        let norm_a_squared = op_norm(&a_squared)?;
        let sum_squares = &(&a_star * a) + &(a * &a_star);
        let sum_squares_norm = hermitian_norm(&sum_squares)?;
        let cross = abs.matrix() * abs_star.matrix();
        let cross_sym_norm = hermitian_norm(&(&cross + &cross.adjoint()))?;
        Ok(Self {
            a: a.clone(),
            cfg: *cfg,
            abs,
            abs_star,
            norm,
            a_squared,
            norm_a_squared,
            sum_squares_norm,
            cross,
            cross_sym_norm,
            omega: OnceLock::new(),
            omega_a_squared: OnceLock::new(),
            omega_cross: OnceLock::new(),
            v_scan: OnceLock::new(),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    pub fn abs(&self) -> &HermitianPsd {
        &self.abs
    }

    pub fn abs_star(&self) -> &HermitianPsd {
        &self.abs_star
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn norm_a_squared(&self) -> f64 {
        self.norm_a_squared
    }

    pub fn radius(&self) -> Result<RadiusResult> {
        self.omega.get_or_init(|| numerical_radius(&self.a, &self.cfg.radius)).clone()
    }

    pub fn omega(&self) -> Result<f64> {
        self.radius().map(|r| r.omega)
    }

    /// `w(A^2)`.
    pub fn omega_a_squared(&self) -> Result<f64> {
        self.omega_a_squared
            .get_or_init(|| numerical_radius(&self.a_squared, &self.cfg.radius).map(|r| r.omega))
            .clone()
    }

    /// `w(|A| |A^*|)`; the product is generally not Hermitian.
    pub fn omega_cross(&self) -> Result<f64> {
        self.omega_cross.get_or_init(|| numerical_radius(&self.cross, &self.cfg.radius).map(|r| r.omega)).clone()
    }

    fn tol(&self) -> f64 {
        self.cfg.tol_rel
    }

    pub fn classical(&self) -> (BoundValue, BoundValue) {
        (
            BoundValue::new("lower.half_norm", 0.5 * self.norm, Side::Lower, Target::Omega),
            BoundValue::new("upper.norm", self.norm, Side::Upper, Target::Omega),
        )
    }

    pub fn kittaneh_02(&self) -> BoundValue {
        let value = 0.5 * (self.norm + self.norm_a_squared.sqrt());
        BoundValue::new("upper.kittaneh02", value, Side::Upper, Target::Omega)
    }

    pub fn kittaneh_07(&self) -> Result<BoundValue> {
        let value = 0.5 * hermitian_norm(&(self.abs.matrix() + self.abs_star.matrix()))?;
        Ok(BoundValue::new("upper.kittaneh07", value, Side::Upper, Target::Omega))
    }

    pub fn squared_upper_04(&self) -> BoundValue {
        BoundValue::new("upper.sq04", 0.5 * self.sum_squares_norm, Side::Upper, Target::OmegaSquared)
    }

    pub fn squared_lower_01(&self) -> BoundValue {
        BoundValue::new("lower.quarter_sum_squares", 0.25 * self.sum_squares_norm, Side::Lower, Target::OmegaSquared)
    }

    /// `h(v) = 1/2 || |A|^{2(1-v)} + |A^*|^{2v} ||`, the bound on `w(A)` valid for each fixed `v`.
    pub fn h(&self, v: f64) -> Result<f64> {
        check_unit_interval(v)?;
        let left = self.abs.power(2.0 * (1.0 - v))?;
        let right = self.abs_star.power(2.0 * v)?;
        Ok(0.5 * hermitian_norm(&(left.matrix() + right.matrix()))?)
    }

    /// Minimum of `h` over `[0, 1]`: uniform grid plus golden-section refinement of the best
    /// bracket. `v = 1/2` is always probed, so the result never exceeds `kittaneh_07`.
    pub fn v_scan(&self) -> Result<VScan> {
        self.v_scan
            .get_or_init(|| {
                let mut h = |v: f64| self.h(v);
                grid_golden_min(&mut h, 0.0, 1.0, self.cfg.v_scan, &[0.5])
                    .map(|e| VScan { value: e.value, argmin_v: e.x })
            })
            .clone()
    }

    pub fn min_over_v_29(&self) -> Result<(BoundValue, f64)> {
        let scan = self.v_scan()?;
        Ok((BoundValue::new("upper.min_v_29", scan.value, Side::Upper, Target::Omega), scan.argmin_v))
    }

    /// The relaxation of `h(v)` through the norm-of-sum estimate for positive matrices.
    pub fn corollary_after_29(&self, v: f64) -> Result<BoundValue> {
        check_unit_interval(v)?;
        let p = self.norm.powf(2.0 * (1.0 - v));
        let q = self.norm.powf(2.0 * v);
        let mixed = self.abs.power(1.0 - v)?.matrix() * self.abs_star.power(v)?.matrix();
        let mixed_norm = op_norm(&mixed)?;
        let value = 0.25 * (p + q + ((p - q).powi(2) + 4.0 * mixed_norm.powi(2)).sqrt());
        Ok(BoundValue::new("upper.corollary_29", value, Side::Upper, Target::Omega))
    }

    /// Returns `(refined, relaxed)` bounds on `w(A)^2` for the pair `(f, g)`.
    pub fn theorem_8(&self, pair: &FunctionPair) -> Result<(BoundValue, BoundValue)> {
        let f4 = self.abs.apply(|t| pair.f(t).powi(4))?;
        let g4 = self.abs_star.apply(|t| pair.g(t).powi(4))?;
        let f2 = self.abs.apply(|t| pair.f(t).powi(2))?;
        let g2 = self.abs_star.apply(|t| pair.g(t).powi(2))?;
        let quartic = hermitian_norm(&(f4.matrix() + g4.matrix()))?;
        let product = f2.matrix() * g2.matrix();
        let symmetrized = hermitian_norm(&(&product + &product.adjoint()))?;
        let refined = 0.25 * quartic + 0.25 * symmetrized;
        let relaxed = 0.5 * quartic;
        Ok((
            BoundValue::new(format!("upper.theorem8.{}", pair.label()), refined, Side::Upper, Target::OmegaSquared),
            BoundValue::new(
                format!("upper.theorem8_relaxed.{}", pair.label()),
                relaxed,
                Side::Upper,
                Target::OmegaSquared,
            ),
        ))
    }

    pub fn eq_25(&self) -> BoundValue {
        let value = 0.25 * (self.sum_squares_norm + self.cross_sym_norm);
        BoundValue::new("upper.eq25", value, Side::Upper, Target::OmegaSquared)
    }

    pub fn satary_24(&self) -> Result<BoundValue> {
        let value = 0.25 * self.sum_squares_norm + 0.5 * self.omega_cross()?;
        Ok(BoundValue::new("upper.satary24", value, Side::Upper, Target::OmegaSquared))
    }

    /// The middle term of the refined lower bound in its two algebraic forms:
    /// `1/2 sqrt(2 w^4 + 1/8 ||(A+A^*)^2 (A-A^*)^2||)` and `1/2 sqrt(2 w^4 + 2 ||B^2 C^2||)`.
    pub fn final_middle_terms(&self) -> Result<(f64, f64)> {
        let omega = self.omega()?;
        let a_star = self.a.adjoint();
        let plus = &self.a + &a_star;
        let minus = &self.a - &a_star;
        let statement_product = &(&plus * &plus) * &(&minus * &minus);
        let statement = 0.5 * (2.0 * omega.powi(4) + op_norm(&statement_product)? / 8.0).sqrt();
        let parts = cartesian(&self.a);
        let b2 = &parts.real * &parts.real;
        let c2 = &parts.imag * &parts.imag;
        let proof = 0.5 * (2.0 * omega.powi(4) + 2.0 * op_norm(&(&b2 * &c2))?).sqrt();
        Ok((statement, proof))
    }

    pub fn final_refined(&self) -> Result<BoundValue> {
        let (statement, _) = self.final_middle_terms()?;
        Ok(BoundValue::new("lower.final_refined", statement, Side::Lower, Target::OmegaSquared))
    }

    pub fn chain_26(&self) -> Result<ChainVerdict> {
        let omega = self.omega()?;
        let middle = 0.5 * (self.sum_squares_norm + self.cross_sym_norm).sqrt();
        Ok(ChainBuilder::new("chain_26", self.tol())
            .le(Term::new("omega", omega), Term::new("sqrt_eq25", middle))
            .le(Term::new("sqrt_eq25", middle), self.kittaneh_02().term())
            .finish())
    }

    /// Returns `(satary, eq25)`.
    pub fn eq_24_comparison(&self) -> Result<(BoundValue, BoundValue)> {
        Ok((self.satary_24()?, self.eq_25()))
    }

    pub fn reverse_power_bound(&self) -> Result<ChainVerdict> {
        let omega = self.omega()?;
        let omega_sq = self.omega_a_squared()?;
        let quarter_cross = Term::new("quarter_cross_sym", 0.25 * self.cross_sym_norm);
        let half_norm_sq = Term::new("half_norm_a_squared", 0.5 * self.norm_a_squared);
        let omega_a2 = Term::new("omega_a_squared", omega_sq);
        Ok(ChainBuilder::new("reverse_power", self.tol())
            .le(quarter_cross, half_norm_sq.clone())
            .le(half_norm_sq, omega_a2)
            .le(
                Term::new("omega_squared", omega * omega),
                Term::new("quarter_sum_squares_plus_omega_a_squared", 0.25 * self.sum_squares_norm + omega_sq),
            )
            .finish())
    }

    pub fn lower_refinement_final(&self) -> Result<ChainVerdict> {
        let omega = self.omega()?;
        let (statement, proof) = self.final_middle_terms()?;
        Ok(ChainBuilder::new("lower_refinement_final", self.tol())
            .le(self.squared_lower_01().term(), Term::new("middle.statement", statement))
            .le(Term::new("middle.statement", statement), Term::new("omega_squared", omega * omega))
            .eq_abs(
                Term::new("middle.statement", statement),
                Term::new("middle.proof", proof),
                link_tolerance(self.tol(), statement, proof),
            )
            .finish())
    }

    /// `|| |A|^2 + |A^*|^2 || <= ||A^2|| + ||A||^2`.
    pub fn lemma_17_specialization(&self) -> ChainVerdict {
        ChainBuilder::new("lemma17.specialization", self.tol())
            .le(
                Term::new("norm_sum_squares", self.sum_squares_norm),
                Term::new("norm_a_squared_plus_norm_squared", self.norm_a_squared + self.norm * self.norm),
            )
            .finish()
    }

    /// `|| |A||A^*| + |A^*||A| || <= 2 ||A^2||`.
    pub fn cross_term_chain(&self) -> ChainVerdict {
        ChainBuilder::new("cross_term", self.tol())
            .le(
                Term::new("norm_cross_sym", self.cross_sym_norm),
                Term::new("twice_norm_a_squared", 2.0 * self.norm_a_squared),
            )
            .finish()
    }

    /// `||B|| <= w(A)` and `||C|| <= w(A)` for the Cartesian parts.
    pub fn cartesian_chain(&self) -> Result<ChainVerdict> {
        let omega = Term::new("omega", self.omega()?);
        let parts = cartesian(&self.a);
        Ok(ChainBuilder::new("cartesian_parts", self.tol())
            .le(Term::new("norm_real_part", hermitian_norm(&parts.real)?), omega.clone())
            .le(Term::new("norm_imag_part", hermitian_norm(&parts.imag)?), omega)
            .finish())
    }

    pub fn classical_chain(&self) -> Result<ChainVerdict> {
        let (lower, upper) = self.classical();
        let omega = Term::new("omega", self.omega()?);
        Ok(ChainBuilder::new("classical", self.tol()).le(lower.term(), omega.clone()).le(omega, upper.term()).finish())
    }

    pub fn power_chain(&self) -> Result<ChainVerdict> {
        let omega = self.omega()?;
        Ok(ChainBuilder::new("power_inequality", self.tol())
            .le(Term::new("omega_a_squared", self.omega_a_squared()?), Term::new("omega_squared", omega * omega))
            .finish())
    }

    /// `w <= h(v*) <= corollary(v*)` at the minimizing `v*` of the scan.
    pub fn corollary_chain(&self) -> Result<ChainVerdict> {
        let (min_v, v) = self.min_over_v_29()?;
        let corollary = self.corollary_after_29(v)?;
        Ok(ChainBuilder::new("corollary_29", self.tol())
            .le(Term::new("omega", self.omega()?), min_v.term())
            .le(min_v.term(), corollary.term())
            .finish())
    }

    /// Orderings between the bounds on `w(A)`: `w <= min_v_29 <= kittaneh07 <= kittaneh02 <= ||A||`.
    pub fn ordering_omega(&self) -> Result<ChainVerdict> {
        let (min_v, _) = self.min_over_v_29()?;
        let k07 = self.kittaneh_07()?;
        let k02 = self.kittaneh_02();
        let (_, upper) = self.classical();
        Ok(ChainBuilder::new("ordering.omega", self.tol())
            .le(Term::new("omega", self.omega()?), min_v.term())
            .le(min_v.term(), k07.term())
            .le(k07.term(), k02.term())
            .le(k02.term(), upper.term())
            .finish())
    }

    /// `w^2 <= eq25 <= sq04` and `eq25 <= satary24`.
    pub fn ordering_omega_squared(&self) -> Result<ChainVerdict> {
        let omega = self.omega()?;
        let eq25 = self.eq_25();
        Ok(ChainBuilder::new("ordering.omega_squared", self.tol())
            .le(Term::new("omega_squared", omega * omega), eq25.term())
            .le(eq25.term(), self.squared_upper_04().term())
            .le(eq25.term(), self.satary_24()?.term())
            .finish())
    }

    /// `sq01 <= final_refined <= w^2`.
    pub fn ordering_lower(&self) -> Result<ChainVerdict> {
        let omega = self.omega()?;
        let refined = self.final_refined()?;
        Ok(ChainBuilder::new("ordering.lower", self.tol())
            .le(self.squared_lower_01().term(), refined.term())
            .le(refined.term(), Term::new("omega_squared", omega * omega))
            .finish())
    }

    /// `w^2 <= refined <= relaxed` for every pair.
    pub fn ordering_theorem_8(&self, pairs: &[FunctionPair]) -> Result<ChainVerdict> {
        let omega = self.omega()?;
        let mut chain = ChainBuilder::new("ordering.theorem8", self.tol());
        for pair in pairs {
            let (refined, relaxed) = self.theorem_8(pair)?;
            chain =
                chain.le(Term::new("omega_squared", omega * omega), refined.term()).le(refined.term(), relaxed.term());
        }
        Ok(chain.finish())
    }

    /// `eq_25` agrees with `theorem_8` at `f = g = t^{1/2}`.
    pub fn eq25_consistency(&self) -> Result<ChainVerdict> {
        let (refined, _) = self.theorem_8(&FunctionPair::power(0.5)?)?;
        Ok(ChainBuilder::new("consistency.eq25_theorem8", self.tol())
            .eq_abs(self.eq_25().term(), refined.term(), 1e-10 * 1f64.max(refined.value))
            .finish())
    }

    pub fn triangle_on_cartesian_parts(&self) -> Result<ChainVerdict> {
        let parts = cartesian(&self.a);
        let imag = parts.imag.scale(C64::new(0.0, 1.0));
        triangle_refinement_6(&parts.real, &imag, self.tol()).map(|mut v| {
            v.chain_name = "triangle_6.cartesian".into();
            v
        })
    }

    /// Evaluates `w(A)`, every catalog bound and every chain.
    pub fn report(&self, catalog: &Catalog) -> Result<BoundReport> {
        let radius = self.radius()?;
        let omega = radius.omega;
        let (_, argmin_v) = self.min_over_v_29()?;
        let mut bounds = Vec::with_capacity(catalog.entries.len());
        for entry in &catalog.entries {
            let bound = BoundValue::new(entry.name.clone(), (entry.eval)(self)?, entry.side, entry.target);
            bounds.push(BoundEntry::new(bound, omega));
        }
        let chains = vec![
            self.classical_chain()?,
            self.ordering_omega()?,
            self.ordering_omega_squared()?,
            self.ordering_lower()?,
            self.ordering_theorem_8(&catalog.pairs)?,
            self.chain_26()?,
            self.triangle_on_cartesian_parts()?,
            self.reverse_power_bound()?,
            self.lower_refinement_final()?,
            self.corollary_chain()?,
            self.lemma_17_specialization(),
            self.cross_term_chain(),
            self.cartesian_chain()?,
            self.power_chain()?,
            self.eq25_consistency()?,
        ];
        Ok(BoundReport { dim: self.a.dim(), omega, omega_theta: radius.argmax_theta, argmin_v, bounds, chains })
    }
}

fn check_unit_interval(v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidExponent(v))
    }
}

/// A bound with its slack against the exact target and the ratio `bound / target`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    #[serde(flatten)]
    pub bound: BoundValue,
    /// Distance on the correct side of the target: `bound - target` for upper bounds,
    /// `target - bound` for lower bounds.
    pub slack: f64,
    pub ratio: Option<f64>,
}

impl BoundEntry {
    fn new(bound: BoundValue, omega: f64) -> Self {
        let target = match bound.target {
            Target::Omega => omega,
            Target::OmegaSquared | Target::NormSum => omega * omega,
        };
        let slack = match bound.side {
            Side::Upper => bound.value - target,
            Side::Lower => target - bound.value,
        };
        let ratio = (target > 0.0).then(|| bound.value / target);
        Self { bound, slack, ratio }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub dim: usize,
    pub omega: f64,
    pub omega_theta: f64,
    pub argmin_v: f64,
    pub bounds: Vec<BoundEntry>,
    pub chains: Vec<ChainVerdict>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.chains.iter().all(|c| c.holds)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.bounds.iter().find(|b| b.bound.name == name).map(|b| b.bound.value)
    }

    pub fn chain(&self, name: &str) -> Option<&ChainVerdict> {
        self.chains.iter().find(|c| c.chain_name == name)
    }
}

type Evaluator = Arc<dyn Fn(&BoundContext) -> Result<f64> + Send + Sync>;

/// A registered bound.
#[derive(Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub side: Side,
    pub target: Target,
    eval: Evaluator,
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("name", &self.name)
            .field("side", &self.side)
            .field("target", &self.target)
            .finish()
    }
}

impl CatalogEntry {
    pub fn new<F>(name: impl Into<String>, side: Side, target: Target, eval: F) -> Self
    where
        F: Fn(&BoundContext) -> Result<f64> + Send + Sync + 'static,
    {
        Self { name: name.into(), side, target, eval: Arc::new(eval) }
    }

    pub fn evaluate(&self, ctx: &BoundContext) -> Result<BoundValue> {
        Ok(BoundValue::new(self.name.clone(), (self.eval)(ctx)?, self.side, self.target))
    }
}

/// Registry of bounds keyed by stable names.
#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    pairs: Vec<FunctionPair>,
}

impl Catalog {
    /// Every shipped bound, with the pair-parameterized bounds instantiated for `pairs`.
    pub fn with_pairs(pairs: Vec<FunctionPair>) -> Self {
        let mut entries = vec![
            CatalogEntry::new("lower.half_norm", Side::Lower, Target::Omega, |c| Ok(c.classical().0.value)),
            CatalogEntry::new("lower.quarter_sum_squares", Side::Lower, Target::OmegaSquared, |c| {
                Ok(c.squared_lower_01().value)
            }),
            CatalogEntry::new("lower.final_refined", Side::Lower, Target::OmegaSquared, |c| {
                c.final_refined().map(|b| b.value)
            }),
            CatalogEntry::new("upper.norm", Side::Upper, Target::Omega, |c| Ok(c.classical().1.value)),
            CatalogEntry::new("upper.kittaneh02", Side::Upper, Target::Omega, |c| Ok(c.kittaneh_02().value)),
            CatalogEntry::new("upper.kittaneh07", Side::Upper, Target::Omega, |c| c.kittaneh_07().map(|b| b.value)),
            CatalogEntry::new("upper.min_v_29", Side::Upper, Target::Omega, |c| c.min_over_v_29().map(|b| b.0.value)),
            CatalogEntry::new("upper.corollary_29", Side::Upper, Target::Omega, |c| {
                let v = c.v_scan()?.argmin_v;
                c.corollary_after_29(v).map(|b| b.value)
            }),
            CatalogEntry::new("upper.sq04", Side::Upper, Target::OmegaSquared, |c| Ok(c.squared_upper_04().value)),
            CatalogEntry::new("upper.eq25", Side::Upper, Target::OmegaSquared, |c| Ok(c.eq_25().value)),
            CatalogEntry::new("upper.satary24", Side::Upper, Target::OmegaSquared, |c| c.satary_24().map(|b| b.value)),
        ];
        for pair in &pairs {
            let p = pair.clone();
            entries.push(CatalogEntry::new(
                format!("upper.theorem8.{}", pair.label()),
                Side::Upper,
                Target::OmegaSquared,
                move |c| c.theorem_8(&p).map(|b| b.0.value),
            ));
        }
        for pair in &pairs {
            let p = pair.clone();
            entries.push(CatalogEntry::new(
                format!("upper.theorem8_relaxed.{}", pair.label()),
                Side::Upper,
                Target::OmegaSquared,
                move |c| c.theorem_8(&p).map(|b| b.1.value),
            ));
        }
        Self { entries, pairs }
    }

    pub fn standard() -> Self {
        Self::with_pairs(FunctionPair::power_family())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn pairs(&self) -> &[FunctionPair] {
        &self.pairs
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Self::standard()
    }
}

/// Full report for `a` against the standard catalog.
pub fn evaluate(a: &ComplexMatrix, cfg: &EvalConfig) -> Result<BoundReport> {
    BoundContext::new(a, cfg)?.report(&Catalog::standard())
}

pub fn classical_bounds(a: &ComplexMatrix) -> Result<(BoundValue, BoundValue)> {
    let norm = op_norm(a)?;
    Ok((
        BoundValue::new("lower.half_norm", 0.5 * norm, Side::Lower, Target::Omega),
        BoundValue::new("upper.norm", norm, Side::Upper, Target::Omega),
    ))
}

fn context(a: &ComplexMatrix) -> Result<BoundContext> {
    BoundContext::new(a, &EvalConfig::default())
}

/// `1/2 (||A|| + ||A^2||^{1/2})`.
pub fn kittaneh_02(a: &ComplexMatrix) -> Result<BoundValue> {
    Ok(context(a)?.kittaneh_02())
}

/// `1/2 || |A| + |A^*| ||`.
pub fn kittaneh_07(a: &ComplexMatrix) -> Result<BoundValue> {
    context(a)?.kittaneh_07()
}

/// `1/2 || |A|^2 + |A^*|^2 ||`, an upper bound on `w(A)^2`.
pub fn squared_upper_04(a: &ComplexMatrix) -> Result<BoundValue> {
    Ok(context(a)?.squared_upper_04())
}

/// `1/4 || |A|^2 + |A^*|^2 ||`, a lower bound on `w(A)^2`.
pub fn squared_lower_01(a: &ComplexMatrix) -> Result<BoundValue> {
    Ok(context(a)?.squared_lower_01())
}

/// `1/2 min_v || |A|^{2(1-v)} + |A^*|^{2v} ||` with the minimizing `v`.
pub fn min_over_v_29(a: &ComplexMatrix, scan: ScanConfig) -> Result<(BoundValue, f64)> {
    let cfg = EvalConfig { v_scan: scan, ..EvalConfig::default() };
    BoundContext::new(a, &cfg)?.min_over_v_29()
}

pub fn corollary_after_29(a: &ComplexMatrix, v: f64) -> Result<BoundValue> {
    check_unit_interval(v)?;
    context(a)?.corollary_after_29(v)
}

pub fn theorem_8(a: &ComplexMatrix, pair: &FunctionPair) -> Result<(BoundValue, BoundValue)> {
    context(a)?.theorem_8(pair)
}

/// `1/4 (|| |A|^2 + |A^*|^2 || + || |A||A^*| + |A^*||A| ||)`, an upper bound on `w(A)^2`.
pub fn eq_25(a: &ComplexMatrix) -> Result<BoundValue> {
    Ok(context(a)?.eq_25())
}

pub fn chain_26(a: &ComplexMatrix, cfg: &EvalConfig) -> Result<ChainVerdict> {
    BoundContext::new(a, cfg)?.chain_26()
}

/// Returns `(satary, eq25)` where `satary = 1/4 || |A|^2 + |A^*|^2 || + 1/2 w(|A||A^*|)`.
pub fn eq_24_comparison(a: &ComplexMatrix, cfg: &EvalConfig) -> Result<(BoundValue, BoundValue)> {
    BoundContext::new(a, cfg)?.eq_24_comparison()
}

pub fn reverse_power_bound(a: &ComplexMatrix, cfg: &EvalConfig) -> Result<ChainVerdict> {
    BoundContext::new(a, cfg)?.reverse_power_bound()
}

pub fn lower_refinement_final(a: &ComplexMatrix, cfg: &EvalConfig) -> Result<ChainVerdict> {
    BoundContext::new(a, cfg)?.lower_refinement_final()
}

/// `||A+B|| <= sqrt(|| |A|^2 + |B|^2 || + ||A^*B + B^*A||) <= sqrt(||A||^2 + ||B||^2 + 2||A^*B||) <= ||A|| + ||B||`.
pub fn triangle_refinement_6(a: &ComplexMatrix, b: &ComplexMatrix, tol_rel: f64) -> Result<ChainVerdict> {
    a.same_dim(b)?;
    let (a_star, b_star) = (a.adjoint(), b.adjoint());
    let norm_a = op_norm(a)?;
    let norm_b = op_norm(b)?;
    let sum_norm = op_norm(&(a + b))?;
    let squares = hermitian_norm(&(&(&a_star * a) + &(&b_star * b)))?;
    let a_star_b = &a_star * b;
    let cross = hermitian_norm(&(&a_star_b + &(&b_star * a)))?;
    let first = (squares + cross).sqrt();
    let second = (norm_a * norm_a + norm_b * norm_b + 2.0 * op_norm(&a_star_b)?).sqrt();
    Ok(ChainBuilder::new("triangle_6", tol_rel)
        .le(Term::new("norm_sum", sum_norm), Term::new("refined", first))
        .le(Term::new("refined", first), Term::new("intermediate", second))
        .le(Term::new("intermediate", second), Term::new("norm_a_plus_norm_b", norm_a + norm_b))
        .finish())
}

/// `1/2 (||S|| + ||T|| + sqrt((||S|| - ||T||)^2 + 4 ||S^{1/2} T^{1/2}||^2))`, an upper bound on `||S + T||`.
pub fn lemma_17_bound(s: &HermitianPsd, t: &HermitianPsd) -> Result<BoundValue> {
    if s.dim() != t.dim() {
        return Err(Error::DimensionMismatch { left: s.dim(), right: t.dim() });
    }
    let (ns, nt) = (s.norm(), t.norm());
    let mixed = op_norm(&(s.sqrt().matrix() * t.sqrt().matrix()))?;
    let value = 0.5 * (ns + nt + ((ns - nt).powi(2) + 4.0 * mixed * mixed).sqrt());
    Ok(BoundValue::new("upper.lemma17", value, Side::Upper, Target::NormSum))
}

/// `||S + T|| <= lemma_17_bound(S, T)`.
pub fn lemma_17_verdict(s: &HermitianPsd, t: &HermitianPsd, tol_rel: f64) -> Result<ChainVerdict> {
    let bound = lemma_17_bound(s, t)?;
    let sum = hermitian_norm(&(s.matrix() + t.matrix()))?;
    Ok(ChainBuilder::new("lemma17", tol_rel).le(Term::new("norm_sum", sum), bound.term()).finish())
}

/// `f(|A|)` and `g(|A^*|)` for repeated mixed Cauchy-Schwarz checks against one matrix.
#[derive(Clone, Debug)]
pub struct MixedSchwarz {
    a: ComplexMatrix,
    f_abs: ComplexMatrix,
    g_abs_star: ComplexMatrix,
}

impl MixedSchwarz {
    pub fn new(a: &ComplexMatrix, pair: &FunctionPair) -> Result<Self> {
        let (abs, abs_star) = abs_pair(a)?;
        Ok(Self {
            a: a.clone(),
            f_abs: abs.apply(|t| pair.f(t))?.into_matrix(),
            g_abs_star: abs_star.apply(|t| pair.g(t))?.into_matrix(),
        })
    }

    /// `(|<Ax, y>|, ||f(|A|) x|| ||g(|A^*|) y||)`.
    pub fn check(&self, x: &[C64], y: &[C64]) -> Result<(f64, f64)> {
        for v in [x, y] {
            if v.len() != self.a.dim() {
                return Err(Error::DimensionMismatch { left: self.a.dim(), right: v.len() });
            }
            let norm = vector_norm(v);
            if (norm - 1.0).abs() > 1e-12 {
                return Err(Error::NotUnitVector { norm });
            }
        }
        let lhs = self.a.bilinear_form(x, y).norm();
        let rhs = vector_norm(&self.f_abs.apply(x)) * vector_norm(&self.g_abs_star.apply(y));
        Ok((lhs, rhs))
    }
}

/// Mixed Cauchy-Schwarz: `|<Ax, y>| <= ||f(|A|) x|| ||g(|A^*|) y||` for unit `x`, `y`.
pub fn lemma_08_check(a: &ComplexMatrix, pair: &FunctionPair, x: &[C64], y: &[C64]) -> Result<(f64, f64)> {
    MixedSchwarz::new(a, pair)?.check(x, y)
}

/// `(||S - T||, ||S + T||)` for positive `S`, `T`.
pub fn positive_diff_norm_14(s: &HermitianPsd, t: &HermitianPsd) -> Result<(f64, f64)> {
    if s.dim() != t.dim() {
        return Err(Error::DimensionMismatch { left: s.dim(), right: t.dim() });
    }
    let diff = hermitian_norm(&(s.matrix() - t.matrix()))?;
    let sum = hermitian_norm(&(s.matrix() + t.matrix()))?;
    Ok((diff, sum))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jordan2() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![0., 1.], vec![0., 0.]]).unwrap()
    }

    fn example() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![0., 1., 0.], vec![0., 0., 2.], vec![0., 0., 0.]]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn link_tolerance_is_relative_with_floor() {
        assert_eq!(link_tolerance(1e-8, 0.5, 0.2), 1e-8);
        assert_eq!(link_tolerance(1e-8, 300.0, 2.0), 3e-6);
        assert_eq!(link_tolerance(1e-15, 0.0, 0.0), ABS_TOL_FLOOR);
    }

    #[test]
    fn chain_builder_verdicts() {
        let ok = ChainBuilder::new("ok", 1e-8).le(Term::new("a", 1.0), Term::new("b", 1.0 - 5e-9)).finish();
        assert!(ok.holds);
        let bad = ChainBuilder::new("bad", 1e-8).le(Term::new("a", 1.0), Term::new("b", 0.99)).finish();
        assert!(!bad.holds);
        assert_eq!(bad.failing_links().count(), 1);
    }

    #[test]
    fn classical_examples() {
        let (lo, hi) = classical_bounds(&jordan2()).unwrap();
        assert!(close(lo.value, 0.5, 1e-14) && close(hi.value, 1.0, 1e-14));
        let (lo, hi) = classical_bounds(&ComplexMatrix::identity(3)).unwrap();
        assert!(close(lo.value, 0.5, 1e-14) && close(hi.value, 1.0, 1e-14));
        let (lo, hi) = classical_bounds(&example()).unwrap();
        assert!(close(lo.value, 1.0, 1e-14) && close(hi.value, 2.0, 1e-14));
    }

    #[test]
    fn kittaneh_examples() {
        assert!(close(kittaneh_02(&jordan2()).unwrap().value, 0.5, 1e-14));
        assert!(close(kittaneh_02(&ComplexMatrix::identity(2)).unwrap().value, 1.0, 1e-14));
        assert!(close(kittaneh_02(&example()).unwrap().value, 0.5 * (2.0 + 2f64.sqrt()), 1e-14));
        assert!(close(kittaneh_07(&example()).unwrap().value, 1.5, 1e-12));
        assert!(close(kittaneh_07(&jordan2()).unwrap().value, 0.5, 1e-14));
        assert!(close(kittaneh_07(&ComplexMatrix::identity(2)).unwrap().value, 1.0, 1e-14));
    }

    #[test]
    fn squared_bound_examples() {
        assert!(close(squared_upper_04(&jordan2()).unwrap().value, 0.5, 1e-14));
        assert!(close(squared_upper_04(&ComplexMatrix::identity(2)).unwrap().value, 1.0, 1e-14));
        assert!(close(squared_upper_04(&example()).unwrap().value, 2.5, 1e-13));
        assert!(close(squared_lower_01(&ComplexMatrix::identity(2)).unwrap().value, 0.5, 1e-14));
        assert!(close(squared_lower_01(&jordan2()).unwrap().value, 0.25, 1e-14));
        assert!(close(squared_lower_01(&example()).unwrap().value, 1.25, 1e-13));
    }

    #[test]
    fn min_over_v_examples() {
        let scan = EvalConfig::default().v_scan;
        let (b, v) = min_over_v_29(&example(), scan).unwrap();
        let x = (-1.0 + 17f64.sqrt()) / 2.0;
        assert!(close(b.value, 0.5 * (1.0 + x), 1e-9), "{}", b.value);
        assert!(close(4f64.powf(v), x, 1e-6));
        let ctx = context(&jordan2()).unwrap();
        for v in [0.1, 0.3, 0.5, 0.9] {
            assert!(close(ctx.h(v).unwrap(), 0.5, 1e-14));
        }
    }

    #[test]
    fn corollary_examples() {
        assert!(close(corollary_after_29(&ComplexMatrix::identity(2), 0.5).unwrap().value, 1.0, 1e-14));
        assert!(close(corollary_after_29(&jordan2(), 0.5).unwrap().value, 0.5, 1e-14));
        assert!(close(corollary_after_29(&example(), 0.5).unwrap().value, 1.0 + 0.5 * 2f64.sqrt(), 1e-12));
        assert_eq!(corollary_after_29(&example(), 1.5).unwrap_err(), Error::InvalidExponent(1.5));
    }

    #[test]
    fn theorem_8_examples() {
        let pair = FunctionPair::power(0.5).unwrap();
        let (refined, relaxed) = theorem_8(&jordan2(), &pair).unwrap();
        assert!(close(refined.value, 0.25, 1e-14) && close(relaxed.value, 0.5, 1e-14));
        let (refined, relaxed) = theorem_8(&ComplexMatrix::identity(2), &pair).unwrap();
        assert!(close(refined.value, 1.0, 1e-14) && close(relaxed.value, 1.0, 1e-14));
        let (refined, _) = theorem_8(&example(), &pair).unwrap();
        assert!(close(refined.value, 2.25, 1e-12));
        assert_eq!(refined.name, "upper.theorem8.pow0.5");
    }

    #[test]
    fn eq_25_examples() {
        assert!(close(eq_25(&jordan2()).unwrap().value, 0.25, 1e-14));
        assert!(close(eq_25(&example()).unwrap().value, 2.25, 1e-12));
        let normal = ComplexMatrix::from_diagonal(&[C64::new(0.6, 0.8), C64::new(-0.5, 0.0)]);
        assert!(close(eq_25(&normal).unwrap().value, 1.0, 1e-14));
    }

    #[test]
    fn chain_26_examples() {
        let cfg = EvalConfig::default();
        let v = chain_26(&example(), &cfg).unwrap();
        assert!(v.holds);
        assert!(close(v.links[0].lesser.value, 5f64.sqrt() / 2.0, 1e-9));
        assert!(close(v.links[0].greater.value, 1.5, 1e-12));
        assert!(close(v.links[1].greater.value, 0.5 * (2.0 + 2f64.sqrt()), 1e-12));
        for a in [ComplexMatrix::identity(3), jordan2()] {
            let v = chain_26(&a, &cfg).unwrap();
            assert!(v.holds);
            assert!(v.links.iter().all(|l| l.slack.abs() < 1e-10));
        }
    }

    #[test]
    fn eq_24_examples() {
        let cfg = EvalConfig::default();
        let (s, e) = eq_24_comparison(&jordan2(), &cfg).unwrap();
        assert!(close(s.value, 0.25, 1e-14) && close(e.value, 0.25, 1e-14));
        let (s, e) = eq_24_comparison(&ComplexMatrix::identity(2), &cfg).unwrap();
        assert!(close(s.value, 1.0, 1e-12) && close(e.value, 1.0, 1e-12));
        let (s, e) = eq_24_comparison(&example(), &cfg).unwrap();
        assert!(close(s.value, 2.25, 1e-12) && close(e.value, 2.25, 1e-12));
    }

    #[test]
    fn reverse_power_examples() {
        let cfg = EvalConfig::default();
        let v = reverse_power_bound(&jordan2(), &cfg).unwrap();
        assert!(v.holds);
        let values: Vec<f64> = v.links.iter().flat_map(|l| [l.lesser.value, l.greater.value]).collect();
        let expected = [0.0, 0.0, 0.0, 0.0, 0.25, 0.25];
        assert!(values.iter().zip(expected).all(|(a, b)| close(*a, b, 1e-12)), "{values:?}");
        let v = reverse_power_bound(&ComplexMatrix::identity(2), &cfg).unwrap();
        let values: Vec<f64> = v.links.iter().flat_map(|l| [l.lesser.value, l.greater.value]).collect();
        let expected = [0.5, 0.5, 0.5, 1.0, 1.0, 1.5];
        assert!(values.iter().zip(expected).all(|(a, b)| close(*a, b, 1e-12)), "{values:?}");
        let v = reverse_power_bound(&example(), &cfg).unwrap();
        let values: Vec<f64> = v.links.iter().flat_map(|l| [l.lesser.value, l.greater.value]).collect();
        let expected = [1.0, 1.0, 1.0, 1.0, 1.25, 2.25];
        assert!(values.iter().zip(expected).all(|(a, b)| close(*a, b, 1e-9)), "{values:?}");
    }

    #[test]
    fn triangle_examples() {
        let id = ComplexMatrix::identity(2);
        let v = triangle_refinement_6(&id, &id, 1e-8).unwrap();
        assert!(v.holds && v.links.iter().all(|l| close(l.lesser.value, 2.0, 1e-14)));

        let a = jordan2();
        let v = triangle_refinement_6(&a, &a.scale_real(-1.0), 1e-8).unwrap();
        assert!(v.holds);
        assert!(close(v.links[0].lesser.value, 0.0, 1e-15) && v.links[0].slack > 0.5);

        let b = ComplexMatrix::from_real_rows(&[vec![0., 0.], vec![1., 0.]]).unwrap();
        // A^*B = [[0,0],[1,0]] [[0,0],[1,0]] = 0, so the cross terms vanish.
        assert_eq!(&a.adjoint() * &b, ComplexMatrix::zeros(2));
        let v = triangle_refinement_6(&a, &b, 1e-8).unwrap();
        let values =
            [v.links[0].lesser.value, v.links[1].lesser.value, v.links[2].lesser.value, v.links[2].greater.value];
        let expected = [1.0, 1.0, 2f64.sqrt(), 2.0];
        assert!(values.iter().zip(expected).all(|(x, y)| close(*x, y, 1e-14)), "{values:?}");

        assert!(matches!(
            triangle_refinement_6(&a, &ComplexMatrix::identity(3), 1e-8),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lemma_17_examples() {
        let id = HermitianPsd::identity(2);
        assert!(close(lemma_17_bound(&id, &id).unwrap().value, 2.0, 1e-14));
        let s = HermitianPsd::new(&ComplexMatrix::from_real_diagonal(&[1., 0.])).unwrap();
        let t = HermitianPsd::new(&ComplexMatrix::from_real_diagonal(&[0., 1.])).unwrap();
        assert!(close(lemma_17_bound(&s, &t).unwrap().value, 1.0, 1e-14));
        assert!(lemma_17_verdict(&s, &t, 1e-8).unwrap().holds);
        assert!(matches!(lemma_17_bound(&s, &HermitianPsd::identity(3)), Err(Error::DimensionMismatch { .. })));

        let ctx = context(&example()).unwrap();
        let v = ctx.lemma_17_specialization();
        assert!(v.holds);
        assert!(close(v.links[0].lesser.value, 5.0, 1e-12) && close(v.links[0].greater.value, 6.0, 1e-12));
    }

    #[test]
    fn lemma_08_examples() {
        let pair = FunctionPair::power(0.3).unwrap();
        let x = vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let (lhs, rhs) = lemma_08_check(&ComplexMatrix::identity(2), &pair, &x, &x).unwrap();
        assert!(close(lhs, 1.0, 1e-14) && close(rhs, 1.0, 1e-14));
        let (lhs, rhs) = lemma_08_check(&ComplexMatrix::zeros(2), &pair, &x, &x).unwrap();
        assert!(lhs == 0.0 && lhs <= rhs);
        let not_unit = vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        assert!(matches!(
            lemma_08_check(&ComplexMatrix::identity(2), &pair, &not_unit, &x),
            Err(Error::NotUnitVector { .. })
        ));
    }

    #[test]
    fn positive_diff_examples() {
        let s = HermitianPsd::new(&ComplexMatrix::from_real_diagonal(&[1., 0.])).unwrap();
        let t = HermitianPsd::new(&ComplexMatrix::from_real_diagonal(&[0., 1.])).unwrap();
        let (d, sum) = positive_diff_norm_14(&s, &t).unwrap();
        assert!(close(d, 1.0, 1e-14) && close(sum, 1.0, 1e-14));
        let m = HermitianPsd::new(&ComplexMatrix::from_real_diagonal(&[3., 1.])).unwrap();
        let (d, sum) = positive_diff_norm_14(&m, &m).unwrap();
        assert!(close(d, 0.0, 1e-14) && close(sum, 6.0, 1e-14));
    }

    #[test]
    fn lower_final_examples() {
        let cfg = EvalConfig::default();
        let h = ComplexMatrix::from_real_rows(&[vec![2., 1.], vec![1., -1.]]).unwrap();
        let v = lower_refinement_final(&h, &cfg).unwrap();
        assert!(v.holds);
        let omega = numerical_radius(&h, &cfg.radius).unwrap().omega;
        assert!(close(v.links[0].lesser.value, 0.5 * omega * omega, 1e-10));
        assert!(close(v.links[0].greater.value, 0.5 * 2f64.sqrt() * omega * omega, 1e-9));

        let v = lower_refinement_final(&jordan2(), &cfg).unwrap();
        assert!(v.holds);
        for l in &v.links {
            assert!(close(l.lesser.value, 0.25, 1e-12) && close(l.greater.value, 0.25, 1e-12));
        }
    }

    #[test]
    fn catalog_has_stable_names() {
        let names = Catalog::standard().names().join(",");
        for name in [
            "lower.half_norm",
            "lower.quarter_sum_squares",
            "lower.final_refined",
            "upper.norm",
            "upper.kittaneh02",
            "upper.kittaneh07",
            "upper.min_v_29",
            "upper.corollary_29",
            "upper.sq04",
            "upper.eq25",
            "upper.satary24",
            "upper.theorem8.pow0",
            "upper.theorem8.pow0.25",
            "upper.theorem8.pow0.5",
            "upper.theorem8.pow0.75",
            "upper.theorem8.pow1",
        ] {
            assert!(names.split(',').any(|n| n == name), "{name} missing");
        }
    }

    #[test]
    fn example_report_holds() {
        let report = evaluate(&example(), &EvalConfig::default()).unwrap();
        assert!(report.all_hold(), "{:#?}", report.chains.iter().filter(|c| !c.holds).collect::<Vec<_>>());
        assert!(close(report.value("upper.kittaneh07").unwrap(), 1.5, 1e-12));
        assert!(close(report.value("upper.min_v_29").unwrap(), 1.280776, 1e-4));
    }
}
