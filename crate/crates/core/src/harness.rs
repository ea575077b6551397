//! Seeded matrix families, batch verification across the bound catalog, and witness search.
//!
//! Every trial matrix is a pure function of `(run seed, family, dim, index)`, so a run gives
//! bitwise-identical reports whatever the thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundContext, BoundReport, Catalog, EvalConfig};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::radius::RadiusConfig;
use crate::search::ScanConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ginibre,
    Normal,
    Nilpotent,
    WeightedShift,
    Hermitian,
    UnitarySimilarity,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Ginibre,
        Family::Normal,
        Family::Nilpotent,
        Family::WeightedShift,
        Family::Hermitian,
        Family::UnitarySimilarity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ginibre => "ginibre",
            Family::Normal => "normal",
            Family::Nilpotent => "nilpotent",
            Family::WeightedShift => "weighted_shift",
            Family::Hermitian => "hermitian",
            Family::UnitarySimilarity => "unitary_similarity",
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown matrix family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub families: Vec<Family>,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub tol_rel: f64,
    pub v_grid: usize,
    pub theta_grid: usize,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            families: vec![Family::Ginibre],
            dims: (2..=8).collect(),
            trials: 100,
            seed: 0,
            tol_rel: 1e-8,
            v_grid: 65,
            theta_grid: 1024,
        }
    }
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.families.is_empty() {
            return Err(Error::InvalidConfig("at least one family is required".into()));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::InvalidConfig("dims must be a nonempty list of positive integers".into()));
        }
        self.eval_config().validate()
    }

    pub fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            radius: RadiusConfig { theta_grid: self.theta_grid, ..RadiusConfig::default() },
            v_scan: ScanConfig { grid: self.v_grid, ..EvalConfig::default().v_scan },
            tol_rel: self.tol_rel,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-matrix seed derived from the run seed and the trial coordinates.
pub fn derive_seed(run_seed: u64, family: Family, dim: usize, index: usize) -> u64 {
    [family.tag(), dim as u64, index as u64]
        .into_iter()
        .fold(splitmix64(run_seed), |acc, x| splitmix64(acc ^ splitmix64(x)))
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    // Filled row by row so the stream layout is independent of storage order.
    let mut m = DMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of `R` divided out.
fn haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let qr = gaussian_matrix(n, n, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

fn weighted_shift(weights: &[f64]) -> ComplexMatrix {
    let n = weights.len() + 1;
    let mut m = DMatrix::zeros(n, n);
    for (i, &w) in weights.iter().enumerate() {
        m[(i, i + 1)] = C64::new(w, 0.0);
    }
    ComplexMatrix::from_raw(m)
}

/// The 3x3 weighted shift with weights 1 and 2.
pub fn example_matrix() -> ComplexMatrix {
    weighted_shift(&[1.0, 2.0])
}

/// Weighted shift with weights `1, 2, ..., n-1`; the 3x3 case is [`example_matrix`].
pub fn canonical_shift(dim: usize) -> ComplexMatrix {
    let weights: Vec<f64> = (1..dim).map(|w| w as f64).collect();
    weighted_shift(&weights)
}

/// Draws one matrix of `family` at dimension `dim`, deterministically from `seed`.
pub fn generate(family: Family, dim: usize, seed: u64) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::UnsupportedDim { family: family.name().into(), dim });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = C64::new(1.0 / (dim as f64).sqrt(), 0.0);
    let m = match family {
        Family::Ginibre => gaussian_matrix(dim, dim, &mut rng) * scale,
        Family::Hermitian => {
            let g = gaussian_matrix(dim, dim, &mut rng) * scale;
            (&g + g.adjoint()) * C64::new(0.5, 0.0)
        }
        Family::Normal => {
            let eigenvalues: Vec<C64> = (0..dim).map(|_| complex_gaussian(&mut rng)).collect();
            let u = haar_unitary(dim, &mut rng);
            let d = DMatrix::from_fn(dim, dim, |i, j| if i == j { eigenvalues[i] } else { C64::new(0.0, 0.0) });
            &u * d * u.adjoint()
        }
        Family::Nilpotent => {
            if dim < 2 {
                return Err(Error::UnsupportedDim { family: family.name().into(), dim });
            }
            // [[0, X], [0, 0]] with X of size k x (n - k), k = n/2: rows and columns are disjoint,
            // so A^2 = 0.
            let k = dim / 2;
            let x = gaussian_matrix(k, dim - k, &mut rng) * scale;
            let mut m = DMatrix::zeros(dim, dim);
            m.view_mut((0, k), (k, dim - k)).copy_from(&x);
            m
        }
        Family::WeightedShift => {
            let weights: Vec<f64> = (1..dim).map(|_| rng.random_range(0.25..2.0)).collect();
            weighted_shift(&weights).into_matrix()
        }
        Family::UnitarySimilarity => {
            let u = haar_unitary(dim, &mut rng);
            u.adjoint() * canonical_shift(dim).as_matrix() * &u
        }
    };
    ComplexMatrix::new(m)
}

/// Matrix for trial `index`; index 0 of the weighted-shift family is the canonical fixture.
pub fn trial_matrix(family: Family, dim: usize, index: usize, run_seed: u64) -> Result<ComplexMatrix> {
    if family == Family::WeightedShift && index == 0 {
        return Ok(canonical_shift(dim));
    }
    generate(family, dim, derive_seed(run_seed, family, dim, index))
}

pub fn matrix_id(family: Family, dim: usize, index: usize) -> String {
    format!("{family}-n{dim}-i{index}")
}

/// A chain link that failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub matrix_id: String,
    pub chain: String,
    pub lesser: String,
    pub greater: String,
    pub slack: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessRecord {
    pub matrix_id: String,
    pub family: Family,
    pub dim: usize,
    pub index: usize,
    pub omega: Option<f64>,
    pub bound_values: BTreeMap<String, f64>,
    /// Bound minus target for upper bounds, target minus bound for lower bounds.
    pub slack: BTreeMap<String, f64>,
    pub violations: Vec<Violation>,
    pub error: Option<String>,
}

impl TightnessRecord {
    fn from_report(family: Family, dim: usize, index: usize, report: &BoundReport) -> Self {
        let id = matrix_id(family, dim, index);
        let bound_values = report.bounds.iter().map(|b| (b.bound.name.clone(), b.bound.value)).collect();
        let slack = report.bounds.iter().map(|b| (b.bound.name.clone(), b.slack)).collect();
        let violations = report
            .chains
            .iter()
            .flat_map(|c| {
                let id = id.clone();
                c.failing_links().map(move |l| Violation {
                    matrix_id: id.clone(),
                    chain: c.chain_name.clone(),
                    lesser: l.lesser.name.clone(),
                    greater: l.greater.name.clone(),
                    slack: l.slack,
                    tolerance: l.tolerance,
                })
            })
            .collect();
        Self {
            matrix_id: id,
            family,
            dim,
            index,
            omega: Some(report.omega),
            bound_values,
            slack,
            violations,
            error: None,
        }
    }

    fn failed(family: Family, dim: usize, index: usize, error: &Error) -> Self {
        Self {
            matrix_id: matrix_id(family, dim, index),
            family,
            dim,
            index,
            omega: None,
            bound_values: BTreeMap::new(),
            slack: BTreeMap::new(),
            violations: Vec::new(),
            error: Some(error.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub name: String,
    pub count: usize,
    pub mean_slack: f64,
    pub min_slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub matrices: usize,
    pub evaluated: usize,
    pub all_chains_hold: bool,
    pub bounds: Vec<BoundSummary>,
    pub violations: Vec<Violation>,
    /// `(matrix id, error)` for matrices whose evaluation failed.
    pub failures: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: TrialConfig,
    pub bound_names: Vec<String>,
    pub records: Vec<TightnessRecord>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    /// No chain violations and no failed evaluations.
    pub fn passed(&self) -> bool {
        self.summary.all_chains_hold && self.summary.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite report serializes")
    }

    /// One row per matrix: id, family, dim, index, omega, one column per bound, violation count, error.
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = ["matrix_id", "family", "dim", "index", "omega"].map(String::from).to_vec();
        header.extend(self.bound_names.iter().cloned());
        header.extend(["violations".to_string(), "error".to_string()]);
        writer.write_record(&header).map_err(csv_err)?;
        for r in &self.records {
            let mut row = vec![
                r.matrix_id.clone(),
                r.family.to_string(),
                r.dim.to_string(),
                r.index.to_string(),
                r.omega.map(|w| w.to_string()).unwrap_or_default(),
            ];
            row.extend(
                self.bound_names.iter().map(|n| r.bound_values.get(n).map(|v| v.to_string()).unwrap_or_default()),
            );
            row.push(r.violations.len().to_string());
            row.push(r.error.clone().unwrap_or_default());
            writer.write_record(&row).map_err(csv_err)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Evaluates every trial matrix against the standard catalog and all chain verifiers.
///
/// Failures of individual matrices are recorded, not propagated.
pub fn run_suite(cfg: &TrialConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let eval = cfg.eval_config();
    let catalog = Catalog::standard();
    let tasks: Vec<(Family, usize, usize)> = cfg
        .families
        .iter()
        .flat_map(|&f| cfg.dims.iter().flat_map(move |&d| (0..cfg.trials).map(move |i| (f, d, i))))
        .collect();

    let records: Vec<TightnessRecord> = tasks
        .par_iter()
        .map(|&(family, dim, index)| {
            let outcome = trial_matrix(family, dim, index, cfg.seed)
                .and_then(|a| BoundContext::new(&a, &eval))
                .and_then(|ctx| ctx.report(&catalog));
            match outcome {
                Ok(report) => TightnessRecord::from_report(family, dim, index, &report),
                Err(e) => TightnessRecord::failed(family, dim, index, &e),
            }
        })
        .collect();

    let bound_names: Vec<String> = catalog.names().into_iter().map(String::from).collect();
    let summary = summarize(&records, &bound_names);
    Ok(SuiteReport { config: cfg.clone(), bound_names, records, summary })
}

fn summarize(records: &[TightnessRecord], names: &[String]) -> SuiteSummary {
    let bounds = names
        .iter()
        .map(|name| {
            let slacks: Vec<f64> = records.iter().filter_map(|r| r.slack.get(name).copied()).collect();
            let count = slacks.len();
            let mean_slack = if count > 0 { slacks.iter().sum::<f64>() / count as f64 } else { 0.0 };
            let min_slack = slacks.iter().copied().fold(f64::INFINITY, f64::min);
            BoundSummary { name: name.clone(), count, mean_slack, min_slack: if count > 0 { min_slack } else { 0.0 } }
        })
        .collect();
    let violations: Vec<Violation> = records.iter().flat_map(|r| r.violations.iter().cloned()).collect();
    let failures: Vec<(String, String)> =
        records.iter().filter_map(|r| r.error.clone().map(|e| (r.matrix_id.clone(), e))).collect();
    SuiteSummary {
        matrices: records.len(),
        evaluated: records.len() - failures.len(),
        all_chains_hold: violations.is_empty(),
        bounds,
        violations,
        failures,
    }
}

/// A matrix on which one of `kittaneh02` and `sqrt(sq04)` is strictly the better bound on `w(A)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub matrix_id: String,
    pub matrix: ComplexMatrix,
    /// `1/2 (||A|| + ||A^2||^{1/2})`.
    pub kittaneh02: f64,
    /// `(1/2 || |A|^2 + |A^*|^2 ||)^{1/2}`.
    pub sqrt_sq04: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessPair {
    /// `kittaneh02 < sqrt_sq04 - margin`.
    pub k02_better: Witness,
    /// `sqrt_sq04 < kittaneh02 - margin`.
    pub sq04_better: Witness,
    pub draws: usize,
}

pub const WITNESS_MARGIN: f64 = 1e-6;

/// Searches the standard families, cycling dimension 2..=6, for witnesses in both directions.
pub fn find_noncomparability_witnesses(budget: usize, seed: u64) -> Result<WitnessPair> {
    find_witnesses_in(&Family::ALL, &[2, 3, 4, 5, 6], budget, seed)
}

/// Witness search restricted to the given families and dimensions.
pub fn find_witnesses_in(families: &[Family], dims: &[usize], budget: usize, seed: u64) -> Result<WitnessPair> {
    if budget < 100 {
        return Err(Error::InvalidConfig(format!("witness budget must be at least 100, got {budget}")));
    }
    if families.is_empty() || dims.is_empty() {
        return Err(Error::InvalidConfig("witness search needs families and dims".into()));
    }
    let eval = EvalConfig::default();
    let mut k02_better = None;
    let mut sq04_better = None;
    for draw in 0..budget {
        let family = families[draw % families.len()];
        let dim = dims[(draw / families.len()) % dims.len()];
        if family == Family::Nilpotent && dim < 2 {
            continue;
        }
        let a = trial_matrix(family, dim, draw, seed)?;
        let ctx = BoundContext::new(&a, &eval)?;
        let k02 = ctx.kittaneh_02().value;
        let sq04 = ctx.squared_upper_04().value.sqrt();
        let witness =
            || Witness { matrix_id: matrix_id(family, dim, draw), matrix: a.clone(), kittaneh02: k02, sqrt_sq04: sq04 };
        if k02_better.is_none() && k02 < sq04 - WITNESS_MARGIN {
            k02_better = Some(witness());
        }
        if sq04_better.is_none() && sq04 < k02 - WITNESS_MARGIN {
            sq04_better = Some(witness());
        }
        if let (Some(a), Some(b)) = (&k02_better, &sq04_better) {
            return Ok(WitnessPair { k02_better: a.clone(), sq04_better: b.clone(), draws: draw + 1 });
        }
    }
    let missing = match (k02_better.is_some(), sq04_better.is_some()) {
        (false, false) => "neither direction",
        (false, true) => "no matrix with kittaneh02 < sqrt(sq04)",
        _ => "no matrix with sqrt(sq04) < kittaneh02",
    };
    Err(Error::WitnessNotFound { budget, detail: missing.into() })
}
