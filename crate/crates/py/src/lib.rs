//! Python module `numrad_py`: matrices, the numerical radius, the bound report, suites and witnesses.
//!
//! Structured results (reports, suites, witnesses) are returned as plain dicts decoded from the
//! same JSON the command-line tool writes.

use numrad::bounds::{BoundContext, Catalog, EvalConfig};
use numrad::harness::{self, Family, TrialConfig};
use numrad::io::{matrix_to_json, parse_matrix};
use numrad::linalg::ComplexMatrix;
use numrad::radius::{self, OracleConfig, RadiusConfig};
use numrad::search::ScanConfig;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: numrad::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn from_json<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn eval_config(tol: f64, v_grid: usize, theta_grid: usize) -> PyResult<EvalConfig> {
    let cfg = EvalConfig {
        radius: RadiusConfig { theta_grid, ..RadiusConfig::default() },
        v_scan: ScanConfig { grid: v_grid, ..EvalConfig::default().v_scan },
        tol_rel: tol,
    };
    cfg.validate().map_err(err)?;
    Ok(cfg)
}

/// Square complex matrix built from nested lists of real and (optional) imaginary parts.
#[pyclass(name = "Matrix", frozen)]
pub struct PyMatrix {
    inner: ComplexMatrix,
}

#[pymethods]
impl PyMatrix {
    #[new]
    #[pyo3(signature = (re, im = None))]
    fn new(re: Vec<Vec<f64>>, im: Option<Vec<Vec<f64>>>) -> PyResult<Self> {
        let inner = ComplexMatrix::from_parts(&re, im.as_deref()).map_err(err)?;
        Ok(Self { inner })
    }

    /// Parses the `{"n", "re", "im"}` JSON format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_matrix(text).map_err(err)? })
    }

    /// The built-in 3x3 weighted shift with weights 1 and 2.
    #[staticmethod]
    fn example() -> Self {
        Self { inner: harness::example_matrix() }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// `(re, im)` as nested lists.
    fn to_lists(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let rows = self.inner.to_rows();
        let re = rows.iter().map(|r| r.iter().map(|z| z.re).collect()).collect();
        let im = rows.iter().map(|r| r.iter().map(|z| z.im).collect()).collect();
        (re, im)
    }

    fn to_json(&self) -> String {
        matrix_to_json(&self.inner)
    }

    fn adjoint(&self) -> Self {
        Self { inner: self.inner.adjoint() }
    }

    fn op_norm(&self) -> PyResult<f64> {
        self.inner.op_norm().map_err(err)
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        Ok(Self { inner: self.inner.checked_mul(&other.inner).map_err(err)? })
    }

    fn __eq__(&self, other: &PyMatrix) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Matrix({})", self.to_json())
    }
}

/// `(omega, theta)`: the numerical radius and the angle attaining it.
#[pyfunction]
#[pyo3(signature = (m, theta_grid = 1024))]
fn numerical_radius(m: &PyMatrix, theta_grid: usize) -> PyResult<(f64, f64)> {
    let cfg = RadiusConfig { theta_grid, ..RadiusConfig::default() };
    let r = radius::numerical_radius(&m.inner, &cfg).map_err(err)?;
    Ok((r.omega, r.argmax_theta))
}

/// Numerical radius estimated by sampling unit vectors and polishing the best ones.
#[pyfunction]
#[pyo3(signature = (m, samples = 4096, seed = 0x5eed))]
fn radius_oracle(m: &PyMatrix, samples: usize, seed: u64) -> PyResult<f64> {
    let cfg = OracleConfig { samples, seed, ..OracleConfig::default() };
    Ok(radius::radius_oracle(&m.inner, &cfg).map_err(err)?.omega)
}

/// Full bound report for one matrix as a dict.
#[pyfunction]
#[pyo3(signature = (m, tol = 1e-8, v_grid = 65, theta_grid = 1024))]
fn bounds<'py>(
    py: Python<'py>,
    m: &PyMatrix,
    tol: f64,
    v_grid: usize,
    theta_grid: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = eval_config(tol, v_grid, theta_grid)?;
    let report = BoundContext::new(&m.inner, &cfg).and_then(|ctx| ctx.report(&Catalog::standard())).map_err(err)?;
    from_json(py, &serde_json::to_string(&report).expect("report serializes"))
}

/// `(value, argmin_v)` for the minimum over `v` of `1/2 || |A|^{2(1-v)} + |A^*|^{2v} ||`.
#[pyfunction]
#[pyo3(signature = (m, v_grid = 65))]
fn min_over_v(m: &PyMatrix, v_grid: usize) -> PyResult<(f64, f64)> {
    let cfg = eval_config(1e-8, v_grid, RadiusConfig::default().theta_grid)?;
    let (bound, v) = BoundContext::new(&m.inner, &cfg).and_then(|ctx| ctx.min_over_v_29()).map_err(err)?;
    Ok((bound.value, v))
}

/// Names of the registered bounds, in report order.
#[pyfunction]
fn bound_names() -> Vec<String> {
    Catalog::standard().names().into_iter().map(String::from).collect()
}

/// Draws one matrix from a named family.
#[pyfunction]
fn generate(family: &str, dim: usize, seed: u64) -> PyResult<PyMatrix> {
    let family: Family = family.parse().map_err(err)?;
    Ok(PyMatrix { inner: harness::generate(family, dim, seed).map_err(err)? })
}

/// Runs the chain suite; returns the report dict (`summary.all_chains_hold` is the verdict).
#[pyfunction]
#[pyo3(signature = (families = None, dims = None, trials = 100, seed = 0, tol = 1e-8, v_grid = 65, theta_grid = 1024))]
#[allow(clippy::too_many_arguments)]
fn run_suite<'py>(
    py: Python<'py>,
    families: Option<Vec<String>>,
    dims: Option<Vec<usize>>,
    trials: usize,
    seed: u64,
    tol: f64,
    v_grid: usize,
    theta_grid: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let defaults = TrialConfig::default();
    let families = match families {
        Some(names) => names.iter().map(|n| n.parse::<Family>()).collect::<Result<Vec<_>, _>>().map_err(err)?,
        None => defaults.families,
    };
    let cfg =
        TrialConfig { families, dims: dims.unwrap_or(defaults.dims), trials, seed, tol_rel: tol, v_grid, theta_grid };
    let report = py.detach(|| harness::run_suite(&cfg)).map_err(err)?;
    from_json(py, &report.to_json())
}

/// Searches for a matrix on which each of the two norm-based upper bounds beats the other.
#[pyfunction]
#[pyo3(signature = (budget = 1000, seed = 0))]
fn find_witnesses<'py>(py: Python<'py>, budget: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let pair = py.detach(|| harness::find_noncomparability_witnesses(budget, seed)).map_err(err)?;
    from_json(py, &serde_json::to_string(&pair).expect("witnesses serialize"))
}

#[pymodule]
fn numrad_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(numerical_radius, m)?)?;
    m.add_function(wrap_pyfunction!(radius_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(min_over_v, m)?)?;
    m.add_function(wrap_pyfunction!(bound_names, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(find_witnesses, m)?)?;
    Ok(())
}
