//! Dense complex matrices, Hermitian eigendecomposition and the functional calculus
//! of positive semidefinite matrices.
//!
//! Every operation returns a fresh value; nothing here mutates its inputs, so
//! decompositions cached inside [`HermitianPsd`] never go stale.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Iteration cap handed to the eigenvalue and singular value solvers.
const MAX_SOLVER_ITERS: usize = 10_000;

/// Relative Hermitian-check tolerance and its absolute floor.
pub const HERMITIAN_REL_TOL: f64 = 1e-12;
pub const HERMITIAN_ABS_TOL: f64 = 1e-14;

/// Negative eigenvalues of a nominally-PSD matrix down to `-PSD_CLAMP_TOL * |M|` are clamped to 0.
pub const PSD_CLAMP_TOL: f64 = 1e-10;

/// Nonnegative eigenvalues below `PSD_SNAP_FACTOR * n * eps * |M|` are roundoff and snap to 0.
const PSD_SNAP_FACTOR: f64 = 16.0;

/// A dense `n x n` complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    data: DMatrix<C64>,
}

impl ComplexMatrix {
    /// Wraps a nalgebra matrix, checking squareness and finiteness.
    pub fn new(data: DMatrix<C64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::NotSquare { rows: data.nrows(), cols: data.ncols() });
        }
        if data.nrows() == 0 {
            return Err(Error::EmptyMatrix);
        }
        for col in 0..data.ncols() {
            for row in 0..data.nrows() {
                let z = data[(row, col)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row, col });
                }
            }
        }
        Ok(Self { data })
    }

    pub(crate) fn from_raw(data: DMatrix<C64>) -> Self {
        debug_assert!(data.is_square());
        Self { data }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Builds a matrix from row-major real and (optional) imaginary parts.
    pub fn from_parts(re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<Self> {
        let n = re.len();
        for row in re {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
        }
        if let Some(im) = im {
            if im.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: im.len() });
            }
            for row in im {
                if row.len() != n {
                    return Err(Error::NotSquare { rows: n, cols: row.len() });
                }
            }
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| C64::new(re[i][j], im.map_or(0.0, |im| im[i][j]))))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_parts(rows, None)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_raw(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_raw(DMatrix::zeros(n, n))
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_raw(DMatrix::from_fn(n, n, |i, j| if i == j { diag[i] } else { C64::new(0.0, 0.0) }))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let diag: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diagonal(&diag)
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[(row, col)]
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.data
    }

    /// Row-major copy of the entries.
    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.data[(i, j)]).collect()).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_raw(self.data.adjoint())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_raw(&self.data * c)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self * other)
    }

    pub(crate) fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() })
        }
    }

    /// `self^k` by repeated squaring; `self^0` is the identity.
    pub fn powi(&self, k: u32) -> Self {
        let mut result = Self::identity(self.dim());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation `|m_ij - conj(m_ji)|`.
    pub fn hermitian_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.data[(i, j)] - self.data[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn hermitian_tolerance(&self) -> f64 {
        (HERMITIAN_REL_TOL * self.frobenius_norm()).max(HERMITIAN_ABS_TOL)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_residual() <= self.hermitian_tolerance()
    }

    /// Operator (spectral) norm: the largest singular value.
    pub fn op_norm(&self) -> Result<f64> {
        op_norm(self)
    }

    /// `<A x, x>` for a vector `x` of matching length.
    pub fn quadratic_form(&self, x: &[C64]) -> C64 {
        self.bilinear_form(x, x)
    }

    /// `<A x, y> = y^* A x`.
    pub fn bilinear_form(&self, x: &[C64], y: &[C64]) -> C64 {
        let ax = self.apply(x);
        inner(&ax, y)
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let n = self.dim();
        assert_eq!(x.len(), n, "vector length must match the matrix dimension");
        (0..n).map(|i| (0..n).map(|j| self.data[(i, j)] * x[j]).sum()).collect()
    }

    fn symmetrized(&self) -> DMatrix<C64> {
        (&self.data + self.data.adjoint()) * C64::new(0.5, 0.0)
    }
}

/// `<u, v> = sum_i u_i conj(v_i)`, linear in the first argument.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix({}x{}) {:?}", self.dim(), self.dim(), self.to_rows())
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let cells: Vec<String> = (0..self.dim())
                .map(|j| {
                    let z = self.data[(i, j)];
                    if z.im == 0.0 {
                        format!("{:>10.6}", z.re)
                    } else {
                        format!("{:>10.6}{:+.6}i", z.re, z.im)
                    }
                })
                .collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::from_raw(&self.data + &rhs.data)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::from_raw(&self.data - &rhs.data)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::from_raw(&self.data * &rhs.data)
    }
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues nonincreasing.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors, in the order of `eigenvalues`.
    pub eigenvectors: DMatrix<C64>,
}

impl HermitianEig {
    pub fn recompose(&self) -> ComplexMatrix {
        recompose(&self.eigenvalues, &self.eigenvectors)
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    let residual = m.hermitian_residual();
    let tolerance = m.hermitian_tolerance();
    if residual > tolerance {
        return Err(Error::NotHermitian { residual, tolerance });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix.
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    check_hermitian(m)?;
    let eig = SymmetricEigen::try_new(m.symmetrized(), f64::EPSILON, MAX_SOLVER_ITERS)
        .ok_or(Error::NoConvergence("Hermitian eigensolver"))?;
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

/// Eigenvalues only, nonincreasing. Skips the eigenvector accumulation.
pub fn herm_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    Ok(sorted_eigenvalues(m.symmetrized()))
}

/// Largest eigenvalue of a matrix the caller guarantees to be Hermitian.
pub(crate) fn lambda_max_unchecked(m: DMatrix<C64>) -> f64 {
    m.symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn sorted_eigenvalues(m: DMatrix<C64>) -> Vec<f64> {
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Spectral norm of a Hermitian matrix, `max |lambda_i|`.
pub fn hermitian_norm(m: &ComplexMatrix) -> Result<f64> {
    let values = herm_eigenvalues(m)?;
    Ok(values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs())))
}

fn svd(a: &ComplexMatrix, vectors: bool) -> Result<SVD<C64, nalgebra::Dyn, nalgebra::Dyn>> {
    SVD::try_new(a.as_matrix().clone(), vectors, vectors, f64::EPSILON, MAX_SOLVER_ITERS)
        .ok_or(Error::NoConvergence("singular value decomposition"))
}

/// Operator norm: the largest singular value of `a`.
pub fn op_norm(a: &ComplexMatrix) -> Result<f64> {
    let s = svd(a, false)?;
    Ok(s.singular_values.iter().copied().fold(0.0, f64::max))
}

/// Singular values, nonincreasing.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let s = svd(a, false)?;
    let mut values: Vec<f64> = s.singular_values.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

fn recompose(values: &[f64], vectors: &DMatrix<C64>) -> ComplexMatrix {
    let n = values.len();
    let mut scaled = vectors.clone();
    for (j, &lambda) in values.iter().enumerate() {
        for i in 0..n {
            scaled[(i, j)] *= lambda;
        }
    }
    ComplexMatrix::from_raw(scaled * vectors.adjoint())
}

/// A Hermitian positive semidefinite matrix together with its eigendecomposition.
///
/// Stored eigenvalues are nonincreasing and nonnegative. Roundoff-level eigenvalues are
/// flushed to exactly zero so that fractional powers of singular matrices stay faithful.
#[derive(Clone, Debug)]
pub struct HermitianPsd {
    matrix: ComplexMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<C64>,
}

impl HermitianPsd {
    /// Decomposes `m`, which must be Hermitian with no eigenvalue below `-1e-10 * |m|`.
    pub fn new(m: &ComplexMatrix) -> Result<Self> {
        let eig = herm_eig(m)?;
        let values = clean_psd_spectrum(eig.eigenvalues)?;
        Ok(Self::from_spectrum(values, eig.eigenvectors))
    }

    /// Assembles a PSD matrix from a nonnegative spectrum and a unitary basis.
    pub fn from_eigen(eigenvalues: Vec<f64>, eigenvectors: DMatrix<C64>) -> Result<Self> {
        if eigenvectors.nrows() != eigenvalues.len() || eigenvectors.ncols() != eigenvalues.len() {
            return Err(Error::DimensionMismatch { left: eigenvalues.len(), right: eigenvectors.nrows() });
        }
        if let Some(&bad) = eigenvalues.iter().find(|v| !v.is_finite()) {
            return Err(Error::NotPsd { eigenvalue: bad });
        }
        let n = eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eigenvalues[b].total_cmp(&eigenvalues[a]));
        let values: Vec<f64> = order.iter().map(|&k| eigenvalues[k]).collect();
        let vectors = DMatrix::from_fn(n, n, |i, j| eigenvectors[(i, order[j])]);
        let values = clean_psd_spectrum(values)?;
        Ok(Self::from_spectrum(values, vectors))
    }

    fn from_spectrum(eigenvalues: Vec<f64>, eigenvectors: DMatrix<C64>) -> Self {
        let matrix = recompose(&eigenvalues, &eigenvectors);
        Self { matrix, eigenvalues, eigenvectors }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_spectrum(vec![1.0; n], DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    /// Operator norm, which for a PSD matrix is its largest eigenvalue.
    pub fn norm(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// `M^p` for real `p >= 0`, with `0^0 = 1`.
    pub fn power(&self, p: f64) -> Result<Self> {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidExponent(p));
        }
        if p == 1.0 {
            return Ok(self.clone());
        }
        // f64::powf already follows 0^0 = 1.
        let values = self.eigenvalues.iter().map(|&l| l.powf(p)).collect();
        Ok(Self::from_spectrum(values, self.eigenvectors.clone()))
    }

    pub fn sqrt(&self) -> Self {
        let values = self.eigenvalues.iter().map(|l| l.sqrt()).collect();
        Self::from_spectrum(values, self.eigenvectors.clone())
    }

    /// `h(M)` through the eigendecomposition. `h` must be nonnegative on the spectrum.
    pub fn apply<F: Fn(f64) -> f64>(&self, h: F) -> Result<Self> {
        let mut mapped = Vec::with_capacity(self.dim());
        for &lambda in &self.eigenvalues {
            let value = h(lambda);
            if value.is_nan() || value < -1e-12 {
                return Err(Error::NegativeResult { eigenvalue: lambda, value });
            }
            if !value.is_finite() {
                return Err(Error::NotPsd { eigenvalue: value });
            }
            mapped.push(value.max(0.0));
        }
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| mapped[b].total_cmp(&mapped[a]));
        let values = order.iter().map(|&k| mapped[k]).collect();
        let vectors = DMatrix::from_fn(n, n, |i, j| self.eigenvectors[(i, order[j])]);
        Ok(Self::from_spectrum(values, vectors))
    }
}

fn clean_psd_spectrum(mut values: Vec<f64>) -> Result<Vec<f64>> {
    let n = values.len() as f64;
    let scale = values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let clamp = PSD_CLAMP_TOL * scale;
    let snap = PSD_SNAP_FACTOR * n * f64::EPSILON * scale;
    for v in values.iter_mut() {
        if *v < -clamp {
            return Err(Error::NotPsd { eigenvalue: *v });
        }
        if *v <= snap {
            *v = 0.0;
        }
    }
    Ok(values)
}

pub fn psd_power(m: &HermitianPsd, p: f64) -> Result<HermitianPsd> {
    m.power(p)
}

pub fn apply_scalar_fn<F: Fn(f64) -> f64>(m: &HermitianPsd, h: F) -> Result<HermitianPsd> {
    m.apply(h)
}

/// `|A| = (A^*A)^{1/2}` and `|A^*| = (AA^*)^{1/2}` from a single singular value decomposition
/// `A = U S V^*`: `|A| = V S V^*`, `|A^*| = U S U^*`.
pub fn abs_pair(a: &ComplexMatrix) -> Result<(HermitianPsd, HermitianPsd)> {
    let s = svd(a, true)?;
    let u = s.u.ok_or(Error::NoConvergence("singular vectors"))?;
    let v = s.v_t.ok_or(Error::NoConvergence("singular vectors"))?.adjoint();
    let sigma: Vec<f64> = s.singular_values.iter().copied().collect();
    Ok((HermitianPsd::from_eigen(sigma.clone(), v)?, HermitianPsd::from_eigen(sigma, u)?))
}

/// The absolute value `|A| = (A^*A)^{1/2}`.
pub fn abs_op(a: &ComplexMatrix) -> Result<HermitianPsd> {
    abs_pair(a).map(|(abs, _)| abs)
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Nonnegative scalar functions `(f, g)` on `[0, inf)` with `f(t) g(t) = t`.
#[derive(Clone)]
pub struct FunctionPair {
    f: ScalarFn,
    g: ScalarFn,
    label: String,
}

impl fmt::Debug for FunctionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionPair").field("label", &self.label).finish()
    }
}

/// Probe grid `{0, 2^-10, ..., 2^10}` used to validate a pair at construction.
pub fn probe_grid() -> impl Iterator<Item = f64> {
    std::iter::once(0.0).chain((-10..=10).map(|k| 2f64.powi(k)))
}

impl FunctionPair {
    pub fn new<F, G>(label: impl Into<String>, f: F, g: G) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let pair = Self { f: Arc::new(f), g: Arc::new(g), label: label.into() };
        for t in probe_grid() {
            let (ft, gt) = (pair.f(t), pair.g(t));
            let ok =
                ft.is_finite() && gt.is_finite() && ft >= 0.0 && gt >= 0.0 && (ft * gt - t).abs() <= 1e-10 * t.max(1.0);
            if !ok {
                return Err(Error::InvalidFunctionPair { label: pair.label, t });
            }
        }
        Ok(pair)
    }

    /// The power pair `f(t) = t^(1-v)`, `g(t) = t^v` for `v` in `[0, 1]`, labelled `pow<v>`.
    pub fn power(v: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidExponent(v));
        }
        Self::new(format!("pow{v}"), move |t: f64| t.powf(1.0 - v), move |t: f64| t.powf(v))
    }

    /// The shipped registry: power pairs at `v` in `{0, 0.25, 0.5, 0.75, 1}`.
    pub fn power_family() -> Vec<Self> {
        [0.0, 0.25, 0.5, 0.75, 1.0]
            .into_iter()
            .map(|v| Self::power(v).expect("registry exponents lie in [0, 1]"))
            .collect()
    }

    pub fn f(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn g(&self, t: f64) -> f64 {
        (self.g)(t)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn example() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![0., 1., 0.], vec![0., 0., 2.], vec![0., 0., 0.]]).unwrap()
    }

    fn max_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        (a - b).as_matrix().iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    #[test]
    fn adjoint_examples() {
        let a = ComplexMatrix::from_real_rows(&[vec![0., 1.], vec![0., 0.]]).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[vec![0., 0.], vec![1., 0.]]).unwrap();
        assert_eq!(a.adjoint(), expected);
        assert_eq!(a.adjoint().adjoint(), a);

        let b = ComplexMatrix::from_rows(&[vec![c(0., 0.), c(0., 1.)], vec![c(0., 0.), c(0., 0.)]]).unwrap();
        let expected = ComplexMatrix::from_rows(&[vec![c(0., 0.), c(0., 0.)], vec![c(0., -1.), c(0., 0.)]]).unwrap();
        assert_eq!(b.adjoint(), expected);

        let h = ComplexMatrix::from_rows(&[vec![c(1., 0.), c(2., 3.)], vec![c(2., -3.), c(-4., 0.)]]).unwrap();
        assert_eq!(h.adjoint(), h);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            ComplexMatrix::from_real_rows(&[vec![1., 2., 3.], vec![4., 5., 6.]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(ComplexMatrix::from_real_rows(&[vec![f64::NAN]]), Err(Error::NonFinite { row: 0, col: 0 })));
        assert_eq!(ComplexMatrix::from_real_rows(&[]), Err(Error::EmptyMatrix));
    }

    #[test]
    fn eig_of_diagonal_is_sorted() {
        let m = ComplexMatrix::from_real_diagonal(&[0., 1., 4.]);
        let eig = herm_eig(&m).unwrap();
        assert_eq!(eig.eigenvalues, vec![4., 1., 0.]);
        let zero = herm_eig(&ComplexMatrix::zeros(3)).unwrap();
        assert!(zero.eigenvalues.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = example();
        assert!(matches!(herm_eig(&a), Err(Error::NotHermitian { .. })));
        assert!(matches!(HermitianPsd::new(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn psd_rejects_negative_and_clamps_roundoff() {
        let m = ComplexMatrix::from_real_diagonal(&[1., -0.5]);
        assert!(matches!(HermitianPsd::new(&m), Err(Error::NotPsd { .. })));
        let m = ComplexMatrix::from_real_diagonal(&[1., -1e-12]);
        let psd = HermitianPsd::new(&m).unwrap();
        assert_eq!(psd.eigenvalues(), &[1.0, 0.0]);
    }

    #[test]
    fn abs_of_example_matrix() {
        let (abs, abs_star) = abs_pair(&example()).unwrap();
        assert!(max_diff(abs.matrix(), &ComplexMatrix::from_real_diagonal(&[0., 1., 2.])) < 1e-12);
        assert!(max_diff(abs_star.matrix(), &ComplexMatrix::from_real_diagonal(&[1., 2., 0.])) < 1e-12);
        let via_adjoint = abs_op(&example().adjoint()).unwrap();
        assert!(max_diff(via_adjoint.matrix(), abs_star.matrix()) < 1e-12);
    }

    #[test]
    fn abs_of_unitary_is_identity() {
        let s = 0.5f64.sqrt();
        let u = ComplexMatrix::from_rows(&[vec![c(s, 0.), c(0., s)], vec![c(0., s), c(s, 0.)]]).unwrap();
        let abs = abs_op(&u).unwrap();
        assert!(max_diff(abs.matrix(), &ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn psd_power_examples() {
        let m = HermitianPsd::new(&ComplexMatrix::from_real_diagonal(&[0., 1., 4.])).unwrap();
        let half = m.power(0.5).unwrap();
        assert!(max_diff(half.matrix(), &ComplexMatrix::from_real_diagonal(&[0., 1., 2.])) < 1e-14);
        let one = m.power(1.0).unwrap();
        assert!(max_diff(one.matrix(), m.matrix()) < 1e-14);
        let zero = m.power(0.0).unwrap();
        assert!(max_diff(zero.matrix(), &ComplexMatrix::identity(3)) < 1e-14);
        assert_eq!(m.power(-0.1).unwrap_err(), Error::InvalidExponent(-0.1));
        assert!(matches!(m.power(f64::NAN), Err(Error::InvalidExponent(_))));
        assert!(matches!(m.power(f64::INFINITY), Err(Error::InvalidExponent(_))));
    }

    #[test]
    fn apply_scalar_fn_examples() {
        let m = HermitianPsd::new(&ComplexMatrix::from_real_diagonal(&[0., 1., 2.])).unwrap();
        let sq = m.apply(|t| t * t).unwrap();
        assert!(max_diff(sq.matrix(), &ComplexMatrix::from_real_diagonal(&[0., 1., 4.])) < 1e-14);
        assert!(matches!(m.apply(|t| t - 1.5), Err(Error::NegativeResult { .. })));

        let a = example();
        let gram = HermitianPsd::new(&(&a.adjoint() * &a)).unwrap();
        let root = gram.apply(f64::sqrt).unwrap();
        assert!(max_diff(root.matrix(), abs_op(&a).unwrap().matrix()) < 1e-12);

        let v = 0.5;
        let d = HermitianPsd::new(&ComplexMatrix::from_real_diagonal(&[1., 4.])).unwrap();
        let mapped = d.apply(|t| t.powf(2.0 * v)).unwrap();
        assert!(max_diff(mapped.matrix(), d.matrix()) < 1e-14);
    }

    #[test]
    fn op_norm_examples() {
        assert!((op_norm(&example()).unwrap() - 2.0).abs() < 1e-12);
        assert!((op_norm(&ComplexMatrix::identity(4)).unwrap() - 1.0).abs() < 1e-12);
        let (abs, abs_star) = abs_pair(&example()).unwrap();
        let sum = abs.matrix() + abs_star.matrix();
        assert!((0.5 * hermitian_norm(&sum).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn function_pair_validation() {
        assert!(FunctionPair::power(0.3).is_ok());
        assert!(FunctionPair::power(1.5).is_err());
        let bad = FunctionPair::new("bad", |t: f64| t, |_t: f64| 2.0);
        assert!(matches!(bad, Err(Error::InvalidFunctionPair { .. })));
        let negative = FunctionPair::new("neg", |t: f64| -t, |_t: f64| -1.0);
        assert!(matches!(negative, Err(Error::InvalidFunctionPair { .. })));
        let labels: Vec<String> = FunctionPair::power_family().iter().map(|p| p.label().to_string()).collect();
        assert_eq!(labels, ["pow0", "pow0.25", "pow0.5", "pow0.75", "pow1"]);
        // 0^0 = 1 keeps the endpoint pairs valid.
        let p0 = FunctionPair::power(0.0).unwrap();
        assert_eq!(p0.f(0.0), 0.0);
        assert_eq!(p0.g(0.0), 1.0);
    }

    #[test]
    fn powi_matches_repeated_product() {
        let a = example();
        assert_eq!(a.powi(0), ComplexMatrix::identity(3));
        assert_eq!(a.powi(2), &a * &a);
        assert_eq!(a.powi(3), ComplexMatrix::zeros(3));
    }
}
