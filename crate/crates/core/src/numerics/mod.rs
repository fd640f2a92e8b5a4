//! Dense complex linear-algebra kernel shared by every other module.
//!
//! Matrices are `nalgebra::DMatrix<Complex<f64>>`. Kronecker products use the
//! block convention where the left factor indexes coarse blocks:
//! the `(i, j)` block of `kron(x, a)` is `x[(i, j)] * a`.

mod eigen;
mod poly;
pub mod random;
mod span;
mod svd;

pub use eigen::{char_poly, eigenvalues, multiset_distance, raw_eigenvalues};
pub use poly::{binomial, Polynomial};
pub use span::{
    coordinates, null_space, orthonormal_complement, projection_residual, span_basis,
    span_basis_with_margin, SpanBasis,
};
pub use svd::{singular_values, svd, Svd};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{MatalgError, Result};

pub type Scalar = Complex64;
pub type Matrix = DMatrix<Scalar>;

pub const ZERO: Scalar = Complex64::new(0.0, 0.0);
pub const ONE: Scalar = Complex64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> Scalar {
    Complex64::new(re, im)
}

/// Numeric thresholds and the seed for every randomized routine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative singular-value cutoff for numerical rank.
    pub rank_rel_tol: f64,
    /// Relative threshold for "this quantity is zero".
    pub zero_rel_tol: f64,
    pub seed: u64,
    /// Cap on the number of words any enumeration may produce.
    pub word_cap: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_rel_tol: 1e-9,
            zero_rel_tol: 1e-8,
            seed: 0,
            word_cap: 1_000_000,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rank_rel_tol: f64, zero_rel_tol: f64, seed: u64) -> Result<Self> {
        let cfg = Self {
            rank_rel_tol,
            zero_rel_tol,
            seed,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank_rel_tol", self.rank_rel_tol),
            ("zero_rel_tol", self.zero_rel_tol),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(MatalgError::InvalidInput(format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Tri-state answer to a yes/no question decided numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Indeterminate,
}

impl Verdict {
    /// Classifies `quantity / threshold` for a property that holds when the
    /// quantity is small. Ratios within a factor 10 of 1 are indeterminate.
    pub fn from_ratio(ratio: f64) -> Verdict {
        if ratio.is_nan() {
            Verdict::Indeterminate
        } else if ratio <= 0.1 {
            Verdict::True
        } else if ratio >= 10.0 {
            Verdict::False
        } else {
            Verdict::Indeterminate
        }
    }

    /// Classifies a "this must be large" quantity, e.g. a singular value that
    /// should stay above its cutoff.
    pub fn from_ratio_large(ratio: f64) -> Verdict {
        match Self::from_ratio(ratio) {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            Verdict::Indeterminate => Verdict::Indeterminate,
        }
    }

    /// Conjunction: any `False` wins, then any `Indeterminate`.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::Indeterminate, _) | (_, Verdict::Indeterminate) => Verdict::Indeterminate,
            _ => Verdict::True,
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn is_false(self) -> bool {
        self == Verdict::False
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

/// Matrix unit `e_{ij}` in `M_n`, zero-based indices.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = ONE;
    m
}

pub fn diag(values: &[Scalar]) -> Matrix {
    Matrix::from_diagonal(&nalgebra::DVector::from_column_slice(values))
}

pub fn real_diag(values: &[f64]) -> Matrix {
    let v: Vec<Scalar> = values.iter().map(|&r| c(r, 0.0)).collect();
    diag(&v)
}

/// Builds a matrix from real row-major entries.
pub fn from_real_rows(rows: usize, cols: usize, entries: &[f64]) -> Matrix {
    assert_eq!(entries.len(), rows * cols);
    Matrix::from_fn(rows, cols, |i, j| c(entries[i * cols + j], 0.0))
}

pub fn ensure_square(a: &Matrix) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(MatalgError::NonSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(a.nrows())
}

pub fn ensure_finite(a: &Matrix, what: &'static str) -> Result<()> {
    if a.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(MatalgError::NumericOverflow(what))
    }
}

/// Kronecker product; the `(i, j)` coarse block of the result is `x[(i, j)] * a`.
pub fn kron(x: &Matrix, a: &Matrix) -> Result<Matrix> {
    let (xr, xc) = x.shape();
    let (ar, ac) = a.shape();
    let mut out = Matrix::zeros(xr * ar, xc * ac);
    for j in 0..xc {
        for i in 0..xr {
            let s = x[(i, j)];
            if s == ZERO {
                continue;
            }
            for q in 0..ac {
                for p in 0..ar {
                    out[(i * ar + p, j * ac + q)] = s * a[(p, q)];
                }
            }
        }
    }
    ensure_finite(&out, "kron")?;
    Ok(out)
}

pub fn trace(a: &Matrix) -> Scalar {
    a.trace()
}

pub fn fro_norm(a: &Matrix) -> f64 {
    a.norm()
}

pub fn spectral_norm(a: &Matrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    svd::singular_values(a)[0]
}

pub fn smallest_singular_value(a: &Matrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    *svd::singular_values(a).last().expect("non-empty")
}

pub fn commutator(x: &Matrix, y: &Matrix) -> Matrix {
    x * y - y * x
}

pub fn mat_pow(a: &Matrix, m: usize) -> Matrix {
    let mut out = Matrix::identity(a.nrows(), a.ncols());
    for _ in 0..m {
        out = &out * a;
    }
    out
}

/// Traces of `a^1, …, a^m`.
pub fn power_traces(a: &Matrix, m: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(m);
    let mut p = a.clone();
    for k in 1..=m {
        if k > 1 {
            p = &p * a;
        }
        out.push(p.trace());
    }
    out
}

/// Frobenius norm of the strictly lower triangular part.
pub fn strictly_lower_norm(a: &Matrix) -> f64 {
    let mut s = 0.0;
    for j in 0..a.ncols() {
        for i in (j + 1)..a.nrows() {
            s += a[(i, j)].norm_sqr();
        }
    }
    s.sqrt()
}

pub fn determinant(a: &Matrix) -> Result<Scalar> {
    ensure_square(a)?;
    Ok(a.clone().determinant())
}

/// Nilpotency defect of `a`, measured through power traces.
///
/// `a` is nilpotent iff `tr(a^k) = 0` for `k = 1..n` (Newton identities).
/// The returned value is `max_k |tr(a^k)| / s^k` with `s = max(scale, ‖a‖_F)`,
/// which stays at rounding level for nilpotent input even when the
/// eigenvalues themselves are ill-conditioned.
pub fn nilpotency_residual(a: &Matrix, scale: f64) -> f64 {
    let n = a.nrows();
    let s = scale.max(fro_norm(a));
    if s == 0.0 {
        return 0.0;
    }
    let scaled = a.unscale(s);
    power_traces(&scaled, n)
        .into_iter()
        .map(|t| t.norm())
        .fold(0.0, f64::max)
}

/// Block-diagonal direct sum.
pub fn direct_sum(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = Matrix::zeros(ar + br, ac + bc);
    out.view_mut((0, 0), (ar, ac)).copy_from(a);
    out.view_mut((ar, ac), (br, bc)).copy_from(b);
    out
}

/// Hermitian inner product `tr(a^* b)`.
pub fn inner(a: &Matrix, b: &Matrix) -> Scalar {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}
