use super::{inner, svd, Matrix, Scalar, ToleranceConfig, ZERO};
use crate::error::{MatalgError, Result};

/// Orthonormal basis of a span together with the singular values that
/// decided its rank.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    pub basis: Vec<Matrix>,
    pub singular_values: Vec<f64>,
    pub cutoff: f64,
}

impl SpanBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Distance (as a ratio ≥ 1) between the cutoff and the nearest singular
    /// value; small values mean the rank decision was close.
    pub fn rank_margin(&self) -> f64 {
        if self.cutoff == 0.0 {
            return f64::INFINITY;
        }
        self.singular_values
            .iter()
            .map(|&s| {
                if s == 0.0 {
                    f64::INFINITY
                } else {
                    (s / self.cutoff).max(self.cutoff / s)
                }
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Orthonormal basis (Frobenius inner product) of the span of `vs`.
///
/// Singular values below `rank_rel_tol · σ_max · max(dimensions)` are treated
/// as zero. The result is deterministic for a fixed input order.
pub fn span_basis(vs: &[Matrix], cfg: &ToleranceConfig) -> Result<Vec<Matrix>> {
    Ok(span_basis_with_margin(vs, cfg)?.basis)
}

pub fn span_basis_with_margin(vs: &[Matrix], cfg: &ToleranceConfig) -> Result<SpanBasis> {
    let Some(first) = vs.first() else {
        return Ok(SpanBasis {
            basis: Vec::new(),
            singular_values: Vec::new(),
            cutoff: 0.0,
        });
    };
    let shape = first.shape();
    if let Some(bad) = vs.iter().find(|v| v.shape() != shape) {
        return Err(MatalgError::ShapeMismatch {
            expected: shape,
            got: bad.shape(),
        });
    }
    let len = shape.0 * shape.1;
    let stacked = Matrix::from_fn(len, vs.len(), |i, j| vs[j].as_slice()[i]);
    let dec = svd(&stacked);
    let u = dec.u;
    let sv = dec.s;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let cutoff = cfg.rank_rel_tol * smax * len.max(vs.len()) as f64;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));
    let basis = order
        .iter()
        .filter(|&&k| smax > 0.0 && sv[k] > cutoff)
        .map(|&k| Matrix::from_column_slice(shape.0, shape.1, u.column(k).as_slice()))
        .collect();
    Ok(SpanBasis {
        basis,
        singular_values: order.iter().map(|&k| sv[k]).collect(),
        cutoff,
    })
}

/// Coefficients `⟨q_i, b⟩` of `b` on an orthonormal basis.
pub fn coordinates(b: &Matrix, basis: &[Matrix]) -> Vec<Scalar> {
    basis.iter().map(|q| inner(q, b)).collect()
}

/// `‖b - P b‖_F / ‖b‖_F` for the orthogonal projector `P` onto the span of an
/// orthonormal basis; zero for `b = 0`.
pub fn projection_residual(b: &Matrix, basis: &[Matrix]) -> f64 {
    let nb = b.norm();
    if nb == 0.0 {
        return 0.0;
    }
    let mut r = b.clone();
    // two passes of classical Gram-Schmidt keep the residual accurate
    for _ in 0..2 {
        for q in basis {
            let k = inner(q, &r);
            r -= q * k;
        }
    }
    r.norm() / nb
}

/// Null space of `a` as orthonormal columns, using an absolute singular-value
/// threshold. Also returns the singular values (padded with zeros when `a`
/// has fewer rows than columns).
pub fn null_space(a: &Matrix, threshold: f64) -> (Matrix, Vec<f64>) {
    let cols = a.ncols();
    if cols == 0 {
        return (Matrix::zeros(0, 0), Vec::new());
    }
    let padded;
    let a = if a.nrows() < cols {
        let mut p = Matrix::zeros(cols, cols);
        p.view_mut((0, 0), a.shape()).copy_from(a);
        padded = p;
        &padded
    } else {
        a
    };
    let dec = svd(a);
    let v = dec.v;
    let sv = dec.s;
    let mut keep: Vec<usize> = (0..sv.len()).filter(|&k| sv[k] <= threshold).collect();
    keep.sort_by(|&x, &y| sv[x].total_cmp(&sv[y]));
    let mut out = Matrix::from_element(cols, keep.len(), ZERO);
    for (c, &k) in keep.iter().enumerate() {
        for i in 0..cols {
            out[(i, c)] = v[(i, k)];
        }
    }
    (out, sv)
}

/// Orthonormal basis of the orthogonal complement of the column span of `q`
/// (which must have orthonormal columns).
pub fn orthonormal_complement(q: &Matrix) -> Matrix {
    let (n, f) = q.shape();
    if f == 0 {
        return Matrix::identity(n, n);
    }
    let mut aug = Matrix::zeros(n, f + n);
    aug.view_mut((0, 0), (n, f)).copy_from(q);
    aug.view_mut((0, f), (n, n)).fill_with_identity();
    let mut cols: Vec<nalgebra::DVector<Scalar>> = Vec::new();
    for j in 0..(f + n) {
        let mut v = aug.column(j).into_owned();
        for _ in 0..2 {
            for u in q.column_iter().map(|c| c.into_owned()).chain(cols.iter().cloned()) {
                let k = u.dotc(&v);
                v -= &u * k;
            }
        }
        if j >= f && v.norm() > 1e-8 {
            let nv = v.norm();
            cols.push(v.unscale(nv));
            if cols.len() == n - f {
                break;
            }
        }
    }
    let mut out = Matrix::zeros(n, n - f);
    for (j, v) in cols.iter().enumerate() {
        out.set_column(j, v);
    }
    out
}
