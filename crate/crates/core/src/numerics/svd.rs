//! One-sided (Hestenes) Jacobi SVD for complex matrices.
//!
//! Pairs of columns are rotated until they are mutually orthogonal; the
//! column norms are then the singular values. Slower than bidiagonal QR but
//! accurate to high relative precision.

use super::{Matrix, Scalar, ZERO};

#[derive(Debug, Clone)]
pub struct Svd {
    /// `m × k` left singular vectors, `k = min(m, n)`. Columns belonging to
    /// zero singular values are zero.
    pub u: Matrix,
    /// Singular values, descending.
    pub s: Vec<f64>,
    /// `n × k` right singular vectors (orthonormal).
    pub v: Matrix,
}

pub fn svd(a: &Matrix) -> Svd {
    let (m, n) = a.shape();
    if m < n {
        let t = svd_tall(&a.adjoint());
        return Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        };
    }
    svd_tall(a)
}

pub fn singular_values(a: &Matrix) -> Vec<f64> {
    svd(a).s
}

fn svd_tall(a: &Matrix) -> Svd {
    let (m, n) = a.shape();
    let mut w = a.clone();
    let mut v = Matrix::identity(n, n);
    let eps = f64::EPSILON;

    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for i in 0..m {
                    let x = w[(i, p)];
                    let y = w[(i, q)];
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let ph = phase.conj();
                rotate(&mut w, p, q, ph, c, s);
                rotate(&mut v, p, q, ph, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut s: Vec<f64> = (0..n).map(|j| w.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| s[y].total_cmp(&s[x]));
    let mut u = Matrix::zeros(m, n);
    let mut vs = Matrix::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        if s[j] > 0.0 {
            for i in 0..m {
                u[(i, k)] = w[(i, j)] / s[j];
            }
        }
        vs.set_column(k, &v.column(j));
    }
    s = order.iter().map(|&j| s[j]).collect();
    Svd { u, s, v: vs }
}

/// `[col_p, col_q] ← [col_p, phase·col_q] · [[c, s], [-s, c]]`.
fn rotate(m: &mut Matrix, p: usize, q: usize, phase: Scalar, c: f64, s: f64) {
    for i in 0..m.nrows() {
        let x = m[(i, p)];
        let y = m[(i, q)] * phase;
        m[(i, p)] = x * c - y * s;
        m[(i, q)] = x * s + y * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::random;

    fn check(a: &Matrix) {
        let d = svd(a);
        let k = d.s.len();
        assert_eq!(k, a.nrows().min(a.ncols()));
        assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
        let sig = Matrix::from_diagonal(&nalgebra::DVector::from_iterator(
            k,
            d.s.iter().map(|&x| Scalar::new(x, 0.0)),
        ));
        let rec = &d.u * sig * d.v.adjoint();
        assert!((rec - a).norm() <= 1e-13 * (1.0 + a.norm()));
        let vv = d.v.adjoint() * &d.v;
        assert!((vv - Matrix::identity(k, k)).norm() < 1e-13);
    }

    #[test]
    fn reconstructs_random_and_rank_deficient() {
        let mut rng = random::seeded_rng(2, 0);
        for (r, c) in [(1, 1), (4, 4), (25, 9), (9, 25), (36, 120)] {
            check(&random::gaussian_matrix(&mut rng, r, c));
            let low = random::gaussian_matrix(&mut rng, r, 2) * random::gaussian_matrix(&mut rng, 2, c);
            check(&low);
        }
        check(&Matrix::zeros(3, 2));
    }

    #[test]
    fn known_singular_values() {
        let a = crate::numerics::real_diag(&[3.0, -5.0, 0.5]);
        let s = singular_values(&a);
        assert!((s[0] - 5.0).abs() < 1e-15 && (s[1] - 3.0).abs() < 1e-15 && (s[2] - 0.5).abs() < 1e-15);
    }
}
