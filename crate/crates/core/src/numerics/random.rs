//! Seeded random sampling.
//!
//! The generator is ChaCha8 (`rand_chacha`), seeded with
//! `ChaCha8Rng::seed_from_u64(seed)` and split into independent streams with
//! `set_stream`. Standard complex Gaussians are `(g1 + i g2) / sqrt(2)` with
//! `g1`, `g2` drawn from `rand_distr::StandardNormal`. Both algorithms are
//! value-stable across platforms, so a `(seed, stream)` pair replays exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{c, Matrix, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

/// Matrix with i.i.d. standard complex Gaussian entries, filled row by row.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let entries = gaussian_vec(rng, rows * cols);
    Matrix::from_row_slice(rows, cols, &entries)
}

/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let g = gaussian_matrix(rng, n, n);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Gaussian matrix, resampled until its condition number is below `max_cond`.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, max_cond: f64) -> Matrix {
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    loop {
        let g = gaussian_matrix(rng, n, n);
        let sv = super::singular_values(&g);
        let (hi, lo) = (sv[0], sv[n - 1]);
        if lo > 0.0 && hi / lo < max_cond {
            return g;
        }
    }
}

/// Upper triangular matrix with Gaussian entries on and above the diagonal.
pub fn random_upper_triangular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_replay_and_differ() {
        let a = gaussian_matrix(&mut seeded_rng(7, 1), 3, 3);
        let b = gaussian_matrix(&mut seeded_rng(7, 1), 3, 3);
        let d = gaussian_matrix(&mut seeded_rng(7, 2), 3, 3);
        assert_eq!(a, b);
        assert_ne!(a, d);
    }

    #[test]
    fn unitary_is_unitary() {
        let u = random_unitary(&mut seeded_rng(1, 0), 5);
        let err = (u.adjoint() * &u - Matrix::identity(5, 5)).norm();
        assert!(err < 1e-13, "{err}");
    }
}
