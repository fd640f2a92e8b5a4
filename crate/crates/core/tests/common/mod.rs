#![allow(dead_code)]

use matalg::numerics::{direct_sum, identity, random, Matrix, Scalar, ToleranceConfig};
use matalg::{fixtures, MatrixSet};
use rand::Rng;

pub type Rng8 = random::SeededRng;

pub fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

pub fn rng(seed: u64) -> Rng8 {
    random::seeded_rng(seed, 0)
}

pub fn conj(g: &Matrix, m: &Matrix) -> Matrix {
    g * m * g.clone().try_inverse().unwrap()
}

pub fn pair(x: Matrix, y: Matrix) -> MatrixSet {
    MatrixSet::new(x.nrows(), vec![("x".into(), x), ("y".into(), y)]).unwrap()
}

/// `count` random upper triangular matrices under one random similarity.
pub fn triangular_set(rng: &mut Rng8, n: usize, count: usize) -> MatrixSet {
    let u = random::random_invertible(rng, n, 20.0);
    let mats = (0..count)
        .map(|_| conj(&u, &random::random_upper_triangular(rng, n)))
        .collect();
    MatrixSet::from_matrices(mats).unwrap()
}

pub fn generic_set(rng: &mut Rng8, n: usize, count: usize) -> MatrixSet {
    MatrixSet::from_matrices((0..count).map(|_| random::gaussian_matrix(rng, n, n)).collect()).unwrap()
}

/// A pair with an eigenvalue numbering that is not triangularizable.
pub fn property_l_pair(rng: &mut Rng8) -> MatrixSet {
    let (x, y) = (fixtures::wielandt_x(), fixtures::wielandt_y());
    let c: Vec<Scalar> = random::gaussian_vec(rng, 6);
    let mut a = &x * c[0] + &y * c[1] + identity(3) * c[4];
    let mut b = &x * c[2] + &y * c[3] + identity(3) * c[5];
    let extra = rng.gen_range(0..=1);
    if extra > 0 {
        a = direct_sum(&a, &matalg::numerics::diag(&random::gaussian_vec(rng, extra)));
        b = direct_sum(&b, &matalg::numerics::diag(&random::gaussian_vec(rng, extra)));
    }
    let g = random::random_invertible(rng, a.nrows(), 20.0);
    pair(conj(&g, &a), conj(&g, &b))
}

/// A set from one of several families, chosen by `rng`.
pub fn mixed_set(rng: &mut Rng8) -> MatrixSet {
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(2..=4);
            let count = rng.gen_range(1..=3);
            triangular_set(rng, n, count)
        }
        1 => {
            let n = rng.gen_range(2..=3);
            generic_set(rng, n, 2)
        }
        _ => property_l_pair(rng),
    }
}
