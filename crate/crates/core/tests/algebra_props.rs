mod common;

use common::{cfg, generic_set, mixed_set, rng, triangular_set};
use matalg::numerics::{fro_norm, projection_residual, random, trace, Matrix};
use matalg::{generate_algebra, MatrixSet};
use proptest::prelude::*;
use rand::Rng;

fn combination(r: &mut common::Rng8, basis: &[Matrix], n: usize) -> Matrix {
    basis
        .iter()
        .fold(Matrix::zeros(n, n), |acc, b| acc + b * random::complex_gaussian(r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn defect_bounded_by_codimension(seed in any::<u64>()) {
        let mut r = rng(seed);
        let set = if r.gen_bool(0.5) {
            mixed_set(&mut r)
        } else {
            let n = r.gen_range(1..=5);
            let count = r.gen_range(1..=3);
            generic_set(&mut r, n, count)
        };
        let alg = generate_algebra(&set, &cfg()).unwrap();
        prop_assert!(alg.defect <= alg.dim() - alg.generating_dim());
        prop_assert_eq!(*alg.filtration_dims.last().unwrap(), alg.dim());
        prop_assert!(alg.filtration_dims.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn radical_is_a_trace_null_ideal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let count = r.gen_range(1..=3);
        let set = triangular_set(&mut r, n, count);
        let alg = generate_algebra(&set, &cfg()).unwrap();
        for j in &alg.radical_basis {
            prop_assert!(trace(j).norm() <= cfg().zero_rel_tol * fro_norm(j));
        }
        if !alg.radical_basis.is_empty() {
            for _ in 0..4 {
                let b = combination(&mut r, &alg.basis, n);
                let j = combination(&mut r, &alg.radical_basis, n);
                let scale = fro_norm(&b) * fro_norm(&j);
                for p in [&b * &j, &j * &b] {
                    prop_assert!(projection_residual(&p, &alg.radical_basis) * fro_norm(&p) <= cfg().zero_rel_tol * scale);
                }
            }
        }
    }

    #[test]
    fn conjugation_invariance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let set = mixed_set(&mut r);
        let g = random::random_invertible(&mut r, set.n(), 10.0);
        let a = generate_algebra(&set, &cfg()).unwrap();
        let b = generate_algebra(&set.conjugated(&g).unwrap(), &cfg()).unwrap();
        prop_assert_eq!(&a.filtration_dims, &b.filtration_dims);
        prop_assert_eq!(a.radical_dim(), b.radical_dim());
        prop_assert_eq!(a.defect, b.defect);
    }

    #[test]
    fn triangular_generators_defect_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let gens = r.gen_range(2..=3);
        let mats = (0..gens).map(|_| random::random_upper_triangular(&mut r, n)).collect();
        let set = MatrixSet::from_matrices(mats).unwrap();
        let alg = generate_algebra(&set, &cfg()).unwrap();
        prop_assume!(alg.dim() == n * (n + 1) / 2);
        // d counts the identity as the first spanning element
        let d = gens + 1;
        prop_assert!(alg.defect <= (d - 1) * n, "defect {} with d = {d}, n = {n}", alg.defect);
    }
}
