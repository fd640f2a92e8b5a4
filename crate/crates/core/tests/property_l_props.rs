mod common;

use common::{cfg, generic_set, pair, property_l_pair, rng, triangular_set};
use matalg::numerics::{eigenvalues, random, Matrix};
use matalg::property_l::{
    adjoin_identity, check_property_kL, find_numbering, find_set_numbering, kl_coefficients,
    kl_residual, lift_coefficients, KLForm,
};
use matalg::{MatrixSet, Numbering, Verdict};
use proptest::prelude::*;
use rand::Rng;

fn verdict(r: f64) -> Verdict {
    Verdict::from_ratio(r / cfg().zero_rel_tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn failing_witness_lifts(seed in any::<u64>()) {
        let set = property_l_pair(&mut rng(seed));
        let num = find_set_numbering(&set, &cfg()).unwrap().unwrap();
        let rep = check_property_kL(&set, &num, 2, 4, &cfg()).unwrap();
        prop_assume!(rep.verdict == Verdict::False);
        let w = rep.witness.unwrap();
        let xs = lift_coefficients(&w.coefficients);
        let (r, _, _) = kl_residual(&set, &num, &xs, w.form).unwrap();
        prop_assert_eq!(verdict(r), Verdict::False, "lifted residual {:.2e}", r);
        let next = check_property_kL(&set, &num, 3, 4, &cfg()).unwrap();
        prop_assert_eq!(next.verdict, Verdict::False);
    }

    #[test]
    fn identity_adjunction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let set = if r.gen_bool(0.5) {
            let n = r.gen_range(2..=4);
            let count = r.gen_range(1..=3);
            triangular_set(&mut r, n, count)
        } else {
            property_l_pair(&mut r)
        };
        let num = find_set_numbering(&set, &cfg()).unwrap();
        prop_assume!(num.is_some());
        let num = num.unwrap();
        let k = r.gen_range(1..=3);
        let before = check_property_kL(&set, &num, k, 3, &cfg()).unwrap();
        prop_assume!(before.verdict != Verdict::Indeterminate);
        let (set2, num2) = adjoin_identity(&set, &num).unwrap();
        let after = check_property_kL(&set2, &num2, k, 3, &cfg()).unwrap();
        prop_assert_eq!(after.verdict, before.verdict);
    }

    #[test]
    fn zero_coefficient_drops_member(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let count = r.gen_range(2..=3);
        let set = triangular_set(&mut r, n, count);
        let num = find_set_numbering(&set, &cfg()).unwrap().unwrap();
        let k = r.gen_range(1..=3);
        let drop = r.gen_range(0..count);
        let mut xs = kl_coefficients(seed, 0, count, k);
        xs[drop] = Matrix::zeros(k, k);

        let members: Vec<_> = set.members().iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, m)| m.clone()).collect();
        let smaller = MatrixSet::new(n, members).unwrap();
        let roots = num.roots.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, v)| v.clone()).collect();
        let smaller_num = Numbering { roots };
        let short: Vec<Matrix> = xs.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, x)| x.clone()).collect();

        for form in [KLForm::Determinant, KLForm::Traces] {
            let (ra, la, rha) = kl_residual(&set, &num, &xs, form).unwrap();
            let (rb, lb, rhb) = kl_residual(&smaller, &smaller_num, &short, form).unwrap();
            prop_assert_eq!(verdict(ra), verdict(rb));
            for (u, v) in la.iter().zip(&lb).chain(rha.iter().zip(&rhb)) {
                prop_assert!((u - v).norm() <= 1e-9 * (1.0 + u.norm()), "{} vs {}", u, v);
            }
        }
    }

    #[test]
    fn k1_pair_agrees_with_numbering(seed in any::<u64>()) {
        let mut r = rng(seed);
        let set = match r.gen_range(0..3) {
            0 => triangular_set(&mut r, 3, 2),
            1 => property_l_pair(&mut r),
            _ => {
                let n = r.gen_range(2..=3);
                generic_set(&mut r, n, 2)
            }
        };
        let m = set.matrices();
        match find_numbering(&m[0], &m[1], &cfg()).unwrap() {
            Some(num) => {
                let rep = check_property_kL(&set, &num, 1, 4, &cfg()).unwrap();
                prop_assert_eq!(rep.verdict, Verdict::True);
            }
            None => {
                // no pairing exists, so the positional one from the eigensolver must fail
                let roots = vec![eigenvalues(&m[0], &cfg()).unwrap(), eigenvalues(&m[1], &cfg()).unwrap()];
                let rep = check_property_kL(&set, &Numbering { roots }, 1, 4, &cfg()).unwrap();
                prop_assert_eq!(rep.verdict, Verdict::False);
            }
        }
    }
}

#[test]
fn wielandt_scalar_combinations_keep_property_l() {
    let mut r = rng(5);
    for _ in 0..8 {
        let c = random::gaussian_vec(&mut r, 2);
        let set = pair(matalg::fixtures::wielandt_x() * c[0], matalg::fixtures::wielandt_y() * c[1]);
        let num = find_set_numbering(&set, &cfg()).unwrap().unwrap();
        assert_eq!(check_property_kL(&set, &num, 1, 4, &cfg()).unwrap().verdict, Verdict::True);
    }
}
