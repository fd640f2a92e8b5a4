use nalgebra::linalg::Schur;

use super::{random, ensure_finite, ensure_square, fro_norm, Matrix, Polynomial, Scalar, ToleranceConfig};
use crate::error::{MatalgError, Result};

/// Eigenvalues straight from the complex Schur form, with multiplicity.
pub fn raw_eigenvalues(a: &Matrix) -> Result<Vec<Scalar>> {
    let n = ensure_square(a)?;
    ensure_finite(a, "eigenvalues input")?;
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![a[(0, 0)]]),
        _ => {}
    }
    if crate::numerics::strictly_lower_norm(a) == 0.0 {
        return Ok(a.diagonal().iter().copied().collect());
    }
    // Exactly nilpotent inputs can stall the shifted QR iteration; a fixed
    // unitary similarity breaks the structure without changing the spectrum.
    let mut attempt = 0u64;
    let t = loop {
        let m = if attempt == 0 {
            a.clone()
        } else {
            let u = random::random_unitary(&mut random::seeded_rng(0x5eed, attempt), n);
            u.adjoint() * a * &u
        };
        if let Some(s) = Schur::try_new(m.clone(), f64::EPSILON, 200 * n) {
            let (q, t) = s.unpack();
            // the iteration occasionally returns an inaccurate factorization
            // without reporting failure, so check it
            let rec = (&q * &t * q.adjoint() - &m).norm();
            let lower = crate::numerics::strictly_lower_norm(&t);
            let tol = 1e-10 * m.norm().max(f64::MIN_POSITIVE);
            if rec <= tol && lower <= tol {
                break t;
            }
        }
        attempt += 1;
        if attempt > 4 {
            return Err(MatalgError::NumericalDegeneracy(
                "Schur iteration did not converge".into(),
            ));
        }
    };
    let vals: Vec<Scalar> = t.diagonal().iter().copied().collect();
    if vals.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(MatalgError::NumericOverflow("eigenvalues"));
    }
    Ok(vals)
}

/// Characteristic polynomial `det(tI - a)`, built from the Schur eigenvalues.
///
/// Coefficients are backward stable even where individual eigenvalues are
/// not (defective clusters), which is why comparisons elsewhere go through
/// coefficients rather than root lists.
pub fn char_poly(a: &Matrix) -> Result<Polynomial> {
    Ok(Polynomial::from_roots(&raw_eigenvalues(a)?))
}

/// Eigenvalues with defective clusters collapsed to their centroid.
///
/// A Jordan block of size `m` perturbed by rounding spreads its eigenvalue
/// over a circle of radius about `(n ε)^(1/m) ‖a‖`, while the cluster mean
/// stays accurate to rounding. Groups whose diameter fits that radius for
/// their size are replaced by their mean. Output is sorted by real part, then
/// imaginary part.
pub fn eigenvalues(a: &Matrix, _cfg: &ToleranceConfig) -> Result<Vec<Scalar>> {
    let raw = raw_eigenvalues(a)?;
    let n = raw.len();
    if n <= 1 {
        return Ok(raw);
    }
    let scale = fro_norm(a).max(f64::MIN_POSITIVE);
    let radius = |m: usize| 4.0 * (n as f64 * f64::EPSILON).powf(1.0 / m as f64) * scale;

    let mut clusters = Vec::new();
    refine(&raw, (0..n).collect(), n, &radius, &mut clusters);

    let mut out = raw.clone();
    for cluster in clusters {
        let mean = cluster.iter().map(|&i| raw[i]).sum::<Scalar>() / cluster.len() as f64;
        for i in cluster {
            out[i] = mean;
        }
    }
    out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(out)
}

fn refine(
    vals: &[Scalar],
    idx: Vec<usize>,
    limit: usize,
    radius: &dyn Fn(usize) -> f64,
    out: &mut Vec<Vec<usize>>,
) {
    if idx.len() <= 1 || limit <= 1 {
        out.extend(idx.into_iter().map(|i| vec![i]));
        return;
    }
    for comp in single_linkage(vals, &idx, radius(limit)) {
        let size = comp.len();
        if size == 1 || (size <= limit && diameter(vals, &comp) <= radius(size)) {
            out.push(comp);
        } else {
            let next = size.min(limit) - 1;
            refine(vals, comp, next, radius, out);
        }
    }
}

fn single_linkage(vals: &[Scalar], idx: &[usize], threshold: f64) -> Vec<Vec<usize>> {
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; idx.len()];
    for start in 0..idx.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let p = comp[head];
            head += 1;
            for q in 0..idx.len() {
                if !seen[q] && (vals[idx[p]] - vals[idx[q]]).norm() <= threshold {
                    seen[q] = true;
                    comp.push(q);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp.into_iter().map(|p| idx[p]).collect());
    }
    comps
}

fn diameter(vals: &[Scalar], comp: &[usize]) -> f64 {
    let mut d: f64 = 0.0;
    for (k, &i) in comp.iter().enumerate() {
        for &j in &comp[k + 1..] {
            d = d.max((vals[i] - vals[j]).norm());
        }
    }
    d
}

/// Greedy multiset matching: each element of `a` takes the nearest unused
/// element of `b`. Returns the largest matched distance, or infinity when the
/// lengths differ.
pub fn multiset_distance(a: &[Scalar], b: &[Scalar]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("lengths match");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{c, from_real_rows, identity, random, real_diag, trace};

    #[test]
    fn zero_and_triangular_inputs() {
        for n in [3, 6] {
            assert_eq!(raw_eigenvalues(&Matrix::zeros(n, n)).unwrap(), vec![Scalar::new(0.0, 0.0); n]);
        }
        let t = from_real_rows(3, 3, &[1., 2., 3., 0., 4., 5., 0., 0., 6.]);
        assert_eq!(raw_eigenvalues(&t).unwrap(), vec![c(1.0, 0.0), c(4.0, 0.0), c(6.0, 0.0)]);
    }

    #[test]
    fn diagonal_with_complex_entry() {
        let s3 = 3f64.sqrt();
        let x = crate::numerics::diag(&[c(0.0, 0.0), c(2.0, 0.0), c(1.0, s3)]);
        let ev = eigenvalues(&x, &ToleranceConfig::default()).unwrap();
        let expected = [c(0.0, 0.0), c(2.0, 0.0), c(1.0, s3)];
        assert!(multiset_distance(&ev, &expected) < 1e-14);
    }

    #[test]
    fn identity_spectrum() {
        let ev = eigenvalues(&identity(4), &ToleranceConfig::default()).unwrap();
        assert!(ev.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn wielandt_pencil_is_nilpotent() {
        let x = from_real_rows(3, 3, &[0., 0., 0., 1., 0., 0., 0., 1., 0.]);
        let y = from_real_rows(3, 3, &[0., 1., 0., 0., 0., -1., 0., 0., 0.]);
        let mut rng = random::seeded_rng(11, 0);
        for _ in 0..20 {
            let l = random::complex_gaussian(&mut rng);
            let m = random::complex_gaussian(&mut rng);
            let p = x.map(|z| z * l) + y.map(|z| z * m);
            let ev = eigenvalues(&p, &ToleranceConfig::default()).unwrap();
            let scale = 1.0 + p.norm();
            assert!(ev.iter().all(|z| z.norm() < 1e-8 * scale), "{ev:?}");
        }
    }

    #[test]
    fn distinct_close_eigenvalues_are_not_merged() {
        let d = real_diag(&[1.0, 1.0 + 1e-6, 5.0]);
        let ev = eigenvalues(&d, &ToleranceConfig::default()).unwrap();
        assert!((ev[1] - ev[0]).norm() > 5e-7);
    }

    #[test]
    fn trace_and_determinant_consistency() {
        let mut rng = random::seeded_rng(3, 0);
        for n in 1..7 {
            let a = random::gaussian_matrix(&mut rng, n, n);
            let ev = eigenvalues(&a, &ToleranceConfig::default()).unwrap();
            let sum: Scalar = ev.iter().sum();
            let prod: Scalar = ev.iter().product();
            assert!((sum - trace(&a)).norm() < 1e-10 * (1.0 + a.norm()));
            let det = a.clone().determinant();
            assert!((prod - det).norm() < 1e-9 * (1.0 + a.norm()).powi(n as i32));
        }
    }

    #[test]
    fn non_square_rejected() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(
            eigenvalues(&a, &ToleranceConfig::default()),
            Err(MatalgError::NonSquare { .. })
        ));
    }
}
