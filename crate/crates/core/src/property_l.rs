//! Property L numberings, randomized Property kL checks (determinant and
//! trace forms), and the kL triangularizability decision.

#![allow(non_snake_case)]

use crate::algebra::{generate_algebra, MatrixSet};
use crate::error::{MatalgError, Result};
use crate::numerics::{
    self, char_poly, eigenvalues, fro_norm, kron, matrix_unit, power_traces, random,
    raw_eigenvalues, spectral_norm, Matrix, Polynomial, Scalar, ToleranceConfig, Verdict,
};
use crate::triangularization::{Criterion, TriangReport, Witness};

/// Stream used for pencil sample points in numbering searches.
const NUMBERING_STREAM: u64 = 1;
/// Trial `t` of a kL check draws from stream `KL_STREAM_BASE + t`.
pub const KL_STREAM_BASE: u64 = 1 << 20;
pub const DEFAULT_KL_TRIALS: usize = 4;

/// One ordered root list per member of a set, in member order.
#[derive(Debug, Clone, PartialEq)]
pub struct Numbering {
    pub roots: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, Copy)]
pub struct NumberingOptions {
    /// Random pencil points every candidate must satisfy.
    pub samples: usize,
    /// Largest size searched exhaustively; above it a single assignment at
    /// one pencil point is verified.
    pub max_exhaustive_n: usize,
    /// Cap on surviving candidate orderings kept per member.
    pub candidate_cap: usize,
}

impl Default for NumberingOptions {
    fn default() -> Self {
        Self {
            samples: 12,
            max_exhaustive_n: 8,
            candidate_cap: 4096,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KLForm {
    /// Characteristic polynomial identity, compared through power sums of
    /// the two root multisets.
    Determinant,
    /// Power-trace identity for `m = 1..nk`.
    Traces,
}

impl KLForm {
    pub fn as_str(self) -> &'static str {
        match self {
            KLForm::Determinant => "determinant",
            KLForm::Traces => "traces",
        }
    }
}

/// A failing (or worst) kL trial. `lhs`/`rhs` are polynomial coefficients
/// (ascending) for the determinant form and the traces `m = 1..nk` for the
/// trace form.
#[derive(Debug, Clone, PartialEq)]
pub struct KLWitness {
    pub seed: u64,
    pub trial: usize,
    pub k: usize,
    pub form: KLForm,
    pub coefficients: Vec<Matrix>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct KLReport {
    pub k: usize,
    pub verdict: Verdict,
    pub trials: usize,
    pub form: KLForm,
    pub seed: u64,
    pub max_residual: f64,
    /// Worst trial; always present when the verdict is false.
    pub witness: Option<KLWitness>,
}

/// Searches a simultaneous numbering of the eigenvalues of `a` and `b`.
/// `None` means Property L fails.
pub fn find_numbering(a: &Matrix, b: &Matrix, cfg: &ToleranceConfig) -> Result<Option<Numbering>> {
    let n = numerics::ensure_square(a)?;
    let set = MatrixSet::new(n, vec![("a".into(), a.clone()), ("b".into(), b.clone())])?;
    find_set_numbering(&set, cfg)
}

pub fn find_set_numbering(set: &MatrixSet, cfg: &ToleranceConfig) -> Result<Option<Numbering>> {
    find_set_numbering_with(set, &NumberingOptions::default(), cfg)
}

/// Joint numbering for every member of `set`: orderings are chosen member by
/// member, each checked against `Σ c_l a_l` at random pencil points, with
/// backtracking when a later member admits no ordering.
pub fn find_set_numbering_with(
    set: &MatrixSet,
    opts: &NumberingOptions,
    cfg: &ToleranceConfig,
) -> Result<Option<Numbering>> {
    let mats = set.matrices();
    let n = set.n();
    if mats.is_empty() {
        return Ok(Some(Numbering { roots: vec![] }));
    }
    let eig: Vec<Vec<Scalar>> = mats
        .iter()
        .map(|m| eigenvalues(m, cfg))
        .collect::<Result<_>>()?;
    let mut rng = random::seeded_rng(cfg.seed, NUMBERING_STREAM);
    let points: Vec<Vec<Scalar>> = (0..opts.samples.max(1))
        .map(|_| random::gaussian_vec(&mut rng, mats.len()))
        .collect();
    let mut pencils = Vec::with_capacity(mats.len());
    for m in 0..mats.len() {
        let mut per_point = Vec::with_capacity(points.len());
        for p in &points {
            let mut sum = Matrix::zeros(n, n);
            for l in 0..=m {
                sum += &mats[l] * p[l];
            }
            per_point.push(Pencil::new(sum, cfg)?);
        }
        pencils.push(per_point);
    }
    let search = Search {
        n,
        eig: &eig,
        points: &points,
        pencils: &pencils,
        opts,
        cfg,
    };
    let first = eig[0].clone();
    if !search.accepts(0, &vec![vec![Scalar::new(0.0, 0.0); points.len()]; n], &first) {
        return Ok(None);
    }
    let mut chosen = vec![first];
    if search.extend(&mut chosen) {
        Ok(Some(Numbering { roots: chosen }))
    } else {
        Ok(None)
    }
}

struct Pencil {
    poly: Polynomial,
    eig: Vec<Scalar>,
    rho: f64,
    tol: f64,
}

impl Pencil {
    fn new(m: Matrix, cfg: &ToleranceConfig) -> Result<Self> {
        let n = m.nrows();
        let raw = raw_eigenvalues(&m)?;
        let eig = eigenvalues(&m, cfg)?;
        let norm = fro_norm(&m);
        let rho = spectral_norm(&m).max(f64::MIN_POSITIVE);
        // loose enough for defective clusters; pruning only, never decisive
        let tol = 4.0 * (n as f64 * f64::EPSILON).powf(1.0 / n as f64) * (1.0 + norm) + 1e-12;
        Ok(Self {
            poly: Polynomial::from_roots(&raw),
            eig,
            rho,
            tol,
        })
    }

    fn near(&self, z: Scalar) -> bool {
        self.eig.iter().any(|e| (e - z).norm() <= self.tol)
    }
}

struct Search<'a> {
    n: usize,
    eig: &'a [Vec<Scalar>],
    points: &'a [Vec<Scalar>],
    pencils: &'a [Vec<Pencil>],
    opts: &'a NumberingOptions,
    cfg: &'a ToleranceConfig,
}

impl Search<'_> {
    /// Partial pencil roots `Σ_{l<m} c_l r_i^l` per position and point.
    fn partial(&self, chosen: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        (0..self.n)
            .map(|i| {
                self.points
                    .iter()
                    .map(|p| chosen.iter().enumerate().map(|(l, r)| p[l] * r[i]).sum())
                    .collect()
            })
            .collect()
    }

    /// Whether ordering `roots` of member `m` reproduces the characteristic
    /// polynomials of the pencils at every sample point.
    fn accepts(&self, m: usize, partial: &[Vec<Scalar>], roots: &[Scalar]) -> bool {
        self.points.iter().enumerate().all(|(p, c)| {
            let pencil = &self.pencils[m][p];
            let cand: Vec<Scalar> = (0..self.n).map(|i| partial[i][p] + c[m] * roots[i]).collect();
            let rho = cand.iter().map(|z| z.norm()).fold(pencil.rho, f64::max);
            let d = Polynomial::from_roots(&cand)
                .scale_roots(rho)
                .normalized_distance(&pencil.poly.scale_roots(rho));
            Verdict::from_ratio(d / self.cfg.zero_rel_tol) == Verdict::True
        })
    }

    fn extend(&self, chosen: &mut Vec<Vec<Scalar>>) -> bool {
        let m = chosen.len();
        if m == self.eig.len() {
            return true;
        }
        let partial = self.partial(chosen);
        for cand in self.candidates(m, &partial) {
            chosen.push(cand);
            if self.extend(chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn candidates(&self, m: usize, partial: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let vals = &self.eig[m];
        let n = self.n;
        if n > self.opts.max_exhaustive_n {
            let pencil = &self.pencils[m][0];
            let c = self.points[0][m];
            let cost: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let z = partial[i][0] + c * vals[j];
                            pencil.eig.iter().map(|e| (e - z).norm()).fold(f64::INFINITY, f64::min)
                        })
                        .collect()
                })
                .collect();
            let assign = hungarian(&cost);
            let roots: Vec<Scalar> = assign.iter().map(|&j| vals[j]).collect();
            return if self.accepts(m, partial, &roots) {
                vec![roots]
            } else {
                vec![]
            };
        }

        let allowed: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.points.iter().enumerate().all(|(p, c)| {
                            self.pencils[m][p].near(partial[i][p] + c[m] * vals[j])
                        })
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut used = vec![false; n];
        let mut current = Vec::with_capacity(n);
        self.dfs(m, partial, &allowed, &mut used, &mut current, &mut out);
        out
    }

    fn dfs(
        &self,
        m: usize,
        partial: &[Vec<Scalar>],
        allowed: &[Vec<bool>],
        used: &mut [bool],
        current: &mut Vec<Scalar>,
        out: &mut Vec<Vec<Scalar>>,
    ) {
        if out.len() >= self.opts.candidate_cap {
            return;
        }
        let i = current.len();
        let vals = &self.eig[m];
        if i == self.n {
            if self.accepts(m, partial, current) {
                out.push(current.clone());
            }
            return;
        }
        let mut tried: Vec<Scalar> = Vec::new();
        for j in 0..self.n {
            if used[j] || !allowed[i][j] || tried.contains(&vals[j]) {
                continue;
            }
            tried.push(vals[j]);
            used[j] = true;
            current.push(vals[j]);
            self.dfs(m, partial, allowed, used, current, out);
            current.pop();
            used[j] = false;
        }
    }
}

/// Minimum-cost perfect assignment (rows to columns) of a square cost matrix.
fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let inf = f64::INFINITY;
    // 1-based potentials formulation
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out = vec![0; n];
    for j in 1..=n {
        if p[j] > 0 {
            out[p[j] - 1] = j - 1;
        }
    }
    out
}

/// Checks that each root list has the member's characteristic polynomial.
pub fn validate_numbering(
    set: &MatrixSet,
    numbering: &Numbering,
    cfg: &ToleranceConfig,
) -> Result<()> {
    let mats = set.matrices();
    if numbering.roots.len() != mats.len() {
        return Err(MatalgError::CountMismatch {
            expected: mats.len(),
            got: numbering.roots.len(),
        });
    }
    for ((name, a), roots) in set.members().iter().zip(&numbering.roots) {
        if roots.len() != set.n() {
            return Err(MatalgError::InvalidNumbering(format!(
                "`{name}` needs {} roots, got {}",
                set.n(),
                roots.len()
            )));
        }
        let rho = roots
            .iter()
            .map(|z| z.norm())
            .fold(spectral_norm(a), f64::max)
            .max(f64::MIN_POSITIVE);
        let d = Polynomial::from_roots(roots)
            .scale_roots(rho)
            .normalized_distance(&char_poly(a)?.scale_roots(rho));
        if Verdict::from_ratio(d / cfg.zero_rel_tol) == Verdict::False {
            return Err(MatalgError::InvalidNumbering(format!(
                "roots of `{name}` do not match its spectrum (distance {d:.3e})"
            )));
        }
    }
    Ok(())
}

/// Adjoins the identity with numbering `(1, …, 1)`.
pub fn adjoin_identity(set: &MatrixSet, numbering: &Numbering) -> Result<(MatrixSet, Numbering)> {
    let mut name = "I".to_string();
    while set.get(&name).is_some() {
        name.push('\'');
    }
    let mut members = set.members().to_vec();
    members.push((name, numerics::identity(set.n())));
    let mut roots = numbering.roots.clone();
    roots.push(vec![numerics::ONE; set.n()]);
    Ok((MatrixSet::new(set.n(), members)?, Numbering { roots }))
}

/// The random coefficient tuple `x_1, …, x_j ∈ M_k` of trial `trial`.
pub fn kl_coefficients(seed: u64, trial: usize, j: usize, k: usize) -> Vec<Matrix> {
    let mut rng = random::seeded_rng(seed, KL_STREAM_BASE + trial as u64);
    (0..j).map(|_| random::gaussian_matrix(&mut rng, k, k)).collect()
}

/// Evaluates both sides of the kL identity at the coefficient tuple `xs`.
/// Returns `(residual, lhs, rhs)`.
pub fn kl_residual(
    set: &MatrixSet,
    numbering: &Numbering,
    xs: &[Matrix],
    form: KLForm,
) -> Result<(f64, Vec<Scalar>, Vec<Scalar>)> {
    let mats = set.matrices();
    if xs.len() != mats.len() {
        return Err(MatalgError::CountMismatch {
            expected: mats.len(),
            got: xs.len(),
        });
    }
    let n = set.n();
    let k = xs.first().map_or(1, |x| x.nrows());
    let mut big = Matrix::zeros(n * k, n * k);
    for (x, a) in xs.iter().zip(&mats) {
        big += kron(x, a)?;
    }
    let blocks: Vec<Matrix> = (0..n)
        .map(|i| {
            let mut b = Matrix::zeros(k, k);
            for (x, roots) in xs.iter().zip(&numbering.roots) {
                b += x * roots[i];
            }
            b
        })
        .collect();
    let rho = blocks
        .iter()
        .map(spectral_norm)
        .fold(spectral_norm(&big), f64::max)
        .max(f64::MIN_POSITIVE);

    match form {
        KLForm::Determinant => {
            // the two characteristic polynomials agree iff their root
            // multisets do; power sums of the computed roots are accurate
            // even where individual roots of a defective matrix are not
            let lhs_roots = raw_eigenvalues(&big)?;
            let mut rhs_roots = Vec::with_capacity(n * k);
            for b in &blocks {
                rhs_roots.extend(raw_eigenvalues(b)?);
            }
            let m_max = n * k;
            let ls: Vec<Scalar> = lhs_roots.iter().map(|z| z / rho).collect();
            let rs: Vec<Scalar> = rhs_roots.iter().map(|z| z / rho).collect();
            let (mut pl, mut pr) = (ls.clone(), rs.clone());
            let mut r: f64 = 0.0;
            for _ in 0..m_max {
                let sl: Scalar = pl.iter().sum();
                let sr: Scalar = pr.iter().sum();
                r = r.max((sl - sr).norm() / m_max as f64);
                pl.iter_mut().zip(&ls).for_each(|(p, z)| *p *= z);
                pr.iter_mut().zip(&rs).for_each(|(p, z)| *p *= z);
            }
            let lhs = Polynomial::from_roots(&lhs_roots);
            let rhs = Polynomial::from_roots(&rhs_roots);
            Ok((r, lhs.coeffs().to_vec(), rhs.coeffs().to_vec()))
        }
        KLForm::Traces => {
            let m_max = n * k;
            let lhs_scaled = power_traces(&big.unscale(rho), m_max);
            let mut rhs_scaled = vec![Scalar::new(0.0, 0.0); m_max];
            for b in &blocks {
                for (acc, t) in rhs_scaled.iter_mut().zip(power_traces(&b.unscale(rho), m_max)) {
                    *acc += t;
                }
            }
            let r = lhs_scaled
                .iter()
                .zip(&rhs_scaled)
                .map(|(l, r)| (l - r).norm() / m_max as f64)
                .fold(0.0, f64::max);
            let unscale = |v: Vec<Scalar>| -> Vec<Scalar> {
                v.into_iter()
                    .enumerate()
                    .map(|(i, t)| t * rho.powi(i as i32 + 1))
                    .collect()
            };
            Ok((r, unscale(lhs_scaled), unscale(rhs_scaled)))
        }
    }
}

/// Randomized Property kL check through the characteristic polynomial
/// identity.
pub fn check_property_kL(
    set: &MatrixSet,
    numbering: &Numbering,
    k: usize,
    trials: usize,
    cfg: &ToleranceConfig,
) -> Result<KLReport> {
    run_kl(set, numbering, k, trials, KLForm::Determinant, cfg)
}

/// Randomized Property kL check through the power-trace identity.
pub fn check_kL_traces(
    set: &MatrixSet,
    numbering: &Numbering,
    k: usize,
    trials: usize,
    cfg: &ToleranceConfig,
) -> Result<KLReport> {
    run_kl(set, numbering, k, trials, KLForm::Traces, cfg)
}

fn run_kl(
    set: &MatrixSet,
    numbering: &Numbering,
    k: usize,
    trials: usize,
    form: KLForm,
    cfg: &ToleranceConfig,
) -> Result<KLReport> {
    if k == 0 {
        return Err(MatalgError::InvalidInput("k must be at least 1".into()));
    }
    validate_numbering(set, numbering, cfg)?;
    let j = set.len();
    let mut verdict = Verdict::True;
    let mut worst: Option<KLWitness> = None;
    for trial in 0..trials {
        let xs = kl_coefficients(cfg.seed, trial, j, k);
        let (residual, lhs, rhs) = kl_residual(set, numbering, &xs, form)?;
        verdict = verdict.and(Verdict::from_ratio(residual / cfg.zero_rel_tol));
        if worst.as_ref().map_or(true, |w| residual > w.residual) {
            worst = Some(KLWitness {
                seed: cfg.seed,
                trial,
                k,
                form,
                coefficients: xs,
                lhs,
                rhs,
                residual,
            });
        }
    }
    Ok(KLReport {
        k,
        verdict,
        trials,
        form,
        seed: cfg.seed,
        max_residual: worst.as_ref().map_or(0.0, |w| w.residual),
        witness: worst,
    })
}

/// Recomputes a witness residual from its seed and trial index alone.
pub fn replay_kl_witness(set: &MatrixSet, numbering: &Numbering, w: &KLWitness) -> Result<f64> {
    let xs = kl_coefficients(w.seed, w.trial, set.len(), w.k);
    Ok(kl_residual(set, numbering, &xs, w.form)?.0)
}

/// Embeds a `k`-tuple into `M_{k+1}` as `x ⊕ 0`.
pub fn lift_coefficients(xs: &[Matrix]) -> Vec<Matrix> {
    xs.iter()
        .map(|x| numerics::direct_sum(x, &Matrix::zeros(1, 1)))
        .collect()
}

/// `u = Σ_i e_{i,i+1} ⊗ a_i` (indices mod `k`), so that
/// `tr(u^k) = k · tr(a_1 ⋯ a_k)`.
pub fn cyclic_shift_lift(members: &[Matrix], k: usize) -> Result<Matrix> {
    if members.len() != k || k == 0 {
        return Err(MatalgError::CountMismatch {
            expected: k,
            got: members.len(),
        });
    }
    let n = numerics::ensure_square(&members[0])?;
    let mut u = Matrix::zeros(n * k, n * k);
    for (i, a) in members.iter().enumerate() {
        if a.shape() != (n, n) {
            return Err(MatalgError::ShapeMismatch {
                expected: (n, n),
                got: a.shape(),
            });
        }
        u += kron(&matrix_unit(k, i, (i + 1) % k), a)?;
    }
    Ok(u)
}

/// Decides simultaneous triangularizability by Property kL at
/// `k = sd(span(S ∪ I)) + 3`.
pub fn decide_by_kL(set: &MatrixSet, cfg: &ToleranceConfig) -> Result<TriangReport> {
    decide_by_kL_trials(set, DEFAULT_KL_TRIALS, cfg)
}

pub fn decide_by_kL_trials(
    set: &MatrixSet,
    trials: usize,
    cfg: &ToleranceConfig,
) -> Result<TriangReport> {
    let alg = generate_algebra(set, cfg)?;
    let k = alg.defect + 3;
    let n = set.n();
    let bound = (n * n + 3).saturating_sub(alg.generating_dim());
    let note = format!("k = {k} (bound n² - s + 3 = {bound}), randomized over {trials} trials");
    let Some(numbering) = find_set_numbering(set, cfg)? else {
        return Ok(TriangReport {
            verdict: Verdict::False,
            criterion: Criterion::PropertyKL,
            witness: Some((Witness::NoNumbering, f64::INFINITY)),
            flag_basis: None,
            max_residual: f64::INFINITY,
            note: Some(note),
        });
    };
    let kl = check_property_kL(set, &numbering, k, trials, cfg)?;
    Ok(TriangReport {
        verdict: kl.verdict,
        criterion: Criterion::PropertyKL,
        max_residual: kl.max_residual,
        witness: kl.witness.map(|w| {
            let r = w.residual;
            (Witness::PropertyKL(w), r)
        }),
        flag_basis: None,
        note: Some(note),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::numerics::{c, identity, mat_pow, random, real_diag, trace, ZERO};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn zero_numbering(set: &MatrixSet) -> Numbering {
        Numbering {
            roots: vec![vec![ZERO; set.n()]; set.len()],
        }
    }

    #[test]
    fn wielandt_numbering_is_zero() {
        let w = fixtures::wielandt_3_1().matrices();
        let num = find_numbering(&w[0], &w[1], &cfg()).unwrap().unwrap();
        for roots in &num.roots {
            assert!(roots.iter().all(|z| z.norm() < 1e-8));
        }
    }

    #[test]
    fn diagonal_pair_positional_numbering() {
        let a = real_diag(&[1., 2., 3.]);
        let b = real_diag(&[4., 5., 6.]);
        let num = find_numbering(&a, &b, &cfg()).unwrap().unwrap();
        let pairs: Vec<(f64, f64)> = num.roots[0]
            .iter()
            .zip(&num.roots[1])
            .map(|(s, t)| (s.re, t.re))
            .collect();
        for (s, t) in pairs {
            assert!((t - s - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn generic_pair_has_no_numbering() {
        let mut rng = random::seeded_rng(30, 0);
        let a = random::gaussian_matrix(&mut rng, 3, 3);
        let b = random::gaussian_matrix(&mut rng, 3, 3);
        assert!(find_numbering(&a, &b, &cfg()).unwrap().is_none());
    }

    #[test]
    fn assignment_path_for_large_sizes() {
        let mut rng = random::seeded_rng(31, 0);
        let u = random::random_unitary(&mut rng, 4);
        let a = &u * random::random_upper_triangular(&mut rng, 4) * u.adjoint();
        let b = &u * random::random_upper_triangular(&mut rng, 4) * u.adjoint();
        let set = MatrixSet::from_matrices(vec![a, b]).unwrap();
        let opts = NumberingOptions {
            max_exhaustive_n: 2,
            ..Default::default()
        };
        let num = find_set_numbering_with(&set, &opts, &cfg()).unwrap().unwrap();
        let kl = check_property_kL(&set, &num, 2, 2, &cfg()).unwrap();
        assert_eq!(kl.verdict, Verdict::True);
    }

    #[test]
    fn hungarian_small() {
        let cost = vec![vec![4.0, 1.0, 3.0], vec![2.0, 0.0, 5.0], vec![3.0, 2.0, 2.0]];
        assert_eq!(hungarian(&cost), vec![1, 0, 2]);
    }

    #[test]
    fn diagonal_sets_have_kl() {
        let set = MatrixSet::from_matrices(vec![
            real_diag(&[1., 2., 3.]),
            real_diag(&[0., 5., -1.]),
            real_diag(&[2., 2., 7.]),
        ])
        .unwrap();
        let num = Numbering {
            roots: set
                .matrices()
                .iter()
                .map(|m| m.diagonal().iter().copied().collect())
                .collect(),
        };
        for k in [1, 2, 4] {
            assert_eq!(check_property_kL(&set, &num, k, 3, &cfg()).unwrap().verdict, Verdict::True);
            assert_eq!(check_kL_traces(&set, &num, k, 3, &cfg()).unwrap().verdict, Verdict::True);
        }
    }

    #[test]
    fn wielandt_kl_at_one_but_not_at_defect_plus_three() {
        let set = fixtures::wielandt_3_1();
        let num = zero_numbering(&set);
        let one = check_property_kL(&set, &num, 1, 8, &cfg()).unwrap();
        assert_eq!(one.verdict, Verdict::True);
        let k = generate_algebra(&set, &cfg()).unwrap().defect + 3;
        let r = check_property_kL(&set, &num, k, 4, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::False);
        let w = r.witness.unwrap();
        assert_eq!(replay_kl_witness(&set, &num, &w).unwrap(), w.residual);
    }

    #[test]
    fn single_matrix_traces() {
        let mut rng = random::seeded_rng(32, 0);
        let a = random::gaussian_matrix(&mut rng, 3, 3);
        let set = MatrixSet::from_matrices(vec![a.clone()]).unwrap();
        let num = Numbering {
            roots: vec![raw_eigenvalues(&a).unwrap()],
        };
        for k in 1..4 {
            assert_eq!(check_kL_traces(&set, &num, k, 2, &cfg()).unwrap().verdict, Verdict::True);
        }
    }

    #[test]
    fn invalid_numbering_rejected() {
        let set = MatrixSet::from_matrices(vec![real_diag(&[1., 2.])]).unwrap();
        let bad = Numbering {
            roots: vec![vec![c(1.0, 0.0), c(3.0, 0.0)]],
        };
        assert!(matches!(
            check_property_kL(&set, &bad, 1, 1, &cfg()),
            Err(MatalgError::InvalidNumbering(_))
        ));
        let short = Numbering { roots: vec![] };
        assert!(matches!(
            check_property_kL(&set, &short, 1, 1, &cfg()),
            Err(MatalgError::CountMismatch { .. })
        ));
    }

    #[test]
    fn cyclic_shift_trace() {
        let mut rng = random::seeded_rng(33, 0);
        let mats: Vec<Matrix> = (0..4).map(|_| random::gaussian_matrix(&mut rng, 3, 3)).collect();
        let u = cyclic_shift_lift(&mats, 4).unwrap();
        let lhs = trace(&mat_pow(&u, 4));
        let rhs = trace(&(&mats[0] * &mats[1] * &mats[2] * &mats[3])) * 4.0;
        assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));

        let perm = [mats[2].clone(), mats[0].clone(), mats[3].clone(), mats[1].clone()];
        let u = cyclic_shift_lift(&perm, 4).unwrap();
        let rhs = trace(&(&perm[0] * &perm[1] * &perm[2] * &perm[3])) * 4.0;
        assert!((trace(&mat_pow(&u, 4)) - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));

        let ids = vec![identity(2); 3];
        let u = cyclic_shift_lift(&ids, 3).unwrap();
        assert!((mat_pow(&u, 3) - identity(6)).norm() < 1e-15);
        assert!(matches!(
            cyclic_shift_lift(&ids, 2),
            Err(MatalgError::CountMismatch { .. })
        ));
    }

    #[test]
    fn decide_by_kl_cases() {
        assert_eq!(decide_by_kL(&fixtures::wielandt_3_1(), &cfg()).unwrap().verdict, Verdict::False);
        let mut rng = random::seeded_rng(34, 0);
        let u = random::random_unitary(&mut rng, 3);
        let set = MatrixSet::from_matrices(
            (0..2)
                .map(|_| &u * random::random_upper_triangular(&mut rng, 3) * u.adjoint())
                .collect(),
        )
        .unwrap();
        assert_eq!(decide_by_kL(&set, &cfg()).unwrap().verdict, Verdict::True);
        let comm = MatrixSet::from_matrices(vec![real_diag(&[1., 2., 2.]), real_diag(&[0., 1., 3.])])
            .unwrap();
        assert_eq!(decide_by_kL(&comm, &cfg()).unwrap().verdict, Verdict::True);
    }

    #[test]
    fn witness_lifts_to_next_k() {
        let set = fixtures::wielandt_3_1();
        let num = zero_numbering(&set);
        let k = generate_algebra(&set, &cfg()).unwrap().defect + 3;
        let w = check_property_kL(&set, &num, k, 2, &cfg()).unwrap().witness.unwrap();
        let lifted = lift_coefficients(&w.coefficients);
        let (r, _, _) = kl_residual(&set, &num, &lifted, KLForm::Determinant).unwrap();
        assert_eq!(Verdict::from_ratio(r / cfg().zero_rel_tol), Verdict::False);
    }
}
