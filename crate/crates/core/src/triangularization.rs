//! Simultaneous triangularizability: trace criteria and a constructive flag
//! builder.
//!
//! Trace residuals are normalized by the product of the Frobenius norms of
//! the letters involved, so they are invariant under rescaling of members and
//! stay at rounding level when an identity holds.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{self, generate_algebra, MatrixSet, Word};
use crate::error::{MatalgError, Result};
use crate::numerics::{
    self, commutator, eigenvalues, fro_norm, identity, mat_pow, nilpotency_residual, null_space,
    orthonormal_complement, spectral_norm, strictly_lower_norm, trace, Matrix, Scalar,
    ToleranceConfig, Verdict,
};

/// Which test produced a [`TriangReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    McCoyTrace,
    PermutationTrace,
    NilpotentCommutator,
    Pair2,
    Friedland,
    Pair3,
    Constructive,
    PropertyKL,
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::McCoyTrace => "mccoy-trace",
            Criterion::PermutationTrace => "permutation-trace",
            Criterion::NilpotentCommutator => "nilpotent-commutator",
            Criterion::Pair2 => "pair2",
            Criterion::Friedland => "friedland",
            Criterion::Pair3 => "pair3",
            Criterion::Constructive => "constructive",
            Criterion::PropertyKL => "property-kL",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evidence for the largest residual a criterion saw.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `tr([s_i, s_j] · word)`.
    CommutatorWord { pair: (usize, usize), word: Word },
    /// `tr(word)` against `tr(permuted)`, same letters.
    Permutation { word: Word, permuted: Word },
    /// `word · [x, y]` is not nilpotent.
    NilpotentWord { word: Word },
    /// `x^i1 y^j1 x^i2 y^j2 x^i3 y^j3` against `x^(Σi) y^(Σj)`.
    Monomial { x_exps: [usize; 3], y_exps: [usize; 3] },
    /// A single scalar identity (pair2 / Friedland).
    Identity,
    /// `[s_i, s_j]` is not in the radical of the generated algebra.
    CommutatorOutsideRadical { pair: (usize, usize) },
    /// No simultaneous eigenvalue numbering exists.
    NoNumbering,
    /// A Property kL trial failed.
    PropertyKL(crate::property_l::KLWitness),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::CommutatorWord { pair, word } => {
                write!(f, "tr([s{}, s{}]·{})", pair.0 + 1, pair.1 + 1, word)
            }
            Witness::Permutation { word, permuted } => write!(f, "tr({word}) vs tr({permuted})"),
            Witness::NilpotentWord { word } => write!(f, "{word}·[x, y] not nilpotent"),
            Witness::Monomial { x_exps, y_exps } => write!(
                f,
                "x^{} y^{} x^{} y^{} x^{} y^{}",
                x_exps[0], y_exps[0], x_exps[1], y_exps[1], x_exps[2], y_exps[2]
            ),
            Witness::Identity => f.write_str("trace identity"),
            Witness::CommutatorOutsideRadical { pair } => {
                write!(f, "[s{}, s{}] outside the radical", pair.0 + 1, pair.1 + 1)
            }
            Witness::NoNumbering => f.write_str("no eigenvalue numbering"),
            Witness::PropertyKL(w) => write!(f, "kL trial {} at k = {}", w.trial, w.k),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TriangReport {
    pub verdict: Verdict,
    pub criterion: Criterion,
    /// Worst case seen, with its normalized residual.
    pub witness: Option<(Witness, f64)>,
    /// Unitary whose columns form an invariant flag (constructive only).
    pub flag_basis: Option<Matrix>,
    /// Largest normalized residual over everything tested.
    pub max_residual: f64,
    pub note: Option<String>,
}

impl TriangReport {
    fn new(criterion: Criterion, worst: Option<(Witness, f64)>, cfg: &ToleranceConfig) -> Self {
        let max_residual = worst.as_ref().map_or(0.0, |w| w.1);
        Self {
            verdict: Verdict::from_ratio(max_residual / cfg.zero_rel_tol),
            criterion,
            witness: worst,
            flag_basis: None,
            max_residual,
            note: None,
        }
    }
}

fn keep_worst(worst: &mut Option<(Witness, f64)>, residual: f64, make: impl FnOnce() -> Witness) {
    let better = match worst {
        None => true,
        Some((_, r)) => residual > *r || (r.is_nan() && !residual.is_nan()),
    };
    if better {
        *worst = Some((make(), residual));
    }
}

fn ratio(x: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        x / scale
    } else {
        0.0
    }
}

/// Semi-simple defect of `span(I ∪ S)`.
fn defect_of(set: &MatrixSet, cfg: &ToleranceConfig) -> Result<usize> {
    Ok(generate_algebra(set, cfg)?.defect)
}

/// `tr((s_i s_j - s_j s_i) p) = 0` for all pairs and all words `p` of degree
/// at most `defect + 1`.
pub fn mccoy_trace_check(set: &MatrixSet, cfg: &ToleranceConfig) -> Result<TriangReport> {
    let t = defect_of(set, cfg)?;
    mccoy_trace_check_degree(set, t + 1, cfg)
}

pub fn mccoy_trace_check_degree(
    set: &MatrixSet,
    max_degree: usize,
    cfg: &ToleranceConfig,
) -> Result<TriangReport> {
    let gens = set.matrices();
    let norms: Vec<f64> = gens.iter().map(fro_norm).collect();
    let mut worst = None;
    if gens.len() >= 2 {
        let comms: Vec<(usize, usize, Matrix)> = (0..gens.len())
            .flat_map(|i| ((i + 1)..gens.len()).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, commutator(&gens[i], &gens[j])))
            .collect();
        algebra::for_each_word_product(&gens, set.n(), max_degree, cfg, |letters, p| {
            let word_scale: f64 = letters.iter().map(|&l| norms[l]).product();
            for (i, j, c) in &comms {
                let r = ratio((c * p).trace().norm(), 2.0 * norms[*i] * norms[*j] * word_scale);
                keep_worst(&mut worst, r, || Witness::CommutatorWord {
                    pair: (*i, *j),
                    word: Word { letters: letters.to_vec() },
                });
            }
        })?;
    }
    Ok(TriangReport::new(Criterion::McCoyTrace, worst, cfg))
}

/// Smallest rotation of `letters` in lexicographic order.
fn canonical_rotation(letters: &[usize]) -> Vec<usize> {
    (0..letters.len().max(1))
        .map(|r| {
            let mut v = letters[r.min(letters.len())..].to_vec();
            v.extend_from_slice(&letters[..r.min(letters.len())]);
            v
        })
        .min()
        .unwrap_or_default()
}

/// `tr(w) = tr(σ w)` for every word of length at most `max_len` and every
/// rearrangement of its letters. Words are taken one per cyclic class and
/// compared against the first class with the same letter content.
pub fn permutation_trace_check(
    set: &MatrixSet,
    max_len: Option<usize>,
    cfg: &ToleranceConfig,
) -> Result<TriangReport> {
    let max_len = match max_len {
        Some(m) => m,
        None => defect_of(set, cfg)? + 3,
    };
    let gens = set.matrices();
    let norms: Vec<f64> = gens.iter().map(fro_norm).collect();
    let mut reference: HashMap<Vec<usize>, (Vec<usize>, Scalar)> = HashMap::new();
    let mut worst = None;
    if gens.len() >= 2 {
        algebra::for_each_word_product(&gens, set.n(), max_len, cfg, |letters, p| {
            if letters.len() < 2 || canonical_rotation(letters) != letters {
                return;
            }
            let mut content = vec![0usize; gens.len()];
            for &l in letters {
                content[l] += 1;
            }
            let tr = p.trace();
            match reference.get(&content) {
                None => {
                    reference.insert(content, (letters.to_vec(), tr));
                }
                Some((first, tr0)) => {
                    let scale: f64 = 2.0 * letters.iter().map(|&l| norms[l]).product::<f64>();
                    let r = ratio((tr - tr0).norm(), scale);
                    keep_worst(&mut worst, r, || Witness::Permutation {
                        word: Word { letters: letters.to_vec() },
                        permuted: Word { letters: first.clone() },
                    });
                }
            }
        })?;
    }
    Ok(TriangReport::new(Criterion::PermutationTrace, worst, cfg))
}

/// `p(x, y) (xy - yx)` is nilpotent for all words `p` of degree at most
/// `max_degree` (default `defect + 1`).
pub fn nilpotent_commutator_check(
    x: &Matrix,
    y: &Matrix,
    max_degree: Option<usize>,
    cfg: &ToleranceConfig,
) -> Result<TriangReport> {
    let set = pair_set(x, y)?;
    let max_degree = match max_degree {
        Some(m) => m,
        None => defect_of(&set, cfg)? + 1,
    };
    let gens = [x.clone(), y.clone()];
    let norms = [fro_norm(x), fro_norm(y)];
    let c = commutator(x, y);
    let base = 2.0 * norms[0] * norms[1];
    let mut worst = None;
    algebra::for_each_word_product(&gens, x.nrows(), max_degree, cfg, |letters, p| {
        let scale = base * letters.iter().map(|&l| norms[l]).product::<f64>();
        let r = if scale > 0.0 {
            nilpotency_residual(&(p * &c), scale)
        } else {
            0.0
        };
        keep_worst(&mut worst, r, || Witness::NilpotentWord {
            word: Word { letters: letters.to_vec() },
        });
    })?;
    Ok(TriangReport::new(Criterion::NilpotentCommutator, worst, cfg))
}

fn pair_set(x: &Matrix, y: &Matrix) -> Result<MatrixSet> {
    let n = numerics::ensure_square(x)?;
    MatrixSet::new(n, vec![("x".into(), x.clone()), ("y".into(), y.clone())])
}

fn require_size(x: &Matrix, y: &Matrix, n: usize, what: &'static str) -> Result<()> {
    for m in [x, y] {
        if m.shape() != (n, n) {
            return Err(MatalgError::WrongSize {
                what,
                expected: n,
                got: m.nrows().max(m.ncols()),
            });
        }
    }
    Ok(())
}

/// `tr(x² y²) = tr((xy)²)` for a pair of 2×2 matrices.
pub fn pair2_check(x: &Matrix, y: &Matrix, cfg: &ToleranceConfig) -> Result<TriangReport> {
    require_size(x, y, 2, "pair2_check")?;
    let xy = x * y;
    let d = trace(&(x * x * y * y)) - trace(&(&xy * &xy));
    let scale = fro_norm(x).powi(2) * fro_norm(y).powi(2);
    let r = ratio(d.norm(), scale);
    Ok(TriangReport::new(Criterion::Pair2, Some((Witness::Identity, r)), cfg))
}

/// Friedland's relation
/// `(2tr(x²) - tr(x)²)(2tr(y²) - tr(y)²) = (2tr(xy) - tr(x)tr(y))²` for 2×2
/// matrices. The difference of the two sides is `4(tr(x²y²) - tr((xy)²))`,
/// so the residual is normalized to coincide with [`pair2_check`].
pub fn friedland_check(x: &Matrix, y: &Matrix, cfg: &ToleranceConfig) -> Result<TriangReport> {
    require_size(x, y, 2, "friedland_check")?;
    let two = Scalar::new(2.0, 0.0);
    let (tx, ty) = (trace(x), trace(y));
    let lhs = (two * trace(&(x * x)) - tx * tx) * (two * trace(&(y * y)) - ty * ty);
    let m = two * trace(&(x * y)) - tx * ty;
    let scale = 4.0 * fro_norm(x).powi(2) * fro_norm(y).powi(2);
    let r = ratio((lhs - m * m).norm(), scale);
    Ok(TriangReport::new(Criterion::Friedland, Some((Witness::Identity, r)), cfg))
}

/// For 3×3 `x`, `y`: every monomial `x^i1 y^j1 x^i2 y^j2 x^i3 y^j3` of total
/// degree at most 6 has the same trace as `x^(i1+i2+i3) y^(j1+j2+j3)`.
pub fn pair3_check(x: &Matrix, y: &Matrix, cfg: &ToleranceConfig) -> Result<TriangReport> {
    require_size(x, y, 3, "pair3_check")?;
    const MAX: usize = 6;
    let xp: Vec<Matrix> = (0..=MAX).map(|k| mat_pow(x, k)).collect();
    let yp: Vec<Matrix> = (0..=MAX).map(|k| mat_pow(y, k)).collect();
    let (nx, ny) = (fro_norm(x), fro_norm(y));
    let mut worst = None;
    let mut exps = [0usize; 6];
    loop {
        let total: usize = exps.iter().sum();
        if total <= MAX {
            let xe = [exps[0], exps[2], exps[4]];
            let ye = [exps[1], exps[3], exps[5]];
            let m = &xp[xe[0]] * &yp[ye[0]] * &xp[xe[1]] * &yp[ye[1]] * &xp[xe[2]] * &yp[ye[2]];
            let (sx, sy) = (xe.iter().sum::<usize>(), ye.iter().sum::<usize>());
            let target = &xp[sx] * &yp[sy];
            let scale = 2.0 * nx.powi(sx as i32) * ny.powi(sy as i32);
            let r = ratio((m.trace() - target.trace()).norm(), scale);
            keep_worst(&mut worst, r, || Witness::Monomial { x_exps: xe, y_exps: ye });
        }
        // odometer over exponent tuples with entries 0..=MAX
        let mut pos = 5;
        loop {
            if exps[pos] < MAX {
                exps[pos] += 1;
                break;
            }
            exps[pos] = 0;
            if pos == 0 {
                return Ok(TriangReport::new(Criterion::Pair3, worst, cfg));
            }
            pos -= 1;
        }
    }
}

/// Constructive triangularization. Returns `Err(NotTriangularizable)` when a
/// commutator of members lies outside the radical; numerically ambiguous
/// cases yield an `Indeterminate` report.
pub fn triangularize(set: &MatrixSet, cfg: &ToleranceConfig) -> Result<TriangReport> {
    let report = triangularize_report(set, cfg)?;
    if report.verdict == Verdict::False {
        let detail = report
            .witness
            .as_ref()
            .map(|(w, r)| format!("{w} (residual {r:.3e})"))
            .unwrap_or_default();
        return Err(MatalgError::NotTriangularizable(detail));
    }
    Ok(report)
}

/// As [`triangularize`], but reports a `False` verdict instead of erroring.
pub fn triangularize_report(set: &MatrixSet, cfg: &ToleranceConfig) -> Result<TriangReport> {
    let n = set.n();
    let alg = generate_algebra(set, cfg)?;
    let (comm, worst) = algebra::commutative_mod_radical(set, &alg, cfg)?;
    let witness = worst.map(|(i, j, r)| (Witness::CommutatorOutsideRadical { pair: (i, j) }, r));
    if comm == Verdict::False {
        let mut report = TriangReport::new(Criterion::Constructive, witness, cfg);
        report.verdict = Verdict::False;
        return Ok(report);
    }

    let mats = set.matrices();
    let flag = match build_flag(&mats, n, cfg) {
        Ok(u) => u,
        Err(MatalgError::NumericalDegeneracy(msg)) => {
            let mut report = TriangReport::new(Criterion::Constructive, witness, cfg);
            report.verdict = Verdict::Indeterminate;
            report.note = Some(msg);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };

    let mut lower: f64 = 0.0;
    for s in &mats {
        let t = flag.adjoint() * s * &flag;
        lower = lower.max(strictly_lower_norm(&t) / (1.0 + fro_norm(s)));
    }
    let check = Verdict::from_ratio(lower / cfg.zero_rel_tol);
    let verdict = match check {
        Verdict::True => Verdict::True,
        _ => Verdict::Indeterminate,
    };
    Ok(TriangReport {
        verdict,
        criterion: Criterion::Constructive,
        witness,
        flag_basis: Some(flag),
        max_residual: lower,
        note: (verdict != Verdict::True)
            .then(|| format!("flag verification residual {lower:.3e}")),
    })
}

/// Builds a unitary whose leading columns span invariant subspaces of every
/// matrix in `mats`, one common eigenvector at a time.
fn build_flag(mats: &[Matrix], n: usize, cfg: &ToleranceConfig) -> Result<Matrix> {
    let mut flag = Matrix::zeros(n, n);
    let mut comp = identity(n);
    for col in 0..n {
        let ops: Vec<Matrix> = mats.iter().map(|s| comp.adjoint() * s * &comp).collect();
        let v = common_eigenvector(&ops, comp.ncols(), cfg)?;
        let u = &comp * &v;
        flag.set_column(col, &u.column(0));
        comp = &comp * orthonormal_complement(&v);
    }
    Ok(flag)
}

/// Unit common eigenvector (as an `r × 1` matrix) of operators on `ℂ^r`
/// generating an algebra that is commutative modulo its radical.
fn common_eigenvector(ops: &[Matrix], r: usize, cfg: &ToleranceConfig) -> Result<Matrix> {
    let mut e1 = Matrix::zeros(r, 1);
    e1[(0, 0)] = numerics::ONE;
    if r == 1 || ops.is_empty() {
        return Ok(e1);
    }
    let set = MatrixSet::from_matrices(ops.to_vec())?;
    let alg = generate_algebra(&set, cfg)?;

    // the radical is a nilpotent ideal, so its common kernel is nonzero and
    // invariant; there the operators commute and are diagonalizable
    let mut space = if alg.radical_basis.is_empty() {
        identity(r)
    } else {
        let rows = alg.radical_basis.len() * r;
        let mut stacked = Matrix::zeros(rows, r);
        for (k, j) in alg.radical_basis.iter().enumerate() {
            stacked.view_mut((k * r, 0), (r, r)).copy_from(j);
        }
        let threshold = cfg.zero_rel_tol * spectral_norm(&stacked);
        let (kernel, sv) = null_space(&stacked, threshold);
        ensure_clear_gap(&sv, threshold, "common kernel of the radical")?;
        kernel
    };
    if space.ncols() == 0 {
        return Err(MatalgError::NumericalDegeneracy(
            "radical has no common kernel".into(),
        ));
    }

    for op in ops {
        if space.ncols() == 1 {
            break;
        }
        let m = space.adjoint() * op * &space;
        let lambda = eigenvalues(&m, cfg)?[0];
        let shifted = &m - identity(m.nrows()) * lambda;
        let threshold = cfg.zero_rel_tol * (1.0 + fro_norm(&m));
        let (kernel, sv) = null_space(&shifted, threshold);
        ensure_clear_gap(&sv, threshold, "eigenspace")?;
        if kernel.ncols() == 0 {
            return Err(MatalgError::NumericalDegeneracy("empty eigenspace".into()));
        }
        space = &space * kernel;
    }
    Ok(space.columns(0, 1).into_owned())
}

fn ensure_clear_gap(sv: &[f64], threshold: f64, what: &str) -> Result<()> {
    if let Some(s) = sv
        .iter()
        .find(|&&s| s > 0.1 * threshold && s < 10.0 * threshold)
    {
        return Err(MatalgError::NumericalDegeneracy(format!(
            "{what}: singular value {s:.3e} too close to cutoff {threshold:.3e}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::numerics::{from_real_rows, matrix_unit, random, real_diag};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn conjugated_triangular(seed: u64, n: usize, count: usize) -> MatrixSet {
        let mut rng = random::seeded_rng(seed, 0);
        let u = random::random_unitary(&mut rng, n);
        let mats = (0..count)
            .map(|_| &u * random::random_upper_triangular(&mut rng, n) * u.adjoint())
            .collect();
        MatrixSet::from_matrices(mats).unwrap()
    }

    fn swap_pair() -> (Matrix, Matrix) {
        let x = matrix_unit(2, 0, 0);
        let y = matrix_unit(2, 0, 1) + matrix_unit(2, 1, 0);
        (x, y)
    }

    #[test]
    fn mccoy_rejects_wielandt() {
        let set = fixtures::wielandt_3_1();
        let r = mccoy_trace_check(&set, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::False);
        let (w, res) = r.witness.unwrap();
        assert!(matches!(w, Witness::CommutatorWord { .. }) && res > 0.01);
    }

    #[test]
    fn mccoy_accepts_conjugated_triangular() {
        let set = conjugated_triangular(1, 4, 2);
        assert_eq!(mccoy_trace_check(&set, &cfg()).unwrap().verdict, Verdict::True);
    }

    #[test]
    fn mccoy_diagonal_pair_is_exact() {
        let set = MatrixSet::from_matrices(vec![real_diag(&[1., 2., 3.]), real_diag(&[0., -1., 4.])])
            .unwrap();
        let r = mccoy_trace_check(&set, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::True);
        assert!(r.max_residual < 1e-15);
    }

    #[test]
    fn permutation_check_example_2_9() {
        let set = fixtures::example_2_9();
        let five = permutation_trace_check(&set, Some(5), &cfg()).unwrap();
        assert_eq!(five.verdict, Verdict::True);
        let six = permutation_trace_check(&set, Some(6), &cfg()).unwrap();
        assert_eq!(six.verdict, Verdict::False);
        match six.witness.unwrap().0 {
            Witness::Permutation { word, .. } => assert_eq!(word.degree(), 6),
            w => panic!("unexpected witness {w}"),
        }
    }

    #[test]
    fn permutation_check_single_matrix_is_vacuous() {
        let set = MatrixSet::from_matrices(vec![from_real_rows(2, 2, &[1., 2., 3., 4.])]).unwrap();
        let r = permutation_trace_check(&set, None, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::True);
        assert!(r.witness.is_none());
    }

    #[test]
    fn canonical_rotation_is_minimal() {
        assert_eq!(canonical_rotation(&[1, 0, 1]), vec![0, 1, 1]);
        assert_eq!(canonical_rotation(&[]), Vec::<usize>::new());
    }

    #[test]
    fn nilpotent_commutator_cases() {
        let mut rng = random::seeded_rng(4, 0);
        let x = random::random_upper_triangular(&mut rng, 3);
        let y = random::random_upper_triangular(&mut rng, 3);
        let r = nilpotent_commutator_check(&x, &y, None, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::True);

        let w = fixtures::wielandt_3_1().matrices();
        let r = nilpotent_commutator_check(&w[0], &w[1], None, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::False);
        assert!(matches!(r.witness.unwrap().0, Witness::NilpotentWord { .. }));

        let (x, y) = swap_pair();
        let r = nilpotent_commutator_check(&x, &y, None, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::False);
    }

    #[test]
    fn swap_pair_oracle() {
        // hand computation: x²y² = e11, (xy)² = e12² = 0
        let (x, y) = swap_pair();
        let r = pair2_check(&x, &y, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::False);
        assert!((r.max_residual - 1.0 / 2.0).abs() < 1e-15);
        let f = friedland_check(&x, &y, &cfg()).unwrap();
        assert_eq!(f.verdict, Verdict::False);
        assert!((f.max_residual - r.max_residual).abs() < 1e-15);
    }

    #[test]
    fn pair2_and_friedland_on_triangular_and_commuting() {
        let mut rng = random::seeded_rng(6, 0);
        let x = random::random_upper_triangular(&mut rng, 2);
        let y = random::random_upper_triangular(&mut rng, 2);
        assert_eq!(pair2_check(&x, &y, &cfg()).unwrap().verdict, Verdict::True);
        let x2 = &x * &x;
        assert_eq!(friedland_check(&x, &x2, &cfg()).unwrap().verdict, Verdict::True);
    }

    #[test]
    fn pair_checks_reject_wrong_size() {
        let a = identity(3);
        assert!(matches!(
            pair2_check(&a, &a, &cfg()),
            Err(MatalgError::WrongSize { .. })
        ));
        let b = identity(2);
        assert!(matches!(
            pair3_check(&b, &b, &cfg()),
            Err(MatalgError::WrongSize { .. })
        ));
    }

    #[test]
    fn pair3_cases() {
        let e = fixtures::example_2_9().matrices();
        assert_eq!(pair3_check(&e[0], &e[1], &cfg()).unwrap().verdict, Verdict::False);
        let w = fixtures::wielandt_3_1().matrices();
        assert_eq!(pair3_check(&w[0], &w[1], &cfg()).unwrap().verdict, Verdict::False);
        let t = conjugated_triangular(8, 3, 2).matrices();
        assert_eq!(pair3_check(&t[0], &t[1], &cfg()).unwrap().verdict, Verdict::True);
    }

    #[test]
    fn triangularize_recovers_flag() {
        let set = conjugated_triangular(3, 5, 3);
        let r = triangularize(&set, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::True);
        let u = r.flag_basis.unwrap();
        assert!((u.adjoint() * &u - identity(5)).norm() < 1e-12);
        for s in set.matrices() {
            let t = u.adjoint() * &s * &u;
            assert!(strictly_lower_norm(&t) <= 1e-8 * (1.0 + fro_norm(&s)));
        }
    }

    #[test]
    fn triangularize_rejects_wielandt() {
        let r = triangularize(&fixtures::wielandt_3_1(), &cfg());
        assert!(matches!(r, Err(MatalgError::NotTriangularizable(_))));
    }

    #[test]
    fn triangularize_commuting_diagonalizable() {
        let mut rng = random::seeded_rng(12, 0);
        let g = random::random_invertible(&mut rng, 3, 10.0);
        let gi = g.clone().try_inverse().unwrap();
        let a = &g * real_diag(&[1., 1., 2.]) * &gi;
        let b = &g * real_diag(&[3., 4., 4.]) * &gi;
        let set = MatrixSet::from_matrices(vec![a, b]).unwrap();
        let r = triangularize(&set, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::True);
    }

    #[test]
    fn triangularize_identity_and_empty() {
        let set = MatrixSet::from_matrices(vec![identity(3)]).unwrap();
        let r = triangularize(&set, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::True);
        let u = r.flag_basis.unwrap();
        assert!((u.adjoint() * &u - identity(3)).norm() < 1e-14);

        let empty = MatrixSet::new(2, vec![]).unwrap();
        assert_eq!(triangularize(&empty, &cfg()).unwrap().verdict, Verdict::True);
    }

    #[test]
    fn verdicts_survive_rescaling_and_identity() {
        let set = fixtures::wielandt_3_1();
        let scaled = MatrixSet::from_matrices(
            set.matrices().iter().map(|m| m * Scalar::new(0.0, 250.0)).collect(),
        )
        .unwrap();
        assert_eq!(mccoy_trace_check(&scaled, &cfg()).unwrap().verdict, Verdict::False);
        let mut with_i = set.matrices();
        with_i.push(identity(3));
        let with_i = MatrixSet::from_matrices(with_i).unwrap();
        assert_eq!(mccoy_trace_check(&with_i, &cfg()).unwrap().verdict, Verdict::False);
    }
}
