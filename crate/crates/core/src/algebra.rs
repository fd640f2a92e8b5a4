//! Unital algebra generated by a matrix set, its Jacobson radical and the
//! semi-simple defect.
//!
//! The radical is computed as the kernel of the trace pairing
//! `(b, b') ↦ tr(b b')` restricted to the algebra: an element `b` lies in the
//! radical iff `tr(x b) = 0` for every `x` in the algebra.

use std::collections::HashSet;

use crate::error::{MatalgError, Result};
use crate::numerics::{
    self, fro_norm, identity, null_space, projection_residual, span_basis, Matrix,
    ToleranceConfig, Verdict,
};

/// Finite, named list of `n × n` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSet {
    n: usize,
    members: Vec<(String, Matrix)>,
    /// The identity is always adjoined when generating the algebra; this
    /// flag only controls whether it counts towards the reported input span.
    pub include_identity: bool,
}

impl MatrixSet {
    pub fn new(n: usize, members: Vec<(String, Matrix)>) -> Result<Self> {
        let mut names = HashSet::new();
        for (name, m) in &members {
            if m.shape() != (n, n) {
                return Err(MatalgError::ShapeMismatch {
                    expected: (n, n),
                    got: m.shape(),
                });
            }
            numerics::ensure_finite(m, "matrix set member")?;
            if !names.insert(name.as_str()) {
                return Err(MatalgError::InvalidInput(format!(
                    "duplicate member name `{name}`"
                )));
            }
        }
        Ok(Self {
            n,
            members,
            include_identity: true,
        })
    }

    /// Names members `m0, m1, …`. Fails on an empty list since the size is
    /// then unknown.
    pub fn from_matrices(mats: Vec<Matrix>) -> Result<Self> {
        let n = mats
            .first()
            .map(|m| m.nrows())
            .ok_or_else(|| MatalgError::InvalidInput("empty matrix list".into()))?;
        let members = mats
            .into_iter()
            .enumerate()
            .map(|(i, m)| (format!("m{i}"), m))
            .collect();
        Self::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[(String, Matrix)] {
        &self.members
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.members.iter().map(|(_, m)| m.clone()).collect()
    }

    pub fn names(&self) -> Vec<&str> {
        self.members.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Matrix> {
        self.members.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// Simultaneous similarity `g · s · g⁻¹` of every member.
    pub fn conjugated(&self, g: &Matrix) -> Result<Self> {
        let ginv = g
            .clone()
            .try_inverse()
            .ok_or_else(|| MatalgError::InvalidInput("conjugating matrix is singular".into()))?;
        let members = self
            .members
            .iter()
            .map(|(name, m)| (name.clone(), g * m * &ginv))
            .collect();
        Ok(Self {
            n: self.n,
            members,
            include_identity: self.include_identity,
        })
    }

    /// Copy with `I` appended (named `I`, or `I_` if that name is taken).
    pub fn with_identity(&self) -> Self {
        let mut name = "I".to_string();
        while self.get(&name).is_some() {
            name.push('_');
        }
        let mut members = self.members.clone();
        members.push((name, identity(self.n)));
        Self {
            n: self.n,
            members,
            include_identity: self.include_identity,
        }
    }
}

/// Monomial in non-commuting generators; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub letters: Vec<usize>,
}

impl Word {
    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn evaluate(&self, gens: &[Matrix], n: usize) -> Matrix {
        self.letters
            .iter()
            .fold(identity(n), |acc, &l| acc * &gens[l])
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| (l + 1).to_string()).collect();
        f.write_str(&parts.join("·"))
    }
}

/// Number of words of length `0..=degree` over `d` letters.
pub fn word_count(d: usize, degree: usize) -> u128 {
    let d = d as u128;
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=degree {
        total = total.saturating_add(level);
        level = level.saturating_mul(d);
    }
    total
}

pub(crate) fn check_word_budget(d: usize, degree: usize, cfg: &ToleranceConfig) -> Result<u128> {
    let count = word_count(d, degree);
    if count > cfg.word_cap as u128 {
        return Err(MatalgError::BudgetExceeded {
            what: "word enumeration",
            needed: count,
            cap: cfg.word_cap as u128,
        });
    }
    Ok(count)
}

/// All words of length `0..=degree` over `d` letters in shortlex order.
pub fn enumerate_words(d: usize, degree: usize, cfg: &ToleranceConfig) -> Result<Vec<Word>> {
    if d == 0 {
        return Err(MatalgError::InvalidInput("need at least one letter".into()));
    }
    check_word_budget(d, degree, cfg)?;
    let mut out = vec![Word { letters: vec![] }];
    let mut level = vec![Vec::<usize>::new()];
    for _ in 0..degree {
        let mut next = Vec::with_capacity(level.len() * d);
        for w in &level {
            for l in 0..d {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(|letters| Word { letters }));
        level = next;
    }
    Ok(out)
}

/// Calls `f(letters, product)` for every word of length `0..=max_degree`
/// over `gens`, depth first, reusing prefix products.
pub(crate) fn for_each_word_product<F>(
    gens: &[Matrix],
    n: usize,
    max_degree: usize,
    cfg: &ToleranceConfig,
    mut f: F,
) -> Result<()>
where
    F: FnMut(&[usize], &Matrix),
{
    check_word_budget(gens.len().max(1), max_degree, cfg)?;
    fn rec<F: FnMut(&[usize], &Matrix)>(
        gens: &[Matrix],
        max_degree: usize,
        letters: &mut Vec<usize>,
        product: &Matrix,
        f: &mut F,
    ) {
        f(letters, product);
        if letters.len() == max_degree {
            return;
        }
        for (l, g) in gens.iter().enumerate() {
            letters.push(l);
            let p = product * g;
            rec(gens, max_degree, letters, &p, f);
            letters.pop();
        }
    }
    rec(gens, max_degree, &mut Vec::new(), &identity(n), &mut f);
    Ok(())
}

/// Unital algebra generated by a set, with its filtration and radical.
#[derive(Debug, Clone)]
pub struct GeneratedAlgebra {
    pub n: usize,
    /// Orthonormal basis of the whole algebra.
    pub basis: Vec<Matrix>,
    /// `dim ℒ^k` for `k = 1, 2, …` up to stabilization (strictly increasing,
    /// last entry equals the algebra dimension).
    pub filtration_dims: Vec<usize>,
    /// Orthonormal bases of the filtration levels, aligned with `filtration_dims`.
    pub filtration_bases: Vec<Vec<Matrix>>,
    /// Orthonormal basis of the Jacobson radical.
    pub radical_basis: Vec<Matrix>,
    /// Smallest `t` with `ℒ^{t+1} + 𝒥 = ℬ`.
    pub defect: usize,
    /// Dimension of the raw input span (with `I` when the set asks for it).
    pub input_dim: usize,
}

impl GeneratedAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `dim ℒ` where `ℒ = span(I ∪ S)`.
    pub fn generating_dim(&self) -> usize {
        self.filtration_dims[0]
    }

    pub fn radical_dim(&self) -> usize {
        self.radical_basis.len()
    }

    pub fn semisimple_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }

    /// Projection residual of `b` relative to `‖b‖_F`.
    pub fn span_residual(&self, b: &Matrix) -> f64 {
        projection_residual(b, &self.basis)
    }

    /// `max_i |tr(basis_i · b)| / scale`.
    pub fn pairing_residual(&self, b: &Matrix, scale: f64) -> f64 {
        if scale == 0.0 {
            return 0.0;
        }
        self.basis
            .iter()
            .map(|q| (q * b).trace().norm())
            .fold(0.0, f64::max)
            / scale
    }
}

/// Generates the unital algebra of `set`: iterates
/// `ℒ^{k+1} = span(ℒ^k ∪ ℒ^k·ℒ)` from `ℒ = span(I ∪ S)` until the dimension
/// stops growing, then computes the radical and the semi-simple defect.
pub fn generate_algebra(set: &MatrixSet, cfg: &ToleranceConfig) -> Result<GeneratedAlgebra> {
    let n = set.n();
    if n == 0 {
        return Err(MatalgError::InvalidInput("matrices must be at least 1x1".into()));
    }
    let raw = set.matrices();
    let input_dim = if set.include_identity {
        let mut with_i = raw.clone();
        with_i.push(identity(n));
        span_basis(&with_i, cfg)?.len()
    } else {
        span_basis(&raw, cfg)?.len()
    };

    let mut gens = vec![identity(n)];
    gens.extend(raw);
    let generating = span_basis(&gens, cfg)?;
    let mut levels = vec![generating.clone()];
    loop {
        if levels.len() > n * n + 1 {
            return Err(MatalgError::BudgetExceeded {
                what: "algebra closure iterations",
                needed: levels.len() as u128,
                cap: (n * n + 1) as u128,
            });
        }
        let cur = levels.last().expect("nonempty");
        let mut candidates = cur.clone();
        for q in cur {
            for l in &generating {
                candidates.push(q * l);
            }
        }
        let next = span_basis(&candidates, cfg)?;
        if next.len() <= cur.len() {
            break;
        }
        levels.push(next);
    }
    let basis = levels.last().expect("nonempty").clone();
    let radical_basis = radical(&basis, cfg)?;
    let defect = semisimple_defect(&levels, &radical_basis, basis.len(), cfg)?;
    Ok(GeneratedAlgebra {
        n,
        filtration_dims: levels.iter().map(Vec::len).collect(),
        basis,
        filtration_bases: levels,
        radical_basis,
        defect,
        input_dim,
    })
}

fn semisimple_defect(
    levels: &[Vec<Matrix>],
    radical: &[Matrix],
    dim: usize,
    cfg: &ToleranceConfig,
) -> Result<usize> {
    for (t, level) in levels.iter().enumerate() {
        if level.len() == dim {
            return Ok(t);
        }
        if radical.is_empty() {
            continue;
        }
        let mut joined = level.clone();
        joined.extend(radical.iter().cloned());
        if span_basis(&joined, cfg)?.len() >= dim {
            return Ok(t);
        }
    }
    Ok(levels.len().saturating_sub(1))
}

/// Orthonormal basis of the Jacobson radical of the algebra spanned by the
/// orthonormal `basis`: the kernel of the trace pairing `G_ij = tr(b_i b_j)`.
pub fn radical(basis: &[Matrix], cfg: &ToleranceConfig) -> Result<Vec<Matrix>> {
    let Some(first) = basis.first() else {
        return Ok(Vec::new());
    };
    let n = numerics::ensure_square(first)?;
    let d = basis.len();

    let mut worst: f64 = 0.0;
    for a in basis {
        for b in basis {
            let p = a * b;
            let scale = fro_norm(a) * fro_norm(b);
            if scale > 0.0 {
                worst = worst.max(projection_residual(&p, basis) * fro_norm(&p) / scale);
            }
        }
    }
    if Verdict::from_ratio(worst / cfg.zero_rel_tol) == Verdict::False {
        return Err(MatalgError::NotAnAlgebra { residual: worst });
    }

    let gram = Matrix::from_fn(d, d, |i, j| (&basis[i] * &basis[j]).trace());
    let smax = crate::numerics::spectral_norm(&gram);
    let cutoff = cfg.rank_rel_tol * smax.max(f64::MIN_POSITIVE) * d as f64;
    let (kernel, _) = null_space(&gram, cutoff);

    let mut out = Vec::with_capacity(kernel.ncols());
    for col in kernel.column_iter() {
        let mut j = Matrix::zeros(n, n);
        for (c, b) in col.iter().zip(basis) {
            j += b * *c;
        }
        let nilp = numerics::mat_pow(&j, n).norm() / fro_norm(&j).powi(n as i32).max(1.0);
        if Verdict::from_ratio(nilp / cfg.zero_rel_tol) == Verdict::False {
            return Err(MatalgError::InconsistentRadical { residual: nilp });
        }
        out.push(j);
    }
    Ok(out)
}

/// Outcome of a membership test: verdict plus the deciding residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub verdict: Verdict,
    pub residual: f64,
}

/// Decides `b ∈ 𝒥` through `max_i |tr(basis_i · b)| / ‖b‖_F`.
pub fn radical_membership(
    b: &Matrix,
    algebra: &GeneratedAlgebra,
    cfg: &ToleranceConfig,
) -> Result<Membership> {
    radical_membership_scaled(b, algebra, fro_norm(b), cfg)
}

/// As [`radical_membership`], normalizing by an explicit `scale` instead of
/// `‖b‖_F`. Use this when `b` is a difference that may cancel to rounding
/// noise.
pub fn radical_membership_scaled(
    b: &Matrix,
    algebra: &GeneratedAlgebra,
    scale: f64,
    cfg: &ToleranceConfig,
) -> Result<Membership> {
    if b.shape() != (algebra.n, algebra.n) {
        return Err(MatalgError::ShapeMismatch {
            expected: (algebra.n, algebra.n),
            got: b.shape(),
        });
    }
    let nb = fro_norm(b);
    let outside = if scale > 0.0 {
        algebra.span_residual(b) * nb / scale
    } else {
        0.0
    };
    if Verdict::from_ratio(outside / cfg.zero_rel_tol) == Verdict::False {
        return Err(MatalgError::NotInAlgebra { residual: outside });
    }
    let residual = algebra.pairing_residual(b, scale);
    Ok(Membership {
        verdict: Verdict::from_ratio(residual / cfg.zero_rel_tol),
        residual,
    })
}

/// Whether every commutator of members lies in the radical, i.e. whether the
/// semisimple quotient is commutative. Returns the verdict and the worst
/// `(i, j, residual)`.
pub fn commutative_mod_radical(
    set: &MatrixSet,
    algebra: &GeneratedAlgebra,
    cfg: &ToleranceConfig,
) -> Result<(Verdict, Option<(usize, usize, f64)>)> {
    let mats = set.matrices();
    let mut verdict = Verdict::True;
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..mats.len() {
        for j in (i + 1)..mats.len() {
            let c = numerics::commutator(&mats[i], &mats[j]);
            let scale = 2.0 * fro_norm(&mats[i]) * fro_norm(&mats[j]);
            let m = radical_membership_scaled(&c, algebra, scale, cfg)?;
            verdict = verdict.and(m.verdict);
            if worst.map_or(true, |w| m.residual > w.2) {
                worst = Some((i, j, m.residual));
            }
        }
    }
    Ok((verdict, worst))
}
