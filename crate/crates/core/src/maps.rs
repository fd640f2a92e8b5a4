//! Unital linear maps `φ: 𝒜 → M_n` on a matrix algebra `𝒜 ⊆ M_h`, their
//! tensor lifts `φ ⊗ id_k`, and randomized checks of invertibility
//! preservation and of (Jordan) homomorphism modulo the radical.
//!
//! Trace residuals are taken for elements normalized to spectral norm one and
//! divided by `N (1 + ‖φ‖) γ^m`, where `N` is the target size, `‖φ‖` the
//! Frobenius operator norm of the map and `γ ≥ 1` bounds the spectral norm of
//! the images involved.

use rand::Rng;

use crate::algebra::{self, generate_algebra, GeneratedAlgebra, MatrixSet};
use crate::error::{MatalgError, Result};
use crate::numerics::{
    self, determinant, fro_norm, identity, kron, matrix_unit, random, span_basis, spectral_norm,
    svd, Matrix, Scalar, ToleranceConfig, Verdict,
};
use crate::property_l::cyclic_shift_lift;

const INVERTIBILITY_STREAM: u64 = 2 << 20;
const CYCLIC_STREAM: u64 = 3 << 20;
const IDENTITY_STREAM: u64 = 4 << 20;
const PROP48_STREAM: u64 = 5 << 20;
pub const DEFAULT_TRIALS: usize = 64;

/// A unital linear map given on a basis of its domain algebra, possibly
/// lifted to `M_k(𝒜) → M_k(M_n)`. Lifts act blockwise: the `(p, q)` block of
/// `φ_k(a)` is `φ(a_pq)`, matching `kron(e_pq, ·)`.
#[derive(Debug, Clone)]
pub struct LinearMatrixMap {
    h: usize,
    n: usize,
    k: usize,
    domain: Vec<Matrix>,
    images: Vec<Matrix>,
    /// Maps a column-major flattened `h × h` block to its coordinates.
    pinv: Matrix,
    op_norm: f64,
    /// `zero_rel_tol` at construction; bounds the domain residual in `apply`.
    tol: f64,
}

fn flatten(a: &Matrix) -> Matrix {
    Matrix::from_column_slice(a.len(), 1, a.as_slice())
}

fn stack(ms: &[Matrix]) -> Matrix {
    let len = ms[0].len();
    Matrix::from_fn(len, ms.len(), |i, j| ms[j].as_slice()[i])
}

impl LinearMatrixMap {
    /// Validates that `domain` is a linearly independent, multiplicatively
    /// closed basis containing the identity and that `φ(I) = I`.
    pub fn new(domain: Vec<Matrix>, images: Vec<Matrix>, cfg: &ToleranceConfig) -> Result<Self> {
        if domain.is_empty() {
            return Err(MatalgError::InvalidInput("empty domain basis".into()));
        }
        if domain.len() != images.len() {
            return Err(MatalgError::CountMismatch {
                expected: domain.len(),
                got: images.len(),
            });
        }
        let h = numerics::ensure_square(&domain[0])?;
        let n = numerics::ensure_square(&images[0])?;
        for (a, b) in domain.iter().zip(&images) {
            if a.shape() != (h, h) {
                return Err(MatalgError::ShapeMismatch {
                    expected: (h, h),
                    got: a.shape(),
                });
            }
            if b.shape() != (n, n) {
                return Err(MatalgError::ShapeMismatch {
                    expected: (n, n),
                    got: b.shape(),
                });
            }
            numerics::ensure_finite(a, "domain basis")?;
            numerics::ensure_finite(b, "image")?;
        }

        let d = stack(&domain);
        let dec = svd(&d);
        let smax = dec.s[0];
        let cutoff = cfg.rank_rel_tol * smax * d.nrows().max(d.ncols()) as f64;
        if dec.s.len() < domain.len() || dec.s.iter().any(|&s| s <= cutoff) {
            return Err(MatalgError::InvalidInput(
                "domain basis is linearly dependent".into(),
            ));
        }
        let inv_s = Matrix::from_diagonal(&nalgebra::DVector::from_iterator(
            dec.s.len(),
            dec.s.iter().map(|&s| Scalar::new(1.0 / s, 0.0)),
        ));
        let pinv = &dec.v * inv_s * dec.u.adjoint();
        let op_norm = spectral_norm(&(stack(&images) * &pinv));
        let map = Self {
            h,
            n,
            k: 1,
            domain,
            images,
            pinv,
            op_norm,
            tol: cfg.zero_rel_tol,
        };

        let mut worst: f64 = 0.0;
        for a in &map.domain {
            for b in &map.domain {
                let p = a * b;
                let scale = fro_norm(a) * fro_norm(b);
                if scale > 0.0 {
                    worst = worst.max(map.block_residual(&p) / scale);
                }
            }
        }
        if Verdict::from_ratio(worst / cfg.zero_rel_tol) == Verdict::False {
            return Err(MatalgError::NotAnAlgebra { residual: worst });
        }
        let id = identity(h);
        let r = map.block_residual(&id) / fro_norm(&id);
        if Verdict::from_ratio(r / cfg.zero_rel_tol) == Verdict::False {
            return Err(MatalgError::InvalidInput(
                "domain does not contain the identity".into(),
            ));
        }
        let u = fro_norm(&(map.apply_block(&id) - identity(n))) / (n as f64).sqrt();
        if Verdict::from_ratio(u / cfg.zero_rel_tol) == Verdict::False {
            return Err(MatalgError::InvalidInput(format!(
                "map is not unital (|φ(I) - I| = {u:.3e})"
            )));
        }
        Ok(map)
    }

    /// Size of the (lifted) domain matrices.
    pub fn h(&self) -> usize {
        self.h * self.k
    }

    /// Size of the (lifted) image matrices.
    pub fn n(&self) -> usize {
        self.n * self.k
    }

    pub fn lift_k(&self) -> usize {
        self.k
    }

    pub fn base_h(&self) -> usize {
        self.h
    }

    pub fn base_n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k * self.k * self.domain.len()
    }

    /// Frobenius-to-Frobenius operator norm of the base map.
    pub fn op_norm(&self) -> f64 {
        self.op_norm
    }

    pub fn base_domain(&self) -> &[Matrix] {
        &self.domain
    }

    pub fn base_images(&self) -> &[Matrix] {
        &self.images
    }

    /// Basis `{e_pq ⊗ a_i}` of the lifted domain (the base basis when k = 1).
    pub fn domain_basis(&self) -> Vec<Matrix> {
        self.lifted(&self.domain)
    }

    /// Images `{e_pq ⊗ φ(a_i)}` matching [`Self::domain_basis`].
    pub fn images(&self) -> Vec<Matrix> {
        self.lifted(&self.images)
    }

    fn lifted(&self, ms: &[Matrix]) -> Vec<Matrix> {
        if self.k == 1 {
            return ms.to_vec();
        }
        let mut out = Vec::with_capacity(self.dim());
        for m in ms {
            for p in 0..self.k {
                for q in 0..self.k {
                    out.push(kron(&matrix_unit(self.k, p, q), m).expect("finite inputs"));
                }
            }
        }
        out
    }

    /// Coordinates of an `h × h` block on the base domain basis.
    pub fn coordinates(&self, block: &Matrix) -> Vec<Scalar> {
        (&self.pinv * flatten(block)).iter().copied().collect()
    }

    fn combine(&self, coords: &[Scalar], ms: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(ms[0].nrows(), ms[0].ncols());
        for (c, m) in coords.iter().zip(ms) {
            out += m * *c;
        }
        out
    }

    fn block_residual(&self, block: &Matrix) -> f64 {
        let c = self.coordinates(block);
        fro_norm(&(self.combine(&c, &self.domain) - block))
    }

    fn apply_block(&self, block: &Matrix) -> Matrix {
        self.combine(&self.coordinates(block), &self.images)
    }

    /// `φ(a)`; errors with `NotInDomain` when `a` is not in the span of the
    /// domain basis.
    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        let (h, n, k) = (self.h, self.n, self.k);
        if a.shape() != (h * k, h * k) {
            return Err(MatalgError::ShapeMismatch {
                expected: (h * k, h * k),
                got: a.shape(),
            });
        }
        let mut out = Matrix::zeros(n * k, n * k);
        let mut res2 = 0.0;
        for p in 0..k {
            for q in 0..k {
                let block = a.view((p * h, q * h), (h, h)).into_owned();
                let c = self.coordinates(&block);
                res2 += fro_norm(&(self.combine(&c, &self.domain) - &block)).powi(2);
                out.view_mut((p * n, q * n), (n, n))
                    .copy_from(&self.combine(&c, &self.images));
            }
        }
        let na = fro_norm(a);
        let residual = if na > 0.0 { res2.sqrt() / na } else { 0.0 };
        if Verdict::from_ratio(residual / self.tol) == Verdict::False {
            return Err(MatalgError::NotInDomain { residual });
        }
        Ok(out)
    }

    /// Random element of the (lifted) domain with standard complex Gaussian
    /// coordinates.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix {
        let (h, k) = (self.h, self.k);
        let mut out = Matrix::zeros(h * k, h * k);
        for p in 0..k {
            for q in 0..k {
                let c = random::gaussian_vec(rng, self.domain.len());
                out.view_mut((p * h, q * h), (h, h))
                    .copy_from(&self.combine(&c, &self.domain));
            }
        }
        out
    }
}

/// `φ ⊗ id_k`.
pub fn tensor_lift(map: &LinearMatrixMap, k: usize) -> Result<LinearMatrixMap> {
    if k == 0 {
        return Err(MatalgError::InvalidInput("k must be at least 1".into()));
    }
    let mut out = map.clone();
    out.k *= k;
    Ok(out)
}

fn normalized(a: &Matrix) -> Matrix {
    let s = spectral_norm(a);
    if s > 0.0 {
        a.unscale(s)
    } else {
        a.clone()
    }
}

/// `max_m |tr(φ(a^m)) - tr(φ(a)^m)|` over `m = 1..m_max`, normalized as in
/// the module docs, for `a` rescaled to spectral norm one. Returns the
/// residual and the worst `m`.
pub fn invertibility_residual(
    map: &LinearMatrixMap,
    a: &Matrix,
    m_max: usize,
) -> Result<(f64, usize)> {
    let a = normalized(a);
    let fa = map.apply(&a)?;
    let gamma = spectral_norm(&fa).max(1.0);
    let fa_s = fa.unscale(gamma);
    let denom = map.n() as f64 * (1.0 + map.op_norm);
    let mut pa = identity(a.nrows());
    let mut pf = identity(fa.nrows());
    let mut worst = (0.0, 1);
    for m in 1..=m_max {
        pa = &pa * &a;
        pf = &pf * &fa_s;
        let lhs = map.apply(&pa)?.trace() / gamma.powi(m as i32);
        let r = (lhs - pf.trace()).norm() / denom;
        if r > worst.0 {
            worst = (r, m);
        }
    }
    Ok(worst)
}

/// Element on which a trace identity failed (or came closest to failing).
#[derive(Debug, Clone, PartialEq)]
pub struct InvWitness {
    pub trial: usize,
    pub m: usize,
    pub element: Matrix,
    pub residual: f64,
    /// `"random"` or `"cyclic-shift"`.
    pub source: &'static str,
}

#[derive(Debug, Clone)]
pub struct InvertibilityReport {
    pub verdict: Verdict,
    pub max_residual: f64,
    pub trials: usize,
    pub m_max: usize,
    pub seed: u64,
    pub witness: Option<InvWitness>,
}

impl InvertibilityReport {
    /// The check is randomized in the element and truncated in `m`.
    pub const NOTE: &'static str = "randomized + truncated";
}

/// Randomized check of `tr(φ(a^m)) = tr(φ(a)^m)` for `m ≤ m_max`
/// (default `h + n`) at `trials` random elements.
pub fn check_invertibility_preserving(
    map: &LinearMatrixMap,
    m_max: Option<usize>,
    trials: usize,
    cfg: &ToleranceConfig,
) -> Result<InvertibilityReport> {
    let m_max = m_max.unwrap_or(map.h() + map.n());
    let mut worst: Option<InvWitness> = None;
    for trial in 0..trials {
        let mut rng = random::seeded_rng(cfg.seed, INVERTIBILITY_STREAM + trial as u64);
        let a = normalized(&map.random_element(&mut rng));
        let (r, m) = invertibility_residual(map, &a, m_max)?;
        if worst.as_ref().map_or(true, |w| r > w.residual) {
            worst = Some(InvWitness {
                trial,
                m,
                element: a,
                residual: r,
                source: "random",
            });
        }
    }
    let max_residual = worst.as_ref().map_or(0.0, |w| w.residual);
    Ok(InvertibilityReport {
        verdict: Verdict::from_ratio(max_residual / cfg.zero_rel_tol),
        max_residual,
        trials,
        m_max,
        seed: cfg.seed,
        witness: worst,
    })
}

#[derive(Debug, Clone)]
pub struct KInvReport {
    pub k: usize,
    pub verdict: Verdict,
    pub max_residual: f64,
    /// Worst element of `M_k(𝒜)`, from random sampling or the cyclic probe.
    pub witness: Option<InvWitness>,
    pub m_max: usize,
    pub trials: usize,
    pub seed: u64,
}

/// k-invertibility preservation: the invertibility check on `φ ⊗ id_k`, plus
/// a probe with cyclic shifts `u = Σ e_{i,i+1} ⊗ a_i` of random `a_i ∈ 𝒜`.
pub fn check_k_invertibility(
    map: &LinearMatrixMap,
    k: usize,
    trials: usize,
    cfg: &ToleranceConfig,
) -> Result<KInvReport> {
    let lift = tensor_lift(map, k)?;
    let m_max = lift.h() + lift.n();
    let inv = check_invertibility_preserving(&lift, Some(m_max), trials, cfg)?;
    let mut worst = inv.witness;
    if k > 1 {
        for trial in 0..trials {
            let mut rng = random::seeded_rng(cfg.seed, CYCLIC_STREAM + trial as u64);
            let parts: Vec<Matrix> = (0..k)
                .map(|_| normalized(&map.random_element(&mut rng)))
                .collect();
            let u = cyclic_shift_lift(&parts, k)?;
            let (r, m) = invertibility_residual(&lift, &u, m_max)?;
            if worst.as_ref().map_or(true, |w| r > w.residual) {
                worst = Some(InvWitness {
                    trial,
                    m,
                    element: normalized(&u),
                    residual: r,
                    source: "cyclic-shift",
                });
            }
        }
    }
    let max_residual = worst.as_ref().map_or(0.0, |w| w.residual);
    Ok(KInvReport {
        k,
        verdict: Verdict::from_ratio(max_residual / cfg.zero_rel_tol),
        max_residual,
        witness: worst,
        m_max,
        trials,
        seed: cfg.seed,
    })
}

/// Embeds an element of `M_k(𝒜)` into `M_{k+1}(𝒜)` as `a ⊕ I_h`, which
/// keeps any trace-identity defect.
pub fn embed_witness(element: &Matrix, h: usize) -> Matrix {
    numerics::direct_sum(element, &identity(h))
}

/// Replays a k-invertibility witness on `φ ⊗ id_k`.
pub fn replay_inv_witness(map: &LinearMatrixMap, k: usize, w: &InvWitness) -> Result<f64> {
    let lift = tensor_lift(map, k)?;
    Ok(invertibility_residual(&lift, &w.element, w.m)?.0)
}

fn sample_normalized(
    map: &LinearMatrixMap,
    seed: u64,
    stream: u64,
    count: usize,
) -> Vec<Matrix> {
    let mut rng = random::seeded_rng(seed, stream);
    (0..count)
        .map(|_| normalized(&map.random_element(&mut rng)))
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct Cor42Report {
    /// `tr φ(ab)` vs `tr φ(a)φ(b)`.
    pub residual_i: f64,
    /// `tr φ(a)^k φ(b)` vs `tr φ(a^k b)`, `k = 1..h`.
    pub residual_ii: f64,
    /// `det φ(a)φ(b)` vs `det φ(ab)`.
    pub residual_iii: f64,
    pub verdict: Verdict,
}

/// Trace and determinant identities that every unital
/// invertibility-preserving map satisfies, at random `a, b`.
pub fn corollary42_check(
    map: &LinearMatrixMap,
    trials: usize,
    cfg: &ToleranceConfig,
) -> Result<Cor42Report> {
    let nn = map.n();
    let denom = nn as f64 * (1.0 + map.op_norm);
    let (mut r1, mut r2, mut r3) = (0.0f64, 0.0f64, 0.0f64);
    for trial in 0..trials {
        let ab = sample_normalized(map, cfg.seed, IDENTITY_STREAM + trial as u64, 2);
        let (a, b) = (&ab[0], &ab[1]);
        let fa = map.apply(a)?;
        let fb = map.apply(b)?;
        let fab = map.apply(&(a * b))?;
        let ga = spectral_norm(&fa).max(1.0);
        let gb = spectral_norm(&fb).max(1.0);
        r1 = r1.max((fab.trace() - (&fa * &fb).trace()).norm() / (denom * ga * gb));

        let mut ak = identity(a.nrows());
        let mut fak = identity(nn);
        for kk in 1..=map.h() {
            ak = &ak * a;
            fak = &fak * fa.unscale(ga);
            let lhs = (&fak * &fb).trace();
            let rhs = map.apply(&(&ak * b))?.trace() / ga.powi(kk as i32);
            r2 = r2.max((lhs - rhs).norm() / (denom * gb));
        }

        let d1 = determinant(&(&fa * &fb))?;
        let d2 = determinant(&fab)?;
        let scale = (ga * gb).powi(nn as i32) + spectral_norm(&fab).max(1.0).powi(nn as i32);
        r3 = r3.max((d1 - d2).norm() / scale);
    }
    let worst = r1.max(r2).max(r3);
    Ok(Cor42Report {
        residual_i: r1,
        residual_ii: r2,
        residual_iii: r3,
        verdict: Verdict::from_ratio(worst / cfg.zero_rel_tol),
    })
}

#[derive(Debug, Clone, Copy)]
pub struct Prop48Report {
    /// `tr φ(a b^i c d^j)` vs `tr φ(a) φ(b)^i φ(c) φ(d)^j`.
    pub residual_i: f64,
    /// Exponents `(i, j)` of the worst case of (i).
    pub worst_ij: (usize, usize),
    /// `tr φ(ab)^i` vs `tr (φ(a)φ(b))^i`.
    pub residual_ii: f64,
    pub verdict: Verdict,
}

/// Trace identities satisfied by 2-invertibility-preserving maps, for
/// `i ≤ i_max`, `j ≤ j_max` (both default to `h`).
pub fn prop48_check(
    map: &LinearMatrixMap,
    i_max: Option<usize>,
    j_max: Option<usize>,
    trials: usize,
    cfg: &ToleranceConfig,
) -> Result<Prop48Report> {
    let i_max = i_max.unwrap_or(map.h());
    let j_max = j_max.unwrap_or(map.h());
    let nn = map.n();
    let denom = nn as f64 * (1.0 + map.op_norm);
    let mut r1 = 0.0f64;
    let mut worst_ij = (0, 0);
    let mut r2 = 0.0f64;
    for trial in 0..trials {
        let v = sample_normalized(map, cfg.seed, PROP48_STREAM + trial as u64, 4);
        let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
        let f: Vec<Matrix> = v.iter().map(|x| map.apply(x)).collect::<Result<_>>()?;
        let g: Vec<f64> = f.iter().map(|x| spectral_norm(x).max(1.0)).collect();
        let fs: Vec<Matrix> = f.iter().zip(&g).map(|(x, s)| x.unscale(*s)).collect();

        let mut bi = identity(a.nrows());
        let mut fbi = identity(nn);
        for i in 0..=i_max {
            if i > 0 {
                bi = &bi * b;
                fbi = &fbi * &fs[1];
            }
            let mut dj = identity(a.nrows());
            let mut fdj = identity(nn);
            for j in 0..=j_max {
                if j > 0 {
                    dj = &dj * d;
                    fdj = &fdj * &fs[3];
                }
                let word = a * &bi * c * &dj;
                let scale = g[0] * g[1].powi(i as i32) * g[2] * g[3].powi(j as i32);
                let lhs = map.apply(&word)?.trace() / scale;
                let rhs = (&fs[0] * &fbi * &fs[2] * &fdj).trace();
                let r = (lhs - rhs).norm() / denom;
                if r > r1 {
                    r1 = r;
                    worst_ij = (i, j);
                }
            }
        }

        let fab = map.apply(&(a * b))?;
        let gab = spectral_norm(&fab).max(g[0] * g[1]);
        let (p, q) = (fab.unscale(gab), (&f[0] * &f[1]).unscale(gab));
        let (mut pp, mut qq) = (identity(nn), identity(nn));
        for _ in 1..=i_max.max(1) {
            pp = &pp * &p;
            qq = &qq * &q;
            r2 = r2.max((pp.trace() - qq.trace()).norm() / denom);
        }
    }
    Ok(Prop48Report {
        residual_i: r1,
        worst_ij,
        residual_ii: r2,
        verdict: Verdict::from_ratio(r1.max(r2) / cfg.zero_rel_tol),
    })
}

#[derive(Debug, Clone)]
pub struct HomReport {
    pub verdict: Verdict,
    /// Worst domain basis pair `(i, j)` and its residual.
    pub witness: Option<(usize, usize, f64)>,
}

/// Generated algebra `ℬ` of the images of the base map.
pub fn image_algebra(map: &LinearMatrixMap, cfg: &ToleranceConfig) -> Result<GeneratedAlgebra> {
    let set = MatrixSet::from_matrices(map.images())?;
    generate_algebra(&set, cfg)
}

fn defect_check(
    map: &LinearMatrixMap,
    alg: &GeneratedAlgebra,
    jordan: bool,
    cfg: &ToleranceConfig,
) -> Result<HomReport> {
    let dom = map.domain_basis();
    let img = map.images();
    let mut verdict = Verdict::True;
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..dom.len() {
        let start = if jordan { i } else { 0 };
        for j in start..dom.len() {
            let (d, scale) = if jordan {
                let s = &dom[i] * &dom[j] + &dom[j] * &dom[i];
                let t = &img[i] * &img[j] + &img[j] * &img[i];
                let scale = 2.0 * (fro_norm(&img[i]) * fro_norm(&img[j]) + map.op_norm * fro_norm(&dom[i]) * fro_norm(&dom[j]));
                (map.apply(&s)? - t, scale)
            } else {
                let s = &dom[i] * &dom[j];
                let t = &img[i] * &img[j];
                let scale = fro_norm(&img[i]) * fro_norm(&img[j]) + map.op_norm * fro_norm(&dom[i]) * fro_norm(&dom[j]);
                (map.apply(&s)? - t, scale)
            };
            let m = algebra::radical_membership_scaled(&d, alg, scale, cfg)?;
            verdict = verdict.and(m.verdict);
            if worst.map_or(true, |w| m.residual > w.2) {
                worst = Some((i, j, m.residual));
            }
        }
    }
    Ok(HomReport {
        verdict,
        witness: worst,
    })
}

/// `φ(a_i a_j) - φ(a_i) φ(a_j) ∈ 𝒥(ℬ)` for all domain basis pairs.
pub fn hom_mod_radical_check(map: &LinearMatrixMap, cfg: &ToleranceConfig) -> Result<HomReport> {
    let alg = image_algebra(map, cfg)?;
    defect_check(map, &alg, false, cfg)
}

/// `φ(a_i a_j + a_j a_i) - (φ(a_i)φ(a_j) + φ(a_j)φ(a_i)) ∈ 𝒥(ℬ)`.
pub fn jordan_mod_radical_check(map: &LinearMatrixMap, cfg: &ToleranceConfig) -> Result<HomReport> {
    let alg = image_algebra(map, cfg)?;
    defect_check(map, &alg, true, cfg)
}

#[derive(Debug, Clone)]
pub struct MapReport {
    pub invertibility_preserving: InvertibilityReport,
    pub k_results: Vec<KInvReport>,
    pub hom_mod_radical: HomReport,
    pub jordan_mod_radical: HomReport,
    pub image_dim: usize,
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub defect: usize,
}

#[derive(Debug, Clone)]
pub struct MapOptions {
    pub k_list: Vec<usize>,
    pub m_max: Option<usize>,
    pub trials: usize,
}

impl Default for MapOptions {
    fn default() -> Self {
        Self {
            k_list: vec![1, 2],
            m_max: None,
            trials: DEFAULT_TRIALS,
        }
    }
}

pub fn analyze_map(
    map: &LinearMatrixMap,
    opts: &MapOptions,
    cfg: &ToleranceConfig,
) -> Result<MapReport> {
    let alg = image_algebra(map, cfg)?;
    let image_dim = span_basis(&map.images(), cfg)?.len();
    let invertibility_preserving = check_invertibility_preserving(map, opts.m_max, opts.trials, cfg)?;
    let k_results = opts
        .k_list
        .iter()
        .map(|&k| check_k_invertibility(map, k, opts.trials, cfg))
        .collect::<Result<_>>()?;
    let hom_mod_radical = defect_check(map, &alg, false, cfg)?;
    let jordan_mod_radical = defect_check(map, &alg, true, cfg)?;
    Ok(MapReport {
        invertibility_preserving,
        k_results,
        hom_mod_radical,
        jordan_mod_radical,
        image_dim,
        algebra_dim: alg.dim(),
        radical_dim: alg.radical_dim(),
        defect: alg.defect,
    })
}

/// Transposition on `M_n` with the matrix-unit basis (identity first).
pub fn transposition(n: usize, cfg: &ToleranceConfig) -> Result<LinearMatrixMap> {
    let mut domain = vec![identity(n)];
    let mut images = vec![identity(n)];
    for i in 0..n {
        for j in 0..n {
            if i == j && i == 0 {
                continue;
            }
            domain.push(matrix_unit(n, i, j));
            images.push(matrix_unit(n, j, i));
        }
    }
    LinearMatrixMap::new(domain, images, cfg)
}

/// Inner automorphism `a ↦ g a g⁻¹` on `M_n`.
pub fn inner_automorphism(g: &Matrix, cfg: &ToleranceConfig) -> Result<LinearMatrixMap> {
    let n = numerics::ensure_square(g)?;
    let gi = g
        .clone()
        .try_inverse()
        .ok_or_else(|| MatalgError::InvalidInput("conjugating matrix is singular".into()))?;
    let mut domain = vec![identity(n)];
    for i in 0..n {
        for j in 0..n {
            if !(i == 0 && j == 0) {
                domain.push(matrix_unit(n, i, j));
            }
        }
    }
    let images = domain.iter().map(|a| g * a * &gi).collect();
    LinearMatrixMap::new(domain, images, cfg)
}
