//! Named example matrices and maps.
//!
//! Rational entries are exact; `√3` is the nearest double.

use std::fmt;
use std::str::FromStr;

use crate::algebra::MatrixSet;
use crate::error::{MatalgError, Result};
use crate::maps::{self, LinearMatrixMap};
use crate::numerics::{
    c, diag, from_real_rows, identity, kron, matrix_unit, random, real_diag, Matrix,
    ToleranceConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExampleId {
    Example29,
    Wielandt31,
    Example43A,
    Example43B,
    Example43C,
    Remark47Witness,
    FriedlandPairSmoke,
}

impl ExampleId {
    pub const ALL: [ExampleId; 7] = [
        ExampleId::Example29,
        ExampleId::Wielandt31,
        ExampleId::Example43A,
        ExampleId::Example43B,
        ExampleId::Example43C,
        ExampleId::Remark47Witness,
        ExampleId::FriedlandPairSmoke,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleId::Example29 => "example_2_9",
            ExampleId::Wielandt31 => "wielandt_3_1",
            ExampleId::Example43A => "example_4_3a",
            ExampleId::Example43B => "example_4_3b",
            ExampleId::Example43C => "example_4_3c",
            ExampleId::Remark47Witness => "remark_4_7_witness",
            ExampleId::FriedlandPairSmoke => "friedland_pair_smoke",
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleId {
    type Err = MatalgError;

    fn from_str(s: &str) -> Result<Self> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| MatalgError::UnknownFixture(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub enum Fixture {
    Set(MatrixSet),
    Map(LinearMatrixMap),
    Matrix(Matrix),
}

pub fn fixture(id: ExampleId) -> Fixture {
    match id {
        ExampleId::Example29 => Fixture::Set(example_2_9()),
        ExampleId::Wielandt31 => Fixture::Set(wielandt_3_1()),
        ExampleId::Example43A => Fixture::Map(example_4_3a()),
        ExampleId::Example43B => Fixture::Map(example_4_3b()),
        ExampleId::Example43C => Fixture::Map(example_4_3c()),
        ExampleId::Remark47Witness => Fixture::Matrix(remark_4_7_witness()),
        ExampleId::FriedlandPairSmoke => Fixture::Set(friedland_pair_smoke()),
    }
}

pub fn fixture_by_name(name: &str) -> Result<Fixture> {
    Ok(fixture(name.parse()?))
}

fn pair(x: Matrix, y: Matrix) -> MatrixSet {
    MatrixSet::new(x.nrows(), vec![("x".into(), x), ("y".into(), y)]).expect("valid fixture")
}

/// `x = e21 + e32`, `y = e12 - e23`: every `λx + μy` is nilpotent.
pub fn wielandt_x() -> Matrix {
    from_real_rows(3, 3, &[0., 0., 0., 1., 0., 0., 0., 1., 0.])
}

pub fn wielandt_y() -> Matrix {
    from_real_rows(3, 3, &[0., 1., 0., 0., 0., -1., 0., 0., 0.])
}

pub fn wielandt_3_1() -> MatrixSet {
    pair(wielandt_x(), wielandt_y())
}

/// `x = diag(0, 2, 1 + i√3)`, `y` the cyclic permutation with ones at
/// (1,2), (2,3), (3,1).
pub fn example_2_9() -> MatrixSet {
    let x = diag(&[c(0.0, 0.0), c(2.0, 0.0), c(1.0, 3f64.sqrt())]);
    let y = from_real_rows(3, 3, &[0., 1., 0., 0., 0., 1., 1., 0., 0.]);
    pair(x, y)
}

/// `x = e11`, `y = e12 + e21`.
pub fn friedland_pair_smoke() -> MatrixSet {
    pair(matrix_unit(2, 0, 0), matrix_unit(2, 0, 1) + matrix_unit(2, 1, 0))
}

fn build(domain: Vec<Matrix>, images: Vec<Matrix>) -> LinearMatrixMap {
    LinearMatrixMap::new(domain, images, &ToleranceConfig::default()).expect("valid fixture")
}

fn diagonal_domain() -> Vec<Matrix> {
    vec![identity(3), real_diag(&[0., 1., 0.]), real_diag(&[0., 0., 1.])]
}

/// `Δ(a, b, c) ↦ diag(a, b, c) + (a - b) e23` on the diagonal algebra.
pub fn example_4_3a() -> LinearMatrixMap {
    let e23 = matrix_unit(3, 1, 2);
    let images = vec![
        identity(3),
        real_diag(&[0., 1., 0.]) - e23,
        real_diag(&[0., 0., 1.]),
    ];
    build(diagonal_domain(), images)
}

/// `Δ(a, b, c) ↦ aI + (b - a) x + (c - a) y` with the Wielandt pair.
pub fn example_4_3b() -> LinearMatrixMap {
    build(diagonal_domain(), vec![identity(3), wielandt_x(), wielandt_y()])
}

/// `((a, b), (c, d)) ↦ [[aI, bI], [cI, dI + (a - d) x + b y]]` on `M_2`,
/// with domain basis `I, e12, e21, e22`.
pub fn example_4_3c() -> LinearMatrixMap {
    let (x, y) = (wielandt_x(), wielandt_y());
    let block = |a: f64, b: f64, cc: f64, d: f64| -> Matrix {
        let lower = identity(3) * c(d, 0.0) + &x * c(a - d, 0.0) + &y * c(b, 0.0);
        let mut m = Matrix::zeros(6, 6);
        m.view_mut((0, 0), (3, 3)).copy_from(&(identity(3) * c(a, 0.0)));
        m.view_mut((0, 3), (3, 3)).copy_from(&(identity(3) * c(b, 0.0)));
        m.view_mut((3, 0), (3, 3)).copy_from(&(identity(3) * c(cc, 0.0)));
        m.view_mut((3, 3), (3, 3)).copy_from(&lower);
        m
    };
    let domain = vec![
        identity(2),
        matrix_unit(2, 0, 1),
        matrix_unit(2, 1, 0),
        matrix_unit(2, 1, 1),
    ];
    let images = vec![
        block(1., 0., 0., 1.),
        block(0., 1., 0., 0.),
        block(0., 0., 1., 0.),
        block(0., 0., 0., 1.),
    ];
    build(domain, images)
}

/// `e11⊗e11 + e21⊗e12 + e12⊗e21 + e22⊗e22`, invertible in `M_2(M_2)`.
pub fn remark_4_7_witness() -> Matrix {
    let e = |i, j| matrix_unit(2, i, j);
    let terms = [(e(0, 0), e(0, 0)), (e(1, 0), e(0, 1)), (e(0, 1), e(1, 0)), (e(1, 1), e(1, 1))];
    terms
        .iter()
        .map(|(p, q)| kron(p, q).expect("finite"))
        .fold(Matrix::zeros(4, 4), |acc, t| acc + t)
}

/// Transposition on `M_n`.
pub fn transpose_map(n: usize) -> LinearMatrixMap {
    maps::transposition(n, &ToleranceConfig::default()).expect("valid fixture")
}

/// Three diagonal 3×3 matrices.
pub fn diagonal_set() -> MatrixSet {
    MatrixSet::from_matrices(vec![
        real_diag(&[1., 2., 3.]),
        real_diag(&[4., 5., 6.]),
        real_diag(&[0., -1., 2.]),
    ])
    .expect("valid fixture")
}

/// `count` random upper-triangular `n × n` matrices conjugated by one random
/// unitary.
pub fn conjugated_triangular_set(seed: u64, n: usize, count: usize) -> MatrixSet {
    let mut rng = random::seeded_rng(seed, 0);
    let u = random::random_unitary(&mut rng, n);
    let mats = (0..count)
        .map(|_| &u * random::random_upper_triangular(&mut rng, n) * u.adjoint())
        .collect();
    MatrixSet::from_matrices(mats).expect("valid fixture")
}
