use super::{Scalar, ONE, ZERO};

/// Univariate polynomial with complex coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    /// Trailing exact zeros are dropped so the leading coefficient is nonzero
    /// (the zero polynomial has no coefficients).
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![ONE] }
    }

    /// `∏ (t - r)` over the given roots.
    pub fn from_roots(roots: &[Scalar]) -> Self {
        let mut coeffs = vec![ONE];
        for &r in roots {
            coeffs.push(ZERO);
            for i in (1..coeffs.len()).rev() {
                coeffs[i] = coeffs[i - 1] - r * coeffs[i];
            }
            coeffs[0] = -r * coeffs[0];
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Scalar> {
        self.coeffs.last().copied()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => Self {
                coeffs: self.coeffs.iter().map(|&x| x / l).collect(),
            },
            None => Self::zero(),
        }
    }

    pub fn eval(&self, t: Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(ZERO, |acc, &x| acc * t + x)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Substitutes `t -> t / rho` and multiplies by `rho^deg`, i.e. rescales
    /// the roots by `1 / rho`.
    pub fn scale_roots(&self, rho: f64) -> Polynomial {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &x)| x / rho.powi((deg - i) as i32))
            .collect();
        Self { coeffs }
    }

    /// Distance between two monic polynomials of equal degree whose roots lie
    /// in the unit disc: `max_j |Δc_{N-j}| / C(N, j)`. `C(N, j)` bounds the
    /// `j`-th elementary symmetric function of `N` roots of modulus ≤ 1, so the
    /// result is a relative measure that is rounding-level for equal spectra.
    /// Returns `f64::INFINITY` if the degrees differ.
    pub fn normalized_distance(&self, other: &Polynomial) -> f64 {
        let (Some(n), Some(m)) = (self.degree(), other.degree()) else {
            return if self.is_zero() && other.is_zero() {
                0.0
            } else {
                f64::INFINITY
            };
        };
        if n != m {
            return f64::INFINITY;
        }
        let a = self.monic();
        let b = other.monic();
        (0..=n)
            .map(|i| {
                let j = n - i;
                (a.coeffs[i] - b.coeffs[i]).norm() / binomial(n, j)
            })
            .fold(0.0, f64::max)
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;

    #[test]
    fn from_roots_expands() {
        let p = Polynomial::from_roots(&[c(1.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(p.coeffs(), &[c(2.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(p.eval(c(2.0, 0.0)), ZERO);
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        let p = Polynomial::new(vec![ZERO, ZERO]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn multiplication_matches_roots() {
        let a = Polynomial::from_roots(&[c(1.0, 1.0)]);
        let b = Polynomial::from_roots(&[c(0.0, -2.0), c(3.0, 0.0)]);
        let ab = Polynomial::from_roots(&[c(1.0, 1.0), c(0.0, -2.0), c(3.0, 0.0)]);
        assert!(a.mul(&b).normalized_distance(&ab) < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
    }
}
