use std::fmt;

use crate::algebra::{MultiPoly, VarId, Q};
use crate::error::{Error, Result};

/// Root parameters `r_{i,k}` of the polynomials `R_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Roots {
    Symbolic,
    /// `values[i-1]` holds the `λ_i` roots of node `i`.
    Rational(Vec<Vec<Q>>),
}

/// The datum `(n, λ, μ)` with `λ - μ = Σ m_i α_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub n: usize,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub m: Vec<usize>,
    pub roots: Roots,
    /// Top power of `u` in `h_i(u)`, for `i = 1..n`.
    pub leading_power: Vec<i64>,
}

impl Shape {
    pub fn new(n: usize, lambda: &[i64], mu: &[i64], roots: Roots) -> Result<Shape> {
        if n < 2 {
            return Err(Error::Shape("n must be at least 2".into()));
        }
        if lambda.len() != n - 1 || mu.len() != n - 1 {
            return Err(Error::Shape(format!("lambda and mu need {} coordinates", n - 1)));
        }
        if lambda.iter().chain(mu).any(|&x| x < 0) {
            return Err(Error::Shape("lambda and mu must be dominant".into()));
        }
        // m = C^{-1}(λ-μ), with C^{-1}_{ij} = min(i,j)(n-max(i,j))/n for type A.
        let nn = n as i64;
        let mut m = Vec::with_capacity(n - 1);
        for i in 1..n as i64 {
            let mut s = 0i64;
            for j in 1..n as i64 {
                s += i.min(j) * (nn - i.max(j)) * (lambda[j as usize - 1] - mu[j as usize - 1]);
            }
            if s % nn != 0 || s < 0 {
                return Err(Error::Shape("mu not ≤ lambda".into()));
            }
            m.push((s / nn) as usize);
        }
        let get = |v: &Vec<usize>, i: i64| -> i64 {
            if i >= 1 && (i as usize) <= v.len() {
                v[i as usize - 1] as i64
            } else {
                0
            }
        };
        for i in 1..n as i64 {
            let lhs = lambda[i as usize - 1] - mu[i as usize - 1];
            let rhs = 2 * get(&m, i) - get(&m, i - 1) - get(&m, i + 1);
            if lhs != rhs {
                return Err(Error::Internal("λ_i - μ_i ≠ 2m_i - Σ m_j".into()));
            }
        }
        if let Roots::Rational(vals) = &roots {
            if vals.len() != n - 1 || vals.iter().zip(lambda).any(|(v, &l)| v.len() as i64 != l) {
                return Err(Error::Shape("root count must match lambda".into()));
            }
        }
        let mut leading_power = Vec::with_capacity(n);
        let m1 = m[0] as i64;
        for i in 1..=n {
            let s: i64 = mu.iter().take(i - 1).sum();
            leading_power.push(-2 * m1 + 2 * s);
        }
        Ok(Shape {
            n,
            lambda: lambda.to_vec(),
            mu: mu.to_vec(),
            m,
            roots,
            leading_power,
        })
    }

    pub fn symbolic(n: usize, lambda: &[i64], mu: &[i64]) -> Result<Shape> {
        Shape::new(n, lambda, mu, Roots::Symbolic)
    }

    /// `m_i`, zero outside `1..n-1`.
    pub fn m(&self, i: usize) -> usize {
        if i >= 1 && i < self.n {
            self.m[i - 1]
        } else {
            0
        }
    }

    pub fn lambda_i(&self, i: usize) -> usize {
        if i >= 1 && i < self.n {
            self.lambda[i - 1] as usize
        } else {
            0
        }
    }

    pub fn is_unshifted(&self) -> bool {
        self.mu.iter().all(|&x| x == 0)
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n - 1
    }

    /// Cartan entry `a_{ij}` of type `A_{n-1}`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    }

    /// `r_{i,k}` as a polynomial.
    pub fn root(&self, i: usize, k: usize) -> MultiPoly {
        match &self.roots {
            Roots::Symbolic => MultiPoly::var(VarId::root(i, k)),
            Roots::Rational(v) => MultiPoly::constant(v[i - 1][k - 1].clone()),
        }
    }

    /// All `(i,k)` with `m_i ≥ 1`.
    pub fn gamma_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in self.nodes() {
            for k in 1..=self.m(i) {
                out.push((i, k));
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let fmt = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("n={} λ=({}) μ=({})", self.n, fmt(&self.lambda), fmt(&self.mu))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The shapes used by the acceptance suite.
pub fn test_matrix() -> Vec<Shape> {
    [
        (2, vec![2], vec![0]),
        (2, vec![4], vec![0]),
        (2, vec![2], vec![2]),
        (3, vec![1, 1], vec![0, 0]),
        (3, vec![2, 2], vec![0, 0]),
        (3, vec![2, 2], vec![1, 1]),
        (4, vec![1, 0, 1], vec![0, 0, 0]),
    ]
    .into_iter()
    .map(|(n, l, m)| Shape::symbolic(n, &l, &m).expect("matrix shapes are valid"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_values_of_the_matrix() {
        let ms: Vec<Vec<usize>> = test_matrix().into_iter().map(|s| s.m).collect();
        assert_eq!(
            ms,
            vec![
                vec![1],
                vec![2],
                vec![0],
                vec![1, 1],
                vec![2, 2],
                vec![1, 1],
                vec![1, 1, 1]
            ]
        );
    }

    #[test]
    fn rejects_mu_above_lambda() {
        assert!(Shape::symbolic(2, &[0], &[1]).is_err());
        assert!(Shape::symbolic(2, &[1], &[0]).is_err());
        assert!(Shape::symbolic(2, &[0], &[2]).is_err());
    }

    #[test]
    fn rejects_wrong_root_count() {
        let r = Roots::Rational(vec![vec![crate::algebra::q(1)]]);
        assert!(Shape::new(2, &[2], &[0], r).is_err());
    }

    #[test]
    fn leading_power_sums_earlier_mu() {
        let s = Shape::symbolic(3, &[2, 2], &[1, 1]).unwrap();
        assert_eq!(s.leading_power, vec![-2, 0, 2]);
    }
}
