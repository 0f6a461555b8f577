//! Truncated matrix series and their minors.

use super::{ModeAlgebra, PPoly};

/// `Σ_{r ≤ order} c_r z^{-r}` as the coefficient list `[c_0, …, c_order]`.
pub type Series = Vec<PPoly>;

pub(crate) fn series_mul(a: &Series, b: &Series, order: usize) -> Series {
    let mut out = vec![PPoly::zero(); order + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

pub(crate) fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if left.is_empty() {
            out.push((prefix.clone(), odd));
            return;
        }
        for idx in 0..left.len() {
            let x = left.remove(idx);
            prefix.push(x);
            go(prefix, left, odd ^ (idx % 2 == 1), out);
            prefix.pop();
            left.insert(idx, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..k).collect(), false, &mut out);
    out
}

/// Determinant of the `rows × cols` submatrix of a matrix of series,
/// by Leibniz expansion, truncated at `order`.
pub fn minor_from_series(entry: &dyn Fn(usize, usize) -> Series, rows: &[usize], cols: &[usize], order: usize) -> Series {
    assert_eq!(rows.len(), cols.len(), "minor needs equally many rows and columns");
    let mut total = vec![PPoly::zero(); order + 1];
    for (perm, odd) in permutations(rows.len()) {
        let mut prod: Series = vec![PPoly::zero(); order + 1];
        prod[0] = PPoly::one();
        for (a, &p) in perm.iter().enumerate() {
            prod = series_mul(&prod, &entry(rows[a], cols[p]), order);
        }
        for (t, c) in total.iter_mut().zip(prod) {
            *t = if odd { &*t - &c } else { &*t + &c };
        }
    }
    total
}

/// `{n-i+1, …, n}`.
pub fn trailing(n: usize, i: usize) -> Vec<usize> {
    (n + 1 - i..=n).collect()
}

impl ModeAlgebra {
    pub fn g_series(&self, i: usize, j: usize) -> Series {
        (0..=self.order).map(|r| self.g(i, j, r)).collect()
    }

    /// Entry of `S(z)` in fixed-locus coordinates.
    pub fn s_series(&self, i: usize, j: usize) -> Series {
        (0..=self.order).map(|r| self.s(i, j, r)).collect()
    }

    /// Entry of `g(-z)^t g(z)` in g-modes.
    pub fn s_lift_series(&self, i: usize, j: usize) -> Series {
        (0..=self.order).map(|r| self.s_lift(i, j, r)).collect()
    }

    /// `Δ_IJ` of `g(z)`.
    pub fn minor_g(&self, rows: &[usize], cols: &[usize]) -> Series {
        minor_from_series(&|i, j| self.g_series(i, j), rows, cols, self.order)
    }

    /// `Δ^τ_IJ` in fixed-locus coordinates.
    pub fn tau_minor(&self, rows: &[usize], cols: &[usize]) -> Series {
        minor_from_series(&|i, j| self.s_series(i, j), rows, cols, self.order)
    }

    /// `Δ^τ_IJ^(r)` in fixed-locus coordinates.
    pub fn tau_minor_mode(&self, rows: &[usize], cols: &[usize], r: usize) -> PPoly {
        self.tau_minor(rows, cols).swap_remove(r)
    }

    /// `Δ^τ_IJ` as a function of `g`, i.e. the minor of `g(-z)^t g(z)`.
    pub fn tau_minor_lifted(&self, rows: &[usize], cols: &[usize]) -> Series {
        minor_from_series(&|i, j| self.s_lift_series(i, j), rows, cols, self.order)
    }

    /// `A_i^(r)`, the trailing principal `i × i` τ-minor.
    pub fn a_mode(&self, i: usize, r: usize) -> PPoly {
        let t = trailing(self.n, i);
        self.tau_minor_mode(&t, &t, r)
    }

    /// `B_i^(r)`: rows `{n-i+1, …, n}`, columns `{n-i, n-i+2, …, n}`.
    pub fn b_mode(&self, i: usize, r: usize) -> PPoly {
        let rows = trailing(self.n, i);
        let mut cols = vec![self.n - i];
        cols.extend(self.n + 2 - i..=self.n);
        self.tau_minor_mode(&rows, &cols, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::PPoly;

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        let odd = p.iter().filter(|x| x.1).count();
        assert_eq!(odd, 3);
        assert!(p.contains(&(vec![1, 0, 2], true)));
        assert!(p.contains(&(vec![1, 2, 0], false)));
    }

    #[test]
    fn minor_of_identity_mode_zero() {
        let m = ModeAlgebra::new(3, 2);
        for i in 1..=3 {
            assert_eq!(m.a_mode(i, 0), PPoly::one());
        }
        assert!(m.b_mode(1, 0).is_zero());
    }

    #[test]
    fn one_by_one_tau_minor_is_the_coordinate() {
        let m = ModeAlgebra::new(3, 3);
        assert_eq!(m.tau_minor_mode(&[2], &[1], 3), m.s(2, 1, 3));
        assert_eq!(m.tau_minor_lifted(&[1], &[2])[1], m.s_lift(1, 2, 1));
    }
}
