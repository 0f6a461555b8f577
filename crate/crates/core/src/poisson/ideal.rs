//! Graded closure of Poisson ideals in the fixed-locus coordinates.

use std::collections::{BTreeMap, VecDeque};


use crate::algebra::{Monomial, Q};
use crate::gklo::Shape;
use crate::relcheck::{Case, Outcome};

use super::{component, loop_degree, ModeAlgebra, PPoly, PVar};

/// Row-echelon basis of a subspace of homogeneous polynomials, keyed by
/// leading monomial.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: BTreeMap<Monomial<PVar>, PPoly>,
}

impl Echelon {
    /// Remainder of `p` with every pivot monomial eliminated.
    fn reduce(&self, p: &PPoly) -> PPoly {
        let mut rest = p.clone();
        let mut kept = Vec::new();
        // the leading monomial strictly decreases, so this terminates
        while let Some((m, c)) = rest.leading().cloned() {
            match self.rows.get(&m) {
                Some(row) => rest = &rest - &row.scale(&c),
                None => {
                    rest = &rest - &PPoly::monomial(m.clone(), c.clone());
                    kept.push((m, c));
                }
            }
        }
        PPoly::from_terms(kept)
    }

    /// Adds `p`; returns whether the span grew.
    fn insert(&mut self, p: &PPoly) -> bool {
        let r = self.reduce(p);
        let Some((m, c)) = r.leading().cloned() else {
            return false;
        };
        self.rows.insert(m, r.scale(&(Q::from(1) / c)));
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Result of a Poisson-ideal closure up to loop degree `order`.
#[derive(Clone, Debug)]
pub struct IdealClosure {
    pub n: usize,
    pub order: usize,
    /// `r_i` for `i = 1..n-1`.
    pub r: Vec<i64>,
    pub include_b: bool,
    /// Seeds as `(label, polynomial)`.
    pub seeds: Vec<(String, PPoly)>,
    /// Dimension of the ideal in each loop degree `0..=order`.
    pub dims: Vec<usize>,
    /// Number of Poisson generators found, including the seeds.
    pub generators: usize,
    spaces: Vec<Echelon>,
}

impl IdealClosure {
    /// Membership of a polynomial, checked degree by degree.
    pub fn contains(&self, p: &PPoly) -> bool {
        (0..=self.order).all(|d| {
            let c = component(p, d);
            c.is_zero() || self.spaces[d].reduce(&c).is_zero()
        })
            && p.terms().iter().all(|(m, _)| loop_degree(m) <= self.order)
    }
}

/// Monomials of loop degree `d` in the given variables.
fn monomials(vars: &[PVar], d: usize) -> Vec<Monomial<PVar>> {
    fn go(vars: &[PVar], d: usize, start: usize, acc: &mut Vec<(PVar, u32)>, out: &mut Vec<Monomial<PVar>>) {
        if d == 0 {
            out.push(Monomial::from_pairs(acc.clone()));
            return;
        }
        for idx in start..vars.len() {
            let w = vars[idx].mode();
            if w > d {
                continue;
            }
            acc.push((vars[idx], 1));
            go(vars, d - w, idx, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, d, 0, &mut Vec::new(), &mut out);
    out
}

/// Closure of the Poisson ideal generated by `A_i^(r)` for `r_i < r ≤ order`
/// and, when `include_b`, by `B_i^(r_i+1)` for even `r_i`. Brackets are
/// the Dirac brackets on the fixed-locus coordinates.
pub fn poisson_ideal_closure(n: usize, order: usize, r: &[i64], include_b: bool) -> IdealClosure {
    assert_eq!(r.len() + 1, n, "need r_i for i = 1..n-1");
    let alg = ModeAlgebra::new(n, order);
    let mut seeds = Vec::new();
    for i in 1..n {
        let ri = r[i - 1];
        for m in (ri + 1).max(1)..=order as i64 {
            let p = alg.a_mode(i, m as usize);
            if !p.is_zero() {
                seeds.push((format!("A{}^({})", i, m), p));
            }
        }
        if include_b && ri >= 0 && ri % 2 == 0 && (ri as usize) < order {
            let m = ri as usize + 1;
            let p = alg.b_mode(i, m);
            if !p.is_zero() {
                seeds.push((format!("B{}^({})", i, m), p));
            }
        }
    }
    let vars = alg.s_vars();
    let mono: Vec<Vec<Monomial<PVar>>> = (0..=order).map(|d| monomials(&vars, d)).collect();
    let mut spaces = vec![Echelon::default(); order + 1];
    let mut queue: VecDeque<PPoly> = VecDeque::new();
    let mut generators = 0;
    let add = |f: PPoly, spaces: &mut Vec<Echelon>, queue: &mut VecDeque<PPoly>| {
        let d = f.terms().first().map(|(m, _)| loop_degree(m)).unwrap_or(0);
        if d > order || !spaces[d].insert(&f) {
            return false;
        }
        for e in d + 1..=order {
            for m in &mono[e - d] {
                spaces[e].insert(&f.mul_monomial(m, &Q::from(1)));
            }
        }
        queue.push_back(f);
        true
    };
    for (_, f) in &seeds {
        for d in 0..=order {
            let c = component(f, d);
            if !c.is_zero() && add(c, &mut spaces, &mut queue) {
                generators += 1;
            }
        }
    }
    while let Some(f) = queue.pop_front() {
        let d = loop_degree(&f.terms()[0].0);
        for &x in &vars {
            if d + x.mode() - 1 > order {
                continue;
            }
            let h = alg.dirac(&PPoly::var(x), &f);
            if h.is_zero() {
                continue;
            }
            let dh = d + x.mode() - 1;
            let h = component(&h, dh);
            let red = spaces[dh].reduce(&h);
            if !red.is_zero() && add(red, &mut spaces, &mut queue) {
                generators += 1;
            }
        }
    }
    IdealClosure {
        n,
        order,
        r: r.to_vec(),
        include_b,
        seeds,
        dims: spaces.iter().map(Echelon::dim).collect(),
        generators,
        spaces,
    }
}

/// Evidence for the reducedness question at one data point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureEvidence {
    pub degree: usize,
    pub dim_without_b: usize,
    pub dim_with_b: usize,
}

impl ConjectureEvidence {
    /// Loop degree `r_1 + 1` at `n`, `order`, without and with the B-seeds.
    pub fn at(n: usize, order: usize, r: &[i64]) -> ConjectureEvidence {
        let degree = (r[0] + 1) as usize;
        let without = poisson_ideal_closure(n, order, r, false);
        let with = poisson_ideal_closure(n, order, r, true);
        ConjectureEvidence {
            degree,
            dim_without_b: without.dims[degree],
            dim_with_b: with.dims[degree],
        }
    }
}

/// `r_i = 2 m_i`, the orders above which `A_i^(r)` lies in the kernel for
/// an unshifted shape.
pub fn ideal_orders(shape: &Shape) -> Vec<i64> {
    shape.m.iter().map(|&m| 2 * m as i64).collect()
}

/// Coordinates the closure must contain: `S_ij^(m)` for even `m > r_1` and
/// for odd `m` with `m - 1 > r_1` even.
fn expected_members(alg: &ModeAlgebra, r1: i64) -> Vec<PVar> {
    alg.s_vars()
        .into_iter()
        .filter(|v| {
            let m = v.mode() as i64;
            (m % 2 == 0 && m > r1) || (m % 2 == 1 && m - 1 > r1 && (m - 1) % 2 == 0)
        })
        .collect()
}

/// Cases of the ideal-closure suite at `r = (r_1, …, r_{n-1})`.
pub fn ideal_cases(n: usize, order: usize, r: Vec<i64>) -> Vec<Case> {
    let r1 = r.clone();
    let r2 = r.clone();
    let r3 = r;
    vec![
        Case::new("ideal-closure/contains-high-modes", vec![], move || {
            let c = poisson_ideal_closure(n, order, &r1, false);
            let alg = ModeAlgebra::new(n, order);
            let missing: Vec<String> = expected_members(&alg, r1[0])
                .into_iter()
                .filter(|v| !c.contains(&PPoly::var(*v)))
                .map(|v| v.to_string())
                .collect();
            Ok(Outcome::Verdict(if missing.is_empty() {
                None
            } else {
                Some(format!("not in the ideal: {}", missing.join(", ")))
            }))
        }),
        Case::new("ideal-closure/dimensions", vec![], move || {
            let a = poisson_ideal_closure(n, order, &r2, false);
            let b = poisson_ideal_closure(n, order, &r2, true);
            Ok(Outcome::Note(format!("by loop degree: without B {:?}, with B {:?}", a.dims, b.dims)))
        }),
        Case::new("ideal-closure/b-degree-gap", vec![], move || {
            if r3[0] % 2 != 0 || r3[0] as usize + 1 > order {
                return Ok(Outcome::Note("r_1 odd or r_1 + 1 above N".to_string()));
            }
            let e = ConjectureEvidence::at(n, order, &r3);
            Ok(Outcome::Note(format!(
                "loop degree {}: dimension {} without B, {} with B",
                e.degree, e.dim_without_b, e.dim_with_b
            )))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        let alg = ModeAlgebra::new(2, 4);
        let vars = alg.s_vars();
        // weights: 1 -> S12; 2 -> S11,S12,S22; 3 -> S12; 4 -> three
        assert_eq!(monomials(&vars, 1).len(), 1);
        assert_eq!(monomials(&vars, 2).len(), 4);
        assert_eq!(monomials(&vars, 0).len(), 1);
    }

    #[test]
    fn no_generators_in_range_gives_zero_ideal() {
        let c = poisson_ideal_closure(2, 3, &[3], false);
        assert!(c.dims.iter().all(|&d| d == 0));
        assert!(c.seeds.is_empty());
    }

    #[test]
    fn echelon_reduces_members_to_zero() {
        let alg = ModeAlgebra::new(2, 4);
        let mut e = Echelon::default();
        let a = &alg.s(1, 1, 2) + &alg.s(2, 2, 2);
        let b = &alg.s(1, 1, 2) - &alg.s(1, 2, 2);
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        assert!(!e.insert(&(&a - &b)));
        assert!(e.reduce(&(&a + &b)).is_zero());
        assert!(!e.reduce(&alg.s(1, 1, 2)).is_zero());
    }
}
