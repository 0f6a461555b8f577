//! Poisson algebra of truncated loop-group matrix modes, τ-minors and
//! the reduced brackets on the τ-fixed locus.

mod checks;
mod classical;
mod ideal;
mod minors;

use std::fmt;

use num_traits::One;

use crate::algebra::{q, qr, Poly, Q};

pub use checks::{
    check_identity, divided_mode, fit_constant, ideal_proof_identity, identity_cases, rtt_constant, rtt_mode, BracketPath, Identity, PathBracket,
    PathConstant,
};
pub use classical::{classical_gklo_eval, AbcVar};
pub use ideal::{ideal_cases, ideal_orders, poisson_ideal_closure, ConjectureEvidence, IdealClosure};
pub use minors::{minor_from_series, trailing, Series};

/// Variables of the Poisson polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PVar {
    /// `g_{ij}^{(r)}`, `r ≥ 1`.
    G(u8, u8, u8),
    /// Coordinate `Δ^τ_{ab}^{(r)}` on the τ-fixed locus, stored with `a ≤ b`.
    S(u8, u8, u8),
}

impl PVar {
    pub fn mode(self) -> usize {
        match self {
            PVar::G(_, _, r) | PVar::S(_, _, r) => r as usize,
        }
    }
}

impl fmt::Display for PVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PVar::G(i, j, r) => write!(f, "g{}{}^({})", i, j, r),
            PVar::S(i, j, r) => write!(f, "S{}{}^({})", i, j, r),
        }
    }
}

pub type PPoly = Poly<PVar>;

/// Overall sign of the generator bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketSign {
    /// `{Δ_ij(u), Δ_kl(v)} = (Δ_il(u)Δ_kj(v) - Δ_kj(u)Δ_il(v))/(u-v)`.
    Standard,
    /// The negative; `{g_12^(1), g_21^(1)} = g_11^(1) - g_22^(1)`.
    Opposite,
}

/// Loop loss of a Poisson bracket: `{x^(a), y^(b)}` has loop degree `a + b - 1`.
pub fn bracket_degree(a: usize, b: usize) -> usize {
    a + b - 1
}

fn delta(i: usize, j: usize) -> PPoly {
    if i == j {
        PPoly::one()
    } else {
        PPoly::zero()
    }
}

fn sign(r: usize) -> Q {
    if r % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// Sum over `{x_a, y_b}` of `∂p/∂x_a ∂q/∂y_b {x_a, y_b}`.
pub fn leibniz(p: &PPoly, q: &PPoly, gen: impl Fn(PVar, PVar) -> PPoly) -> PPoly {
    let mut acc = PPoly::zero();
    let qv = q.vars();
    for x in p.vars() {
        let dp = p.derivative(x);
        for &y in &qv {
            let b = gen(x, y);
            if b.is_zero() {
                continue;
            }
            acc = &acc + &(&dp * &(&q.derivative(y) * &b));
        }
    }
    acc
}

/// Modes of `g(z) = Id + Σ_{1≤r≤order} g^(r) z^{-r}` for `n × n` matrices,
/// with the bracket induced from the minor-bracket formula. Modes above
/// `order` are zero.
#[derive(Clone, Debug)]
pub struct ModeAlgebra {
    pub n: usize,
    pub order: usize,
    sign: Q,
}

impl ModeAlgebra {
    pub fn new(n: usize, order: usize) -> Self {
        Self::with_sign(n, order, BracketSign::Standard)
    }

    pub fn with_sign(n: usize, order: usize, s: BracketSign) -> Self {
        assert!(n >= 1 && n <= 9, "matrix size out of range");
        assert!(order <= 60, "truncation order out of range");
        let sign = match s {
            BracketSign::Standard => q(1),
            BracketSign::Opposite => q(-1),
        };
        ModeAlgebra { n, order, sign }
    }

    /// `±1` in front of the minor-bracket formula.
    pub fn sign_factor(&self) -> Q {
        self.sign.clone()
    }

    pub fn bracket_sign(&self) -> BracketSign {
        if self.sign.is_one() {
            BracketSign::Standard
        } else {
            BracketSign::Opposite
        }
    }

    /// `g_{ij}^{(r)}`; `δ_ij` at `r = 0`.
    pub fn g(&self, i: usize, j: usize, r: usize) -> PPoly {
        if r == 0 {
            delta(i, j)
        } else if r > self.order {
            PPoly::zero()
        } else {
            PPoly::var(PVar::G(i as u8, j as u8, r as u8))
        }
    }

    /// `Δ^τ_{ij}^{(r)}` as a coordinate on the fixed locus, using
    /// `Δ^τ_{ji}^{(r)} = (-1)^r Δ^τ_{ij}^{(r)}`.
    pub fn s(&self, i: usize, j: usize, r: usize) -> PPoly {
        if r == 0 {
            return delta(i, j);
        }
        if r > self.order || (i == j && r % 2 == 1) {
            return PPoly::zero();
        }
        if i <= j {
            PPoly::var(PVar::S(i as u8, j as u8, r as u8))
        } else {
            PPoly::var(PVar::S(j as u8, i as u8, r as u8)).scale(&sign(r))
        }
    }

    pub fn g_vars(&self) -> Vec<PVar> {
        let mut out = Vec::new();
        for r in 1..=self.order {
            for i in 1..=self.n {
                for j in 1..=self.n {
                    out.push(PVar::G(i as u8, j as u8, r as u8));
                }
            }
        }
        out
    }

    /// Nonzero fixed-locus coordinates.
    pub fn s_vars(&self) -> Vec<PVar> {
        let mut out = Vec::new();
        for r in 1..=self.order {
            for i in 1..=self.n {
                for j in i..=self.n {
                    if i != j || r % 2 == 0 {
                        out.push(PVar::S(i as u8, j as u8, r as u8));
                    }
                }
            }
        }
        out
    }

    /// `{g_ij^(r), g_kl^(t)}`.
    pub fn mode_bracket(&self, a: PVar, b: PVar) -> PPoly {
        let (PVar::G(i, j, r), PVar::G(k, l, t)) = (a, b) else {
            panic!("mode_bracket takes g-modes");
        };
        let (i, j, r, k, l, t) = (i as usize, j as usize, r as usize, k as usize, l as usize, t as usize);
        let top = r + t - 1;
        let mut acc = PPoly::zero();
        for x in 0..r.min(t) {
            let y = top - x;
            acc = &acc + &(&self.g(i, l, x) * &self.g(k, j, y));
            acc = &acc - &(&self.g(i, l, y) * &self.g(k, j, x));
        }
        acc.scale(&self.sign)
    }

    /// Bracket of two polynomials in g-modes.
    pub fn bracket(&self, p: &PPoly, q: &PPoly) -> PPoly {
        leibniz(p, q, |x, y| self.mode_bracket(x, y))
    }

    /// `τ^* g_ij^(r) = (-1)^r g_ji^(r)`, extended as an algebra map.
    pub fn tau_star(&self, p: &PPoly) -> PPoly {
        let assign: Vec<(PVar, PPoly)> = p
            .vars()
            .into_iter()
            .map(|v| match v {
                PVar::G(i, j, r) => (v, self.g(j as usize, i as usize, r as usize).scale(&sign(r as usize))),
                PVar::S(..) => (v, PPoly::var(v)),
            })
            .collect();
        p.substitute(&assign)
    }

    /// `s_ij^(r) = Σ_k Σ_{a+b=r} (-1)^a g_ki^(a) g_kj^(b)`, the `z^{-r}`
    /// coefficient of `(g(-z)^t g(z))_ij` in g-modes.
    pub fn s_lift(&self, i: usize, j: usize, r: usize) -> PPoly {
        let mut acc = PPoly::zero();
        for k in 1..=self.n {
            for a in 0..=r {
                let t = &self.g(k, i, a) * &self.g(k, j, r - a);
                acc = &acc + &t.scale(&sign(a));
            }
        }
        acc
    }

    /// Restriction of a g-mode polynomial to the locus `τ(g) = g`.
    pub fn restrict(&self, p: &PPoly) -> PPoly {
        let assign: Vec<(PVar, PPoly)> = p
            .vars()
            .into_iter()
            .map(|v| match v {
                PVar::G(i, j, r) => (v, self.s(i as usize, j as usize, r as usize)),
                PVar::S(..) => (v, PPoly::var(v)),
            })
            .collect();
        p.substitute(&assign)
    }

    /// `{Δ^τ_ab^(r), Δ^τ_cd^(t)}_τ = ½({g_ab^(r), g_cd^(t)} + {τ^* g_ab^(r), g_cd^(t)})`
    /// restricted to the fixed locus.
    pub fn dirac_gen(&self, a: PVar, b: PVar) -> PPoly {
        let (PVar::S(i, j, r), PVar::S(k, l, t)) = (a, b) else {
            panic!("dirac_gen takes fixed-locus coordinates");
        };
        let x = PVar::G(i, j, r);
        let xt = PVar::G(j, i, r);
        let y = PVar::G(k, l, t);
        let sum = &self.mode_bracket(x, y) + &self.mode_bracket(xt, y).scale(&sign(r as usize));
        self.restrict(&sum).scale(&qr(1, 2))
    }

    /// Dirac bracket of two polynomials in fixed-locus coordinates.
    pub fn dirac(&self, p: &PPoly, q: &PPoly) -> PPoly {
        leibniz(p, q, |x, y| self.dirac_gen(x, y))
    }

    /// `½({f, g} + {τ^* f, g})` for g-mode lifts `f`, `g`.
    pub fn dirac_lifted(&self, f: &PPoly, g: &PPoly) -> PPoly {
        let a = self.bracket(f, g);
        let b = self.bracket(&self.tau_star(f), g);
        (&a + &b).scale(&qr(1, 2))
    }

    /// g-modes on the slice where `g^(r)` is upper triangular (strictly so
    /// for odd `r`), written in fixed-locus coordinates. On the slice the
    /// map `g ↦ g(-z)^t g(z)` is triangular and inverts mode by mode.
    pub fn slice_inverse(&self) -> Vec<(PVar, PPoly)> {
        let mut sol: Vec<(PVar, PPoly)> = Vec::new();
        for r in 1..=self.order {
            for i in 1..=self.n {
                for j in 1..=self.n {
                    let v = PVar::G(i as u8, j as u8, r as u8);
                    if i > j || (i == j && r % 2 == 1) {
                        sol.push((v, PPoly::zero()));
                        continue;
                    }
                    // s_ij^(r) = g_ij^(r) + (-1)^r g_ji^(r) + lower
                    let mut lower = PPoly::zero();
                    for k in 1..=self.n {
                        for a in 1..r {
                            let t = &self.g(k, i, a) * &self.g(k, j, r - a);
                            lower = &lower + &t.scale(&sign(a));
                        }
                    }
                    let lower = lower.substitute(&sol);
                    let lead = if i == j { q(2) } else { q(1) };
                    let val = (&self.s(i, j, r) - &lower).scale(&(Q::one() / lead));
                    sol.push((v, val));
                }
            }
        }
        sol
    }

    /// Rewrites a g-mode polynomial as a polynomial in the `s_ij^(r)`,
    /// returned in fixed-locus coordinates. `None` when `p` is not in the
    /// subalgebra generated by the `s_ij^(r)` (up to the truncation order).
    pub fn reexpress(&self, p: &PPoly, slice: &[(PVar, PPoly)]) -> Option<PPoly> {
        let cand = p.substitute(slice);
        let back: Vec<(PVar, PPoly)> = cand
            .vars()
            .into_iter()
            .map(|v| match v {
                PVar::S(a, b, r) => (v, self.s_lift(a as usize, b as usize, r as usize)),
                PVar::G(..) => (v, PPoly::var(v)),
            })
            .collect();
        let check = &cand.substitute(&back) - p;
        if truncate(&check, self.order).is_zero() {
            Some(cand)
        } else {
            None
        }
    }

    /// Quotient bracket `{Δ^τ_ab^(r), Δ^τ_cd^(t)}` computed on the lifts
    /// `s_ab^(r)`, `s_cd^(t)` and rewritten in fixed-locus coordinates.
    pub fn quotient_gen(&self, a: PVar, b: PVar, slice: &[(PVar, PPoly)]) -> Option<PPoly> {
        let (PVar::S(i, j, r), PVar::S(k, l, t)) = (a, b) else {
            panic!("quotient_gen takes fixed-locus coordinates");
        };
        let f = self.s_lift(i as usize, j as usize, r as usize);
        let g = self.s_lift(k as usize, l as usize, t as usize);
        self.reexpress(&self.bracket(&f, &g), slice)
    }
}

/// Drops every term of loop degree above `order`.
pub fn truncate(p: &PPoly, order: usize) -> PPoly {
    PPoly::from_terms(
        p.terms()
            .iter()
            .filter(|(m, _)| loop_degree(m) <= order)
            .cloned()
            .collect(),
    )
}

/// Sum of the modes in a monomial, with multiplicity.
pub fn loop_degree(m: &crate::algebra::Monomial<PVar>) -> usize {
    m.pairs().iter().map(|&(v, e)| v.mode() * e as usize).sum()
}

/// Homogeneous component of loop degree `d`.
pub fn component(p: &PPoly, d: usize) -> PPoly {
    PPoly::from_terms(p.terms().iter().filter(|(m, _)| loop_degree(m) == d).cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u8, j: u8, r: u8) -> PVar {
        PVar::G(i, j, r)
    }

    #[test]
    fn generator_examples() {
        // a = 0 term of the extraction: δ_11 g_22^(1) - g_11^(1) δ_22
        let m = ModeAlgebra::new(2, 3);
        let b = m.mode_bracket(g(1, 2, 1), g(2, 1, 1));
        assert_eq!(b, &m.g(2, 2, 1) - &m.g(1, 1, 1));
        assert!(m.mode_bracket(g(1, 1, 1), g(1, 1, 1)).is_zero());
        assert!(m.mode_bracket(g(1, 1, 1), g(2, 2, 1)).is_zero());
        let o = ModeAlgebra::with_sign(2, 3, BracketSign::Opposite);
        assert_eq!(o.mode_bracket(g(1, 2, 1), g(2, 1, 1)), &m.g(1, 1, 1) - &m.g(2, 2, 1));
    }

    #[test]
    fn tau_star_examples() {
        let m = ModeAlgebra::new(2, 3);
        assert_eq!(m.tau_star(&m.g(1, 2, 1)), -m.g(2, 1, 1));
        assert_eq!(m.tau_star(&m.g(1, 1, 2)), m.g(1, 1, 2));
    }

    #[test]
    fn s_lift_examples() {
        let m = ModeAlgebra::new(3, 3);
        assert_eq!(m.s_lift(1, 2, 1), &m.g(1, 2, 1) - &m.g(2, 1, 1));
        assert!(m.s_lift(2, 2, 1).is_zero());
        assert!(m.s_lift(3, 3, 3).is_zero());
        assert_eq!(m.s_lift(2, 1, 2), m.s_lift(1, 2, 2));
        assert_eq!(m.s_lift(2, 1, 3), -m.s_lift(1, 2, 3));
    }

    #[test]
    fn slice_inverts_lift() {
        let m = ModeAlgebra::new(3, 3);
        let slice = m.slice_inverse();
        for v in m.s_vars() {
            let PVar::S(a, b, r) = v else { unreachable!() };
            let lift = m.s_lift(a as usize, b as usize, r as usize);
            assert_eq!(m.reexpress(&lift, &slice), Some(PPoly::var(v)));
        }
        // g_12^(1) alone is not a function of the s-modes
        assert_eq!(m.reexpress(&m.g(1, 2, 1), &slice), None);
    }
}
