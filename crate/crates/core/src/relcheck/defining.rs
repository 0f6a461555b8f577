use std::sync::Arc;

use crate::algebra::{q, qr, MultiPoly, RatFunc, VarId};
use crate::diffop::DiffOp;
use crate::error::Result;
use crate::gklo::{plus_hb, spec, Gklo};

use super::{Case, Outcome};

fn u() -> MultiPoly {
    spec(VarId::U)
}

fn v() -> MultiPoly {
    spec(VarId::V)
}

fn hbar() -> MultiPoly {
    MultiPoly::var(VarId::Hbar)
}

/// `ħ / p` as a scalar coefficient.
fn hb_over(p: &MultiPoly) -> RatFunc {
    RatFunc::frac(hbar(), p).expect("nonzero spectral denominator")
}

pub(super) fn z_even(g: &Arc<Gklo>) -> Vec<Case> {
    g.shape
        .nodes()
        .map(|i| {
            let g = g.clone();
            Case::zero("z-even", vec![i], move || {
                Ok(&g.phi_z(i, &u())? - &g.phi_z(i, &-u())?)
            })
        })
        .collect()
}

pub(super) fn h_h(g: &Arc<Gklo>) -> Vec<Case> {
    let n = g.shape.n;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let g = g.clone();
            out.push(Case::zero("h-h", vec![i, j], move || {
                Ok(g.phi_h(i, &u()).comm(&g.phi_h(j, &v())))
            }));
        }
    }
    out
}

/// `LHS - RHS` of the h-b relation.
pub(crate) fn h_b_difference(g: &Gklo, i: usize, j: usize) -> DiffOp {
    let (u, v) = (u(), v());
    let h = g.phi_h(i, &u);
    let lhs = h.comm(&g.phi_b(j, &v));
    let mut rhs = DiffOp::zero();
    if i == j {
        let t1 = (&g.phi_b(i, &plus_hb(&u, qr(1, 2))) - &g.phi_b(i, &v)).mul(&h);
        rhs = &rhs + &t1.scale_left(&hb_over(&plus_hb(&(&u - &v), qr(1, 2))));
        let t2 = h.mul(&(&g.phi_b(i, &v) - &g.phi_b(i, &plus_hb(&-&u, qr(-1, 2)))));
        rhs = &rhs + &t2.scale_left(&hb_over(&plus_hb(&(&u + &v), qr(1, 2))));
    }
    if i == j + 1 {
        let t3 = h.mul(&(&g.phi_b(j, &-&u) - &g.phi_b(j, &v)));
        rhs = &rhs + &t3.scale_left(&hb_over(&(&u + &v)));
        let t4 = (&g.phi_b(j, &v) - &g.phi_b(j, &u)).mul(&h);
        rhs = &rhs + &t4.scale_left(&hb_over(&(&u - &v)));
    }
    &lhs - &rhs
}

pub(super) fn h_b(g: &Arc<Gklo>) -> Vec<Case> {
    let n = g.shape.n;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..n {
            let g = g.clone();
            out.push(Case::zero("h-b", vec![i, j], move || Ok(h_b_difference(&g, i, j))));
        }
    }
    out
}

pub(super) fn b_b_far(g: &Arc<Gklo>) -> Vec<Case> {
    let mut out = Vec::new();
    for i in g.shape.nodes() {
        for j in g.shape.nodes() {
            if i.abs_diff(j) > 1 {
                let g = g.clone();
                out.push(Case::zero("b-b-far", vec![i, j], move || {
                    Ok(g.phi_b(i, &u()).comm(&g.phi_b(j, &v())))
                }));
            }
        }
    }
    out
}

/// `ẑ_i(x)`: principal part of the z-image in `x`.
pub(crate) fn z_hat(g: &Gklo, i: usize, x: VarId) -> Result<DiffOp> {
    Ok(g.phi_z(i, &spec(x))?.principal_part(x))
}

pub(crate) fn b_b_same_difference(g: &Gklo, i: usize) -> Result<DiffOp> {
    let (u, v) = (u(), v());
    let bu = g.phi_b(i, &u);
    let bv = g.phi_b(i, &v);
    let lhs = bu.comm(&bv);
    let d = &bv - &bu;
    let sq = d.mul(&d).scale_left(&hb_over(&(&v - &u)));
    let zz = (&z_hat(g, i, VarId::V)? - &z_hat(g, i, VarId::U)?).scale_left(&hb_over(&(&u + &v)));
    Ok(&(&lhs - &sq) - &zz)
}

pub(super) fn b_b_same(g: &Arc<Gklo>) -> Vec<Case> {
    g.shape
        .nodes()
        .map(|i| {
            let g = g.clone();
            Case::zero("b-b-same", vec![i], move || b_b_same_difference(&g, i))
        })
        .collect()
}

pub(crate) fn b_b_adjacent_difference(g: &Gklo, i: usize) -> DiffOp {
    let (u, v) = (u(), v());
    let bu = g.phi_b(i, &u);
    let bv = g.phi_b(i + 1, &v);
    let lhs = bu.comm(&bv).scale_left(&RatFunc::from_poly(&u - &v));
    let anti = bu.anticomm(&bv).scale(&qr(-1, 2)).scale_left(&RatFunc::from_poly(hbar()));
    let b0_i = bu.current_mode(VarId::U, 1);
    let b0_j = bv.current_mode(VarId::V, 1);
    let rhs = &(&anti + &b0_i.comm(&bv)) + &b0_j.comm(&bu);
    &lhs - &rhs
}

pub(super) fn b_b_adjacent(g: &Arc<Gklo>) -> Vec<Case> {
    let n = g.shape.n;
    (1..n.saturating_sub(1))
        .map(|i| {
            let g = g.clone();
            Case::zero("b-b-adjacent", vec![i, i + 1], move || Ok(b_b_adjacent_difference(&g, i)))
        })
        .collect()
}

/// `LHS - RHS` of the Serre relation, with `z` given by `zfun` (either the
/// full image or its principal part).
pub(crate) fn serre_difference(g: &Gklo, i: usize, j: usize, full_z: bool) -> Result<DiffOp> {
    let (u1, u2, t) = (spec(VarId::U1), spec(VarId::U2), spec(VarId::T));
    let bj = g.phi_b(j, &t);
    let inner = g.phi_b(i, &u2).comm(&bj);
    let outer = g.phi_b(i, &u1).comm(&inner);
    let lhs = outer
        .sym(VarId::U1, VarId::U2)
        .scale_left(&RatFunc::from_poly(&u1 + &u2));
    let hb = hbar();
    let mut rhs = DiffOp::zero();
    for w in [VarId::U1, VarId::U2] {
        let wp = spec(w);
        let z = if full_z {
            g.phi_z(i, &wp)?
        } else {
            z_hat(g, i, w)?
        };
        let left = RatFunc::from_poly(&wp * &(&t - &hb));
        let right = RatFunc::from_poly(&wp * &(&t + &hb));
        let term = &z.mul(&bj).scale_left(&left) - &bj.mul(&z).scale_left(&right);
        // 4ħ / (4w² - ħ²) = 4ħ / ((2w - ħ)(2w + ħ))
        let two_w = wp.scale(&q(2));
        let c = &(&RatFunc::from_poly(hb.scale(&q(4)))
            * &RatFunc::inv_poly(&(&two_w - &hb))?)
            * &RatFunc::inv_poly(&(&two_w + &hb))?;
        rhs = &rhs + &term.scale_left(&c);
    }
    Ok(&lhs - &rhs)
}

/// Serre relation as an identity of modes: the joint principal part in
/// `t`, `u1`, `u2` of `LHS - RHS` vanishes.
pub(crate) fn serre_modes(g: &Gklo, i: usize, j: usize) -> Result<DiffOp> {
    Ok(serre_difference(g, i, j, false)?
        .principal_part(VarId::T)
        .principal_part(VarId::U1)
        .principal_part(VarId::U2))
}

pub(super) fn serre(g: &Arc<Gklo>) -> Vec<Case> {
    let mut out = Vec::new();
    for i in g.shape.nodes() {
        for j in g.shape.nodes() {
            if i.abs_diff(j) != 1 {
                continue;
            }
            let gg = g.clone();
            out.push(Case::zero("serre", vec![i, j], move || serre_modes(&gg, i, j)));
            // The full-z variant is a cross-check; it is only run where it is cheap.
            if g.shape.is_unshifted() && g.shape.m.iter().all(|&k| k <= 1) {
                let gg = g.clone();
                out.push(Case::zero("serre/full-z", vec![i, j], move || {
                    Ok(serre_difference(&gg, i, j, true)?.principal_part(VarId::T))
                }));
            }
        }
    }
    out
}

pub(super) fn power_range(g: &Arc<Gklo>) -> Vec<Case> {
    let mut out = Vec::new();
    for i in 1..=g.shape.n {
        let g2 = g.clone();
        out.push(Case::new("power-range/h", vec![i], move || {
            let h = g2.h_scalar(i, &u());
            let p = g2.shape.leading_power[i - 1];
            let deg = h.degree_at_infinity(VarId::U);
            let top = h.laurent_coefficient(VarId::U, -p);
            let ok = deg == p && top == RatFunc::one();
            Ok(Outcome::Verdict(if ok {
                None
            } else {
                Some(format!("degree {} (expected {}), top coefficient {}", deg, p, top))
            }))
        }));
    }
    for i in g.shape.nodes() {
        let g2 = g.clone();
        out.push(Case::new("power-range/b", vec![i], move || {
            let b = g2.phi_b(i, &u());
            let deg = b.degree_at_infinity(VarId::U).unwrap_or(i64::MIN);
            Ok(Outcome::Verdict(if deg <= -1 {
                None
            } else {
                Some(format!("b has u-degree {}", deg))
            }))
        }));
    }
    out
}
