use std::sync::Arc;

use crate::algebra::{q, qr, MultiPoly, RatFunc, VarId};
use crate::diffop::DiffOp;
use crate::error::Result;
use crate::gklo::{gamma, plus_hb, spec, Gklo};

use super::{Case, Outcome};

fn hbar() -> MultiPoly {
    MultiPoly::var(VarId::Hbar)
}

fn sc(p: MultiPoly) -> RatFunc {
    RatFunc::from_poly(p)
}

/// The dotted currents `(Ȧ, Ḃ, Ċ)` at `x`: `Ȧ = Ã`, `Ḃ(x) = B̃(x)`,
/// `Ċ(x) = -C̃(-x)`.
pub fn dotted(g: &Gklo, i: usize, x: &MultiPoly) -> Result<(DiffOp, DiffOp, DiffOp)> {
    let (a, b, _) = g.phi_abc(i, x)?;
    let (_, _, c) = g.phi_abc(i, &-x)?;
    Ok((a, b, -c))
}

/// `(u²-v²)[Ȧ(u),Ḃ(v)]` minus its expression in products.
fn a_b_relation(g: &Gklo, i: usize) -> Result<DiffOp> {
    let (u, v) = (spec(VarId::U), spec(VarId::V));
    let (au, bu, cu) = dotted(g, i, &u)?;
    let (av, bv, _) = dotted(g, i, &v)?;
    let hb = hbar();
    let lhs = au.comm(&bv).scale_left(&sc(&(&u * &u) - &(&v * &v)));
    let x1 = &au.mul(&bv) - &av.mul(&bu);
    let x2 = &au.mul(&bv) - &av.mul(&cu);
    let rhs = &(&x1.scale_left(&sc(&hb * &(&u + &v))) - &x2.scale_left(&sc(&hb * &(&u - &v))))
        + &x1.scale_left(&sc(&hb * &hb));
    Ok(&lhs - &rhs)
}

/// The A–C relation. `printed` selects the statement with the same shape as
/// the A–B relation; otherwise the corrected form is used.
fn a_c_relation(g: &Gklo, i: usize, printed: bool) -> Result<DiffOp> {
    let (u, v) = (spec(VarId::U), spec(VarId::V));
    let (au, bu, cu) = dotted(g, i, &u)?;
    let (av, bv, cv) = dotted(g, i, &v)?;
    let hb = hbar();
    let lhs = au.comm(&cv).scale_left(&sc(&(&u * &u) - &(&v * &v)));
    let y1 = &au.mul(&cv) - &av.mul(&cu);
    let y2 = &au.mul(&cv) - &av.mul(&bu);
    let y3 = &au.mul(&bv) - &av.mul(&bu);
    let hh = &hb * &hb;
    let rhs = if printed {
        &(&y1.scale_left(&sc(&hb * &(&u + &v))) - &y2.scale_left(&sc(&hb * &(&u - &v))))
            + &y1.scale_left(&sc(hh))
    } else {
        let t = &(&y2.scale_left(&sc(&hb * &(&u - &v))) - &y1.scale_left(&sc(&hb * &(&u + &v))))
            + &y1.scale_left(&sc(hh.clone()));
        &t + &y3.scale_left(&sc(hh.scale(&q(2))))
    };
    Ok(&lhs - &rhs)
}

/// `X(-u) - Y(u) - ħ(Y(u) - Y(-u))/(2u)` for the B/C symmetry pair.
fn bc_symmetry(g: &Gklo, i: usize, b_first: bool) -> Result<DiffOp> {
    let u = spec(VarId::U);
    let (_, bu, cu) = dotted(g, i, &u)?;
    let (_, bm, cm) = dotted(g, i, &-&u)?;
    let (x_neg, y, y_neg) = if b_first { (bm, cu, cm) } else { (cm, bu, bm) };
    let c = RatFunc::frac(hbar(), &u.scale(&q(2)))?;
    let rhs = &y + &(&y - &y_neg).scale_left(&c);
    Ok(&x_neg - &rhs)
}

/// `Π_k (x² - (γ_{i,k}+ħ/2)²)`, the A-current without its `x^{-2m}`.
fn a_bare(g: &Gklo, i: usize, x: &MultiPoly) -> RatFunc {
    let mut c = RatFunc::one();
    for k in 1..=g.m(i) {
        let y = plus_hb(&gamma(i, k), qr(1, 2));
        c = &c * &sc(&(x - &y) * &(x + &y));
    }
    c
}

/// `A_{i+1}(u)A_{i-1}(u) / (A_i(u-ħ/2)A_i(u+ħ/2))` from a family of A-currents.
fn z_from_a(a: impl Fn(usize, &MultiPoly) -> RatFunc, i: usize) -> Result<RatFunc> {
    let u = spec(VarId::U);
    let num = &a(i + 1, &u) * &a(i - 1, &u);
    let den = &a(i, &plus_hb(&u, qr(-1, 2))) * &a(i, &plus_hb(&u, qr(1, 2)));
    num.div(&den)
}

pub(super) fn subset(g: &Arc<Gklo>) -> Vec<Case> {
    let mut out = Vec::new();
    for i in g.shape.nodes() {
        let gg = g.clone();
        out.push(Case::zero("abcd-subset/A-even", vec![i], move || {
            let u = spec(VarId::U);
            Ok(&dotted(&gg, i, &u)?.0 - &dotted(&gg, i, &-&u)?.0)
        }));
        let gg = g.clone();
        out.push(Case::zero("abcd-subset/A-A", vec![i], move || {
            let a = dotted(&gg, i, &spec(VarId::U))?.0;
            let b = dotted(&gg, i, &spec(VarId::V))?.0;
            Ok(a.comm(&b))
        }));
        let gg = g.clone();
        out.push(Case::zero("abcd-subset/A-B", vec![i], move || a_b_relation(&gg, i)));
        let gg = g.clone();
        out.push(Case::zero("abcd-subset/A-C", vec![i], move || a_c_relation(&gg, i, false)));
        let gg = g.clone();
        out.push(
            Case::zero("abcd-subset/A-C-as-printed", vec![i], move || a_c_relation(&gg, i, true))
                .expecting_failure(),
        );
        let gg = g.clone();
        out.push(Case::zero("abcd-subset/B-C-symmetry", vec![i], move || bc_symmetry(&gg, i, true)));
        let gg = g.clone();
        out.push(Case::zero("abcd-subset/C-B-symmetry", vec![i], move || bc_symmetry(&gg, i, false)));
        let gg = g.clone();
        out.push(Case::zero("abcd-subset/z-from-A", vec![i], move || {
            let u = spec(VarId::U);
            let z = &z_from_a(|j, x| a_bare(&gg, j, x), i)? * &sc(gg.r_poly(i, &u));
            Ok(&DiffOp::scalar(z) - &gg.phi_z(i, &u)?)
        }));
        let gg = g.clone();
        out.push(Case::zero("abcd-subset/z-from-A-normalized", vec![i], move || {
            // With the u^{-2m} normalisation and the u^{-2λ_i} twist, the
            // quotient picks up ((u² - ħ²/4)/u²)^{2m_i}.
            let u = spec(VarId::U);
            let norm = |j: usize, x: &MultiPoly| {
                &a_bare(&gg, j, x) * &RatFunc::inv_poly(x).unwrap().pow(2 * gg.m(j) as u32)
            };
            let twist = &RatFunc::inv_poly(&u).unwrap().pow(2 * gg.shape.lambda_i(i) as u32)
                * &sc(gg.r_poly(i, &u));
            let lhs = &z_from_a(norm, i)? * &twist;
            let f = &(&sc(plus_hb(&u, qr(-1, 2))) * &sc(plus_hb(&u, qr(1, 2))))
                * &RatFunc::inv_poly(&(&u * &u)).unwrap();
            let rhs = &gg.phi_z(i, &u)?.coeff(&Default::default()) * &f.pow(2 * gg.m(i) as u32);
            Ok(DiffOp::scalar(&lhs - &rhs))
        }));
    }
    out
}

/// `Ã^{(2m)}` expected value `(-1)^m Π_k (γ_{i,k}+ħ/2)²`.
pub fn a_top_mode(g: &Gklo, i: usize) -> MultiPoly {
    let mut p = MultiPoly::int(if g.m(i) % 2 == 0 { 1 } else { -1 });
    for k in 1..=g.m(i) {
        let y = plus_hb(&gamma(i, k), qr(1, 2));
        p = &p * &(&y * &y);
    }
    p
}

pub(super) fn kernel(g: &Arc<Gklo>) -> Vec<Case> {
    let mut out = Vec::new();
    for i in g.shape.nodes() {
        for (n, name) in ["A", "B", "C"].into_iter().enumerate() {
            let gg = g.clone();
            out.push(Case::new(format!("kernel/{}", name), vec![i], move || {
                let u = spec(VarId::U);
                let abc = gg.phi_abc(i, &u)?;
                let x = [abc.0, abc.1, abc.2][n].clone();
                let m = gg.m(i) as i64;
                // x·u^{2m} must be a polynomial in u
                let scaled = x.scale_left(&sc(u.pow(2 * m as u32)));
                let pp = scaled.principal_part(VarId::U);
                if !pp.is_zero() {
                    return Ok(Outcome::Verdict(pp.witness().map(|w| w.to_string())));
                }
                for r in 2 * m + 1..=2 * m + 3 {
                    let mode = x.current_mode(VarId::U, r);
                    if !mode.is_zero() {
                        return Ok(Outcome::Verdict(Some(format!("mode {} nonzero", r))));
                    }
                }
                Ok(Outcome::Verdict(None))
            }));
        }
        let gg = g.clone();
        out.push(Case::new("kernel/A-top-mode", vec![i], move || {
            let a = gg.phi_abc(i, &spec(VarId::U))?.0;
            let m = gg.m(i) as i64;
            let top = a.current_mode(VarId::U, 2 * m);
            let want = DiffOp::poly(a_top_mode(&gg, i));
            Ok(Outcome::Verdict(if top == want && !top.is_zero() {
                None
            } else {
                Some(format!("A^({}) = {}", 2 * m, top))
            }))
        }));
    }
    out
}

pub(super) fn central(g: &Arc<Gklo>) -> Vec<Case> {
    let mut out = Vec::new();
    for j in g.shape.nodes() {
        let gg = g.clone();
        out.push(Case::zero("central/c-b", vec![j], move || {
            let c = gg.phi_central(&spec(VarId::U))?;
            Ok(c.comm(&gg.phi_b(j, &spec(VarId::V))))
        }));
        let gg = g.clone();
        out.push(
            Case::zero("central/c-b-full-step", vec![j], move || {
                let c = gg.phi_central_full_step(&spec(VarId::U))?;
                Ok(c.comm(&gg.phi_b(j, &spec(VarId::V))))
            })
            .expecting_failure(),
        );
    }
    for j in 1..=g.shape.n {
        let gg = g.clone();
        out.push(Case::zero("central/c-h", vec![j], move || {
            let c = gg.phi_central(&spec(VarId::U))?;
            Ok(c.comm(&gg.phi_h(j, &spec(VarId::V))))
        }));
    }
    out
}
