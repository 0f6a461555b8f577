use std::sync::Arc;

use crate::algebra::{q, qr, MultiPoly, RatFunc, VarId};
use crate::diffop::DiffOp;
use crate::gklo::{gamma, plus_hb, Gklo};

use super::Case;

fn hbar() -> MultiPoly {
    MultiPoly::var(VarId::Hbar)
}

fn sc(p: MultiPoly) -> RatFunc {
    RatFunc::from_poly(p)
}

fn frac(num: MultiPoly, den: &MultiPoly) -> RatFunc {
    RatFunc::frac(num, den).expect("nonzero denominator")
}

fn pairs(g: &Gklo) -> Vec<((usize, usize), (usize, usize))> {
    let idx = g.shape.gamma_indices();
    let mut out = Vec::new();
    for &a in &idx {
        for &b in &idx {
            out.push((a, b));
        }
    }
    out
}

/// Scalar `R_i(γ)·Π_{j=i±1,l}(γ² - (γ_{j,l}+ħ/2)²) / (4(γ-ħ/2)(γ+ħ/2)·Π_{l≠k}(γ² - a_l²)(γ² - b_l²))`
/// with `γ = x`, where `a_l, b_l` are the two families in the product formulas.
fn product_formula(g: &Gklo, i: usize, k: usize, x: &MultiPoly, a: &[MultiPoly], b: &[MultiPoly]) -> RatFunc {
    let s = &g.shape;
    let mut c = sc(g.r_poly(i, x));
    for j in [i - 1, i + 1] {
        for l in 1..=s.m(j) {
            let y = plus_hb(&gamma(j, l), qr(1, 2));
            c = &c * &sc(&(x - &y) * &(x + &y));
        }
    }
    let den = (&plus_hb(x, qr(-1, 2)) * &plus_hb(x, qr(1, 2))).scale(&q(4));
    c = &c * &RatFunc::inv_poly(&den).unwrap();
    for l in 1..=s.m(i) {
        if l == k {
            continue;
        }
        for y in [&a[l - 1], &b[l - 1]] {
            c = &c * &RatFunc::inv_poly(&(x - y)).unwrap();
            c = &c * &RatFunc::inv_poly(&(x + y)).unwrap();
        }
    }
    c
}

pub(super) fn five(g: &Arc<Gklo>) -> Vec<Case> {
    let mut out = Vec::new();
    for ((i, k), (j, l)) in pairs(g) {
        let delta = if (i, k) == (j, l) { 1 } else { 0 };
        let gg = g.clone();
        out.push(Case::zero("aux-five/kappa-gamma", vec![i, k, j, l], move || {
            let x = gg.k(i, k);
            let gm = DiffOp::poly(gamma(j, l));
            Ok(&x.comm(&gm) + &x.scale(&q(delta)).scale_left(&sc(hbar())))
        }));
        let gg = g.clone();
        out.push(Case::zero("aux-five/kappa'-gamma", vec![i, k, j, l], move || {
            let x = gg.kp(i, k);
            let gm = DiffOp::poly(gamma(j, l));
            Ok(&x.comm(&gm) - &x.scale(&q(delta)).scale_left(&sc(hbar())))
        }));
        if (i, k) == (j, l) {
            continue;
        }
        let a = g.shape.cartan(i, j);
        let diff = &gamma(i, k) - &gamma(j, l);
        let gg = g.clone();
        let d = diff.clone();
        out.push(Case::zero("aux-five/kappa-kappa", vec![i, k, j, l], move || {
            let (x, y) = (gg.k(i, k), gg.k(j, l));
            let c = frac(hbar().scale(&qr(a, 2)), &d);
            Ok(&x.comm(y) - &y.anticomm(x).scale_left(&c))
        }));
        let gg = g.clone();
        let d = diff.clone();
        out.push(Case::zero("aux-five/kappa'-kappa'", vec![i, k, j, l], move || {
            let (x, y) = (gg.kp(i, k), gg.kp(j, l));
            let c = frac(hbar().scale(&qr(-a, 2)), &d);
            Ok(&x.comm(y) - &y.anticomm(x).mul(&DiffOp::scalar(c)))
        }));
        let gg = g.clone();
        out.push(Case::zero("aux-five/kappa-kappa'", vec![i, k, j, l], move || {
            let (x, y) = (gg.k(i, k), gg.kp(j, l));
            let c = frac(hbar().scale(&qr(a, 2)), &plus_hb(&(&gamma(i, k) + &gamma(j, l)), q(1)));
            Ok(&x.comm(y) - &x.anticomm(y).scale_left(&c))
        }));
    }
    for (i, k) in g.shape.gamma_indices() {
        let gg = g.clone();
        out.push(Case::zero("aux-five/kappa-kappa'-product", vec![i, k], move || {
            let m = gg.m(i);
            let gs: Vec<MultiPoly> = (1..=m).map(|l| gamma(i, l)).collect();
            let xs: Vec<MultiPoly> = gs.iter().map(|x| plus_hb(x, q(1))).collect();
            let c = product_formula(&gg, i, k, &gamma(i, k), &gs, &xs);
            Ok(&gg.k(i, k).mul(gg.kp(i, k)) - &DiffOp::scalar(c))
        }));
        let gg = g.clone();
        out.push(Case::zero("aux-five/kappa'-kappa-product", vec![i, k], move || {
            let m = gg.m(i);
            let gs: Vec<MultiPoly> = (1..=m).map(|l| gamma(i, l)).collect();
            let xs: Vec<MultiPoly> = gs.iter().map(|x| plus_hb(x, q(1))).collect();
            let xi = plus_hb(&gamma(i, k), q(1));
            let c = product_formula(&gg, i, k, &xi, &gs, &xs);
            Ok(&gg.kp(i, k).mul(gg.k(i, k)) - &DiffOp::scalar(c))
        }));
    }
    out
}

pub(super) fn reformulated(g: &Arc<Gklo>) -> Vec<Case> {
    let mut out = Vec::new();
    for ((i, k), (j, l)) in pairs(g) {
        if (i, k) == (j, l) {
            continue;
        }
        let a = g.shape.cartan(i, j);
        let diff = &gamma(i, k) - &gamma(j, l);
        let sum = &gamma(i, k) + &gamma(j, l);
        let gg = g.clone();
        let d = diff.clone();
        out.push(Case::zero("aux-reformulated/kappa-kappa", vec![i, k, j, l], move || {
            let (x, y) = (gg.k(i, k), gg.k(j, l));
            let lhs = x.mul(y).scale_left(&sc(plus_hb(&d, qr(-a, 2))));
            let rhs = y.mul(x).scale_left(&sc(plus_hb(&d, qr(a, 2))));
            Ok(&lhs - &rhs)
        }));
        let gg = g.clone();
        let d = diff.clone();
        out.push(Case::zero("aux-reformulated/kappa'-kappa'", vec![i, k, j, l], move || {
            let (x, y) = (gg.kp(i, k), gg.kp(j, l));
            let lhs = x.mul(y).mul(&DiffOp::poly(plus_hb(&d, qr(a, 2))));
            let rhs = y.mul(x).mul(&DiffOp::poly(plus_hb(&d, qr(-a, 2))));
            Ok(&lhs - &rhs)
        }));
        let gg = g.clone();
        let s = sum.clone();
        out.push(Case::zero("aux-reformulated/kappa-kappa'", vec![i, k, j, l], move || {
            let (x, y) = (gg.k(i, k), gg.kp(j, l));
            let lhs = x.mul(y).scale_left(&sc(plus_hb(&s, q(1) - qr(a, 2))));
            let rhs = y.mul(x).scale_left(&sc(plus_hb(&s, q(1) + qr(a, 2))));
            Ok(&lhs - &rhs)
        }));
    }
    out
}

pub(super) fn mixed3(g: &Arc<Gklo>) -> Vec<Case> {
    let mut out = Vec::new();
    let s = &g.shape;
    for i in s.nodes() {
        let j = i + 1;
        if j >= s.n {
            continue;
        }
        for mm in 1..=s.m(j) {
            for k in 1..=s.m(i) {
                let gg = g.clone();
                out.push(Case::zero("aux-mixed3/a", vec![i, k, j, mm], move || {
                    let (x, y) = (gg.k(i, k), gg.kp(j, mm));
                    Ok(x.comm(&x.comm(y)))
                }));
                for l in 1..=s.m(i) {
                    if l == k {
                        continue;
                    }
                    let (gk, gl, gm) = (gamma(i, k), gamma(i, l), gamma(j, mm));
                    let h2 = (&hbar() * &hbar()).clone();

                    let gg = g.clone();
                    let (a, b, c) = (gk.clone(), gl.clone(), gm.clone());
                    let h = h2.clone();
                    out.push(Case::zero("aux-mixed3/b", vec![i, k, l, j, mm], move || {
                        let (xk, xl, yp) = (gg.k(i, k), gg.k(i, l), gg.kp(j, mm));
                        let num = -&(&h * &plus_hb(&(&(&a + &b) + &c.scale(&q(2))), q(2)));
                        let den = &(&plus_hb(&(&a + &c), qr(1, 2)) * &plus_hb(&(&b + &c), qr(1, 2)))
                            * &plus_hb(&(&a - &b), q(1));
                        let lhs = xk.comm(&xl.comm(yp));
                        let rhs = xk.mul(xl).mul(yp).scale_left(&frac(num, &den));
                        Ok(&lhs - &rhs)
                    }));

                    let gg = g.clone();
                    let (a, b, c) = (gk.clone(), gl.clone(), gm.clone());
                    let h = h2.clone();
                    out.push(Case::zero("aux-mixed3/c", vec![i, k, l, j, mm], move || {
                        let (xk, xpl, y) = (gg.k(i, k), gg.kp(i, l), gg.k(j, mm));
                        let num = &h * &plus_hb(&(&(&b - &a) + &c.scale(&q(2))), q(1));
                        let den = &(&plus_hb(&(&c - &a), qr(1, 2)) * &plus_hb(&(&b + &a), q(2)))
                            * &plus_hb(&(&c + &b), qr(3, 2));
                        let lhs = xk.comm(&xpl.comm(y));
                        let rhs = xk.mul(xpl).mul(y).scale_left(&frac(num, &den));
                        Ok(&lhs - &rhs)
                    }));

                    let gg = g.clone();
                    let (a, b, c) = (gk.clone(), gl.clone(), gm.clone());
                    let h = h2.clone();
                    out.push(Case::zero("aux-mixed3/d", vec![i, k, l, j, mm], move || {
                        let (xpk, xl, y) = (gg.kp(i, k), gg.k(i, l), gg.k(j, mm));
                        let num = -&(&h * &plus_hb(&(&(&a - &b) + &c.scale(&q(2))), q(1)));
                        let den = &(&plus_hb(&(&c - &b), qr(1, 2)) * &(&b + &a))
                            * &plus_hb(&(&c + &a), qr(3, 2));
                        let lhs = xpk.comm(&xl.comm(y));
                        let rhs = xpk.mul(xl).mul(y).scale_left(&frac(num, &den));
                        Ok(&lhs - &rhs)
                    }));
                }
            }
        }
    }
    out
}

/// `4(x-ħ/2)(x+ħ/2) P / (x² - (y+ħ/2)²)` for a β-free product `P`.
fn st_scalar(p: &DiffOp, x: &MultiPoly, y: &MultiPoly) -> DiffOp {
    let f = (&plus_hb(x, qr(-1, 2)) * &plus_hb(x, qr(1, 2))).scale(&q(4));
    let yy = plus_hb(y, qr(1, 2));
    let c = &(&sc(f) * &RatFunc::inv_poly(&(x - &yy)).unwrap()) * &RatFunc::inv_poly(&(x + &yy)).unwrap();
    p.scale_left(&c)
}

/// `A B X - 2 A X B + X A B`.
fn triple(a: &DiffOp, b: &DiffOp, x: &DiffOp) -> DiffOp {
    let t1 = a.mul(b).mul(x);
    let t2 = a.mul(x).mul(b).scale(&q(2));
    let t3 = x.mul(a).mul(b);
    &(&t1 - &t2) + &t3
}

pub(super) fn st(g: &Arc<Gklo>) -> Vec<Case> {
    let mut out = Vec::new();
    let s = &g.shape;
    for i in s.nodes() {
        let j = i + 1;
        if j >= s.n {
            continue;
        }
        for k in 1..=s.m(i) {
            for l in 1..=s.m(j) {
                for (xname, prime) in [("kappa", false), ("kappa'", true)] {
                    let x_of = move |g: &Gklo| if prime { g.kp(j, l).clone() } else { g.k(j, l).clone() };
                    // ½ħ / (γ + ħ/2)
                    let coef = move || frac(hbar().scale(&qr(1, 2)), &plus_hb(&gamma(i, k), qr(1, 2)));

                    let gg = g.clone();
                    out.push(Case::zero(format!("aux-xxxST/S-{}", xname), vec![i, k, j, l], move || {
                        let (a, b, x) = (gg.k(i, k), gg.kp(i, k), x_of(&gg));
                        let sv = st_scalar(&a.mul(b), &gamma(i, k), &gamma(j, l));
                        let rhs = sv.scale_left(&coef()).mul(&x);
                        Ok(&triple(a, b, &x) - &rhs)
                    }));

                    let gg = g.clone();
                    out.push(Case::zero(format!("aux-xxxST/T-{}", xname), vec![i, k, j, l], move || {
                        let (a, b, x) = (gg.kp(i, k), gg.k(i, k), x_of(&gg));
                        let xi = plus_hb(&gamma(i, k), q(1));
                        let tv = st_scalar(&a.mul(b), &xi, &gamma(j, l));
                        let rhs = tv.scale_left(&coef()).scale(&q(-1)).mul(&x);
                        Ok(&triple(a, b, &x) - &rhs)
                    }));

                    // The statement with ξ_{j,l} in T and a positive sign.
                    let gg = g.clone();
                    out.push(
                        Case::zero(format!("aux-xxxST/T-{}-as-printed", xname), vec![i, k, j, l], move || {
                            let (a, b, x) = (gg.kp(i, k), gg.k(i, k), x_of(&gg));
                            let xi = plus_hb(&gamma(i, k), q(1));
                            let xj = plus_hb(&gamma(j, l), q(1));
                            let tv = st_scalar(&a.mul(b), &xi, &xj);
                            let rhs = tv.scale_left(&coef()).mul(&x);
                            Ok(&triple(a, b, &x) - &rhs)
                        })
                        .expecting_failure(),
                    );
                }
            }
        }
    }
    out
}
