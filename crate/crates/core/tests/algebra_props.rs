use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use tgklo_core::algebra::{q, Rat};
use tgklo_core::{DiffOp, MultiPoly, RatFunc, VarId};

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_parts() -> impl Strategy<Value = (i64, i64)> {
    let edge = prop_oneof![
        Just(i64::MAX),
        Just(i64::MIN + 1),
        Just(i64::MAX / 3),
        Just(1i64 << 40),
        Just(-(1i64 << 40)),
    ];
    let num = prop_oneof![-50i64..50, edge.clone()];
    let den = prop_oneof![1i64..50, Just(i64::MAX), Just(1i64 << 40), Just(3_037_000_499)];
    (num, den)
}

fn vars() -> Vec<VarId> {
    vec![VarId::U, VarId::gamma(1, 1), VarId::gamma(1, 2), VarId::Hbar]
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-4i64..5, 0u32..3, 0u32..3, 0u32..2, 0u32..2), 0..5).prop_map(|ts| {
        let v = vars();
        let mut acc = MultiPoly::zero();
        for (c, a, b, d, e) in ts {
            let t = MultiPoly::var(v[0]).pow(a)
                * MultiPoly::var(v[1]).pow(b)
                * MultiPoly::var(v[2]).pow(d)
                * MultiPoly::var(v[3]).pow(e);
            acc = acc + t.scale(&q(c));
        }
        acc
    })
}

/// `u - γ_{1,k} + c ħ`.
fn linear() -> impl Strategy<Value = MultiPoly> {
    (1usize..3, -2i64..3).prop_map(|(k, c)| {
        MultiPoly::var(VarId::U) - MultiPoly::var(VarId::gamma(1, k)) + MultiPoly::var(VarId::Hbar).scale(&q(c))
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), prop::collection::vec(linear(), 0..3)).prop_map(|(n, ds)| {
        let mut d = MultiPoly::one();
        for x in ds {
            d = d * x;
        }
        RatFunc::frac(n, &d).unwrap()
    })
}

fn gamma_ratfunc() -> impl Strategy<Value = RatFunc> {
    (-3i64..4, -3i64..4, 0usize..2).prop_map(|(a, b, k)| {
        let g = MultiPoly::var(VarId::gamma(1, 1));
        let num = g.scale(&q(a)) + MultiPoly::constant(q(b));
        if k == 0 {
            RatFunc::from_poly(num)
        } else {
            let den = MultiPoly::var(VarId::gamma(1, 1)) - MultiPoly::var(VarId::gamma(1, 2));
            RatFunc::frac(num, &den).unwrap()
        }
    })
}

fn diffop() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((gamma_ratfunc(), 1usize..3, -2i32..3), 1..3).prop_map(|ts| {
        let mut acc = DiffOp::zero();
        for (c, k, e) in ts {
            acc = acc + DiffOp::beta(1, k, e).scale_left(&c);
        }
        acc
    })
}

proptest! {
    #[test]
    fn rat_matches_bigrational((a, b) in rat_parts(), (c, d) in rat_parts()) {
        let (x, y) = (Rat::new(a, b), Rat::new(c, d));
        let (bx, by) = (big(a, b), big(c, d));
        prop_assert_eq!((&x + &y).to_big(), &bx + &by);
        prop_assert_eq!((&x - &y).to_big(), &bx - &by);
        prop_assert_eq!((&x * &y).to_big(), &bx * &by);
        if c != 0 {
            prop_assert_eq!((&x / &y).to_big(), &bx / &by);
        }
        prop_assert_eq!((-&x).to_big(), -bx.clone());
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        prop_assert_eq!(Rat::from_big(bx.clone()), x);
    }

    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn ratfunc_field_ops(x in ratfunc(), y in ratfunc(), p in poly()) {
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert_eq!(x.inv().unwrap().inv().unwrap(), x.clone());
            prop_assert_eq!(&x * &x.inv().unwrap(), RatFunc::one());
        }
        if !p.is_zero() {
            let pq = RatFunc::from_poly(p.clone());
            prop_assert_eq!(&x.div(&pq).unwrap() * &pq, x.clone());
        }
    }

    #[test]
    fn principal_part_splits_off_a_polynomial(x in ratfunc(), p in poly()) {
        let u = VarId::U;
        let pp = x.principal_part(u);
        prop_assert!(is_poly_in_u(&(&x - &pp).reduce()), "{} - {}", x, pp);
        prop_assert!(pp.degree_at_infinity(u) < 0 || pp.is_zero());
        prop_assert_eq!(pp.principal_part(u), pp.clone());
        prop_assert!(RatFunc::from_poly(p).principal_part(u).is_zero());
        for r in 1..4 {
            prop_assert_eq!(pp.laurent_coefficient(u, r), x.laurent_coefficient(u, r));
        }
    }

    #[test]
    fn diffop_associative(a in diffop(), b in diffop(), c in diffop()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn beta_shifts_gamma(f in gamma_ratfunc(), k in 1usize..3, e in -2i32..3) {
        let b = DiffOp::beta(1, k, e);
        let lhs = &b * &DiffOp::scalar(f.clone());
        let g = VarId::gamma(1, k);
        let shifted = f
            .substitute_var(g, &(MultiPoly::var(g) + MultiPoly::var(VarId::Hbar).scale(&q(e as i64))))
            .unwrap();
        prop_assert_eq!(lhs, &DiffOp::scalar(shifted) * &b);
        prop_assert_eq!(&b * &DiffOp::beta(1, k, -e), DiffOp::one());
    }

    #[test]
    fn scalar_inverse(f in gamma_ratfunc()) {
        prop_assume!(!f.is_zero());
        let x = DiffOp::scalar(f);
        prop_assert_eq!(&x.invert().unwrap() * &x, DiffOp::one());
    }
}

/// No denominator involves `u`.
fn is_poly_in_u(x: &RatFunc) -> bool {
    x.den_atoms().iter().all(|(a, _)| !a.contains(VarId::U))
}

#[test]
fn beta_is_not_invertible_as_scalar() {
    assert!(DiffOp::beta(1, 1, 1).invert().is_err());
}
