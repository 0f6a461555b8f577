use proptest::prelude::*;
use tgklo_core::algebra::{q, qr};
use tgklo_core::poisson::{truncate, BracketSign, ModeAlgebra, PPoly, PVar};

const N: usize = 2;
const ORDER: usize = 3;

fn alg() -> ModeAlgebra {
    ModeAlgebra::new(N, ORDER)
}

fn poly_in(vars: Vec<PVar>) -> impl Strategy<Value = PPoly> {
    let k = vars.len();
    prop::collection::vec((-3i64..4, prop::collection::vec(0..k, 1..3)), 1..4).prop_map(move |ts| {
        let mut acc = PPoly::zero();
        for (c, idx) in ts {
            let mut t = PPoly::constant(q(c));
            for i in idx {
                t = &t * &PPoly::var(vars[i]);
            }
            acc = &acc + &t;
        }
        acc
    })
}

fn g_poly() -> impl Strategy<Value = PPoly> {
    poly_in(alg().g_vars())
}

fn s_poly() -> impl Strategy<Value = PPoly> {
    poly_in(alg().s_vars())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric_and_leibniz(f in g_poly(), g in g_poly(), h in g_poly()) {
        let a = alg();
        prop_assert!((&a.bracket(&f, &g) + &a.bracket(&g, &f)).is_zero());
        prop_assert!(a.bracket(&f, &f).is_zero());
        let lhs = a.bracket(&f, &(&g * &h));
        let rhs = &(&a.bracket(&f, &g) * &h) + &(&g * &a.bracket(&f, &h));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_satisfies_jacobi(f in g_poly(), g in g_poly(), h in g_poly()) {
        let a = alg();
        let j = &(&a.bracket(&f, &a.bracket(&g, &h)) + &a.bracket(&g, &a.bracket(&h, &f)))
            + &a.bracket(&h, &a.bracket(&f, &g));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn tau_is_a_poisson_involution(f in g_poly(), g in g_poly()) {
        let a = alg();
        prop_assert_eq!(a.tau_star(&a.tau_star(&f)), f.clone());
        prop_assert_eq!(a.bracket(&a.tau_star(&f), &a.tau_star(&g)), a.tau_star(&a.bracket(&f, &g)));
    }

    #[test]
    fn dirac_bracket_is_poisson(f in s_poly(), g in s_poly(), h in s_poly()) {
        let a = alg();
        prop_assert!(a.dirac(&f, &f).is_zero());
        prop_assert!((&a.dirac(&f, &g) + &a.dirac(&g, &f)).is_zero());
        let j = &(&a.dirac(&f, &a.dirac(&g, &h)) + &a.dirac(&g, &a.dirac(&h, &f)))
            + &a.dirac(&h, &a.dirac(&f, &g));
        prop_assert!(j.is_zero());
    }
}

#[test]
fn quotient_bracket_is_twice_dirac_on_generators() {
    for (n, order) in [(2, 4), (3, 3)] {
        let a = ModeAlgebra::new(n, order);
        let slice = a.slice_inverse();
        let vars = a.s_vars();
        for &x in &vars {
            for &y in &vars {
                if x.mode() + y.mode() > order + 1 {
                    continue;
                }
                let quot = a.quotient_gen(x, y, &slice).expect("lifts close");
                let dirac = a.dirac_gen(x, y).scale(&q(2));
                assert_eq!(truncate(&quot, order), truncate(&dirac, order), "{} {}", x, y);
            }
        }
    }
}

// Hand computation with {g_ij^(1), g_kl^(1)} = δ_il g_kj^(1) - δ_kj g_il^(1).
#[test]
fn low_mode_oracles() {
    let a = ModeAlgebra::new(3, 2);
    let g = |i, j, r| a.g(i, j, r);
    assert_eq!(a.s_lift(1, 2, 1), &g(1, 2, 1) - &g(2, 1, 1));
    assert_eq!(a.bracket(&g(1, 2, 1), &g(2, 3, 1)), -g(1, 3, 1));
    assert_eq!(a.bracket(&g(2, 1, 1), &g(3, 2, 1)), g(3, 1, 1));
    assert_eq!(a.bracket(&g(1, 1, 2), &g(1, 2, 1)), -g(1, 2, 2));

    let s12 = PVar::S(1, 2, 1);
    let s23 = PVar::S(2, 3, 1);
    let slice = a.slice_inverse();
    assert_eq!(a.quotient_gen(s12, s23, &slice).unwrap(), -a.s(1, 3, 1));
    assert_eq!(a.dirac_gen(s12, s23), a.s(1, 3, 1).scale(&qr(-1, 2)));

    let b = ModeAlgebra::with_sign(2, 1, BracketSign::Opposite);
    assert_eq!(b.bracket(&b.g(1, 2, 1), &b.g(2, 1, 1)), &b.g(1, 1, 1) - &b.g(2, 2, 1));
}

#[test]
fn desnanot_jacobi_for_tau_minors() {
    let a = ModeAlgebra::new(3, 4);
    let mul = |x: &Vec<PPoly>, y: &Vec<PPoly>| -> Vec<PPoly> {
        let mut out = vec![PPoly::zero(); 5];
        for i in 0..5 {
            for j in 0..5 - i {
                out[i + j] = &out[i + j] + &(&x[i] * &y[j]);
            }
        }
        out
    };
    let m = |r: &[usize], c: &[usize]| a.tau_minor(r, c);
    let lhs = mul(&m(&[1, 2, 3], &[1, 2, 3]), &m(&[3], &[3]));
    let rhs: Vec<PPoly> = mul(&m(&[2, 3], &[2, 3]), &m(&[1, 3], &[1, 3]))
        .into_iter()
        .zip(mul(&m(&[1, 3], &[2, 3]), &m(&[2, 3], &[1, 3])))
        .map(|(x, y)| &x - &y)
        .collect();
    assert_eq!(lhs, rhs);
}
