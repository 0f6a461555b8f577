//! Classical (ħ = 0) values of polynomials in the A/B/C modes under the
//! GKLO images.

use std::fmt;


use crate::algebra::{Poly, VarId};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::gklo::{spec, Gklo};

/// Modes `A_i^(r)`, `B_i^(r)`, `C_i^(r)` of the currents `Ã_i`, `B̃_i`, `C̃_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AbcVar {
    A(u8, u8),
    B(u8, u8),
    C(u8, u8),
}

impl fmt::Display for AbcVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbcVar::A(i, r) => write!(f, "A{}^({})", i, r),
            AbcVar::B(i, r) => write!(f, "B{}^({})", i, r),
            AbcVar::C(i, r) => write!(f, "C{}^({})", i, r),
        }
    }
}

fn at_hbar_zero(x: &DiffOp) -> Result<DiffOp> {
    x.map_coeffs(|c| c.at_hbar_zero())
}

/// Classical image of one mode.
pub fn classical_mode(g: &Gklo, v: AbcVar) -> Result<DiffOp> {
    let (i, r, which) = match v {
        AbcVar::A(i, r) => (i, r, 0),
        AbcVar::B(i, r) => (i, r, 1),
        AbcVar::C(i, r) => (i, r, 2),
    };
    let i = i as usize;
    if i == 0 || i >= g.shape.n {
        return Err(Error::Index(format!("node {} for n = {}", i, g.shape.n)));
    }
    let abc = g.phi_abc(i, &spec(VarId::U))?;
    let cur = [abc.0, abc.1, abc.2][which].clone();
    at_hbar_zero(&cur.current_mode(VarId::U, r as i64))
}

/// Substitutes the ħ = 0 images into `p`. At ħ = 0 the shift operators
/// commute with the γ's, so the value is a commutative expression.
pub fn classical_gklo_eval(g: &Gklo, p: &Poly<AbcVar>) -> Result<DiffOp> {
    let mut out = DiffOp::zero();
    for (m, c) in p.terms() {
        let mut t = DiffOp::one();
        for &(v, e) in m.pairs() {
            let x = classical_mode(g, v)?;
            for _ in 0..e {
                t = at_hbar_zero(&t.mul(&x))?;
            }
        }
        out = &out + &t.scale(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, MultiPoly};
    use crate::gklo::{Roots, Shape};
    use crate::relcheck::classical_bracket;

    fn shape() -> Gklo {
        Gklo::new(Shape::new(2, &[2], &[0], Roots::Symbolic).unwrap())
    }

    #[test]
    fn modes_above_twice_m_vanish() {
        let g = shape();
        for r in 3..=4 {
            for v in [AbcVar::A(1, r), AbcVar::B(1, r), AbcVar::C(1, r)] {
                assert!(classical_gklo_eval(&g, &Poly::var(v)).unwrap().is_zero(), "{}", v);
            }
        }
    }

    #[test]
    fn top_a_mode_is_minus_gamma_squared() {
        let g = shape();
        let top = classical_gklo_eval(&g, &Poly::var(AbcVar::A(1, 2))).unwrap();
        let gam = MultiPoly::var(VarId::gamma(1, 1));
        assert_eq!(top, DiffOp::poly((&gam * &gam).scale(&q(-1))));
    }

    #[test]
    fn a_modes_commute_classically() {
        let g = shape();
        let a1 = classical_gklo_eval(&g, &Poly::var(AbcVar::A(1, 1))).unwrap();
        let a2 = classical_gklo_eval(&g, &Poly::var(AbcVar::A(1, 2))).unwrap();
        assert!(classical_bracket(&a1, &a2).is_zero());
    }

    #[test]
    fn rejects_bad_node() {
        assert!(classical_gklo_eval(&shape(), &Poly::var(AbcVar::A(2, 1))).is_err());
    }
}
