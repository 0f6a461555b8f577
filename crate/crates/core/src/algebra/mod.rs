//! Exact multivariate polynomials and rational functions over Q.

pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod var;

pub use poly::{fmt_q, q, qr, Monomial, Poly, Var, Q};
pub use rat::Rat;
pub use ratfunc::{MultiPoly, RatFunc};
pub use var::{Spectral, VarId};

/// `sum c_v * v + c0`.
pub fn lin(terms: &[(VarId, Q)], c0: Q) -> MultiPoly {
    let mut out = MultiPoly::constant(c0);
    for (v, c) in terms {
        out = &out + &MultiPoly::var(*v).scale(c);
    }
    out
}

pub fn var(v: VarId) -> MultiPoly {
    MultiPoly::var(v)
}

/// `c * hbar`.
pub fn hb(c: Q) -> MultiPoly {
    MultiPoly::var(VarId::Hbar).scale(&c)
}
