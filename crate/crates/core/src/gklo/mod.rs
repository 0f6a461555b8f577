//! Shapes, the operators κ and κ′, and the difference-operator images of
//! the currents.

mod shape;

pub use shape::{test_matrix, Roots, Shape};

use crate::algebra::{hb, lin, q, qr, var, MultiPoly, RatFunc, VarId, Q};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};

/// Deliberate corruptions used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mutation {
    /// κ′ built without its `R_i(ξ)` factor.
    DropRInKappaPrime,
    /// κ replaced by -κ.
    FlipSignKappa,
    /// `γ - ħ/2` in the denominator of κ replaced by `γ + ħ/2`.
    ShiftDenominator,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [
        Mutation::DropRInKappaPrime,
        Mutation::FlipSignKappa,
        Mutation::ShiftDenominator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::DropRInKappaPrime => "drop-R-in-kappa-prime",
            Mutation::FlipSignKappa => "flip-sign-kappa",
            Mutation::ShiftDenominator => "shift-denominator",
        }
    }
}

pub(crate) fn gamma(i: usize, k: usize) -> MultiPoly {
    var(VarId::gamma(i, k))
}

/// `x + c ħ`.
pub(crate) fn plus_hb(x: &MultiPoly, c: Q) -> MultiPoly {
    x + &hb(c)
}

fn inv(p: &MultiPoly) -> RatFunc {
    RatFunc::inv_poly(p).expect("image denominators are nonzero polynomials")
}

/// `x² - y²` as a product of the two linear factors.
fn diff_sq(x: &MultiPoly, y: &MultiPoly) -> RatFunc {
    RatFunc::from_poly(&(x - y) * &(x + y))
}

/// `1 / (x² - y²)` with the two factors stored as separate atoms.
fn inv_diff_sq(x: &MultiPoly, y: &MultiPoly) -> RatFunc {
    &inv(&(x - y)) * &inv(&(x + y))
}

/// The twisted GKLO images for one shape.
#[derive(Clone, Debug)]
pub struct Gklo {
    pub shape: Shape,
    pub mutation: Option<Mutation>,
    kappa: Vec<Vec<DiffOp>>,
    kappa_p: Vec<Vec<DiffOp>>,
}

impl Gklo {
    pub fn new(shape: Shape) -> Gklo {
        Self::with_mutation(shape, None)
    }

    pub fn with_mutation(shape: Shape, mutation: Option<Mutation>) -> Gklo {
        let mut g = Gklo {
            shape,
            mutation,
            kappa: Vec::new(),
            kappa_p: Vec::new(),
        };
        let n = g.shape.n;
        for i in 1..n {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for k in 1..=g.shape.m(i) {
                a.push(g.build_kappa(i, k));
                b.push(g.build_kappa_prime(i, k));
            }
            g.kappa.push(a);
            g.kappa_p.push(b);
        }
        g
    }

    pub fn m(&self, i: usize) -> usize {
        self.shape.m(i)
    }

    /// `R_i(x) = Π_k (x - r_{i,k})(x + r_{i,k})`.
    pub fn r_poly(&self, i: usize, x: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::one();
        for k in 1..=self.shape.lambda_i(i) {
            let r = self.shape.root(i, k);
            out = &out * &(&(x - &r) * &(x + &r));
        }
        out
    }

    fn build_kappa(&self, i: usize, k: usize) -> DiffOp {
        let s = &self.shape;
        let g = gamma(i, k);
        let mut c = RatFunc::one();
        for l in 1..=s.m(i + 1) {
            c = &c * &diff_sq(&g, &plus_hb(&gamma(i + 1, l), qr(1, 2)));
        }
        for l in 1..=s.m(i - 1) {
            c = &c * &RatFunc::from_poly(plus_hb(&(&g + &gamma(i - 1, l)), qr(1, 2)));
        }
        let shift = match self.mutation {
            Some(Mutation::ShiftDenominator) => qr(1, 2),
            _ => qr(-1, 2),
        };
        c = &c * &inv(&plus_hb(&g, shift).scale(&q(2)));
        for l in 1..=s.m(i) {
            if l != k {
                c = &c * &inv_diff_sq(&g, &gamma(i, l));
            }
        }
        if self.mutation == Some(Mutation::FlipSignKappa) {
            c = -c;
        }
        DiffOp::term(crate::diffop::BetaMonomial::single(i, k, -1), c.reduce())
    }

    fn build_kappa_prime(&self, i: usize, k: usize) -> DiffOp {
        let s = &self.shape;
        let xi = plus_hb(&gamma(i, k), q(1));
        let mut c = if self.mutation == Some(Mutation::DropRInKappaPrime) {
            RatFunc::one()
        } else {
            RatFunc::from_poly(self.r_poly(i, &xi))
        };
        for l in 1..=s.m(i - 1) {
            c = &c * &RatFunc::from_poly(&xi - &plus_hb(&gamma(i - 1, l), qr(1, 2)));
        }
        c = &c * &inv(&plus_hb(&gamma(i, k), qr(3, 2)).scale(&q(2)));
        for l in 1..=s.m(i) {
            if l != k {
                c = &c * &inv_diff_sq(&xi, &plus_hb(&gamma(i, l), q(1)));
            }
        }
        DiffOp::term(crate::diffop::BetaMonomial::single(i, k, 1), c.reduce())
    }

    fn check_index(&self, i: usize, k: usize) -> Result<()> {
        if i == 0 || i >= self.shape.n || k == 0 || k > self.m(i) {
            return Err(Error::Index(format!("κ_({},{}) on {}", i, k, self.shape)));
        }
        Ok(())
    }

    pub fn kappa(&self, i: usize, k: usize) -> Result<&DiffOp> {
        self.check_index(i, k)?;
        Ok(&self.kappa[i - 1][k - 1])
    }

    pub fn kappa_prime(&self, i: usize, k: usize) -> Result<&DiffOp> {
        self.check_index(i, k)?;
        Ok(&self.kappa_p[i - 1][k - 1])
    }

    pub(crate) fn k(&self, i: usize, k: usize) -> &DiffOp {
        &self.kappa[i - 1][k - 1]
    }

    pub(crate) fn kp(&self, i: usize, k: usize) -> &DiffOp {
        &self.kappa_p[i - 1][k - 1]
    }

    /// `Φ(b_i(x))`.
    pub fn phi_b(&self, i: usize, x: &MultiPoly) -> DiffOp {
        let mut out = DiffOp::zero();
        if i == 0 || i >= self.shape.n {
            return out;
        }
        for k in 1..=self.m(i) {
            let g = gamma(i, k);
            out = &out + &self.k(i, k).scale_left(&inv(&(x - &g)));
            out = &out + &self.kp(i, k).scale_left(&inv(&plus_hb(&(x + &g), q(1))));
        }
        out
    }

    /// The scalar `Φ(h_i(x))` for `1 ≤ i ≤ n`.
    pub fn h_scalar(&self, i: usize, x: &MultiPoly) -> RatFunc {
        let s = &self.shape;
        let m1 = s.m(1) as u32;
        let base = plus_hb(x, qr(-(i as i64 - 1), 2));
        let mut c = inv(&base).pow(4 * m1);
        for j in 1..i {
            let arg = plus_hb(x, qr(-((i - 1 - j) as i64), 2));
            c = &c * &RatFunc::from_poly(self.r_poly(j, &arg));
        }
        for k in 1..=s.m(i) {
            c = &c * &diff_sq(x, &plus_hb(&gamma(i, k), qr(1, 2)));
        }
        for l in 1..=s.m(i.wrapping_sub(1)) {
            let g = gamma(i - 1, l);
            c = &c * &inv(&(x - &g));
            c = &c * &inv(&plus_hb(&(x + &g), q(1)));
        }
        c.reduce()
    }

    pub fn phi_h(&self, i: usize, x: &MultiPoly) -> DiffOp {
        DiffOp::scalar(self.h_scalar(i, x))
    }

    /// Closed form of `Φ(z_i(x))`.
    pub fn z_scalar(&self, i: usize, x: &MultiPoly) -> RatFunc {
        let s = &self.shape;
        let mut c = RatFunc::from_poly(self.r_poly(i, x));
        for j in [i - 1, i + 1] {
            for k in 1..=s.m(j) {
                c = &c * &diff_sq(x, &plus_hb(&gamma(j, k), qr(1, 2)));
            }
        }
        for k in 1..=s.m(i) {
            let g = gamma(i, k);
            c = &c * &inv_diff_sq(x, &g);
            c = &c * &inv_diff_sq(x, &plus_hb(&g, q(1)));
        }
        c.reduce()
    }

    /// `Φ(h_i(x - ħ/2))^{-1} Φ(h_{i+1}(x))`.
    pub fn z_via_h(&self, i: usize, x: &MultiPoly) -> Result<RatFunc> {
        let a = self.phi_h(i, &plus_hb(x, qr(-1, 2))).invert()?;
        let b = self.phi_h(i + 1, x);
        Ok((&a * &b).coeff(&Default::default()))
    }

    /// `Φ(z_i(x))`, cross-checked against the product of h-images.
    pub fn phi_z(&self, i: usize, x: &MultiPoly) -> Result<DiffOp> {
        let closed = self.z_scalar(i, x);
        let via = self.z_via_h(i, x)?;
        if closed != via {
            return Err(Error::Internal(format!(
                "z_{} closed form disagrees with h_{}^{{-1}} h_{}",
                i,
                i,
                i + 1
            )));
        }
        Ok(DiffOp::scalar(closed))
    }

    fn require_unshifted(&self, what: &str) -> Result<()> {
        if !self.shape.is_unshifted() {
            return Err(Error::Unsupported(format!("{} needs mu = 0", what)));
        }
        Ok(())
    }

    /// `(Ã_i, B̃_i, C̃_i)` at `x`, for `μ = 0`.
    pub fn phi_abc(&self, i: usize, x: &MultiPoly) -> Result<(DiffOp, DiffOp, DiffOp)> {
        self.require_unshifted("phi_abc")?;
        let mi = self.m(i);
        let norm = inv(x).pow(2 * mi as u32);
        let shifted: Vec<MultiPoly> = (1..=mi).map(|k| plus_hb(&gamma(i, k), qr(1, 2))).collect();
        let mut a = norm.clone();
        for c in &shifted {
            a = &a * &diff_sq(x, c);
        }
        let mut b = DiffOp::zero();
        let mut cc = DiffOp::zero();
        for k in 1..=mi {
            let mut rest = norm.clone();
            for (l, c) in shifted.iter().enumerate() {
                if l + 1 != k {
                    rest = &rest * &diff_sq(x, c);
                }
            }
            let minus = RatFunc::from_poly(x - &shifted[k - 1]);
            let plus = RatFunc::from_poly(x + &shifted[k - 1]);
            let kk = self.k(i, k);
            let kpp = self.kp(i, k);
            let inner = &kk.scale_left(&minus) + &kpp.scale_left(&plus);
            b = &b - &inner.scale_left(&rest);
            // coefficients to the right of κ, κ′
            let right = &kk.mul(&DiffOp::scalar(&minus * &rest))
                + &kpp.mul(&DiffOp::scalar(&plus * &rest));
            cc = &cc + &right;
        }
        Ok((DiffOp::scalar(a.reduce()), b, cc))
    }

    /// `c(u) = h_1(u) h_2(u - ħ/2) ⋯ h_n(u - (n-1)ħ/2)`. With these images
    /// the half-step product telescopes to a scalar free of every γ.
    pub fn phi_central(&self, x: &MultiPoly) -> Result<DiffOp> {
        self.central_with_step(x, qr(-1, 2))
    }

    /// The product with full steps `h_i(u - (i-1)ħ)`. It is not central for
    /// these images and is kept as a documented expected failure.
    pub fn phi_central_full_step(&self, x: &MultiPoly) -> Result<DiffOp> {
        self.central_with_step(x, q(-1))
    }

    fn central_with_step(&self, x: &MultiPoly, step: Q) -> Result<DiffOp> {
        self.require_unshifted("phi_central")?;
        let mut c = RatFunc::one();
        for i in 1..=self.shape.n {
            c = &c * &self.h_scalar(i, &plus_hb(x, &step * &q(i as i64 - 1)));
        }
        Ok(DiffOp::scalar(c.reduce()))
    }

    /// All κ and κ′ with labels, in index order.
    pub fn kappa_list(&self) -> Vec<(String, DiffOp)> {
        let mut out = Vec::new();
        for (i, k) in self.shape.gamma_indices() {
            out.push((format!("κ{}_{}", i, k), self.k(i, k).clone()));
            out.push((format!("κ'{}_{}", i, k), self.kp(i, k).clone()));
        }
        out
    }
}

/// Spectral variable as a polynomial.
pub fn spec(v: VarId) -> MultiPoly {
    var(v)
}

/// `-x`.
pub fn neg(x: &MultiPoly) -> MultiPoly {
    -x
}

/// `a x + c ħ`.
pub fn affine(x: &MultiPoly, a: i64, c: Q) -> MultiPoly {
    &x.scale(&q(a)) + &lin(&[(VarId::Hbar, c)], q(0))
}
