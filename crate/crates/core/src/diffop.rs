//! Normal forms in the localized difference-operator algebra.
//!
//! An element is a finite sum `f_e(γ, ħ, u, …) · β^e`, coefficient on the
//! left. Commuting `β^e` past a coefficient shifts each `γ_{i,k}` by
//! `e_{i,k} ħ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::algebra::{hb, q, MultiPoly, RatFunc, VarId, Q};
use crate::error::{Error, Result};

/// Sparse integer exponent vector over `β_{i,k}`, sorted by `(i,k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BetaMonomial(SmallVec<[((u8, u8), i32); 4]>);

impl BetaMonomial {
    pub fn identity() -> Self {
        BetaMonomial(SmallVec::new())
    }

    pub fn single(i: usize, k: usize, e: i32) -> Self {
        let mut out = Self::identity();
        if e != 0 {
            out.0.push(((i as u8, k as u8), e));
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exps(&self) -> &[((u8, u8), i32)] {
        &self.0
    }

    pub fn exp(&self, i: usize, k: usize) -> i32 {
        let key = (i as u8, k as u8);
        self.0.iter().find(|p| p.0 == key).map(|p| p.1).unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: SmallVec<[((u8, u8), i32); 4]> = SmallVec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        BetaMonomial(out)
    }

    /// The substitution `γ_{i,k} ↦ γ_{i,k} + e_{i,k} ħ`.
    pub fn shift(&self) -> Vec<(VarId, MultiPoly)> {
        self.0
            .iter()
            .map(|&((i, k), e)| {
                let g = VarId::Gamma(i, k);
                (g, &MultiPoly::var(g) + &hb(q(e as i64)))
            })
            .collect()
    }
}

impl fmt::Display for BetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, ((i, k), e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "b{}_{}", i, k)?;
            } else {
                write!(f, "b{}_{}^{}", i, k, e)?;
            }
        }
        Ok(())
    }
}

/// Element of the difference-operator algebra in normal form.
#[derive(Clone, Debug, Default)]
pub struct DiffOp {
    terms: BTreeMap<BetaMonomial, RatFunc>,
}

/// A single nonzero term reported when an identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub monomial: String,
    pub numerator: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.monomial, self.numerator)
    }
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(RatFunc::one())
    }

    pub fn scalar(c: RatFunc) -> Self {
        Self::term(BetaMonomial::identity(), c)
    }

    pub fn poly(p: MultiPoly) -> Self {
        Self::scalar(RatFunc::from_poly(p))
    }

    pub fn var(v: VarId) -> Self {
        Self::poly(MultiPoly::var(v))
    }

    pub fn beta(i: usize, k: usize, e: i32) -> Self {
        Self::term(BetaMonomial::single(i, k, e), RatFunc::one())
    }

    pub fn term(m: BetaMonomial, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffOp { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BetaMonomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &BetaMonomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn is_beta_free(&self) -> bool {
        self.terms.keys().all(|m| m.is_identity())
    }

    fn from_map(map: BTreeMap<BetaMonomial, RatFunc>) -> Self {
        DiffOp {
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, c.reduce()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Multiplies every coefficient on the left by `c`.
    pub fn scale_left(&self, c: &RatFunc) -> Self {
        Self::from_map(
            self.terms
                .iter()
                .map(|(m, a)| (m.clone(), c * a))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.scale_left(&RatFunc::constant(c.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<BetaMonomial, RatFunc> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            let shift = m1.shift();
            for (m2, c2) in &other.terms {
                let c2s = if shift.is_empty() {
                    c2.clone()
                } else {
                    c2.substitute(&shift).expect("γ shifts keep denominators nonzero")
                };
                let prod = c1 * &c2s;
                let m = m1.mul(m2);
                match acc.get_mut(&m) {
                    Some(x) => *x = &*x + &prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    /// `xy - yx`, or `xy + yx` when `anti`.
    pub fn commutator(&self, other: &Self, anti: bool) -> Self {
        let a = self.mul(other);
        let b = other.mul(self);
        if anti {
            &a + &b
        } else {
            &a - &b
        }
    }

    pub fn comm(&self, other: &Self) -> Self {
        self.commutator(other, false)
    }

    pub fn anticomm(&self, other: &Self) -> Self {
        self.commutator(other, true)
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (m, c) in &self.terms {
            map.insert(m.clone(), f(c)?);
        }
        Ok(Self::from_map(map))
    }

    /// Substitution in the central (spectral or ħ) variables, or any
    /// substitution applied to coefficients only.
    pub fn substitute(&self, assign: &[(VarId, MultiPoly)]) -> Result<Self> {
        self.map_coeffs(|c| c.substitute(assign))
    }

    /// Swaps two spectral variables.
    pub fn swap_vars(&self, a: VarId, b: VarId) -> Self {
        self.substitute(&[(a, MultiPoly::var(b)), (b, MultiPoly::var(a))])
            .expect("variable swap keeps denominators nonzero")
    }

    /// `x + x|_{u1 ↔ u2}`.
    pub fn sym(&self, a: VarId, b: VarId) -> Self {
        self + &self.swap_vars(a, b)
    }

    /// Coefficient of `var^{-r}` at infinity, termwise.
    pub fn current_mode(&self, var: VarId, r: i64) -> Self {
        Self::from_map(
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.laurent_coefficient(var, r)))
                .collect(),
        )
    }

    pub fn principal_part(&self, var: VarId) -> Self {
        Self::from_map(
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.principal_part(var)))
                .collect(),
        )
    }

    /// Largest power of `var` over all coefficients.
    pub fn degree_at_infinity(&self, var: VarId) -> Option<i64> {
        self.terms
            .values()
            .filter(|c| !c.is_zero())
            .map(|c| c.degree_at_infinity(var))
            .max()
    }

    pub fn invert(&self) -> Result<Self> {
        if !self.is_beta_free() {
            return Err(Error::NotInvertible);
        }
        let c = self.coeff(&BetaMonomial::identity());
        if c.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::scalar(c.inv()?))
    }

    /// The smallest nonzero term in monomial order, if any.
    pub fn witness(&self) -> Option<Witness> {
        self.terms.iter().find(|(_, c)| !c.is_zero()).map(|(m, c)| Witness {
            monomial: m.to_string(),
            numerator: c.numer().to_string(),
        })
    }

    /// Atoms appearing in any denominator.
    pub fn denominator_atoms(&self) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = Vec::new();
        for c in self.terms.values() {
            for (a, _) in c.den_atoms() {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
        }
        out
    }
}

impl PartialEq for DiffOp {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

fn merge(a: &DiffOp, b: &DiffOp, negate: bool) -> DiffOp {
    let mut map = a.terms.clone();
    for (m, c) in &b.terms {
        match map.get_mut(m) {
            Some(x) => *x = if negate { &*x - c } else { &*x + c },
            None => {
                map.insert(m.clone(), if negate { -c } else { c.clone() });
            }
        }
    }
    DiffOp::from_map(map)
}

impl<'a> Add<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        merge(self, rhs, true)
    }
}

impl<'a> Mul<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        DiffOp::mul(self, rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: DiffOp) -> DiffOp {
        &self + &rhs
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: DiffOp) -> DiffOp {
        &self - &rhs
    }
}

impl Mul for DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: DiffOp) -> DiffOp {
        DiffOp::mul(&self, &rhs)
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

impl From<RatFunc> for DiffOp {
    fn from(c: RatFunc) -> Self {
        DiffOp::scalar(c)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{}]·{}", c, m)?;
        }
        Ok(())
    }
}
