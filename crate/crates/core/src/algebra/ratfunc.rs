use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{base_point, horner_mod, q, Poly, Q};
use super::var::VarId;
use crate::error::{Error, Result};

pub type MultiPoly = Poly<VarId>;

/// Rational function `num / prod(atom^mult)`.
///
/// Atoms are nonconstant and normalised so their leading coefficient is 1.
/// The factored denominator makes common denominators cheap; nothing here
/// computes a gcd. Two values are equal iff their difference has a zero
/// numerator.
#[derive(Clone, Debug, Default)]
pub struct RatFunc {
    num: MultiPoly,
    den: Vec<(MultiPoly, u32)>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: MultiPoly::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(q(n))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    /// `1 / p` for a nonzero polynomial `p`.
    pub fn inv_poly(p: &MultiPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if let Some(c) = p.as_constant() {
            return Ok(Self::constant(Q::one() / c));
        }
        let (c, atom) = p.monic();
        Ok(RatFunc {
            num: MultiPoly::constant(Q::one() / c),
            den: vec![(atom, 1)],
        })
    }

    /// `num / den` with `den` treated as a single atom.
    pub fn frac(num: MultiPoly, den: &MultiPoly) -> Result<Self> {
        Ok(&Self::from_poly(num) * &Self::inv_poly(den)?)
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den_atoms(&self) -> &[(MultiPoly, u32)] {
        &self.den
    }

    pub fn denom(&self) -> MultiPoly {
        let mut d = MultiPoly::one();
        for (a, m) in &self.den {
            d = &d * &a.pow(*m);
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Sums are not reduced, so this is exact only after [`RatFunc::reduce`].
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else if self.num.is_zero() {
            Some(Q::zero())
        } else {
            None
        }
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.num.contains(v) || self.den.iter().any(|(a, _)| a.contains(v))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.iter().map(|(a, m)| (a.clone(), m * e)).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let mut out = Self::inv_poly(&self.num)?;
        out.num = &out.num * &self.denom();
        Ok(out)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Cancels atoms that divide the numerator. Linear atoms are screened
    /// by a modular evaluation on their zero set before dividing.
    pub fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let mut cache: Vec<(VarId, Vec<u64>)> = Vec::new();
        for (a, m) in self.den.iter_mut() {
            let linear = match a.linear_root_mod(&base_point) {
                Some(r) => Some(r),
                None if a.total_degree() == 1 => continue,
                None => None,
            };
            while *m > 0 {
                let quot = match linear {
                    Some((x, xv)) => {
                        let pos = match cache.iter().position(|c| c.0 == x) {
                            Some(p) => p,
                            None => match self.num.univariate_mod(x, &base_point) {
                                Some(u) => {
                                    cache.push((x, u));
                                    cache.len() - 1
                                }
                                None => break,
                            },
                        };
                        if horner_mod(&cache[pos].1, xv) != 0 {
                            break;
                        }
                        self.num.div_linear_exact(a)
                    }
                    None => self.num.div_exact(a),
                };
                match quot {
                    Some(qt) => {
                        self.num = qt;
                        *m -= 1;
                        cache.clear();
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, m)| *m > 0);
        self
    }

    fn push_atom(den: &mut Vec<(MultiPoly, u32)>, atom: MultiPoly, mult: u32) {
        if mult == 0 {
            return;
        }
        match den.iter_mut().find(|(a, _)| *a == atom) {
            Some(slot) => slot.1 += mult,
            None => den.push((atom, mult)),
        }
    }

    /// Simultaneous substitution. Atoms are renormalised and fail loudly if
    /// they become zero.
    pub fn substitute(&self, assign: &[(VarId, MultiPoly)]) -> Result<Self> {
        if assign.is_empty() {
            return Ok(self.clone());
        }
        let mut num = self.num.substitute(assign);
        let mut den = Vec::new();
        for (a, m) in &self.den {
            let b = if assign.iter().any(|(v, _)| a.contains(*v)) {
                a.substitute(assign)
            } else {
                a.clone()
            };
            if b.is_zero() {
                return Err(Error::VanishingDenominator(a.to_string()));
            }
            let (c, atom) = b.monic();
            let f = Q::one() / c;
            let mut s = Q::one();
            for _ in 0..*m {
                s *= &f;
            }
            num = num.scale(&s);
            if !atom.is_constant() {
                Self::push_atom(&mut den, atom, *m);
            }
        }
        Ok(RatFunc { num, den })
    }

    pub fn substitute_var(&self, v: VarId, p: &MultiPoly) -> Result<Self> {
        self.substitute(&[(v, p.clone())])
    }

    /// Principal part in `v`: the value minus its polynomial part, so only
    /// strictly negative powers of `v` survive at infinity.
    pub fn principal_part(&self, v: VarId) -> Self {
        let (dv, d0): (Vec<_>, Vec<_>) = self.den.iter().cloned().partition(|(a, _)| a.contains(v));
        if dv.is_empty() {
            return Self::zero();
        }
        let mut dpoly = MultiPoly::one();
        for (a, m) in &dv {
            dpoly = &dpoly * &a.pow(*m);
        }
        let (k, r) = self.num.rem_in(v, &dpoly);
        let mut den = dv;
        if k > 0 {
            let lc = dpoly.coeffs_in(v).pop().unwrap_or_else(MultiPoly::one);
            let (c, atom) = lc.monic();
            let mut s = Q::one();
            for _ in 0..k {
                s /= &c;
            }
            let r = r.scale(&s);
            if !atom.is_constant() {
                Self::push_atom(&mut den, atom, k);
            }
            den.extend(d0);
            return RatFunc { num: r, den }.reduce();
        }
        den.extend(d0);
        RatFunc { num: r, den }
    }

    /// Coefficient of `v^{-r}` in the expansion at `v = infinity`.
    /// Negative `r` asks for positive powers.
    pub fn laurent_coefficient(&self, v: VarId, r: i64) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let (dv, d0): (Vec<_>, Vec<_>) = self.den.iter().cloned().partition(|(a, _)| a.contains(v));
        let mut dpoly = MultiPoly::one();
        for (a, m) in &dv {
            dpoly = &dpoly * &a.pow(*m);
        }
        let nc = self.num.coeffs_in(v);
        let dc = dpoly.coeffs_in(v);
        let a = (nc.len() - 1) as i64;
        let d = (dc.len() - 1) as i64;
        // f = sum_k c_k v^{a-d-k}; we need a-d-k = -r.
        let target = a - d + r;
        if target < 0 {
            return Self::zero();
        }
        let target = target as usize;
        let lead = Self::from_poly(dc[d as usize].clone());
        let lead_inv = lead.inv().expect("leading coefficient of a nonzero polynomial");
        let mut c: Vec<RatFunc> = Vec::with_capacity(target + 1);
        for k in 0..=target {
            let mut acc = if (k as i64) <= a {
                Self::from_poly(nc[(a - k as i64) as usize].clone())
            } else {
                Self::zero()
            };
            for i in 1..=k.min(d as usize) {
                let di = &dc[d as usize - i];
                if di.is_zero() || c[k - i].is_zero() {
                    continue;
                }
                acc = &acc - &(&c[k - i] * &Self::from_poly(di.clone()));
            }
            c.push((&acc * &lead_inv).reduce());
        }
        let mut out = c.pop().unwrap_or_else(Self::zero);
        for (atom, m) in d0 {
            Self::push_atom(&mut out.den, atom, m);
        }
        out.reduce()
    }

    /// Polynomial degree of the expansion at infinity in `v`
    /// (numerator degree minus denominator degree).
    pub fn degree_at_infinity(&self, v: VarId) -> i64 {
        let d: i64 = self
            .den
            .iter()
            .map(|(a, m)| a.degree_in(v) as i64 * *m as i64)
            .sum();
        self.num.degree_in(v) as i64 - d
    }

    pub fn derivative(&self, v: VarId) -> Self {
        let dn = self.num.derivative(v);
        let mut rest_terms = MultiPoly::zero();
        let mut den = self.den.clone();
        let touched: Vec<usize> = (0..den.len()).filter(|&i| den[i].0.contains(v)).collect();
        if touched.is_empty() {
            return RatFunc { num: dn, den };
        }
        // d(N/prod a^m) = (N' prod a - N sum m a' prod_{other} a) / prod a^{m+1}
        let mut prod_all = MultiPoly::one();
        for &i in &touched {
            prod_all = &prod_all * &den[i].0;
        }
        let mut num = &dn * &prod_all;
        for &i in &touched {
            let (a, m) = &den[i];
            let mut other = MultiPoly::one();
            for &j in &touched {
                if j != i {
                    other = &other * &den[j].0;
                }
            }
            let t = &(&a.derivative(v) * &other).scale(&q(*m as i64)) * &self.num;
            rest_terms = &rest_terms + &t;
        }
        num = &num - &rest_terms;
        for &i in &touched {
            den[i].1 += 1;
        }
        RatFunc { num, den }.reduce()
    }

    /// Value at `hbar = 0`.
    pub fn at_hbar_zero(&self) -> Result<Self> {
        self.substitute(&[(VarId::Hbar, MultiPoly::zero())])
    }

    /// `(self / hbar)` at `hbar = 0`, or `None` when `hbar` does not divide
    /// the value.
    pub fn div_hbar_at_zero(&self) -> Result<Option<Self>> {
        let c = self.num.coeffs_in(VarId::Hbar);
        if !c[0].is_zero() {
            return Ok(None);
        }
        let n1 = c.get(1).cloned().unwrap_or_default();
        let den = RatFunc {
            num: MultiPoly::one(),
            den: self.den.clone(),
        }
        .at_hbar_zero()?;
        Ok(Some(&Self::from_poly(n1) * &den))
    }

    pub fn map_num(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        RatFunc {
            num: f(&self.num),
            den: self.den.clone(),
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        combine(self, rhs, false)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        combine(self, rhs, true)
    }
}

fn combine(a: &RatFunc, b: &RatFunc, negate: bool) -> RatFunc {
    if b.num.is_zero() {
        return a.clone();
    }
    if a.num.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    // lcm of the factored denominators
    let mut den = a.den.clone();
    for (atom, m) in &b.den {
        match den.iter_mut().find(|(x, _)| x == atom) {
            Some(slot) => slot.1 = slot.1.max(*m),
            None => den.push((atom.clone(), *m)),
        }
    }
    let cofactor = |x: &RatFunc| -> MultiPoly {
        let mut f = MultiPoly::one();
        for (atom, m) in &den {
            let have = x
                .den
                .iter()
                .find(|(y, _)| y == atom)
                .map(|p| p.1)
                .unwrap_or(0);
            if *m > have {
                f = &f * &atom.pow(m - have);
            }
        }
        f
    };
    let na = &a.num * &cofactor(a);
    let nb = &b.num * &cofactor(b);
    let num = if negate { &na - &nb } else { &na + &nb };
    if num.is_zero() {
        return RatFunc::zero();
    }
    RatFunc { num, den }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        let num = &self.num * &rhs.num;
        if num.is_zero() {
            return RatFunc::zero();
        }
        let mut den = self.den.clone();
        for (a, m) in &rhs.den {
            RatFunc::push_atom(&mut den, a.clone(), *m);
        }
        RatFunc { num, den }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (i, (a, m)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *m == 1 {
                write!(f, "({})", a)?;
            } else {
                write!(f, "({})^{}", a, m)?;
            }
        }
        write!(f, ")")
    }
}
