use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

pub use super::rat::Rat;

/// Exact rational coefficient.
pub type Q = Rat;

pub fn q(n: i64) -> Q {
    Rat::from_i64(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Rat::new(n, d)
}

/// Anything usable as a polynomial variable.
pub trait Var: Copy + Ord + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {}
impl<T: Copy + Ord + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync> Var for T {}

/// Exponent of one variable in a monomial.
pub type Exp = u16;

fn exp_of(e: u32) -> Exp {
    Exp::try_from(e).expect("exponent overflow")
}

/// Sparse exponent vector, sorted by variable, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<V: Var> {
    deg: u32,
    exps: SmallVec<[(V, Exp); 12]>,
}

impl<V: Var> Monomial<V> {
    fn from_sorted(exps: SmallVec<[(V, Exp); 12]>) -> Self {
        Monomial {
            deg: exps.iter().map(|p| p.1 as u32).sum(),
            exps,
        }
    }

    pub fn one() -> Self {
        Monomial::from_sorted(SmallVec::new())
    }

    pub fn var(v: V, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            let mut s = SmallVec::new();
            s.push((v, exp_of(e)));
            Monomial::from_sorted(s)
        }
    }

    pub fn from_pairs(mut pairs: Vec<(V, u32)>) -> Self {
        pairs.retain(|p| p.1 != 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: SmallVec<[(V, Exp); 12]> = SmallVec::new();
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 = exp_of(last.1 as u32 + e),
                _ => out.push((v, exp_of(e))),
            }
        }
        Monomial::from_sorted(out)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, v: V) -> u32 {
        self.exps
            .iter()
            .find(|p| p.0 == v)
            .map(|p| p.1 as u32)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(V, Exp)] {
        &self.exps
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.exps, &other.exps);
        let mut out: SmallVec<[(V, Exp); 12]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1.checked_add(b[j].1).expect("exponent overflow");
                    out.push((a[i].0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            deg: self.deg + other.deg,
            exps: out,
        }
    }

    /// `self / other` when every exponent of `other` fits.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = SmallVec::new();
        let mut j = 0;
        let b = &other.exps;
        for &(v, e) in self.exps.iter() {
            while j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                if b[j].1 > e {
                    return None;
                }
                if e > b[j].1 {
                    out.push((v, e - b[j].1));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial::from_sorted(out))
    }

    /// Removes `v`, returning its exponent and the rest.
    pub fn split_off(&self, v: V) -> (u32, Self) {
        let mut e = 0;
        let mut rest = SmallVec::new();
        for &(w, f) in self.exps.iter() {
            if w == v {
                e = f as u32;
            } else {
                rest.push((w, f));
            }
        }
        (e, Monomial::from_sorted(rest))
    }
}

impl<V: Var> Ord for Monomial<V> {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// smallest variable decides.
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (a, b) = (&self.exps, &other.exps);
        let n = a.len().min(b.len());
        for i in 0..n {
            if a[i].0 != b[i].0 {
                return if a[i].0 < b[i].0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            if a[i].1 != b[i].1 {
                return a[i].1.cmp(&b[i].1);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl<V: Var> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Var> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial over Q. Terms are sorted by descending monomial
/// and never carry a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<V: Var> {
    terms: Vec<(Monomial<V>, Q)>,
}

impl<V: Var> Default for Poly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Var> Poly<V> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(q(n))
    }

    pub fn var(v: V) -> Self {
        Poly {
            terms: vec![(Monomial::var(v, 1), Q::one())],
        }
    }

    pub fn monomial(m: Monomial<V>, c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(mut terms: Vec<(Monomial<V>, Q)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial<V>, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += &c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Poly { terms: out }
    }

    fn from_map(acc: HashMap<Monomial<V>, Q>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial<V>, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.terms.is_empty() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Monomial<V>, Q)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: V) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn contains(&self, v: V) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<V> {
        let mut out: Vec<V> = self
            .terms
            .iter()
            .flat_map(|t| t.0.pairs().iter().map(|p| p.0))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial<V>, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // Multiplying by a fixed monomial preserves the term order.
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Coefficients of `v^0, v^1, ...`, each free of `v`.
    pub fn coeffs_in(&self, v: V) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut parts: Vec<Vec<(Monomial<V>, Q)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            parts[e as usize].push((rest, c.clone()));
        }
        parts
            .into_iter()
            .map(|mut t| {
                t.sort_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: t }
            })
            .collect()
    }

    pub fn from_coeffs_in(v: V, coeffs: &[Self]) -> Self {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(v, e as u32);
            for (n, a) in &c.terms {
                terms.push((n.mul(&m), a.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, assign: &[(V, Poly<V>)]) -> Self {
        if assign.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: HashMap<(usize, u32), Poly<V>> = HashMap::new();
        let mut acc: HashMap<Monomial<V>, Q> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor: Option<Poly<V>> = None;
            for &(v, e) in m.pairs() {
                if let Some(idx) = assign.iter().position(|a| a.0 == v) {
                    let p = powers
                        .entry((idx, e as u32))
                        .or_insert_with(|| assign[idx].1.pow(e as u32))
                        .clone();
                    factor = Some(match factor {
                        None => p,
                        Some(f) => &f * &p,
                    });
                } else {
                    kept.push((v, e));
                }
            }
            let mono = Monomial::from_sorted(SmallVec::from_vec(kept));
            match factor {
                None => {
                    *acc.entry(mono).or_insert_with(Q::zero) += c;
                }
                Some(f) => {
                    for (n, a) in &f.terms {
                        *acc.entry(n.mul(&mono)).or_insert_with(Q::zero) += a * c;
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn derivative(&self, v: V) -> Self {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e > 0 {
                let mut pairs: Vec<(V, u32)> = rest.pairs().iter().map(|&(w, f)| (w, f as u32)).collect();
                pairs.push((v, e - 1));
                terms.push((Monomial::from_pairs(pairs), c * q(e as i64)));
            }
        }
        Self::from_terms(terms)
    }

    /// Value modulo [`PRIME`] at the point `val`, or `None` when a
    /// coefficient denominator vanishes there.
    pub fn eval_mod(&self, val: &impl Fn(V) -> u64) -> Option<u64> {
        let mut acc = 0u64;
        let mut tables = PowerTables::new();
        for (m, c) in &self.terms {
            let mut t = tables.coeff(c)?;
            for &(v, e) in m.pairs() {
                t = mul_mod(t, tables.pow(v, e as u32, val));
            }
            acc = add_mod(acc, t);
        }
        Some(acc)
    }

    /// Coefficients of `x^0, x^1, ...` modulo [`PRIME`] after evaluating
    /// every other variable at `val`.
    pub fn univariate_mod(&self, x: V, val: &impl Fn(V) -> u64) -> Option<Vec<u64>> {
        let mut out = vec![0u64; self.degree_in(x) as usize + 1];
        let mut tables = PowerTables::new();
        for (m, c) in &self.terms {
            let mut t = tables.coeff(c)?;
            let mut ex = 0;
            for &(v, e) in m.pairs() {
                if v == x {
                    ex = e as usize;
                } else {
                    t = mul_mod(t, tables.pow(v, e as u32, val));
                }
            }
            out[ex] = add_mod(out[ex], t);
        }
        Some(out)
    }

    /// For a degree-one polynomial `lc·x + rest`, the variable `x` and the
    /// value of `x` (mod [`PRIME`]) where it vanishes, the other variables
    /// taken from `val`.
    pub fn linear_root_mod(&self, val: &impl Fn(V) -> u64) -> Option<(V, u64)> {
        if self.total_degree() != 1 {
            return None;
        }
        let (lm, lc) = self.leading()?;
        let x = lm.pairs()[0].0;
        let u = self.univariate_mod(x, val)?;
        if coeff_mod(lc)? == 0 || u.len() != 2 || u[1] == 0 {
            return None;
        }
        let r = mul_mod(PRIME - u[0] % PRIME, inv_mod(u[1]));
        Some((x, r % PRIME))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.total_degree() == 1 {
            return self.div_linear(d);
        }
        self.div_generic(d)
    }

    /// Division by a degree-one polynomial: a cheap modular test on the
    /// zero set of `d` rules out most non-divisors, then synthetic division
    /// in the leading variable.
    fn div_linear(&self, d: &Self) -> Option<Self> {
        let x = d.leading()?.0.pairs()[0].0;
        if let Some((_, xv)) = d.linear_root_mod(&base_point) {
            if let Some(u) = self.univariate_mod(x, &base_point) {
                if horner_mod(&u, xv) != 0 {
                    return None;
                }
            }
        }
        self.div_linear_exact(d)
    }

    /// Synthetic division by the degree-one `d` in its leading variable.
    pub fn div_linear_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?.clone();
        let x = lm.pairs()[0].0;
        let rest = &d.clone() - &Self::monomial(lm, lc.clone());
        let lc_inv = Q::one() / &lc;
        let l = rest.scale(&lc_inv);
        let c = self.coeffs_in(x);
        let top = c.len() - 1;
        if top == 0 {
            return None;
        }
        let mut quot = vec![Self::zero(); top];
        let mut carry = c[top].clone();
        quot[top - 1] = carry.clone();
        for j in (1..top).rev() {
            carry = &c[j] - &(&l * &carry);
            quot[j - 1] = carry.clone();
        }
        if !(&c[0] - &(&l * &carry)).is_zero() {
            return None;
        }
        Some(Self::from_coeffs_in(x, &quot).scale(&lc_inv))
    }

    fn div_generic(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?.clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial<V>, Q)> = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let qm = m.div(&lm)?;
            let qc = &c / &lc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(Self::from_terms(quot))
    }

    /// Remainder of division by `d` as polynomials in `v`, with the pseudo
    /// factor: returns `(k, r)` with `lc_v(d)^k * self = q*d + r` and
    /// `deg_v r < deg_v d`. When `lc_v(d)` is a constant, `k = 0` and the
    /// division is exact over Q.
    pub fn rem_in(&self, v: V, d: &Self) -> (u32, Self) {
        let dc = d.coeffs_in(v);
        let dd = dc.len() - 1;
        let lc = dc[dd].clone();
        let lc_const = lc.as_constant();
        let mut r = self.coeffs_in(v);
        let mut k = 0;
        while r.len() > dd && r.len() > 0 {
            let top = r.len() - 1;
            if r[top].is_zero() {
                r.pop();
                continue;
            }
            let shift = top - dd;
            match &lc_const {
                Some(c) => {
                    let f = r[top].scale(&(Q::one() / c));
                    for i in 0..=dd {
                        r[shift + i] = &r[shift + i] - &(&f * &dc[i]);
                    }
                }
                None => {
                    let f = r[top].clone();
                    for x in r.iter_mut() {
                        *x = &*x * &lc;
                    }
                    for i in 0..=dd {
                        r[shift + i] = &r[shift + i] - &(&f * &dc[i]);
                    }
                    k += 1;
                }
            }
            r.pop();
        }
        (k, Self::from_coeffs_in(v, &r))
    }

    /// Content-free normalisation: the leading coefficient becomes 1.
    pub fn monic(&self) -> (Q, Self) {
        match self.leading() {
            None => (Q::zero(), Self::zero()),
            Some((_, c)) => {
                let c = c.clone();
                (c.clone(), self.scale(&(Q::one() / c)))
            }
        }
    }

    pub fn map_vars<W: Var>(&self, f: impl Fn(V) -> W) -> Poly<W> {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (f(v), e as u32)).collect()),
                        c.clone(),
                    )
                })
                .collect(),
        )
    }
}

/// Modulus for fast probabilistic tests; exactness never depends on it.
pub const PRIME: u64 = (1 << 61) - 1;

pub fn mul_mod(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let r = (x as u64 & PRIME) + (x >> 61) as u64;
    let r = (r & PRIME) + (r >> 61);
    if r >= PRIME {
        r - PRIME
    } else {
        r
    }
}

pub fn add_mod(a: u64, b: u64) -> u64 {
    let r = a + b;
    if r >= PRIME {
        r - PRIME
    } else {
        r
    }
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64) -> u64 {
    if a.is_power_of_two() {
        // 2^61 = 1 mod PRIME
        let k = a.trailing_zeros() as u64;
        return 1u64 << ((61 - k % 61) % 61);
    }
    pow_mod(a, PRIME - 2)
}

/// `p(x)` for coefficients listed from the constant term up.
pub fn horner_mod(p: &[u64], x: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x), c))
}

/// Fixed evaluation point used for fast divisibility tests.
pub fn base_point<V: Var>(v: V) -> u64 {
    point(v, 0)
}

struct PowerTables<V: Var> {
    tables: SmallVec<[(V, Vec<u64>); 8]>,
    last_coeff: Option<(Q, u64)>,
}

impl<V: Var> PowerTables<V> {
    fn new() -> Self {
        PowerTables {
            tables: SmallVec::new(),
            last_coeff: None,
        }
    }

    /// `coeff_mod` with a one-entry cache; consecutive terms often share
    /// a coefficient.
    fn coeff(&mut self, c: &Q) -> Option<u64> {
        if let Some((k, v)) = &self.last_coeff {
            if k == c {
                return Some(*v);
            }
        }
        let v = coeff_mod(c)?;
        if !c.is_integer() {
            self.last_coeff = Some((c.clone(), v));
        }
        Some(v)
    }

    fn pow(&mut self, v: V, e: u32, val: &impl Fn(V) -> u64) -> u64 {
        let idx = match self.tables.iter().position(|t| t.0 == v) {
            Some(i) => i,
            None => {
                self.tables.push((v, vec![1, val(v) % PRIME]));
                self.tables.len() - 1
            }
        };
        let t = &mut self.tables[idx].1;
        while t.len() <= e as usize {
            let next = mul_mod(t[t.len() - 1], t[1]);
            t.push(next);
        }
        t[e as usize]
    }
}

fn bigint_mod(n: &BigInt) -> u64 {
    let m = BigInt::from(PRIME);
    let r = ((n % &m) + &m) % &m;
    r.iter_u64_digits().next().unwrap_or(0)
}

fn coeff_mod(c: &Q) -> Option<u64> {
    if let Some((n, d)) = c.as_small() {
        let m = PRIME as i128;
        let nm = ((n as i128 % m + m) % m) as u64;
        if d == 1 {
            return Some(nm);
        }
        let dm = ((d as i128 % m + m) % m) as u64;
        if dm == 0 {
            return None;
        }
        return Some(mul_mod(nm, inv_mod(dm)));
    }
    let d = bigint_mod(&c.denom());
    if d == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod(&c.numer()), inv_mod(d)))
}

/// Deterministic pseudo-random value for a variable.
fn point<V: Var>(v: V, seed: u64) -> u64 {
    use std::hash::{BuildHasher, BuildHasherDefault};
    let h = BuildHasherDefault::<std::collections::hash_map::DefaultHasher>::default().hash_one((v, seed));
    h % PRIME
}

fn merge<V: Var>(a: &[(Monomial<V>, Q)], b: &[(Monomial<V>, Q)], negate_b: bool) -> Vec<(Monomial<V>, Q)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0.clone(), c));
    }
    out
}

impl<'a, V: Var> Add<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        Poly {
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl<'a, V: Var> Sub<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        Poly {
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl<'a, V: Var> Mul<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if rhs.terms.len() == 1 {
            return self.mul_monomial(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        // One sorted row per term of the shorter factor, merged pairwise.
        let (short, long) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        // Binary-counter merging keeps only O(log n) partial sums alive.
        let mut stack: Vec<(u32, Vec<(Monomial<V>, Q)>)> = Vec::new();
        for (m, c) in &short.terms {
            let mut row = (0u32, long.mul_monomial(m, c).terms);
            while let Some(top) = stack.last() {
                if top.0 != row.0 {
                    break;
                }
                let (lvl, prev) = stack.pop().unwrap_or_default();
                row = (lvl + 1, merge(&prev, &row.1, false));
            }
            stack.push(row);
        }
        let mut acc = stack.pop().map(|r| r.1).unwrap_or_default();
        while let Some((_, prev)) = stack.pop() {
            acc = merge(&prev, &acc, false);
        }
        Poly { terms: acc }
    }
}

impl<V: Var> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<V: Var> Add for Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: Poly<V>) -> Poly<V> {
        &self + &rhs
    }
}

impl<V: Var> Sub for Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: Poly<V>) -> Poly<V> {
        &self - &rhs
    }
}

impl<V: Var> Mul for Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: Poly<V>) -> Poly<V> {
        &self * &rhs
    }
}

impl<V: Var> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        -&self
    }
}

pub fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl<V: Var> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), m)?;
            }
        }
        Ok(())
    }
}
