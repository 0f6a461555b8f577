//! Rational coefficients with a machine-word fast path.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

type Small = Ratio<i64>;

/// Exact rational number. Values that fit in `i64/i64` are kept small;
/// everything else falls back to [`BigRational`]. The representation is
/// canonical, so derived equality and hashing are exact.
#[derive(Clone, Debug)]
pub enum Rat {
    Small(Small),
    Big(Box<BigRational>),
}

impl Rat {
    pub fn new(n: i64, d: i64) -> Self {
        if n == i64::MIN || d == i64::MIN {
            return Self::from_big(BigRational::new(n.into(), d.into()));
        }
        Rat::Small(Small::new(n, d))
    }

    pub fn from_i64(n: i64) -> Self {
        Rat::Small(Small::from_integer(n))
    }

    pub fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rat::Small(Small::new_raw(n, d)),
            _ => Rat::Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(s) => BigRational::new_raw((*s.numer()).into(), (*s.denom()).into()),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rat::Small(s) => (*s.numer()).into(),
            Rat::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rat::Small(s) => (*s.denom()).into(),
            Rat::Big(b) => b.denom().clone(),
        }
    }

    /// Numerator and denominator when both fit in machine words.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self {
            Rat::Small(s) => Some((*s.numer(), *s.denom())),
            Rat::Big(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(s) => s.is_integer(),
            Rat::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(s) => *s.numer() < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        Rat::one() / self
    }

    fn op(
        a: &Rat,
        b: &Rat,
        small: impl Fn(&Small, &Small) -> Option<Small>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Rat {
        if let (Rat::Small(x), Rat::Small(y)) = (a, b) {
            if let Some(r) = small(x, y) {
                if *r.numer() != i64::MIN && *r.denom() != i64::MIN {
                    return Rat::Small(r);
                }
            }
        }
        Rat::from_big(big(a.to_big(), b.to_big()))
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rat::Small(a), Rat::Small(b)) => a == b,
            (Rat::Big(a), Rat::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rat::Small(s) => {
                s.numer().hash(state);
                s.denom().hash(state);
            }
            Rat::Big(b) => b.hash(state),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Small(a), Rat::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat::from_i64(0)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(s) if s.is_zero())
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat::from_i64(1)
    }

    fn is_one(&self) -> bool {
        matches!(self, Rat::Small(s) if s.is_one())
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_i64(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_big(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rat {
    fn from(b: BigRational) -> Self {
        Rat::from_big(b)
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if let (Some((a, 1)), Some((b, 1))) = (self.as_small(), rhs.as_small()) {
            if let Some(n) = a.checked_add(b) {
                if n != i64::MIN {
                    return Rat::Small(Small::new_raw(n, 1));
                }
            }
        }
        Rat::op(self, rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        if rhs.is_zero() {
            return self.clone();
        }
        if let (Some((a, 1)), Some((b, 1))) = (self.as_small(), rhs.as_small()) {
            if let Some(n) = a.checked_sub(b) {
                if n != i64::MIN {
                    return Rat::Small(Small::new_raw(n, 1));
                }
            }
        }
        Rat::op(self, rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if let (Some((a, 1)), Some((b, 1))) = (self.as_small(), rhs.as_small()) {
            if let Some(n) = a.checked_mul(b) {
                if n != i64::MIN {
                    return Rat::Small(Small::new_raw(n, 1));
                }
            }
        }
        Rat::op(self, rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    /// Panics on division by zero, like the primitive types.
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rat::op(self, rhs, |a, b| a.checked_div(b), |a, b| a / b)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(s) => Rat::Small(Small::new_raw(-*s.numer(), *s.denom())),
            Rat::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $f(self, rhs: Rat) -> Rat {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $f(self, rhs: &Rat) -> Rat {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Rat> for &'a Rat {
            type Output = Rat;
            fn $f(self, rhs: Rat) -> Rat {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl<'a> AddAssign<&'a Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        *self = &*self + &rhs;
    }
}

impl<'a> SubAssign<&'a Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}

impl<'a> MulAssign<&'a Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = &*self * rhs;
    }
}

impl<'a> std::ops::DivAssign<&'a Rat> for Rat {
    fn div_assign(&mut self, rhs: &Rat) {
        *self = &*self / rhs;
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(s) => write!(f, "{}", s),
            Rat::Big(b) => write!(f, "{}", b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_falls_back_to_big() {
        let a = Rat::from_i64(i64::MAX);
        let b = &a * &a;
        assert!(matches!(b, Rat::Big(_)));
        let c = &b / &a;
        assert_eq!(c, a);
        assert!(matches!(c, Rat::Small(_)));
    }

    #[test]
    fn canonical_small() {
        assert_eq!(Rat::new(2, 4), Rat::new(-1, -2));
        assert_eq!((&Rat::new(1, 3) + &Rat::new(2, 3)), Rat::one());
        assert!((&Rat::new(1, 3) - &Rat::new(1, 3)).is_zero());
        assert_eq!(Rat::from_big(BigRational::new(6.into(), 4.into())), Rat::new(3, 2));
    }
}
