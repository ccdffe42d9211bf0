//! Arbitrary-precision integer with an inline fast path.
//!
//! Character multiplicities are almost always small, but symmetric powers of
//! large modules can push individual coefficients past 64 bits. `Int` keeps
//! values in an `i64` until an operation overflows and then promotes to
//! `BigInt`. The representation is canonical: `Big` never holds a value that
//! fits in `i64`, so derived equality and hashing are value equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Int::Small(v) => *v > 0,
            Int::Big(b) => b.is_positive(),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Int::Small(v) => u64::try_from(*v).ok(),
            Int::Big(b) => b.to_u64(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: i64) -> Option<Int> {
        assert!(d != 0, "division by zero");
        match self {
            Int::Small(v) => {
                if v % d == 0 {
                    match v.checked_div(d) {
                        Some(q) => Some(Int::Small(q)),
                        None => Some(Int::from_big(BigInt::from(*v) / d)),
                    }
                } else {
                    None
                }
            }
            Int::Big(b) => {
                let (q, r) = b.div_rem(&BigInt::from(d));
                if r.is_zero() {
                    Some(Int::from_big(q))
                } else {
                    None
                }
            }
        }
    }

    /// `self += a * b` without intermediate allocation on the fast path.
    #[inline]
    pub fn add_mul(&mut self, a: &Int, b: &Int) {
        if let (Int::Small(x), Int::Small(y), Int::Small(z)) = (&*self, a, b) {
            if let Some(p) = y.checked_mul(*z) {
                if let Some(s) = x.checked_add(p) {
                    *self = Int::Small(s);
                    return;
                }
            }
        }
        let v = self.to_bigint() + a.to_bigint() * b.to_bigint();
        *self = Int::from_big(v);
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(Box::new(BigInt::from(v))),
        }
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        Int::from(v as u64)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl<'a> AddAssign<&'a Int> for Int {
    #[inline]
    fn add_assign(&mut self, rhs: &'a Int) {
        if let (Int::Small(x), Int::Small(y)) = (&*self, rhs) {
            if let Some(s) = x.checked_add(*y) {
                *self = Int::Small(s);
                return;
            }
        }
        *self = Int::from_big(self.to_bigint() + rhs.to_bigint());
    }
}

impl AddAssign for Int {
    fn add_assign(&mut self, rhs: Int) {
        *self += &rhs;
    }
}

impl<'a> SubAssign<&'a Int> for Int {
    fn sub_assign(&mut self, rhs: &'a Int) {
        if let (Int::Small(x), Int::Small(y)) = (&*self, rhs) {
            if let Some(s) = x.checked_sub(*y) {
                *self = Int::Small(s);
                return;
            }
        }
        *self = Int::from_big(self.to_bigint() - rhs.to_bigint());
    }
}

impl SubAssign for Int {
    fn sub_assign(&mut self, rhs: Int) {
        *self -= &rhs;
    }
}

impl Add for Int {
    type Output = Int;
    fn add(mut self, rhs: Int) -> Int {
        self += &rhs;
        self
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, rhs: &'a Int) -> Int {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for Int {
    type Output = Int;
    fn sub(mut self, rhs: Int) -> Int {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn mul(self, rhs: &'a Int) -> Int {
        if let (Int::Small(x), Int::Small(y)) = (self, rhs) {
            if let Some(p) = x.checked_mul(*y) {
                return Int::Small(p);
            }
        }
        Int::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        &self * &rhs
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(v)),
            },
            Int::Big(b) => Int::from_big(-*b),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        let mut acc = Int::ZERO;
        for x in iter {
            acc += &x;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let mut a = Int::Small(i64::MAX);
        a += &Int::ONE;
        assert!(matches!(a, Int::Big(_)));
        a -= &Int::ONE;
        assert_eq!(a, Int::Small(i64::MAX));
    }

    #[test]
    fn add_mul_overflow_path_matches_bigint() {
        let mut acc = Int::Small(5);
        let x = Int::Small(i64::MAX / 2);
        acc.add_mul(&x, &Int::Small(4));
        let expect = BigInt::from(5) + BigInt::from(i64::MAX / 2) * 4;
        assert_eq!(acc.to_bigint(), expect);
    }

    #[test]
    fn exact_division() {
        assert_eq!(Int::Small(12).div_exact(4), Some(Int::Small(3)));
        assert_eq!(Int::Small(13).div_exact(4), None);
        let big = Int::from(BigInt::from(i64::MAX) * 6);
        assert_eq!(big.div_exact(6), Some(Int::Small(i64::MAX)));
    }

    #[test]
    fn negation_of_min_promotes() {
        let n = -Int::Small(i64::MIN);
        assert_eq!(n.to_bigint(), -BigInt::from(i64::MIN));
        assert!(n.is_positive());
    }
}
