//! Exact rational scalars.
//!
//! Values that fit in machine words stay in a reduced `i64 / i64` form and
//! only spill to `BigRational` when an intermediate result overflows. Both
//! forms are canonical, so structural equality is numeric equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An arbitrary-precision rational number in lowest terms with positive denominator.
#[derive(Clone)]
pub struct Q(Repr);

#[derive(Clone)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub const ZERO: Q = Q(Repr::Small { num: 0, den: 1 });
    pub const ONE: Q = Q(Repr::Small { num: 1, den: 1 });

    pub fn zero() -> Q {
        Q::ZERO
    }

    pub fn one() -> Q {
        Q::ONE
    }

    pub fn from_int(n: i64) -> Q {
        Q(Repr::Small { num: n, den: 1 })
    }

    /// Builds `num / den`, reducing. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Q {
        debug_assert!(den != 0);
        if num == 0 {
            return Q::ZERO;
        }
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q(Repr::Small { num: n, den: d }),
            _ => Q(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(n),
                BigInt::from(d),
            )))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        // BigRational arithmetic keeps values reduced with positive denominator.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Q(Repr::Small { num: n, den: d });
        }
        Q(Repr::Big(Box::new(r)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn recip(&self) -> Q {
        match &self.0 {
            Repr::Small { num, den } => {
                assert!(*num != 0, "reciprocal of zero");
                Q::from_i128(*den as i128, *num as i128)
            }
            Repr::Big(b) => Q::from_big(b.recip()),
        }
    }

    /// Numerator and denominator as big integers.
    pub fn parts(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small { num, den } => (BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (b.numer().clone(), b.denom().clone()),
        }
    }

    fn add_ref(&self, other: &Q) -> Q {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Q::from_int(s);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Q::from_i128(a * d + c * b, b * d)
            }
            _ => Q::from_big(self.to_big() + other.to_big()),
        }
    }

    fn mul_ref(&self, other: &Q) -> Q {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if *a == 0 || *c == 0 {
                    return Q::ZERO;
                }
                if *b == 1 && *d == 1 {
                    if let Some(p) = a.checked_mul(*c) {
                        return Q::from_int(p);
                    }
                }
                Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => {
                if self.is_zero() || other.is_zero() {
                    return Q::ZERO;
                }
                Q::from_big(self.to_big() * other.to_big())
            }
        }
    }

    fn neg_ref(&self) -> Q {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Q(Repr::Small { num: n, den: *den }),
                None => Q::from_big(-self.to_big()),
            },
            Repr::Big(b) => Q::from_big(-(**b).clone()),
        }
    }
}

impl Default for Q {
    fn default() -> Self {
        Q::ZERO
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let (n, d) = self.parts();
        n.hash(state);
        d.hash(state);
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> std::cmp::Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::from_int(n)
    }
}

impl From<i32> for Q {
    fn from(n: i32) -> Q {
        Q::from_int(n as i64)
    }
}

impl From<BigRational> for Q {
    fn from(r: BigRational) -> Q {
        Q::from_big(r)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Q> for &Q {
            type Output = Q;
            fn $m(self, rhs: &Q) -> Q {
                let f: fn(&Q, &Q) -> Q = $body;
                f(self, rhs)
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $m(self, rhs: &Q) -> Q {
                (&self).$m(rhs)
            }
        }
        impl $tr<Q> for &Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a.mul_ref(&b.recip()));

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        self.neg_ref()
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        self.neg_ref()
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, rhs: &Q) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign<Q> for Q {
    fn add_assign(&mut self, rhs: Q) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, rhs: &Q) {
        *self = self.add_ref(&rhs.neg_ref());
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, rhs: &Q) {
        *self = self.mul_ref(rhs);
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseQError(pub String);

impl FromStr for Q {
    type Err = ParseQError;

    fn from_str(s: &str) -> Result<Q, ParseQError> {
        let err = || ParseQError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Zero for Q {
    fn zero() -> Q {
        Q::ZERO
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
}

impl One for Q {
    fn one() -> Q {
        Q::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("3/6".parse::<Q>().unwrap(), Q::new(1, 2));
        assert_eq!("-4/-2".parse::<Q>().unwrap(), Q::from_int(2));
        assert_eq!(Q::new(2, -4).to_string(), "-1/2");
        assert!("1/0".parse::<Q>().is_err());
        assert!("x".parse::<Q>().is_err());
    }

    #[test]
    fn overflow_spills_to_big_and_back() {
        let big = Q::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
        let min = Q::from_int(i64::MIN);
        assert_eq!(-(-min.clone()), min);
    }

    fn small() -> impl Strategy<Value = Q> {
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Q::new(n, d))
    }

    proptest! {
        #[test]
        fn field_identities(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn string_round_trip(a in small()) {
            prop_assert_eq!(a.to_string().parse::<Q>().unwrap(), a);
        }
    }
}
