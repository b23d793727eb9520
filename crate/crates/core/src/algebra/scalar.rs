//! Exact scalars: machine-word fast paths that escalate to arbitrary precision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Commutative ring operations needed by the chain-complex engines.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse when `self` is a unit.
    fn inv(&self) -> Option<Self>;
    /// True over a field.
    fn is_field() -> bool;

    fn is_unit(&self) -> bool {
        self.inv().is_some()
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Integer with an `i64` fast path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    fn from_i128(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(x) => Int::Small(x),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(x) => Int::Small(x),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(x) => BigInt::from(*x),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(x) => Some(*x),
            Int::Big(_) => None,
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(x) => Int::from_i128((*x as i128).abs()),
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(x) => *x < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    /// Euclidean division with nonnegative remainder.
    pub fn div_rem_euclid(&self, other: &Int) -> (Int, Int) {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let (a, b) = (*a as i128, *b as i128);
                (Int::from_i128(a.div_euclid(b)), Int::from_i128(a.rem_euclid(b)))
            }
            _ => {
                let (a, b) = (self.to_big(), other.to_big());
                let (q, r) = a.div_mod_floor(&b);
                if r.is_negative() {
                    // only reachable for negative divisors
                    (Int::from_big(q + 1), Int::from_big(r - &b))
                } else {
                    (Int::from_big(q), Int::from_big(r))
                }
            }
        }
    }

    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        self.abs().cmp(&other.abs())
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
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(x) => write!(f, "{x}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Ring for Int {
    fn zero() -> Self {
        Int::Small(0)
    }
    fn one() -> Self {
        Int::Small(1)
    }
    fn from_i64(n: i64) -> Self {
        Int::Small(n)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => Int::from_i128(*a as i128 + *b as i128),
            _ => Int::from_big(self.to_big() + other.to_big()),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => Int::from_i128(*a as i128 - *b as i128),
            _ => Int::from_big(self.to_big() - other.to_big()),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => Int::from_i128(*a as i128 * *b as i128),
            _ => Int::from_big(self.to_big() * other.to_big()),
        }
    }
    fn neg(&self) -> Self {
        match self {
            Int::Small(a) => Int::from_i128(-(*a as i128)),
            Int::Big(b) => Int::from_big(-b),
        }
    }
    fn inv(&self) -> Option<Self> {
        match self {
            Int::Small(1) => Some(Int::Small(1)),
            Int::Small(-1) => Some(Int::Small(-1)),
            _ => None,
        }
    }
    fn is_field() -> bool {
        false
    }
}

/// Rational number with an `i64/i64` fast path (denominator positive, reduced).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

impl Rat {
    fn from_i128_pair(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let g = gcd_i128(n, d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::Small(a, b),
            _ => Rat::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rat::Small(a, b),
            _ => Rat::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(a, b) => BigRational::new(BigInt::from(*a), BigInt::from(*b)),
            Rat::Big(r) => r.clone(),
        }
    }

    pub fn new(n: i64, d: i64) -> Rat {
        Rat::from_i128_pair(n as i128, d as i128)
    }

    /// Integer value, if the number is integral and fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rat::Small(a, 1) => Some(*a),
            _ => None,
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(a, 1) => write!(f, "{a}"),
            Rat::Small(a, b) => write!(f, "{a}/{b}"),
            Rat::Big(r) => write!(f, "{r}"),
        }
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        Rat::Small(0, 1)
    }
    fn one() -> Self {
        Rat::Small(1, 1)
    }
    fn from_i64(n: i64) -> Self {
        Rat::Small(n, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(x) => Rat::Small(x, 1),
                        None => Rat::from_i128_pair(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                    (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                        Some(n) => Rat::from_i128_pair(n, z),
                        None => Rat::from_big(self.to_big() + other.to_big()),
                    },
                    _ => Rat::from_big(self.to_big() + other.to_big()),
                }
            }
            _ => Rat::from_big(self.to_big() + other.to_big()),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Rat::Small(a, 1), Rat::Small(c, 1)) => match a.checked_mul(*c) {
                Some(x) => Rat::Small(x, 1),
                None => Rat::from_i128_pair(*a as i128 * *c as i128, 1),
            },
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::from_i128_pair(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * other.to_big()),
        }
    }
    fn neg(&self) -> Self {
        match self {
            Rat::Small(a, b) if *a != i64::MIN => Rat::Small(-a, *b),
            Rat::Small(a, b) => Rat::from_i128_pair(-(*a as i128), *b as i128),
            Rat::Big(r) => Rat::from_big(-r),
        }
    }
    fn inv(&self) -> Option<Self> {
        match self {
            Rat::Small(0, _) => None,
            Rat::Small(a, b) => Some(Rat::from_i128_pair(*b as i128, *a as i128)),
            Rat::Big(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Rat::from_big(r.recip()))
                }
            }
        }
    }
    fn is_field() -> bool {
        true
    }
}

impl From<&Int> for Rat {
    fn from(x: &Int) -> Rat {
        match x {
            Int::Small(a) => Rat::Small(*a, 1),
            Int::Big(b) => Rat::from_big(BigRational::from_integer(b.clone())),
        }
    }
}
