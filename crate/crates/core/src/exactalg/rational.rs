//! Exact rationals with an `i128` fast path.
//!
//! Values that fit a reduced `i128` fraction stay inline; anything larger is
//! promoted to a boxed `BigRational`. The representation is canonical, so
//! derived equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub enum Rational {
    /// Reduced, `den > 0`, neither part `i128::MIN`.
    Small(i128, i128),
    /// Only used when the value does not fit `Small`.
    Big(Box<BigRational>),
}

fn gcd(a: i128, b: i128) -> i128 {
    match (i64::try_from(a), i64::try_from(b)) {
        (Ok(x), Ok(y)) => x.unsigned_abs().gcd(&y.unsigned_abs()) as i128,
        _ => a.unsigned_abs().gcd(&b.unsigned_abs()) as i128,
    }
}

/// `i128` product, widening directly when both factors fit `i64`.
#[inline]
fn mul_i128(a: i128, b: i128) -> Option<i128> {
    match (i64::try_from(a), i64::try_from(b)) {
        (Ok(x), Ok(y)) => Some(x as i128 * y as i128),
        _ => a.checked_mul(b),
    }
}

fn big(n: BigInt, d: BigInt) -> Rational {
    Rational::from_big(BigRational::new(n, d))
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    pub fn int(n: i64) -> Self {
        Rational::Small(n as i128, 1)
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    /// Callers guarantee `den != 0`.
    fn from_i128(num: i128, den: i128) -> Self {
        if num == i128::MIN || den == i128::MIN {
            return big(BigInt::from(num), BigInt::from(den));
        }
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if d != 1 {
            let g = gcd(n, d);
            if g > 1 {
                n /= g;
                d /= g;
            }
        }
        Rational::Small(n, d)
    }

    /// Canonicalizes a big rational (demotes when it fits).
    pub fn from_big(r: BigRational) -> Self {
        let r = if r.denom().is_negative() || !r.numer().gcd(r.denom()).is_one() {
            BigRational::new(r.numer().clone(), r.denom().clone())
        } else {
            r
        };
        match (r.numer().to_i128(), r.denom().to_i128()) {
            (Some(n), Some(d)) if n != i128::MIN => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Rational {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        match self {
            Rational::Small(n, d) => Self::from_i128(*d, *n),
            Rational::Big(b) => Self::from_big(b.recip()),
        }
    }

    /// Wire format: always `p/q`.
    pub fn to_wire(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rational::Small(n, d) => *n as f64 / *d as f64,
            Rational::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn add_ref(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a, *b, *c, *d);
            if b == 1 && d == 1 {
                if let Some(s) = a.checked_add(c) {
                    return Self::from_i128(s, 1);
                }
            } else if b == d {
                if let Some(s) = a.checked_add(c) {
                    return Self::from_i128(s, b);
                }
            } else {
                let g = gcd(b, d);
                let (b1, d1) = (b / g, d / g);
                let n = mul_i128(a, d1).zip(mul_i128(c, b1)).and_then(|(x, y)| x.checked_add(y));
                if let (Some(n), Some(den)) = (n, mul_i128(b, d1)) {
                    return Self::from_i128(n, den);
                }
            }
        }
        Self::from_big(self.to_big() + o.to_big())
    }

    fn mul_ref(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::ZERO,
            (Rational::Small(a, 1), Rational::Small(c, 1)) => match mul_i128(*a, *c) {
                Some(p) => Self::from_i128(p, 1),
                None => big(BigInt::from(*a) * BigInt::from(*c), BigInt::one()),
            },
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let g1 = gcd(*a, *d);
                let g2 = gcd(*c, *b);
                let (a1, d1, c1, b1) = (a / g1, d / g1, c / g2, b / g2);
                match (mul_i128(a1, c1), mul_i128(b1, d1)) {
                    (Some(n), Some(den)) => Self::from_i128(n, den),
                    _ => big(BigInt::from(a1) * BigInt::from(c1), BigInt::from(b1) * BigInt::from(d1)),
                }
            }
            _ => Self::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg_ref(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::Small(-n, *d),
            Rational::Big(b) => Self::from_big(-(**b).clone()),
        }
    }

    pub fn pow(&self, e: u32) -> Rational {
        let mut acc = Rational::ONE;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let l = xs.into_iter().fold(BigInt::one(), |l, x| if x.is_integer() { l } else { l.lcm(&x.denom()) });
    Rational::from_big(BigRational::from_integer(l))
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl PartialEq for Rational {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(x), Rational::Big(y)) => x == y,
            _ => false,
        }
    }
}
impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rational::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) if b == d => a.cmp(c),
            (Rational::Small(a, b), Rational::Small(c, d)) => match (mul_i128(*a, *d), mul_i128(*c, *b)) {
                (Some(x), Some(y)) => x.cmp(&y),
                _ => self.to_big().cmp(&o.to_big()),
            },
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}
impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal {:?}", self.0)
    }
}
impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
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
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n)
    }
}
impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::int(n as i64)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, o: &'a Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(self, o)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &'a Rational) -> Rational {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                self.$m(&o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a.mul_ref(&b.recip()));

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}
impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, o: &Rational) {
        *self = self.add_ref(o);
    }
}
impl AddAssign for Rational {
    fn add_assign(&mut self, o: Rational) {
        *self = self.add_ref(&o);
    }
}
impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, o: &Rational) {
        *self = self.add_ref(&o.neg_ref());
    }
}
impl SubAssign for Rational {
    fn sub_assign(&mut self, o: Rational) {
        *self -= &o;
    }
}
impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, o: &Rational) {
        *self = self.mul_ref(o);
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}
impl One for Rational {
    fn one() -> Self {
        Rational::ONE
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_wire())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(q(2, -4), q(-1, 2));
        assert_eq!(q(0, -7), Rational::ZERO);
        assert_eq!(q(6, 3).to_wire(), "2/1");
    }

    #[test]
    fn overflow_promotes() {
        let big = Rational::from_big(BigRational::from_integer(BigInt::from(i128::MAX)));
        let s = &big + &big;
        assert!(matches!(s, Rational::Big(_)));
        assert_eq!(s.to_big(), BigRational::from_integer(BigInt::from(i128::MAX) * 2));
        let back = &s - &big;
        assert!(matches!(back, Rational::Small(_, 1)));
        assert_eq!(back, big);
        let m = -&big - Rational::ONE;
        assert!(matches!(m, Rational::Big(_)));
        assert_eq!((-&m).to_big(), -m.to_big());
        let w = Rational::int(i64::MAX);
        assert!(matches!(&w * &w, Rational::Small(_, 1)));
        let f = Rational::new(i64::MAX, 3) * Rational::new(i64::MAX - 1, 7);
        assert_eq!(f.to_big(), BigRational::new(i64::MAX.into(), 3.into()) * BigRational::new((i64::MAX - 1).into(), 7.into()));
    }

    #[test]
    fn parses_wire_forms() {
        assert_eq!("3/6".parse::<Rational>().unwrap(), q(1, 2));
        assert_eq!("-4".parse::<Rational>().unwrap(), q(-4, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        let huge: Rational = "123456789012345678901234567891/2".parse().unwrap();
        assert_eq!(huge.to_wire(), "123456789012345678901234567891/2");
    }

    fn arb() -> impl Strategy<Value = (i64, i64)> {
        prop_oneof![
            (-50i64..50, 1i64..50),
            (any::<i64>(), 1i64..i64::MAX),
            (any::<i64>(), Just(1i64)),
        ]
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational((a, b) in arb(), (c, d) in arb()) {
            let x = q(a, b);
            let y = q(c, d);
            let bx = BigRational::new(a.into(), b.into());
            let by = BigRational::new(c.into(), d.into());
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            if !y.is_zero() {
                prop_assert_eq!((&x / &y).to_big(), &bx / &by);
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            prop_assert_eq!(Rational::from_big(bx.clone()), x.clone());
            prop_assert_eq!(x.to_wire().parse::<Rational>().unwrap(), x);
        }

        // operands near the i128 boundary
        #[test]
        fn wide_operands_agree((a, b) in arb(), (c, d) in arb(), (e, f) in arb(), (g, h) in arb()) {
            let x = q(a, b) * q(c, d);
            let y = q(e, f) * q(g, h);
            let bx = BigRational::new(a.into(), b.into()) * BigRational::new(c.into(), d.into());
            let by = BigRational::new(e.into(), f.into()) * BigRational::new(g.into(), h.into());
            prop_assert_eq!(x.to_big(), bx.clone());
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            prop_assert_eq!(Rational::from_big(bx), x);
        }
    }
}
