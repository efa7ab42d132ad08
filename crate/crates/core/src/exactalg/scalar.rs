//! Scalars over ℚ, ℚ(i) and the rational quaternions.
//!
//! Every scalar carries four rational components `a + b i + c j + d k`; the
//! field tag records the smallest algebra the value is meant to live in.
//! Products use the Hamilton rules, which restrict correctly to ℚ and ℚ(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

impl Field {
    /// Real dimension.
    pub fn dim(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Field::Real => "R",
            Field::Complex => "C",
            Field::Quaternion => "H",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Field> {
        match s {
            "R" => Some(Field::Real),
            "C" => Some(Field::Complex),
            "H" => Some(Field::Quaternion),
            _ => None,
        }
    }

    /// The real basis units `1, i, j, k` of this field.
    pub fn units(self) -> Vec<Scalar> {
        (0..self.dim()).map(|c| Scalar::unit(self, c)).collect()
    }
}

/// Equality and hashing compare values only, not the field tag.
#[derive(Clone)]
pub struct Scalar {
    pub field: Field,
    pub c: [Rational; 4],
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}
impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        Scalar { field, c: Default::default() }
    }

    pub fn one(field: Field) -> Self {
        Self::real(field, Rational::ONE)
    }

    pub fn real(field: Field, r: Rational) -> Self {
        let mut s = Self::zero(field);
        s.c[0] = r;
        s
    }

    pub fn int(field: Field, n: i64) -> Self {
        Self::real(field, Rational::int(n))
    }

    /// The `c`-th basis unit (`0 → 1`, `1 → i`, `2 → j`, `3 → k`).
    pub fn unit(field: Field, c: usize) -> Self {
        assert!(c < field.dim());
        let mut s = Self::zero(field);
        s.c[c] = Rational::ONE;
        s
    }

    pub fn complex(re: Rational, im: Rational) -> Self {
        Scalar { field: Field::Complex, c: [re, im, Rational::ZERO, Rational::ZERO] }
    }

    pub fn quaternion(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar { field: Field::Quaternion, c: [a, b, c, d] }
    }

    /// Builds a scalar from its first `field.dim()` components.
    pub fn from_components(field: Field, comps: &[Rational]) -> Self {
        let mut s = Self::zero(field);
        for (k, v) in comps.iter().take(field.dim()).enumerate() {
            s.c[k] = v.clone();
        }
        s
    }

    pub fn components(&self) -> &[Rational] {
        &self.c[..self.field.dim()]
    }

    /// Smallest field containing the value.
    pub fn minimal_field(&self) -> Field {
        if !self.c[2].is_zero() || !self.c[3].is_zero() {
            Field::Quaternion
        } else if !self.c[1].is_zero() {
            Field::Complex
        } else {
            Field::Real
        }
    }

    pub fn with_field(mut self, field: Field) -> Self {
        debug_assert!(self.minimal_field() <= field);
        self.field = field;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.c[1..].iter().all(Rational::is_zero)
    }

    pub fn re(&self) -> &Rational {
        &self.c[0]
    }

    pub fn conj(&self) -> Self {
        Scalar {
            field: self.field,
            c: [self.c[0].clone(), -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }

    /// Sum of squared components.
    pub fn norm(&self) -> Rational {
        self.c.iter().map(|x| x * x).sum()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero scalar");
        let r = n.recip();
        let cj = self.conj();
        Scalar { field: self.field, c: cj.c.map(|x| &x * &r) }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Scalar { field: self.field, c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r] }
    }
}

/// Real scalars as `"p/q"`, others as arrays of components.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.field == Field::Real {
            return self.c[0].serialize(s);
        }
        self.components().serialize(s)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Field::Real => write!(f, "{}", self.c[0]),
            Field::Complex => write!(f, "({}+{}i)", self.c[0], self.c[1]),
            Field::Quaternion => write!(f, "({}+{}i+{}j+{}k)", self.c[0], self.c[1], self.c[2], self.c[3]),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            field: self.field.max(o.field),
            c: [&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2], &self.c[3] + &o.c[3]],
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            field: self.field.max(o.field),
            c: [&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2], &self.c[3] - &o.c[3]],
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field, c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]] }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let field = self.field.max(o.field);
        let [a1, b1, c1, d1] = &self.c;
        let [a2, b2, c2, d2] = &o.c;
        if field == Field::Real {
            return Scalar::real(field, a1 * a2);
        }
        if field == Field::Complex {
            return Scalar {
                field,
                c: [a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, Rational::ZERO, Rational::ZERO],
            };
        }
        Scalar {
            field,
            c: [
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            ],
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
