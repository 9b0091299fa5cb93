use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;

use super::Rational;

/// A commutative ring given as a context object; elements are plain values.
///
/// Carrying the modulus (or other structure) in the context keeps element
/// types small and lets generic code over matrices, series and modules stay
/// independent of how a particular ring is represented.
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational, or `None` when its denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;
    /// Multiplicative inverse when `a` is a unit.
    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn render(&self, a: &Self::Elem) -> String;
    fn describe(&self) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// The element as a rational number, for rings embedded in Q.
    fn as_rational(&self, _a: &Self::Elem) -> Option<Rational> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut b = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// Power with a signed exponent; `None` if `e < 0` and `a` is not a unit.
    fn pow_signed(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.try_inv(a).map(|b| self.pow(&b, e.unsigned_abs()))
        }
    }

    fn sum<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A field. Finite fields additionally enumerate their elements.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        self.try_inv(a).expect("inverse of zero")
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// Number of elements, `None` if infinite.
    fn order(&self) -> Option<u64>;

    /// All elements in a fixed order (zero first) for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Residue characteristic image of an element of the prime field, if any.
    fn prime_subfield_value(&self, _a: &Self::Elem) -> Option<u64> {
        None
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn from_int(&self, n: &BigInt) -> Rational {
        Rational::from_int(n.clone())
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
    fn try_inv(&self, a: &Rational) -> Option<Rational> {
        a.recip()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn as_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }
    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        "Q".to_string()
    }
}

impl Field for RationalField {
    fn order(&self) -> Option<u64> {
        None
    }
}
