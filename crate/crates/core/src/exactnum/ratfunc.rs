use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{Field, Poly, Rational, RationalField, Ring};

/// Element of Q(a): a reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RatFunc {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RatFunc {
    fn reduce(num: Poly<Rational>, den: Poly<Rational>) -> RatFunc {
        let q = RationalField;
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(&q) };
        }
        let g = num.gcd(&q, &den);
        let (num, _) = num.div_rem(&q, &g);
        let (den, _) = den.div_rem(&q, &g);
        let lc = den.leading().unwrap().recip().unwrap();
        RatFunc { num: num.scale(&q, &lc), den: den.scale(&q, &lc) }
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    /// Laurent expansion `Σ c_i a^{i+shift}` when the denominator is a power of `a`.
    pub fn as_laurent(&self) -> Option<(i64, Vec<Rational>)> {
        let d = self.den.degree()?;
        let is_monomial = self.den.coeffs()[..d].iter().all(|c| c.is_zero());
        is_monomial.then(|| (-(d as i64), self.num.coeffs().to_vec()))
    }
}

/// The rational function field Q(a) in one indeterminate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RatFuncField;

impl RatFuncField {
    pub fn indeterminate(&self) -> RatFunc {
        let q = RationalField;
        RatFunc {
            num: Poly::from_coeffs(&q, vec![Rational::zero(), Rational::one()]),
            den: Poly::one(&q),
        }
    }

    pub fn from_poly(&self, p: Poly<Rational>) -> RatFunc {
        RatFunc { num: p, den: Poly::one(&RationalField) }
    }
}

impl Ring for RatFuncField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one(&RationalField) }
    }
    fn one(&self) -> RatFunc {
        self.from_poly(Poly::one(&RationalField))
    }
    fn add(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        let q = RationalField;
        if x.den == y.den {
            return RatFunc::reduce(x.num.add(&q, &y.num), x.den.clone());
        }
        let num = x.num.mul(&q, &y.den).add(&q, &y.num.mul(&q, &x.den));
        RatFunc::reduce(num, x.den.mul(&q, &y.den))
    }
    fn sub(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        self.add(x, &self.neg(y))
    }
    fn mul(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        let q = RationalField;
        if x.num.is_zero() || y.num.is_zero() {
            return self.zero();
        }
        RatFunc::reduce(x.num.mul(&q, &y.num), x.den.mul(&q, &y.den))
    }
    fn neg(&self, x: &RatFunc) -> RatFunc {
        RatFunc { num: x.num.scale(&RationalField, &Rational::from(-1)), den: x.den.clone() }
    }
    fn from_int(&self, n: &BigInt) -> RatFunc {
        self.from_rational(&Rational::from_int(n.clone())).unwrap()
    }
    fn from_rational(&self, c: &Rational) -> Option<RatFunc> {
        Some(self.from_poly(Poly::from_coeffs(&RationalField, vec![c.clone()])))
    }
    fn try_inv(&self, x: &RatFunc) -> Option<RatFunc> {
        if x.num.is_zero() {
            return None;
        }
        Some(RatFunc::reduce(x.den.clone(), x.num.clone()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn as_rational(&self, x: &RatFunc) -> Option<Rational> {
        match (x.num.degree(), x.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(x.num.coeffs()[0].clone()),
            _ => None,
        }
    }
    fn render(&self, x: &RatFunc) -> String {
        let show = |p: &Poly<Rational>| {
            let mut parts = Vec::new();
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                parts.push(match i {
                    0 => format!("{c}"),
                    1 => format!("{c}*a"),
                    _ => format!("{c}*a^{i}"),
                });
            }
            if parts.is_empty() {
                String::from("0")
            } else {
                parts.join(" + ")
            }
        };
        if x.den.degree() == Some(0) {
            show(&x.num)
        } else {
            format!("({})/({})", show(&x.num), show(&x.den))
        }
    }
    fn describe(&self) -> String {
        String::from("Q(a)")
    }
}

impl Field for RatFuncField {
    fn order(&self) -> Option<u64> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_reduce() {
        let k = RatFuncField;
        let a = k.indeterminate();
        let one = k.one();
        let am1 = k.sub(&a, &one);
        let a2m1 = k.sub(&k.mul(&a, &a), &one);
        // (a^2-1)/(a-1) = a+1
        let r = k.div(&a2m1, &am1);
        assert_eq!(r, k.add(&a, &one));
        let inv = k.inv(&a);
        assert_eq!(inv.as_laurent(), Some((-1, vec![Rational::one()])));
    }
}
