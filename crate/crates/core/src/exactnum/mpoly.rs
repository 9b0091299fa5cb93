use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{Rational, Ring};

/// Exponent vector: sorted `(variable, exponent)` pairs with nonzero exponents.
pub type Mono = Vec<(i64, i32)>;

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            let e = a[i].1 + b[j].1;
            if e != 0 {
                out.push((a[i].0, e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Multivariate Laurent polynomial with rational coefficients; variables are
/// integer labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct MPoly {
    terms: BTreeMap<Mono, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        MPoly::monomial(Vec::new(), c)
    }

    pub fn one() -> Self {
        MPoly::constant(Rational::one())
    }

    pub fn var(v: i64) -> Self {
        MPoly::monomial(alloc::vec![(v, 1)], Rational::one())
    }

    pub fn monomial(m: Mono, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Mono, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MPoly {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, s: &Rational) -> MPoly {
        if s.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(mono_mul(m1, m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        (0..e).fold(MPoly::one(), |acc, _| acc.mul(self))
    }

    /// Total degree of the top homogeneous component (`None` for zero).
    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.iter().map(|(_, e)| e).sum()).max()
    }

    /// Substitute each variable through `f` (powers must be nonnegative
    /// unless the image is invertible, which is the caller's concern).
    pub fn substitute(&self, f: &mut impl FnMut(i64) -> MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for &(v, e) in m {
                assert!(e >= 0, "negative exponent in substitution");
                t = t.mul(&f(v).pow(e as u32));
            }
            out = out.add(&t);
        }
        out
    }

    pub fn render_with(&self, name: &dyn Fn(i64) -> String) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            for &(v, e) in m {
                if e == 1 {
                    factors.push(name(v));
                } else {
                    factors.push(format!("{}^{}", name(v), e));
                }
            }
            let body = factors.join("*");
            let s = if body.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                body
            } else if *c == Rational::from(-1) {
                format!("-{body}")
            } else {
                format!("{c}*{body}")
            };
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl core::fmt::Debug for MPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.render_with(&|v| format!("v{v}")))
    }
}

/// The Laurent polynomial ring Q[v_i^{±1}] as a ring context.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MPolyRing;

impl Ring for MPolyRing {
    type Elem = MPoly;
    fn zero(&self) -> MPoly {
        MPoly::zero()
    }
    fn one(&self) -> MPoly {
        MPoly::one()
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b)
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.sub(b)
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b)
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        a.neg()
    }
    fn from_int(&self, n: &BigInt) -> MPoly {
        MPoly::constant(Rational::from_int(n.clone()))
    }
    fn from_rational(&self, q: &Rational) -> Option<MPoly> {
        Some(MPoly::constant(q.clone()))
    }
    fn try_inv(&self, a: &MPoly) -> Option<MPoly> {
        if a.terms.len() != 1 {
            return None;
        }
        let (m, c) = a.terms.iter().next().unwrap();
        let inv: Mono = m.iter().map(|&(v, e)| (v, -e)).collect();
        Some(MPoly::monomial(inv, c.recip()?))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &MPoly) -> bool {
        a.is_zero()
    }
    fn as_rational(&self, a: &MPoly) -> Option<Rational> {
        a.as_constant()
    }
    fn render(&self, a: &MPoly) -> String {
        format!("{a:?}")
    }
    fn describe(&self) -> String {
        String::from("Q[v^±1]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_arithmetic() {
        let a = MPoly::var(0);
        let b = MPoly::var(1);
        let d = a.sub(&b).pow(2);
        let expect = a.mul(&a).sub(&a.mul(&b).scale(&Rational::from(2))).add(&b.mul(&b));
        assert_eq!(d, expect);
        let inv = MPolyRing.try_inv(&a).unwrap();
        assert_eq!(a.mul(&inv), MPoly::one());
        assert!(MPolyRing.try_inv(&a.add(&b)).is_none());
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = MPoly::var(3);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.total_degree(), Some(1));
    }
}
