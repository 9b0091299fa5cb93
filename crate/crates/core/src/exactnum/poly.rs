use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, Rational, Ring};

/// Dense univariate polynomial, coefficients ascending, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly<E> {
    c: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn from_coeffs<R: Ring<Elem = E>>(r: &R, mut c: Vec<E>) -> Self {
        while c.last().is_some_and(|x| r.is_zero(x)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one<R: Ring<Elem = E>>(r: &R) -> Self {
        Poly::from_coeffs(r, vec![r.one()])
    }

    pub fn coeffs(&self) -> &[E] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, r: &R, i: usize) -> E {
        self.c.get(i).cloned().unwrap_or_else(|| r.zero())
    }

    pub fn leading(&self) -> Option<&E> {
        self.c.last()
    }

    pub fn add<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| r.add(&self.coeff(r, i), &o.coeff(r, i))).collect();
        Poly::from_coeffs(r, c)
    }

    pub fn sub<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| r.sub(&self.coeff(r, i), &o.coeff(r, i))).collect();
        Poly::from_coeffs(r, c)
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![r.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = r.add(&c[i + j], &r.mul(a, b));
            }
        }
        Poly::from_coeffs(r, c)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, s: &E) -> Self {
        Poly::from_coeffs(r, self.c.iter().map(|x| r.mul(x, s)).collect())
    }

    pub fn eval<R: Ring<Elem = E>>(&self, r: &R, x: &E) -> E {
        self.c.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    pub fn pow<R: Ring<Elem = E>>(&self, r: &R, e: u32) -> Self {
        (0..e).fold(Poly::one(r), |acc, _| acc.mul(r, self))
    }

    /// Coefficients reversed (`u^deg f(1/u)`).
    pub fn reversed<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Poly::from_coeffs(r, c)
    }

    /// Division with remainder over a field.
    pub fn div_rem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = f.inv(d.leading().unwrap());
        let mut rem = self.c.clone();
        let mut q = vec![f.zero(); self.c.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let coef = f.mul(&rem[top], &lc_inv);
            let shift = top - dd;
            for (i, di) in d.c.iter().enumerate() {
                rem[shift + i] = f.sub(&rem[shift + i], &f.mul(&coef, di));
            }
            q[shift] = coef;
            while rem.last().is_some_and(|x| f.is_zero(x)) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(f, q), Poly::from_coeffs(f, rem))
    }

    /// Monic gcd over a field.
    pub fn gcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(f, &b);
            a = b;
            b = r;
        }
        match a.leading() {
            None => a,
            Some(lc) => {
                let inv = f.inv(lc);
                a.scale(f, &inv)
            }
        }
    }
}

/// Roots with multiplicity of a nonzero polynomial in the working field, or
/// `None` when the field cannot enumerate candidates.
pub fn roots_with_multiplicity<F: Field>(f: &F, p: &Poly<F::Elem>) -> Option<Vec<(F::Elem, u32)>> {
    let cands = candidate_roots(f, p)?;
    let mut out = Vec::new();
    for x in cands {
        let lin = Poly::from_coeffs(f, vec![f.neg(&x), f.one()]);
        let mut q = p.clone();
        let mut m = 0;
        loop {
            let (quo, rem) = q.div_rem(f, &lin);
            if !rem.is_zero() || q.is_zero() {
                break;
            }
            q = quo;
            m += 1;
        }
        if m > 0 {
            out.push((x, m));
        }
    }
    Some(out)
}

fn candidate_roots<F: Field>(f: &F, p: &Poly<F::Elem>) -> Option<Vec<F::Elem>> {
    if let Some(all) = f.elements() {
        return Some(all);
    }
    // characteristic zero: rational root theorem on an integral multiple
    let q: Vec<Rational> = p.coeffs().iter().map(|c| f.as_rational(c)).collect::<Option<_>>()?;
    let roots = rational_root_candidates(&q)?;
    roots.iter().map(|r| f.from_rational(r)).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.bits() > 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_root_candidates(c: &[Rational]) -> Option<Vec<Rational>> {
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x.numer() * &lcm) / x.denom()).collect();
    let low = ints.iter().position(|x| !x.is_zero())?;
    let mut out = Vec::new();
    if low > 0 {
        out.push(Rational::zero());
    }
    let a0 = &ints[low];
    let an = ints.last()?;
    for num in divisors(a0)? {
        for den in divisors(an)? {
            let r = Rational::new(num.clone(), den.clone());
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{PrimeField, RationalField};

    #[test]
    fn division_and_gcd() {
        let f = PrimeField::new(5).unwrap();
        let a = Poly::from_coeffs(&f, vec![4, 0, 1]); // u^2 - 1
        let b = Poly::from_coeffs(&f, vec![1, 1]); // u + 1
        let (q, r) = a.div_rem(&f, &b);
        assert!(r.is_zero());
        assert_eq!(q.coeffs(), &[4, 1]);
        assert_eq!(a.gcd(&f, &b).coeffs(), &[1, 1]);
    }

    #[test]
    fn roots_over_q() {
        let q = RationalField;
        // (1 - 2u)(1 - u/3) = 1 - 7/3 u + 2/3 u^2
        let p = Poly::from_coeffs(
            &q,
            vec![Rational::one(), Rational::new(-7, 3), Rational::new(2, 3)],
        );
        let r = roots_with_multiplicity(&q, &p).unwrap();
        assert_eq!(r, vec![(Rational::new(1, 2), 1), (Rational::from(3), 1)]);
    }

    #[test]
    fn repeated_roots_fp() {
        let f = PrimeField::new(3).unwrap();
        // (1-u)^2 (1-2u) over F_3 -> roots 1 (mult 2) and 2 (since 1-2u vanishes at u=2)
        let a = Poly::from_coeffs(&f, vec![1, 2]);
        let b = Poly::from_coeffs(&f, vec![1, 1]);
        let p = a.mul(&f, &a).mul(&f, &b);
        let r = roots_with_multiplicity(&f, &p).unwrap();
        assert_eq!(r, vec![(1, 2), (2, 1)]);
    }
}
