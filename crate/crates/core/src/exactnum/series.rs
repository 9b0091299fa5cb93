use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Rational, Ring};
use crate::error::{domain, Result};

/// Power series truncated after `u^prec`; all `prec + 1` coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<E> {
    c: Vec<E>,
}

/// Default truncation for Drinfeld-polynomial computations.
pub fn default_precision(deg: usize) -> usize {
    2 * deg + 2
}

impl<E: Clone + PartialEq> Series<E> {
    pub fn new<R: Ring<Elem = E>>(r: &R, coeffs: &[E], prec: usize) -> Self {
        let c = (0..=prec).map(|i| coeffs.get(i).cloned().unwrap_or_else(|| r.zero())).collect();
        Series { c }
    }

    pub fn one<R: Ring<Elem = E>>(r: &R, prec: usize) -> Self {
        Series::new(r, &[r.one()], prec)
    }

    pub fn prec(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[E] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &E {
        &self.c[i]
    }

    pub fn add<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        Series { c: self.c.iter().zip(&o.c).map(|(a, b)| r.add(a, b)).collect() }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        Series { c: self.c.iter().zip(&o.c).map(|(a, b)| r.sub(a, b)).collect() }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, s: &E) -> Self {
        Series { c: self.c.iter().map(|a| r.mul(a, s)).collect() }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let n = self.prec().min(o.prec());
        let c = (0..=n)
            .map(|k| {
                (0..=k).fold(r.zero(), |acc, i| r.add(&acc, &r.mul(&self.c[i], &o.c[k - i])))
            })
            .collect();
        Series { c }
    }

    /// `u ↦ u^k` substitution, keeping the precision.
    pub fn dilate<R: Ring<Elem = E>>(&self, r: &R, k: usize) -> Self {
        let n = self.prec();
        let c = (0..=n)
            .map(|i| if i % k == 0 { self.c[i / k].clone() } else { r.zero() })
            .collect();
        Series { c }
    }

    pub fn inv<R: Ring<Elem = E>>(&self, r: &R) -> Result<Self> {
        let c0 = r
            .try_inv(&self.c[0])
            .ok_or_else(|| domain("series inverse needs an invertible constant term"))?;
        let mut out = vec![c0.clone()];
        for k in 1..=self.prec() {
            let s = (1..=k).fold(r.zero(), |acc, i| r.add(&acc, &r.mul(&self.c[i], &out[k - i])));
            out.push(r.neg(&r.mul(&s, &c0)));
        }
        Ok(Series { c: out })
    }

    pub fn exp<R: Ring<Elem = E>>(&self, r: &R) -> Result<Self> {
        if !r.is_zero(&self.c[0]) {
            return Err(domain("series exp needs zero constant term"));
        }
        let mut out = vec![r.one()];
        for n in 1..=self.prec() {
            let inv_n = inverse_of_int(r, n)?;
            let s = (1..=n).fold(r.zero(), |acc, k| {
                let t = r.mul(&r.from_i64(k as i64), &r.mul(&self.c[k], &out[n - k]));
                r.add(&acc, &t)
            });
            out.push(r.mul(&s, &inv_n));
        }
        Ok(Series { c: out })
    }

    pub fn log<R: Ring<Elem = E>>(&self, r: &R) -> Result<Self> {
        if !r.is_one(&self.c[0]) {
            return Err(domain("series log needs constant term 1"));
        }
        let mut out = vec![r.zero()];
        for n in 1..=self.prec() {
            let inv_n = inverse_of_int(r, n)?;
            let mut s = r.mul(&r.from_i64(n as i64), &self.c[n]);
            for k in 1..n {
                let t = r.mul(&r.from_i64(k as i64), &r.mul(&out[k], &self.c[n - k]));
                s = r.sub(&s, &t);
            }
            out.push(r.mul(&s, &inv_n));
        }
        Ok(Series { c: out })
    }
}

fn inverse_of_int<R: Ring>(r: &R, n: usize) -> Result<R::Elem> {
    r.from_rational(&Rational::new(1, n as i64))
        .ok_or_else(|| domain(format!("{n} is not invertible in {}", r.describe())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{MPoly, MPolyRing, PrimeField, RationalField};
    use proptest::prelude::*;

    #[test]
    fn exp_of_zero() {
        let q = RationalField;
        let z = Series::new(&q, &[], 5);
        assert_eq!(z.exp(&q).unwrap(), Series::one(&q, 5));
    }

    #[test]
    fn geometric_inverse() {
        let q = RationalField;
        let a = Rational::new(3, 2);
        let s = Series::new(&q, &[Rational::one(), -a.clone()], 6);
        let inv = s.inv(&q).unwrap();
        for i in 0..=6 {
            assert_eq!(inv.coeff(i), &a.pow(i as i64));
        }
    }

    #[test]
    fn binomial_pattern_of_cartan_exponential() {
        // exp(-Σ h u^s / s) = (1-u)^h: coefficient of u^2 is (h^2 - h)/2
        let ring = MPolyRing;
        let h = MPoly::var(0);
        let terms: Vec<MPoly> = (0..=2)
            .map(|s| if s == 0 { MPoly::zero() } else { h.scale(&Rational::new(-1, s)) })
            .collect();
        let e = Series::new(&ring, &terms, 2).exp(&ring).unwrap();
        assert_eq!(e.coeff(1), &h.scale(&Rational::from(-1)));
        let expect = h.mul(&h).sub(&h).scale(&Rational::new(1, 2));
        assert_eq!(e.coeff(2), &expect);
    }

    #[test]
    fn exp_needs_invertible_integers() {
        let f = PrimeField::new(2).unwrap();
        let s = Series::new(&f, &[0, 1], 3);
        assert!(s.exp(&f).is_err());
        assert!(Series::new(&f, &[1, 1], 3).log(&f).is_err());
    }

    fn arb_series() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-5i64..5, 1..7)
    }

    proptest! {
        #[test]
        fn inverse_is_involutive(mut c in arb_series()) {
            let q = RationalField;
            if c[0] == 0 { c[0] = 1; }
            let v: Vec<Rational> = c.iter().map(|&x| Rational::from(x)).collect();
            let s = Series::new(&q, &v, 6);
            prop_assert_eq!(s.inv(&q).unwrap().inv(&q).unwrap(), s.clone());
            prop_assert_eq!(s.mul(&q, &s.inv(&q).unwrap()), Series::one(&q, 6));
        }

        #[test]
        fn exp_inverts_log(c in arb_series()) {
            let q = RationalField;
            let mut v: Vec<Rational> = c.iter().map(|&x| Rational::from(x)).collect();
            v[0] = Rational::one();
            let s = Series::new(&q, &v, 6);
            prop_assert_eq!(s.log(&q).unwrap().exp(&q).unwrap(), s);
        }

        #[test]
        fn fp_inverse(c in proptest::collection::vec(0u64..5, 1..7)) {
            let f = PrimeField::new(5).unwrap();
            let mut c = c;
            if c[0] == 0 { c[0] = 1; }
            let s = Series::new(&f, &c, 6);
            prop_assert_eq!(s.inv(&f).unwrap().inv(&f).unwrap(), s);
        }
    }
}
