use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::fp::{inv_mod, is_prime, reduce_int};
use super::{Field, Rational, Ring};
use crate::error::{domain, Result};

/// p-adic valuation; `Inf` sorts above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Fin(i64),
    Inf,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Fin(v) => Some(v),
            Val::Inf => None,
        }
    }
}

fn int_val(n: &BigInt, p: u64) -> i64 {
    let pb = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn val_p(x: &Rational, p: u64) -> Val {
    if x.is_zero() {
        return Val::Inf;
    }
    Val::Fin(int_val(x.numer(), p) - int_val(x.denom(), p))
}

/// Image in F_p of an element of Z_(p).
pub fn residue(x: &Rational, p: u64) -> Result<u64> {
    match val_p(x, p) {
        Val::Fin(v) if v < 0 => Err(domain(format!("{x} has negative {p}-adic valuation"))),
        _ => {
            let d = inv_mod(reduce_int(x.denom(), p), p).expect("unit denominator");
            Ok(reduce_int(x.numer(), p) * d % p)
        }
    }
}

/// Element of the localization Z_(p): a rational together with its prime.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DvrElem {
    pub q: Rational,
    pub p: u64,
}

impl DvrElem {
    pub fn new(q: Rational, p: u64) -> Self {
        DvrElem { q, p }
    }

    pub fn val(&self) -> Val {
        val_p(&self.q, self.p)
    }

    pub fn residue(&self) -> Result<u64> {
        residue(&self.q, self.p)
    }

    pub fn is_unit(&self) -> bool {
        self.val() == Val::Fin(0)
    }
}

/// Z_(p) as a ring context: elements are rationals, and only rationals with
/// unit denominators are meant to appear as lattice coordinates. Arithmetic
/// is carried out in the fraction field Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dvr {
    p: u64,
}

impl Dvr {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        Ok(Dvr { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn val(&self, x: &Rational) -> Val {
        val_p(x, self.p)
    }

    pub fn residue(&self, x: &Rational) -> Result<u64> {
        residue(x, self.p)
    }

    pub fn is_unit(&self, x: &Rational) -> bool {
        self.val(x) == Val::Fin(0)
    }

    /// Splits nonzero `x` as `p^v · u` with `u` a unit.
    pub fn split(&self, x: &Rational) -> (i64, Rational) {
        let v = self.val(x).finite().expect("nonzero");
        let pv = Rational::from(self.p as i64).pow(v);
        (v, x / &pv)
    }

    /// Integer representative in `[0, p^v)` of `x` modulo `p^v`, for `x ∈ Z_(p)`.
    pub fn rep_mod_pow(&self, x: &Rational, v: u32) -> Rational {
        let m = BigInt::from(self.p).pow(v);
        let d = x.denom().modinv(&m).expect("unit denominator");
        let r = (x.numer() * d).mod_floor(&m);
        Rational::from_int(r)
    }
}

impl Ring for Dvr {
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
    fn as_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }
    fn render(&self, a: &Rational) -> String {
        format!("{a}")
    }
    fn describe(&self) -> String {
        format!("Z_({})", self.p)
    }
}

impl Field for Dvr {
    fn order(&self) -> Option<u64> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(val_p(&Rational::from(1), 5), Val::Fin(0));
        assert_eq!(val_p(&Rational::from(9), 3), Val::Fin(2));
        assert_eq!(val_p(&Rational::new(4, 3), 3), Val::Fin(-1));
        assert_eq!(val_p(&Rational::zero(), 3), Val::Inf);
        assert!(Val::Fin(1_000_000) < Val::Inf);
    }

    #[test]
    fn residues() {
        assert_eq!(residue(&Rational::from(4), 3), Ok(1));
        assert_eq!(residue(&Rational::new(1, 2), 3), Ok(2));
        assert_eq!(residue(&Rational::from(3), 3), Ok(0));
        assert!(residue(&Rational::new(4, 3), 3).is_err());
    }

    #[test]
    fn reps_mod_powers() {
        let a = Dvr::new(3).unwrap();
        assert_eq!(a.rep_mod_pow(&Rational::new(1, 2), 2), Rational::from(5));
        assert_eq!(a.rep_mod_pow(&Rational::from(-1), 1), Rational::from(2));
    }
}
