use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Field, Rational, Ring};
use crate::error::{domain, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduce an arbitrary integer into `[0, p)`.
pub fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().expect("residue fits")
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    Some(t.rem_euclid(p as i128) as u64)
}

/// The prime field F_p; elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(domain(format!("{p} is not a supported prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        reduce_int(n, self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let d = inv_mod(reduce_int(q.denom(), self.p), self.p)?;
        Some(reduce_int(q.numer(), self.p) * d % self.p)
    }
    fn try_inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn render(&self, a: &u64) -> String {
        format!("{a}")
    }
    fn describe(&self) -> String {
        format!("F_{}", self.p)
    }
}

impl Field for PrimeField {
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn prime_subfield_value(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.try_inv(&0), None);
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn rational_images() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f.from_rational(&Rational::new(1, 2)), Some(2));
        assert_eq!(f.from_rational(&Rational::new(4, 3)), None);
        assert_eq!(f.from_rational(&Rational::from(-1)), Some(2));
    }
}
