use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::fp::{inv_mod, is_prime, reduce_int};
use super::{Field, Rational, Ring};
use crate::error::{domain, Result};

/// F_{p^d} for d ≤ 4, represented by polynomial residues modulo a monic
/// irreducible `f`. An element is encoded as the integer `Σ c_i p^i` of its
/// coefficient vector; multiplication goes through discrete-log tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    d: u32,
    modulus: Vec<u64>,
    exp: Vec<u64>,
    log: Vec<u64>,
}

fn poly_rem_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // m monic
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        r.pop();
    }
    r
}

fn has_root(f: &[u64], p: u64) -> bool {
    (0..p).any(|x| f.iter().rev().fold(0, |acc, c| (acc * x + c) % p) == 0)
}

/// Irreducibility for degrees up to 4: no linear factor, and for degree 4
/// no monic quadratic factor.
pub fn is_irreducible_small(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 || f[d] % p == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    if has_root(f, p) {
        return false;
    }
    if d == 4 {
        for c0 in 0..p {
            for c1 in 0..p {
                let q = [c0, c1, 1];
                if poly_rem_mod(f, &q, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
    }
    d <= 4
}

impl FiniteField {
    /// F_{p^d} with the lexicographically first monic irreducible modulus.
    pub fn new(p: u64, d: u32) -> Result<Self> {
        if !(1..=4).contains(&d) {
            return Err(domain(format!("extension degree {d} outside [1,4]")));
        }
        let q = p.pow(d);
        for code in 0..q {
            let mut f: Vec<u64> = (0..d).map(|i| code / p.pow(i) % p).collect();
            f.push(1);
            if is_irreducible_small(&f, p) {
                return Self::with_modulus(p, f);
            }
        }
        Err(domain("no irreducible polynomial found"))
    }

    /// F_p[x]/(f) for a monic `f` given by ascending coefficients.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        let d = modulus.len().saturating_sub(1) as u32;
        if !(1..=4).contains(&d) || modulus[d as usize] != 1 {
            return Err(domain("modulus must be monic of degree 1..4"));
        }
        if !is_irreducible_small(&modulus, p) {
            return Err(domain("modulus is reducible"));
        }
        let q = p.pow(d);
        let mut field = FiniteField { p, d, modulus, exp: vec![], log: vec![] };
        // find a generator of the multiplicative group
        for g in 1..q {
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut x = 1u64;
            let mut ok = true;
            for i in 0..q - 1 {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = field.slow_mul(x, g);
            }
            if ok && x == 1 {
                let mut log = vec![0; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u64;
                }
                field.exp = exp;
                field.log = log;
                return Ok(field);
            }
        }
        Err(domain("no primitive element"))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.d)
    }

    pub fn to_coeffs(&self, a: u64) -> Vec<u64> {
        (0..self.d).map(|i| a / self.p.pow(i) % self.p).collect()
    }

    pub fn from_coeffs(&self, c: &[u64]) -> u64 {
        let r = poly_rem_mod(c, &self.modulus, self.p);
        r.iter().rev().fold(0, |acc, &x| acc * self.p + x % self.p)
    }

    /// The class of x.
    pub fn generator_x(&self) -> u64 {
        self.from_coeffs(&[0, 1])
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let (ca, cb) = (self.to_coeffs(a), self.to_coeffs(b));
        let mut prod = vec![0u64; ca.len() + cb.len()];
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.from_coeffs(&prod)
    }

    fn digitwise(&self, a: u64, b: u64, f: impl Fn(u64, u64) -> u64) -> u64 {
        let mut out = 0;
        let mut scale = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.d {
            out += f(a % self.p, b % self.p) % self.p * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }
}

impl Ring for FiniteField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.digitwise(*a, *b, |x, y| x + y)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        let p = self.p;
        self.digitwise(*a, *b, |x, y| x + p - y)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.exp.len() as u64;
        self.exp[((self.log[*a as usize] + self.log[*b as usize]) % n) as usize]
    }
    fn neg(&self, a: &u64) -> u64 {
        self.sub(&0, a)
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        reduce_int(n, self.p)
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let d = inv_mod(reduce_int(q.denom(), self.p), self.p)?;
        Some(reduce_int(q.numer(), self.p) * d % self.p)
    }
    fn try_inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let n = self.exp.len() as u64;
        Some(self.exp[((n - self.log[*a as usize]) % n) as usize])
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn render(&self, a: &u64) -> String {
        if self.d == 1 {
            return format!("{a}");
        }
        let c = self.to_coeffs(*a);
        let parts: Vec<String> = c.iter().map(|x| format!("{x}")).collect();
        format!("[{}]", parts.join(","))
    }
    fn describe(&self) -> String {
        if self.d == 1 {
            return format!("F_{}", self.p);
        }
        let parts: Vec<String> = self.modulus.iter().map(|x| format!("{x}")).collect();
        format!("F_{}^{}[{}]", self.p, self.d, parts.join(","))
    }
}

impl Field for FiniteField {
    fn order(&self) -> Option<u64> {
        Some(self.size())
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.size()).collect())
    }
    fn prime_subfield_value(&self, a: &u64) -> Option<u64> {
        (*a < self.p).then_some(*a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_checks() {
        // 1 + u + u^2 over F_3 has root 1
        assert!(!is_irreducible_small(&[1, 1, 1], 3));
        // x^2 + 1 over F_3 is irreducible
        assert!(is_irreducible_small(&[1, 0, 1], 3));
        // (x^2+1)^2 = x^4 + 2x^2 + 1 over F_3: no roots but reducible
        assert!(!is_irreducible_small(&[1, 0, 2, 0, 1], 3));
        assert!(FiniteField::with_modulus(3, vec![1, 0, 2, 0, 1]).is_err());
    }

    #[test]
    fn field_of_nine() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.size(), 9);
        let x = f.generator_x();
        // x^2 = -1 for the modulus x^2+1
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.mul(&x, &x), f.neg(&1));
        for a in 1..9 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn degree_four_exists() {
        for p in [2, 3, 5] {
            let f = FiniteField::new(p, 4).unwrap();
            let all = f.elements().unwrap();
            let nonzero = all.iter().filter(|&&a| a != 0).count() as u64;
            assert_eq!(nonzero, f.size() - 1);
        }
    }
}
