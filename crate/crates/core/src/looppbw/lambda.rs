//! Garland's Λ-elements, the integral Cartan basis, τ_k and the formal
//! evaluation map.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{Block, HyperElement, LoopGenerator, PbwMonomial};
use crate::error::{domain, Result};
use crate::exactnum::{factorial, MPoly, MPolyRing, Rational, Series};

/// Coefficients `Λ_{±0}, …, Λ_{±n}` as polynomials in the variables `h_j`
/// (labelled by `j`).
fn lambda_series(sign: i64, n: usize) -> Vec<MPoly> {
    let mut c = vec![MPoly::zero()];
    for s in 1..=n {
        c.push(MPoly::var(sign * s as i64).scale(&Rational::new(-1, s as i64)));
    }
    let ser = Series::new(&MPolyRing, &c, n).exp(&MPolyRing).expect("char 0 exp");
    ser.coeffs().to_vec()
}

/// `Λ_r` as a polynomial in the `h_j`.
pub fn lambda_poly(r: i64) -> MPoly {
    if r == 0 {
        return MPoly::one();
    }
    let n = r.unsigned_abs() as usize;
    lambda_series(r.signum(), n).swap_remove(n)
}

/// `Λ_{r;k} = τ_k(Λ_r)` as a polynomial in the `h_j`.
pub fn lambda_twisted_poly(r: i64, k: i64) -> MPoly {
    lambda_poly(r).substitute(&mut |j| MPoly::var(j * k))
}

fn cartan_element(p: &MPoly) -> HyperElement {
    let mut out = HyperElement::zero();
    for (m, c) in p.terms() {
        let cartan: Block = m.iter().map(|&(j, e)| (j, e as u32)).collect();
        out.add_term(PbwMonomial { cartan, ..Default::default() }, c);
    }
    out
}

fn cartan_poly(b: &Block) -> MPoly {
    MPoly::monomial(b.iter().map(|&(j, e)| (j, e as i32)).collect(), Rational::one())
}

pub fn lambda_element(r: i64) -> HyperElement {
    cartan_element(&lambda_poly(r))
}

/// Integral basis element `binom(h₀, e)·Π_j Λ_{sign(j)·n_j; |j|}` of U(ĥ)_Z.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanBasisKey {
    pub binom_h0: u32,
    pub lambdas: Vec<(i64, u32)>,
}

impl CartanBasisKey {
    /// The basis element whose top-degree term is a multiple of the `h`-monomial `b`.
    fn for_monomial(b: &Block) -> CartanBasisKey {
        let mut key = CartanBasisKey::default();
        for &(j, e) in b {
            if j == 0 {
                key.binom_h0 = e;
            } else {
                key.lambdas.push((j, e));
            }
        }
        key
    }

    pub fn poly(&self) -> MPoly {
        let mut p = MPoly::one();
        for i in 0..self.binom_h0 as i64 {
            p = p.mul(&MPoly::var(0).sub(&MPoly::constant(Rational::from(i))));
        }
        p = p.scale(&Rational::from_int(factorial(self.binom_h0 as u64)).recip().unwrap());
        for &(j, n) in &self.lambdas {
            p = p.mul(&lambda_twisted_poly(j.signum() * n as i64, j.abs()));
        }
        p
    }

    fn leading_coeff(&self) -> Rational {
        let mut c = Rational::from_int(factorial(self.binom_h0 as u64)).recip().unwrap();
        for &(_, n) in &self.lambdas {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            c = c * Rational::from(sign) / Rational::from_int(factorial(n as u64));
        }
        c
    }
}

fn cartan_to_basis(mut p: MPoly) -> BTreeMap<CartanBasisKey, Rational> {
    let mut out = BTreeMap::new();
    while let Some(deg) = p.total_degree() {
        let (m, c) = p
            .terms()
            .iter()
            .find(|(m, _)| m.iter().map(|x| x.1).sum::<i32>() == deg)
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let b: Block = m.iter().map(|&(j, e)| (j, e as u32)).collect();
        let key = CartanBasisKey::for_monomial(&b);
        let coef = c / key.leading_coeff();
        p = p.sub(&key.poly().scale(&coef));
        out.insert(key, coef);
    }
    out
}

/// Coordinates of `e` in the integral PBW basis (divided powers, binomials
/// in `h₀`, twisted Λ's); `None` if some coordinate is not an integer.
pub fn z_form_coordinates(e: &HyperElement) -> Option<BTreeMap<(Block, CartanBasisKey, Block), BigInt>> {
    let mut groups: BTreeMap<(Block, Block), MPoly> = BTreeMap::new();
    for (m, c) in e.terms() {
        let g = groups.entry((m.lower.clone(), m.raise.clone())).or_default();
        *g = g.add(&cartan_poly(&m.cartan).scale(c));
    }
    let mut out = BTreeMap::new();
    for ((lo, ra), p) in groups {
        for (key, c) in cartan_to_basis(p) {
            if !c.is_integer() {
                return None;
            }
            out.insert((lo.clone(), key, ra.clone()), c.numer().clone());
        }
    }
    Some(out)
}

pub fn z_form_member(e: &HyperElement) -> bool {
    z_form_coordinates(e).is_some()
}

/// `h_{sign·s}` for `s = 0..=n` as polynomials in the variables `Λ_{sign·r}`
/// (labelled by `sign·r`), via `h_s = −s·[u^s] log Λ(u)`.
pub fn h_in_lambdas(sign: i64, n: usize) -> Vec<MPoly> {
    let mut c = vec![MPoly::one()];
    for r in 1..=n {
        c.push(MPoly::var(sign * r as i64));
    }
    let log = Series::new(&MPolyRing, &c, n).log(&MPolyRing).expect("char 0 log");
    (0..=n).map(|s| log.coeff(s).scale(&Rational::from(-(s as i64)))).collect()
}

/// `Λ_{sign·s; k}` rewritten as a polynomial in the untwisted `Λ_{sign·r}`.
pub fn twisted_in_lambdas(sign: i64, s: u32, k: u32) -> MPoly {
    let n = (s * k) as usize;
    let hs = h_in_lambdas(sign, n);
    lambda_twisted_poly(sign * s as i64, k as i64).substitute(&mut |j| hs[j.unsigned_abs() as usize].clone())
}

/// `τ_k`: multiply every loop degree by `k`.
pub fn tau_twist(e: &HyperElement, k: i64) -> Result<HyperElement> {
    if k == 0 {
        return Err(domain("τ_k needs k ≠ 0"));
    }
    Ok(e.map_degrees(|r| r * k))
}

/// Image of the formal evaluation map, graded by the power of `t`.
pub type EvImage = BTreeMap<i64, HyperElement>;

pub fn formal_ev(e: &HyperElement) -> EvImage {
    let mut out: EvImage = BTreeMap::new();
    for (m, c) in e.terms() {
        let letters = m.letters();
        let tdeg: i64 = letters.iter().map(|(g, k)| g.r * *k as i64).sum();
        let word: Vec<(LoopGenerator, u32)> =
            letters.iter().map(|&(g, k)| (LoopGenerator { kind: g.kind, r: 0 }, k)).collect();
        let img = HyperElement::from_word(&word).scale(c);
        let slot = out.entry(tdeg).or_default();
        *slot = slot.add(&img);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// The evaluation map at `t = t₀`.
pub fn formal_ev_at(e: &HyperElement, t0: &Rational) -> HyperElement {
    formal_ev(e)
        .into_iter()
        .fold(HyperElement::zero(), |acc, (d, x)| acc.add(&x.scale(&t0.pow(d))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lambdas() {
        assert_eq!(lambda_element(0), HyperElement::one());
        assert_eq!(lambda_element(1), HyperElement::h(1).neg());
        let l2 = HyperElement::h(1).mul(&HyperElement::h(1)).sub(&HyperElement::h(2)).scale(&Rational::new(1, 2));
        assert_eq!(lambda_element(2), l2);
        assert_eq!(lambda_element(-1), HyperElement::h(-1).neg());
    }

    #[test]
    fn integrality_examples() {
        for r in -6..=6 {
            assert!(z_form_member(&lambda_element(r)), "Λ_{r}");
        }
        let x = HyperElement::lower(0, 1);
        assert!(z_form_member(&x.mul(&x).scale(&Rational::new(1, 2))));
        assert!(!z_form_member(&HyperElement::h(0).scale(&Rational::new(1, 2))));
        assert!(z_form_member(&HyperElement::binom_h(-3, 3)));
        // h₁/2 = −Λ₁/2 is not integral
        assert!(!z_form_member(&HyperElement::h(1).scale(&Rational::new(1, 2))));
    }

    #[test]
    fn twisted_lambda_in_untwisted() {
        // Λ_{1;2} = −h₂ = 2Λ₂ − Λ₁²
        let t = tau_twist(&lambda_element(1), 2).unwrap();
        assert_eq!(t, HyperElement::h(2).neg());
        let expect = MPoly::var(2).scale(&Rational::from(2)).sub(&MPoly::var(1).pow(2));
        assert_eq!(twisted_in_lambdas(1, 1, 2), expect);
        assert!(tau_twist(&t, 0).is_err());
        assert_eq!(tau_twist(&HyperElement::lower(3, 1), 2).unwrap(), HyperElement::lower(6, 1));
    }

    #[test]
    fn evaluation_of_lambdas() {
        let ev = formal_ev(&lambda_element(2));
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[&2], HyperElement::binom_h(0, 2));
        let ev = formal_ev(&lambda_element(-1));
        assert_eq!(ev[&-1], HyperElement::h(0).neg());
        // H(u) = ev_{−1}(Λ⁺(u)) has coefficients binom(h, k)
        for k in 0..5 {
            assert_eq!(formal_ev_at(&lambda_element(k), &Rational::from(-1)), HyperElement::binom_h(0, k as u32));
        }
    }
}
