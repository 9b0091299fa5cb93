//! Divided-power PBW calculus in U(ŝl₂) over Q.
//!
//! Monomials are kept in the order lower < cartan < raise, loop degree
//! ascending inside each block. Lower and raise blocks carry divided-power
//! exponents; the cartan block carries ordinary powers of `h_r`.

mod hopf;
mod identities;
mod lambda;
mod weyl;

pub use hopf::{antipode, coproduct, counit, Tensor};
pub use identities::{
    basicrel_sides, check_comutxh, check_ev_lambda, check_ht_structure, check_koslem, check_lambda_antipode,
    check_lambda_coproduct, check_ppowerh, check_ppowerx, check_sbrw, verify_basicrel,
    IdentityCheck, Sign,
};
pub use lambda::{
    formal_ev, formal_ev_at, h_in_lambdas, lambda_element, lambda_poly, lambda_twisted_poly,
    tau_twist, twisted_in_lambdas, z_form_coordinates, z_form_member, CartanBasisKey, EvImage,
};
pub use weyl::{
    weyl_upper_bound, xi_degree, xi_max_exponent, StraighteningMonomial, StraightenedModel,
    WeylBound, WeylWindows,
};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::exactnum::{factorial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    Lower,
    Cartan,
    Raise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopGenerator {
    pub kind: GenKind,
    pub r: i64,
}

/// `(r, k)` pairs sorted by `r`, all `k ≥ 1`.
pub type Block = Vec<(i64, u32)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial {
    pub lower: Block,
    pub cartan: Block,
    pub raise: Block,
}

fn block_bump(b: &Block, r: i64, by: i64) -> (Block, u32) {
    let mut out = b.clone();
    match out.binary_search_by_key(&r, |x| x.0) {
        Ok(i) => {
            let old = out[i].1;
            let new = (old as i64 + by) as u32;
            if new == 0 {
                out.remove(i);
            } else {
                out[i].1 = new;
            }
            (out, old)
        }
        Err(i) => {
            assert!(by > 0);
            out.insert(i, (r, by as u32));
            (out, 0)
        }
    }
}

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.lower.is_empty() && self.cartan.is_empty() && self.raise.is_empty()
    }

    /// Sum of divided exponents of the lower block.
    pub fn lower_degree(&self) -> u32 {
        self.lower.iter().map(|x| x.1).sum()
    }

    /// Letters left to right.
    pub fn letters(&self) -> Vec<(LoopGenerator, u32)> {
        let tag = |kind, b: &Block| {
            b.iter().map(move |&(r, k)| (LoopGenerator { kind, r }, k)).collect::<Vec<_>>()
        };
        let mut out = tag(GenKind::Lower, &self.lower);
        out.extend(tag(GenKind::Cartan, &self.cartan));
        out.extend(tag(GenKind::Raise, &self.raise));
        out
    }

    pub fn map_degrees(&self, f: impl Fn(i64) -> i64) -> PbwMonomial {
        let m = |b: &Block| {
            let mut v: Block = b.iter().map(|&(r, k)| (f(r), k)).collect();
            v.sort();
            v
        };
        PbwMonomial { lower: m(&self.lower), cartan: m(&self.cartan), raise: m(&self.raise) }
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        for (g, k) in self.letters() {
            parts.push(match (g.kind, k) {
                (GenKind::Lower, 1) => format!("x-_{}", g.r),
                (GenKind::Lower, k) => format!("(x-_{})^({k})", g.r),
                (GenKind::Cartan, 1) => format!("h_{}", g.r),
                (GenKind::Cartan, e) => format!("h_{}^{e}", g.r),
                (GenKind::Raise, 1) => format!("x+_{}", g.r),
                (GenKind::Raise, k) => format!("(x+_{})^({k})", g.r),
            });
        }
        write!(f, "{}", parts.join("·"))
    }
}

/// Element of U(ŝl₂) as a coefficient map on PBW monomials.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperElement {
    terms: BTreeMap<PbwMonomial, Rational>,
}

impl HyperElement {
    pub fn zero() -> Self {
        HyperElement::default()
    }

    pub fn one() -> Self {
        HyperElement::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        HyperElement::term(PbwMonomial::one(), c)
    }

    pub fn term(m: PbwMonomial, c: Rational) -> Self {
        let mut e = HyperElement::zero();
        e.add_term(m, &c);
        e
    }

    /// `(x^±_r)^{(k)}` or `h_r^k`.
    pub fn gen(kind: GenKind, r: i64, k: u32) -> Self {
        if k == 0 {
            return HyperElement::one();
        }
        let b = alloc::vec![(r, k)];
        let m = match kind {
            GenKind::Lower => PbwMonomial { lower: b, ..Default::default() },
            GenKind::Cartan => PbwMonomial { cartan: b, ..Default::default() },
            GenKind::Raise => PbwMonomial { raise: b, ..Default::default() },
        };
        HyperElement::term(m, Rational::one())
    }

    pub fn lower(r: i64, k: u32) -> Self {
        HyperElement::gen(GenKind::Lower, r, k)
    }

    pub fn raise(r: i64, k: u32) -> Self {
        HyperElement::gen(GenKind::Raise, r, k)
    }

    pub fn h(r: i64) -> Self {
        HyperElement::gen(GenKind::Cartan, r, 1)
    }

    /// `binom(h₀ + shift, k)`.
    pub fn binom_h(shift: i64, k: u32) -> Self {
        let mut out = HyperElement::one();
        for i in 0..k as i64 {
            let f = HyperElement::h(0).add(&HyperElement::scalar(Rational::from(shift - i)));
            out = out.mul(&f);
        }
        out.scale(&Rational::from_int(factorial(k as u64)).recip().unwrap())
    }

    /// Normal-ordered product of a word of letters `(generator, k)`, where
    /// `k` is a divided power for `x^±` and an ordinary power for `h`.
    pub fn from_word(word: &[(LoopGenerator, u32)]) -> Self {
        word.iter().rev().fold(HyperElement::one(), |acc, &(g, k)| apply_letter(g, k, &acc))
    }

    pub fn terms(&self) -> &BTreeMap<PbwMonomial, Rational> {
        &self.terms
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c.clone();
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &HyperElement) -> HyperElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &HyperElement) -> HyperElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> HyperElement {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> HyperElement {
        if s.is_zero() {
            return HyperElement::zero();
        }
        HyperElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect() }
    }

    pub fn mul(&self, o: &HyperElement) -> HyperElement {
        let mut out = HyperElement::zero();
        for (m, c) in &self.terms {
            let mut cur = o.scale(c);
            for (g, k) in m.letters().into_iter().rev() {
                cur = apply_letter(g, k, &cur);
            }
            out = out.add(&cur);
        }
        out
    }

    pub fn pow(&self, e: u32) -> HyperElement {
        (0..e).fold(HyperElement::one(), |acc, _| acc.mul(self))
    }

    /// Keep only the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&PbwMonomial) -> bool) -> HyperElement {
        HyperElement { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Every coefficient is an integer multiple of `p`.
    pub fn all_coeffs_divisible(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.terms.values().all(|c| c.is_integer() && (c.numer() % &p) == BigInt::from(0))
    }

    pub fn all_coeffs_integral(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    pub fn map_degrees(&self, f: impl Fn(i64) -> i64) -> HyperElement {
        let mut out = HyperElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_degrees(&f), c);
        }
        out
    }
}

impl fmt::Display for HyperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("{c}")
                } else if c.is_one() {
                    format!("{m}")
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HyperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn apply_letter(g: LoopGenerator, k: u32, e: &HyperElement) -> HyperElement {
    let mut cur = e.clone();
    for _ in 0..k {
        let mut next = HyperElement::zero();
        for (m, c) in &cur.terms {
            lmul(g, m, c, &mut next);
        }
        cur = next;
    }
    if g.kind == GenKind::Cartan {
        cur
    } else {
        cur.scale(&Rational::from_int(factorial(k as u64)).recip().unwrap())
    }
}

/// `out += c · g · m` with the result normal-ordered.
fn lmul(g: LoopGenerator, m: &PbwMonomial, c: &Rational, out: &mut HyperElement) {
    match g.kind {
        GenKind::Lower => {
            let (lower, old) = block_bump(&m.lower, g.r, 1);
            let coef = c.clone() * Rational::from(old as i64 + 1);
            out.add_term(PbwMonomial { lower, ..m.clone() }, &coef);
        }
        GenKind::Cartan => {
            let (cartan, _) = block_bump(&m.cartan, g.r, 1);
            out.add_term(PbwMonomial { cartan, ..m.clone() }, c);
            // [h_r, x⁻_t] = −2 x⁻_{t+r}, a derivation on the lower block
            let coef = c.clone() * Rational::from(-2);
            for &(t, _) in &m.lower {
                let (lower, _) = block_bump(&m.lower, t, -1);
                let rest = PbwMonomial { lower, ..m.clone() };
                lmul(LoopGenerator { kind: GenKind::Lower, r: t + g.r }, &rest, &coef, out);
            }
        }
        GenKind::Raise => {
            let s = g.r;
            if let Some(&(t, k)) = m.lower.first() {
                // x⁺_s x_t^{(k)} = (1/k)(x⁻_t x⁺_s + h_{s+t}) x_t^{(k−1)}
                let (lower, _) = block_bump(&m.lower, t, -1);
                let rest = PbwMonomial { lower, ..m.clone() };
                let coef = c.clone() * Rational::new(1, k as i64);
                let mut tmp = HyperElement::zero();
                lmul(g, &rest, &Rational::one(), &mut tmp);
                let lo = LoopGenerator { kind: GenKind::Lower, r: t };
                for (m2, c2) in &tmp.terms {
                    lmul(lo, m2, &(c2.clone() * coef.clone()), out);
                }
                lmul(LoopGenerator { kind: GenKind::Cartan, r: s + t }, &rest, &coef, out);
            } else if let Some(&(r, _)) = m.cartan.first() {
                // x⁺_s h_r = h_r x⁺_s − 2 x⁺_{r+s}
                let (cartan, _) = block_bump(&m.cartan, r, -1);
                let rest = PbwMonomial { cartan, ..m.clone() };
                let mut tmp = HyperElement::zero();
                lmul(g, &rest, &Rational::one(), &mut tmp);
                let hr = LoopGenerator { kind: GenKind::Cartan, r };
                for (m2, c2) in &tmp.terms {
                    lmul(hr, m2, &(c2.clone() * c.clone()), out);
                }
                let coef = c.clone() * Rational::from(-2);
                lmul(LoopGenerator { kind: GenKind::Raise, r: r + s }, &rest, &coef, out);
            } else {
                let (raise, old) = block_bump(&m.raise, s, 1);
                let coef = c.clone() * Rational::from(old as i64 + 1);
                out.add_term(PbwMonomial { raise, ..m.clone() }, &coef);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn defining_bracket() {
        let e = HyperElement::raise(0, 1).mul(&HyperElement::lower(0, 1));
        let expect = HyperElement::lower(0, 1).mul(&HyperElement::raise(0, 1)).add(&HyperElement::h(0));
        assert_eq!(e, expect);
        assert_eq!(e.len(), 2);
        assert_eq!(format!("{e}"), "h_0 + x-_0·x+_0");
    }

    #[test]
    fn divided_square() {
        let e = HyperElement::lower(0, 1).mul(&HyperElement::lower(0, 1));
        assert_eq!(e, HyperElement::lower(0, 2).scale(&q(2)));
    }

    #[test]
    fn cartan_shifts() {
        // h₀ x⁻₀ = x⁻₀ h₀ − 2 x⁻₀
        let e = HyperElement::h(0).mul(&HyperElement::lower(0, 1));
        let expect = HyperElement::lower(0, 1).mul(&HyperElement::h(0)).sub(&HyperElement::lower(0, 1).scale(&q(2)));
        assert_eq!(e, expect);
        // x⁺₁ h₂ = h₂ x⁺₁ − 2 x⁺₃
        let e = HyperElement::raise(1, 1).mul(&HyperElement::h(2));
        let expect = HyperElement::h(2).mul(&HyperElement::raise(1, 1)).sub(&HyperElement::raise(3, 1).scale(&q(2)));
        assert_eq!(e, expect);
    }

    #[test]
    fn loop_bracket() {
        // [x⁺_2, x⁻_{-1}] = h_1
        let a = HyperElement::raise(2, 1).mul(&HyperElement::lower(-1, 1));
        let b = HyperElement::lower(-1, 1).mul(&HyperElement::raise(2, 1));
        assert_eq!(a.sub(&b), HyperElement::h(1));
    }

    #[test]
    fn word_matches_product() {
        let w = [
            (LoopGenerator { kind: GenKind::Raise, r: 1 }, 2),
            (LoopGenerator { kind: GenKind::Cartan, r: -1 }, 1),
            (LoopGenerator { kind: GenKind::Lower, r: 0 }, 2),
        ];
        let prod = HyperElement::raise(1, 2).mul(&HyperElement::h(-1)).mul(&HyperElement::lower(0, 2));
        assert_eq!(HyperElement::from_word(&w), prod);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_letter() -> impl Strategy<Value = HyperElement> {
            (0usize..3, -2i64..3, 1u32..3).prop_map(|(kind, r, k)| match kind {
                0 => HyperElement::lower(r, k),
                1 => HyperElement::h(r),
                _ => HyperElement::raise(r, k),
            })
        }

        fn arb_elem() -> impl Strategy<Value = HyperElement> {
            proptest::collection::vec(arb_letter(), 1..4)
                .prop_map(|ls| ls.iter().fold(HyperElement::one(), |acc, l| acc.mul(l)))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            #[test]
            fn associative(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }

            #[test]
            fn unit_is_idempotent_normalization(a in arb_elem()) {
                prop_assert_eq!(HyperElement::one().mul(&a), a.clone());
                prop_assert_eq!(a.mul(&HyperElement::one()), a);
            }
        }
    }
}
