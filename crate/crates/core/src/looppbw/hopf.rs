//! Coproduct, antipode and counit on PBW elements.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{GenKind, HyperElement, LoopGenerator, PbwMonomial};
use crate::exactnum::Rational;

/// Element of an `n`-fold tensor power, keyed by one monomial per slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Vec<PbwMonomial>, Rational>,
}

impl Tensor {
    pub fn unit(arity: usize) -> Self {
        let mut t = Tensor { arity, terms: BTreeMap::new() };
        t.add_term(vec![PbwMonomial::one(); arity], &Rational::one());
        t
    }

    pub fn zero(arity: usize) -> Self {
        Tensor { arity, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<PbwMonomial>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: Vec<PbwMonomial>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let s = self.terms.get(&k).cloned().unwrap_or_else(Rational::zero) + c.clone();
        if s.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }

    pub fn pure(parts: &[HyperElement]) -> Tensor {
        let mut out = Tensor::unit(0);
        for p in parts {
            let mut next = Tensor::zero(out.arity + 1);
            for (k, c) in &out.terms {
                for (m, d) in p.terms() {
                    let mut key = k.clone();
                    key.push(m.clone());
                    next.add_term(key, &(c.clone() * d.clone()));
                }
            }
            out = next;
        }
        out
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), &-c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Tensor) -> Tensor {
        assert_eq!(self.arity, o.arity);
        let mut out = Tensor::zero(self.arity);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let slots: Vec<HyperElement> = ka
                    .iter()
                    .zip(kb)
                    .map(|(a, b)| {
                        HyperElement::term(a.clone(), Rational::one()).mul(&HyperElement::term(b.clone(), Rational::one()))
                    })
                    .collect();
                let prod = Tensor::pure(&slots);
                for (k, c) in prod.terms {
                    out.add_term(k, &(c * ca.clone() * cb.clone()));
                }
            }
        }
        out
    }

    /// Apply `Δ` to slot `i`, raising the arity by one.
    pub fn coproduct_at(&self, i: usize) -> Tensor {
        let mut out = Tensor::zero(self.arity + 1);
        for (k, c) in &self.terms {
            let d = coproduct(&HyperElement::term(k[i].clone(), c.clone()));
            for (dk, dc) in d.terms {
                let mut key = k[..i].to_vec();
                key.extend(dk);
                key.extend_from_slice(&k[i + 1..]);
                out.add_term(key, &dc);
            }
        }
        out
    }

    /// Multiply slots `0` and `1` of a 2-tensor.
    pub fn multiply_out(&self) -> HyperElement {
        assert_eq!(self.arity, 2);
        let mut out = HyperElement::zero();
        for (k, c) in &self.terms {
            let a = HyperElement::term(k[0].clone(), c.clone());
            out = out.add(&a.mul(&HyperElement::term(k[1].clone(), Rational::one())));
        }
        out
    }

    pub fn map_slot(&self, i: usize, f: impl Fn(&HyperElement) -> HyperElement) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (k, c) in &self.terms {
            let img = f(&HyperElement::term(k[i].clone(), c.clone()));
            for (m, d) in img.terms() {
                let mut key = k.clone();
                key[i] = m.clone();
                out.add_term(key, d);
            }
        }
        out
    }

    /// Apply the counit to slot `i`, lowering the arity.
    pub fn counit_at(&self, i: usize) -> Tensor {
        let mut out = Tensor::zero(self.arity - 1);
        for (k, c) in &self.terms {
            if k[i].is_one() {
                let mut key = k.clone();
                key.remove(i);
                out.add_term(key, c);
            }
        }
        out
    }
}

fn letter_coproduct(g: LoopGenerator, k: u32) -> Tensor {
    let single = |e: u32| HyperElement::gen(g.kind, g.r, e);
    match g.kind {
        GenKind::Cartan => {
            let prim = Tensor::pure(&[single(1), HyperElement::one()])
                .add(&Tensor::pure(&[HyperElement::one(), single(1)]));
            (0..k).fold(Tensor::unit(2), |acc, _| acc.mul(&prim))
        }
        _ => (0..=k).fold(Tensor::zero(2), |acc, l| acc.add(&Tensor::pure(&[single(l), single(k - l)]))),
    }
}

pub fn coproduct(e: &HyperElement) -> Tensor {
    let mut out = Tensor::zero(2);
    for (m, c) in e.terms() {
        let mut t = Tensor::unit(2);
        for (g, k) in m.letters() {
            t = t.mul(&letter_coproduct(g, k));
        }
        for (k, d) in t.terms {
            out.add_term(k, &(d * c.clone()));
        }
    }
    out
}

pub fn antipode(e: &HyperElement) -> HyperElement {
    let mut out = HyperElement::zero();
    for (m, c) in e.terms() {
        let mut acc = HyperElement::scalar(c.clone());
        for (g, k) in m.letters().into_iter().rev() {
            // S((x_r)^{(k)}) = (−1)^k (x_r)^{(k)}, S(h^k) = (−h)^k
            let s = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
            acc = acc.mul(&HyperElement::gen(g.kind, g.r, k).scale(&s));
        }
        out = out.add(&acc);
    }
    out
}

pub fn counit(e: &HyperElement) -> Rational {
    e.coeff(&PbwMonomial::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples() -> Vec<HyperElement> {
        vec![
            HyperElement::lower(1, 2),
            HyperElement::raise(0, 3).mul(&HyperElement::lower(-1, 2)),
            HyperElement::h(1).mul(&HyperElement::h(-2)),
            HyperElement::lower(0, 1).mul(&HyperElement::h(2)).mul(&HyperElement::raise(1, 1)),
        ]
    }

    #[test]
    fn coassociative() {
        for e in samples() {
            let d = coproduct(&e);
            assert_eq!(d.coproduct_at(0), d.coproduct_at(1), "{e}");
        }
    }

    #[test]
    fn counit_law() {
        for e in samples() {
            let d = coproduct(&e);
            assert_eq!(d.counit_at(0), Tensor::pure(&[e.clone()]));
            assert_eq!(d.counit_at(1), Tensor::pure(&[e.clone()]));
        }
    }

    #[test]
    fn antipode_law() {
        for e in samples() {
            let d = coproduct(&e);
            let left = d.map_slot(0, antipode).multiply_out();
            let right = d.map_slot(1, antipode).multiply_out();
            let eps = HyperElement::scalar(counit(&e));
            assert_eq!(left, eps, "{e}");
            assert_eq!(right, eps, "{e}");
        }
    }

    #[test]
    fn coproduct_is_multiplicative() {
        let a = HyperElement::raise(0, 1);
        let b = HyperElement::lower(1, 2);
        assert_eq!(coproduct(&a.mul(&b)), coproduct(&a).mul(&coproduct(&b)));
    }
}
