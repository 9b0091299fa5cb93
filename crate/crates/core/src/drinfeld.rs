//! Drinfeld polynomials, ℓ-weights and spectral characters.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{CartanData, Weight, WeightClass};
use crate::error::{domain, Error, Result};
use crate::exactnum::{roots_with_multiplicity, Field, Poly};

/// `ϖ = Π_a ω_{μ_a, a}`: distinct parameters `a ≠ 0` with weight exponents.
/// For sl₂ every exponent is a one-coordinate weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EllWeight<E: Ord> {
    parts: BTreeMap<E, Weight>,
}

fn weight_add(a: &Weight, b: &Weight) -> Weight {
    Weight(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
}

impl<E: Ord + Clone> EllWeight<E> {
    pub fn one() -> Self {
        EllWeight { parts: BTreeMap::new() }
    }

    /// `ω_{μ, a}`.
    pub fn single(a: E, mu: Weight) -> Self {
        let mut w = EllWeight::one();
        w.insert(a, mu);
        w
    }

    /// sl₂ shorthand from `(a, m)` pairs; repeated parameters are merged.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (E, i64)>) -> Self {
        let mut w = EllWeight::one();
        for (a, m) in pairs {
            w = w.mul(&EllWeight::single(a, Weight(vec![m])));
        }
        w
    }

    fn insert(&mut self, a: E, mu: Weight) {
        if mu.0.iter().all(|&x| x == 0) {
            self.parts.remove(&a);
        } else {
            self.parts.insert(a, mu);
        }
    }

    pub fn parts(&self) -> &BTreeMap<E, Weight> {
        &self.parts
    }

    pub fn is_one(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, mu) in &o.parts {
            let new = match out.parts.get(a) {
                Some(x) => weight_add(x, mu),
                None => mu.clone(),
            };
            out.insert(a.clone(), new);
        }
        out
    }

    pub fn inv(&self) -> Self {
        EllWeight { parts: self.parts.iter().map(|(a, m)| (a.clone(), Weight(m.0.iter().map(|x| -x).collect()))).collect() }
    }

    /// sl₂ exponent at `a` (0 if absent).
    pub fn exponent(&self, a: &E) -> i64 {
        self.parts.get(a).map(|w| w.0[0]).unwrap_or(0)
    }

    pub fn is_dominant(&self) -> bool {
        self.parts.values().all(Weight::is_dominant)
    }

    pub fn render<F: Field<Elem = E>>(&self, f: &F) -> String {
        if self.parts.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(a, mu)| {
                let m: Vec<String> = mu.0.iter().map(|x| format!("{x}")).collect();
                format!("ω[{}; {}]", m.join(","), f.render(a))
            })
            .collect();
        parts.join("·")
    }

    /// sl₂: numerator and denominator polynomials `Π(1 − a u)^{±m}`.
    pub fn to_fraction<F: Field<Elem = E>>(&self, f: &F) -> (Poly<E>, Poly<E>) {
        let mut num = Poly::one(f);
        let mut den = Poly::one(f);
        for (a, mu) in &self.parts {
            let lin = Poly::from_coeffs(f, vec![f.one(), f.neg(a)]);
            let m = mu.0[0];
            if m > 0 {
                num = num.mul(f, &lin.pow(f, m as u32));
            } else {
                den = den.mul(f, &lin.pow(f, (-m) as u32));
            }
        }
        (num, den)
    }

    /// The polynomial of a dominant sl₂ ℓ-weight.
    pub fn to_poly<F: Field<Elem = E>>(&self, f: &F) -> Result<Poly<E>> {
        if !self.is_dominant() {
            return Err(domain("ℓ-weight is not a polynomial"));
        }
        Ok(self.to_fraction(f).0)
    }
}

/// An ℓ-weight that may not split over the working field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LWeight<E: Ord> {
    Factored(EllWeight<E>),
    /// Eigenvalue series `1, γ_1, γ_2, …` that did not factor.
    Opaque(Vec<E>),
}

/// Degree of the unsplit part; an extension of that degree is the smallest
/// one guaranteed to contain a root of each of its irreducible factors only
/// when it is irreducible, so it is a hint rather than a promise.
fn extension_hint<E: Clone + PartialEq>(p: &Poly<E>) -> u32 {
    (p.degree().unwrap_or(0) as u32).max(2)
}

/// `ϖ` from a polynomial with constant term 1 whose roots lie in the field.
pub fn factor<F: Field>(f: &F, poly: &Poly<F::Elem>) -> Result<EllWeight<F::Elem>> {
    if poly.is_zero() || !f.is_one(&poly.coeff(f, 0)) {
        return Err(domain("Drinfeld polynomial must have constant term 1"));
    }
    let deg = poly.degree().unwrap();
    if deg == 0 {
        return Ok(EllWeight::one());
    }
    let roots = roots_with_multiplicity(f, poly).unwrap_or_default();
    let found: u32 = roots.iter().map(|r| r.1).sum();
    if found as usize != deg {
        // strip the split part to report the residual degree
        let mut rest = poly.clone();
        for (rho, m) in &roots {
            let lin = Poly::from_coeffs(f, vec![f.neg(rho), f.one()]);
            for _ in 0..*m {
                rest = rest.div_rem(f, &lin).0;
            }
        }
        return Err(Error::RootsOutsideField { degree_hint: extension_hint(&rest) });
    }
    let mut w = EllWeight::one();
    for (rho, m) in roots {
        // a root ρ of Π(1 − a u) means a = ρ⁻¹
        w = w.mul(&EllWeight::single(f.inv(&rho), Weight(vec![m as i64])));
    }
    Ok(w)
}

/// `f⁻(u) = Π (1 − a⁻¹ u)`, computed as reversed coefficients over the leading one.
pub fn minus_involution<F: Field>(f: &F, poly: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
    if poly.is_zero() || f.is_zero(&poly.coeff(f, 0)) {
        return Err(domain("minus involution needs a nonzero constant term"));
    }
    let lead = poly.leading().unwrap().clone();
    let inv = f.try_inv(&lead).ok_or_else(|| domain("leading coefficient must be a unit"))?;
    Ok(poly.reversed(f).scale(f, &inv))
}

/// `ϖ* = Π ω_{−w₀μ_j, a_j}`.
pub fn star<E: Ord + Clone>(w: &EllWeight<E>, cd: &CartanData) -> EllWeight<E> {
    EllWeight { parts: w.parts.iter().map(|(a, mu)| (a.clone(), cd.minus_w0(mu))).collect() }
}

pub fn wt<E: Ord + Clone>(w: &EllWeight<E>, cd: &CartanData) -> Weight {
    w.parts.values().fold(Weight(vec![0; cd.rank()]), |acc, mu| weight_add(&acc, mu))
}

/// Finitely supported map `F^× → P/Q`; zero values are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpectralCharacter<E: Ord> {
    values: BTreeMap<E, WeightClass>,
}

impl<E: Ord + Clone> SpectralCharacter<E> {
    pub fn zero() -> Self {
        SpectralCharacter { values: BTreeMap::new() }
    }

    pub fn values(&self) -> &BTreeMap<E, WeightClass> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, o: &Self, cd: &CartanData) -> Self {
        let mut out = self.clone();
        for (a, c) in &o.values {
            let new = match out.values.get(a) {
                Some(x) => cd.class_add(x, c),
                None => c.clone(),
            };
            if new.is_zero() {
                out.values.remove(a);
            } else {
                out.values.insert(a.clone(), new);
            }
        }
        out
    }

    pub fn neg(&self, cd: &CartanData) -> Self {
        SpectralCharacter { values: self.values.iter().map(|(a, c)| (a.clone(), cd.class_neg(c))).collect() }
    }

    pub fn render<F: Field<Elem = E>>(&self, f: &F) -> String {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(a, c)| {
                let v: Vec<String> = c.0.iter().map(|x| format!("{x}")).collect();
                format!("\"{}\": [{}]", f.render(a), v.join(","))
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

pub fn spectral_character<E: Ord + Clone>(w: &EllWeight<E>, cd: &CartanData) -> SpectralCharacter<E> {
    let mut values = BTreeMap::new();
    for (a, mu) in &w.parts {
        let c = cd.weight_class(mu);
        if !c.is_zero() {
            values.insert(a.clone(), c);
        }
    }
    SpectralCharacter { values }
}

/// ℓ-root lattice membership: products of `α_a = ω_{α, a}` are exactly the
/// kernel of the spectral character.
pub fn in_ell_root_lattice<E: Ord + Clone>(w: &EllWeight<E>, cd: &CartanData) -> bool {
    spectral_character(w, cd).is_zero()
}

/// One module's data for block sorting.
#[derive(Clone, Debug)]
pub struct BlockInput<E: Ord> {
    pub label: String,
    pub ell_weights: Vec<LWeight<E>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockGroup<E: Ord> {
    pub character: SpectralCharacter<E>,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition<E: Ord> {
    pub groups: Vec<BlockGroup<E>>,
    /// Modules whose own factored ℓ-weights disagree on the character.
    pub inconsistent: Vec<String>,
    /// Modules carrying ℓ-weights that did not factor (excluded from checks).
    pub opaque: Vec<String>,
}

pub fn block_partition<E: Ord + Clone>(inputs: &[BlockInput<E>], cd: &CartanData) -> BlockPartition<E> {
    let mut groups: Vec<BlockGroup<E>> = Vec::new();
    let mut inconsistent = Vec::new();
    let mut opaque = Vec::new();
    for m in inputs {
        let mut chars: Vec<SpectralCharacter<E>> = Vec::new();
        for lw in &m.ell_weights {
            match lw {
                LWeight::Factored(w) => {
                    let c = spectral_character(w, cd);
                    if !chars.contains(&c) {
                        chars.push(c);
                    }
                }
                LWeight::Opaque(_) => {
                    if !opaque.contains(&m.label) {
                        opaque.push(m.label.clone());
                    }
                }
            }
        }
        if chars.len() > 1 {
            inconsistent.push(m.label.clone());
        }
        let ch = chars.into_iter().next().unwrap_or_else(SpectralCharacter::zero);
        match groups.iter_mut().find(|g| g.character == ch) {
            Some(g) => g.members.push(m.label.clone()),
            None => groups.push(BlockGroup { character: ch, members: vec![m.label.clone()] }),
        }
    }
    BlockPartition { groups, inconsistent, opaque }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::PrimeField;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn factoring() {
        let f = f3();
        let w = EllWeight::from_exponents([(1u64, 2), (2u64, 1)]);
        let p = w.to_poly(&f).unwrap();
        assert_eq!(factor(&f, &p).unwrap(), w);
        assert!(factor(&f, &Poly::one(&f)).unwrap().is_one());
        // 1 + u + u² = (1 − u)² over F₃, so it factors
        let sq = Poly::from_coeffs(&f, vec![1, 1, 1]);
        assert_eq!(factor(&f, &sq).unwrap(), EllWeight::from_exponents([(1u64, 2)]));
        let irr = Poly::from_coeffs(&f, vec![1, 0, 1]);
        assert_eq!(factor(&f, &irr), Err(Error::RootsOutsideField { degree_hint: 2 }));
    }

    #[test]
    fn minus() {
        let f5 = PrimeField::new(5).unwrap();
        let p = Poly::from_coeffs(&f5, vec![1, 3]); // 1 − 2u
        assert_eq!(minus_involution(&f5, &p).unwrap(), Poly::from_coeffs(&f5, vec![1, 2])); // 1 − 3u
        let q = Poly::from_coeffs(&f5, vec![1, 4]);
        assert_eq!(minus_involution(&f5, &q).unwrap(), q);
        // (1 − 2u)(1 − 3u) is its own image
        let pair = EllWeight::from_exponents([(2u64, 1), (3u64, 1)]).to_poly(&f5).unwrap();
        assert_eq!(minus_involution(&f5, &pair).unwrap(), pair);
    }

    #[test]
    fn characters() {
        let cd = CartanData::sl2();
        let f = f3();
        assert!(spectral_character(&EllWeight::from_exponents([(1u64, 2)]), &cd).is_zero());
        let w = EllWeight::from_exponents([(1u64, 1), (2u64, 1)]);
        let c = spectral_character(&w, &cd);
        assert_eq!(c.values().len(), 2);
        assert_eq!(c.render(&f), "{\"1\": [1], \"2\": [1]}");
        assert_eq!(wt(&w, &cd), Weight(vec![2]));
        assert_eq!(wt(&w.mul(&w.inv()), &cd), Weight(vec![0]));
        assert_eq!(star(&w, &cd), w);
        let a2 = CartanData::preset("A2").unwrap();
        let x = EllWeight::single(1u64, Weight(vec![1, 0]));
        assert_eq!(star(&x, &a2), EllWeight::single(1u64, Weight(vec![0, 1])));
    }

    #[test]
    fn blocks() {
        let cd = CartanData::sl2();
        let m = |l: &str, ws: Vec<EllWeight<u64>>| BlockInput {
            label: l.into(),
            ell_weights: ws.into_iter().map(LWeight::Factored).collect(),
        };
        let inputs = vec![
            m("V(1,1)", vec![EllWeight::from_exponents([(1, 1)]), EllWeight::from_exponents([(1, -1)])]),
            m("V(1,2)", vec![EllWeight::from_exponents([(2, 1)])]),
        ];
        let bp = block_partition(&inputs, &cd);
        assert_eq!(bp.groups.len(), 2);
        assert!(bp.inconsistent.is_empty());
        assert!(block_partition::<u64>(&[], &cd).groups.is_empty());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn character_kernel_is_root_lattice(ms in proptest::collection::vec(-4i64..=4, 1..4)) {
                let cd = CartanData::sl2();
                let w = EllWeight::from_exponents(ms.iter().enumerate().map(|(i, &m)| (i as u64 + 1, m)));
                let all_even = ms.iter().all(|m| m % 2 == 0);
                prop_assert_eq!(in_ell_root_lattice(&w, &cd), all_even);
            }

            #[test]
            fn character_additive(a in proptest::collection::vec(-3i64..=3, 3), b in proptest::collection::vec(-3i64..=3, 3)) {
                let cd = CartanData::sl2();
                let wa = EllWeight::from_exponents(a.iter().enumerate().map(|(i, &m)| (i as u64 + 1, m)));
                let wb = EllWeight::from_exponents(b.iter().enumerate().map(|(i, &m)| (i as u64 + 1, m)));
                let lhs = spectral_character(&wa.mul(&wb), &cd);
                let rhs = spectral_character(&wa, &cd).add(&spectral_character(&wb, &cd), &cd);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn factor_roundtrip(a in proptest::collection::vec(0i64..=3, 4)) {
                let f = PrimeField::new(5).unwrap();
                let w = EllWeight::from_exponents(a.iter().enumerate().map(|(i, &m)| (i as u64 + 1, m)));
                let p = w.to_poly(&f).unwrap();
                prop_assert_eq!(factor(&f, &p).unwrap(), w);
                let mm = minus_involution(&f, &minus_involution(&f, &p).unwrap()).unwrap();
                prop_assert_eq!(mm, p);
            }
        }
    }
}
