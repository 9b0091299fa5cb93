//! MeatAxe over finite fields: Norton's irreducibility test, a brute-force
//! cross-check, and composition series by repeated chopping.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::cartan::CartanData;
use crate::drinfeld::{factor, spectral_character, EllWeight, SpectralCharacter};
use crate::error::{domain, Error, Result};
use crate::exactnum::{Field, Poly};
use crate::linalg::{nullspace, EchelonBasis, Matrix};
use crate::modrep::{drinfeld_polynomial, ell_hw_vectors, Gen, LoopModule};

/// Default cap on `|F|^dim` for exhaustive searches.
pub const DEFAULT_BRUTE_BOUND: u128 = 300_000;

/// Matrices generating the action of the hyperalgebra on a module.
#[derive(Clone, Debug)]
pub struct GeneratorSet<E> {
    pub gens: Vec<(Gen, Matrix<E>)>,
}

impl<E: Clone + PartialEq + Ord> GeneratorSet<E> {
    /// `(x^±_r)^{(p^j)}` over the window, plus `binom(h_0, p^j)`; zero and
    /// repeated matrices are dropped.
    pub fn new<F: Field<Elem = E>>(m: &LoopModule<F>, radius: Option<i64>) -> Result<Self> {
        let f = m.field();
        let p = f.characteristic();
        let span = m.weight_span().max(1);
        let mut ks = vec![1u32];
        if p > 0 {
            let mut k = p;
            while k <= span as u64 {
                ks.push(k as u32);
                k *= p;
            }
        }
        let mut seen = BTreeMap::new();
        let mut push = |g: Gen| -> Result<()> {
            let a = m.op(g)?;
            if !a.is_zero(f) {
                seen.entry(a).or_insert(g);
            }
            Ok(())
        };
        for r in m.r_window(radius) {
            for &k in &ks {
                push(Gen::Lower { r, k })?;
                push(Gen::Raise { r, k })?;
            }
        }
        for &k in &ks {
            push(Gen::HBinom { k })?;
        }
        let mut gens: Vec<(Gen, Matrix<E>)> = seen.into_iter().map(|(a, g)| (g, a)).collect();
        gens.sort_by(|x, y| x.0.cmp(&y.0));
        Ok(GeneratorSet { gens })
    }

    pub fn transposed(&self) -> Self {
        GeneratorSet { gens: self.gens.iter().map(|(g, a)| (*g, a.transpose())).collect() }
    }

    pub fn matrices(&self) -> impl Iterator<Item = &Matrix<E>> {
        self.gens.iter().map(|g| &g.1)
    }
}

/// Smallest invariant subspace containing `seeds`.
pub fn spin_up<F: Field>(f: &F, gens: &GeneratorSet<F::Elem>, n: usize, seeds: &[Vec<F::Elem>]) -> EchelonBasis<F::Elem> {
    let mut eb = EchelonBasis::new(n);
    let mut queue: Vec<Vec<F::Elem>> = Vec::new();
    for s in seeds {
        if eb.insert(f, s.clone()) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if eb.dim() == n {
            break;
        }
        for a in gens.matrices() {
            let w = a.mul_vec(f, &v);
            if eb.insert(f, w.clone()) {
                queue.push(w);
            }
        }
    }
    eb
}

/// Every projective point of the span of `basis`, or `None` past `cap` points.
fn projective_points<F: Field>(f: &F, basis: &[Vec<F::Elem>], cap: u128) -> Option<Vec<Vec<F::Elem>>> {
    let elems = f.elements()?;
    let q = elems.len() as u128;
    let d = basis.len() as u32;
    if d == 0 {
        return Some(Vec::new());
    }
    let count = (q.checked_pow(d)? - 1) / (q - 1);
    if count > cap {
        return None;
    }
    let n = basis[0].len();
    let mut out = Vec::new();
    // leading coefficient 1 at position `lead`, arbitrary afterwards
    for lead in 0..d as usize {
        let tail = d as usize - lead - 1;
        let mut digits = vec![0usize; tail];
        loop {
            let mut v = basis[lead].clone();
            for (t, &dg) in digits.iter().enumerate() {
                let c = &elems[dg];
                if !f.is_zero(c) {
                    for (x, y) in v.iter_mut().zip(&basis[lead + 1 + t]) {
                        *x = f.add(x, &f.mul(c, y));
                    }
                }
            }
            debug_assert_eq!(v.len(), n);
            out.push(v);
            let mut i = 0;
            while i < tail {
                digits[i] += 1;
                if digits[i] < elems.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == tail {
                break;
            }
        }
    }
    Some(out)
}

/// How an irreducibility verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Norton,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility<E> {
    Irreducible(Method),
    /// A proper nonzero submodule, in echelon form.
    Reducible { submodule: Vec<Vec<E>>, method: Method },
    Undecided,
}

impl<E> Irreducibility<E> {
    pub fn is_irreducible(&self) -> Option<bool> {
        match self {
            Irreducibility::Irreducible(_) => Some(true),
            Irreducibility::Reducible { .. } => Some(false),
            Irreducibility::Undecided => None,
        }
    }
}

/// Knobs for the randomised test.
#[derive(Clone, Copy, Debug)]
pub struct MeatAxeConfig {
    pub seed: u64,
    pub attempts: u32,
    pub brute_bound: u128,
    pub radius: Option<i64>,
}

impl Default for MeatAxeConfig {
    fn default() -> Self {
        MeatAxeConfig { seed: 0, attempts: 16, brute_bound: DEFAULT_BRUTE_BOUND, radius: None }
    }
}

fn random_element<F: Field>(
    f: &F,
    elems: &[F::Elem],
    gens: &GeneratorSet<F::Elem>,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Matrix<F::Elem> {
    let mats: Vec<&Matrix<F::Elem>> = gens.matrices().collect();
    let mut theta = Matrix::zeros(f, n, n);
    for _ in 0..4 {
        let len = 1 + (rng.next_u32() % 4) as usize;
        let mut w = Matrix::identity(f, n);
        for _ in 0..len {
            if mats.is_empty() {
                break;
            }
            w = w.mul(f, mats[rng.next_u32() as usize % mats.len()]);
        }
        let c = &elems[1 + rng.next_u32() as usize % (elems.len() - 1)];
        theta = theta.add(f, &w.scale(f, c));
    }
    // a random scalar shift keeps θ from being nilpotent on every attempt
    let s = &elems[rng.next_u32() as usize % elems.len()];
    theta.add(f, &Matrix::identity(f, n).scale(f, s))
}

/// Annihilator in `M` of a subspace of `M*`.
fn annihilator<F: Field>(f: &F, n: usize, dual_sub: &EchelonBasis<F::Elem>) -> Vec<Vec<F::Elem>> {
    let ker = nullspace(f, &Matrix::from_rows(dual_sub.rows().to_vec(), n));
    EchelonBasis::from_vectors(f, n, ker).rows().to_vec()
}

const NORTON_POINT_CAP: u128 = 4096;

fn norton_once<F: Field>(
    f: &F,
    elems: &[F::Elem],
    gens: &GeneratorSet<F::Elem>,
    dual_gens: &GeneratorSet<F::Elem>,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Irreducibility<F::Elem>> {
    let theta = random_element(f, elems, gens, n, rng);
    let mut best: Option<(F::Elem, Vec<Vec<F::Elem>>)> = None;
    for c in elems {
        let ker = nullspace(f, &theta.sub(f, &Matrix::identity(f, n).scale(f, c)));
        if !ker.is_empty() && best.as_ref().map_or(true, |b| ker.len() < b.1.len()) {
            best = Some((c.clone(), ker));
        }
    }
    let (c, ker) = best?;
    for v in projective_points(f, &ker, NORTON_POINT_CAP)? {
        let s = spin_up(f, gens, n, &[v]);
        if s.dim() < n {
            return Some(Irreducibility::Reducible { submodule: s.rows().to_vec(), method: Method::Norton });
        }
    }
    let tt = theta.transpose().sub(f, &Matrix::identity(f, n).scale(f, &c));
    let dker = nullspace(f, &tt);
    for w in projective_points(f, &dker, NORTON_POINT_CAP)? {
        let s = spin_up(f, dual_gens, n, &[w]);
        if s.dim() < n {
            let sub = annihilator(f, n, &s);
            return Some(Irreducibility::Reducible { submodule: sub, method: Method::Norton });
        }
    }
    Some(Irreducibility::Irreducible(Method::Norton))
}

/// Exhaustive check: every projective point must generate the module.
pub fn brute_force<F: Field>(
    m: &LoopModule<F>,
    gens: &GeneratorSet<F::Elem>,
    bound: u128,
) -> Result<Irreducibility<F::Elem>> {
    let f = m.field();
    let n = m.dim();
    let q = f.order().ok_or_else(|| domain("brute force needs a finite field"))? as u128;
    let size = q.checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::BoundExceeded { size, bound });
    }
    let ident: Vec<Vec<F::Elem>> = Matrix::identity(f, n).row_vecs();
    for v in projective_points(f, &ident, u128::MAX).unwrap_or_default() {
        let s = spin_up(f, gens, n, &[v]);
        if s.dim() < n {
            return Ok(Irreducibility::Reducible { submodule: s.rows().to_vec(), method: Method::BruteForce });
        }
    }
    Ok(Irreducibility::Irreducible(Method::BruteForce))
}

/// Norton's test with retries, then brute force within the bound.
pub fn irreducibility<F: Field>(m: &LoopModule<F>, cfg: &MeatAxeConfig) -> Result<Irreducibility<F::Elem>> {
    let f = m.field();
    let elems = f.elements().ok_or_else(|| domain("MeatAxe needs a finite field"))?;
    let n = m.dim();
    if n <= 1 {
        return Ok(Irreducibility::Irreducible(Method::Norton));
    }
    let gens = GeneratorSet::new(m, cfg.radius)?;
    let dual_gens = gens.transposed();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.attempts {
        if let Some(v) = norton_once(f, &elems, &gens, &dual_gens, n, &mut rng) {
            return Ok(v);
        }
    }
    match brute_force(m, &gens, cfg.brute_bound) {
        Ok(v) => Ok(v),
        Err(Error::BoundExceeded { .. }) => Ok(Irreducibility::Undecided),
        Err(e) => Err(e),
    }
}

/// One composition factor with its invariants.
#[derive(Clone, Debug)]
pub struct CompositionFactor<F: Field> {
    pub module: LoopModule<F>,
    pub dim: usize,
    pub character: BTreeMap<i64, usize>,
    pub omega: Poly<F::Elem>,
    /// `None` when `ω` does not split over the field.
    pub ell_weight: Option<EllWeight<F::Elem>>,
    pub spectral: Option<SpectralCharacter<F::Elem>>,
}

#[derive(Clone, Debug)]
pub struct CompositionSeries<F: Field> {
    pub factors: Vec<CompositionFactor<F>>,
    /// Some factor could not be decided within the bounds.
    pub undecided: bool,
}

impl<F: Field> CompositionSeries<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|c| c.dim).collect()
    }

    /// Drinfeld polynomials of the factors, sorted.
    pub fn omegas(&self) -> Vec<Poly<F::Elem>> {
        let mut v: Vec<_> = self.factors.iter().map(|c| c.omega.clone()).collect();
        v.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        v
    }
}

/// Drinfeld polynomial of an irreducible module from its ℓ-highest weight line.
pub fn irreducible_omega<F: Field>(m: &LoopModule<F>, radius: Option<i64>) -> Result<Poly<F::Elem>> {
    let hw = ell_hw_vectors(m, radius)?;
    let top = m.max_weight();
    let v = hw
        .iter()
        .find(|v| m.vector_weight(v) == Some(top))
        .ok_or_else(|| Error::Mismatch("no ℓ-highest weight vector of top weight".into()))?;
    let rep = drinfeld_polynomial(m, v)?;
    if !rep.consistent() {
        return Err(Error::Mismatch("Λ⁻ series disagrees with ω".into()));
    }
    Ok(rep.omega)
}

fn record<F: Field>(m: LoopModule<F>, radius: Option<i64>) -> Result<CompositionFactor<F>> {
    let omega = irreducible_omega(&m, radius)?;
    let ell_weight = factor(m.field(), &omega).ok();
    let cd = CartanData::sl2();
    let spectral = ell_weight.as_ref().map(|w| spectral_character(w, &cd));
    Ok(CompositionFactor {
        dim: m.dim(),
        character: m.character(),
        omega,
        ell_weight,
        spectral,
        module: m,
    })
}

/// Composition factors, bottom to top.
pub fn chop<F: Field>(m: &LoopModule<F>, cfg: &MeatAxeConfig) -> Result<CompositionSeries<F>> {
    let mut out = CompositionSeries { factors: Vec::new(), undecided: false };
    chop_into(m, cfg, &mut out)?;
    Ok(out)
}

fn chop_into<F: Field>(m: &LoopModule<F>, cfg: &MeatAxeConfig, out: &mut CompositionSeries<F>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    match irreducibility(m, cfg)? {
        Irreducibility::Reducible { submodule, .. } => {
            chop_into(&LoopModule::submodule(m, &submodule)?, cfg, out)?;
            chop_into(&LoopModule::quotient(m, &submodule)?, cfg, out)
        }
        Irreducibility::Undecided => {
            out.undecided = true;
            out.factors.push(record(m.clone(), cfg.radius)?);
            Ok(())
        }
        Irreducibility::Irreducible(_) => {
            out.factors.push(record(m.clone(), cfg.radius)?);
            Ok(())
        }
    }
}

/// Dimension of `Hom(M, N)` over the hyperalgebra (commuting with the generators).
pub fn hom_dimension<F: Field>(m: &LoopModule<F>, n: &LoopModule<F>, radius: Option<i64>) -> Result<usize> {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let gm = GeneratorSet::new(m, radius)?;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    let keys: Vec<Gen> = {
        let gn = GeneratorSet::new(n, radius)?;
        let mut k: Vec<Gen> = gm.gens.iter().chain(&gn.gens).map(|g| g.0).collect();
        k.sort();
        k.dedup();
        k
    };
    // unknown X (dn × dm), index i*dm + j; condition B X − X A = 0
    for g in keys {
        let a = m.op(g)?;
        let b = n.op(g)?;
        for i in 0..dn {
            for j in 0..dm {
                let mut row = vec![f.zero(); dn * dm];
                for k in 0..dn {
                    let t = &mut row[k * dm + j];
                    *t = f.add(t, b.get(i, k));
                }
                for k in 0..dm {
                    let t = &mut row[i * dm + k];
                    *t = f.sub(t, a.get(k, j));
                }
                rows.push(row);
            }
        }
    }
    let eb = EchelonBasis::from_vectors(f, dn * dm, rows);
    Ok(dn * dm - eb.dim())
}

/// Isomorphism of irreducibles through their Drinfeld polynomials, with the
/// hom space as a fallback when the polynomials are unavailable.
pub fn iso_ell_hw<F: Field>(m: &LoopModule<F>, n: &LoopModule<F>, radius: Option<i64>) -> Result<bool> {
    if m.character() != n.character() {
        return Ok(false);
    }
    match (irreducible_omega(m, radius), irreducible_omega(n, radius)) {
        (Ok(a), Ok(b)) => Ok(a == b),
        _ => Ok(hom_dimension(m, n, radius)? > 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{FiniteField, PrimeField, Ring};
    use proptest::prelude::*;

    #[test]
    fn evaluation_modules_in_restricted_range_are_irreducible() {
        let f = PrimeField::new(5).unwrap();
        for lam in 0..5 {
            let w = LoopModule::eval_weyl(&f, lam, 2).unwrap();
            let v = irreducibility(&w, &MeatAxeConfig::default()).unwrap();
            assert_eq!(v.is_irreducible(), Some(true), "λ={lam}");
        }
    }

    #[test]
    fn weyl_module_above_p_is_reducible() {
        // W(2,1) over F_2 contains the Frobenius-twisted line
        let f = PrimeField::new(2).unwrap();
        let w = LoopModule::eval_weyl(&f, 2, 1).unwrap();
        let s = chop(&w, &MeatAxeConfig::default()).unwrap();
        assert_eq!(s.dims(), vec![1, 2]);
        let gens = GeneratorSet::new(&w, None).unwrap();
        assert_eq!(brute_force(&w, &gens, DEFAULT_BRUTE_BOUND).unwrap().is_irreducible(), Some(false));
    }

    #[test]
    fn tensor_of_equal_points_splits() {
        let f = PrimeField::new(3).unwrap();
        let w = LoopModule::eval_weyl(&f, 1, 1).unwrap();
        let m = LoopModule::tensor(&w, &w);
        let s = chop(&m, &MeatAxeConfig::default()).unwrap();
        let mut dims = s.dims();
        dims.sort();
        assert_eq!(dims, vec![1, 3]);
        assert!(!s.undecided);
        // every factor shares the parent's spectral character
        let sc: Vec<_> = s.factors.iter().map(|c| c.spectral.clone().unwrap()).collect();
        assert!(sc.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn hom_between_distinct_points() {
        let f = PrimeField::new(5).unwrap();
        let a = LoopModule::eval_weyl(&f, 2, 1).unwrap();
        let b = LoopModule::eval_weyl(&f, 2, 3).unwrap();
        assert_eq!(hom_dimension(&a, &a, None).unwrap(), 1);
        assert_eq!(hom_dimension(&a, &b, None).unwrap(), 0);
        assert!(!iso_ell_hw(&a, &b, None).unwrap());
        let dd = LoopModule::dual(&LoopModule::dual(&a));
        assert!(iso_ell_hw(&a, &dd, None).unwrap());
    }

    #[test]
    fn extension_field_module() {
        let f = FiniteField::new(2, 2).unwrap();
        let x = f.generator_x();
        let m = LoopModule::tensor(
            &LoopModule::eval_weyl(&f, 1, f.one()).unwrap(),
            &LoopModule::eval_weyl(&f, 1, x).unwrap(),
        );
        let v = irreducibility(&m, &MeatAxeConfig::default()).unwrap();
        assert_eq!(v.is_irreducible(), Some(true));
    }

    #[test]
    fn projective_point_count() {
        let f = PrimeField::new(3).unwrap();
        let basis = Matrix::identity(&f, 3).row_vecs();
        assert_eq!(projective_points(&f, &basis, 1000).unwrap().len(), 13);
        assert!(projective_points(&f, &basis, 10).is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn norton_agrees_with_brute_force(
            p in prop_oneof![Just(2u64), Just(3)],
            l1 in 0u32..4, l2 in 0u32..3, a in 1u64..3, b in 1u64..3, seed in 0u64..100,
        ) {
            let f = PrimeField::new(p).unwrap();
            let a = a % p; let b = b % p;
            prop_assume!(a != 0 && b != 0);
            let m = LoopModule::tensor(
                &LoopModule::eval_weyl(&f, l1, a).unwrap(),
                &LoopModule::eval_weyl(&f, l2, b).unwrap(),
            );
            prop_assume!((p as f64).powi(m.dim() as i32) <= DEFAULT_BRUTE_BOUND as f64);
            let cfg = MeatAxeConfig { seed, ..Default::default() };
            let gens = GeneratorSet::new(&m, None).unwrap();
            let nt = irreducibility(&m, &cfg).unwrap().is_irreducible();
            let bf = brute_force(&m, &gens, DEFAULT_BRUTE_BOUND).unwrap().is_irreducible();
            prop_assert_eq!(nt, bf);
        }

        #[test]
        fn chop_preserves_character(p in prop_oneof![Just(2u64), Just(3)], l1 in 0u32..4, l2 in 0u32..4) {
            let f = PrimeField::new(p).unwrap();
            let m = LoopModule::tensor(
                &LoopModule::eval_weyl(&f, l1, 1).unwrap(),
                &LoopModule::eval_weyl(&f, l2, 1).unwrap(),
            );
            let s = chop(&m, &MeatAxeConfig::default()).unwrap();
            let mut total = BTreeMap::new();
            for c in &s.factors {
                for (w, k) in &c.character {
                    *total.entry(*w).or_insert(0) += k;
                }
            }
            prop_assert_eq!(total, m.character());
        }
    }
}
