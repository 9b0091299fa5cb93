//! Straightening inside W(ω): relation saturation and the resulting
//! dimension bound, plus an explicit straightened model in characteristic 0.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{Block, HyperElement, PbwMonomial};
use crate::error::{domain, Error, Result};
use crate::exactnum::{binom_i64, Field, Series};
use crate::linalg::Matrix;

/// `ξ` as sorted `(s, k)` pairs, standing for `Π (x⁻_s)^{(k)} v`.
pub type StraighteningMonomial = Block;

pub fn xi_degree(xi: &StraighteningMonomial) -> u32 {
    xi.iter().map(|x| x.1).sum()
}

pub fn xi_max_exponent(xi: &StraighteningMonomial) -> u32 {
    xi.iter().map(|x| x.1).max().unwrap_or(0)
}

/// Product of two lower monomials: the block is commutative, and
/// `x^{(a)} x^{(b)} = binom(a+b, a) x^{(a+b)}`.
fn mono_mul(a: &Block, b: &Block) -> (Block, BigInt) {
    let mut out = a.clone();
    let mut coef = BigInt::from(1);
    for &(s, k) in b {
        match out.binary_search_by_key(&s, |x| x.0) {
            Ok(i) => {
                let old = out[i].1;
                coef *= binom_i64((old + k) as i64, k as u64);
                out[i].1 = old + k;
            }
            Err(i) => out.insert(i, (s, k)),
        }
    }
    (out, coef)
}

/// All monomials of degree exactly `d` with indices in `[lo, hi)`.
fn monomials(d: u32, lo: i64, hi: i64) -> Vec<Block> {
    fn rec(d: u32, s: i64, hi: i64, cur: &mut Block, out: &mut Vec<Block>) {
        if d == 0 {
            out.push(cur.clone());
            return;
        }
        if s >= hi {
            return;
        }
        for k in (1..=d).rev() {
            cur.push((s, k));
            rec(d - k, s + 1, hi, cur, out);
            cur.pop();
        }
        rec(d, s + 1, hi, cur, out);
    }
    let mut out = Vec::new();
    rec(d, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `total` into exactly `parts` positive parts, as
/// multiplicity lists `(part, count)`.
fn partitions(total: u32, parts: u32) -> Vec<Vec<(u32, u32)>> {
    fn rec(total: u32, parts: u32, max: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in (1..=max.min(total)).rev() {
            for c in 1..=parts {
                if m * c > total {
                    break;
                }
                cur.push((m, c));
                rec(total - m * c, parts - c, m - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(total, parts, total, &mut Vec::new(), &mut out);
    out
}

/// `[u^N] X_r(u)^{(n)}` where `X_r(u) = Σ_{m≥1} x⁻_{r+m} u^m`; all coefficients are 1.
fn x_divided_coeff(r: i64, n: u32, total: u32) -> Vec<Block> {
    partitions(total, n)
        .into_iter()
        .map(|ps| {
            let mut b: Block = ps.iter().map(|&(m, c)| (r + m as i64, c)).collect();
            b.sort();
            b
        })
        .collect()
}

type Key = (bool, Block);

/// Sparse semi-echelon form; leading key = smallest key.
#[derive(Clone, Debug)]
struct SparseEchelon<E> {
    pivots: BTreeMap<Key, BTreeMap<Key, E>>,
}

impl<E: Clone + PartialEq + Ord> SparseEchelon<E> {
    fn new() -> Self {
        SparseEchelon { pivots: BTreeMap::new() }
    }

    fn lead_reduce<F: Field<Elem = E>>(&self, f: &F, mut row: BTreeMap<Key, E>) -> BTreeMap<Key, E> {
        while let Some((lead, c)) = row.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            let Some(p) = self.pivots.get(&lead) else { break };
            axpy(f, &mut row, &f.neg(&c), p);
        }
        row
    }

    fn insert<F: Field<Elem = E>>(&mut self, f: &F, row: BTreeMap<Key, E>) -> bool {
        let row = self.lead_reduce(f, row);
        let Some((lead, c)) = row.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = f.inv(&c);
        let row = row.into_iter().map(|(k, x)| (k, f.mul(&x, &inv))).collect();
        self.pivots.insert(lead, row);
        true
    }

    /// Reduce every pivot key away; the result lives on non-pivot keys.
    fn full_reduce<F: Field<Elem = E>>(&self, f: &F, mut row: BTreeMap<Key, E>) -> BTreeMap<Key, E> {
        let mut done: BTreeMap<Key, E> = BTreeMap::new();
        while let Some((k, c)) = row.pop_first() {
            match self.pivots.get(&k) {
                Some(p) => {
                    row.insert(k, c.clone());
                    axpy(f, &mut row, &f.neg(&c), p);
                }
                None => {
                    done.insert(k, c);
                }
            }
        }
        done
    }
}

fn axpy<F: Field>(f: &F, row: &mut BTreeMap<Key, F::Elem>, s: &F::Elem, p: &BTreeMap<Key, F::Elem>) {
    for (k, x) in p {
        let add = f.mul(s, x);
        let new = match row.get(k) {
            Some(y) => f.add(y, &add),
            None => add,
        };
        if f.is_zero(&new) {
            row.remove(k);
        } else {
            row.insert(k.clone(), new);
        }
    }
}

/// Saturation windows. The first sweep uses `k ∈ (λ, 2λ]`, `r ∈ [−λ, λ]`
/// and multipliers from the spanning set; each later sweep widens all three
/// by `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylWindows {
    pub k_max: Option<u32>,
    pub r_window: Option<i64>,
    pub max_sweeps: usize,
}

impl Default for WeylWindows {
    fn default() -> Self {
        WeylWindows { k_max: None, r_window: None, max_sweeps: 4 }
    }
}

#[derive(Clone, Debug)]
pub struct WeylBound<E> {
    pub lambda: u32,
    pub bound: usize,
    pub per_degree: Vec<usize>,
    pub sweeps: usize,
    pub stabilized: bool,
    relations: Vec<SparseEchelon<E>>,
}

impl<E: Clone + PartialEq + Ord> WeylBound<E> {
    /// Does `Σ c_ξ v_ξ = 0` follow from the harvested relations?
    pub fn relation_holds<F: Field<Elem = E>>(&self, f: &F, combo: &[(StraighteningMonomial, E)]) -> bool {
        let mut by_deg: BTreeMap<u32, BTreeMap<Key, E>> = BTreeMap::new();
        for (xi, c) in combo {
            let d = xi_degree(xi);
            let row = by_deg.entry(d).or_default();
            let key = (in_span_set(xi, self.lambda), xi.clone());
            let new = match row.get(&key) {
                Some(y) => f.add(y, c),
                None => c.clone(),
            };
            row.insert(key, new);
        }
        by_deg.into_iter().all(|(d, mut row)| {
            row.retain(|_, c| !f.is_zero(c));
            if d as usize >= self.relations.len() {
                return d > self.lambda;
            }
            self.relations[d as usize].lead_reduce(f, row).is_empty()
        })
    }

    pub fn status(&self) -> Result<usize> {
        if self.stabilized {
            Ok(self.bound)
        } else {
            Err(Error::NotStabilized(format!("bound not stabilized after {} sweeps", self.sweeps)))
        }
    }
}

fn in_span_set(xi: &Block, lambda: u32) -> bool {
    xi.iter().all(|&(s, _)| s >= 0 && s < lambda as i64)
}

/// Coefficients `ω_0 = 1, …, ω_λ` of a polynomial with constant term 1.
fn check_omega<F: Field>(f: &F, omega: &[F::Elem]) -> Result<u32> {
    let mut w = omega.to_vec();
    while w.len() > 1 && f.is_zero(w.last().unwrap()) {
        w.pop();
    }
    if w.is_empty() || !f.is_one(&w[0]) {
        return Err(domain("Drinfeld polynomial must have constant term 1"));
    }
    Ok((w.len() - 1) as u32)
}

struct Saturator<'a, F: Field> {
    f: &'a F,
    omega: Vec<F::Elem>,
    lambda: u32,
    ech: Vec<SparseEchelon<F::Elem>>,
    seen: BTreeSet<(u32, u32, i64, Block)>,
}

impl<F: Field> Saturator<'_, F> {
    fn relation(&self, k: u32, n: u32, r: i64) -> BTreeMap<Block, F::Elem> {
        let f = self.f;
        let mut rel: BTreeMap<Block, F::Elem> = BTreeMap::new();
        for (j, wj) in self.omega.iter().enumerate() {
            let total = k as i64 - j as i64;
            if f.is_zero(wj) || total < n as i64 {
                continue;
            }
            for b in x_divided_coeff(r, n, total as u32) {
                let e = rel.entry(b).or_insert_with(|| f.zero());
                *e = f.add(e, wj);
            }
        }
        rel.retain(|_, c| !f.is_zero(c));
        rel
    }

    fn sweep(&mut self, k_max: u32, r_win: i64, lo: i64, hi: i64) {
        let f = self.f;
        let lam = self.lambda;
        for n in 1..=lam {
            for k in lam + 1..=k_max {
                for r in -r_win..=r_win {
                    let rel = self.relation(k, n, r);
                    if rel.is_empty() {
                        continue;
                    }
                    for d in n..=lam {
                        for mu in monomials(d - n, lo, hi) {
                            if !self.seen.insert((k, n, r, mu.clone())) {
                                continue;
                            }
                            let mut row: BTreeMap<Key, F::Elem> = BTreeMap::new();
                            for (b, c) in &rel {
                                let (m, coef) = mono_mul(&mu, b);
                                let c = f.mul(c, &f.from_int(&coef));
                                if f.is_zero(&c) {
                                    continue;
                                }
                                let key = (in_span_set(&m, lam), m);
                                let new = match row.get(&key) {
                                    Some(y) => f.add(y, &c),
                                    None => c,
                                };
                                row.insert(key, new);
                            }
                            row.retain(|_, c| !f.is_zero(c));
                            self.ech[d as usize].insert(f, row);
                        }
                    }
                }
            }
        }
    }

    fn per_degree(&self) -> Vec<usize> {
        let lam = self.lambda;
        (0..=lam)
            .map(|d| {
                let total = monomials(d, 0, lam as i64).len();
                let cut = self.ech[d as usize].pivots.keys().filter(|k| k.0).count();
                total - cut
            })
            .collect()
    }
}

/// Upper bound for `dim W(ω)` from the spanning set `{v_ξ : 0 ≤ s_j < λ}`
/// cut down by left-multiplied instances of the Garland relation on `v`.
pub fn weyl_upper_bound<F: Field>(f: &F, omega: &[F::Elem], windows: &WeylWindows) -> Result<WeylBound<F::Elem>> {
    let lambda = check_omega(f, omega)?;
    let mut sat = Saturator {
        f,
        omega: omega[..=lambda as usize].to_vec(),
        lambda,
        ech: (0..=lambda).map(|_| SparseEchelon::new()).collect(),
        seen: BTreeSet::new(),
    };
    let lam = lambda as i64;
    let mut prev: Option<Vec<usize>> = None;
    let mut sweeps = 0;
    let mut stabilized = lambda == 0;
    if lambda > 0 {
        for sweep in 0..windows.max_sweeps.max(1) {
            let grow = sweep as i64 * lam;
            let k_max = windows.k_max.unwrap_or(2 * lambda) + (grow as u32);
            let r_win = windows.r_window.unwrap_or(lam) + grow;
            let (lo, hi) = (-grow, lam + grow);
            sat.sweep(k_max, r_win, lo, hi);
            sweeps += 1;
            let cur = sat.per_degree();
            if prev.as_ref() == Some(&cur) {
                stabilized = true;
                break;
            }
            prev = Some(cur);
        }
    }
    let per_degree = sat.per_degree();
    Ok(WeylBound {
        lambda,
        bound: per_degree.iter().sum(),
        per_degree,
        sweeps,
        stabilized,
        relations: sat.ech,
    })
}

/// `W(ω)` realised on the surviving spanning monomials, with operators
/// obtained by straightening. Characteristic 0 only.
#[derive(Clone, Debug)]
pub struct StraightenedModel<F: Field> {
    field: F,
    lambda: u32,
    basis: Vec<StraighteningMonomial>,
    index: BTreeMap<StraighteningMonomial, usize>,
    relations: Vec<SparseEchelon<F::Elem>>,
    // h_s v = power_sums[s] v for s ∈ [−P, P]
    h_plus: Vec<F::Elem>,
    h_minus: Vec<F::Elem>,
}

impl<F: Field> StraightenedModel<F> {
    pub fn new(f: &F, omega: &[F::Elem], windows: &WeylWindows) -> Result<Self> {
        if f.characteristic() != 0 {
            return Err(domain("straightened models need characteristic 0"));
        }
        let wb = weyl_upper_bound(f, omega, windows)?;
        wb.status()?;
        let lambda = wb.lambda;
        let mut basis = Vec::new();
        for d in 0..=lambda {
            for m in monomials(d, 0, lambda as i64) {
                if !wb.relations[d as usize].pivots.contains_key(&(true, m.clone())) {
                    basis.push(m);
                }
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let om = &omega[..=lambda as usize];
        let lead = om[lambda as usize].clone();
        let inv_lead = f.try_inv(&lead).ok_or_else(|| domain("leading coefficient of ω must be invertible"))?;
        let om_minus: Vec<F::Elem> = om.iter().rev().map(|c| f.mul(c, &inv_lead)).collect();
        let prec = 4 * lambda as usize + 4;
        let h_of = |w: &[F::Elem]| -> Result<Vec<F::Elem>> {
            let log = Series::new(f, w, prec).log(f)?;
            let mut out = vec![f.from_i64(lambda as i64)];
            for s in 1..=prec {
                out.push(f.mul(&f.from_i64(-(s as i64)), log.coeff(s)));
            }
            Ok(out)
        };
        Ok(StraightenedModel {
            field: f.clone(),
            lambda,
            basis,
            index,
            relations: wb.relations,
            h_plus: h_of(om)?,
            h_minus: h_of(&om_minus)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[StraighteningMonomial] {
        &self.basis
    }

    /// `λ − 2 d(ξ)` for each basis monomial.
    pub fn weights(&self) -> Vec<i64> {
        self.basis.iter().map(|m| self.lambda as i64 - 2 * xi_degree(m) as i64).collect()
    }

    fn h_scalar(&self, s: i64) -> Result<F::Elem> {
        let tab = if s >= 0 { &self.h_plus } else { &self.h_minus };
        tab.get(s.unsigned_abs() as usize)
            .cloned()
            .ok_or_else(|| domain(format!("h_{s} outside the precomputed range")))
    }

    /// Coordinates of `v_ξ` in the model basis.
    pub fn coords(&self, xi: &StraighteningMonomial) -> Result<Vec<F::Elem>> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        let d = xi_degree(xi);
        if d > self.lambda {
            return Ok(out);
        }
        let key = (in_span_set(xi, self.lambda), xi.clone());
        let row = BTreeMap::from([(key, f.one())]);
        for ((in_xi, m), c) in self.relations[d as usize].full_reduce(f, row) {
            let i = self.index.get(&m).filter(|_| in_xi).ok_or_else(|| {
                Error::NotStabilized(format!("monomial {m:?} not reduced by the harvested relations"))
            })?;
            out[*i] = c;
        }
        Ok(out)
    }

    /// Matrix of `e` acting on the model (columns are images of basis vectors).
    pub fn act(&self, e: &HyperElement) -> Result<Matrix<F::Elem>> {
        let f = &self.field;
        let n = self.dim();
        let mut m = Matrix::zeros(f, n, n);
        for (j, xi) in self.basis.iter().enumerate() {
            let src = PbwMonomial { lower: xi.clone(), ..Default::default() };
            let img = e.mul(&HyperElement::term(src, crate::exactnum::Rational::one()));
            for (mono, c) in img.terms() {
                if !mono.raise.is_empty() {
                    continue;
                }
                let mut scalar = f.from_rational(c).ok_or_else(|| domain("coefficient not in field"))?;
                for &(s, e) in &mono.cartan {
                    scalar = f.mul(&scalar, &f.pow(&self.h_scalar(s)?, e as u64));
                }
                if f.is_zero(&scalar) {
                    continue;
                }
                let v = self.coords(&mono.lower)?;
                for (i, x) in v.iter().enumerate() {
                    if !f.is_zero(x) {
                        let cur = m.get(i, j).clone();
                        m.set(i, j, f.add(&cur, &f.mul(&scalar, x)));
                    }
                }
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{PrimeField, Rational, RationalField};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn helpers() {
        assert_eq!(monomials(2, 0, 2).len(), 3);
        assert_eq!(partitions(4, 2).len(), 2);
        let (m, c) = mono_mul(&vec![(0, 1)], &vec![(0, 1)]);
        assert_eq!((m, c), (vec![(0, 2)], BigInt::from(2)));
        assert_eq!(xi_degree(&vec![(0, 2), (3, 1)]), 3);
        assert_eq!(xi_max_exponent(&vec![(0, 2), (3, 1)]), 2);
    }

    #[test]
    fn degree_one() {
        let f = RationalField;
        let wb = weyl_upper_bound(&f, &[q(1), q(-3)], &WeylWindows::default()).unwrap();
        assert_eq!(wb.bound, 2);
        assert!(wb.stabilized);
    }

    #[test]
    fn fused_square_over_q() {
        let f = RationalField;
        let a = q(3);
        let omega = [q(1), q(-6), q(9)];
        let wb = weyl_upper_bound(&f, &omega, &WeylWindows::default()).unwrap();
        assert_eq!(wb.bound, 4);
        // x⁻₁x⁻₀v = 2a (x⁻₀)^{(2)} v
        let combo = vec![(vec![(0, 1), (1, 1)], q(1)), (vec![(0, 2)], -(q(2) * a))];
        assert!(wb.relation_holds(&f, &combo));
        let wrong = vec![(vec![(0, 1), (1, 1)], q(1)), (vec![(0, 2)], q(-1))];
        assert!(!wb.relation_holds(&f, &wrong));
    }

    #[test]
    fn distinct_roots_over_q() {
        let f = RationalField;
        // (1 − 2u)(1 − 5u)
        let omega = [q(1), q(-7), q(10)];
        assert_eq!(weyl_upper_bound(&f, &omega, &WeylWindows::default()).unwrap().bound, 4);
    }

    #[test]
    fn over_prime_field() {
        let f = PrimeField::new(3).unwrap();
        // (1 − u)² over F₃
        let omega = [1u64, 1, 1];
        assert_eq!(weyl_upper_bound(&f, &omega, &WeylWindows::default()).unwrap().bound, 4);
    }

    #[test]
    fn straightened_model_square() {
        let f = RationalField;
        let a = q(2);
        let omega = [q(1), q(-4), q(4)];
        let m = StraightenedModel::new(&f, &omega, &WeylWindows::default()).unwrap();
        assert_eq!(m.dim(), 4);
        // Λ₁ v₀ = −2a v₀ and Λ₂ v₀ = a² v₀
        let l1 = m.act(&super::super::lambda_element(1)).unwrap();
        let l2 = m.act(&super::super::lambda_element(2)).unwrap();
        let v0 = m.coords(&vec![]).unwrap();
        assert_eq!(l1.mul_vec(&f, &v0), v0.iter().map(|x| x.clone() * (q(-2) * a.clone())).collect::<Vec<_>>());
        assert_eq!(l2.mul_vec(&f, &v0), v0.iter().map(|x| x.clone() * a.clone() * a.clone()).collect::<Vec<_>>());
        // x⁻_s v₀ = s a^{s−1} x⁻₁ v₀ − (s−1) a^s x⁻₀ v₀
        let x3 = m.coords(&vec![(3, 1)]).unwrap();
        let x1 = m.coords(&vec![(1, 1)]).unwrap();
        let x0 = m.coords(&vec![(0, 1)]).unwrap();
        let expect: Vec<Rational> =
            x1.iter().zip(&x0).map(|(u, w)| q(3) * a.pow(2) * u.clone() - q(2) * a.pow(3) * w.clone()).collect();
        assert_eq!(x3, expect);
        // raising after lowering returns to v₀'s line: x⁺₀ x⁻₀ v₀ = h₀ v₀ = 2 v₀
        let xp = m.act(&HyperElement::raise(0, 1)).unwrap();
        assert_eq!(xp.mul_vec(&f, &x0), v0.iter().map(|x| x.clone() * q(2)).collect::<Vec<_>>());
    }
}
