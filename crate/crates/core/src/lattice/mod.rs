//! Invariant lattices over `Z_(p)` inside characteristic-zero modules:
//! closure from a highest-weight vector, canonical bases, reduction mod p,
//! elementary divisors and the equal-residue dimension test.

mod example;

pub use example::{paper_example, NumericComparison, PaperExample};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::exactnum::{residue, Dvr, PrimeField, Rational, Ring, Val};
use crate::linalg::Matrix;
use crate::looppbw::{weyl_upper_bound, WeylWindows};
use crate::modrep::{drinfeld_polynomial, ell_hw_vectors, Gen, LoopModule};

/// Representative of `x` modulo `p^v Z_(p)`: zero or `p^v m / p^k` with `0 ≤ m < p^k`.
fn reduce_mod(dvr: &Dvr, x: &Rational, v: i64) -> Rational {
    let p = BigInt::from(dvr.p());
    let pv = Rational::from_int(p.clone()).pow(v);
    let y = x / &pv;
    let mut d = y.denom().clone();
    let mut pk = BigInt::one();
    while d.is_multiple_of(&p) {
        d /= &p;
        pk *= &p;
    }
    if pk.is_one() {
        return Rational::zero();
    }
    let dinv = d.modinv(&pk).expect("coprime");
    let m = (y.numer() * dinv).mod_floor(&pk);
    &Rational::new(m, pk) * &pv
}

fn val(dvr: &Dvr, x: &Rational) -> Option<i64> {
    dvr.val(x).finite()
}

/// Hermite form over `Z_(p)`: rows in echelon order along `order`, pivots
/// `p^v` of minimal valuation (ties to the lowest row), entries above pivots reduced.
fn hermite(dvr: &Dvr, vectors: Vec<Vec<Rational>>, order: &[usize]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut rest: Vec<Vec<Rational>> = vectors.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut pivots = Vec::new();
    let pr = Rational::from(dvr.p() as i64);
    for &c in order {
        let Some(best) = (0..rest.len())
            .filter(|&i| !rest[i][c].is_zero())
            .min_by_key(|&i| (val(dvr, &rest[i][c]).unwrap(), i))
        else {
            continue;
        };
        let mut piv = rest.remove(best);
        let v = val(dvr, &piv[c]).unwrap();
        let scale = &pr.pow(v) / &piv[c];
        for x in piv.iter_mut() {
            *x = &*x * &scale;
        }
        for r in rest.iter_mut() {
            if !r[c].is_zero() {
                let t = &r[c] / &piv[c];
                for (x, y) in r.iter_mut().zip(&piv) {
                    *x = &*x - &(&t * y);
                }
            }
        }
        rest.retain(|v| v.iter().any(|x| !x.is_zero()));
        for r in rows.iter_mut() {
            let e = r[c].clone();
            let t = &(&e - &reduce_mod(dvr, &e, v)) / &piv[c];
            if !t.is_zero() {
                for (x, y) in r.iter_mut().zip(&piv) {
                    *x = &*x - &(&t * y);
                }
            }
        }
        rows.push(piv);
        pivots.push(c);
    }
    (rows, pivots)
}

/// A `Z_(p)`-lattice in a module over `Q`, in canonical Hermite form.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    ambient: LoopModule<Dvr>,
    vectors: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    order: Vec<usize>,
    stable_window: Option<i64>,
}

/// Column order: decreasing weight, then index.
fn weight_order(m: &LoopModule<Dvr>) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..m.dim()).collect();
    idx.sort_by_key(|&i| (-m.weights()[i], i));
    idx
}

impl LatticeBasis {
    /// `Z_(p)`-span of the given vectors.
    pub fn span(ambient: &LoopModule<Dvr>, vectors: Vec<Vec<Rational>>) -> Self {
        let order = weight_order(ambient);
        let (vectors, pivots) = hermite(ambient.field(), vectors, &order);
        LatticeBasis { ambient: ambient.clone(), vectors, pivots, order, stable_window: None }
    }

    pub fn ambient(&self) -> &LoopModule<Dvr> {
        &self.ambient
    }

    pub fn p(&self) -> u64 {
        self.ambient.field().p()
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn stable_window(&self) -> Option<i64> {
        self.stable_window
    }

    pub fn weights(&self) -> Vec<i64> {
        self.vectors.iter().map(|v| self.ambient.vector_weight(v).unwrap_or(i64::MIN)).collect()
    }

    /// Integral coordinates of `y` in the basis, if `y` lies in the lattice.
    pub fn coordinates(&self, y: &[Rational]) -> Option<Vec<Rational>> {
        let dvr = self.ambient.field();
        let mut y = y.to_vec();
        let mut out = vec![Rational::zero(); self.rank()];
        for (i, (row, &c)) in self.vectors.iter().zip(&self.pivots).enumerate() {
            if y[c].is_zero() {
                continue;
            }
            let t = &y[c] / &row[c];
            if matches!(dvr.val(&t), Val::Fin(v) if v < 0) {
                return None;
            }
            for (x, r) in y.iter_mut().zip(row) {
                *x = &*x - &(&t * r);
            }
            out[i] = t;
        }
        y.iter().all(|x| x.is_zero()).then_some(out)
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        self.coordinates(y).is_some()
    }

    pub fn same_as(&self, o: &LatticeBasis) -> bool {
        self.vectors == o.vectors
    }
}

impl PartialEq for LatticeBasis {
    fn eq(&self, o: &Self) -> bool {
        self.same_as(o) && self.order == o.order
    }
}

/// Window schedule for closure.
#[derive(Clone, Copy, Debug)]
pub struct ClosureWindows {
    /// Starting half-width; defaults to the weight of the seed.
    pub start: Option<i64>,
    pub max: i64,
}

impl Default for ClosureWindows {
    fn default() -> Self {
        ClosureWindows { start: None, max: 64 }
    }
}

/// Lowering generators `(x⁻_r)^{(k)}` for `|r| ≤ w`, `k` up to the weight span.
pub fn lowering_gens(m: &LoopModule<Dvr>, w: i64) -> Vec<Gen> {
    let mut out = Vec::new();
    for r in -w..=w {
        for k in 1..=m.weight_span() {
            out.push(Gen::Lower { r, k });
        }
    }
    out
}

/// Smallest lattice containing `seeds` and stable under `gens`, applied in the given order.
pub fn lattice_span(ambient: &LoopModule<Dvr>, seeds: &[Vec<Rational>], gens: &[Gen]) -> Result<LatticeBasis> {
    let mut cur = LatticeBasis::span(ambient, seeds.to_vec());
    loop {
        let mut vs = cur.vectors.clone();
        for &g in gens {
            let a = ambient.op(g)?;
            for b in &cur.vectors {
                let y = a.mul_vec(ambient.field(), b);
                if !cur.contains(&y) {
                    vs.push(y);
                }
            }
        }
        if vs.len() == cur.rank() {
            return Ok(cur);
        }
        cur = LatticeBasis::span(ambient, vs);
    }
}

/// `U(ĝ)_A · v` with the window doubling until two consecutive windows agree,
/// then checked against raising, Cartan and `Λ` operators.
pub fn lattice_closure(ambient: &LoopModule<Dvr>, v: &[Rational], windows: ClosureWindows) -> Result<LatticeBasis> {
    let deg = ambient.vector_weight(v).ok_or_else(|| domain("seed must be a nonzero homogeneous vector"))?;
    let mut w = windows.start.unwrap_or(deg.max(1)).max(1);
    let mut prev = lattice_span(ambient, &[v.to_vec()], &lowering_gens(ambient, w))?;
    loop {
        let next_w = 2 * w;
        if next_w > windows.max {
            return Err(Error::NotStabilized(format!("closure still growing at window {w}")));
        }
        let next = lattice_span(ambient, &[v.to_vec()], &lowering_gens(ambient, next_w))?;
        if next.same_as(&prev) {
            let mut out = prev;
            out.stable_window = Some(w);
            verify_invariance(&out, next_w)?;
            return Ok(out);
        }
        prev = next;
        w = next_w;
    }
}

/// Every certified operator with `|r| ≤ w` maps the lattice into itself.
pub fn verify_invariance(l: &LatticeBasis, w: i64) -> Result<()> {
    let m = &l.ambient;
    let span = m.weight_span();
    let mut gens = Vec::new();
    for r in -w..=w {
        gens.push(Gen::Lambda { r });
        for k in 1..=span {
            gens.push(Gen::Lower { r, k });
            gens.push(Gen::Raise { r, k });
        }
    }
    for k in 1..=span.max(1) {
        gens.push(Gen::HBinom { k });
    }
    for g in gens {
        let a = m.op(g)?;
        for b in &l.vectors {
            if !l.contains(&a.mul_vec(m.field(), b)) {
                return Err(Error::Mismatch(format!("lattice not invariant under {g:?}")));
            }
        }
    }
    Ok(())
}

/// `L ⊗_A F_p` with residue operator tables.
pub fn reduce_mod_p(l: &LatticeBasis) -> Result<LoopModule<PrimeField>> {
    let f = PrimeField::new(l.p())?;
    let m = LoopModule::reduced(&f, &l.ambient, l.vectors.clone())?;
    Ok(m.with_label(format!("{} mod {}", l.ambient.label(), l.p())))
}

/// `L₁ ⊗ L₂` inside the tensor of the ambients.
pub fn tensor_lattice(l1: &LatticeBasis, l2: &LatticeBasis) -> LatticeBasis {
    let amb = LoopModule::tensor(&l1.ambient, &l2.ambient);
    let mut vs = Vec::new();
    for a in &l1.vectors {
        for b in &l2.vectors {
            vs.push(a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect());
        }
    }
    LatticeBasis::span(&amb, vs)
}

/// Elementary divisors of one lattice inside another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryDivisors {
    /// Sorted valuations of the Smith form.
    pub valuations: Vec<i64>,
    /// Rank of the outer lattice minus the rank of the inner one.
    pub rank_deficit: usize,
    /// `true` when the first lattice is contained in the second.
    pub first_in_second: bool,
}

impl ElementaryDivisors {
    pub fn total(&self) -> i64 {
        self.valuations.iter().sum()
    }

    pub fn equal(&self) -> bool {
        self.rank_deficit == 0 && self.valuations.iter().all(|&v| v == 0)
    }
}

fn smith_valuations(dvr: &Dvr, mut a: Vec<Vec<Rational>>) -> Vec<i64> {
    let mut out = Vec::new();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if let Some(v) = val(dvr, x) {
                    if best.map_or(true, |b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        out.push(v);
        let prow = a.remove(pi);
        let piv = prow[pj].clone();
        for row in a.iter_mut() {
            let t = &row[pj] / &piv;
            for (x, y) in row.iter_mut().zip(&prow) {
                *x = &*x - &(&t * y);
            }
            row.remove(pj);
        }
    }
    out.sort_unstable();
    out
}

/// Smith form of the transition between two lattices in the same ambient.
pub fn compare_lattices(l: &LatticeBasis, l2: &LatticeBasis) -> Result<ElementaryDivisors> {
    if l.ambient.dim() != l2.ambient.dim() || l.p() != l2.p() {
        return Err(domain("lattices live in different ambients"));
    }
    let dvr = l.ambient.field();
    let (inner, outer, first_in_second) = if l.vectors.iter().all(|v| l2.contains(v)) {
        (l, l2, true)
    } else if l2.vectors.iter().all(|v| l.contains(v)) {
        (l2, l, false)
    } else {
        return Err(Error::Mismatch("neither lattice contains the other".into()));
    };
    let rows: Vec<Vec<Rational>> = inner.vectors.iter().map(|v| outer.coordinates(v).unwrap()).collect();
    let valuations = smith_valuations(dvr, rows);
    Ok(ElementaryDivisors { rank_deficit: outer.rank() - valuations.len(), valuations, first_in_second })
}

/// Outcome of the equal-residue dimension test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cp0Status {
    Verified,
    Open,
}

#[derive(Clone, Debug)]
pub struct Cp0Report {
    pub p: u64,
    pub roots: Vec<Rational>,
    /// `ω̄` over F_p, constant term first.
    pub omega_bar: Vec<u64>,
    pub lower: usize,
    pub upper: usize,
    pub upper_stabilized: bool,
    /// The reduction is ℓ-highest weight with Drinfeld polynomial `ω̄`.
    pub reduction_ok: bool,
    pub stable_window: Option<i64>,
    /// Lattice generated by the tensor of highest weight vectors equals the
    /// tensor of the factor lattices (checked when residues are distinct).
    pub tensor_lattice_equal: Option<bool>,
    pub status: Cp0Status,
}

/// Build `⊗ W(1, a_i)` over `Z_(p)`, take the lattice through the top vector,
/// and compare its rank with the saturation bound for `ω̄` over F_p.
pub fn conjecture_cp0(p: u64, roots: &[Rational], windows: ClosureWindows) -> Result<Cp0Report> {
    let dvr = Dvr::new(p)?;
    if roots.is_empty() {
        return Err(domain("need at least one root"));
    }
    for (i, a) in roots.iter().enumerate() {
        if !dvr.is_unit(a) {
            return Err(domain(format!("root {a} is not a unit at {p}")));
        }
        if roots[..i].contains(a) {
            return Err(domain("roots must be distinct"));
        }
    }
    let parts = roots
        .iter()
        .map(|a| LoopModule::eval_weyl(&dvr, 1, a.clone()))
        .collect::<Result<Vec<_>>>()?;
    let amb = LoopModule::tensor_all(&parts)?;
    let mut v = vec![Rational::zero(); amb.dim()];
    v[0] = Rational::one();
    let l = lattice_closure(&amb, &v, windows)?;
    let lower = l.rank();

    let f = PrimeField::new(p)?;
    let mut omega = vec![1u64];
    for a in roots {
        let ab = residue(a, p)?;
        let lin = [1u64, f.neg(&ab)];
        let mut next = vec![0u64; omega.len() + 1];
        for (i, x) in omega.iter().enumerate() {
            for (j, y) in lin.iter().enumerate() {
                next[i + j] = f.add(&next[i + j], &f.mul(x, y));
            }
        }
        omega = next;
    }
    let wb = weyl_upper_bound(&f, &omega, &WeylWindows::default())?;

    let red = reduce_mod_p(&l)?;
    let hw = ell_hw_vectors(&red, None)?;
    let reduction_ok = hw.iter().any(|h| {
        red.vector_weight(h) == Some(roots.len() as i64)
            && drinfeld_polynomial(&red, h).map_or(false, |d| d.consistent() && d.omega.coeffs() == &omega[..])
    });

    let mut residues: Vec<u64> = roots.iter().map(|a| residue(a, p).unwrap()).collect();
    residues.sort_unstable();
    residues.dedup();
    let tensor_lattice_equal = if residues.len() == roots.len() {
        let mut acc: Option<LatticeBasis> = None;
        for m in &parts {
            let seed = {
                let mut e = vec![Rational::zero(); m.dim()];
                e[0] = Rational::one();
                e
            };
            let li = lattice_closure(m, &seed, windows)?;
            acc = Some(match acc {
                None => li,
                Some(prev) => tensor_lattice(&prev, &li),
            });
        }
        Some(compare_lattices(&l, &acc.unwrap())?.equal())
    } else {
        None
    };

    let status = if wb.stabilized && wb.bound == lower && reduction_ok {
        Cp0Status::Verified
    } else {
        Cp0Status::Open
    };
    Ok(Cp0Report {
        p,
        roots: roots.to_vec(),
        omega_bar: omega,
        lower,
        upper: wb.bound,
        upper_stabilized: wb.stabilized,
        reduction_ok,
        stable_window: l.stable_window,
        tensor_lattice_equal,
        status,
    })
}

/// Roots `a, a + p, a + 2p, …` sharing one residue.
pub fn coincident_roots(p: u64, a: i64, deg: usize) -> Vec<Rational> {
    (0..deg as i64).map(|i| Rational::from(a + i * p as i64)).collect()
}

/// Weight multiplicities of the lattice's graded pieces.
pub fn lattice_character(l: &LatticeBasis) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for w in l.weights() {
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

/// Matrix whose columns are the lattice basis vectors.
pub fn basis_matrix(l: &LatticeBasis) -> Matrix<Rational> {
    let n = l.ambient.dim();
    let mut m = Matrix::zeros(l.ambient.field(), n, l.rank());
    for (j, v) in l.vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

#[cfg(test)]
mod tests;
