//! Finite-dimensional modules for the hyperalgebra of the sl₂ loop algebra,
//! built from recipes and evaluated to operator matrices on demand.

mod analysis;

pub use analysis::{
    drinfeld_polynomial, ell_hw_vectors, ell_weight_decomposition, factored_ell_weights, identify_series,
    DrinfeldReport, EllWeightBlock,
};

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::cartan::{base_p_digits, Weight};
use crate::error::{domain, Error, Result};
use crate::exactnum::{binom_i64, Dvr, Field, Rational};
use crate::linalg::{inverse, EchelonBasis, Matrix};
use crate::exactnum::factorial;
use crate::looppbw::{GenKind, HyperElement, StraightenedModel};

/// Operators a module knows how to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// `(x⁻_r)^{(k)}`
    Lower { r: i64, k: u32 },
    /// `(x⁺_r)^{(k)}`
    Raise { r: i64, k: u32 },
    /// `Λ_r` (negative `r` for the `Λ⁻` series)
    Lambda { r: i64 },
    /// `h_r`
    H { r: i64 },
    /// `binom(h_0, k)`
    HBinom { k: u32 },
}

/// Change of basis data for a subquotient: `top` vectors modulo the span of `lower`.
#[derive(Clone, Debug)]
struct Frame<E> {
    top: Vec<Vec<E>>,
    rows: Vec<usize>,
    // inverse of the frame restricted to `rows`
    left_inv: Matrix<E>,
}

impl<E: Clone + PartialEq + Ord> Frame<E> {
    fn new<F: Field<Elem = E>>(f: &F, n: usize, lower: &[Vec<E>], top: Vec<Vec<E>>) -> Result<Self> {
        let cols: Vec<Vec<E>> = top.iter().chain(lower).cloned().collect();
        let m = cols.len();
        let eb = EchelonBasis::from_vectors(f, n, cols.iter().cloned());
        if eb.dim() != m {
            return Err(domain("subquotient frame vectors are dependent"));
        }
        let rows = eb.pivots().to_vec();
        let mut sq = Matrix::zeros(f, m, m);
        for (i, &r) in rows.iter().enumerate() {
            for (j, c) in cols.iter().enumerate() {
                sq.set(i, j, c[r].clone());
            }
        }
        let left_inv = inverse(f, &sq).ok_or_else(|| domain("singular frame"))?;
        Ok(Frame { top, rows, left_inv })
    }

    /// Top coordinates of `y`, assumed to lie in the frame span.
    fn top_coords<F: Field<Elem = E>>(&self, f: &F, y: &[E]) -> Vec<E> {
        let ry: Vec<E> = self.rows.iter().map(|&r| y[r].clone()).collect();
        let mut c = self.left_inv.mul_vec(f, &ry);
        c.truncate(self.top.len());
        c
    }
}

#[derive(Clone, Debug)]
enum Recipe<F: Field> {
    EvalWeyl { lambda: u32, a: F::Elem },
    Tensor(Box<LoopModule<F>>, Box<LoopModule<F>>),
    Dual(Box<LoopModule<F>>),
    Frobenius { inner: Box<LoopModule<F>>, q: u64 },
    Psi { inner: Box<LoopModule<F>>, a: F::Elem },
    Subquotient { parent: Box<LoopModule<F>>, frame: Frame<F::Elem> },
    Reduced { ambient: Box<LoopModule<Dvr>>, frame: Frame<Rational> },
    Straightened(Box<StraightenedModel<F>>),
}

/// A module given by a construction recipe. Operator matrices act on column
/// vectors in a homogeneous basis and are cached after first use.
#[derive(Clone, Debug)]
pub struct LoopModule<F: Field> {
    field: F,
    weights: Vec<i64>,
    label: String,
    recipe: Recipe<F>,
    cache: RefCell<BTreeMap<Gen, Matrix<F::Elem>>>,
}

impl<F: Field> LoopModule<F> {
    fn build(field: &F, weights: Vec<i64>, label: String, recipe: Recipe<F>) -> Self {
        LoopModule { field: field.clone(), weights, label, recipe, cache: RefCell::new(BTreeMap::new()) }
    }

    /// The evaluation Weyl module `W(λ, a)` with basis `v_j = (x⁻_0)^{(j)} v_0`.
    pub fn eval_weyl(f: &F, lambda: u32, a: F::Elem) -> Result<Self> {
        if f.is_zero(&a) {
            return Err(domain("evaluation parameter must be nonzero"));
        }
        let weights = (0..=lambda as i64).map(|j| lambda as i64 - 2 * j).collect();
        let label = format!("W({lambda},{})", f.render(&a));
        Ok(Self::build(f, weights, label, Recipe::EvalWeyl { lambda, a }))
    }

    pub fn trivial(f: &F) -> Self {
        Self::eval_weyl(f, 0, f.one()).expect("one is nonzero")
    }

    pub fn tensor(m: &Self, n: &Self) -> Self {
        let weights = m.weights.iter().flat_map(|a| n.weights.iter().map(move |b| a + b)).collect();
        let label = format!("({} ⊗ {})", m.label, n.label);
        Self::build(&m.field, weights, label, Recipe::Tensor(Box::new(m.clone()), Box::new(n.clone())))
    }

    pub fn tensor_all(parts: &[Self]) -> Result<Self> {
        let (first, rest) = parts.split_first().ok_or_else(|| domain("empty tensor product"))?;
        Ok(rest.iter().fold(first.clone(), |acc, m| Self::tensor(&acc, m)))
    }

    pub fn dual(m: &Self) -> Self {
        let weights = m.weights.iter().map(|w| -w).collect();
        Self::build(&m.field, weights, format!("{}*", m.label), Recipe::Dual(Box::new(m.clone())))
    }

    /// Pull back along the `m`-th power of Frobenius (`q = p^m`).
    pub fn frobenius(inner: &Self, m: u32) -> Result<Self> {
        let p = inner.field.characteristic();
        if p == 0 {
            return Err(domain("Frobenius twist needs positive characteristic"));
        }
        if m == 0 {
            return Ok(inner.clone());
        }
        let q = p.checked_pow(m).ok_or_else(|| domain("Frobenius power overflows"))?;
        let weights = inner.weights.iter().map(|w| w * q as i64).collect();
        let label = format!("{}^[{m}]", inner.label);
        Ok(Self::build(&inner.field, weights, label, Recipe::Frobenius { inner: Box::new(inner.clone()), q }))
    }

    /// Twist by the loop rescaling `x_r ↦ a^r x_r`.
    pub fn psi(inner: &Self, a: F::Elem) -> Result<Self> {
        if inner.field.is_zero(&a) {
            return Err(domain("twist parameter must be nonzero"));
        }
        let label = format!("ψ_{}({})", inner.field.render(&a), inner.label);
        Ok(Self::build(&inner.field, inner.weights.clone(), label, Recipe::Psi { inner: Box::new(inner.clone()), a }))
    }

    /// The irreducible `V(λ, a) = ⊗_k W(λ_k, a^{p^k})^{[k]}` from the base-p digits of λ.
    pub fn irreducible(f: &F, lambda: u32, a: F::Elem) -> Result<Self> {
        let p = f.characteristic();
        if p == 0 {
            return Self::eval_weyl(f, lambda, a);
        }
        let digits = base_p_digits(&Weight(vec![lambda as i64]), p)?;
        let mut parts = Vec::new();
        let mut ak = a.clone();
        for (k, d) in digits.iter().enumerate() {
            if d.0[0] > 0 {
                let w = Self::eval_weyl(f, d.0[0] as u32, ak.clone())?;
                parts.push(Self::frobenius(&w, k as u32)?);
            }
            ak = f.pow(&ak, p);
        }
        if parts.is_empty() {
            return Ok(Self::trivial(f));
        }
        let mut m = Self::tensor_all(&parts)?;
        m.label = format!("V({lambda},{})", f.render(&a));
        Ok(m)
    }

    /// `top` modulo `lower`; both spans must be invariant as a pair (the span
    /// of `lower` and of `lower ∪ top` are submodules).
    pub fn subquotient(parent: &Self, lower: &[Vec<F::Elem>], top: Vec<Vec<F::Elem>>) -> Result<Self> {
        let f = &parent.field;
        let weights = top
            .iter()
            .map(|v| parent.vector_weight(v))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| domain("subquotient basis vectors must be homogeneous"))?;
        let frame = Frame::new(f, parent.dim(), lower, top)?;
        let label = format!("sq({})", parent.label);
        Ok(Self::build(f, weights, label, Recipe::Subquotient { parent: Box::new(parent.clone()), frame }))
    }

    /// Submodule spanned by `vs` (echelonised to a homogeneous basis).
    pub fn submodule(parent: &Self, vs: &[Vec<F::Elem>]) -> Result<Self> {
        let eb = EchelonBasis::from_vectors(&parent.field, parent.dim(), vs.iter().cloned());
        Self::subquotient(parent, &[], eb.rows().to_vec())
    }

    /// Quotient by the submodule spanned by `vs`, on standard complement vectors.
    pub fn quotient(parent: &Self, vs: &[Vec<F::Elem>]) -> Result<Self> {
        let f = &parent.field;
        let eb = EchelonBasis::from_vectors(f, parent.dim(), vs.iter().cloned());
        let top = (0..parent.dim())
            .filter(|c| !eb.pivots().contains(c))
            .map(|c| {
                let mut e = vec![f.zero(); parent.dim()];
                e[c] = f.one();
                e
            })
            .collect();
        Self::subquotient(parent, eb.rows(), top)
    }

    /// Reduction of an invariant `Z_(p)`-lattice (columns of `basis`) to `f`.
    pub fn reduced(f: &F, ambient: &LoopModule<Dvr>, basis: Vec<Vec<Rational>>) -> Result<Self> {
        if f.characteristic() != ambient.field.p() {
            return Err(domain("reduction field must have the residue characteristic"));
        }
        let weights = basis
            .iter()
            .map(|v| ambient.vector_weight(v))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| domain("lattice basis vectors must be homogeneous"))?;
        let frame = Frame::new(&ambient.field, ambient.dim(), &[], basis)?;
        let label = format!("{}‾", ambient.label);
        Ok(Self::build(f, weights, label, Recipe::Reduced { ambient: Box::new(ambient.clone()), frame }))
    }

    pub fn straightened(f: &F, model: StraightenedModel<F>) -> Self {
        let weights = model.weights();
        let label = format!("W(ω; dim {})", model.dim());
        Self::build(f, weights, label, Recipe::Straightened(Box::new(model)))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn max_weight(&self) -> i64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// Weight multiplicities.
    pub fn character(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &w in &self.weights {
            *out.entry(w).or_insert(0) += 1;
        }
        out
    }

    /// Weight of a nonzero homogeneous vector.
    pub fn vector_weight(&self, v: &[F::Elem]) -> Option<i64> {
        let mut ws = v.iter().zip(&self.weights).filter(|(x, _)| !self.field.is_zero(x)).map(|(_, w)| *w);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    /// Loop degrees worth sampling. Over a field with `q` elements the
    /// operators of the modules built here depend on `r` only modulo `q − 1`,
    /// so the window collapses to residues.
    pub fn r_window(&self, radius: Option<i64>) -> Vec<i64> {
        let big_r = radius.unwrap_or((self.dim() * self.dim()).max(1) as i64);
        match self.field.order() {
            Some(q) => {
                let period = (q - 1) as i64;
                let mut rs: Vec<i64> = (-big_r..=big_r).map(|r| r.rem_euclid(period)).collect();
                rs.sort_unstable();
                rs.dedup();
                rs
            }
            _ => (-big_r..=big_r).collect(),
        }
    }

    /// Largest `k` for which a divided power can act nontrivially.
    pub fn weight_span(&self) -> u32 {
        let lo = self.weights.iter().copied().min().unwrap_or(0);
        ((self.max_weight() - lo) / 2) as u32
    }

    pub fn op(&self, g: Gen) -> Result<Matrix<F::Elem>> {
        if let Some(m) = self.cache.borrow().get(&g) {
            return Ok(m.clone());
        }
        let m = self.compute(g)?;
        self.cache.borrow_mut().insert(g, m.clone());
        Ok(m)
    }

    pub fn lower(&self, r: i64, k: u32) -> Result<Matrix<F::Elem>> {
        self.op(Gen::Lower { r, k })
    }

    pub fn raise(&self, r: i64, k: u32) -> Result<Matrix<F::Elem>> {
        self.op(Gen::Raise { r, k })
    }

    pub fn lambda(&self, r: i64) -> Result<Matrix<F::Elem>> {
        self.op(Gen::Lambda { r })
    }

    /// Matrix of an arbitrary hyperalgebra element (monomials are
    /// lower · cartan · raise products).
    pub fn act(&self, e: &HyperElement) -> Result<Matrix<F::Elem>> {
        let f = &self.field;
        let n = self.dim();
        let mut out = Matrix::zeros(f, n, n);
        for (mono, c) in e.terms() {
            let c = f.from_rational(c).ok_or_else(|| domain("coefficient not in field"))?;
            let mut m = Matrix::identity(f, n);
            for &(r, k) in &mono.lower {
                m = m.mul(f, &self.lower(r, k)?);
            }
            for &(s, k) in &mono.cartan {
                m = m.mul(f, &self.op(Gen::H { r: s })?.pow(f, k));
            }
            for &(r, k) in &mono.raise {
                m = m.mul(f, &self.raise(r, k)?);
            }
            out = out.add(f, &m.scale(f, &c));
        }
        Ok(out)
    }

    fn compute(&self, g: Gen) -> Result<Matrix<F::Elem>> {
        let f = &self.field;
        let n = self.dim();
        if let (Recipe::Straightened(model), Gen::H { r: r @ (1 | -1) }) = (&self.recipe, g) {
            return model.act(&HyperElement::h(r));
        }
        match g {
            Gen::H { r } => {
                let a = self.raise(r, 1)?;
                let b = self.lower(0, 1)?;
                return Ok(a.commutator(f, &b));
            }
            Gen::HBinom { k } => {
                let d = self.weights.iter().map(|&w| f.from_int(&binom_i64(w, k as u64))).collect();
                return Ok(Matrix::diagonal(f, d));
            }
            Gen::Lambda { r: 0 } | Gen::Lower { k: 0, .. } | Gen::Raise { k: 0, .. } => {
                return Ok(Matrix::identity(f, n));
            }
            Gen::Lower { k, .. } | Gen::Raise { k, .. } if k > self.weight_span() => {
                return Ok(Matrix::zeros(f, n, n));
            }
            _ => {}
        }
        match &self.recipe {
            Recipe::EvalWeyl { lambda, a } => Ok(eval_weyl_op(f, *lambda, a, g)),
            Recipe::Tensor(m, nn) => tensor_op(f, m, nn, g),
            Recipe::Dual(m) => match g {
                Gen::Lower { .. } | Gen::Raise { .. } => {
                    let k = gen_k(g);
                    let t = m.op(g)?.transpose();
                    Ok(if k % 2 == 1 { t.scale(f, &f.from_i64(-1)) } else { t })
                }
                Gen::Lambda { r } => {
                    // transpose of the inverse series: B_n = −Σ_{i≥1} Λ_{±i} B_{n−i}
                    let s = r.signum();
                    let mut acc = Matrix::zeros(f, n, n);
                    for i in 1..=r.abs() {
                        let li = m.lambda(s * i)?;
                        let b = self.lambda(s * (r.abs() - i))?.transpose();
                        acc = acc.sub(f, &li.mul(f, &b));
                    }
                    Ok(acc.transpose())
                }
                _ => unreachable!(),
            },
            Recipe::Frobenius { inner, q } => {
                let q = *q as i64;
                match g {
                    Gen::Lower { r, k } | Gen::Raise { r, k } => {
                        if k as i64 % q != 0 {
                            return Ok(Matrix::zeros(f, n, n));
                        }
                        let k = (k as i64 / q) as u32;
                        inner.op(if matches!(g, Gen::Lower { .. }) { Gen::Lower { r, k } } else { Gen::Raise { r, k } })
                    }
                    Gen::Lambda { r } => {
                        if r % q != 0 {
                            Ok(Matrix::zeros(f, n, n))
                        } else {
                            inner.lambda(r / q)
                        }
                    }
                    _ => unreachable!(),
                }
            }
            Recipe::Psi { inner, a } => {
                let (base, e) = match g {
                    Gen::Lower { r, k } | Gen::Raise { r, k } => (inner.op(g)?, r * k as i64),
                    Gen::Lambda { r } => (inner.lambda(r)?, r),
                    _ => unreachable!(),
                };
                let s = f.pow_signed(a, e).ok_or_else(|| domain("twist parameter not invertible"))?;
                Ok(base.scale(f, &s))
            }
            Recipe::Subquotient { parent, frame } => {
                let big = parent.op(g)?;
                project(f, &big, frame, |x| Ok(x.clone()), f)
            }
            Recipe::Reduced { ambient, frame } => {
                let dvr = &ambient.field;
                let big = ambient.op(g)?;
                project(dvr, &big, frame, |x| {
                    f.from_rational(x).ok_or_else(|| {
                        Error::Mismatch(format!("lattice not invariant: coefficient {x} has negative valuation"))
                    })
                }, f)
            }
            Recipe::Straightened(model) => straightened_op(self, model, g),
        }
    }
}

fn gen_k(g: Gen) -> u32 {
    match g {
        Gen::Lower { k, .. } | Gen::Raise { k, .. } | Gen::HBinom { k } => k,
        _ => 1,
    }
}

fn eval_weyl_op<F: Field>(f: &F, lambda: u32, a: &F::Elem, g: Gen) -> Matrix<F::Elem> {
    let lam = lambda as i64;
    let n = lambda as usize + 1;
    let mut m = Matrix::zeros(f, n, n);
    let apow = |e: i64| f.pow_signed(a, e).expect("parameter is a unit");
    match g {
        Gen::Lower { r, k } => {
            let k = k as i64;
            let s = apow(r * k);
            for j in 0..n as i64 - k {
                let c = f.mul(&s, &f.from_int(&binom_i64(j + k, k as u64)));
                m.set((j + k) as usize, j as usize, c);
            }
        }
        Gen::Raise { r, k } => {
            let k = k as i64;
            let s = apow(r * k);
            for j in k..n as i64 {
                let c = f.mul(&s, &f.from_int(&binom_i64(lam - j + k, k as u64)));
                m.set((j - k) as usize, j as usize, c);
            }
        }
        Gen::Lambda { r } => {
            let s = apow(r);
            let sign = if r.abs() % 2 == 1 { f.from_i64(-1) } else { f.one() };
            for j in 0..n as i64 {
                let c = f.mul(&f.mul(&sign, &s), &f.from_int(&binom_i64(lam - 2 * j, r.unsigned_abs())));
                m.set(j as usize, j as usize, c);
            }
        }
        _ => unreachable!(),
    }
    m
}

/// Operators of a straightened model from `x^±_0` and `h_{±1}`:
/// `[h_{±1}, x^±_s] = ±2 x^±_{s±1}`, divided powers as `x^k / k!`, and `Λ`
/// from the exponential of the `h` series.
fn straightened_op<F: Field>(m: &LoopModule<F>, model: &StraightenedModel<F>, g: Gen) -> Result<Matrix<F::Elem>> {
    let f = &m.field;
    let half = f.from_rational(&Rational::new(1, 2)).ok_or_else(|| domain("2 is not invertible"))?;
    match g {
        Gen::Lower { r: 0, k: 1 } => model.act(&HyperElement::gen(GenKind::Lower, 0, 1)),
        Gen::Raise { r: 0, k: 1 } => model.act(&HyperElement::gen(GenKind::Raise, 0, 1)),
        Gen::Lower { r, k: 1 } | Gen::Raise { r, k: 1 } => {
            let lower = matches!(g, Gen::Lower { .. });
            let step = r.signum();
            let prev = if lower { m.lower(r - step, 1)? } else { m.raise(r - step, 1)? };
            let h = m.op(Gen::H { r: step })?;
            let c = if lower { f.neg(&half) } else { half };
            Ok(h.commutator(f, &prev).scale(f, &c))
        }
        Gen::Lower { r, k } | Gen::Raise { r, k } => {
            let base = if matches!(g, Gen::Lower { .. }) { m.lower(r, 1)? } else { m.raise(r, 1)? };
            let kf = f
                .from_rational(&Rational::from_int(factorial(k as u64)).recip().unwrap())
                .ok_or_else(|| domain("k! is not invertible"))?;
            Ok(base.pow(f, k).scale(f, &kf))
        }
        Gen::Lambda { r } => {
            // n Λ_n = −Σ_{k=1}^{n} h_{±k} Λ_{n−k}
            let s = r.signum();
            let n = r.abs();
            let mut acc = Matrix::zeros(f, m.dim(), m.dim());
            for k in 1..=n {
                let t = m.op(Gen::H { r: s * k })?.mul(f, &m.lambda(s * (n - k))?);
                acc = acc.sub(f, &t);
            }
            let inv_n = f.from_rational(&Rational::new(1, n)).ok_or_else(|| domain("n is not invertible"))?;
            Ok(acc.scale(f, &inv_n))
        }
        _ => unreachable!(),
    }
}

fn tensor_op<F: Field>(f: &F, m: &LoopModule<F>, n: &LoopModule<F>, g: Gen) -> Result<Matrix<F::Elem>> {
    let dim = m.dim() * n.dim();
    let mut acc = Matrix::zeros(f, dim, dim);
    match g {
        Gen::Lower { r, k } | Gen::Raise { r, k } => {
            let mk = |kk: u32| if matches!(g, Gen::Lower { .. }) { Gen::Lower { r, k: kk } } else { Gen::Raise { r, k: kk } };
            for l in 0..=k {
                if l > m.weight_span() || k - l > n.weight_span() {
                    continue;
                }
                acc = acc.add(f, &m.op(mk(l))?.kron(f, &n.op(mk(k - l))?));
            }
        }
        Gen::Lambda { r } => {
            let s = r.signum();
            for l in 0..=r.abs() {
                acc = acc.add(f, &m.lambda(s * l)?.kron(f, &n.lambda(s * (r.abs() - l))?));
            }
        }
        _ => unreachable!(),
    }
    Ok(acc)
}

/// Restrict `big` to the frame's top vectors, mapping coefficients through `conv`.
fn project<R: Field, F: Field>(
    r: &R,
    big: &Matrix<R::Elem>,
    frame: &Frame<R::Elem>,
    conv: impl Fn(&R::Elem) -> Result<F::Elem>,
    f: &F,
) -> Result<Matrix<F::Elem>> {
    let m = frame.top.len();
    let mut out = Matrix::zeros(f, m, m);
    for (j, t) in frame.top.iter().enumerate() {
        let y = big.mul_vec(r, t);
        for (i, c) in frame.top_coords(r, &y).iter().enumerate() {
            out.set(i, j, conv(c)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
