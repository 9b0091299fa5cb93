use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::LoopModule;
use crate::drinfeld::{factor, EllWeight, LWeight};
use crate::error::{domain, Error, Result};
use crate::exactnum::{default_precision, Field, Poly};
use crate::linalg::{nullspace, solve, EchelonBasis, Matrix};

/// Homogeneous basis of the vectors killed by every raising operator
/// `(x⁺_r)^{(k)}` with `r` in the window.
pub fn ell_hw_vectors<F: Field>(m: &LoopModule<F>, radius: Option<i64>) -> Result<Vec<Vec<F::Elem>>> {
    let f = m.field();
    let n = m.dim();
    let mut rows = EchelonBasis::new(n);
    'outer: for r in m.r_window(radius) {
        for k in 1..=m.weight_span() {
            for row in m.raise(r, k)?.row_vecs() {
                rows.insert(f, row);
                if rows.dim() == n {
                    break 'outer;
                }
            }
        }
    }
    let ker = nullspace(f, &Matrix::from_rows(rows.rows().to_vec(), n));
    Ok(EchelonBasis::from_vectors(f, n, ker).rows().to_vec())
}

fn eigenvalue<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Result<F::Elem> {
    let av = a.mul_vec(f, v);
    let i = v.iter().position(|x| !f.is_zero(x)).ok_or_else(|| domain("zero vector"))?;
    let c = f.div(&av[i], &v[i]);
    if av.iter().zip(v).all(|(x, y)| *x == f.mul(&c, y)) {
        Ok(c)
    } else {
        Err(Error::Mismatch("vector is not an eigenvector of Λ".into()))
    }
}

/// Drinfeld data read off an ℓ-highest-weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldReport<E> {
    pub degree: usize,
    pub precision: usize,
    pub omega: Poly<E>,
    /// Eigenvalues of `Λ_r`, `r = 0..=precision`.
    pub plus: Vec<E>,
    /// Eigenvalues of `Λ_{−r}`, `r = 0..=precision`.
    pub minus: Vec<E>,
    /// `Λ⁻` agrees with the reversed polynomial over its leading coefficient.
    pub minus_matches: bool,
    /// `Λ_λ Λ_{−r} v = Λ_{λ−r} v` for `0 ≤ r ≤ λ`.
    pub lambda_on_v: bool,
}

impl<E> DrinfeldReport<E> {
    pub fn consistent(&self) -> bool {
        self.minus_matches && self.lambda_on_v
    }
}

/// Read `ω` from the `Λ_r` eigenvalues on `v` up to `2 deg + 2`.
pub fn drinfeld_polynomial<F: Field>(m: &LoopModule<F>, v: &[F::Elem]) -> Result<DrinfeldReport<F::Elem>> {
    let f = m.field();
    let mu = m.vector_weight(v).ok_or_else(|| domain("vector is zero or not homogeneous"))?;
    if mu < 0 {
        return Err(domain("ℓ-highest weight vector has negative weight"));
    }
    let deg = mu as usize;
    let prec = default_precision(deg);
    let mut plus = Vec::with_capacity(prec + 1);
    let mut minus = Vec::with_capacity(prec + 1);
    for r in 0..=prec as i64 {
        plus.push(eigenvalue(f, &m.lambda(r)?, v)?);
        minus.push(eigenvalue(f, &m.lambda(-r)?, v)?);
    }
    if let Some(r) = (deg + 1..=prec).find(|&r| !f.is_zero(&plus[r])) {
        return Err(Error::Mismatch(format!("Λ_{r} is nonzero beyond the weight {deg}")));
    }
    let omega = Poly::from_coeffs(f, plus[..=deg].to_vec());
    let lead = plus[deg].clone();
    let minus_matches = !f.is_zero(&lead)
        && (0..=prec).all(|r| {
            let expect = if r <= deg { f.div(&plus[deg - r], &lead) } else { f.zero() };
            minus[r] == expect
        });
    let top = m.lambda(deg as i64)?;
    let mut lambda_on_v = true;
    for r in 0..=deg as i64 {
        let lhs = top.mul_vec(f, &m.lambda(-r)?.mul_vec(f, v));
        let rhs = m.lambda(deg as i64 - r)?.mul_vec(f, v);
        lambda_on_v &= lhs == rhs;
    }
    Ok(DrinfeldReport { degree: deg, precision: prec, omega, plus, minus, minus_matches, lambda_on_v })
}

/// One joint generalised eigenspace of the `Λ_r` inside a weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllWeightBlock<E: Ord> {
    pub weight: i64,
    pub dim: usize,
    pub lweight: LWeight<E>,
    /// `1, γ_1, …, γ_P`.
    pub series: Vec<E>,
    pub basis: Vec<Vec<E>>,
}

fn restrict<F: Field>(f: &F, a: &Matrix<F::Elem>, s: &EchelonBasis<F::Elem>) -> Result<Matrix<F::Elem>> {
    let d = s.dim();
    let mut out = Matrix::zeros(f, d, d);
    for (j, row) in s.rows().iter().enumerate() {
        let c = s
            .coordinates(f, &a.mul_vec(f, row))
            .ok_or_else(|| Error::Mismatch("subspace is not Λ-stable".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    Ok(out)
}

/// Split a stable subspace into generalised eigenspaces of `a`.
fn split<F: Field>(
    f: &F,
    elems: &[F::Elem],
    a: &Matrix<F::Elem>,
    s: &EchelonBasis<F::Elem>,
) -> Result<Vec<(F::Elem, EchelonBasis<F::Elem>)>> {
    let n = s.ambient_dim();
    let d = s.dim();
    let ar = restrict(f, a, s)?;
    let c0 = ar.get(0, 0).clone();
    if ar == Matrix::identity(f, d).scale(f, &c0) {
        return Ok(vec![(c0, s.clone())]);
    }
    let mut out = Vec::new();
    let mut found = 0;
    for c in elems {
        let shifted = ar.sub(f, &Matrix::identity(f, d).scale(f, c));
        let ker = nullspace(f, &shifted.pow(f, d as u32));
        if ker.is_empty() {
            continue;
        }
        found += ker.len();
        let vs = ker.iter().map(|x| {
            let mut v = vec![f.zero(); n];
            for (coef, row) in x.iter().zip(s.rows()) {
                for (t, y) in v.iter_mut().zip(row) {
                    *t = f.add(t, &f.mul(coef, y));
                }
            }
            v
        });
        out.push((c.clone(), EchelonBasis::from_vectors(f, n, vs)));
        if found == d {
            break;
        }
    }
    if found != d {
        return Err(Error::RootsOutsideField { degree_hint: 2 });
    }
    Ok(out)
}

/// Identify `1 + Σ γ_r u^r` as `P/Q` with `deg P − deg Q = μ` and factor both.
pub fn identify_series<F: Field>(f: &F, series: &[F::Elem], mu: i64, max_den: usize) -> LWeight<F::Elem> {
    let big_p = series.len() - 1;
    for dq in 0..=max_den {
        let dp = mu + dq as i64;
        if dp < 0 {
            continue;
        }
        let dp = dp as usize;
        if dp + dq >= big_p {
            break;
        }
        // Σ_{i=1}^{dq} q_i γ_{n−i} = −γ_n for n = dp+1..=P
        let rows: Vec<Vec<F::Elem>> = (dp + 1..=big_p)
            .map(|n| (1..=dq).map(|i| if i <= n { series[n - i].clone() } else { f.zero() }).collect())
            .collect();
        let rhs: Vec<F::Elem> = (dp + 1..=big_p).map(|n| f.neg(&series[n])).collect();
        let sol = if dq == 0 {
            rhs.iter().all(|x| f.is_zero(x)).then(Vec::new)
        } else {
            solve(f, &Matrix::from_rows(rows, dq), &rhs)
        };
        let Some(qs) = sol else { continue };
        let mut qc = vec![f.one()];
        qc.extend(qs);
        let q = Poly::from_coeffs(f, qc);
        let num: Vec<F::Elem> = (0..=dp)
            .map(|n| {
                (0..=n.min(dq)).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&q.coeff(f, i), &series[n - i])))
            })
            .collect();
        let p = Poly::from_coeffs(f, num);
        return match (factor(f, &p), factor(f, &q)) {
            (Ok(a), Ok(b)) => LWeight::Factored(a.mul(&b.inv())),
            _ => LWeight::Opaque(series.to_vec()),
        };
    }
    LWeight::Opaque(series.to_vec())
}

/// Decompose every weight space into joint generalised eigenspaces of the
/// `Λ_r` and name each by its ℓ-weight. Needs a finite field.
pub fn ell_weight_decomposition<F: Field>(m: &LoopModule<F>) -> Result<Vec<EllWeightBlock<F::Elem>>> {
    let f = m.field();
    let elems = f.elements().ok_or_else(|| domain("ℓ-weight decomposition needs a finite field"))?;
    let n = m.dim();
    let dmax = m.weights().iter().map(|w| w.unsigned_abs() as usize).max().unwrap_or(0);
    let big_p = 4 * dmax + 4;
    let lambdas = (1..=big_p as i64).map(|r| m.lambda(r)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (&mu, _) in m.character().iter().rev() {
        let unit = |i: usize| {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            e
        };
        let idx = (0..n).filter(|&i| m.weights()[i] == mu).map(unit);
        let mut pieces = vec![(vec![f.one()], EchelonBasis::from_vectors(f, n, idx))];
        for a in &lambdas {
            let mut next = Vec::new();
            for (ser, s) in pieces {
                for (c, sub) in split(f, &elems, a, &s)? {
                    let mut ser2 = ser.clone();
                    ser2.push(c);
                    next.push((ser2, sub));
                }
            }
            pieces = next;
        }
        for (series, s) in pieces {
            let lweight = identify_series(f, &series, mu, dmax);
            out.push(EllWeightBlock { weight: mu, dim: s.dim(), lweight, series, basis: s.rows().to_vec() });
        }
    }
    Ok(out)
}

/// The factored ℓ-weights with multiplicity, failing on any opaque block.
pub fn factored_ell_weights<E: Ord + Clone>(blocks: &[EllWeightBlock<E>]) -> Option<Vec<(EllWeight<E>, usize)>> {
    blocks
        .iter()
        .map(|b| match &b.lweight {
            LWeight::Factored(w) => Some((w.clone(), b.dim)),
            LWeight::Opaque(_) => None,
        })
        .collect()
}
