//! The two-point example `W((1 − au)²) ⊗ W(1 − bu)`: symbolic transition
//! matrices in `a, b` and a numeric lattice comparison over `Z_(p)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{compare_lattices, lattice_closure, tensor_lattice, ClosureWindows, ElementaryDivisors, LatticeBasis};
use crate::error::{domain, Error, Result};
use crate::exactnum::{Dvr, MPoly, MPolyRing, RatFunc, RatFuncField, Rational, Ring};
use crate::linalg::{inverse, Matrix};
use crate::looppbw::{StraightenedModel, WeylWindows};
use crate::modrep::LoopModule;

const VAR_A: i64 = 0;
const VAR_B: i64 = 1;

/// Result of the symbolic and numeric checks.
#[derive(Clone, Debug)]
pub struct PaperExample {
    /// `x⁻_s v₀ = s a^{s−1} x⁻₁v₀ − (s−1) a^s x⁻₀v₀` for the sampled `s`.
    pub xs_relation: bool,
    pub xs_range: (i64, i64),
    /// `x⁻₁x⁻₀v₀ = 2a (x⁻₀)^{(2)} v₀`.
    pub x1x0_relation: bool,
    /// `x⁻_r x⁻_s v₀ = 2a^{r+s} (x⁻₀)^{(2)} v₀` for `0 ≤ r, s ≤ 2`.
    pub product_relation: bool,
    pub middle_plus: Matrix<MPoly>,
    pub middle_minus: Matrix<MPoly>,
    pub det_plus: MPoly,
    pub det_minus: MPoly,
    pub expected_det: MPoly,
    pub matrices_match: bool,
    /// `(x⁻₀)^{(3)}(v₀⊗w₀) = v₂⊗w₁`.
    pub top_relation: bool,
    pub numeric: Vec<NumericComparison>,
}

impl PaperExample {
    pub fn all_pass(&self) -> bool {
        self.xs_relation
            && self.x1x0_relation
            && self.product_relation
            && self.matrices_match
            && self.det_plus == self.expected_det
            && self.det_minus == self.expected_det
            && self.top_relation
            && self.numeric.iter().all(|n| n.consistent())
    }
}

/// `L = U(ĝ)_A(v₀⊗w₀)` against `L₁ ⊗ L₂` at concrete `a, b`.
#[derive(Clone, Debug)]
pub struct NumericComparison {
    pub p: u64,
    pub a: Rational,
    pub b: Rational,
    /// `L₁` is spanned by `v₀, v₁, v₂, v₃`.
    pub l1_basis_ok: bool,
    pub divisors: ElementaryDivisors,
    /// `ā ≠ b̄`.
    pub residues_distinct: bool,
}

impl NumericComparison {
    /// Equality exactly when the residues differ; otherwise each middle
    /// weight space contributes the valuation of `(a − b)²`.
    pub fn consistent(&self) -> bool {
        let dvr = Dvr::new(self.p).unwrap();
        let v = dvr.val(&(&self.a - &self.b)).finite().unwrap_or(0);
        let expect_total = 4 * v;
        self.l1_basis_ok
            && self.divisors.first_in_second
            && self.divisors.rank_deficit == 0
            && self.divisors.equal() == self.residues_distinct
            && self.divisors.total() == expect_total
    }
}

fn to_mpoly(x: &RatFunc) -> Result<MPoly> {
    let (shift, cs) = x.as_laurent().ok_or_else(|| domain("entry is not a Laurent polynomial in a"))?;
    let mut out = MPoly::zero();
    for (i, c) in cs.iter().enumerate() {
        let e = i as i64 + shift;
        let mono = if e == 0 { Vec::new() } else { vec![(VAR_A, e as i32)] };
        out = out.add(&MPoly::monomial(mono, c.clone()));
    }
    Ok(out)
}

fn mp(c: i64, a: i32, b: i32) -> MPoly {
    let mut m = Vec::new();
    if a != 0 {
        m.push((VAR_A, a));
    }
    if b != 0 {
        m.push((VAR_B, b));
    }
    MPoly::monomial(m, Rational::from(c))
}

/// The model `W((1 − au)²)` over `Q(a)` in the basis `v₀, v₁ = x⁻₀v₀, v₂ = (x⁻₀)^{(2)}v₀, v₃ = x⁻₁v₀`.
struct SquareModel {
    k: RatFuncField,
    module: LoopModule<RatFuncField>,
    change: Matrix<RatFunc>,
    change_inv: Matrix<RatFunc>,
    v: [Vec<RatFunc>; 4],
}

impl SquareModel {
    fn new() -> Result<Self> {
        let k = RatFuncField;
        let a = k.indeterminate();
        let omega = [k.one(), k.mul(&k.from_i64(-2), &a), k.mul(&a, &a)];
        let model = StraightenedModel::new(&k, &omega, &WeylWindows::default())?;
        let v0 = model.coords(&Vec::new())?;
        let module = LoopModule::straightened(&k, model);
        let v1 = module.lower(0, 1)?.mul_vec(&k, &v0);
        let v2 = module.lower(0, 2)?.mul_vec(&k, &v0);
        let v3 = module.lower(1, 1)?.mul_vec(&k, &v0);
        let v = [v0, v1, v2, v3];
        let mut change = Matrix::zeros(&k, 4, 4);
        for (j, col) in v.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                change.set(i, j, x.clone());
            }
        }
        let change_inv = inverse(&k, &change).ok_or_else(|| Error::Mismatch("v₀…v₃ are not a basis".into()))?;
        Ok(SquareModel { k, module, change, change_inv, v })
    }

    /// Operator in the `v` basis, entries as Laurent polynomials in `a`.
    fn op(&self, m: &Matrix<RatFunc>) -> Result<Matrix<MPoly>> {
        let k = &self.k;
        let conj = self.change_inv.mul(k, &m.mul(k, &self.change));
        conj.try_map(to_mpoly)
    }
}

/// `x⁻_s` and its divided powers on `W(1 − bu)` in the basis `w₀, w₁`.
fn w_lower(s: i64, k: u32) -> Matrix<MPoly> {
    let r = MPolyRing;
    match k {
        0 => Matrix::identity(&r, 2),
        1 => {
            let mut m = Matrix::zeros(&r, 2, 2);
            m.set(1, 0, mp(1, 0, s as i32));
            m
        }
        _ => Matrix::zeros(&r, 2, 2),
    }
}

/// Symbolic reproduction plus numeric lattice comparisons at the given `(p, a, b)`.
pub fn paper_example(numeric: &[(u64, i64, i64)]) -> Result<PaperExample> {
    let sq = SquareModel::new()?;
    let k = &sq.k;
    let a = k.indeterminate();
    let m = &sq.module;
    let [v0, v1, v2, v3] = &sq.v;

    let lin = |c1: &RatFunc, x: &[RatFunc], c2: &RatFunc, y: &[RatFunc]| -> Vec<RatFunc> {
        x.iter().zip(y).map(|(p, q)| k.add(&k.mul(c1, p), &k.mul(c2, q))).collect()
    };
    let xs_range = (-2i64, 4i64);
    let mut xs_relation = true;
    for s in xs_range.0..=xs_range.1 {
        let lhs = m.lower(s, 1)?.mul_vec(k, v0);
        let c3 = k.mul(&k.from_i64(s), &k.pow_signed(&a, s - 1).unwrap());
        let c1 = k.neg(&k.mul(&k.from_i64(s - 1), &k.pow_signed(&a, s).unwrap()));
        xs_relation &= lhs == lin(&c3, v3, &c1, v1);
    }
    let zero: Vec<RatFunc> = vec![k.zero(); 4];
    let two_a = k.mul(&k.from_i64(2), &a);
    let x1x0 = m.lower(1, 1)?.mul(k, &m.lower(0, 1)?);
    let x1x0_relation = x1x0.mul_vec(k, v0) == lin(&two_a, v2, &k.zero(), &zero);
    let mut product_relation = true;
    for r in 0..=2 {
        for s in 0..=2 {
            let lhs = m.lower(r, 1)?.mul(k, &m.lower(s, 1)?).mul_vec(k, v0);
            let c = k.mul(&k.from_i64(2), &k.pow(&a, (r + s) as u64));
            product_relation &= lhs == lin(&c, v2, &k.zero(), &zero);
        }
    }

    // tensor with W(1 − bu); index of v_i ⊗ w_j is 2i + j
    let ring = MPolyRing;
    let vl = |s: i64, kk: u32| -> Result<Matrix<MPoly>> {
        if kk == 0 {
            Ok(Matrix::identity(&ring, 4))
        } else {
            sq.op(&m.lower(s, kk)?)
        }
    };
    let delta = |s: i64, kk: u32| -> Result<Matrix<MPoly>> {
        let mut acc = Matrix::zeros(&ring, 8, 8);
        for l in 0..=kk {
            acc = acc.add(&ring, &vl(s, l)?.kron(&ring, &w_lower(s, kk - l)));
        }
        Ok(acc)
    };
    let mut top = vec![MPoly::zero(); 8];
    top[0] = MPoly::one();
    let image = |mat: &Matrix<MPoly>| mat.mul_vec(&ring, &top);
    let plus_rows = [2usize, 6, 1];
    let minus_rows = [4usize, 3, 7];
    let plus_imgs = [image(&delta(0, 1)?), image(&delta(1, 1)?), image(&delta(2, 1)?)];
    let minus_imgs = [
        image(&delta(0, 2)?),
        image(&delta(1, 1)?.mul(&ring, &delta(0, 1)?)),
        image(&delta(1, 2)?),
    ];
    let gather = |rows: &[usize; 3], imgs: &[Vec<MPoly>; 3]| -> (Matrix<MPoly>, bool) {
        let mut mat = Matrix::zeros(&ring, 3, 3);
        let mut clean = true;
        for (j, img) in imgs.iter().enumerate() {
            for (i, x) in img.iter().enumerate() {
                match rows.iter().position(|&r| r == i) {
                    Some(pos) => mat.set(pos, j, x.clone()),
                    None => clean &= x.is_zero(),
                }
            }
        }
        (mat, clean)
    };
    let (middle_plus, clean_plus) = gather(&plus_rows, &plus_imgs);
    let (middle_minus, clean_minus) = gather(&minus_rows, &minus_imgs);
    let expect_plus = Matrix::from_rows(
        vec![
            vec![mp(1, 0, 0), MPoly::zero(), mp(-1, 2, 0)],
            vec![MPoly::zero(), mp(1, 0, 0), mp(2, 1, 0)],
            vec![mp(1, 0, 0), mp(1, 0, 1), mp(1, 0, 2)],
        ],
        3,
    );
    let expect_minus = Matrix::from_rows(
        vec![
            vec![mp(1, 0, 0), mp(2, 1, 0), mp(1, 2, 0)],
            vec![mp(1, 0, 0), mp(1, 0, 1), MPoly::zero()],
            vec![MPoly::zero(), mp(1, 0, 0), mp(1, 0, 1)],
        ],
        3,
    );
    let matrices_match = clean_plus && clean_minus && middle_plus == expect_plus && middle_minus == expect_minus;
    let det_plus = middle_plus.det(&ring);
    let det_minus = middle_minus.det(&ring);
    let expected_det = MPoly::var(VAR_A).sub(&MPoly::var(VAR_B)).pow(2);
    let mut v2w1 = vec![MPoly::zero(); 8];
    v2w1[5] = MPoly::one();
    let top_relation = image(&delta(0, 3)?) == v2w1;

    let numeric = numeric
        .iter()
        .map(|&(p, a, b)| numeric_comparison(p, Rational::from(a), Rational::from(b)))
        .collect::<Result<Vec<_>>>()?;

    Ok(PaperExample {
        xs_relation,
        xs_range,
        x1x0_relation,
        product_relation,
        middle_plus,
        middle_minus,
        det_plus,
        det_minus,
        expected_det,
        matrices_match,
        top_relation,
        numeric,
    })
}

fn unit_vec(n: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); n];
    e[0] = Rational::one();
    e
}

fn numeric_comparison(p: u64, a: Rational, b: Rational) -> Result<NumericComparison> {
    let dvr = Dvr::new(p)?;
    if !dvr.is_unit(&a) || !dvr.is_unit(&b) {
        return Err(domain(format!("parameters must be units at {p}")));
    }
    let omega = [Rational::one(), -(&Rational::from(2) * &a), &a * &a];
    let model = StraightenedModel::new(&dvr, &omega, &WeylWindows::default())?;
    let v0 = model.coords(&Vec::new())?;
    let sqm = LoopModule::straightened(&dvr, model);
    let wm = LoopModule::eval_weyl(&dvr, 1, b.clone())?;
    let windows = ClosureWindows::default();
    let l1 = lattice_closure(&sqm, &v0, windows)?;
    let expect_l1 = LatticeBasis::span(
        &sqm,
        vec![
            v0.clone(),
            sqm.lower(0, 1)?.mul_vec(&dvr, &v0),
            sqm.lower(0, 2)?.mul_vec(&dvr, &v0),
            sqm.lower(1, 1)?.mul_vec(&dvr, &v0),
        ],
    );
    let l2 = lattice_closure(&wm, &unit_vec(2), windows)?;
    let lp = tensor_lattice(&l1, &l2);
    let amb = LoopModule::tensor(&sqm, &wm);
    let top: Vec<Rational> = v0.iter().flat_map(|x| [x.clone(), Rational::zero()]).collect();
    let l = lattice_closure(&amb, &top, windows)?;
    let divisors = compare_lattices(&l, &lp)?;
    Ok(NumericComparison {
        p,
        residues_distinct: dvr.residue(&a)? != dvr.residue(&b)?,
        a,
        b,
        l1_basis_ok: l1.same_as(&expect_l1),
        divisors,
    })
}
