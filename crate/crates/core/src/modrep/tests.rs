use super::*;
use crate::drinfeld::LWeight;
use crate::exactnum::{factorial, Poly, PrimeField, RationalField, Ring};
use crate::looppbw::{basicrel_sides, Sign};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut e = vec![f.zero(); n];
    e[i] = f.one();
    e
}

#[test]
fn evaluation_module_lambda_one() {
    let f = RationalField;
    let w = LoopModule::eval_weyl(&f, 2, q(3)).unwrap();
    let v0 = unit(&f, 3, 0);
    assert_eq!(w.lambda(1).unwrap().mul_vec(&f, &v0), vec![q(-6), q(0), q(0)]);
    // Λ_1 = −h_1 on the whole module
    assert_eq!(w.lambda(1).unwrap(), w.op(Gen::H { r: 1 }).unwrap().scale(&f, &q(-1)));
}

#[test]
fn coproduct_of_x_minus_two() {
    let f = RationalField;
    let (a, b) = (q(2), q(5));
    let m = LoopModule::tensor(
        &LoopModule::eval_weyl(&f, 2, a.clone()).unwrap(),
        &LoopModule::eval_weyl(&f, 1, b.clone()).unwrap(),
    );
    let img = m.lower(2, 1).unwrap().mul_vec(&f, &unit(&f, 6, 0));
    // v1⊗w0 is index 2, v0⊗w1 is index 1
    let mut expect = vec![q(0); 6];
    expect[2] = a.pow(2);
    expect[1] = b.pow(2);
    assert_eq!(img, expect);
}

#[test]
fn steinberg_dimensions() {
    let f = PrimeField::new(2).unwrap();
    assert_eq!(LoopModule::irreducible(&f, 3, 1).unwrap().dim(), 4);
    let f3 = PrimeField::new(3).unwrap();
    // 5 = 12 in base 3
    assert_eq!(LoopModule::irreducible(&f3, 5, 2).unwrap().dim(), 3 * 2);
    assert_eq!(LoopModule::irreducible(&f3, 0, 2).unwrap().dim(), 1);
}

#[test]
fn dual_flips_weights_and_keeps_drinfeld_polynomial() {
    let f = PrimeField::new(5).unwrap();
    let w = LoopModule::eval_weyl(&f, 3, 2).unwrap();
    let d = LoopModule::dual(&w);
    assert_eq!(d.weights(), &[-3, -1, 1, 3]);
    let hw = ell_hw_vectors(&d, None).unwrap();
    assert_eq!(hw.len(), 1);
    let rep = drinfeld_polynomial(&d, &hw[0]).unwrap();
    assert!(rep.consistent());
    let expect = Poly::from_coeffs(&f, vec![1, 3]).pow(&f, 3);
    assert_eq!(rep.omega, expect);
}

#[test]
fn psi_twist_is_reparametrisation() {
    let f = PrimeField::new(7).unwrap();
    let a = 3;
    let t = LoopModule::psi(&LoopModule::eval_weyl(&f, 3, 1).unwrap(), a).unwrap();
    let w = LoopModule::eval_weyl(&f, 3, a).unwrap();
    for r in -3..=3 {
        for k in 0..=3 {
            assert_eq!(t.lower(r, k).unwrap(), w.lower(r, k).unwrap());
            assert_eq!(t.raise(r, k).unwrap(), w.raise(r, k).unwrap());
        }
        assert_eq!(t.lambda(r).unwrap(), w.lambda(r).unwrap());
    }
}

#[test]
fn irreducible_drinfeld_polynomial() {
    for (p, lam, a) in [(2u64, 3u32, 1u64), (3, 5, 2), (5, 7, 3), (2, 6, 1)] {
        let f = PrimeField::new(p).unwrap();
        let v = LoopModule::irreducible(&f, lam, a).unwrap();
        let hw = ell_hw_vectors(&v, None).unwrap();
        assert_eq!(hw.len(), 1, "p={p} λ={lam}");
        let rep = drinfeld_polynomial(&v, &hw[0]).unwrap();
        assert!(rep.consistent());
        let expect = Poly::from_coeffs(&f, vec![1, f.neg(&a)]).pow(&f, lam);
        assert_eq!(rep.omega, expect, "p={p} λ={lam}");
    }
}

#[test]
fn garland_relation_on_highest_weight_vector() {
    let f = RationalField;
    let m = LoopModule::tensor(
        &LoopModule::eval_weyl(&f, 2, q(3)).unwrap(),
        &LoopModule::eval_weyl(&f, 1, q(-2)).unwrap(),
    );
    let v = unit(&f, m.dim(), 0);
    for k in 1..=3 {
        for l in 0..=k {
            for s in -1..=1 {
                for sign in [Sign::Plus, Sign::Minus] {
                    let (lhs, rhs) = basicrel_sides(k, l, s, sign);
                    let a = m.act(&lhs).unwrap().mul_vec(&f, &v);
                    let b = m.act(&rhs).unwrap().mul_vec(&f, &v);
                    assert_eq!(a, b, "k={k} l={l} s={s} {sign:?}");
                }
            }
        }
    }
}

#[test]
fn subquotients_of_tensor() {
    let f = PrimeField::new(3).unwrap();
    let w = LoopModule::eval_weyl(&f, 1, 1).unwrap();
    let m = LoopModule::tensor(&w, &w);
    // W(1,1)⊗W(1,1) has the symmetric square as a submodule
    let sym = vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 0, 1]];
    let s = LoopModule::submodule(&m, &sym).unwrap();
    assert_eq!(s.weights(), &[2, 0, -2]);
    let qm = LoopModule::quotient(&m, &sym).unwrap();
    assert_eq!(qm.weights(), &[0]);
    assert!(qm.lower(0, 1).unwrap().is_zero(&f));
}

#[test]
fn ell_weights_of_two_point_tensor() {
    let f = PrimeField::new(5).unwrap();
    let m = LoopModule::tensor(
        &LoopModule::eval_weyl(&f, 1, 2).unwrap(),
        &LoopModule::eval_weyl(&f, 1, 3).unwrap(),
    );
    let blocks = ell_weight_decomposition(&m).unwrap();
    let ws = factored_ell_weights(&blocks).unwrap();
    assert_eq!(ws.len(), 4);
    let w = |pairs: &[(u64, i64)]| EllWeight::from_exponents(pairs.iter().copied());
    for target in [w(&[(2, 1), (3, 1)]), w(&[(2, -1), (3, 1)]), w(&[(2, 1), (3, -1)]), w(&[(2, -1), (3, -1)])] {
        assert!(ws.contains(&(target.clone(), 1)), "{target:?}");
    }
}

#[test]
fn opaque_series_stays_opaque() {
    let f = PrimeField::new(3).unwrap();
    // 1 + u² has no roots in F_3
    let s = vec![1, 0, 1, 0, 0, 0, 0, 0];
    assert!(matches!(identify_series(&f, &s, 2, 2), LWeight::Opaque(_)));
}

use crate::drinfeld::EllWeight;

fn arb_module() -> impl Strategy<Value = (u64, Vec<(u32, u64, u32)>)> {
    prop_oneof![Just(2u64), Just(3), Just(5)].prop_flat_map(|p| {
        let part = (0u32..p as u32, 1u64..p, 0u32..2);
        (Just(p), proptest::collection::vec(part, 1..3))
    })
}

fn build(p: u64, parts: &[(u32, u64, u32)]) -> LoopModule<PrimeField> {
    let f = PrimeField::new(p).unwrap();
    let ms: Vec<_> = parts
        .iter()
        .map(|&(l, a, m)| LoopModule::frobenius(&LoopModule::eval_weyl(&f, l, a).unwrap(), m).unwrap())
        .collect();
    LoopModule::tensor_all(&ms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn operators_respect_grading((p, parts) in arb_module(), r in -3i64..4, k in 1u32..4) {
        let m = build(p, &parts);
        let f = m.field().clone();
        for (g, shift) in [(Gen::Lower { r, k }, -2 * k as i64), (Gen::Raise { r, k }, 2 * k as i64), (Gen::Lambda { r }, 0)] {
            let a = m.op(g).unwrap();
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    if !f.is_zero(a.get(i, j)) {
                        prop_assert_eq!(m.weights()[i], m.weights()[j] + shift);
                    }
                }
            }
        }
    }

    #[test]
    fn character_is_weyl_symmetric((p, parts) in arb_module()) {
        let m = build(p, &parts);
        let ch = m.character();
        for (w, c) in &ch {
            prop_assert_eq!(ch.get(&-w), Some(c));
        }
        let d = LoopModule::dual(&m);
        prop_assert_eq!(d.character(), ch);
    }

    #[test]
    fn divided_powers_are_consistent(lam in 0u32..6, a in 1i64..9, r in -2i64..3, k in 1u32..5) {
        let f = RationalField;
        let m = LoopModule::tensor(
            &LoopModule::eval_weyl(&f, lam, q(a)).unwrap(),
            &LoopModule::eval_weyl(&f, 2, q(-1)).unwrap(),
        );
        let kf = Rational::from_int(factorial(k as u64));
        let x1 = m.lower(r, 1).unwrap();
        prop_assert_eq!(x1.pow(&f, k), m.lower(r, k).unwrap().scale(&f, &kf));
        let y1 = m.raise(r, 1).unwrap();
        prop_assert_eq!(y1.pow(&f, k), m.raise(r, k).unwrap().scale(&f, &kf));
        // [x⁺_r, x⁻_s] depends only on r + s
        let c1 = y1.commutator(&f, &m.lower(1, 1).unwrap());
        let c2 = m.raise(r + 1, 1).unwrap().commutator(&f, &m.lower(0, 1).unwrap());
        prop_assert_eq!(c1, c2);
    }

    #[test]
    fn dual_lambda_series_inverts((p, parts) in arb_module(), n in 1i64..5, sign in prop_oneof![Just(1i64), Just(-1)]) {
        let m = build(p, &parts);
        let f = m.field().clone();
        let d = LoopModule::dual(&m);
        let mut acc = Matrix::zeros(&f, m.dim(), m.dim());
        for i in 0..=n {
            let a = m.lambda(sign * i).unwrap();
            let b = d.lambda(sign * (n - i)).unwrap().transpose();
            acc = acc.add(&f, &a.mul(&f, &b));
        }
        prop_assert!(acc.is_zero(&f));
    }

    #[test]
    fn double_dual_is_original((p, parts) in arb_module(), r in -3i64..4, k in 0u32..3) {
        let m = build(p, &parts);
        let dd = LoopModule::dual(&LoopModule::dual(&m));
        prop_assert_eq!(dd.lower(r, k).unwrap(), m.lower(r, k).unwrap());
        prop_assert_eq!(dd.raise(r, k).unwrap(), m.raise(r, k).unwrap());
        prop_assert_eq!(dd.lambda(r).unwrap(), m.lambda(r).unwrap());
    }
}
