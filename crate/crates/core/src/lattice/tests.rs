use super::*;
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn top(n: usize) -> Vec<Rational> {
    let mut e = vec![q(0); n];
    e[0] = q(1);
    e
}

#[test]
fn reduction_representatives() {
    let dvr = Dvr::new(3).unwrap();
    assert_eq!(reduce_mod(&dvr, &q(7), 1), q(1));
    assert_eq!(reduce_mod(&dvr, &q(7), 0), q(0));
    assert_eq!(reduce_mod(&dvr, &Rational::new(1, 3), 0), Rational::new(1, 3));
    assert_eq!(reduce_mod(&dvr, &Rational::new(-1, 3), 0), Rational::new(2, 3));
}

#[test]
fn hermite_form_is_canonical() {
    let dvr = Dvr::new(2).unwrap();
    let a = vec![vec![q(2), q(3)], vec![q(4), q(1)]];
    let b = vec![vec![q(4), q(1)], vec![q(6), q(4)], vec![q(2), q(3)]];
    let order = [0, 1];
    assert_eq!(hermite(&dvr, a.clone(), &order), hermite(&dvr, b, &order));
    let (rows, piv) = hermite(&dvr, a, &order);
    assert_eq!(piv, vec![0, 1]);
    assert_eq!(rows[0][0], q(2));
}

#[test]
fn weyl_module_lattice_is_standard() {
    let dvr = Dvr::new(3).unwrap();
    let w = LoopModule::eval_weyl(&dvr, 1, q(4)).unwrap();
    let l = lattice_closure(&w, &top(2), ClosureWindows::default()).unwrap();
    assert_eq!(l.rank(), 2);
    let red = reduce_mod_p(&l).unwrap();
    let direct = LoopModule::eval_weyl(red.field(), 1, 1).unwrap();
    for r in -3..=3 {
        assert_eq!(red.lower(r, 1).unwrap(), direct.lower(r, 1).unwrap());
        assert_eq!(red.raise(r, 1).unwrap(), direct.raise(r, 1).unwrap());
    }
}

#[test]
fn trivial_lattice() {
    let dvr = Dvr::new(5).unwrap();
    let t = LoopModule::trivial(&dvr);
    let l = lattice_closure(&t, &[q(1)], ClosureWindows::default()).unwrap();
    assert_eq!(reduce_mod_p(&l).unwrap().dim(), 1);
}

#[test]
fn equal_residue_pair_reduces_to_square() {
    let r = conjecture_cp0(3, &[q(1), q(4)], ClosureWindows::default()).unwrap();
    assert_eq!(r.lower, 4);
    assert_eq!(r.upper, 4);
    assert!(r.reduction_ok);
    assert_eq!(r.omega_bar, vec![1, 1, 1]);
    assert_eq!(r.status, Cp0Status::Verified);
    assert_eq!(r.tensor_lattice_equal, None);
}

#[test]
fn distinct_residues_give_tensor_lattice() {
    let r = conjecture_cp0(5, &[q(1), q(2)], ClosureWindows::default()).unwrap();
    assert_eq!(r.lower, 4);
    assert_eq!(r.tensor_lattice_equal, Some(true));
}

#[test]
fn comparison_of_scaled_lattice() {
    let dvr = Dvr::new(2).unwrap();
    let w = LoopModule::eval_weyl(&dvr, 1, q(1)).unwrap();
    let l = LatticeBasis::span(&w, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
    let l4 = LatticeBasis::span(&w, vec![vec![q(4), q(0)], vec![q(0), q(2)]]);
    let d = compare_lattices(&l4, &l).unwrap();
    assert_eq!(d.valuations, vec![1, 2]);
    assert!(d.first_in_second);
    assert!(compare_lattices(&l, &l).unwrap().equal());
    let d2 = compare_lattices(&l, &l4).unwrap();
    assert!(!d2.first_in_second);
}

#[test]
fn two_point_example() {
    let ex = paper_example(&[(3, 1, 2), (3, 1, 4)]).unwrap();
    assert!(ex.xs_relation && ex.x1x0_relation && ex.product_relation);
    assert!(ex.matrices_match, "{:?}\n{:?}", ex.middle_plus, ex.middle_minus);
    assert_eq!(ex.det_plus, ex.expected_det);
    assert_eq!(ex.det_minus, ex.expected_det);
    assert!(ex.top_relation);
    assert!(ex.numeric[0].divisors.equal());
    assert_eq!(ex.numeric[1].divisors.total(), 4);
    assert!(ex.all_pass());
}

fn shuffle<T>(v: &mut [T], seed: u64) {
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    for i in (1..v.len()).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = (s >> 33) as usize % (i + 1);
        v.swap(i, j);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn closure_ignores_generator_order(seed in any::<u64>(), b in 1i64..4) {
        let dvr = Dvr::new(3).unwrap();
        let m = LoopModule::tensor(
            &LoopModule::eval_weyl(&dvr, 1, q(1)).unwrap(),
            &LoopModule::eval_weyl(&dvr, 1, q(1 + 3 * b)).unwrap(),
        );
        let mut gens = lowering_gens(&m, 2);
        let base = lattice_span(&m, &[top(4)], &gens).unwrap();
        shuffle(&mut gens, seed);
        prop_assert!(lattice_span(&m, &[top(4)], &gens).unwrap().same_as(&base));
    }

    #[test]
    fn reduction_keeps_graded_ranks(a in 1i64..6, b in 1i64..6, l in 1u32..3) {
        let dvr = Dvr::new(5).unwrap();
        prop_assume!(a != b && a % 5 != 0 && b % 5 != 0);
        let m = LoopModule::tensor(
            &LoopModule::eval_weyl(&dvr, l, q(a)).unwrap(),
            &LoopModule::eval_weyl(&dvr, 1, q(b)).unwrap(),
        );
        let lat = lattice_closure(&m, &top(m.dim()), ClosureWindows::default()).unwrap();
        prop_assert_eq!(lat.rank(), m.dim());
        let red = reduce_mod_p(&lat).unwrap();
        prop_assert_eq!(red.character(), lattice_character(&lat));
        prop_assert_eq!(red.character(), m.character());
    }

    #[test]
    fn reduction_commutes_with_tensor(a in 1i64..4, b in 1i64..4) {
        let dvr = Dvr::new(3).unwrap();
        let m1 = LoopModule::eval_weyl(&dvr, 1, q(a)).unwrap();
        let m2 = LoopModule::eval_weyl(&dvr, 2, q(3 * b + 1)).unwrap();
        prop_assume!(a % 3 != 0);
        let l1 = lattice_closure(&m1, &top(2), ClosureWindows::default()).unwrap();
        let l2 = lattice_closure(&m2, &top(3), ClosureWindows::default()).unwrap();
        let tl = tensor_lattice(&l1, &l2);
        let red = reduce_mod_p(&tl).unwrap();
        let sep = LoopModule::tensor(&reduce_mod_p(&l1).unwrap(), &reduce_mod_p(&l2).unwrap());
        let f = red.field().clone();
        // transition from the canonical basis of L₁⊗L₂ to the product basis, reduced mod p
        let prod: Vec<Vec<Rational>> = l1.vectors().iter()
            .flat_map(|x| l2.vectors().iter().map(move |y| x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()))
            .collect();
        let frame = Matrix::from_rows(prod.clone(), 6).transpose();
        let mut t = Matrix::zeros(&f, 6, 6);
        for (j, v) in tl.vectors().iter().enumerate() {
            let c = crate::linalg::solve(&dvr, &frame, v).unwrap();
            for (i, x) in c.iter().enumerate() {
                t.set(i, j, residue(x, 3).unwrap());
            }
        }
        let gens = [Gen::Lower { r: -1, k: 1 }, Gen::Lower { r: 2, k: 2 }, Gen::Raise { r: 1, k: 1 },
            Gen::Raise { r: 0, k: 2 }, Gen::Lambda { r: 2 }, Gen::Lambda { r: -1 }];
        for g in gens {
            prop_assert_eq!(t.mul(&f, &red.op(g).unwrap()), sep.op(g).unwrap().mul(&f, &t));
        }
    }
}

