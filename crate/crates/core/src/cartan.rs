//! Cartan matrices, weights, P/Q and Weyl-group bookkeeping in any finite type.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::exactnum::{Rational, RationalField};
use crate::linalg::Matrix;

/// Coordinates `λ(h_i)` in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

/// Coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector(pub Vec<i64>);

/// Residues modulo the nontrivial invariant factors of the Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightClass(pub Vec<i64>);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

impl WeightClass {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    name: String,
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
    // Smith data: U·C·V = diag(f); classes are read off U·w.
    u: Vec<Vec<i64>>,
    factors: Vec<i64>,
}

fn symmetrizer(c: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = c.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                if c[j][i] == 0 {
                    return None;
                }
                let dj = d[i].clone().unwrap() * Rational::new(c[i][j], c[j][i]);
                match &d[j] {
                    Some(x) if *x != dj => return None,
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(Option::unwrap).collect();
    let lcm = d.iter().fold(num_bigint::BigInt::from(1), |acc, x| {
        num_integer::Integer::lcm(&acc, x.denom())
    });
    let ints: Vec<i64> = d
        .iter()
        .map(|x| (x * &Rational::from_int(lcm.clone())).to_i64().unwrap())
        .collect();
    let g = ints.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    Some(ints.iter().map(|x| x / g).collect())
}

/// Smith normal form `U C V = D` over Z; returns `(U, diagonal)`.
fn smith(c: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = c.len();
    let mut a: Vec<Vec<i128>> = c.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    for t in 0..n {
        loop {
            // smallest nonzero entry in the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in 0..n {
                        a[i][j] -= q * a[t][j];
                        u[i][j] -= q * u[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..n).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % a[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    for j in 0..n {
                        a[t][j] += a[i][j];
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..n {
                a[t][j] = -a[t][j];
                u[t][j] = -u[t][j];
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i] as i64).collect();
    let u = u.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    (u, diag)
}

impl CartanData {
    pub fn from_matrix(name: impl Into<String>, c: Vec<Vec<i64>>) -> Result<Self> {
        let n = c.len();
        if n == 0 || c.iter().any(|r| r.len() != n) {
            return Err(domain("Cartan matrix must be square and nonempty"));
        }
        for i in 0..n {
            for j in 0..n {
                if (i == j && c[i][j] != 2) || (i != j && c[i][j] > 0) {
                    return Err(domain("not a generalized Cartan matrix"));
                }
                if i != j && (c[i][j] == 0) != (c[j][i] == 0) {
                    return Err(domain("not a generalized Cartan matrix"));
                }
            }
        }
        let d = symmetrizer(&c).ok_or_else(|| domain("Cartan matrix is not symmetrizable"))?;
        // finite type: D·C positive definite (leading principal minors)
        for k in 1..=n {
            let m = Matrix::from_rows(
                (0..k).map(|i| (0..k).map(|j| Rational::from(d[i] * c[i][j])).collect()).collect(),
                k,
            );
            if m.det(&RationalField) <= Rational::zero() {
                return Err(domain("Cartan matrix is not of finite type"));
            }
        }
        let (u, diag) = smith(&c);
        let mut cd = CartanData { name: name.into(), c, d, u, factors: diag };
        // keep only nontrivial factors, with the rows of U that read them
        let keep: Vec<usize> = (0..n).filter(|&i| cd.factors[i] != 1).collect();
        cd.u = keep.iter().map(|&i| cd.u[i].clone()).collect();
        cd.factors = keep.iter().map(|&i| cd.factors[i]).collect();
        Ok(cd)
    }

    pub fn preset(name: &str) -> Result<Self> {
        let c: Vec<Vec<i64>> = match name {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            // α₁ long, α₂ short
            "B2" => vec![vec![2, -1], vec![-2, 2]],
            // α₁ short, α₂ long
            "C2" => vec![vec![2, -2], vec![-1, 2]],
            "D4" => vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ],
            _ => return Err(domain(format!("unknown Cartan preset {name}"))),
        };
        CartanData::from_matrix(name, c)
    }

    pub fn sl2() -> Self {
        CartanData::preset("A1").unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.c.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    /// Nontrivial invariant factors of P/Q; their product is |det C|.
    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn weight_class(&self, w: &Weight) -> WeightClass {
        let cls = self
            .u
            .iter()
            .zip(&self.factors)
            .map(|(row, &f)| row.iter().zip(&w.0).map(|(a, b)| a * b).sum::<i64>().rem_euclid(f))
            .collect();
        WeightClass(cls)
    }

    pub fn class_add(&self, a: &WeightClass, b: &WeightClass) -> WeightClass {
        WeightClass(a.0.iter().zip(&b.0).zip(&self.factors).map(|((x, y), f)| (x + y).rem_euclid(*f)).collect())
    }

    pub fn class_neg(&self, a: &WeightClass) -> WeightClass {
        WeightClass(a.0.iter().zip(&self.factors).map(|(x, f)| (-x).rem_euclid(*f)).collect())
    }

    pub fn zero_class(&self) -> WeightClass {
        WeightClass(vec![0; self.factors.len()])
    }

    /// `α ↦ (α(h_j))_j`.
    pub fn root_to_weight(&self, a: &RootVector) -> Weight {
        let n = self.rank();
        Weight((0..n).map(|j| (0..n).map(|i| self.c[j][i] * a.0[i]).sum()).collect())
    }

    fn reflect_root(&self, i: usize, b: &[i64]) -> Vec<i64> {
        let pairing: i64 = (0..self.rank()).map(|j| self.c[i][j] * b[j]).sum();
        let mut out = b.to_vec();
        out[i] -= pairing;
        out
    }

    /// Positive roots, sorted by height then coordinates.
    pub fn positive_roots(&self) -> Vec<RootVector> {
        let n = self.rank();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let r = self.reflect_root(i, &b);
                if !seen.contains(&r) {
                    seen.insert(r.clone());
                    queue.push_back(r);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        pos.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        pos.into_iter().map(RootVector).collect()
    }

    /// `⟨α, α⟩ / 2` in the normalization `⟨α_i, α_i⟩ = 2 d_i`.
    pub fn half_norm(&self, a: &RootVector) -> Rational {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            for j in 0..n {
                s += a.0[i] * a.0[j] * self.d[i] * self.c[i][j];
            }
        }
        Rational::new(s, 2)
    }

    /// Coefficients `m_i^∨ = (d_i / d_α) m_i` of `h_α = Σ m_i^∨ h_i`.
    pub fn coroot_coeffs(&self, a: &RootVector) -> Result<RootVector> {
        if !self.positive_roots().contains(a) {
            return Err(domain(format!("{:?} is not a positive root", a.0)));
        }
        let da = self.half_norm(a);
        let coeffs = a
            .0
            .iter()
            .zip(&self.d)
            .map(|(&m, &di)| {
                let x = Rational::from(di * m) / da.clone();
                x.to_i64().ok_or_else(|| domain("non-integral coroot coefficient"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RootVector(coeffs))
    }

    pub fn reflect_weight(&self, i: usize, w: &Weight) -> Weight {
        let li = w.0[i];
        Weight((0..self.rank()).map(|j| w.0[j] - li * self.c[j][i]).collect())
    }

    /// The antidominant element of the Weyl orbit (equals `w₀λ` for dominant λ).
    pub fn longest_element_action(&self, w: &Weight) -> Weight {
        let mut cur = w.clone();
        while let Some(i) = cur.0.iter().position(|&x| x > 0) {
            cur = self.reflect_weight(i, &cur);
        }
        cur
    }

    pub fn minus_w0(&self, w: &Weight) -> Weight {
        // −w₀ maps dominant weights to dominant weights; extend linearly
        let n = self.rank();
        let mut out = vec![0i64; n];
        for i in 0..n {
            if w.0[i] == 0 {
                continue;
            }
            let mut e = vec![0; n];
            e[i] = 1;
            let img = self.longest_element_action(&Weight(e));
            for j in 0..n {
                out[j] -= w.0[i] * img.0[j];
            }
        }
        Weight(out)
    }
}

/// Digits `λ_k ∈ P_p⁺` with `λ = Σ p^k λ_k`, trailing zero digits dropped.
pub fn base_p_digits(w: &Weight, p: u64) -> Result<Vec<Weight>> {
    if !w.is_dominant() {
        return Err(domain("base-p digits need a dominant weight"));
    }
    let p = p as i64;
    let mut rest = w.0.clone();
    let mut digits = Vec::new();
    while rest.iter().any(|&x| x != 0) {
        digits.push(Weight(rest.iter().map(|x| x % p).collect()));
        rest = rest.iter().map(|x| x / p).collect();
    }
    Ok(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_presets() -> Vec<CartanData> {
        ["A1", "A2", "A3", "B2", "C2", "D4"].iter().map(|n| CartanData::preset(n).unwrap()).collect()
    }

    #[test]
    fn invariant_factors() {
        let get = |n: &str| CartanData::preset(n).unwrap().invariant_factors().to_vec();
        assert_eq!(get("A1"), vec![2]);
        assert_eq!(get("A2"), vec![3]);
        assert_eq!(get("A3"), vec![4]);
        assert_eq!(get("B2"), vec![2]);
        assert_eq!(get("C2"), vec![2]);
        assert_eq!(get("D4"), vec![2, 2]);
        let sl2 = CartanData::sl2();
        assert!(sl2.weight_class(&Weight(vec![2])).is_zero());
        assert_eq!(sl2.weight_class(&Weight(vec![1])), WeightClass(vec![1]));
    }

    #[test]
    fn factors_multiply_to_det() {
        for cd in all_presets() {
            let n = cd.rank();
            let m = Matrix::from_rows(
                cd.matrix().iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect(),
                n,
            );
            let det = m.det(&RationalField).to_i64().unwrap();
            assert_eq!(cd.invariant_factors().iter().product::<i64>(), det.abs(), "{}", cd.name());
        }
    }

    #[test]
    fn projection_kills_roots() {
        for cd in all_presets() {
            for a in cd.positive_roots() {
                assert!(cd.weight_class(&cd.root_to_weight(&a)).is_zero(), "{}", cd.name());
            }
        }
    }

    #[test]
    fn root_counts() {
        let counts: Vec<usize> = all_presets().iter().map(|c| c.positive_roots().len()).collect();
        assert_eq!(counts, vec![1, 3, 6, 4, 4, 12]);
    }

    #[test]
    fn coroots() {
        let a2 = CartanData::preset("A2").unwrap();
        assert_eq!(a2.coroot_coeffs(&RootVector(vec![1, 1])).unwrap(), RootVector(vec![1, 1]));
        let c2 = CartanData::preset("C2").unwrap();
        // α₁+α₂ is short, 2α₁+α₂ is long
        assert_eq!(c2.coroot_coeffs(&RootVector(vec![1, 1])).unwrap(), RootVector(vec![1, 2]));
        assert_eq!(c2.coroot_coeffs(&RootVector(vec![2, 1])).unwrap(), RootVector(vec![1, 1]));
        for cd in all_presets() {
            for a in cd.positive_roots() {
                // α(h_α) = 2
                let h = cd.coroot_coeffs(&a).unwrap();
                let w = cd.root_to_weight(&a);
                let pairing: i64 = h.0.iter().zip(&w.0).map(|(x, y)| x * y).sum();
                assert_eq!(pairing, 2, "{} {:?}", cd.name(), a);
            }
        }
        assert!(c2.coroot_coeffs(&RootVector(vec![1, 2])).is_err());
    }

    #[test]
    fn longest_element() {
        let sl2 = CartanData::sl2();
        assert_eq!(sl2.longest_element_action(&Weight(vec![3])), Weight(vec![-3]));
        let a2 = CartanData::preset("A2").unwrap();
        assert_eq!(a2.longest_element_action(&Weight(vec![1, 0])), Weight(vec![0, -1]));
        assert_eq!(a2.minus_w0(&Weight(vec![1, 0])), Weight(vec![0, 1]));
        assert_eq!(sl2.minus_w0(&Weight(vec![5])), Weight(vec![5]));
    }

    #[test]
    fn digits() {
        let d = |l: i64, p: u64| -> Vec<i64> {
            base_p_digits(&Weight(vec![l]), p).unwrap().iter().map(|w| w.0[0]).collect()
        };
        assert_eq!(d(3, 2), vec![1, 1]);
        assert_eq!(d(5, 3), vec![2, 1]);
        assert_eq!(d(2, 2), vec![0, 1]);
        assert!(base_p_digits(&Weight(vec![-1]), 2).is_err());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(CartanData::from_matrix("affine", vec![vec![2, -2], vec![-2, 2]]).is_err());
        assert!(CartanData::from_matrix("bad", vec![vec![2, 1], vec![1, 2]]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn w0_involution(idx in 0usize..6, coords in proptest::collection::vec(0i64..5, 4)) {
                let cd = &all_presets()[idx];
                let w = Weight(coords[..cd.rank()].to_vec());
                let lo = cd.longest_element_action(&w);
                prop_assert!(lo.0.iter().all(|&x| x <= 0));
                let neg = Weight(lo.0.iter().map(|x| -x).collect());
                let back = cd.longest_element_action(&neg);
                prop_assert_eq!(Weight(back.0.iter().map(|x| -x).collect()), w);
            }

            #[test]
            fn projection_additive(idx in 0usize..6, a in proptest::collection::vec(-6i64..6, 4), b in proptest::collection::vec(-6i64..6, 4)) {
                let cd = &all_presets()[idx];
                let n = cd.rank();
                let (wa, wb) = (Weight(a[..n].to_vec()), Weight(b[..n].to_vec()));
                let sum = Weight((0..n).map(|i| wa.0[i] + wb.0[i]).collect());
                prop_assert_eq!(cd.weight_class(&sum), cd.class_add(&cd.weight_class(&wa), &cd.weight_class(&wb)));
            }

            #[test]
            fn digit_reconstruction(l in 0i64..5000, pi in 0usize..3) {
                let p = [2u64, 3, 5][pi];
                let ds = base_p_digits(&Weight(vec![l]), p).unwrap();
                let mut acc = 0i64;
                for (k, d) in ds.iter().enumerate() {
                    prop_assert!(d.0[0] >= 0 && d.0[0] < p as i64);
                    acc += d.0[0] * (p as i64).pow(k as u32);
                }
                prop_assert_eq!(acc, l);
            }
        }
    }
}
