//! Dense exact linear algebra over a [`Field`] context.

use alloc::vec;
use alloc::vec::Vec;

use crate::exactnum::{Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<R: Ring<Elem = E>>(r: &R, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![r.zero(); rows * cols] }
    }

    pub fn identity<R: Ring<Elem = E>>(r: &R, n: usize) -> Self {
        let mut m = Matrix::zeros(r, n, n);
        for i in 0..n {
            m.set(i, i, r.one());
        }
        m
    }

    pub fn diagonal<R: Ring<Elem = E>>(r: &R, d: Vec<E>) -> Self {
        let n = d.len();
        let mut m = Matrix::zeros(r, n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let n = rows.len();
        let data: Vec<E> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n * cols, "ragged rows");
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<F, T: Clone + PartialEq>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<F, T: Clone + PartialEq, Er>(&self, f: F) -> Result<Matrix<T>, Er>
    where
        F: Fn(&E) -> Result<T, Er>,
    {
        let data = self.data.iter().map(f).collect::<Result<_, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, r: &R) -> bool {
        self.data.iter().all(|x| r.is_zero(x))
    }

    pub fn add<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| r.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| r.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, s: &E) -> Self {
        self.map(|x| r.mul(x, s))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(r, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !r.is_zero(b) {
                        let idx = i * o.cols + j;
                        out.data[idx] = r.add(&out.data[idx], &r.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, r: &R, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(r.zero(), |acc, (a, b)| {
                    if r.is_zero(a) || r.is_zero(b) {
                        acc
                    } else {
                        r.add(&acc, &r.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn pow<R: Ring<Elem = E>>(&self, r: &R, e: u32) -> Self {
        (0..e).fold(Matrix::identity(r, self.rows), |acc, _| acc.mul(r, self))
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        self.mul(r, o).sub(r, &o.mul(r, self))
    }

    /// Kronecker product; basis index of `e_i ⊗ f_j` is `i * dim(f) + j`.
    pub fn kron<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let (rows, cols) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = Matrix::zeros(r, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if r.is_zero(a) {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !r.is_zero(b) {
                            out.set(i * o.rows + k, j * o.cols + l, r.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Determinant by Laplace expansion along the first row; valid over any
    /// commutative ring and fine for the small sizes used here.
    pub fn det<R: Ring<Elem = E>>(&self, r: &R) -> E {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return r.one();
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = r.zero();
        for j in 0..n {
            let a = self.get(0, j);
            if r.is_zero(a) {
                continue;
            }
            let minor = self.minor(r, 0, j);
            let t = r.mul(a, &minor.det(r));
            acc = if j % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
        }
        acc
    }

    fn minor<R: Ring<Elem = E>>(&self, _r: &R, i0: usize, j0: usize) -> Self {
        let mut data = Vec::new();
        for i in (0..self.rows).filter(|&i| i != i0) {
            for j in (0..self.cols).filter(|&j| j != j0) {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }
}

/// Reduced row-echelon basis of a subspace of `F^n`, grown one vector at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis<E> {
    n: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq + Ord> EchelonBasis<E> {
    pub fn new(n: usize) -> Self {
        EchelonBasis { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<F: Field<Elem = E>>(f: &F, n: usize, vs: impl IntoIterator<Item = Vec<E>>) -> Self {
        let mut b = EchelonBasis::new(n);
        for v in vs {
            b.insert(f, v);
        }
        b
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[pc]) {
                continue;
            }
            let c = v[pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    /// Insert `v`; returns whether the span grew. Keeps the basis fully reduced.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: Vec<E>) -> bool {
        let mut w = self.reduce(f, &v);
        let Some(pc) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[pc]);
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[pc]) {
                let c = row[pc].clone();
                for (x, y) in row.iter_mut().zip(&w) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(pos, w);
        self.pivots.insert(pos, pc);
        true
    }

    /// Coordinates of `v` in the echelon rows, if `v` lies in the span.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let coords: Vec<E> = self.pivots.iter().map(|&pc| v[pc].clone()).collect();
        let mut rest = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coords) {
            for (x, y) in rest.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(c, y));
            }
        }
        rest.iter().all(|x| f.is_zero(x)).then_some(coords)
    }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    EchelonBasis::from_vectors(f, m.cols(), m.row_vecs()).dim()
}

/// Basis of the right kernel `{v : A v = 0}`.
pub fn nullspace<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let eb = EchelonBasis::from_vectors(f, a.cols(), a.row_vecs());
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|c| !eb.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); n];
            v[fc] = f.one();
            for (row, &pc) in eb.rows.iter().zip(&eb.pivots) {
                v[pc] = f.neg(&row[fc]);
            }
            v
        })
        .collect()
}

/// Joint kernel of several matrices with the same column count.
pub fn joint_nullspace<F: Field>(f: &F, n: usize, ms: &[Matrix<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut eb = EchelonBasis::new(n);
    for m in ms {
        for r in m.row_vecs() {
            eb.insert(f, r);
            if eb.dim() == n {
                return Vec::new();
            }
        }
    }
    let stacked = Matrix::from_rows(eb.rows.clone(), n);
    nullspace(f, &stacked)
}

pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut aug: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !f.is_zero(&aug[r][col]))?;
        aug.swap(col, piv);
        let inv = f.inv(&aug[col][col]);
        for x in aug[col].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for r in 0..n {
            if r != col && !f.is_zero(&aug[r][col]) {
                let c = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (x, y) in aug[r].iter_mut().zip(&pivot_row) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
    }
    Some(Matrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect(), n))
}

/// Solve `A x = b` for one solution, if any.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let (m, n) = (a.rows(), a.cols());
    let mut aug: Vec<Vec<F::Elem>> = (0..m)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..m).find(|&r| !f.is_zero(&aug[r][col])) else {
            continue;
        };
        aug.swap(row, piv);
        let inv = f.inv(&aug[row][col]);
        for x in aug[row].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for r in 0..m {
            if r != row && !f.is_zero(&aug[r][col]) {
                let c = aug[r][col].clone();
                let pr = aug[row].clone();
                for (x, y) in aug[r].iter_mut().zip(&pr) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if aug[row..].iter().any(|r| !f.is_zero(&r[n])) {
        return None;
    }
    let mut x = vec![f.zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{PrimeField, Rational, RationalField};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn determinant_and_inverse() {
        let f = RationalField;
        let a = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]], 2);
        assert_eq!(a.det(&f), q(-2));
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(a.mul(&f, &inv), Matrix::identity(&f, 2));
    }

    #[test]
    fn kernel_and_solve() {
        let f = PrimeField::new(3).unwrap();
        let a = Matrix::from_rows(vec![vec![1, 1, 0], vec![0, 0, 1]], 3);
        let k = nullspace(&f, &a);
        assert_eq!(k, vec![vec![2, 1, 0]]);
        assert_eq!(solve(&f, &a, &[1, 2]), Some(vec![1, 0, 2]));
        let b = Matrix::from_rows(vec![vec![1, 1], vec![2, 2]], 2);
        assert_eq!(solve(&f, &b, &[1, 1]), None);
    }

    #[test]
    fn echelon_coordinates() {
        let f = RationalField;
        let mut eb = EchelonBasis::new(3);
        assert!(eb.insert(&f, vec![q(1), q(2), q(3)]));
        assert!(eb.insert(&f, vec![q(0), q(1), q(1)]));
        assert!(!eb.insert(&f, vec![q(1), q(3), q(4)]));
        let c = eb.coordinates(&f, &[q(2), q(5), q(7)]).unwrap();
        let rebuilt: Vec<Rational> = (0..3)
            .map(|j| eb.rows().iter().zip(&c).fold(q(0), |acc, (r, x)| acc + x * &r[j]))
            .collect();
        assert_eq!(rebuilt, vec![q(2), q(5), q(7)]);
        assert!(eb.coordinates(&f, &[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn kronecker_layout() {
        let f = RationalField;
        let a = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]], 2);
        let i = Matrix::identity(&f, 2);
        let k = a.kron(&f, &i);
        assert_eq!(k.get(0, 2), &q(1));
        assert_eq!(k.get(1, 3), &q(1));
    }
}
