//! Exact linear algebra over a [`Field`]: small dense matrices and a sparse
//! row-echelon accumulator keyed by an ordered column type.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::scalar::Field;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a.clone() * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a.clone() * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s).collect(),
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = F::one() / &self[(r, c)];
            for j in c..self.cols {
                let v = self[(r, j)].clone() * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let t = f.clone() * &self[(r, j)];
                    self[(i, j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, with a 1
    /// in that column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// RREF of a list of row vectors with pivots at the *first* nonzero entry,
/// zero rows dropped. Gives a canonical basis of the row span.
pub fn canonical_row_basis<F: Field>(rows: Vec<Vec<F>>) -> Vec<Vec<F>> {
    if rows.is_empty() {
        return rows;
    }
    let mut m = Matrix::from_rows(rows);
    let rank = m.rref_in_place().len();
    (0..rank).map(|i| m.row(i).to_vec()).collect()
}

/// A sparse vector keyed by an ordered column type.
pub type SparseVec<K, F> = BTreeMap<K, F>;

/// Adds `coef * src` into `dst`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone, F: Field>(dst: &mut SparseVec<K, F>, coef: &F, src: &SparseVec<K, F>) {
    if coef.is_zero() {
        return;
    }
    for (k, v) in src {
        let t = coef.clone() * v;
        match dst.get_mut(k) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                dst.insert(k.clone(), t);
            }
        }
    }
}

/// Incremental sparse row echelon form. Each stored row is monic at its
/// pivot, which is its largest column key.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Hash + Clone, F> {
    rows: Vec<SparseVec<K, F>>,
    pivots: HashMap<K, usize>,
}

impl<K: Ord + Hash + Clone, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Self {
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }
}

impl<K: Ord + Hash + Clone, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.pivots.contains_key(k)
    }

    pub fn rows(&self) -> &[SparseVec<K, F>] {
        &self.rows
    }

    /// Eliminates every pivot column from `v`. The result is zero iff `v`
    /// lies in the row span.
    pub fn reduce(&self, mut v: SparseVec<K, F>) -> SparseVec<K, F> {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next_back().cloned(),
                Some(c) => v.range(..c.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(&r) = self.pivots.get(&k) {
                let coef = -v[&k].clone();
                axpy(&mut v, &coef, &self.rows[r]);
                debug_assert!(!v.contains_key(&k));
            }
            cursor = Some(k);
        }
        v
    }

    /// Reduces and stores `v`; returns true when the rank grew.
    pub fn insert(&mut self, v: SparseVec<K, F>) -> bool {
        let mut v = self.reduce(v);
        let Some((k, lead)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        if !lead.is_one() {
            let inv = F::one() / &lead;
            for c in v.values_mut() {
                *c = c.clone() * &inv;
            }
        }
        self.pivots.insert(k, self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: &SparseVec<K, F>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Fully reduced form: afterwards every row is `pivot + (non-pivot
    /// columns only)`, so [`Echelon::reduce`] needs a single pass.
    pub fn interreduce(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by(|&a, &b| {
            let ka = self.rows[a].keys().next_back();
            let kb = self.rows[b].keys().next_back();
            ka.cmp(&kb)
        });
        for r in order {
            let row = std::mem::take(&mut self.rows[r]);
            let (pivot, lead) = row.iter().next_back().map(|(k, c)| (k.clone(), c.clone())).unwrap();
            let mut tail = row;
            tail.remove(&pivot);
            let needs = tail.keys().any(|k| self.pivots.contains_key(k));
            if needs {
                // earlier pivots are smaller and already fully reduced
                let hits: Vec<(K, F)> = tail
                    .iter()
                    .filter(|(k, _)| self.pivots.contains_key(*k))
                    .map(|(k, c)| (k.clone(), c.clone()))
                    .collect();
                for (k, c) in hits {
                    let src = &self.rows[self.pivots[&k]];
                    let coef = -c;
                    let mut src_tail = src.clone();
                    src_tail.remove(&k);
                    tail.remove(&k);
                    axpy(&mut tail, &coef, &src_tail);
                }
            }
            tail.insert(pivot, lead);
            self.rows[r] = tail;
        }
    }

    /// Row whose pivot is `k`, if any.
    pub fn row_for(&self, k: &K) -> Option<&SparseVec<K, F>> {
        self.pivots.get(k).map(|&r| &self.rows[r])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect())
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.apply(&v).iter().all(|x| x == &r(0)));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e: Echelon<u32, BigRational> = Echelon::new();
        let v1: SparseVec<u32, _> = [(0, r(1)), (2, r(1))].into_iter().collect();
        let v2: SparseVec<u32, _> = [(1, r(1)), (2, r(-1))].into_iter().collect();
        let v3: SparseVec<u32, _> = [(0, r(1)), (1, r(1))].into_iter().collect();
        assert!(e.insert(v1));
        assert!(e.insert(v2));
        assert!(!e.insert(v3.clone()));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v3));
        let rest = e.reduce([(2, r(5))].into_iter().collect());
        assert!(!rest.is_empty() && !rest.keys().any(|k| e.is_pivot(k)));
    }
}
