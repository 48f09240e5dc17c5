//! Gaussian elimination over a field: dense reduced row echelon form and a
//! sparse incremental echelon basis used for large, mostly-empty spans.

use std::collections::BTreeMap;

use super::Matrix;
use crate::scalar::Field;

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns.
pub fn rref<F: Field>(a: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = F::one() / m[(r, c)].clone();
        for j in 0..m.cols() {
            m[(r, j)] = m[(r, j)].clone() * inv.clone();
        }
        for i in 0..m.rows() {
            if i != r && !m[(i, c)].is_zero() {
                let k = m[(i, c)].clone();
                m.sub_row_multiple(i, r, &k);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<F: Field>(a: &Matrix<F>) -> usize {
    rref(a).1.len()
}

/// Basis of `{x : a · x = 0}`.
pub fn nullspace<F: Field>(a: &Matrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); a.cols()];
            x[f] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r[(row, f)].clone();
            }
            x
        })
        .collect()
}

/// Some solution of `a · x = b` (free variables set to zero), re-checked by
/// multiplication, or `None` if the system is inconsistent.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must match rows");
    let aug = a.hstack(&Matrix::from_column(b));
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![F::zero(); a.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, a.cols())].clone();
    }
    if a.mul_vec(&x) != b {
        return None;
    }
    Some(x)
}

/// Sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// `a - k * b` on sparse vectors.
pub fn sparse_axpy<F: Field>(a: &[(usize, F)], k: &F, b: &[(usize, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = -(k.clone() * b[j].1.clone());
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = a[i].1.clone() - k.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A basis kept in echelon form: every row has a distinct leading column and
/// leading coefficient one. Rows are not back-substituted; [`reduce`] still
/// yields a canonical remainder.
///
/// Because leading columns are distinct, the vectors of the span whose first
/// nonzero column is at least `c` are exactly the span of the rows whose
/// leading column is at least `c`.
///
/// [`reduce`]: SparseEchelon::reduce
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for SparseEchelon<F> {
    fn default() -> Self {
        SparseEchelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows keyed by leading column.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec<F>)> {
        self.rows.iter().map(|(&c, r)| (c, r))
    }

    /// Eliminates only leading terms; returns the first vector whose leading
    /// column is not a pivot (or the empty vector).
    fn reduce_leading(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((c, coef)) = v.first().cloned() {
            match self.rows.get(&c) {
                Some(row) => v = sparse_axpy(&v, &coef, row),
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span. Returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let v = self.reduce_leading(v);
        let Some((c, lead)) = v.first().cloned() else {
            return false;
        };
        let inv = F::one() / lead;
        let row = v.into_iter().map(|(j, x)| (j, x * inv.clone())).collect();
        self.rows.insert(c, row);
        true
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce_leading(v).is_empty()
    }

    /// Canonical remainder of `v` modulo the span: no pivot column survives.
    pub fn reduce(&self, v: SparseVec<F>) -> SparseVec<F> {
        let mut acc: BTreeMap<usize, F> = v.into_iter().collect();
        let mut cursor = 0;
        while let Some((&c, coef)) = acc.range(cursor..).next() {
            if let Some(row) = self.rows.get(&c) {
                let coef = coef.clone();
                for (j, x) in row {
                    let e = acc.entry(*j).or_insert_with(F::zero);
                    *e = e.clone() - coef.clone() * x.clone();
                    if e.is_zero() {
                        acc.remove(j);
                    }
                }
            }
            cursor = c + 1;
        }
        acc.into_iter().collect()
    }
}
