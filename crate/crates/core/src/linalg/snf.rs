//! Smith normal form over a Euclidean ring, with transforms.


use super::Matrix;
use crate::scalar::EuclideanRing;

/// `left · A · right = diag_matrix`, with `left` and `right` unimodular.
#[derive(Clone)]
pub struct Smith<I> {
    pub left: Matrix<I>,
    pub diag_matrix: Matrix<I>,
    pub right: Matrix<I>,
    /// The `min(rows, cols)` diagonal entries: nonnegative, each dividing
    /// the next, zeros last.
    pub diagonal: Vec<I>,
}

impl<I: std::fmt::Display> std::fmt::Debug for Smith<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Smith")
            .field("left", &self.left)
            .field("diag_matrix", &self.diag_matrix)
            .field("right", &self.right)
            .finish()
    }
}

impl<I: EuclideanRing> Smith<I> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Diagonal entry `i`, reading entries past the short side as zero.
    pub fn factor(&self, i: usize) -> I {
        self.diagonal.get(i).cloned().unwrap_or_else(I::zero)
    }
}

/// Position of the nonzero entry of least absolute value in the trailing
/// block starting at `(t, t)`. Ties go to the leftmost column, then the
/// topmost row.
fn min_pivot<I: EuclideanRing>(d: &Matrix<I>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, I)> = None;
    for j in t..d.cols() {
        for i in t..d.rows() {
            let v = &d[(i, j)];
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form<I: EuclideanRing>(a: &Matrix<I>) -> Smith<I> {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::<I>::identity(m);
    let mut v = Matrix::<I>::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_pivot(&d, t) else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    d.sub_row_multiple(i, t, &q);
                    u.sub_row_multiple(i, t, &q);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    d.sub_col_multiple(j, t, &q);
                    v.sub_col_multiple(j, t, &q);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Divisibility: fold an offending row into the pivot row and retry.
            let offending = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot))
            });
            match offending {
                Some(i) => {
                    let minus_one = -I::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let diagonal = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    Smith {
        left: u,
        diag_matrix: d,
        right: v,
        diagonal,
    }
}

/// Finds some integer `x` with `a · x = b`, or `None` when no integer
/// solution exists. Any returned witness has been checked by multiplication.
pub fn solve_integer<I: EuclideanRing>(a: &Matrix<I>, b: &[I]) -> Option<Vec<I>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must match rows");
    let snf = smith_normal_form(a);
    solve_with_smith(a, &snf, b)
}

/// As [`solve_integer`], reusing a precomputed decomposition of `a`.
pub fn solve_with_smith<I: EuclideanRing>(a: &Matrix<I>, snf: &Smith<I>, b: &[I]) -> Option<Vec<I>> {
    // D y = U b, x = V y
    let ub = snf.left.mul_vec(b);
    let mut y = vec![I::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        let d = snf.factor(i);
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    let x = snf.right.mul_vec(&y);
    if a.mul_vec(&x) != b {
        return None;
    }
    Some(x)
}

/// Z-basis of the integer kernel `{x : a · x = 0}`, as columns of the right
/// transform beyond the rank.
pub fn integer_kernel<I: EuclideanRing>(a: &Matrix<I>) -> Vec<Vec<I>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols()).map(|j| snf.right.column(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};

    fn m(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Matrix::from_rows(cols, &rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_decomposition(a: &Matrix<BigInt>) -> Smith<BigInt> {
        let s = smith_normal_form(a);
        assert_eq!(s.left.mul(a).mul(&s.right), s.diag_matrix);
        assert_eq!(s.left.determinant().abs(), BigInt::one());
        assert_eq!(s.right.determinant().abs(), BigInt::one());
        s
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries = 2, |det| = 8
        let s = check_decomposition(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.diagonal, big(&[2, 4]));
    }

    #[test]
    fn identity_and_zero() {
        let s = check_decomposition(&Matrix::identity(3));
        assert_eq!(s.diagonal, big(&[1, 1, 1]));
        let s = check_decomposition(&Matrix::zeros(2, 3));
        assert_eq!(s.diagonal, big(&[0, 0]));
        let s = check_decomposition(&Matrix::zeros(0, 3));
        assert!(s.diagonal.is_empty());
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is not in normal form; invariant factors are (1, 6)
        let s = check_decomposition(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, big(&[1, 6]));
    }

    #[test]
    fn generic_over_machine_integers() {
        let a = Matrix::from_rows(3, &[vec![4i64, 6, 8], vec![6, 9, 12]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.left.mul(&a).mul(&s.right), s.diag_matrix);
        assert_eq!(s.diagonal, vec![1, 0]);
    }

    #[test]
    fn integer_solving() {
        let a = m(&[&[2, -2]]);
        let x = solve_integer(&a, &big(&[-2])).unwrap();
        assert_eq!(a.mul_vec(&x), big(&[-2]));
        assert_eq!(solve_integer(&m(&[&[2, -2]]), &big(&[1])), None);
        assert_eq!(solve_integer(&m(&[&[0]]), &big(&[1])), None);
        assert_eq!(solve_integer(&Matrix::identity(2), &big(&[3, 5])), Some(big(&[3, 5])));
    }

    #[test]
    fn kernel_basis() {
        let a = m(&[&[1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }
}
