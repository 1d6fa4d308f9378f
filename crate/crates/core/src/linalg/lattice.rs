//! Determinantal divisors, the block matrices `A(k, l)` / `B(k, l)` and
//! saturation of row lattices.

use super::group::Cokernel;
use super::matrix::Matrix;
use super::scalar::IntScalar;
use super::smith::decompose;
use crate::error::{Error, Result};

/// gcd of the absolute values of all `k x k` minors.
///
/// Brute force over every pair of index subsets: the cost grows like
/// `C(rows, k) * C(cols, k)` determinants, so this is meant for small
/// matrices and for cross-checking Smith factors.
pub fn determinantal_divisor<T: IntScalar>(m: &Matrix<T>, k: usize) -> Result<T> {
    let bound = m.rows().min(m.cols());
    if k == 0 || k > bound {
        return Err(Error::MinorSizeOutOfRange { k, bound });
    }
    let row_sets = subsets(m.rows(), k);
    let col_sets = subsets(m.cols(), k);
    let mut g = T::zero();
    for rows in &row_sets {
        for cols in &col_sets {
            let det = m.select(rows, cols).determinant();
            g = g.gcd(&det);
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// `(k + n) x (k n)` matrix: row `t < k` carries `l` on column block `t`,
/// the last `n` rows are `k` side-by-side copies of the `n x n` identity.
pub fn matrix_a<T: IntScalar>(k: usize, l: &[T]) -> Matrix<T> {
    assert!(k >= 1 && !l.is_empty(), "matrix_a needs k >= 1 and a nonempty exponent vector");
    let n = l.len();
    let mut m = Matrix::zeros(k + n, k * n);
    for t in 0..k {
        for (j, x) in l.iter().enumerate() {
            m[(t, t * n + j)] = x.clone();
        }
    }
    for t in 0..k {
        for j in 0..n {
            m[(k + j, t * n + j)] = T::one();
        }
    }
    m
}

/// `(k + 1) x (k n)` matrix: the first `k` rows of [`matrix_a`] followed by
/// one row of `k` copies of `l / frak_l`.
pub fn matrix_b<T: IntScalar>(k: usize, l: &[T], frak_l: &T) -> Result<Matrix<T>> {
    assert!(k >= 1 && !l.is_empty(), "matrix_b needs k >= 1 and a nonempty exponent vector");
    if frak_l.is_zero() || l.iter().any(|x| !x.is_multiple_of(frak_l)) {
        return Err(Error::NotADivisor {
            divisor: frak_l.to_string(),
            of: format!("{l:?}"),
        });
    }
    let n = l.len();
    let mut m = Matrix::zeros(k + 1, k * n);
    for t in 0..k {
        for (j, x) in l.iter().enumerate() {
            m[(t, t * n + j)] = x.clone();
            m[(k, t * n + j)] = x.clone() / frak_l.clone();
        }
    }
    Ok(m)
}

/// Whether `rowlattice(sub)` is contained in `rowlattice(sup)` with
/// torsion-free quotient.
///
/// Each generator of the sub-lattice is written in a basis of the
/// super-lattice; the quotient is torsion-free iff every nonzero Smith
/// factor of that coordinate matrix is 1. Non-containment gives `false`.
pub fn is_saturated_sublattice<T: IntScalar>(sub: &Matrix<T>, sup: &Matrix<T>) -> bool {
    assert_eq!(sub.cols(), sup.cols(), "lattices live in different ambient spaces");
    let presentation = Cokernel::new(sup);
    let diagonal = presentation.diagonal().to_vec();
    let k = diagonal.len();
    let mut expressed = Matrix::zeros(0, k);
    for row in sub.row_vectors() {
        let w = presentation.coordinates(row);
        if w[k..].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let mut coords = Vec::with_capacity(k);
        for (x, d) in w.iter().zip(&diagonal) {
            if !x.is_multiple_of(d) {
                return false;
            }
            coords.push(x.clone() / d.clone());
        }
        expressed.push_row(coords);
    }
    decompose(&expressed).diagonal.iter().all(|d| d.is_one())
}

/// Whether `rowlattice(sub)` is contained in `rowlattice(sup)`.
pub fn is_sublattice<T: IntScalar>(sub: &Matrix<T>, sup: &Matrix<T>) -> bool {
    assert_eq!(sub.cols(), sup.cols(), "lattices live in different ambient spaces");
    let presentation = Cokernel::new(sup);
    sub.row_vectors().all(|row| presentation.contains(row))
}
