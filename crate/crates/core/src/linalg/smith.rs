//! Smith normal form over the integers.
//!
//! Reduction always pivots on a nonzero entry of minimal absolute value,
//! scanning row-major, so results (including the column transform) are
//! reproducible.

use super::matrix::Matrix;
use super::scalar::IntScalar;

/// Rank and invariant factors of an integer matrix.
///
/// `invariant_factors` has exactly `rank` entries, all positive, forming a
/// divisibility chain; unit factors are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithData<T> {
    pub source: Matrix<T>,
    pub rank: usize,
    pub invariant_factors: Vec<T>,
}

/// `U * M * V = D` with `D` diagonal; only `V` is kept since cokernel
/// coordinates need nothing else.
#[derive(Clone, Debug)]
pub(crate) struct SmithDecomposition<T> {
    pub diagonal: Vec<T>,
    /// Unimodular `cols x cols` column transform.
    pub col_transform: Matrix<T>,
}

pub fn smith_invariants<T: IntScalar>(m: &Matrix<T>) -> SmithData<T> {
    let dec = decompose(m);
    SmithData {
        source: m.clone(),
        rank: dec.diagonal.len(),
        invariant_factors: dec.diagonal,
    }
}

/// Position of a nonzero entry of minimal absolute value among `cells`.
fn min_abs_position<T: IntScalar>(
    a: &Matrix<T>,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), T)> = None;
    for (i, j) in cells {
        let v = &a[(i, j)];
        if v.is_zero() {
            continue;
        }
        let abs = v.abs();
        if best.as_ref().is_none_or(|(_, b)| abs < *b) {
            best = Some(((i, j), abs));
        }
    }
    best.map(|(p, _)| p)
}

fn swap_cols<T: IntScalar>(a: &mut Matrix<T>, v: &mut Matrix<T>, x: usize, y: usize) {
    a.swap_cols(x, y);
    v.swap_cols(x, y);
}

pub(crate) fn decompose<T: IntScalar>(m: &Matrix<T>) -> SmithDecomposition<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut v = Matrix::<T>::identity(cols);
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        let cells = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = min_abs_position(&a, cells) else {
            break;
        };
        a.swap_rows(t, pi);
        swap_cols(&mut a, &mut v, t, pj);

        loop {
            let p = a[(t, t)].clone();
            for i in t + 1..rows {
                let q = a[(i, t)].clone() / p.clone();
                if !q.is_zero() {
                    a.add_row_multiple(i, t, &-q);
                }
            }
            for j in t + 1..cols {
                let q = a[(t, j)].clone() / p.clone();
                if !q.is_zero() {
                    let neg = -q;
                    a.add_col_multiple(j, t, &neg);
                    v.add_col_multiple(j, t, &neg);
                }
            }

            // Leftover remainders are strictly smaller than the pivot.
            let line = (t + 1..rows)
                .map(|i| (i, t))
                .chain((t + 1..cols).map(|j| (t, j)));
            if let Some((i, j)) = min_abs_position(&a, line) {
                if j == t {
                    a.swap_rows(t, i);
                } else {
                    swap_cols(&mut a, &mut v, t, j);
                }
                continue;
            }

            let bad_row = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p))
            });
            match bad_row {
                Some(i) => a.add_row_multiple(t, i, &T::one()),
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
        }
        diagonal.push(a[(t, t)].clone());
    }

    SmithDecomposition {
        diagonal,
        col_transform: v,
    }
}

pub fn rank<T: IntScalar>(m: &Matrix<T>) -> usize {
    decompose(m).diagonal.len()
}
