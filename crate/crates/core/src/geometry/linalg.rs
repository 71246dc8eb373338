//! Dense exact linear algebra over the rationals.
//!
//! Matrices are row-major `Vec<Vec<Rational>>`. Every routine is plain
//! Gaussian elimination; the sizes that occur here are tiny.

use num_traits::{One, Zero};

use super::point::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form together with the pivot column of each nonzero row.
pub fn rref(m: &[Vec<Rational>]) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    rref(m).1.len()
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            let (top, bottom) = a.split_at_mut(i);
            for (x, p) in bottom[0][c..n].iter_mut().zip(&top[c][c..n]) {
                *x -= &f * p;
            }
        }
    }
    det
}

/// Basis of the right null space `{x : m x = 0}`; `cols` is needed when `m` has no rows.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Matrix {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Matrix> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let augmented: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&augmented);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Unique solution of the square system `m x = b`, if any.
pub fn solve(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let inv = inverse(m)?;
    Some(mat_vec(&inv, b))
}

pub fn mat_vec(m: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn transpose(m: &[Vec<Rational>], cols: usize) -> Matrix {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::{int, rat};

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        assert_eq!(determinant(&mat(&[&[2, -3], &[-1, 1]])), int(-1));
        assert_eq!(determinant(&mat(&[&[1, 0, 0], &[1, 0, -1], &[-1, 1, 2]])), int(1));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), int(0));
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])), int(-1));
    }

    #[test]
    fn inverse_round_trips() {
        let m = mat(&[&[2, -3], &[-1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, mat(&[&[-1, -3], &[-1, -2]]));
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = vec![vec![int(1), int(1), int(1)], vec![int(0), rat(1, 2), int(1)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&m, &ns[0]).iter().all(Zero::is_zero));
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn rank_counts_independent_rows() {
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&mat(&[&[1, 0, 0], &[0, 1, 0]])), 2);
    }
}
