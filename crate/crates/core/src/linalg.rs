//! Dense exact linear algebra over the rationals: row reduction, rank,
//! kernels, inverses, and subspace sums/intersections.
//!
//! Subspaces are represented by spanning row vectors.

use num_traits::{One, Zero};

use crate::ratfun::Q;
use crate::{Error, Result};

pub type Row = Vec<Q>;

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Row]) -> (Vec<Row>, Vec<usize>) {
    let mut m: Vec<Row> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Row]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : A x = 0}` for `A` with `ncols` columns.
pub fn kernel(rows: &[Row], ncols: usize) -> Vec<Row> {
    if rows.is_empty() {
        return identity(ncols);
    }
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); ncols];
            x[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(rows: &[Row], ncols: usize) -> Vec<Row> {
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Row], b: &[Row]) -> Vec<Row> {
    let ncols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![Q::zero(); ncols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn inverse(m: &[Row]) -> Result<Vec<Row>> {
    let n = m.len();
    let aug: Vec<Row> = m
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular(format!("{n}x{n} matrix has rank < {n}")));
    }
    Ok(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant(m: &[Row]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Basis of the span of `rows` (reduced echelon form).
pub fn span_basis(rows: &[Row]) -> Vec<Row> {
    rref(rows).0
}

pub fn same_span(a: &[Row], b: &[Row]) -> bool {
    let ra = rank(a);
    ra == rank(b) && ra == rank(&[a, b].concat())
}

/// `span(a) ⊆ span(b)`.
pub fn contained_in(a: &[Row], b: &[Row]) -> bool {
    rank(b) == rank(&[a, b].concat())
}

pub fn sum_dim(a: &[Row], b: &[Row]) -> usize {
    rank(&[a, b].concat())
}

/// Basis of `span(a) ∩ span(b)` inside an ambient space of dimension `dim`.
pub fn intersection(a: &[Row], b: &[Row], dim: usize) -> Vec<Row> {
    let a = span_basis(a);
    let b = span_basis(b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // solve Σ x_i a_i - Σ y_j b_j = 0
    let mut cols: Vec<Row> = a.clone();
    cols.extend(b.iter().map(|r| r.iter().map(|x| -x.clone()).collect()));
    let system = transpose(&cols, dim);
    let ker = kernel(&system, cols.len());
    let vecs: Vec<Row> = ker
        .iter()
        .map(|k| {
            let mut out = vec![Q::zero(); dim];
            for (coef, row) in k.iter().zip(&a) {
                if coef.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(row) {
                    *o += coef * x;
                }
            }
            out
        })
        .collect();
    span_basis(&vecs)
}

/// Expresses `x` in terms of the (independent) rows of `basis`.
pub fn solve_in_span(basis: &[Row], x: &Row) -> Option<Row> {
    let n = basis.len();
    let dim = x.len();
    let mut system = transpose(basis, dim);
    for (row, xi) in system.iter_mut().zip(x) {
        row.push(xi.clone());
    }
    let (r, pivots) = rref(&system);
    if pivots.last().is_some_and(|&p| p == n) {
        return None;
    }
    let mut sol = vec![Q::zero(); n];
    for (row, &p) in r.iter().zip(&pivots) {
        sol[p] = row[n].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::{q, q_frac};

    fn m(rows: &[&[i64]]) -> Vec<Row> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        let prod = mat_mul(&a, &transpose(&k, 3));
        assert!(prod.iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[0, 4, 0], &[4, 0, 0], &[0, 0, 8]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][1], q_frac(1, 4));
        assert_eq!(inv[2][2], q_frac(1, 8));
        assert_eq!(determinant(&a), q(-128));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn intersections() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = m(&[&[0, 1, 0], &[0, 0, 1]]);
        let i = intersection(&a, &b, 3);
        assert_eq!(i, m(&[&[0, 1, 0]]));
        assert!(contained_in(&i, &a));
        assert!(!same_span(&a, &b));
        assert_eq!(sum_dim(&a, &b), 3);
        assert_eq!(
            solve_in_span(&a, &vec![q(2), q(3), q(0)]),
            Some(vec![q(2), q(3)])
        );
        assert_eq!(solve_in_span(&a, &vec![q(0), q(0), q(1)]), None);
    }
}
