//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::rational::{RationalVector, Q};

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    if !rows[r][j].is_zero() {
                        let t = &f * &rows[r][j];
                        rows[i][j] -= t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(vectors: &[RationalVector]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let mut rows: Vec<Vec<Q>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    rref(&mut rows, first.dim()).len()
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(vectors: &[RationalVector]) -> Vec<usize> {
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut chosen = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(v.coords().to_vec());
        let n = v.dim();
        if rref(&mut trial, n).len() > basis.len() {
            basis.push(v.coords().to_vec());
            chosen.push(i);
        }
    }
    chosen
}

/// Basis of `{x : r . x = 0 for every r in rows}` inside `Q^dim`.
pub fn nullspace(rows: &[RationalVector], dim: usize) -> Vec<RationalVector> {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let pivots = rref(&mut m, dim);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); dim];
            x[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[row][f].clone();
            }
            RationalVector::new(x)
        })
        .collect()
}

/// Orthogonal projection of `v` onto `span(basis)`, expressed in ambient coordinates.
pub fn project(v: &RationalVector, basis: &[RationalVector]) -> RationalVector {
    if basis.is_empty() {
        return RationalVector::zeros(v.dim());
    }
    // Solve the normal equations (B^T B) c = B^T v.
    let k = basis.len();
    let mut aug: Vec<Vec<Q>> = (0..k)
        .map(|i| {
            let mut row: Vec<Q> = (0..k).map(|j| basis[i].dot(&basis[j])).collect();
            row.push(basis[i].dot(v));
            row
        })
        .collect();
    rref(&mut aug, k);
    let mut out = RationalVector::zeros(v.dim());
    for (i, b) in basis.iter().enumerate() {
        out = out.add_scaled(&aug[i][k], b);
    }
    out
}
