//! Row reduction over `F_p` on dense rectangular row lists.
//!
//! Elimination is leftmost-pivot-first and the first nonzero row below the
//! current position is used as pivot, so the reduced form is canonical.

use crate::field::FieldSpec;

/// Reduces `rows` in place to reduced row-echelon form and returns the pivot
/// columns. Zero rows are moved to the bottom.
pub fn rref(field: FieldSpec, rows: &mut [Vec<u8>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let t = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = field.sub(*x, field.mul(t, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: FieldSpec, rows: &[Vec<u8>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Canonical basis (nonzero rows of the reduced form) of the span of `vectors`.
pub fn canonical_span(field: FieldSpec, vectors: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut m = vectors.to_vec();
    let k = rref(field, &mut m).len();
    m.truncate(k);
    m
}

/// Basis of `{x : A x = 0}` where `A` has the given rows and `ncols` columns.
/// One vector per free column, in increasing column order, with a 1 there.
pub fn kernel(field: FieldSpec, rows: &[Vec<u8>], ncols: usize) -> Vec<Vec<u8>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u8; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m[r][free]);
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the span of the canonical (reduced) basis `basis`.
pub fn in_canonical_span(field: FieldSpec, basis: &[Vec<u8>], v: &[u8]) -> bool {
    let mut w = v.to_vec();
    for b in basis {
        let pc = b.iter().position(|&x| x != 0).expect("canonical rows are nonzero");
        let t = w[pc];
        if t != 0 {
            for (x, &y) in w.iter_mut().zip(b) {
                *x = field.sub(*x, field.mul(t, y));
            }
        }
    }
    w.iter().all(|&x| x == 0)
}

/// Coordinates of `v` with respect to an arbitrary list of independent
/// vectors, or `None` when `v` is outside their span.
pub fn coordinates(field: FieldSpec, vectors: &[Vec<u8>], v: &[u8]) -> Option<Vec<u8>> {
    let k = vectors.len();
    let dim = v.len();
    // Augmented system: columns are the vectors, last column is v.
    let mut rows: Vec<Vec<u8>> = (0..dim)
        .map(|i| {
            let mut row: Vec<u8> = vectors.iter().map(|b| b[i]).collect();
            row.push(v[i]);
            row
        })
        .collect();
    let pivots = rref(field, &mut rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![0u8; k];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[r][k];
    }
    Some(x)
}
