//! Exact row reduction over a field.

use crate::scalar::{Field, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form of `rows` together with the pivot columns.
pub fn rref(mut rows: Matrix, ncols: usize) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..ncols {
                let delta = &factor * &rows[r][j];
                rows[i][j] = &rows[i][j] - &delta;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Matrix, ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{ v : Σ v_j columns[j] = 0 }`, with `columns` of length `nrows`.
pub fn kernel(field: Field, columns: &[Vec<Scalar>], nrows: usize) -> Matrix {
    let ncols = columns.len();
    let rows: Matrix = (0..nrows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let (red, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); ncols];
            v[fc] = field.one();
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = -&row[fc];
            }
            v
        })
        .collect()
}

/// Coordinates of `v` in the span of the (linearly independent) `basis`, if any.
pub fn solve_in_span(field: Field, basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = basis.len();
    let n = v.len();
    // augmented system: rows indexed by coordinate, columns basis + rhs
    let rows: Matrix = (0..n)
        .map(|i| {
            let mut row: Vec<Scalar> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let (red, pivots) = rref(rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut out = vec![field.zero(); k];
    for (row, &pc) in red.iter().zip(&pivots) {
        out[pc] = row[k].clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: Field, rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn kernel_of_projection() {
        let q = Field::Rational;
        // columns (1,0), (0,0), (2,0): kernel spanned by e2 and (-2,0,1)
        let cols = mat(q, &[&[1, 0], &[0, 0], &[2, 0]]);
        let k = kernel(q, &cols, 2);
        assert_eq!(k, mat(q, &[&[0, 1, 0], &[-2, 0, 1]]));
    }

    #[test]
    fn rank_over_prime_field() {
        let f3 = Field::Prime(3);
        // second row is twice the first mod 3
        let rows = mat(f3, &[&[1, 2], &[2, 1]]);
        assert_eq!(rank(rows, 2), 1);
        assert_eq!(rank(mat(Field::Rational, &[&[1, 2], &[2, 1]]), 2), 2);
    }

    #[test]
    fn span_membership() {
        let q = Field::Rational;
        let basis = mat(q, &[&[1, 1, 0], &[0, 0, 1]]);
        let v = mat(q, &[&[2, 2, 3]]).remove(0);
        assert_eq!(solve_in_span(q, &basis, &v), Some(mat(q, &[&[2, 3]]).remove(0)));
        let w = mat(q, &[&[1, 0, 0]]).remove(0);
        assert_eq!(solve_in_span(q, &basis, &w), None);
    }
}
