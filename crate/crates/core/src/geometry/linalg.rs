//! Exact Gaussian elimination helpers.

use super::rational::{QMatrix, QVector, Rational};

/// Reduced row echelon form of the given rows; returns the nonzero rows and
/// the pivot column of each.
pub fn rref(rows: &[QVector], cols: usize) -> (Vec<QVector>, Vec<usize>) {
    let mut m: Vec<QVector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r] = m[r].scale(&inv);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let sub = m[r].scale(&factor);
                m[i] = &m[i] - &sub;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVector], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of `{x : ⟨row, x⟩ = 0 for all rows}`, one vector per free column,
/// in increasing order of the free column.
pub fn kernel(rows: &[QVector], cols: usize) -> Vec<QVector> {
    let (red, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = QVector::zeros(cols);
            v[f] = Rational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.nrows();
    if m.ncols() != n {
        return None;
    }
    let augmented: Vec<QVector> = m
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut e = r.clone().into_entries();
            e.extend(QVector::unit(n, i).into_entries());
            QVector::new(e)
        })
        .collect();
    let (red, pivots) = rref(&augmented, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let rows = red
        .into_iter()
        .map(|r| QVector::new(r.into_entries().split_off(n)))
        .collect();
    Some(QMatrix::from_rows(n, rows))
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(rows: &[QVector], cols: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<QVector> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        basis.push(r.clone());
        if rank(&basis, cols) == basis.len() {
            chosen.push(i);
            if chosen.len() == cols {
                break;
            }
        } else {
            basis.pop();
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::qv;

    #[test]
    fn rank_and_kernel() {
        let rows = vec![qv(&[1, 1, 0]), qv(&[2, 2, 0]), qv(&[0, 1, 1])];
        assert_eq!(rank(&rows, 3), 2);
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 1);
        for r in &rows {
            assert!(r.dot(&k[0]).is_zero());
        }
    }

    #[test]
    fn inverse_of_four_ray_block() {
        // rows 2..4 of the four-ray functional matrix
        let m = QMatrix::from_rows(3, vec![qv(&[1, -1, 1]), qv(&[-1, 1, 1]), qv(&[-1, -1, 1])]);
        let inv = inverse(&m).expect("invertible");
        for i in 0..3 {
            let col: QVector = inv.rows().iter().map(|r| r[i].clone()).collect();
            assert_eq!(m.mul_vec(&col), QVector::unit(3, i));
        }
        let singular = QMatrix::from_rows(2, vec![qv(&[1, 2]), qv(&[2, 4])]);
        assert!(inverse(&singular).is_none());
    }

    #[test]
    fn empty_rows_kernel_is_whole_space() {
        let k = kernel(&[], 2);
        assert_eq!(k, vec![qv(&[1, 0]), qv(&[0, 1])]);
    }
}
