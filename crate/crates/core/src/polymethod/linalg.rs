//! Dense Gaussian elimination over `F_q`.

use crate::gf::Field;

/// Reduced row echelon form in place. Pivots are taken in column order, each
/// on the first row holding a nonzero entry. Returns the pivot columns.
pub fn rref(field: &Field, rows: &mut [Vec<u32>], ncols: usize) -> Vec<usize> {
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
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A nonzero solution of `rows · x = 0`, or `None` if only the trivial one
/// exists. The first free column is set to 1 and every other free column to 0.
pub fn nullspace_vector(field: &Field, mut rows: Vec<Vec<u32>>, ncols: usize) -> Option<Vec<u32>> {
    let pivots = rref(field, &mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free = (0..ncols).find(|&c| !is_pivot[c])?;
    let mut x = vec![0; ncols];
    x[free] = 1;
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = field.neg(rows[r][free]);
    }
    Some(x)
}
