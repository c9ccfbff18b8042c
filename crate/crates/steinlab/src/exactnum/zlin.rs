//! Minimal exact integer linear algebra: column Hermite reduction with a
//! recorded unimodular transform, which is all that integral solving and
//! kernel computation need. Matrices here are tiny (a handful of rows and
//! columns), so clarity beats sparsity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-major rectangular matrix.
pub type Mat = Vec<Vec<BigInt>>;

fn dims(a: &Mat) -> (usize, usize) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    debug_assert!(a.iter().all(|r| r.len() == n), "ragged matrix");
    (m, n)
}

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect())
        .collect()
}

fn swap_cols(w: &mut Mat, u: &mut Mat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in w.iter_mut() {
        r.swap(i, j);
    }
    for r in u.iter_mut() {
        r.swap(i, j);
    }
}

/// col j -= q * col c, applied to both matrices.
fn sub_col(w: &mut Mat, u: &mut Mat, j: usize, c: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in w.iter_mut() {
        let t = &r[c] * q;
        r[j] -= t;
    }
    for r in u.iter_mut() {
        let t = &r[c] * q;
        r[j] -= t;
    }
}

fn neg_col(w: &mut Mat, u: &mut Mat, j: usize) {
    for r in w.iter_mut() {
        r[j] = -r[j].clone();
    }
    for r in u.iter_mut() {
        r[j] = -r[j].clone();
    }
}

/// Column echelon form over Z: returns (W, U, pivots) with W = A·U, U
/// unimodular, pivot columns 0..rank with positive pivot entries, and every
/// column beyond the rank identically zero.
fn column_echelon(a: &Mat) -> (Mat, Mat, Vec<(usize, usize)>) {
    let (m, n) = dims(a);
    let mut w = a.clone();
    let mut u = identity(n);
    let mut col = 0usize;
    let mut pivots = Vec::new();
    for row in 0..m {
        if col == n {
            break;
        }
        // Gcd-reduce w[row][col..] to a single nonzero entry at `col`.
        loop {
            let mut best: Option<usize> = None;
            for j in col..n {
                if !w[row][j].is_zero()
                    && best.is_none_or(|b| w[row][j].abs() < w[row][b].abs())
                {
                    best = Some(j);
                }
            }
            let Some(j) = best else { break };
            swap_cols(&mut w, &mut u, col, j);
            let mut done = true;
            for j2 in col + 1..n {
                if w[row][j2].is_zero() {
                    continue;
                }
                let q = &w[row][j2] / &w[row][col];
                sub_col(&mut w, &mut u, j2, col, &q);
                if !w[row][j2].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !w[row][col].is_zero() {
            if w[row][col].is_negative() {
                neg_col(&mut w, &mut u, col);
            }
            pivots.push((row, col));
            col += 1;
        }
    }
    (w, u, pivots)
}

pub fn matvec(a: &Mat, x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum())
        .collect()
}

/// One integral solution x of A·x = b, or `None` when none exists.
pub fn solve(a: &Mat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (m, n) = dims(a);
    assert_eq!(b.len(), m, "dimension mismatch");
    let (w, u, pivots) = column_echelon(a);
    // Forward substitution against the echelon staircase: a pivot row fixes
    // its pivot coordinate (divisibility required), every other row must have
    // zero residual.
    let mut y = vec![BigInt::zero(); n];
    let mut next_pivot = pivots.iter().peekable();
    for row in 0..m {
        let mut rhs = b[row].clone();
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !w[row][j].is_zero() {
                rhs -= &w[row][j] * yj;
            }
        }
        match next_pivot.peek() {
            Some(&&(prow, pcol)) if prow == row => {
                next_pivot.next();
                let (q, r) = rhs.div_rem(&w[row][pcol]);
                if !r.is_zero() {
                    return None;
                }
                y[pcol] = q;
            }
            _ => {
                if !rhs.is_zero() {
                    return None;
                }
            }
        }
    }
    let x: Vec<BigInt> = (0..n)
        .map(|i| (0..n).map(|j| &u[i][j] * &y[j]).sum())
        .collect();
    debug_assert_eq!(matvec(a, &x), b);
    Some(x)
}

/// A basis of the integer kernel {x ∈ Zⁿ : A·x = 0}: the transform columns
/// that map onto the zero columns of the echelon form.
pub fn kernel(a: &Mat) -> Vec<Vec<BigInt>> {
    let (_, n) = dims(a);
    let (_, u, pivots) = column_echelon(a);
    let rank = pivots.len();
    (rank..n)
        .map(|j| (0..n).map(|i| u[i][j].clone()).collect::<Vec<_>>())
        .inspect(|v| debug_assert!(matvec(a, v).iter().all(Zero::is_zero)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Mat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn vec_i(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn solve_solvable_system() {
        // x + 2y = 5, 3x + 4y = 11  →  (1, 2)
        let a = mat(&[&[1, 2], &[3, 4]]);
        let x = solve(&a, &vec_i(&[5, 11])).unwrap();
        assert_eq!(matvec(&a, &x), vec_i(&[5, 11]));
    }

    #[test]
    fn solve_detects_nonintegral() {
        // 2x = 1 has a rational but no integral solution.
        assert_eq!(solve(&mat(&[&[2]]), &vec_i(&[1])), None);
        // 2x + 2y = 3 likewise.
        assert_eq!(solve(&mat(&[&[2, 2]]), &vec_i(&[3])), None);
    }

    #[test]
    fn solve_detects_inconsistent() {
        // x + y = 1 and x + y = 2.
        let a = mat(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&a, &vec_i(&[1, 2])), None);
    }

    #[test]
    fn solve_underdetermined() {
        let a = mat(&[&[2, 3]]);
        let x = solve(&a, &vec_i(&[1])).unwrap();
        assert_eq!(matvec(&a, &x), vec_i(&[1]));
    }

    #[test]
    fn kernel_of_zero_matrix_is_standard_basis() {
        let a = mat(&[&[0, 0, 0, 0]]);
        let k = kernel(&a);
        assert_eq!(k.len(), 4);
        assert_eq!(k[0], vec_i(&[1, 0, 0, 0]));
        assert_eq!(k[3], vec_i(&[0, 0, 0, 1]));
    }

    #[test]
    fn kernel_members_annihilate() {
        let a = mat(&[&[1, 2, 3], &[4, 5, 6]]);
        let k = kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(matvec(&a, &k[0]).iter().all(|x| x.is_zero()));
        // (1, -2, 1) spans this kernel; accept either sign.
        let v: Vec<i64> = k[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(v == [1, -2, 1] || v == [-1, 2, -1]);
    }

    #[test]
    fn kernel_of_full_rank_is_empty() {
        let a = mat(&[&[1, 0], &[0, 1]]);
        assert!(kernel(&a).is_empty());
    }
}
