//! Exact dense linear algebra over any [`Field`], by Gauss-Jordan
//! elimination. Matrices are row-major `Vec<Vec<F>>`; sizes are small
//! (at most the session dimension).

use super::pair::Field;

pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { F::one() } else { F::zero() })
                .collect()
        })
        .collect()
}

pub fn is_square<F>(a: &Matrix<F>) -> bool {
    a.iter().all(|row| row.len() == a.len())
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, x: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(F::zero(), |acc, (r, v)| F::add(&acc, &F::mul(r, v)))
        })
        .collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(F::zero(), |acc, (r, brow)| {
                        F::add(&acc, &F::mul(r, &brow[j]))
                    })
                })
                .collect()
        })
        .collect()
}

/// Determinant by elimination; `a` must be square.
pub fn determinant<F: Field>(a: &Matrix<F>) -> F {
    let n = a.len();
    let mut m = a.clone();
    let mut det = F::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = F::sub(&F::zero(), &det);
        }
        det = F::mul(&det, &m[col][col]);
        let inv = m[col][col].inv().expect("pivot is nonzero");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = F::mul(&m[r][col], &inv);
            let pivot_row = m[col][col..].to_vec();
            sub_scaled(&mut m[r][col..], &pivot_row, &factor);
        }
    }
    det
}

fn scale_row<F: Field>(row: &mut [F], k: &F) {
    for x in row {
        *x = F::mul(x, k);
    }
}

/// `row -= k · pivot`, elementwise.
fn sub_scaled<F: Field>(row: &mut [F], pivot: &[F], k: &F) {
    for (x, p) in row.iter_mut().zip(pivot) {
        *x = F::sub(x, &F::mul(k, p));
    }
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.len();
    let mut aug: Matrix<F> = a
        .iter()
        .zip(identity::<F>(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(pivot, col);
        let inv = aug[col][col].inv()?;
        scale_row(&mut aug[col], &inv);
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            sub_scaled(row, &pivot_row, &factor);
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `a·x = b` for a possibly non-square system. Returns one solution
/// (free variables set to zero) when the system is consistent.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(rhs.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot) = (r..rows).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot, r);
        let inv = aug[r][col].inv()?;
        scale_row(&mut aug[r][col..], &inv);
        let pivot_row = aug[r][col..].to_vec();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            sub_scaled(&mut row[col..], &pivot_row, &factor);
        }
        pivots.push(col);
        r += 1;
    }
    // inconsistent: a zero row with nonzero right-hand side
    if aug[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = aug[i][cols].clone();
    }
    Some(x)
}
