//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn from_ints(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = b[0].len();
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b.iter())
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, brow)| x * &brow[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

/// `u^T G v`.
pub fn bilinear(g: &Matrix, u: &[Rational], v: &[Rational]) -> Rational {
    dot(u, &mat_vec(g, v))
}

pub fn determinant(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        inv.swap(piv, col);
        let p = Rational::one() / &m[col][col];
        for c in 0..n {
            m[col][c] *= &p;
            inv[col][c] *= &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..n {
                let d1 = &f * &m[col][c];
                m[r][c] -= d1;
                let d2 = &f * &inv[col][c];
                inv[r][c] -= d2;
            }
        }
    }
    Some(inv)
}

/// Solves `a x = b` when the system has a unique solution.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    Some(mat_vec(&inverse(a)?, b))
}

/// Basis of the right null space of `a` (rows of length `n`).
pub fn null_space(a: &Matrix, n: usize) -> Vec<Vec<Rational>> {
    let mut m: Matrix = a.clone();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let p = Rational::one() / &m[r][c];
        for cc in 0..n {
            m[r][cc] *= &p;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for cc in 0..n {
                    let d = &f * &m[r][cc];
                    m[i][cc] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Sylvester inertia `(positive, negative, zero)` of a symmetric matrix,
/// by congruence diagonalisation.
pub fn inertia(a: &Matrix) -> (usize, usize, usize) {
    let n = a.len();
    let mut m = a.clone();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !m[i][i].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                // All diagonals vanish; create one from an off-diagonal entry.
                let pair = active.iter().find_map(|&i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !m[i][j].is_zero())
                        .map(|j| (i, j))
                });
                match pair {
                    None => {
                        zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        // row_i += row_j, col_i += col_j
                        for k in 0..n {
                            let v = m[j][k].clone();
                            m[i][k] += v;
                        }
                        for k in 0..n {
                            let v = m[k][j].clone();
                            m[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let p = m[piv][piv].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != piv);
        for &i in &active {
            if m[i][piv].is_zero() {
                continue;
            }
            let f = &m[i][piv] / &p;
            for k in 0..n {
                let d = &f * &m[piv][k];
                m[i][k] -= d;
            }
            for k in 0..n {
                let d = &f * &m[k][piv];
                m[k][i] -= d;
            }
        }
    }
    (pos, neg, zero)
}
