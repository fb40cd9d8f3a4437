//! Exact linear algebra over Q and Z: Gaussian elimination, Hermite normal
//! form and lattice intersection. Matrices are row-major; lattice basis
//! vectors are rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type QMat = Vec<Vec<BigRational>>;

pub(crate) fn det(m: &QMat) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a = m.clone();
    let mut sign = BigRational::one();
    let mut acc = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            sign = -sign;
        }
        let pivot = a[col][col].clone();
        acc *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let t = &a[r][c] - &factor * &a[col][c];
                a[r][c] = t;
            }
        }
    }
    sign * acc
}

pub(crate) fn rank(m: &QMat) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a = m.clone();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][col].clone();
        for i in r + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let factor = &a[i][col] / &pivot;
            for c in col..cols {
                let t = &a[i][c] - &factor * &a[r][c];
                a[i][c] = t;
            }
        }
        r += 1;
    }
    r
}

pub(crate) fn invert(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut m: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { BigRational::one() } else { BigRational::zero() });
            }
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        let pivot = m[col][col].clone();
        for c in col..2 * n {
            let t = &m[col][c] / &pivot;
            m[col][c] = t;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..2 * n {
                    let t = &m[r][c] - &factor * &m[col][c];
                    m[r][c] = t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub(crate) fn transpose(m: &QMat) -> QMat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

pub(crate) fn mat_mul_vec(a: &QMat, x: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum())
        .collect()
}

/// Row-style Hermite normal form with unimodular row operations: pivots
/// positive, entries above each pivot reduced into [0, pivot), zero rows
/// dropped. Canonical for the row span, so equal lattices get equal bases.
pub(crate) fn hnf(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        // Clear the column below pivot_row with gcd combinations.
        loop {
            let nz: Vec<usize> =
                (pivot_row..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nz.is_empty() || nz.len() == 1 {
                break;
            }
            let (i, j) = (nz[0], nz[1]);
            let a = rows[i][col].clone();
            let b = rows[j][col].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (af, bf) = (&a / &g, &b / &g);
            for c in 0..cols {
                let ri = rows[i][c].clone();
                let rj = rows[j][c].clone();
                rows[i][c] = &x * &ri + &y * &rj;
                rows[j][c] = -&bf * ri + &af * rj;
            }
        }
        let nz: Vec<usize> =
            (pivot_row..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
        if let Some(&r) = nz.first() {
            rows.swap(pivot_row, r);
            if rows[pivot_row][col].is_negative() {
                for c in 0..cols {
                    rows[pivot_row][c] = -rows[pivot_row][c].clone();
                }
            }
            let pivot = rows[pivot_row][col].clone();
            for r in 0..pivot_row {
                let q = rows[r][col].div_floor(&pivot);
                if q.is_zero() {
                    continue;
                }
                for c in 0..cols {
                    let t = &rows[r][c] - &q * &rows[pivot_row][c];
                    rows[r][c] = t;
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Canonical basis of the lattice generated by rational rows: scale by the
/// common denominator, reduce to HNF, scale back. Zero rows are dropped.
pub(crate) fn rational_hnf(rows: &QMat) -> QMat {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut l = BigInt::one();
    for row in rows {
        for v in row {
            l = l.lcm(v.denom());
        }
    }
    let scaled: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let s = v * BigRational::from(l.clone());
                    debug_assert!(s.denom().is_one());
                    s.to_integer()
                })
                .collect()
        })
        .collect();
    let h = hnf(scaled);
    let lq = BigRational::from(l);
    h.into_iter()
        .map(|row| row.into_iter().map(|v| BigRational::from(v) / &lq).collect())
        .collect()
}

/// Intersection of two full-rank rational lattices given by square bases
/// (rows), via duality: (L1 cap L2)* = L1* + L2*.
pub(crate) fn lattice_intersect(b1: &QMat, b2: &QMat) -> QMat {
    let d1 = transpose(&invert(b1).expect("full-rank basis"));
    let d2 = transpose(&invert(b2).expect("full-rank basis"));
    let mut stacked = d1;
    stacked.extend(d2);
    let sum = rational_hnf(&stacked);
    let dual = transpose(&invert(&sum).expect("dual sum is full rank"));
    rational_hnf(&dual)
}
