//! Exact linear algebra over Q and Z on dense row-major matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn qmatrix(rows: &[&[i64]]) -> QMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| q(v)).collect())
        .collect()
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(rows);
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right nullspace {x : m x = 0}, one vector per free column,
/// each with a 1 at its free column.
pub fn nullspace(m: &QMatrix, cols: usize) -> Vec<Vec<BigRational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        out.push(v);
    }
    out
}

/// Solves m x = b with x supported on the pivot columns of m (the earliest
/// independent columns). Returns None when the system is inconsistent.
pub fn solve_on_pivots(m: &QMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Indices of the earliest linearly independent columns.
pub fn independent_columns(m: &QMatrix) -> Vec<usize> {
    let mut a = m.clone();
    rref(&mut a)
}

pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn matmul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigRational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`:
/// echelon rows with positive pivots, entries above each pivot reduced.
pub fn hermite_basis(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for v in vectors {
        hermite_insert(&mut basis, v.clone());
    }
    basis
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// Adds `v` to a Hermite basis kept sorted by pivot column.
pub fn hermite_insert(basis: &mut Vec<Vec<BigInt>>, mut v: Vec<BigInt>) {
    let mut i = 0;
    while let Some(lv) = leading(&v) {
        while i < basis.len() && leading(&basis[i]).unwrap() < lv {
            i += 1;
        }
        if i < basis.len() && leading(&basis[i]).unwrap() == lv {
            // Euclid on the pivot entries of basis[i] and v.
            let mut a = std::mem::take(&mut basis[i]);
            while !v[lv].is_zero() {
                let qt = a[lv].div_floor(&v[lv]);
                for (x, y) in a.iter_mut().zip(&v) {
                    *x -= &qt * y;
                }
                std::mem::swap(&mut a, &mut v);
            }
            if a[lv].is_negative() {
                a.iter_mut().for_each(|x| *x = -x.clone());
            }
            basis[i] = a;
            i += 1;
        } else {
            if v[lv].is_negative() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            basis.insert(i, v);
            break;
        }
    }
    reduce_above(basis);
}

fn reduce_above(basis: &mut [Vec<BigInt>]) {
    for i in 0..basis.len() {
        let p = leading(&basis[i]).unwrap();
        let piv = basis[i][p].clone();
        for k in 0..i {
            let qt = basis[k][p].div_floor(&piv);
            if !qt.is_zero() {
                let row = basis[i].clone();
                for (x, y) in basis[k].iter_mut().zip(&row) {
                    *x -= &qt * y;
                }
            }
        }
    }
}

/// Membership of `v` in the lattice with the given Hermite basis.
pub fn lattice_contains(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut w = v.to_vec();
    for row in basis {
        let p = leading(row).unwrap();
        if w[p].is_zero() {
            continue;
        }
        let (qt, r) = w[p].div_rem(&row[p]);
        if !r.is_zero() {
            return false;
        }
        for (x, y) in w.iter_mut().zip(row) {
            *x -= &qt * y;
        }
    }
    w.iter().all(Zero::is_zero)
}

/// Coordinates of `v` in the Hermite basis, if `v` is in the lattice.
pub fn lattice_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut w = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let p = leading(row).unwrap();
        let (qt, r) = w[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in w.iter_mut().zip(row) {
            *x -= &qt * y;
        }
        coords.push(qt);
    }
    w.iter().all(Zero::is_zero).then_some(coords)
}

/// Nonzero invariant factors (Smith normal form diagonal) of an integer matrix.
pub fn invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let qt = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let s = &qt * &a[t][j];
                        a[i][j] -= s;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        changed = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let qt = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let s = &qt * &row[t];
                        row[j] -= s;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            // pivot must divide the remaining block
            let mut fix = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a[i][j].mod_floor(&a[t][t]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    for j in t..cols {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}
