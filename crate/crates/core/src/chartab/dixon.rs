//! Character values from simultaneous eigenvectors of the class-algebra
//! structure matrices over a prime field F_q, lifted to Q(ζ_e).

use std::sync::Arc;

use num_rational::BigRational;

use super::cyclo::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::permcore::PermGroup;
use crate::polyarith::Fp;
use crate::primes::is_prime;

/// Smallest prime q ≡ 1 (mod e) with q > 2√order.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut q = exponent + 1;
    loop {
        if (q as u128) * (q as u128) > 4 * order as u128 && is_prime(q) {
            return q;
        }
        q += exponent;
    }
}

/// Least generator of the multiplicative group of F_q.
pub fn primitive_root(q: u64) -> u64 {
    let f = Fp::new(q);
    let mut factors = Vec::new();
    let mut n = q - 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..q)
        .find(|&g| factors.iter().all(|&r| f.pow(g, (q - 1) / r) != 1))
        .unwrap_or(1)
}

/// Reduced row echelon form over F_q; returns pivot columns.
fn rref_mod(m: &mut Vec<Vec<u64>>, f: Fp) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]);
        for v in m[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let k = m[i][c];
                for j in 0..cols {
                    let t = f.mul(k, m[r][j]);
                    m[i][j] = f.sub(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

fn nullspace_mod(a: &[Vec<u64>], f: Fp) -> Vec<Vec<u64>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let pivots = rref_mod(&mut m, f);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.sub(0, m[row][free]);
        }
        out.push(v);
    }
    out
}

/// Characteristic polynomial det(xI − A), ascending, via Hessenberg form.
fn charpoly_mod(a: &[Vec<u64>], f: Fp) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for r in j + 2..n {
            let u = f.mul(h[r][j], inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = f.mul(u, h[j + 1][c]);
                h[r][c] = f.sub(h[r][c], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[r]);
                row[j + 1] = f.add(row[j + 1], t);
            }
        }
    }
    // p[m] = charpoly of the leading m×m block
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut next = vec![0u64; m + 2];
        for (i, &c) in p[m].iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(h[m][m], c));
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let k = f.mul(h[i][m], prod);
            if k == 0 {
                continue;
            }
            for (t, &c) in p[i].iter().enumerate() {
                next[t] = f.sub(next[t], f.mul(k, c));
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

fn eval_mod(p: &[u64], x: u64, f: Fp) -> u64 {
    p.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Irreducible characters of `g` in Q(ζ_e), e = exponent(g), unsorted and
/// unverified. `powers[j][l]` is the class of g_j^l for l < order(g_j).
pub(crate) fn dixon_characters(
    g: &PermGroup,
    powers: &[Vec<usize>],
    field: &Arc<CyclotomicField>,
) -> Result<Vec<Vec<CyclotomicNumber>>> {
    let h = g.num_classes();
    let order = g.order() as u64;
    let e = g.exponent();
    let q = dixon_prime(e, order);
    let f = Fp::new(q);

    // c[i][j][k] = #{x ∈ C_i : x⁻¹g_k ∈ C_j}
    let mut c = vec![0u64; h * h * h];
    for (k, cls) in g.classes().iter().enumerate() {
        let gk = &cls.representative;
        for (xi, x) in g.elements().iter().enumerate() {
            let y = x.inverse().then(gk);
            let ci = g.class_of_index(xi);
            let cj = g.class_of(&y).expect("closed group");
            c[(ci * h + cj) * h + k] += 1;
        }
    }

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..h)
        .map(|i| (0..h).map(|j| u64::from(i == j)).collect())
        .collect()];
    for i in 1..h {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mat = |j: usize, k: usize| c[(i * h + j) * h + k] % q;
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            let pivots: Vec<usize> = basis
                .iter()
                .map(|b| b.iter().position(|&x| x != 0).unwrap())
                .collect();
            // a[r][s] = coordinate r of M_i b_s
            let mut a = vec![vec![0u64; d]; d];
            for (s, b) in basis.iter().enumerate() {
                for (r, &pr) in pivots.iter().enumerate() {
                    let mut acc = 0u64;
                    for (k, &bk) in b.iter().enumerate() {
                        if bk != 0 {
                            acc = f.add(acc, f.mul(mat(pr, k), bk));
                        }
                    }
                    a[r][s] = acc;
                }
            }
            let cp = charpoly_mod(&a, f);
            let mut found = 0;
            for lambda in 0..q {
                if eval_mod(&cp, lambda, f) != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u64>> = a
                    .iter()
                    .enumerate()
                    .map(|(r, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(s, &v)| if r == s { f.sub(v, lambda) } else { v })
                            .collect()
                    })
                    .collect();
                let mut sub: Vec<Vec<u64>> = nullspace_mod(&shifted, f)
                    .into_iter()
                    .map(|coords| {
                        let mut v = vec![0u64; h];
                        for (s, &cs) in coords.iter().enumerate() {
                            if cs != 0 {
                                for (vj, &bj) in v.iter_mut().zip(&basis[s]) {
                                    *vj = f.add(*vj, f.mul(cs, bj));
                                }
                            }
                        }
                        v
                    })
                    .collect();
                rref_mod(&mut sub, f);
                found += sub.len();
                next.push(sub);
            }
            if found != d {
                return Err(Error::Verification(format!(
                    "class algebra not split over F_{q} (found {found} of {d} dimensions)"
                )));
            }
        }
        spaces = next;
    }
    if spaces.len() != h {
        return Err(Error::Verification("eigenvectors not separated".into()));
    }

    let sizes: Vec<u64> = g.classes().iter().map(|c| c.size as u64 % q).collect();
    let inverse_class: Vec<usize> = g
        .classes()
        .iter()
        .enumerate()
        .map(|(j, cl)| powers[j][(cl.element_order - 1) as usize])
        .collect();
    let root = primitive_root(q);
    let z = f.pow(root, (q - 1) / e);
    let bound = (order as f64).sqrt().floor() as u64 + 1;

    let mut out = Vec::with_capacity(h);
    for basis in spaces {
        let v = &basis[0];
        if v[0] == 0 {
            return Err(Error::Verification(
                "eigenvector vanishes at the identity".into(),
            ));
        }
        let norm = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, norm)).collect();
        let mut t = 0u64;
        for j in 0..h {
            t = f.add(
                t,
                f.mul(f.mul(omega[j], omega[inverse_class[j]]), f.inv(sizes[j])),
            );
        }
        let target = f.mul(order % q, f.inv(t));
        let degree = (1..=bound)
            .find(|&d| f.mul(d % q, d % q) == target && order.is_multiple_of(d))
            .ok_or_else(|| Error::Verification("no admissible character degree".into()))?;
        let values: Vec<u64> = (0..h)
            .map(|j| f.mul(f.mul(degree % q, omega[j]), f.inv(sizes[j])))
            .collect();
        let mut row = Vec::with_capacity(h);
        for (j, cl) in g.classes().iter().enumerate() {
            let o = cl.element_order;
            let zo = f.pow(z, e / o);
            let zo_inv = f.inv(zo);
            let o_inv = f.inv(o % q);
            let mut value = field.zero();
            for k in 0..o {
                let step = f.pow(zo_inv, k);
                let mut acc = 0u64;
                let mut w = 1u64;
                for l in 0..o {
                    acc = f.add(acc, f.mul(values[powers[j][l as usize]], w));
                    w = f.mul(w, step);
                }
                let mult = f.mul(acc, o_inv);
                if mult > degree {
                    return Err(Error::Verification(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree}"
                    )));
                }
                if mult > 0 {
                    let term = field
                        .zeta_pow((k * (e / o)) as i64)
                        .scale(&BigRational::from_integer(mult.into()));
                    value = value.add(&term);
                }
            }
            row.push(value);
        }
        out.push(row);
    }
    Ok(out)
}
