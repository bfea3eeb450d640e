//! Dense polynomials over a prime field F_p with p < 2^63.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

/// Ascending coefficients with no trailing zeros (zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub field: Fp,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(field: Fp, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { field, c }
    }

    pub fn x(field: Fp) -> Self {
        Self::new(field, vec![0, 1 % field.p])
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let k = self.field.inv(lc);
                Self::new(
                    self.field,
                    self.c.iter().map(|&a| self.field.mul(a, k)).collect(),
                )
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        Self::new(
            f,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| f.mul(a, i as u64 % f.p))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.c.len().max(other.c.len());
        Self::new(
            f,
            (0..n)
                .map(|i| f.sub(*self.c.get(i).unwrap_or(&0), *other.c.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.field, Vec::new());
        }
        let f = self.field;
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    /// (quotient, remainder); `d` must be nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.c[dd]);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::new(f, Vec::new()), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let coef = f.mul(r[k], inv);
            if coef == 0 {
                continue;
            }
            q[k - dd] = coef;
            for (j, &b) in d.c.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = f.sub(r[idx], f.mul(coef, b));
            }
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::new(self.field, vec![1 % self.field.p]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs (d, number of irreducible factors of degree d), d ascending.
pub fn distinct_degree_counts(f: &FpPoly) -> Vec<(usize, usize)> {
    let field = f.field;
    let x = FpPoly::x(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if deg < 2 * d {
            // remaining factor is irreducible
            out.push((deg, 1));
            break;
        }
        h = h.pow_mod(field.p, &rest);
        let g = rest.gcd(&h.sub(&x));
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            out.push((d, gd / d));
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
    }
    out
}
