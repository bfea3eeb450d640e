//! Exact arithmetic in Q(ζ_m) over the power basis 1, ζ, …, ζ^{φ(m)-1}.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::{fmt_rational, parse_polynomial};

/// Q(ζ_m) with a precomputed reduction of every power ζ^k, 0 ≤ k < m.
#[derive(Debug)]
pub struct CyclotomicField {
    m: u64,
    phi: usize,
    // powers[k] = sparse (index, coefficient) form of ζ^k
    powers: Vec<Vec<(usize, i64)>>,
}

/// Ascending integer coefficients of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    // Φ_d = (x^d - 1) / Π Φ_e over proper divisors e of d, for each d | m
    let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut known: Vec<(u64, Vec<i64>)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut num = vec![0i64; d as usize + 1];
        num[0] = -1;
        num[d as usize] = 1;
        for (e, phi_e) in &known {
            if d % e == 0 {
                num = exact_div(&num, phi_e);
            }
        }
        known.push((d, num));
    }
    known.pop().unwrap().1
}

// Division by a monic divisor with zero remainder.
fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for k in (db..a.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k - db + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&v| v == 0));
    q
}

impl CyclotomicField {
    pub fn new(m: u64) -> Arc<Self> {
        assert!(m >= 1);
        let phi_poly = cyclotomic_polynomial(m);
        let phi = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect(),
            );
            // multiply by ζ and reduce with ζ^φ = -Σ c_i ζ^i
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * phi_poly[i];
                }
            }
        }
        Arc::new(CyclotomicField { m, phi, powers })
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.phi
    }

    pub fn zero(self: &Arc<Self>) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.clone(),
            coords: vec![BigRational::zero(); self.phi],
        }
    }

    pub fn rational(self: &Arc<Self>, q: BigRational) -> CyclotomicNumber {
        let mut z = self.zero();
        z.coords[0] = q;
        z
    }

    pub fn integer(self: &Arc<Self>, v: i64) -> CyclotomicNumber {
        self.rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> CyclotomicNumber {
        let mut z = self.zero();
        z.add_power(k.rem_euclid(self.m as i64) as usize, &BigRational::one());
        z
    }

    /// Parses `a+b*z^k` syntax (any polynomial in z with rational
    /// coefficients; exponents are taken mod m).
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<CyclotomicNumber> {
        let p = parse_polynomial(text, 1, &|name: &str| (name == "z").then_some(0))?;
        let mut out = self.zero();
        for (mono, c) in p.terms() {
            out.add_power((mono.0[0] as u64 % self.m) as usize, c);
        }
        Ok(out)
    }
}

/// Element of Q(ζ_m); equality is coordinate equality.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coords: Vec<BigRational>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coords == other.coords
    }
}

impl Eq for CyclotomicNumber {}

impl PartialOrd for CyclotomicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on power-basis coordinates.
impl Ord for CyclotomicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl CyclotomicNumber {
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    // self += c·ζ^k with 0 ≤ k < m
    fn add_power(&mut self, k: usize, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for &(i, v) in &self.field.powers[k] {
            self.coords[i] += c * BigRational::from_integer(BigInt::from(v));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicNumber {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        CyclotomicNumber {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        CyclotomicNumber {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return self.field.rational(a * b);
        }
        let m = self.field.m as usize;
        let mut out = self.field.zero();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    out.add_power((i + j) % m, &(a * b));
                }
            }
        }
        out
    }

    /// σ_k : ζ ↦ ζ^k, for k coprime to m.
    pub fn galois(&self, k: u64) -> Self {
        if self.as_rational().is_some() {
            return self.clone();
        }
        let m = self.field.m;
        let mut out = self.field.zero();
        for (i, a) in self.coords.iter().enumerate() {
            out.add_power(((i as u64 * k) % m) as usize, a);
        }
        out
    }

    /// Complex conjugate, σ_{-1}.
    pub fn conj(&self) -> Self {
        self.galois(self.field.m - 1)
    }

    /// Complex approximation (re, im).
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.field.m as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let v = crate::expr::rational_to_f64(a);
            let t = 2.0 * std::f64::consts::PI * i as f64 / m;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Rewrites into Q(ζ_M) for a multiple M of m.
    pub fn lift(&self, target: &Arc<CyclotomicField>) -> Result<Self> {
        let (m, big) = (self.field.m, target.m);
        if big % m != 0 {
            return Err(Error::Dimension(format!(
                "Q(z_{m}) is not inside Q(z_{big})"
            )));
        }
        let step = (big / m) as usize;
        let mut out = target.zero();
        for (i, a) in self.coords.iter().enumerate() {
            out.add_power(i * step, a);
        }
        Ok(out)
    }
}

/// Renders in `a+b*z^k` syntax, lowest power first, e.g. `-1 + 2*z^3`.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let abs = a.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let z = match i {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{i}")),
            };
            match z {
                None => f.write_str(&fmt_rational(&abs))?,
                Some(z) if abs.is_one() => f.write_str(&z)?,
                Some(z) => write!(f, "{}*{z}", fmt_rational(&abs))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    (1..=m).filter(|&k| k.gcd(&m) == 1).count() as u64
}
