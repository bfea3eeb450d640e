//! Integer polynomials, discriminants and factorization types modulo primes.

mod modp;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::parse_polynomial;

pub use modp::{distinct_degree_counts, Fp, FpPoly};

/// Polynomial with integer coefficients, ascending degree order.
/// The last coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds from ascending coefficients; trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::ConstantPolynomial);
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Accepts `x^4 + x + 1` style text or a JSON array of ascending
    /// coefficients such as `[1, 1, 0, 0, 1]`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('[') {
            let raw: Vec<serde_json::Value> =
                serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            let coeffs = raw
                .iter()
                .map(|v| match v {
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| Error::Parse(format!("non-integer coefficient {n}"))),
                    serde_json::Value::String(s) => s
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad coefficient '{s}'"))),
                    other => Err(Error::Parse(format!("bad coefficient {other}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::new(coeffs);
        }
        let p = parse_polynomial(t, 1, &|name: &str| (name == "x").then_some(0))?;
        let deg = p.total_degree() as usize;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return Err(Error::Parse(format!("non-integer coefficient in '{t}'")));
            }
            coeffs[m.0[0] as usize] = c.to_integer();
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn derivative(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect()
    }

    /// Coefficients reduced into [0, p).
    pub fn reduce(&self, p: u64) -> FpPoly {
        let pb = BigInt::from(p);
        let f = Fp::new(p);
        FpPoly::new(
            f,
            self.coeffs
                .iter()
                .map(|c| {
                    let r = ((c % &pb) + &pb) % &pb;
                    r.to_u64().unwrap()
                })
                .collect(),
        )
    }

    pub fn lc_divisible_by(&self, p: u64) -> bool {
        (self.leading() % BigInt::from(p)).is_zero()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Partition of n, parts ascending.
///
/// Ordered lexicographically on the parts written in descending order, so
/// for n = 4: 1^4 < 1^2 2 < 2^2 < 1 3 < 4.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Invalid("cycle type needs positive parts".into()));
        }
        parts.sort_unstable();
        Ok(CycleType { parts })
    }

    pub fn identity(n: u32) -> Self {
        CycleType {
            parts: vec![1; n as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Order of any permutation with this cycle type.
    pub fn order(&self) -> u64 {
        self.parts
            .iter()
            .fold(1u64, |l, &d| num_integer::lcm(l, d as u64))
    }

    /// Number of permutations in Sym_n with this cycle type.
    pub fn class_size_in_sym(&self) -> BigInt {
        let n = self.degree();
        let mut denom = BigInt::one();
        let mut i = 0;
        while i < self.parts.len() {
            let d = self.parts[i];
            let mut e = 0u32;
            while i < self.parts.len() && self.parts[i] == d {
                e += 1;
                i += 1;
            }
            denom *= BigInt::from(d).pow(e) * factorial(e);
        }
        factorial(n) / denom
    }

    /// All partitions of n in `Ord` order.
    pub fn all(n: u32) -> Vec<CycleType> {
        fn rec(left: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<CycleType>) {
            if left == 0 {
                out.push(CycleType { parts: cur.clone() });
                return;
            }
            for d in min..=left {
                // remaining parts are at least d
                if d < left && left - d < d {
                    continue;
                }
                cur.push(d);
                rec(left - d, d, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, 1, &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }
}

impl Ord for CycleType {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts.iter().rev().cmp(other.parts.iter().rev())
    }
}

impl PartialOrd for CycleType {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

impl TryFrom<Vec<u32>> for CycleType {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        CycleType::new(v)
    }
}

impl From<CycleType> for Vec<u32> {
    fn from(c: CycleType) -> Vec<u32> {
        c.parts
    }
}

/// Exponential notation, e.g. `1^2 2` for (1,1,2).
impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.parts.len() {
            let d = self.parts[i];
            let mut e = 0;
            while i < self.parts.len() && self.parts[i] == d {
                e += 1;
                i += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{d}")?;
            } else {
                write!(f, "{d}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Bareiss fraction-free determinant.
pub(crate) fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant via the Sylvester matrix; both inputs ascending and nonempty.
pub(crate) fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut r = vec![BigInt::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..n {
        let mut r = vec![BigInt::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    determinant(rows)
}

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
pub fn discriminant(f: &IntPolynomial) -> BigInt {
    let n = f.degree();
    let mut d = f.derivative();
    while d.last().is_some_and(Zero::is_zero) {
        d.pop();
    }
    let res = resultant(&f.coeffs, &d);
    let q = res / f.leading();
    if (n * (n - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

/// gcd(f, f') mod p is constant. Requires p ∤ lc(f).
pub fn is_squarefree_mod(f: &IntPolynomial, p: u64) -> Result<bool> {
    crate::primes::require_prime(p)?;
    if f.lc_divisible_by(p) {
        return Err(Error::Ramified(p));
    }
    let fp = f.reduce(p);
    Ok(fp.gcd(&fp.derivative()).degree() == Some(0))
}

/// True when p divides lc(f)·disc(f); such primes are never sampled.
pub fn is_ramified(f: &IntPolynomial, p: u64) -> bool {
    f.lc_divisible_by(p) || {
        let fp = f.reduce(p);
        fp.gcd(&fp.derivative()).degree() != Some(0)
    }
}

/// Degrees of the irreducible factors of f mod p.
pub fn factorization_type(f: &IntPolynomial, p: u64) -> Result<CycleType> {
    crate::primes::require_prime(p)?;
    factorization_type_unchecked(f, p)
}

/// As `factorization_type`, trusting that `p` is prime.
pub fn factorization_type_unchecked(f: &IntPolynomial, p: u64) -> Result<CycleType> {
    if is_ramified(f, p) {
        return Err(Error::Ramified(p));
    }
    let counts = distinct_degree_counts(&f.reduce(p).monic());
    let mut parts = Vec::with_capacity(f.degree());
    for (d, c) in counts {
        parts.extend(std::iter::repeat_n(d as u32, c));
    }
    CycleType::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c).unwrap()
    }

    #[test]
    fn parse_both_formats() {
        let a = IntPolynomial::parse("x^4 + x + 1").unwrap();
        let b = IntPolynomial::parse("[1, 1, 0, 0, 1]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "x^4 + x + 1");
        let c = IntPolynomial::parse("x^8-12x^6+36x^4-36x^2+9").unwrap();
        assert_eq!(c.degree(), 8);
        assert_eq!(c.to_string(), "x^8 - 12*x^6 + 36*x^4 - 36*x^2 + 9");
        assert!(IntPolynomial::parse("7").is_err());
        assert!(IntPolynomial::parse("x/2 + 1").is_err());
        assert!(IntPolynomial::parse("y + 1").is_err());
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&poly(&[1, 0, 1])), BigInt::from(-4));
        assert_eq!(discriminant(&poly(&[0, -1, 0, 1])), BigInt::from(4));
        assert_eq!(discriminant(&poly(&[1, 1, 0, 0, 1])), BigInt::from(229));
        assert_eq!(discriminant(&poly(&[2, 0, -2, 0, 1])), BigInt::from(512));
        assert_eq!(
            discriminant(&poly(&[-1, -1, 0, 0, 0, 0, 0, 0, 1])),
            BigInt::from(-17600759)
        );
        // non-monic: 2x^2 + 3x + 1 has disc 9 - 8 = 1
        assert_eq!(discriminant(&poly(&[1, 3, 2])), BigInt::from(1));
    }

    #[test]
    fn factorization_types() {
        let f = poly(&[1, 0, 1]);
        assert_eq!(factorization_type(&f, 5).unwrap().parts(), &[1, 1]);
        assert_eq!(factorization_type(&f, 3).unwrap().parts(), &[2]);
        assert!(matches!(factorization_type(&f, 2), Err(Error::Ramified(2))));
        assert!(matches!(factorization_type(&f, 4), Err(Error::NotPrime(4))));
        let g = poly(&[1, 1, 0, 0, 1]);
        assert_eq!(factorization_type(&g, 2).unwrap().parts(), &[4]);
    }

    #[test]
    fn squarefree() {
        let f = poly(&[1, 0, 1]);
        assert!(!is_squarefree_mod(&f, 2).unwrap());
        assert!(is_squarefree_mod(&f, 5).unwrap());
        assert!(!is_squarefree_mod(&poly(&[1, 1, 0, 0, 1]), 229).unwrap());
        assert!(is_squarefree_mod(&poly(&[1, 0, 2]), 2).is_err());
    }

    #[test]
    fn partitions() {
        let counts: Vec<usize> = (1..=12).map(|n| CycleType::all(n).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        let ct = CycleType::new(vec![2, 1, 1]).unwrap();
        assert_eq!(ct.to_string(), "1^2 2");
        assert_eq!(ct.class_size_in_sym(), BigInt::from(6));
        assert_eq!(CycleType::new(vec![4, 4]).unwrap().order(), 4);
        let shown: Vec<String> = CycleType::all(4).iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, ["1^4", "1^2 2", "2^2", "1 3", "4"]);
    }
}
