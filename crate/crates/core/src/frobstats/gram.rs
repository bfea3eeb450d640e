//! Exact Gram matrices of test functions over prime samples and over Haar
//! measure, error norms, and rounding.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::basis::{TestBasis, TestFunction};
use super::sample::PrimeSample;
use crate::charparam::{evaluate, ClassPoint};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::permcore::ClassData;
use crate::polyarith::CycleType;

/// Everything a basis can see at one prime: the factorization type of each
/// participating polynomial and each quadratic symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrobKey {
    pub types: Vec<CycleType>,
    pub symbols: Vec<i8>,
}

/// Integer-weighted multiset of Frobenius keys. Merging is exact, so any
/// split of the primes among workers gives the same histogram.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histogram {
    pub counts: BTreeMap<FrobKey, BigInt>,
    pub total: BigInt,
}

impl Histogram {
    pub fn add(&mut self, key: FrobKey, weight: BigInt) {
        self.total += &weight;
        *self.counts.entry(key).or_insert_with(BigInt::zero) += weight;
    }

    pub fn merge(mut self, other: Histogram) -> Histogram {
        for (k, w) in other.counts {
            self.add(k, w);
        }
        self
    }

    /// Haar measure of a group: each class weighted by its size.
    pub fn haar(data: &ClassData) -> Histogram {
        let mut h = Histogram::default();
        for c in &data.classes {
            h.add(
                FrobKey {
                    types: vec![c.cycle_type.clone()],
                    symbols: Vec::new(),
                },
                BigInt::from(c.size),
            );
        }
        h
    }
}

fn kronecker_count(basis: &TestBasis) -> usize {
    basis
        .functions
        .iter()
        .filter(|f| matches!(f, TestFunction::Kronecker { .. }))
        .count()
}

/// Keys of the aligned samples, one per prime.
pub fn frob_keys(samples: &[PrimeSample], basis: &TestBasis) -> Result<Vec<FrobKey>> {
    if samples.len() < basis.sources() {
        return Err(Error::Dimension(format!(
            "basis reads {} polynomials, {} sampled",
            basis.sources(),
            samples.len()
        )));
    }
    let n = samples[0].len();
    if samples.iter().any(|s| s.len() != n) {
        return Err(Error::Dimension("samples are not aligned".into()));
    }
    let chars: Vec<_> = basis
        .functions
        .iter()
        .filter_map(|f| match f {
            TestFunction::Kronecker { character } => Some(*character),
            TestFunction::Poly { .. } => None,
        })
        .collect();
    (0..n)
        .map(|i| {
            let p = samples[0].entries[i].prime;
            if samples.iter().any(|s| s.entries[i].prime != p) {
                return Err(Error::Dimension("samples are not aligned".into()));
            }
            Ok(FrobKey {
                types: samples
                    .iter()
                    .map(|s| s.entries[i].cycle_type.clone())
                    .collect(),
                symbols: chars.iter().map(|c| c.value(p)).collect(),
            })
        })
        .collect()
}

/// Basis values at a key.
pub fn key_values(basis: &TestBasis, key: &FrobKey) -> Result<Vec<BigRational>> {
    let points: Vec<ClassPoint> = key.types.iter().map(ClassPoint::from_cycle_type).collect();
    let mut next_symbol = 0;
    basis
        .functions
        .iter()
        .map(|f| match f {
            TestFunction::Poly { poly, source } => {
                let pt = points.get(*source).ok_or_else(|| {
                    Error::Dimension(format!("no polynomial {source} in this run"))
                })?;
                if pt.svector.len() != poly.nvars() {
                    return Err(Error::Dimension(format!(
                        "basis in {} variables applied to degree {}",
                        poly.nvars(),
                        pt.degree()
                    )));
                }
                evaluate(poly, pt)
            }
            TestFunction::Kronecker { .. } => {
                let s = key.symbols.get(next_symbol).copied().ok_or_else(|| {
                    Error::Invalid("quadratic character needs symbol data at this point".into())
                })?;
                next_symbol += 1;
                Ok(BigRational::from_integer(BigInt::from(s)))
            }
        })
        .collect()
}

/// (1/total) Σ weight·v vᵀ over the histogram.
pub fn gram_from_histogram(basis: &TestBasis, hist: &Histogram) -> Result<QMatrix> {
    if hist.total.is_zero() {
        return Err(Error::Invalid("empty sample".into()));
    }
    let r = basis.len();
    let mut acc = vec![vec![BigRational::zero(); r]; r];
    for (key, w) in &hist.counts {
        let v = key_values(basis, key)?;
        let w = BigRational::from_integer(w.clone());
        for i in 0..r {
            let wi = &w * &v[i];
            for j in i..r {
                acc[i][j] += &wi * &v[j];
            }
        }
    }
    let total = BigRational::from_integer(hist.total.clone());
    for i in 0..r {
        for j in i..r {
            acc[i][j] = &acc[i][j] / &total;
            acc[j][i] = acc[i][j].clone();
        }
    }
    Ok(acc)
}

pub fn histogram(keys: &[FrobKey]) -> Histogram {
    let mut h = Histogram::default();
    for k in keys {
        h.add(k.clone(), BigInt::from(1));
    }
    h
}

/// E_S(χᵢχⱼ) over aligned samples (one per source polynomial).
pub fn empirical_gram(samples: &[PrimeSample], basis: &TestBasis) -> Result<QMatrix> {
    if samples.first().is_none_or(PrimeSample::is_empty) {
        return Err(Error::Invalid("empty sample".into()));
    }
    gram_from_histogram(basis, &histogram(&frob_keys(samples, basis)?))
}

/// Gram matrix of one group's basis on another polynomial's sample.
pub fn cross_gram(basis: &TestBasis, other: &PrimeSample) -> Result<QMatrix> {
    empirical_gram(std::slice::from_ref(other), basis)
}

/// Gram matrix of a combined basis over aligned samples; an alias of the
/// empirical Gram kept for the two-polynomial reading.
pub fn joint_gram(samples: &[PrimeSample], basis: &TestBasis) -> Result<QMatrix> {
    empirical_gram(samples, basis)
}

/// Haar-weighted Gram matrix M(G). Quadratic characters need per-class
/// values; see [`theoretical_gram_with`].
pub fn theoretical_gram(data: &ClassData, basis: &TestBasis) -> Result<QMatrix> {
    if kronecker_count(basis) > 0 {
        return Err(Error::Invalid(
            "quadratic characters need per-class values for a theoretical Gram".into(),
        ));
    }
    if basis.sources() > 1 {
        return Err(Error::Invalid(
            "theoretical Gram reads a single parametrization".into(),
        ));
    }
    gram_from_histogram(basis, &Histogram::haar(data))
}

/// M(G) with each quadratic character (in basis order) given by its values
/// on the classes.
pub fn theoretical_gram_with(
    data: &ClassData,
    basis: &TestBasis,
    symbols: &[Vec<i8>],
) -> Result<QMatrix> {
    if symbols.len() != kronecker_count(basis)
        || symbols.iter().any(|s| s.len() != data.num_classes())
    {
        return Err(Error::Dimension(
            "one class value list per quadratic character".into(),
        ));
    }
    let mut h = Histogram::default();
    for (k, c) in data.classes.iter().enumerate() {
        h.add(
            FrobKey {
                types: vec![c.cycle_type.clone()],
                symbols: symbols.iter().map(|s| s[k]).collect(),
            },
            BigInt::from(c.size),
        );
    }
    gram_from_histogram(basis, &h)
}

/// Haar-weighted Gram of explicit class functions.
pub fn gram_of_class_functions(data: &ClassData, columns: &[Vec<BigRational>]) -> QMatrix {
    let w = data.weights();
    columns
        .iter()
        .map(|a| {
            columns
                .iter()
                .map(|b| {
                    w.iter()
                        .zip(a.iter().zip(b))
                        .fold(BigRational::zero(), |s, (w, (x, y))| s + w * x * y)
                })
                .collect()
        })
        .collect()
}

/// Normalized ℓ₂, ℓ₈ and ℓ∞ norms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Norms {
    pub l2: f64,
    pub l8: f64,
    pub linf: f64,
}

pub fn error_norms(z: &[Vec<f64>]) -> Result<Norms> {
    let r = z.len();
    if r == 0 || z.iter().any(|row| row.len() != r) {
        return Err(Error::Dimension(
            "error matrix must be square and nonempty".into(),
        ));
    }
    let cells = (r * r) as f64;
    let abs = z.iter().flatten().map(|x| x.abs());
    let linf = abs.clone().fold(0.0, f64::max);
    if linf == 0.0 {
        return Ok(Norms {
            l2: 0.0,
            l8: 0.0,
            linf: 0.0,
        });
    }
    // scale by the maximum so the eighth powers stay in range
    let l2 = linf * (abs.clone().map(|x| (x / linf).powi(2)).sum::<f64>() / cells).sqrt();
    let l8 = linf * (abs.map(|x| (x / linf).powi(8)).sum::<f64>() / cells).powf(0.125);
    Ok(Norms { l2, l8, linf })
}

/// E − M as floats.
pub fn error_matrix(empirical: &QMatrix, theoretical: &QMatrix) -> Result<Vec<Vec<f64>>> {
    if empirical.len() != theoretical.len() {
        return Err(Error::Dimension("Gram matrices differ in size".into()));
    }
    Ok(empirical
        .iter()
        .zip(theoretical)
        .map(|(a, b)| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).to_f64().unwrap_or(f64::NAN))
                .collect()
        })
        .collect())
}

/// Nearest-integer rounding with entries within 1e-9 of a half-integer
/// flagged instead of silently rounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rounding {
    pub values: Vec<Vec<BigInt>>,
    pub ambiguous: Vec<(usize, usize)>,
}

pub fn round_matrix(m: &QMatrix) -> Rounding {
    let tol = BigRational::new(1.into(), BigInt::from(1_000_000_000u64));
    let half = BigRational::new(1.into(), 2.into());
    let mut ambiguous = Vec::new();
    let values = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    let fl = x.floor();
                    let frac = x - &fl;
                    if (&frac - &half).abs() <= tol {
                        ambiguous.push((i, j));
                    }
                    let base = fl.to_integer();
                    if frac >= half {
                        base + 1
                    } else {
                        base
                    }
                })
                .collect()
        })
        .collect();
    Rounding { values, ambiguous }
}

/// Rational as "num/den" (or "num" for integers).
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobstats::sample::sample_primes;
    use crate::permcore::catalog;
    use crate::polyarith::IntPolynomial;

    fn int_matrix(m: &QMatrix) -> Vec<Vec<i64>> {
        round_matrix(m)
            .values
            .iter()
            .map(|r| r.iter().map(|x| x.try_into().unwrap()).collect())
            .collect()
    }

    #[test]
    fn norms_examples() {
        let n = error_norms(&[vec![0.0]]).unwrap();
        assert_eq!((n.l2, n.l8, n.linf), (0.0, 0.0, 0.0));
        let n = error_norms(&[vec![0.5]]).unwrap();
        assert!((n.l2 - 0.5).abs() < 1e-12 && (n.l8 - 0.5).abs() < 1e-12 && n.linf == 0.5);
        let n = error_norms(&[vec![3.0, 0.0], vec![0.0, 4.0]]).unwrap();
        assert!((n.l2 - 2.5).abs() < 1e-12 && n.linf == 4.0);
        assert!(n.l2 <= n.l8 && n.l8 <= n.linf);
        assert!(error_norms(&[]).is_err());
    }

    #[test]
    fn rounding_flags_halves() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let r = round_matrix(&vec![vec![q(1, 2), q(7, 5)], vec![q(-3, 2), q(-2, 3)]]);
        assert_eq!(r.ambiguous, [(0, 0), (1, 0)]);
        assert_eq!(r.values[0][1], 1.into());
        assert_eq!(r.values[1][1], (-1).into());
    }

    #[test]
    fn trivial_basis_is_one() {
        let f = IntPolynomial::parse("x^3 - 2").unwrap();
        let s = sample_primes(&f, 10, 2).unwrap();
        let b = TestBasis::from_polys(2, vec![]).unwrap();
        assert_eq!(
            empirical_gram(&[s], &b).unwrap(),
            vec![vec![BigRational::from_integer(1.into())]]
        );
    }

    #[test]
    fn d4_theoretical_on_quartic_basis() {
        let data = ClassData::from_group(&catalog::group("D4").unwrap());
        let b = TestBasis::parse(3, &["s1", "s2", "s3", "s1^2 - s1 - s2 - 1"]).unwrap();
        let m = theoretical_gram(&data, &b).unwrap();
        assert_eq!(
            int_matrix(&m),
            [
                [1, 0, 0, 0, 1],
                [0, 2, 1, 0, 0],
                [0, 1, 2, 0, 0],
                [0, 0, 0, 1, 1],
                [1, 0, 0, 1, 2]
            ]
        );
    }
}
