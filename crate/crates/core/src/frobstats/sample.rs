//! Deterministic prime samples: factorization types and class points of the
//! first unramified primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::charparam::ClassPoint;
use crate::error::{Error, Result};
use crate::polyarith::{discriminant, factorization_type_unchecked, CycleType, IntPolynomial};
use crate::primes::primes_from;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleEntry {
    pub prime: u64,
    pub cycle_type: CycleType,
    pub point: ClassPoint,
}

/// Frobenius data of one polynomial at increasing unramified primes.
#[derive(Clone, Debug)]
pub struct PrimeSample {
    pub polynomial: IntPolynomial,
    pub entries: Vec<SampleEntry>,
    /// Primes passed over because they divide disc·lc of some participating
    /// polynomial (or an auxiliary modulus).
    pub skipped: Vec<u64>,
}

impl PrimeSample {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn primes(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.prime).collect()
    }

    /// The first `n` entries.
    pub fn prefix(&self, n: usize) -> PrimeSample {
        PrimeSample {
            polynomial: self.polynomial.clone(),
            entries: self.entries[..n.min(self.entries.len())].to_vec(),
            skipped: self.skipped.clone(),
        }
    }
}

/// disc(f)·lc(f); a prime is usable iff it does not divide this.
pub fn bad_modulus(f: &IntPolynomial) -> BigInt {
    discriminant(f) * f.leading()
}

/// The first `count` primes ≥ `start` dividing none of `moduli`, with the
/// primes skipped on the way. Zero moduli are ignored; callers reject
/// them first.
pub fn good_primes(moduli: &[BigInt], count: usize, start: u64) -> (Vec<u64>, Vec<u64>) {
    let mut good = Vec::with_capacity(count);
    let mut skipped = Vec::new();
    for p in primes_from(start) {
        if good.len() == count {
            break;
        }
        let bp = BigInt::from(p);
        if moduli
            .iter()
            .any(|m| !m.is_zero() && m.mod_floor(&bp).is_zero())
        {
            skipped.push(p);
        } else {
            good.push(p);
        }
    }
    (good, skipped)
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("worker pool: {e}")))
}

/// Frobenius data of `f` at the given unramified primes, computed on
/// `workers` threads; the output order is the input order.
pub fn frobenius_data(
    f: &IntPolynomial,
    primes: &[u64],
    workers: usize,
) -> Result<Vec<SampleEntry>> {
    let entry = |&p: &u64| {
        let ct = factorization_type_unchecked(f, p)?;
        Ok(SampleEntry {
            prime: p,
            point: ClassPoint::from_cycle_type(&ct),
            cycle_type: ct,
        })
    };
    if workers <= 1 {
        primes.iter().map(entry).collect()
    } else {
        pool(workers)?.install(|| primes.par_iter().map(entry).collect())
    }
}

pub fn sample_primes(f: &IntPolynomial, count: usize, start: u64) -> Result<PrimeSample> {
    sample_primes_with(f, count, start, 1)
}

pub fn sample_primes_with(
    f: &IntPolynomial,
    count: usize,
    start: u64,
    workers: usize,
) -> Result<PrimeSample> {
    Ok(joint_sample(std::slice::from_ref(f), &[], count, start, workers)?.remove(0))
}

/// Aligned samples of several polynomials at the first `count` primes ≥
/// `start` unramified for all of them and coprime to every extra modulus.
pub fn joint_sample(
    polys: &[IntPolynomial],
    extra_moduli: &[BigInt],
    count: usize,
    start: u64,
    workers: usize,
) -> Result<Vec<PrimeSample>> {
    if count == 0 {
        return Err(Error::Invalid("sample size must be at least 1".into()));
    }
    if polys.is_empty() {
        return Err(Error::Invalid("no polynomial given".into()));
    }
    let mut moduli: Vec<BigInt> = polys.iter().map(bad_modulus).collect();
    if moduli.iter().any(Zero::is_zero) {
        return Err(Error::NotSquarefree);
    }
    moduli.extend(extra_moduli.iter().cloned());
    let (primes, skipped) = good_primes(&moduli, count, start);
    polys
        .iter()
        .map(|f| {
            Ok(PrimeSample {
                polynomial: f.clone(),
                entries: frobenius_data(f, &primes, workers)?,
                skipped: skipped.clone(),
            })
        })
        .collect()
}

/// Irreducibility over Q proved from degree patterns: any factor of degree k
/// would force every factorization type among the first `tries` unramified
/// primes to contain parts summing to k. Returns false when some k in 1..n
/// survives, which is no proof of reducibility.
pub fn irreducibility_evidence(f: &IntPolynomial, tries: usize) -> Result<bool> {
    let n = f.degree();
    let s = sample_primes(f, tries, 2)?;
    let mut possible = vec![true; n + 1];
    for e in &s.entries {
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &d in e.cycle_type.parts() {
            for k in (d as usize..=n).rev() {
                sums[k] |= sums[k - d as usize];
            }
        }
        for k in 1..n {
            possible[k] &= sums[k];
        }
    }
    Ok((1..n).all(|k| !possible[k]))
}
