//! Deterministic prime enumeration.

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    primal::is_prime(p)
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Primes `>= start` in increasing order.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    primal::Primes::all()
        .map(|p| p as u64)
        .skip_while(move |&p| p < start)
}
