//! Class points: characteristic-polynomial coefficients of the standard
//! representation at a cycle type.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::polyarith::CycleType;

/// Coefficients (s₁, …, s_{n-1}) of S(x) = Π(x^{dᵢ} − 1)/(x − 1), written
/// S(x) = x^{n-1} − s₁x^{n-2} + … + (−1)^{n-1}s_{n-1}.
pub fn s_vector(ct: &CycleType) -> Vec<BigInt> {
    let n = ct.degree() as usize;
    // P(x), ascending
    let mut p = vec![BigInt::one()];
    for &d in ct.parts() {
        let d = d as usize;
        let mut next = vec![BigInt::zero(); p.len() + d];
        for (i, c) in p.iter().enumerate() {
            next[i + d] += c;
            next[i] -= c;
        }
        p = next;
    }
    // synthetic division by (x - 1), from the top
    let mut s = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (1..=n).rev() {
        carry += &p[i];
        s[i - 1] = carry.clone();
    }
    (1..n)
        .map(|k| {
            let c = &s[n - 1 - k];
            if k % 2 == 1 {
                -c
            } else {
                c.clone()
            }
        })
        .collect()
}

/// A realizable point (s₁, …, s_{n-1}).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassPoint {
    pub svector: Vec<BigInt>,
}

impl ClassPoint {
    pub fn from_cycle_type(ct: &CycleType) -> Self {
        ClassPoint {
            svector: s_vector(ct),
        }
    }

    pub fn degree(&self) -> usize {
        self.svector.len() + 1
    }
}

impl fmt::Display for ClassPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.svector.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(parts: &[u32]) -> Vec<i64> {
        s_vector(&CycleType::new(parts.to_vec()).unwrap())
            .iter()
            .map(|v| i64::try_from(v.clone()).unwrap())
            .collect()
    }

    #[test]
    fn degree_four_points() {
        assert_eq!(sv(&[1, 1, 1, 1]), [3, 3, 1]);
        assert_eq!(sv(&[1, 1, 2]), [1, -1, -1]);
        assert_eq!(sv(&[2, 2]), [-1, -1, 1]);
        assert_eq!(sv(&[1, 3]), [0, 0, 1]);
        assert_eq!(sv(&[4]), [-1, 1, -1]);
    }

    #[test]
    fn identity_is_binomial() {
        for n in 2..=12u32 {
            let v = sv(&vec![1; n as usize]);
            let mut binom = 1i64;
            for (k, &x) in v.iter().enumerate() {
                let k = k as i64 + 1;
                binom = binom * (n as i64 - k) / k;
                assert_eq!(x, binom);
            }
        }
    }
}
