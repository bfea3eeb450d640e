//! Character tables: exact computation, orthogonality checks, Galois orbits
//! and rational tables.

pub mod cyclo;
mod dixon;
mod io;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cyclo::{CyclotomicField, CyclotomicNumber};
pub use dixon::{dixon_prime, primitive_root};
pub use io::{import_table, import_table_str, ImportedTable};

use crate::error::{Error, Result};
use crate::permcore::{ClassData, PermGroup};

/// Irreducible characters over Q(ζ_m), m the group exponent.
///
/// Rows are ordered trivial character first, then by degree, then
/// lexicographically by value coordinates; columns follow the class order of
/// the underlying data.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    data: ClassData,
    exponent: u64,
    field: Arc<CyclotomicField>,
    rows: Vec<Vec<CyclotomicNumber>>,
    // powers[j][l] = class of g_j^l, l < order(g_j)
    powers: Option<Vec<Vec<usize>>>,
}

/// Galois-orbit sums of irreducible characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCharacterTable {
    pub data: ClassData,
    pub rows: Vec<Vec<BigInt>>,
    pub orbit_sizes: Vec<usize>,
    /// Member indices into the irreducible table; empty for imported data.
    pub orbits: Vec<Vec<usize>>,
}

pub fn power_maps(g: &PermGroup) -> Vec<Vec<usize>> {
    g.classes()
        .iter()
        .map(|c| {
            (0..c.element_order)
                .map(|l| g.power_map(c.index, l).expect("valid class"))
                .collect()
        })
        .collect()
}

/// Dixon's method; the result is verified before it is returned.
pub fn character_table(g: &PermGroup) -> Result<CharacterTable> {
    let powers = power_maps(g);
    let field = CyclotomicField::new(g.exponent());
    let rows = dixon::dixon_characters(g, &powers, &field)?;
    CharacterTable::new(ClassData::from_group(g), g.exponent(), rows, Some(powers))
}

fn max_abs_f64(v: &CyclotomicNumber) -> f64 {
    let (re, im) = v.to_complex();
    re.hypot(im)
}

impl CharacterTable {
    /// Sorts rows into canonical order and rejects tables that fail
    /// A·D·A† = I.
    pub fn new(
        data: ClassData,
        exponent: u64,
        mut rows: Vec<Vec<CyclotomicNumber>>,
        powers: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let h = data.num_classes();
        if rows.len() != h || rows.iter().any(|r| r.len() != h) {
            return Err(Error::Dimension(format!("expected a {h}x{h} table")));
        }
        let field = rows[0][0].field().clone();
        if field.order() != exponent {
            return Err(Error::Dimension("values not in Q(z_exponent)".into()));
        }
        let is_trivial =
            |r: &Vec<CyclotomicNumber>| r.iter().all(|v| v.as_integer() == Some(BigInt::one()));
        rows.sort_by(|a, b| {
            is_trivial(b)
                .cmp(&is_trivial(a))
                .then_with(|| a[0].cmp(&b[0]))
                .then_with(|| a.cmp(b))
        });
        let table = CharacterTable {
            data,
            exponent,
            field,
            rows,
            powers,
        };
        if !table.verify_orthogonality() {
            return Err(Error::Orthogonality(format!(
                "{:.3e}",
                table.orthogonality_deviation()
            )));
        }
        if table.degrees().iter().any(|d| d.is_none()) {
            return Err(Error::Verification(
                "character degree is not a positive integer".into(),
            ));
        }
        Ok(table)
    }

    pub fn data(&self) -> &ClassData {
        &self.data
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn rows(&self) -> &[Vec<CyclotomicNumber>] {
        &self.rows
    }

    pub fn num_classes(&self) -> usize {
        self.data.num_classes()
    }

    pub fn powers(&self) -> Option<&[Vec<usize>]> {
        self.powers.as_deref()
    }

    pub fn weights(&self) -> Vec<BigRational> {
        self.data.weights()
    }

    /// χ(1) per row when it is a positive integer.
    pub fn degrees(&self) -> Vec<Option<u64>> {
        self.rows
            .iter()
            .map(|r| {
                r[0].as_integer()
                    .filter(|d| d.is_positive())
                    .and_then(|d| u64::try_from(d).ok())
            })
            .collect()
    }

    /// Σ_k w_k a(C_k) conj(b(C_k)).
    pub fn inner_product(
        &self,
        a: &[CyclotomicNumber],
        b: &[CyclotomicNumber],
    ) -> CyclotomicNumber {
        let mut acc = self.field.zero();
        for ((x, y), w) in a.iter().zip(b).zip(self.weights()) {
            acc = acc.add(&x.mul(&y.conj()).scale(&w));
        }
        acc
    }

    /// Exact A·D·A† = I.
    pub fn verify_orthogonality(&self) -> bool {
        let one = self.field.integer(1);
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate().skip(i) {
                let ip = self.inner_product(a, b);
                if (i == j && ip != one) || (i != j && !ip.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact column relations Σᵢ χᵢ(C_j) conj χᵢ(C_k) = δ_jk |G|/|C_j|.
    pub fn verify_column_orthogonality(&self) -> bool {
        let h = self.num_classes();
        for j in 0..h {
            for k in j..h {
                let mut acc = self.field.zero();
                for r in &self.rows {
                    acc = acc.add(&r[j].mul(&r[k].conj()));
                }
                let expect = if j == k {
                    self.field.rational(BigRational::new(
                        BigInt::from(self.data.order),
                        BigInt::from(self.data.classes[j].size),
                    ))
                } else {
                    self.field.zero()
                };
                if acc != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Largest |(A·D·A† − I)_{ij}| as a float; 0 for a valid table.
    pub fn orthogonality_deviation(&self) -> f64 {
        let one = self.field.integer(1);
        let mut worst: f64 = 0.0;
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let mut ip = self.inner_product(a, b);
                if i == j {
                    ip = ip.sub(&one);
                }
                worst = worst.max(max_abs_f64(&ip));
                if !ip.is_zero() && worst == 0.0 {
                    worst = f64::MIN_POSITIVE;
                }
            }
        }
        worst
    }

    /// Class of g_j^k.
    pub fn power_class(&self, j: usize, k: u64) -> Option<usize> {
        self.powers
            .as_ref()
            .map(|p| p[j][(k % p[j].len() as u64) as usize])
    }

    /// Row index equal to χ^{σ(k)} for row i; uses the power-map identity
    /// χ^{σ(k)}(C) = χ(C^k) when power maps are known.
    fn galois_image(&self, i: usize, k: u64) -> usize {
        let row = &self.rows[i];
        let image: Vec<CyclotomicNumber> = match &self.powers {
            Some(_) => (0..self.num_classes())
                .map(|j| row[self.power_class(j, k).unwrap()].clone())
                .collect(),
            None => row.iter().map(|v| v.galois(k)).collect(),
        };
        self.rows
            .iter()
            .position(|r| *r == image)
            .expect("Galois conjugate of an irreducible character is irreducible")
    }

    /// Orbits of the Galois group of Q(ζ_m) on rows, each sorted, ordered by
    /// least member.
    pub fn galois_orbits(&self) -> Vec<Vec<usize>> {
        let h = self.rows.len();
        let mut orbit_of = vec![usize::MAX; h];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let units: Vec<u64> = (1..=self.exponent)
            .filter(|k| k.gcd(&self.exponent) == 1)
            .collect();
        for i in 0..h {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = units.iter().map(|&k| self.galois_image(i, k)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                orbit_of[m] = orbits.len();
            }
            orbits.push(members);
        }
        orbits
    }

    pub fn rational_table(&self) -> Result<RationalCharacterTable> {
        let orbits = self.galois_orbits();
        let h = self.num_classes();
        let mut rows = Vec::with_capacity(orbits.len());
        for orbit in &orbits {
            let mut row = Vec::with_capacity(h);
            for j in 0..h {
                let mut acc = self.field.zero();
                for &i in orbit {
                    acc = acc.add(&self.rows[i][j]);
                }
                row.push(acc.as_integer().ok_or_else(|| {
                    Error::Verification("Galois orbit sum is not integral".into())
                })?);
            }
            rows.push(row);
        }
        let t = RationalCharacterTable {
            data: self.data.clone(),
            orbit_sizes: orbits.iter().map(Vec::len).collect(),
            rows,
            orbits,
        };
        t.verify()?;
        Ok(t)
    }
}

/// Galois orbits of a computed table.
pub fn galois_orbits(t: &CharacterTable) -> Vec<Vec<usize>> {
    t.galois_orbits()
}

pub fn verify_orthogonality(t: &CharacterTable) -> bool {
    t.verify_orthogonality()
}

pub fn rational_character_table(t: &CharacterTable) -> Result<RationalCharacterTable> {
    t.rational_table()
}

impl RationalCharacterTable {
    /// Builds from integer rows; orbit sizes default to the self inner
    /// products. Rejects rows that are not pairwise orthogonal.
    pub fn from_rows(
        data: ClassData,
        rows: Vec<Vec<BigInt>>,
        orbit_sizes: Option<Vec<usize>>,
    ) -> Result<Self> {
        let h = data.num_classes();
        if rows.is_empty() || rows.iter().any(|r| r.len() != h) {
            return Err(Error::Dimension(format!(
                "rational rows must have {h} entries"
            )));
        }
        let mut t = RationalCharacterTable {
            data,
            rows,
            orbit_sizes: Vec::new(),
            orbits: Vec::new(),
        };
        let gram = t.gram();
        t.orbit_sizes = match orbit_sizes {
            Some(s) => s,
            None => gram
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    if r[i].is_integer() && r[i].is_positive() {
                        usize::try_from(r[i].to_integer()).unwrap_or(0)
                    } else {
                        0
                    }
                })
                .collect(),
        };
        t.verify()?;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r[0].clone()).collect()
    }

    /// A·D·Aᵗ.
    pub fn gram(&self) -> Vec<Vec<BigRational>> {
        let w = self.data.weights();
        self.rows
            .iter()
            .map(|a| {
                self.rows
                    .iter()
                    .map(|b| {
                        a.iter()
                            .zip(b)
                            .zip(&w)
                            .filter(|((x, y), _)| !x.is_zero() && !y.is_zero())
                            .map(|((x, y), wk)| BigRational::from_integer(x * y) * wk)
                            .fold(BigRational::zero(), |s, t| s + t)
                    })
                    .collect()
            })
            .collect()
    }

    /// A·D·Aᵗ = diag(orbit sizes) exactly; errors report the largest
    /// deviation.
    pub fn verify(&self) -> Result<()> {
        if self.orbit_sizes.len() != self.rows.len() {
            return Err(Error::Dimension("one orbit size per row required".into()));
        }
        let gram = self.gram();
        let mut worst = BigRational::zero();
        for (i, row) in gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j {
                    BigRational::from_integer(BigInt::from(self.orbit_sizes[i]))
                } else {
                    BigRational::zero()
                };
                let d = (v - expect).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        if worst.is_zero() && self.orbit_sizes.iter().all(|&s| s > 0) {
            Ok(())
        } else {
            Err(Error::Orthogonality(format!(
                "{:.6}",
                crate::expr::rational_to_f64(&worst)
            )))
        }
    }
}
