//! Restriction of characters to subgroups, decomposition over irreducibles,
//! and reduced bases of the image of the symmetric-group character ring.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::interp::{minimal_on_points, PointSet};
use super::SPolynomial;
use crate::chartab::{CharacterTable, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::linalg;
use crate::permcore::{ClassData, PermGroup};

/// Class of G containing each class representative of H.
pub fn class_map(g: &PermGroup, h: &PermGroup) -> Result<Vec<usize>> {
    if g.degree() != h.degree() {
        return Err(Error::ClassMap(format!(
            "degrees {} and {} differ",
            g.degree(),
            h.degree()
        )));
    }
    h.classes()
        .iter()
        .map(|c| g.class_containing(&c.representative))
        .collect()
}

/// Σ_k w_k a_k b_k for real rational class functions.
pub fn rational_inner_product(
    data: &ClassData,
    a: &[BigRational],
    b: &[BigRational],
) -> BigRational {
    data.weights()
        .iter()
        .zip(a.iter().zip(b))
        .fold(BigRational::zero(), |acc, (w, (x, y))| acc + w * x * y)
}

/// Integer coordinates of a class function over the irreducibles of `t`.
pub fn decompose(t: &CharacterTable, values: &[CyclotomicNumber]) -> Result<Vec<BigInt>> {
    if values.len() != t.num_classes() {
        return Err(Error::Dimension(format!(
            "{} values for {} classes",
            values.len(),
            t.num_classes()
        )));
    }
    let values: Vec<CyclotomicNumber> = values
        .iter()
        .map(|v| v.lift(t.field()))
        .collect::<Result<_>>()?;
    t.rows()
        .iter()
        .map(|row| {
            t.inner_product(&values, row).as_integer().ok_or_else(|| {
                Error::Verification("class function is not a virtual character".into())
            })
        })
        .collect()
}

pub fn decompose_rational(t: &CharacterTable, values: &[BigRational]) -> Result<Vec<BigInt>> {
    let f = t.field();
    decompose(
        t,
        &values
            .iter()
            .map(|v| f.rational(v.clone()))
            .collect::<Vec<_>>(),
    )
}

/// Row i: the i-th irreducible of G restricted to H, in the irreducible basis
/// of H. `map[k]` is the G-class of the k-th H-class.
pub fn restriction_matrix(
    tg: &CharacterTable,
    th: &CharacterTable,
    map: &[usize],
) -> Result<Vec<Vec<BigInt>>> {
    if map.len() != th.num_classes() || map.iter().any(|&k| k >= tg.num_classes()) {
        return Err(Error::ClassMap(
            "class map does not match the tables".into(),
        ));
    }
    for (k, &gk) in map.iter().enumerate() {
        if th.data().classes[k].cycle_type != tg.data().classes[gk].cycle_type {
            return Err(Error::ClassMap(format!(
                "class {k} maps to a class of another cycle type"
            )));
        }
    }
    let lcm = num_integer::lcm(tg.exponent(), th.exponent());
    let big = crate::chartab::CyclotomicField::new(lcm);
    tg.rows()
        .iter()
        .map(|row| {
            let restricted: Vec<CyclotomicNumber> = map
                .iter()
                .map(|&gk| row[gk].lift(&big))
                .collect::<Result<_>>()?;
            let coords = decompose_in(th, &restricted, &big)?;
            if coords.iter().any(Signed::is_negative) {
                return Err(Error::ClassMap(
                    "restriction has a negative multiplicity".into(),
                ));
            }
            Ok(coords)
        })
        .collect()
}

fn decompose_in(
    t: &CharacterTable,
    values: &[CyclotomicNumber],
    field: &std::sync::Arc<crate::chartab::CyclotomicField>,
) -> Result<Vec<BigInt>> {
    let w = t.weights();
    t.rows()
        .iter()
        .map(|row| {
            let mut acc = field.zero();
            for ((x, y), wk) in values.iter().zip(row).zip(&w) {
                acc = acc.add(&x.mul(&y.lift(field)?.conj()).scale(wk));
            }
            acc.as_integer()
                .ok_or_else(|| Error::ClassMap("restriction is not a virtual character".into()))
        })
        .collect()
}

/// A rational-valued virtual character of a fixed group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualCharacter {
    /// Value per conjugacy class.
    pub values: Vec<BigRational>,
    pub polynomial: Option<SPolynomial>,
    /// Multiplicities over the irreducibles.
    pub coordinates: Option<Vec<BigInt>>,
}

impl VirtualCharacter {
    pub fn from_values(t: &CharacterTable, values: Vec<BigRational>) -> Result<Self> {
        let coords = decompose_rational(t, &values)?;
        Ok(VirtualCharacter {
            values,
            polynomial: None,
            coordinates: Some(coords),
        })
    }

    pub fn degree(&self) -> BigRational {
        self.values[0].clone()
    }

    /// Nonnegative coordinates over irreducibles.
    pub fn is_genuine(&self) -> bool {
        self.coordinates
            .as_ref()
            .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    }

    pub fn norm(&self, data: &ClassData) -> BigRational {
        rational_inner_product(data, &self.values, &self.values)
    }
}

const NORM_CAP: usize = 64;

/// Nonnegative vectors c over `sizes` with Σ c_i² sizes_i = target.
fn vectors_of_norm(sizes: &[usize], target: usize) -> Vec<Vec<usize>> {
    fn go(sizes: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == sizes.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut c = 0;
        while c * c * sizes[i] <= left {
            cur[i] = c;
            go(sizes, i + 1, left - c * c * sizes[i], cur, out);
            c += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(sizes, 0, target, &mut vec![0; sizes.len()], &mut out);
    out
}

/// (sort key, coefficients on rational rows, class values, integer values).
type Candidate = (BigInt, Vec<BigInt>, Vec<BigRational>, Vec<BigInt>);

/// Basis of the lattice of virtual characters that factor through the class
/// points (the saturation of the Sym_n restriction image), made of genuine
/// characters chosen greedily by increasing ⟨χ,χ⟩, then degree, then
/// coordinates. The trivial character comes first; each element carries its
/// s-polynomial.
pub fn reduced_character_basis(t: &CharacterTable) -> Result<Vec<VirtualCharacter>> {
    let data = t.data();
    let ps = PointSet::new(data);
    let rank = ps.len();
    let rt = t.rational_table()?;
    let h = t.num_classes();

    // Orbit-sum coordinates of accepted elements. The target lattice is
    // saturated in the orbit-sum lattice, so primitivity can be tested there.
    let mut chosen: Vec<(Vec<BigRational>, Vec<BigInt>)> = Vec::new();
    let mut orbit_coords: Vec<Vec<BigInt>> = Vec::new();
    let mut accept = |values: Vec<BigRational>,
                      c: Vec<BigInt>,
                      chosen: &mut Vec<(Vec<BigRational>, Vec<BigInt>)>|
     -> Result<()> {
        if ps.collapse(&values).is_err() {
            return Ok(());
        }
        let mut trial = orbit_coords.clone();
        trial.push(c);
        let factors = linalg::invariant_factors(&trial);
        if factors.len() == trial.len() && factors.iter().all(|f| f.abs() == BigInt::from(1)) {
            orbit_coords = trial;
            let coords = decompose_rational(t, &values)?;
            chosen.push((values, coords));
        }
        Ok(())
    };

    let trivial = vec![BigRational::from_integer(1.into()); h];
    let mut unit = vec![BigInt::zero(); rt.len()];
    unit[0] = BigInt::from(1);
    accept(trivial.clone(), unit, &mut chosen)?;
    let mut norm = 1;
    while chosen.len() < rank {
        if norm > NORM_CAP {
            return Err(Error::Verification(
                "no genuine basis of the restriction image found".into(),
            ));
        }
        let mut candidates: Vec<Candidate> = Vec::new();
        for c in vectors_of_norm(&rt.orbit_sizes, norm) {
            let values: Vec<BigRational> = (0..h)
                .map(|j| {
                    let v: BigInt = c
                        .iter()
                        .zip(&rt.rows)
                        .map(|(&k, row)| BigInt::from(k) * &row[j])
                        .sum();
                    BigRational::from_integer(v)
                })
                .collect();
            if values == trivial {
                continue;
            }
            let mut coords = vec![BigInt::zero(); h];
            for (&k, orbit) in c.iter().zip(&rt.orbits) {
                for &i in orbit {
                    coords[i] = BigInt::from(k);
                }
            }
            candidates.push((
                values[0].to_integer(),
                coords,
                values,
                c.iter().map(|&k| BigInt::from(k)).collect(),
            ));
        }
        candidates.sort();
        for (_, _, values, c) in candidates {
            if chosen.len() == rank {
                break;
            }
            accept(values, c, &mut chosen)?;
        }
        norm += 1;
    }

    chosen
        .into_iter()
        .map(|(values, coords)| {
            let poly = minimal_on_points(&ps, &ps.collapse(&values)?)?;
            Ok(VirtualCharacter {
                values,
                polynomial: Some(poly),
                coordinates: Some(coords),
            })
        })
        .collect()
}

/// Values of an s-polynomial on the classes of a group.
pub fn class_values(p: &SPolynomial, data: &ClassData) -> Result<Vec<BigRational>> {
    data.classes
        .iter()
        .map(|c| super::evaluate(p, &super::ClassPoint::from_cycle_type(&c.cycle_type)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::permcore::catalog;

    fn sp(text: &str, n: usize) -> SPolynomial {
        SPolynomial::parse(text, n).unwrap()
    }

    #[test]
    fn sym4_to_d4_branching() {
        let g = catalog::group("Sym4").unwrap();
        let h = catalog::group("D4").unwrap();
        let (tg, th) = (character_table(&g).unwrap(), character_table(&h).unwrap());
        let map = class_map(&g, &h).unwrap();
        let m = restriction_matrix(&tg, &th, &map).unwrap();
        assert_eq!(m[0], [1, 0, 0, 0, 0].map(BigInt::from));
        let hd: Vec<u64> = th.degrees().into_iter().map(Option::unwrap).collect();
        for (row, d) in m.iter().zip(tg.degrees()) {
            let total: BigInt = row.iter().zip(&hd).map(|(a, &b)| a * BigInt::from(b)).sum();
            assert_eq!(total, BigInt::from(d.unwrap()));
        }
        // s3 restricts to an irreducible, s1 and s2 to sums of two
        let d = ClassData::from_group(&h);
        for (text, parts) in [("s1", 2), ("s2", 2), ("s3", 1)] {
            let v = class_values(&sp(text, 3), &d).unwrap();
            let c = decompose_rational(&th, &v).unwrap();
            assert_eq!(c.iter().filter(|x| !x.is_zero()).count(), parts, "{text}");
            assert!(c.iter().all(|x| !x.is_negative()));
        }
    }

    #[test]
    fn reduced_bases_degree_eight() {
        let d4 = character_table(&catalog::group("D4x8").unwrap()).unwrap();
        let q8 = character_table(&catalog::group("Q8").unwrap()).unwrap();
        let bd = reduced_character_basis(&d4).unwrap();
        let bq = reduced_character_basis(&q8).unwrap();
        let polys = |b: &[VirtualCharacter]| -> Vec<String> {
            b.iter()
                .map(|v| v.polynomial.as_ref().unwrap().to_string())
                .collect()
        };
        assert_eq!(
            polys(&bd),
            ["1", "-s1 + 1/2*s2 - 1/2", polys(&bd)[2].as_str()]
        );
        assert_eq!(polys(&bq)[1], "-s1 + 1/2*s2 - 3/2");
        let norms: Vec<BigRational> = bd.iter().map(|v| v.norm(d4.data())).collect();
        assert_eq!(
            norms,
            [1, 2, 3].map(|x| BigRational::from_integer(x.into()))
        );
        assert!(bd.iter().chain(&bq).all(VirtualCharacter::is_genuine));
    }
}
