//! Structural invariants checked against independent oracles.

use std::collections::BTreeSet;

use frobchar::charparam::{class_values, reduced_character_basis, s_vector, ClassPoint};
use frobchar::chartab::character_table;
use frobchar::frobstats::{
    empirical_gram, gram_of_class_functions, kronecker, sample_primes, theoretical_gram,
    PrimeSample, SampleEntry, TestBasis, TestFunction,
};
use frobchar::permcore::{catalog, ClassData, Permutation};
use frobchar::polyarith::{CycleType, IntPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// det(xI − M) by Faddeev–LeVerrier, ascending coefficients.
fn charpoly(m: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = M·M_{k-1} + c_{n-k+1} I
        let prev = mk.clone();
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for l in 0..n {
                    acc += &m[i][l] * &prev[l][j];
                }
                if i == j {
                    acc += &coeffs[n - k + 1];
                }
                mk[i][j] = acc;
            }
        }
        let mut tr = BigRational::zero();
        for i in 0..n {
            let mut acc = BigRational::zero();
            for l in 0..n {
                acc += &m[i][l] * &mk[l][i];
            }
            tr += acc;
        }
        coeffs[n - k] = -tr / q(k as i64);
    }
    coeffs
}

/// Matrix of a permutation on the span of e_i − e_{i+1}.
fn standard_matrix(images: &[usize]) -> Vec<Vec<BigRational>> {
    let n = images.len();
    let mut m = vec![vec![BigRational::zero(); n - 1]; n - 1];
    // σ(e_j − e_{j+1}) = e_{σj} − e_{σ(j+1)}; e_a − e_b = Σ_{a ≤ i < b} f_i
    for j in 0..n - 1 {
        let (a, b) = (images[j], images[j + 1]);
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        for row in m.iter_mut().take(hi).skip(lo) {
            row[j] += q(sign);
        }
    }
    m
}

fn cycle_type_of(images: &[usize]) -> CycleType {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for s in 0..n {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    CycleType::new(parts).unwrap()
}

#[test]
fn s_map_is_injective_up_to_degree_twelve() {
    for n in 2..=12u32 {
        let types = CycleType::all(n);
        let points: BTreeSet<Vec<BigInt>> = types.iter().map(s_vector).collect();
        assert_eq!(points.len(), types.len(), "degree {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn standard_representation_charpoly_is_s(
        images in (2usize..=8).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    ) {
        let cp = charpoly(&standard_matrix(&images));
        let s = s_vector(&cycle_type_of(&images));
        let n = images.len();
        // coefficient of x^{n-1-k} is (−1)^k s_k
        for k in 1..n {
            let expect = if k % 2 == 1 { -q(1) } else { q(1) } * BigRational::from_integer(s[k - 1].clone());
            prop_assert_eq!(&cp[n - 1 - k], &expect);
        }
    }

    #[test]
    fn conjugation_preserves_cycle_type(
        (a, b) in (2usize..=10).prop_flat_map(|n| {
            let base = Just((1..=n).collect::<Vec<_>>());
            (base.clone().prop_shuffle(), base.prop_shuffle())
        })
    ) {
        let g = Permutation::from_images(&a).unwrap();
        let h = Permutation::from_images(&b).unwrap();
        prop_assert_eq!(g.conjugate_by(&h).cycle_type(), g.cycle_type());
    }

    #[test]
    fn kronecker_matches_euler_oracle(d in prop::sample::select(vec![-4i64, -3, -7, -8, 5, 8, 12, 13, -15, 17, -20, 21]),
                                      idx in 0usize..60) {
        let p = primal::Primes::all().nth(idx + 1).unwrap() as u64;
        let r = d.rem_euclid(p as i64) as u64;
        let expect = if r == 0 {
            0
        } else if (1..p).any(|x| x * x % p == r) {
            1
        } else {
            -1
        };
        prop_assert_eq!(kronecker(d, p), expect);
    }
}

#[test]
fn catalog_tables_are_orthogonal_and_centred() {
    for name in catalog::names() {
        let g = catalog::group(name).unwrap();
        let t = character_table(&g).unwrap();
        assert!(t.verify_orthogonality(), "{name}");
        let rt = t.rational_table().unwrap();
        let w = t.data().weights();
        assert_eq!(
            w.iter().fold(BigRational::zero(), |a, x| a + x),
            BigRational::one()
        );
        for row in rt.rows.iter().skip(1) {
            let mean = row.iter().zip(&w).fold(BigRational::zero(), |a, (v, wk)| {
                a + BigRational::from_integer(v.clone()) * wk
            });
            assert!(
                mean.is_zero(),
                "{name}: nontrivial rational character with nonzero mean"
            );
        }
    }
}

/// Each class contributes |C| copies of its point, so the sample mean is
/// the Haar mean.
fn haar_sample(data: &ClassData) -> PrimeSample {
    let mut entries = Vec::new();
    let mut fake = 0;
    for c in &data.classes {
        for _ in 0..c.size {
            fake += 1;
            entries.push(SampleEntry {
                prime: fake,
                cycle_type: c.cycle_type.clone(),
                point: ClassPoint::from_cycle_type(&c.cycle_type),
            });
        }
    }
    PrimeSample {
        polynomial: IntPolynomial::parse("x").unwrap(),
        entries,
        skipped: Vec::new(),
    }
}

#[test]
fn haar_weighted_sample_reproduces_theoretical_gram() {
    for name in catalog::names() {
        let g = catalog::group(name).unwrap();
        if g.order() > 2000 {
            continue;
        }
        let data = ClassData::from_group(&g);
        let t = character_table(&g).unwrap();
        let polys: Vec<_> = reduced_character_basis(&t)
            .unwrap()
            .into_iter()
            .skip(1)
            .map(|c| c.polynomial.unwrap())
            .collect();
        let reduced = TestBasis::from_polys(data.degree - 1, polys).unwrap();
        for basis in [TestBasis::symmetric(data.degree), reduced] {
            let e = empirical_gram(&[haar_sample(&data)], &basis).unwrap();
            assert_eq!(e, theoretical_gram(&data, &basis).unwrap(), "{name}");
            let columns: Vec<Vec<BigRational>> = basis
                .functions
                .iter()
                .map(|f| match f {
                    TestFunction::Poly { poly, .. } => class_values(poly, &data).unwrap(),
                    TestFunction::Kronecker { .. } => unreachable!(),
                })
                .collect();
            assert_eq!(e, gram_of_class_functions(&data, &columns), "{name}");
        }
    }
}

#[test]
fn chebotarev_frequencies_for_generic_quartic() {
    let f = IntPolynomial::parse("x^4 + x + 1").unwrap();
    let s = sample_primes(&f, 10_000, 2).unwrap();
    let data = ClassData::from_group(&catalog::group("Sym4").unwrap());
    for (ct, w) in data.cycle_type_weights() {
        let hits = s.entries.iter().filter(|e| e.cycle_type == ct).count();
        let freq = hits as f64 / s.len() as f64;
        let expect = w.numer().to_string().parse::<f64>().unwrap()
            / w.denom().to_string().parse::<f64>().unwrap();
        assert!((freq - expect).abs() < 0.02, "{ct}: {freq} vs {expect}");
    }
}
