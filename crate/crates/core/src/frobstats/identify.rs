//! Candidate Galois groups: exclusion by kernel-ideal witnesses, then Gram
//! comparison on each survivor's reduced character basis.

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::basis::TestBasis;
use super::gram::{
    empirical_gram, error_matrix, error_norms, rational_string, round_matrix, theoretical_gram,
};
use super::report::STABLE_THRESHOLD;
use super::sample::{sample_primes_with, PrimeSample};
use crate::charparam::{
    evaluate, kernel_ideal, reduced_character_basis, separating_polynomial, SPolynomial,
};
use crate::chartab::{character_table, ImportedTable};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::permcore::{ClassData, PermGroup};
use crate::polyarith::{CycleType, IntPolynomial};

/// A prime whose Frobenius point lies off the class points of a group.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub prime: u64,
    pub cycle_type: CycleType,
    pub generator: SPolynomial,
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Exclusion {
    Excluded(Witness),
    Consistent,
}

/// Scans the sample in prime order. At the first prime outside the class
/// points, reports a kernel generator of degree ≤ `bound` that is nonzero
/// there, or the interpolated separating polynomial when all of them vanish.
pub fn exclude_by_kernel(sample: &PrimeSample, data: &ClassData, bound: u32) -> Result<Exclusion> {
    let types: Vec<&CycleType> = data.classes.iter().map(|c| &c.cycle_type).collect();
    let kernel = kernel_ideal(data, bound)?;
    for e in &sample.entries {
        if types.contains(&&e.cycle_type) {
            continue;
        }
        for g in &kernel.generators {
            let v = evaluate(g, &e.point)?;
            if !v.is_zero() {
                return Ok(Exclusion::Excluded(Witness {
                    prime: e.prime,
                    cycle_type: e.cycle_type.clone(),
                    generator: g.clone(),
                    value: v,
                }));
            }
        }
        let g = separating_polynomial(data, &e.cycle_type)?
            .expect("cycle type is off the class points");
        let v = evaluate(&g, &e.point)?;
        return Ok(Exclusion::Excluded(Witness {
            prime: e.prime,
            cycle_type: e.cycle_type.clone(),
            generator: g,
            value: v,
        }));
    }
    Ok(Exclusion::Consistent)
}

#[derive(Clone, Debug)]
pub enum CandidateSource {
    Group(PermGroup),
    Imported(ImportedTable),
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub name: String,
    pub source: CandidateSource,
}

impl Candidate {
    pub fn group(g: PermGroup) -> Self {
        Candidate {
            name: g.name().to_string(),
            source: CandidateSource::Group(g),
        }
    }

    pub fn data(&self) -> ClassData {
        match &self.source {
            CandidateSource::Group(g) => ClassData::from_group(g),
            CandidateSource::Imported(t) => t.class_data().clone(),
        }
    }

    /// Reduced character basis when a full table is available, otherwise
    /// (1, s1, …, s_{n-1}).
    pub fn test_basis(&self) -> Result<TestBasis> {
        let table = match &self.source {
            CandidateSource::Group(g) => Some(character_table(g)?),
            CandidateSource::Imported(ImportedTable::Full(t)) => Some(t.clone()),
            CandidateSource::Imported(_) => None,
        };
        match table {
            Some(t) => {
                let nvars = t.data().degree - 1;
                let polys = reduced_character_basis(&t)?
                    .into_iter()
                    .skip(1)
                    .map(|c| {
                        c.polynomial
                            .expect("reduced basis elements carry polynomials")
                    })
                    .collect();
                TestBasis::from_polys(nvars, polys)
            }
            None => Ok(TestBasis::symmetric(self.data().degree)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CandidateStatus {
    Excluded(Witness),
    /// Final ℓ∞ against M(G) below 0.5.
    Consistent,
    Inconsistent,
}

#[derive(Clone, Debug)]
pub struct CandidateVerdict {
    pub name: String,
    pub status: CandidateStatus,
    pub linf: Option<f64>,
    pub basis: Vec<String>,
    pub theoretical: Option<QMatrix>,
    pub empirical: Option<QMatrix>,
    pub cycle_type_weights: Vec<(CycleType, BigRational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Unique(String),
    Multiple(Vec<String>),
    NoneConsistent,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Unique(_) => 0,
            Outcome::Multiple(_) => 10,
            Outcome::NoneConsistent => 11,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentifyReport {
    pub sample_size: usize,
    pub last_prime: u64,
    /// Consistent by ℓ∞, then inconsistent by ℓ∞, then excluded; ties keep
    /// the candidate order.
    pub verdicts: Vec<CandidateVerdict>,
    /// Groups of surviving candidates with identical class points and Haar
    /// images, which cycle data cannot separate.
    pub indistinguishable: Vec<Vec<String>>,
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug)]
pub struct IdentifySchedule {
    pub count: usize,
    pub workers: usize,
    pub degree_bound: u32,
}

impl Default for IdentifySchedule {
    fn default() -> Self {
        IdentifySchedule {
            count: 1024,
            workers: 1,
            degree_bound: 2,
        }
    }
}

pub fn identify_group(
    f: &IntPolynomial,
    candidates: &[Candidate],
    schedule: IdentifySchedule,
) -> Result<IdentifyReport> {
    if candidates.is_empty() {
        return Err(Error::Invalid("no candidate groups".into()));
    }
    for c in candidates {
        if c.data().degree != f.degree() {
            return Err(Error::Dimension(format!(
                "{} has degree {}, the polynomial {}",
                c.name,
                c.data().degree,
                f.degree()
            )));
        }
    }
    let sample = sample_primes_with(f, schedule.count, 2, schedule.workers)?;
    identify_with_sample(&sample, candidates, schedule.degree_bound)
}

pub fn identify_with_sample(
    sample: &PrimeSample,
    candidates: &[Candidate],
    bound: u32,
) -> Result<IdentifyReport> {
    if candidates.is_empty() {
        return Err(Error::Invalid("no candidate groups".into()));
    }
    let mut verdicts = Vec::with_capacity(candidates.len());
    for c in candidates {
        let data = c.data();
        let weights = data.cycle_type_weights();
        let v = match exclude_by_kernel(sample, &data, bound)? {
            Exclusion::Excluded(w) => CandidateVerdict {
                name: c.name.clone(),
                status: CandidateStatus::Excluded(w),
                linf: None,
                basis: Vec::new(),
                theoretical: None,
                empirical: None,
                cycle_type_weights: weights,
            },
            Exclusion::Consistent => {
                let basis = c.test_basis()?;
                let m = theoretical_gram(&data, &basis)?;
                let e = empirical_gram(std::slice::from_ref(sample), &basis)?;
                let linf = error_norms(&error_matrix(&e, &m)?)?.linf;
                let status = if linf < STABLE_THRESHOLD && round_matrix(&e).ambiguous.is_empty() {
                    CandidateStatus::Consistent
                } else {
                    CandidateStatus::Inconsistent
                };
                CandidateVerdict {
                    name: c.name.clone(),
                    status,
                    linf: Some(linf),
                    basis: basis.labels,
                    theoretical: Some(m),
                    empirical: Some(e),
                    cycle_type_weights: weights,
                }
            }
        };
        verdicts.push(v);
    }
    let rank = |v: &CandidateVerdict| match v.status {
        CandidateStatus::Consistent => 0,
        CandidateStatus::Inconsistent => 1,
        CandidateStatus::Excluded(_) => 2,
    };
    verdicts.sort_by(|a, b| {
        rank(a)
            .cmp(&rank(b))
            .then(a.linf.unwrap_or(0.0).total_cmp(&b.linf.unwrap_or(0.0)))
    });

    let mut indistinguishable: Vec<Vec<String>> = Vec::new();
    let mut seen = vec![false; verdicts.len()];
    for i in 0..verdicts.len() {
        if seen[i] || matches!(verdicts[i].status, CandidateStatus::Excluded(_)) {
            continue;
        }
        let class: Vec<usize> = (i..verdicts.len())
            .filter(|&j| {
                !matches!(verdicts[j].status, CandidateStatus::Excluded(_))
                    && verdicts[j].cycle_type_weights == verdicts[i].cycle_type_weights
            })
            .collect();
        for &j in &class {
            seen[j] = true;
        }
        if class.len() > 1 {
            indistinguishable.push(class.iter().map(|&j| verdicts[j].name.clone()).collect());
        }
    }

    let consistent: Vec<String> = verdicts
        .iter()
        .filter(|v| v.status == CandidateStatus::Consistent)
        .map(|v| v.name.clone())
        .collect();
    let outcome = match consistent.len() {
        0 => Outcome::NoneConsistent,
        1 => Outcome::Unique(consistent[0].clone()),
        _ => Outcome::Multiple(consistent),
    };
    Ok(IdentifyReport {
        sample_size: sample.len(),
        last_prime: sample.entries.last().map_or(0, |e| e.prime),
        verdicts,
        indistinguishable,
        outcome,
    })
}

fn matrix_json(m: &QMatrix) -> Value {
    json!(m
        .iter()
        .map(|r| r.iter().map(rational_string).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

impl IdentifyReport {
    pub fn to_json(&self) -> Value {
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| {
                let mut o = json!({ "group": v.name });
                match &v.status {
                    CandidateStatus::Excluded(w) => {
                        o["status"] = json!("excluded");
                        o["witness"] = json!({
                            "prime": w.prime,
                            "cycle_type": w.cycle_type.to_string(),
                            "generator": w.generator.to_string(),
                            "value": rational_string(&w.value),
                        });
                    }
                    s => {
                        o["status"] = json!(if *s == CandidateStatus::Consistent {
                            "consistent"
                        } else {
                            "inconsistent"
                        });
                        o["linf"] = json!(format!("{:.6}", v.linf.unwrap_or(0.0))
                            .parse::<f64>()
                            .unwrap());
                        o["basis"] = json!(v.basis);
                        if let Some(m) = &v.theoretical {
                            o["theoretical"] = matrix_json(m);
                        }
                        if let Some(e) = &v.empirical {
                            o["rounded"] = json!(round_matrix(e)
                                .values
                                .iter()
                                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                                .collect::<Vec<_>>());
                        }
                    }
                }
                o
            })
            .collect();
        let (outcome, groups) = match &self.outcome {
            Outcome::Unique(g) => ("unique", vec![g.clone()]),
            Outcome::Multiple(gs) => ("multiple", gs.clone()),
            Outcome::NoneConsistent => ("none", Vec::new()),
        };
        let mut out = json!({
            "sample_size": self.sample_size,
            "last_prime": self.last_prime,
            "verdicts": verdicts,
            "outcome": outcome,
            "consistent": groups,
            "indistinguishable": self.indistinguishable,
        });
        if !self.indistinguishable.is_empty() {
            out["note"] =
                json!("indistinguishable by cycle data: identical class points and Haar images");
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut s = format!("primes: {} (last {})\n", self.sample_size, self.last_prime);
        for v in &self.verdicts {
            match &v.status {
                CandidateStatus::Excluded(w) => s.push_str(&format!(
                    "{:<8} excluded at p = {} ({}): {} = {}\n",
                    v.name,
                    w.prime,
                    w.cycle_type,
                    w.generator,
                    rational_string(&w.value)
                )),
                st => s.push_str(&format!(
                    "{:<8} {} (linf {:.6} on {} characters)\n",
                    v.name,
                    if *st == CandidateStatus::Consistent {
                        "consistent"
                    } else {
                        "inconsistent"
                    },
                    v.linf.unwrap_or(0.0),
                    v.basis.len()
                )),
            }
        }
        for g in &self.indistinguishable {
            s.push_str(&format!(
                "indistinguishable by cycle data: {}\n",
                g.join(", ")
            ));
        }
        s.push_str(&match &self.outcome {
            Outcome::Unique(g) => format!("identified: {g}\n"),
            Outcome::Multiple(gs) => format!("several candidates remain: {}\n", gs.join(", ")),
            Outcome::NoneConsistent => "no candidate remains\n".to_string(),
        });
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobstats::sample::sample_primes;
    use crate::permcore::catalog;

    fn data(name: &str) -> ClassData {
        ClassData::from_group(&catalog::group(name).unwrap())
    }

    #[test]
    fn d4_excludes_generic_quartic() {
        let f = IntPolynomial::parse("x^4 + x + 1").unwrap();
        let s = sample_primes(&f, 10, 2).unwrap();
        match exclude_by_kernel(&s, &data("D4"), 2).unwrap() {
            Exclusion::Excluded(w) => {
                assert!(!w.value.is_zero());
                assert!(w.prime <= s.entries.last().unwrap().prime);
            }
            Exclusion::Consistent => panic!("D4 not excluded"),
        }
        let g = IntPolynomial::parse("x^4 - 2x^2 + 2").unwrap();
        let s = sample_primes(&g, 500, 2).unwrap();
        assert_eq!(
            exclude_by_kernel(&s, &data("D4"), 2).unwrap(),
            Exclusion::Consistent
        );
    }

    #[test]
    fn separating_witness_for_high_bound_gaps() {
        // Sym4 has every quartic cycle type, so only C4 etc. can be excluded
        let f = IntPolynomial::parse("x^4 + x + 1").unwrap();
        let s = sample_primes(&f, 40, 2).unwrap();
        for name in ["A4", "C4", "V4"] {
            assert!(
                matches!(
                    exclude_by_kernel(&s, &data(name), 1).unwrap(),
                    Exclusion::Excluded(_)
                ),
                "{name}"
            );
        }
        assert_eq!(
            exclude_by_kernel(&s, &data("Sym4"), 2).unwrap(),
            Exclusion::Consistent
        );
    }

    #[test]
    fn quartic_identification() {
        let cands: Vec<Candidate> = catalog::candidate_set("deg4")
            .iter()
            .map(|n| Candidate::group(catalog::group(n).unwrap()))
            .collect();
        let sched = IdentifySchedule {
            count: 256,
            ..Default::default()
        };
        let r =
            identify_group(&IntPolynomial::parse("x^4 + x + 1").unwrap(), &cands, sched).unwrap();
        assert_eq!(r.outcome, Outcome::Unique("Sym4".into()));
        let d4 = r.verdicts.iter().find(|v| v.name == "D4").unwrap();
        assert!(matches!(d4.status, CandidateStatus::Excluded(_)));
        let r = identify_group(
            &IntPolynomial::parse("x^4 - 2x^2 + 2").unwrap(),
            &cands,
            sched,
        )
        .unwrap();
        assert_eq!(r.outcome, Outcome::Unique("D4".into()));
        assert_eq!(r.outcome.exit_code(), 0);
    }
}
