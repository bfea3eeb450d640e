//! Gram reports over growing prime samples and their renderings.

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use super::basis::TestBasis;
use super::gram::{
    error_matrix, error_norms, frob_keys, gram_from_histogram, key_values, rational_string,
    round_matrix, Histogram, Norms, Rounding,
};
use super::sample::{joint_sample, PrimeSample};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::permcore::int_json;
use crate::polyarith::IntPolynomial;

/// ℓ∞ threshold below which the empirical Gram rounds to M(G).
pub const STABLE_THRESHOLD: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatchNorms {
    pub batch: usize,
    pub primes: usize,
    pub last_prime: u64,
    #[serde(flatten)]
    pub norms: Norms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// ℓ∞ < 0.5 against M(G) at the last batch, no ambiguous entries.
    Matches,
    Differs,
    /// Some entry lies within 1e-9 of a half-integer.
    Ambiguous,
    /// No theoretical matrix supplied.
    Unreferenced,
}

#[derive(Clone, Debug)]
pub struct GramReport {
    pub labels: Vec<String>,
    pub sample_size: usize,
    pub last_prime: u64,
    pub empirical: QMatrix,
    pub theoretical: Option<QMatrix>,
    pub rounding: Rounding,
    pub batches: Vec<BatchNorms>,
    /// Least batch k with ℓ∞ < 0.5 at every batch k..=horizon.
    pub stable_from: Option<usize>,
    /// Number of batches computed; stability is only known up to here.
    pub horizon: usize,
    pub verdict: Verdict,
}

/// Cumulative Gram matrices at |S| = increment·k, k = 1..=batches, reusing
/// one running histogram.
pub fn gram_report(
    samples: &[PrimeSample],
    basis: &TestBasis,
    theoretical: Option<QMatrix>,
    increment: usize,
    batches: usize,
) -> Result<GramReport> {
    if increment == 0 || batches == 0 {
        return Err(Error::Invalid("schedule must be positive".into()));
    }
    let keys = frob_keys(samples, basis)?;
    let needed = increment * batches;
    if keys.len() < needed {
        return Err(Error::Invalid(format!(
            "{needed} primes needed, {} sampled",
            keys.len()
        )));
    }
    if let Some(m) = &theoretical {
        if m.len() != basis.len() {
            return Err(Error::Dimension(
                "theoretical Gram does not match the basis".into(),
            ));
        }
    }
    let mut hist = Histogram::default();
    let mut out = Vec::with_capacity(batches);
    let mut last = None;
    for k in 1..=batches {
        for key in &keys[(k - 1) * increment..k * increment] {
            hist.add(key.clone(), 1.into());
        }
        let e = gram_from_histogram(basis, &hist)?;
        if let Some(m) = &theoretical {
            out.push(BatchNorms {
                batch: k,
                primes: k * increment,
                last_prime: samples[0].entries[k * increment - 1].prime,
                norms: error_norms(&error_matrix(&e, m)?)?,
            });
        }
        last = Some(e);
    }
    let empirical = last.expect("at least one batch");
    let stable_from = if theoretical.is_some() {
        let mut m = None;
        for b in out.iter().rev() {
            if b.norms.linf < STABLE_THRESHOLD {
                m = Some(b.batch);
            } else {
                break;
            }
        }
        m
    } else {
        None
    };
    let rounding = round_matrix(&empirical);
    let verdict = match (&theoretical, out.last()) {
        (None, _) => Verdict::Unreferenced,
        _ if !rounding.ambiguous.is_empty() => Verdict::Ambiguous,
        (Some(_), Some(b)) if b.norms.linf < STABLE_THRESHOLD => Verdict::Matches,
        _ => Verdict::Differs,
    };
    Ok(GramReport {
        labels: basis.labels.clone(),
        sample_size: needed,
        last_prime: samples[0].entries[needed - 1].prime,
        empirical,
        theoretical,
        rounding,
        batches: out,
        stable_from,
        horizon: batches,
        verdict,
    })
}

/// Samples the first increment·max_batches primes unramified for every
/// polynomial (and coprime to every quadratic modulus of the basis), then
/// reports per-batch norms against `theoretical`.
pub fn convergence_run(
    polys: &[IntPolynomial],
    basis: &TestBasis,
    theoretical: Option<QMatrix>,
    increment: usize,
    max_batches: usize,
    workers: usize,
) -> Result<GramReport> {
    if increment == 0 || max_batches == 0 {
        return Err(Error::Invalid("schedule must be positive".into()));
    }
    let samples = joint_sample(
        polys,
        &basis.kronecker_moduli(),
        increment * max_batches,
        2,
        workers,
    )?;
    gram_report(&samples, basis, theoretical, increment, max_batches)
}

fn matrix_json(m: &QMatrix) -> Value {
    json!(m
        .iter()
        .map(|r| r.iter().map(rational_string).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

impl GramReport {
    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.labels,
            "sample_size": self.sample_size,
            "last_prime": self.last_prime,
            "empirical": matrix_json(&self.empirical),
            "rounded": self.rounding.values.iter()
                .map(|r| r.iter().map(|x| x.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "ambiguous": self.rounding.ambiguous,
            "theoretical": self.theoretical.as_ref().map(matrix_json),
            "batches": self.batches.iter().map(|b| json!({
                "batch": b.batch,
                "primes": b.primes,
                "last_prime": b.last_prime,
                "l2": fmt6(b.norms.l2).parse::<f64>().unwrap(),
                "l8": fmt6(b.norms.l8).parse::<f64>().unwrap(),
                "linf": fmt6(b.norms.linf).parse::<f64>().unwrap(),
            })).collect::<Vec<_>>(),
            "stable_from": self.stable_from,
            "horizon": self.horizon,
            "horizon_limited": true,
            "verdict": self.verdict,
        })
    }

    /// Plain-text rendering with the three-column norm layout.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("basis: {}\n", self.labels.join(", ")));
        s.push_str(&format!(
            "primes: {} (last {})\n",
            self.sample_size, self.last_prime
        ));
        s.push_str("empirical Gram, rounded:\n");
        s.push_str(&integer_rows(&self.rounding.values));
        if let Some(m) = &self.theoretical {
            s.push_str("theoretical Gram:\n");
            let w = m
                .iter()
                .flatten()
                .map(|x| rational_string(x).len())
                .max()
                .unwrap_or(1);
            for row in m {
                let cells: Vec<String> = row
                    .iter()
                    .map(|x| format!("{:>w$}", rational_string(x)))
                    .collect();
                s.push_str(&format!("  [{}]\n", cells.join(" ")));
            }
        }
        if !self.rounding.ambiguous.is_empty() {
            s.push_str(&format!(
                "ambiguous entries: {:?}\n",
                self.rounding.ambiguous
            ));
        }
        if !self.batches.is_empty() {
            s.push_str("batch   primes   ||Z||_2      ||Z||_8      ||Z||_inf\n");
            for b in &self.batches {
                s.push_str(&format!(
                    "{:>4}: {:>8}   {} < {} < {}\n",
                    b.batch,
                    b.primes,
                    fmt6(b.norms.l2),
                    fmt6(b.norms.l8),
                    fmt6(b.norms.linf)
                ));
            }
            match self.stable_from {
                Some(k) => s.push_str(&format!(
                    "stable from batch {k} up to the computed horizon (batch {})\n",
                    self.horizon
                )),
                None => s.push_str(&format!("not stable at batch {}\n", self.horizon)),
            }
        }
        s.push_str(&format!(
            "verdict: {}\n",
            serde_json::to_value(self.verdict)
                .unwrap()
                .as_str()
                .unwrap()
        ));
        s
    }
}

pub(crate) fn integer_rows<T: std::fmt::Display>(rows: &[Vec<T>]) -> String {
    let w = rows
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| format!("{:>w$}", x.to_string())).collect();
            format!("  [{}]\n", cells.join(" "))
        })
        .collect()
}

/// One CSV row per prime: p, cycle type and s-vector of each polynomial,
/// then the basis values.
pub fn sample_csv(samples: &[PrimeSample], basis: Option<&TestBasis>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["p".to_string()];
    for i in 0..samples.len() {
        let suffix = if samples.len() > 1 {
            format!("_{i}")
        } else {
            String::new()
        };
        header.push(format!("cycle_type{suffix}"));
        header.push(format!("svector{suffix}"));
    }
    if let Some(b) = basis {
        header.extend(b.labels.iter().cloned());
    }
    w.write_record(&header).map_err(csv_err)?;
    let keys = match basis {
        Some(b) => Some(frob_keys(samples, b)?),
        None => None,
    };
    for i in 0..samples.first().map_or(0, PrimeSample::len) {
        let mut rec = vec![samples[0].entries[i].prime.to_string()];
        for s in samples {
            let e = &s.entries[i];
            rec.push(e.cycle_type.to_string());
            rec.push(e.point.to_string());
        }
        if let (Some(b), Some(keys)) = (basis, &keys) {
            rec.extend(key_values(b, &keys[i])?.iter().map(rational_string));
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Invalid(format!("csv: {e}"))
}

/// Sample as JSON lines: p, then cycle type and s-vector per polynomial,
/// then the basis values.
pub fn sample_json_lines(samples: &[PrimeSample], basis: Option<&TestBasis>) -> Result<String> {
    let keys = match basis {
        Some(b) => Some(frob_keys(samples, b)?),
        None => None,
    };
    let mut out = String::new();
    for i in 0..samples.first().map_or(0, PrimeSample::len) {
        let data: Vec<Value> = samples
            .iter()
            .map(|s| {
                let e = &s.entries[i];
                json!({
                    "cycle_type": e.cycle_type.parts(),
                    "svector": e.point.svector.iter().map(int_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut line = json!({ "p": samples[0].entries[i].prime });
        if let [single] = data.as_slice() {
            line["cycle_type"] = single["cycle_type"].clone();
            line["svector"] = single["svector"].clone();
        } else {
            line["data"] = json!(data);
        }
        if let (Some(b), Some(keys)) = (basis, &keys) {
            let values = key_values(b, &keys[i])?;
            line["values"] = json!(values.iter().map(rational_string).collect::<Vec<_>>());
        }
        out.push_str(&line.to_string());
        out.push('\n');
    }
    Ok(out)
}

/// Exact matrix equality helper for callers comparing against printed
/// integer matrices.
pub fn equals_integer_matrix(m: &QMatrix, expected: &[Vec<i64>]) -> bool {
    m.len() == expected.len()
        && m.iter().zip(expected).all(|(a, b)| {
            a.len() == b.len()
                && a.iter()
                    .zip(b)
                    .all(|(x, &y)| *x == BigRational::from_integer(y.into()))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobstats::gram::theoretical_gram;
    use crate::permcore::{catalog, ClassData};

    #[test]
    fn sym4_convergence_report() {
        let f = IntPolynomial::parse("x^4 + x + 1").unwrap();
        let data = ClassData::from_group(&catalog::group("Sym4").unwrap());
        let b = TestBasis::parse(3, &["s1", "s2", "s3", "s1^2 - s1 - s2 - 1"]).unwrap();
        let m = theoretical_gram(&data, &b).unwrap();
        let r = convergence_run(&[f], &b, Some(m), 200, 5, 2).unwrap();
        assert_eq!(r.batches.len(), 5);
        for b in &r.batches {
            assert!(b.norms.l2 <= b.norms.l8 + 1e-12 && b.norms.l8 <= b.norms.linf + 1e-12);
        }
        assert_eq!(r.verdict, Verdict::Matches);
        let t = r.to_table();
        assert!(t.contains("||Z||_inf"));
        assert!(r.to_json()["batches"].as_array().unwrap().len() == 5);
    }

    #[test]
    fn csv_has_one_row_per_prime() {
        let f = IntPolynomial::parse("x^4 + x + 1").unwrap();
        let s = joint_sample(&[f], &[], 16, 2, 1).unwrap();
        let b = TestBasis::symmetric(4);
        let text = sample_csv(&s, Some(&b)).unwrap();
        assert_eq!(text.lines().count(), 17);
        assert!(text.lines().nth(1).unwrap().starts_with("2,"));
    }
}
