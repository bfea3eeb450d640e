//! One function per subcommand; each returns its exit code and stdout text.

use frobchar::charparam::{kernel_ideal, restriction_image_rank};
use frobchar::chartab::{CharacterTable, ImportedTable};
use frobchar::corpus;
use frobchar::frobstats::{
    convergence_run, gram_report, identify_group, joint_gram, joint_sample, rational_string,
    round_matrix, sample_csv, sample_json_lines, theoretical_gram, theoretical_gram_with,
    Candidate, CandidateSource, IdentifySchedule, TestBasis,
};
use frobchar::linalg::QMatrix;
use frobchar::permcore::{catalog, ClassData};
use frobchar::polyarith::IntPolynomial;
use frobchar::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::args::{Command, Format, GroupArgs, SampleArgs};
use crate::resolve::{self, GroupSource};

pub struct Output {
    pub code: i32,
    pub text: String,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { code: 0, text }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn matrix_json(m: &QMatrix) -> Value {
    json!(m
        .iter()
        .map(|r| r.iter().map(rational_string).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn matrix_table<T: std::fmt::Display>(m: &[Vec<T>]) -> String {
    let cells: Vec<Vec<String>> = m
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| {
            let r: Vec<String> = r.iter().map(|c| format!("{c:>w$}")).collect();
            format!("  [{}]\n", r.join(" "))
        })
        .collect()
}

fn rational_table(m: &QMatrix) -> String {
    let strings: Vec<Vec<String>> = m
        .iter()
        .map(|r| r.iter().map(rational_string).collect())
        .collect();
    matrix_table(&strings)
}

fn polynomial(text: &str) -> Result<IntPolynomial> {
    IntPolynomial::parse(text)
}

fn check_degree(data: &ClassData, f: &IntPolynomial) -> Result<()> {
    if data.degree != f.degree() {
        return Err(Error::Dimension(format!(
            "group of degree {} for a polynomial of degree {}",
            data.degree,
            f.degree()
        )));
    }
    Ok(())
}

/// M(G), using `--symbols` for quadratic characters.
fn theoretical(
    group: Option<&GroupSource>,
    basis: &TestBasis,
    symbols: Option<&str>,
) -> Result<Option<QMatrix>> {
    let Some(g) = group else { return Ok(None) };
    let data = g.data();
    if basis.kronecker_moduli().is_empty() {
        return theoretical_gram(&data, basis).map(Some);
    }
    match symbols {
        Some(s) => theoretical_gram_with(&data, basis, &resolve::symbols(s)?).map(Some),
        None => Ok(None),
    }
}

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Sample {
            polynomial: p,
            sample,
            basis,
            format,
        } => cmd_sample(&p, &sample, basis.as_deref(), format),
        Command::Gram {
            polynomial: p,
            group,
            basis,
            symbols,
            sample,
            format,
        } => cmd_gram(
            p.as_deref(),
            &group,
            &basis,
            symbols.as_deref(),
            &sample,
            format,
        ),
        Command::Convergence {
            polynomial: p,
            group,
            basis,
            symbols,
            increment,
            batches,
            workers,
            format,
        } => cmd_convergence(
            &p,
            &group,
            &basis,
            symbols.as_deref(),
            increment,
            batches,
            workers,
            format,
        ),
        Command::Identify {
            polynomial: p,
            candidates,
            import,
            count,
            degree_bound,
            workers,
            format,
        } => cmd_identify(
            &p,
            candidates.as_deref(),
            &import,
            count,
            degree_bound,
            workers,
            format,
        ),
        Command::Kernel {
            group,
            degree_bound,
            format,
        } => cmd_kernel(&group, degree_bound, format),
        Command::Chartable {
            group,
            rational,
            format,
        } => cmd_chartable(&group, rational, format),
        Command::Compare {
            first,
            second,
            basis,
            basis_first,
            basis_second,
            sample,
            format,
        } => cmd_compare(
            &first,
            &second,
            basis.as_deref(),
            basis_first.as_deref(),
            basis_second.as_deref(),
            &sample,
            format,
        ),
        Command::Catalog { format } => cmd_catalog(format),
    }
}

fn cmd_sample(p: &str, sample: &SampleArgs, basis: Option<&str>, format: Format) -> Result<Output> {
    let f = polynomial(p)?;
    let basis = basis
        .map(|b| resolve::basis(b, f.degree(), None))
        .transpose()?;
    let moduli = basis
        .as_ref()
        .map(TestBasis::kronecker_moduli)
        .unwrap_or_default();
    let samples = joint_sample(&[f], &moduli, sample.count, 2, sample.workers)?;
    let text = match format {
        Format::Csv => sample_csv(&samples, basis.as_ref())?,
        Format::Json => sample_json_lines(&samples, basis.as_ref())?,
        Format::Table => {
            let rows: Vec<Vec<String>> = samples[0]
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.prime.to_string(),
                        e.cycle_type.to_string(),
                        e.point.to_string(),
                    ]
                })
                .collect();
            let w0 = rows.iter().map(|r| r[0].len()).max().unwrap_or(1);
            let w1 = rows.iter().map(|r| r[1].len()).max().unwrap_or(1);
            rows.iter()
                .map(|r| format!("{:>w0$}  {:<w1$}  {}\n", r[0], r[1], r[2]))
                .collect()
        }
    };
    Ok(Output::ok(text))
}

/// Internal consistency of a group's data: class weights sum to 1 and the
/// rational rows (when present) are orthogonal.
fn consistency(g: &GroupSource) -> Value {
    let data = g.data();
    let weight_sum = data
        .weights()
        .iter()
        .fold(BigRational::zero(), |a, w| a + w);
    let rows_ok = match g {
        GroupSource::Imported(ImportedTable::Rational(t)) => Some(t.verify().is_ok()),
        GroupSource::Imported(ImportedTable::Full(t)) => Some(t.verify_orthogonality()),
        _ => None,
    };
    json!({
        "classes": data.num_classes(),
        "weights_sum_to_one": weight_sum == BigRational::one(),
        "rational_rows_orthogonal": rows_ok,
    })
}

fn cmd_gram(
    p: Option<&str>,
    group: &GroupArgs,
    basis: &str,
    symbols: Option<&str>,
    sample: &SampleArgs,
    format: Format,
) -> Result<Output> {
    let g = resolve::group(group)?;
    let Some(p) = p else {
        let g = g.ok_or_else(|| Error::Invalid("give a polynomial or a group".into()))?;
        let data = g.data();
        let b = resolve::basis(basis, data.degree, Some(&g))?;
        let m = theoretical(Some(&g), &b, symbols)?
            .ok_or_else(|| Error::Invalid("quadratic characters need --symbols".into()))?;
        let text = match format {
            Format::Table => format!(
                "group: {}\nbasis: {}\ntheoretical Gram:\n{}",
                data.name,
                b.labels.join(", "),
                rational_table(&m)
            ),
            _ => json_text(&json!({
                "group": data.name,
                "basis": b.labels,
                "theoretical": matrix_json(&m),
                "consistency": consistency(&g),
            })),
        };
        return Ok(Output::ok(text));
    };
    let f = polynomial(p)?;
    if let Some(g) = &g {
        check_degree(&g.data(), &f)?;
    }
    let b = resolve::basis(basis, f.degree(), g.as_ref())?;
    let m = theoretical(g.as_ref(), &b, symbols)?;
    let samples = joint_sample(&[f], &b.kronecker_moduli(), sample.count, 2, sample.workers)?;
    let text = match format {
        Format::Csv => sample_csv(&samples, Some(&b))?,
        Format::Json => json_text(&gram_report(&samples, &b, m, sample.count, 1)?.to_json()),
        Format::Table => gram_report(&samples, &b, m, sample.count, 1)?.to_table(),
    };
    Ok(Output::ok(text))
}

#[allow(clippy::too_many_arguments)]
fn cmd_convergence(
    p: &str,
    group: &GroupArgs,
    basis: &str,
    symbols: Option<&str>,
    increment: usize,
    batches: usize,
    workers: usize,
    format: Format,
) -> Result<Output> {
    let f = polynomial(p)?;
    let g = resolve::group(group)?;
    if let Some(g) = &g {
        check_degree(&g.data(), &f)?;
    }
    let b = resolve::basis(basis, f.degree(), g.as_ref())?;
    let m = theoretical(g.as_ref(), &b, symbols)?;
    let r = convergence_run(&[f], &b, m, increment, batches, workers)?;
    let text = match format {
        Format::Json => json_text(&r.to_json()),
        Format::Table => r.to_table(),
        Format::Csv => {
            let mut s = String::from("batch,primes,last_prime,l2,l8,linf\n");
            for b in &r.batches {
                s.push_str(&format!(
                    "{},{},{},{:.6},{:.6},{:.6}\n",
                    b.batch, b.primes, b.last_prime, b.norms.l2, b.norms.l8, b.norms.linf
                ));
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn cmd_identify(
    p: &str,
    candidates: Option<&str>,
    imports: &[std::path::PathBuf],
    count: usize,
    degree_bound: u32,
    workers: usize,
    format: Format,
) -> Result<Output> {
    let f = polynomial(p)?;
    let spec = match candidates {
        Some(c) => c.to_string(),
        None if !imports.is_empty() => String::new(),
        None => match f.degree() {
            4 => "deg4".into(),
            8 => "deg8".into(),
            d => {
                return Err(Error::Invalid(format!(
                    "no default candidates in degree {d}"
                )))
            }
        },
    };
    let mut cands = Vec::new();
    for name in catalog::candidate_set(&spec) {
        let source = match resolve::group_by_name(&name)? {
            GroupSource::Group(g) => CandidateSource::Group(g),
            GroupSource::Imported(t) => CandidateSource::Imported(t),
        };
        cands.push(Candidate { name, source });
    }
    for path in imports {
        let t = frobchar::chartab::import_table(path)?;
        let name = t.class_data().name.clone();
        cands.push(Candidate {
            name,
            source: CandidateSource::Imported(t),
        });
    }
    let report = identify_group(
        &f,
        &cands,
        IdentifySchedule {
            count,
            workers,
            degree_bound,
        },
    )?;
    let text = match format {
        Format::Table => report.to_table(),
        _ => json_text(&report.to_json()),
    };
    Ok(Output {
        code: report.outcome.exit_code(),
        text,
    })
}

fn cmd_kernel(group: &GroupArgs, bound: u32, format: Format) -> Result<Output> {
    let g = resolve::require_group(group)?;
    let data = g.data();
    let k = kernel_ideal(&data, bound)?;
    let text = match format {
        Format::Table => {
            let mut s = format!(
                "kernel ideal of {} in degree <= {}: {} generators\n",
                data.name,
                bound,
                k.len()
            );
            for (p, generic) in k.generators.iter().zip(&k.generic) {
                s.push_str(&format!(
                    "  {p}{}\n",
                    if *generic { "  (generic)" } else { "" }
                ));
            }
            s
        }
        _ => json_text(&json!({
            "group": data.name,
            "degree_bound": bound,
            "generators": k.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "generic": k.generic,
            "extra": k.extra.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
    };
    Ok(Output::ok(text))
}

fn structural(data: &ClassData, r: usize) -> Value {
    json!({ "h": data.num_classes(), "r": r, "s": restriction_image_rank(data) })
}

fn full_table_text(t: &CharacterTable, rational: bool) -> Result<String> {
    let data = t.data();
    let rt = t.rational_table()?;
    let mut s = format!(
        "{} (degree {}, order {}): h = {}, r = {}, s = {}\n",
        data.name,
        data.degree,
        data.order,
        data.num_classes(),
        rt.len(),
        restriction_image_rank(data)
    );
    let header: Vec<String> = data
        .classes
        .iter()
        .map(|c| format!("{}:{}", c.cycle_type, c.size))
        .collect();
    s.push_str(&format!("classes: {}\n", header.join(", ")));
    if rational {
        s.push_str(&matrix_table(&rt.rows));
    } else {
        let rows: Vec<Vec<String>> = t
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        s.push_str(&matrix_table(&rows));
    }
    Ok(s)
}

fn cmd_chartable(group: &GroupArgs, rational: bool, format: Format) -> Result<Output> {
    let g = resolve::require_group(group)?;
    let text = match (&g, g.table()?) {
        (_, Some(t)) => {
            if !t.verify_orthogonality() {
                return Err(Error::Orthogonality(format!(
                    "{}",
                    t.orthogonality_deviation()
                )));
            }
            let rt = t.rational_table()?;
            match format {
                Format::Table => full_table_text(&t, rational)?,
                _ => {
                    let mut v = if rational { rt.to_json() } else { t.to_json() };
                    v["structure"] = structural(t.data(), rt.len());
                    json_text(&v)
                }
            }
        }
        (GroupSource::Imported(ImportedTable::Rational(rt)), None) => match format {
            Format::Table => {
                let d = &rt.data;
                format!(
                    "{} (degree {}, order {}): h = {}, r = {}, s = {}\n{}",
                    d.name,
                    d.degree,
                    d.order,
                    d.num_classes(),
                    rt.len(),
                    restriction_image_rank(d),
                    matrix_table(&rt.rows)
                )
            }
            _ => {
                let mut v = rt.to_json();
                v["structure"] = structural(&rt.data, rt.len());
                json_text(&v)
            }
        },
        _ => {
            return Err(Error::Invalid(
                "class data alone carries no characters".into(),
            ))
        }
    };
    Ok(Output::ok(text))
}

fn cmd_compare(
    first: &str,
    second: &str,
    basis: Option<&str>,
    basis_first: Option<&str>,
    basis_second: Option<&str>,
    sample: &SampleArgs,
    format: Format,
) -> Result<Output> {
    let f = polynomial(first)?;
    let g = polynomial(second)?;
    let spec_f = basis_first.or(basis).unwrap_or("symmetric");
    let spec_g = basis_second.or(basis).unwrap_or("symmetric");
    let bf = resolve::basis(spec_f, f.degree(), None)?;
    let bg = resolve::basis(spec_g, g.degree(), None)?;
    let joint = bf.join(&bg, 1);
    let samples = joint_sample(
        &[f, g],
        &joint.kronecker_moduli(),
        sample.count,
        2,
        sample.workers,
    )?;
    let e = joint_gram(&samples, &joint)?;
    let n = bf.len();
    let block = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> QMatrix {
        e[rows].iter().map(|r| r[cols.clone()].to_vec()).collect()
    };
    let cross = block(0..n, n..joint.len());
    let rounded = round_matrix(&e);
    let rc = round_matrix(&cross);
    let rf = round_matrix(&block(0..n, 0..n));
    let rg = round_matrix(&block(n..joint.len(), n..joint.len()));
    let agree = rc.values == rf.values && rc.values == rg.values && rc.ambiguous.is_empty();
    let text = match format {
        Format::Table => format!(
            "primes: {} (last {})\nfirst basis: {}\nsecond basis: {}\ncross Gram, rounded:\n{}joint Gram, rounded:\n{}blocks agree: {agree}\n",
            samples[0].len(),
            samples[0].entries.last().map_or(0, |x| x.prime),
            bf.labels.join(", "),
            bg.labels.join(", "),
            matrix_table(&rc.values),
            matrix_table(&rounded.values),
        ),
        _ => json_text(&json!({
            "sample_size": samples[0].len(),
            "first_basis": bf.labels,
            "second_basis": bg.labels,
            "cross": matrix_json(&cross),
            "cross_rounded": rc.values.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "joint": matrix_json(&e),
            "joint_rounded": rounded.values.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "ambiguous": rounded.ambiguous,
            "blocks_agree": agree,
        })),
    };
    Ok(Output::ok(text))
}

fn cmd_catalog(format: Format) -> Result<Output> {
    let mut groups = Vec::new();
    for name in catalog::names() {
        let g = catalog::group(name)?;
        groups.push((
            name,
            g.degree(),
            g.order(),
            g.num_classes(),
            catalog::description(name).unwrap_or(""),
        ));
    }
    let polys = corpus::entries();
    let text = match format {
        Format::Table => {
            let mut s = String::from("groups:\n");
            for (n, d, o, h, desc) in &groups {
                s.push_str(&format!(
                    "  {n:<8} degree {d:>2}  order {o:>6}  classes {h:>3}  {desc}\n"
                ));
            }
            s.push_str("polynomials:\n");
            for e in &polys {
                s.push_str(&format!("  {:<8} {}\n", e.group, e.polynomial));
            }
            s
        }
        Format::Json => json_text(&json!({
            "groups": groups.iter().map(|(n, d, o, h, desc)| json!({
                "name": n, "degree": d, "order": o, "classes": h, "description": desc,
            })).collect::<Vec<_>>(),
            "polynomials": polys.iter().map(|e| json!({
                "name": e.name, "polynomial": e.polynomial, "group": e.group,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("name,degree,order,classes\n");
            for (n, d, o, h, _) in &groups {
                s.push_str(&format!("{n},{d},{o},{h}\n"));
            }
            s
        }
    };
    Ok(Output::ok(text))
}
