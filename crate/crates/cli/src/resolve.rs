//! Groups and test bases named on the command line.

use std::path::Path;

use frobchar::charparam::{interpolate_minimal, reduced_character_basis, SPolynomial};
use frobchar::chartab::{character_table, import_table, CharacterTable, ImportedTable};
use frobchar::frobstats::{TestBasis, TestFunction};
use frobchar::permcore::{catalog, ClassData, PermGroup, Permutation, DEFAULT_CAP};
use frobchar::{Error, Result};
use num_rational::BigRational;

use crate::args::GroupArgs;

#[derive(Clone, Debug)]
pub enum GroupSource {
    Group(PermGroup),
    Imported(ImportedTable),
}

impl GroupSource {
    pub fn data(&self) -> ClassData {
        match self {
            GroupSource::Group(g) => ClassData::from_group(g),
            GroupSource::Imported(t) => t.class_data().clone(),
        }
    }

    /// Full character table, computed or imported.
    pub fn table(&self) -> Result<Option<CharacterTable>> {
        match self {
            GroupSource::Group(g) => character_table(g).map(Some),
            GroupSource::Imported(ImportedTable::Full(t)) => Ok(Some(t.clone())),
            GroupSource::Imported(_) => Ok(None),
        }
    }

    /// Rows of the characters irreducible over Q.
    pub fn rational_rows(&self) -> Result<Vec<Vec<BigRational>>> {
        let rows = match self {
            GroupSource::Imported(ImportedTable::Rational(t)) => t.rows.clone(),
            _ => match self.table()? {
                Some(t) => t.rational_table()?.rows,
                None => {
                    return Err(Error::Invalid(
                        "class data alone carries no characters".into(),
                    ))
                }
            },
        };
        Ok(rows
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect())
    }
}

fn group_file(path: &Path) -> Result<GroupSource> {
    let text = std::fs::read_to_string(path)?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    if let Some(gens) = v.get("generators").and_then(|g| g.as_array()) {
        let degree = v["degree"]
            .as_u64()
            .ok_or_else(|| Error::Parse("group file needs a degree".into()))?
            as usize;
        let name = v["name"].as_str().unwrap_or("G");
        let gens = gens
            .iter()
            .map(|g| {
                g.as_str()
                    .ok_or_else(|| Error::Parse("generators are cycle strings".into()))
                    .and_then(|s| Permutation::parse(s, degree))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(GroupSource::Group(PermGroup::from_generators(
            name,
            &gens,
            DEFAULT_CAP,
        )?));
    }
    Ok(GroupSource::Imported(frobchar::chartab::import_table_str(
        &text,
    )?))
}

pub fn group_by_name(name: &str) -> Result<GroupSource> {
    let path = Path::new(name);
    if path.is_file() {
        return group_file(path);
    }
    Ok(GroupSource::Group(catalog::group(name)?))
}

pub fn group(args: &GroupArgs) -> Result<Option<GroupSource>> {
    if let Some(p) = &args.import {
        return Ok(Some(GroupSource::Imported(import_table(p)?)));
    }
    args.group.as_deref().map(group_by_name).transpose()
}

pub fn require_group(args: &GroupArgs) -> Result<GroupSource> {
    group(args)?.ok_or_else(|| Error::Invalid("a group is required (--group or --import)".into()))
}

/// Quartic test system (1, s1, s2, s3, s1² − s1 − s2 − 1): trivial, standard, its twist, sign and the degree-2 character of Sym4.
const QUARTIC: &[&str] = &["s1", "s2", "s3", "s1^2 - s1 - s2 - 1"];
/// (1, χ1, χ2, χ3 + χ4) of A5 in its degree-5 and degree-6 parametrizations.
const A5_QUINTIC: &[&str] = &["s1", "s1^2 - s2 - s1 - 1", "s2"];
const A5_SEXTIC: &[&str] = &["s1^2 - 2*s1 - s2 - 1", "s1", "-s1^2 + 2*s1 + 2*s2 + 1"];

fn parse_term(text: &str, nvars: usize) -> Result<TestFunction> {
    let t = text.trim();
    if let Some(inner) = t
        .strip_prefix("kronecker(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let d: i64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad discriminant in '{t}'")))?;
        return TestFunction::kronecker(d);
    }
    Ok(TestFunction::poly(SPolynomial::parse(t, nvars)?))
}

fn explicit(spec: &str, nvars: usize) -> Result<TestBasis> {
    let mut functions = vec![TestFunction::poly(SPolynomial::one(nvars))];
    for (i, term) in spec.split(',').enumerate() {
        let f = parse_term(term, nvars)?;
        let is_one = matches!(&f, TestFunction::Poly { poly, .. }
            if poly.as_constant() == Some(BigRational::from_integer(1.into())));
        if i == 0 && is_one {
            continue;
        }
        functions.push(f);
    }
    TestBasis::new(functions, None)
}

fn interpolated(rows: &[Vec<BigRational>], data: &ClassData) -> Result<TestBasis> {
    let polys = rows
        .iter()
        .skip(1)
        .map(|r| interpolate_minimal(r, data))
        .collect::<Result<Vec<_>>>()?;
    TestBasis::from_polys(data.degree - 1, polys)
}

/// Resolves a basis specification for polynomials of the given degree.
pub fn basis(spec: &str, degree: usize, group: Option<&GroupSource>) -> Result<TestBasis> {
    if degree < 2 {
        return Err(Error::Invalid("test bases need degree at least 2".into()));
    }
    let nvars = degree - 1;
    let need_group =
        || group.ok_or_else(|| Error::Invalid(format!("basis '{spec}' needs --group or --import")));
    match spec {
        "symmetric" => Ok(TestBasis::symmetric(degree)),
        "quartic" if degree == 4 => TestBasis::parse(nvars, QUARTIC),
        "a5-rational" if degree == 5 => TestBasis::parse(nvars, A5_QUINTIC),
        "a5-rational" if degree == 6 => TestBasis::parse(nvars, A5_SEXTIC),
        "quartic" | "a5-rational" => Err(Error::Invalid(format!(
            "basis '{spec}' does not apply in degree {degree}"
        ))),
        "reduced" => {
            let g = need_group()?;
            let t = g.table()?.ok_or_else(|| {
                Error::Invalid("the reduced basis needs a full character table".into())
            })?;
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
        "rational-irreducible" => {
            let g = need_group()?;
            interpolated(&g.rational_rows()?, &g.data())
        }
        _ => explicit(spec, nvars),
    }
}

/// Parses `--symbols`: one comma-separated list of class values per
/// quadratic character, separated by ';'.
pub fn symbols(text: &str) -> Result<Vec<Vec<i8>>> {
    text.split(';')
        .map(|list| {
            list.split(',')
                .map(|v| match v.trim() {
                    "1" | "+1" => Ok(1),
                    "-1" => Ok(-1),
                    "0" => Ok(0),
                    o => Err(Error::Parse(format!(
                        "symbol value '{o}' is not -1, 0 or 1"
                    ))),
                })
                .collect()
        })
        .collect()
}
