//! JSON import and export of character tables and class data.
//!
//! Full tables: `{ "group", "degree", "order", "h", "exponent", "classes":
//! [{ "cycle_type", "size", "powers"? }], "characters": [["1", "-1 - z^2", …]] }`.
//! Rational tables use the class-data layout plus `"rational_rows"` (plain
//! integers) and optionally `"orbit_sizes"`.

use std::path::Path;

use serde_json::{json, Value};

use super::{CharacterTable, CyclotomicField, RationalCharacterTable};
use crate::error::{Error, Result};
use crate::permcore::{int_json, json_int, json_u64, ClassData};

#[derive(Clone, Debug)]
pub enum ImportedTable {
    Full(CharacterTable),
    Rational(RationalCharacterTable),
    /// Class sizes and cycle types only.
    Classes(ClassData),
}

impl ImportedTable {
    pub fn class_data(&self) -> &ClassData {
        match self {
            ImportedTable::Full(t) => t.data(),
            ImportedTable::Rational(t) => &t.data,
            ImportedTable::Classes(d) => d,
        }
    }
}

fn class_data_of(v: &Value) -> Result<ClassData> {
    let mut v = v.clone();
    if v.get("name").is_none() {
        if let Some(g) = v.get("group").cloned() {
            v["name"] = g;
        }
    }
    if v.get("order").is_none() {
        let total: u64 = v["classes"]
            .as_array()
            .map(|cs| {
                cs.iter()
                    .filter_map(|c| json_u64(&c["size"], "size").ok())
                    .sum()
            })
            .unwrap_or(0);
        v["order"] = json!(total);
    }
    ClassData::from_json_value(&v)
}

pub fn import_table_str(text: &str) -> Result<ImportedTable> {
    let v: Value = serde_json::from_str(text)?;
    let data = class_data_of(&v)?;
    if let Some(chars) = v.get("characters") {
        let exponent = match v.get("exponent") {
            Some(e) => json_u64(e, "exponent")?,
            None => data
                .classes
                .iter()
                .fold(1, |l, c| num_integer::lcm(l, c.cycle_type.order())),
        };
        if exponent == 0 {
            return Err(Error::Invalid("exponent must be positive".into()));
        }
        if let Some(h) = v.get("h") {
            if json_u64(h, "h")? as usize != data.num_classes() {
                return Err(Error::Invalid("h disagrees with the class list".into()));
            }
        }
        let field = CyclotomicField::new(exponent);
        let rows = chars
            .as_array()
            .ok_or_else(|| Error::Parse("characters must be a list".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("character rows must be lists".into()))?
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => field.parse(s),
                        Value::Number(_) => Ok(field.rational(json_int(x, "value")?.into())),
                        other => Err(Error::Parse(format!("bad character value {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let powers = v["classes"]
            .as_array()
            .map(|cs| {
                cs.iter()
                    .map(|c| {
                        c.get("powers").map(|p| {
                            p.as_array()
                                .map(|a| {
                                    a.iter()
                                        .filter_map(Value::as_u64)
                                        .map(|x| x as usize)
                                        .collect::<Vec<_>>()
                                })
                                .unwrap_or_default()
                        })
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .unwrap_or(None);
        if let Some(p) = &powers {
            let h = data.num_classes();
            for (j, (pj, c)) in p.iter().zip(&data.classes).enumerate() {
                if pj.len() as u64 != c.cycle_type.order() || pj.iter().any(|&x| x >= h) {
                    return Err(Error::Invalid(format!("class {j}: malformed power map")));
                }
            }
        }
        return Ok(ImportedTable::Full(CharacterTable::new(
            data, exponent, rows, powers,
        )?));
    }
    if let Some(rows) = v.get("rational_rows") {
        let rows = rows
            .as_array()
            .ok_or_else(|| Error::Parse("rational_rows must be a list".into()))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("rational rows must be lists".into()))?
                    .iter()
                    .map(|x| json_int(x, "rational row entry"))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let sizes = match v.get("orbit_sizes") {
            Some(s) => Some(
                s.as_array()
                    .ok_or_else(|| Error::Parse("orbit_sizes must be a list".into()))?
                    .iter()
                    .map(|x| json_u64(x, "orbit size").map(|u| u as usize))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        return Ok(ImportedTable::Rational(RationalCharacterTable::from_rows(
            data, rows, sizes,
        )?));
    }
    Ok(ImportedTable::Classes(data))
}

/// Reads and verifies a table or class-data file.
pub fn import_table(path: impl AsRef<Path>) -> Result<ImportedTable> {
    import_table_str(&std::fs::read_to_string(path)?)
}

impl CharacterTable {
    pub fn to_json(&self) -> Value {
        let d = self.data();
        json!({
            "group": d.name,
            "degree": d.degree,
            "order": d.order,
            "h": d.num_classes(),
            "exponent": self.exponent(),
            "classes": d.classes.iter().enumerate().map(|(j, c)| {
                let mut o = json!({ "cycle_type": c.cycle_type.parts(), "size": c.size });
                if let Some(p) = self.powers() {
                    o["powers"] = json!(p[j]);
                }
                o
            }).collect::<Vec<_>>(),
            "characters": self.rows().iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

impl RationalCharacterTable {
    pub fn to_json(&self) -> Value {
        let mut v = self.data.to_json_value();
        v["rational_rows"] = json!(self
            .rows
            .iter()
            .map(|r| r.iter().map(int_json).collect::<Vec<_>>())
            .collect::<Vec<_>>());
        v["orbit_sizes"] = json!(self.orbit_sizes);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::permcore::catalog;

    #[test]
    fn full_table_round_trip() {
        let t = character_table(&catalog::group("D4").unwrap()).unwrap();
        let text = t.to_json().to_string();
        let ImportedTable::Full(back) = import_table_str(&text).unwrap() else {
            panic!()
        };
        assert_eq!(back.rows(), t.rows());
        assert_eq!(back.data(), t.data());
        assert_eq!(back.powers(), t.powers());
    }

    #[test]
    fn rational_round_trip_and_rejection() {
        let t = character_table(&catalog::group("A5x5").unwrap()).unwrap();
        let r = t.rational_table().unwrap();
        let mut v = r.to_json();
        let ImportedTable::Rational(back) = import_table_str(&v.to_string()).unwrap() else {
            panic!()
        };
        assert_eq!(back.rows, r.rows);
        assert_eq!(back.orbit_sizes, r.orbit_sizes);
        v["classes"][1]["size"] = json!(16);
        v["classes"][2]["size"] = json!(19);
        assert!(import_table_str(&v.to_string()).is_err());
    }

    #[test]
    fn cyclic_values_parse() {
        let text = r#"{ "group": "C4", "degree": 4, "exponent": 4,
            "classes": [ {"cycle_type": [1,1,1,1], "size": 1}, {"cycle_type": [2,2], "size": 1},
                         {"cycle_type": [4], "size": 1}, {"cycle_type": [4], "size": 1} ],
            "characters": [ ["1","1","1","1"], ["1","1","-1","-1"],
                            ["1","-1","z","-z"], ["1","-1","-z","z"] ] }"#;
        let ImportedTable::Full(t) = import_table_str(text).unwrap() else {
            panic!()
        };
        assert_eq!(t.galois_orbits().len(), 3);
        let bad = text.replace(r#"["1","-1","-z","z"]"#, r#"["1","-1","z","z"]"#);
        assert!(import_table_str(&bad).is_err());
    }
}
