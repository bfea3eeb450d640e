//! Class-level data of a permutation group: what the statistics layer needs,
//! available both from enumeration and from external import.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::PermGroup;
use crate::charparam::s_vector;
use crate::error::{Error, Result};
use crate::polyarith::CycleType;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub cycle_type: CycleType,
    pub size: u64,
}

/// Name, degree, order and per-class cycle types and sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub name: String,
    pub degree: usize,
    pub order: u64,
    pub classes: Vec<ClassRecord>,
}

#[derive(Deserialize)]
struct RawClass {
    cycle_type: Vec<u32>,
    size: serde_json::Value,
    #[serde(default)]
    svector: Option<Vec<serde_json::Value>>,
}

#[derive(Deserialize)]
struct RawData {
    name: String,
    degree: usize,
    order: serde_json::Value,
    classes: Vec<RawClass>,
}

pub(crate) fn json_u64(v: &serde_json::Value, what: &str) -> Result<u64> {
    match v {
        serde_json::Value::Number(n) => n.as_u64(),
        serde_json::Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
    .ok_or_else(|| Error::Parse(format!("{what}: expected a nonnegative integer, got {v}")))
}

pub(crate) fn json_int(v: &serde_json::Value, what: &str) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
    .ok_or_else(|| Error::Parse(format!("{what}: expected an integer, got {v}")))
}

/// JSON number when it fits in i64, decimal string otherwise.
pub(crate) fn int_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::json!(x),
        None => serde_json::json!(v.to_string()),
    }
}

impl ClassData {
    pub fn from_group(g: &PermGroup) -> Self {
        ClassData {
            name: g.name().to_string(),
            degree: g.degree(),
            order: g.order() as u64,
            classes: g
                .classes()
                .iter()
                .map(|c| ClassRecord {
                    cycle_type: c.cycle_type.clone(),
                    size: c.size as u64,
                })
                .collect(),
        }
    }

    /// Parses `{ "name", "degree", "order", "classes": [{ "cycle_type",
    /// "size", "svector"? }] }` and validates it. Extra keys are ignored.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let raw: RawData = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("class data: {e}")))?;
        let mut classes = Vec::with_capacity(raw.classes.len());
        for (k, c) in raw.classes.iter().enumerate() {
            let cycle_type = CycleType::new(c.cycle_type.clone())?;
            if cycle_type.degree() as usize != raw.degree {
                return Err(Error::Invalid(format!(
                    "class {k}: cycle type {cycle_type} is not a partition of {}",
                    raw.degree
                )));
            }
            if let Some(sv) = &c.svector {
                let given = sv
                    .iter()
                    .map(|x| json_int(x, "svector"))
                    .collect::<Result<Vec<_>>>()?;
                if given != s_vector(&cycle_type) {
                    return Err(Error::Invalid(format!(
                        "class {k}: svector does not match cycle type {cycle_type}"
                    )));
                }
            }
            classes.push(ClassRecord {
                cycle_type,
                size: json_u64(&c.size, "size")?,
            });
        }
        let data = ClassData {
            name: raw.name,
            degree: raw.degree,
            order: json_u64(&raw.order, "order")?,
            classes,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        Self::from_json_value(&v)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "degree": self.degree,
            "order": self.order,
            "classes": self.classes.iter().map(|c| serde_json::json!({
                "cycle_type": c.cycle_type.parts(),
                "size": c.size,
                "svector": s_vector(&c.cycle_type).iter().map(int_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Sizes are positive, divide the order and sum to it; the first class
    /// is the identity.
    pub fn validate(&self) -> Result<()> {
        if self.classes.is_empty() || self.order == 0 {
            return Err(Error::Invalid("no classes".into()));
        }
        let mut total: u128 = 0;
        for (k, c) in self.classes.iter().enumerate() {
            if c.size == 0 || !self.order.is_multiple_of(c.size) {
                return Err(Error::Invalid(format!(
                    "class {k}: size {} does not divide the order",
                    c.size
                )));
            }
            total += c.size as u128;
        }
        if total != self.order as u128 {
            return Err(Error::Invalid(format!(
                "class sizes sum to {total}, expected order {}",
                self.order
            )));
        }
        let first = &self.classes[0];
        if first.size != 1 || first.cycle_type != CycleType::identity(self.degree as u32) {
            return Err(Error::Invalid("first class must be the identity".into()));
        }
        Ok(())
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn weights(&self) -> Vec<BigRational> {
        let order = BigInt::from(self.order);
        self.classes
            .iter()
            .map(|c| BigRational::new(BigInt::from(c.size), order.clone()))
            .collect()
    }

    pub fn weight_sum(&self) -> BigRational {
        self.weights()
            .into_iter()
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Distinct cycle types in `Ord` order with their summed weights.
    pub fn cycle_type_weights(&self) -> Vec<(CycleType, BigRational)> {
        let mut out: Vec<(CycleType, BigRational)> = Vec::new();
        for (c, w) in self.classes.iter().zip(self.weights()) {
            match out.iter_mut().find(|(t, _)| *t == c.cycle_type) {
                Some((_, acc)) => *acc += w,
                None => out.push((c.cycle_type.clone(), w)),
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::catalog;

    #[test]
    fn round_trip_and_validation() {
        let g = catalog::group("Q8").unwrap();
        let d = ClassData::from_group(&g);
        let back = ClassData::from_json_value(&d.to_json_value()).unwrap();
        assert_eq!(back, d);
        assert_eq!(d.weight_sum(), BigRational::from_integer(1.into()));

        let mut v = d.to_json_value();
        v["classes"][1]["size"] = serde_json::json!(2);
        assert!(ClassData::from_json_value(&v).is_err());
        let mut v = d.to_json_value();
        v["classes"][1]["svector"] = serde_json::json!([7, 0, 0, 0, 0, 0, 0]);
        assert!(ClassData::from_json_value(&v).is_err());
    }

    #[test]
    fn aggregated_weights() {
        let d = ClassData::from_group(&catalog::group("D4x8").unwrap());
        let w: Vec<String> = d
            .cycle_type_weights()
            .iter()
            .map(|(t, w)| format!("{t}:{w}"))
            .collect();
        assert_eq!(w, ["1^8:1/8", "2^4:5/8", "4^2:1/4"]);
    }
}
