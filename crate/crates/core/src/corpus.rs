//! Bundled representative polynomials with their Galois groups.

use serde::Deserialize;

use crate::error::Result;
use crate::polyarith::IntPolynomial;

const CORPUS: &str = include_str!("../data/corpus.json");

#[derive(Clone, Debug, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub polynomial: String,
    /// Catalog name of the Galois group.
    pub group: String,
    #[serde(default)]
    pub note: Option<String>,
}

impl CorpusEntry {
    pub fn parse(&self) -> Result<IntPolynomial> {
        IntPolynomial::parse(&self.polynomial)
    }
}

pub fn entries() -> Vec<CorpusEntry> {
    serde_json::from_str(CORPUS).expect("bundled corpus is valid JSON")
}

/// First entry whose name or group matches.
pub fn lookup(key: &str) -> Option<CorpusEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == key || e.group == key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::catalog;

    #[test]
    fn corpus_matches_catalog() {
        let es = entries();
        assert_eq!(es.len(), 12);
        for e in &es {
            let f = e.parse().unwrap();
            let (degree, _) = catalog::generators(&e.group).unwrap();
            assert_eq!(f.degree(), degree, "{}", e.name);
        }
        assert_eq!(lookup("D4").unwrap().polynomial, "x^4 - 2x^2 + 2");
    }
}
