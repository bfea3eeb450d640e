//! Test functions evaluated at Frobenius data: s-polynomials and quadratic
//! (Kronecker) characters.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::charparam::SPolynomial;
use crate::error::{Error, Result};
use crate::polyarith::Fp;

/// Quadratic character (d/·) of a fundamental discriminant d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KroneckerCharacter {
    d: i64,
}

fn squarefree(mut m: u64) -> bool {
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q * q) {
            return false;
        }
        if m.is_multiple_of(q) {
            m /= q;
        }
        q += 1;
    }
    true
}

impl KroneckerCharacter {
    /// Accepts d ≡ 1 (mod 4) squarefree, or d = 4m with m ≡ 2, 3 (mod 4)
    /// squarefree; d ≠ 1.
    pub fn new(d: i64) -> Result<Self> {
        let ok = if d.rem_euclid(4) == 1 {
            d != 1 && squarefree(d.unsigned_abs())
        } else if d % 4 == 0 {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        } else {
            false
        };
        if ok {
            Ok(KroneckerCharacter { d })
        } else {
            Err(Error::Invalid(format!(
                "{d} is not a fundamental discriminant"
            )))
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    /// (d/p) for a prime p.
    pub fn value(&self, p: u64) -> i8 {
        kronecker(self.d, p)
    }
}

/// Kronecker symbol (d/p) for a prime p.
pub fn kronecker(d: i64, p: u64) -> i8 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let f = Fp::new(p);
    let a = f.from_i64(d);
    if a == 0 {
        return 0;
    }
    if f.pow(a, (p - 1) / 2) == 1 {
        1
    } else {
        -1
    }
}

/// One test function. `source` selects which polynomial of a joint run
/// supplies the class point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TestFunction {
    Poly { poly: SPolynomial, source: usize },
    Kronecker { character: KroneckerCharacter },
}

impl TestFunction {
    pub fn poly(poly: SPolynomial) -> Self {
        TestFunction::Poly { poly, source: 0 }
    }

    pub fn kronecker(d: i64) -> Result<Self> {
        Ok(TestFunction::Kronecker {
            character: KroneckerCharacter::new(d)?,
        })
    }

    pub fn label(&self) -> String {
        match self {
            TestFunction::Poly { poly, source: 0 } => poly.to_string(),
            TestFunction::Poly { poly, source } => format!("[{source}] {poly}"),
            TestFunction::Kronecker { character } => format!("({}/p)", character.d),
        }
    }
}

/// Ordered system of test functions, the first being the constant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestBasis {
    pub functions: Vec<TestFunction>,
    pub labels: Vec<String>,
}

impl TestBasis {
    pub fn new(functions: Vec<TestFunction>, labels: Option<Vec<String>>) -> Result<Self> {
        let first_is_one = matches!(functions.first(),
            Some(TestFunction::Poly { poly, .. }) if poly.as_constant() == Some(BigRational::from_integer(1.into())));
        if !first_is_one {
            return Err(Error::Invalid(
                "a test basis starts with the constant 1".into(),
            ));
        }
        let labels = labels.unwrap_or_else(|| functions.iter().map(TestFunction::label).collect());
        if labels.len() != functions.len() {
            return Err(Error::Dimension("one label per test function".into()));
        }
        Ok(TestBasis { functions, labels })
    }

    /// 1 followed by the given polynomials, all on polynomial 0.
    pub fn from_polys(nvars: usize, polys: Vec<SPolynomial>) -> Result<Self> {
        let mut f = vec![TestFunction::poly(SPolynomial::one(nvars))];
        f.extend(polys.into_iter().map(TestFunction::poly));
        Self::new(f, None)
    }

    /// Parses polynomial texts; a leading "1" is added when missing.
    pub fn parse(nvars: usize, texts: &[&str]) -> Result<Self> {
        let mut polys = texts
            .iter()
            .map(|t| SPolynomial::parse(t, nvars))
            .collect::<Result<Vec<_>>>()?;
        if polys.first().and_then(SPolynomial::as_constant)
            == Some(BigRational::from_integer(1.into()))
        {
            polys.remove(0);
        }
        Self::from_polys(nvars, polys)
    }

    /// (1, s1, …, s_{n-1}).
    pub fn symmetric(degree: usize) -> Self {
        let nvars = degree - 1;
        Self::from_polys(
            nvars,
            (0..nvars)
                .map(|i| SPolynomial::variable(nvars, i))
                .collect(),
        )
        .expect("starts with 1")
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Number of polynomials a joint run must supply.
    pub fn sources(&self) -> usize {
        self.functions
            .iter()
            .filter_map(|f| match f {
                TestFunction::Poly { source, .. } => Some(source + 1),
                TestFunction::Kronecker { .. } => None,
            })
            .max()
            .unwrap_or(1)
    }

    pub fn kronecker_moduli(&self) -> Vec<BigInt> {
        self.functions
            .iter()
            .filter_map(|f| match f {
                TestFunction::Kronecker { character } => Some(BigInt::from(character.d)),
                TestFunction::Poly { .. } => None,
            })
            .collect()
    }

    /// Concatenation; functions of `other` read polynomial `source`.
    pub fn join(&self, other: &TestBasis, source: usize) -> TestBasis {
        let mut functions = self.functions.clone();
        let mut labels = self.labels.clone();
        for (f, l) in other.functions.iter().zip(&other.labels) {
            functions.push(match f {
                TestFunction::Poly { poly, .. } => TestFunction::Poly {
                    poly: poly.clone(),
                    source,
                },
                k => k.clone(),
            });
            labels.push(l.clone());
        }
        TestBasis { functions, labels }
    }
}
