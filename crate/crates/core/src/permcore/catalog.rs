//! Named permutation groups used throughout the examples and tests.

use super::{PermGroup, Permutation, DEFAULT_CAP};
use crate::error::{Error, Result};

struct Entry {
    name: &'static str,
    degree: usize,
    generators: &'static [&'static str],
    description: &'static str,
}

const ENTRIES: &[Entry] = &[
    Entry {
        name: "Sym4",
        degree: 4,
        generators: &["(1,2)", "(1,2,3,4)"],
        description: "symmetric group of degree 4",
    },
    Entry {
        name: "A4",
        degree: 4,
        generators: &["(1,2,3)", "(1,2)(3,4)"],
        description: "alternating group of degree 4",
    },
    Entry {
        name: "D4",
        degree: 4,
        generators: &["(1,2,3,4)", "(1,3)"],
        description: "dihedral group of the square",
    },
    Entry {
        name: "C4",
        degree: 4,
        generators: &["(1,2,3,4)"],
        description: "cyclic group of order 4",
    },
    Entry {
        name: "V4",
        degree: 4,
        generators: &["(1,2)(3,4)", "(1,3)(2,4)"],
        description: "Klein four-group, regular",
    },
    Entry {
        name: "D4x8",
        degree: 8,
        generators: &[
            "(1,8)(2,7)(3,4)(5,6)",
            "(1,2)(3,5)(4,6)(7,8)",
            "(1,6)(2,4)(3,8)(5,7)",
        ],
        description: "dihedral group of order 8, regular representation",
    },
    Entry {
        name: "Q8",
        degree: 8,
        generators: &["(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"],
        description: "quaternion group, regular representation",
    },
    Entry {
        name: "T8_10",
        degree: 8,
        generators: &["(1,2,3,8)(4,5,6,7)", "(1,5)(3,7)"],
        description: "transitive group 8T10 of order 16",
    },
    Entry {
        name: "T8_11",
        degree: 8,
        generators: &["(1,3,5,7)(2,4,6,8)", "(1,4,5,8)(2,3,6,7)", "(1,5)(3,7)"],
        description: "transitive group 8T11 of order 16",
    },
    Entry {
        name: "A5x5",
        degree: 5,
        generators: &["(1,2,3,4,5)", "(1,2,3)"],
        description: "alternating group A5 on 5 points",
    },
    Entry {
        name: "A5x6",
        degree: 6,
        generators: &["(1,2,3,4,5)", "(1,6)(2,5)"],
        description: "A5 as PSL(2,5) on the projective line over F5",
    },
    Entry {
        name: "Sym8",
        degree: 8,
        generators: &["(1,2)", "(1,2,3,4,5,6,7,8)"],
        description: "symmetric group of degree 8",
    },
    Entry {
        name: "Alt8",
        degree: 8,
        generators: &["(1,2,3)", "(2,3,4,5,6,7,8)"],
        description: "alternating group of degree 8",
    },
    Entry {
        name: "PGL2_7",
        degree: 8,
        generators: &["(1,2,3,4,5,6,7)", "(1,8)(2,7)(3,4)(5,6)", "(2,4,3,7,5,6)"],
        description: "PGL(2,7) on the projective line over F7",
    },
    Entry {
        name: "PSL2_7",
        degree: 8,
        generators: &["(1,2,3,4,5,6,7)", "(1,8)(2,7)(3,4)(5,6)"],
        description: "PSL(2,7) on the projective line over F7",
    },
    Entry {
        name: "AGL3_2",
        degree: 8,
        generators: &["(1,2,3,4,5,6,7)", "(1,8)(2,7)(3,4)(5,6)", "(4,5)(7,8)"],
        description: "affine group of F2^3, containing PSL2_7",
    },
];

/// Bundled names, in catalog order.
pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn description(name: &str) -> Option<&'static str> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .map(|e| e.description)
}

/// Generators of a bundled group, or of `Sym{n}` / `Alt{n}` for any n ≥ 2.
pub fn generators(name: &str) -> Result<(usize, Vec<Permutation>)> {
    if let Some(e) = ENTRIES.iter().find(|e| e.name == name) {
        let gens = e
            .generators
            .iter()
            .map(|g| Permutation::parse(g, e.degree))
            .collect::<Result<Vec<_>>>()?;
        return Ok((e.degree, gens));
    }
    let family = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|r| r.parse::<usize>().ok())
    };
    if let Some(n) = family("Sym").filter(|&n| (2..=256).contains(&n)) {
        let cycle: Vec<usize> = (2..=n).chain([1]).collect();
        let mut swap: Vec<usize> = (1..=n).collect();
        swap.swap(0, 1);
        return Ok((
            n,
            vec![
                Permutation::from_images(&swap)?,
                Permutation::from_images(&cycle)?,
            ],
        ));
    }
    if let Some(n) = family("Alt").filter(|&n| (3..=256).contains(&n)) {
        let three = Permutation::from_images(
            &[[2, 3, 1].as_slice(), &(4..=n).collect::<Vec<_>>()].concat(),
        )?;
        if n == 3 {
            return Ok((n, vec![three]));
        }
        // an (n-1)-cycle on 2..n when n is even, an n-cycle otherwise
        let long: Vec<usize> = if n % 2 == 0 {
            [1].into_iter().chain(3..=n).chain([2]).collect()
        } else {
            (2..=n).chain([1]).collect()
        };
        return Ok((n, vec![three, Permutation::from_images(&long)?]));
    }
    Err(Error::UnknownGroup(name.to_string()))
}

/// Enumerates a catalog group with the default cap.
pub fn group(name: &str) -> Result<PermGroup> {
    group_with_cap(name, DEFAULT_CAP)
}

pub fn group_with_cap(name: &str, cap: usize) -> Result<PermGroup> {
    let (_, gens) = generators(name)?;
    Ok(PermGroup::from_generators(name, &gens, cap)?.with_name(name))
}

/// Expands a candidate set name (`deg4`, `deg8`) or a comma-separated list.
pub fn candidate_set(spec: &str) -> Vec<String> {
    match spec {
        "deg4" => ["Sym4", "A4", "D4", "C4", "V4"].map(String::from).to_vec(),
        "deg8" => [
            "Sym8", "Alt8", "AGL3_2", "PGL2_7", "PSL2_7", "T8_10", "T8_11", "D4x8", "Q8",
        ]
        .map(String::from)
        .to_vec(),
        _ => spec
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_class_counts() {
        let expect = [
            ("Sym4", 24, 5),
            ("A4", 12, 4),
            ("D4", 8, 5),
            ("C4", 4, 4),
            ("V4", 4, 4),
            ("D4x8", 8, 5),
            ("Q8", 8, 5),
            ("T8_10", 16, 10),
            ("T8_11", 16, 10),
            ("A5x5", 60, 5),
            ("A5x6", 60, 5),
            ("PSL2_7", 168, 6),
            ("PGL2_7", 336, 9),
            ("AGL3_2", 1344, 11),
        ];
        for (name, order, h) in expect {
            let g = group(name).unwrap();
            assert_eq!((g.order(), g.num_classes()), (order, h), "{name}");
        }
    }

    #[test]
    fn psl_inside_agl() {
        let psl = group("PSL2_7").unwrap();
        let agl = group("AGL3_2").unwrap();
        assert!(psl.is_subgroup_of(&agl));
    }

    #[test]
    fn symmetric_and_alternating_families() {
        for n in 2..=6usize {
            let fact: usize = (1..=n).product();
            assert_eq!(group(&format!("Sym{n}")).unwrap().order(), fact);
            if n >= 3 {
                assert_eq!(group(&format!("Alt{n}")).unwrap().order(), fact / 2);
            }
        }
        assert!(matches!(group("Foo"), Err(Error::UnknownGroup(_))));
    }
}
