//! Permutation groups small enough to enumerate: closure, conjugacy classes,
//! power maps and the induced map to cycle types.

pub mod catalog;
mod classdata;

pub(crate) use classdata::{int_json, json_int, json_u64};
pub use classdata::{ClassData, ClassRecord};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::polyarith::CycleType;

pub const DEFAULT_CAP: usize = 1_000_000;

/// Bijection of {0, …, n-1}; displayed 1-based in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 256, "degree above 256 unsupported");
        Permutation {
            images: (0..n).map(|i| i as u8).collect(),
        }
    }

    /// From 1-based images of 1..n.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > 256 {
            return Err(Error::Invalid("degree above 256 unsupported".into()));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::Invalid(format!("not a permutation: {images:?}")));
            }
            seen[i - 1] = true;
            out.push((i - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    /// Parses disjoint-cycle notation such as `(1,2,3,8)(4,5,6,7)` or
    /// `(1 2 3 4)`; `()` is the identity.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut p = Self::identity(n);
        let bad = |msg: &str| Error::Parse(format!("{msg} in '{text}'"));
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("missing ')'"))?;
            let pts: Vec<usize> = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<_>>()?;
            let mut sorted = pts.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != pts.len() {
                return Err(bad("repeated point"));
            }
            for (k, &a) in pts.iter().enumerate() {
                let b = pts[(k + 1) % pts.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(bad("point out of range"));
                }
                if p.images[a - 1] as usize != a - 1 {
                    return Err(bad("cycles not disjoint"));
                }
                p.images[a - 1] = (b - 1) as u8;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of 0-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Permutation { images: out }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut out = Self::identity(self.degree());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        out
    }

    /// x⁻¹ · self · x.
    pub fn conjugate_by(&self, x: &Self) -> Self {
        x.inverse().then(self).then(x)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut j = self.apply(s);
            while j != s {
                seen[j] = true;
                c.push(j);
                j = self.apply(j);
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(|c| c.len() as u32).collect())
            .expect("nonempty permutation")
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().order()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub index: usize,
    pub representative: Permutation,
    pub size: usize,
    pub cycle_type: CycleType,
    pub element_order: u64,
}

/// Enumerated permutation group with its conjugacy classes.
///
/// Elements are stored sorted by image sequence; the class representative is
/// the least element of its class in that order.
#[derive(Clone, Debug)]
pub struct PermGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    class_of: Vec<usize>,
    classes: Vec<ConjClass>,
    exponent: u64,
}

/// Breadth-first closure of `generators`, failing once more than `cap`
/// elements appear.
pub fn close_group(generators: &[Permutation], cap: usize) -> Result<PermGroup> {
    PermGroup::from_generators("G", generators, cap)
}

impl PermGroup {
    pub fn from_generators(name: &str, generators: &[Permutation], cap: usize) -> Result<Self> {
        let n = generators
            .first()
            .ok_or_else(|| Error::Invalid("no generators".into()))?
            .degree();
        if generators.iter().any(|g| g.degree() != n) {
            return Err(Error::Invalid("generators of different degrees".into()));
        }
        if cap == 0 {
            return Err(Error::Invalid("cap must be positive".into()));
        }
        let id = Permutation::identity(n);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in generators {
                    let y = x.then(g);
                    if !seen.contains(&y) {
                        if seen.len() >= cap {
                            return Err(Error::GroupTooLarge { cap });
                        }
                        seen.insert(y.clone());
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut group = PermGroup {
            name: name.to_string(),
            degree: n,
            generators: generators.to_vec(),
            elements,
            index,
            class_of: Vec::new(),
            classes: Vec::new(),
            exponent: 1,
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let order = self.elements.len();
        let gens: Vec<(Permutation, Permutation)> = self
            .generators
            .iter()
            .map(|g| (g.clone(), g.inverse()))
            .collect();
        let mut raw_of = vec![usize::MAX; order];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..order {
            if raw_of[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            raw_of[start] = id;
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                let x = &self.elements[members[k]];
                for (g, gi) in &gens {
                    let y = gi.then(x).then(g);
                    let j = self.index[&y];
                    if raw_of[j] == usize::MAX {
                        raw_of[j] = id;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut keyed: Vec<(CycleType, usize, usize, Vec<usize>)> = raw
            .into_iter()
            .map(|m| (self.elements[m[0]].cycle_type(), m.len(), m[0], m))
            .collect();
        keyed.sort_by(|a, b| (&a.0, a.1, a.2).cmp(&(&b.0, b.1, b.2)));
        self.class_of = vec![0; order];
        self.classes = keyed
            .into_iter()
            .enumerate()
            .map(|(k, (ct, size, min, members))| {
                for &m in &members {
                    self.class_of[m] = k;
                }
                let rep = self.elements[min].clone();
                ConjClass {
                    index: k,
                    element_order: ct.order(),
                    representative: rep,
                    size,
                    cycle_type: ct,
                }
            })
            .collect();
        self.exponent = self
            .classes
            .iter()
            .fold(1, |l, c| num_integer::lcm(l, c.element_order));
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element_index(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class index of the element with the given element index.
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.element_index(g).map(|i| self.class_of[i])
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// |C_k| / |G| per class.
    pub fn haar_weights(&self) -> Vec<BigRational> {
        let order = BigInt::from(self.order());
        self.classes
            .iter()
            .map(|c| BigRational::new(BigInt::from(c.size), order.clone()))
            .collect()
    }

    /// Class of representative^e.
    pub fn power_map(&self, k: usize, e: u64) -> Result<usize> {
        let c = self.classes.get(k).ok_or(Error::ClassIndex(k))?;
        let g = c.representative.pow(e % c.element_order);
        Ok(self.class_of(&g).expect("closed under powers"))
    }

    pub fn class_map_to_sym(&self) -> Vec<CycleType> {
        self.classes.iter().map(|c| c.cycle_type.clone()).collect()
    }

    /// Haar weights summed over classes sharing a cycle type.
    pub fn cycle_type_weights(&self) -> BTreeMap<CycleType, BigRational> {
        let mut out = BTreeMap::new();
        for (c, w) in self.classes.iter().zip(self.haar_weights()) {
            *out.entry(c.cycle_type.clone())
                .or_insert_with(|| BigRational::from_integer(0.into())) += w;
        }
        out
    }

    /// Index of the class in `self` containing `g`, testing conjugacy by
    /// membership; `g` must lie in the group.
    pub fn class_containing(&self, g: &Permutation) -> Result<usize> {
        self.class_of(g)
            .ok_or_else(|| Error::ClassMap(format!("{g} is not an element of {}", self.name)))
    }

    /// Same degree and every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }
}
