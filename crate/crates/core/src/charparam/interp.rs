//! Evaluation, interpolation and vanishing ideals on the class points of a
//! group.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ClassPoint, Monomial, SPolynomial};
use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::permcore::ClassData;
use crate::polyarith::CycleType;

/// Distinct class points of a group with their fibers and summed weights,
/// in cycle-type order.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub degree: usize,
    pub types: Vec<CycleType>,
    pub points: Vec<ClassPoint>,
    pub weights: Vec<BigRational>,
    /// Class indices mapping to each point.
    pub fibers: Vec<Vec<usize>>,
}

impl PointSet {
    pub fn new(data: &ClassData) -> Self {
        let mut types: Vec<CycleType> = data.classes.iter().map(|c| c.cycle_type.clone()).collect();
        types.sort();
        types.dedup();
        let w = data.weights();
        let fibers: Vec<Vec<usize>> = types
            .iter()
            .map(|t| {
                (0..data.num_classes())
                    .filter(|&k| data.classes[k].cycle_type == *t)
                    .collect()
            })
            .collect();
        let weights = fibers
            .iter()
            .map(|f| f.iter().fold(BigRational::zero(), |a, &k| a + &w[k]))
            .collect();
        PointSet {
            degree: data.degree,
            points: types.iter().map(ClassPoint::from_cycle_type).collect(),
            types,
            weights,
            fibers,
        }
    }

    pub fn nvars(&self) -> usize {
        self.degree - 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the point carrying class k.
    pub fn point_of_class(&self, k: usize) -> usize {
        self.fibers
            .iter()
            .position(|f| f.contains(&k))
            .expect("every class has a point")
    }

    /// Collapses per-class values to per-point values, failing when a fiber
    /// carries two different values.
    pub fn collapse(&self, values: &[BigRational]) -> Result<Vec<BigRational>> {
        self.fibers
            .iter()
            .map(|f| {
                let v = &values[f[0]];
                if f.iter().all(|&k| values[k] == *v) {
                    Ok(v.clone())
                } else {
                    Err(Error::NotInRestrictionImage)
                }
            })
            .collect()
    }

    /// Per-class values of a per-point function.
    pub fn expand(&self, per_point: &[BigRational], num_classes: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); num_classes];
        for (f, v) in self.fibers.iter().zip(per_point) {
            for &k in f {
                out[k] = v.clone();
            }
        }
        out
    }

    /// rows = points, columns = monomials.
    pub fn evaluation_matrix(&self, monomials: &[Monomial]) -> QMatrix {
        self.points
            .iter()
            .map(|pt| {
                monomials
                    .iter()
                    .map(|m| BigRational::from_integer(monomial_value(m, &pt.svector)))
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn monomial_value(m: &Monomial, point: &[BigInt]) -> BigInt {
    let mut v = BigInt::one();
    for (x, &e) in point.iter().zip(&m.0) {
        for _ in 0..e {
            v *= x;
        }
    }
    v
}

/// Exact value of `p` at a class point.
pub fn evaluate(p: &SPolynomial, pt: &ClassPoint) -> Result<BigRational> {
    if p.nvars() > pt.svector.len() {
        return Err(Error::VariableOutOfRange(p.nvars()));
    }
    p.evaluate_int(&pt.svector)
}

/// The s-polynomial of total degree ≤ `bound` supported on the earliest
/// independent monomials that takes the given per-class values.
pub fn interpolate_character(
    values: &[BigRational],
    data: &ClassData,
    bound: u32,
) -> Result<SPolynomial> {
    if values.len() != data.num_classes() {
        return Err(Error::Dimension(format!(
            "{} values for {} classes",
            values.len(),
            data.num_classes()
        )));
    }
    if bound < 1 {
        return Err(Error::Invalid("degree bound must be at least 1".into()));
    }
    let ps = PointSet::new(data);
    let target = ps.collapse(values)?;
    interpolate_points(&ps, &target, bound)
}

/// Interpolation at the least degree bound ≥ 1 that succeeds.
pub fn interpolate_minimal(values: &[BigRational], data: &ClassData) -> Result<SPolynomial> {
    if values.len() != data.num_classes() {
        return Err(Error::Dimension(format!(
            "{} values for {} classes",
            values.len(),
            data.num_classes()
        )));
    }
    let ps = PointSet::new(data);
    let target = ps.collapse(values)?;
    minimal_on_points(&ps, &target)
}

pub(crate) fn minimal_on_points(ps: &PointSet, target: &[BigRational]) -> Result<SPolynomial> {
    let mut bound = 1;
    loop {
        match interpolate_points(ps, target, bound) {
            Err(Error::DegreeBoundTooSmall(_)) => bound += 1,
            r => return r,
        }
    }
}

pub(crate) fn interpolate_points(
    ps: &PointSet,
    target: &[BigRational],
    bound: u32,
) -> Result<SPolynomial> {
    let monomials = Monomial::up_to_degree(ps.nvars(), bound);
    let e = ps.evaluation_matrix(&monomials);
    let x = linalg::solve_on_pivots(&e, target).ok_or(Error::DegreeBoundTooSmall(bound))?;
    Ok(SPolynomial::from_terms(
        ps.nvars(),
        monomials.into_iter().zip(x),
    ))
}

/// Smallest degree bound at which every function on the points is a
/// polynomial.
pub(crate) fn spanning_bound(ps: &PointSet) -> u32 {
    let mut b = 0;
    loop {
        let e = ps.evaluation_matrix(&Monomial::up_to_degree(ps.nvars(), b));
        if linalg::rank(&e) == ps.len() {
            return b;
        }
        b += 1;
    }
}

/// An element of the kernel ideal equal to 1 at the point of `outside` and
/// 0 at every class point; None when `outside` is itself a class point.
pub fn separating_polynomial(data: &ClassData, outside: &CycleType) -> Result<Option<SPolynomial>> {
    if outside.degree() as usize != data.degree {
        return Err(Error::Dimension("cycle type of the wrong degree".into()));
    }
    let mut ps = PointSet::new(data);
    if ps.types.contains(outside) {
        return Ok(None);
    }
    ps.types.push(outside.clone());
    ps.points.push(ClassPoint::from_cycle_type(outside));
    ps.weights.push(BigRational::zero());
    ps.fibers.push(Vec::new());
    let mut target = vec![BigRational::zero(); ps.len()];
    target[ps.len() - 1] = BigRational::one();
    interpolate_points(&ps, &target, spanning_bound(&ps).max(1)).map(Some)
}

/// Number of distinct class points.
pub fn restriction_image_rank(data: &ClassData) -> usize {
    PointSet::new(data).len()
}

/// For each distinct point (cycle-type order), |G|·e_i: the polynomial equal
/// to |G| there and 0 at the other points.
pub fn scaled_idempotents(data: &ClassData) -> Result<Vec<SPolynomial>> {
    let ps = PointSet::new(data);
    let bound = spanning_bound(&ps).max(1);
    let order = BigRational::from_integer(BigInt::from(data.order));
    (0..ps.len())
        .map(|i| {
            let target: Vec<BigRational> = (0..ps.len())
                .map(|j| {
                    if i == j {
                        order.clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            interpolate_points(&ps, &target, bound)
        })
        .collect()
}

/// Linear basis of the polynomials of total degree ≤ bound vanishing at all
/// class points.
#[derive(Clone, Debug)]
pub struct KernelIdealBasis {
    pub degree_bound: u32,
    pub nvars: usize,
    /// Echelon basis; each generator has leading coefficient 1 on a distinct
    /// leading monomial.
    pub generators: Vec<SPolynomial>,
    /// Whether each generator follows from the generic orthogonal-group
    /// relations s_k s_{n-1} = s_{n-1-k}, s_{n-1}^2 = 1.
    pub generic: Vec<bool>,
    /// Generators completing a basis of the generic relations to the whole
    /// space.
    pub extra: Vec<SPolynomial>,
}

fn coordinates(p: &SPolynomial, monomials: &[Monomial]) -> Option<Vec<BigRational>> {
    let v: Vec<BigRational> = monomials.iter().map(|m| p.coefficient(m)).collect();
    let total = p.terms().count();
    let present = v.iter().filter(|c| !c.is_zero()).count();
    (total == present).then_some(v)
}

fn in_span(rows: &QMatrix, v: &[BigRational]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let mut with = rows.clone();
    with.push(v.to_vec());
    linalg::rank(&with) == linalg::rank(rows)
}

/// Generic relations within the bound: the O(n-1) relations times monomials.
pub fn generic_relations(nvars: usize, bound: u32) -> Vec<SPolynomial> {
    if nvars == 0 {
        return Vec::new();
    }
    let last = nvars - 1;
    let mut base = Vec::new();
    for k in 0..last {
        // s_{k+1} s_{n-1} - s_{n-2-k}
        let rel = SPolynomial::variable(nvars, k)
            .mul(&SPolynomial::variable(nvars, last))
            .sub(&SPolynomial::variable(nvars, last - 1 - k));
        base.push(rel);
    }
    base.push(
        SPolynomial::variable(nvars, last)
            .pow(2)
            .sub(&SPolynomial::one(nvars)),
    );
    let mut out = Vec::new();
    for rel in base {
        let room = bound.saturating_sub(rel.total_degree());
        if rel.total_degree() > bound {
            continue;
        }
        for m in Monomial::up_to_degree(nvars, room) {
            out.push(rel.mul(&SPolynomial::from_terms(nvars, [(m, BigRational::one())])));
        }
    }
    out
}

pub fn kernel_ideal(data: &ClassData, bound: u32) -> Result<KernelIdealBasis> {
    if bound < 1 {
        return Err(Error::DegreeBoundTooSmall(bound));
    }
    let ps = PointSet::new(data);
    let nvars = ps.nvars();
    let monomials = Monomial::up_to_degree(nvars, bound);
    let e = ps.evaluation_matrix(&monomials);
    let null = linalg::nullspace(&e, monomials.len());
    // echelon form with columns from the highest monomial down
    let mut rows: QMatrix = null
        .iter()
        .map(|v| v.iter().rev().cloned().collect())
        .collect();
    linalg::rref(&mut rows);
    let generators: Vec<SPolynomial> = rows
        .iter()
        .map(|r| {
            SPolynomial::from_terms(
                nvars,
                monomials.iter().cloned().zip(r.iter().rev().cloned()),
            )
        })
        .collect();

    let generic_rows: QMatrix = generic_relations(nvars, bound)
        .iter()
        .filter_map(|p| coordinates(p, &monomials))
        .collect();
    let generic = generators
        .iter()
        .map(|g| in_span(&generic_rows, &coordinates(g, &monomials).unwrap()))
        .collect();
    let mut span = generic_rows.clone();
    let mut extra = Vec::new();
    for g in &generators {
        let v = coordinates(g, &monomials).unwrap();
        if !in_span(&span, &v) {
            span.push(v);
            extra.push(g.clone());
        }
    }
    Ok(KernelIdealBasis {
        degree_bound: bound,
        nvars,
        generators,
        generic,
        extra,
    })
}

impl KernelIdealBasis {
    /// Membership in the linear span of the generators.
    pub fn contains(&self, p: &SPolynomial) -> bool {
        if p.nvars() > self.nvars || p.total_degree() > self.degree_bound {
            return false;
        }
        let p = p.widen(self.nvars);
        let monomials = Monomial::up_to_degree(self.nvars, self.degree_bound);
        let rows: QMatrix = self
            .generators
            .iter()
            .map(|g| coordinates(g, &monomials).unwrap())
            .collect();
        match coordinates(&p, &monomials) {
            Some(v) => in_span(&rows, &v),
            None => false,
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}
