//! Toric singularities from cone data.
//!
//! A cone is given by its primitive ray generators in `N = Z^d`. The toric
//! variety is Q-Gorenstein exactly when a rational functional `m` takes the
//! value 1 on every generator; the lattice points of the cone with `m <= 1`
//! then decide terminal/canonical, and `m(v) - 1` is the discrepancy of the
//! toric valuation at `v`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{
    self, denominator_lcm, dot, is_primitive, smith_normal_form, solve_consistent, to_rational,
    IntMatrix, IntVector, Matrix, RatMatrix, RatVector, Rational,
};
use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("cone rank must be positive")]
    InvalidRank,
    #[error("cone has no rays")]
    NoRays,
    #[error("ray {index} has length {got}, expected {expected}")]
    RayLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("ray {index} is zero")]
    ZeroRay { index: usize },
    #[error("ray {index} is not primitive")]
    NonPrimitiveRay { index: usize },
    #[error("ray {index} duplicates ray {first}")]
    DuplicateRay { index: usize, first: usize },
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("cone contains a line")]
    NotStronglyConvex,
    #[error("point is not in the cone")]
    NotInCone,
    #[error("K is not Q-Cartier: no functional is 1 on all rays")]
    NotQGorenstein,
    #[error("point is not primitive")]
    NotPrimitive,
    #[error("point has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Rational polyhedral cone in `N_R`, stored by its primitive generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    rays: Vec<IntVector>,
}

impl Cone {
    /// Validates shape, primitivity and distinctness of the generators.
    /// Convexity and dimension are checked by the operations that need them.
    pub fn new(rank: usize, rays: Vec<IntVector>) -> Result<Self, ToricError> {
        if rank == 0 {
            return Err(ToricError::InvalidRank);
        }
        if rays.is_empty() {
            return Err(ToricError::NoRays);
        }
        for (index, ray) in rays.iter().enumerate() {
            if ray.len() != rank {
                return Err(ToricError::RayLength {
                    index,
                    expected: rank,
                    got: ray.len(),
                });
            }
            if ray.iter().all(Zero::is_zero) {
                return Err(ToricError::ZeroRay { index });
            }
            if !is_primitive(ray) {
                return Err(ToricError::NonPrimitiveRay { index });
            }
            if let Some(first) = rays[..index].iter().position(|r| r == ray) {
                return Err(ToricError::DuplicateRay { index, first });
            }
        }
        Ok(Self { rank, rays })
    }

    pub fn from_i64(rays: &[&[i64]]) -> Result<Self, ToricError> {
        let rank = rays.first().map_or(0, |r| r.len());
        Self::new(rank, rays.iter().map(|r| lattice::int_vec(r)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.rank && self.ray_matrix_rank() == self.rank
    }

    fn ray_matrix(&self) -> IntMatrix {
        Matrix::from_rows(self.rays.clone()).expect("rays share a length")
    }

    fn ray_matrix_rank(&self) -> usize {
        lattice::rank(&self.ray_matrix())
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.ray_matrix_rank() == self.rank
    }

    /// True when no nonzero `v` has both `v` and `-v` in the cone.
    ///
    /// A cone with a nontrivial lineality space contains some generator
    /// together with its negative, so it suffices to test `-v_i` for each
    /// generator.
    pub fn is_strongly_convex(&self) -> bool {
        self.rays.iter().all(|v| {
            let neg: IntVector = v.iter().map(|x| -x).collect();
            !contains_by_caratheodory(&self.rays, &neg)
        })
    }

    fn check_shape(&self) -> Result<(), ToricError> {
        if !self.is_strongly_convex() {
            return Err(ToricError::NotStronglyConvex);
        }
        if !self.is_full_dimensional() {
            return Err(ToricError::NotFullDimensional);
        }
        Ok(())
    }
}

/// Membership in the cone spanned by `gens`, via Carathéodory: `p` is in the
/// cone iff it is a nonnegative combination of some linearly independent
/// subset of the generators.
pub fn contains_by_caratheodory(gens: &[IntVector], p: &[BigInt]) -> bool {
    if p.iter().all(Zero::is_zero) {
        return true;
    }
    let dim = p.len();
    let target = to_rational(p);
    (1..=gens.len().min(dim)).any(|size| {
        (0..gens.len()).combinations(size).any(|subset| {
            let cols: Vec<Vec<Rational>> = (0..dim)
                .map(|row| {
                    subset
                        .iter()
                        .map(|&g| Rational::from_integer(gens[g][row].clone()))
                        .collect()
                })
                .collect();
            let a = RatMatrix::from_rows(cols).expect("rectangular");
            match solve_consistent(&a, &target) {
                Ok(Some((x, r))) if r == size => x.iter().all(|c| !c.is_negative()),
                _ => false,
            }
        })
    })
}

/// Rational functional with value 1 on every ray generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFunctional {
    m: RatVector,
}

impl SupportFunctional {
    pub fn coefficients(&self) -> &[Rational] {
        &self.m
    }

    pub fn eval(&self, p: &[BigInt]) -> Rational {
        dot(&self.m, &to_rational(p))
    }

    /// Least `r` with `r * m` integral, i.e. the index of `K`.
    pub fn gorenstein_index(&self) -> BigInt {
        denominator_lcm(&self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ToricKind {
    Smooth,
    Terminal,
    Canonical,
    KltOnly,
    NotQGorenstein,
}

impl ToricKind {
    pub fn is_terminal(self) -> bool {
        matches!(self, Self::Smooth | Self::Terminal)
    }

    pub fn is_canonical(self) -> bool {
        self.is_terminal() || self == Self::Canonical
    }

    /// Every Q-Gorenstein toric singularity is klt.
    pub fn is_klt(self) -> bool {
        self != Self::NotQGorenstein
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Smooth => "Smooth",
            Self::Terminal => "Terminal",
            Self::Canonical => "Canonical",
            Self::KltOnly => "KltOnly",
            Self::NotQGorenstein => "NotQGorenstein",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricClass {
    pub kind: ToricKind,
    pub q_factorial: bool,
    pub gorenstein_index: Option<BigInt>,
}

/// Inward primitive normals `h_j` with `cone = { x : h_j(x) >= 0 }`, sorted
/// lexicographically.
///
/// Brute force: every `(d-1)`-subset of rays with a well-defined normal is a
/// candidate, kept when all rays lie on one side.
pub fn facets(c: &Cone) -> Result<Vec<IntVector>, ToricError> {
    c.check_shape()?;
    let d = c.rank;
    let mut out: Vec<IntVector> = Vec::new();
    for subset in (0..c.rays.len()).combinations(d - 1) {
        let normal = cofactor_normal(&subset.iter().map(|&i| &c.rays[i]).collect::<Vec<_>>(), d);
        let Ok(normal) = lattice::primitive(&normal) else {
            continue;
        };
        let values: Vec<BigInt> = c.rays.iter().map(|r| dot(r, &normal)).collect();
        let oriented = if values.iter().all(|v| !v.is_negative()) {
            normal
        } else if values.iter().all(|v| !v.is_positive()) {
            normal.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        if !out.contains(&oriented) {
            out.push(oriented);
        }
    }
    out.sort();
    Ok(out)
}

/// Generalised cross product of `d - 1` vectors in `Z^d`.
fn cofactor_normal(vectors: &[&IntVector], d: usize) -> IntVector {
    (0..d)
        .map(|k| {
            let minor: Vec<Vec<BigInt>> = vectors
                .iter()
                .map(|v| (0..d).filter(|&j| j != k).map(|j| v[j].clone()).collect())
                .collect();
            let det = if minor.is_empty() {
                BigInt::one()
            } else {
                lattice::determinant(&Matrix::from_rows(minor).expect("rectangular"))
                    .expect("square minor")
            };
            if k % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

/// The functional `m` with `m(P_i) = 1` on every ray, if one exists.
pub fn q_gorenstein_functional(c: &Cone) -> Option<SupportFunctional> {
    let a = c.ray_matrix().map(|x| Rational::from_integer(x.clone()));
    let ones = vec![Rational::one(); c.rays.len()];
    let (m, rank) = solve_consistent(&a, &ones).ok()??;
    // Only unique when full-dimensional; otherwise a representative.
    debug_assert!(rank <= c.rank);
    Some(SupportFunctional { m })
}

/// Nonzero lattice points `P` of the cone with `m(P) <= 1`, in lexicographic
/// order. The generators are always among them.
pub fn lattice_points_at_or_below_one(
    c: &Cone,
    m: &SupportFunctional,
    exec: Execution,
) -> Result<Vec<IntVector>, ToricError> {
    let normals = facets(c)?;
    // { m <= 1 } within the cone is conv(0, rays): bound by its box.
    let (lo, hi): (Vec<BigInt>, Vec<BigInt>) = (0..c.rank)
        .map(|k| {
            let coords = c.rays.iter().map(|r| r[k].clone()).chain([BigInt::zero()]);
            let (lo, hi) = coords.minmax().into_option().expect("nonempty");
            (lo, hi)
        })
        .unzip();
    let first: Vec<BigInt> = num_iter(&lo[0], &hi[0]);
    let mut points = exec.flat_map(first, |x0| {
        let mut found = Vec::new();
        let mut prefix = vec![x0];
        scan_box(&lo, &hi, &mut prefix, &mut |p: &[BigInt]| {
            if p.iter().all(Zero::is_zero) {
                return;
            }
            if normals.iter().any(|h| dot(h, p).is_negative()) {
                return;
            }
            if m.eval(p) <= Rational::one() {
                found.push(p.to_vec());
            }
        });
        found
    });
    points.sort();
    Ok(points)
}

fn num_iter(lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        out.push(x.clone());
        x += 1;
    }
    out
}

fn scan_box(lo: &[BigInt], hi: &[BigInt], prefix: &mut Vec<BigInt>, f: &mut impl FnMut(&[BigInt])) {
    let k = prefix.len();
    if k == lo.len() {
        f(prefix);
        return;
    }
    for x in num_iter(&lo[k], &hi[k]) {
        prefix.push(x);
        scan_box(lo, hi, prefix, f);
        prefix.pop();
    }
}

/// Full classification of a cone.
pub fn classify_cone(c: &Cone, exec: Execution) -> Result<ToricClass, ToricError> {
    c.check_shape()?;
    let q_factorial = c.is_simplicial();
    let Some(m) = q_gorenstein_functional(c) else {
        return Ok(ToricClass {
            kind: ToricKind::NotQGorenstein,
            q_factorial,
            gorenstein_index: None,
        });
    };
    let index = m.gorenstein_index();
    let smooth = q_factorial && smith_normal_form(&c.ray_matrix()).iter().all(One::is_one);
    let kind = if smooth {
        ToricKind::Smooth
    } else {
        let extra: Vec<Rational> = lattice_points_at_or_below_one(c, &m, exec)?
            .into_iter()
            .filter(|p| !c.rays.contains(p))
            .map(|p| m.eval(&p))
            .collect();
        if extra.is_empty() {
            ToricKind::Terminal
        } else if extra.iter().all(|v| v >= &Rational::one()) {
            ToricKind::Canonical
        } else {
            ToricKind::KltOnly
        }
    };
    Ok(ToricClass {
        kind,
        q_factorial,
        gorenstein_index: Some(index),
    })
}

/// Discrepancy `m(v) - 1` of the toric valuation of the primitive point `v`.
pub fn toric_discrepancy(c: &Cone, v: &[BigInt]) -> Result<Rational, ToricError> {
    if v.len() != c.rank {
        return Err(ToricError::DimensionMismatch {
            expected: c.rank,
            got: v.len(),
        });
    }
    if !is_primitive(v) {
        return Err(ToricError::NotPrimitive);
    }
    let normals = facets(c)?;
    if normals.iter().any(|h| dot(h, v).is_negative()) {
        return Err(ToricError::NotInCone);
    }
    let m = q_gorenstein_functional(c).ok_or(ToricError::NotQGorenstein)?;
    Ok(m.eval(v) - Rational::one())
}

/// Everything the front end reports for one cone.
#[derive(Debug, Clone)]
pub struct ConeAnalysis {
    pub class: ToricClass,
    pub facets: Vec<IntVector>,
    pub functional: Option<SupportFunctional>,
    pub points_at_or_below_one: Vec<IntVector>,
    /// `(v, m(v) - 1)` for primitive non-generator points with `m(v) <= 1`.
    pub discrepancies: Vec<(IntVector, Rational)>,
}

pub fn analyze_cone(c: &Cone, exec: Execution) -> Result<ConeAnalysis, ToricError> {
    let class = classify_cone(c, exec)?;
    let facets = facets(c)?;
    let functional = q_gorenstein_functional(c);
    let (points, discrepancies) = match &functional {
        Some(m) => {
            let pts = lattice_points_at_or_below_one(c, m, exec)?;
            let disc = pts
                .iter()
                .filter(|p| !c.rays.contains(p) && is_primitive(p))
                .map(|p| (p.clone(), m.eval(p) - Rational::one()))
                .collect();
            (pts, disc)
        }
        None => (Vec::new(), Vec::new()),
    };
    Ok(ConeAnalysis {
        class,
        facets,
        functional,
        points_at_or_below_one: points,
        discrepancies,
    })
}
