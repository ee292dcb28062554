//! The classical MMP for smooth projective surfaces, on Néron–Severi
//! lattice models.
//!
//! A [`SurfaceLattice`] is a Gram matrix, a canonical class and a finite list
//! of classes known to be irreducible curves. Contractions act on the lattice:
//! contracting a `(-1)`-class `C` replaces the lattice by `C^perp`.
//!
//! Every nef/ample/cone verdict here is relative to the supplied curve list;
//! a lattice alone cannot enumerate all irreducible curves.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{
    self, coordinates_in_basis, dot, int_vec, integer_kernel, is_positive_definite, to_rational,
    IntMatrix, IntVector, Matrix, Rational,
};
use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("lattice rank must be positive")]
    EmptyLattice,
    #[error("Gram matrix is not square")]
    GramNotSquare,
    #[error("Gram matrix is not symmetric (entry {row},{col})")]
    AsymmetricGram { row: usize, col: usize },
    #[error("{what} has length {got}, expected {expected}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        got: usize,
    },
    #[error("C.(C+K) is odd, so the arithmetic genus is not an integer")]
    NonIntegralGenus,
    #[error("curve {index} violates adjunction parity")]
    CurveParity { index: usize },
    #[error("(-1)-class search is unbounded; supply an explicit bound")]
    UnboundedSearch,
    #[error("class is not a (-1)-class (need C^2 = -1 and K.C = -1)")]
    NotMinusOneClass,
    #[error("lattice does not have rank 2")]
    NotRank2,
    #[error("curve list is empty")]
    EmptyCurveList,
    #[error("curve classes span a cone containing a line")]
    NotPointed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceLattice {
    gram: IntMatrix,
    k: IntVector,
    curves: Vec<IntVector>,
    label: String,
}

impl SurfaceLattice {
    pub fn new(
        gram: IntMatrix,
        k: IntVector,
        curves: Vec<IntVector>,
        label: impl Into<String>,
    ) -> Result<Self, SurfaceError> {
        if !gram.is_square() {
            return Err(SurfaceError::GramNotSquare);
        }
        let rank = gram.rows();
        if rank == 0 {
            return Err(SurfaceError::EmptyLattice);
        }
        for row in 0..rank {
            for col in 0..row {
                if gram.get(row, col) != gram.get(col, row) {
                    return Err(SurfaceError::AsymmetricGram { row, col });
                }
            }
        }
        check_len("K", rank, &k)?;
        let s = Self {
            gram,
            k,
            curves: Vec::new(),
            label: label.into(),
        };
        for (index, c) in curves.iter().enumerate() {
            check_len(&format!("curve {index}"), rank, c)?;
            if s.dot(c, &s.plus_k(c)).is_odd() {
                return Err(SurfaceError::CurveParity { index });
            }
        }
        Ok(Self { curves, ..s })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn canonical(&self) -> &IntVector {
        &self.k
    }

    pub fn curves(&self) -> &[IntVector] {
        &self.curves
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_curves(mut self, curves: Vec<IntVector>) -> Result<Self, SurfaceError> {
        self.curves = Vec::new();
        Self::new(self.gram, self.k, curves, self.label)
    }

    pub fn dot(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, y).expect("vector length checked")
    }

    pub fn k_dot(&self, x: &[BigInt]) -> BigInt {
        self.dot(&self.k, x)
    }

    fn plus_k(&self, x: &[BigInt]) -> IntVector {
        x.iter().zip(&self.k).map(|(a, b)| a + b).collect()
    }

    fn check(&self, what: &str, x: &[BigInt]) -> Result<(), SurfaceError> {
        check_len(what, self.rank(), x)
    }

    /// Standard basis `(H, E_1, ..., E_r)` of a blow-up of `P^2` at `r` points.
    fn blowup_points(&self) -> Option<usize> {
        let r = self.rank() - 1;
        let standard = make_blowup_p2(r);
        (self.gram == standard.gram && self.k == standard.k).then_some(r)
    }

    /// Non-fatal remarks: currently a form of the wrong signature.
    pub fn warnings(&self) -> Vec<String> {
        let (pos, neg, zero) = lattice::signature(&self.gram).expect("symmetric");
        if (pos, neg, zero) != (1, self.rank() - 1, 0) {
            vec![format!(
                "intersection form has signature ({pos}, {neg}, {zero}), not (1, {}) as for a surface",
                self.rank() - 1
            )]
        } else {
            Vec::new()
        }
    }
}

fn check_len(what: &str, expected: usize, v: &[BigInt]) -> Result<(), SurfaceError> {
    if v.len() != expected {
        return Err(SurfaceError::DimensionMismatch {
            what: what.to_string(),
            expected,
            got: v.len(),
        });
    }
    Ok(())
}

/// `P^2` blown up at `r` points in basis `(H, E_1, ..., E_r)`.
pub fn make_blowup_p2(r: usize) -> SurfaceLattice {
    let n = r + 1;
    let mut gram = IntMatrix::zeros(n, n);
    gram.set(0, 0, BigInt::one());
    for i in 1..n {
        gram.set(i, i, -BigInt::one());
    }
    let mut k = vec![BigInt::one(); n];
    k[0] = BigInt::from(-3);
    let unit = |i: usize| -> IntVector { (0..n).map(|j| BigInt::from(u8::from(i == j))).collect() };
    let mut curves: Vec<IntVector> = (1..n).map(unit).collect();
    curves.push(unit(0));
    let label = if r == 0 {
        "P2".to_string()
    } else {
        format!("P2 blown up at {r} point{}", if r == 1 { "" } else { "s" })
    };
    SurfaceLattice {
        gram,
        k,
        curves,
        label,
    }
}

/// `P^1 x P^1` with the two ruling classes.
pub fn make_quadric() -> SurfaceLattice {
    SurfaceLattice {
        gram: lattice::int_matrix(&[&[0, 1], &[1, 0]]),
        k: int_vec(&[-2, -2]),
        curves: vec![int_vec(&[1, 0]), int_vec(&[0, 1])],
        label: "P1 x P1".to_string(),
    }
}

/// `p_a(C) = 1 + C.(C+K)/2`.
pub fn adjunction_genus(s: &SurfaceLattice, c: &[BigInt]) -> Result<BigInt, SurfaceError> {
    s.check("class", c)?;
    let twice = s.dot(c, &s.plus_k(c));
    if twice.is_odd() {
        return Err(SurfaceError::NonIntegralGenus);
    }
    Ok(BigInt::one() + twice / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    /// Maximum absolute value of any coordinate, for lattices where the
    /// search is otherwise infinite.
    pub bound: Option<u32>,
    pub exec: Execution,
}

/// All `C` with `C^2 = -1` and `K.C = -1`, sorted lexicographically.
pub fn enumerate_minus_one_classes(
    s: &SurfaceLattice,
    opts: SearchOptions,
) -> Result<Vec<IntVector>, SurfaceError> {
    let mut out = match s.blowup_points() {
        Some(r) if r <= 8 || opts.bound.is_some() => {
            blowup_minus_one_classes(r, opts.bound, opts.exec)
        }
        Some(_) => return Err(SurfaceError::UnboundedSearch),
        None => ellipsoid_minus_one_classes(s, opts.exec)
            .or_else(|| opts.bound.map(|b| box_minus_one_classes(s, b, opts.exec)))
            .ok_or(SurfaceError::UnboundedSearch)?,
    };
    out.sort();
    Ok(out)
}

/// Candidate degrees `a` of `aH - sum b_i E_i`: `(3a - 1)^2 <= r (a^2 + 1)`.
pub fn cauchy_schwarz_degrees(r: usize, bound: Option<u32>) -> Vec<i64> {
    let r = r as i64;
    let limit = match bound {
        Some(b) => i64::from(b),
        // For r < 9, (9 - r) a^2 <= 6|a| + r - 1 forces |a| <= 6 + r.
        None => 6 + r,
    };
    (-limit..=limit)
        .filter(|&a| (3 * a - 1).pow(2) <= r * (a * a + 1))
        .collect()
}

/// Structured search on a blow-up of `P^2`: `sum b_i = 3a - 1` and
/// `sum b_i^2 = a^2 + 1`, pruned by Cauchy–Schwarz on the unassigned tail.
fn blowup_minus_one_classes(r: usize, bound: Option<u32>, exec: Execution) -> Vec<IntVector> {
    let degrees = cauchy_schwarz_degrees(r, bound);
    let cap = bound.map(i64::from);
    exec.flat_map(degrees, |a| {
        let mut found = Vec::new();
        let mut tail = Vec::with_capacity(r);
        fill_coefficients(
            r,
            3 * a - 1,
            a * a + 1,
            cap,
            &mut tail,
            &mut |b: &[i64]| {
                let mut class = vec![BigInt::from(a)];
                class.extend(b.iter().map(|&x| BigInt::from(-x)));
                found.push(class);
            },
        );
        found
    })
}

fn fill_coefficients(
    slots: usize,
    sum: i64,
    squares: i64,
    cap: Option<i64>,
    prefix: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if slots == 0 {
        if sum == 0 && squares == 0 {
            emit(prefix);
        }
        return;
    }
    // x^2 = x mod 2, and (sum)^2 <= slots * squares.
    if squares < 0 || (sum - squares) % 2 != 0 || sum * sum > slots as i64 * squares {
        return;
    }
    let mut reach = squares.sqrt();
    if let Some(c) = cap {
        reach = reach.min(c);
    }
    for x in -reach..=reach {
        prefix.push(x);
        fill_coefficients(slots - 1, sum - x, squares - x * x, cap, prefix, emit);
        prefix.pop();
    }
}

/// Positive definite form `Q(x) = 2 (K.x)^2 - K^2 x^2`; on `(-1)`-classes it
/// equals `2 + K^2`. Returns `None` when `Q` is not positive definite.
fn ellipsoid_minus_one_classes(s: &SurfaceLattice, exec: Execution) -> Option<Vec<IntVector>> {
    let n = s.rank();
    let gk = s.gram.mul_vec(&s.k).expect("length checked");
    let k2 = dot(&s.k, &gk);
    if !k2.is_positive() {
        return None;
    }
    let mut form = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            form.set(
                i,
                j,
                BigInt::from(2) * &gk[i] * &gk[j] - &k2 * s.gram.get(i, j),
            );
        }
    }
    if !is_positive_definite(&form).ok()? {
        return None;
    }
    let target = Rational::from_integer(BigInt::from(2) + &k2);
    let candidates = fincke_pohst(&form, &target, exec);
    let minus_one = -BigInt::one();
    Some(
        candidates
            .into_iter()
            .filter(|x| s.dot(x, x) == minus_one && s.k_dot(x) == minus_one)
            .collect(),
    )
}

/// Every integer `x` with `x^T A x = target`, for positive definite `A`.
pub fn fincke_pohst(a: &IntMatrix, target: &Rational, exec: Execution) -> Vec<IntVector> {
    let n = a.rows();
    // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    let mut q: Vec<Vec<Rational>> = a.to_rows().into_iter().map(|r| to_rational(&r)).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let delta = &q[k][i] * &q[i][l];
                q[k][l] -= delta;
            }
        }
    }
    let q = &q;
    let top = n - 1;
    let first = integer_window(&q[top][top], &Rational::zero(), target);
    exec.flat_map(first, |x| {
        let mut found = Vec::new();
        let mut xs = vec![BigInt::zero(); n];
        let used = &q[top][top] * Rational::from_integer(x.clone()).pow(2);
        xs[top] = x;
        descend(q, top, target - used, &mut xs, &mut found);
        found
    })
}

fn descend(
    q: &[Vec<Rational>],
    level: usize,
    budget: Rational,
    xs: &mut Vec<BigInt>,
    found: &mut Vec<IntVector>,
) {
    if level == 0 {
        if budget.is_zero() {
            found.push(xs.clone());
        }
        return;
    }
    let i = level - 1;
    let center: Rational = -(i + 1..q.len())
        .map(|j| &q[i][j] * Rational::from_integer(xs[j].clone()))
        .fold(Rational::zero(), |a, b| a + b);
    for x in integer_window(&q[i][i], &center, &budget) {
        let used = &q[i][i] * (Rational::from_integer(x.clone()) - &center).pow(2);
        xs[i] = x;
        descend(q, i, &budget - used, xs, found);
    }
    xs[i] = BigInt::zero();
}

/// Integers `x` with `weight * (x - center)^2 <= budget`, ascending.
fn integer_window(weight: &Rational, center: &Rational, budget: &Rational) -> Vec<BigInt> {
    let fits = |x: &BigInt| weight * (Rational::from_integer(x.clone()) - center).pow(2) <= *budget;
    let mid = center.floor().to_integer();
    let mut lo = mid.clone();
    while fits(&(&lo - 1)) {
        lo -= 1;
    }
    let mut hi = mid.clone() + 1;
    while fits(&hi) {
        hi += 1;
    }
    let mut out = Vec::new();
    let mut x = lo;
    while x < hi {
        if fits(&x) {
            out.push(x.clone());
        }
        x += 1;
    }
    out
}

/// Exhaustive scan of `[-bound, bound]^rank`.
fn box_minus_one_classes(s: &SurfaceLattice, bound: u32, exec: Execution) -> Vec<IntVector> {
    let b = i64::from(bound);
    let n = s.rank();
    let minus_one = -BigInt::one();
    exec.flat_map((-b..=b).collect(), |x0| {
        let mut found = Vec::new();
        let mut x = vec![x0];
        scan(&mut x, n, b, &mut |v: &[i64]| {
            let v = int_vec(v);
            if s.k_dot(&v) == minus_one && s.dot(&v, &v) == minus_one {
                found.push(v);
            }
        });
        found
    })
}

fn scan(prefix: &mut Vec<i64>, n: usize, b: i64, f: &mut impl FnMut(&[i64])) {
    if prefix.len() == n {
        f(prefix);
        return;
    }
    for x in -b..=b {
        prefix.push(x);
        scan(prefix, n, b, f);
        prefix.pop();
    }
}

/// Castelnuovo contraction of the `(-1)`-class `c`.
///
/// The new lattice is `c^perp` with the induced form. `K` pulls back to
/// `K - c`, and a curve class `x` maps to `x + (x.c) c`; multiples of `c`
/// disappear and curves with the same image are listed once.
pub fn castelnuovo_contract(
    s: &SurfaceLattice,
    c: &[BigInt],
) -> Result<SurfaceLattice, SurfaceError> {
    s.check("class", c)?;
    let minus_one = -BigInt::one();
    if s.dot(c, c) != minus_one || s.k_dot(c) != minus_one {
        return Err(SurfaceError::NotMinusOneClass);
    }
    let functional = s.gram.mul_vec(c).expect("length checked");
    let basis = integer_kernel(&Matrix::from_rows(vec![functional]).expect("one row"));
    let gram = basis
        .mul(&s.gram)
        .and_then(|bg| bg.mul(&basis.transpose()))
        .expect("dimensions agree");
    let push = |x: &[BigInt]| -> IntVector {
        let xc = s.dot(x, c);
        x.iter().zip(c).map(|(a, b)| a + &xc * b).collect()
    };
    let k_minus_c: IntVector = s.k.iter().zip(c).map(|(a, b)| a - b).collect();
    let k = coordinates_in_basis(&basis, &k_minus_c).expect("K - C lies in C^perp");
    let mut curves: Vec<IntVector> = Vec::new();
    for x in &s.curves {
        let image = push(x);
        if image.iter().all(Zero::is_zero) {
            continue;
        }
        let coords = coordinates_in_basis(&basis, &image).expect("image lies in C^perp");
        if !curves.contains(&coords) {
            curves.push(coords);
        }
    }
    let label = format!("{} / contract {}", s.label, fmt_class(c));
    Ok(SurfaceLattice {
        gram,
        k,
        curves,
        label,
    })
}

fn fmt_class(c: &[BigInt]) -> String {
    let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmpStep {
    pub contracted: IntVector,
    pub rank_before: usize,
    pub rank_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MmpOutcome {
    MinimalModel,
    MoriFibreP2like,
    MoriFibreRuled(IntVector),
    /// No rule applies with the known curves (K negative on some known
    /// curve, but no fibre class among them).
    Inconclusive,
}

impl MmpOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            Self::MinimalModel => "MinimalModel",
            Self::MoriFibreP2like => "MoriFibreP2like",
            Self::MoriFibreRuled(_) => "MoriFibreRuled",
            Self::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmpTrace {
    pub steps: Vec<MmpStep>,
    pub outcome: MmpOutcome,
    pub final_lattice: SurfaceLattice,
    /// Mori fibre verdicts above rank 2 cannot certify extremality of the
    /// fibre on a lattice model.
    pub heuristic: bool,
    pub warnings: Vec<String>,
}

/// Contracts the lexicographically smallest `(-1)`-class until none is left,
/// then classifies the end point from the known curves.
pub fn run_classical_mmp(
    s: &SurfaceLattice,
    opts: SearchOptions,
) -> Result<MmpTrace, SurfaceError> {
    let mut warnings = s.warnings();
    let mut current = s.clone();
    let mut steps = Vec::new();
    while current.rank() > 1 {
        let classes = enumerate_minus_one_classes(&current, opts)?;
        let Some(c) = classes.into_iter().next() else {
            break;
        };
        let next = castelnuovo_contract(&current, &c)?;
        debug_assert_eq!(next.rank() + 1, current.rank());
        steps.push(MmpStep {
            contracted: c,
            rank_before: current.rank(),
            rank_after: next.rank(),
        });
        current = next;
    }
    let outcome = end_point(&current);
    let heuristic = matches!(outcome, MmpOutcome::MoriFibreRuled(_)) && current.rank() > 2;
    if !matches!(outcome, MmpOutcome::MoriFibreP2like) {
        warnings.push("verdict is relative to the supplied curve classes".to_string());
    }
    Ok(MmpTrace {
        steps,
        outcome,
        final_lattice: current,
        heuristic,
        warnings,
    })
}

fn end_point(s: &SurfaceLattice) -> MmpOutcome {
    let zero = BigInt::zero();
    if let Some(f) = s
        .curves
        .iter()
        .find(|f| s.dot(f, f).is_zero() && s.k_dot(f) < zero)
    {
        return MmpOutcome::MoriFibreRuled(f.clone());
    }
    if s.rank() == 1 && s.gram.get(0, 0).is_positive() {
        return if s.k[0].is_negative() {
            MmpOutcome::MoriFibreP2like
        } else {
            MmpOutcome::MinimalModel
        };
    }
    if s.curves.iter().all(|c| s.k_dot(c) >= zero) {
        MmpOutcome::MinimalModel
    } else {
        MmpOutcome::Inconclusive
    }
}

/// Boundary rays of the planar cone spanned by the curve classes, as
/// primitive vectors in order of first appearance in the curve list.
pub fn cone_rays_rank2(s: &SurfaceLattice) -> Result<(IntVector, IntVector), SurfaceError> {
    if s.rank() != 2 {
        return Err(SurfaceError::NotRank2);
    }
    let gens: Vec<(usize, IntVector)> = s
        .curves
        .iter()
        .enumerate()
        .filter_map(|(i, c)| lattice::primitive(c).ok().map(|p| (i, p)))
        .collect();
    if gens.is_empty() {
        return Err(SurfaceError::EmptyCurveList);
    }
    let cross = |a: &IntVector, b: &IntVector| &a[0] * &b[1] - &a[1] * &b[0];
    let opposite = gens.iter().any(|(_, a)| {
        gens.iter()
            .any(|(_, b)| cross(a, b).is_zero() && dot(a, b).is_negative())
    });
    if opposite {
        return Err(SurfaceError::NotPointed);
    }
    // clockwise-most: everything else is counter-clockwise of it
    let cw = gens
        .iter()
        .find(|(_, a)| gens.iter().all(|(_, b)| !cross(a, b).is_negative()));
    let ccw = gens
        .iter()
        .find(|(_, a)| gens.iter().all(|(_, b)| !cross(b, a).is_negative()));
    let (Some(cw), Some(ccw)) = (cw, ccw) else {
        return Err(SurfaceError::NotPointed);
    };
    Ok(if cw.0 <= ccw.0 {
        (cw.1.clone(), ccw.1.clone())
    } else {
        (ccw.1.clone(), cw.1.clone())
    })
}

/// `D.C >= 0` for every known curve `C`.
pub fn is_nef(s: &SurfaceLattice, d: &[BigInt]) -> Result<bool, SurfaceError> {
    s.check("divisor", d)?;
    if s.curves.is_empty() {
        return Err(SurfaceError::EmptyCurveList);
    }
    Ok(s.curves.iter().all(|c| !s.dot(d, c).is_negative()))
}

/// `D.C > 0` for every known curve and `D^2 > 0`.
pub fn is_ample_kleiman(s: &SurfaceLattice, d: &[BigInt]) -> Result<bool, SurfaceError> {
    s.check("divisor", d)?;
    if s.curves.is_empty() {
        return Err(SurfaceError::EmptyCurveList);
    }
    Ok(s.curves.iter().all(|c| s.dot(d, c).is_positive()) && s.dot(d, d).is_positive())
}

/// `chi(O(D)) = D.(D-K)/2 + chi0`, where `chi0 = 1 + p_a(X)`.
///
/// A non-integral value means the lattice data is inconsistent.
pub fn riemann_roch_surface(
    s: &SurfaceLattice,
    d: &[BigInt],
    chi0: &BigInt,
) -> Result<Rational, SurfaceError> {
    s.check("divisor", d)?;
    let d_minus_k: IntVector = d.iter().zip(&s.k).map(|(a, b)| a - b).collect();
    Ok(Rational::new(s.dot(d, &d_minus_k), BigInt::from(2)) + Rational::from_integer(chi0.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn v(x: &[i64]) -> IntVector {
        int_vec(x)
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn blowup_lattices() {
        let p2 = make_blowup_p2(0);
        assert_eq!(p2.rank(), 1);
        assert_eq!(p2.gram(), &lattice::int_matrix(&[&[1]]));
        assert_eq!(p2.canonical(), &v(&[-3]));
        assert_eq!(make_blowup_p2(1).canonical(), &v(&[-3, 1]));
        assert_eq!(make_blowup_p2(6).rank(), 7);
        assert!(make_blowup_p2(6).warnings().is_empty());
    }

    #[test]
    fn quadric_basics() {
        let q = make_quadric();
        let f = v(&[1, 0]);
        assert_eq!(q.dot(&f, &f), BigInt::zero());
        assert_eq!(q.k_dot(&f), BigInt::from(-2));
        assert_eq!(adjunction_genus(&q, &f).unwrap(), BigInt::zero());
    }

    #[test]
    fn genus_examples() {
        let p2 = make_blowup_p2(0);
        assert_eq!(adjunction_genus(&p2, &v(&[1])).unwrap(), BigInt::zero());
        assert_eq!(adjunction_genus(&p2, &v(&[3])).unwrap(), BigInt::one());
        assert_eq!(
            adjunction_genus(&make_blowup_p2(1), &v(&[0, 1])).unwrap(),
            BigInt::zero()
        );
        // on a lattice with K = 0 and an odd form, parity fails
        let odd =
            SurfaceLattice::new(lattice::int_matrix(&[&[1]]), v(&[0]), vec![], "odd").unwrap();
        assert_eq!(
            adjunction_genus(&odd, &v(&[1])),
            Err(SurfaceError::NonIntegralGenus)
        );
    }

    #[test]
    fn construction_checks() {
        let err = SurfaceLattice::new(
            lattice::int_matrix(&[&[1, 2], &[0, 1]]),
            v(&[0, 0]),
            vec![],
            "x",
        );
        assert_eq!(err, Err(SurfaceError::AsymmetricGram { row: 1, col: 0 }));
        let err = SurfaceLattice::new(lattice::int_matrix(&[&[1]]), v(&[0]), vec![v(&[1])], "x");
        assert_eq!(err, Err(SurfaceError::CurveParity { index: 0 }));
        let err = SurfaceLattice::new(lattice::int_matrix(&[&[1]]), v(&[0, 1]), vec![], "x");
        assert!(matches!(err, Err(SurfaceError::DimensionMismatch { .. })));
    }

    #[test]
    fn small_del_pezzo_classes() {
        assert_eq!(
            enumerate_minus_one_classes(&make_blowup_p2(1), opts()).unwrap(),
            vec![v(&[0, 1])]
        );
        assert_eq!(
            enumerate_minus_one_classes(&make_blowup_p2(2), opts()).unwrap(),
            vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, -1, -1])]
        );
        assert_eq!(
            enumerate_minus_one_classes(&make_blowup_p2(6), opts())
                .unwrap()
                .len(),
            27
        );
    }

    #[test]
    fn nine_points_need_a_bound() {
        let s = make_blowup_p2(9);
        assert_eq!(
            enumerate_minus_one_classes(&s, opts()),
            Err(SurfaceError::UnboundedSearch)
        );
        let small = enumerate_minus_one_classes(
            &s,
            SearchOptions {
                bound: Some(1),
                ..opts()
            },
        )
        .unwrap();
        let large = enumerate_minus_one_classes(
            &s,
            SearchOptions {
                bound: Some(3),
                ..opts()
            },
        )
        .unwrap();
        assert!(small.len() < large.len());
        for c in &large {
            assert_eq!(s.dot(c, c), BigInt::from(-1));
            assert_eq!(s.k_dot(c), BigInt::from(-1));
        }
    }

    #[test]
    fn ellipsoid_route_matches_structured_route() {
        for r in 1..=7 {
            let s = make_blowup_p2(r);
            let mut a = blowup_minus_one_classes(r, None, Execution::Sequential);
            a.sort();
            let mut b = ellipsoid_minus_one_classes(&s, Execution::Sequential).unwrap();
            b.sort();
            assert_eq!(a, b, "r = {r}");
        }
    }

    #[test]
    fn quadric_has_no_minus_one_classes() {
        assert!(enumerate_minus_one_classes(&make_quadric(), opts())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn contraction_examples() {
        let p2 = castelnuovo_contract(&make_blowup_p2(1), &v(&[0, 1])).unwrap();
        assert_eq!(p2.gram(), &lattice::int_matrix(&[&[1]]));
        assert_eq!(p2.canonical(), &v(&[-3]));

        let q = castelnuovo_contract(&make_blowup_p2(2), &v(&[1, -1, -1])).unwrap();
        assert_eq!(q.rank(), 2);
        assert_eq!(lattice::determinant(q.gram()).unwrap(), BigInt::from(-1));
        assert_eq!(lattice::signature(q.gram()).unwrap(), (1, 1, 0));
        // even form and K^2 = 8: the quadric
        assert!((0..2).all(|i| q.gram().get(i, i).is_even()));
        assert_eq!(q.k_dot(q.canonical()), BigInt::from(8));
        assert!(enumerate_minus_one_classes(&q, opts()).unwrap().is_empty());

        assert_eq!(
            castelnuovo_contract(&make_blowup_p2(1), &v(&[1, -1])),
            Err(SurfaceError::NotMinusOneClass)
        );
    }

    #[test]
    fn mmp_examples() {
        let t = run_classical_mmp(&make_blowup_p2(2), opts()).unwrap();
        assert_eq!(t.steps.len(), 2);
        assert_eq!(t.outcome, MmpOutcome::MoriFibreP2like);
        assert_eq!(t.final_lattice.canonical(), &v(&[-3]));

        let t = run_classical_mmp(&make_quadric(), opts()).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.outcome, MmpOutcome::MoriFibreRuled(v(&[1, 0])));

        let general =
            SurfaceLattice::new(lattice::int_matrix(&[&[1]]), v(&[3]), vec![], "g").unwrap();
        assert_eq!(
            run_classical_mmp(&general, opts()).unwrap().outcome,
            MmpOutcome::MinimalModel
        );

        assert_eq!(
            run_classical_mmp(&make_blowup_p2(9), opts()),
            Err(SurfaceError::UnboundedSearch)
        );
    }

    #[test]
    fn cone_ray_examples() {
        let q = make_quadric();
        assert_eq!(cone_rays_rank2(&q).unwrap(), (v(&[1, 0]), v(&[0, 1])));
        let b = make_blowup_p2(1)
            .with_curves(vec![v(&[0, 1]), v(&[1, -1])])
            .unwrap();
        assert_eq!(cone_rays_rank2(&b).unwrap(), (v(&[0, 1]), v(&[1, -1])));
        let q3 = make_quadric()
            .with_curves(vec![v(&[1, 0]), v(&[1, 1]), v(&[0, 1])])
            .unwrap();
        assert_eq!(cone_rays_rank2(&q3).unwrap(), (v(&[1, 0]), v(&[0, 1])));
        assert_eq!(
            cone_rays_rank2(&make_blowup_p2(2)),
            Err(SurfaceError::NotRank2)
        );
        let empty = make_quadric().with_curves(vec![]).unwrap();
        assert_eq!(cone_rays_rank2(&empty), Err(SurfaceError::EmptyCurveList));
        let line = make_quadric()
            .with_curves(vec![v(&[1, 0]), v(&[-1, 0])])
            .unwrap();
        assert_eq!(cone_rays_rank2(&line), Err(SurfaceError::NotPointed));
    }

    #[test]
    fn nef_and_ample() {
        let q = make_quadric();
        assert!(is_nef(&q, &v(&[1, 1])).unwrap());
        assert!(is_ample_kleiman(&q, &v(&[1, 1])).unwrap());
        assert!(is_nef(&q, &v(&[1, 0])).unwrap());
        assert!(!is_ample_kleiman(&q, &v(&[1, 0])).unwrap());
        let b = make_blowup_p2(1);
        assert!(!is_nef(&b, b.canonical()).unwrap());
        let empty = make_quadric().with_curves(vec![]).unwrap();
        assert_eq!(
            is_nef(&empty, &v(&[1, 1])),
            Err(SurfaceError::EmptyCurveList)
        );
    }

    #[test]
    fn riemann_roch_examples() {
        let p2 = make_blowup_p2(0);
        let one = BigInt::one();
        assert_eq!(
            riemann_roch_surface(&p2, &v(&[0]), &one).unwrap(),
            rat(1, 1)
        );
        assert_eq!(
            riemann_roch_surface(&p2, &v(&[1]), &one).unwrap(),
            rat(3, 1)
        );
        assert_eq!(
            riemann_roch_surface(&p2, &v(&[3]), &one).unwrap(),
            rat(10, 1)
        );
    }

    #[test]
    fn signature_warning_for_non_geometric_forms() {
        let s = SurfaceLattice::new(lattice::int_matrix(&[&[-1]]), v(&[1]), vec![], "neg").unwrap();
        assert_eq!(s.warnings().len(), 1);
    }
}
