//! Discrepancies of a normal surface singularity from a resolution graph.
//!
//! Vertex `j` is an exceptional curve `E_j` of arithmetic genus `p_j` and
//! self-intersection `E_j^2`; edges carry intersection numbers. Writing
//! `K_Y + B~ = f^*(K_X + B) + sum d_i E_i` and intersecting with each `E_j`
//! gives the square system
//!
//! ```text
//! sum_i d_i (E_i . E_j) = (2 p_j - 2 - E_j^2) + sum_k b_k (B_k . E_j)
//! ```
//!
//! whose matrix is the (negative definite) intersection matrix.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{self, IntMatrix, RatVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("edge {edge} refers to missing vertex {vertex}")]
    EdgeEndpoint { edge: usize, vertex: usize },
    #[error("edge {edge} is a loop")]
    SelfLoop { edge: usize },
    #[error("edge {edge} has multiplicity zero")]
    ZeroMultiplicity { edge: usize },
    #[error("boundary component {component} has coefficient {coeff} outside [0, 1]")]
    CoefficientOutOfRange { component: usize, coeff: Rational },
    #[error("boundary component {component} meets missing vertex {vertex}")]
    BoundaryEndpoint { component: usize, vertex: usize },
    #[error("boundary component {component} has an intersection of multiplicity zero")]
    BoundaryZeroMultiplicity { component: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("intersection matrix is not negative definite")]
    NotContractible,
    #[error("invalid blow-up site: {0}")]
    InvalidSite(String),
    #[error("self-intersection overflow")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphVertex {
    pub genus: u32,
    pub self_int: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphEdge {
    pub i: usize,
    pub j: usize,
    pub mult: u32,
}

/// Weighted dual graph of the exceptional curves of a resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<GraphVertex>,
    edges: Vec<GraphEdge>,
}

impl DualGraph {
    pub fn new(vertices: Vec<GraphVertex>, edges: Vec<GraphEdge>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        for (k, e) in edges.iter().enumerate() {
            for v in [e.i, e.j] {
                if v >= vertices.len() {
                    return Err(GraphError::EdgeEndpoint { edge: k, vertex: v });
                }
            }
            if e.i == e.j {
                return Err(GraphError::SelfLoop { edge: k });
            }
            if e.mult == 0 {
                return Err(GraphError::ZeroMultiplicity { edge: k });
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Rational curves of the given self-intersections, joined along `edges`
    /// with multiplicity one.
    pub fn rational(self_ints: &[i64], edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new(
            self_ints
                .iter()
                .map(|&self_int| GraphVertex { genus: 0, self_int })
                .collect(),
            edges
                .iter()
                .map(|&(i, j)| GraphEdge { i, j, mult: 1 })
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `[E_i . E_j]`.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let n = self.vertices.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, v) in self.vertices.iter().enumerate() {
            m.set(i, i, BigInt::from(v.self_int));
        }
        for e in &self.edges {
            let total = m.get(e.i, e.j) + BigInt::from(e.mult);
            m.set(e.i, e.j, total.clone());
            m.set(e.j, e.i, total);
        }
        m
    }

    /// `K_Y . E_j = 2 p_a(E_j) - 2 - E_j^2`, by adjunction.
    pub fn canonical_degree(&self, j: usize) -> BigInt {
        let v = self.vertices[j];
        BigInt::from(2 * i64::from(v.genus) - 2) - BigInt::from(v.self_int)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Total multiplicity between each unordered pair of vertices.
    fn merged_edges(&self) -> BTreeMap<(usize, usize), u64> {
        let mut merged = BTreeMap::new();
        for e in &self.edges {
            *merged.entry((e.i.min(e.j), e.i.max(e.j))).or_insert(0) += u64::from(e.mult);
        }
        merged
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub coeff: Rational,
    /// `(vertex, B~_k . E_vertex)`.
    pub meets: Vec<(usize, u32)>,
}

/// Boundary `B = sum b_k B_k` with coefficients in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Boundary {
    components: Vec<BoundaryComponent>,
}

impl Boundary {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(components: Vec<BoundaryComponent>, graph: &DualGraph) -> Result<Self, GraphError> {
        for (k, c) in components.iter().enumerate() {
            if c.coeff.is_negative() || c.coeff > Rational::one() {
                return Err(GraphError::CoefficientOutOfRange {
                    component: k,
                    coeff: c.coeff.clone(),
                });
            }
            for &(v, mult) in &c.meets {
                if v >= graph.len() {
                    return Err(GraphError::BoundaryEndpoint {
                        component: k,
                        vertex: v,
                    });
                }
                if mult == 0 {
                    return Err(GraphError::BoundaryZeroMultiplicity { component: k });
                }
            }
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[BoundaryComponent] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.coeff.is_zero())
    }

    /// `B~ . E_j`.
    pub fn degree_on(&self, j: usize) -> Rational {
        self.components
            .iter()
            .flat_map(|c| {
                c.meets
                    .iter()
                    .filter(move |(v, _)| *v == j)
                    .map(move |&(_, m)| &c.coeff * Rational::from_integer(m.into()))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularityClass {
    /// All discrepancies positive, relative to the supplied resolution.
    TerminalRel,
    Canonical,
    Klt,
    Lc,
    NotLc,
}

impl SingularityClass {
    pub fn name(self) -> &'static str {
        match self {
            Self::TerminalRel => "TerminalRel",
            Self::Canonical => "Canonical",
            Self::Klt => "Klt",
            Self::Lc => "Lc",
            Self::NotLc => "NotLc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DuVal {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl fmt::Display for DuVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DuVal::A(n) => write!(f, "A{n}"),
            DuVal::D(n) => write!(f, "D{n}"),
            DuVal::E6 => write!(f, "E6"),
            DuVal::E7 => write!(f, "E7"),
            DuVal::E8 => write!(f, "E8"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyReport {
    /// `d_i = d(E_i, X, B)`, one per vertex.
    pub discrepancies: RatVector,
    pub class: SingularityClass,
    pub du_val: Option<DuVal>,
    /// `K_Y . E_j >= 0` for every vertex.
    pub minimal_resolution: bool,
    /// Theorem checks that failed; nonempty only for inconsistent input.
    pub warnings: Vec<String>,
}

pub fn check_contractible(g: &DualGraph) -> Result<bool, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(lattice::is_negative_definite(&g.intersection_matrix()).expect("symmetric by construction"))
}

pub fn discrepancies(g: &DualGraph, b: &Boundary) -> Result<DiscrepancyReport, GraphError> {
    if !check_contractible(g)? {
        return Err(GraphError::NotContractible);
    }
    let n = g.len();
    let m = g
        .intersection_matrix()
        .map(|x| Rational::from_integer(x.clone()));
    let rhs: RatVector = (0..n)
        .map(|j| Rational::from_integer(g.canonical_degree(j)) + b.degree_on(j))
        .collect();
    let d = lattice::solve_exact(&m, &rhs).expect("negative definite matrices are invertible");
    let minimal_resolution = (0..n).all(|j| !g.canonical_degree(j).is_negative());
    let class = classify(&d, b);

    let mut warnings = Vec::new();
    if minimal_resolution
        && matches!(class, SingularityClass::Klt | SingularityClass::Canonical)
        && g.vertices.iter().any(|v| v.genus > 0)
    {
        warnings.push(
            "klt on a minimal resolution with a non-rational exceptional curve: inconsistent input"
                .to_string(),
        );
    }
    if minimal_resolution && b.is_zero() && d.iter().any(Signed::is_positive) {
        warnings.push(
            "positive discrepancy on a minimal resolution contradicts the negativity lemma"
                .to_string(),
        );
    }

    let mut report = DiscrepancyReport {
        discrepancies: d,
        class,
        du_val: None,
        minimal_resolution,
        warnings,
    };
    if b.components.is_empty() {
        report.du_val = detect_du_val(g, &report);
    }
    Ok(report)
}

fn classify(d: &[Rational], b: &Boundary) -> SingularityClass {
    let one = Rational::one();
    let minus_one = -Rational::one();
    let coeffs = b.components.iter().map(|c| &c.coeff);
    if b.is_zero() && d.iter().all(Signed::is_positive) {
        SingularityClass::TerminalRel
    } else if b.is_zero() && d.iter().all(|x| !x.is_negative()) {
        SingularityClass::Canonical
    } else if d.iter().all(|x| x > &minus_one) && coeffs.clone().all(|c| c < &one) {
        SingularityClass::Klt
    } else if d.iter().all(|x| x >= &minus_one) && coeffs.clone().all(|c| c <= &one) {
        SingularityClass::Lc
    } else {
        SingularityClass::NotLc
    }
}

/// Recognises the five simply-laced Dynkin trees of `(-2)`-curves.
pub fn detect_du_val(g: &DualGraph, report: &DiscrepancyReport) -> Option<DuVal> {
    if report.discrepancies.iter().any(|d| !d.is_zero()) {
        return None;
    }
    if g.vertices.iter().any(|v| v.genus != 0 || v.self_int != -2) {
        return None;
    }
    let merged = g.merged_edges();
    let n = g.len();
    if merged.values().any(|&m| m != 1) || merged.len() + 1 != n || !g.is_connected() {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in merged.keys() {
        adj[i].push(j);
        adj[j].push(i);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let n32 = u32::try_from(n).ok()?;
    match branch.as_slice() {
        [] => Some(DuVal::A(n32)),
        [center] if adj[*center].len() == 3 => {
            let mut arms: Vec<usize> = adj[*center]
                .iter()
                .map(|&start| arm_length(&adj, *center, start))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DuVal::D(n32)),
                [1, 2, 2] => Some(DuVal::E6),
                [1, 2, 3] => Some(DuVal::E7),
                [1, 2, 4] => Some(DuVal::E8),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Number of vertices on the path leaving `center` through `start`.
fn arm_length(adj: &[Vec<usize>], center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Where to blow up a point of the resolution surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlowupSite {
    /// A point of `E_i` on no other exceptional or boundary curve.
    Vertex(usize),
    /// One of the intersection points of `E_i` and `E_j`.
    Edge(usize, usize),
    /// A point where boundary component `component` meets `E_vertex`.
    Boundary { vertex: usize, component: usize },
}

impl BlowupSite {
    /// Discrepancy of the new exceptional curve given the old ones:
    /// `1 + sum (d_i over curves through the point) - sum (b_k over boundary
    /// components through the point)`.
    pub fn predicted_discrepancy(&self, old: &[Rational], b: &Boundary) -> Rational {
        let one = Rational::one();
        match *self {
            BlowupSite::Vertex(i) => one + &old[i],
            BlowupSite::Edge(i, j) => one + &old[i] + &old[j],
            BlowupSite::Boundary { vertex, component } => {
                one + &old[vertex] - &b.components[component].coeff
            }
        }
    }
}

pub fn blowup_vertex(
    g: &DualGraph,
    b: &Boundary,
    site: BlowupSite,
) -> Result<(DualGraph, Boundary), GraphError> {
    let mut vertices = g.vertices.clone();
    let mut edges = g.edges.clone();
    let mut components = b.components.clone();
    let new = vertices.len();
    let bad = |msg: String| GraphError::InvalidSite(msg);

    let lower = |v: usize, vertices: &mut Vec<GraphVertex>| -> Result<(), GraphError> {
        let vert = vertices
            .get_mut(v)
            .ok_or_else(|| bad(format!("no vertex {v}")))?;
        vert.self_int = vert.self_int.checked_sub(1).ok_or(GraphError::Overflow)?;
        Ok(())
    };

    match site {
        BlowupSite::Vertex(i) => {
            lower(i, &mut vertices)?;
            edges.push(GraphEdge { i, j: new, mult: 1 });
        }
        BlowupSite::Edge(i, j) => {
            let k = edges
                .iter()
                .position(|e| (e.i, e.j) == (i, j) || (e.i, e.j) == (j, i))
                .ok_or_else(|| bad(format!("no edge between {i} and {j}")))?;
            edges[k].mult -= 1;
            if edges[k].mult == 0 {
                edges.remove(k);
            }
            lower(i, &mut vertices)?;
            lower(j, &mut vertices)?;
            edges.push(GraphEdge { i, j: new, mult: 1 });
            edges.push(GraphEdge {
                i: j,
                j: new,
                mult: 1,
            });
        }
        BlowupSite::Boundary { vertex, component } => {
            let comp = components
                .get_mut(component)
                .ok_or_else(|| bad(format!("no boundary component {component}")))?;
            let k = comp
                .meets
                .iter()
                .position(|&(v, _)| v == vertex)
                .ok_or_else(|| {
                    bad(format!(
                        "boundary component {component} does not meet vertex {vertex}"
                    ))
                })?;
            comp.meets[k].1 -= 1;
            if comp.meets[k].1 == 0 {
                comp.meets.remove(k);
            }
            comp.meets.push((new, 1));
            lower(vertex, &mut vertices)?;
            edges.push(GraphEdge {
                i: vertex,
                j: new,
                mult: 1,
            });
        }
    }
    vertices.push(GraphVertex {
        genus: 0,
        self_int: -1,
    });
    let graph = DualGraph { vertices, edges };
    Ok((graph, Boundary { components }))
}
