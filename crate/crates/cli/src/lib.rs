//! Front end for `mmpkit-core`: reads one JSON object, runs one analysis and
//! reports the result as human text or as canonical JSON.
//!
//! Exit codes: 0 on success, 2 for malformed input or flags, 3 when the input
//! is well formed but a mathematical precondition fails.

mod input;
mod report;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mmpkit_core::dual_graph::{self, BlowupSite, Boundary, DualGraph};
use mmpkit_core::kodaira;
use mmpkit_core::surface::{self, MmpOutcome, SearchOptions, SurfaceLattice};
use mmpkit_core::toric;
use mmpkit_core::{Execution, IntVector, Rational};
use num_bigint::BigInt;
use serde_json::{Map, Value};

pub use report::{
    canonical_json, Failure, FailureKind, Report, EXIT_OK, EXIT_PRECONDITION, EXIT_VALIDATION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "mmpkit",
    version,
    about = "Exact discrepancies, toric cones and surface MMP"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Read the JSON object from a file.
    #[arg(long, global = true, conflicts_with = "inline")]
    pub input: Option<PathBuf>,
    /// Take the JSON object from the command line.
    #[arg(long, global = true)]
    pub inline: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Classify a toric cone {"rank", "rays"}.
    ToricClassify,
    /// Discrepancy of the valuation at a lattice point of a cone.
    ToricDiscrepancy {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        point: Vec<i64>,
    },
    /// Discrepancies of a resolution dual graph, with optional boundary.
    GraphDiscrepancies,
    /// Blow up a point of the resolution and compare discrepancies.
    GraphBlowup {
        /// Blow up a general point of this curve (or, with --boundary, its
        /// intersection with that boundary component).
        #[arg(long)]
        vertex: Option<usize>,
        /// Blow up an intersection point of two curves: `--edge i,j`.
        #[arg(long, value_delimiter = ',', num_args = 1, conflicts_with = "vertex")]
        edge: Option<Vec<usize>>,
        #[arg(long, requires = "vertex")]
        boundary: Option<usize>,
    },
    /// Run the classical MMP on a surface lattice.
    MmpRun {
        /// Use P^2 blown up at r points instead of an input document.
        #[arg(long)]
        r: Option<usize>,
        /// Coordinate bound for (-1)-class searches.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Enumerate (-1)-classes.
    DelpezzoLines {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Boundary rays of the curve cone of a rank-2 lattice.
    ConeRays,
    /// Nefness and Kleiman ampleness relative to the known curves.
    NefCheck {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        divisor: Vec<i64>,
    },
    /// Riemann–Roch on a surface (--divisor) or a curve (--deg, --genus).
    Rr {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        divisor: Option<Vec<i64>>,
        /// chi(O_X); 1 for rational surfaces.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        chi0: i64,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "divisor")]
        deg: Option<i64>,
        #[arg(long, requires = "deg")]
        genus: Option<u64>,
    },
    /// Kodaira dimension from plurigenera {"samples", "max_dim"}.
    KappaEstimate {
        /// Also estimate from the samples at multiples of this number.
        #[arg(long)]
        multiple: Option<u64>,
    },
    /// Singularities of a pair on a smooth curve {"coeffs"}.
    PairClassify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ToricClassify => "toric-classify",
            Self::ToricDiscrepancy { .. } => "toric-discrepancy",
            Self::GraphDiscrepancies => "graph-discrepancies",
            Self::GraphBlowup { .. } => "graph-blowup",
            Self::MmpRun { .. } => "mmp-run",
            Self::DelpezzoLines { .. } => "delpezzo-lines",
            Self::ConeRays => "cone-rays",
            Self::NefCheck { .. } => "nef-check",
            Self::Rr { .. } => "rr",
            Self::KappaEstimate { .. } => "kappa-estimate",
            Self::PairClassify => "pair-classify",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Inline(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub command: Command,
    pub source: Option<Source>,
    pub format: Format,
    pub exec: Execution,
}

impl From<Cli> for AnalysisRequest {
    fn from(cli: Cli) -> Self {
        let source = match (cli.input, cli.inline) {
            (Some(p), _) => Some(Source::File(p)),
            (None, Some(s)) => Some(Source::Inline(s)),
            (None, None) => None,
        };
        Self {
            command: cli.command,
            source,
            format: cli.format,
            exec: Execution::default(),
        }
    }
}

impl AnalysisRequest {
    pub fn inline(command: Command, json: impl Into<String>) -> Self {
        Self {
            command,
            source: Some(Source::Inline(json.into())),
            format: Format::Machine,
            exec: Execution::default(),
        }
    }
}

/// Runs one request. Never panics on bad input; failures become error
/// reports with exit code 2 or 3.
pub fn run(req: &AnalysisRequest) -> (Report, i32) {
    let name = req.command.name();
    match dispatch(req) {
        Ok(report) => (report, EXIT_OK),
        Err(f) => (Report::failure(name, &f), f.kind.exit_code()),
    }
}

/// The text a request prints to stdout in its chosen format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.text().to_string(),
        Format::Machine => report.machine(),
    }
}

fn load(req: &AnalysisRequest) -> Result<Value, Failure> {
    let text = match &req.source {
        None => {
            return Err(Failure::validation(
                "missing-input",
                "--input",
                format!(
                    "{} needs --input <path> or --inline '<json>'",
                    req.command.name()
                ),
            ))
        }
        Some(Source::Inline(s)) => s.clone(),
        Some(Source::File(p)) => std::fs::read_to_string(p).map_err(|e| {
            Failure::validation("io", "--input", format!("cannot read {}: {e}", p.display()))
        })?,
    };
    input::parse_document(&text)
}

fn dispatch(req: &AnalysisRequest) -> Result<Report, Failure> {
    let exec = req.exec;
    match &req.command {
        Command::ToricClassify => toric_classify(&input::cone(&load(req)?)?, exec),
        Command::ToricDiscrepancy { point } => toric_point(&input::cone(&load(req)?)?, point),
        Command::GraphDiscrepancies => {
            let (g, b) = input::graph(&load(req)?)?;
            graph_discrepancies(&g, &b)
        }
        Command::GraphBlowup {
            vertex,
            edge,
            boundary,
        } => {
            let site = blowup_site(*vertex, edge.as_deref(), *boundary)?;
            let (g, b) = input::graph(&load(req)?)?;
            graph_blowup(&g, &b, site)
        }
        Command::MmpRun { r, bound } => {
            let s = surface_source(req, *r)?;
            mmp_run(
                &s,
                SearchOptions {
                    bound: *bound,
                    exec,
                },
            )
        }
        Command::DelpezzoLines { r, bound } => {
            let s = surface_source(req, *r)?;
            delpezzo_lines(
                &s,
                SearchOptions {
                    bound: *bound,
                    exec,
                },
            )
        }
        Command::ConeRays => cone_rays(&input::surface(&load(req)?)?),
        Command::NefCheck { divisor } => nef_check(&input::surface(&load(req)?)?, &big(divisor)),
        Command::Rr {
            divisor,
            chi0,
            deg,
            genus,
        } => match (divisor, deg) {
            (Some(d), _) => {
                rr_surface(&input::surface(&load(req)?)?, &big(d), &BigInt::from(*chi0))
            }
            (None, Some(deg)) => {
                let genus = genus.ok_or_else(|| {
                    Failure::validation("missing-flag", "--genus", "curve mode needs --genus")
                })?;
                Ok(rr_curve(&BigInt::from(*deg), &BigInt::from(genus)))
            }
            (None, None) => Err(Failure::validation(
                "missing-flag",
                "--divisor",
                "give --divisor (surface) or --deg and --genus (curve)",
            )),
        },
        Command::KappaEstimate { multiple } => {
            let (samples, max_dim) = input::plurigenera(&load(req)?)?;
            kappa_estimate(&samples, max_dim, *multiple)
        }
        Command::PairClassify => pair_classify(&input::coefficients(&load(req)?)?),
    }
}

fn big(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn surface_source(req: &AnalysisRequest, r: Option<usize>) -> Result<SurfaceLattice, Failure> {
    match (r, &req.source) {
        (Some(_), Some(_)) => Err(Failure::validation(
            "conflicting-flags",
            "--r",
            "--r builds the lattice itself; drop --input/--inline",
        )),
        (Some(r), None) if r > 64 => Err(Failure::validation(
            "out-of-range",
            "--r",
            format!("r = {r} is too large"),
        )),
        (Some(r), None) => Ok(surface::make_blowup_p2(r)),
        (None, _) => input::surface(&load(req)?),
    }
}

fn toric_classify(c: &toric::Cone, exec: Execution) -> Result<Report, Failure> {
    let a = toric::analyze_cone(c, exec).map_err(|e| input::toric_failure(&e, "/rays"))?;
    let mut f = Map::new();
    f.insert("verdict".into(), Value::String(a.class.kind.name().into()));
    f.insert("q_factorial".into(), Value::Bool(a.class.q_factorial));
    f.insert(
        "gorenstein_index".into(),
        a.class
            .gorenstein_index
            .as_ref()
            .map_or(Value::Null, report::int),
    );
    f.insert(
        "functional".into(),
        a.functional
            .as_ref()
            .map_or(Value::Null, |m| report::rationals(m.coefficients())),
    );
    f.insert("facets".into(), report::int_rows(&a.facets));
    f.insert(
        "discrepancies".into(),
        Value::Array(
            a.discrepancies
                .iter()
                .map(|(p, d)| {
                    let mut e = Map::new();
                    e.insert("point".into(), report::ints(p));
                    e.insert("discrepancy".into(), report::rational(d));
                    Value::Object(e)
                })
                .collect(),
        ),
    );

    let mut t = format!("verdict: {}\n", a.class.kind.name());
    writeln!(t, "q-factorial: {}", a.class.q_factorial).unwrap();
    match &a.class.gorenstein_index {
        Some(i) => writeln!(t, "gorenstein index: {i}").unwrap(),
        None => writeln!(t, "gorenstein index: none (K not Q-Cartier)").unwrap(),
    }
    if let Some(m) = &a.functional {
        writeln!(
            t,
            "support functional m = {}",
            report::rational_list(m.coefficients())
        )
        .unwrap();
    }
    for h in &a.facets {
        writeln!(t, "facet normal {}", report::tuple(h)).unwrap();
    }
    for (p, d) in &a.discrepancies {
        writeln!(t, "{} \u{21a6} {d}", report::tuple(p)).unwrap();
    }
    Ok(Report::new(
        "toric-classify",
        "m is the linear functional equal to 1 on every ray; the valuation at a primitive point v has discrepancy m(v) - 1; lattice points with m <= 1 decide terminal/canonical",
        f,
        t,
    ))
}

fn toric_point(c: &toric::Cone, point: &[i64]) -> Result<Report, Failure> {
    let v = big(point);
    let d = toric::toric_discrepancy(c, &v).map_err(|e| input::toric_failure(&e, "--point"))?;
    let mut f = Map::new();
    f.insert("point".into(), report::ints(&v));
    f.insert("discrepancy".into(), report::rational(&d));
    let t = format!("{} \u{21a6} {d}\n", report::tuple(&v));
    Ok(Report::new(
        "toric-discrepancy",
        "discrepancy m(v) - 1 with m equal to 1 on every ray",
        f,
        t,
    ))
}

fn discrepancy_fields(r: &dual_graph::DiscrepancyReport, f: &mut Map<String, Value>) {
    f.insert("discrepancies".into(), report::rationals(&r.discrepancies));
    f.insert("class".into(), Value::String(r.class.name().into()));
    f.insert(
        "du_val".into(),
        r.du_val
            .map_or(Value::Null, |d| Value::String(d.to_string())),
    );
    f.insert(
        "minimal_resolution".into(),
        Value::Bool(r.minimal_resolution),
    );
    f.insert("warnings".into(), report::strings(&r.warnings));
}

fn discrepancy_text(r: &dual_graph::DiscrepancyReport) -> String {
    let mut t = String::new();
    for (i, d) in r.discrepancies.iter().enumerate() {
        writeln!(t, "d(E_{i}) = {d}").unwrap();
    }
    writeln!(t, "class: {}", r.class.name()).unwrap();
    if let Some(d) = r.du_val {
        writeln!(t, "Du Val type: {d}").unwrap();
    }
    writeln!(t, "minimal resolution: {}", r.minimal_resolution).unwrap();
    for w in &r.warnings {
        writeln!(t, "warning: {w}").unwrap();
    }
    t
}

const GRAPH_RULE: &str = "solve sum_i d_i E_i.E_j = 2p_j - 2 - E_j^2 + B.E_j over the negative definite intersection matrix; classes are thresholds on d relative to the supplied resolution";

fn graph_discrepancies(g: &DualGraph, b: &Boundary) -> Result<Report, Failure> {
    let r = dual_graph::discrepancies(g, b).map_err(|e| input::graph_failure(&e))?;
    let mut f = Map::new();
    discrepancy_fields(&r, &mut f);
    f.insert(
        "intersection_matrix".into(),
        report::int_rows(&g.intersection_matrix().to_rows()),
    );
    Ok(Report::new(
        "graph-discrepancies",
        GRAPH_RULE,
        f,
        discrepancy_text(&r),
    ))
}

fn blowup_site(
    vertex: Option<usize>,
    edge: Option<&[usize]>,
    boundary: Option<usize>,
) -> Result<BlowupSite, Failure> {
    match (vertex, edge, boundary) {
        (Some(v), None, None) => Ok(BlowupSite::Vertex(v)),
        (Some(v), None, Some(k)) => Ok(BlowupSite::Boundary {
            vertex: v,
            component: k,
        }),
        (None, Some(&[i, j]), None) => Ok(BlowupSite::Edge(i, j)),
        (None, Some(_), _) => Err(Failure::validation(
            "invalid-site",
            "--edge",
            "--edge takes i,j",
        )),
        _ => Err(Failure::validation(
            "invalid-site",
            "--vertex",
            "choose one of --vertex v, --vertex v --boundary k, --edge i,j",
        )),
    }
}

fn graph_json(g: &DualGraph, b: &Boundary) -> Value {
    let mut out = Map::new();
    out.insert(
        "vertices".into(),
        Value::Array(
            g.vertices()
                .iter()
                .map(|v| {
                    let mut m = Map::new();
                    m.insert("genus".into(), Value::from(v.genus));
                    m.insert("self_int".into(), Value::from(v.self_int));
                    Value::Object(m)
                })
                .collect(),
        ),
    );
    out.insert(
        "edges".into(),
        Value::Array(
            g.edges()
                .iter()
                .map(|e| Value::from(vec![e.i as u64, e.j as u64, u64::from(e.mult)]))
                .collect(),
        ),
    );
    out.insert(
        "boundary".into(),
        Value::Array(
            b.components()
                .iter()
                .map(|c| {
                    let mut m = Map::new();
                    m.insert("coeff".into(), report::rational(&c.coeff));
                    m.insert(
                        "meets".into(),
                        Value::Array(
                            c.meets
                                .iter()
                                .map(|&(v, k)| Value::from(vec![v as u64, u64::from(k)]))
                                .collect(),
                        ),
                    );
                    Value::Object(m)
                })
                .collect(),
        ),
    );
    Value::Object(out)
}

fn site_json(site: BlowupSite) -> Value {
    let mut m = Map::new();
    match site {
        BlowupSite::Vertex(v) => {
            m.insert("vertex".into(), Value::from(v as u64));
        }
        BlowupSite::Edge(i, j) => {
            m.insert("edge".into(), Value::from(vec![i as u64, j as u64]));
        }
        BlowupSite::Boundary { vertex, component } => {
            m.insert("vertex".into(), Value::from(vertex as u64));
            m.insert("boundary".into(), Value::from(component as u64));
        }
    }
    Value::Object(m)
}

fn graph_blowup(g: &DualGraph, b: &Boundary, site: BlowupSite) -> Result<Report, Failure> {
    let before = dual_graph::discrepancies(g, b).map_err(|e| input::graph_failure(&e))?;
    let (g2, b2) = dual_graph::blowup_vertex(g, b, site).map_err(|e| {
        let mut f = input::graph_failure(&e);
        if matches!(site, BlowupSite::Edge(..)) {
            f.pointer = "--edge".into();
        } else if matches!(site, BlowupSite::Boundary { .. }) {
            f.pointer = "--boundary".into();
        }
        f
    })?;
    let after = dual_graph::discrepancies(&g2, &b2).map_err(|e| input::graph_failure(&e))?;
    let predicted = site.predicted_discrepancy(&before.discrepancies, b);
    let n = before.discrepancies.len();
    let new = after.discrepancies[n].clone();
    let unchanged = after.discrepancies[..n] == before.discrepancies[..];

    let mut f = Map::new();
    f.insert("site".into(), site_json(site));
    let mut old = Map::new();
    discrepancy_fields(&before, &mut old);
    f.insert("before".into(), Value::Object(old));
    let mut post = Map::new();
    discrepancy_fields(&after, &mut post);
    post.insert("graph".into(), graph_json(&g2, &b2));
    f.insert("after".into(), Value::Object(post));
    f.insert("new_discrepancy".into(), report::rational(&new));
    f.insert("predicted".into(), report::rational(&predicted));
    f.insert("old_unchanged".into(), Value::Bool(unchanged));
    f.insert(
        "consistent".into(),
        Value::Bool(unchanged && new == predicted),
    );

    let mut t = format!(
        "blow-up at {}\n",
        serde_json::to_string(&site_json(site)).unwrap()
    );
    writeln!(
        t,
        "before: {}",
        report::rational_list(&before.discrepancies)
    )
    .unwrap();
    writeln!(t, "after:  {}", report::rational_list(&after.discrepancies)).unwrap();
    writeln!(t, "new curve: {new} (predicted {predicted})").unwrap();
    writeln!(t, "old discrepancies unchanged: {unchanged}").unwrap();
    writeln!(t, "class after: {}", after.class.name()).unwrap();
    Ok(Report::new(
        "graph-blowup",
        "blowing up a point adds a curve with discrepancy 1 + (sum of d over curves through it) - (sum of boundary coefficients through it); old discrepancies do not change",
        f,
        t,
    ))
}

fn surface_json(s: &SurfaceLattice) -> Value {
    let mut m = Map::new();
    m.insert("rank".into(), Value::from(s.rank() as u64));
    m.insert("gram".into(), report::int_rows(&s.gram().to_rows()));
    m.insert("K".into(), report::ints(s.canonical()));
    m.insert("curves".into(), report::int_rows(s.curves()));
    m.insert("label".into(), Value::String(s.label().to_string()));
    Value::Object(m)
}

fn mmp_run(s: &SurfaceLattice, opts: SearchOptions) -> Result<Report, Failure> {
    let trace =
        surface::run_classical_mmp(s, opts).map_err(|e| input::surface_failure(&e, "/curves"))?;
    let end = &trace.final_lattice;
    let mut f = Map::new();
    f.insert(
        "steps".into(),
        Value::Array(
            trace
                .steps
                .iter()
                .map(|st| {
                    let mut m = Map::new();
                    m.insert("contracted".into(), report::ints(&st.contracted));
                    m.insert("rank_before".into(), Value::from(st.rank_before as u64));
                    m.insert("rank_after".into(), Value::from(st.rank_after as u64));
                    Value::Object(m)
                })
                .collect(),
        ),
    );
    f.insert("contractions".into(), Value::from(trace.steps.len() as u64));
    f.insert("outcome".into(), Value::String(trace.outcome.name().into()));
    let mut t = String::new();
    for (i, st) in trace.steps.iter().enumerate() {
        writeln!(
            t,
            "step {i}: contract {} (rho {} -> {})",
            report::tuple(&st.contracted),
            st.rank_before,
            st.rank_after
        )
        .unwrap();
    }
    writeln!(t, "outcome: {}", trace.outcome.name()).unwrap();
    match &trace.outcome {
        MmpOutcome::MoriFibreRuled(fib) => {
            let genus = surface::adjunction_genus(end, fib)
                .map_err(|e| input::surface_failure(&e, "/curves"))?;
            let mut m = Map::new();
            m.insert("class".into(), report::ints(fib));
            m.insert("self_intersection".into(), report::int(&end.dot(fib, fib)));
            m.insert("k_degree".into(), report::int(&end.k_dot(fib)));
            m.insert("genus".into(), report::int(&genus));
            f.insert("fibre".into(), Value::Object(m));
            writeln!(
                t,
                "fibre {}: f^2 = {}, K.f = {}, genus {genus}",
                report::tuple(fib),
                end.dot(fib, fib),
                end.k_dot(fib)
            )
            .unwrap();
        }
        _ => {
            f.insert("fibre".into(), Value::Null);
        }
    }
    f.insert("final".into(), surface_json(end));
    f.insert("heuristic".into(), Value::Bool(trace.heuristic));
    f.insert("warnings".into(), report::strings(&trace.warnings));
    writeln!(t, "final K = {}", report::tuple(end.canonical())).unwrap();
    if trace.heuristic {
        writeln!(t, "note: fibre verdict is heuristic at this Picard rank").unwrap();
    }
    for w in &trace.warnings {
        writeln!(t, "warning: {w}").unwrap();
    }
    Ok(Report::new(
        "mmp-run",
        "contract the lexicographically smallest (-1)-class until none remains (each step lowers rho by 1), then read off the end point from the known curves",
        f,
        t,
    ))
}

fn delpezzo_lines(s: &SurfaceLattice, opts: SearchOptions) -> Result<Report, Failure> {
    let classes = surface::enumerate_minus_one_classes(s, opts)
        .map_err(|e| input::surface_failure(&e, "/curves"))?;
    let mut f = Map::new();
    f.insert("label".into(), Value::String(s.label().to_string()));
    f.insert("count".into(), Value::from(classes.len() as u64));
    f.insert("classes".into(), report::int_rows(&classes));
    f.insert(
        "bound".into(),
        opts.bound
            .map_or(Value::Null, |b| Value::from(u64::from(b))),
    );
    f.insert("warnings".into(), report::strings(&s.warnings()));
    let mut t = format!("{}: {} (-1)-classes\n", s.label(), classes.len());
    for c in &classes {
        writeln!(t, "  {}", report::tuple(c)).unwrap();
    }
    Ok(Report::new(
        "delpezzo-lines",
        "all integral classes with C^2 = -1 and K.C = -1, found by a Cauchy-Schwarz bounded search",
        f,
        t,
    ))
}

fn cone_rays(s: &SurfaceLattice) -> Result<Report, Failure> {
    let (a, b) = surface::cone_rays_rank2(s).map_err(|e| input::surface_failure(&e, "/curves"))?;
    let mut f = Map::new();
    f.insert("rays".into(), report::int_rows(&[a.clone(), b.clone()]));
    let self_ints = vec![s.dot(&a, &a), s.dot(&b, &b)];
    let k_degrees = vec![s.k_dot(&a), s.k_dot(&b)];
    f.insert("self_intersections".into(), report::ints(&self_ints));
    f.insert("k_degrees".into(), report::ints(&k_degrees));
    f.insert(
        "warnings".into(),
        report::strings(&["rays of the cone spanned by the supplied curves".to_string()]),
    );
    let mut t = String::new();
    for (i, r) in [&a, &b].into_iter().enumerate() {
        writeln!(
            t,
            "ray {}: R^2 = {}, K.R = {}",
            report::tuple(r),
            self_ints[i],
            k_degrees[i]
        )
        .unwrap();
    }
    Ok(Report::new(
        "cone-rays",
        "the two boundary rays of the planar cone generated by the known curve classes",
        f,
        t,
    ))
}

fn nef_check(s: &SurfaceLattice, d: &[BigInt]) -> Result<Report, Failure> {
    let fail = |e| input::surface_failure(&e, "--divisor");
    let nef = surface::is_nef(s, d).map_err(fail)?;
    let ample = surface::is_ample_kleiman(s, d).map_err(fail)?;
    let degrees: Vec<BigInt> = s.curves().iter().map(|c| s.dot(d, c)).collect();
    let mut f = Map::new();
    f.insert("divisor".into(), report::ints(d));
    f.insert("nef".into(), Value::Bool(nef));
    f.insert("ample".into(), Value::Bool(ample));
    f.insert("curve_degrees".into(), report::ints(&degrees));
    f.insert("self_intersection".into(), report::int(&s.dot(d, d)));
    f.insert(
        "warnings".into(),
        report::strings(&["relative to the supplied curves".to_string()]),
    );
    let mut t = format!("D = {}\n", report::tuple(d));
    for (c, k) in s.curves().iter().zip(&degrees) {
        writeln!(t, "D.{} = {k}", report::tuple(c)).unwrap();
    }
    writeln!(t, "D^2 = {}", s.dot(d, d)).unwrap();
    writeln!(
        t,
        "nef: {nef}\nample: {ample} (relative to the supplied curves)"
    )
    .unwrap();
    Ok(Report::new(
        "nef-check",
        "nef iff D.C >= 0 on every known curve; Kleiman ample iff D.C > 0 on every known curve and D^2 > 0",
        f,
        t,
    ))
}

fn rr_surface(s: &SurfaceLattice, d: &[BigInt], chi0: &BigInt) -> Result<Report, Failure> {
    let chi = surface::riemann_roch_surface(s, d, chi0)
        .map_err(|e| input::surface_failure(&e, "--divisor"))?;
    let genus = surface::adjunction_genus(s, d).ok();
    let mut f = Map::new();
    f.insert("mode".into(), Value::String("surface".into()));
    f.insert("divisor".into(), report::ints(d));
    f.insert("chi0".into(), report::int(chi0));
    f.insert("chi".into(), report::rational(&chi));
    f.insert("integral".into(), Value::Bool(chi.is_integer()));
    f.insert(
        "arithmetic_genus".into(),
        genus.as_ref().map_or(Value::Null, report::int),
    );
    let mut t = format!("chi(O({})) = {chi}\n", report::tuple(d));
    if let Some(g) = &genus {
        writeln!(t, "p_a(D) = {g}").unwrap();
    }
    Ok(Report::new(
        "rr",
        "chi(O(D)) = D.(D - K)/2 + chi(O_X); p_a(D) = 1 + D.(D + K)/2",
        f,
        t,
    ))
}

fn rr_curve(deg: &BigInt, genus: &BigInt) -> Report {
    let chi = kodaira::riemann_roch_curve(deg, genus);
    let mut f = Map::new();
    f.insert("mode".into(), Value::String("curve".into()));
    f.insert("degree".into(), report::int(deg));
    f.insert("genus".into(), report::int(genus));
    f.insert(
        "chi".into(),
        report::rational(&Rational::from_integer(chi.clone())),
    );
    Report::new(
        "rr",
        "chi(O(D)) = 1 + deg D - g on a smooth curve",
        f,
        format!("chi = {chi}\n"),
    )
}

fn kappa_estimate(
    samples: &kodaira::PlurigenusSample,
    max_dim: Option<u32>,
    multiple: Option<u64>,
) -> Result<Report, Failure> {
    let est = kodaira::estimate_kappa(samples, max_dim)
        .map_err(|e| input::kodaira_failure(&e, "/samples"))?;
    let mut f = Map::new();
    f.insert("kappa".into(), Value::String(est.value.to_string()));
    f.insert("note".into(), Value::String(est.note.clone()));
    f.insert("max_dim".into(), max_dim.map_or(Value::Null, Value::from));
    let mut t = format!("kappa = {} ({})\n", est.value, est.note);
    if let Some(l) = multiple {
        if l == 0 {
            return Err(Failure::validation(
                "out-of-range",
                "--multiple",
                "multiple must be positive",
            ));
        }
        let sub = samples.multiples_of(l).ok_or_else(|| {
            Failure::precondition(
                "insufficient-samples",
                "--multiple",
                format!("no sampled m is divisible by {l}"),
            )
        })?;
        let other = kodaira::estimate_kappa(&sub, max_dim).map_err(|e| {
            let mut f = input::kodaira_failure(&e, "/samples");
            f.pointer = "--multiple".into();
            f
        })?;
        let mut m = Map::new();
        m.insert("l".into(), Value::from(l));
        m.insert("kappa".into(), Value::String(other.value.to_string()));
        m.insert("agrees".into(), Value::Bool(other.value == est.value));
        f.insert("multiple".into(), Value::Object(m));
        writeln!(t, "kappa from multiples of {l} = {}", other.value).unwrap();
    }
    Ok(Report::new(
        "kappa-estimate",
        "-inf if every P_m vanishes; 0 if P_m is constant on the upper half of the sample; otherwise the rounded log-slope of P_m against m",
        f,
        t,
    ))
}

fn pair_classify(coeffs: &[Rational]) -> Result<Report, Failure> {
    let class = kodaira::classify_pair_on_curve(coeffs)
        .map_err(|e| input::kodaira_failure(&e, "/coeffs"))?;
    let fano = kodaira::fano_pair_on_p1_check(coeffs).ok();
    let mut f = Map::new();
    f.insert("class".into(), Value::String(class.name().into()));
    f.insert("coeffs".into(), report::rationals(coeffs));
    f.insert("fano_on_p1".into(), fano.map_or(Value::Null, Value::Bool));
    let mut t = format!("class: {}\n", class.name());
    match fano {
        Some(b) => writeln!(t, "-(K + B) ample on P^1: {b}").unwrap(),
        None => writeln!(t, "-(K + B) ample on P^1: n/a (coefficient outside [0, 1])").unwrap(),
    }
    Ok(Report::new(
        "pair-classify",
        "on a smooth curve: klt iff every coefficient is < 1, lc iff every coefficient is <= 1; on P^1, -(K + B) is ample iff deg B < 2",
        f,
        t,
    ))
}
