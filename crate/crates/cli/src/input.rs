//! JSON documents to core objects, with pointered validation errors.

use std::str::FromStr;

use mmpkit_core::dual_graph::{
    Boundary, BoundaryComponent, DualGraph, GraphEdge, GraphError, GraphVertex,
};
use mmpkit_core::kodaira::{KodairaError, PlurigenusSample};
use mmpkit_core::lattice::IntMatrix;
use mmpkit_core::surface::{SurfaceError, SurfaceLattice};
use mmpkit_core::toric::{Cone, ToricError};
use mmpkit_core::{IntVector, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use serde_json::{Map, Value};

use crate::report::Failure;

pub(crate) fn parse_document(text: &str) -> Result<Value, Failure> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        Failure::validation("invalid-json", "", format!("input is not valid JSON: {e}"))
    })?;
    if !v.is_object() {
        return Err(Failure::validation(
            "wrong-type",
            "",
            "top level must be a JSON object",
        ));
    }
    Ok(v)
}

fn object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>, Failure> {
    v.as_object()
        .ok_or_else(|| Failure::validation("wrong-type", ptr, "expected an object"))
}

fn field<'a>(v: &'a Value, ptr: &str, key: &str) -> Result<&'a Value, Failure> {
    object(v, ptr)?.get(key).ok_or_else(|| {
        Failure::validation(
            "missing-field",
            format!("{ptr}/{key}"),
            format!("missing field \"{key}\""),
        )
    })
}

fn array<'a>(v: &'a Value, ptr: &str) -> Result<&'a [Value], Failure> {
    v.as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| Failure::validation("wrong-type", ptr, "expected an array"))
}

fn integer(v: &Value, ptr: &str) -> Result<BigInt, Failure> {
    let bad = || Failure::validation("not-integer", ptr, "expected an integer");
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn small<T: TryFrom<i64>>(v: &Value, ptr: &str, what: &str) -> Result<T, Failure> {
    let n = integer(v, ptr)?;
    n.to_i64().and_then(|x| T::try_from(x).ok()).ok_or_else(|| {
        Failure::validation("out-of-range", ptr, format!("{what} {n} is out of range"))
    })
}

fn integers(v: &Value, ptr: &str) -> Result<IntVector, Failure> {
    array(v, ptr)?
        .iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("{ptr}/{i}")))
        .collect()
}

fn integer_rows(v: &Value, ptr: &str) -> Result<Vec<IntVector>, Failure> {
    array(v, ptr)?
        .iter()
        .enumerate()
        .map(|(i, row)| integers(row, &format!("{ptr}/{i}")))
        .collect()
}

/// `"p/q"`, `"p"` or a bare integer.
fn rational(v: &Value, ptr: &str) -> Result<Rational, Failure> {
    let bad = || Failure::validation("bad-rational", ptr, "expected a rational \"p/q\"");
    match v {
        Value::String(s) => Rational::from_str(s.trim()).map_err(|_| bad()),
        Value::Number(_) => integer(v, ptr)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        _ => Err(bad()),
    }
}

pub(crate) fn cone(doc: &Value) -> Result<Cone, Failure> {
    let rank: usize = small(field(doc, "", "rank")?, "/rank", "rank")?;
    let rays = integer_rows(field(doc, "", "rays")?, "/rays")?;
    Cone::new(rank, rays).map_err(|e| cone_failure(&e))
}

fn cone_failure(e: &ToricError) -> Failure {
    let msg = e.to_string();
    match *e {
        ToricError::InvalidRank => Failure::validation("invalid-rank", "/rank", msg),
        ToricError::NoRays => Failure::validation("no-rays", "/rays", msg),
        ToricError::RayLength { index, .. } => {
            Failure::validation("ray-length", format!("/rays/{index}"), msg)
        }
        ToricError::ZeroRay { index } => {
            Failure::validation("zero-ray", format!("/rays/{index}"), msg)
        }
        ToricError::NonPrimitiveRay { index } => {
            Failure::validation("non-primitive-ray", format!("/rays/{index}"), msg)
        }
        ToricError::DuplicateRay { index, .. } => {
            Failure::validation("duplicate-ray", format!("/rays/{index}"), msg)
        }
        ToricError::NotFullDimensional => {
            Failure::precondition("not-full-dimensional", "/rays", msg)
        }
        ToricError::NotStronglyConvex => Failure::precondition("not-strongly-convex", "/rays", msg),
        _ => toric_failure(e, "/rays"),
    }
}

pub(crate) fn toric_failure(e: &ToricError, point_flag: &str) -> Failure {
    let msg = e.to_string();
    match e {
        ToricError::NotInCone => Failure::precondition("not-in-cone", point_flag, msg),
        ToricError::NotQGorenstein => Failure::precondition("not-q-gorenstein", "/rays", msg),
        ToricError::NotPrimitive => Failure::validation("not-primitive", point_flag, msg),
        ToricError::DimensionMismatch { .. } => {
            Failure::validation("dimension-mismatch", point_flag, msg)
        }
        other => cone_failure(other),
    }
}

pub(crate) fn graph(doc: &Value) -> Result<(DualGraph, Boundary), Failure> {
    let vertices = array(field(doc, "", "vertices")?, "/vertices")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let p = format!("/vertices/{i}");
            Ok(GraphVertex {
                genus: small(field(v, &p, "genus")?, &format!("{p}/genus"), "genus")?,
                self_int: small(
                    field(v, &p, "self_int")?,
                    &format!("{p}/self_int"),
                    "self-intersection",
                )?,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let edges = match object(doc, "")?.get("edges") {
        None => Vec::new(),
        Some(es) => array(es, "/edges")?
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let p = format!("/edges/{k}");
                let parts = array(e, &p)?;
                if !(2..=3).contains(&parts.len()) {
                    return Err(Failure::validation(
                        "wrong-type",
                        p,
                        "edge must be [i, j] or [i, j, mult]",
                    ));
                }
                Ok(GraphEdge {
                    i: small(&parts[0], &format!("{p}/0"), "vertex index")?,
                    j: small(&parts[1], &format!("{p}/1"), "vertex index")?,
                    mult: match parts.get(2) {
                        Some(m) => small(m, &format!("{p}/2"), "multiplicity")?,
                        None => 1,
                    },
                })
            })
            .collect::<Result<Vec<_>, Failure>>()?,
    };
    let g = DualGraph::new(vertices, edges).map_err(|e| graph_failure(&e))?;
    let components = match object(doc, "")?.get("boundary") {
        None | Some(Value::Null) => Vec::new(),
        Some(bs) => array(bs, "/boundary")?
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let p = format!("/boundary/{k}");
                let coeff = rational(field(b, &p, "coeff")?, &format!("{p}/coeff"))?;
                let meets = array(field(b, &p, "meets")?, &format!("{p}/meets"))?
                    .iter()
                    .enumerate()
                    .map(|(t, m)| {
                        let q = format!("{p}/meets/{t}");
                        let pair = array(m, &q)?;
                        if pair.len() != 2 {
                            return Err(Failure::validation(
                                "wrong-type",
                                q,
                                "expected [vertex, mult]",
                            ));
                        }
                        Ok((
                            small(&pair[0], &format!("{q}/0"), "vertex index")?,
                            small(&pair[1], &format!("{q}/1"), "multiplicity")?,
                        ))
                    })
                    .collect::<Result<Vec<_>, Failure>>()?;
                Ok(BoundaryComponent { coeff, meets })
            })
            .collect::<Result<Vec<_>, Failure>>()?,
    };
    let b = Boundary::new(components, &g).map_err(|e| graph_failure(&e))?;
    Ok((g, b))
}

pub(crate) fn graph_failure(e: &GraphError) -> Failure {
    let msg = e.to_string();
    match *e {
        GraphError::Empty => Failure::validation("empty-graph", "/vertices", msg),
        GraphError::EdgeEndpoint { edge, .. } => {
            Failure::validation("edge-endpoint", format!("/edges/{edge}"), msg)
        }
        GraphError::SelfLoop { edge } => {
            Failure::validation("self-loop", format!("/edges/{edge}"), msg)
        }
        GraphError::ZeroMultiplicity { edge } => {
            Failure::validation("zero-multiplicity", format!("/edges/{edge}/2"), msg)
        }
        GraphError::CoefficientOutOfRange { component, .. } => Failure::validation(
            "boundary-coeff-range",
            format!("/boundary/{component}/coeff"),
            msg,
        ),
        GraphError::BoundaryEndpoint { component, .. } => Failure::validation(
            "boundary-endpoint",
            format!("/boundary/{component}/meets"),
            msg,
        ),
        GraphError::BoundaryZeroMultiplicity { component } => Failure::validation(
            "zero-multiplicity",
            format!("/boundary/{component}/meets"),
            msg,
        ),
        GraphError::Disconnected => Failure::precondition("disconnected", "/edges", msg),
        GraphError::NotContractible => Failure::precondition("not-contractible", "/vertices", msg),
        GraphError::InvalidSite(_) => Failure::validation("invalid-site", "--vertex", msg),
        GraphError::Overflow => Failure::precondition("overflow", "/vertices", msg),
    }
}

pub(crate) fn surface(doc: &Value) -> Result<SurfaceLattice, Failure> {
    let rank: usize = small(field(doc, "", "rank")?, "/rank", "rank")?;
    let rows = integer_rows(field(doc, "", "gram")?, "/gram")?;
    if rows.len() != rank {
        return Err(Failure::validation(
            "dimension-mismatch",
            "/gram",
            format!("gram has {} rows, rank is {rank}", rows.len()),
        ));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != rank) {
        return Err(Failure::validation(
            "gram-not-square",
            format!("/gram/{i}"),
            format!("row {i} has {} entries, rank is {rank}", rows[i].len()),
        ));
    }
    let gram = IntMatrix::from_rows(rows)
        .map_err(|e| Failure::validation("gram-not-square", "/gram", e.to_string()))?;
    let k = integers(field(doc, "", "K")?, "/K")?;
    let curves = match object(doc, "")?.get("curves") {
        None => Vec::new(),
        Some(c) => integer_rows(c, "/curves")?,
    };
    let label = match object(doc, "")?.get("label") {
        None => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => {
            return Err(Failure::validation(
                "wrong-type",
                "/label",
                "expected a string",
            ))
        }
    };
    SurfaceLattice::new(gram, k, curves, label).map_err(|e| surface_failure(&e, "/curves"))
}

/// `what` names the offending object for class-level errors.
pub(crate) fn surface_failure(e: &SurfaceError, what: &str) -> Failure {
    let msg = e.to_string();
    match e {
        SurfaceError::EmptyLattice => Failure::validation("empty-lattice", "/rank", msg),
        SurfaceError::GramNotSquare => Failure::validation("gram-not-square", "/gram", msg),
        SurfaceError::AsymmetricGram { row, col } => {
            Failure::validation("asymmetric-gram", format!("/gram/{row}/{col}"), msg)
        }
        SurfaceError::DimensionMismatch { what: w, .. } => {
            let ptr = match w.strip_prefix("curve ") {
                Some(i) => format!("/curves/{i}"),
                None if w == "K" => "/K".to_string(),
                None => what.to_string(),
            };
            Failure::validation("dimension-mismatch", ptr, msg)
        }
        SurfaceError::CurveParity { index } => {
            Failure::validation("curve-parity", format!("/curves/{index}"), msg)
        }
        SurfaceError::NonIntegralGenus => Failure::precondition("non-integral-genus", what, msg),
        SurfaceError::UnboundedSearch => Failure::precondition("unbounded-search", "--bound", msg),
        SurfaceError::NotMinusOneClass => Failure::precondition("not-minus-one-class", what, msg),
        SurfaceError::NotRank2 => Failure::precondition("not-rank-2", "/rank", msg),
        SurfaceError::EmptyCurveList => Failure::precondition("empty-curve-list", "/curves", msg),
        SurfaceError::NotPointed => Failure::precondition("not-pointed", "/curves", msg),
    }
}

pub(crate) fn plurigenera(doc: &Value) -> Result<(PlurigenusSample, Option<u32>), Failure> {
    let samples = array(field(doc, "", "samples")?, "/samples")?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let p = format!("/samples/{i}");
            let pair = array(s, &p)?;
            if pair.len() != 2 {
                return Err(Failure::validation("wrong-type", p, "expected [m, P_m]"));
            }
            let m: u64 = small(&pair[0], &format!("{p}/0"), "m")?;
            let pm = integer(&pair[1], &format!("{p}/1"))?;
            if pm.is_negative() {
                return Err(Failure::validation(
                    "out-of-range",
                    format!("{p}/1"),
                    "plurigenera are nonnegative",
                ));
            }
            Ok((m, pm.magnitude().clone()))
        })
        .collect::<Result<Vec<(u64, BigUint)>, Failure>>()?;
    let max_dim = match object(doc, "")?.get("max_dim") {
        None | Some(Value::Null) => None,
        Some(v) => Some(small(v, "/max_dim", "max_dim")?),
    };
    let sample = PlurigenusSample::new(samples).map_err(|e| kodaira_failure(&e, "/samples"))?;
    Ok((sample, max_dim))
}

pub(crate) fn coefficients(doc: &Value) -> Result<Vec<Rational>, Failure> {
    array(field(doc, "", "coeffs")?, "/coeffs")?
        .iter()
        .enumerate()
        .map(|(i, c)| rational(c, &format!("/coeffs/{i}")))
        .collect()
}

pub(crate) fn kodaira_failure(e: &KodairaError, base: &str) -> Failure {
    let msg = e.to_string();
    match *e {
        KodairaError::InsufficientSamples => {
            Failure::precondition("insufficient-samples", base, msg)
        }
        KodairaError::EmptySamples => Failure::validation("empty-samples", base, msg),
        KodairaError::UnorderedSamples { index } => {
            Failure::validation("unordered-samples", format!("{base}/{index}/0"), msg)
        }
        KodairaError::NegativeCoefficient { index } => {
            Failure::validation("negative-coefficient", format!("{base}/{index}"), msg)
        }
        KodairaError::CoefficientOutOfRange { index } => {
            Failure::validation("coefficient-range", format!("{base}/{index}"), msg)
        }
        KodairaError::ZeroDegree => Failure::validation("zero-degree", base, msg),
    }
}
