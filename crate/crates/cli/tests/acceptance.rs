//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any of them fails.

mod common;

use std::time::{Duration, Instant};

use mmpkit::{run, AnalysisRequest, Command};
use mmpkit_core::dual_graph::{
    self, BlowupSite, Boundary, BoundaryComponent, DualGraph, GraphEdge, GraphVertex,
    SingularityClass,
};
use mmpkit_core::kodaira::{self, Kappa, PlurigenusSample};
use mmpkit_core::lattice::{int_vec, IntMatrix};
use mmpkit_core::surface::{self, MmpOutcome, SearchOptions, SurfaceLattice};
use mmpkit_core::toric::{self, Cone, ToricKind};
use mmpkit_core::{Execution, IntVector, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);
type NamedGraph = (String, usize, Vec<(usize, usize)>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn single_vertex_json(genus: u32, self_int: i64) -> String {
    format!(r#"{{"vertices":[{{"genus":{genus},"self_int":{self_int}}}],"edges":[]}}"#)
}

fn graph_report(json: &str) -> Result<Value, String> {
    let (r, code) = run(&AnalysisRequest::inline(Command::GraphDiscrepancies, json));
    ensure!(code == 0, "exit code {code}: {}", r.machine());
    Ok(r.value().clone())
}

fn ac1_rational_normal_cone() -> Check {
    for a in 1..=12i64 {
        let v = graph_report(&single_vertex_json(0, -a))?;
        let expected = q(a - 2, -a);
        let got = v["discrepancies"][0].as_str().unwrap_or_default();
        ensure!(
            got == expected.to_string(),
            "a = {a}: d = {got}, expected {expected}"
        );
        let class = match a {
            1 => "TerminalRel",
            2 => "Canonical",
            _ => "Klt",
        };
        ensure!(v["class"] == class, "a = {a}: class {}", v["class"]);
    }
    Ok("d = (a-2)/(-a) exactly for a = 1..12; TerminalRel/Canonical/Klt".into())
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// Tree with arms of the given lengths hanging off vertex 0.
fn star(arms: &[usize]) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    let mut n = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
    }
    (n, edges)
}

fn ac2_du_val() -> Check {
    let mut cases: Vec<NamedGraph> = Vec::new();
    for n in 1..=10 {
        cases.push((format!("A{n}"), n, chain(n)));
    }
    for n in 4..=10 {
        let (m, e) = star(&[1, 1, n - 3]);
        cases.push((format!("D{n}"), m, e));
    }
    for (name, arms) in [("E6", [1, 2, 2]), ("E7", [1, 2, 3]), ("E8", [1, 2, 4])] {
        let (m, e) = star(&arms);
        cases.push((name.to_string(), m, e));
    }
    for (name, n, edges) in &cases {
        let g = DualGraph::rational(&vec![-2; *n], edges).map_err(|e| e.to_string())?;
        let r = dual_graph::discrepancies(&g, &Boundary::empty()).map_err(|e| e.to_string())?;
        ensure!(
            r.discrepancies.iter().all(Zero::is_zero),
            "{name}: nonzero discrepancies"
        );
        ensure!(
            r.class == SingularityClass::Canonical,
            "{name}: class {:?}",
            r.class
        );
        let detected = r.du_val.map(|d| d.to_string());
        ensure!(
            detected.as_deref() == Some(name.as_str()),
            "{name}: detected {detected:?}"
        );
    }
    Ok(format!(
        "{} ADE graphs: zero discrepancies, Canonical, type detected",
        cases.len()
    ))
}

fn ac3_genus_contractions() -> Check {
    for a in 1..=10i64 {
        let v = graph_report(&single_vertex_json(1, -a))?;
        ensure!(
            v["discrepancies"][0] == "-1",
            "genus 1, a = {a}: d = {}",
            v["discrepancies"][0]
        );
        ensure!(v["class"] == "Lc", "genus 1, a = {a}: class {}", v["class"]);
        let v = graph_report(&single_vertex_json(2, -a))?;
        let d: Rational = v["discrepancies"][0]
            .as_str()
            .unwrap_or_default()
            .parse()
            .map_err(|_| "parse")?;
        ensure!(d < -Rational::one(), "genus 2, a = {a}: d = {d}");
        ensure!(
            v["class"] == "NotLc",
            "genus 2, a = {a}: class {}",
            v["class"]
        );
    }
    Ok("genus 1: d = -1 (Lc); genus 2: d < -1 (NotLc), a = 1..10".into())
}

fn ac4_cross_oracle() -> Check {
    for a in 1..=12i64 {
        let c = Cone::from_i64(&[&[0, 1], &[a, -1]]).map_err(|e| e.to_string())?;
        let t = toric::toric_discrepancy(&c, &int_vec(&[1, 0])).map_err(|e| e.to_string())?;
        let g = DualGraph::rational(&[-a], &[]).map_err(|e| e.to_string())?;
        let d = dual_graph::discrepancies(&g, &Boundary::empty()).map_err(|e| e.to_string())?;
        ensure!(
            t == d.discrepancies[0],
            "a = {a}: toric {t} vs graph {}",
            d.discrepancies[0]
        );
    }
    Ok("toric and graph discrepancies agree for a = 1..12".into())
}

fn ac5_odp() -> Check {
    let c = Cone::from_i64(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]])
        .map_err(|e| e.to_string())?;
    let class = toric::classify_cone(&c, Execution::default()).map_err(|e| e.to_string())?;
    ensure!(class.kind == ToricKind::Terminal, "kind {:?}", class.kind);
    ensure!(!class.q_factorial, "q_factorial should be false");
    let d = toric::toric_discrepancy(&c, &int_vec(&[1, 1, 2])).map_err(|e| e.to_string())?;
    ensure!(d == Rational::one(), "discrepancy at (1,1,2) is {d}");
    Ok("Terminal, not Q-factorial, d(1,1,2) = 1".into())
}

/// Independent count of `aH - sum b_i E_i` with `sum b_i = 3a - 1` and
/// `sum b_i^2 = a^2 + 1`: enumerate sorted `b` and count permutations.
fn oracle_minus_one_count(r: usize) -> u64 {
    fn factorial(n: usize) -> u64 {
        (1..=n as u64).product()
    }
    /// Extends the nonincreasing sequence `b` to length `r` in every way.
    fn extend(b: &mut Vec<i64>, r: usize, a: i64, lo: i64, acc: &mut u64) {
        let sq: i64 = b.iter().map(|x| x * x).sum();
        if sq > a * a + 1 {
            return;
        }
        if b.len() == r {
            if b.iter().sum::<i64>() == 3 * a - 1 && sq == a * a + 1 {
                let runs = b.chunk_by(|x, y| x == y).map(|run| factorial(run.len()));
                *acc += factorial(r) / runs.product::<u64>();
            }
            return;
        }
        let hi = b.last().copied().unwrap_or(-lo);
        for x in lo..=hi {
            b.push(x);
            extend(b, r, a, lo, acc);
            b.pop();
        }
    }
    let mut total = 0;
    for a in 0i64..=50 {
        if (3 * a - 1).pow(2) > r as i64 * (a * a + 1) {
            continue;
        }
        let mut bmax = 0;
        while (bmax + 1) * (bmax + 1) <= a * a + 1 {
            bmax += 1;
        }
        extend(&mut Vec::with_capacity(r), r, a, -bmax, &mut total);
    }
    total
}

fn ac6_del_pezzo() -> Check {
    let expected = [1u64, 3, 6, 10, 16, 27, 56, 240];
    let mut r8_time = Duration::ZERO;
    for r in 1..=8 {
        let s = surface::make_blowup_p2(r);
        let start = Instant::now();
        let classes = surface::enumerate_minus_one_classes(&s, SearchOptions::default())
            .map_err(|e| e.to_string())?;
        if r == 8 {
            r8_time = start.elapsed();
        }
        let oracle = oracle_minus_one_count(r);
        ensure!(
            classes.len() as u64 == expected[r - 1],
            "r = {r}: {} classes",
            classes.len()
        );
        ensure!(oracle == expected[r - 1], "r = {r}: oracle counts {oracle}");
        for c in &classes {
            ensure!(
                s.dot(c, c) == BigInt::from(-1) && s.k_dot(c) == BigInt::from(-1),
                "r = {r}: bad class {c:?}"
            );
        }
        let mut dedup = classes.clone();
        dedup.dedup();
        ensure!(dedup.len() == classes.len(), "r = {r}: duplicate classes");
    }
    ensure!(r8_time < Duration::from_secs(5), "r = 8 took {r8_time:?}");
    Ok(format!(
        "counts 1,3,6,10,16,27,56,240 match the oracle; r = 8 in {r8_time:.2?}"
    ))
}

fn ac7_mmp() -> Check {
    for r in 0..=6 {
        let t = surface::run_classical_mmp(&surface::make_blowup_p2(r), SearchOptions::default())
            .map_err(|e| e.to_string())?;
        ensure!(
            t.steps.len() == r,
            "r = {r}: {} contractions",
            t.steps.len()
        );
        for (i, st) in t.steps.iter().enumerate() {
            ensure!(
                st.rank_before == r + 1 - i && st.rank_after == r - i,
                "r = {r}: step {i} ranks"
            );
        }
        ensure!(
            t.outcome == MmpOutcome::MoriFibreP2like,
            "r = {r}: {:?}",
            t.outcome
        );
        ensure!(
            t.final_lattice.canonical() == &int_vec(&[-3]),
            "r = {r}: K = {:?}",
            t.final_lattice.canonical()
        );
    }
    let quadric = surface::make_quadric();
    let t = surface::run_classical_mmp(&quadric, SearchOptions::default())
        .map_err(|e| e.to_string())?;
    let MmpOutcome::MoriFibreRuled(f) = &t.outcome else {
        return Err(format!("quadric: {:?}", t.outcome));
    };
    ensure!(t.steps.is_empty(), "quadric contracted something");
    ensure!(
        quadric.k_dot(f) == BigInt::from(-2),
        "K.f = {}",
        quadric.k_dot(f)
    );
    ensure!(quadric.dot(f, f).is_zero(), "f^2 = {}", quadric.dot(f, f));
    let g = surface::adjunction_genus(&quadric, f).map_err(|e| e.to_string())?;
    ensure!(g.is_zero(), "fibre genus {g}");
    Ok(
        "blowup_p2(r), r <= 6: r contractions to K = (-3); quadric ruled with K.f = -2, genus 0"
            .into(),
    )
}

fn random_rational_in_unit(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(1..=6i64);
    q(rng.gen_range(0..=d), d)
}

fn random_tree(rng: &mut ChaCha8Rng, minimal: bool) -> DualGraph {
    let n = rng.gen_range(1..=6);
    let vertices = (0..n)
        .map(|_| {
            let genus = if rng.gen_bool(0.8) {
                0
            } else {
                rng.gen_range(1..=2)
            };
            let floor = if minimal && genus == 0 { -2 } else { -1 };
            GraphVertex {
                genus,
                self_int: rng.gen_range(-5..=floor),
            }
        })
        .collect();
    let edges = (1..n)
        .map(|j| GraphEdge {
            i: rng.gen_range(0..j),
            j,
            mult: if rng.gen_bool(0.9) { 1 } else { 2 },
        })
        .collect();
    DualGraph::new(vertices, edges).unwrap()
}

fn ac8a_resolution_independence(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut done = 0;
    while done < 200 {
        let g = random_tree(rng, false);
        if !dual_graph::check_contractible(&g).unwrap() {
            continue;
        }
        let n = g.len();
        let comps: Vec<BoundaryComponent> = (0..rng.gen_range(0..=2))
            .map(|_| BoundaryComponent {
                coeff: random_rational_in_unit(rng),
                meets: vec![(rng.gen_range(0..n), rng.gen_range(1..=2))],
            })
            .collect();
        let b = Boundary::new(comps, &g).unwrap();
        let before = dual_graph::discrepancies(&g, &b).map_err(|e| e.to_string())?;
        let d = &before.discrepancies;
        let choice = rng.gen_range(0..3);
        let (site, expected) = if choice == 1 && !g.edges().is_empty() {
            let e = g.edges()[rng.gen_range(0..g.edges().len())];
            (
                BlowupSite::Edge(e.i, e.j),
                Rational::one() + &d[e.i] + &d[e.j],
            )
        } else if choice == 2 && !b.components().is_empty() {
            let k = rng.gen_range(0..b.components().len());
            let v = b.components()[k].meets[0].0;
            (
                BlowupSite::Boundary {
                    vertex: v,
                    component: k,
                },
                Rational::one() + &d[v] - &b.components()[k].coeff,
            )
        } else {
            let v = rng.gen_range(0..n);
            (BlowupSite::Vertex(v), Rational::one() + &d[v])
        };
        let (g2, b2) = dual_graph::blowup_vertex(&g, &b, site).map_err(|e| e.to_string())?;
        let after = dual_graph::discrepancies(&g2, &b2).map_err(|e| format!("{site:?}: {e}"))?;
        ensure!(
            after.discrepancies[..n] == d[..],
            "{site:?}: old discrepancies moved"
        );
        ensure!(
            after.discrepancies[n] == expected,
            "{site:?}: new {} vs {expected}",
            after.discrepancies[n]
        );
        done += 1;
    }
    Ok(done)
}

fn ac8b_negativity(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let mut done = 0;
    while done < 200 {
        let g = random_tree(rng, true);
        if !dual_graph::check_contractible(&g).unwrap() {
            continue;
        }
        let r = dual_graph::discrepancies(&g, &Boundary::empty()).map_err(|e| e.to_string())?;
        ensure!(r.minimal_resolution, "K.E_j >= 0 by construction");
        ensure!(
            r.discrepancies.iter().all(|x| !x.is_positive()),
            "positive discrepancy {:?}",
            r.discrepancies
        );
        ensure!(
            r.class != SingularityClass::TerminalRel,
            "TerminalRel on a minimal resolution"
        );
        done += 1;
    }
    Ok(done)
}

/// Blow-up lattice written in a random unimodular basis `y = U y'`.
fn scrambled_blowup(rng: &mut ChaCha8Rng, r: usize) -> (IntMatrix, IntVector) {
    let n = r + 1;
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    for _ in 0..rng.gen_range(1..=4) {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let k: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = IntMatrix::identity(n);
        e.set(i, j, BigInt::from(k));
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, BigInt::from(-k));
        u = u.mul(&e).unwrap();
        u_inv = e_inv.mul(&u_inv).unwrap();
    }
    let s = surface::make_blowup_p2(r);
    let gram = u.transpose().mul(s.gram()).unwrap().mul(&u).unwrap();
    let k = u_inv.mul_vec(s.canonical()).unwrap();
    (gram, k)
}

fn parallel(a: &[BigInt], b: &[BigInt]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

fn ac8c_pushforward(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for case in 0..200 {
        let r = rng.gen_range(1..=6);
        let (gram, k) = scrambled_blowup(rng, r);
        let bare = SurfaceLattice::new(gram.clone(), k.clone(), vec![], "scrambled")
            .map_err(|e| e.to_string())?;
        let classes = surface::enumerate_minus_one_classes(&bare, SearchOptions::default())
            .map_err(|e| e.to_string())?;
        ensure!(!classes.is_empty(), "case {case}: no (-1)-classes");
        let c = classes[rng.gen_range(0..classes.len())].clone();
        let mut xs: Vec<IntVector> = Vec::new();
        while xs.len() < 3 {
            let x: IntVector = (0..=r)
                .map(|_| BigInt::from(rng.gen_range(-3..=3i64)))
                .collect();
            let distinct = xs.iter().all(|y| {
                let diff: IntVector = x.iter().zip(y).map(|(a, b)| a - b).collect();
                !parallel(&diff, &c)
            });
            if !parallel(&x, &c) && distinct {
                xs.push(x);
            }
        }
        let s = SurfaceLattice::new(gram, k, xs.clone(), "scrambled").map_err(|e| e.to_string())?;
        let t = surface::castelnuovo_contract(&s, &c).map_err(|e| e.to_string())?;
        ensure!(t.rank() == r, "case {case}: rank {}", t.rank());
        let px = t.curves();
        ensure!(px.len() == xs.len(), "case {case}: curves dropped");
        for i in 0..xs.len() {
            for j in 0..xs.len() {
                let lhs = t.dot(&px[i], &px[j]);
                let rhs = s.dot(&xs[i], &xs[j]) + s.dot(&xs[i], &c) * s.dot(&xs[j], &c);
                ensure!(
                    lhs == rhs,
                    "case {case}: pi_*x.pi_*y = {lhs}, expected {rhs}"
                );
            }
            let kx = t.k_dot(&px[i]);
            let expected = s.k_dot(&xs[i]) - s.dot(&xs[i], &c);
            ensure!(
                kx == expected,
                "case {case}: K'.pi_*x = {kx}, expected {expected}"
            );
        }
    }
    Ok(200)
}

/// Plurigenera with known Kodaira dimension.
fn generated_plurigenera(rng: &mut ChaCha8Rng) -> (PlurigenusSample, Kappa) {
    let top: u64 = rng.gen_range(32..=64);
    match rng.gen_range(0..3) {
        0 => {
            let g = rng.gen_range(0..=20u64);
            let s = (1..=top)
                .map(|m| (m, kodaira::curve_plurigenus(g, m)))
                .collect();
            (
                PlurigenusSample::new(s).unwrap(),
                kodaira::curve_kappa(g).value,
            )
        }
        1 => {
            let s = (1..=top).map(|m| (m, BigUint::zero())).collect();
            (PlurigenusSample::new(s).unwrap(), Kappa::NegInfinity)
        }
        _ => {
            let k: u32 = rng.gen_range(0..=3);
            let c: u64 = rng.gen_range(1..=5);
            let e: u64 = if k > 0 { rng.gen_range(0..=3) } else { 0 };
            let period: u64 = rng.gen_range(1..=2);
            let s = (1..=top)
                .map(|m| {
                    let p = if m % period == 0 {
                        c * m.pow(k) + if k > 0 { e * m.pow(k - 1) } else { 0 }
                    } else {
                        0
                    };
                    (m, BigUint::from(p))
                })
                .collect();
            (PlurigenusSample::new(s).unwrap(), Kappa::Finite(k))
        }
    }
}

fn ac8d_kappa_multiples(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    for case in 0..200 {
        let (sample, truth) = generated_plurigenera(rng);
        let max_dim = if rng.gen_bool(0.5) { Some(3) } else { None };
        let full = kodaira::estimate_kappa(&sample, max_dim).map_err(|e| e.to_string())?;
        ensure!(
            full.value == truth,
            "case {case}: estimated {} for true {truth}",
            full.value
        );
        for l in [2u64, 3] {
            let sub = sample.multiples_of(l).ok_or("empty subsample")?;
            let est = kodaira::estimate_kappa(&sub, max_dim).map_err(|e| e.to_string())?;
            ensure!(
                est.value == full.value,
                "case {case}, l = {l}: {} vs {}",
                est.value,
                full.value
            );
        }
    }
    Ok(200)
}

fn ac8_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let a = ac8a_resolution_independence(&mut rng).map_err(|e| format!("(a) {e}"))?;
    let b = ac8b_negativity(&mut rng).map_err(|e| format!("(b) {e}"))?;
    let c = ac8c_pushforward(&mut rng).map_err(|e| format!("(c) {e}"))?;
    let d = ac8d_kappa_multiples(&mut rng).map_err(|e| format!("(d) {e}"))?;
    Ok(format!(
        "blow-up {a}, negativity {b}, pushforward {c}, kappa multiples {d} cases"
    ))
}

fn ac9_formulas() -> Check {
    let genera: Vec<u64> = (1..=3)
        .map(|d| kodaira::plane_curve_genus(d).unwrap())
        .collect();
    ensure!(genera == [0, 0, 1], "plane curve genera {genera:?}");
    let p2 = surface::make_blowup_p2(0);
    let chi = surface::riemann_roch_surface(&p2, &int_vec(&[1]), &BigInt::one())
        .map_err(|e| e.to_string())?;
    ensure!(chi == q(3, 1), "chi(O(1)) = {chi}");
    for g in 0..=12i64 {
        let chi = kodaira::riemann_roch_curve(&BigInt::from(2 * g - 2), &BigInt::from(g));
        ensure!(chi == BigInt::from(g - 1), "chi(K_C) = {chi} for g = {g}");
    }
    let pa = surface::adjunction_genus(&p2, &int_vec(&[3])).map_err(|e| e.to_string())?;
    ensure!(
        pa == BigInt::from(kodaira::plane_curve_genus(3).unwrap()) && pa.is_one(),
        "p_a(3H) = {pa}"
    );
    Ok("g(1,2,3) = 0,0,1; chi(O_P2(1)) = 3; chi(K_C) = g-1; p_a(3H) = 1".into())
}

fn ac10_determinism() -> Check {
    let cases = common::cases();
    for case in &cases {
        let (first, c1) = common::run_machine(&case.args);
        let (second, c2) = common::run_machine(&case.args);
        ensure!(
            first == second && c1 == c2,
            "{}: reports differ between runs",
            case.name
        );
        let stored = std::fs::read_to_string(common::expected_path(&case.name))
            .map_err(|e| e.to_string())?;
        ensure!(
            first == stored,
            "{}: differs from the stored report",
            case.name
        );
    }
    Ok(format!(
        "{} golden inputs: byte-identical across runs",
        cases.len()
    ))
}

/// Bypasses the test harness capture so the verdicts always show.
fn report(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        (
            "AC1 cone over a rational normal curve",
            ac1_rational_normal_cone,
        ),
        ("AC2 Du Val suite", ac2_du_val),
        ("AC3 genus contractions", ac3_genus_contractions),
        ("AC4 toric/graph cross-oracle", ac4_cross_oracle),
        ("AC5 ODP terminality", ac5_odp),
        ("AC6 del Pezzo (-1)-class counts", ac6_del_pezzo),
        ("AC7 MMP traces", ac7_mmp),
        ("AC8 property suites", ac8_properties),
        ("AC9 formula spot checks", ac9_formulas),
        ("AC10 determinism", ac10_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => report(&format!("[PASS] {name}: {detail}")),
            Err(why) => {
                report(&format!("[FAIL] {name}: {why}"));
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
