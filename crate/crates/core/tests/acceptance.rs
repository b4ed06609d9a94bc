//! Acceptance run: one PASS/FAIL line per criterion, with pinned tolerances and time bounds.
//!
//! Exits nonzero only when a criterion's outcome differs from its expectation. A criterion
//! listed in `EXPECTED_UNATTAINABLE` is computed faithfully and reported as FAIL; it is
//! an error for it to pass silently.

mod support;

use std::time::{Duration, Instant};

use anomaly_forms::algebra::rational::{int, rat};
use anomaly_forms::algebra::Rational;
use anomaly_forms::bundles::{Geometry, GeometrySpec};
use anomaly_forms::decomp::{Coefficients, Reading};
use anomaly_forms::theta::numeric::{e2_numeric, transformation_law_checks, SamplePoint};
use anomaly_forms::theta::{modular_form, ModularFormId};
use anomaly_forms::verifier::{modularity_witness, run_suite, CaseEntry, CaseId, Entry, Report, SuiteConfig, WitnessSource};
use num_complex::Complex64;

const THETA_LAW_TOLERANCE: f64 = 1e-9;
const E2_LAW_TOLERANCE: f64 = 1e-8;
const FORM_LAW_TOLERANCE: f64 = 1e-8;
const THETA_PRODUCT_TERMS: usize = 60;
const E2_SERIES_TERMS: usize = 40;
const JACOBI_ORDER: usize = 20;
const DOUBLE_ROUTE_ORDER: usize = 4;
const PROPERTY_CASES: u32 = 256;

const LEADING_BOUND: Duration = Duration::from_secs(1);
const JACOBI_BOUND: Duration = Duration::from_secs(1);
const NUMERIC_BOUND: Duration = Duration::from_secs(1);
const DOUBLE_ROUTE_BOUND: Duration = Duration::from_secs(120);
const CANCELLATION_CASE_BOUND: Duration = Duration::from_secs(10);
const COROLLARY_CASE_BOUND: Duration = Duration::from_secs(5);
const TWO_LINE_CASE_BOUND: Duration = Duration::from_secs(30);
const PROPERTY_BOUND: Duration = Duration::from_secs(60);

/// The full-degree decomposition of the second theta bundle carries a nonzero residual at
/// `q^{1/2}` for every spec; only its top-degree corrected form is an honest modular form.
const EXPECTED_UNATTAINABLE: &[&str] = &["5a"];

struct Line {
    id: &'static str,
    passed: bool,
    detail: String,
}

fn ab_grid(ks: &[u32], ls: &[u32]) -> Vec<GeometrySpec> {
    let mut out = Vec::new();
    for &k in ks {
        for &l in ls {
            for a in -1..=2 {
                for b in 0..=2 {
                    out.push(GeometrySpec::ab(k, l, a, b).unwrap());
                }
            }
        }
    }
    out
}

fn xi_grid(ks: &[u32], ls: &[u32]) -> Vec<GeometrySpec> {
    ab_grid(ks, ls).into_iter().map(|s| GeometrySpec::ab_xi(s.k, s.l, s.a, s.b).unwrap()).collect()
}

fn two_line_grid(ks: &[u32], ls: &[u32]) -> Vec<GeometrySpec> {
    ks.iter().flat_map(|&k| ls.iter().map(move |&l| GeometrySpec::two_line(k, l).unwrap())).collect()
}

fn run(case: CaseId, specs: &[GeometrySpec], q_order: Option<usize>) -> Vec<Entry> {
    let cases = specs
        .iter()
        .map(|&s| {
            let mut e = CaseEntry::new(case, s);
            e.q_order = q_order;
            e
        })
        .collect();
    run_suite(&SuiteConfig { cases, ..SuiteConfig::default() })
}

/// All entries ran, passed, and stayed under `bound` each.
fn summarize(entries: &[Entry], bound: Option<Duration>) -> (bool, String) {
    let mut failures = Vec::new();
    let mut slowest = 0u64;
    for e in entries {
        match e {
            Ok(r) => {
                slowest = slowest.max(r.millis);
                let slow = bound.is_some_and(|b| u128::from(r.millis) > b.as_millis());
                if !r.passed() || slow {
                    failures.push(format!("{} [{}]{}", r.case, r.spec, if slow { " too slow" } else { "" }));
                }
            }
            Err((c, err)) => failures.push(format!("{} k={} l={}: {err}", c.case, c.k, c.l)),
        }
    }
    let passed = failures.is_empty() && !entries.is_empty();
    let mut detail = format!("{}/{} cases, slowest {slowest} ms", entries.len() - failures.len(), entries.len());
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first failure {first}"));
    }
    (passed, detail)
}

fn reports(entries: &[Entry]) -> impl Iterator<Item = &Report> {
    entries.iter().filter_map(|e| e.as_ref().ok())
}

fn leading_terms() -> Line {
    let start = Instant::now();
    let expect: [(ModularFormId, Vec<Rational>); 4] = [
        (ModularFormId::Delta1, vec![rat(1, 4), int(0), int(6)]),
        (ModularFormId::Eps1, vec![rat(1, 16), int(0), int(-1)]),
        (ModularFormId::Delta2, vec![rat(-1, 8), int(-3)]),
        (ModularFormId::Eps2, vec![int(0), int(1)]),
    ];
    let mut bad = Vec::new();
    for (id, lead) in &expect {
        let s = modular_form(*id, 2);
        if s.coeffs()[..lead.len()] != lead[..] {
            bad.push(format!("{id:?} = {s}"));
        }
    }
    let elapsed = start.elapsed();
    Line {
        id: "1",
        passed: bad.is_empty() && elapsed < LEADING_BOUND,
        detail: format!("delta1, eps1, delta2, eps2 leading terms; {} ms {}", elapsed.as_millis(), bad.join(", ")),
    }
}

fn jacobi() -> Line {
    let entries = run(CaseId::JacobiQSeries, &[GeometrySpec::ab(1, 1, 1, 0).unwrap()], Some(JACOBI_ORDER));
    let (ok, detail) = summarize(&entries, Some(JACOBI_BOUND));
    Line { id: "2", passed: ok, detail: format!("exact to q^{JACOBI_ORDER}; {detail}") }
}

fn numeric_laws() -> Line {
    let start = Instant::now();
    let point = SamplePoint { tau: Complex64::new(0.25, 1.1), v: Complex64::new(0.13, 0.07), terms: THETA_PRODUCT_TERMS };
    let checks = transformation_law_checks(point).unwrap();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for c in &checks {
        let tol = if c.label.starts_with("theta") || c.label.starts_with("Jacobi") { THETA_LAW_TOLERANCE } else { FORM_LAW_TOLERANCE };
        worst = worst.max(c.residual);
        let within = c.residual < tol;
        if !within {
            bad.push(format!("{} ({:.1e})", c.label, c.residual));
        }
    }
    // E2 laws again at the shorter series truncation
    let tau = point.tau;
    let e2 = |t| e2_numeric(t, E2_SERIES_TERMS).unwrap();
    let t_law = (e2(tau + 1.0) - e2(tau)).norm();
    let s_law = (e2(-1.0 / tau) - (tau * tau * e2(tau) - 6.0 * Complex64::i() * tau / std::f64::consts::PI)).norm();
    for (name, r) in [("E2 under T (40 terms)", t_law), ("E2 under S (40 terms)", s_law)] {
        worst = worst.max(r);
        let within = r < E2_LAW_TOLERANCE;
        if !within {
            bad.push(format!("{name} ({r:.1e})"));
        }
    }
    let elapsed = start.elapsed();
    Line {
        id: "3",
        passed: bad.is_empty() && elapsed < NUMERIC_BOUND,
        detail: format!("{} laws, worst residual {worst:.1e}; {} ms {}", checks.len() + 2, elapsed.as_millis(), bad.join(", ")),
    }
}

fn double_route() -> Line {
    let start = Instant::now();
    let mut specs = ab_grid(&[1, 2], &[1, 2]);
    specs.extend(two_line_grid(&[1, 2], &[1, 2]));
    let entries = run(CaseId::DoubleRoute, &specs, Some(DOUBLE_ROUTE_ORDER));
    let (ok, detail) = summarize(&entries, None);
    let elapsed = start.elapsed();
    Line {
        id: "4",
        passed: ok && elapsed < DOUBLE_ROUTE_BOUND,
        detail: format!("bundle vs theta route to q^{DOUBLE_ROUTE_ORDER}; {detail}; grid {} ms", elapsed.as_millis()),
    }
}

fn witness_specs() -> Vec<GeometrySpec> {
    let mut specs = ab_grid(&[1, 2], &[1, 2]);
    specs.extend(two_line_grid(&[1, 2], &[1, 2]));
    specs
}

/// Returns (specs with zero residual, total, first nonzero location seen).
fn witness(source: WitnessSource, specs: &[GeometrySpec]) -> (usize, usize, Option<String>) {
    let mut zero = 0;
    let mut first = None;
    for &s in specs {
        let geo = Geometry::new(s).unwrap();
        let d = modularity_witness(&geo, source, s.k as usize + 2).unwrap();
        if d.residual.is_zero() {
            zero += 1;
        } else if first.is_none() {
            let (half, deg) = d.residual.first_nonzero_location().unwrap();
            first = Some(format!("[{s}] at {} in degree {deg}", anomaly_forms::algebra::series::q_power_label(half)));
        }
    }
    (zero, specs.len(), first)
}

fn witnesses() -> Vec<Line> {
    let specs = witness_specs();
    let (z_full, n, first_full) = witness(WitnessSource::SecondBundle, &specs);
    let (z_corr, _, first_corr) = witness(WitnessSource::Corrected, &specs);
    // z is a nonzero polynomial for every spec, so each one is a valid control
    let (z_unc, n_unc, _) = witness(WitnessSource::Uncorrected, &specs);
    vec![
        Line {
            id: "5a",
            passed: z_full == n,
            detail: format!(
                "second theta bundle, all degrees: {z_full}/{n} zero residual; {}",
                first_full.unwrap_or_default()
            ),
        },
        Line {
            id: "5b",
            passed: z_corr == n,
            detail: format!("corrected top-degree form: {z_corr}/{n} zero residual {}", first_corr.unwrap_or_default()),
        },
        Line {
            id: "5c",
            passed: z_unc == 0,
            detail: format!("negative control without the correction: {}/{n_unc} nonzero residual", n_unc - z_unc),
        },
    ]
}

fn closed_forms() -> Line {
    let mut specs = ab_grid(&[1, 2], &[1, 2, 3]);
    specs.extend(xi_grid(&[1, 2], &[1, 2]));
    specs.extend(two_line_grid(&[1, 2], &[1, 2, 3]));
    // the two sign readings only differ at odd k with an r = 1 coefficient
    specs.extend(ab_grid(&[3], &[1]));
    specs.extend(two_line_grid(&[3], &[1]));
    let entries = run(CaseId::ClosedForms, &specs, None);
    let (ok, detail) = summarize(&entries, None);

    // tally which reading of the r = 1 sign each spec satisfies
    let mut tally = std::collections::BTreeMap::<(String, &str), (usize, usize)>::new();
    for s in &specs {
        let geo = Geometry::new(*s).unwrap();
        let (b, beta) = Coefficients::for_family(s.family);
        for which in [b, beta] {
            let e = geo.extract_br_betar(which, s.k as usize + 2).unwrap();
            for c in e.checks.iter().filter(|c| c.r == 1 && c.reading != Reading::General) {
                let parity = if s.k % 2 == 0 { "even k" } else { "odd k" };
                let key = (format!("{}_1 {parity} {}", which.name(), if s.b == 0 { "b=0" } else { "b>0" }), c.reading.label());
                let t = tally.entry(key).or_default();
                t.0 += usize::from(c.matches);
                t.1 += 1;
            }
        }
    }
    let all_label = Reading::SignOnAll.label();
    let constant_label = Reading::SignOnConstant.label();
    let every_term = tally.iter().filter(|((w, r), _)| w.contains("b=0") && *r == all_label).all(|(_, (m, n))| m == n);
    let constant_refuted =
        tally.iter().any(|((w, r), (m, n))| w.contains("odd k b=0") && *r == constant_label && m < n);
    let resolved = every_term && constant_refuted;
    let readings: Vec<String> = tally.iter().map(|((w, r), (m, n))| format!("{w} {r}: {m}/{n}")).collect();
    Line {
        id: "6",
        passed: ok && resolved,
        detail: format!(
            "{detail}; sign reading {}; tally {}",
            if resolved { "resolved as (-1)^k on every term" } else { "unresolved" },
            readings.join("; ")
        ),
    }
}

fn cancellation() -> Vec<Line> {
    let thm31 = run(CaseId::AbCancellation, &ab_grid(&[1, 2], &[1, 2, 3]), None);
    let thm34 = run(CaseId::XiCancellation, &xi_grid(&[1, 2], &[1, 2]), None);
    let (ok31, d31) = summarize(&thm31, Some(CANCELLATION_CASE_BOUND));
    let (ok34, d34) = summarize(&thm34, Some(CANCELLATION_CASE_BOUND));
    vec![
        Line { id: "7a", passed: ok31, detail: format!("THM31 {d31}") },
        Line { id: "7b", passed: ok34, detail: format!("THM34 {d34}") },
    ]
}

fn corollaries() -> Vec<Line> {
    let mut out = Vec::new();
    let plans: [(&'static str, CaseId, Vec<GeometrySpec>); 4] = [
        ("8a", CaseId::AbDim4, ab_grid(&[1], &[1, 2, 3])),
        ("8b", CaseId::AbDim8, ab_grid(&[2], &[1, 2, 3])),
        ("8c", CaseId::TwoLineDim4, two_line_grid(&[1], &[1, 2, 3])),
        ("8d", CaseId::TwoLineDim8, two_line_grid(&[2], &[1, 2, 3])),
    ];
    for (id, case, specs) in plans {
        let entries = run(case, &specs, None);
        let (ok, mut detail) = summarize(&entries, Some(COROLLARY_CASE_BOUND));
        let literal: Vec<&Report> = reports(&entries).filter(|r| r.quantity("literal statement holds").is_some()).collect();
        if !literal.is_empty() {
            let holds = literal.iter().filter(|r| r.quantity("literal statement holds") == Some("yes")).count();
            detail.push_str(&format!("; printed form holds literally in {holds}/{}", literal.len()));
        }
        out.push(Line { id, passed: ok, detail: format!("{case} {detail}") });
    }
    out
}

fn two_line() -> Line {
    let entries = run(CaseId::TwoLineCancellation, &two_line_grid(&[1, 2], &[1, 2]), None);
    let (ok, detail) = summarize(&entries, Some(TWO_LINE_CASE_BOUND));
    Line { id: "9", passed: ok, detail: format!("THM41 modulo p1(TM) - p1(V); {detail}") }
}

fn hlz() -> Line {
    let specs: Vec<GeometrySpec> =
        [1, 2].iter().flat_map(|&k| [1, 2, 3].map(move |l| GeometrySpec::ab(k, l, 1, 0).unwrap())).collect();
    let entries = run(CaseId::HlzSpecial, &specs, None);
    let (ok, detail) = summarize(&entries, None);
    Line { id: "10", passed: ok, detail: format!("a=1, b=0 specialization; {detail}") }
}

fn transfer() -> Line {
    let entries = run(CaseId::Transfer, &ab_grid(&[1, 2], &[1, 2, 3]), None);
    let (ok, detail) = summarize(&entries, None);
    Line { id: "11", passed: ok, detail: format!("EQ318_TRANSFER to q-order k+2; {detail}") }
}

fn properties() -> Line {
    let start = Instant::now();
    let mut bad = Vec::new();
    let props = support::properties();
    for p in &props {
        if let Err(e) = (p.run)(&mut support::runner(PROPERTY_CASES)) {
            bad.push(e);
        }
    }
    let elapsed = start.elapsed();
    Line {
        id: "12",
        passed: bad.is_empty() && elapsed < PROPERTY_BOUND,
        detail: format!("{} properties x {PROPERTY_CASES} instances; {} ms {}", props.len(), elapsed.as_millis(), bad.join("; ")),
    }
}

fn main() {
    let mut lines = vec![leading_terms(), jacobi(), numeric_laws(), double_route()];
    lines.extend(witnesses());
    lines.push(closed_forms());
    lines.extend(cancellation());
    lines.extend(corollaries());
    lines.push(two_line());
    lines.push(hlz());
    lines.push(transfer());
    lines.push(properties());

    let mut unexpected = 0;
    for l in &lines {
        let expected_fail = EXPECTED_UNATTAINABLE.contains(&l.id);
        let note = match (l.passed, expected_fail) {
            (false, true) => " (expected: unattainable by construction)",
            (true, true) => " (UNEXPECTED: listed as unattainable)",
            (false, false) => " (UNEXPECTED)",
            (true, false) => "",
        };
        if l.passed == expected_fail {
            unexpected += 1;
        }
        println!("{} criterion {:<3} {}{note}", if l.passed { "PASS" } else { "FAIL" }, l.id, l.detail);
    }
    println!("{} criteria, {unexpected} unexpected", lines.len());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
