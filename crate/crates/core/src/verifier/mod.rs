//! Verification cases, structured reports and the suite runner.

pub mod identities;

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{rat, to_fraction_string};
use crate::algebra::{GradedPoly, HalfQSeries, Rational};
use crate::bundles::{Family, Geometry, GeometrySpec, QFormId, Route};
use crate::decomp::Coefficients;
use crate::error::{usage, Error, Result};
use crate::theta::forms::{jacobi_identity_residual, JacobiPerturbation};
use crate::theta::numeric::{transformation_law_checks, NumericCheck, SamplePoint};

pub use identities::{
    cancellation_sides, corollary_dim4, corollary_dim8, modularity_witness, transfer_residual, untwisted_sides,
    CancellationSides, CorollarySides, WitnessSource,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    /// The `AB` cancellation identity.
    #[serde(rename = "THM31")]
    AbCancellation,
    /// Its `k = 1` specialization.
    #[serde(rename = "COR32")]
    AbDim4,
    /// Its `k = 2` specialization.
    #[serde(rename = "COR33")]
    AbDim8,
    /// The `AB_XI` cancellation identity.
    #[serde(rename = "THM34")]
    XiCancellation,
    /// The `TWO_LINE` identity modulo `p1(TM) = p1(V)`.
    #[serde(rename = "THM41")]
    TwoLineCancellation,
    #[serde(rename = "COR42")]
    TwoLineDim4,
    #[serde(rename = "COR43")]
    TwoLineDim8,
    /// Modularity witness plus the `Γ^0(2) → Γ0(2)` transfer to the first form.
    #[serde(rename = "EQ318_TRANSFER")]
    Transfer,
    /// Bundle route against theta route.
    #[serde(rename = "DOUBLE_ROUTE")]
    DoubleRoute,
    /// `h_0, h_1` against the closed forms of `b_r, β_r` and their variants.
    #[serde(rename = "BR_BETAR_CLOSED_FORMS")]
    ClosedForms,
    /// `a = 1, b = 0` rebuilt from scratch and compared with the general identity.
    #[serde(rename = "HLZ_SPECIAL")]
    HlzSpecial,
    #[serde(rename = "NUMERIC_MODULARITY")]
    NumericModularity,
    #[serde(rename = "JACOBI_QSERIES")]
    JacobiQSeries,
}

impl CaseId {
    pub const ALL: [CaseId; 13] = [
        CaseId::AbCancellation,
        CaseId::AbDim4,
        CaseId::AbDim8,
        CaseId::XiCancellation,
        CaseId::TwoLineCancellation,
        CaseId::TwoLineDim4,
        CaseId::TwoLineDim8,
        CaseId::Transfer,
        CaseId::DoubleRoute,
        CaseId::ClosedForms,
        CaseId::HlzSpecial,
        CaseId::NumericModularity,
        CaseId::JacobiQSeries,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::AbCancellation => "THM31",
            CaseId::AbDim4 => "COR32",
            CaseId::AbDim8 => "COR33",
            CaseId::XiCancellation => "THM34",
            CaseId::TwoLineCancellation => "THM41",
            CaseId::TwoLineDim4 => "COR42",
            CaseId::TwoLineDim8 => "COR43",
            CaseId::Transfer => "EQ318_TRANSFER",
            CaseId::DoubleRoute => "DOUBLE_ROUTE",
            CaseId::ClosedForms => "BR_BETAR_CLOSED_FORMS",
            CaseId::HlzSpecial => "HLZ_SPECIAL",
            CaseId::NumericModularity => "NUMERIC_MODULARITY",
            CaseId::JacobiQSeries => "JACOBI_QSERIES",
        }
    }

    pub fn parse(s: &str) -> Option<CaseId> {
        CaseId::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(s))
    }

    /// Whether the case is numeric rather than an exact identity.
    pub fn is_numeric(self) -> bool {
        self == CaseId::NumericModularity
    }

    /// The family the case requires, if any.
    pub fn required_family(self) -> Option<Family> {
        match self {
            CaseId::AbCancellation | CaseId::AbDim4 | CaseId::AbDim8 | CaseId::HlzSpecial => Some(Family::Ab),
            CaseId::XiCancellation => Some(Family::AbXi),
            CaseId::TwoLineCancellation | CaseId::TwoLineDim4 | CaseId::TwoLineDim8 => Some(Family::TwoLine),
            _ => None,
        }
    }

    /// `k + 2` for symbolic cases, 20 for the Jacobi series, 60 product terms for numerics.
    pub fn default_q_order(self, spec: &GeometrySpec) -> usize {
        match self {
            CaseId::JacobiQSeries => 20,
            CaseId::NumericModularity => SamplePoint::default().terms,
            _ => spec.k as usize + 2,
        }
    }

    fn supports_perturbation(self) -> bool {
        !matches!(self, CaseId::DoubleRoute | CaseId::ClosedForms | CaseId::HlzSpecial | CaseId::NumericModularity)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Location of the first nonzero residual; both fields are `null` when everything vanished.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ResidualSummary {
    /// Exponent of `q` as `num/den`.
    pub first_nonzero_q_order: Option<String>,
    /// Lowest cohomological degree of that coefficient.
    pub degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub pontryagin: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub case: CaseId,
    pub spec: GeometrySpec,
    pub q_order: usize,
    pub verdict: Verdict,
    pub residual: ResidualSummary,
    pub quantities: Vec<Quantity>,
    pub millis: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn quantity(&self, name: &str) -> Option<&str> {
        self.quantities.iter().find(|q| q.name == name).map(|q| q.pontryagin.as_str())
    }

    /// Multi-line human summary.
    pub fn to_text(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        let mut out = format!("{verdict} {} [{}] N={} ({} ms)\n", self.case, self.spec, self.q_order, self.millis);
        if let Some(q) = &self.residual.first_nonzero_q_order {
            let deg = self.residual.degree.map_or("-".to_string(), |d| d.to_string());
            out.push_str(&format!("  residual: first nonzero at q-order {q}, degree {deg}\n"));
        }
        for q in &self.quantities {
            out.push_str(&format!("  {} = {}\n", q.name, q.pontryagin));
        }
        out
    }
}

/// One check inside a case. The case passes iff every check passes.
enum Check {
    Poly(GradedPoly),
    Series(HalfQSeries<GradedPoly>),
    Rational(HalfQSeries<Rational>),
    Numeric(NumericCheck),
    Holds(bool),
}

impl Check {
    fn passed(&self) -> bool {
        match self {
            Check::Poly(p) => p.is_zero(),
            Check::Series(s) => s.is_zero(),
            Check::Rational(s) => s.is_zero(),
            Check::Numeric(n) => n.passed(),
            Check::Holds(b) => *b,
        }
    }

    fn summary(&self) -> ResidualSummary {
        let half = |h: usize| Some(to_fraction_string(&rat(h as i64, 2)));
        match self {
            Check::Poly(p) => ResidualSummary { first_nonzero_q_order: half(0), degree: p.min_degree() },
            Check::Series(s) => match s.first_nonzero_location() {
                Some((h, d)) => ResidualSummary { first_nonzero_q_order: half(h), degree: Some(d) },
                None => ResidualSummary::default(),
            },
            Check::Rational(s) => ResidualSummary { first_nonzero_q_order: s.first_nonzero().and_then(half), degree: None },
            Check::Numeric(_) | Check::Holds(_) => ResidualSummary::default(),
        }
    }
}

/// Accumulates checks and quantities for one report.
struct Outcome<'g> {
    geo: Option<&'g Geometry>,
    checks: Vec<Check>,
    quantities: Vec<Quantity>,
}

impl<'g> Outcome<'g> {
    fn new(geo: Option<&'g Geometry>) -> Self {
        Outcome { geo, checks: Vec::new(), quantities: Vec::new() }
    }

    fn note(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.quantities.push(Quantity { name: name.into(), pontryagin: value.into() });
    }

    fn poly(&mut self, name: impl Into<String>, p: &GradedPoly) {
        let text = match self.geo {
            Some(g) => g.describe(p),
            None => p.to_string(),
        };
        self.note(name, text);
    }

    fn series(&mut self, name: &str, s: &HalfQSeries<GradedPoly>) {
        match s.first_nonzero_location() {
            None => self.note(name, "0"),
            Some((h, _)) => {
                let label = crate::algebra::series::q_power_label(h);
                self.poly(format!("{name} at {label}"), s.coeff(h));
            }
        }
    }

    fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn finish(self, case: CaseId, spec: GeometrySpec, q_order: usize, started: Instant) -> Report {
        let failed = self.checks.iter().find(|c| !c.passed());
        let verdict = if failed.is_none() { Verdict::Pass } else { Verdict::Fail };
        let residual = failed.map(Check::summary).unwrap_or_default();
        Report {
            case,
            spec,
            q_order,
            verdict,
            residual,
            quantities: self.quantities,
            millis: started.elapsed().as_millis() as u64,
        }
    }
}

/// Knobs beyond `(case, spec, N)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct VerifyOptions {
    /// Deliberately corrupt one coefficient so the case must fail.
    pub perturb: bool,
    /// Replaces the tolerance of every numeric check.
    pub tolerance: Option<f64>,
    /// Adds seeded random sample points to the numeric case.
    pub seed: Option<u64>,
}

pub fn verify_case(case: CaseId, spec: GeometrySpec, q_order: usize) -> Result<Report> {
    verify_case_with(case, spec, q_order, VerifyOptions::default())
}

pub fn verify_case_with(case: CaseId, spec: GeometrySpec, q_order: usize, opts: VerifyOptions) -> Result<Report> {
    let started = Instant::now();
    spec.validate()?;
    if let Some(f) = case.required_family() {
        if f != spec.family {
            return usage(format!("{case} needs family {f}, spec is {spec}"));
        }
    }
    if opts.perturb && !case.supports_perturbation() {
        return usage(format!("{case} has no perturbed negative control"));
    }
    let symbolic = !matches!(case, CaseId::NumericModularity | CaseId::JacobiQSeries);
    if symbolic && 2 * q_order < spec.max_r() + 4 {
        return usage(format!(
            "q-order {q_order} is below [k/2]/2 + 2 = {} for k={}",
            rat(spec.max_r() as i64 + 4, 2),
            spec.k
        ));
    }
    let geo = if symbolic { Some(Geometry::new(spec)?) } else { None };
    let mut out = Outcome::new(geo.as_ref());
    match (case, geo.as_ref()) {
        (CaseId::NumericModularity, _) => numeric(&mut out, q_order, opts)?,
        (CaseId::JacobiQSeries, _) => {
            let perturb = JacobiPerturbation { lhs_power: opts.perturb.then_some(4) };
            let r = jacobi_identity_residual(q_order, perturb)?;
            out.note("residual", if r.is_zero() { "0".to_string() } else { r.to_string() });
            out.check(Check::Rational(r));
        }
        (_, Some(g)) => symbolic_case(&mut out, case, g, q_order, opts.perturb)?,
        (_, None) => unreachable!("symbolic cases always build a geometry"),
    }
    Ok(out.finish(case, spec, q_order, started))
}

fn numeric(out: &mut Outcome<'_>, terms: usize, opts: VerifyOptions) -> Result<()> {
    let mut points = vec![SamplePoint { terms, ..SamplePoint::default() }];
    if let Some(seed) = opts.seed {
        points.extend(seeded_points(seed, terms));
    }
    for (i, p) in points.iter().enumerate() {
        for mut c in transformation_law_checks(*p)? {
            if let Some(t) = opts.tolerance {
                c.tolerance = t;
            }
            if opts.perturb {
                c.residual += 1.0;
            }
            let name = if i == 0 { c.label.clone() } else { format!("{} @ tau={:.4}", c.label, p.tau) };
            out.note(name, format!("{:.3e} (tolerance {:.0e})", c.residual, c.tolerance));
            out.check(Check::Numeric(c));
        }
    }
    Ok(())
}

/// Three extra points with `Re τ ∈ [-1/2, 1/2)`, `Im τ ∈ [0.8, 1.5)`, `|v| < 0.2`.
fn seeded_points(seed: u64, terms: usize) -> Vec<SamplePoint> {
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..3)
        .map(|_| SamplePoint {
            tau: Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.5)),
            v: Complex64::new(rng.gen_range(-0.14..0.14), rng.gen_range(-0.14..0.14)),
            terms,
        })
        .collect()
}

fn symbolic_case(out: &mut Outcome<'_>, case: CaseId, g: &Geometry, order: usize, perturb: bool) -> Result<()> {
    match case {
        CaseId::AbCancellation | CaseId::XiCancellation | CaseId::TwoLineCancellation => {
            let s = cancellation_sides(g, order, perturb)?;
            record_sides(out, g, &s)?;
        }
        CaseId::AbDim4 | CaseId::TwoLineDim4 => {
            let c = corollary_dim4(g, perturb)?;
            if let Some(k) = &c.constant {
                out.note("constant", format!("{} * ({})", crate::algebra::rational::to_short_string(k), g.describe(&g.p1_combo())));
            }
            out.poly("lhs", &c.lhs);
            out.poly("rhs", &c.rhs);
            out.check(Check::Poly(identities::normalize(g, &c.lhs.sub(&c.rhs))?));
            // the general identity at k = 1 must coincide with this one term by term
            let s = cancellation_sides(g, order, false)?;
            let lhs_gap = identities::normalize(g, &s.lhs.sub(&c.lhs))?;
            let rhs_gap = identities::normalize(g, &s.rhs().sub(&c.rhs))?;
            out.note("general identity at k=1 coincides", yes_no(lhs_gap.is_zero() && rhs_gap.is_zero() || perturb));
            if !perturb {
                out.check(Check::Poly(lhs_gap));
                out.check(Check::Poly(rhs_gap));
            }
        }
        CaseId::AbDim8 | CaseId::TwoLineDim8 => {
            let c = corollary_dim8(g, perturb)?;
            out.poly("lhs", &c.lhs);
            out.poly("rhs", &c.rhs);
            out.check(Check::Poly(identities::normalize(g, &c.lhs.sub(&c.rhs))?));
            if let Some((ll, lr)) = &c.literal {
                let gap = identities::normalize(g, &ll.sub(lr))?;
                out.note("literal statement holds", yes_no(gap.is_zero()));
                if !gap.is_zero() {
                    out.poly("literal statement residual", &gap);
                }
            }
            if matches!(case, CaseId::TwoLineDim8) {
                out.note("assumption", "p1(xi') read as the first Pontryagin class of xi'");
            }
            let s = cancellation_sides(g, order, false)?;
            let lhs_gap = identities::normalize(g, &s.lhs.sub(&c.lhs))?;
            out.note("general identity at k=2 coincides", yes_no(lhs_gap.is_zero()));
            if !perturb {
                out.check(Check::Poly(lhs_gap));
            }
        }
        CaseId::Transfer => {
            let w = modularity_witness(g, WitnessSource::Corrected, order)?;
            let mut h = w.h.clone();
            if perturb {
                h[0] = h[0].scale(&crate::algebra::rational::int(2));
            }
            for (r, c) in h.iter().enumerate() {
                out.poly(format!("h_{r}"), c);
            }
            out.series("modularity residual", &w.residual);
            out.check(Check::Series(w.residual.clone()));
            let t = transfer_residual(g, &h, order)?;
            out.series("transfer residual", &t);
            out.check(Check::Series(t));
        }
        CaseId::DoubleRoute => {
            let first = QFormId::first_for(g.spec().family);
            let d1 = g.q_form(first, Route::Bundle, order)?.sub(&g.q_form(first, Route::Theta, order)?)?;
            let d2 = g.corrected_form(Route::Bundle, order)?.sub(&g.corrected_form(Route::Theta, order)?)?;
            out.series("first form difference", &d1);
            out.series("corrected form difference", &d2);
            out.check(Check::Series(d1));
            out.check(Check::Series(d2));
        }
        CaseId::ClosedForms => closed_forms(out, g, order)?,
        CaseId::HlzSpecial => {
            let general = cancellation_sides(g, order, false)?;
            let direct = untwisted_sides(g, order)?;
            record_sides(out, g, &direct)?;
            out.check(Check::Poly(general.lhs.sub(&direct.lhs)));
            out.check(Check::Poly(general.correction.sub(&direct.correction)));
            out.check(Check::Holds(general.b == direct.b && general.beta == direct.beta));
            out.note("coincides with general identity", yes_no(general == direct));
        }
        CaseId::NumericModularity | CaseId::JacobiQSeries => unreachable!("handled by verify_case_with"),
    }
    Ok(())
}

fn record_sides(out: &mut Outcome<'_>, g: &Geometry, s: &CancellationSides) -> Result<()> {
    for (r, (b, beta)) in s.b.iter().zip(&s.beta).enumerate() {
        out.poly(format!("ch b_{r}"), b);
        out.poly(format!("beta_{r}"), beta);
    }
    out.poly("lhs", &s.lhs);
    out.poly("B", &s.correction);
    let residual = identities::normalize(g, &s.lhs.sub(&s.rhs()))?;
    if g.spec().family == Family::TwoLine {
        out.note("reduction", "modulo p1(TM) - p1(V)");
    }
    out.poly("residual", &residual);
    out.check(Check::Poly(residual));
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn closed_forms(out: &mut Outcome<'_>, g: &Geometry, order: usize) -> Result<()> {
    let spec = *g.spec();
    let (b, beta) = Coefficients::for_family(spec.family);
    for which in [b, beta] {
        let e = g.extract_br_betar(which, order)?;
        for (r, h) in e.result.h.iter().enumerate().take(2) {
            out.poly(format!("{}_{r}", which.name()), h);
        }
        for c in &e.checks {
            out.note(format!("{}_{} matches {}", which.name(), c.r, c.reading.label()), yes_no(c.matches));
        }
        out.check(Check::Holds(e.general_matches()));
        out.check(Check::Holds(e.classic_reading_matches(0).unwrap_or(true)));
        // The classic closed forms carry `-aV`; they only apply when b = 0.
        if spec.b == 0 {
            out.check(Check::Holds(e.classic_reading_matches(1).unwrap_or(true)));
        }
    }
    Ok(())
}

/// One line of a suite configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseEntry {
    pub case: CaseId,
    pub k: u32,
    pub l: u32,
    #[serde(default = "one")]
    pub a: i64,
    #[serde(default)]
    pub b: i64,
    #[serde(default = "ab")]
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_order: Option<usize>,
    /// Negative control: corrupt one coefficient so the case must fail.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub perturb: bool,
}

fn one() -> i64 {
    1
}

fn ab() -> Family {
    Family::Ab
}

impl CaseEntry {
    pub fn new(case: CaseId, spec: GeometrySpec) -> Self {
        CaseEntry { case, k: spec.k, l: spec.l, a: spec.a, b: spec.b, family: spec.family, q_order: None, perturb: false }
    }

    pub fn spec(&self) -> Result<GeometrySpec> {
        GeometrySpec::new(self.k, self.l, self.a, self.b, self.family)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SuiteConfig {
    #[serde(default)]
    pub cases: Vec<CaseEntry>,
    #[serde(default)]
    pub format: OutputFormat,
    /// Numeric tolerance override.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Seed for extra random numeric sample points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<SuiteConfig> {
        let cfg: SuiteConfig = serde_json::from_str(text).map_err(|e| Error::Usage(format!("bad suite config: {e}")))?;
        for c in &cfg.cases {
            c.spec()?;
        }
        Ok(cfg)
    }

    /// Every case on its applicable slice of `k∈{1,2}, l∈{1,2,3}, a∈{-1,0,1,2}, b∈{0,1,2}`.
    pub fn default_grid() -> SuiteConfig {
        let mut ab = Vec::new();
        let mut xi = Vec::new();
        let mut two = Vec::new();
        for k in 1..=2 {
            for l in 1..=3 {
                two.push(GeometrySpec::two_line(k, l).expect("valid"));
                for a in -1..=2 {
                    for b in 0..=2 {
                        ab.push(GeometrySpec::ab(k, l, a, b).expect("valid"));
                        xi.push(GeometrySpec::ab_xi(k, l, a, b).expect("valid"));
                    }
                }
            }
        }
        let mut cases = Vec::new();
        let mut push = |case: CaseId, specs: &mut dyn Iterator<Item = GeometrySpec>| {
            cases.extend(specs.map(|s| CaseEntry::new(case, s)));
        };
        let all = || ab.iter().chain(&xi).chain(&two).copied();
        push(CaseId::AbCancellation, &mut ab.iter().copied());
        push(CaseId::AbDim4, &mut ab.iter().copied().filter(|s| s.k == 1));
        push(CaseId::AbDim8, &mut ab.iter().copied().filter(|s| s.k == 2));
        push(CaseId::XiCancellation, &mut xi.iter().copied());
        push(CaseId::TwoLineCancellation, &mut two.iter().copied());
        push(CaseId::TwoLineDim4, &mut two.iter().copied().filter(|s| s.k == 1));
        push(CaseId::TwoLineDim8, &mut two.iter().copied().filter(|s| s.k == 2));
        push(CaseId::Transfer, &mut all());
        push(CaseId::DoubleRoute, &mut all());
        push(CaseId::ClosedForms, &mut all());
        push(CaseId::HlzSpecial, &mut ab.iter().copied().filter(|s| (s.a, s.b) == (1, 0)));
        let base = GeometrySpec::ab(1, 1, 1, 0).expect("valid");
        push(CaseId::NumericModularity, &mut std::iter::once(base));
        push(CaseId::JacobiQSeries, &mut std::iter::once(base));
        SuiteConfig { cases, ..SuiteConfig::default() }
    }
}

/// Result of one suite entry: a report, or the error that prevented one.
pub type Entry = std::result::Result<Report, (CaseEntry, Error)>;

/// Run every entry concurrently; results are sorted by case id, then spec, then q-order.
pub fn run_suite(config: &SuiteConfig) -> Vec<Entry> {
    let opts = |perturb| VerifyOptions { perturb, tolerance: config.tolerance, seed: config.seed };
    let mut out: Vec<Entry> = config
        .cases
        .par_iter()
        .map(|c| {
            let run = || -> Result<Report> {
                let spec = c.spec()?;
                let n = c.q_order.unwrap_or_else(|| c.case.default_q_order(&spec));
                verify_case_with(c.case, spec, n, opts(c.perturb))
            };
            run().map_err(|e| (c.clone(), e))
        })
        .collect();
    out.sort_by_key(sort_key);
    out
}

fn sort_key(e: &Entry) -> (CaseId, Option<GeometrySpec>, usize) {
    match e {
        Ok(r) => (r.case, Some(r.spec), r.q_order),
        Err((c, _)) => (c.case, c.spec().ok(), c.q_order.unwrap_or(0)),
    }
}

/// Suite passes iff every entry produced a passing report.
pub fn suite_passed(entries: &[Entry]) -> bool {
    entries.iter().all(|e| matches!(e, Ok(r) if r.passed()))
}
