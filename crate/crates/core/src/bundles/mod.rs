//! Characteristic forms of the twisted bundles: genus forms, spinor characters,
//! the Chern characters of the `Θ1/Θ2` tensor products and the assembled `Q/P` forms.
//!
//! Everything is expressed in hyperbolic root variables: the tangent bundle has
//! roots `±w_1..±w_{2k}`, `V` has `±v_1..±v_l`, and the rank-two bundles `ξ, ξ'`
//! have Euler classes `u, u'`, so `p1(ξ) = u^2`.

mod forms;
mod virtual_bundle;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::{int, rat, Rational};
use crate::algebra::univariate::{apply_series, terms_needed, Taylor};
use crate::algebra::{to_pontryagin, GradedPoly, PontryaginPoly, RingSpec, RootFamily};
use crate::error::{usage, Result};

pub use forms::{QFormId, Route};
pub use virtual_bundle::{SlotKind, Summand, ThetaBundle, ThetaRecipe, VirtualSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    /// `Θ(a, b)` built from `V` alone.
    Ab,
    /// `Θ(a, b)` twisted by one rank-two bundle `ξ`.
    AbXi,
    /// The `a = 1, b = 0` shape with two rank-two bundles `ξ, ξ'`.
    TwoLine,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Ab, Family::AbXi, Family::TwoLine];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ab => "AB",
            Family::AbXi => "AB_XI",
            Family::TwoLine => "TWO_LINE",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Discrete problem data: `dim M = 4k`, `rank V = 2l`, the integers `a, b` and the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeometrySpec {
    pub k: u32,
    pub l: u32,
    pub a: i64,
    pub b: i64,
    pub family: Family,
}

impl GeometrySpec {
    pub fn new(k: u32, l: u32, a: i64, b: i64, family: Family) -> Result<Self> {
        let spec = GeometrySpec { k, l, a, b, family };
        spec.validate()?;
        Ok(spec)
    }

    pub fn ab(k: u32, l: u32, a: i64, b: i64) -> Result<Self> {
        Self::new(k, l, a, b, Family::Ab)
    }

    pub fn ab_xi(k: u32, l: u32, a: i64, b: i64) -> Result<Self> {
        Self::new(k, l, a, b, Family::AbXi)
    }

    pub fn two_line(k: u32, l: u32) -> Result<Self> {
        Self::new(k, l, 1, 0, Family::TwoLine)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.l == 0 {
            return usage(format!("k and l must be positive, got k={} l={}", self.k, self.l));
        }
        if self.k > 16 || self.l > 16 {
            return usage("k and l are limited to 16");
        }
        if self.family == Family::TwoLine && (self.a, self.b) != (1, 0) {
            return usage(format!("TWO_LINE requires a=1, b=0, got a={} b={}", self.a, self.b));
        }
        Ok(())
    }

    pub fn has_xi(&self) -> bool {
        self.family != Family::Ab
    }

    pub fn has_xi_prime(&self) -> bool {
        self.family == Family::TwoLine
    }

    /// `[k/2]`, the top index of the modular basis.
    pub fn max_r(&self) -> usize {
        (self.k / 2) as usize
    }

    pub fn top_degree(&self) -> u32 {
        4 * self.k
    }
}

impl fmt::Display for GeometrySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={} l={} a={} b={}", self.family, self.k, self.l, self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Genus {
    AHat,
    LHat,
}

/// A [`GeometrySpec`] together with its root ring.
#[derive(Debug, Clone)]
pub struct Geometry {
    spec: GeometrySpec,
    ring: Arc<RingSpec>,
    tm: Vec<usize>,
    v: Vec<usize>,
    xi: Option<usize>,
    xi_prime: Option<usize>,
}

impl Geometry {
    pub fn new(spec: GeometrySpec) -> Result<Self> {
        spec.validate()?;
        let mut names: Vec<String> = (1..=2 * spec.k).map(|j| format!("w{j}")).collect();
        names.extend((1..=spec.l).map(|j| format!("v{j}")));
        if spec.has_xi() {
            names.push("u".into());
        }
        if spec.has_xi_prime() {
            names.push("u'".into());
        }
        let ring = RingSpec::degree_two(&names, spec.top_degree())?;
        let n_tm = 2 * spec.k as usize;
        let n_v = spec.l as usize;
        let tm = (0..n_tm).collect();
        let v = (n_tm..n_tm + n_v).collect();
        let xi = spec.has_xi().then_some(n_tm + n_v);
        let xi_prime = spec.has_xi_prime().then_some(n_tm + n_v + 1);
        Ok(Geometry { spec, ring, tm, v, xi, xi_prime })
    }

    pub fn spec(&self) -> &GeometrySpec {
        &self.spec
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn tm_roots(&self) -> &[usize] {
        &self.tm
    }

    pub fn v_roots(&self) -> &[usize] {
        &self.v
    }

    pub fn xi(&self) -> Option<usize> {
        self.xi
    }

    pub fn xi_prime(&self) -> Option<usize> {
        self.xi_prime
    }

    pub fn gen(&self, index: usize) -> GradedPoly {
        GradedPoly::generator(&self.ring, index)
    }

    pub fn one(&self) -> GradedPoly {
        GradedPoly::one(&self.ring)
    }

    pub fn constant(&self, c: Rational) -> GradedPoly {
        GradedPoly::constant(&self.ring, c)
    }

    fn terms(&self) -> usize {
        terms_needed(self.ring.cap(), 2)
    }

    fn require_xi(&self) -> Result<usize> {
        match self.xi {
            Some(i) => Ok(i),
            None => usage(format!("{} has no line bundle ξ", self.spec.family)),
        }
    }

    fn require_xi_prime(&self) -> Result<usize> {
        match self.xi_prime {
            Some(i) => Ok(i),
            None => usage(format!("{} has no line bundle ξ'", self.spec.family)),
        }
    }

    /// `∏ f(x)` over the given generators.
    pub fn per_root(&self, f: &Taylor, roots: &[usize]) -> Result<GradedPoly> {
        roots.iter().try_fold(self.one(), |acc, &g| Ok(acc.mul(&apply_series(f, &self.gen(g))?)))
    }

    /// `Â = ∏ (w/2)/sinh(w/2)` or `L̂ = ∏ w/tanh(w/2)` over the tangent roots.
    pub fn genus_form(&self, which: Genus) -> Result<GradedPoly> {
        let f = match which {
            Genus::AHat => Taylor::ahat_root(self.terms()),
            Genus::LHat => Taylor::lhat_root(self.terms()),
        };
        self.per_root(&f, &self.tm)
    }

    /// `ch(Δ(V))^e = ∏ (2 cosh(v/2))^e`, any integer `e`.
    pub fn ch_spinor_pow(&self, e: i64) -> Result<GradedPoly> {
        let f = Taylor::cosh_scaled(&rat(1, 2), self.terms()).scale(&int(2));
        let f = f.powi(e).expect("2cosh(x/2) has a unit constant term");
        self.per_root(&f, &self.v)
    }

    /// `cosh(x/2)^e` of one generator.
    pub fn cosh_half_pow(&self, generator: usize, e: i64) -> Result<GradedPoly> {
        let f = Taylor::cosh_scaled(&rat(1, 2), self.terms()).powi(e).expect("unit constant term");
        self.per_root(&f, &[generator])
    }

    /// `Σ x^2` over the given generators.
    pub fn p1(&self, roots: &[usize]) -> GradedPoly {
        roots.iter().fold(GradedPoly::zero(&self.ring), |acc, &g| acc.add(&self.gen(g).pow(2)))
    }

    pub fn p1_tm(&self) -> GradedPoly {
        self.p1(&self.tm)
    }

    pub fn p1_v(&self) -> GradedPoly {
        self.p1(&self.v)
    }

    /// The class multiplying the `E2` exponent: `p1(TM) - (a+2b) p1(V)`, or `p1(ξ) - p1(ξ')` for `TWO_LINE`.
    pub fn p1_combo(&self) -> GradedPoly {
        match self.spec.family {
            Family::Ab | Family::AbXi => self.p1_tm().sub(&self.p1_v().scale(&int(self.spec.a + 2 * self.spec.b))),
            Family::TwoLine => {
                let u = self.gen(self.xi.expect("TWO_LINE has ξ"));
                let u2 = self.gen(self.xi_prime.expect("TWO_LINE has ξ'"));
                u.pow(2).sub(&u2.pow(2))
            }
        }
    }

    /// Relation `p1(TM) - p1(V)` whose ideal is imposed for `TWO_LINE`.
    pub fn tm_v_relation(&self) -> GradedPoly {
        self.p1_tm().sub(&self.p1_v())
    }

    /// Pontryagin presentation with families `TM`, `V`; Euler classes print as `c`, `c'`.
    pub fn pontryagin(&self, p: &GradedPoly) -> Result<PontryaginPoly> {
        let fams = [RootFamily::new("TM", self.tm.clone()), RootFamily::new("V", self.v.clone())];
        let mut out = to_pontryagin(p, &fams)?;
        out.rename_symbol("u", "c");
        out.rename_symbol("u'", "c'");
        Ok(out)
    }

    /// Pontryagin form when symmetric, otherwise the root polynomial.
    pub fn describe(&self, p: &GradedPoly) -> String {
        match self.pontryagin(p) {
            Ok(pp) => pp.to_string(),
            Err(_) => p.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geo(k: u32, l: u32, a: i64, b: i64, f: Family) -> Geometry {
        Geometry::new(GeometrySpec::new(k, l, a, b, f).unwrap()).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(GeometrySpec::two_line(1, 1).is_ok());
        assert!(GeometrySpec::new(1, 1, 2, 0, Family::TwoLine).is_err());
        assert!(GeometrySpec::ab(0, 1, 0, 0).is_err());
        assert!(GeometrySpec::ab(1, 0, 0, 0).is_err());
        assert_eq!(Family::parse("ab_xi"), Some(Family::AbXi));
    }

    #[test]
    fn ring_layout() {
        let g = geo(2, 3, 1, 0, Family::TwoLine);
        assert_eq!(g.ring().len(), 4 + 3 + 2);
        assert_eq!(g.ring().cap(), 8);
        assert_eq!(g.ring().generators()[g.xi_prime().unwrap()].name, "u'");
        assert!(geo(1, 1, 0, 0, Family::Ab).xi().is_none());
    }

    #[test]
    fn ahat_in_pontryagin_classes() {
        let g = geo(2, 1, 0, 0, Family::Ab);
        let ahat = g.genus_form(Genus::AHat).unwrap();
        assert_eq!(g.pontryagin(&ahat.component(4)).unwrap().to_string(), "-1/24*p1(TM)");
        assert_eq!(g.pontryagin(&ahat.component(8)).unwrap().to_string(), "7/5760*p1(TM)^2 - 1/1440*p2(TM)");
        let lhat = g.genus_form(Genus::LHat).unwrap();
        assert_eq!(lhat.constant_term(), int(16));
    }

    #[test]
    fn spinor_powers() {
        let g = geo(2, 1, 0, 0, Family::Ab);
        assert!(g.ch_spinor_pow(0).unwrap().is_one());
        let v = g.gen(g.v_roots()[0]);
        let want = GradedPoly::constant(g.ring(), int(2))
            .add(&v.pow(2).scale(&rat(1, 4)))
            .add(&v.pow(4).scale(&rat(1, 192)));
        assert_eq!(g.ch_spinor_pow(1).unwrap(), want);
        assert!(g.ch_spinor_pow(2).unwrap().mul(&g.ch_spinor_pow(-2).unwrap()).is_one());
        let s = |e| g.ch_spinor_pow(e).unwrap();
        assert_eq!(s(3).mul(&s(-1)), s(2));
    }

    #[test]
    fn p1_combinations() {
        let g = geo(1, 1, -2, 1, Family::Ab);
        assert_eq!(g.p1_combo(), g.p1_tm());
        let g = geo(1, 1, 1, 0, Family::Ab);
        assert_eq!(g.p1_combo(), g.p1_tm().sub(&g.p1_v()));
        let g = geo(1, 1, 1, 0, Family::TwoLine);
        let u = g.gen(g.xi().unwrap());
        let u2 = g.gen(g.xi_prime().unwrap());
        assert_eq!(g.p1_combo(), u.pow(2).sub(&u2.pow(2)));
        assert_eq!(g.describe(&g.p1_combo()), "-c'^2 + c^2");
    }
}
