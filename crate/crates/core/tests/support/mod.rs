//! Randomized algebraic properties shared by the property tests and the acceptance run.

#![allow(dead_code)]

use std::sync::Arc;

use anomaly_forms::algebra::rational::{int, rat};
use anomaly_forms::algebra::univariate::{apply_series, terms_needed};
use anomaly_forms::algebra::{to_pontryagin, GradedPoly, HalfQSeries, Monomial, Rational, RingSpec, RootFamily, Taylor};
use anomaly_forms::bundles::{Geometry, GeometrySpec};
use anomaly_forms::decomp::{basis_series, decompose, Group};
use anomaly_forms::verifier::cancellation_sides;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Instances per property.
pub const CASES: u32 = 256;

pub struct Property {
    pub name: &'static str,
    pub run: fn(&mut TestRunner) -> Result<(), String>,
}

/// A runner with a fixed seed, so failures reproduce.
pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(config(cases), TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// No regression files: the cases are cheap to regenerate from the fixed seed.
pub fn config(cases: u32) -> Config {
    Config { cases, failure_persistence: None, ..Config::default() }
}

fn ring() -> Arc<RingSpec> {
    RingSpec::degree_two(&["x", "y", "z"], 8).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Exponent vectors of total degree ≤ 8 in three degree-2 generators.
fn monomial() -> impl Strategy<Value = Vec<u8>> {
    (0u8..=4, 0u8..=4, 0u8..=4).prop_filter_map("degree cap", |(a, b, c)| (a + b + c <= 4).then(|| vec![a, b, c]))
}

fn poly_in(ring: Arc<RingSpec>) -> impl Strategy<Value = GradedPoly> {
    prop::collection::vec((monomial(), rational()), 0..6).prop_map(move |terms| {
        GradedPoly::from_terms(&ring, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)))
    })
}

fn poly() -> impl Strategy<Value = GradedPoly> {
    poly_in(ring())
}

fn nilpotent() -> impl Strategy<Value = GradedPoly> {
    poly().prop_map(|p| p.sub(&GradedPoly::constant(p.ring(), p.constant_term())))
}

fn fail(name: &str, e: impl std::fmt::Display) -> String {
    format!("{name}: {e}")
}

fn ring_axioms(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(poly(), poly(), poly()), |(a, b, c)| {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&GradedPoly::one(a.ring())), a);
        Ok(())
    })
    .map_err(|e| fail("ring axioms", e))
}

fn truncation_coherence(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(poly(), poly(), prop::sample::select(vec![0u32, 2, 4, 6, 8])), |(a, b, d)| {
        let direct = a.mul(&b).truncate_degree(d);
        let early = a.truncate_degree(d).mul(&b.truncate_degree(d)).truncate_degree(d);
        prop_assert_eq!(direct, early);
        let mut sum = GradedPoly::zero(a.ring());
        for deg in (0..=8).step_by(2) {
            sum = sum.add(&a.component(deg));
        }
        prop_assert_eq!(sum, a);
        Ok(())
    })
    .map_err(|e| fail("truncation coherence", e))
}

/// Random polynomial in the power sums `Σ x^2, Σ x^4` of three roots.
fn symmetric() -> impl Strategy<Value = GradedPoly> {
    prop::collection::vec(((0u32..=2, 0u32..=1), rational()), 1..5).prop_map(|terms| {
        let ring = ring();
        let g = |i| GradedPoly::generator(&ring, i);
        let s1 = g(0).pow(2).add(&g(1).pow(2)).add(&g(2).pow(2));
        let s2 = g(0).pow(4).add(&g(1).pow(4)).add(&g(2).pow(4));
        terms.into_iter().fold(GradedPoly::zero(&ring), |acc, ((i, j), c)| acc.add(&s1.pow(i).mul(&s2.pow(j)).scale(&c)))
    })
}

fn family() -> Vec<RootFamily> {
    vec![RootFamily::new("E", vec![0, 1, 2])]
}

fn symmetry_invariance(r: &mut TestRunner) -> Result<(), String> {
    let perms = vec![[0usize, 1, 2], [1, 0, 2], [2, 1, 0], [1, 2, 0]];
    r.run(&(symmetric(), prop::sample::select(perms), prop::sample::select(vec![1i64, -1])), |(p, perm, sign)| {
        let ring = p.ring().clone();
        let images: Vec<GradedPoly> = perm.iter().map(|&i| GradedPoly::generator(&ring, i)).collect();
        let mut flipped = images.clone();
        flipped[0] = flipped[0].scale(&int(sign));
        let q = p.substitute(&flipped).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(to_pontryagin(&q, &family()).unwrap(), to_pontryagin(&p, &family()).unwrap());
        Ok(())
    })
    .map_err(|e| fail("symmetry invariance", e))
}

fn exp_inversion(r: &mut TestRunner) -> Result<(), String> {
    let series = prop::collection::vec(rational(), 1..7).prop_map(|mut c| {
        c.insert(0, int(0));
        let order = (c.len() - 1) / 2 + 1;
        HalfQSeries::from_coeffs(&int(0), c, order)
    });
    r.run(&(nilpotent(), series), |(x, s)| {
        let f = Taylor::exp_scaled(&int(1), terms_needed(8, 2));
        let prod = apply_series(&f, &x).unwrap().mul(&apply_series(&f, &x.neg()).unwrap());
        prop_assert!(prod.is_one());
        let e = s.exp().unwrap().mul(&s.neg().exp().unwrap()).unwrap();
        prop_assert_eq!(e, HalfQSeries::one(&int(0), s.order()));
        Ok(())
    })
    .map_err(|e| fail("exp/-exp inversion", e))
}

fn pontryagin_round_trip(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(symmetric(), poly()), |(p, q)| {
        prop_assert_eq!(to_pontryagin(&p, &family()).unwrap().expand(), p);
        // any polynomial either converts faithfully or is reported as not symmetric
        match to_pontryagin(&q, &family()) {
            Ok(pp) => prop_assert_eq!(pp.expand(), q),
            Err(e) => prop_assert!(matches!(e, anomaly_forms::Error::Symmetry(_)), "{e}"),
        }
        Ok(())
    })
    .map_err(|e| fail("Pontryagin round trip", e))
}

fn decompose_round_trip(r: &mut TestRunner) -> Result<(), String> {
    let input = (1u32..=4).prop_flat_map(|k| (Just(k), prop::collection::vec(poly(), (k / 2 + 1) as usize)));
    r.run(&input, |(k, coeffs)| {
        let order = (k / 2) as usize + 2;
        let mut p = HalfQSeries::zero(&GradedPoly::zero(&ring()), order);
        for (i, c) in coeffs.iter().enumerate() {
            let b = basis_series(k, i, Group::GammaUpper0, order).unwrap();
            p = p.add(&b.map(|x| c.scale(x))).unwrap();
        }
        let d = decompose(&p, k).unwrap();
        prop_assert_eq!(d.h, coeffs);
        prop_assert!(d.residual.is_zero());
        Ok(())
    })
    .map_err(|e| fail("decompose round trip", e))
}

fn homogeneity(r: &mut TestRunner) -> Result<(), String> {
    let specs: Vec<GeometrySpec> = [(-1, 0), (0, 2), (1, 0), (2, 1)]
        .into_iter()
        .map(|(a, b)| GeometrySpec::ab(1, 2, a, b).unwrap())
        .collect();
    let sides: Vec<(Geometry, GradedPoly, GradedPoly)> = specs
        .iter()
        .map(|&s| {
            let g = Geometry::new(s).unwrap();
            let c = cancellation_sides(&g, 3, false).unwrap();
            let rhs = c.rhs();
            (g, c.lhs, rhs)
        })
        .collect();
    r.run(&(0..sides.len(), rational().prop_filter("nonzero", |t| *t != int(0))), |(i, t)| {
        let (g, lhs, rhs) = &sides[i];
        let images: Vec<GradedPoly> = (0..g.ring().len())
            .map(|j| {
                let x = g.gen(j);
                if g.tm_roots().contains(&j) {
                    x.scale(&t)
                } else {
                    x
                }
            })
            .collect();
        let l = lhs.substitute(&images).unwrap();
        prop_assert_eq!(&l, &rhs.substitute(&images).unwrap());
        // with V fixed, the p1(TM)-only part scales by t^2
        let fixed_v: Vec<GradedPoly> = (0..g.ring().len()).map(|j| if g.tm_roots().contains(&j) { g.gen(j) } else { GradedPoly::zero(g.ring()) }).collect();
        let tm_part = lhs.substitute(&fixed_v).unwrap();
        prop_assert_eq!(tm_part.substitute(&images).unwrap(), tm_part.scale(&(t.clone() * t)));
        Ok(())
    })
    .map_err(|e| fail("homogeneity", e))
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { name: "ring axioms", run: ring_axioms },
        Property { name: "truncation coherence", run: truncation_coherence },
        Property { name: "symmetry invariance", run: symmetry_invariance },
        Property { name: "exp/-exp inversion", run: exp_inversion },
        Property { name: "Pontryagin round trip", run: pontryagin_round_trip },
        Property { name: "decompose round trip", run: decompose_round_trip },
        Property { name: "homogeneity of the cancellation identity", run: homogeneity },
    ]
}
