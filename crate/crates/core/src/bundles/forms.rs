//! The `Q`/`P` forms by two independent routes.
//!
//! The bundle route multiplies genus forms, spinor characters and `ch Θ_i`; the
//! theta route multiplies normalized theta quotients. Both carry the
//! `exp(c·E2·z)` factor, with `z` = [`Geometry::p1_combo`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::virtual_bundle::ThetaBundle;
use super::{Family, Genus, Geometry};
use crate::algebra::rational::{factorial, int, pow2, rat, Rational};
use crate::algebra::univariate::{apply_series, terms_needed, Taylor};
use crate::algebra::{GradedPoly, HalfQSeries};
use crate::error::{usage, Result};
use crate::theta::{e2_series, theta_ratio, ThetaKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QFormId {
    #[serde(rename = "Q1")]
    Q1,
    #[serde(rename = "Q2")]
    Q2,
    #[serde(rename = "Q2BAR")]
    Q2Bar,
    #[serde(rename = "Q1_XI")]
    Q1Xi,
    #[serde(rename = "Q2_XI")]
    Q2Xi,
    #[serde(rename = "Q3_XI")]
    Q3Xi,
    #[serde(rename = "P1")]
    P1,
    #[serde(rename = "P2")]
    P2,
    #[serde(rename = "P3")]
    P3,
}

impl QFormId {
    pub const ALL: [QFormId; 9] = [
        QFormId::Q1,
        QFormId::Q2,
        QFormId::Q2Bar,
        QFormId::Q1Xi,
        QFormId::Q2Xi,
        QFormId::Q3Xi,
        QFormId::P1,
        QFormId::P2,
        QFormId::P3,
    ];

    pub fn family(self) -> Family {
        match self {
            QFormId::Q1 | QFormId::Q2 | QFormId::Q2Bar => Family::Ab,
            QFormId::Q1Xi | QFormId::Q2Xi | QFormId::Q3Xi => Family::AbXi,
            QFormId::P1 | QFormId::P2 | QFormId::P3 => Family::TwoLine,
        }
    }

    /// The form with the `Θ1` bundle, modular over `Γ0(2)`.
    pub fn first_for(family: Family) -> QFormId {
        match family {
            Family::Ab => QFormId::Q1,
            Family::AbXi => QFormId::Q1Xi,
            Family::TwoLine => QFormId::P1,
        }
    }

    /// The uncorrected `Θ2` form and its `E2` correction.
    pub fn second_for(family: Family) -> (QFormId, QFormId) {
        match family {
            Family::Ab => (QFormId::Q2, QFormId::Q2Bar),
            Family::AbXi => (QFormId::Q2Xi, QFormId::Q3Xi),
            Family::TwoLine => (QFormId::P2, QFormId::P3),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Route {
    Bundle,
    Theta,
}

impl Geometry {
    /// `1/24`, or `1/12` for `TWO_LINE`.
    pub fn anomaly_coefficient(&self) -> Rational {
        match self.spec().family {
            Family::TwoLine => rat(1, 12),
            _ => rat(1, 24),
        }
    }

    /// Power of two relating the two forms: `(a-b)l`, or `l` for `TWO_LINE`.
    pub fn transfer_exponent(&self) -> i64 {
        let s = self.spec();
        match s.family {
            Family::TwoLine => s.l as i64,
            _ => (s.a - s.b) * s.l as i64,
        }
    }

    /// Highest `m` with `z^m` possibly nonzero.
    fn max_z_power(&self) -> usize {
        (self.ring().cap() / 4) as usize
    }

    /// `exp(c·E2·z) = Σ_m (cz)^m E2^m / m!`.
    pub fn e2_exp(&self, order: usize) -> Result<HalfQSeries<GradedPoly>> {
        self.e2_weighted(order, 0)
    }

    /// `(exp(c·E2·z) - 1)/z = Σ_{m≥1} c^m E2^m z^{m-1} / m!`.
    pub fn e2_expm1_over_z(&self, order: usize) -> Result<HalfQSeries<GradedPoly>> {
        self.e2_weighted(order, 1)
    }

    fn e2_weighted(&self, order: usize, start: usize) -> Result<HalfQSeries<GradedPoly>> {
        let ring = self.ring();
        let c = self.anomaly_coefficient();
        let z = self.p1_combo();
        let e2 = e2_series(order);
        let mut e2_pow = HalfQSeries::one(&int(0), order);
        let mut out = HalfQSeries::zero(&self.one(), order);
        for m in 0..=self.max_z_power() + start {
            if m >= start {
                let weight = z.pow((m - start) as u32).scale(&(num_traits::pow(c.clone(), m) / factorial(m as u32)));
                if !weight.is_zero() {
                    out = out.add(&e2_pow.embed(ring).mul_coeff(&weight))?;
                }
            }
            e2_pow = e2_pow.mul(&e2)?;
        }
        Ok(out)
    }

    /// `exp(c·z)` (the `q^0` image of [`Geometry::e2_exp`]).
    pub fn anomaly_exp(&self) -> Result<GradedPoly> {
        let terms = terms_needed(self.ring().cap(), 4);
        apply_series(&Taylor::exp_scaled(&self.anomaly_coefficient(), terms), &self.p1_combo())
    }

    /// `(exp(c·z) - 1)/z`.
    pub fn anomaly_expm1_over_z(&self) -> Result<GradedPoly> {
        let terms = terms_needed(self.ring().cap(), 4) + 1;
        apply_series(&Taylor::expm1_over_x(&self.anomaly_coefficient(), terms), &self.p1_combo())
    }

    /// Characteristic form multiplying `ch Θ1`, without the `E2` factor:
    /// `Â ch(Δ(V)^a)`, divided by `cosh^2(u/2)` when `ξ` is present.
    pub fn first_prefactor(&self) -> Result<GradedPoly> {
        let ahat = self.genus_form(Genus::AHat)?;
        let s = self.spec();
        let base = ahat.mul(&self.ch_spinor_pow(s.a)?);
        match s.family {
            Family::Ab => Ok(base),
            Family::AbXi | Family::TwoLine => Ok(base.mul(&self.cosh_half_pow(self.require_xi()?, -2)?)),
        }
    }

    /// Characteristic form multiplying `ch Θ2`: `Â ch(Δ(V)^b)`, times `cosh(u/2)`
    /// for `AB_XI`; `Â cosh(u'/2)` for `TWO_LINE`.
    pub fn second_prefactor(&self) -> Result<GradedPoly> {
        let ahat = self.genus_form(Genus::AHat)?;
        let s = self.spec();
        match s.family {
            Family::Ab => Ok(ahat.mul(&self.ch_spinor_pow(s.b)?)),
            Family::AbXi => Ok(ahat.mul(&self.ch_spinor_pow(s.b)?).mul(&self.cosh_half_pow(self.require_xi()?, 1)?)),
            Family::TwoLine => Ok(ahat.mul(&self.cosh_half_pow(self.require_xi_prime()?, 1)?)),
        }
    }

    /// `Q/P` form as a full-degree series; top-degree extraction is left to the caller.
    pub fn q_form(&self, id: QFormId, route: Route, order: usize) -> Result<HalfQSeries<GradedPoly>> {
        if id.family() != self.spec().family {
            return usage(format!("{id:?} belongs to family {}, spec is {}", id.family(), self.spec().family));
        }
        match route {
            Route::Bundle => self.q_form_bundle(id, order),
            Route::Theta => match id {
                QFormId::Q1 | QFormId::Q1Xi | QFormId::P1 => self.theta_route(ThetaBundle::First, order),
                _ => usage(format!(
                    "{id:?} has no theta expression on its own; use corrected_form for the E2-corrected combination"
                )),
            },
        }
    }

    fn q_form_bundle(&self, id: QFormId, order: usize) -> Result<HalfQSeries<GradedPoly>> {
        let first = QFormId::first_for(self.spec().family);
        let (second, correction) = QFormId::second_for(self.spec().family);
        if id == first {
            let base = self.ch_theta_bundle(ThetaBundle::First, order)?.mul_coeff(&self.first_prefactor()?);
            base.mul(&self.e2_exp(order)?)
        } else {
            let base = self.ch_theta_bundle(ThetaBundle::Second, order)?.mul_coeff(&self.second_prefactor()?);
            if id == second {
                Ok(base)
            } else {
                debug_assert_eq!(id, correction);
                base.mul(&self.e2_expm1_over_z(order)?)
            }
        }
    }

    /// `Q2 + z·Q̄2`, `Q̃2 + z·Q̃3` or `P2 + z·P3` for the spec's family.
    pub fn corrected_form(&self, route: Route, order: usize) -> Result<HalfQSeries<GradedPoly>> {
        match route {
            Route::Bundle => {
                let (second, correction) = QFormId::second_for(self.spec().family);
                let q2 = self.q_form_bundle(second, order)?;
                let bar = self.q_form_bundle(correction, order)?;
                q2.add(&bar.mul_coeff(&self.p1_combo()))
            }
            Route::Theta => self.theta_route(ThetaBundle::Second, order),
        }
    }

    /// Theta quotients `(kind, generator, exponent)` for the chosen form.
    pub fn theta_factors(&self, which: ThetaBundle) -> Result<Vec<(ThetaKind, usize, i64)>> {
        use ThetaKind::*;
        let s = self.spec();
        let mut f: Vec<(ThetaKind, usize, i64)> = self.tm_roots().iter().map(|&w| (Theta, w, 1)).collect();
        let (a, b) = (s.a, s.b);
        let (va, vb1, vb2) = match which {
            ThetaBundle::First => (Theta1, Theta2, Theta3),
            ThetaBundle::Second => (Theta2, Theta1, Theta3),
        };
        for &v in self.v_roots() {
            f.extend([(va, v, a), (vb1, v, b), (vb2, v, b)]);
        }
        match s.family {
            Family::Ab => {}
            Family::AbXi => {
                let u = self.require_xi()?;
                match which {
                    ThetaBundle::First => f.extend([(Theta1, u, -2), (Theta2, u, 1), (Theta3, u, 1)]),
                    ThetaBundle::Second => f.extend([(Theta2, u, -2), (Theta1, u, 1), (Theta3, u, 1)]),
                }
            }
            Family::TwoLine => {
                let u = self.require_xi()?;
                let u2 = self.require_xi_prime()?;
                match which {
                    ThetaBundle::First => f.extend([(Theta1, u, -2), (Theta3, u2, 1), (Theta2, u2, 1)]),
                    ThetaBundle::Second => f.extend([(Theta2, u, -2), (Theta3, u2, 1), (Theta1, u2, 1)]),
                }
            }
        }
        f.retain(|&(_, _, e)| e != 0);
        Ok(f)
    }

    /// Power of two in front of the theta expression.
    pub fn theta_normalization(&self, which: ThetaBundle) -> Rational {
        let s = self.spec();
        let l = s.l as i64;
        match (s.family, which) {
            (Family::TwoLine, ThetaBundle::First) => pow2(l),
            (Family::TwoLine, ThetaBundle::Second) => int(1),
            (_, ThetaBundle::First) => pow2(s.a * l),
            (_, ThetaBundle::Second) => pow2(s.b * l),
        }
    }

    fn theta_route(&self, which: ThetaBundle, order: usize) -> Result<HalfQSeries<GradedPoly>> {
        let mut cache: HashMap<(ThetaKind, usize), HalfQSeries<GradedPoly>> = HashMap::new();
        let mut acc = self.e2_exp(order)?.scale(&self.theta_normalization(which));
        for (kind, g, e) in self.theta_factors(which)? {
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry((kind, g)) {
                e.insert(theta_ratio(kind, &self.gen(g), order)?);
            }
            let ratio = &cache[&(kind, g)];
            acc = if e > 0 {
                (0..e).try_fold(acc, |s, _| s.mul(ratio))?
            } else {
                (0..-e).try_fold(acc, |s, _| s.div(ratio))?
            };
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::super::GeometrySpec;
    use super::*;

    fn geo(k: u32, l: u32, a: i64, b: i64, f: Family) -> Geometry {
        Geometry::new(GeometrySpec::new(k, l, a, b, f).unwrap()).unwrap()
    }

    #[test]
    fn double_route_q1() {
        let g = geo(1, 1, 1, 0, Family::Ab);
        assert_eq!(g.q_form(QFormId::Q1, Route::Bundle, 4).unwrap(), g.q_form(QFormId::Q1, Route::Theta, 4).unwrap());
    }

    #[test]
    fn double_route_two_line_corrected() {
        let g = geo(1, 1, 1, 0, Family::TwoLine);
        assert_eq!(g.corrected_form(Route::Bundle, 3).unwrap(), g.corrected_form(Route::Theta, 3).unwrap());
    }

    #[test]
    fn q1_constant_term() {
        let g = geo(1, 2, 2, 1, Family::Ab);
        let q1 = g.q_form(QFormId::Q1, Route::Bundle, 2).unwrap();
        let want = g.anomaly_exp().unwrap().mul(&g.first_prefactor().unwrap());
        assert_eq!(q1.coeff(0), &want);
    }

    #[test]
    fn e2_factors_at_q0() {
        let g = geo(2, 1, 1, 1, Family::AbXi);
        assert_eq!(g.e2_exp(2).unwrap().coeff(0), &g.anomaly_exp().unwrap());
        assert_eq!(g.e2_expm1_over_z(2).unwrap().coeff(0), &g.anomaly_expm1_over_z().unwrap());
        // e^{cE2 z} = 1 + z·(e^{cE2 z}-1)/z
        let lhs = g.e2_exp(2).unwrap();
        let rhs = HalfQSeries::one(&g.one(), 2).add(&g.e2_expm1_over_z(2).unwrap().mul_coeff(&g.p1_combo())).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_route_rejects_lone_second_forms() {
        let g = geo(1, 1, 1, 0, Family::Ab);
        assert!(g.q_form(QFormId::Q2, Route::Theta, 2).is_err());
        assert!(g.q_form(QFormId::P1, Route::Bundle, 2).is_err());
    }
}
