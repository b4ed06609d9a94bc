//! Chern characters of the infinite tensor products `Θ1, Θ2` through Adams operations.
//!
//! For a virtual bundle `E`, `ch Λ_t(E) = exp(Σ_m (-1)^{m-1} t^m ch ψ^m(E) / m)` and
//! `ch S_t(E) = exp(Σ_m t^m ch ψ^m(E) / m)`, with `ch ψ^m` linear in `E`. A whole
//! `Θ` is therefore the exponential of one q-series whose coefficients are
//! integer combinations of `ch ψ^m` of the reduced bundles.

use serde::Serialize;

use super::{Family, Geometry, GeometrySpec};
use crate::algebra::rational::{int, rat};
use crate::algebra::univariate::{apply_series, Taylor};
use crate::algebra::{GradedPoly, HalfQSeries};
use crate::error::Result;

/// Reduced complexified bundles `Ṽ_C, ξ̃_C, ξ̃'_C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Summand {
    V,
    Xi,
    XiPrime,
}

/// Integer combination of reduced bundles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VirtualSum(pub Vec<(i64, Summand)>);

impl VirtualSum {
    pub fn single(n: i64, s: Summand) -> Self {
        VirtualSum(vec![(n, s)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&(n, _)| n == 0)
    }
}

/// Which `Λ_t` a slot of the recipe uses: `t = q^m`, `t = q^{r-1/2}` or `t = -q^{s-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SlotKind {
    Integer,
    HalfPlus,
    HalfMinus,
}

impl SlotKind {
    /// Half-exponents `h` (so `t = ±q^{h/2}`) up to `2N`.
    fn steps(self, order: usize) -> impl Iterator<Item = usize> {
        let (start, stride) = match self {
            SlotKind::Integer => (2, 2),
            SlotKind::HalfPlus | SlotKind::HalfMinus => (1, 2),
        };
        (start..=2 * order).step_by(stride)
    }

    fn sign(self) -> i64 {
        match self {
            SlotKind::HalfMinus => -1,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThetaBundle {
    First,
    Second,
}

/// `⊗ S_{q^n}(T̃_C M)` followed by the three `Λ` slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaRecipe {
    pub slots: Vec<(SlotKind, VirtualSum)>,
}

impl ThetaRecipe {
    pub fn for_spec(spec: &GeometrySpec, which: ThetaBundle) -> ThetaRecipe {
        use Summand::*;
        let (a, b) = (spec.a, spec.b);
        let (integer, half) = match spec.family {
            Family::Ab => (VirtualSum::single(a, V), VirtualSum::single(b, V)),
            Family::AbXi => (VirtualSum(vec![(a, V), (-2, Xi)]), VirtualSum(vec![(b, V), (1, Xi)])),
            Family::TwoLine => (VirtualSum(vec![(1, V), (-2, Xi)]), VirtualSum::single(1, XiPrime)),
        };
        let slots = match which {
            ThetaBundle::First => vec![
                (SlotKind::Integer, integer),
                (SlotKind::HalfPlus, half.clone()),
                (SlotKind::HalfMinus, half),
            ],
            ThetaBundle::Second => vec![
                (SlotKind::Integer, half.clone()),
                (SlotKind::HalfPlus, half),
                (SlotKind::HalfMinus, integer),
            ],
        };
        ThetaRecipe { slots }
    }
}

impl Geometry {
    /// `Σ_x (e^{mx} + e^{-mx} - 2)` over the given roots.
    fn adams_roots(&self, roots: &[usize], m: usize) -> Result<GradedPoly> {
        let f = Taylor::cosh_scaled(&int(m as i64), self.terms()).scale(&int(2));
        let mut out = GradedPoly::zero(self.ring());
        for &g in roots {
            out = out.add(&apply_series(&f, &self.gen(g))?.sub(&self.constant(int(2))));
        }
        Ok(out)
    }

    /// `ch ψ^m` of a reduced bundle.
    pub fn adams_ch(&self, s: Summand, m: usize) -> Result<GradedPoly> {
        match s {
            Summand::V => self.adams_roots(self.v_roots(), m),
            Summand::Xi => self.adams_roots(&[self.require_xi()?], m),
            Summand::XiPrime => self.adams_roots(&[self.require_xi_prime()?], m),
        }
    }

    /// `ch ψ^m(T̃_C M)`.
    pub fn adams_tangent(&self, m: usize) -> Result<GradedPoly> {
        self.adams_roots(self.tm_roots(), m)
    }

    fn adams_sum(&self, e: &VirtualSum, m: usize) -> Result<GradedPoly> {
        let mut out = GradedPoly::zero(self.ring());
        for &(n, s) in &e.0 {
            if n != 0 {
                out = out.add(&self.adams_ch(s, m)?.scale(&int(n)));
            }
        }
        Ok(out)
    }

    /// `log ch Θ` as a q-series with zero constant term.
    pub fn log_ch_theta_bundle(&self, which: ThetaBundle, order: usize) -> Result<HalfQSeries<GradedPoly>> {
        let recipe = ThetaRecipe::for_spec(self.spec(), which);
        let zero = GradedPoly::zero(self.ring());
        let mut coeffs = vec![zero.clone(); 2 * order + 1];
        let max = 2 * order;
        // S_{q^n}(T̃): t = q^n, Σ t^m ψ^m / m
        let tangent: Vec<GradedPoly> = (1..=order).map(|m| self.adams_tangent(m)).collect::<Result<_>>()?;
        for h in SlotKind::Integer.steps(order) {
            for m in 1..=max / h {
                coeffs[m * h] = coeffs[m * h].add(&tangent[m - 1].scale(&rat(1, m as i64)));
            }
        }
        for (kind, content) in &recipe.slots {
            if content.is_zero() {
                continue;
            }
            let adams: Vec<GradedPoly> = (1..=max).map(|m| self.adams_sum(content, m)).collect::<Result<_>>()?;
            for h in kind.steps(order) {
                for m in 1..=max / h {
                    // (-1)^{m-1} σ^m / m
                    let sign = if m % 2 == 1 { kind.sign() } else { -1 };
                    coeffs[m * h] = coeffs[m * h].add(&adams[m - 1].scale(&rat(sign, m as i64)));
                }
            }
        }
        Ok(HalfQSeries::from_coeffs(&zero, coeffs, order))
    }

    /// `ch Θ_i` to order `N`.
    pub fn ch_theta_bundle(&self, which: ThetaBundle, order: usize) -> Result<HalfQSeries<GradedPoly>> {
        self.log_ch_theta_bundle(which, order)?.exp()
    }
}
