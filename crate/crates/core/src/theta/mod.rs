//! Jacobi theta functions with nilpotent arguments.
//!
//! Arguments are written in the hyperbolic variable `w = 2πi·v`, so
//! `sin(πv)` becomes `sinh(w/2)` (up to constants that cancel in every ratio)
//! and `e^{2πiv}` becomes `e^w`. All series here have rational coefficients.
//!
//! Naming follows the product formulas
//!
//! ```text
//! θ (v,τ) = 2q^{1/8} sin(πv) ∏ (1-q^j)(1-e^{2πiv}q^j)(1-e^{-2πiv}q^j)
//! θ1(v,τ) = 2q^{1/8} cos(πv) ∏ (1-q^j)(1+e^{2πiv}q^j)(1+e^{-2πiv}q^j)
//! θ2(v,τ) =                  ∏ (1-q^j)(1-e^{2πiv}q^{j-1/2})(1-e^{-2πiv}q^{j-1/2})
//! θ3(v,τ) =                  ∏ (1-q^j)(1+e^{2πiv}q^{j-1/2})(1+e^{-2πiv}q^{j-1/2})
//! ```
//!
//! so `θ2` carries the minus signs and `θ3` the plus signs.

pub mod forms;
pub mod numeric;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::{int, rat, Rational};
use crate::algebra::univariate::{apply_series, terms_needed, Taylor};
use crate::algebra::{GradedPoly, HalfQSeries};
use crate::error::{usage, Result};

pub use forms::{e2_series, jacobi_identity_check, modular_form, sigma1, theta_constant_fourth, ModularFormId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ThetaKind {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 4] = [ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3];
}

fn check_argument(w: &GradedPoly) -> Result<()> {
    if w.is_zero() || (w.as_generator().is_some() && w.ring().generators()[w.as_generator().unwrap()].degree == 2) {
        Ok(())
    } else {
        usage(format!("theta argument must be a single degree-2 generator, got {w}"))
    }
}

fn taylor_terms(w: &GradedPoly) -> usize {
    terms_needed(w.ring().cap(), 2)
}

/// `e^w + e^{-w}`.
pub(crate) fn two_cosh(w: &GradedPoly) -> Result<GradedPoly> {
    apply_series(&Taylor::cosh_scaled(&int(1), taylor_terms(w)).scale(&int(2)), w)
}

/// `1 + sign·lin·q^{h/2} + q^h`
pub(crate) fn trinomial(lin: &GradedPoly, sign: i64, h: usize, order: usize) -> HalfQSeries<GradedPoly> {
    let one = GradedPoly::one(lin.ring());
    let mut coeffs = vec![one.clone()];
    coeffs.resize(2 * order + 1, GradedPoly::zero(lin.ring()));
    if h < coeffs.len() {
        coeffs[h] = lin.scale(&int(sign));
    }
    if 2 * h < coeffs.len() {
        coeffs[2 * h] = coeffs[2 * h].add(&one);
    }
    HalfQSeries::from_coeffs(&one, coeffs, order)
}

/// `(1 + sign·q^{h/2})^2` over the rationals.
pub(crate) fn binomial_square(sign: i64, h: usize, order: usize) -> HalfQSeries<Rational> {
    let mut coeffs = vec![int(0); 2 * order + 1];
    coeffs[0] = int(1);
    if h < coeffs.len() {
        coeffs[h] += int(2 * sign);
    }
    if 2 * h < coeffs.len() {
        coeffs[2 * h] += int(1);
    }
    HalfQSeries::from_coeffs(&int(0), coeffs, order)
}

/// Half-step exponents `h` (coefficient of `q^{h/2}`) of the infinite product for `kind`, truncated to `order`.
pub(crate) fn product_steps(kind: ThetaKind, order: usize) -> Vec<usize> {
    match kind {
        ThetaKind::Theta | ThetaKind::Theta1 => (1..=order + 1).map(|j| 2 * j).filter(|&h| h <= 2 * order).collect(),
        ThetaKind::Theta2 | ThetaKind::Theta3 => (1..=order + 1).map(|j| 2 * j - 1).filter(|&h| h <= 2 * order).collect(),
    }
}

fn product_sign(kind: ThetaKind) -> i64 {
    match kind {
        ThetaKind::Theta | ThetaKind::Theta2 => -1,
        ThetaKind::Theta1 | ThetaKind::Theta3 => 1,
    }
}

/// Normalized theta quotient with a nilpotent argument.
///
/// For `Theta` this is `w·θ'(0,τ)/θ(w,τ)`, for the others `θ_i(w,τ)/θ_i(0,τ)`.
/// The `(1-q^j)` factors common to numerator and denominator cancel, leaving
///
/// ```text
/// Theta : (w/2)/sinh(w/2) ∏ (1-q^j)^2 / ((1-e^w q^j)(1-e^{-w} q^j))
/// Theta1: cosh(w/2)       ∏ (1+e^w q^j)(1+e^{-w} q^j) / (1+q^j)^2
/// Theta2:                 ∏ (1-e^w q^{j-1/2})(1-e^{-w} q^{j-1/2}) / (1-q^{j-1/2})^2
/// Theta3:                 ∏ (1+e^w q^{j-1/2})(1+e^{-w} q^{j-1/2}) / (1+q^{j-1/2})^2
/// ```
pub fn theta_ratio(kind: ThetaKind, w: &GradedPoly, order: usize) -> Result<HalfQSeries<GradedPoly>> {
    check_argument(w)?;
    let ring = w.ring().clone();
    let terms = taylor_terms(w);
    let lead = match kind {
        ThetaKind::Theta => apply_series(&Taylor::ahat_root(terms), w)?,
        ThetaKind::Theta1 => apply_series(&Taylor::cosh_scaled(&rat(1, 2), terms), w)?,
        ThetaKind::Theta2 | ThetaKind::Theta3 => GradedPoly::one(&ring),
    };
    let c = two_cosh(w)?;
    let sign = product_sign(kind);
    let mut s = HalfQSeries::constant(lead, order);
    let mut constant_part = HalfQSeries::one(&int(0), order);
    for h in product_steps(kind, order) {
        let tri = trinomial(&c, sign, h, order);
        let sq = binomial_square(sign, h, order);
        if kind == ThetaKind::Theta {
            s = s.div(&tri)?;
            constant_part = constant_part.mul(&sq)?;
        } else {
            s = s.mul(&tri)?;
            constant_part = constant_part.div(&sq)?;
        }
    }
    s.mul(&constant_part.embed(&ring))
}

/// `d/dw log(θ_i(w,τ))` for `Theta1..Theta3`, odd in `w`.
///
/// Term by term: `d/dw log(1 ± e^{±w} t) = ∓ Σ_m (∓1)^{m-1} e^{±mw} t^m`, so the product
/// contributes `Σ_m s_m · 2 sinh(m w) t^m` with `s_m = (-1)^{m+1}` for plus signs and
/// `s_m = -1` for minus signs. `Theta1` adds `(1/2) tanh(w/2)` from `cosh(w/2)`.
pub fn theta_logderiv_ratio(kind: ThetaKind, w: &GradedPoly, order: usize) -> Result<HalfQSeries<GradedPoly>> {
    if kind == ThetaKind::Theta {
        return usage("logarithmic derivative is provided for Theta1, Theta2 and Theta3 only");
    }
    check_argument(w)?;
    let ring = w.ring().clone();
    let terms = taylor_terms(w);
    let zero = GradedPoly::zero(&ring);
    let mut coeffs = vec![zero.clone(); 2 * order + 1];
    if kind == ThetaKind::Theta1 {
        coeffs[0] = apply_series(&Taylor::half_tanh_half(terms), w)?;
    }
    let plus = product_sign(kind) > 0;
    for h in product_steps(kind, order) {
        let mut m = 1;
        while m * h <= 2 * order {
            let s = if plus && m % 2 == 0 { -1 } else if plus { 1 } else { -1 };
            let two_sinh = apply_series(&Taylor::sinh_scaled(&int(m as i64), terms).scale(&int(2 * s)), w)?;
            coeffs[m * h] = coeffs[m * h].add(&two_sinh);
            m += 1;
        }
    }
    Ok(HalfQSeries::from_coeffs(&zero, coeffs, order))
}

/// Which transgression integrand to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransgressionKernel {
    /// `θ2'/θ2 + θ3'/θ3 - 2 θ1'/θ1`
    First,
    /// `θ3'/θ3 + θ1'/θ1 - 2 θ2'/θ2`
    Second,
}

/// Combination of logarithmic derivatives entering the Chern–Simons integrands.
pub fn transgression_kernel(which: TransgressionKernel, w: &GradedPoly, order: usize) -> Result<HalfQSeries<GradedPoly>> {
    let (a, b, c) = match which {
        TransgressionKernel::First => (ThetaKind::Theta2, ThetaKind::Theta3, ThetaKind::Theta1),
        TransgressionKernel::Second => (ThetaKind::Theta3, ThetaKind::Theta1, ThetaKind::Theta2),
    };
    let sa = theta_logderiv_ratio(a, w, order)?;
    let sb = theta_logderiv_ratio(b, w, order)?;
    let sc = theta_logderiv_ratio(c, w, order)?;
    sa.add(&sb)?.sub(&sc.scale(&int(2)))
}
