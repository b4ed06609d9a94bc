//! Theta constants, the forms `δ1, ε1, δ2, ε2`, and `E2` as exact q-series.

use serde::{Deserialize, Serialize};

use super::{binomial_square, ThetaKind};
use crate::algebra::rational::{int, rat, Rational};
use crate::algebra::HalfQSeries;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ModularFormId {
    Delta1,
    Eps1,
    Delta2,
    Eps2,
    E2,
}

impl ModularFormId {
    pub const ALL: [ModularFormId; 5] =
        [ModularFormId::Delta1, ModularFormId::Eps1, ModularFormId::Delta2, ModularFormId::Eps2, ModularFormId::E2];
}

fn one(order: usize) -> HalfQSeries<Rational> {
    HalfQSeries::one(&int(0), order)
}

/// `1 + sign·q^{h/2}`
fn binomial(sign: i64, h: usize, order: usize) -> HalfQSeries<Rational> {
    let mut coeffs = vec![int(0); 2 * order + 1];
    coeffs[0] = int(1);
    if h <= 2 * order {
        coeffs[h] += int(sign);
    }
    HalfQSeries::from_coeffs(&int(0), coeffs, order)
}

/// `∏_{j≥1} (1-q^j)`.
pub fn euler_product(order: usize) -> HalfQSeries<Rational> {
    (1..=order).fold(one(order), |acc, j| acc.mul(&binomial(-1, 2 * j, order)).expect("same order"))
}

/// Fourth power of a theta constant `θ_i(0,τ)`.
///
/// `θ1(0,τ)^4 = 16 q^{1/2} ∏((1-q^j)(1+q^j)^2)^4` lands on the half grid
/// once the `q^{1/8}` is raised to the fourth power. `θ(0,τ) = 0`.
pub fn theta_constant_fourth(kind: ThetaKind, order: usize) -> HalfQSeries<Rational> {
    let euler = euler_product(order);
    match kind {
        ThetaKind::Theta => HalfQSeries::zero(&int(0), order),
        ThetaKind::Theta1 => {
            let base = (1..=order).fold(euler, |acc, j| acc.mul(&binomial_square(1, 2 * j, order)).unwrap());
            base.powi(4).unwrap().shift(1).scale(&int(16))
        }
        ThetaKind::Theta2 | ThetaKind::Theta3 => {
            let sign = if kind == ThetaKind::Theta2 { -1 } else { 1 };
            let base = (1..=order + 1)
                .map(|j| 2 * j - 1)
                .filter(|&h| h <= 2 * order)
                .fold(euler, |acc, h| acc.mul(&binomial_square(sign, h, order)).unwrap());
            base.powi(4).unwrap()
        }
    }
}

/// `σ1(n)`, sum of divisors.
pub fn sigma1(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).sum()
}

/// `E2 = 1 - 24 Σ σ1(n) q^n`.
pub fn e2_series(order: usize) -> HalfQSeries<Rational> {
    let mut coeffs = vec![int(0); 2 * order + 1];
    coeffs[0] = int(1);
    for n in 1..=order {
        coeffs[2 * n] = int(-24 * sigma1(n as u64) as i64);
    }
    HalfQSeries::from_coeffs(&int(0), coeffs, order)
}

/// q-expansion of one of the basic forms, built from theta constants.
pub fn modular_form(id: ModularFormId, order: usize) -> HalfQSeries<Rational> {
    let t = |k| theta_constant_fourth(k, order);
    match id {
        ModularFormId::Delta1 => t(ThetaKind::Theta2).add(&t(ThetaKind::Theta3)).unwrap().scale(&rat(1, 8)),
        ModularFormId::Eps1 => t(ThetaKind::Theta2).mul(&t(ThetaKind::Theta3)).unwrap().scale(&rat(1, 16)),
        ModularFormId::Delta2 => t(ThetaKind::Theta1).add(&t(ThetaKind::Theta3)).unwrap().scale(&rat(-1, 8)),
        ModularFormId::Eps2 => t(ThetaKind::Theta1).mul(&t(ThetaKind::Theta3)).unwrap().scale(&rat(1, 16)),
        ModularFormId::E2 => e2_series(order),
    }
}

/// Exponents tweak for negative-control tests of the Jacobi identity.
#[derive(Debug, Clone, Copy, Default)]
pub struct JacobiPerturbation {
    /// Replace the exponent 3 on the left-hand Euler product.
    pub lhs_power: Option<i64>,
}

/// Residual of `θ'(0,τ) = π θ1(0,τ) θ2(0,τ) θ3(0,τ)` after dividing by `2π q^{1/8}`:
/// `∏(1-q^j)^3 - ∏(1-q^j)(1+q^j)^2 · ∏(1-q^j)(1-q^{j-1/2})^2 · ∏(1-q^j)(1+q^{j-1/2})^2`.
pub fn jacobi_identity_check(order: usize) -> HalfQSeries<Rational> {
    jacobi_identity_residual(order, JacobiPerturbation::default()).expect("orders agree")
}

pub fn jacobi_identity_residual(order: usize, perturb: JacobiPerturbation) -> Result<HalfQSeries<Rational>> {
    let euler = euler_product(order);
    let lhs = euler.powi(perturb.lhs_power.unwrap_or(3))?;
    let mut rhs = euler.powi(3)?;
    for j in 1..=order {
        rhs = rhs.mul(&binomial_square(1, 2 * j, order))?;
    }
    for j in 1..=order + 1 {
        let h = 2 * j - 1;
        if h > 2 * order {
            break;
        }
        rhs = rhs.mul(&binomial_square(-1, h, order))?.mul(&binomial_square(1, h, order))?;
    }
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &HalfQSeries<Rational>) -> Vec<Rational> {
        s.coeffs().to_vec()
    }

    #[test]
    fn printed_leading_terms() {
        let d1 = modular_form(ModularFormId::Delta1, 2);
        assert_eq!(coeffs(&d1)[..3], [rat(1, 4), int(0), int(6)]);
        let e1 = modular_form(ModularFormId::Eps1, 2);
        assert_eq!(coeffs(&e1)[..3], [rat(1, 16), int(0), int(-1)]);
        let d2 = modular_form(ModularFormId::Delta2, 2);
        assert_eq!(coeffs(&d2)[..2], [rat(-1, 8), int(-3)]);
        let e2 = modular_form(ModularFormId::Eps2, 2);
        assert_eq!(coeffs(&e2)[..2], [int(0), int(1)]);
    }

    #[test]
    fn higher_coefficients_are_integers() {
        for id in [ModularFormId::Delta1, ModularFormId::Eps1, ModularFormId::Delta2, ModularFormId::Eps2] {
            let s = modular_form(id, 8);
            for c in &s.coeffs()[1..] {
                assert!(c.is_integer(), "{id:?}: {c}");
            }
        }
    }

    #[test]
    fn e2_against_divisor_sums() {
        // independent divisor enumeration: σ1(1..3) = 1, 3, 4
        let e = e2_series(3);
        assert_eq!(
            [e.coeff(0), e.coeff(2), e.coeff(4), e.coeff(6)],
            [&int(1), &int(-24), &int(-72), &int(-96)]
        );
        assert!(e.coeff(1).is_integer() && e.coeff(1) == &int(0));
    }

    #[test]
    fn jacobi_identity_zero() {
        assert!(jacobi_identity_check(20).is_zero());
        assert!(jacobi_identity_check(0).is_zero());
    }

    #[test]
    fn perturbed_jacobi_is_nonzero() {
        let r = jacobi_identity_residual(4, JacobiPerturbation { lhs_power: Some(2) }).unwrap();
        // ∏(1-q^j)^2 - ∏(1-q^j)^3 = q + ... : first discrepancy at q^1
        assert_eq!(r.first_nonzero(), Some(2));
        assert_eq!(r.coeff(2), &int(1));
    }
}
