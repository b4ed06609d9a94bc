//! Double-precision evaluation of the theta functions and of `δ1, ε1, δ2, ε2, E2`.
//!
//! Only used for transformation-law checks; nothing here feeds into the exact pipeline.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::forms::sigma1;
use super::{ModularFormId, ThetaKind};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn check_tau(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tau must lie in the upper half plane, got {tau}")))
    }
}

/// `e^{2πi τ x}`
fn q_pow(tau: Complex64, x: f64) -> Complex64 {
    (2.0 * PI * I * tau * x).exp()
}

/// Product of `f_i`, together with its `v`-derivative by the product rule.
fn product_with_derivative(factors: &[(Complex64, Complex64)]) -> (Complex64, Complex64) {
    factors.iter().fold((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)), |(p, dp), &(f, df)| {
        (p * f, dp * f + p * df)
    })
}

/// Factors `(value, d/dv)` of the truncated product for `kind`.
fn factors(kind: ThetaKind, v: Complex64, tau: Complex64, terms: usize) -> Vec<(Complex64, Complex64)> {
    let zero = Complex64::new(0.0, 0.0);
    let phase = (2.0 * PI * I * v).exp();
    let dphase = 2.0 * PI * I;
    let (offset, sign) = match kind {
        ThetaKind::Theta => (0.0, -1.0),
        ThetaKind::Theta1 => (0.0, 1.0),
        ThetaKind::Theta2 => (0.5, -1.0),
        ThetaKind::Theta3 => (0.5, 1.0),
    };
    let mut out = Vec::with_capacity(3 * terms + 2);
    match kind {
        ThetaKind::Theta => {
            let pre = 2.0 * q_pow(tau, 0.125);
            out.push((pre * (PI * v).sin(), pre * PI * (PI * v).cos()));
        }
        ThetaKind::Theta1 => {
            let pre = 2.0 * q_pow(tau, 0.125);
            out.push((pre * (PI * v).cos(), -pre * PI * (PI * v).sin()));
        }
        ThetaKind::Theta2 | ThetaKind::Theta3 => {}
    }
    for j in 1..=terms {
        let qj = q_pow(tau, j as f64);
        let qh = q_pow(tau, j as f64 - offset);
        let up = sign * phase * qh;
        let down = sign * qh / phase;
        out.push((1.0 - qj, zero));
        out.push((1.0 + up, dphase * up));
        out.push((1.0 + down, -dphase * down));
    }
    out
}

/// Truncated product formula with the literal `2q^{1/8}` prefactors;
/// `q^{1/8}` means `e^{2πiτ/8}`.
pub fn theta_eval_numeric(kind: ThetaKind, v: Complex64, tau: Complex64, terms: usize) -> Result<Complex64> {
    check_tau(tau)?;
    Ok(product_with_derivative(&factors(kind, v, tau, terms)).0)
}

/// `∂θ_i/∂v` at `(v, τ)` from the product rule on the truncated product.
pub fn theta_vderiv_numeric(kind: ThetaKind, v: Complex64, tau: Complex64, terms: usize) -> Result<Complex64> {
    check_tau(tau)?;
    Ok(product_with_derivative(&factors(kind, v, tau, terms)).1)
}

/// `θ'(0,τ) = 2π q^{1/8} ∏ (1-q^j)^3`.
pub fn theta_prime_numeric(tau: Complex64, terms: usize) -> Result<Complex64> {
    check_tau(tau)?;
    let prod: Complex64 = (1..=terms).map(|j| (1.0 - q_pow(tau, j as f64)).powi(3)).product();
    Ok(2.0 * PI * q_pow(tau, 0.125) * prod)
}

/// `E2(τ) = 1 - 24 Σ_{n ≤ terms} σ1(n) q^n`.
pub fn e2_numeric(tau: Complex64, terms: usize) -> Result<Complex64> {
    check_tau(tau)?;
    let tail: Complex64 = (1..=terms as u64).map(|n| sigma1(n) as f64 * q_pow(tau, n as f64)).sum();
    Ok(1.0 - 24.0 * tail)
}

pub fn modular_form_numeric(id: ModularFormId, tau: Complex64, terms: usize) -> Result<Complex64> {
    if id == ModularFormId::E2 {
        return e2_numeric(tau, terms);
    }
    let zero = Complex64::new(0.0, 0.0);
    let t = |kind| theta_eval_numeric(kind, zero, tau, terms).map(|x| x.powi(4));
    let (t1, t2, t3) = (t(ThetaKind::Theta1)?, t(ThetaKind::Theta2)?, t(ThetaKind::Theta3)?);
    Ok(match id {
        ModularFormId::Delta1 => (t2 + t3) / 8.0,
        ModularFormId::Eps1 => t2 * t3 / 16.0,
        ModularFormId::Delta2 => -(t1 + t3) / 8.0,
        ModularFormId::Eps2 => t1 * t3 / 16.0,
        ModularFormId::E2 => unreachable!(),
    })
}

/// Element of `SL2(Z)` acting by Möbius transformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sl2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2 {
    pub const S: Sl2 = Sl2 { a: 0, b: -1, c: 1, d: 0 };
    pub const T: Sl2 = Sl2 { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Domain(format!("determinant of [[{a},{b}],[{c},{d}]] is not 1")));
        }
        Ok(Sl2 { a, b, c, d })
    }

    pub fn compose(self, rhs: Sl2) -> Sl2 {
        Sl2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn product(words: &[Sl2]) -> Sl2 {
        words.iter().fold(Sl2 { a: 1, b: 0, c: 0, d: 1 }, |acc, &g| acc.compose(g))
    }

    pub fn act(self, tau: Complex64) -> Complex64 {
        (self.a as f64 * tau + self.b as f64) / self.automorphy(tau)
    }

    /// `cτ + d`
    pub fn automorphy(self, tau: Complex64) -> Complex64 {
        self.c as f64 * tau + self.d as f64
    }

    pub fn in_gamma0_2(self) -> bool {
        self.c % 2 == 0
    }

    pub fn in_gamma_upper0_2(self) -> bool {
        self.b % 2 == 0
    }
}

/// Generators `T, ST²ST` of `Γ0(2)`.
pub fn gamma0_2_generators() -> [(&'static str, Sl2); 2] {
    use Sl2 as G;
    [("T", G::T), ("ST^2ST", G::product(&[G::S, G::T, G::T, G::S, G::T]))]
}

/// Generators `STS, T²STS` of `Γ^0(2)`.
pub fn gamma_upper0_2_generators() -> [(&'static str, Sl2); 2] {
    use Sl2 as G;
    [("STS", G::product(&[G::S, G::T, G::S])), ("T^2STS", G::product(&[G::T, G::T, G::S, G::T, G::S]))]
}

/// One numeric identity check: `residual = |lhs - rhs|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericCheck {
    pub label: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl NumericCheck {
    fn new(label: impl Into<String>, lhs: Complex64, rhs: Complex64, tolerance: f64) -> Self {
        NumericCheck { label: label.into(), residual: (lhs - rhs).norm(), tolerance }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual < self.tolerance
    }
}

pub const THETA_LAW_TOLERANCE: f64 = 1e-9;
pub const FORM_LAW_TOLERANCE: f64 = 1e-8;

/// Sample point and truncation used by [`transformation_law_checks`].
#[derive(Debug, Clone, Copy)]
pub struct SamplePoint {
    pub tau: Complex64,
    pub v: Complex64,
    pub terms: usize,
}

impl Default for SamplePoint {
    fn default() -> Self {
        SamplePoint { tau: Complex64::new(0.25, 1.1), v: Complex64::new(0.13, 0.07), terms: 60 }
    }
}

/// Jacobi identity, the `S`/`T` laws of all four thetas and of `θ'`, the `E2` laws,
/// the `S`-exchange of `δ/ε`, and weight checks on the congruence-subgroup generators.
pub fn transformation_law_checks(p: SamplePoint) -> Result<Vec<NumericCheck>> {
    let SamplePoint { tau, v, terms } = p;
    check_tau(tau)?;
    let th = |k, v, t| theta_eval_numeric(k, v, t, terms);
    let zero = Complex64::new(0.0, 0.0);
    let s_tau = -1.0 / tau;
    let t_tau = tau + 1.0;
    let eighth = (I * PI / 4.0).exp();
    // (τ/i)^{1/2}, principal branch
    let root = (tau / I).sqrt();
    let gauss = (PI * I * tau * v * v).exp();
    let mut out = Vec::new();

    let jac = theta_prime_numeric(tau, terms)?;
    let rhs = PI * th(ThetaKind::Theta1, zero, tau)? * th(ThetaKind::Theta2, zero, tau)? * th(ThetaKind::Theta3, zero, tau)?;
    out.push(NumericCheck::new("Jacobi identity", jac, rhs, THETA_LAW_TOLERANCE));

    let laws = [
        (ThetaKind::Theta, eighth, ThetaKind::Theta, ThetaKind::Theta, 1.0 / I, "theta"),
        (ThetaKind::Theta1, eighth, ThetaKind::Theta1, ThetaKind::Theta2, Complex64::new(1.0, 0.0), "theta1"),
        (ThetaKind::Theta2, Complex64::new(1.0, 0.0), ThetaKind::Theta3, ThetaKind::Theta1, Complex64::new(1.0, 0.0), "theta2"),
        (ThetaKind::Theta3, Complex64::new(1.0, 0.0), ThetaKind::Theta2, ThetaKind::Theta3, Complex64::new(1.0, 0.0), "theta3"),
    ];
    for (kind, t_factor, t_image, s_image, s_factor, name) in laws {
        out.push(NumericCheck::new(
            format!("{name} under T"),
            th(kind, v, t_tau)?,
            t_factor * th(t_image, v, tau)?,
            THETA_LAW_TOLERANCE,
        ));
        out.push(NumericCheck::new(
            format!("{name} under S"),
            th(kind, v, s_tau)?,
            s_factor * root * gauss * th(s_image, tau * v, tau)?,
            THETA_LAW_TOLERANCE,
        ));
    }

    out.push(NumericCheck::new(
        "theta' under T",
        theta_vderiv_numeric(ThetaKind::Theta, v, t_tau, terms)?,
        eighth * theta_vderiv_numeric(ThetaKind::Theta, v, tau, terms)?,
        THETA_LAW_TOLERANCE,
    ));
    out.push(NumericCheck::new(
        "theta'(0) under S",
        theta_prime_numeric(s_tau, terms)?,
        root * tau * theta_prime_numeric(tau, terms)? / I,
        THETA_LAW_TOLERANCE,
    ));
    out.push(NumericCheck::new(
        "theta'(0) product formula",
        theta_vderiv_numeric(ThetaKind::Theta, zero, tau, terms)?,
        theta_prime_numeric(tau, terms)?,
        THETA_LAW_TOLERANCE,
    ));

    let e2 = |t| e2_numeric(t, terms);
    out.push(NumericCheck::new("E2 under T", e2(t_tau)?, e2(tau)?, FORM_LAW_TOLERANCE));
    out.push(NumericCheck::new(
        "E2 under S",
        e2(s_tau)?,
        tau * tau * e2(tau)? - 6.0 * I * tau / PI,
        FORM_LAW_TOLERANCE,
    ));

    let mf = |id, t| modular_form_numeric(id, t, terms);
    out.push(NumericCheck::new(
        "delta2 under S",
        mf(ModularFormId::Delta2, s_tau)?,
        tau.powi(2) * mf(ModularFormId::Delta1, tau)?,
        FORM_LAW_TOLERANCE,
    ));
    out.push(NumericCheck::new(
        "eps2 under S",
        mf(ModularFormId::Eps2, s_tau)?,
        tau.powi(4) * mf(ModularFormId::Eps1, tau)?,
        FORM_LAW_TOLERANCE,
    ));

    let weight = |id: ModularFormId, w: i32, name: &str, g: Sl2, out: &mut Vec<NumericCheck>| -> Result<()> {
        out.push(NumericCheck::new(
            format!("{id:?} weight {w} under {name}"),
            mf(id, g.act(tau))?,
            g.automorphy(tau).powi(w) * mf(id, tau)?,
            FORM_LAW_TOLERANCE,
        ));
        Ok(())
    };
    for (name, g) in gamma0_2_generators() {
        weight(ModularFormId::Delta1, 2, name, g, &mut out)?;
        weight(ModularFormId::Eps1, 4, name, g, &mut out)?;
    }
    for (name, g) in gamma_upper0_2_generators() {
        weight(ModularFormId::Delta2, 2, name, g, &mut out)?;
        weight(ModularFormId::Eps2, 4, name, g, &mut out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(matches!(theta_eval_numeric(ThetaKind::Theta, c(0.1, 0.0), c(0.0, -1.0), 10), Err(Error::Domain(_))));
        assert!(e2_numeric(c(0.3, 0.0), 5).is_err());
    }

    #[test]
    fn theta_odd_and_vanishing() {
        let tau = c(0.1, 0.9);
        assert_eq!(theta_eval_numeric(ThetaKind::Theta, c(0.0, 0.0), tau, 30).unwrap().norm(), 0.0);
        let v = c(0.21, -0.04);
        let a = theta_eval_numeric(ThetaKind::Theta, v, tau, 30).unwrap();
        let b = theta_eval_numeric(ThetaKind::Theta, -v, tau, 30).unwrap();
        assert!((a + b).norm() < 1e-14);
    }

    #[test]
    fn generators_lie_in_their_groups() {
        for (_, g) in gamma0_2_generators() {
            assert!(g.in_gamma0_2());
        }
        for (_, g) in gamma_upper0_2_generators() {
            assert!(g.in_gamma_upper0_2());
        }
        assert_eq!(gamma0_2_generators()[1].1, Sl2::new(-1, -1, 2, 1).unwrap());
        assert!(Sl2::new(1, 1, 1, 1).is_err());
    }

    #[test]
    fn series_match_numeric_forms() {
        // exact q-expansion summed at small q agrees with the theta-constant evaluation
        let tau = c(0.05, 1.3);
        for id in ModularFormId::ALL {
            let s = super::super::modular_form(id, 12);
            let sqrt_q = q_pow(tau, 0.5);
            let mut sum = c(0.0, 0.0);
            for (n, coeff) in s.coeffs().iter().enumerate() {
                let f: f64 = num_traits::ToPrimitive::to_f64(coeff).unwrap();
                sum += f * sqrt_q.powi(n as i32);
            }
            let direct = modular_form_numeric(id, tau, 40).unwrap();
            assert!((sum - direct).norm() < 1e-12, "{id:?}");
        }
    }

    #[test]
    fn all_laws_hold_at_sample_point() {
        let checks = transformation_law_checks(SamplePoint::default()).unwrap();
        for ch in &checks {
            assert!(ch.passed(), "{}: {:e}", ch.label, ch.residual);
        }
        assert!(checks.len() >= 20);
    }

    #[test]
    fn swapped_law_fails() {
        // negative control: θ1 under S does not go to θ1
        let p = SamplePoint::default();
        let lhs = theta_eval_numeric(ThetaKind::Theta1, p.v, -1.0 / p.tau, p.terms).unwrap();
        let rhs = (p.tau / I).sqrt()
            * (PI * I * p.tau * p.v * p.v).exp()
            * theta_eval_numeric(ThetaKind::Theta1, p.tau * p.v, p.tau, p.terms).unwrap();
        assert!((lhs - rhs).norm() > 1e-3);
    }
}
