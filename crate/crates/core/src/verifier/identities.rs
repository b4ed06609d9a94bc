//! Independent assembly of both sides of every cancellation identity.
//!
//! Left sides use genus forms, spinor characters and `b_r`; right sides use `β_r`
//! and the explicit correction term. Nothing on one side is derived from the other.

use crate::algebra::rational::{int, pow2, rat, Rational};
use crate::algebra::{ideal_reduce, GradedPoly, HalfQSeries};
use crate::bundles::{Family, Genus, Geometry, QFormId, Route, Summand, ThetaBundle};
use crate::decomp::{basis_series, decompose, Coefficients, DecompResult, Group};
use crate::error::{usage, Result};
use crate::theta::{theta_ratio, ThetaKind};

/// Both sides of the general identity
/// `{P_A}^{(4k)} - Σ_r 2^{e+k-6r} {P_B ch b_r}^{(4k)} = z·B`,
/// `B = Σ_r 2^{e+k-6r} β_r - {F0·P_A}^{(4k-4)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CancellationSides {
    pub lhs: GradedPoly,
    /// The correction `B` (also written `B̃`, `B̄` for the twisted families).
    pub correction: GradedPoly,
    pub z: GradedPoly,
    pub b: Vec<GradedPoly>,
    pub beta: Vec<GradedPoly>,
}

impl CancellationSides {
    pub fn rhs(&self) -> GradedPoly {
        self.z.mul(&self.correction)
    }
}

/// `2^{e+k-6r}`.
pub fn transfer_weight(geo: &Geometry, r: usize) -> Rational {
    pow2(geo.transfer_exponent() + geo.spec().k as i64 - 6 * r as i64)
}

/// Reduce modulo `p1(TM) - p1(V)` when the family imposes it.
pub fn normalize(geo: &Geometry, p: &GradedPoly) -> Result<GradedPoly> {
    match geo.spec().family {
        Family::TwoLine => ideal_reduce(p, &geo.tm_v_relation()),
        _ => Ok(p.clone()),
    }
}

pub fn normalize_series(geo: &Geometry, s: &HalfQSeries<GradedPoly>) -> Result<HalfQSeries<GradedPoly>> {
    s.try_map(|c| normalize(geo, c))
}

/// Assemble both sides. With `perturb`, `b_0` is doubled before use (negative control).
pub fn cancellation_sides(geo: &Geometry, order: usize, perturb: bool) -> Result<CancellationSides> {
    let spec = geo.spec();
    let top = spec.top_degree();
    let (b_kind, beta_kind) = Coefficients::for_family(spec.family);
    let mut b = geo.extract_br_betar(b_kind, order)?.result.h;
    let beta = geo.extract_br_betar(beta_kind, order)?.result.h;
    if perturb {
        b[0] = b[0].scale(&int(2));
    }
    let pa = geo.first_prefactor()?;
    let pb = geo.second_prefactor()?;
    let mut lhs = pa.component(top);
    let mut correction = pa.mul(&geo.anomaly_expm1_over_z()?).component(top - 4).neg();
    for r in 0..=spec.max_r() {
        let w = transfer_weight(geo, r);
        lhs = lhs.sub(&pb.mul(&b[r]).component(top).scale(&w));
        correction = correction.add(&beta[r].scale(&w));
    }
    Ok(CancellationSides { lhs, correction, z: geo.p1_combo(), b, beta })
}

/// Closed-form low-dimensional specializations as printed, plus their theorem-consistent forms.
#[derive(Debug, Clone, PartialEq)]
pub struct CorollarySides {
    pub lhs: GradedPoly,
    pub rhs: GradedPoly,
    /// The literal statement when it differs from the consistent one (dimension 8 only).
    pub literal: Option<(GradedPoly, GradedPoly)>,
    /// The scalar multiplying `z` on the right (dimension 4 only).
    pub constant: Option<Rational>,
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        usage(msg)
    }
}

/// Dimension 4: `{P_A}^{(4)} + 2^{e+1}{P_B}^{(4)} = -2^{γ} z` with `γ = al-3` (or `l-2` for `TWO_LINE`).
///
/// `perturb` doubles the constant.
pub fn corollary_dim4(geo: &Geometry, perturb: bool) -> Result<CorollarySides> {
    let spec = geo.spec();
    require(spec.k == 1, format!("the dimension-4 identity needs k=1, got k={}", spec.k))?;
    require(spec.family != Family::AbXi, "no dimension-4 identity is stated for AB_XI")?;
    let e = geo.transfer_exponent();
    let pa = geo.first_prefactor()?.component(4);
    let pb = geo.second_prefactor()?.component(4);
    let lhs = pa.add(&pb.scale(&pow2(e + 1)));
    let gamma = match spec.family {
        Family::TwoLine => spec.l as i64 - 2,
        _ => spec.a * spec.l as i64 - 3,
    };
    let mut constant = -pow2(gamma);
    if perturb {
        constant *= int(2);
    }
    Ok(CorollarySides { lhs, rhs: geo.p1_combo().scale(&constant), literal: None, constant: Some(constant) })
}

/// Dimension 8 with `X` the degree-one part of `b_1` without its `-24k` term:
/// `(b-a)Ṽ` for `AB`, `2ξ̃ + ξ̃' - Ṽ` for `TWO_LINE`.
///
/// Consistent form: `{P_A - 2^e P_B - 2^{e-4} P_B ch X}^{(8)} = z{F0[2^e P_B + 2^{e-4} P_B ch X - P_A]}^{(4)}`.
/// The literal statement writes the left `X` as `-aṼ` and the right bracket as
/// `2^e P_B - a P_B chṼ - P_A` (`AB`) or `2^l P_B - P_B ch X - P_A` (`TWO_LINE`).
pub fn corollary_dim8(geo: &Geometry, perturb: bool) -> Result<CorollarySides> {
    let spec = geo.spec();
    require(spec.k == 2, format!("the dimension-8 identity needs k=2, got k={}", spec.k))?;
    require(spec.family != Family::AbXi, "no dimension-8 identity is stated for AB_XI")?;
    let e = geo.transfer_exponent();
    let pa = geo.first_prefactor()?;
    let pb = geo.second_prefactor()?;
    let f0 = geo.anomaly_expm1_over_z()?;
    let z = geo.p1_combo();
    let v = geo.adams_ch(Summand::V, 1)?;
    let ch_x = match spec.family {
        Family::TwoLine => geo
            .adams_ch(Summand::Xi, 1)?
            .scale(&int(2))
            .add(&geo.adams_ch(Summand::XiPrime, 1)?)
            .sub(&v),
        _ => v.scale(&int(spec.b - spec.a)),
    };
    let big = pow2(e);
    let small = if perturb { pow2(e - 3) } else { pow2(e - 4) };
    let lhs = pa.sub(&pb.scale(&big)).sub(&pb.mul(&ch_x).scale(&small)).component(8);
    let bracket = pb.scale(&big).add(&pb.mul(&ch_x).scale(&small)).sub(&pa);
    let rhs = z.mul(&f0.mul(&bracket).component(4));

    let (lit_lhs_x, lit_rhs_x) = match spec.family {
        Family::TwoLine => (ch_x.clone(), ch_x.neg()),
        _ => (v.scale(&int(-spec.a)), v.scale(&int(-spec.a))),
    };
    let lit_lhs = pa.sub(&pb.scale(&big)).sub(&pb.mul(&lit_lhs_x).scale(&pow2(e - 4))).component(8);
    let lit_bracket = pb.scale(&big).add(&pb.mul(&lit_rhs_x)).sub(&pa);
    let lit_rhs = z.mul(&f0.mul(&lit_bracket).component(4));
    Ok(CorollarySides { lhs, rhs, literal: Some((lit_lhs, lit_rhs)), constant: None })
}

/// The untwisted `a = 1, b = 0` identity built from scratch: `P_A = Â ch Δ(V)`, `P_B = Â`,
/// `z = p1(TM) - p1(V)`, `e = l`, and `ch Θ2` as a product of theta quotients.
pub fn untwisted_sides(geo: &Geometry, order: usize) -> Result<CancellationSides> {
    let spec = geo.spec();
    require(
        spec.family == Family::Ab && (spec.a, spec.b) == (1, 0),
        format!("the untwisted specialization needs AB with a=1, b=0, got {spec}"),
    )?;
    let k = spec.k;
    let top = 4 * k;
    let ring = geo.ring();
    let ahat = geo.genus_form(Genus::AHat)?;
    let pa = ahat.mul(&geo.ch_spinor_pow(1)?);
    let z = geo.p1_tm().sub(&geo.p1_v());

    // ch Θ2 = ∏_w THETA(w)/Â-root · ∏_v θ2(v)
    let mut theta2 = HalfQSeries::one(&geo.one(), order);
    for &w in geo.tm_roots() {
        let t = theta_ratio(ThetaKind::Theta, &geo.gen(w), order)?;
        let lead = HalfQSeries::constant(t.coeff(0).clone(), order);
        theta2 = theta2.mul(&t.div(&lead)?)?;
    }
    for &v in geo.v_roots() {
        theta2 = theta2.mul(&theta_ratio(ThetaKind::Theta2, &geo.gen(v), order)?)?;
    }
    let b = decompose(&theta2, k)?.h;

    // (e^{E2 z/24} - 1)/z = Σ_{m≥1} E2^m z^{m-1} / (24^m m!)
    let e2 = crate::theta::e2_series(order).embed(ring);
    let mut weight = HalfQSeries::zero(&geo.one(), order);
    let mut e2_pow = e2.clone();
    let mut z_pow = geo.one();
    let mut coeff = rat(1, 24);
    for m in 1..=(k as i64 + 1) {
        weight = weight.add(&e2_pow.mul_coeff(&z_pow.scale(&coeff)))?;
        e2_pow = e2_pow.mul(&e2)?;
        z_pow = z_pow.mul(&z);
        coeff /= int(24 * (m + 1));
    }
    let beta_source = theta2.mul_coeff(&ahat).mul(&weight)?.component(top - 4);
    let beta = decompose(&beta_source, k)?.h;

    let f0 = {
        let mut acc = GradedPoly::zero(ring);
        let mut z_pow = geo.one();
        let mut coeff = rat(1, 24);
        for m in 1..=(k as i64 + 1) {
            acc = acc.add(&z_pow.scale(&coeff));
            z_pow = z_pow.mul(&z);
            coeff /= int(24 * (m + 1));
        }
        acc
    };
    let l = spec.l as i64;
    let mut lhs = pa.component(top);
    let mut correction = f0.mul(&pa).component(top - 4).neg();
    for r in 0..=spec.max_r() {
        let w = pow2(l + k as i64 - 6 * r as i64);
        lhs = lhs.sub(&ahat.mul(&b[r]).component(top).scale(&w));
        correction = correction.add(&beta[r].scale(&w));
    }
    Ok(CancellationSides { lhs, correction, z, b, beta })
}

/// Which series a modularity witness decomposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    /// `ch Θ2` in all degrees.
    SecondBundle,
    /// Top-degree component of the `E2`-corrected second form.
    Corrected,
    /// Top-degree component of the second form without its `E2` correction.
    Uncorrected,
}

/// Decompose the chosen series over the `Γ^0(2)` basis; the residual is reduced modulo
/// the family's ideal.
pub fn modularity_witness(geo: &Geometry, source: WitnessSource, order: usize) -> Result<DecompResult<GradedPoly>> {
    let top = geo.spec().top_degree();
    let series = match source {
        WitnessSource::SecondBundle => geo.ch_theta_bundle(ThetaBundle::Second, order)?,
        WitnessSource::Corrected => geo.corrected_form(Route::Bundle, order)?.component(top),
        WitnessSource::Uncorrected => {
            let (second, _) = QFormId::second_for(geo.spec().family);
            geo.q_form(second, Route::Bundle, order)?.component(top)
        }
    };
    let mut d = decompose(&series, geo.spec().k)?;
    d.residual = normalize_series(geo, &d.residual)?;
    Ok(d)
}

/// `2^e Σ_r h_r (8δ1)^{k-2r} ε1^r - {Q1}^{(4k)}`, reduced modulo the family's ideal.
pub fn transfer_residual(geo: &Geometry, h: &[GradedPoly], order: usize) -> Result<HalfQSeries<GradedPoly>> {
    let spec = geo.spec();
    let mut image = HalfQSeries::zero(&geo.one(), order);
    for (r, c) in h.iter().enumerate() {
        let basis = basis_series(spec.k, r, Group::Gamma0, order)?;
        image = image.add(&basis.map(|x| c.scale(x)))?;
    }
    let image = image.scale(&pow2(geo.transfer_exponent()));
    let first = geo.q_form(QFormId::first_for(spec.family), Route::Bundle, order)?.component(spec.top_degree());
    normalize_series(geo, &image.sub(&first)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::GeometrySpec;

    fn geo(spec: crate::Result<GeometrySpec>) -> Geometry {
        Geometry::new(spec.unwrap()).unwrap()
    }

    #[test]
    fn theorem_holds_small() {
        let g = geo(GeometrySpec::ab(1, 1, 1, 0));
        let s = cancellation_sides(&g, 3, false).unwrap();
        assert_eq!(s.lhs, s.rhs());
        let p = cancellation_sides(&g, 3, true).unwrap();
        assert_ne!(p.lhs, p.rhs());
    }

    #[test]
    fn dimension_four_and_theorem_agree() {
        let g = geo(GeometrySpec::ab(1, 2, 2, 1));
        let s = cancellation_sides(&g, 3, false).unwrap();
        let c = corollary_dim4(&g, false).unwrap();
        assert_eq!(s.lhs, c.lhs);
        assert_eq!(s.rhs(), c.rhs);
    }

    #[test]
    fn untwisted_matches_general() {
        let g = geo(GeometrySpec::ab(2, 1, 1, 0));
        assert_eq!(untwisted_sides(&g, 4).unwrap(), cancellation_sides(&g, 4, false).unwrap());
        assert!(untwisted_sides(&geo(GeometrySpec::ab(2, 1, 2, 0)), 4).is_err());
    }

    #[test]
    fn two_line_needs_the_ideal() {
        let g = geo(GeometrySpec::two_line(1, 1));
        let s = cancellation_sides(&g, 3, false).unwrap();
        let diff = s.lhs.sub(&s.rhs());
        assert!(!diff.is_zero());
        assert!(normalize(&g, &diff).unwrap().is_zero());
    }
}
