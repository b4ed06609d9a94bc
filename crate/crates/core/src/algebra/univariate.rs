//! Univariate rational power series and their evaluation on nilpotent ring elements.

use num_traits::{One, Zero};

use super::rational::{factorial, int, rat, Rational};
use super::ring::GradedPoly;
use crate::error::{usage, Result};

/// `sum c_n x^n`, truncated after `coeffs.len()` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Taylor {
    coeffs: Vec<Rational>,
}

impl Taylor {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a Taylor series needs at least one term");
        Taylor { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// `e^{c x}`.
    pub fn exp_scaled(c: &Rational, terms: usize) -> Self {
        let mut v = Vec::with_capacity(terms);
        let mut pw = Rational::one();
        for n in 0..terms {
            v.push(&pw / factorial(n as u32));
            pw *= c;
        }
        Taylor::new(v)
    }

    pub fn exp(terms: usize) -> Self {
        Self::exp_scaled(&Rational::one(), terms)
    }

    /// `(e^{c x} - 1) / x`.
    pub fn expm1_over_x(c: &Rational, terms: usize) -> Self {
        let e = Self::exp_scaled(c, terms + 1);
        Taylor::new(e.coeffs[1..].to_vec())
    }

    /// `cosh(c x)`.
    pub fn cosh_scaled(c: &Rational, terms: usize) -> Self {
        let e = Self::exp_scaled(c, terms);
        Taylor::new(
            e.coeffs
                .into_iter()
                .enumerate()
                .map(|(n, x)| if n % 2 == 0 { x } else { Rational::zero() })
                .collect(),
        )
    }

    /// `sinh(c x)`.
    pub fn sinh_scaled(c: &Rational, terms: usize) -> Self {
        let e = Self::exp_scaled(c, terms);
        Taylor::new(
            e.coeffs
                .into_iter()
                .enumerate()
                .map(|(n, x)| if n % 2 == 1 { x } else { Rational::zero() })
                .collect(),
        )
    }

    /// `sinh(c x) / x`.
    fn sinh_over_x(c: &Rational, terms: usize) -> Self {
        let s = Self::sinh_scaled(c, terms + 1);
        Taylor::new(s.coeffs[1..].to_vec())
    }

    /// `(x/2) / sinh(x/2)`, the per-root factor of the A-hat form.
    pub fn ahat_root(terms: usize) -> Self {
        // sinh(x/2)/(x/2) = 2 sinh(x/2)/x
        Self::sinh_over_x(&rat(1, 2), terms)
            .scale(&int(2))
            .inverse()
            .expect("constant term is 1")
    }

    /// `x / tanh(x/2)`, the per-root factor of the L-hat form.
    pub fn lhat_root(terms: usize) -> Self {
        let cosh = Self::cosh_scaled(&rat(1, 2), terms);
        let sinh_over = Self::sinh_over_x(&rat(1, 2), terms);
        cosh.mul(&sinh_over.inverse().expect("constant term is 1/2"))
    }

    /// `(1/2) tanh(x/2)`.
    pub fn half_tanh_half(terms: usize) -> Self {
        let sinh = Self::sinh_scaled(&rat(1, 2), terms);
        let cosh = Self::cosh_scaled(&rat(1, 2), terms);
        sinh.mul(&cosh.inverse().expect("constant term is 1")).scale(&rat(1, 2))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Taylor::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn mul(&self, other: &Taylor) -> Taylor {
        let n = self.terms().min(other.terms());
        let mut v = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                v[i + j] += a * b;
            }
        }
        Taylor::new(v)
    }

    pub fn inverse(&self) -> Option<Taylor> {
        if self.coeffs[0].is_zero() {
            return None;
        }
        let inv0 = self.coeffs[0].recip();
        let n = self.terms();
        let mut r: Vec<Rational> = Vec::with_capacity(n);
        r.push(inv0.clone());
        for m in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=m {
                acc += &self.coeffs[i] * &r[m - i];
            }
            r.push(-acc * &inv0);
        }
        Some(Taylor::new(r))
    }

    pub fn powi(&self, e: i64) -> Option<Taylor> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Taylor::new(
            std::iter::once(Rational::one())
                .chain(std::iter::repeat_n(Rational::zero(), self.terms() - 1))
                .collect(),
        );
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }
}

/// Number of Taylor terms needed to evaluate on elements of minimal degree `min_deg` under degree cap `cap`.
pub fn terms_needed(cap: u32, min_deg: u32) -> usize {
    (cap / min_deg.max(1)) as usize + 1
}

/// `sum f_n x^n` for nilpotent `x` (zero constant term), exact in the truncated ring.
pub fn apply_series(f: &Taylor, x: &GradedPoly) -> Result<GradedPoly> {
    let ring = x.ring().clone();
    if !x.constant_term().is_zero() {
        return usage("apply_series needs an argument with zero constant term");
    }
    let Some(min_deg) = x.min_degree() else {
        return Ok(GradedPoly::constant(&ring, f.coeff(0)));
    };
    let needed = terms_needed(ring.cap(), min_deg);
    if f.terms() < needed {
        return usage(format!("series has {} terms, {} needed", f.terms(), needed));
    }
    // Horner from the highest useful term down.
    let mut acc = GradedPoly::constant(&ring, f.coeff(needed - 1));
    for n in (0..needed - 1).rev() {
        acc = acc.mul(x).add(&GradedPoly::constant(&ring, f.coeff(n)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::RingSpec;

    #[test]
    fn ahat_taylor_coefficients() {
        // (x/2)/sinh(x/2) = 1 - x^2/24 + 7x^4/5760 - ...
        let a = Taylor::ahat_root(6);
        assert_eq!(a.coeff(0), int(1));
        assert_eq!(a.coeff(1), int(0));
        assert_eq!(a.coeff(2), rat(-1, 24));
        assert_eq!(a.coeff(4), rat(7, 5760));
    }

    #[test]
    fn lhat_and_tanh_taylor() {
        // x/tanh(x/2) = 2 + x^2/6 - x^4/360 + ...
        let l = Taylor::lhat_root(6);
        assert_eq!(l.coeff(0), int(2));
        assert_eq!(l.coeff(2), rat(1, 6));
        assert_eq!(l.coeff(4), rat(-1, 360));
        // tanh(x/2)/2 = x/4 - x^3/48 + ...
        let t = Taylor::half_tanh_half(5);
        assert_eq!(t.coeff(1), rat(1, 4));
        assert_eq!(t.coeff(3), rat(-1, 48));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let r = RingSpec::degree_two(&["v"], 8).unwrap();
        let z = GradedPoly::zero(&r);
        assert!(apply_series(&Taylor::exp(5), &z).unwrap().is_one());
    }

    #[test]
    fn two_cosh_half() {
        // 2cosh(v/2) = 2 + v^2/4 + v^4/192 at cap 8
        let r = RingSpec::degree_two(&["v"], 8).unwrap();
        let v = GradedPoly::generator(&r, 0);
        let f = Taylor::cosh_scaled(&rat(1, 2), 5).scale(&int(2));
        let got = apply_series(&f, &v).unwrap();
        let want = GradedPoly::constant(&r, int(2))
            .add(&v.pow(2).scale(&rat(1, 4)))
            .add(&v.pow(4).scale(&rat(1, 192)));
        assert_eq!(got, want);
    }

    #[test]
    fn apply_series_errors() {
        let r = RingSpec::degree_two(&["v"], 8).unwrap();
        let v = GradedPoly::generator(&r, 0);
        let one_plus_v = v.add(&GradedPoly::one(&r));
        assert!(apply_series(&Taylor::exp(5), &one_plus_v).is_err());
        assert!(apply_series(&Taylor::exp(2), &v).is_err());
    }

    #[test]
    fn expm1_over_x_prefactor() {
        // (e^{z/24}-1)/z = 1/24 + z/1152 + ...
        let f = Taylor::expm1_over_x(&rat(1, 24), 3);
        assert_eq!(f.coeff(0), rat(1, 24));
        assert_eq!(f.coeff(1), rat(1, 1152));
    }
}
