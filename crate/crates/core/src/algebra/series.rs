//! Truncated power series in `q^{1/2}`.
//!
//! Index `n` of a [`HalfQSeries`] holds the coefficient of `q^{n/2}`; a series
//! of order `N` carries indices `0..=2N`. Products and inverses are computed
//! exactly to that order, so every operation commutes with truncation.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::{to_short_string, Rational};
use super::ring::GradedPoly;
use crate::error::{usage, Error, Result};

/// Coefficient rings usable inside a [`HalfQSeries`].
///
/// Zero and one are produced from an existing element because some rings
/// (graded polynomials) carry context that a bare `zero()` cannot supply.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn is_one_coeff(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn inverse_coeff(&self) -> Option<Self>;
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_one_coeff(&self) -> bool {
        self.is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn inverse_coeff(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Coefficient for GradedPoly {
    fn zero_like(&self) -> Self {
        GradedPoly::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        GradedPoly::one(self.ring())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_one_coeff(&self) -> bool {
        self.is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scale(&self, r: &Rational) -> Self {
        GradedPoly::scale(self, r)
    }
    fn inverse_coeff(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl Coefficient for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::zero()
    }
    fn one_like(&self) -> Self {
        Complex64::one()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_one_coeff(&self) -> bool {
        self.is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r.to_f64().unwrap_or(f64::NAN)
    }
    fn inverse_coeff(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.inv())
    }
}

#[derive(Clone, PartialEq)]
pub struct HalfQSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> fmt::Debug for HalfQSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HalfQSeries").field("order", &self.order()).field("coeffs", &self.coeffs).finish()
    }
}

/// Number of stored coefficients for order `n`.
fn len_for(order: usize) -> usize {
    2 * order + 1
}

impl<C: Coefficient> HalfQSeries<C> {
    /// Series from explicit coefficients; missing entries up to `2N` are zero.
    pub fn from_coeffs(prototype: &C, mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.truncate(len_for(order));
        while coeffs.len() < len_for(order) {
            coeffs.push(prototype.zero_like());
        }
        HalfQSeries { coeffs }
    }

    pub fn zero(prototype: &C, order: usize) -> Self {
        HalfQSeries { coeffs: vec![prototype.zero_like(); len_for(order)] }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(&c, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(prototype: &C, order: usize) -> Self {
        Self::constant(prototype.one_like(), order)
    }

    /// `c * q^{half/2}`.
    pub fn monomial(c: C, half: usize, order: usize) -> Self {
        let mut s = Self::zero(&c, order);
        if half < s.coeffs.len() {
            s.coeffs[half] = c;
        }
        s
    }

    /// Truncation order `N` in integer powers of `q`.
    pub fn order(&self) -> usize {
        (self.coeffs.len() - 1) / 2
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `q^{half/2}`.
    pub fn coeff(&self, half: usize) -> &C {
        &self.coeffs[half]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_zero_coeff)
    }

    /// First half-index with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_coeff())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return usage(format!(
                "truncation orders differ: {} vs {}",
                self.order(),
                other.order()
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(HalfQSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(HalfQSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect() })
    }

    pub fn neg(&self) -> Self {
        HalfQSeries { coeffs: self.coeffs.iter().map(Coefficient::negate).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        HalfQSeries { coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect() }
    }

    /// Multiply every coefficient by the ring element `c`.
    pub fn mul_coeff(&self, c: &C) -> Self {
        HalfQSeries { coeffs: self.coeffs.iter().map(|x| x.times(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut out: Vec<C> = vec![self.coeffs[0].zero_like(); n];
        let rhs: Vec<(usize, &C)> = other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero_coeff()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_coeff() {
                continue;
            }
            for &(j, b) in &rhs {
                if i + j >= n {
                    break;
                }
                let p = if b.is_one_coeff() { a.clone() } else { a.times(b) };
                out[i + j] = out[i + j].plus(&p);
            }
        }
        Ok(HalfQSeries { coeffs: out })
    }

    /// `self / other` by forward substitution; `other` needs an invertible constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let d0 = &other.coeffs[0];
        let inv0 = if d0.is_one_coeff() {
            None
        } else {
            Some(d0.inverse_coeff().ok_or_else(|| Error::Invert("constant term of divisor is not a unit".into()))?)
        };
        let tail: Vec<(usize, &C)> = other.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero_coeff()).collect();
        let n = self.coeffs.len();
        let mut r: Vec<C> = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = self.coeffs[m].clone();
            for &(i, d) in &tail {
                if i > m {
                    break;
                }
                let prev = &r[m - i];
                if !prev.is_zero_coeff() {
                    acc = acc.minus(&d.times(prev));
                }
            }
            r.push(match &inv0 {
                Some(inv) => acc.times(inv),
                None => acc,
            });
        }
        Ok(HalfQSeries { coeffs: r })
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one(&self.coeffs[0], self.order()).div(self)
    }

    /// Integer power; negative exponents go through [`HalfQSeries::inv`].
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(&self.coeffs[0], self.order());
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// `exp(self)` for a series without constant term, via `n E_n = Σ_{j≤n} j S_j E_{n-j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_coeff() {
            return usage("exp needs a series with zero constant term");
        }
        let tail: Vec<(usize, &C)> = self.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero_coeff()).collect();
        let mut e = vec![self.coeffs[0].one_like()];
        for m in 1..self.coeffs.len() {
            let mut acc = self.coeffs[0].zero_like();
            for &(j, s) in &tail {
                if j > m {
                    break;
                }
                if !e[m - j].is_zero_coeff() {
                    acc = acc.plus(&s.times(&e[m - j]).scale(&Rational::from_integer((j as i64).into())));
                }
            }
            e.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
        }
        Ok(HalfQSeries { coeffs: e })
    }

    /// Multiply by `q^{half/2}`.
    pub fn shift(&self, half: usize) -> Self {
        let n = self.coeffs.len();
        let zero = self.coeffs[0].zero_like();
        let coeffs = (0..n).map(|i| if i >= half { self.coeffs[i - half].clone() } else { zero.clone() }).collect();
        HalfQSeries { coeffs }
    }

    /// Restrict to a smaller order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return usage(format!("cannot extend a series of order {} to order {order}", self.order()));
        }
        Ok(HalfQSeries { coeffs: self.coeffs[..len_for(order)].to_vec() })
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> HalfQSeries<D> {
        HalfQSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<D: Coefficient>(&self, f: impl Fn(&C) -> Result<D>) -> Result<HalfQSeries<D>> {
        Ok(HalfQSeries { coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }
}

impl HalfQSeries<Rational> {
    /// Coefficientwise image in a graded ring.
    pub fn embed(&self, ring: &std::sync::Arc<super::ring::RingSpec>) -> HalfQSeries<GradedPoly> {
        self.map(|c| GradedPoly::constant(ring, c.clone()))
    }

    /// Numeric value at `q^{1/2} = sqrt_q`.
    pub fn eval(&self, sqrt_q: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * sqrt_q + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

impl HalfQSeries<GradedPoly> {
    /// Apply a degree operation to every coefficient.
    pub fn map_poly(&self, f: impl Fn(&GradedPoly) -> GradedPoly) -> Self {
        self.map(f)
    }

    /// Homogeneous component of the given cohomological degree in every coefficient.
    pub fn component(&self, degree: u32) -> Self {
        self.map(|c| c.component(degree))
    }

    /// First `(half index, degree)` where the series is nonzero, scanning q-orders first.
    pub fn first_nonzero_location(&self) -> Option<(usize, u32)> {
        let i = self.first_nonzero()?;
        Some((i, self.coeffs[i].min_degree().unwrap_or(0)))
    }
}

/// `q^{half/2}` exponent as text: `q^0`, `q^{1/2}`, `q^3`.
pub fn q_power_label(half: usize) -> String {
    if half.is_multiple_of(2) {
        format!("q^{}", half / 2)
    } else {
        format!("q^{{{half}/2}}")
    }
}

/// `q^{1/2}`, `q`, `q^{3/2}`; the empty string for `q^0`.
fn q_power_suffix(half: usize) -> String {
    match half {
        0 => String::new(),
        2 => "q".to_string(),
        h if h % 2 == 0 => format!("q^{}", h / 2),
        h => format!("q^{{{h}/2}}"),
    }
}

/// `-1/8 - 3q^{1/2} + O(q)`; the error term is the first omitted half-order.
impl fmt::Display for HalfQSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let suffix = q_power_suffix(i);
            if magnitude.is_one() && !suffix.is_empty() {
                write!(f, "{suffix}")?;
            } else {
                write!(f, "{}{suffix}", to_short_string(&magnitude))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        let omitted = q_power_suffix(self.coeffs.len());
        write!(f, " + O({omitted})")
    }
}
