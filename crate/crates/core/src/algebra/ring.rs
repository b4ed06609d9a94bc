//! Truncated graded polynomial rings over the rationals.
//!
//! A [`RingSpec`] fixes an ordered list of even-degree generators and a
//! degree cap `D`. Every [`GradedPoly`] drops monomials of total degree
//! above `D` as soon as they appear, which models the vanishing of
//! cohomology above the dimension of the underlying manifold.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{to_short_string, Rational};
use crate::error::{usage, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    /// Cohomological degree; always even and positive.
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    generators: Vec<Generator>,
    cap: u32,
}

impl RingSpec {
    pub fn new(generators: Vec<Generator>, cap: u32) -> Result<Arc<Self>> {
        if cap == 0 || !cap.is_multiple_of(2) {
            return usage(format!("degree cap must be a positive even integer, got {cap}"));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 || g.degree % 2 != 0 {
                return usage(format!("generator {} has odd or zero degree {}", g.name, g.degree));
            }
            if g.degree > cap {
                return usage(format!("generator {} exceeds the degree cap", g.name));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return usage(format!("duplicate generator name {}", g.name));
            }
        }
        if generators.len() > u8::MAX as usize {
            return usage("too many generators");
        }
        Ok(Arc::new(RingSpec { generators, cap }))
    }

    /// All generators of degree 2, named as given.
    pub fn degree_two<S: AsRef<str>>(names: &[S], cap: u32) -> Result<Arc<Self>> {
        let gens = names
            .iter()
            .map(|n| Generator { name: n.as_ref().to_string(), degree: 2 })
            .collect();
        Self::new(gens, cap)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(&e, g)| e as u32 * g.degree).sum()
    }
}

/// Exponent vector, one entry per generator of the ambient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Vec<u8>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn from_exponents(e: Vec<u8>) -> Self {
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Exact sparse polynomial in the generators of a [`RingSpec`], truncated at its cap.
#[derive(Clone)]
pub struct GradedPoly {
    ring: Arc<RingSpec>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({self})")
    }
}

impl GradedPoly {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        GradedPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<RingSpec>, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial::one(ring.len()), c);
        p
    }

    pub fn generator(ring: &Arc<RingSpec>, index: usize) -> Self {
        assert!(index < ring.len(), "generator index out of range");
        let mut e = vec![0; ring.len()];
        e[index] = 1;
        let mut p = Self::zero(ring);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    pub fn named(ring: &Arc<RingSpec>, name: &str) -> Result<Self> {
        ring.index_of(name)
            .map(|i| Self::generator(ring, i))
            .ok_or_else(|| Error::Usage(format!("unknown generator {name}")))
    }

    /// Build from explicit terms; monomials above the cap are dropped.
    pub fn from_terms(ring: &Arc<RingSpec>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.len(), "monomial arity does not match ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ring.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    /// Lowest degree carrying a nonzero coefficient, `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.monomial_degree(m)).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.monomial_degree(m)).max()
    }

    /// If this is exactly one generator with coefficient 1, its index.
    pub fn as_generator(&self) -> Option<usize> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if !c.is_one() {
            return None;
        }
        let mut idx = None;
        for (i, &e) in m.0.iter().enumerate() {
            match (e, idx) {
                (0, _) => {}
                (1, None) => idx = Some(i),
                _ => return None,
            }
        }
        idx
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || self.ring.monomial_degree(&m) > self.ring.cap {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &GradedPoly) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "ring mismatch between operands"
        );
    }

    pub fn add(&self, other: &GradedPoly) -> GradedPoly {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GradedPoly) -> GradedPoly {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> GradedPoly {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> GradedPoly {
        if r.is_zero() {
            return Self::zero(&self.ring);
        }
        GradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.is_constant() {
            return self.scale(&other.constant_term());
        }
        if self.is_constant() {
            return other.scale(&self.constant_term());
        }
        let cap = self.ring.cap;
        // Pair terms by degree so that pairs above the cap are never formed.
        let rhs: Vec<(u32, &Monomial, &Rational)> = {
            let mut v: Vec<_> = other
                .terms
                .iter()
                .map(|(m, c)| (self.ring.monomial_degree(m), m, c))
                .collect();
            v.sort_by_key(|t| t.0);
            v
        };
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            let d1 = self.ring.monomial_degree(m1);
            for &(d2, m2, c2) in &rhs {
                if d1 + d2 > cap {
                    break;
                }
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> GradedPoly {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse in the truncated ring; exists iff the constant term is nonzero.
    pub fn inverse(&self) -> Result<GradedPoly> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::Invert("constant term is zero".into()));
        }
        let c0_inv = c0.recip();
        // self = c0 (1 + n) with n nilpotent; 1/(1+n) = sum (-n)^i.
        let n = self.scale(&c0_inv).sub(&Self::one(&self.ring));
        let neg_n = n.neg();
        let mut acc = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        loop {
            term = term.mul(&neg_n);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Integer power, negative exponents through [`GradedPoly::inverse`].
    pub fn powi(&self, e: i64) -> Result<GradedPoly> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs() as u32))
        }
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> GradedPoly {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.monomial_degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop everything above `degree`.
    pub fn truncate_degree(&self, degree: u32) -> GradedPoly {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.monomial_degree(m) <= degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Ring homomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[GradedPoly]) -> Result<GradedPoly> {
        if images.len() != self.ring.len() {
            return usage("substitution needs one image per generator");
        }
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut powers: Vec<Vec<GradedPoly>> = images.iter().map(|p| vec![GradedPoly::one(&target), p.clone()]).collect();
        let mut out = GradedPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = GradedPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Exact embedding into a larger ring whose generator list contains this one's by name.
    pub fn embed(&self, target: &Arc<RingSpec>) -> Result<GradedPoly> {
        let mut map = Vec::with_capacity(self.ring.len());
        for g in self.ring.generators() {
            match target.index_of(&g.name) {
                Some(i) if target.generators()[i].degree == g.degree => map.push(i),
                _ => return usage(format!("target ring lacks generator {}", g.name)),
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u8; target.len()];
            for (src, &dst) in map.iter().enumerate() {
                e[dst] = m.0[src];
            }
            (Monomial(e), c.clone())
        });
        Ok(GradedPoly::from_terms(target, terms))
    }

    /// Formal partial derivative in generator `index`.
    pub fn derivative(&self, index: usize) -> GradedPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.0[index] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[index];
            e[index] -= 1;
            (Monomial(e), c * Rational::from_integer(k.into()))
        });
        GradedPoly::from_terms(&self.ring, terms)
    }

    /// Format a monomial with this ring's generator names.
    pub fn format_monomial(ring: &RingSpec, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (g, &e) in ring.generators().iter().zip(&m.0) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        parts.join("*")
    }
}

/// Write `sum c_i * m_i` in degree order, e.g. `2 + 1/4*v1^2`.
pub(crate) fn write_sum(
    f: &mut fmt::Formatter<'_>,
    mut terms: Vec<(u32, String, &Rational)>,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    terms.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    for (i, (_, mono, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        if mono.is_empty() {
            write!(f, "{}", to_short_string(&mag))?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{}*{}", to_short_string(&mag), mono)?;
        }
    }
    Ok(())
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (self.ring.monomial_degree(m), Self::format_monomial(&self.ring, m), c))
            .collect();
        write_sum(f, terms)
    }
}

impl std::ops::Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        GradedPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        GradedPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        GradedPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly::neg(self)
    }
}
