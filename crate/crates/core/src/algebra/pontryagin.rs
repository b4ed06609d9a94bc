//! Conversion of root-symmetric polynomials to Pontryagin classes.
//!
//! A real bundle with complexified roots `±w_1, …, ±w_m` has
//! `p_i = e_i(w_1^2, …, w_m^2)`. A polynomial invariant under permutations
//! and sign changes of the roots is a polynomial in `p_1, …, p_m`; the
//! conversion peels off lex-leading monomials one at a time.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::rational::Rational;
use super::ring::{write_sum, GradedPoly, Monomial, RingSpec};
use crate::error::{usage, Error, Result};

/// A named set of generators that are the (squared-away) roots of one real bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootFamily {
    pub label: String,
    pub generators: Vec<usize>,
}

impl RootFamily {
    pub fn new(label: impl Into<String>, generators: Vec<usize>) -> Self {
        RootFamily { label: label.into(), generators }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PontryaginSymbol {
    pub name: String,
    pub degree: u32,
    pub expansion: GradedPoly,
}

/// Polynomial in Pontryagin symbols `p_i(F)` and any generators outside the converted families.
#[derive(Debug, Clone, PartialEq)]
pub struct PontryaginPoly {
    ring: Arc<RingSpec>,
    symbols: Vec<PontryaginSymbol>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

type Local = BTreeMap<Vec<u8>, Rational>;

fn local_mul(a: &Local, b: &Local) -> Local {
    let mut out = Local::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u8> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let e = out.entry(m).or_insert_with(Rational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `e_i` of the squared roots, as a local polynomial in `m` variables.
fn elementary_of_squares(m: usize, i: usize) -> Local {
    let mut out = Local::new();
    // all i-subsets
    let mut idx: Vec<usize> = (0..i).collect();
    if i == 0 {
        out.insert(vec![0; m], Rational::from_integer(1.into()));
        return out;
    }
    loop {
        let mut e = vec![0u8; m];
        for &j in &idx {
            e[j] = 2;
        }
        out.insert(e, Rational::from_integer(1.into()));
        // next combination
        let mut k = i;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < m - i + k {
                idx[k] += 1;
                for t in k + 1..i {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

fn local_product(m: usize, exps: &[u32], cache: &[Local]) -> Local {
    let mut acc: Local = [(vec![0u8; m], Rational::from_integer(1.into()))].into_iter().collect();
    for (i, &d) in exps.iter().enumerate() {
        for _ in 0..d {
            acc = local_mul(&acc, &cache[i]);
        }
    }
    acc
}

/// Express a local polynomial symmetric in the squared roots via `p_1..p_m`.
fn convert_local(mut poly: Local, m: usize, label: &str, cache: &[Local]) -> Result<Vec<(Vec<u32>, Rational)>> {
    let mut out = Vec::new();
    while let Some((lead, c)) = poly.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
        if lead.iter().any(|e| e % 2 != 0) {
            return Err(Error::Symmetry(format!("odd power of a root of {label}")));
        }
        let alpha: Vec<u32> = lead.iter().map(|&e| e as u32 / 2).collect();
        if alpha.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Symmetry(format!("not invariant under permutations of the roots of {label}")));
        }
        let d: Vec<u32> = (0..m).map(|i| alpha[i] - alpha.get(i + 1).copied().unwrap_or(0)).collect();
        let expansion = local_product(m, &d, cache);
        for (mono, coef) in expansion {
            let e = poly.entry(mono).or_insert_with(Rational::zero);
            *e -= &c * coef;
        }
        poly.retain(|_, v| !v.is_zero());
        out.push((d, c));
    }
    Ok(out)
}

/// Rewrite `p` in terms of the Pontryagin classes of each listed family.
pub fn to_pontryagin(p: &GradedPoly, families: &[RootFamily]) -> Result<PontryaginPoly> {
    let ring = p.ring().clone();
    let mut used = vec![false; ring.len()];
    for f in families {
        for &g in &f.generators {
            if g >= ring.len() || used[g] {
                return usage(format!("family {} has an invalid or repeated generator", f.label));
            }
            if ring.generators()[g].degree != 2 {
                return usage("root families must consist of degree-2 generators");
            }
            used[g] = true;
        }
    }

    let mut symbols = Vec::new();
    // Working terms: (symbol exponents so far, full generator exponents)
    let mut work: Vec<(Vec<u32>, Vec<u8>, Rational)> =
        p.terms().map(|(m, c)| (Vec::new(), m.exponents().to_vec(), c.clone())).collect();

    for f in families {
        let m = f.generators.len();
        let cache: Vec<Local> = (1..=m).map(|i| elementary_of_squares(m, i)).collect();
        for i in 1..=m {
            let local = &cache[i - 1];
            let expansion = GradedPoly::from_terms(
                &ring,
                local.iter().map(|(e, c)| {
                    let mut full = vec![0u8; ring.len()];
                    for (j, &g) in f.generators.iter().enumerate() {
                        full[g] = e[j];
                    }
                    (Monomial::from_exponents(full), c.clone())
                }),
            );
            symbols.push(PontryaginSymbol { name: format!("p{}({})", i, f.label), degree: 4 * i as u32, expansion });
        }
        let mut groups: BTreeMap<(Vec<u32>, Vec<u8>), Local> = BTreeMap::new();
        for (sym, gens, c) in work {
            let mut outer = gens.clone();
            let local: Vec<u8> = f.generators.iter().map(|&g| gens[g]).collect();
            for &g in &f.generators {
                outer[g] = 0;
            }
            *groups.entry((sym, outer)).or_default().entry(local).or_insert_with(Rational::zero) += c;
        }
        work = Vec::new();
        for ((sym, outer), mut local) in groups {
            local.retain(|_, c| !c.is_zero());
            for (d, c) in convert_local(local, m, &f.label, &cache)? {
                let mut s = sym.clone();
                s.extend(d);
                work.push((s, outer.clone(), c));
            }
        }
    }

    let leftovers: Vec<usize> = (0..ring.len()).filter(|&g| !used[g]).collect();
    for &g in &leftovers {
        let gen = &ring.generators()[g];
        symbols.push(PontryaginSymbol {
            name: gen.name.clone(),
            degree: gen.degree,
            expansion: GradedPoly::generator(&ring, g),
        });
    }
    let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for (mut sym, gens, c) in work {
        sym.extend(leftovers.iter().map(|&g| gens[g] as u32));
        *terms.entry(sym).or_insert_with(Rational::zero) += c;
    }
    terms.retain(|_, c| !c.is_zero());

    let out = PontryaginPoly { ring, symbols, terms };
    if &out.expand() != p {
        return Err(Error::Symmetry("back-substitution does not reproduce the input".into()));
    }
    Ok(out)
}

/// Newton's identities: `e_1..e_n` from power sums `s_1..s_n` (`s_i = sum x^i`).
pub fn elementary_from_power_sums(power_sums: &[Rational]) -> Vec<Rational> {
    // k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} s_i
    let mut e = vec![Rational::from_integer(1.into())];
    for k in 1..=power_sums.len() {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &power_sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / Rational::from_integer((k as i64).into()));
    }
    e.remove(0);
    e
}

impl PontryaginPoly {
    pub fn symbols(&self) -> &[PontryaginSymbol] {
        &self.symbols
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Rename a symbol (e.g. an Euler class generator) for display.
    pub fn rename_symbol(&mut self, from: &str, to: &str) {
        for s in &mut self.symbols {
            if s.name == from {
                s.name = to.to_string();
            }
        }
    }

    /// Expand back to a polynomial in the roots.
    pub fn expand(&self) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ring);
        for (exps, c) in &self.terms {
            let mut t = GradedPoly::constant(&self.ring, c.clone());
            for (s, &e) in self.symbols.iter().zip(exps) {
                if e > 0 {
                    t = t.mul(&s.expansion.pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }
}

impl fmt::Display for PontryaginPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let deg: u32 = exps.iter().zip(&self.symbols).map(|(&e, s)| e * s.degree).sum();
                let mono: Vec<String> = exps
                    .iter()
                    .zip(&self.symbols)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, s)| if e == 1 { s.name.clone() } else { format!("{}^{}", s.name, e) })
                    .collect();
                (deg, mono.join("*"), c)
            })
            .collect();
        write_sum(f, terms)
    }
}
