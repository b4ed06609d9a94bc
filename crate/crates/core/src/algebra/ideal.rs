//! Normal forms modulo a single relation `g^2 = R`.

use num_traits::One;

use super::ring::{GradedPoly, Monomial};
use crate::error::{usage, Result};

/// Find the generator `g` such that `relation = g^2 - R` with `g` absent from `R`.
fn leading_generator(relation: &GradedPoly) -> Option<usize> {
    let n = relation.ring().len();
    (0..n).find(|&g| {
        let mut square = vec![0u8; n];
        square[g] = 2;
        let square = Monomial::from_exponents(square);
        relation.coefficient(&square).is_one()
            && relation.terms().filter(|(m, _)| m.exponents()[g] > 0).count() == 1
    })
}

/// Reduce `p` modulo the ideal generated by `relation`.
///
/// The relation must contain `g^2` with coefficient 1 for some generator `g`
/// that occurs nowhere else in it (the first such generator is used). The
/// result has no monomial divisible by `g^2`, and `p - result` lies in the ideal.
pub fn ideal_reduce(p: &GradedPoly, relation: &GradedPoly) -> Result<GradedPoly> {
    if !same_ring(p, relation) {
        return usage("polynomial and relation live in different rings");
    }
    let Some(g) = leading_generator(relation) else {
        return usage("relation must have the form g^2 - R with g absent from R");
    };
    let ring = p.ring().clone();
    let g_sq = GradedPoly::generator(&ring, g).pow(2);
    let rest = g_sq.sub(relation);
    let mut rest_powers = vec![GradedPoly::one(&ring)];
    let mut out = GradedPoly::zero(&ring);
    for (m, c) in p.terms() {
        let e = m.exponents()[g] as usize;
        let mut base = m.exponents().to_vec();
        base[g] = (e % 2) as u8;
        while rest_powers.len() <= e / 2 {
            let next = rest_powers.last().unwrap().mul(&rest);
            rest_powers.push(next);
        }
        let base = GradedPoly::from_terms(&ring, [(Monomial::from_exponents(base), c.clone())]);
        out = out.add(&base.mul(&rest_powers[e / 2]));
    }
    Ok(out)
}

fn same_ring(a: &GradedPoly, b: &GradedPoly) -> bool {
    std::sync::Arc::ptr_eq(a.ring(), b.ring()) || a.ring() == b.ring()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::RingSpec;

    fn setup() -> (std::sync::Arc<RingSpec>, GradedPoly, GradedPoly) {
        let ring = RingSpec::degree_two(&["w1", "w2", "v1"], 8).unwrap();
        let w1 = GradedPoly::generator(&ring, 0);
        let w2 = GradedPoly::generator(&ring, 1);
        let v1 = GradedPoly::generator(&ring, 2);
        let rel = w1.pow(2).add(&w2.pow(2)).sub(&v1.pow(2));
        let rest = v1.pow(2).sub(&w2.pow(2));
        (ring, rel, rest)
    }

    #[test]
    fn relation_reduces_to_zero() {
        let (_, rel, _) = setup();
        assert!(ideal_reduce(&rel, &rel).unwrap().is_zero());
    }

    #[test]
    fn one_and_two_rewrite_steps() {
        let (ring, rel, rest) = setup();
        let w1 = GradedPoly::generator(&ring, 0);
        assert_eq!(ideal_reduce(&w1.pow(2), &rel).unwrap(), rest);
        assert_eq!(ideal_reduce(&w1.pow(4), &rel).unwrap(), rest.pow(2));
        assert_eq!(ideal_reduce(&w1.pow(3), &rel).unwrap(), w1.mul(&rest));
    }

    #[test]
    fn malformed_relation() {
        let (ring, _, _) = setup();
        let w1 = GradedPoly::generator(&ring, 0);
        let w2 = GradedPoly::generator(&ring, 1);
        let bad = w1.mul(&w2);
        assert!(ideal_reduce(&w1, &bad).is_err());
        let bad = w1.pow(2).add(&w1.mul(&w2));
        assert!(ideal_reduce(&w1, &bad).is_err());
    }
}
