//! Normal ordering and the bracket operations built on it.
//!
//! The rewrite relation is `g·h = h·g + [g, h]` for adjacent generators out
//! of order. Because every right-hand side is central, each swap either
//! strictly reduces the number of inversions (same word length) or shortens
//! the word by two (the bracket term), so the rewriting terminates and the
//! normal form is unique for a fixed generator order.

use crate::error::{Error, Result};

use super::algebra::{Algebra, Substitution};
use super::poly::{Generator, NCPolynomial, Word};

fn check_generators(p: &NCPolynomial, a: &Algebra) -> Result<()> {
    for g in p.generators() {
        if !a.contains(g) {
            return Err(Error::UnknownGenerator(g.to_string()));
        }
    }
    Ok(())
}

fn rank(a: &Algebra, g: Generator) -> usize {
    a.rank_of(g).expect("generator checked against algebra")
}

/// Rewrites `p` so that every word is sorted (non-strictly) by the
/// algebra's generator order. The result is algebraically equal to `p`
/// modulo the relations `g·h = h·g + [g, h]`.
pub fn normal_order(p: &NCPolynomial, a: &Algebra) -> Result<NCPolynomial> {
    check_generators(p, a)?;
    let mut result = NCPolynomial::zero();
    let mut work: Vec<(Word, super::scalar::Coefficient)> =
        p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    while let Some((w, c)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        let inversion = w
            .0
            .windows(2)
            .position(|pair| rank(a, pair[0]) > rank(a, pair[1]));
        match inversion {
            None => result.add_term(w, c),
            Some(i) => {
                let mut swapped = w.clone();
                swapped.0.swap(i, i + 1);
                let bracket = a.bracket(w.0[i], w.0[i + 1]);
                work.push((swapped, c.clone()));
                if !bracket.is_zero() {
                    let mut shortened = w.clone();
                    shortened.0.drain(i..i + 2);
                    work.push((shortened, c.mul(&bracket)));
                }
            }
        }
    }
    Ok(result)
}

/// `[p, q] = normal_order(p·q - q·p)`. Bilinear and antisymmetric.
pub fn commutator(p: &NCPolynomial, q: &NCPolynomial, a: &Algebra) -> Result<NCPolynomial> {
    normal_order(&p.mul(q).sub(&q.mul(p)), a)
}

/// Replaces every generator occurrence by its image under `s`
/// simultaneously, then normal-orders under `a`.
pub fn substitute(p: &NCPolynomial, s: &Substitution, a: &Algebra) -> Result<NCPolynomial> {
    check_generators(p, a)?;
    let mut out = NCPolynomial::zero();
    for (w, c) in p.terms() {
        let mut prod = NCPolynomial::one();
        for g in &w.0 {
            prod = prod.mul(&s.image(*g));
        }
        out = out.add(&prod.scale(c));
    }
    normal_order(&out, a)
}
