//! Consistency audits over commutator tables: the Jacobi identity, the
//! substitution/equivalence check, and dimensional homogeneity.

use serde::Serialize;

use crate::error::{Error, Result};

use super::algebra::{Algebra, DimensionMap, PairClass, Substitution};
use super::poly::{Generator, NCPolynomial};
use super::rewrite::{commutator, normal_order, substitute};
use super::scalar::Coefficient;

/// Result of evaluating the Jacobi identity on every generator triple.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub nonzero_residuals: Vec<JacobiResidual>,
    pub all_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JacobiResidual {
    pub triple: [String; 3],
    pub residual: NCPolynomial,
}

/// Computes `[g,[h,l]] + [h,[l,g]] + [l,[g,h]]` for every distinct
/// generator triple and reports the ones that fail to vanish. The residual
/// is evaluated by actual normal ordering, not assumed from centrality.
pub fn jacobi_check(a: &Algebra) -> JacobiReport {
    let gens = a.generators();
    let mut nonzero = Vec::new();
    let mut checked = 0;
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            for l in (j + 1)..gens.len() {
                let (g, h, m) = (gens[i], gens[j], gens[l]);
                let residual = jacobi_residual(a, g, h, m);
                checked += 1;
                if !residual.is_zero() {
                    nonzero.push(JacobiResidual {
                        triple: [g.to_string(), h.to_string(), m.to_string()],
                        residual,
                    });
                }
            }
        }
    }
    JacobiReport {
        triples_checked: checked,
        all_zero: nonzero.is_empty(),
        nonzero_residuals: nonzero,
    }
}

fn jacobi_residual(a: &Algebra, g: Generator, h: Generator, l: Generator) -> NCPolynomial {
    let pg = NCPolynomial::generator(g);
    let ph = NCPolynomial::generator(h);
    let pl = NCPolynomial::generator(l);
    let term = |x: &NCPolynomial, y: &NCPolynomial, z: &NCPolynomial| {
        let inner = commutator(y, z, a).expect("generators belong to the algebra");
        commutator(x, &inner, a).expect("generators belong to the algebra")
    };
    let sum = term(&pg, &ph, &pl)
        .add(&term(&ph, &pl, &pg))
        .add(&term(&pl, &pg, &ph));
    normal_order(&sum, a).expect("generators belong to the algebra")
}

/// Per-pair outcome of re-deriving a declared commutator through a
/// substitution.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalencePair {
    pub pair: String,
    pub class: PairClass,
    pub declared: Coefficient,
    pub derived: NCPolynomial,
    pub residual: NCPolynomial,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalenceReport {
    pub substitution: String,
    pub pairs: Vec<EquivalencePair>,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "CONSISTENT")]
    Consistent,
    #[serde(rename = "INCONSISTENT")]
    Inconsistent,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Inconsistent => "INCONSISTENT",
        })
    }
}

/// For every pair of the algebra, recomputes the bracket after applying
/// `s` and compares with the declared right-hand side. The verdict is
/// CONSISTENT exactly when every residual vanishes.
pub fn equivalence_check(a: &Algebra, s: &Substitution) -> Result<EquivalenceReport> {
    let mut pairs = Vec::new();
    for (g, h) in a.oriented_pairs() {
        let declared = a.bracket(g, h);
        let formal = NCPolynomial::generator(g)
            .mul(&NCPolynomial::generator(h))
            .sub(&NCPolynomial::generator(h).mul(&NCPolynomial::generator(g)));
        let derived = substitute(&formal, s, a)?;
        let residual = derived.sub(&NCPolynomial::scalar(declared.clone()));
        pairs.push(EquivalencePair {
            pair: format!("[{g}, {h}]"),
            class: PairClass::of(g, h),
            declared,
            matches: residual.is_zero(),
            derived,
            residual,
        });
    }
    let verdict = if pairs.iter().all(|p| p.matches) {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    Ok(EquivalenceReport {
        substitution: s.to_string(),
        pairs,
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DimensionEntry {
    pub pair: String,
    pub lhs_exponent: i64,
    /// One exponent per coefficient term; empty for a zero right-hand side.
    pub rhs_exponents: Vec<i64>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DimensionReport {
    pub dimensions: DimensionMap,
    pub entries: Vec<DimensionEntry>,
    pub all_pass: bool,
}

/// Checks `dim(g) + dim(h) = dim(c)` for each table pair in geometric
/// units, where the dimension of a coefficient term is the exponent-
/// weighted sum of its constants' dimensions. A zero right-hand side is
/// vacuously homogeneous.
pub fn dimension_check(a: &Algebra, d: &DimensionMap) -> Result<DimensionReport> {
    // The map must be total over the symbols of the algebra.
    let mut missing = Vec::new();
    for g in a.generators() {
        if d.generator_dim(*g).is_none() && !missing.contains(&g.kind.letter().to_string()) {
            missing.push(g.kind.letter().to_string());
        }
    }
    for (g, h) in a.oriented_pairs() {
        for c in a.bracket(g, h).symbols() {
            if d.const_dim(c.name()).is_none() && !missing.contains(&c.name().to_string()) {
                missing.push(c.name().to_string());
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingDimension(missing));
    }

    let mut entries = Vec::new();
    for (g, h) in a.oriented_pairs() {
        let lhs = d.generator_dim(g).unwrap() + d.generator_dim(h).unwrap();
        let coeff = a.bracket(g, h);
        let rhs: Vec<i64> = coeff
            .terms()
            .map(|(mono, _)| {
                mono.exponents()
                    .map(|(c, e)| e * d.const_dim(c.name()).unwrap())
                    .sum()
            })
            .collect();
        let pass = rhs.iter().all(|r| *r == lhs);
        entries.push(DimensionEntry {
            pair: format!("[{g}, {h}]"),
            lhs_exponent: lhs,
            rhs_exponents: rhs,
            pass,
        });
    }
    Ok(DimensionReport {
        dimensions: d.clone(),
        all_pass: entries.iter().all(|e| e.pass),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::poly::Generator;

    #[test]
    fn jacobi_zero_for_both_presets() {
        for a in [Algebra::heisenberg2(-1), Algebra::magnetic2(-1), Algebra::magnetic2(1)] {
            let report = jacobi_check(&a);
            assert_eq!(report.triples_checked, 4);
            assert!(report.all_zero, "nonzero residuals: {:?}", report.nonzero_residuals);
        }
    }

    #[test]
    fn equivalence_identity_substitution_consistent() {
        for a in [Algebra::heisenberg2(-1), Algebra::magnetic2(-1)] {
            let report = equivalence_check(&a, &Substitution::identity()).unwrap();
            assert_eq!(report.verdict, Verdict::Consistent);
            assert_eq!(report.pairs.len(), 6);
        }
    }

    #[test]
    fn equivalence_momentum_rule_flags_sign_mismatch() {
        // With P_m -> e*B*eps_mn*Q_n every derived diagonal [P,Q] bracket
        // and the [P,P] bracket come out as the negatives of the declared
        // table entries, so the claimed equivalence fails.
        let a = Algebra::magnetic2(-1);
        let s = Substitution::momentum_to_position(&a).unwrap();
        let report = equivalence_check(&a, &s).unwrap();
        assert_eq!(report.verdict, Verdict::Inconsistent);
        for p in &report.pairs {
            match p.pair.as_str() {
                "[P1, Q1]" | "[P2, Q2]" | "[P1, P2]" => {
                    assert!(!p.matches, "{} unexpectedly matched", p.pair);
                    // derived = -declared.
                    assert_eq!(
                        p.derived,
                        NCPolynomial::scalar(p.declared.neg()),
                        "derived value of {} is not the negated declaration",
                        p.pair
                    );
                }
                _ => assert!(p.matches, "{} unexpectedly failed", p.pair),
            }
        }
    }

    #[test]
    fn equivalence_holds_for_flipped_qq_sign() {
        // Flip the [Q1, Q2] coefficient of the magnetic table; the same
        // substitution then reproduces every declared bracket.
        let a = Algebra::magnetic2(-1);
        let mut flipped = Algebra::new(2, -1).unwrap();
        for (g, h) in a.oriented_pairs() {
            let c = a.bracket(g, h);
            let c = if g == Generator::q(1) && h == Generator::q(2) {
                c.neg()
            } else {
                c
            };
            flipped.set_commutator(g, h, c).unwrap();
        }
        let s = Substitution::momentum_to_position(&flipped).unwrap();
        let report = equivalence_check(&flipped, &s).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent);
    }

    #[test]
    fn dimension_check_presets_pass() {
        let d = DimensionMap::standard();
        for a in [Algebra::heisenberg2(-1), Algebra::magnetic2(-1)] {
            let report = dimension_check(&a, &d).unwrap();
            assert!(report.all_pass);
            assert_eq!(report.entries.len(), 6);
        }
    }

    #[test]
    fn dimension_check_flags_inhomogeneous_entry() {
        // [P1, Q1] = -i*B has dimension L^0 on the left, L^-2 on the right.
        let mut a = Algebra::new(2, -1).unwrap();
        a.set_commutator(
            Generator::p(1),
            Generator::q(1),
            Coefficient::minus_i().mul(&Coefficient::symbol("B")),
        )
        .unwrap();
        let report = dimension_check(&a, &DimensionMap::standard()).unwrap();
        assert!(!report.all_pass);
        let entry = report
            .entries
            .iter()
            .find(|e| e.pair == "[P1, Q1]")
            .unwrap();
        assert_eq!(entry.lhs_exponent, 0);
        assert_eq!(entry.rhs_exponents, vec![-2]);
        assert!(!entry.pass);
    }

    #[test]
    fn dimension_check_reports_missing_symbols() {
        let mut a = Algebra::new(2, -1).unwrap();
        a.declare_const("lambda").unwrap();
        a.set_commutator(
            Generator::p(1),
            Generator::q(1),
            Coefficient::symbol("lambda"),
        )
        .unwrap();
        let err = dimension_check(&a, &DimensionMap::standard());
        match err {
            Err(Error::MissingDimension(names)) => assert_eq!(names, vec!["lambda".to_string()]),
            other => panic!("expected MissingDimension, got {other:?}"),
        }
    }

    #[test]
    fn empty_table_is_vacuously_homogeneous() {
        let a = Algebra::new(1, -1).unwrap();
        let report = dimension_check(&a, &DimensionMap::standard()).unwrap();
        assert!(report.all_pass);
        // k = 1 still has the single [P1, Q1] pair to look at, with zero RHS.
        assert_eq!(report.entries.len(), 1);
        assert!(report.entries[0].rhs_exponents.is_empty());
    }
}
