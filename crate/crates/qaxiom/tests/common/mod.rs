//! Shared oracles and random-input generators for the integration tests.
//!
//! Everything here deliberately avoids the production code paths it is
//! used to check: normal ordering is re-derived by a recursive
//! last-inversion expansion, substitution by direct word replacement, and
//! the mixed commutator by a symbolic product rule.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qaxiom::frontend::Ast;
use qaxiom::symalg::{
    Algebra, Coefficient, DerivativeMode, GaussianRational, GenKind, Generator, Monomial,
    NCPolynomial, Substitution, Word,
};

/// Brute-force normal ordering: recursively applies one adjacent swap per
/// step, always at the LAST out-of-order position (the production engine
/// works front-to-front with a worklist).
pub fn oracle_normal_order(p: &NCPolynomial, a: &Algebra) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    for (w, c) in p.terms() {
        out = out.add(&oracle_word(w, a).scale(c));
    }
    out
}

fn oracle_word(w: &Word, a: &Algebra) -> NCPolynomial {
    let rank = |g: Generator| a.rank_of(g).expect("generator in algebra");
    let inversion = (0..w.0.len().saturating_sub(1))
        .rev()
        .find(|&i| rank(w.0[i]) > rank(w.0[i + 1]));
    match inversion {
        None => NCPolynomial::word(w.clone()),
        Some(i) => {
            let mut swapped = w.clone();
            swapped.0.swap(i, i + 1);
            let mut acc = oracle_word(&swapped, a);
            let bracket = a.bracket(w.0[i], w.0[i + 1]);
            if !bracket.is_zero() {
                let mut shortened = w.clone();
                shortened.0.drain(i..i + 2);
                acc = acc.add(&oracle_word(&shortened, a).scale(&bracket));
            }
            acc
        }
    }
}

/// Substitution by direct word replacement followed by the oracle
/// ordering; independent of `qaxiom::symalg::substitute`.
pub fn oracle_substitute(p: &NCPolynomial, s: &Substitution, a: &Algebra) -> NCPolynomial {
    let mut replaced = NCPolynomial::zero();
    for (w, c) in p.terms() {
        let mut prod = NCPolynomial::one();
        for g in &w.0 {
            prod = prod.mul(&s.image(*g));
        }
        replaced = replaced.add(&prod.scale(c));
    }
    oracle_normal_order(&replaced, a)
}

/// First-order differential operator `zeroth + c1·∂1 + c2·∂2` with
/// polynomial coefficients, used as the product-rule oracle for the mixed
/// commutator.
pub struct FirstOrderOp {
    pub zeroth: NCPolynomial,
    pub d1: NCPolynomial,
    pub d2: NCPolynomial,
}

/// Expands `D̂1(f2·) - D̂2(f1·)` by the product rule, computing the
/// derivatives of the linear functions symbolically (by coefficient
/// extraction, not via the closed-form scalar).
pub fn oracle_mixed(f1: &NCPolynomial, f2: &NCPolynomial, mode: DerivativeMode) -> FirstOrderOp {
    let kind = match mode {
        DerivativeMode::Position => GenKind::Q,
        DerivativeMode::Momentum => GenKind::P,
    };
    let prefactor = mode.prefactor();
    let derivative = |f: &NCPolynomial, axis: u32| -> Coefficient {
        f.coefficient_of(&Word(vec![Generator { kind, index: axis }]))
    };
    // D(f·psi) = pre·(∂f)·psi + f·D(psi), applied to the difference.
    let zeroth = NCPolynomial::scalar(
        prefactor.mul(&derivative(f2, 1).sub(&derivative(f1, 2))),
    );
    FirstOrderOp {
        zeroth,
        d1: f2.scale(&prefactor),
        d2: f1.scale(&prefactor).neg(),
    }
}

/// The commutator table the truncated-ladder representation actually
/// realizes: canonical cross pairs plus `[P1, P2] = i·hbar·e·B` and
/// `[Q1, Q2] = i·hbar·(e·B)^-1`.
pub fn realized_ladder_algebra() -> Algebra {
    let mut a = Algebra::new(2, 1).expect("valid");
    let hbar = Coefficient::symbol("hbar");
    let minus_i_hbar = Coefficient::minus_i().mul(&hbar);
    let eb = Coefficient::symbol("e").mul(&Coefficient::symbol("B"));
    for m in 1..=2 {
        for n in 1..=2 {
            let c = if m == n {
                minus_i_hbar.clone()
            } else {
                Coefficient::zero()
            };
            a.set_commutator(Generator::p(m), Generator::q(n), c)
                .expect("fresh");
        }
    }
    a.set_commutator(
        Generator::p(1),
        Generator::p(2),
        Coefficient::i().mul(&hbar).mul(&eb),
    )
    .expect("fresh");
    a.set_commutator(
        Generator::q(1),
        Generator::q(2),
        Coefficient::i()
            .mul(&hbar)
            .mul(&eb.inverse().expect("invertible")),
    )
    .expect("fresh");
    a
}

/// All words over the 2k generators with length in `0..=max_len`.
pub fn all_words(pair_count: u32, max_len: usize) -> Vec<Word> {
    let gens: Vec<Generator> = (1..=pair_count)
        .flat_map(|i| [Generator::q(i), Generator::p(i)])
        .collect();
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let mut v = w.clone();
                v.0.push(*g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.random_range(-4i64..=4);
    let den = rng.random_range(1i64..=3);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_coefficient(rng: &mut ChaCha8Rng) -> Coefficient {
    let gauss = GaussianRational::new(random_rational(rng), random_rational(rng));
    let mono = match rng.random_range(0..4) {
        0 => Monomial::one(),
        1 => Monomial::from_exponents(&[("hbar", 1)]),
        2 => Monomial::from_exponents(&[("e", 1), ("B", 1)]),
        _ => Monomial::from_exponents(&[("hbar", rng.random_range(-1i64..=1))]),
    };
    Coefficient::from_parts(gauss, mono)
}

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| {
                let index = rng.random_range(1..=2);
                if rng.random_bool(0.5) {
                    Generator::p(index)
                } else {
                    Generator::q(index)
                }
            })
            .collect(),
    )
}

pub fn random_polynomial(rng: &mut ChaCha8Rng, max_terms: usize, max_len: usize) -> NCPolynomial {
    let terms = rng.random_range(1..=max_terms);
    let mut p = NCPolynomial::zero();
    for _ in 0..terms {
        p.add_term(random_word(rng, max_len), random_coefficient(rng));
    }
    p
}

/// A random algebra with central right-hand sides over two pairs.
pub fn random_central_algebra(rng: &mut ChaCha8Rng) -> Algebra {
    let mut a = Algebra::new(2, if rng.random_bool(0.5) { 1 } else { -1 }).expect("valid");
    for (g, h) in a.oriented_pairs() {
        let coeff = if rng.random_bool(0.2) {
            Coefficient::zero()
        } else {
            random_coefficient(rng)
        };
        a.set_commutator(g, h, coeff).expect("fresh pair");
    }
    a
}

/// Random ASTs with a depth budget. Negative exponents only appear over
/// scalar-only subtrees so every generated tree lowers successfully.
pub fn random_ast(rng: &mut ChaCha8Rng, depth: usize, scalar_only: bool) -> Ast {
    let leaf = depth == 0;
    let choice = if leaf {
        rng.random_range(0..4)
    } else {
        rng.random_range(0..9)
    };
    match choice {
        0 => Ast::Rational(BigRational::new(
            BigInt::from(rng.random_range(-6i64..=6)),
            BigInt::from(rng.random_range(1i64..=4)),
        )),
        1 => Ast::ImaginaryUnit,
        2 => Ast::ConstRef(
            ["hbar", "e", "B", "M", "alphadot", "eps12"][rng.random_range(0..6)].to_string(),
        ),
        3 => {
            if scalar_only {
                Ast::ConstRef("hbar".to_string())
            } else {
                Ast::GeneratorRef(if rng.random_bool(0.5) {
                    Generator::p(rng.random_range(1..=2))
                } else {
                    Generator::q(rng.random_range(1..=2))
                })
            }
        }
        4 => Ast::Sum(
            (0..rng.random_range(2..=3))
                .map(|_| random_ast(rng, depth - 1, scalar_only))
                .collect(),
        ),
        5 => Ast::Product(
            (0..rng.random_range(2..=3))
                .map(|_| random_ast(rng, depth - 1, scalar_only))
                .collect(),
        ),
        6 => {
            let negative = rng.random_bool(0.4);
            if negative {
                // Only single-term scalars are invertible, so negative
                // exponents get a product of nonzero atoms as their base.
                Ast::Power(Box::new(random_invertible(rng)), -(rng.random_range(1i64..=2)))
            } else {
                let base = random_ast(rng, depth - 1, scalar_only);
                Ast::Power(Box::new(base), rng.random_range(0i64..=3))
            }
        }
        7 => {
            if scalar_only {
                Ast::Negation(Box::new(random_ast(rng, depth - 1, true)))
            } else {
                Ast::Bracket(
                    Box::new(random_ast(rng, depth - 1, false)),
                    Box::new(random_ast(rng, depth - 1, false)),
                )
            }
        }
        _ => Ast::Negation(Box::new(random_ast(rng, depth - 1, scalar_only))),
    }
}

pub fn random_invertible(rng: &mut ChaCha8Rng) -> Ast {
    let atom = |rng: &mut ChaCha8Rng| match rng.random_range(0..3) {
        0 => Ast::Rational(BigRational::new(
            BigInt::from(*[-3i64, -2, -1, 1, 2, 3].get(rng.random_range(0..6)).unwrap()),
            BigInt::from(rng.random_range(1i64..=3)),
        )),
        1 => Ast::ImaginaryUnit,
        _ => Ast::ConstRef(["hbar", "e", "B", "M"][rng.random_range(0..4)].to_string()),
    };
    if rng.random_bool(0.5) {
        atom(rng)
    } else {
        Ast::Product(vec![atom(rng), atom(rng)])
    }
}

