//! Noncommutative polynomials in ordered generator words.
//!
//! A [`Word`] is a finite product of generators (the empty word is the
//! identity); an [`NCPolynomial`] maps words to exact [`Coefficient`]s.
//! Multiplication concatenates words; no commutation relations are
//! applied here. Rewriting into normal form lives in [`super::rewrite`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::scalar::Coefficient;

/// Whether a generator is a position (`Q`) or momentum (`P`) operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    Q,
    P,
}

impl GenKind {
    pub fn letter(self) -> char {
        match self {
            GenKind::Q => 'Q',
            GenKind::P => 'P',
        }
    }
}

/// A single generator `P_i` or `Q_i`, `i >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GenKind,
    pub index: u32,
}

impl Generator {
    pub fn p(index: u32) -> Self {
        Generator { kind: GenKind::P, index }
    }

    pub fn q(index: u32) -> Self {
        Generator { kind: GenKind::Q, index }
    }

    /// Parses names of the form `P1`, `Q12`. Returns `None` for anything else.
    pub fn parse(name: &str) -> Option<Self> {
        let mut chars = name.chars();
        let kind = match chars.next()? {
            'P' => GenKind::P,
            'Q' => GenKind::Q,
            _ => return None,
        };
        let rest = chars.as_str();
        if rest.is_empty() || rest.starts_with('0') {
            return None;
        }
        rest.parse::<u32>().ok().map(|index| Generator { kind, index })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.index)
    }
}

/// An ordered product of generators. Empty means the identity operator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: Generator) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

/// A noncommutative polynomial with exact coefficients. Zero coefficients
/// are never stored; the zero polynomial is the empty term map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, Coefficient>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        NCPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        NCPolynomial::scalar(Coefficient::one())
    }

    pub fn scalar(c: Coefficient) -> Self {
        let mut p = NCPolynomial::zero();
        p.add_term(Word::identity(), c);
        p
    }

    pub fn generator(g: Generator) -> Self {
        let mut p = NCPolynomial::zero();
        p.add_term(Word::single(g), Coefficient::one());
        p
    }

    pub fn word(w: Word) -> Self {
        let mut p = NCPolynomial::zero();
        p.add_term(w, Coefficient::one());
        p
    }

    /// Adds `c · w` into the polynomial, keeping the canonical form.
    pub fn add_term(&mut self, w: Word, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        NCPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = NCPolynomial::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = NCPolynomial::zero();
        for (w, cw) in &self.terms {
            out.add_term(w.clone(), cw.mul(c));
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = NCPolynomial::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when only the identity word carries a coefficient.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|w| w.is_empty())
    }

    /// Degree = length of the longest stored word; zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coefficient)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_of(&self, w: &Word) -> Coefficient {
        self.terms.get(w).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// The constant (identity-word) part.
    pub fn scalar_part(&self) -> Coefficient {
        self.coefficient_of(&Word::identity())
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().copied())
            .collect()
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let term = if w.is_empty() {
                c.to_string()
            } else if c.is_one() {
                w.to_string()
            } else if c.neg().is_one() {
                format!("-{w}")
            } else {
                format!("{c}*{w}")
            };
            if idx == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        f.write_str(&out)
    }
}

impl Serialize for NCPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
