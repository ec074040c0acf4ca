//! Commutator tables with central right-hand sides.
//!
//! An [`Algebra`] over `2k` generators declares `[g, h] = c·1` for oriented
//! generator pairs, together with a total generator order used for normal
//! ordering and an `ε₁₂` sign convention. Antisymmetry is implicit: querying
//! a pair in the reversed orientation negates the stored coefficient, and
//! `[g, g] = 0` always. Because the table value type is a scalar
//! [`Coefficient`], non-central right-hand sides are unrepresentable here;
//! the text-format parser rejects them before construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

use super::poly::{GenKind, Generator, NCPolynomial, Word};
use super::scalar::{Coefficient, ScalarConst};

/// Classification of a generator pair, used by reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum PairClass {
    #[serde(rename = "PQ")]
    PQ,
    #[serde(rename = "PP")]
    PP,
    #[serde(rename = "QQ")]
    QQ,
}

impl PairClass {
    pub fn of(g: Generator, h: Generator) -> PairClass {
        match (g.kind, h.kind) {
            (GenKind::P, GenKind::P) => PairClass::PP,
            (GenKind::Q, GenKind::Q) => PairClass::QQ,
            _ => PairClass::PQ,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Algebra {
    pair_count: u32,
    order: Vec<Generator>,
    rank: BTreeMap<Generator, usize>,
    table: BTreeMap<(Generator, Generator), Coefficient>,
    epsilon12: i8,
    declared_consts: BTreeSet<ScalarConst>,
}

impl Algebra {
    /// An algebra over generators `Q1..Qk, P1..Pk` with an empty table
    /// (everything commutes until declared otherwise).
    pub fn new(pair_count: u32, epsilon12: i8) -> Result<Self> {
        if pair_count < 1 {
            return Err(Error::InvalidParam("pair count k must be >= 1".into()));
        }
        if epsilon12 != 1 && epsilon12 != -1 {
            return Err(Error::InvalidParam("epsilon12 must be +1 or -1".into()));
        }
        let mut order = Vec::new();
        for i in 1..=pair_count {
            order.push(Generator::q(i));
        }
        for i in 1..=pair_count {
            order.push(Generator::p(i));
        }
        Ok(Algebra::with_order(pair_count, order, epsilon12).expect("default order is valid"))
    }

    /// Same, with an explicit total generator order.
    pub fn with_order(pair_count: u32, order: Vec<Generator>, epsilon12: i8) -> Result<Self> {
        if epsilon12 != 1 && epsilon12 != -1 {
            return Err(Error::InvalidParam("epsilon12 must be +1 or -1".into()));
        }
        let expected: BTreeSet<Generator> = (1..=pair_count)
            .flat_map(|i| [Generator::q(i), Generator::p(i)])
            .collect();
        let given: BTreeSet<Generator> = order.iter().copied().collect();
        if given.len() != order.len() || given != expected {
            return Err(Error::InvalidParam(format!(
                "generator order must list each of the {} generators exactly once",
                2 * pair_count
            )));
        }
        let rank = order.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        Ok(Algebra {
            pair_count,
            order,
            rank,
            table: BTreeMap::new(),
            epsilon12,
            declared_consts: BTreeSet::new(),
        })
    }

    pub fn pair_count(&self) -> u32 {
        self.pair_count
    }

    pub fn epsilon12(&self) -> i8 {
        self.epsilon12
    }

    /// The antisymmetric symbol with the algebra's sign convention,
    /// extended to arbitrary index pairs (0 on the diagonal).
    pub fn epsilon(&self, m: u32, n: u32) -> i64 {
        if m == n {
            0
        } else if m < n {
            self.epsilon12 as i64
        } else {
            -(self.epsilon12 as i64)
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.order
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.rank.contains_key(&g)
    }

    pub fn rank_of(&self, g: Generator) -> Option<usize> {
        self.rank.get(&g).copied()
    }

    pub fn declare_const(&mut self, name: &str) -> Result<()> {
        let c = ScalarConst::new(name);
        if c.is_builtin() || name == "i" || name == "eps12" {
            return Err(Error::InvalidParam(format!(
                "constant name `{name}` is reserved"
            )));
        }
        self.declared_consts.insert(c);
        Ok(())
    }

    pub fn knows_const(&self, name: &str) -> bool {
        ScalarConst::new(name).is_builtin() || self.declared_consts.contains(&ScalarConst::new(name))
    }

    /// Declares `[g, h] = c·1` in the given orientation. The reversed
    /// orientation and `[g, g] = 0` are implied.
    pub fn set_commutator(&mut self, g: Generator, h: Generator, c: Coefficient) -> Result<()> {
        if !self.contains(g) {
            return Err(Error::UnknownGenerator(g.to_string()));
        }
        if !self.contains(h) {
            return Err(Error::UnknownGenerator(h.to_string()));
        }
        if g == h {
            return Err(Error::InvalidParam(format!(
                "[{g}, {g}] is identically zero and cannot be declared"
            )));
        }
        if self.table.contains_key(&(g, h)) || self.table.contains_key(&(h, g)) {
            return Err(Error::DuplicatePair {
                pair: format!("[{g}, {h}]"),
                line: 0,
            });
        }
        self.table.insert((g, h), c);
        Ok(())
    }

    /// `[g, h]` as a central coefficient. Undeclared pairs commute.
    pub fn bracket(&self, g: Generator, h: Generator) -> Coefficient {
        if g == h {
            return Coefficient::zero();
        }
        if let Some(c) = self.table.get(&(g, h)) {
            return c.clone();
        }
        if let Some(c) = self.table.get(&(h, g)) {
            return c.neg();
        }
        Coefficient::zero()
    }

    /// All unordered pairs in a canonical reporting orientation:
    /// `[P_i, Q_j]` for every i, j, then `[P_i, P_j]` and `[Q_i, Q_j]`
    /// with i < j.
    pub fn oriented_pairs(&self) -> Vec<(Generator, Generator)> {
        let k = self.pair_count;
        let mut pairs = Vec::new();
        for i in 1..=k {
            for j in 1..=k {
                pairs.push((Generator::p(i), Generator::q(j)));
            }
        }
        for i in 1..=k {
            for j in (i + 1)..=k {
                pairs.push((Generator::p(i), Generator::p(j)));
            }
        }
        for i in 1..=k {
            for j in (i + 1)..=k {
                pairs.push((Generator::q(i), Generator::q(j)));
            }
        }
        pairs
    }

    /// The canonical commutation relations for two degrees of freedom:
    /// `[P_m, Q_n] = -i·hbar·δ_mn` with commuting momenta and positions.
    pub fn heisenberg2(epsilon12: i8) -> Algebra {
        let mut a = Algebra::new(2, epsilon12).expect("valid");
        let minus_i_hbar = Coefficient::minus_i().mul(&Coefficient::symbol("hbar"));
        for m in 1..=2 {
            for n in 1..=2 {
                let c = if m == n {
                    minus_i_hbar.clone()
                } else {
                    Coefficient::zero()
                };
                a.set_commutator(Generator::p(m), Generator::q(n), c)
                    .expect("fresh pair");
            }
        }
        a.set_commutator(Generator::p(1), Generator::p(2), Coefficient::zero())
            .expect("fresh pair");
        a.set_commutator(Generator::q(1), Generator::q(2), Coefficient::zero())
            .expect("fresh pair");
        a
    }

    /// The magnetic algebra for two degrees of freedom:
    /// `[P_m, Q_n] = -i·hbar·δ_mn`,
    /// `[P_m, P_n] = i·ε_mn·hbar·e·B`,
    /// `[Q_m, Q_n] = -i·ε_mn·hbar·(e·B)^-1`.
    pub fn magnetic2(epsilon12: i8) -> Algebra {
        let mut a = Algebra::new(2, epsilon12).expect("valid");
        let hbar = Coefficient::symbol("hbar");
        let eb = Coefficient::symbol("e").mul(&Coefficient::symbol("B"));
        let eps = Coefficient::integer(epsilon12 as i64);
        let minus_i_hbar = Coefficient::minus_i().mul(&hbar);
        for m in 1..=2 {
            for n in 1..=2 {
                let c = if m == n {
                    minus_i_hbar.clone()
                } else {
                    Coefficient::zero()
                };
                a.set_commutator(Generator::p(m), Generator::q(n), c)
                    .expect("fresh pair");
            }
        }
        let pp = Coefficient::i().mul(&eps).mul(&hbar).mul(&eb);
        let qq = Coefficient::minus_i()
            .mul(&eps)
            .mul(&hbar)
            .mul(&eb.inverse().expect("e*B is invertible"));
        a.set_commutator(Generator::p(1), Generator::p(2), pp)
            .expect("fresh pair");
        a.set_commutator(Generator::q(1), Generator::q(2), qq)
            .expect("fresh pair");
        a
    }

    /// Resolves a built-in preset by name.
    pub fn preset(name: &str, epsilon12: i8) -> Option<Algebra> {
        match name {
            "heisenberg2" => Some(Algebra::heisenberg2(epsilon12)),
            "magnetic2" => Some(Algebra::magnetic2(epsilon12)),
            _ => None,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k = {}", self.pair_count)?;
        let names: Vec<String> = self.order.iter().map(|g| g.to_string()).collect();
        writeln!(f, "order = {}", names.join(" "))?;
        writeln!(f, "epsilon12 = {:+}", self.epsilon12)?;
        for ((g, h), c) in &self.table {
            writeln!(f, "comm {g} {h} = {c}")?;
        }
        Ok(())
    }
}

/// A simultaneous replacement of generators by degree-<=1 polynomials.
/// Generators without an explicit image map to themselves.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    map: BTreeMap<Generator, NCPolynomial>,
}

impl Substitution {
    pub fn identity() -> Self {
        Substitution::default()
    }

    pub fn set(&mut self, g: Generator, image: NCPolynomial) -> Result<()> {
        if image.degree() > 1 {
            return Err(Error::NonLinearSubstitution {
                generator: g.to_string(),
                degree: image.degree(),
            });
        }
        self.map.insert(g, image);
        Ok(())
    }

    pub fn image(&self, g: Generator) -> NCPolynomial {
        self.map
            .get(&g)
            .cloned()
            .unwrap_or_else(|| NCPolynomial::generator(g))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Generator, &NCPolynomial)> {
        self.map.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.map
            .iter()
            .all(|(g, p)| *p == NCPolynomial::generator(*g))
    }

    /// The momentum-as-gauge-potential rule `P_m -> e·B·ε_mn·Q_n` for a
    /// two-pair algebra, with the sign convention taken from `algebra`.
    pub fn momentum_to_position(algebra: &Algebra) -> Result<Substitution> {
        if algebra.pair_count() != 2 {
            return Err(Error::InvalidParam(
                "the P = e·A substitution preset is defined for k = 2".into(),
            ));
        }
        let eb = Coefficient::symbol("e").mul(&Coefficient::symbol("B"));
        let mut s = Substitution::identity();
        for m in 1..=2u32 {
            let mut image = NCPolynomial::zero();
            for n in 1..=2u32 {
                let eps = algebra.epsilon(m, n);
                if eps != 0 {
                    image = image.add(
                        &NCPolynomial::generator(Generator::q(n))
                            .scale(&eb.mul(&Coefficient::integer(eps))),
                    );
                }
            }
            s.set(Generator::p(m), image)?;
        }
        Ok(s)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return f.write_str("identity");
        }
        let parts: Vec<String> = self
            .map
            .iter()
            .map(|(g, p)| format!("{g} -> {p}"))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Length-dimension assignments in geometric units: a quantity with entry
/// `d` scales as `L^d`. Generator entries may be given per kind (`"Q"`,
/// `"P"`) or per generator (`"Q1"` overrides `"Q"`).
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct DimensionMap(pub BTreeMap<String, i64>);

impl DimensionMap {
    /// The geometric-units default: position `L`, momentum `L^-1`, action
    /// dimensionless, charge dimensionless, magnetic field `L^-2`, mass `L^-1`.
    pub fn standard() -> Self {
        let mut m = BTreeMap::new();
        m.insert("Q".to_string(), 1);
        m.insert("P".to_string(), -1);
        m.insert("hbar".to_string(), 0);
        m.insert("e".to_string(), 0);
        m.insert("B".to_string(), -2);
        m.insert("M".to_string(), -1);
        DimensionMap(m)
    }

    pub fn insert(&mut self, key: impl Into<String>, dim: i64) {
        self.0.insert(key.into(), dim);
    }

    pub fn generator_dim(&self, g: Generator) -> Option<i64> {
        self.0
            .get(&g.to_string())
            .or_else(|| self.0.get(&g.kind.letter().to_string()))
            .copied()
    }

    pub fn const_dim(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }
}

/// Convenience constructor for words used throughout the tests.
pub fn word(gens: &[Generator]) -> Word {
    Word(gens.to_vec())
}
