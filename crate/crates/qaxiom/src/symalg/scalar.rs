//! Exact scalar arithmetic for the symbolic layer.
//!
//! Every scalar is a finite sum of terms `(a + b·i) · c₁^{e₁}·c₂^{e₂}·…`
//! with `a`, `b` rational and the `cⱼ` named positive real constants with
//! integer (possibly negative) exponents. Addition, multiplication and
//! negation are closed and exact, so equality of scalars is decidable
//! structural equality of canonical forms. No floating point enters this
//! module; numeric values for the constants are supplied only when a
//! coefficient is evaluated for a matrix representation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Built-in constant names, in display order.
pub const BUILTIN_CONSTS: [&str; 5] = ["hbar", "e", "B", "M", "alphadot"];

/// A named positive real symbolic constant such as `hbar` or `B`.
///
/// Built-in names sort before user-declared ones so that canonical forms
/// print in the conventional `hbar·e·B` order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarConst(String);

impl ScalarConst {
    pub fn new(name: impl Into<String>) -> Self {
        ScalarConst(name.into())
    }

    pub fn hbar() -> Self {
        ScalarConst::new("hbar")
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_builtin(&self) -> bool {
        BUILTIN_CONSTS.contains(&self.0.as_str())
    }

    fn sort_key(&self) -> (usize, &str) {
        match BUILTIN_CONSTS.iter().position(|b| *b == self.0) {
            Some(i) => (i, ""),
            None => (BUILTIN_CONSTS.len(), self.0.as_str()),
        }
    }
}

impl Ord for ScalarConst {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for ScalarConst {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ScalarConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An exact complex number `a + b·i` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        GaussianRational::new(r, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussianRational::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussianRational::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn neg(&self) -> Self {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussianRational::new(
            &self.re / &norm,
            -(&self.im / &norm),
        ))
    }

    pub fn pow(&self, exp: i64) -> Option<Self> {
        if exp < 0 {
            return self.inverse().map(|inv| inv.pow_unsigned((-exp) as u64));
        }
        Some(self.pow_unsigned(exp as u64))
    }

    fn pow_unsigned(&self, exp: u64) -> Self {
        let mut acc = GaussianRational::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&rational_str(&self.re));
        }
        if self.re.is_zero() {
            return if self.im.is_one() {
                f.write_str("i")
            } else if (-self.im.clone()).is_one() {
                f.write_str("-i")
            } else {
                write!(f, "{}*i", rational_str(&self.im))
            };
        }
        // Mixed real and imaginary part: parenthesize so the printed form
        // stays a single grammar factor.
        let im_part = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", rational_str(&self.im))
        };
        if let Some(rest) = im_part.strip_prefix('-') {
            write!(f, "({} - {})", rational_str(&self.re), rest)
        } else {
            write!(f, "({} + {})", rational_str(&self.re), im_part)
        }
    }
}

/// A product of symbolic constants with integer exponents, e.g. `hbar·(e·B)⁻¹`.
/// Zero exponents are never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<ScalarConst, i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        let mut m = BTreeMap::new();
        m.insert(ScalarConst::new(name), 1);
        Monomial(m)
    }

    pub fn from_exponents(pairs: &[(&str, i64)]) -> Self {
        let mut m = BTreeMap::new();
        for (name, exp) in pairs {
            if *exp != 0 {
                m.insert(ScalarConst::new(*name), *exp);
            }
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (c, e) in &other.0 {
            let entry = m.entry(c.clone()).or_insert(0);
            *entry += e;
            if *entry == 0 {
                m.remove(c);
            }
        }
        Monomial(m)
    }

    pub fn pow(&self, exp: i64) -> Self {
        Monomial(
            self.0
                .iter()
                .filter(|(_, e)| **e * exp != 0)
                .map(|(c, e)| (c.clone(), e * exp))
                .collect(),
        )
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&ScalarConst, i64)> {
        self.0.iter().map(|(c, e)| (c, *e))
    }

    pub fn eval(&self, params: &BTreeMap<String, f64>) -> Result<f64> {
        let mut acc = 1.0;
        for (c, e) in &self.0 {
            let v = params
                .get(c.name())
                .copied()
                .ok_or_else(|| Error::MissingParam(c.name().to_string()))?;
            acc *= v.powi(*e as i32);
        }
        Ok(acc)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An exact symbolic scalar: a sum of Gaussian-rational multiples of
/// constant monomials. The commutator tables and all polynomial
/// coefficients live here.
///
/// Canonical form stores no zero terms; the empty sum is zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coefficient(BTreeMap<Monomial, GaussianRational>);

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient(BTreeMap::new())
    }

    pub fn one() -> Self {
        Coefficient::gaussian(GaussianRational::one())
    }

    pub fn i() -> Self {
        Coefficient::gaussian(GaussianRational::i())
    }

    pub fn minus_i() -> Self {
        Coefficient::gaussian(GaussianRational::i().neg())
    }

    pub fn integer(n: i64) -> Self {
        Coefficient::gaussian(GaussianRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Coefficient::gaussian(GaussianRational::from_ratio(num, den))
    }

    pub fn gaussian(g: GaussianRational) -> Self {
        Coefficient::from_parts(g, Monomial::one())
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        Coefficient::from_parts(GaussianRational::one(), Monomial::symbol(name))
    }

    pub fn from_parts(g: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(m, g);
        }
        Coefficient(terms)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1
            && self
                .0
                .get(&Monomial::one())
                .map(|g| g.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.0.iter()
    }

    pub fn term_count(&self) -> usize {
        self.0.len()
    }

    pub fn single_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        if self.0.len() == 1 {
            self.0.iter().next()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.0.clone();
        for (m, g) in &other.0 {
            match terms.get_mut(m) {
                Some(existing) => {
                    let sum = existing.add(g);
                    if sum.is_zero() {
                        terms.remove(m);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    terms.insert(m.clone(), g.clone());
                }
            }
        }
        Coefficient(terms)
    }

    pub fn neg(&self) -> Self {
        Coefficient(self.0.iter().map(|(m, g)| (m.clone(), g.neg())).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Coefficient::zero();
        for (m1, g1) in &self.0 {
            for (m2, g2) in &other.0 {
                out = out.add(&Coefficient::from_parts(g1.mul(g2), m1.mul(m2)));
            }
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.mul(&Coefficient::gaussian(GaussianRational::from_rational(
            r.clone(),
        )))
    }

    /// Multiplicative inverse. Only single-term coefficients are units in
    /// this ring, so sums are rejected.
    pub fn inverse(&self) -> Result<Self> {
        match self.single_term() {
            Some((m, g)) => {
                let ginv = g
                    .inverse()
                    .ok_or_else(|| Error::NonInvertibleCoefficient(self.to_string()))?;
                Ok(Coefficient::from_parts(ginv, m.pow(-1)))
            }
            None => Err(Error::NonInvertibleCoefficient(self.to_string())),
        }
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return self.inverse()?.pow(-exp);
        }
        let mut acc = Coefficient::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    pub fn eval(&self, params: &BTreeMap<String, f64>) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, g) in &self.0 {
            acc += g.to_complex() * m.eval(params)?;
        }
        Ok(acc)
    }

    /// All constant names appearing in this scalar.
    pub fn symbols(&self) -> Vec<ScalarConst> {
        let mut out: Vec<ScalarConst> = Vec::new();
        for m in self.0.keys() {
            for (c, _) in m.exponents() {
                if !out.contains(c) {
                    out.push(c.clone());
                }
            }
        }
        out
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self
            .0
            .iter()
            .map(|(m, g)| {
                if m.is_one() {
                    g.to_string()
                } else if g.is_one() {
                    m.to_string()
                } else if g.neg().is_one() {
                    format!("-{m}")
                } else {
                    format!("{g}*{m}")
                }
            })
            .collect();
        if rendered.len() == 1 {
            return f.write_str(&rendered[0]);
        }
        let mut out = String::from("(");
        for (i, term) in rendered.iter().enumerate() {
            if i == 0 {
                out.push_str(term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(term);
            }
        }
        out.push(')');
        f.write_str(&out)
    }
}

impl Serialize for Coefficient {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
