//! Recursive-descent parser for operator expressions.
//!
//! Grammar (whitespace insignificant, `^` binds tighter than `*` binds
//! tighter than `+`/`-`, unary minus allowed before factors):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := ('-')* primary ('^' signedint)*
//! primary  := rational | 'i' | identifier | '[' expr ',' expr ']' | '(' expr ')'
//! rational := int ('/' int)?
//! ```
//!
//! Identifiers of the shape `P<digits>` / `Q<digits>` are generator
//! references, everything else refers to a scalar constant. Scalar
//! literals are exact rationals; decimal floats are deliberately not part
//! of the expression language.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::symalg::{Algebra, Coefficient, GaussianRational, Generator, NCPolynomial};

/// Expression syntax tree. Lowers to an [`NCPolynomial`] given an algebra
/// (which supplies the generator set, the declared constants and the
/// numeric value of `eps12`).
#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Rational(BigRational),
    ImaginaryUnit,
    ConstRef(String),
    GeneratorRef(Generator),
    Sum(Vec<Ast>),
    Product(Vec<Ast>),
    Power(Box<Ast>, i64),
    Bracket(Box<Ast>, Box<Ast>),
    Negation(Box<Ast>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Int(s) => return write!(f, "integer `{s}`"),
            Tok::Ident(s) => return write!(f, "identifier `{s}`"),
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Slash => "/",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
        };
        write!(f, "`{s}`")
    }
}

/// Tokens tagged with their 1-based character position.
struct Lexer;

impl Lexer {
    fn run(text: &str) -> Result<Vec<(Tok, usize)>> {
        let mut out = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                _ if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    out.push((Tok::Int(chars[start..i].iter().collect()), pos));
                    continue;
                }
                _ if c.is_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                    continue;
                }
                _ => {
                    return Err(Error::SyntaxError {
                        position: pos,
                        message: format!("unexpected character `{c}`"),
                        expected: vec!["a token of the expression grammar".into()],
                    })
                }
            };
            out.push((tok, pos));
            i += 1;
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    cursor: usize,
    end_pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(_, p)| *p)
            .unwrap_or(self.end_pos)
    }

    fn advance(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.cursor).map(|(t, _)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn error(&self, expected: Vec<String>) -> Error {
        let message = match self.peek() {
            Some(t) => format!("unexpected {t}"),
            None => "unexpected end of input".to_string(),
        };
        Error::SyntaxError {
            position: self.pos(),
            message,
            expected,
        }
    }

    fn expect(&mut self, tok: Tok, display: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.cursor += 1;
            Ok(())
        } else {
            Err(self.error(vec![format!("`{display}`")]))
        }
    }

    fn parse_expr(&mut self) -> Result<Ast> {
        let mut terms = vec![self.parse_term()?];
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.advance();
                    terms.push(self.parse_term()?);
                }
                Some(Tok::Minus) => {
                    self.advance();
                    terms.push(Ast::Negation(Box::new(self.parse_term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Ast::Sum(terms)
        })
    }

    fn parse_term(&mut self) -> Result<Ast> {
        let mut factors = vec![self.parse_factor()?];
        while self.peek() == Some(&Tok::Star) {
            self.advance();
            factors.push(self.parse_factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Ast::Product(factors)
        })
    }

    fn parse_factor(&mut self) -> Result<Ast> {
        if self.peek() == Some(&Tok::Minus) {
            self.advance();
            return Ok(Ast::Negation(Box::new(self.parse_factor()?)));
        }
        let mut node = self.parse_primary()?;
        while self.peek() == Some(&Tok::Caret) {
            self.advance();
            let exp = self.parse_signed_int()?;
            node = Ast::Power(Box::new(node), exp);
        }
        Ok(node)
    }

    fn parse_signed_int(&mut self) -> Result<i64> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.advance();
            true
        } else {
            false
        };
        match self.peek() {
            Some(Tok::Int(digits)) => {
                let digits = digits.clone();
                let v: i64 = digits.parse().map_err(|_| Error::SyntaxError {
                    position: self.pos(),
                    message: format!("exponent `{digits}` out of range"),
                    expected: vec!["an integer exponent".into()],
                })?;
                self.advance();
                Ok(if negative { -v } else { v })
            }
            _ => Err(self.error(vec!["an integer exponent".into()])),
        }
    }

    fn parse_primary(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let digits = match self.advance() {
                    Some(Tok::Int(d)) => d,
                    _ => unreachable!(),
                };
                let numer: BigInt = digits.parse().expect("lexer emits digits");
                if self.peek() == Some(&Tok::Slash) {
                    self.advance();
                    match self.advance() {
                        Some(Tok::Int(den)) => {
                            let denom: BigInt = den.parse().expect("lexer emits digits");
                            if denom.is_zero() {
                                return Err(Error::SyntaxError {
                                    position: self.pos(),
                                    message: "denominator must be nonzero".into(),
                                    expected: vec!["a nonzero integer".into()],
                                });
                            }
                            Ok(Ast::Rational(BigRational::new(numer, denom)))
                        }
                        _ => Err(self.error(vec!["an integer denominator".into()])),
                    }
                } else {
                    Ok(Ast::Rational(BigRational::from_integer(numer)))
                }
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.advance();
                if name == "i" {
                    Ok(Ast::ImaginaryUnit)
                } else if let Some(g) = Generator::parse(&name) {
                    Ok(Ast::GeneratorRef(g))
                } else {
                    Ok(Ast::ConstRef(name))
                }
            }
            Some(Tok::LBracket) => {
                let open_pos = self.pos();
                self.advance();
                // Parsed as a comma-separated list so the continuation
                // error reports the `,`-or-`]` choice; arity is checked
                // afterwards.
                let mut args = vec![self.parse_expr()?];
                loop {
                    match self.peek() {
                        Some(Tok::Comma) => {
                            self.advance();
                            args.push(self.parse_expr()?);
                        }
                        Some(Tok::RBracket) => {
                            self.advance();
                            break;
                        }
                        _ => return Err(self.error(vec!["`,`".into(), "`]`".into()])),
                    }
                }
                if args.len() != 2 {
                    return Err(Error::SyntaxError {
                        position: open_pos,
                        message: format!(
                            "commutator bracket takes exactly two arguments, got {}",
                            args.len()
                        ),
                        expected: vec!["`[expr, expr]`".into()],
                    });
                }
                let second = args.pop().unwrap();
                let first = args.pop().unwrap();
                Ok(Ast::Bracket(Box::new(first), Box::new(second)))
            }
            Some(Tok::LParen) => {
                self.advance();
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(inner)
            }
            _ => Err(self.error(vec![
                "a rational literal".into(),
                "`i`".into(),
                "an identifier".into(),
                "`[`".into(),
                "`(`".into(),
            ])),
        }
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_expression(text: &str) -> Result<Ast> {
    let tokens = Lexer::run(text)?;
    let end_pos = text.chars().count() + 1;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end_pos,
    };
    let ast = parser.parse_expr()?;
    if parser.peek().is_some() {
        return Err(parser.error(vec!["end of input".into(), "an operator".into()]));
    }
    Ok(ast)
}

/// Lowers an AST to a noncommutative polynomial. Bracket nodes expand to
/// formal commutators `a·b - b·a`; no normal ordering is applied.
pub fn lower(ast: &Ast, algebra: &Algebra) -> Result<NCPolynomial> {
    match ast {
        Ast::Rational(r) => Ok(NCPolynomial::scalar(Coefficient::gaussian(
            GaussianRational::from_rational(r.clone()),
        ))),
        Ast::ImaginaryUnit => Ok(NCPolynomial::scalar(Coefficient::i())),
        Ast::ConstRef(name) => {
            if name == "eps12" {
                Ok(NCPolynomial::scalar(Coefficient::integer(
                    algebra.epsilon12() as i64,
                )))
            } else if algebra.knows_const(name) {
                Ok(NCPolynomial::scalar(Coefficient::symbol(name.clone())))
            } else {
                Err(Error::UnknownSymbol(name.clone()))
            }
        }
        Ast::GeneratorRef(g) => {
            if algebra.contains(*g) {
                Ok(NCPolynomial::generator(*g))
            } else {
                Err(Error::UnknownGenerator(g.to_string()))
            }
        }
        Ast::Sum(children) => {
            let mut acc = NCPolynomial::zero();
            for c in children {
                acc = acc.add(&lower(c, algebra)?);
            }
            Ok(acc)
        }
        Ast::Product(children) => {
            let mut acc = NCPolynomial::one();
            for c in children {
                acc = acc.mul(&lower(c, algebra)?);
            }
            Ok(acc)
        }
        Ast::Power(base, exp) => {
            let b = lower(base, algebra)?;
            if *exp >= 0 {
                Ok(b.pow(*exp as u32))
            } else if b.is_scalar() {
                Ok(NCPolynomial::scalar(b.scalar_part().pow(*exp)?))
            } else {
                Err(Error::NegativeOperatorPower)
            }
        }
        Ast::Bracket(a, b) => {
            let pa = lower(a, algebra)?;
            let pb = lower(b, algebra)?;
            Ok(pa.mul(&pb).sub(&pb.mul(&pa)))
        }
        Ast::Negation(inner) => Ok(lower(inner, algebra)?.neg()),
    }
}

/// Parses and lowers in one step.
pub fn parse_polynomial(text: &str, algebra: &Algebra) -> Result<NCPolynomial> {
    lower(&parse_expression(text)?, algebra)
}

fn is_bare_primary(ast: &Ast) -> bool {
    match ast {
        Ast::ImaginaryUnit | Ast::ConstRef(_) | Ast::GeneratorRef(_) | Ast::Bracket(_, _) => true,
        Ast::Rational(r) => r.numer().sign() != num_bigint::Sign::Minus,
        _ => false,
    }
}

/// Pretty-prints an AST back into the expression grammar. The output
/// re-parses to an AST that lowers to the same polynomial.
pub fn print_ast(ast: &Ast) -> String {
    match ast {
        Ast::Rational(r) => {
            if r.denom() == &BigInt::from(1) {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        Ast::ImaginaryUnit => "i".to_string(),
        Ast::ConstRef(name) => name.clone(),
        Ast::GeneratorRef(g) => g.to_string(),
        Ast::Sum(children) => {
            let mut out = String::new();
            for (i, c) in children.iter().enumerate() {
                let rendered = print_ast(c);
                if i == 0 {
                    out.push_str(&rendered);
                } else if let Some(rest) = rendered.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(rest);
                } else {
                    out.push_str(" + ");
                    out.push_str(&rendered);
                }
            }
            out
        }
        Ast::Product(children) => {
            let parts: Vec<String> = children
                .iter()
                .map(|c| match c {
                    Ast::Sum(_) => format!("({})", print_ast(c)),
                    _ => print_ast(c),
                })
                .collect();
            parts.join("*")
        }
        Ast::Power(base, exp) => {
            let b = if is_bare_primary(base) {
                print_ast(base)
            } else {
                format!("({})", print_ast(base))
            };
            format!("{b}^{exp}")
        }
        Ast::Bracket(a, b) => format!("[{}, {}]", print_ast(a), print_ast(b)),
        Ast::Negation(inner) => match inner.as_ref() {
            Ast::Sum(_) => format!("-({})", print_ast(inner)),
            _ => format!("-{}", print_ast(inner)),
        },
    }
}
