//! Text formats for algebras and substitutions.
//!
//! Algebra files are UTF-8 with one statement per line and `#` comments:
//!
//! ```text
//! k = 2
//! order = Q1 Q2 P1 P2
//! epsilon12 = -1
//! const lambda
//! comm P1 Q1 = -i*hbar
//! comm Q1 Q2 = -i*eps12*hbar*(e*B)^-1
//! ```
//!
//! `k` defaults to 2, `order` to positions before momenta, `epsilon12` to
//! -1. Pairs not declared commute. Substitution files hold one
//! `GENERATOR = expression` line per image.

use crate::error::{Error, Result};
use crate::symalg::{Algebra, Generator, Substitution};

use super::parser::parse_polynomial;

struct Statement {
    line: usize,
    text: String,
}

fn statements(text: &str) -> Vec<Statement> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                None
            } else {
                Some(Statement {
                    line: i + 1,
                    text: body.to_string(),
                })
            }
        })
        .collect()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::ParseError {
        line,
        message: message.into(),
    }
}

/// Parses the algebra text format into a validated [`Algebra`].
pub fn parse_algebra_file(text: &str) -> Result<Algebra> {
    let stmts = statements(text);

    let mut pair_count: u32 = 2;
    let mut epsilon12: i8 = -1;
    let mut order: Option<Vec<Generator>> = None;
    let mut consts: Vec<(usize, String)> = Vec::new();
    let mut comms: Vec<(usize, Generator, Generator, String)> = Vec::new();

    let mut seen_k = false;
    let mut seen_eps = false;
    for stmt in &stmts {
        let line = stmt.line;
        let text = stmt.text.as_str();
        if let Some(rest) = text.strip_prefix("comm ") {
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| parse_err(line, "expected `comm G H = expression`"))?;
            let names: Vec<&str> = lhs.split_whitespace().collect();
            if names.len() != 2 {
                return Err(parse_err(line, "expected exactly two generators before `=`"));
            }
            let g = Generator::parse(names[0])
                .ok_or_else(|| parse_err(line, format!("`{}` is not a generator", names[0])))?;
            let h = Generator::parse(names[1])
                .ok_or_else(|| parse_err(line, format!("`{}` is not a generator", names[1])))?;
            comms.push((line, g, h, rhs.trim().to_string()));
        } else if let Some(rest) = text.strip_prefix("const ") {
            let name = rest.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(parse_err(line, "expected `const NAME`"));
            }
            consts.push((line, name.to_string()));
        } else if let Some((key, value)) = text.split_once('=') {
            let key = key.trim();
            let value = value.trim();
            match key {
                "k" => {
                    if seen_k {
                        return Err(parse_err(line, "`k` declared more than once"));
                    }
                    seen_k = true;
                    pair_count = value
                        .parse()
                        .map_err(|_| parse_err(line, format!("invalid pair count `{value}`")))?;
                    if pair_count < 1 {
                        return Err(parse_err(line, "pair count k must be >= 1"));
                    }
                }
                "order" => {
                    if order.is_some() {
                        return Err(parse_err(line, "`order` declared more than once"));
                    }
                    let gens: Option<Vec<Generator>> =
                        value.split_whitespace().map(Generator::parse).collect();
                    match gens {
                        Some(g) if !g.is_empty() => order = Some(g),
                        _ => return Err(parse_err(line, "order must list generators like `Q1 P1`")),
                    }
                }
                "epsilon12" => {
                    if seen_eps {
                        return Err(parse_err(line, "`epsilon12` declared more than once"));
                    }
                    seen_eps = true;
                    epsilon12 = match value {
                        "1" | "+1" => 1,
                        "-1" => -1,
                        other => {
                            return Err(parse_err(
                                line,
                                format!("epsilon12 must be +1 or -1, got `{other}`"),
                            ))
                        }
                    };
                }
                other => return Err(parse_err(line, format!("unknown statement `{other} = ...`"))),
            }
        } else {
            return Err(parse_err(line, format!("unrecognized statement `{text}`")));
        }
    }

    let mut algebra = match order {
        Some(order) => Algebra::with_order(pair_count, order, epsilon12)
            .map_err(|e| parse_err(0, e.to_string()))?,
        None => Algebra::new(pair_count, epsilon12).map_err(|e| parse_err(0, e.to_string()))?,
    };
    for (line, name) in consts {
        algebra
            .declare_const(&name)
            .map_err(|e| parse_err(line, e.to_string()))?;
    }

    for (line, g, h, rhs) in comms {
        if !algebra.contains(g) {
            return Err(parse_err(line, format!("generator {g} is outside k = {pair_count}")));
        }
        if !algebra.contains(h) {
            return Err(parse_err(line, format!("generator {h} is outside k = {pair_count}")));
        }
        let poly = match parse_polynomial(&rhs, &algebra) {
            Ok(p) => p,
            Err(Error::UnknownSymbol(s)) => return Err(Error::UnknownSymbol(s)),
            Err(e) => return Err(parse_err(line, e.to_string())),
        };
        if !poly.is_scalar() {
            return Err(Error::NotCentral {
                line: Some(line),
                detail: format!("[{g}, {h}] = {poly} contains generators"),
            });
        }
        algebra
            .set_commutator(g, h, poly.scalar_part())
            .map_err(|e| match e {
                Error::DuplicatePair { pair, .. } => Error::DuplicatePair { pair, line },
                other => parse_err(line, other.to_string()),
            })?;
    }
    Ok(algebra)
}

/// Parses the substitution text format against a target algebra.
pub fn parse_substitution_file(text: &str, algebra: &Algebra) -> Result<Substitution> {
    let mut subst = Substitution::identity();
    let mut seen: Vec<Generator> = Vec::new();
    for stmt in statements(text) {
        let line = stmt.line;
        let (lhs, rhs) = stmt
            .text
            .split_once('=')
            .ok_or_else(|| parse_err(line, "expected `GENERATOR = expression`"))?;
        let g = Generator::parse(lhs.trim())
            .ok_or_else(|| parse_err(line, format!("`{}` is not a generator", lhs.trim())))?;
        if !algebra.contains(g) {
            return Err(parse_err(line, format!("generator {g} is outside the algebra")));
        }
        if seen.contains(&g) {
            return Err(parse_err(line, format!("image of {g} declared more than once")));
        }
        seen.push(g);
        let image = match parse_polynomial(rhs.trim(), algebra) {
            Ok(p) => p,
            Err(Error::UnknownSymbol(s)) => return Err(Error::UnknownSymbol(s)),
            Err(e) => return Err(parse_err(line, e.to_string())),
        };
        subst.set(g, image)?;
    }
    Ok(subst)
}

/// Resolves `--algebra` values: a preset name or a file path.
pub fn resolve_algebra(spec: &str, epsilon12: Option<i8>) -> Result<Algebra> {
    if let Some(preset) = Algebra::preset(spec, epsilon12.unwrap_or(-1)) {
        return Ok(preset);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| {
        Error::UsageError(format!(
            "`{spec}` is neither a preset (heisenberg2, magnetic2) nor a readable file: {e}"
        ))
    })?;
    let mut algebra = parse_algebra_file(&text)?;
    if let Some(eps) = epsilon12 {
        if eps != algebra.epsilon12() {
            // The flag wins over the file's declared convention.
            let mut rebuilt = String::new();
            for line in text.lines() {
                let body = line.split('#').next().unwrap_or("").trim();
                if body.starts_with("epsilon12") {
                    continue;
                }
                rebuilt.push_str(line);
                rebuilt.push('\n');
            }
            rebuilt.push_str(&format!("epsilon12 = {eps:+}\n"));
            algebra = parse_algebra_file(&rebuilt)?;
        }
    }
    Ok(algebra)
}

/// Resolves `--subst` values: `preset:eq5`, `identity`, or a file path.
pub fn resolve_substitution(spec: &str, algebra: &Algebra) -> Result<Substitution> {
    match spec {
        "preset:eq5" | "eq5" => Substitution::momentum_to_position(algebra),
        "identity" | "preset:identity" => Ok(Substitution::identity()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::UsageError(format!(
                    "`{path}` is neither a substitution preset (preset:eq5, identity) nor a readable file: {e}"
                ))
            })?;
            parse_substitution_file(&text, algebra)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::NCPolynomial;

    #[test]
    fn preset_names_resolve() {
        let h = resolve_algebra("heisenberg2", None).unwrap();
        assert_eq!(h.pair_count(), 2);
        assert_eq!(
            h.bracket(Generator::p(1), Generator::q(1)).to_string(),
            "-i*hbar"
        );
        let m = resolve_algebra("magnetic2", None).unwrap();
        assert_eq!(
            m.bracket(Generator::p(1), Generator::p(2)).to_string(),
            "-i*hbar*e*B"
        );
        let m = resolve_algebra("magnetic2", Some(1)).unwrap();
        assert_eq!(
            m.bracket(Generator::p(1), Generator::p(2)).to_string(),
            "i*hbar*e*B"
        );
    }

    #[test]
    fn algebra_file_round_trip() {
        let text = "\
# the magnetic table, spelled out
k = 2
order = Q1 Q2 P1 P2
epsilon12 = -1
comm P1 Q1 = -i*hbar
comm P2 Q2 = -i*hbar
comm P1 P2 = i*eps12*hbar*e*B
comm Q1 Q2 = -i*eps12*hbar*(e*B)^-1
";
        let parsed = parse_algebra_file(text).unwrap();
        let preset = Algebra::magnetic2(-1);
        for (g, h) in preset.oriented_pairs() {
            assert_eq!(parsed.bracket(g, h), preset.bracket(g, h), "pair [{g}, {h}]");
        }
    }

    #[test]
    fn duplicate_comm_is_an_error_with_line() {
        let text = "comm P1 Q1 = -i*hbar\ncomm Q1 P1 = i*hbar\n";
        match parse_algebra_file(text) {
            Err(Error::DuplicatePair { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected DuplicatePair, got {other:?}"),
        }
    }

    #[test]
    fn non_central_rhs_rejected() {
        let text = "comm Q1 Q2 = Q1\n";
        match parse_algebra_file(text) {
            Err(Error::NotCentral { line, .. }) => assert_eq!(line, Some(1)),
            other => panic!("expected NotCentral, got {other:?}"),
        }
    }

    #[test]
    fn unknown_symbol_in_rhs() {
        let text = "comm P1 Q1 = -i*lambda\n";
        assert!(matches!(
            parse_algebra_file(text),
            Err(Error::UnknownSymbol(name)) if name == "lambda"
        ));
        // Declaring it first makes the same file valid.
        let text = "const lambda\ncomm P1 Q1 = -i*lambda\n";
        let a = parse_algebra_file(text).unwrap();
        assert_eq!(
            a.bracket(Generator::p(1), Generator::q(1)).to_string(),
            "-i*lambda"
        );
    }

    #[test]
    fn substitution_file_parses_and_validates() {
        let a = Algebra::magnetic2(-1);
        let text = "P1 = -e*B*Q2\nP2 = e*B*Q1\n";
        let s = parse_substitution_file(text, &a).unwrap();
        let preset = Substitution::momentum_to_position(&a).unwrap();
        for m in 1..=2 {
            assert_eq!(s.image(Generator::p(m)), preset.image(Generator::p(m)));
        }

        let bad = "P1 = Q1*Q2\n";
        assert!(matches!(
            parse_substitution_file(bad, &a),
            Err(Error::NonLinearSubstitution { .. })
        ));
    }

    #[test]
    fn substitution_allows_constant_term() {
        let a = Algebra::heisenberg2(-1);
        let s = parse_substitution_file("Q1 = Q1 + 1/2\n", &a).unwrap();
        assert_eq!(
            s.image(Generator::q(1)),
            NCPolynomial::generator(Generator::q(1)).add(&NCPolynomial::scalar(
                crate::symalg::Coefficient::ratio(1, 2)
            ))
        );
    }
}
