//! Parsing of family descriptors from the command line.
//!
//! Grammar:
//!
//! ```text
//! family := "plain:K,L" | "u:K,L" | "b:K,L" | "bbar:K,L"
//!         | "zero63" | "zero73"
//!         | "general:K:EXPR"
//! EXPR   := term (('+' | '-') term)*      (char 2: '-' ≡ '+')
//! term   := factor ('*' factor)*
//! factor := atom ('^' UINT)?
//! atom   := 's'DIGIT | 'a' | UINT | '(' EXPR ')'
//! ```
//!
//! In a `general` expression, `sL` denotes σ_{K,L} of the block, `a` the
//! primitive element α of GF(q²), and an integer constant reduces mod 2.
//! Example: `general:4:s2^2+s1*s3`.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use circle_designs::blocks::{Family, SigmaPoly};
use circle_designs::field::{Elem, Field};

/// Parses a family descriptor. A field is needed because `general`
/// coefficients such as `a^3` are field constants.
pub fn parse_family(f: &Field, s: &str) -> Result<Family> {
    let s = s.trim();
    match s {
        "zero63" => return Ok(Family::Zero63),
        "zero73" => return Ok(Family::Zero73),
        _ => {}
    }
    let (name, rest) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("family {s:?}: expected NAME:PARAMS"))?;
    match name {
        "plain" | "u" | "b" | "bbar" => {
            let (k, l) = rest
                .split_once(',')
                .ok_or_else(|| anyhow!("family {s:?}: expected {name}:K,L"))?;
            let k: u32 = k.trim().parse().context("block size K")?;
            let l: u32 = l.trim().parse().context("degree L")?;
            Ok(match name {
                "plain" => Family::Plain { k, l },
                "u" => Family::ShiftU { k, l },
                "b" => Family::ShiftB { k, l },
                _ => Family::ShiftBBar { k, l },
            })
        }
        "general" => {
            let (k, expr) = rest
                .split_once(':')
                .ok_or_else(|| anyhow!("family {s:?}: expected general:K:EXPR"))?;
            let k: u32 = k.trim().parse().context("block size K")?;
            let poly =
                parse_sigma_poly(f, expr).with_context(|| format!("in expression {expr:?}"))?;
            Ok(Family::General { k, poly })
        }
        _ => bail!("unknown family {name:?} (expected plain, u, b, bbar, zero63, zero73, general)"),
    }
}

/// A polynomial in σ_0..σ_7 under construction: monomial exponents → coefficient.
type Poly = BTreeMap<[u8; 8], Elem>;

fn poly_const(c: Elem) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert([0; 8], c);
    }
    p
}

fn poly_sigma(l: usize) -> Poly {
    let mut exps = [0u8; 8];
    exps[l] = 1;
    let mut p = Poly::new();
    p.insert(exps, Elem::ONE);
    p
}

fn poly_add(mut a: Poly, b: Poly) -> Poly {
    for (exps, c) in b {
        let entry = a.entry(exps).or_insert(Elem::ZERO);
        *entry += c;
        if entry.is_zero() {
            a.remove(&exps);
        }
    }
    a
}

fn poly_mul(f: &Field, a: &Poly, b: &Poly) -> Result<Poly> {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut exps = [0u8; 8];
            for i in 0..8 {
                exps[i] = ea[i]
                    .checked_add(eb[i])
                    .ok_or_else(|| anyhow!("σ_{i} exponent exceeds 255"))?;
            }
            let c = f.mul(*ca, *cb);
            let entry = out.entry(exps).or_insert(Elem::ZERO);
            *entry += c;
            if entry.is_zero() {
                out.remove(&exps);
            }
        }
    }
    Ok(out)
}

fn poly_pow(f: &Field, base: &Poly, e: u32) -> Result<Poly> {
    if e > 64 {
        bail!("exponent {e} too large (limit 64)");
    }
    let mut acc = poly_const(Elem::ONE);
    for _ in 0..e {
        acc = poly_mul(f, &acc, base)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Sigma(usize),
    Alpha,
    Num(u64),
    Plus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' | '-' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            'a' => {
                out.push(Tok::Alpha);
                i += 1;
            }
            's' => {
                let d = bytes
                    .get(i + 1)
                    .filter(|b| b.is_ascii_digit())
                    .ok_or_else(|| anyhow!("'s' must be followed by a digit (σ subscript)"))?;
                let l = (d - b'0') as usize;
                if l > 7 {
                    bail!("σ subscript {l} out of range (0..=7)");
                }
                out.push(Tok::Sigma(l));
                i += 2;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u64 = s[start..i].parse()?;
                out.push(Tok::Num(n));
            }
            _ => bail!("unexpected character {c:?}"),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    f: &'a Field,
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while self.peek() == Some(Tok::Plus) {
            self.bump();
            acc = poly_add(acc, self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(Tok::Star) {
            self.bump();
            let rhs = self.factor()?;
            acc = poly_mul(self.f, &acc, &rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(e)) => {
                    let e = u32::try_from(e).map_err(|_| anyhow!("exponent too large"))?;
                    return poly_pow(self.f, &base, e);
                }
                other => bail!("expected integer exponent after '^', got {other:?}"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Tok::Sigma(l)) => Ok(poly_sigma(l)),
            Some(Tok::Alpha) => Ok(poly_const(self.f.alpha())),
            Some(Tok::Num(n)) => Ok(poly_const(if n % 2 == 1 { Elem::ONE } else { Elem::ZERO })),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    other => bail!("expected ')', got {other:?}"),
                }
            }
            other => bail!("expected s<digit>, 'a', integer, or '(', got {other:?}"),
        }
    }
}

/// Parses a σ-polynomial expression into the core representation.
pub fn parse_sigma_poly(f: &Field, expr: &str) -> Result<SigmaPoly> {
    let toks = tokenize(expr)?;
    if toks.is_empty() {
        bail!("empty expression");
    }
    let mut p = Parser {
        f,
        toks: &toks,
        pos: 0,
    };
    let poly = p.expr()?;
    if p.pos != toks.len() {
        bail!("trailing tokens after position {}", p.pos);
    }
    Ok(SigmaPoly {
        terms: poly.into_iter().map(|(e, c)| (c, e)).collect(),
    })
}

/// Canonical display name of a family (used in block-set files).
pub fn family_name(fam: &Family, original: &str) -> String {
    match fam {
        Family::Plain { k, l } => format!("plain:{k},{l}"),
        Family::ShiftU { k, l } => format!("u:{k},{l}"),
        Family::ShiftB { k, l } => format!("b:{k},{l}"),
        Family::ShiftBBar { k, l } => format!("bbar:{k},{l}"),
        Family::Zero63 => "zero63".into(),
        Family::Zero73 => "zero73".into(),
        Family::General { .. } => original.trim().to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_families() {
        let f = Field::new(4).unwrap();
        assert_eq!(
            parse_family(&f, "plain:5,2").unwrap(),
            Family::Plain { k: 5, l: 2 }
        );
        assert_eq!(
            parse_family(&f, "u:7,3").unwrap(),
            Family::ShiftU { k: 7, l: 3 }
        );
        assert_eq!(
            parse_family(&f, "bbar:5,3").unwrap(),
            Family::ShiftBBar { k: 5, l: 3 }
        );
        assert_eq!(parse_family(&f, "zero73").unwrap(), Family::Zero73);
        assert!(parse_family(&f, "nope:1,2").is_err());
        assert!(parse_family(&f, "plain:five,2").is_err());
    }

    #[test]
    fn parses_general_expressions() {
        let f = Field::new(4).unwrap();
        let fam = parse_family(&f, "general:4:s2^2+s1*s3").unwrap();
        match &fam {
            Family::General { k: 4, poly } => {
                let mut terms = poly.terms.clone();
                terms.sort_by_key(|(_, e)| *e);
                assert_eq!(
                    terms,
                    vec![
                        (Elem::ONE, [0, 0, 2, 0, 0, 0, 0, 0]),
                        (Elem::ONE, [0, 1, 0, 1, 0, 0, 0, 0]),
                    ]
                );
            }
            other => panic!("unexpected parse: {other:?}"),
        }
        // Constants fold mod 2 and α powers multiply in.
        let fam = parse_family(&f, "general:5:a^3*s3 + 2*s1 + 1").unwrap();
        match &fam {
            Family::General { poly, .. } => {
                let mut terms = poly.terms.clone();
                terms.sort_by_key(|(_, e)| *e);
                assert_eq!(
                    terms,
                    vec![
                        (Elem::ONE, [0; 8]),
                        (f.alpha_pow(3), [0, 0, 0, 1, 0, 0, 0, 0]),
                    ]
                );
            }
            other => panic!("unexpected parse: {other:?}"),
        }
        // Char-2 cancellation: s1 + s1 = 0.
        let fam = parse_family(&f, "general:3:s1+s1").unwrap();
        match &fam {
            Family::General { poly, .. } => assert!(poly.terms.is_empty()),
            other => panic!("unexpected parse: {other:?}"),
        }
        // Parenthesized powers.
        let fam = parse_family(&f, "general:4:(s1+s2)^2").unwrap();
        match &fam {
            Family::General { poly, .. } => {
                // Freshman's dream: (s1+s2)² = s1² + s2².
                let mut terms = poly.terms.clone();
                terms.sort_by_key(|(_, e)| *e);
                assert_eq!(
                    terms,
                    vec![
                        (Elem::ONE, [0, 0, 2, 0, 0, 0, 0, 0]),
                        (Elem::ONE, [0, 2, 0, 0, 0, 0, 0, 0]),
                    ]
                );
            }
            other => panic!("unexpected parse: {other:?}"),
        }
        assert!(parse_family(&f, "general:4:s9").is_err());
        assert!(parse_family(&f, "general:4:s2^").is_err());
        assert!(parse_family(&f, "general:4:(s2").is_err());
        assert!(parse_family(&f, "general:4:s2 s3").is_err());
    }
}
