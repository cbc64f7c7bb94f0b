//! Line-oriented presentation files and the expression syntax.
//!
//! ```text
//! # the 2-sphere
//! cdga S2
//! gen a 2
//! gen b 3
//! d b = a^2
//! ```
//!
//! A `ring` file lists `gen` and `rel` lines (relations set to zero) and may
//! declare `fundamental N` and `duality`. A `cdga` file may also carry `rel`
//! lines and `top N`, which makes it a quotient.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Cdga, FreeCdga};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::monomial::Generator;
use crate::ring::RingPresentation;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

fn tokenize(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Int(digits.parse().map_err(|_| "bad integer")?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    algebra: &'a FreeCdga,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<Element, String> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let mut acc = Element::zero();
        loop {
            let t = self.term()?;
            acc.add_scaled(&if negate { -Q::one() } else { Q::one() }, &t);
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Element, String> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = self.algebra.product(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> std::result::Result<Element, String> {
        let base = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| "exponent too large")?;
                    Ok(self.algebra.power(&base, e))
                }
                _ => Err("expected integer exponent after `^`".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> std::result::Result<Element, String> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut c = Q::from_integer(n);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            c /= Q::from_integer(d);
                        }
                        _ => return Err("expected nonzero denominator after `/`".into()),
                    }
                }
                Ok(Element::scalar(c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.algebra
                    .gen(&name)
                    .map_err(|_| format!("unknown generator `{name}`"))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err("missing `)`".into());
                }
                Ok(e)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

/// Parses an expression in the generators of `algebra`.
pub fn parse_expr(text: &str, algebra: &FreeCdga) -> std::result::Result<Element, String> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = ExprParser { toks, pos: 0, algebra };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input at token {:?}", p.toks[p.pos]));
    }
    Ok(e)
}

/// A parsed presentation file.
#[derive(Clone, Debug)]
pub enum Presentation {
    Cdga { name: String, algebra: Cdga },
    Ring(RingPresentation),
}

impl Presentation {
    pub fn name(&self) -> &str {
        match self {
            Presentation::Cdga { name, .. } => name,
            Presentation::Ring(r) => &r.name,
        }
    }

    /// The algebra the commands operate on (a ring has zero differential).
    pub fn algebra(&self) -> &Cdga {
        match self {
            Presentation::Cdga { algebra, .. } => algebra,
            Presentation::Ring(r) => &r.algebra,
        }
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut kind: Option<(bool, String)> = None;
    let mut gens: Vec<Generator> = Vec::new();
    let mut diffs: Vec<(usize, String, String)> = Vec::new();
    let mut rels: Vec<(usize, String)> = Vec::new();
    let mut top: Option<u32> = None;
    let mut fundamental: Option<u32> = None;
    let mut duality = false;
    let mut last_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, rest) = content
            .split_once(char::is_whitespace)
            .map(|(h, r)| (h, r.trim()))
            .unwrap_or((content, ""));
        if kind.is_none() && head != "cdga" && head != "ring" {
            return Err(perr(line, "file must start with `cdga NAME` or `ring NAME`"));
        }
        let is_ring = kind.as_ref().is_some_and(|k| k.0);
        match head {
            "cdga" | "ring" => {
                if kind.is_some() {
                    return Err(perr(line, "duplicate header"));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(perr(line, "expected a single name after the header keyword"));
                }
                kind = Some((head == "ring", rest.to_string()));
            }
            "gen" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(perr(line, "expected `gen NAME DEGREE`"));
                }
                let degree: u32 = parts[1]
                    .parse()
                    .map_err(|_| perr(line, format!("bad degree `{}`", parts[1])))?;
                if !diffs.is_empty() || !rels.is_empty() {
                    return Err(perr(line, "generators must be declared before `d`/`rel` lines"));
                }
                gens.push(Generator::new(parts[0], degree));
            }
            "d" if !is_ring => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(line, "expected `d NAME = EXPR`"))?;
                diffs.push((line, lhs.trim().to_string(), rhs.trim().to_string()));
            }
            "rel" => rels.push((line, rest.to_string())),
            "top" if !is_ring => {
                top = Some(rest.parse().map_err(|_| perr(line, "bad top degree"))?);
            }
            "fundamental" if is_ring => {
                fundamental = Some(rest.parse().map_err(|_| perr(line, "bad fundamental degree"))?);
            }
            "duality" if is_ring => duality = true,
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }
    let Some((is_ring, name)) = kind else {
        return Err(perr(last_line.max(1), "empty presentation"));
    };
    let bare =
        FreeCdga::unchecked(gens.clone(), vec![Element::zero(); gens.len()]).map_err(|e| perr(0, e.to_string()))?;
    let mut diff = vec![Element::zero(); gens.len()];
    for (line, lhs, rhs) in &diffs {
        let i = bare
            .index_of(lhs)
            .map_err(|_| perr(*line, format!("unknown generator `{lhs}`")))?;
        let e = parse_expr(rhs, &bare).map_err(|m| perr(*line, m))?;
        let g = &gens[i as usize];
        if let Ok(Some(k)) = bare.degree(&e) {
            if k != g.degree + 1 {
                return Err(perr(
                    *line,
                    format!("d({}) has degree {k}, expected {}", g.name, g.degree + 1),
                ));
            }
        } else if !e.is_zero() {
            return Err(perr(*line, "differential is not homogeneous"));
        }
        diff[i as usize] = e;
    }
    let mut relations = Vec::new();
    for (line, text) in &rels {
        let e = parse_expr(text, &bare).map_err(|m| perr(*line, m))?;
        if bare.degree(&e).is_err() {
            return Err(perr(*line, "relation is not homogeneous"));
        }
        relations.push(e);
    }
    if is_ring {
        let ring = RingPresentation::new(&name, gens, relations, fundamental, duality)?;
        Ok(Presentation::Ring(ring))
    } else {
        let algebra = if relations.is_empty() && top.is_none() {
            Cdga::from(FreeCdga::new(gens, diff)?)
        } else {
            Cdga::quotient(FreeCdga::unchecked(gens, diff)?, relations, top)?
        };
        Ok(Presentation::Cdga { name, algebra })
    }
}

/// Pretty-prints in the file format; parsing the output gives back an equal
/// presentation.
pub fn print_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    match p {
        Presentation::Cdga { name, algebra } => {
            out.push_str(&format!("cdga {name}\n"));
            let free = algebra.free();
            for g in free.generators() {
                out.push_str(&format!("gen {} {}\n", g.name, g.degree));
            }
            for (i, g) in free.generators().iter().enumerate() {
                let dg = free.diff_of(i as u32);
                if !dg.is_zero() {
                    out.push_str(&format!("d {} = {}\n", g.name, free.format(dg)));
                }
            }
            for r in algebra.relations() {
                out.push_str(&format!("rel {}\n", free.format(r)));
            }
            if let Some(t) = algebra.top() {
                out.push_str(&format!("top {t}\n"));
            }
        }
        Presentation::Ring(r) => {
            out.push_str(&format!("ring {}\n", r.name));
            let free = r.algebra.free();
            for g in free.generators() {
                out.push_str(&format!("gen {} {}\n", g.name, g.degree));
            }
            for rel in r.algebra.relations() {
                out.push_str(&format!("rel {}\n", free.format(rel)));
            }
            if let Some(n) = r.fundamental {
                out.push_str(&format!("fundamental {n}\n"));
            }
            if r.duality {
                out.push_str("duality\n");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2: &str = "# sphere\ncdga S2\ngen a 2\ngen b 3\nd b = a^2\n";

    #[test]
    fn parses_and_round_trips() {
        let p = parse_presentation(S2).unwrap();
        let text = print_presentation(&p);
        let again = parse_presentation(&text).unwrap();
        assert!(p.algebra().same_as(again.algebra()));
        assert_eq!(text, print_presentation(&again));
    }

    #[test]
    fn degree_mismatch_names_line() {
        let err = parse_presentation("cdga bad\ngen a 2\ngen b 3\nd b = a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    }

    #[test]
    fn rationals_and_parentheses() {
        let a = FreeCdga::with_generators(&[("x", 2), ("y", 2)]).unwrap();
        let e = parse_expr("1/2*(x + y)^2 - x*y", &a).unwrap();
        assert_eq!(a.format(&e), "1/2*x^2 + 1/2*y^2");
        assert!(parse_expr("x +", &a).is_err());
        assert!(parse_expr("w", &a).is_err());
    }

    #[test]
    fn ring_file() {
        let p = parse_presentation("ring CP2\ngen x 2\nrel x^3\nfundamental 4\nduality\n").unwrap();
        match &p {
            Presentation::Ring(r) => {
                assert_eq!(r.algebra.dim(4), 1);
                assert!(r.duality);
            }
            _ => panic!("expected ring"),
        }
    }
}
