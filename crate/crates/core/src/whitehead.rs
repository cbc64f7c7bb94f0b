//! Pairing of model generators with iterated Whitehead products, through
//! the quadratic part of the differential.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::FreeCdga;
use crate::error::{Error, Result};
use crate::linalg::Q;

/// `name`, `N*name`, or `[left,right]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    Leaf { name: String, multiplier: i64 },
    Node(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn leaf(name: &str) -> Self {
        BracketExpr::Leaf {
            name: name.to_string(),
            multiplier: 1,
        }
    }

    pub fn node(l: BracketExpr, r: BracketExpr) -> Self {
        BracketExpr::Node(Box::new(l), Box::new(r))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let e = parse_bracket(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(bracket_err(format!("trailing input at position {pos}")));
        }
        Ok(e)
    }

    /// Degree of the represented homotopy class, with `[x,y]` in degree
    /// `|x| + |y| − 1` (degrees are those of the dual model generators).
    pub fn degree(&self, model: &FreeCdga) -> Result<u32> {
        match self {
            BracketExpr::Leaf { name, .. } => Ok(model.generator(name)?.degree),
            BracketExpr::Node(l, r) => Ok(l.degree(model)? + r.degree(model)? - 1),
        }
    }

    /// Multiplies each leaf by `n^{degree}`: the class obtained by
    /// precomposing every sphere with a degree-`n` rescaling.
    pub fn scaled_by_degree(&self, model: &FreeCdga, n: i64) -> Result<Self> {
        Ok(match self {
            BracketExpr::Leaf { name, multiplier } => {
                let d = model.generator(name)?.degree;
                BracketExpr::Leaf {
                    name: name.clone(),
                    multiplier: multiplier * n.pow(d),
                }
            }
            BracketExpr::Node(l, r) => BracketExpr::node(l.scaled_by_degree(model, n)?, r.scaled_by_degree(model, n)?),
        })
    }

    pub fn leaves(&self) -> Vec<&str> {
        match self {
            BracketExpr::Leaf { name, .. } => vec![name.as_str()],
            BracketExpr::Node(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketExpr::Leaf { name, multiplier: 1 } => write!(f, "{name}"),
            BracketExpr::Leaf { name, multiplier } => write!(f, "{multiplier}*{name}"),
            BracketExpr::Node(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

fn bracket_err(message: String) -> Error {
    Error::Parse { line: 0, message }
}

fn parse_bracket(c: &[char], pos: &mut usize) -> Result<BracketExpr> {
    match c.get(*pos) {
        Some('[') => {
            *pos += 1;
            let l = parse_bracket(c, pos)?;
            if c.get(*pos) != Some(&',') {
                return Err(bracket_err(format!("expected `,` at position {pos}")));
            }
            *pos += 1;
            let r = parse_bracket(c, pos)?;
            if c.get(*pos) != Some(&']') {
                return Err(bracket_err(format!("expected `]` at position {pos}")));
            }
            *pos += 1;
            Ok(BracketExpr::node(l, r))
        }
        Some(_) => {
            let start = *pos;
            while *pos < c.len() && !matches!(c[*pos], '[' | ']' | ',') {
                *pos += 1;
            }
            let word: String = c[start..*pos].iter().collect();
            let (multiplier, name) = match word.split_once('*') {
                Some((n, name)) => (
                    n.parse::<i64>()
                        .map_err(|_| bracket_err(format!("bad multiplier `{n}`")))?,
                    name.to_string(),
                ),
                None => (1, word),
            };
            if name.is_empty() || !name.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
                return Err(bracket_err(format!("bad leaf `{name}`")));
            }
            Ok(BracketExpr::Leaf { name, multiplier })
        }
        None => Err(bracket_err("unexpected end of bracket".into())),
    }
}

/// `⟨v, expr⟩`. A leaf pairs with its own generator by its multiplier; a
/// quadratic monomial `x·y` of `dv` contributes
/// `⟨x,L⟩⟨y,R⟩ + (−1)^{|x||y|}⟨y,L⟩⟨x,R⟩` to `⟨v,[L,R]⟩`.
pub fn whitehead_pair(model: &FreeCdga, v: &str, expr: &BracketExpr) -> Result<Q> {
    let vi = model.index_of(v)?;
    let dv = model.degrees()[vi as usize];
    let de = expr.degree(model)?;
    if dv != de {
        return Err(Error::DegreeMismatch(format!(
            "`{v}` has degree {dv} but {expr} has degree {de}"
        )));
    }
    Ok(pair(model, vi, expr))
}

fn pair(model: &FreeCdga, v: u32, expr: &BracketExpr) -> Q {
    match expr {
        BracketExpr::Leaf { name, multiplier } => match model.index_of(name) {
            Ok(i) if i == v => Q::from_integer((*multiplier).into()),
            _ => Q::zero(),
        },
        BracketExpr::Node(l, r) => {
            let deg = |e: &BracketExpr| e.degree(model).ok();
            let (Some(dl), Some(dr)) = (deg(l), deg(r)) else {
                return Q::zero();
            };
            if dl + dr - 1 != model.degrees()[v as usize] {
                return Q::zero();
            }
            let mut total = Q::zero();
            for (m, c) in model.diff_of(v).terms() {
                if m.length() != 2 {
                    continue;
                }
                let f = m.factors();
                let contribution = if f.len() == 1 {
                    let x = f[0].0;
                    Q::from_integer(2.into()) * pair(model, x, l) * pair(model, x, r)
                } else {
                    let (x, y) = (f[0].0, f[1].0);
                    let sign = if model.parities()[x as usize] && model.parities()[y as usize] {
                        -Q::one()
                    } else {
                        Q::one()
                    };
                    pair(model, x, l) * pair(model, y, r) + sign * pair(model, y, l) * pair(model, x, r)
                };
                total += c * contribution;
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::q;

    #[test]
    fn parse_and_print() {
        let e = BracketExpr::parse("[[a, 2*c], [a,[a,b]]]").unwrap();
        assert_eq!(e.to_string(), "[[a,2*c],[a,[a,b]]]");
        assert!(BracketExpr::parse("[a,b").is_err());
        assert!(BracketExpr::parse("[a,b]]").is_err());
        assert!(BracketExpr::parse("x*a").is_err());
    }

    #[test]
    fn table_pairings() {
        let m = fixtures::wedge_table();
        let p = |v, e: &str| whitehead_pair(&m, v, &BracketExpr::parse(e).unwrap()).unwrap();
        assert_eq!(p("u_b", "[a,b]"), q(1));
        assert_eq!(p("u_b", "[b,a]"), q(-1));
        assert_eq!(p("v_b", "[a,[a,b]]"), q(1));
        assert_eq!(p("z", "[[a,c],[a,[a,b]]]"), q(1));
        let err = whitehead_pair(&m, "z", &BracketExpr::parse("[a,b]").unwrap()).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch(_)));
    }

    #[test]
    fn even_square_term() {
        // dy = x^2 with x even: ⟨y,[x,x]⟩ = 2
        let m = FreeCdga::from_spec(&[("x", 2), ("y", 3)], &[("y", "x^2")]).unwrap();
        let e = BracketExpr::parse("[x,x]").unwrap();
        assert_eq!(whitehead_pair(&m, "y", &e).unwrap(), q(2));
    }
}
