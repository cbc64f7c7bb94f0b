use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec, Q};
use crate::monomial::{Generator, Monomial};

/// Monomial basis of one degree, in the canonical [`Monomial`] order.
#[derive(Debug)]
pub struct DegreeBasis {
    pub monomials: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        DegreeBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

#[derive(Debug)]
struct FreeInner {
    gens: Vec<Generator>,
    degrees: Vec<u32>,
    odd: Vec<bool>,
    index: HashMap<String, u32>,
    diff: Vec<Element>,
    bases: Mutex<HashMap<u32, Arc<DegreeBasis>>>,
    dmaps: Mutex<HashMap<u32, Arc<Vec<SparseVec>>>>,
}

/// A finite-type free graded-commutative algebra with a differential given
/// on generators and extended by the graded Leibniz rule.
///
/// Generator order is declaration order. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct FreeCdga {
    inner: Arc<FreeInner>,
}

impl PartialEq for FreeCdga {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.gens == other.inner.gens && self.inner.diff == other.inner.diff)
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FreeCdga {
    /// Builds the algebra, checking names, degrees, and `d² = 0`.
    pub fn new(gens: Vec<Generator>, diff: Vec<Element>) -> Result<Self> {
        let a = Self::unchecked(gens, diff)?;
        for (i, g) in a.inner.gens.iter().enumerate() {
            if !a.d(&a.inner.diff[i]).is_zero() {
                return Err(Error::NotSquareZero(g.name.clone()));
            }
        }
        Ok(a)
    }

    /// Like [`FreeCdga::new`] but without the `d² = 0` check (quotients
    /// only need it modulo their ideal).
    pub fn unchecked(gens: Vec<Generator>, diff: Vec<Element>) -> Result<Self> {
        assert_eq!(gens.len(), diff.len(), "one differential per generator");
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if !valid_name(&g.name) {
                return Err(Error::InvalidName(g.name.clone()));
            }
            if g.degree == 0 {
                return Err(Error::ZeroDegree(g.name.clone()));
            }
            if index.insert(g.name.clone(), i as u32).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        let degrees: Vec<u32> = gens.iter().map(|g| g.degree).collect();
        let odd = gens.iter().map(Generator::is_odd).collect();
        let a = FreeCdga {
            inner: Arc::new(FreeInner {
                gens,
                degrees,
                odd,
                index,
                diff: Vec::new(),
                bases: Mutex::default(),
                dmaps: Mutex::default(),
            }),
        };
        for (i, dx) in diff.iter().enumerate() {
            let g = &a.inner.gens[i];
            a.check_member(dx)?;
            for (m, _) in dx.terms() {
                let found = m.degree(&a.inner.degrees);
                if found != g.degree + 1 {
                    return Err(Error::DifferentialDegree {
                        name: g.name.clone(),
                        expected: g.degree + 1,
                        found,
                    });
                }
            }
        }
        let inner = Arc::try_unwrap(a.inner).expect("fresh Arc");
        Ok(FreeCdga {
            inner: Arc::new(FreeInner { diff, ..inner }),
        })
    }

    /// Zero-differential algebra on the given generators.
    pub fn with_generators(gens: &[(&str, u32)]) -> Result<Self> {
        let gens: Vec<Generator> = gens.iter().map(|&(n, d)| Generator::new(n, d)).collect();
        let diff = vec![Element::zero(); gens.len()];
        Self::new(gens, diff)
    }

    /// Convenience constructor: generators plus differentials written in the
    /// expression syntax (`d u = a*b`), unspecified ones closed.
    pub fn from_spec(gens: &[(&str, u32)], diffs: &[(&str, &str)]) -> Result<Self> {
        let gens: Vec<Generator> = gens.iter().map(|&(n, d)| Generator::new(n, d)).collect();
        Self::from_parts(gens, diffs)
    }

    pub fn from_parts(gens: Vec<Generator>, diffs: &[(&str, &str)]) -> Result<Self> {
        let bare = Self::unchecked(gens.clone(), vec![Element::zero(); gens.len()])?;
        let mut diff = vec![Element::zero(); gens.len()];
        for (name, expr) in diffs {
            let i = bare.index_of(name)?;
            diff[i as usize] =
                crate::format::parse_expr(expr, &bare).map_err(|message| Error::Parse { line: 0, message })?;
        }
        Self::new(gens, diff)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.inner.gens
    }

    pub fn num_generators(&self) -> usize {
        self.inner.gens.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.inner.degrees
    }

    pub fn parities(&self) -> &[bool] {
        &self.inner.odd
    }

    pub fn index_of(&self, name: &str) -> Result<u32> {
        self.inner
            .index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn generator(&self, name: &str) -> Result<&Generator> {
        Ok(&self.inner.gens[self.index_of(name)? as usize])
    }

    /// The generator `name` as an element.
    pub fn gen(&self, name: &str) -> Result<Element> {
        Ok(Element::monomial(Monomial::generator(self.index_of(name)?), Q::one()))
    }

    pub fn gen_at(&self, index: u32) -> Element {
        Element::monomial(Monomial::generator(index), Q::one())
    }

    /// Differential of the generator with the given index.
    pub fn diff_of(&self, index: u32) -> &Element {
        &self.inner.diff[index as usize]
    }

    pub fn differentials(&self) -> &[Element] {
        &self.inner.diff
    }

    pub fn check_member(&self, x: &Element) -> Result<()> {
        match x.max_index() {
            Some(i) if i as usize >= self.inner.gens.len() => Err(Error::Membership(format!(
                "uses generator #{i}, algebra has {}",
                self.inner.gens.len()
            ))),
            _ => Ok(()),
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.degree(&self.inner.degrees)
    }

    /// Degree of a homogeneous element (None for zero).
    pub fn degree(&self, x: &Element) -> Result<Option<u32>> {
        self.check_member(x)?;
        let mut deg = None;
        for (m, _) in x.terms() {
            let k = self.monomial_degree(m);
            if deg.is_some_and(|d| d != k) {
                return Err(Error::Inhomogeneous);
            }
            deg = Some(k);
        }
        Ok(deg)
    }

    pub fn monomial_product(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        a.multiply(b, &self.inner.odd)
    }

    /// Product without membership validation.
    pub fn product(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                if let Some((m, neg)) = self.monomial_product(m1, m2) {
                    let c = c1 * c2;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Graded-commutative product with Koszul signs.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_member(x)?;
        self.check_member(y)?;
        Ok(self.product(x, y))
    }

    pub fn power(&self, x: &Element, e: u32) -> Element {
        let mut out = Element::one();
        for _ in 0..e {
            out = self.product(&out, x);
        }
        out
    }

    /// The algebra endomorphism (ignoring `d`) with generator `i` sent to
    /// `images[i]`, applied to `x`.
    pub fn substitute(&self, x: &Element, images: &[Element]) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let mut t = Element::one();
            for g in m.sequence() {
                t = self.product(&t, &images[g as usize]);
            }
            out.add_scaled(c, &t);
        }
        out
    }

    fn d_monomial(&self, m: &Monomial, out: &mut Element, c: &Q) {
        let factors = m.factors();
        let mut prefix_degree = 0u32;
        for (pos, &(g, e)) in factors.iter().enumerate() {
            let dg = &self.inner.diff[g as usize];
            if !dg.is_zero() {
                // d(g^e) = e g^{e-1} dg ; sign from moving d past the prefix
                let prefix = Monomial::from_factors(factors[..pos].to_vec());
                let mut rest: Vec<(u32, u32)> = Vec::new();
                if e > 1 {
                    rest.push((g, e - 1));
                }
                let suffix = Monomial::from_factors(factors[pos + 1..].to_vec());
                let mut coef = c * Q::from_integer(e.into());
                if prefix_degree % 2 == 1 {
                    coef = -coef;
                }
                let left = Element::monomial(prefix, Q::one());
                let mid = self.product(&Element::monomial(Monomial::from_factors(rest), Q::one()), dg);
                let term = self.product(&self.product(&left, &mid), &Element::monomial(suffix, Q::one()));
                out.add_scaled(&coef, &term);
            }
            prefix_degree += self.inner.degrees[g as usize] * e;
        }
    }

    /// Leibniz extension of the generator differentials, unvalidated.
    pub fn d(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            self.d_monomial(m, &mut out, c);
        }
        out
    }

    pub fn differential(&self, x: &Element) -> Result<Element> {
        self.check_member(x)?;
        Ok(self.d(x))
    }

    /// All degree-`k` monomials in canonical order.
    pub fn graded_basis(&self, k: u32) -> Arc<DegreeBasis> {
        if let Some(b) = self.inner.bases.lock().unwrap().get(&k) {
            return b.clone();
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.enumerate(0, k, &mut current, &mut out);
        out.sort();
        let b = Arc::new(DegreeBasis::new(out));
        self.inner.bases.lock().unwrap().insert(k, b.clone());
        b
    }

    fn enumerate(&self, from: usize, left: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_factors(cur.clone()));
            return;
        }
        for i in from..self.inner.gens.len() {
            let deg = self.inner.degrees[i];
            if deg > left {
                continue;
            }
            let max_e = if self.inner.odd[i] { 1 } else { left / deg };
            for e in 1..=max_e {
                cur.push((i as u32, e));
                self.enumerate(i + 1, left - deg * e, cur, out);
                cur.pop();
            }
        }
    }

    pub fn dim(&self, k: u32) -> usize {
        self.graded_basis(k).len()
    }

    /// Coordinates of the degree-`k` part of `x` in the monomial basis.
    pub fn coords(&self, x: &Element, k: u32) -> SparseVec {
        let basis = self.graded_basis(k);
        SparseVec::from_pairs(
            x.terms()
                .filter_map(|(m, c)| basis.index.get(m).map(|&i| (i, c.clone()))),
        )
    }

    pub fn element(&self, k: u32, v: &SparseVec) -> Element {
        let basis = self.graded_basis(k);
        Element::from_terms(
            v.entries()
                .iter()
                .map(|(i, c)| (basis.monomials[*i].clone(), c.clone())),
        )
    }

    /// Images under `d` of the degree-`k` basis, in degree-`k+1` coordinates.
    pub fn d_images(&self, k: u32) -> Arc<Vec<SparseVec>> {
        if let Some(m) = self.inner.dmaps.lock().unwrap().get(&k) {
            return m.clone();
        }
        let basis = self.graded_basis(k);
        let images: Vec<SparseVec> = basis
            .monomials
            .iter()
            .map(|m| self.coords(&self.d(&Element::monomial(m.clone(), Q::one())), k + 1))
            .collect();
        let images = Arc::new(images);
        self.inner.dmaps.lock().unwrap().insert(k, images.clone());
        images
    }

    /// Appends generators (with differentials in the enlarged algebra).
    pub fn extended(&self, gens: Vec<Generator>, diffs: Vec<Element>) -> Result<FreeCdga> {
        let mut all_gens = self.inner.gens.clone();
        all_gens.extend(gens);
        let mut all_diffs = self.inner.diff.clone();
        all_diffs.extend(diffs);
        FreeCdga::new(all_gens, all_diffs)
    }

    /// Same generators and differentials, new stage tags.
    pub fn with_stages(&self, stages: &[Option<u32>]) -> FreeCdga {
        let gens = self
            .inner
            .gens
            .iter()
            .zip(stages)
            .map(|(g, s)| Generator { stage: *s, ..g.clone() })
            .collect();
        FreeCdga::unchecked(gens, self.inner.diff.clone()).expect("same generators")
    }

    /// Whether `x` has no constant or linear (single-generator) term.
    pub fn is_decomposable(&self, x: &Element) -> bool {
        x.terms().all(|(m, _)| m.length() >= 2)
    }

    pub fn format(&self, x: &Element) -> String {
        format_element(x, &|i| self.inner.gens[i as usize].name.clone())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        format_monomial(m, &|i| self.inner.gens[i as usize].name.clone())
    }
}

pub fn format_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial, name: &dyn Fn(u32) -> String) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    m.factors()
        .iter()
        .map(|&(i, e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Renders in the presentation-file expression syntax.
pub fn format_element(x: &Element, name: &dyn Fn(u32) -> String) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (m, c)) in x.terms().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(m, name);
        if m.is_one() {
            s.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            s.push_str(&mono);
        } else {
            let _ = write!(s, "{}*{}", format_rational(&abs), mono);
        }
    }
    s
}

#[derive(Debug)]
struct QuotientDegree {
    /// Ideal in free coordinates, fully reduced (pivots = leading monomials).
    ideal: Echelon,
    /// Free indices of the normal (non-pivot) monomials, ascending.
    normal: Vec<usize>,
    normal_pos: HashMap<usize, usize>,
}

#[derive(Debug)]
struct CdgaInner {
    free: FreeCdga,
    relations: Vec<Element>,
    top: Option<u32>,
    degrees: Mutex<HashMap<u32, Arc<QuotientDegree>>>,
    dmaps: Mutex<HashMap<u32, Arc<Vec<SparseVec>>>>,
}

/// A CDGA presented as a free algebra modulo a homogeneous differential
/// ideal, optionally with everything above a top degree killed.
///
/// Normal forms: in each degree the ideal is kept in reduced echelon form
/// with the earliest monomial of each row as pivot; an element is in normal
/// form when it only involves non-pivot monomials.
#[derive(Clone, Debug)]
pub struct Cdga {
    inner: Arc<CdgaInner>,
}

impl From<FreeCdga> for Cdga {
    fn from(free: FreeCdga) -> Self {
        Cdga {
            inner: Arc::new(CdgaInner {
                free,
                relations: Vec::new(),
                top: None,
                degrees: Mutex::default(),
                dmaps: Mutex::default(),
            }),
        }
    }
}

impl Cdga {
    /// `free / (relations)`, truncated above `top` when given. The free
    /// algebra's differential only needs to square to zero modulo the ideal.
    pub fn quotient(free: FreeCdga, relations: Vec<Element>, top: Option<u32>) -> Result<Self> {
        for r in &relations {
            free.check_member(r)?;
            if free.degree(r).is_err() {
                return Err(Error::InhomogeneousRelation(free.format(r)));
            }
        }
        let relations: Vec<Element> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let a = Cdga {
            inner: Arc::new(CdgaInner {
                free,
                relations,
                top,
                degrees: Mutex::default(),
                dmaps: Mutex::default(),
            }),
        };
        let free = a.free();
        for r in &a.inner.relations {
            if !a.reduce(&free.d(r)).is_zero() {
                return Err(Error::IdealNotClosed(free.format(r)));
            }
        }
        for (i, g) in free.generators().iter().enumerate() {
            let dg = free.diff_of(i as u32);
            if !a.reduce(&free.d(dg)).is_zero() {
                return Err(Error::NotSquareZero(g.name.clone()));
            }
        }
        Ok(a)
    }

    pub fn free(&self) -> &FreeCdga {
        &self.inner.free
    }

    pub fn relations(&self) -> &[Element] {
        &self.inner.relations
    }

    pub fn top(&self) -> Option<u32> {
        self.inner.top
    }

    pub fn is_free(&self) -> bool {
        self.inner.relations.is_empty() && self.inner.top.is_none()
    }

    pub fn same_as(&self, other: &Cdga) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.free == other.inner.free
                && self.inner.relations == other.inner.relations
                && self.inner.top == other.inner.top)
    }

    fn degree_data(&self, k: u32) -> Arc<QuotientDegree> {
        if let Some(q) = self.inner.degrees.lock().unwrap().get(&k) {
            return q.clone();
        }
        let free = &self.inner.free;
        let killed = self.inner.top.is_some_and(|t| k > t);
        let mut ideal = Echelon::new();
        if killed {
            // no enumeration needed: the whole degree is zero
        } else {
            for r in &self.inner.relations {
                let e = free.degree(r).ok().flatten().unwrap_or(0);
                if e > k {
                    continue;
                }
                let mult = free.graded_basis(k - e);
                for m in &mult.monomials {
                    let prod = free.product(&Element::monomial(m.clone(), Q::one()), r);
                    ideal.insert(free.coords(&prod, k));
                }
            }
        }
        let normal: Vec<usize> = if killed {
            Vec::new()
        } else {
            (0..free.dim(k)).filter(|&i| !ideal.is_pivot(i)).collect()
        };
        let normal_pos = normal.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let q = Arc::new(QuotientDegree {
            ideal,
            normal,
            normal_pos,
        });
        self.inner.degrees.lock().unwrap().insert(k, q.clone());
        q
    }

    fn killed(&self, k: u32) -> bool {
        self.inner.top.is_some_and(|t| k > t)
    }

    /// Normal form of `x`.
    pub fn reduce(&self, x: &Element) -> Element {
        if self.is_free() {
            return x.clone();
        }
        let free = &self.inner.free;
        let mut by_degree: BTreeMap<u32, Element> = BTreeMap::new();
        for (m, c) in x.terms() {
            by_degree
                .entry(free.monomial_degree(m))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        let mut out = Element::zero();
        for (k, part) in by_degree {
            if self.killed(k) {
                continue;
            }
            let q = self.degree_data(k);
            if q.ideal.rank() == 0 {
                out.add_scaled(&Q::one(), &part);
                continue;
            }
            let rem = q.ideal.reduce(&free.coords(&part, k));
            out.add_scaled(&Q::one(), &free.element(k, &rem));
        }
        out
    }

    pub fn check_member(&self, x: &Element) -> Result<()> {
        self.inner.free.check_member(x)
    }

    pub fn gen(&self, name: &str) -> Result<Element> {
        Ok(self.reduce(&self.inner.free.gen(name)?))
    }

    pub fn product(&self, x: &Element, y: &Element) -> Element {
        self.reduce(&self.inner.free.product(x, y))
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.reduce(&self.inner.free.multiply(x, y)?))
    }

    pub fn power(&self, x: &Element, e: u32) -> Element {
        let mut out = self.reduce(&Element::one());
        for _ in 0..e {
            out = self.product(&out, x);
        }
        out
    }

    pub fn d(&self, x: &Element) -> Element {
        self.reduce(&self.inner.free.d(x))
    }

    pub fn differential(&self, x: &Element) -> Result<Element> {
        Ok(self.reduce(&self.inner.free.differential(x)?))
    }

    pub fn degree(&self, x: &Element) -> Result<Option<u32>> {
        self.inner.free.degree(x)
    }

    pub fn is_zero(&self, x: &Element) -> bool {
        self.reduce(x).is_zero()
    }

    /// Normal monomials of degree `k`.
    pub fn basis(&self, k: u32) -> Vec<Monomial> {
        if self.is_free() {
            return self.inner.free.graded_basis(k).monomials.clone();
        }
        let q = self.degree_data(k);
        let fb = self.inner.free.graded_basis(k);
        q.normal.iter().map(|&i| fb.monomials[i].clone()).collect()
    }

    pub fn dim(&self, k: u32) -> usize {
        if self.is_free() {
            return self.inner.free.dim(k);
        }
        self.degree_data(k).normal.len()
    }

    /// Coordinates of the degree-`k` part of `x` in the normal basis.
    pub fn coords(&self, x: &Element, k: u32) -> SparseVec {
        let free = &self.inner.free;
        if self.is_free() {
            return free.coords(x, k);
        }
        if self.killed(k) {
            return SparseVec::new();
        }
        let q = self.degree_data(k);
        let rem = q.ideal.reduce(&free.coords(x, k));
        SparseVec::from_pairs(rem.entries().iter().map(|(i, c)| (q.normal_pos[i], c.clone())))
    }

    pub fn element(&self, k: u32, v: &SparseVec) -> Element {
        let free = &self.inner.free;
        if self.is_free() {
            return free.element(k, v);
        }
        let q = self.degree_data(k);
        let fb = free.graded_basis(k);
        Element::from_terms(
            v.entries()
                .iter()
                .map(|(i, c)| (fb.monomials[q.normal[*i]].clone(), c.clone())),
        )
    }

    /// Images under `d` of the degree-`k` normal basis, in degree-`k+1`
    /// normal coordinates.
    pub fn d_images(&self, k: u32) -> Arc<Vec<SparseVec>> {
        if self.is_free() {
            return self.inner.free.d_images(k);
        }
        if let Some(m) = self.inner.dmaps.lock().unwrap().get(&k) {
            return m.clone();
        }
        let images: Vec<SparseVec> = self
            .basis(k)
            .into_iter()
            .map(|m| {
                let dm = self.inner.free.d(&Element::monomial(m, Q::one()));
                self.coords(&dm, k + 1)
            })
            .collect();
        let images = Arc::new(images);
        self.inner.dmaps.lock().unwrap().insert(k, images.clone());
        images
    }

    pub fn format(&self, x: &Element) -> String {
        self.inner.free.format(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn koszul_examples() {
        let a = FreeCdga::with_generators(&[("a", 3), ("b", 3), ("x", 2)]).unwrap();
        let (ea, eb, ex) = (a.gen("a").unwrap(), a.gen("b").unwrap(), a.gen("x").unwrap());
        assert!(a.multiply(&ea, &ea).unwrap().is_zero());
        let ab = a.multiply(&ea, &eb).unwrap();
        let ba = a.multiply(&eb, &ea).unwrap();
        assert_eq!(ab, -ba);
        assert_eq!(a.format(&a.multiply(&ex, &ex).unwrap()), "x^2");
    }

    #[test]
    fn leibniz_on_table_generator() {
        let a = FreeCdga::from_spec(&[("a", 3), ("b", 3), ("c", 5), ("u_b", 5)], &[("u_b", "a*b")]).unwrap();
        let ub = a.gen("u_b").unwrap();
        let c = a.gen("c").unwrap();
        assert_eq!(a.format(&a.d(&ub)), "a*b");
        let dubc = a.d(&a.product(&ub, &c));
        assert_eq!(a.format(&dubc), "a*b*c");
    }

    #[test]
    fn differential_degree_checked() {
        let err = FreeCdga::from_spec(&[("a", 2), ("b", 3)], &[("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::DifferentialDegree { .. }));
    }

    #[test]
    fn square_zero_checked() {
        // d(z) = yx gives d²z = x³
        let err = FreeCdga::from_spec(&[("x", 2), ("y", 3), ("z", 4)], &[("y", "x^2"), ("z", "y*x")]).unwrap_err();
        assert_eq!(err, Error::NotSquareZero("z".into()));
    }

    #[test]
    fn bases() {
        let a = FreeCdga::with_generators(&[("a", 3), ("b", 3)]).unwrap();
        assert_eq!(a.dim(6), 1);
        let x = FreeCdga::with_generators(&[("x", 2)]).unwrap();
        assert_eq!(x.format_monomial(&x.graded_basis(4).monomials[0]), "x^2");
    }

    #[test]
    fn quotient_normal_form() {
        let free = FreeCdga::with_generators(&[("x", 2)]).unwrap();
        let x3 = free.power(&free.gen("x").unwrap(), 3);
        let cp2 = Cdga::quotient(free.clone(), vec![x3], None).unwrap();
        assert_eq!(cp2.dim(4), 1);
        assert_eq!(cp2.dim(6), 0);
        let top = Cdga::quotient(free, vec![], Some(4)).unwrap();
        assert_eq!(top.dim(6), 0);
        assert_eq!(top.dim(4), 1);
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let free = FreeCdga::from_spec(&[("x", 2), ("y", 3)], &[("y", "x^2")]).unwrap();
        let y = free.gen("y").unwrap();
        assert!(matches!(
            Cdga::quotient(free, vec![y], None),
            Err(Error::IdealNotClosed(_))
        ));
    }

    #[test]
    fn formatting() {
        let a = FreeCdga::with_generators(&[("a", 2), ("b", 2)]).unwrap();
        let x = Element::from_terms([
            (Monomial::generator(0), q(2)),
            (Monomial::generator(1), crate::linalg::q_frac(-1, 2)),
        ]);
        assert_eq!(a.format(&x), "2*a - 1/2*b");
    }
}
