//! Elements of `B ⊗ Q⟨t, dt⟩`, the integration operators, and DGA homotopies.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::{Cdga, FreeCdga};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{binomial, Q};
use crate::morphism::DgaMorphism;

pub const DEFAULT_T_BOUND: u32 = 16;

/// `Σ b_i ⊗ t^i + Σ c_i ⊗ t^i dt` with coefficients in a fixed CDGA.
/// Exponents above `bound` are an error rather than being dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyElement {
    body: BTreeMap<u32, Element>,
    dt: BTreeMap<u32, Element>,
    bound: u32,
}

/// Flips the sign of every odd-degree monomial: `x ↦ Σ (−1)^{|m|} c m`.
fn parity_twist(b: &Cdga, x: &Element) -> Element {
    Element::from_terms(x.terms().map(|(m, c)| {
        if b.free().monomial_degree(m) % 2 == 1 {
            (m.clone(), -c.clone())
        } else {
            (m.clone(), c.clone())
        }
    }))
}

fn insert(map: &mut BTreeMap<u32, Element>, i: u32, x: &Element, c: &Q) {
    let e = map.entry(i).or_insert_with(Element::zero);
    e.add_scaled(c, x);
    if e.is_zero() {
        map.remove(&i);
    }
}

impl HomotopyElement {
    pub fn zero() -> Self {
        Self::with_bound(DEFAULT_T_BOUND)
    }

    pub fn with_bound(bound: u32) -> Self {
        HomotopyElement {
            body: BTreeMap::new(),
            dt: BTreeMap::new(),
            bound,
        }
    }

    /// `x ⊗ 1`
    pub fn constant(x: &Element) -> Self {
        let mut h = Self::zero();
        insert(&mut h.body, 0, x, &Q::one());
        h
    }

    pub fn from_parts(body: Vec<(u32, Element)>, dt: Vec<(u32, Element)>, bound: u32) -> Result<Self> {
        let mut h = Self::with_bound(bound);
        for (i, x) in body {
            h.add_body(i, &x)?;
        }
        for (i, x) in dt {
            h.add_dt(i, &x)?;
        }
        Ok(h)
    }

    fn check(&self, i: u32) -> Result<()> {
        if i > self.bound {
            return Err(Error::TDegreeOverflow {
                found: i,
                bound: self.bound,
            });
        }
        Ok(())
    }

    /// Adds `x ⊗ t^i`.
    pub fn add_body(&mut self, i: u32, x: &Element) -> Result<()> {
        self.check(i)?;
        insert(&mut self.body, i, x, &Q::one());
        Ok(())
    }

    /// Adds `x ⊗ t^i dt`.
    pub fn add_dt(&mut self, i: u32, x: &Element) -> Result<()> {
        self.check(i)?;
        insert(&mut self.dt, i, x, &Q::one());
        Ok(())
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn body(&self) -> &BTreeMap<u32, Element> {
        &self.body
    }

    pub fn dt_part(&self) -> &BTreeMap<u32, Element> {
        &self.dt
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_empty() && self.dt.is_empty()
    }

    /// Coefficients reduced modulo the relations of `b`.
    pub fn normalized(&self, b: &Cdga) -> Self {
        let mut out = Self::with_bound(self.bound);
        for (&i, x) in &self.body {
            insert(&mut out.body, i, &b.reduce(x), &Q::one());
        }
        for (&i, x) in &self.dt {
            insert(&mut out.dt, i, &b.reduce(x), &Q::one());
        }
        out
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = Self::with_bound(self.bound);
        for (&i, x) in &self.body {
            insert(&mut out.body, i, x, c);
        }
        for (&i, x) in &self.dt {
            insert(&mut out.dt, i, x, c);
        }
        out
    }

    pub fn add_scaled(&self, c: &Q, other: &Self) -> Self {
        let mut out = self.clone();
        out.bound = self.bound.max(other.bound);
        for (&i, x) in &other.body {
            insert(&mut out.body, i, x, c);
        }
        for (&i, x) in &other.dt {
            insert(&mut out.dt, i, x, c);
        }
        out
    }

    /// `d(a t^i) = da t^i + (−1)^{|a|} i a t^{i−1} dt`, `d(a t^i dt) = da t^i dt`.
    pub fn d(&self, b: &Cdga) -> Self {
        let mut out = Self::with_bound(self.bound);
        for (&i, x) in &self.body {
            insert(&mut out.body, i, &b.d(x), &Q::one());
            if i > 0 {
                insert(&mut out.dt, i - 1, &parity_twist(b, x), &Q::from_integer(i.into()));
            }
        }
        for (&i, x) in &self.dt {
            insert(&mut out.dt, i, &b.d(x), &Q::one());
        }
        out
    }

    /// `∫₀ᵗ`: kills `a t^i`, sends `a t^i dt` to `(−1)^{|a|} a t^{i+1}/(i+1)`.
    pub fn integrate_0_t(&self, b: &Cdga) -> Result<Self> {
        let mut out = Self::with_bound(self.bound);
        for (&i, x) in &self.dt {
            out.check(i + 1)?;
            let c = Q::new(One::one(), (i + 1).into());
            insert(&mut out.body, i + 1, &parity_twist(b, x), &c);
        }
        Ok(out)
    }

    /// `∫₀¹`: `a t^i dt ↦ (−1)^{|a|} a/(i+1)`.
    pub fn integrate_0_1(&self, b: &Cdga) -> Element {
        let mut out = Element::zero();
        for (&i, x) in &self.dt {
            out.add_scaled(&Q::new(One::one(), (i + 1).into()), &parity_twist(b, x));
        }
        out
    }

    /// Restriction to `t = 0, dt = 0`.
    pub fn at_zero(&self) -> Element {
        self.body.get(&0).cloned().unwrap_or_else(Element::zero)
    }

    /// Restriction to `t = 1, dt = 0`.
    pub fn at_one(&self) -> Element {
        let mut out = Element::zero();
        for x in self.body.values() {
            out.add_scaled(&Q::one(), x);
        }
        out
    }

    /// Substitution `t ↦ 1 − t`, `dt ↦ −dt`; an involution.
    pub fn reversed(&self) -> Self {
        HomotopyElement {
            body: reverse_part(&self.body, 1),
            dt: reverse_part(&self.dt, -1),
            bound: self.bound,
        }
    }

    /// Product in `B ⊗ Q⟨t, dt⟩`; `(a t^i dt)(b t^j) = (−1)^{|b|} ab t^{i+j} dt`.
    pub fn product(&self, other: &Self, b: &Cdga) -> Result<Self> {
        let mut out = Self::with_bound(self.bound.max(other.bound));
        for (&i, x) in &self.body {
            for (&j, y) in &other.body {
                out.check(i + j)?;
                insert(&mut out.body, i + j, &b.product(x, y), &Q::one());
            }
            for (&j, y) in &other.dt {
                out.check(i + j)?;
                insert(&mut out.dt, i + j, &b.product(x, y), &Q::one());
            }
        }
        for (&i, x) in &self.dt {
            for (&j, y) in &other.body {
                out.check(i + j)?;
                insert(&mut out.dt, i + j, &b.product(x, &parity_twist(b, y)), &Q::one());
            }
        }
        Ok(out)
    }

    pub fn format(&self, b: &Cdga) -> String {
        let mut parts = Vec::new();
        for (&i, x) in &self.body {
            parts.push(format!("({}){}", b.format(x), t_power(i)));
        }
        for (&i, x) in &self.dt {
            parts.push(format!("({}){} dt", b.format(x), t_power(i)));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn t_power(i: u32) -> String {
    match i {
        0 => String::new(),
        1 => " t".into(),
        _ => format!(" t^{i}"),
    }
}

fn reverse_part(part: &BTreeMap<u32, Element>, sign: i64) -> BTreeMap<u32, Element> {
    let mut out = BTreeMap::new();
    for (&i, x) in part {
        for j in 0..=i {
            let mut c = Q::from_integer((binomial(i as u64, j as u64) as i64).into());
            if (j % 2 == 1) != (sign < 0) {
                c = -c;
            }
            insert(&mut out, j, x, &c);
        }
    }
    out
}

/// A DGA map `H: A → B ⊗ Q⟨t, dt⟩` out of a free algebra, given on
/// generators. Its endpoints are the restrictions to `t = 0` and `t = 1`.
#[derive(Clone, Debug)]
pub struct DgaHomotopy {
    source: FreeCdga,
    target: Cdga,
    images: Vec<HomotopyElement>,
}

impl DgaHomotopy {
    /// Checks `H(dv) = dH(v)` on generators.
    pub fn new(source: FreeCdga, target: Cdga, images: Vec<HomotopyElement>) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::Invalid(format!(
                "{} images for {} generators",
                images.len(),
                source.num_generators()
            )));
        }
        let images = images.iter().map(|h| h.normalized(&target)).collect();
        let h = DgaHomotopy { source, target, images };
        h.check_chain_map()?;
        Ok(h)
    }

    /// `H(v) = φ(v) ⊗ 1`.
    pub fn constant(phi: &DgaMorphism) -> Self {
        DgaHomotopy {
            source: phi.source().clone(),
            target: phi.target().clone(),
            images: phi.images().iter().map(HomotopyElement::constant).collect(),
        }
    }

    pub fn check_chain_map(&self) -> Result<()> {
        for (i, g) in self.source.generators().iter().enumerate() {
            let lhs = self.map(self.source.diff_of(i as u32))?;
            let rhs = self.images[i].d(&self.target);
            if !lhs.add_scaled(&-Q::one(), &rhs).normalized(&self.target).is_zero() {
                return Err(Error::NotChainMap(g.name.clone()));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &FreeCdga {
        &self.source
    }

    pub fn target(&self) -> &Cdga {
        &self.target
    }

    pub fn images(&self) -> &[HomotopyElement] {
        &self.images
    }

    /// Multiplicative extension to an arbitrary element of the source.
    pub fn map(&self, x: &Element) -> Result<HomotopyElement> {
        let bound = self.images.iter().map(|h| h.bound()).max().unwrap_or(DEFAULT_T_BOUND);
        let mut out = HomotopyElement::with_bound(bound);
        for (m, c) in x.terms() {
            let mut term = HomotopyElement::constant(&Element::one());
            for &(g, e) in m.factors() {
                for _ in 0..e {
                    term = term.product(&self.images[g as usize], &self.target)?;
                }
            }
            out = out.add_scaled(c, &term);
        }
        Ok(out.normalized(&self.target))
    }

    fn endpoint(&self, at: impl Fn(&HomotopyElement) -> Element) -> DgaMorphism {
        let images = self.images.iter().map(|h| self.target.reduce(&at(h))).collect();
        DgaMorphism::from_parts_unchecked(self.source.clone(), self.target.clone(), images)
    }

    /// `H|_{t=0, dt=0}`
    pub fn start(&self) -> DgaMorphism {
        self.endpoint(HomotopyElement::at_zero)
    }

    /// `H|_{t=1, dt=0}`
    pub fn end(&self) -> DgaMorphism {
        self.endpoint(HomotopyElement::at_one)
    }

    /// Checks that the endpoints agree with `f` (at 0) and `g` (at 1).
    pub fn check_endpoints(&self, f: &DgaMorphism, g: &DgaMorphism) -> Result<()> {
        if !self.start().agrees_with(f) {
            return Err(Error::EndpointMismatch("restriction to t = 0".into()));
        }
        if !self.end().agrees_with(g) {
            return Err(Error::EndpointMismatch("restriction to t = 1".into()));
        }
        Ok(())
    }

    /// The same homotopy run backwards.
    pub fn reversed(&self) -> Self {
        DgaHomotopy {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.iter().map(HomotopyElement::reversed).collect(),
        }
    }

    pub fn describe(&self) -> Vec<(String, String)> {
        self.source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, h)| (g.name.clone(), h.format(&self.target)))
            .collect()
    }
}

/// Whether `H̃` restricted to the first generators of its source equals `H`.
pub fn restricts_to(ext: &DgaHomotopy, base: &DgaHomotopy) -> bool {
    base.images
        .iter()
        .zip(&ext.images)
        .all(|(a, b)| a.add_scaled(&-Q::one(), b).normalized(&ext.target).is_zero())
        && base.images.len() <= ext.images.len()
}
