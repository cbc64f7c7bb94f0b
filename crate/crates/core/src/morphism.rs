use crate::algebra::{Cdga, FreeCdga};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::monomial::Monomial;

/// A homomorphism of CDGAs out of a free algebra, determined by the images
/// of generators. Construction checks degrees and `φ∘d = d∘φ`.
#[derive(Clone, Debug)]
pub struct DgaMorphism {
    source: FreeCdga,
    target: Cdga,
    images: Vec<Element>,
}

impl DgaMorphism {
    pub fn new(source: FreeCdga, target: Cdga, images: Vec<Element>) -> Result<Self> {
        let phi = Self::with_degrees_checked(source, target, images)?;
        phi.check_chain_map()?;
        Ok(phi)
    }

    fn with_degrees_checked(source: FreeCdga, target: Cdga, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::Invalid(format!(
                "{} images for {} generators",
                images.len(),
                source.num_generators()
            )));
        }
        let mut reduced = Vec::with_capacity(images.len());
        for (g, img) in source.generators().iter().zip(images) {
            target.check_member(&img)?;
            let img = target.reduce(&img);
            match target.degree(&img) {
                Ok(None) => {}
                Ok(Some(k)) if k == g.degree => {}
                Ok(Some(k)) => {
                    return Err(Error::MorphismDegree {
                        name: g.name.clone(),
                        expected: g.degree,
                        found: k,
                    })
                }
                Err(_) => return Err(Error::Inhomogeneous),
            }
            reduced.push(img);
        }
        Ok(DgaMorphism {
            source,
            target,
            images: reduced,
        })
    }

    /// Trusted constructor for images already in target normal form that
    /// are known to commute with `d`.
    pub(crate) fn from_parts_unchecked(source: FreeCdga, target: Cdga, images: Vec<Element>) -> Self {
        DgaMorphism { source, target, images }
    }

    /// Images given by name in the expression syntax; unnamed generators go
    /// to zero.
    pub fn from_spec(source: &FreeCdga, target: &Cdga, images: &[(&str, &str)]) -> Result<Self> {
        let mut imgs = vec![Element::zero(); source.num_generators()];
        for (name, expr) in images {
            let i = source.index_of(name)?;
            imgs[i as usize] =
                crate::format::parse_expr(expr, target.free()).map_err(|message| Error::Parse { line: 0, message })?;
        }
        Self::new(source.clone(), target.clone(), imgs)
    }

    pub fn identity(a: &FreeCdga) -> Self {
        let images = (0..a.num_generators() as u32).map(|i| a.gen_at(i)).collect();
        DgaMorphism {
            source: a.clone(),
            target: Cdga::from(a.clone()),
            images,
        }
    }

    /// Sends every generator to zero.
    pub fn zero(source: &FreeCdga, target: &Cdga) -> Self {
        DgaMorphism {
            source: source.clone(),
            target: target.clone(),
            images: vec![Element::zero(); source.num_generators()],
        }
    }

    fn check_chain_map(&self) -> Result<()> {
        for (i, g) in self.source.generators().iter().enumerate() {
            let lhs = self.map(self.source.diff_of(i as u32));
            let rhs = self.target.d(&self.images[i]);
            if !self.target.is_zero(&(&lhs - &rhs)) {
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

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image_of(&self, name: &str) -> Result<&Element> {
        Ok(&self.images[self.source.index_of(name)? as usize])
    }

    pub fn map_monomial(&self, m: &Monomial) -> Element {
        let mut out = self.target.reduce(&Element::one());
        for &(g, e) in m.factors() {
            for _ in 0..e {
                out = self.target.product(&out, &self.images[g as usize]);
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }

    /// Image of `x` without membership validation.
    pub fn map(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            out.add_scaled(c, &self.map_monomial(m));
        }
        out
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.source.check_member(x)?;
        Ok(self.map(x))
    }

    /// Images of the degree-`k` source basis in target normal coordinates.
    pub fn matrix(&self, k: u32) -> Vec<SparseVec> {
        self.source
            .graded_basis(k)
            .monomials
            .iter()
            .map(|m| self.target.coords(&self.map_monomial(m), k))
            .collect()
    }

    /// `self ∘ first`; `first` must land in the (relation-free) source of
    /// `self`.
    pub fn compose(&self, first: &DgaMorphism) -> Result<DgaMorphism> {
        if !first.target.is_free() || *first.target.free() != self.source {
            return Err(Error::Invalid(
                "composition needs the first map to land in the second's source".into(),
            ));
        }
        let images = first.images.iter().map(|x| self.map(x)).collect();
        Ok(DgaMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// Agreement on generators (both maps with the same source and target).
    pub fn agrees_with(&self, other: &DgaMorphism) -> bool {
        self.images.len() == other.images.len()
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(a, b)| self.target.is_zero(&(a - b)))
    }

    pub fn describe(&self) -> Vec<(String, String)> {
        self.source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, img)| (g.name.clone(), self.target.format(img)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn grading_map_on_product() {
        let a = FreeCdga::with_generators(&[("a", 3), ("b", 3)]).unwrap();
        let phi = DgaMorphism::from_spec(&a, &Cdga::from(a.clone()), &[("a", "8*a"), ("b", "8*b")]).unwrap();
        let ab = a.product(&a.gen("a").unwrap(), &a.gen("b").unwrap());
        assert_eq!(phi.apply(&ab).unwrap(), ab.scaled(&q(64)));
    }

    #[test]
    fn chain_map_checked() {
        let s2 = FreeCdga::from_spec(&[("a", 2), ("b", 3)], &[("b", "a^2")]).unwrap();
        let bad = DgaMorphism::from_spec(&s2, &Cdga::from(s2.clone()), &[("a", "a")]);
        assert_eq!(bad.unwrap_err(), Error::NotChainMap("b".into()));
        let id = DgaMorphism::identity(&s2);
        let x = s2.product(&s2.gen("a").unwrap(), &s2.gen("b").unwrap());
        assert_eq!(id.apply(&x).unwrap(), x);
        let zero = DgaMorphism::zero(&s2, &Cdga::from(s2.clone()));
        assert!(zero.apply(&x).unwrap().is_zero());
    }
}
