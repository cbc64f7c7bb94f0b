use crate::algebra::{Cdga, FreeCdga};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{rank, Q};
use crate::monomial::Generator;

/// A finite graded-commutative ring given by generators and relations,
/// realized as a quotient CDGA with zero differential.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub name: String,
    pub algebra: Cdga,
    /// Fundamental (top) degree; everything above it is zero.
    pub fundamental: Option<u32>,
    /// Whether Poincaré duality was requested (and verified).
    pub duality: bool,
}

impl RingPresentation {
    pub fn new(
        name: &str,
        gens: Vec<Generator>,
        relations: Vec<Element>,
        fundamental: Option<u32>,
        duality: bool,
    ) -> Result<Self> {
        let n = gens.len();
        let free = FreeCdga::new(gens, vec![Element::zero(); n])?;
        let algebra = Cdga::quotient(free, relations, fundamental)?;
        let ring = RingPresentation {
            name: name.to_string(),
            algebra,
            fundamental,
            duality,
        };
        if duality {
            ring.check_duality()?;
        }
        Ok(ring)
    }

    pub fn from_spec(
        name: &str,
        gens: &[(&str, u32)],
        relations: &[&str],
        fundamental: Option<u32>,
        duality: bool,
    ) -> Result<Self> {
        let gens: Vec<Generator> = gens.iter().map(|&(n, d)| Generator::new(n, d)).collect();
        let bare = FreeCdga::with_generators(&gens.iter().map(|g| (g.name.as_str(), g.degree)).collect::<Vec<_>>())?;
        let rels = relations
            .iter()
            .enumerate()
            .map(|(i, r)| crate::format::parse_expr(r, &bare).map_err(|message| Error::Parse { line: i + 1, message }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, gens, rels, fundamental, duality)
    }

    pub fn free(&self) -> &FreeCdga {
        self.algebra.free()
    }

    pub fn betti(&self, k: u32) -> usize {
        self.algebra.dim(k)
    }

    /// Highest degree with nonzero part, searching up to `limit`.
    pub fn top_degree(&self, limit: u32) -> Option<u32> {
        let hi = self.fundamental.unwrap_or(limit);
        (0..=hi).rev().find(|&k| self.algebra.dim(k) > 0)
    }

    /// Checks that multiplication `H^k × H^{n−k} → H^n` is nonsingular for
    /// every `k`, with `H^n` one-dimensional.
    pub fn check_duality(&self) -> Result<()> {
        let n = self
            .fundamental
            .ok_or_else(|| Error::Invalid("duality needs a fundamental degree".into()))?;
        if self.algebra.dim(n) != 1 {
            return Err(Error::Invalid(format!(
                "top degree {n} has rank {}, expected 1",
                self.algebra.dim(n)
            )));
        }
        for k in 0..=n {
            let left = self.algebra.basis(k);
            let right = self.algebra.basis(n - k);
            if left.len() != right.len() {
                return Err(Error::Invalid(format!("ranks of degrees {k} and {} differ", n - k)));
            }
            let rows: Vec<Vec<Q>> = left
                .iter()
                .map(|l| {
                    right
                        .iter()
                        .map(|r| {
                            let p = self.algebra.product(
                                &Element::monomial(l.clone(), num_traits::One::one()),
                                &Element::monomial(r.clone(), num_traits::One::one()),
                            );
                            self.algebra.coords(&p, n).get(0)
                        })
                        .collect()
                })
                .collect();
            if rank(&rows) != left.len() {
                return Err(Error::Invalid(format!(
                    "pairing of degrees {k} and {} is singular",
                    n - k
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cp2_ring_has_duality() {
        let r = RingPresentation::from_spec("CP2", &[("x", 2)], &["x^3"], Some(4), true).unwrap();
        assert_eq!((0..=4).map(|k| r.betti(k)).collect::<Vec<_>>(), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn singular_pairing_rejected() {
        let r = RingPresentation::from_spec("bad", &[("x", 2), ("y", 2)], &["x^2", "x*y", "y^2"], Some(4), true);
        assert!(r.is_err());
    }
}
