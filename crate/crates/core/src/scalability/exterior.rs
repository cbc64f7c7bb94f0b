use itertools::Itertools;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{Cdga, FreeCdga};
use crate::element::Element;
use crate::linalg::{Echelon, Q};
use crate::monomial::{Generator, Monomial};
use crate::morphism::DgaMorphism;
use crate::ring::RingPresentation;

/// `⋀*R^N` on degree-one generators `dx1 … dxN` (indices are 0-based in
/// the API).
#[derive(Clone, Debug)]
pub struct ExteriorAlgebra {
    dim: usize,
    algebra: Cdga,
}

impl ExteriorAlgebra {
    pub fn new(dim: usize) -> Self {
        let gens = (1..=dim).map(|i| Generator::new(format!("dx{i}"), 1)).collect();
        let free = FreeCdga::new(gens, vec![Element::zero(); dim]).expect("valid generators");
        ExteriorAlgebra {
            dim,
            algebra: Cdga::from(free),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra(&self) -> &Cdga {
        &self.algebra
    }

    /// `dx_I` for a strictly increasing index set.
    pub fn form(&self, subset: &[usize]) -> Element {
        debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
        Element::monomial(
            Monomial::from_factors(subset.iter().map(|&i| (i as u32, 1)).collect()),
            Q::one(),
        )
    }

    pub fn volume(&self) -> Element {
        self.form(&(0..self.dim).collect::<Vec<_>>())
    }

    pub fn complement(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.dim).filter(|i| !subset.contains(i)).collect()
    }

    /// Coefficient of the volume form in `x` (of top degree).
    pub fn volume_coefficient(&self, x: &Element) -> Q {
        x.coefficient(&Monomial::from_factors((0..self.dim as u32).map(|i| (i, 1)).collect()))
    }

    /// `ε(I)` with `dx_I ∧ dx_{I^c} = ε(I) vol`.
    pub fn shuffle_sign(&self, subset: &[usize]) -> i64 {
        let comp = self.complement(subset);
        let inversions = subset
            .iter()
            .map(|&i| comp.iter().filter(|&&j| j < i).count())
            .sum::<usize>();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `k`-subsets of `0..dim` in lexicographic order.
    pub fn subsets(&self, k: usize) -> Vec<Vec<usize>> {
        (0..self.dim).combinations(k).collect()
    }

    /// `k`-subsets containing the index 0, in lexicographic order.
    pub fn subsets_with_first(&self, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return Vec::new();
        }
        (1..self.dim)
            .combinations(k - 1)
            .map(|rest| std::iter::once(0).chain(rest).collect())
            .collect()
    }
}

/// Images of a ring's generators in an exterior algebra.
#[derive(Clone, Debug)]
pub struct EmbeddingWitness {
    pub target: ExteriorAlgebra,
    pub images: Vec<Element>,
}

impl EmbeddingWitness {
    pub fn describe(&self, ring: &RingPresentation) -> Vec<(String, String)> {
        ring.free()
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, x)| (g.name.clone(), self.target.algebra.format(x)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub passed: bool,
    /// `duality` (top class only) or `degreewise` (full independence).
    pub method: String,
    pub failure: Option<String>,
}

impl WitnessCheck {
    fn fail(method: &str, why: String) -> Self {
        WitnessCheck {
            passed: false,
            method: method.into(),
            failure: Some(why),
        }
    }
}

/// Checks that every relation maps to zero and that the induced map on the
/// ring is injective. With the duality flag set, injectivity reduces to the
/// top class having nonzero image.
pub fn verify_witness(ring: &RingPresentation, w: &EmbeddingWitness) -> WitnessCheck {
    let method = if ring.duality { "duality" } else { "degreewise" };
    let free = ring.free();
    let ext = w.target.algebra();
    let phi = match DgaMorphism::new(free.clone(), ext.clone(), w.images.clone()) {
        Ok(phi) => phi,
        Err(e) => return WitnessCheck::fail(method, e.to_string()),
    };
    for r in ring.algebra.relations() {
        let img = phi.map(r);
        if !img.is_zero() {
            return WitnessCheck::fail(
                method,
                format!("relation {} maps to {}", free.format(r), ext.format(&img)),
            );
        }
    }
    let max_deg = free.degrees().iter().copied().max().unwrap_or(0);
    let top = ring.fundamental.unwrap_or(w.target.dim() as u32);
    if let Some(n) = ring.fundamental {
        // monomials just above the fundamental degree generate the truncation
        if (w.target.dim() as u32) > n {
            for k in n + 1..=(n + max_deg).min(w.target.dim() as u32) {
                for m in &free.graded_basis(k).monomials {
                    if !phi.map_monomial(m).is_zero() {
                        return WitnessCheck::fail(
                            method,
                            format!(
                                "{} lies above the fundamental degree but maps to nonzero",
                                free.format_monomial(m)
                            ),
                        );
                    }
                }
            }
        }
    }
    if ring.duality {
        let n = ring.fundamental.expect("duality implies a fundamental degree");
        let basis = ring.algebra.basis(n);
        let img = phi.map_monomial(&basis[0]);
        if img.is_zero() {
            return WitnessCheck::fail(method, "the fundamental class maps to zero".into());
        }
    } else {
        for k in 1..=top {
            let basis = ring.algebra.basis(k);
            let rows: Vec<_> = basis.iter().map(|m| ext.coords(&phi.map_monomial(m), k)).collect();
            if Echelon::from_rows(rows).rank() != basis.len() {
                return WitnessCheck::fail(method, format!("images in degree {k} are linearly dependent"));
            }
        }
    }
    WitnessCheck {
        passed: true,
        method: method.into(),
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn shuffle_signs() {
        let e = ExteriorAlgebra::new(4);
        for i in e.subsets(2) {
            let c = e.complement(&i);
            let p = e.algebra().product(&e.form(&i), &e.form(&c));
            assert_eq!(e.volume_coefficient(&p), q(e.shuffle_sign(&i)));
        }
        assert_eq!(e.subsets_with_first(2), vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
    }

    #[test]
    fn zero_witness_fails_injectivity() {
        let r = RingPresentation::from_spec("S", &[("a", 2)], &[], Some(4), false).unwrap();
        let w = EmbeddingWitness {
            target: ExteriorAlgebra::new(4),
            images: vec![Element::zero()],
        };
        let c = verify_witness(&r, &w);
        assert!(!c.passed);
    }
}
