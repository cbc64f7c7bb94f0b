//! Triple Massey products with explicit indeterminacy.

use crate::algebra::Cdga;
use crate::cohomology::{cohomology, CohomologySpace};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{eliminate_map, Echelon, SparseVec};

#[derive(Clone, Debug)]
pub struct MasseyProduct {
    pub degree: u32,
    /// `ξz − (−1)^{|x|} xη`
    pub representative: Element,
    pub xi: Element,
    pub eta: Element,
    /// Class coordinates in `H^degree`.
    pub class: SparseVec,
    /// Spanning set of `[x]·H + H·[z]`, reduced.
    pub indeterminacy: Echelon,
    pub cohomology_rank: usize,
}

impl MasseyProduct {
    /// Whether the class lies in the indeterminacy.
    pub fn vanishes(&self) -> bool {
        self.indeterminacy.reduce(&self.class).is_zero()
    }
}

fn homogeneous_degree(a: &Cdga, x: &Element, what: &str) -> Result<u32> {
    a.check_member(x)?;
    match a.degree(x)? {
        Some(k) => Ok(k),
        None => Err(Error::Invalid(format!(
            "{what} is zero; pass its degree via massey_triple_graded"
        ))),
    }
}

/// A deterministic `ξ` with `dξ = y`, or None if `y` is not exact.
pub fn primitive(a: &Cdga, y: &Element, k: u32) -> Option<Element> {
    if k == 0 {
        return a.is_zero(y).then(Element::zero);
    }
    let map = eliminate_map(&a.d_images(k - 1));
    map.solve(&a.coords(y, k)).map(|x| a.element(k - 1, &x))
}

/// `⟨x, y, z⟩` for cocycles of the given degrees.
pub fn massey_triple_graded(
    a: &Cdga,
    (x, p): (&Element, u32),
    (y, q): (&Element, u32),
    (z, r): (&Element, u32),
) -> Result<MasseyProduct> {
    for (e, name) in [(x, "x"), (y, "y"), (z, "z")] {
        a.check_member(e)?;
        if !a.is_zero(&a.d(e)) {
            return Err(Error::Invalid(format!("{name} is not a cocycle")));
        }
    }
    let xy = a.product(x, y);
    let yz = a.product(y, z);
    let xi = primitive(a, &xy, p + q)
        .ok_or_else(|| Error::NonvanishingProduct(format!("[x][y] = [{}] ≠ 0", a.format(&xy))))?;
    let eta = primitive(a, &yz, q + r)
        .ok_or_else(|| Error::NonvanishingProduct(format!("[y][z] = [{}] ≠ 0", a.format(&yz))))?;
    let degree = p + q + r - 1;
    let mut rep = a.product(&xi, z);
    let x_eta = a.product(x, &eta);
    if p % 2 == 1 {
        rep = &rep + &x_eta;
    } else {
        rep = &rep - &x_eta;
    }
    let h: CohomologySpace = cohomology(a, degree, degree)?;
    let class = h.class_of(&rep);
    let mut indeterminacy = Echelon::new();
    let left = cohomology(a, q + r - 1, q + r - 1)?;
    for w in left.representatives() {
        indeterminacy.insert(h.class_of(&a.product(x, &w)));
    }
    let right = cohomology(a, p + q - 1, p + q - 1)?;
    for w in right.representatives() {
        indeterminacy.insert(h.class_of(&a.product(&w, z)));
    }
    Ok(MasseyProduct {
        degree,
        representative: rep,
        xi,
        eta,
        class,
        indeterminacy,
        cohomology_rank: h.rank(),
    })
}

/// `⟨x, y, z⟩` for nonzero homogeneous cocycles. A zero entry has a zero
/// product; use [`massey_triple_graded`] to get its indeterminacy.
pub fn massey_triple(a: &Cdga, x: &Element, y: &Element, z: &Element) -> Result<MasseyProduct> {
    let p = homogeneous_degree(a, x, "x")?;
    let q = homogeneous_degree(a, y, "y")?;
    let r = homogeneous_degree(a, z, "z")?;
    massey_triple_graded(a, (x, p), (y, q), (z, r))
}

/// Every triple of cohomology basis classes with vanishing products and
/// total degree at most `cap`: `(degrees, product)`.
pub fn all_triples(a: &Cdga, cap: u32) -> Result<Vec<((u32, u32, u32), MasseyProduct)>> {
    let reps: Vec<(u32, Vec<Element>)> = (1..=cap)
        .map(|k| Ok((k, cohomology(a, k, cap)?.representatives())))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (p, xs) in &reps {
        for (q, ys) in &reps {
            for (r, zs) in &reps {
                if p + q + r - 1 > cap {
                    continue;
                }
                for x in xs {
                    for y in ys {
                        for z in zs {
                            match massey_triple_graded(a, (x, *p), (y, *q), (z, *r)) {
                                Ok(m) => out.push(((*p, *q, *r), m)),
                                Err(Error::NonvanishingProduct(_)) => {}
                                Err(e) => return Err(e),
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn wedge_triple_is_exact() {
        let (m, names) = fixtures::s3_wedge_s3_model();
        let a = Cdga::from(m.model.clone());
        let x = a.gen("a").unwrap();
        let y = a.gen("b").unwrap();
        let t = massey_triple(&a, &x, &x, &y).unwrap();
        assert_eq!(a.format(&t.representative), format!("a*{}", names.u_b));
        assert!(t.class.is_zero());
    }

    #[test]
    fn zero_entry_gives_zero() {
        let (m, _) = fixtures::s3_wedge_s3_model();
        let a = Cdga::from(m.model.clone());
        let b = a.gen("b").unwrap();
        let t = massey_triple_graded(&a, (&Element::zero(), 3), (&b, 3), (&b, 3)).unwrap();
        assert!(t.representative.is_zero() && t.vanishes());
    }

    #[test]
    fn nonzero_product_rejected() {
        let f = crate::FreeCdga::with_generators(&[("x", 2)]).unwrap();
        let a = Cdga::from(f);
        let x = a.gen("x").unwrap();
        assert!(matches!(
            massey_triple(&a, &x, &x, &x).unwrap_err(),
            Error::NonvanishingProduct(_)
        ));
    }
}
