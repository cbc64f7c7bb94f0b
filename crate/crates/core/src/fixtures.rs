//! Small algebras and extension problems shared by tests, the
//! verification battery, and the demo.

use crate::algebra::{Cdga, FreeCdga};
use crate::element::Element;
use crate::format::{parse_presentation, Presentation};
use crate::homotopy::{DgaHomotopy, HomotopyElement};
use crate::linalg::{eliminate_map, q, Echelon, SparseVec};
use crate::minimal::{attach_cell_model, minimal_model, CellAttachmentModel, MinimalModel};
use crate::monomial::Monomial;
use crate::morphism::DgaMorphism;
use crate::obstruction::ExtensionProblem;
use crate::ring::RingPresentation;

pub const S2_CDGA: &str = include_str!("../../../data/s2.cdga");
pub const CP2_RING: &str = include_str!("../../../data/cp2.ring");
pub const S2XS2_RING: &str = include_str!("../../../data/s2xs2.ring");
pub const WEDGE_RING: &str = include_str!("../../../data/wedge.ring");
pub const WEDGE_CDGA: &str = include_str!("../../../data/wedge.cdga");
pub const WEDGE_TABLE: &str = include_str!("../../../data/wedge_table.cdga");

fn load(text: &str) -> Presentation {
    parse_presentation(text).expect("bundled fixture parses")
}

fn ring(text: &str) -> RingPresentation {
    match load(text) {
        Presentation::Ring(r) => r,
        _ => panic!("fixture is not a ring"),
    }
}

/// `⟨a(2), b(3); db = a²⟩`
pub fn s2_model() -> FreeCdga {
    load(S2_CDGA).algebra().free().clone()
}

pub fn cp2_ring() -> RingPresentation {
    ring(CP2_RING)
}

pub fn s2xs2_ring() -> RingPresentation {
    ring(S2XS2_RING)
}

/// Ring of `S³ ∨ S³ ∨ S⁵`.
pub fn wedge_ring() -> RingPresentation {
    ring(WEDGE_RING)
}

/// The literal generator table of the wedge model through degree 13.
pub fn wedge_table() -> FreeCdga {
    load(WEDGE_TABLE).algebra().free().clone()
}

pub fn cpn_ring(n: u32) -> RingPresentation {
    let rel = format!("x^{}", n + 1);
    RingPresentation::from_spec(&format!("CP{n}"), &[("x", 2)], &[&rel], Some(2 * n), true).expect("valid ring")
}

pub fn sphere_ring(n: u32) -> RingPresentation {
    RingPresentation::from_spec(&format!("S{n}"), &[("s", n)], &["s^2"], Some(n), true).expect("valid ring")
}

/// Ring of `S³ ∨ S³`.
pub fn s3_wedge_s3_ring() -> RingPresentation {
    RingPresentation::from_spec("S3vS3", &[("a", 3), ("b", 3)], &["a*b"], None, false).expect("valid ring")
}

/// `⟨w(2), b(4)⟩` with `w² = c·b`, where `c` is the cup square of `k·x` in
/// the projective plane: the ring of the attaching map post-composed with a
/// degree-`k` map.
pub fn scaled_square_ring(k: i64) -> RingPresentation {
    let cp2 = cp2_ring();
    let kx = cp2.algebra.gen("x").expect("x").scaled(&q(k));
    let c = cp2.algebra.coords(&cp2.algebra.product(&kx, &kx), 4).get(0);
    let rel = format!("w^2 - {c}*b");
    RingPresentation::from_spec(
        &format!("Xf{k}"),
        &[("w", 2), ("b", 4)],
        &[&rel, "w*b", "b^2"],
        Some(4),
        true,
    )
    .expect("valid ring")
}

/// Rings fed to the bigraded model in tests, with their caps.
pub fn bigraded_fixtures() -> Vec<(RingPresentation, u32)> {
    vec![
        (sphere_ring(2), 7),
        (sphere_ring(3), 9),
        (cp2_ring(), 10),
        (s2xs2_ring(), 7),
        (s3_wedge_s3_ring(), 9),
        (wedge_ring(), 9),
    ]
}

/// Generator of degree `k` whose differential is exactly `target`, found
/// by a linear solve over the differentials of all degree-`k` generators.
pub fn generator_with_differential(model: &FreeCdga, k: u32, target: &Element) -> Option<String> {
    let x = element_with_differential(model, k, target)?;
    match x.terms().collect::<Vec<_>>()[..] {
        [(m, c)] if *c == q(1) && m.length() == 1 => Some(model.generators()[m.factors()[0].0 as usize].name.clone()),
        _ => None,
    }
}

/// Some `v ∈ V_k` (a combination of degree-`k` generators) with `dv = target`.
pub fn element_with_differential(model: &FreeCdga, k: u32, target: &Element) -> Option<Element> {
    let idx = generators_of_degree(model, k);
    let images: Vec<SparseVec> = idx.iter().map(|&i| model.coords(model.diff_of(i), k + 1)).collect();
    let x = eliminate_map(&images).solve(&model.coords(target, k + 1))?;
    let mut v = Element::zero();
    for (j, c) in x.entries() {
        v.add_scaled(c, &model.gen_at(idx[*j]));
    }
    Some(v)
}

pub fn generators_of_degree(model: &FreeCdga, k: u32) -> Vec<u32> {
    (0..model.num_generators() as u32)
        .filter(|&i| model.degrees()[i as usize] == k)
        .collect()
}

/// Rewrites `x` in the basis of `V_k` that starts with `first` and is
/// completed by generators. Returns the rewritten element and the
/// generator slots now standing for `first`; None if `first` is dependent.
pub fn rewrite_in_basis(model: &FreeCdga, k: u32, first: &[Element], x: &Element) -> Option<(Element, Vec<u32>)> {
    let slots = generators_of_degree(model, k);
    let coords = |e: &Element| {
        SparseVec::from_pairs(
            slots
                .iter()
                .enumerate()
                .map(|(j, &s)| (j, e.coefficient(&Monomial::generator(s)))),
        )
    };
    let mut ech = Echelon::new();
    for e in first {
        if !ech.insert(coords(e)) {
            return None;
        }
    }
    // new basis vector sitting in each slot
    let mut rows: Vec<Option<SparseVec>> = vec![None; slots.len()];
    for j in 0..slots.len() {
        if ech.insert(SparseVec::unit(j)) {
            rows[j] = Some(SparseVec::unit(j));
        }
    }
    let free_slots: Vec<usize> = (0..slots.len()).filter(|&j| rows[j].is_none()).collect();
    for (e, &j) in first.iter().zip(&free_slots) {
        rows[j] = Some(coords(e));
    }
    let rows: Vec<SparseVec> = rows.into_iter().map(|r| r.expect("basis completed")).collect();
    let solver = eliminate_map(&rows);
    let mut images: Vec<Element> = (0..model.num_generators() as u32).map(|i| model.gen_at(i)).collect();
    for (j, &s) in slots.iter().enumerate() {
        let comb = solver.solve(&SparseVec::unit(j))?;
        let mut img = Element::zero();
        for (i, c) in comb.entries() {
            img.add_scaled(c, &model.gen_at(slots[*i]));
        }
        images[s as usize] = img;
    }
    let standing = free_slots.iter().map(|&j| slots[j]).collect();
    Some((model.substitute(x, &images), standing))
}

/// Minimal model of the ring of `S³ ∨ S³ ∨ S⁵` through `cap`.
pub fn wedge_model(cap: u32) -> MinimalModel {
    minimal_model(&wedge_ring().algebra, cap).expect("model")
}

pub struct WedgeNames {
    pub u_b: String,
    pub v_b: String,
}

/// Minimal model of `S³ ∨ S³` through degree 9 and the names of the
/// generators with `du_b = ab`, `dv_b = a·u_b`.
pub fn s3_wedge_s3_model() -> (MinimalModel, WedgeNames) {
    let m = minimal_model(&s3_wedge_s3_ring().algebra, 9).expect("model");
    let f = &m.model;
    let ab = f.product(&f.gen("a").unwrap(), &f.gen("b").unwrap());
    let u_b = generator_with_differential(f, 5, &ab).expect("u_b");
    let aub = f.product(&f.gen("a").unwrap(), &f.gen(&u_b).unwrap());
    let v_b = generator_with_differential(f, 7, &aub).expect("v_b");
    (m, WedgeNames { u_b, v_b })
}

/// `(S³ ∨ S³) ∪ e⁸` attached along `[a,[a,b]]`, as a non-minimal model.
pub fn cell_fixture() -> (CellAttachmentModel, WedgeNames) {
    let (m, names) = s3_wedge_s3_model();
    let cell = attach_cell_model(&m, 8, &[(&names.v_b, q(1))]).expect("cell model");
    (cell, names)
}

fn morphism(source: &FreeCdga, target: &Cdga, images: &[(&str, &str)]) -> DgaMorphism {
    DgaMorphism::from_spec(source, target, images).expect("fixture morphism")
}

/// `A = ⟨a⟩`, `A⟨v; dv = a²⟩ → C = ⟨e, s; ds = e², e³ = 0⟩` over the sphere
/// model `B`. With `obstructed`, `C` gains a closed `k(3)` and `g(v) = s + k`.
pub fn sphere_extension_problem(obstructed: bool) -> ExtensionProblem {
    let a = FreeCdga::with_generators(&[("a", 2)]).unwrap();
    let av = FreeCdga::from_spec(&[("a", 2), ("v", 3)], &[("v", "a^2")]).unwrap();
    let b = s2_model();
    let mut gens = vec![("e", 2), ("s", 3)];
    if obstructed {
        gens.push(("k", 3));
    }
    let cf = FreeCdga::from_spec(&gens, &[("s", "e^2")]).unwrap();
    let e3 = cf.power(&cf.gen("e").unwrap(), 3);
    let c = Cdga::quotient(cf, vec![e3], None).unwrap();
    let f = morphism(&a, &Cdga::from(b.clone()), &[("a", "a")]);
    let gv = if obstructed { "s + k" } else { "s" };
    let g = morphism(&av, &c, &[("a", "e"), ("v", gv)]);
    let h = morphism(&b, &c, &[("a", "e"), ("b", "s")]);
    let hom = DgaHomotopy::constant(&morphism(&a, &c, &[("a", "e")]));
    ExtensionProblem::new(f, g, h, hom).expect("consistent fixture")
}

/// The same extension with `h` the identity of the sphere model.
pub fn identity_extension_problem() -> ExtensionProblem {
    let a = FreeCdga::with_generators(&[("a", 2)]).unwrap();
    let av = FreeCdga::from_spec(&[("a", 2), ("v", 3)], &[("v", "a^2")]).unwrap();
    let b = s2_model();
    let bc = Cdga::from(b.clone());
    let f = morphism(&a, &bc, &[("a", "a")]);
    let g = morphism(&av, &bc, &[("a", "a"), ("v", "b")]);
    let h = DgaMorphism::identity(&b);
    let hom = DgaHomotopy::constant(&f);
    ExtensionProblem::new(f, g, h, hom).expect("consistent fixture")
}

/// An extension along a non-constant homotopy: `C` is the sphere model
/// with a contractible pair `dx = y`, and `H(a) = e + y t − x dt` runs
/// from `e` to `e + y`.
pub fn moving_extension_problem() -> ExtensionProblem {
    let a = FreeCdga::with_generators(&[("a", 2)]).unwrap();
    let av = FreeCdga::from_spec(&[("a", 2), ("v", 3)], &[("v", "a^2")]).unwrap();
    let b = s2_model();
    let cf = FreeCdga::from_spec(&[("x", 1), ("e", 2), ("y", 2), ("s", 3)], &[("x", "y"), ("s", "e^2")]).unwrap();
    let c = Cdga::from(cf.clone());
    let f = morphism(&a, &Cdga::from(b.clone()), &[("a", "a")]);
    let g = morphism(&av, &c, &[("a", "e"), ("v", "s")]);
    let h = morphism(&b, &c, &[("a", "e + y"), ("b", "s + 2*x*e + x*y")]);
    let e = c.gen("e").unwrap();
    let y = c.gen("y").unwrap();
    let x = c.gen("x").unwrap();
    let ha = HomotopyElement::from_parts(vec![(0, e), (1, y)], vec![(0, -x)], 16).unwrap();
    let hom = DgaHomotopy::new(a, c, vec![ha]).expect("chain homotopy");
    ExtensionProblem::new(f, g, h, hom).expect("consistent fixture")
}

pub fn obstruction_fixtures() -> Vec<(&'static str, ExtensionProblem)> {
    vec![
        ("sphere", sphere_extension_problem(false)),
        ("sphere+k", sphere_extension_problem(true)),
        ("identity", identity_extension_problem()),
        ("moving", moving_extension_problem()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        assert_eq!(wedge_table().num_generators(), 10);
        assert_eq!(s2_model().num_generators(), 2);
        assert_eq!(wedge_ring().betti(5), 1);
        let (_, names) = s3_wedge_s3_model();
        assert_ne!(names.u_b, names.v_b);
        assert_eq!(obstruction_fixtures().len(), 4);
    }
}
