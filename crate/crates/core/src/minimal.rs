//! Sullivan minimal models, bigraded models of formal rings, the depth
//! filtration, grading automorphisms, and cell attachment.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Cdga, FreeCdga};
use crate::cohomology::{cohomology, is_quasi_isomorphism, relative_cohomology, GradedPiece};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{eliminate_map, Echelon, SparseVec, Q};
use crate::monomial::{Generator, Monomial};
use crate::morphism::DgaMorphism;

/// A minimal model through a degree cap, with its quasi-isomorphism.
#[derive(Clone, Debug)]
pub struct MinimalModel {
    pub model: FreeCdga,
    pub quasi_iso: DgaMorphism,
    pub cap: u32,
    /// Per-generator depth, in generator order.
    pub depths: Vec<u32>,
    /// Set when the cap is too small to produce any generator.
    pub warning: Option<String>,
}

impl MinimalModel {
    pub fn target(&self) -> &Cdga {
        self.quasi_iso.target()
    }

    /// Whether generators carry stage tags `W_i`.
    pub fn is_bigraded(&self) -> bool {
        let gens = self.model.generators();
        !gens.is_empty() && gens.iter().all(|g| g.stage.is_some())
    }

    pub fn stage_of(&self, name: &str) -> Result<Option<u32>> {
        Ok(self.model.generator(name)?.stage)
    }

    pub fn depth_of(&self, name: &str) -> Result<u32> {
        Ok(self.depths[self.model.index_of(name)? as usize])
    }

    /// Number of generators of degree `k` (= dim V_k).
    pub fn count_in_degree(&self, k: u32) -> usize {
        self.model.generators().iter().filter(|g| g.degree == k).count()
    }

    /// dim(V_k ∩ U_ℓ): generators of degree `k` with depth ≤ `l`.
    pub fn dim_u(&self, k: u32, l: u32) -> usize {
        self.model
            .generators()
            .iter()
            .zip(&self.depths)
            .filter(|(g, &d)| g.degree == k && d <= l)
            .count()
    }

    /// Minimality: no differential has a constant or linear term.
    pub fn is_minimal(&self) -> bool {
        self.model.differentials().iter().all(|d| self.model.is_decomposable(d))
    }
}

/// Depth of each generator: 0 when closed, otherwise one more than the
/// largest total depth of a monomial in its differential.
pub fn generator_depths(a: &FreeCdga) -> Vec<u32> {
    let n = a.num_generators();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| a.degrees()[i]);
    let mut depth = vec![0u32; n];
    for i in order {
        let d = a.diff_of(i as u32);
        depth[i] = if d.is_zero() {
            0
        } else {
            1 + d.terms().map(|(m, _)| monomial_weight(m, &depth)).max().unwrap_or(0)
        };
    }
    depth
}

/// Sum of factor depths, with multiplicity.
pub fn monomial_weight(m: &Monomial, depths: &[u32]) -> u32 {
    m.factors().iter().map(|&(g, e)| depths[g as usize] * e).sum()
}

/// The depth filtration of a model: per-generator depths and the induced
/// dimensions of `V_k ∩ U_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthFiltration {
    pub generators: Vec<(String, u32, u32)>,
    /// `(degree, depth) → number of generators`
    pub counts: BTreeMap<(u32, u32), usize>,
}

impl DepthFiltration {
    pub fn depth(&self, name: &str) -> Option<u32> {
        self.generators.iter().find(|(n, _, _)| n == name).map(|&(_, _, d)| d)
    }

    /// dim(V_k ∩ U_ℓ)
    pub fn dim_u(&self, k: u32, l: u32) -> usize {
        self.counts
            .iter()
            .filter(|(&(deg, dep), _)| deg == k && dep <= l)
            .map(|(_, &c)| c)
            .sum()
    }
}

pub fn depth_filtration(m: &MinimalModel) -> DepthFiltration {
    filtration_of(&m.model)
}

pub fn filtration_of(a: &FreeCdga) -> DepthFiltration {
    let depths = generator_depths(a);
    let mut counts = BTreeMap::new();
    let mut generators = Vec::new();
    for (g, &d) in a.generators().iter().zip(&depths) {
        *counts.entry((g.degree, d)).or_insert(0) += 1;
        generators.push((g.name.clone(), g.degree, d));
    }
    DepthFiltration { generators, counts }
}

fn check_simply_connected(target: &Cdga) -> Result<()> {
    let h1 = cohomology(target, 1, 1)?;
    if h1.rank() != 0 {
        return Err(Error::NotSimplyConnected(format!("H^1 has rank {}", h1.rank())));
    }
    Ok(())
}

struct Builder {
    target: Cdga,
    gens: Vec<Generator>,
    diffs: Vec<Element>,
    images: Vec<Element>,
    taken: HashSet<String>,
}

impl Builder {
    fn new(target: &Cdga) -> Self {
        Builder {
            target: target.clone(),
            gens: Vec::new(),
            diffs: Vec::new(),
            images: Vec::new(),
            taken: HashSet::new(),
        }
    }

    fn algebra(&self) -> FreeCdga {
        FreeCdga::new(self.gens.clone(), self.diffs.clone()).expect("stages stay consistent")
    }

    fn morphism(&self, model: &FreeCdga) -> DgaMorphism {
        DgaMorphism::from_parts_unchecked(model.clone(), self.target.clone(), self.images.clone())
    }

    /// Uses the target generator's name when the image is exactly one
    /// target generator, else `prefix{k}_{j}`.
    fn name_for(&mut self, image: &Element, prefix: &str, k: u32, counter: &mut usize) -> String {
        let mut terms = image.terms();
        if let (Some((m, c)), None) = (terms.next(), terms.next()) {
            if c.is_one() && m.length() == 1 {
                let g = m.factors()[0].0;
                let name = self.target.free().generators()[g as usize].name.clone();
                if self.taken.insert(name.clone()) {
                    return name;
                }
            }
        }
        loop {
            *counter += 1;
            let name = format!("{prefix}{k}_{counter}");
            if self.taken.insert(name.clone()) {
                return name;
            }
        }
    }

    fn finish(self, cap: u32) -> MinimalModel {
        let model = self.algebra();
        let quasi_iso = self.morphism(&model);
        let depths = generator_depths(&model);
        let warning = model
            .generators()
            .is_empty()
            .then(|| format!("cap {cap} is below the degree of the first generator; the model is trivial"));
        MinimalModel {
            model,
            quasi_iso,
            cap,
            depths,
            warning,
        }
    }
}

/// Stagewise minimal model of `target` through `cap`.
///
/// At degree `k` the classes of `H^{k+1}` of the current map are killed by
/// new generators `v` with `dv = m`, `φ(v) = a` for each canonical class
/// `(m, a)`. The new generators of one degree are then rebased so that they
/// are adapted to the depth filtration (each spans a step of `U_ℓ ∩ V_k`).
pub fn minimal_model(target: &Cdga, cap: u32) -> Result<MinimalModel> {
    check_simply_connected(target)?;
    let mut b = Builder::new(target);
    for k in 2..=cap {
        let model = b.algebra();
        let phi = b.morphism(&model);
        let rel = relative_cohomology(&phi, k + 1);
        if rel.rank() == 0 {
            continue;
        }
        let depths = generator_depths(&model);
        let monos = model.graded_basis(k + 1);
        let weights: Vec<u32> = monos.monomials.iter().map(|m| monomial_weight(m, &depths)).collect();
        let ms: Vec<SparseVec> = rel.classes.iter().map(|(m, _)| model.coords(m, k + 1)).collect();
        let adapted = depth_adapted_basis(&ms, &weights);
        let (mut nx, mut nv) = (0, 0);
        for (coeffs, depth) in adapted {
            let mut dv = Element::zero();
            let mut img = Element::zero();
            for (j, c) in coeffs.entries() {
                dv.add_scaled(c, &rel.classes[*j].0);
                img.add_scaled(c, &rel.classes[*j].1);
            }
            let name = if depth == 0 {
                b.name_for(&img, "x", k, &mut nx)
            } else {
                b.name_for(&img, "v", k, &mut nv)
            };
            b.gens.push(Generator::new(name, k));
            b.diffs.push(dv);
            b.images.push(img);
        }
    }
    Ok(b.finish(cap))
}

/// Basis of the coefficient space `Q^J` adapted to the nested subspaces
/// `K_ℓ = {c : Σ c_j m_j has no monomial of weight ≥ ℓ}`; returns each basis
/// vector with the least `ℓ` it belongs to.
fn depth_adapted_basis(ms: &[SparseVec], weights: &[u32]) -> Vec<(SparseVec, u32)> {
    let n = ms.len();
    let max_w = weights.iter().copied().max().unwrap_or(0);
    let mut chosen = Echelon::new();
    let mut out = Vec::new();
    for l in 0..=max_w + 1 {
        let projected: Vec<SparseVec> = ms
            .iter()
            .map(|m| SparseVec::from_pairs(m.entries().iter().filter(|(i, _)| weights[*i] >= l).cloned()))
            .collect();
        let kernel = if projected.iter().all(SparseVec::is_zero) {
            (0..n).map(SparseVec::unit).collect()
        } else {
            eliminate_map(&projected).kernel
        };
        for z in kernel {
            if chosen.insert(z.clone()) {
                out.push((z, l));
            }
        }
        if out.len() == n {
            break;
        }
    }
    out
}

/// Lower degree (sum of stage tags) of a monomial.
fn lower_degree(m: &Monomial, stages: &[u32]) -> u32 {
    m.factors().iter().map(|&(g, e)| stages[g as usize] * e).sum()
}

/// Bigraded (Halperin–Stasheff) model of a ring with zero differential.
///
/// The relative complex splits by lower degree, with the ring in lower
/// degree −1: block −1 yields closed generators in `W_0` mapping onto ring
/// classes not yet hit; block `p ≥ 0` yields generators in `W_{p+1}` that
/// kill the remaining cocycles of lower degree `p`.
pub fn bigraded_model(ring: &Cdga, cap: u32) -> Result<MinimalModel> {
    let free = ring.free();
    if free.differentials().iter().any(|d| !d.is_zero()) {
        return Err(Error::Invalid(
            "bigraded models need a ring with zero differential".into(),
        ));
    }
    check_simply_connected(ring)?;
    let mut b = Builder::new(ring);
    let mut stages: Vec<u32> = Vec::new();
    for k in 2..=cap {
        let model = b.algebra();
        let phi = b.morphism(&model);
        let mut new: Vec<(Element, Element, u32)> = Vec::new();

        // block −1: ring classes in degree k modulo the image of M_(0)
        let hit = Echelon::from_rows(
            model
                .graded_basis(k)
                .monomials
                .iter()
                .filter(|m| lower_degree(m, &stages) == 0)
                .map(|m| ring.coords(&phi.map_monomial(m), k)),
        );
        let hk = cohomology(ring, k, k)?;
        let reduced = Echelon::from_rows(hk.piece.reps().iter().map(|z| hit.reduce(z)));
        for (row, _) in reduced.sorted_rows() {
            new.push((Element::zero(), ring.element(k, row), 0));
        }

        // blocks p ≥ 0 in degree k+1
        let basis_next = model.graded_basis(k + 1);
        let basis_cur = model.graded_basis(k);
        let d_next = model.d_images(k + 1);
        let d_cur = model.d_images(k);
        let max_p = basis_next
            .monomials
            .iter()
            .map(|m| lower_degree(m, &stages))
            .max()
            .unwrap_or(0);
        for p in 0..=max_p {
            let block: Vec<usize> = (0..basis_next.len())
                .filter(|&i| lower_degree(&basis_next.monomials[i], &stages) == p)
                .collect();
            if block.is_empty() {
                continue;
            }
            let local: BTreeMap<usize, usize> = block.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            let off = model.dim(k + 2);
            let d_out: Vec<SparseVec> = block
                .iter()
                .map(|&i| {
                    let dm = d_next[i].clone();
                    if p == 0 {
                        let img = ring.coords(&phi.map_monomial(&basis_next.monomials[i]), k + 1);
                        dm.concat(&img, off)
                    } else {
                        dm
                    }
                })
                .collect();
            let d_in: Vec<SparseVec> = (0..basis_cur.len())
                .filter(|&i| lower_degree(&basis_cur.monomials[i], &stages) == p + 1)
                .map(|i| SparseVec::from_pairs(d_cur[i].entries().iter().map(|(g, c)| (local[g], c.clone()))))
                .collect();
            let piece = GradedPiece::compute(block.len(), &d_in, &d_out);
            for rep in piece.reps() {
                let global = SparseVec::from_pairs(rep.entries().iter().map(|(l, c)| (block[*l], c.clone())));
                new.push((model.element(k + 1, &global), Element::zero(), p + 1));
            }
        }
        let (mut nx, mut nv) = (0, 0);
        for (dv, img, stage) in new {
            let name = if stage == 0 {
                b.name_for(&img, "x", k, &mut nx)
            } else {
                let mut c = nv;
                let name = loop {
                    c += 1;
                    let name = format!("w{k}_{stage}_{c}");
                    if b.taken.insert(name.clone()) {
                        break name;
                    }
                };
                nv = c;
                name
            };
            b.gens.push(Generator::new(name, k).with_stage(stage));
            b.diffs.push(dv);
            b.images.push(img);
            stages.push(stage);
        }
    }
    Ok(b.finish(cap))
}

/// Checks the quasi-isomorphism of a model through its cap.
pub fn verify_model(m: &MinimalModel) -> bool {
    m.is_minimal() && is_quasi_isomorphism(&m.quasi_iso, m.cap)
}

/// The endomorphism `w ↦ t^{i+j} w` for `w ∈ W_i` of degree `j`.
pub fn grading_automorphism(m: &MinimalModel, t: &Q) -> Result<DgaMorphism> {
    if !m.is_bigraded() {
        return Err(Error::MissingBigrading);
    }
    if t.is_zero() {
        return Err(Error::Invalid("t must be nonzero".into()));
    }
    let images = m
        .model
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let e = g.stage.unwrap_or(0) + g.degree;
            m.model.gen_at(i as u32).scaled(&num_traits::pow(t.clone(), e as usize))
        })
        .collect();
    DgaMorphism::new(m.model.clone(), Cdga::from(m.model.clone()), images)
}

/// Whether the distortion exponent is known to be attained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sharpness {
    /// The `O(L^{n+k})` bound holds; it is attained when the space is scalable.
    SharpIfScalable,
    UpperBoundOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistortionReport {
    pub generator: String,
    pub degree: u32,
    pub depth: u32,
    pub exponent: u32,
    pub sharpness: Sharpness,
}

/// Predicted distortion exponent `n + k` of the homotopy class dual to a
/// generator of degree `n` and depth `k`.
pub fn distortion_exponent(m: &MinimalModel, name: &str) -> Result<DistortionReport> {
    let g = m.model.generator(name)?;
    let depth = m.depth_of(name)?;
    Ok(DistortionReport {
        generator: name.to_string(),
        degree: g.degree,
        depth,
        exponent: g.degree + depth,
        sharpness: Sharpness::SharpIfScalable,
    })
}

/// The same prediction read off a free algebra that is already minimal,
/// with its own generator names.
pub fn distortion_of(a: &FreeCdga, name: &str) -> Result<DistortionReport> {
    if !a.differentials().iter().all(|d| a.is_decomposable(d)) {
        return Err(Error::Invalid("algebra is not minimal".into()));
    }
    let i = a.index_of(name)? as usize;
    let degree = a.degrees()[i];
    let depth = generator_depths(a)[i];
    Ok(DistortionReport {
        generator: name.to_string(),
        degree,
        depth,
        exponent: degree + depth,
        sharpness: Sharpness::SharpIfScalable,
    })
}

/// Whether a morphism between models maps each generator of depth `i`
/// into `U_i` of the target.
pub fn respects_depth(phi: &DgaMorphism, src: &MinimalModel, tgt: &MinimalModel) -> bool {
    phi.images()
        .iter()
        .zip(&src.depths)
        .all(|(img, &d)| img.terms().all(|(m, _)| monomial_weight(m, &tgt.depths) <= d))
}

/// A non-minimal model of `W ∪_f e^n`: the model of `W` plus a closed
/// generator `y` of degree `n` annihilating everything, with
/// `d'x = dx + ⟨x,[f]⟩ y` on degree `n−1` generators.
#[derive(Clone, Debug)]
pub struct CellAttachmentModel {
    pub base: MinimalModel,
    pub cell: String,
    pub algebra: Cdga,
}

pub fn attach_cell_model(base: &MinimalModel, n: u32, pairing: &[(&str, Q)]) -> Result<CellAttachmentModel> {
    let model = &base.model;
    let mut coeff = vec![Q::zero(); model.num_generators()];
    for (name, c) in pairing {
        let g = model.generator(name)?;
        if g.degree + 1 != n {
            return Err(Error::DegreeMismatch(format!(
                "`{name}` has degree {}, the cell needs degree {}",
                g.degree,
                n - 1
            )));
        }
        coeff[model.index_of(name)? as usize] += c;
    }
    let mut cell = "y".to_string();
    while model.index_of(&cell).is_ok() {
        cell.push('_');
    }
    let y_index = model.num_generators() as u32;
    let y = Element::monomial(Monomial::generator(y_index), Q::one());
    let mut gens = model.generators().to_vec();
    gens.push(Generator::new(cell.clone(), n));
    let mut diffs: Vec<Element> = model
        .differentials()
        .iter()
        .zip(&coeff)
        .map(|(d, c)| {
            let mut d = d.clone();
            d.add_scaled(c, &y);
            d
        })
        .collect();
    diffs.push(Element::zero());
    let free = FreeCdga::unchecked(gens, diffs)?;
    let relations: Vec<Element> = (0..=y_index).map(|i| free.product(&free.gen_at(i), &y)).collect();
    let algebra = Cdga::quotient(free, relations, None)?;
    Ok(CellAttachmentModel {
        base: base.clone(),
        cell,
        algebra,
    })
}

/// For each degree `k ≤ cap`, whether `⋀U_0 → H^k` is onto. Surjectivity
/// everywhere is necessary for formality, not sufficient.
pub fn u0_surjectivity(m: &MinimalModel, cap: u32) -> Vec<(u32, bool)> {
    let a = Cdga::from(m.model.clone());
    (0..=cap)
        .map(|k| {
            let h = cohomology(&a, k, cap).expect("k <= cap");
            let classes: Vec<SparseVec> = m
                .model
                .graded_basis(k)
                .monomials
                .iter()
                .filter(|mono| mono.factors().iter().all(|&(g, _)| m.depths[g as usize] == 0))
                .map(|mono| h.class_of(&Element::monomial(mono.clone(), Q::one())))
                .collect();
            (k, Echelon::from_rows(classes).rank() == h.rank())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn s2_ring() -> Cdga {
        let f = FreeCdga::with_generators(&[("a", 2)]).unwrap();
        let a2 = f.power(&f.gen("a").unwrap(), 2);
        Cdga::quotient(f, vec![a2], None).unwrap()
    }

    #[test]
    fn sphere_model() {
        let m = minimal_model(&s2_ring(), 7).unwrap();
        let gens: Vec<(String, u32)> = m
            .model
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0], ("a".into(), 2));
        assert_eq!(gens[1].1, 3);
        let db = m.model.diff_of(1);
        assert_eq!(m.model.format(db), "a^2");
        assert_eq!(m.depths, vec![0, 1]);
        assert!(verify_model(&m));
        assert_eq!(distortion_exponent(&m, &gens[1].0).unwrap().exponent, 4);
    }

    #[test]
    fn model_of_model_keeps_names() {
        let s2 = FreeCdga::from_spec(&[("a", 2), ("b", 3)], &[("b", "a^2")]).unwrap();
        let m = minimal_model(&Cdga::from(s2), 9).unwrap();
        let names: Vec<&str> = m.model.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["a", "b"]);
    }

    #[test]
    fn cp2_bigraded() {
        let f = FreeCdga::with_generators(&[("x", 2)]).unwrap();
        let x3 = f.power(&f.gen("x").unwrap(), 3);
        let ring = Cdga::quotient(f, vec![x3], None).unwrap();
        let m = bigraded_model(&ring, 12).unwrap();
        assert_eq!(m.model.num_generators(), 2);
        let y = &m.model.generators()[1];
        assert_eq!((y.degree, y.stage), (5, Some(1)));
        assert_eq!(m.model.format(m.model.diff_of(1)), "x^3");
        assert!(verify_model(&m));
        let rho = grading_automorphism(&m, &q(2)).unwrap();
        assert_eq!(rho.images()[1], m.model.gen_at(1).scaled(&q(64)));
    }

    #[test]
    fn trivial_model_warns() {
        let f = FreeCdga::with_generators(&[("a", 5)]).unwrap();
        let m = minimal_model(&Cdga::from(f), 3).unwrap();
        assert!(m.warning.is_some());
    }

    #[test]
    fn cp2_by_cell_attachment() {
        let s2 = FreeCdga::from_spec(&[("a", 2), ("b", 3)], &[("b", "a^2")]).unwrap();
        let m = minimal_model(&Cdga::from(s2), 5).unwrap();
        let cell = attach_cell_model(&m, 4, &[("b", q(1))]).unwrap();
        let h4 = cohomology(&cell.algebra, 4, 4).unwrap();
        assert_eq!(h4.rank(), 1);
        let a = cell.algebra.gen("a").unwrap();
        let y = cell.algebra.gen("y").unwrap();
        let a2 = cell.algebra.product(&a, &a);
        assert_eq!(h4.class_of(&a2), h4.class_of(&-y));
        assert!(attach_cell_model(&m, 5, &[("b", q(1))]).is_err());
    }
}
