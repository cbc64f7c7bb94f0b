//! Obstructions to extending a map over a relative Sullivan extension
//! `A → A⟨V⟩`, and the explicit extension when the obstruction vanishes.
//!
//! Data: `f: A → B`, `g: A⟨V⟩ → C`, `h: B → C`, and a homotopy `H: A → C ⊗ Q⟨t,dt⟩`
//! with `H|₀ = g|_A` and `H|₁ = h∘f`. The cocycle is
//! `O(v) = (f(dv), g(v) + ∫₀¹ H(dv))` in the relative complex of `h`.

use num_traits::One;

use crate::algebra::{Cdga, FreeCdga};
use crate::cohomology::RelativeComplex;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::homotopy::{DgaHomotopy, HomotopyElement};
use crate::linalg::{eliminate_map, Echelon, SparseVec, Q};
use crate::morphism::DgaMorphism;

#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    pub f: DgaMorphism,
    pub g: DgaMorphism,
    pub h: DgaMorphism,
    pub homotopy: DgaHomotopy,
    /// Number of generators of `A` (a prefix of the generators of `A⟨V⟩`).
    base_len: usize,
}

fn same_generators(a: &FreeCdga, b: &FreeCdga, n: usize) -> bool {
    a.generators()[..n] == b.generators()[..n] && a.differentials()[..n] == b.differentials()[..n]
}

impl ExtensionProblem {
    pub fn new(f: DgaMorphism, g: DgaMorphism, h: DgaMorphism, homotopy: DgaHomotopy) -> Result<Self> {
        let base = f.source();
        let n = base.num_generators();
        let ext = g.source();
        if ext.num_generators() < n || !same_generators(base, ext, n) {
            return Err(Error::Invalid("the source of g must extend the source of f".into()));
        }
        if !f.target().is_free() || f.target().free() != h.source() {
            return Err(Error::Invalid("f must land in the source of h".into()));
        }
        if !g.target().same_as(h.target()) || !homotopy.target().same_as(h.target()) {
            return Err(Error::Invalid("g, h and H must share a target".into()));
        }
        if homotopy.source() != base {
            return Err(Error::Invalid("H must be defined on the source of f".into()));
        }
        for (i, gen) in ext.generators().iter().enumerate().skip(n) {
            if ext.diff_of(i as u32).max_index().is_some_and(|m| m as usize >= n) {
                return Err(Error::Invalid(format!("d({}) must lie in the base algebra", gen.name)));
            }
        }
        let g_base = DgaMorphism::from_parts_unchecked(base.clone(), g.target().clone(), g.images()[..n].to_vec());
        let hf = h.compose(&f)?;
        homotopy.check_endpoints(&g_base, &hf)?;
        Ok(ExtensionProblem {
            f,
            g,
            h,
            homotopy,
            base_len: n,
        })
    }

    pub fn extension_generators(&self) -> Vec<(String, u32)> {
        self.g.source().generators()[self.base_len..]
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect()
    }

    fn c(&self) -> &Cdga {
        self.h.target()
    }

    /// `dv` as an element of `A` (same indices, since `A` is a prefix).
    fn dv(&self, i: usize) -> &Element {
        self.g.source().diff_of(i as u32)
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionCocycle {
    pub generator: String,
    pub degree: u32,
    /// `f(dv) ∈ B^{n+1}`
    pub b_part: Element,
    /// `g(v) + ∫₀¹ H(dv) ∈ C^n`
    pub c_part: Element,
    /// Coordinates of the class in `H^{n+1}(h)`.
    pub class: SparseVec,
}

#[derive(Clone, Debug)]
pub struct ObstructionClass {
    pub cocycles: Vec<ObstructionCocycle>,
    /// Rank of the class as a map `V → H^{n+1}(h)`, summed over degrees.
    pub rank: usize,
    /// `(b(v), c(v))` with `db = f(dv)`, `dc = h(b) − g(v) − ∫₀¹H(dv)`; set when the class vanishes.
    pub primitive: Option<Vec<(Element, Element)>>,
}

impl ObstructionClass {
    pub fn vanishes(&self) -> bool {
        self.rank == 0
    }
}

fn apply(rows: &[SparseVec], x: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (j, c) in x.entries() {
        out = out.add_scaled(c, &rows[*j]);
    }
    out
}

pub fn obstruction_class(p: &ExtensionProblem) -> Result<ObstructionClass> {
    let cx = RelativeComplex::new(p.h.clone());
    let mut cocycles = Vec::new();
    let mut primitives = Vec::new();
    let mut rank = 0;
    let ext = p.g.source();
    let gens: Vec<(usize, String, u32)> = ext
        .generators()
        .iter()
        .enumerate()
        .skip(p.base_len)
        .map(|(i, g)| (i, g.name.clone(), g.degree))
        .collect();
    let mut degrees: Vec<u32> = gens.iter().map(|g| g.2).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for n in degrees {
        let piece = cx.piece(n + 1);
        let d_out = cx.d_images(n + 1);
        let solver = eliminate_map(&cx.d_images(n));
        let mut classes = Echelon::new();
        for (i, name, _) in gens.iter().filter(|g| g.2 == n) {
            let dv = p.dv(*i);
            let b_part = p.f.map(dv);
            let hdv = p.homotopy.map(dv)?;
            let mut c_part = p.g.images()[*i].clone();
            c_part.add_scaled(&Q::one(), &hdv.integrate_0_1(p.c()));
            let c_part = p.c().reduce(&c_part);
            let v = cx.join(n + 1, &b_part, &c_part);
            if !apply(&d_out, &v).is_zero() {
                return Err(Error::Invalid(format!("O({name}) is not a relative cocycle")));
            }
            let class = piece.class_coords(&v);
            classes.insert(class.clone());
            primitives.push(solver.solve(&v).map(|x| cx.split(n, &x)));
            cocycles.push(ObstructionCocycle {
                generator: name.clone(),
                degree: n,
                b_part,
                c_part,
                class,
            });
        }
        rank += classes.rank();
    }
    let primitive = if rank == 0 {
        Some(
            primitives
                .into_iter()
                .map(|x| x.expect("exact cocycles have primitives"))
                .collect(),
        )
    } else {
        None
    };
    Ok(ObstructionClass {
        cocycles,
        rank,
        primitive,
    })
}

/// Extends `f` by `v ↦ b(v)` and `H` by
/// `H̃(v) = g(v) + d(c(v) ⊗ t) + ∫₀ᵗ H(dv)`, checking the primitive first.
pub fn extend_with_witness(
    p: &ExtensionProblem,
    primitive: &[(Element, Element)],
) -> Result<(DgaMorphism, DgaHomotopy)> {
    let ext = p.g.source();
    let c_alg = p.c();
    let b_alg = p.h.source();
    if primitive.len() != ext.num_generators() - p.base_len {
        return Err(Error::Invalid(format!(
            "{} primitive pairs for {} extension generators",
            primitive.len(),
            ext.num_generators() - p.base_len
        )));
    }
    let mut f_images = p.f.images().to_vec();
    let mut h_images = p.homotopy.images().to_vec();
    for (k, (b, c)) in primitive.iter().enumerate() {
        let i = p.base_len + k;
        let name = &ext.generators()[i].name;
        let dv = p.dv(i);
        if b_alg.d(b) != p.f.map(dv) {
            return Err(Error::InvalidPrimitive(name.clone(), "db ≠ f(dv)".into()));
        }
        let hdv = p.homotopy.map(dv)?;
        let mut rhs = p.h.map(b);
        rhs = &rhs - &p.g.images()[i];
        rhs = &rhs - &hdv.integrate_0_1(c_alg);
        if !c_alg.is_zero(&(&c_alg.d(c) - &rhs)) {
            return Err(Error::InvalidPrimitive(
                name.clone(),
                "dc ≠ h(b) − g(v) − ∫₀¹H(dv)".into(),
            ));
        }
        f_images.push(b.clone());
        let mut ct = HomotopyElement::with_bound(hdv.bound());
        ct.add_body(1, c)?;
        let ht = HomotopyElement::constant(&p.g.images()[i])
            .add_scaled(&Q::one(), &ct.d(c_alg))
            .add_scaled(&Q::one(), &hdv.integrate_0_t(c_alg)?);
        h_images.push(ht);
    }
    let f_ext = DgaMorphism::new(ext.clone(), p.f.target().clone(), f_images)?;
    let h_ext = DgaHomotopy::new(ext.clone(), c_alg.clone(), h_images)?;
    let hf = p.h.compose(&f_ext)?;
    h_ext.check_endpoints(&p.g, &hf)?;
    Ok((f_ext, h_ext))
}
