use crate::algebra::Cdga;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{eliminate_map, Echelon, SparseVec};
use crate::morphism::DgaMorphism;

/// Cohomology of one degree of a cochain complex given by its two adjacent
/// differentials, with canonical representatives: the reduced row-echelon
/// basis of (cocycles mod the reduced coboundary space).
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub dim: usize,
    boundaries: Echelon,
    cocycle_rank: usize,
    reps: Vec<SparseVec>,
    rep_pivots: Vec<usize>,
}

impl GradedPiece {
    /// `d_in`: images of the degree `k−1` basis in degree-`k` coordinates;
    /// `d_out`: images of the degree-`k` basis in degree-`k+1` coordinates.
    pub fn compute(dim: usize, d_in: &[SparseVec], d_out: &[SparseVec]) -> Self {
        let boundaries = Echelon::from_rows(d_in.iter().cloned());
        let kernel = if d_out.is_empty() {
            (0..dim).map(SparseVec::unit).collect()
        } else {
            eliminate_map(d_out).kernel
        };
        let cocycle_rank = kernel.len();
        let reduced = Echelon::from_rows(kernel.iter().map(|z| boundaries.reduce(z)));
        let mut reps = Vec::new();
        let mut rep_pivots = Vec::new();
        for (row, _) in reduced.sorted_rows() {
            rep_pivots.push(row.leading().expect("nonzero row").0);
            reps.push(row.clone());
        }
        GradedPiece {
            dim,
            boundaries,
            cocycle_rank,
            reps,
            rep_pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundaries.rank()
    }

    pub fn cocycle_rank(&self) -> usize {
        self.cocycle_rank
    }

    /// Representative cocycles, in cochain coordinates.
    pub fn reps(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Coordinates of the class of cocycle `z` in the representative basis.
    pub fn class_coords(&self, z: &SparseVec) -> SparseVec {
        let r = self.boundaries.reduce(z);
        SparseVec::from_pairs(self.rep_pivots.iter().enumerate().map(|(i, &p)| (i, r.get(p))))
    }

    pub fn is_exact(&self, z: &SparseVec) -> bool {
        self.boundaries.contains(z)
    }

    pub fn boundaries(&self) -> &Echelon {
        &self.boundaries
    }
}

/// `H^k` of a CDGA, computed through a mandatory truncation cap.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub degree: u32,
    pub cap: u32,
    pub piece: GradedPiece,
    algebra: Cdga,
}

impl CohomologySpace {
    pub fn rank(&self) -> usize {
        self.piece.rank()
    }

    pub fn representatives(&self) -> Vec<Element> {
        self.piece
            .reps()
            .iter()
            .map(|v| self.algebra.element(self.degree, v))
            .collect()
    }

    /// Class coordinates of a cocycle of this degree.
    pub fn class_of(&self, z: &Element) -> SparseVec {
        self.piece.class_coords(&self.algebra.coords(z, self.degree))
    }

    pub fn is_exact(&self, z: &Element) -> bool {
        self.piece.is_exact(&self.algebra.coords(z, self.degree))
    }

    pub fn algebra(&self) -> &Cdga {
        &self.algebra
    }
}

pub fn cohomology(a: &Cdga, k: u32, cap: u32) -> Result<CohomologySpace> {
    if k > cap {
        return Err(Error::AboveCap { degree: k, cap });
    }
    let d_in = if k == 0 { Vec::new() } else { a.d_images(k - 1).to_vec() };
    let d_out = a.d_images(k);
    let dim = a.dim(k);
    let piece = GradedPiece::compute(dim, &d_in, if dim == 0 { &[] } else { &d_out });
    Ok(CohomologySpace {
        degree: k,
        cap,
        piece,
        algebra: a.clone(),
    })
}

pub fn cohomology_ranks(a: &Cdga, cap: u32) -> Vec<usize> {
    (0..=cap)
        .map(|k| cohomology(a, k, cap).expect("k <= cap").rank())
        .collect()
}

/// `dim A^k = rank H^k + rank d|A^k + rank d|A^{k−1}`.
pub fn rank_nullity_holds(a: &Cdga, k: u32) -> bool {
    let h = cohomology(a, k, k).expect("k <= k");
    let out = eliminate_map(&a.d_images(k)).image.rank();
    a.dim(k) == h.rank() + out + h.piece.boundary_rank()
}

/// The mapping-cone complex `C^n(φ) = A^n ⊕ B^{n−1}` with
/// `d(a, b) = (da, φ(a) − db)`; coordinates are `[A-part | B-part]`.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    pub phi: DgaMorphism,
}

impl RelativeComplex {
    pub fn new(phi: DgaMorphism) -> Self {
        RelativeComplex { phi }
    }

    fn source_dim(&self, n: u32) -> usize {
        self.phi.source().dim(n)
    }

    fn target_dim(&self, n: i64) -> usize {
        if n < 0 {
            0
        } else {
            self.phi.target().dim(n as u32)
        }
    }

    pub fn dim(&self, n: u32) -> usize {
        self.source_dim(n) + self.target_dim(n as i64 - 1)
    }

    /// Offset of the target block inside `C^n`.
    pub fn split_at(&self, n: u32) -> usize {
        self.source_dim(n)
    }

    /// Images of the basis of `C^n` in `C^{n+1}` coordinates.
    pub fn d_images(&self, n: u32) -> Vec<SparseVec> {
        let off_next = self.source_dim(n + 1);
        let src = self.phi.source();
        let dm = src.d_images(n);
        let phim = self.phi.matrix(n);
        let mut out: Vec<SparseVec> = dm.iter().zip(&phim).map(|(d, p)| d.concat(p, off_next)).collect();
        if n >= 1 {
            let db = self.phi.target().d_images(n - 1);
            let neg = -crate::linalg::q(1);
            out.extend(db.iter().map(|v| v.scaled(&neg).shifted(off_next)));
        }
        out
    }

    pub fn piece(&self, n: u32) -> GradedPiece {
        let d_in = if n == 0 { Vec::new() } else { self.d_images(n - 1) };
        let d_out = self.d_images(n);
        GradedPiece::compute(self.dim(n), &d_in, &d_out)
    }

    /// Splits a `C^n` vector into its source and target elements.
    pub fn split(&self, n: u32, v: &SparseVec) -> (Element, Element) {
        let off = self.split_at(n);
        let a = self.phi.source().element(n, &v.slice(0..off));
        let b = if n == 0 {
            Element::zero()
        } else {
            self.phi.target().element(n - 1, &v.slice(off..self.dim(n)))
        };
        (a, b)
    }

    pub fn join(&self, n: u32, a: &Element, b: &Element) -> SparseVec {
        let off = self.split_at(n);
        let va = self.phi.source().coords(a, n);
        if n == 0 {
            return va;
        }
        va.concat(&self.phi.target().coords(b, n - 1), off)
    }
}

/// `H^k(φ)`, with classes as `(source element, target element)` pairs.
#[derive(Clone, Debug)]
pub struct RelativeCohomology {
    pub degree: u32,
    pub piece: GradedPiece,
    pub classes: Vec<(Element, Element)>,
}

impl RelativeCohomology {
    pub fn rank(&self) -> usize {
        self.piece.rank()
    }

    /// Rank of `H^k(φ; V) = Hom(V, H^k(φ))` for a coefficient space of the
    /// given dimension.
    pub fn rank_with_coefficients(&self, dim_v: usize) -> usize {
        self.rank() * dim_v
    }
}

pub fn relative_cohomology(phi: &DgaMorphism, k: u32) -> RelativeCohomology {
    let cx = RelativeComplex::new(phi.clone());
    let piece = cx.piece(k);
    let classes = piece.reps().iter().map(|v| cx.split(k, v)).collect();
    RelativeCohomology {
        degree: k,
        piece,
        classes,
    }
}

/// Matrix (as columns in target class coordinates) of the map induced on
/// `H^k`.
pub fn induced_map(phi: &DgaMorphism, k: u32) -> Vec<SparseVec> {
    let hs = cohomology(&crate::Cdga::from(phi.source().clone()), k, k).expect("k <= k");
    let ht = cohomology(phi.target(), k, k).expect("k <= k");
    hs.representatives().iter().map(|z| ht.class_of(&phi.map(z))).collect()
}

/// Whether `φ` induces isomorphisms on `H^k` for all `k ≤ cap`.
pub fn is_quasi_isomorphism(phi: &DgaMorphism, cap: u32) -> bool {
    let src = crate::Cdga::from(phi.source().clone());
    (0..=cap).all(|k| {
        let hs = cohomology(&src, k, cap).expect("k <= cap");
        let ht = cohomology(phi.target(), k, cap).expect("k <= cap");
        if hs.rank() != ht.rank() {
            return false;
        }
        let cols: Vec<SparseVec> = hs.representatives().iter().map(|z| ht.class_of(&phi.map(z))).collect();
        Echelon::from_rows(cols).rank() == hs.rank()
    })
}

fn map_rank(cols: Vec<SparseVec>) -> usize {
    Echelon::from_rows(cols).rank()
}

/// Checks exactness of `H^{k−1}(B) → H^k(φ) → H^k(A) → H^k(B)` for
/// `φ: A → B` by rank counting plus vanishing of the composites.
pub fn long_exact_sequence_holds(phi: &DgaMorphism, k: u32) -> bool {
    let src = crate::Cdga::from(phi.source().clone());
    let cx = RelativeComplex::new(phi.clone());
    let rel = cx.piece(k);
    let ha = cohomology(&src, k, k).expect("k <= k");
    let hb = cohomology(phi.target(), k, k).expect("k <= k");
    // α: H^k(φ) → H^k(A)
    let alpha: Vec<SparseVec> = rel.reps().iter().map(|v| ha.class_of(&cx.split(k, v).0)).collect();
    // φ*: H^k(A) → H^k(B)
    let phik: Vec<SparseVec> = ha.representatives().iter().map(|z| hb.class_of(&phi.map(z))).collect();
    // δ: H^{k−1}(B) → H^k(φ), [b] ↦ [(0, b)]
    let (delta, phi_prev, hb_prev_rank) = if k == 0 {
        (Vec::new(), Vec::new(), 0)
    } else {
        let ha_prev = cohomology(&src, k - 1, k - 1).expect("ok");
        let hb_prev = cohomology(phi.target(), k - 1, k - 1).expect("ok");
        let delta: Vec<SparseVec> = hb_prev
            .representatives()
            .iter()
            .map(|b| rel.class_coords(&cx.join(k, &Element::zero(), b)))
            .collect();
        let phi_prev: Vec<SparseVec> = ha_prev
            .representatives()
            .iter()
            .map(|z| hb_prev.class_of(&phi.map(z)))
            .collect();
        (delta, phi_prev, hb_prev.rank())
    };
    let composite_ok = rel
        .reps()
        .iter()
        .all(|v| hb.class_of(&phi.map(&cx.split(k, v).0)).is_zero());
    let (r_alpha, r_phik, r_delta, r_prev) = (map_rank(alpha), map_rank(phik), map_rank(delta), map_rank(phi_prev));
    composite_ok && rel.rank() - r_alpha == r_delta && ha.rank() - r_phik == r_alpha && hb_prev_rank - r_delta == r_prev
}
