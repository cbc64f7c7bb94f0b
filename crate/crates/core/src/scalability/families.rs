//! The algebras `Ω_{n,r}`, `Σ_{n,r}`, `Π_{n,r}` and the procedures deciding
//! whether they embed in an exterior algebra.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::exterior::{verify_witness, EmbeddingWitness, ExteriorAlgebra, WitnessCheck};
use super::Certificate;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{binomial, eliminate_map, inertia, q, SparseVec, Q};
use crate::ring::RingPresentation;

fn half_middle(n: u32) -> u64 {
    binomial(2 * n as u64, n as u64) / 2
}

/// `⟨a_i, b_i (deg n) | a_ib_i = a_jb_j, a_ia_j = b_ib_j = 0, a_ib_j = 0 (i ≠ j)⟩`
pub fn omega_ring(n: u32, r: usize) -> Result<RingPresentation> {
    let mut gens = Vec::new();
    for i in 1..=r {
        gens.push((format!("a{i}"), n));
        gens.push((format!("b{i}"), n));
    }
    let mut rels = Vec::new();
    for i in 1..=r {
        if i > 1 {
            rels.push(format!("a{i}*b{i} - a1*b1"));
        }
        for j in i..=r {
            rels.push(format!("a{i}*a{j}"));
            rels.push(format!("b{i}*b{j}"));
        }
        for j in 1..=r {
            if i != j {
                rels.push(format!("a{i}*b{j}"));
            }
        }
    }
    ring_from(&format!("Omega_{n}_{r}"), &gens, &rels, 2 * n)
}

/// `⟨a_i (deg n) | a_i² = a_j², a_ia_j = 0 (i ≠ j)⟩`
pub fn sigma_ring(n: u32, r: usize) -> Result<RingPresentation> {
    let gens: Vec<(String, u32)> = (1..=r).map(|i| (format!("a{i}"), n)).collect();
    let mut rels = Vec::new();
    for i in 1..=r {
        if i > 1 {
            rels.push(format!("a{i}^2 - a1^2"));
        }
        for j in i + 1..=r {
            rels.push(format!("a{i}*a{j}"));
        }
    }
    ring_from(&format!("Sigma_{n}_{r}"), &gens, &rels, 2 * n)
}

/// `⟨a_i (deg 2) | a_i^n = a_j^n, a_ia_j = 0 (i ≠ j)⟩`
pub fn pi_ring(n: u32, r: usize) -> Result<RingPresentation> {
    let gens: Vec<(String, u32)> = (1..=r).map(|i| (format!("a{i}"), 2)).collect();
    let mut rels = Vec::new();
    for i in 1..=r {
        if i > 1 {
            rels.push(format!("a{i}^{n} - a1^{n}"));
        }
        for j in i + 1..=r {
            rels.push(format!("a{i}*a{j}"));
        }
    }
    ring_from(&format!("Pi_{n}_{r}"), &gens, &rels, 2 * n)
}

fn ring_from(name: &str, gens: &[(String, u32)], rels: &[String], top: u32) -> Result<RingPresentation> {
    let g: Vec<(&str, u32)> = gens.iter().map(|(s, d)| (s.as_str(), *d)).collect();
    let r: Vec<&str> = rels.iter().map(String::as_str).collect();
    RingPresentation::from_spec(name, &g, &r, Some(top), true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub n: u32,
    pub positive: usize,
    pub negative: usize,
    /// `block` (pairs `dx_I`, `dx_{I^c}`) or `dense` (full Gram matrix).
    pub method: String,
    /// Dense inertia `(positive, negative, zero)` when small enough to compute.
    pub dense_check: Option<(usize, usize, usize)>,
}

/// Largest `n` for which the dense Gram matrix cross-check is run.
pub const DENSE_SIGNATURE_LIMIT: u32 = 4;

/// Signature of `(α, β) ↦ α∧β / vol` on `⋀ⁿR^{2n}`, `n` even. The Gram
/// matrix in the monomial basis only pairs `dx_I` with `dx_{I^c}`, so it
/// splits into 2×2 blocks whose inertia is summed.
pub fn wedge_pairing_signature(n: u32) -> Result<SignatureReport> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::Invalid(format!(
            "n = {n}: the wedge pairing on middle forms is symmetric only for even n ≥ 2 (for odd n it is symplectic)"
        )));
    }
    let e = ExteriorAlgebra::new(2 * n as usize);
    let (mut pos, mut neg) = (0, 0);
    for i in e.subsets_with_first(n as usize) {
        let s = q(e.shuffle_sign(&i));
        let block = vec![vec![Q::zero(), s.clone()], vec![s, Q::zero()]];
        let (p, m, _) = inertia(&block);
        pos += p;
        neg += m;
    }
    let dense_check = (n <= DENSE_SIGNATURE_LIMIT).then(|| dense_signature(&e, n as usize));
    Ok(SignatureReport {
        n,
        positive: pos,
        negative: neg,
        method: "block".into(),
        dense_check,
    })
}

/// Inertia of the Gram matrix on the basis `dx_I ± dx_{I^c}`.
fn dense_signature(e: &ExteriorAlgebra, n: usize) -> (usize, usize, usize) {
    let mut basis = Vec::new();
    for i in e.subsets_with_first(n) {
        let c = e.complement(&i);
        basis.push(&e.form(&i) + &e.form(&c));
        basis.push(&e.form(&i) - &e.form(&c));
    }
    let gram: Vec<Vec<Q>> = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| e.volume_coefficient(&e.algebra().product(x, y)))
                .collect()
        })
        .collect();
    inertia(&gram)
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub embeddable: bool,
    pub ring: RingPresentation,
    pub witness: Option<EmbeddingWitness>,
    pub check: Option<WitnessCheck>,
    pub certificate: Certificate,
}

fn with_witness(ring: RingPresentation, w: EmbeddingWitness, certificate: Certificate) -> Decision {
    let check = verify_witness(&ring, &w);
    Decision {
        embeddable: check.passed,
        ring,
        witness: Some(w),
        check: Some(check),
        certificate,
    }
}

/// `a_i ↦ dx_I ± ε(I) dx_{I^c}` over the first complementary pairs: the
/// sign is `+` for `positive[i]`, so `a_i² = ±2 vol`.
pub fn signed_pair_forms(e: &ExteriorAlgebra, n: usize, positive: &[bool]) -> Vec<Element> {
    let pairs = e.subsets_with_first(n);
    let mut next = [0usize, 0usize];
    positive
        .iter()
        .map(|&p| {
            let slot = &mut next[usize::from(!p)];
            let i = &pairs[*slot];
            *slot += 1;
            let mut s = q(e.shuffle_sign(i));
            if !p {
                s = -s;
            }
            let mut x = e.form(i);
            x.add_scaled(&s, &e.form(&e.complement(i)));
            x
        })
        .collect()
}

pub fn decide_sigma(n: u32, r: usize) -> Result<Decision> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::Invalid(format!("Σ_(n,r) needs even n ≥ 2, got {n}")));
    }
    let half = half_middle(n) as usize;
    let ring = sigma_ring(n, r)?;
    if r <= half {
        let e = ExteriorAlgebra::new(2 * n as usize);
        let images = signed_pair_forms(&e, n as usize, &vec![true; r]);
        let cert = Certificate::Witness {
            dimension: 2 * n as usize,
            construction: "a_i -> dx_I + e(I) dx_I^c over complementary pairs".into(),
        };
        return Ok(with_witness(ring, EmbeddingWitness { target: e, images }, cert));
    }
    let sig = wedge_pairing_signature(n)?;
    Ok(Decision {
        embeddable: false,
        ring,
        witness: None,
        check: None,
        certificate: Certificate::Inertia {
            n,
            r,
            positive: sig.positive,
            negative: sig.negative,
        },
    })
}

pub fn decide_omega(n: u32, r: usize) -> Result<Decision> {
    if n == 0 {
        return Err(Error::Invalid("Ω_(n,r) needs n ≥ 1".into()));
    }
    let half = half_middle(n) as usize;
    let ring = omega_ring(n, r)?;
    if r <= half {
        let e = ExteriorAlgebra::new(2 * n as usize);
        let mut images = Vec::new();
        for i in e.subsets_with_first(n as usize).into_iter().take(r) {
            images.push(e.form(&i));
            images.push(e.form(&e.complement(&i)).scaled(&q(e.shuffle_sign(&i))));
        }
        let cert = Certificate::Witness {
            dimension: 2 * n as usize,
            construction: "a_i -> dx_I, b_i -> e(I) dx_I^c over n-sets I containing the first index".into(),
        };
        return Ok(with_witness(ring, EmbeddingWitness { target: e, images }, cert));
    }
    Ok(Decision {
        embeddable: false,
        ring,
        witness: None,
        check: None,
        certificate: Certificate::DimensionCount {
            n,
            independent: 2 * r,
            available: binomial(2 * n as u64, n as u64) as usize,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiSystem {
    pub n: u32,
    /// Nullity of `η ↦ ω∧η` restricted to `span{dx_{2i−1}dx_{2i}}`.
    pub pair_nullity: usize,
    /// Unknowns, rank, and nullity of the full system on `⋀²R^{2n}`.
    pub unknowns: usize,
    pub rank: usize,
    pub nullity: usize,
}

/// The linear system `ω∧η = 0` for the standard symplectic `ω` on `R^{2n}`.
pub fn pi_system(n: u32) -> Result<PiSystem> {
    if n < 2 {
        return Err(Error::Invalid(format!("Π_(n,r) needs n ≥ 2, got {n}")));
    }
    let e = ExteriorAlgebra::new(2 * n as usize);
    let omega = symplectic_form(&e, n as usize);
    let image = |eta: &Element| -> SparseVec { e.algebra().coords(&e.algebra().product(&omega, eta), 4) };
    let full: Vec<SparseVec> = e.subsets(2).iter().map(|s| image(&e.form(s))).collect();
    let pairs: Vec<SparseVec> = (0..n as usize).map(|i| image(&e.form(&[2 * i, 2 * i + 1]))).collect();
    let full_map = eliminate_map(&full);
    let pair_map = eliminate_map(&pairs);
    Ok(PiSystem {
        n,
        pair_nullity: pair_map.kernel.len(),
        unknowns: full.len(),
        rank: full_map.image.rank(),
        nullity: full_map.kernel.len(),
    })
}

pub fn symplectic_form(e: &ExteriorAlgebra, n: usize) -> Element {
    let mut w = Element::zero();
    for i in 0..n {
        w.add_scaled(&Q::one(), &e.form(&[2 * i, 2 * i + 1]));
    }
    w
}

/// For `n ≥ 3` a second class `a_2` would be a 2-form `η` with `ω∧η = 0`
/// and `η^n ≠ 0`; the system forces `η = 0`. For `n = 2` the ring is
/// `Σ_{2,r}` and the decision is delegated.
pub fn decide_pi(n: u32, r: usize) -> Result<(PiSystem, Decision)> {
    let sys = pi_system(n)?;
    if n == 2 {
        let d = decide_sigma(2, r)?;
        return Ok((sys, d));
    }
    let ring = pi_ring(n, r)?;
    if r <= 1 {
        let e = ExteriorAlgebra::new(2 * n as usize);
        let images = (0..r).map(|_| symplectic_form(&e, n as usize)).collect();
        let cert = Certificate::Witness {
            dimension: 2 * n as usize,
            construction: "a_1 -> the standard symplectic form".into(),
        };
        return Ok((sys, with_witness(ring, EmbeddingWitness { target: e, images }, cert)));
    }
    let cert = Certificate::LinearSystem {
        n,
        unknowns: sys.unknowns,
        rank: sys.rank,
        nullity: sys.nullity,
    };
    Ok((
        sys.clone(),
        Decision {
            embeddable: sys.nullity != 0,
            ring,
            witness: None,
            check: None,
            certificate: cert,
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBoundCheck {
    pub dimension: u32,
    /// `(degree, rank, bound)` for every degree.
    pub degrees: Vec<(u32, usize, u64)>,
    pub first_failure: Option<u32>,
}

impl RankBoundCheck {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `rank H^k ≤ C(n, k)` for a closed `n`-manifold, from Betti numbers.
pub fn rank_bound_from_betti(betti: &[usize], n: u32) -> RankBoundCheck {
    let degrees: Vec<(u32, usize, u64)> = (0..=n)
        .map(|k| {
            (
                k,
                betti.get(k as usize).copied().unwrap_or(0),
                binomial(n as u64, k as u64),
            )
        })
        .collect();
    let first_failure = degrees.iter().find(|(_, r, b)| *r as u64 > *b).map(|(k, _, _)| *k);
    RankBoundCheck {
        dimension: n,
        degrees,
        first_failure,
    }
}

pub fn rank_bound_check(ring: &RingPresentation, n: u32) -> RankBoundCheck {
    let betti: Vec<usize> = (0..=n).map(|k| ring.betti(k)).collect();
    rank_bound_from_betti(&betti, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        let s = wedge_pairing_signature(2).unwrap();
        assert_eq!((s.positive, s.negative), (3, 3));
        assert_eq!(s.dense_check, Some((3, 3, 0)));
        assert!(wedge_pairing_signature(3).is_err());
    }

    #[test]
    fn sigma_flip() {
        let d = decide_sigma(2, 3).unwrap();
        assert!(d.embeddable && d.check.unwrap().passed);
        assert!(!decide_sigma(2, 4).unwrap().embeddable);
    }

    #[test]
    fn omega_flip() {
        for n in 1..=3 {
            let half = half_middle(n) as usize;
            let d = decide_omega(n, half).unwrap();
            assert!(d.embeddable, "n = {n}: {:?}", d.check);
            assert!(!decide_omega(n, half + 1).unwrap().embeddable);
        }
    }

    #[test]
    fn pi_nullities() {
        let s = pi_system(2).unwrap();
        assert_eq!((s.pair_nullity, s.nullity), (1, 5));
        let s = pi_system(3).unwrap();
        assert_eq!((s.pair_nullity, s.nullity), (0, 0));
        let (_, d) = decide_pi(3, 2).unwrap();
        assert!(!d.embeddable);
        let (_, d) = decide_pi(3, 1).unwrap();
        assert!(d.embeddable);
    }

    #[test]
    fn rank_bound() {
        let r = omega_ring(2, 4).unwrap();
        let c = rank_bound_check(&r, 4);
        assert_eq!(c.first_failure, Some(2));
        let c = rank_bound_check(&sigma_ring(2, 3).unwrap(), 4);
        assert!(c.passed());
    }
}
