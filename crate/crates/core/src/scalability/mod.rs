//! Embedding obstructions for cohomology rings in exterior algebras, the
//! algebra families built on them, and classification of explicit spaces.

pub mod exterior;
pub mod families;
pub mod sets;
pub mod spaces;

use serde::{Deserialize, Serialize};

pub use exterior::{verify_witness, EmbeddingWitness, ExteriorAlgebra, WitnessCheck};
pub use families::{
    decide_omega, decide_pi, decide_sigma, omega_ring, pi_ring, pi_system, rank_bound_check, sigma_ring,
    wedge_pairing_signature, Decision, PiSystem, RankBoundCheck, SignatureReport,
};
pub use sets::{family_local_forms, intersection_complete, FamilyForms, IntersectionCheck, SetFamily};
pub use spaces::{classify, classify_str, connected_sum_ring, Atom, Classification, Space, Summand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Scalable,
    NotScalable,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Scalable => "Scalable",
            Verdict::NotScalable => "NotScalable",
            Verdict::Unknown => "Unknown",
        })
    }
}

/// The evidence behind a verdict. Refutations are checkable from their
/// fields alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// An embedding in `⋀*R^dimension`, verified.
    Witness { dimension: usize, construction: String },
    /// An embedding known to exist by the same construction, too large to
    /// build and verify here.
    WitnessNotMaterialized {
        dimension: usize,
        construction: String,
        reason: String,
    },
    /// `rank H^degree > C(dimension, degree)`.
    RankBound {
        dimension: u32,
        degree: u32,
        rank: usize,
        bound: u64,
    },
    /// `r` classes with `a_i² = a_j² ≠ 0`, `a_ia_j = 0` span a positive
    /// definite subspace, but the wedge pairing on `⋀ⁿR^{2n}` has positive
    /// index `positive < r`.
    Inertia {
        n: u32,
        r: usize,
        positive: usize,
        negative: usize,
    },
    /// `independent` forms required in `⋀ⁿR^{2n}` of dimension `available`.
    DimensionCount {
        n: u32,
        independent: usize,
        available: usize,
    },
    /// Solutions of `ω∧η = 0` over `⋀²R^{2n}`.
    LinearSystem {
        n: u32,
        unknowns: usize,
        rank: usize,
        nullity: usize,
    },
    /// Verdict inherited from the parts.
    Closure { rule: String, parts: Vec<Certificate> },
    /// No known method decides this case.
    Gap { reason: String },
}

impl Certificate {
    pub fn summary(&self) -> String {
        match self {
            Certificate::Witness { dimension, construction } => {
                format!("verified embedding in the exterior algebra on R^{dimension}: {construction}")
            }
            Certificate::WitnessNotMaterialized {
                dimension,
                construction,
                reason,
            } => format!("embedding in the exterior algebra on R^{dimension} ({construction}); not built: {reason}"),
            Certificate::RankBound {
                dimension,
                degree,
                rank,
                bound,
            } => format!("rank H^{degree} = {rank} > C({dimension},{degree}) = {bound}"),
            Certificate::Inertia {
                n,
                r,
                positive,
                negative,
            } => format!(
                "{r} classes with equal nonzero squares need a positive definite {r}-plane, but the wedge pairing on middle forms of R^{} has signature ({positive},{negative})",
                2 * n
            ),
            Certificate::DimensionCount {
                n,
                independent,
                available,
            } => format!(
                "{independent} independent degree-{n} forms needed, only {available} exist on R^{}",
                2 * n
            ),
            Certificate::LinearSystem {
                n,
                unknowns,
                rank,
                nullity,
            } => format!(
                "omega∧eta = 0 on R^{}: {unknowns} unknowns, rank {rank}, nullity {nullity}",
                2 * n
            ),
            Certificate::Closure { rule, parts } => format!("closure under {rule} ({} parts)", parts.len()),
            Certificate::Gap { reason } => format!("undecided: {reason}"),
        }
    }
}
