//! Random homogeneous elements for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Cdga, FreeCdga};
use crate::element::Element;
use crate::homotopy::HomotopyElement;
use crate::linalg::{q_frac, Q};

/// A small nonzero rational `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 4`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Q {
    let mut p = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        p = -p;
    }
    q_frac(p, rng.gen_range(1..=4))
}

/// Up to `terms` random monomials of degree `k` with small coefficients;
/// zero when the degree is empty.
pub fn random_element<R: Rng>(a: &FreeCdga, k: u32, terms: usize, rng: &mut R) -> Element {
    let basis = a.graded_basis(k);
    let mut x = Element::zero();
    if basis.is_empty() {
        return x;
    }
    for _ in 0..rng.gen_range(1..=terms.max(1)) {
        let m = basis.monomials.choose(rng).expect("nonempty basis");
        x.add_term(m.clone(), small_rational(rng));
    }
    x
}

/// Degrees in `1..=max` with a nonempty basis.
pub fn populated_degrees(a: &FreeCdga, max: u32) -> Vec<u32> {
    (1..=max).filter(|&k| a.dim(k) > 0).collect()
}

/// A random element of `B ⊗ Q⟨t, dt⟩` of degree `k`, t-exponents below
/// `max_t`.
pub fn random_homotopy_element<R: Rng>(b: &Cdga, k: u32, max_t: u32, rng: &mut R) -> HomotopyElement {
    let mut h = HomotopyElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let x = b.reduce(&random_element(b.free(), k, 2, rng));
        h.add_body(rng.gen_range(0..max_t), &x).expect("below bound");
    }
    if k > 0 {
        for _ in 0..rng.gen_range(0..=3) {
            let x = b.reduce(&random_element(b.free(), k - 1, 2, rng));
            h.add_dt(rng.gen_range(0..max_t), &x).expect("below bound");
        }
    }
    h
}
