use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rht_core::element::Element;
use rht_core::linalg::binomial;
use rht_core::morphism::DgaMorphism;
use rht_core::random::small_rational;
use rht_core::ring::RingPresentation;
use rht_core::scalability::families::rank_bound_from_betti;
use rht_core::scalability::{
    classify, classify_str, connected_sum_ring, decide_omega, decide_pi, decide_sigma, family_local_forms,
    intersection_complete, omega_ring, sigma_ring, verify_witness, wedge_pairing_signature, Atom, EmbeddingWitness,
    ExteriorAlgebra, SetFamily, Space, Verdict,
};

fn half(n: u32) -> usize {
    (binomial(2 * n as u64, n as u64) / 2) as usize
}

/// Both rings are quotients of the same free algebra (generators matched by
/// position); equal ideals means each presentation's relations vanish in the
/// other.
fn same_ideal(x: &RingPresentation, y: &RingPresentation) -> bool {
    let kills = |from: &RingPresentation, to: &RingPresentation| {
        let images = (0..to.free().num_generators() as u32)
            .map(|i| to.free().gen_at(i))
            .collect();
        let phi = DgaMorphism::new(from.free().clone(), to.algebra.clone(), images).unwrap();
        from.algebra.relations().iter().all(|r| to.algebra.is_zero(&phi.map(r)))
    };
    x.free().degrees() == y.free().degrees() && kills(x, y) && kills(y, x)
}

#[test]
fn sigma_2_4_rejects_random_candidates() {
    let ring = sigma_ring(2, 4).unwrap();
    let e = ExteriorAlgebra::new(4);
    let pairs = e.subsets(2);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..10_000 {
        let images: Vec<Element> = (0..4)
            .map(|_| {
                let mut x = Element::zero();
                for p in &pairs {
                    if rng.gen_bool(0.6) {
                        x.add_scaled(&small_rational(&mut rng), &e.form(p));
                    }
                }
                x
            })
            .collect();
        let w = EmbeddingWitness {
            target: e.clone(),
            images,
        };
        assert!(!verify_witness(&ring, &w).passed, "trial {trial} embeds Σ_(2,4)");
    }
}

#[test]
fn zero_witness_fails_injectivity() {
    let ring = sigma_ring(2, 1).unwrap();
    let w = EmbeddingWitness {
        target: ExteriorAlgebra::new(4),
        images: vec![Element::zero()],
    };
    let c = verify_witness(&ring, &w);
    assert!(!c.passed);
    assert!(c.failure.unwrap().contains("fundamental"));
}

#[test]
fn omega_2_3_witness_by_expansion() {
    let d = decide_omega(2, 3).unwrap();
    let w = d.witness.unwrap();
    let e = &w.target;
    // images are dx_I and ±dx_{I^c} for I = 01, 02, 03
    let expected = [[0, 1], [0, 2], [0, 3]];
    for (i, s) in expected.iter().enumerate() {
        assert_eq!(w.images[2 * i], e.form(s));
        let comp = e.form(&e.complement(s));
        assert!(w.images[2 * i + 1] == comp || w.images[2 * i + 1] == -comp);
    }
    let a = e.algebra();
    for i in 0..3 {
        for j in 0..3 {
            let ab = a.product(&w.images[2 * i], &w.images[2 * j + 1]);
            // a_i b_j = 0 off the diagonal, a_i b_i = vol on it
            if i == j {
                assert_eq!(ab, e.volume());
            } else {
                assert!(ab.is_zero());
            }
            assert!(a.product(&w.images[2 * i], &w.images[2 * j]).is_zero());
            assert!(a.product(&w.images[2 * i + 1], &w.images[2 * j + 1]).is_zero());
        }
    }
}

#[test]
fn verdicts_flip_at_half_the_middle_dimension() {
    for n in 1..=4u32 {
        let h = half(n);
        let yes = decide_omega(n, h).unwrap();
        assert!(yes.embeddable && yes.check.unwrap().passed, "omega n={n}");
        assert!(!decide_omega(n, h + 1).unwrap().embeddable, "omega n={n}");
    }
    for n in [2u32, 4] {
        let h = half(n);
        let yes = decide_sigma(n, h).unwrap();
        assert!(yes.embeddable && yes.check.unwrap().passed, "sigma n={n}");
        assert!(!decide_sigma(n, h + 1).unwrap().embeddable, "sigma n={n}");
    }
    let no = decide_sigma(4, 36).unwrap();
    assert!(!no.embeddable);
}

#[test]
fn every_returned_witness_verifies() {
    let mut decisions = Vec::new();
    for n in 1..=3u32 {
        for r in 1..=half(n) {
            decisions.push(decide_omega(n, r).unwrap());
        }
    }
    for r in 1..=3 {
        decisions.push(decide_sigma(2, r).unwrap());
    }
    for n in 2..=4 {
        decisions.push(decide_pi(n, 1).unwrap().1);
    }
    for d in decisions {
        if let Some(w) = &d.witness {
            assert!(verify_witness(&d.ring, w).passed, "{}", d.ring.name);
            assert!(d.embeddable);
        }
    }
}

#[test]
fn pi_nullities() {
    assert_eq!(decide_pi(2, 2).unwrap().0.pair_nullity, 1);
    for n in 3..=6 {
        let (sys, d) = decide_pi(n, 2).unwrap();
        assert_eq!(sys.pair_nullity, 0, "n={n}");
        assert!(!d.embeddable);
    }
}

#[test]
fn signatures_are_balanced() {
    for n in [2u32, 4, 6, 8] {
        let s = wedge_pairing_signature(n).unwrap();
        assert_eq!(s.positive + s.negative, 2 * half(n));
        assert_eq!(s.positive, s.negative);
    }
}

#[test]
fn projective_plane_sum_is_sigma() {
    let sum = connected_sum_ring(&[(Atom::Cp(2), false); 4]).unwrap();
    assert!(same_ideal(&sum, &sigma_ring(2, 4).unwrap()));
}

#[test]
fn product_of_spheres_sum_is_omega() {
    for (n, r) in [(1u32, 1usize), (2, 3), (3, 2), (4, 2)] {
        let sum = connected_sum_ring(&vec![(Atom::SxS(n, n), false); r]).unwrap();
        assert!(same_ideal(&sum, &omega_ring(n, r).unwrap()), "n={n} r={r}");
    }
}

#[test]
fn reversed_summand_flips_the_square() {
    let sum = connected_sum_ring(&[(Atom::Cp(2), false), (Atom::Cp(2), true)]).unwrap();
    let a = &sum.algebra;
    let (x1, x2) = (a.gen("x1").unwrap(), a.gen("x2").unwrap());
    let s1 = a.product(&x1, &x1);
    assert!(!a.is_zero(&s1));
    assert!(a.is_zero(&(&s1 + &a.product(&x2, &x2))));
}

#[test]
fn intersection_completeness_examples() {
    for (n, m) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let size = n + m;
        let members: Vec<Vec<usize>> = ExteriorAlgebra::new(size).subsets_with_first(n);
        let f = SetFamily::new(size, members).unwrap();
        assert!(intersection_complete(&f).complete, "n={n} m={m}");
    }
    let f = SetFamily::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
    assert!(!intersection_complete(&f).complete);
    let f = SetFamily::new(4, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
    assert!(intersection_complete(&f).complete);
}

#[test]
fn family_forms_agree_with_omega() {
    let e = ExteriorAlgebra::new(4);
    let f = SetFamily::new(4, e.subsets_with_first(2)).unwrap();
    let forms = family_local_forms(&f).unwrap();
    assert!(forms.check.passed);
    assert!(forms.caveat.is_none());
    let omega = decide_omega(2, 3).unwrap().witness.unwrap();
    for (x, y) in forms.witness.images.iter().zip(&omega.images) {
        assert!(x == y || *x == -y);
    }
    assert!(same_ideal(&forms.ring, &omega_ring(2, 3).unwrap()));
    let circle = family_local_forms(&SetFamily::new(2, vec![vec![0]]).unwrap()).unwrap();
    assert!(circle.check.passed && circle.caveat.is_some());
}

#[test]
fn signed_plane_sums() {
    for (p, q_, want) in [
        (3, 3, Verdict::Scalable),
        (3, 0, Verdict::Scalable),
        (0, 3, Verdict::Scalable),
        (4, 1, Verdict::NotScalable),
        (2, 4, Verdict::NotScalable),
    ] {
        let mut parts = Vec::new();
        if p > 0 {
            parts.push(format!("{p}*CP2"));
        }
        if q_ > 0 {
            parts.push(format!("{q_}*rev(CP2)"));
        }
        let c = classify_str(&format!("csum({})", parts.join(","))).unwrap();
        assert_eq!(c.verdict, want, "{p} {q_}: {}", c.certificate.summary());
        if let Some(check) = c.check {
            assert!(check.passed);
        }
    }
}

fn atom() -> impl Strategy<Value = &'static str> {
    prop_oneof![
        Just("CP2"),
        Just("(S2xS2)"),
        Just("HP2"),
        Just("(S3xS3)"),
        Just("(S2xS4)"),
        Just("CP3"),
        Just("S4"),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Anything failing the rank bound is never classified Scalable, and a
    /// verified witness always accompanies a Scalable connected sum.
    #[test]
    fn classify_respects_rank_bound(a in atom(), r in 1usize..40, wrap in 0usize..3) {
        let sum = format!("csum({r}*{a})");
        let text = match wrap {
            0 => sum,
            1 => format!("prod({sum}, S3)"),
            _ => format!("wedge({sum}, S5)"),
        };
        let space: Space = text.parse().unwrap();
        let c = classify(&space).unwrap();
        let dim = space.dimension().unwrap();
        if let Some(n) = dim {
            if !rank_bound_from_betti(&c.betti, n).passed() {
                prop_assert_ne!(c.verdict, Verdict::Scalable, "{}", text);
            }
        }
        if let Some(check) = &c.check {
            prop_assert!(check.passed, "{}", text);
        }
    }
}
