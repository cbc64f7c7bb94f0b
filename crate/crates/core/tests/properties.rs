use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rht_core::algebra::{Cdga, FreeCdga};
use rht_core::cohomology::{long_exact_sequence_holds, rank_nullity_holds};
use rht_core::element::Element;
use rht_core::fixtures;
use rht_core::format::{parse_presentation, print_presentation};
use rht_core::homotopy::HomotopyElement;
use rht_core::linalg::{q, q_frac};
use rht_core::minimal::{bigraded_model, grading_automorphism, minimal_model};
use rht_core::monomial::Generator;
use rht_core::random::{populated_degrees, random_element, random_homotopy_element, small_rational};
use rht_core::scalability::Space;
use rht_core::whitehead::BracketExpr;

fn algebras() -> Vec<(FreeCdga, u32)> {
    rht_core::verify::property_fixtures()
        .into_iter()
        .map(|(_, a, max)| (a, max))
        .collect()
}

fn pick(a: &FreeCdga, max: u32, rng: &mut ChaCha8Rng) -> u32 {
    let d = populated_degrees(a, max);
    d[rng.gen_range(0..d.len())]
}

proptest! {
    #[test]
    fn koszul_sign(seed: u64, which in 0usize..6) {
        let (a, max) = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, r) = (pick(a, *max, &mut rng), pick(a, *max, &mut rng));
        let x = random_element(a, p, 3, &mut rng);
        let y = random_element(a, r, 3, &mut rng);
        let yx = a.product(&y, &x);
        let expected = if p * r % 2 == 1 { -yx } else { yx };
        prop_assert_eq!(a.product(&x, &y), expected);
    }

    #[test]
    fn leibniz_and_square_zero(seed: u64, which in 0usize..6) {
        let (a, max) = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, r) = (pick(a, *max, &mut rng), pick(a, *max, &mut rng));
        let x = random_element(a, p, 3, &mut rng);
        let y = random_element(a, r, 3, &mut rng);
        let lhs = a.d(&a.product(&x, &y));
        let first = a.product(&a.d(&x), &y);
        let second = a.product(&x, &a.d(&y));
        let rhs = if p % 2 == 0 { &first + &second } else { &first - &second };
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.d(&a.d(&x)).is_zero());
    }

    #[test]
    fn products_are_associative(seed: u64, which in 0usize..6) {
        let (a, max) = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<Element> = (0..3).map(|_| {
            let k = pick(a, *max, &mut rng);
            random_element(a, k, 2, &mut rng)
        }).collect();
        let left = a.product(&a.product(&xs[0], &xs[1]), &xs[2]);
        let right = a.product(&xs[0], &a.product(&xs[1], &xs[2]));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normalization_ignores_term_order(seed: u64) {
        let a = fixtures::wedge_table();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = pick(&a, 12, &mut rng);
        let basis = a.graded_basis(k);
        let mut terms: Vec<_> = (0..6)
            .map(|_| (basis.monomials[rng.gen_range(0..basis.len())].clone(), small_rational(&mut rng)))
            .collect();
        let forward = Element::from_terms(terms.clone());
        terms.reverse();
        let backward = Element::from_terms(terms.clone());
        prop_assert_eq!(&forward, &backward);
        // renormalizing changes nothing
        let again = Element::from_terms(forward.terms().map(|(m, c)| (m.clone(), c.clone())));
        prop_assert_eq!(&again, &forward);
        let zero = &forward - &backward;
        prop_assert!(zero.is_zero() && zero.num_terms() == 0);
    }

    #[test]
    fn integration_identities(seed: u64, which in 0usize..3) {
        let algebras = [
            Cdga::from(fixtures::s2_model()),
            Cdga::from(fixtures::wedge_table()),
            fixtures::moving_extension_problem().h.target().clone(),
        ];
        let b = &algebras[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = pick(b.free(), 7, &mut rng);
        let u = random_homotopy_element(b, k, 8, &mut rng);
        let du = u.d(b);
        let lhs = u.integrate_0_t(b).unwrap().d(b).add_scaled(&q(1), &du.integrate_0_t(b).unwrap());
        let rhs = u.add_scaled(&q(-1), &HomotopyElement::constant(&u.at_zero()));
        prop_assert_eq!(lhs.normalized(b), rhs.normalized(b));
        let lhs1 = &b.d(&u.integrate_0_1(b)) + &du.integrate_0_1(b);
        prop_assert!(b.is_zero(&(&lhs1 - &(&u.at_one() - &u.at_zero()))));
        // reversal is an involution swapping the ends
        let r = u.reversed();
        prop_assert_eq!(r.reversed().normalized(b), u.normalized(b));
        prop_assert!(b.is_zero(&(&r.at_zero() - &u.at_one())));
    }

    #[test]
    fn grading_automorphisms_compose(s in 1i64..5, t in -4i64..5) {
        prop_assume!(t != 0);
        let m = bigraded_model(&fixtures::cp2_ring().algebra, 10).unwrap();
        let rs = grading_automorphism(&m, &q_frac(s, 3)).unwrap();
        let rt = grading_automorphism(&m, &q(t)).unwrap();
        let rst = grading_automorphism(&m, &q_frac(s * t, 3)).unwrap();
        prop_assert!(rs.compose(&rt).unwrap().agrees_with(&rst));
    }

    #[test]
    fn presentation_round_trip(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let gens: Vec<Generator> = (0..n)
            .map(|i| Generator::new(format!("g{i}"), rng.gen_range(2..=5)))
            .collect();
        let free = FreeCdga::new(gens, vec![Element::zero(); n]).unwrap();
        let rels: Vec<Element> = (0..rng.gen_range(0..=2))
            .filter_map(|_| {
                let k = rng.gen_range(4..=8);
                let x = random_element(&free, k, 2, &mut rng);
                (!x.is_zero()).then_some(x)
            })
            .collect();
        let ring = Cdga::quotient(free, rels, None).unwrap();
        let text = print_presentation(&rht_core::format::Presentation::Cdga { name: "R".into(), algebra: ring.clone() });
        let back = parse_presentation(&text).unwrap();
        prop_assert!(back.algebra().same_as(&ring), "{}", text);
        prop_assert_eq!(print_presentation(&back), text);
    }

    #[test]
    fn bracket_round_trip(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        fn build(rng: &mut ChaCha8Rng, depth: u32) -> BracketExpr {
            if depth == 0 || rng.gen_bool(0.3) {
                let name = ["a", "b", "c"][rng.gen_range(0..3)];
                let multiplier = rng.gen_range(1..=40);
                BracketExpr::Leaf { name: name.into(), multiplier }
            } else {
                BracketExpr::node(build(rng, depth - 1), build(rng, depth - 1))
            }
        }
        let e = build(&mut rng, 4);
        prop_assert_eq!(BracketExpr::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn descriptor_round_trip(counts in proptest::collection::vec(1usize..5, 1..3), kind in 0usize..4) {
        let atom = ["CP2", "(S2xS2)", "HP2", "rev(CP2)"][kind];
        let body: Vec<String> = counts.iter().map(|c| format!("{c}*{atom}")).collect();
        let text = format!("prod(csum({}), S3)", body.join(","));
        let s: Space = text.parse().unwrap();
        let printed = s.to_string();
        let again: Space = printed.parse().unwrap();
        prop_assert_eq!(again.to_string(), printed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_nullity_and_exact_sequence(which in 0usize..3, k in 2u32..9) {
        let rings = [fixtures::cp2_ring(), fixtures::s2xs2_ring(), fixtures::wedge_ring()];
        let ring = &rings[which].algebra;
        prop_assert!(rank_nullity_holds(ring, k));
        let m = minimal_model(ring, 9).unwrap();
        prop_assert!(rank_nullity_holds(&Cdga::from(m.model.clone()), k));
        prop_assert!(long_exact_sequence_holds(&m.quasi_iso, k));
    }
}
