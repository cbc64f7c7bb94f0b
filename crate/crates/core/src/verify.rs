//! The verification battery: one group per headline computation, each with
//! a time limit. Used by `rht verify-paper` and the demo.

use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Cdga, FreeCdga};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::homotopy::restricts_to;
use crate::hopf::hopf_invariant;
use crate::linalg::{binomial, q, Q};
use crate::massey::{all_triples, massey_triple};
use crate::minimal::{
    bigraded_model, depth_filtration, distortion_exponent, filtration_of, minimal_model, u0_surjectivity, verify_model,
    Sharpness,
};
use crate::monomial::Monomial;
use crate::obstruction::{extend_with_witness, obstruction_class};
use crate::random::{populated_degrees, random_element, random_homotopy_element};
use crate::scalability::{
    classify_str, decide_omega, decide_sigma, pi_system, wedge_pairing_signature, Certificate, Verdict,
};
use crate::whitehead::{whitehead_pair, BracketExpr};

/// Groups in run order, with their time limits in milliseconds.
pub const GROUPS: [(&str, u64); 10] = [
    ("algebra", 5_000),
    ("integration", 2_000),
    ("sphere", 1_000),
    ("table", 60_000),
    ("whitehead", 5_000),
    ("signatures", 30_000),
    ("hopf", 1_000),
    ("massey", 10_000),
    ("classify", 30_000),
    ("obstruction", 5_000),
];

/// Deliberate defects for checking that the battery notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Compare products against the wrong Koszul sign.
    KoszulSign,
    /// Drop the sign in the integration formula.
    IntegrationSign,
}

impl std::str::FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fault> {
        match s {
            "koszul-sign" => Ok(Fault::KoszulSign),
            "integration-sign" => Ok(Fault::IntegrationSign),
            _ => Err(Error::Invalid(format!("unknown fault `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub only: Vec<String>,
    pub seed: u64,
    pub trials: usize,
    pub fault: Option<Fault>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            only: Vec::new(),
            seed: 7,
            trials: 1000,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupOutcome {
    pub group: String,
    pub limit_ms: u64,
    pub within_limit: bool,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl GroupOutcome {
    pub fn passed(&self) -> bool {
        self.within_limit && self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BatteryReport {
    pub groups: Vec<GroupOutcome>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.groups.iter().all(GroupOutcome::passed)
    }
}

type Checks = Vec<CheckOutcome>;

fn record(out: &mut Checks, name: impl Into<String>, r: std::result::Result<String, String>) {
    let (passed, detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    out.push(CheckOutcome {
        name: name.into(),
        passed,
        detail,
    });
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_str(e: Error) -> String {
    e.to_string()
}

pub fn run(opts: &Options) -> Result<BatteryReport> {
    for g in &opts.only {
        if !GROUPS.iter().any(|(n, _)| n == g) {
            return Err(Error::Invalid(format!(
                "unknown group `{g}`; groups are {}",
                GROUPS.map(|(n, _)| n).join(", ")
            )));
        }
    }
    let mut groups = Vec::new();
    for (name, limit) in GROUPS {
        if !opts.only.is_empty() && !opts.only.iter().any(|g| g == name) {
            continue;
        }
        let start = Instant::now();
        let checks = run_group(name, opts);
        let elapsed = start.elapsed();
        groups.push(GroupOutcome {
            group: name.into(),
            limit_ms: limit,
            within_limit: elapsed <= Duration::from_millis(limit),
            checks,
            elapsed,
        });
    }
    Ok(BatteryReport { groups })
}

pub fn run_group(name: &str, opts: &Options) -> Checks {
    let mut out = Vec::new();
    match name {
        "algebra" => algebra(&mut out, opts),
        "integration" => integration(&mut out, opts),
        "sphere" => sphere(&mut out),
        "table" => table(&mut out),
        "whitehead" => whitehead(&mut out),
        "signatures" => signatures(&mut out),
        "hopf" => hopf(&mut out),
        "massey" => massey(&mut out),
        "classify" => classify(&mut out),
        "obstruction" => obstruction(&mut out),
        _ => record(&mut out, name, Err("unknown group".into())),
    }
    out
}

/// Free algebras exercised by the property checks, with a degree limit
/// for random elements.
pub fn property_fixtures() -> Vec<(&'static str, FreeCdga, u32)> {
    let cp2 = bigraded_model(&fixtures::cp2_ring().algebra, 10).expect("model");
    let (s3s3, _) = fixtures::s3_wedge_s3_model();
    let moving = fixtures::moving_extension_problem();
    vec![
        ("S2 model", fixtures::s2_model(), 8),
        ("wedge table", fixtures::wedge_table(), 9),
        ("CP2 model", cp2.model, 8),
        ("S3vS3 model", s3s3.model, 9),
        (
            "exterior R^5",
            crate::scalability::ExteriorAlgebra::new(5).algebra().free().clone(),
            5,
        ),
        ("C with contractible pair", moving.h.target().free().clone(), 6),
    ]
}

fn koszul_sign(a: &FreeCdga, x: &Element, y: &Element, p: u32, r: u32, fault: Option<Fault>) -> bool {
    let xy = a.product(x, y);
    let mut yx = a.product(y, x);
    let flip = (p * r) % 2 == 1;
    if flip != (fault == Some(Fault::KoszulSign)) {
        yx = -yx;
    }
    xy == yx
}

fn algebra(out: &mut Checks, opts: &Options) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for (name, a, max) in property_fixtures() {
        let degs = populated_degrees(&a, max);
        let pick = |rng: &mut ChaCha8Rng| degs[rng.gen_range(0..degs.len())];
        let mut bad = None;
        for _ in 0..opts.trials {
            let (p, r) = (pick(&mut rng), pick(&mut rng));
            let x = random_element(&a, p, 3, &mut rng);
            let y = random_element(&a, r, 3, &mut rng);
            if !koszul_sign(&a, &x, &y, p, r, opts.fault) {
                bad = Some(format!("xy ≠ ±yx for x = {}, y = {}", a.format(&x), a.format(&y)));
                break;
            }
        }
        record(
            out,
            format!("koszul/{name}"),
            bad.map_or(Ok(format!("{} pairs", opts.trials)), Err),
        );

        let mut bad = None;
        for _ in 0..opts.trials {
            let (p, r) = (pick(&mut rng), pick(&mut rng));
            let x = random_element(&a, p, 3, &mut rng);
            let y = random_element(&a, r, 3, &mut rng);
            let lhs = a.d(&a.product(&x, &y));
            let mut rhs = a.product(&a.d(&x), &y);
            let xdy = a.product(&x, &a.d(&y));
            rhs = if p % 2 == 0 { &rhs + &xdy } else { &rhs - &xdy };
            if lhs != rhs {
                bad = Some(format!("Leibniz fails for x = {}, y = {}", a.format(&x), a.format(&y)));
                break;
            }
        }
        record(
            out,
            format!("leibniz/{name}"),
            bad.map_or(Ok(format!("{} pairs", opts.trials)), Err),
        );

        let mut bad = None;
        for _ in 0..opts.trials {
            let x = random_element(&a, pick(&mut rng), 4, &mut rng);
            if !a.d(&a.d(&x)).is_zero() {
                bad = Some(format!("d² ≠ 0 on {}", a.format(&x)));
                break;
            }
        }
        record(
            out,
            format!("d2/{name}"),
            bad.map_or(Ok(format!("{} elements", opts.trials)), Err),
        );
    }
}

fn integration(out: &mut Checks, opts: &Options) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let algebras = [
        Cdga::from(fixtures::s2_model()),
        Cdga::from(fixtures::wedge_table()),
        fixtures::moving_extension_problem().h.target().clone(),
    ];
    let (mut bad_t, mut bad_1) = (None, None);
    for i in 0..opts.trials {
        let b = &algebras[i % algebras.len()];
        let degs = populated_degrees(b.free(), 7);
        let k = degs[rng.gen_range(0..degs.len())];
        let u = random_homotopy_element(b, k, 8, &mut rng);
        let du = u.d(b);
        let Ok(iu) = u.integrate_0_t(b) else {
            bad_t.get_or_insert_with(|| "t-degree overflow".to_string());
            continue;
        };
        let Ok(idu) = du.integrate_0_t(b) else {
            bad_t.get_or_insert_with(|| "t-degree overflow".to_string());
            continue;
        };
        let mut lhs = iu.d(b).add_scaled(&Q::one(), &idu);
        if opts.fault == Some(Fault::IntegrationSign) {
            lhs = iu.d(b).add_scaled(&-Q::one(), &idu);
        }
        let rhs = u.add_scaled(&-Q::one(), &crate::homotopy::HomotopyElement::constant(&u.at_zero()));
        if lhs.normalized(b) != rhs.normalized(b) && bad_t.is_none() {
            bad_t = Some(format!("I0t fails on {}", u.format(b)));
        }
        let lhs1 = &b.d(&u.integrate_0_1(b)) + &du.integrate_0_1(b);
        let rhs1 = &u.at_one() - &u.at_zero();
        if !b.is_zero(&(&lhs1 - &rhs1)) && bad_1.is_none() {
            bad_1 = Some(format!("I01 fails on {}", u.format(b)));
        }
    }
    let ok = format!("{} elements", opts.trials);
    record(out, "I0t", bad_t.map_or(Ok(ok.clone()), Err));
    record(out, "I01", bad_1.map_or(Ok(ok), Err));
}

fn sphere(out: &mut Checks) {
    let ring = fixtures::sphere_ring(2);
    let m = match minimal_model(&ring.algebra, 7) {
        Ok(m) => m,
        Err(e) => return record(out, "model", Err(e.to_string())),
    };
    let f = &m.model;
    let gens: Vec<(String, u32)> = f.generators().iter().map(|g| (g.name.clone(), g.degree)).collect();
    let degs: Vec<u32> = gens.iter().map(|g| g.1).collect();
    record(
        out,
        "generators",
        ensure(degs == [2, 3], || format!("generator degrees {degs:?}")).and_then(|_| {
            let a = f.gen_at(0);
            ensure(f.diff_of(1) == &f.product(&a, &a), || {
                format!("d({}) = {}", gens[1].0, f.format(f.diff_of(1)))
            })
            .map(|_| format!("{}(2), {}(3), d{} = {}^2", gens[0].0, gens[1].0, gens[1].0, gens[0].0))
        }),
    );
    record(
        out,
        "quasi-isomorphism",
        ensure(verify_model(&m), || {
            "model map is not a quasi-isomorphism through 7".into()
        })
        .map(|_| "through 7".into()),
    );
    if degs != [2, 3] {
        return;
    }
    let filt = depth_filtration(&m);
    let depths = (filt.depth(&gens[0].0), filt.depth(&gens[1].0));
    record(
        out,
        "depths",
        ensure(depths == (Some(0), Some(1)), || format!("depths {depths:?}")).map(|_| "0, 1".into()),
    );
    record(
        out,
        "distortion",
        distortion_exponent(&m, &gens[1].0).map_err(err_str).and_then(|r| {
            ensure(r.exponent == 4 && r.sharpness == Sharpness::SharpIfScalable, || {
                format!("exponent {} ({:?})", r.exponent, r.sharpness)
            })
            .map(|_| "exponent 4".into())
        }),
    );
}

/// Generators listed in the wedge table: `(degree, depth)`.
pub const TABLE_ENTRIES: [(&str, u32, u32); 10] = [
    ("a", 3, 0),
    ("b", 3, 0),
    ("c", 5, 0),
    ("u_b", 5, 1),
    ("u_c", 7, 1),
    ("v_b", 7, 2),
    ("w_b", 9, 3),
    ("v_c", 9, 2),
    ("w_c", 11, 3),
    ("z", 13, 4),
];

/// Number of generators of degree `2n + 1` in the model of the wedge:
/// weight-`n` part of the free Lie algebra on weights 1, 1, 2.
pub fn wedge_generator_count(n: u32) -> u64 {
    let mut p = vec![0i64, 2, 6];
    while p.len() <= n as usize {
        let k = p.len();
        p.push(2 * p[k - 1] + p[k - 2]);
    }
    let mobius = |mut m: u32| -> i64 {
        let mut r = 1;
        let mut f = 2;
        while f * f <= m {
            if m % f == 0 {
                m /= f;
                if m % f == 0 {
                    return 0;
                }
                r = -r;
            }
            f += 1;
        }
        if m > 1 {
            r = -r;
        }
        r
    };
    let s: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * p[(n / d) as usize])
        .sum();
    (s / n as i64) as u64
}

fn table(out: &mut Checks) {
    let m = fixtures::wedge_model(13);
    let f = &m.model;
    let mut wrong = Vec::new();
    for n in 1..=6 {
        let k = 2 * n + 1;
        let got = m.count_in_degree(k) as u64;
        let want = wedge_generator_count(n);
        if got != want {
            wrong.push(format!("degree {k}: {got} generators, expected {want}"));
        }
    }
    record(
        out,
        "generator counts",
        ensure(wrong.is_empty(), || wrong.join("; ")).map(|_| "2, 2, 4, 7, 16, 30 in degrees 3..13".into()),
    );
    let mut short = Vec::new();
    for &(_, k, l) in &TABLE_ENTRIES {
        let listed = TABLE_ENTRIES.iter().filter(|&&(_, k2, l2)| k2 == k && l2 <= l).count();
        if m.dim_u(k, l) < listed {
            short.push(format!("dim V_{k} ∩ U_{l} = {} < {listed}", m.dim_u(k, l)));
        }
    }
    record(
        out,
        "filtration dimensions",
        ensure(short.is_empty(), || short.join("; ")).map(|_| "every listed generator fits".into()),
    );
    record(out, "u_c v_b term", uc_vb_term(f));
    let t = fixtures::wedge_table();
    let bad: Vec<&str> = t
        .generators()
        .iter()
        .enumerate()
        .filter(|(i, _)| !t.d(t.diff_of(*i as u32)).is_zero())
        .map(|(_, g)| g.name.as_str())
        .collect();
    record(
        out,
        "literal table d²",
        ensure(bad.is_empty(), || format!("d² ≠ 0 on {}", bad.join(", ")))
            .map(|_| "d² = 0 on all 10 generators".into()),
    );
    let tf = filtration_of(&t);
    let mism: Vec<String> = TABLE_ENTRIES
        .iter()
        .filter(|(n, _, l)| tf.depth(n) != Some(*l))
        .map(|(n, _, l)| format!("{n}: {:?} ≠ {l}", tf.depth(n)))
        .collect();
    record(
        out,
        "literal table depths",
        ensure(mism.is_empty(), || mism.join("; ")).map(|_| "as listed".into()),
    );
}

/// Finds `u_c`, `v_b` in `V_7` by linear solves and a degree-13 generator
/// whose differential contains `u_c·v_b` in a basis of `V_7` starting with them.
pub fn uc_vb_term(f: &FreeCdga) -> std::result::Result<String, String> {
    let g = |n: &str| f.gen(n).map_err(err_str);
    let (a, b, c) = (g("a")?, g("b")?, g("c")?);
    let u_b = fixtures::element_with_differential(f, 5, &f.product(&a, &b)).ok_or("no u_b with du_b = ab")?;
    let u_c = fixtures::element_with_differential(f, 7, &f.product(&a, &c)).ok_or("no u_c with du_c = ac")?;
    let v_b = fixtures::element_with_differential(f, 7, &f.product(&a, &u_b)).ok_or("no v_b with dv_b = a u_b")?;
    for i in fixtures::generators_of_degree(f, 13) {
        let (dz, slots) = fixtures::rewrite_in_basis(f, 7, &[u_c.clone(), v_b.clone()], f.diff_of(i))
            .ok_or("u_c and v_b are dependent")?;
        let m = Monomial::from_factors(vec![(slots[0], 1), (slots[1], 1)]);
        let coef = dz.coefficient(&m);
        if !coef.is_zero() {
            return Ok(format!(
                "d{} has u_c v_b coefficient {}",
                f.generators()[i as usize].name,
                crate::algebra::format_rational(&coef)
            ));
        }
    }
    Err("no degree-13 differential contains u_c v_b".into())
}

fn whitehead(out: &mut Checks) {
    let t = fixtures::wedge_table();
    let pair = |v: &str, e: &str| -> std::result::Result<Q, String> {
        whitehead_pair(&t, v, &BracketExpr::parse(e).map_err(err_str)?).map_err(err_str)
    };
    for (v, e) in [("u_b", "[a,b]"), ("v_b", "[a,[a,b]]")] {
        record(
            out,
            format!("<{v},{e}>"),
            pair(v, e).and_then(|x| ensure(x.abs() == Q::one(), || format!("value {x}")).map(|_| format!("{x}"))),
        );
    }
    let expr = match BracketExpr::parse("[[a,c],[a,[a,b]]]") {
        Ok(e) => e,
        Err(e) => return record(out, "scaling", Err(e.to_string())),
    };
    let base = match whitehead_pair(&t, "z", &expr) {
        Ok(v) if !v.is_zero() => v,
        Ok(_) => return record(out, "scaling", Err("<z, g_1> = 0".into())),
        Err(e) => return record(out, "scaling", Err(e.to_string())),
    };
    let mut bad = Vec::new();
    for n in 1..=5i64 {
        let scaled = expr.scaled_by_degree(&t, n).and_then(|e| whitehead_pair(&t, "z", &e));
        match scaled {
            Ok(v) if v == &base * q(n.pow(17)) => {}
            Ok(v) => bad.push(format!("N = {n}: {v}")),
            Err(e) => bad.push(e.to_string()),
        }
    }
    record(
        out,
        "scaling",
        ensure(bad.is_empty(), || bad.join("; ")).map(|_| format!("<z, g_N> = {base} N^17 for N = 1..5")),
    );
}

fn signatures(out: &mut Checks) {
    for (n, want) in [(2u32, 3usize), (4, 35), (8, 6435)] {
        record(
            out,
            format!("signature n={n}"),
            wedge_pairing_signature(n).map_err(err_str).and_then(|s| {
                let dense_ok = s
                    .dense_check
                    .is_none_or(|(p, m, z)| (p, m, z) == (s.positive, s.negative, 0));
                ensure((s.positive, s.negative) == (want, want) && dense_ok, || {
                    format!("({}, {}), dense {:?}", s.positive, s.negative, s.dense_check)
                })
                .map(|_| format!("({want}, {want})"))
            }),
        );
    }
    let sigma = || -> std::result::Result<String, String> {
        let yes = decide_sigma(2, 3).map_err(err_str)?;
        ensure(yes.embeddable && yes.check.as_ref().is_some_and(|c| c.passed), || {
            format!("r = 3: {:?}", yes.check)
        })?;
        let no = decide_sigma(2, 4).map_err(err_str)?;
        ensure(
            !no.embeddable && matches!(no.certificate, Certificate::Inertia { positive: 3, .. }),
            || format!("r = 4: {:?}", no.certificate),
        )?;
        Ok("witness at 3, inertia refutation at 4".into())
    };
    record(out, "sigma flip n=2", sigma());
    for n in 1..=3u32 {
        let half = (binomial(2 * n as u64, n as u64) / 2) as usize;
        let flip = || -> std::result::Result<String, String> {
            let yes = decide_omega(n, half).map_err(err_str)?;
            ensure(yes.embeddable && yes.check.as_ref().is_some_and(|c| c.passed), || {
                format!("r = {half}: {:?}", yes.check)
            })?;
            let no = decide_omega(n, half + 1).map_err(err_str)?;
            ensure(!no.embeddable, || format!("r = {} embeds", half + 1))?;
            Ok(format!("flips at r = {half}"))
        };
        record(out, format!("omega flip n={n}"), flip());
    }
    for n in 2..=6u32 {
        let want = usize::from(n == 2);
        record(
            out,
            format!("pi nullspace n={n}"),
            pi_system(n).map_err(err_str).and_then(|s| {
                ensure(s.pair_nullity == want, || format!("nullity {}", s.pair_nullity)).map(|_| format!("{want}"))
            }),
        );
    }
}

fn hopf(out: &mut Checks) {
    let cp2 = fixtures::cp2_ring();
    record(
        out,
        "CP2",
        hopf_invariant(&cp2.algebra, "x", None)
            .map_err(err_str)
            .and_then(|h| ensure(h == q(1), || format!("{h}")).map(|_| "1".into())),
    );
    let s = fixtures::s2xs2_ring();
    for g in ["a", "b"] {
        record(
            out,
            format!("S2xS2 {g}"),
            hopf_invariant(&s.algebra, g, None)
                .map_err(err_str)
                .and_then(|h| ensure(h.is_zero(), || format!("{h}")).map(|_| "0".into())),
        );
    }
    for k in 1..=3 {
        let r = fixtures::scaled_square_ring(k);
        record(
            out,
            format!("square scaling k={k}"),
            hopf_invariant(&r.algebra, "w", Some("b"))
                .map_err(err_str)
                .and_then(|h| ensure(h == q(k * k), || format!("{h}")).map(|_| format!("{}", k * k))),
        );
    }
}

fn massey(out: &mut Checks) {
    for (ring, cap) in fixtures::bigraded_fixtures() {
        let r = (|| -> std::result::Result<String, String> {
            let m = bigraded_model(&ring.algebra, cap).map_err(err_str)?;
            let a = Cdga::from(m.model.clone());
            let triples = all_triples(&a, cap).map_err(err_str)?;
            if let Some((degs, _)) = triples.iter().find(|(_, t)| !t.vanishes()) {
                return Err(format!("nonvanishing triple in degrees {degs:?}"));
            }
            Ok(format!("{} triples vanish through {cap}", triples.len()))
        })();
        record(out, format!("formal {}", ring.name), r);
    }
    let (cell, _) = fixtures::cell_fixture();
    let a = &cell.algebra;
    let r = (|| -> std::result::Result<String, String> {
        let x = a.gen("a").map_err(err_str)?;
        let y = a.gen("b").map_err(err_str)?;
        let t = massey_triple(a, &x, &x, &y).map_err(err_str)?;
        ensure(!t.class.is_zero() && t.indeterminacy.rank() == 0, || {
            format!("class {:?}, indeterminacy rank {}", t.class, t.indeterminacy.rank())
        })?;
        Ok(format!(
            "<a,a,b> = [{}] ≠ 0, indeterminacy 0",
            a.format(&t.representative)
        ))
    })();
    record(out, "cell <a,a,b>", r);
    let r = minimal_model(a, 8).map_err(err_str).and_then(|m| {
        let s = u0_surjectivity(&m, 8);
        let bad: Vec<u32> = s.iter().filter(|(_, ok)| !ok).map(|(k, _)| *k).collect();
        ensure(bad == [8], || format!("non-surjective degrees {bad:?}")).map(|_| "fails exactly in degree 8".into())
    });
    record(out, "cell u0 surjectivity", r);
}

/// Descriptors checked by the classification group, with expected verdicts.
pub const CLASSIFY_CASES: [(&str, Verdict); 16] = [
    ("S2", Verdict::Scalable),
    ("S5", Verdict::Scalable),
    ("CP2", Verdict::Scalable),
    ("CP3", Verdict::Scalable),
    ("csum(3*CP2)", Verdict::Scalable),
    ("csum(3*(S2xS2))", Verdict::Scalable),
    ("prod(S3, S5)", Verdict::Scalable),
    ("prod(CP2, S3)", Verdict::Scalable),
    ("wedge(S3, S3, S5)", Verdict::Scalable),
    ("wedge(csum(3*CP2), CP3)", Verdict::Scalable),
    ("csum(4*CP2)", Verdict::NotScalable),
    ("csum(2*CP3)", Verdict::NotScalable),
    ("csum(4*(S2xS2))", Verdict::NotScalable),
    ("csum(36*HP2)", Verdict::NotScalable),
    ("csum(1*(S2xS2), 1*CP2)", Verdict::Unknown),
    ("csum(3*CP2, 3*rev(CP2))", Verdict::Scalable),
];

fn classify(out: &mut Checks) {
    for (d, want) in CLASSIFY_CASES {
        let r = classify_str(d).map_err(err_str).and_then(|c| {
            ensure(c.verdict == want, || {
                format!("{} ({})", c.verdict, c.certificate.summary())
            })?;
            if let Some(check) = &c.check {
                ensure(check.passed, || format!("witness fails: {:?}", check.failure))?;
            }
            Ok(format!("{}: {}", c.verdict, c.certificate.summary()))
        });
        record(out, d, r);
    }
}

fn obstruction(out: &mut Checks) {
    for (name, p) in fixtures::obstruction_fixtures() {
        let r = (|| -> std::result::Result<String, String> {
            let o = obstruction_class(&p).map_err(err_str)?;
            let b = p.h.source();
            let c = p.h.target();
            for co in &o.cocycles {
                let db = b.d(&co.b_part);
                let rel = &p.h.map(&co.b_part) - &c.d(&co.c_part);
                ensure(db.is_zero() && c.is_zero(&rel), || {
                    format!("O({}) is not a relative cocycle", co.generator)
                })?;
            }
            let Some(prim) = &o.primitive else {
                return Ok(format!("obstructed, rank {}", o.rank));
            };
            let (f_ext, h_ext) = extend_with_witness(&p, prim).map_err(err_str)?;
            h_ext.check_chain_map().map_err(err_str)?;
            let hf = p.h.compose(&f_ext).map_err(err_str)?;
            h_ext.check_endpoints(&p.g, &hf).map_err(err_str)?;
            ensure(restricts_to(&h_ext, &p.homotopy), || {
                "extension does not restrict to H".into()
            })?;
            Ok("vanishes; extension passes chain-map and endpoint checks".into())
        })();
        record(out, name, r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_counts() {
        let c: Vec<u64> = (1..=6).map(wedge_generator_count).collect();
        assert_eq!(c, vec![2, 2, 4, 7, 16, 30]);
    }

    #[test]
    fn unknown_group_rejected() {
        let opts = Options {
            only: vec!["nope".into()],
            ..Options::default()
        };
        assert!(run(&opts).is_err());
    }

    #[test]
    fn injected_fault_is_named() {
        let opts = Options {
            trials: 50,
            fault: Some(Fault::KoszulSign),
            ..Options::default()
        };
        let checks = run_group("algebra", &opts);
        let bad = checks.iter().find(|c| !c.passed).expect("fault noticed");
        assert!(bad.name.starts_with("koszul/"));
    }
}
