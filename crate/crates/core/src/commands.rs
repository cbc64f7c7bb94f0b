//! Report builders behind the command-line tool and the browser demo.

use serde_json::json;

use crate::algebra::{format_rational, Cdga, FreeCdga};
use crate::cohomology::{cohomology as cohomology_space, cohomology_ranks};
use crate::error::Result;
use crate::format::Presentation;
use crate::linalg::q;
use crate::minimal::{bigraded_model, distortion_of, minimal_model, Sharpness};
use crate::report::{Report, Status};
use crate::scalability::{classify_str, Verdict};
use crate::verify::Fault;
use crate::whitehead::{whitehead_pair, BracketExpr};

pub fn cohomology(p: &Presentation, degree: Option<u32>, cap: u32) -> Result<Report> {
    let a = p.algebra();
    let mut r = Report::new("cohomology");
    let degrees: Vec<u32> = match degree {
        Some(k) => vec![k],
        None => (0..=cap).collect(),
    };
    let mut rows = Vec::new();
    let mut data = Vec::new();
    for &k in &degrees {
        let h = cohomology_space(a, k, cap.max(k))?;
        let reps: Vec<String> = h.representatives().iter().map(|x| a.free().format(x)).collect();
        let shown = if reps.is_empty() {
            h.rank().to_string()
        } else {
            format!("{}  [{}]", h.rank(), reps.join("], ["))
        };
        rows.push((format!("H^{k}"), shown));
        data.push(json!({"degree": k, "rank": h.rank(), "representatives": reps}));
    }
    let title = match degree {
        Some(k) => format!("cohomology of {} in degree {k}", p.name()),
        None => format!("cohomology of {} through degree {cap}", p.name()),
    };
    r.section(&title).rows = rows;
    r.data = match degree {
        Some(_) => json!({"name": p.name(), "degrees": data}),
        None => json!({
            "name": p.name(),
            "cap": cap,
            "ranks": cohomology_ranks(a, cap),
            "degrees": data,
        }),
    };
    Ok(r)
}

pub fn model(p: &Presentation, cap: u32, bigraded: bool) -> Result<Report> {
    let m = if bigraded {
        bigraded_model(p.algebra(), cap)?
    } else {
        minimal_model(p.algebra(), cap)?
    };
    let kind = if bigraded { "bigraded" } else { "minimal" };
    let mut r = Report::new("model");
    let mut rows = Vec::new();
    let mut gens = Vec::new();
    for (i, g) in m.model.generators().iter().enumerate() {
        let d = m.model.format(m.model.diff_of(i as u32));
        let depth = m.depths[i];
        let mut value = String::new();
        if let Some(s) = g.stage {
            value.push_str(&format!("W{s}  "));
        }
        value.push_str(&format!("depth {depth}  d{} = {d}", g.name));
        rows.push((format!("{}({})", g.name, g.degree), value));
        gens.push(json!({
            "name": g.name,
            "degree": g.degree,
            "stage": g.stage,
            "depth": depth,
            "differential": d,
        }));
    }
    let counts: Vec<usize> = (0..=cap).map(|k| m.count_in_degree(k)).collect();
    r.section(&format!("{kind} model of {} through degree {cap}", p.name()))
        .rows = rows;
    r.section("generators per degree").row("counts", format!("{counts:?}"));
    if let Some(w) = &m.warning {
        r.warnings.push(w.clone());
    }
    r.data = json!({
        "name": p.name(),
        "kind": kind,
        "cap": cap,
        "generators": gens,
        "counts": counts,
    });
    Ok(r)
}

/// A free presentation with decomposable differential is used as is, with its own
/// generator names; anything else is replaced by its minimal model.
pub fn free_model(p: &Presentation, cap: u32) -> Result<FreeCdga> {
    let a: &Cdga = p.algebra();
    let f = a.free();
    if a.is_free() && f.differentials().iter().all(|d| f.is_decomposable(d)) {
        Ok(f.clone())
    } else {
        Ok(minimal_model(a, cap)?.model)
    }
}

pub fn distortion(p: &Presentation, class: &str, cap: u32) -> Result<Report> {
    let d = distortion_of(&free_model(p, cap)?, class)?;
    let mut r = Report::new("distortion");
    let sharp = match d.sharpness {
        Sharpness::SharpIfScalable => "sharp if the space is scalable",
        Sharpness::UpperBoundOnly => "upper bound only",
    };
    r.section(&format!("distortion of the class dual to {class} in {}", p.name()))
        .row("degree", d.degree.to_string())
        .row("depth", d.depth.to_string())
        .row("exponent", format!("L^{}", d.exponent))
        .row("sharpness", sharp);
    r.data = serde_json::to_value(&d).expect("serializable");
    Ok(r)
}

pub fn scalable(descriptor: &str) -> Result<Report> {
    let c = classify_str(descriptor)?;
    let mut r = Report::new("scalable");
    r.section(&c.descriptor)
        .row("verdict", c.verdict.to_string())
        .row("certificate", c.certificate.summary())
        .row("betti", format!("{:?}", c.betti));
    if let Some(w) = &c.witness {
        let s = r.section("witness");
        for (g, img) in w {
            s.row(g.clone(), img.clone());
        }
        if let Some(check) = &c.check {
            let status = if check.passed { "passed" } else { "FAILED" };
            s.row("check", format!("{status} ({})", check.method));
        }
    }
    if c.verdict == Verdict::NotScalable {
        r.status = Status::Refuted;
    }
    r.data = serde_json::to_value(&c).expect("serializable");
    Ok(r)
}

pub fn pair(p: &Presentation, class: &str, bracket: &str, scale: Option<i64>, cap: u32) -> Result<Report> {
    let model = free_model(p, cap)?;
    let expr = BracketExpr::parse(bracket)?;
    let value = whitehead_pair(&model, class, &expr)?;
    let mut r = Report::new("pair");
    let title = format!("pairing in {}", p.name());
    let s = r.section(&title);
    s.row(format!("<{class}, {expr}>"), format_rational(&value));
    let mut data = json!({
        "class": class,
        "bracket": expr.to_string(),
        "value": format_rational(&value),
    });
    if let Some(n) = scale {
        let scaled = expr.scaled_by_degree(&model, n)?;
        let sv = whitehead_pair(&model, class, &scaled)?;
        let exponent: u32 = expr
            .leaves()
            .iter()
            .map(|l| model.generator(l).map(|g| g.degree))
            .sum::<Result<u32>>()?;
        let s = r.sections.last_mut().expect("section");
        s.row(format!("<{class}, {scaled}>"), format_rational(&sv));
        let ratio = if value == q(0) {
            "undefined".to_string()
        } else {
            format_rational(&(&sv / &value))
        };
        s.row(
            "ratio",
            format!("{ratio} (N^{exponent} = {})", (n as i128).pow(exponent)),
        );
        data["scale"] = json!({
            "n": n,
            "bracket": scaled.to_string(),
            "value": format_rational(&sv),
            "ratio": ratio,
            "exponent": exponent,
        });
    }
    r.data = data;
    Ok(r)
}

pub fn verify(only: Vec<String>, seed: u64, fault: Option<Fault>) -> Result<Report> {
    let opts = crate::verify::Options {
        only,
        seed,
        fault,
        ..Default::default()
    };
    let battery = crate::verify::run(&opts)?;
    let mut r = Report::new("verify-paper");
    for g in &battery.groups {
        let limit = if g.within_limit { "within" } else { "OVER" };
        let s = r.section(&format!(
            "{} ({} ms, {limit} the {} ms limit)",
            g.group,
            g.elapsed.as_millis(),
            g.limit_ms
        ));
        for c in &g.checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            s.row(c.name.clone(), format!("{mark}  {}", c.detail));
        }
    }
    if !battery.passed() {
        r.status = Status::Refuted;
        for g in &battery.groups {
            for c in g.checks.iter().filter(|c| !c.passed) {
                r.warnings.push(format!("{}: {} failed: {}", g.group, c.name, c.detail));
            }
        }
    }
    r.data = serde_json::to_value(&battery).expect("serializable");
    Ok(r)
}
