//! Text, structured (JSON) and DOT renderings of a [`HasseReport`].

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::arith::divisor::ClosedPoint;
use crate::arith::rational::{fmt_q, ExtQ};
use crate::berkline::{DiscDesc, Orientation};
use crate::isotropy::{Certificate, IsotropyVerdict, LocalSolution, SolutionDisc, Witness};
use crate::models::FiberPoint;

use super::analyze::{abs_text, disc_text, ComponentStatus, Conclusion, DiscKind, HasseReport};
use super::parse::render_coeffs;

/// Version tag of the structured report.
pub const SCHEMA: &str = "berkhasse-report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" | "structured" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            _ => Err(format!(
                "unknown format '{}' (expected text, json or dot)",
                s
            )),
        }
    }
}

pub fn render(r: &HasseReport, f: Format) -> String {
    match f {
        Format::Text => render_text(r),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_json(r)).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Dot => render_dot(r),
    }
}

fn radius_claim(d: &SolutionDisc) -> String {
    match &d.conv {
        ExtQ::Fin(s) => {
            let cmp = match s.cmp(&num_traits::Zero::zero()) {
                std::cmp::Ordering::Less => "> 1",
                std::cmp::Ordering::Equal => "exactly 1",
                std::cmp::Ordering::Greater => "< 1",
            };
            let conv = d
                .convergence_disc
                .as_ref()
                .map(disc_text)
                .unwrap_or_default();
            format!(
                "converges for v({}) > {}, i.e. on {{{}}}; log-radius {}, radius {} ({})",
                d.witness.center.var_name(),
                fmt_q(s),
                conv,
                fmt_q(s),
                abs_text(d.witness.p, s),
                cmp
            )
        }
        _ => "constant witness, converges on the whole line".into(),
    }
}

/// Radius of a disc in its local coordinate, `T - c` or `1/T`.
pub fn disc_radius(d: &DiscDesc) -> String {
    let s = match d.orientation {
        Orientation::Inward => d.s.clone(),
        Orientation::Outward => -&d.s,
    };
    let cmp = match s.cmp(&num_traits::Zero::zero()) {
        std::cmp::Ordering::Less => "> 1",
        std::cmp::Ordering::Equal => "exactly 1",
        std::cmp::Ordering::Greater => "< 1",
    };
    format!("radius {} ({})", abs_text(d.p, &s), cmp)
}

fn indent(text: &str, n: usize) -> String {
    let pad = " ".repeat(n);
    text.lines().map(|l| format!("{}{}\n", pad, l)).collect()
}

pub fn render_text(r: &HasseReport) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "form q = {} over Q_{}(T)", r.form, r.p);
    for n in &r.notes {
        let _ = writeln!(o, "note: {}", n);
    }
    let z: Vec<String> = r.bad_locus.iter().map(|z| z.to_string()).collect();
    let _ = writeln!(o, "bad locus Z: {{{}}}", z.join(", "));
    let _ = writeln!(o, "solution discs:");
    for d in &r.discs {
        match &d.outcome {
            LocalSolution::Disc(s) => {
                let _ = writeln!(o, "  z = {}: series witness {}", d.z, s.witness);
                let _ = writeln!(o, "    {}", radius_claim(s));
                let _ = writeln!(
                    o,
                    "    solution disc D_z: {{{}}}, {}; V_z: {{{}}}",
                    disc_text(&s.disc),
                    disc_radius(&s.disc),
                    disc_text(&s.neighborhood)
                );
                let checks: Vec<_> = s.checks.iter().chain(&d.random_checks).collect();
                let ok = checks.iter().filter(|c| c.ok).count();
                let _ = writeln!(o, "    spot checks: {}/{} passed", ok, checks.len());
                for l in &s.ledger {
                    let _ = writeln!(o, "    {}", l);
                }
            }
            LocalSolution::Obstruction(c) => {
                let _ = writeln!(o, "  z = {}: anisotropic over the completion", d.z);
                o.push_str(&indent(&c.render(0), 4));
            }
            LocalSolution::Unknown(u) => {
                let _ = writeln!(o, "  z = {}: unknown ({})", d.z, u);
            }
        }
    }
    let _ = writeln!(o, "coverage: {}", r.coverage.note);
    if let Some(m) = &r.model {
        let pts: Vec<String> = m.fiber.vertices.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            o,
            "vertex set S ({}{}): {{{}}}",
            m.variant,
            if m.enriched { ", regularized" } else { "" },
            pts.join(", ")
        );
        let _ = writeln!(
            o,
            "  {} double points, {} junctions",
            m.fiber.edges.len(),
            m.fiber.junctions.len()
        );
    }
    let _ = writeln!(o, "site verdicts:");
    for s in &r.sites {
        let _ = writeln!(o, "  {}: {}", s.site, first_line(&s.verdict));
    }
    if !r.components.is_empty() {
        let _ = writeln!(o, "components:");
        for c in &r.components {
            let st = match &c.status {
                ComponentStatus::Covered { z } => {
                    format!("covered by the convergence disc at {}", z)
                }
                ComponentStatus::Descent(v) => format!("descent: {}", first_line(v)),
                ComponentStatus::Skipped(m) => format!("skipped: {}", m),
            };
            let _ = writeln!(o, "  {} [{}]: {}", c.description, c.region, st);
        }
    }
    match &r.conclusion {
        Conclusion::LocalEverywhere { global } => {
            let _ = writeln!(
                o,
                "conclusion: local everywhere (isotropic at every checked site)"
            );
            if let Some(g) = global {
                let _ = writeln!(o, "  {}", g);
            }
        }
        Conclusion::ObstructionAt(ob) => {
            let _ = writeln!(
                o,
                "conclusion: obstruction at {} ({} site)",
                ob.site,
                ob.kind.label()
            );
            o.push_str(&indent(&ob.certificate.render(0), 2));
            let _ = writeln!(o, "  (this refutes isotropy at this completion only)");
        }
        Conclusion::Inconclusive { reason } => {
            let _ = writeln!(o, "conclusion: inconclusive ({})", reason);
        }
    }
    if r.obstructions.len() > 1 {
        let others: Vec<String> = r.obstructions[1..]
            .iter()
            .map(|o| format!("{} ({})", o.site, o.kind.label()))
            .collect();
        let _ = writeln!(o, "further obstructions: {}", others.join(", "));
    }
    if let Some(g) = &r.global_search {
        match &g.witness {
            Some(x) => {
                let x: Vec<String> = x.iter().map(|c| c.to_expr()).collect();
                let _ = writeln!(
                    o,
                    "best-effort global search: zero ({}) over Q(T)",
                    x.join(", ")
                );
            }
            None => {
                let _ = writeln!(o, "best-effort global search: no zero among {}", g.searched);
            }
        }
    }
    o
}

fn first_line(v: &IsotropyVerdict) -> String {
    v.to_string().lines().next().unwrap_or_default().to_string()
}

fn verdict_json(v: &IsotropyVerdict) -> Value {
    match v {
        IsotropyVerdict::Isotropic { witness, via } => {
            json!({"verdict": "isotropic", "via": via, "witness": witness_json(witness)})
        }
        IsotropyVerdict::Anisotropic { certificate } => {
            json!({"verdict": "anisotropic", "certificate": certificate_json(certificate)})
        }
        IsotropyVerdict::Unknown { reason } => {
            json!({"verdict": "unknown", "reason": reason.to_string()})
        }
    }
}

fn witness_json(w: &Witness) -> Value {
    let kind = match w {
        Witness::Finite { .. } => "finite",
        Witness::PAdic { .. } => "p_adic",
        Witness::Function { .. } => "function",
        Witness::Rational { .. } => "rational",
        Witness::Lifted { .. } => "lifted",
        Witness::Series(_) => "series",
        Witness::Cited { .. } => "cited",
    };
    json!({"kind": kind, "value": w.to_string()})
}

/// Certificate chain as a tree with its finite-field leaves.
pub fn certificate_json(c: &Certificate) -> Value {
    let node = match c {
        Certificate::Empty => json!({"kind": "empty"}),
        Certificate::DimOne { form } => json!({"kind": "dim_one", "form": form.to_string()}),
        Certificate::NonSquare { form } => json!({"kind": "non_square", "form": form.to_string()}),
        Certificate::Springer {
            layer,
            uniformizer,
            place,
            parts,
            ..
        } => json!({
            "kind": "springer",
            "layer": layer,
            "uniformizer": uniformizer,
            "place": place.as_ref().map(|p| p.to_string()),
            "parts": parts.iter().map(|p| json!({
                "label": p.label,
                "form": p.form.as_ref().map(|f| f.to_string()),
                "certificate": certificate_json(&p.cert),
            })).collect::<Vec<_>>(),
        }),
        Certificate::Place { place, local } => {
            json!({"kind": "place", "place": place.to_string(), "local": certificate_json(local)})
        }
    };
    let mut node = node;
    node["leaves"] = json!(c.leaves());
    node
}

fn ext_json(x: &ExtQ) -> Value {
    match x.fin() {
        Some(q) => json!(fmt_q(q)),
        None => json!(x.to_string()),
    }
}

pub fn to_json(r: &HasseReport) -> Value {
    let discs: Vec<Value> = r
        .discs
        .iter()
        .map(|d| {
            let mut v = json!({"z": d.z.to_string()});
            match &d.outcome {
                LocalSolution::Disc(s) => {
                    v["status"] = json!("disc");
                    v["witness"] = json!(s.witness.to_string());
                    v["log_radius"] = ext_json(&s.conv);
                    v["convergence_disc"] = json!(s.convergence_disc.as_ref().map(disc_text));
                    v["disc"] = json!(disc_text(&s.disc));
                    v["neighborhood"] = json!(disc_text(&s.neighborhood));
                    v["checks"] = s
                        .checks
                        .iter()
                        .chain(&d.random_checks)
                        .map(|c| {
                            json!({
                                "u": fmt_q(&c.u),
                                "valuation": c.value,
                                "required": fmt_q(&c.required),
                                "ok": c.ok,
                            })
                        })
                        .collect();
                }
                LocalSolution::Obstruction(c) => {
                    v["status"] = json!("obstruction");
                    v["certificate"] = certificate_json(c);
                }
                LocalSolution::Unknown(u) => {
                    v["status"] = json!("unknown");
                    v["reason"] = json!(u.to_string());
                }
            }
            v
        })
        .collect();
    let model = r.model.as_ref().map(|m| {
        json!({
            "variant": m.variant.to_string(),
            "enriched": m.enriched,
            "vertices": m.fiber.vertices.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "edges": m.fiber.edges.iter().map(|e| json!({"a_end": e.a_end, "b_end": e.b_end, "length": e.length})).collect::<Vec<_>>(),
            "junctions": m.fiber.junctions.iter().map(|j| json!({"top": j.top.to_string(), "boundary": j.boundary})).collect::<Vec<_>>(),
        })
    });
    let conclusion = match &r.conclusion {
        Conclusion::LocalEverywhere { global } => {
            json!({"kind": "local_everywhere", "global": global})
        }
        Conclusion::ObstructionAt(o) => json!({
            "kind": "obstruction_at",
            "site": o.site,
            "site_kind": o.kind.label(),
            "certificate": certificate_json(&o.certificate),
        }),
        Conclusion::Inconclusive { reason } => json!({"kind": "inconclusive", "reason": reason}),
    };
    json!({
        "schema": SCHEMA,
        "prime": r.p,
        "form": render_coeffs(&r.form),
        "notes": r.notes,
        "bad_locus": r.bad_locus.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
        "discs": discs,
        "coverage": {
            "covered": r.coverage.covered,
            "note": r.coverage.note,
            "cover": r.coverage.cover.iter().map(|c| json!({
                "z": c.z.to_string(),
                "kind": match c.kind {
                    DiscKind::Convergence => "convergence",
                    DiscKind::Solution => "solution",
                },
                "disc": disc_text(&c.disc),
            })).collect::<Vec<_>>(),
        },
        "model": model,
        "sites": r.sites.iter().map(|s| json!({"site": s.site.to_string(), "result": verdict_json(&s.verdict)})).collect::<Vec<_>>(),
        "components": r.components.iter().map(|c| {
            let status = match &c.status {
                ComponentStatus::Covered { z } => json!({"kind": "covered", "z": z}),
                ComponentStatus::Descent(v) => json!({"kind": "descent", "result": verdict_json(v)}),
                ComponentStatus::Skipped(m) => json!({"kind": "skipped", "reason": m}),
            };
            json!({"point": c.description, "region": c.region, "status": status})
        }).collect::<Vec<_>>(),
        "obstructions": r.obstructions.iter().map(|o| json!({
            "site": o.site,
            "site_kind": o.kind.label(),
            "certificate": certificate_json(&o.certificate),
        })).collect::<Vec<_>>(),
        "conclusion": conclusion,
        "global_search": r.global_search.as_ref().map(|g| json!({
            "best_effort": true,
            "witness": g.witness.as_ref().map(|x| x.iter().map(|c| c.to_expr()).collect::<Vec<_>>()),
            "searched": g.searched,
        })),
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn z_label(r: &HasseReport, z: &ClosedPoint) -> String {
    match r.disc_at(z) {
        Some(d) => format!(
            "z = {}\\nV_z: {}",
            z,
            dot_escape(&disc_text(&d.neighborhood))
        ),
        None => format!("z = {}", z),
    }
}

/// Dual graph with the points of `Z` as boxes, dashed to the point of the fiber they specialize to.
pub fn render_dot(r: &HasseReport) -> String {
    let mut o = String::from("graph hasse {\n");
    if let Some(m) = &r.model {
        let f = &m.fiber;
        for (i, v) in f.vertices.iter().enumerate() {
            let _ = writeln!(o, "  v{} [label=\"{}\"];", i, dot_escape(&v.to_string()));
        }
        for (i, e) in f.edges.iter().enumerate() {
            let _ = writeln!(
                o,
                "  v{} -- v{} [label=\"P{} l={}\"];",
                e.b_end, e.a_end, i, e.length
            );
        }
        for (i, j) in f.junctions.iter().enumerate() {
            let _ = writeln!(o, "  j{} [shape=point, label=\"\"];", i);
            for b in &j.boundary {
                let _ = writeln!(o, "  j{} -- v{};", i, b);
            }
        }
        for (k, z) in r.bad_locus.iter().enumerate() {
            let _ = writeln!(o, "  z{} [shape=box, label=\"{}\"];", k, z_label(r, z));
            let target = match z {
                ClosedPoint::Rational(c) => Some(crate::berkline::BerkPoint::rigid(r.p, c.clone())),
                ClosedPoint::Infinity => Some(crate::berkline::BerkPoint::infinity(r.p)),
                ClosedPoint::Poly(_) => None,
            };
            let Some(x) = target else { continue };
            let ends: Vec<String> = match f.specialize(&x) {
                Ok(FiberPoint::Smooth { vertex, .. }) | Ok(FiberPoint::Generic(vertex)) => {
                    vec![format!("v{}", vertex)]
                }
                Ok(FiberPoint::Double(e)) => vec![
                    format!("v{}", f.edges[e].a_end),
                    format!("v{}", f.edges[e].b_end),
                ],
                Ok(FiberPoint::Junction(j)) => vec![format!("j{}", j)],
                Err(_) => vec![],
            };
            for e in ends {
                let _ = writeln!(o, "  z{} -- {} [style=dashed];", k, e);
            }
        }
    } else {
        for (k, z) in r.bad_locus.iter().enumerate() {
            let _ = writeln!(o, "  z{} [shape=box, label=\"{}\"];", k, z_label(r, z));
        }
    }
    o.push_str("}\n");
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::analyze::{analyze, Options};
    use crate::cli::parse::parse_form;

    fn report(text: &str, p: u64) -> HasseReport {
        analyze(&parse_form(text, p).unwrap().form, &Options::default()).unwrap()
    }

    #[test]
    fn example_text() {
        let t = render_text(&report("1, -(1+3*T), T, -(T+3)", 3));
        assert!(t.contains("local everywhere"), "{}", t);
        let block = |z: &str| {
            let start = t.find(&format!("  z = {}:", z)).unwrap();
            t[start..].lines().take(3).collect::<Vec<_>>().join("\n")
        };
        assert!(
            block("0").contains("log-radius -1, radius 3 (> 1)"),
            "{}",
            block("0")
        );
        assert!(
            block("inf").contains("solution disc D_z: {|T| > 1}, radius 1 (exactly 1)"),
            "{}",
            block("inf")
        );
        assert!(t.contains("the convergence disc {|T| < 3} at 0 and the solution disc {|T| > 1} at inf cover the whole line"));
    }

    #[test]
    fn json_is_deterministic() {
        let a = render(&report("1, -2, T, -2*T", 3), Format::Json);
        let b = render(&report("1, -2, T, -2*T", 3), Format::Json);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["conclusion"]["kind"], "obstruction_at");
        assert_eq!(v["conclusion"]["certificate"]["kind"], "springer");
    }

    #[test]
    fn dot_isolated() {
        let d = render_dot(&report("1, -1, T", 5));
        assert!(d.starts_with("graph hasse {"));
        assert!(!d.contains("--"), "{}", d);
        assert!(d.contains("shape=box"));
    }
}
