//! Runs a task and renders its report.

use std::sync::Arc;

use eqmack::coalesce::{epsilon, System};
use eqmack::homotopy::{homotopy_classes, normalized_chains, omega_spectrum_check, ro_graded_table};
use eqmack::tensor::reduced_tensor;
use eqmack::Result;
use serde_json::{json, Value};

use crate::problem::{parse_orbit, HomologyTask, OmegaTask, PiTask, ProblemSpec, RoTableTask, Task};

pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// False when a check reports FAIL.
    pub passed: bool,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run(spec: &ProblemSpec) -> Result<Outcome> {
    let group = spec.group()?;
    let command = spec.task.name();
    let mut out = match &spec.task {
        Task::Homology(HomologyTask { orbit, degrees }) => homology(spec, &group, orbit.as_deref(), degrees)?,
        Task::RoTable(RoTableTask { rows }) => {
            let space = spec.space(&group)?;
            let m = spec.coeff(&group)?;
            let rows: Vec<_> = rows.iter().map(|r| (r.p, r.w.clone())).collect();
            let table = ro_graded_table(&space.based, &m, &rows)?;
            let mut text = format!("p\tW\t{}\n", table.orbits.join("\t"));
            let mut json_rows = Vec::new();
            for r in &table.rows {
                let w: Vec<String> = r.w.iter().map(|x| x.to_string()).collect();
                let values: Vec<String> = r.values.iter().map(|v| v.to_string()).collect();
                let w_text = if w.is_empty() { "0".to_string() } else { w.join("+") };
                text.push_str(&format!("{}\t{}\t{}\n", r.p, w_text, values.join("\t")));
                json_rows.push(json!({"p": r.p, "w": w, "values": values}));
            }
            let consistent = table.suspension_consistent();
            text.push_str(&format!("suspension: {}", verdict(consistent)));
            Outcome {
                text,
                json: json!({"orbits": table.orbits, "rows": json_rows, "suspension": verdict(consistent)}),
                passed: consistent,
            }
        }
        Task::Pi(PiTask { v }) => {
            let space = spec.space(&group)?;
            let m = spec.coeff(&group)?;
            let value = homotopy_classes(v, &space.based, &m)?.canonical().to_string();
            let v_text = if v.is_empty() { "0".to_string() } else { v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("+") };
            Outcome {
                text: format!("pi_{v_text} = {value}"),
                json: json!({"v": v, "value": value}),
                passed: true,
            }
        }
        Task::OmegaCheck(OmegaTask { w, n_max }) => {
            let space = spec.space(&group)?;
            let m = spec.coeff(&group)?;
            let report = omega_spectrum_check(&space.based, &m, w, *n_max)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for r in &report.rows {
                text.push_str(&format!(
                    "{} n={}: level {} | loops {} | chain map {} | iso {}\n",
                    r.orbit,
                    r.degree,
                    r.level,
                    r.loops,
                    verdict(r.chain_map),
                    verdict(r.iso)
                ));
                rows.push(json!({
                    "orbit": r.orbit, "degree": r.degree, "level": r.level.to_string(),
                    "loops": r.loops.to_string(), "chain_map": r.chain_map, "iso": r.iso
                }));
            }
            let ok = report.passed();
            text.push_str(&format!("omega: {}", verdict(ok)));
            Outcome { text, json: json!({"w": report.representation, "rows": rows, "verdict": verdict(ok)}), passed: ok }
        }
        Task::MackeyCheck => {
            let m = spec.coeff(&group)?;
            let report = m.verify_axioms();
            let ok = report.passed();
            let mut text = format!("axioms: {}", verdict(ok));
            for w in &report.failures {
                text.push_str(&format!("\n  {w}"));
            }
            let failures: Vec<String> = report.failures.iter().map(|w| w.to_string()).collect();
            Outcome {
                text,
                json: json!({
                    "squares": report.squares, "compositions": report.compositions,
                    "failures": failures, "verdict": verdict(ok)
                }),
                passed: ok,
            }
        }
        Task::BarCheck => {
            let space = spec.space(&group)?;
            let system = System::phi(&space.based);
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut ok = true;
            for class in 0..group.class_count() {
                let r = epsilon(&system, class, spec.depth())?;
                ok &= r.passed();
                let h: Vec<String> =
                    r.homology.iter().enumerate().map(|(n, (a, b, _))| format!("H{n} {a} -> {b}")).collect();
                text.push_str(&format!(
                    "{}: contraction {} | retraction {} | simplicial {} | {}\n",
                    r.orbit,
                    verdict(r.contraction),
                    verdict(r.retraction),
                    verdict(r.simplicial),
                    h.join(", ")
                ));
                let hj: Vec<Value> = r
                    .homology
                    .iter()
                    .map(|(a, b, i)| json!({"bar": a.to_string(), "fixed": b.to_string(), "iso": i}))
                    .collect();
                rows.push(json!({
                    "orbit": r.orbit, "contraction": r.contraction, "retraction": r.retraction,
                    "simplicial": r.simplicial, "homology": hj
                }));
            }
            text.push_str(&format!("bar: {}", verdict(ok)));
            Outcome { text, json: json!({"depth": spec.depth(), "rows": rows, "verdict": verdict(ok)}), passed: ok }
        }
    };
    out.json = json!({"command": command, "group": group.name(), "result": out.json});
    Ok(out)
}

fn homology(spec: &ProblemSpec, group: &Arc<eqmack::grp::FiniteGroup>, orbit: Option<&str>, degrees: &[usize]) -> Result<Outcome> {
    let space = spec.space(group)?;
    let m = spec.coeff(group)?;
    let chains = normalized_chains(&reduced_tensor(&space.based, &m)?);
    let classes: Vec<usize> = match orbit {
        Some(o) => vec![parse_orbit(group, o)?],
        None => (0..group.class_count()).collect(),
    };
    let symbol = if space.reduced { "H~" } else { "H" };
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for &c in &classes {
        let name = format!("{}/{}", group.name(), group.class(c).label);
        let mut parts = Vec::new();
        let mut values = serde_json::Map::new();
        for &n in degrees {
            let h = chains.homology_at(c, n)?.group.canonical().to_string();
            parts.push(format!("{symbol}{n} = {h}"));
            values.insert(n.to_string(), Value::String(h));
        }
        lines.push(if orbit.is_some() { parts.join(", ") } else { format!("{name}: {}", parts.join(", ")) });
        rows.push(json!({"orbit": name, "values": values}));
    }
    Ok(Outcome {
        text: lines.join("\n"),
        json: json!({"reduced": space.reduced, "rows": rows}),
        passed: true,
    })
}
