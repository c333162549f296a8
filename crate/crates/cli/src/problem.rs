//! The JSON problem description and its resolution into library objects.

use std::sync::Arc;

use eqmack::grp::{FiniteGroup, GroupSpec};
use eqmack::mackey::{MackeyFunctor, MackeyTableSpec, WeylModule, WeylModuleSpec};
use eqmack::sgset::{default_depth, Based, Builder, Representation, SimplicialSpec};
use eqmack::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<CoeffSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    pub task: Task,
}

/// A builtin expression such as `sphere:sign^S0`, or explicit simplicial data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceSpec {
    Builtin(String),
    Simplicial(SimplicialSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    Builtin(String),
    FixedPoint { subgroup: String, module: WeylModuleSpec },
    Table(MackeyTableSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSpec {
    pub p: usize,
    #[serde(default)]
    pub w: Vec<Representation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomologyTask {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<String>,
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoTableTask {
    pub rows: Vec<RowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiTask {
    #[serde(default)]
    pub v: Vec<Representation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaTask {
    pub w: Representation,
    pub n_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Task {
    Homology(HomologyTask),
    RoTable(RoTableTask),
    Pi(PiTask),
    OmegaCheck(OmegaTask),
    MackeyCheck,
    BarCheck,
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Homology(_) => "homology",
            Task::RoTable(_) => "ro-table",
            Task::Pi(_) => "pi",
            Task::OmegaCheck(_) => "omega-check",
            Task::MackeyCheck => "mackey-check",
            Task::BarCheck => "bar-check",
        }
    }
}

fn body<T: serde::de::DeserializeOwned>(task: &serde_json::Value) -> std::result::Result<(), String> {
    let mut fields = task.clone();
    if let Some(o) = fields.as_object_mut() {
        o.remove("kind");
    }
    serde_path_to_error::deserialize::<_, T>(fields)
        .map(|_| ())
        .map_err(|e| format!("invalid problem at 'task.{}': {}", e.path(), e.inner()))
}

/// Validates the task body on its own so errors name the offending field;
/// the tagged enum would only report `task`.
fn check_task(task: &serde_json::Value) -> std::result::Result<(), String> {
    match task.get("kind").and_then(|k| k.as_str()) {
        Some("homology") => body::<HomologyTask>(task),
        Some("ro-table") => body::<RoTableTask>(task),
        Some("pi") => body::<PiTask>(task),
        Some("omega-check") => body::<OmegaTask>(task),
        Some("mackey-check") | Some("bar-check") => Ok(()),
        Some(k) => Err(format!("invalid problem at 'task.kind': unknown task '{k}'")),
        None => Err("invalid problem at 'task.kind': missing task kind".to_string()),
    }
}

/// A resolved space; `reduced` is false when the input named an unbased
/// space, which is then handled as `X₊`.
pub struct Space {
    pub based: Based,
    pub reduced: bool,
}

impl ProblemSpec {
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        if let Some(task) = value.get("task") {
            check_task(task)?;
        }
        serde_path_to_error::deserialize(value).map_err(|e| format!("invalid problem at '{}': {}", e.path(), e.inner()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serializes")
    }

    pub fn depth(&self) -> usize {
        self.depth.unwrap_or_else(default_depth)
    }

    pub fn group(&self) -> Result<Arc<FiniteGroup>> {
        Ok(Arc::new(self.group.build()?))
    }

    pub fn space(&self, group: &Arc<FiniteGroup>) -> Result<Space> {
        let depth = self.depth();
        match &self.space {
            None => Err(Error::Config("this task needs a space".into())),
            Some(SpaceSpec::Builtin(s)) => builtin_space(s, group, depth),
            Some(SpaceSpec::Simplicial(spec)) => {
                let b = Builder::from_spec(group.clone(), spec)?;
                match spec.basepoint {
                    Some(v) => Ok(Space { based: b.build_based(depth, v)?, reduced: true }),
                    None => Ok(Space { based: b.build(depth)?.plus(), reduced: false }),
                }
            }
        }
    }

    pub fn coeff(&self, group: &Arc<FiniteGroup>) -> Result<MackeyFunctor> {
        match &self.coeff {
            None => Err(Error::Config("this task needs coefficients".into())),
            Some(CoeffSpec::Builtin(s)) => builtin_coeff(s, group),
            Some(CoeffSpec::FixedPoint { subgroup, module }) => {
                let class = group.find_class(subgroup)?;
                let w = group.class(class).weyl.clone();
                MackeyFunctor::fixed_point(group.clone(), class, WeylModule::from_spec(w, module)?)
            }
            Some(CoeffSpec::Table(t)) => MackeyFunctor::from_spec(group.clone(), t),
        }
    }
}

fn builtin_space(expr: &str, group: &Arc<FiniteGroup>, depth: usize) -> Result<Space> {
    let mut out: Option<Based> = None;
    let mut reduced = false;
    for factor in expr.split('^').map(str::trim) {
        let rep = match factor {
            "point" | "pt" => Representation::Trivial(0),
            "S0" => {
                reduced = true;
                Representation::Trivial(0)
            }
            _ => match factor.strip_prefix("sphere:") {
                Some(r) => {
                    reduced = true;
                    r.parse()?
                }
                None => {
                    return Err(Error::Config(format!(
                        "unknown space '{factor}' (point, S0, sphere:trivial:n, sphere:sign, sphere:rot:n:k, joined by ^)"
                    )))
                }
            },
        };
        let s = rep.sphere(group, depth)?;
        out = Some(match out {
            None => s,
            Some(x) => x.smash(&s),
        });
    }
    Ok(Space { based: out.expect("split yields a factor"), reduced })
}

/// Builtin coefficient names; `fixed-point:H:file` reads a module file.
pub fn builtin_coeff(name: &str, group: &Arc<FiniteGroup>) -> Result<MackeyFunctor> {
    match name {
        "burnside" => Ok(MackeyFunctor::burnside(group.clone())),
        "constant-Z" => Ok(MackeyFunctor::constant_z(group.clone())),
        _ => match name.strip_prefix("constant-Zmod:").map(str::parse::<u64>) {
            Some(Ok(n)) if n >= 2 => Ok(MackeyFunctor::constant_zmod(group.clone(), n)),
            _ => Err(Error::Config(format!(
                "unknown coefficients '{name}' (burnside, constant-Z, constant-Zmod:n, fixed-point:H:module-file)"
            ))),
        },
    }
}

/// Resolves a command-line coefficient name, inlining module files.
pub fn coeff_from_flag(name: &str) -> std::result::Result<CoeffSpec, String> {
    if let Some(rest) = name.strip_prefix("fixed-point:") {
        let Some((subgroup, path)) = rest.split_once(':') else {
            return Err(format!("expected fixed-point:H:module-file, got '{name}'"));
        };
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read module file '{path}': {e}"))?;
        let de = &mut serde_json::Deserializer::from_str(&text);
        let module: WeylModuleSpec = serde_path_to_error::deserialize(de)
            .map_err(|e| format!("invalid module file '{path}' at '{}': {}", e.path(), e.inner()))?;
        return Ok(CoeffSpec::FixedPoint { subgroup: subgroup.to_string(), module });
    }
    Ok(CoeffSpec::Builtin(name.to_string()))
}

/// `C2/e` or `e` to a class index.
pub fn parse_orbit(group: &FiniteGroup, orbit: &str) -> Result<usize> {
    let label = match orbit.split_once('/') {
        Some((g, h)) if g == group.name() || g == "G" => h,
        Some((g, _)) => return Err(Error::Config(format!("orbit '{orbit}' names group {g}, not {}", group.name()))),
        None => orbit,
    };
    group.find_class(label)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ProblemSpec {
        ProblemSpec {
            group: GroupSpec::Builtin("C2".into()),
            space: Some(SpaceSpec::Builtin("sphere:sign".into())),
            coeff: Some(CoeffSpec::Builtin("constant-Z".into())),
            depth: None,
            task: Task::Homology(HomologyTask { orbit: Some("C2/C2".into()), degrees: vec![0, 1] }),
        }
    }

    #[test]
    fn round_trip() {
        let p = sample();
        assert_eq!(ProblemSpec::parse(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn errors_carry_paths() {
        let err = ProblemSpec::parse(r#"{"group": "C2", "task": {"kind": "homology", "degrees": ["x"]}}"#).unwrap_err();
        assert!(err.contains("task.degrees"), "{err}");
    }

    #[test]
    fn point_is_unreduced() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        assert!(!builtin_space("point", &g, 2).unwrap().reduced);
        assert!(builtin_space("sphere:sign^S0", &g, 2).unwrap().reduced);
        assert!(builtin_space("torus", &g, 2).is_err());
    }
}
