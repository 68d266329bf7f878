//! Scenario files: a JSON description of complexes, maps, entities,
//! assertions and requests, executed into a propagated entity graph.
//!
//! All file references inside a scenario are resolved relative to the
//! scenario file's own directory, so bundles stay relocatable.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use catbound::bounds::{SearchBudget, SearchMode};
use catbound::error::Error;
use catbound::field::CoefficientField;
use catbound::propagation::{EntityGraph, Interval, Relation, Slot, UpperValue};
use catbound::simplicial::{ComplexFile, MapFile};

use crate::read_json;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: Option<String>,
    /// Complex files, relative to the scenario file.
    #[serde(default)]
    pub complexes: Vec<String>,
    /// Map files, relative to the scenario file.
    #[serde(default)]
    pub maps: Vec<String>,
    pub entities: Vec<EntitySpec>,
    #[serde(default)]
    pub assertions: Vec<AssertionSpec>,
    pub requests: Vec<RequestSpec>,
    #[serde(default)]
    pub homotopies: Vec<HomotopySpec>,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityKindSpec {
    Space,
    Pair,
    Map,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntitySpec {
    pub name: String,
    pub kind: EntityKindSpec,
    /// Simplicial data for spaces and pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcomplex: Option<String>,
    /// Endpoint entities for maps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    /// Registered simplicial map backing a map entity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<RelationSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase", deny_unknown_fields)]
pub enum RelationSpec {
    Composition { outer: String, inner: String },
    Product { left: String, right: String },
    Power { base: String, n: u8 },
    PairOfPowers { map: String, n: u8 },
    Complement { pair: String },
}

impl RelationSpec {
    fn into_relation(self) -> Relation {
        match self {
            RelationSpec::Composition { outer, inner } => Relation::Composition { outer, inner },
            RelationSpec::Product { left, right } => Relation::Product { left, right },
            RelationSpec::Power { base, n } => Relation::Power { base, n },
            RelationSpec::PairOfPowers { map, n } => Relation::PairOfPowers { map, n },
            RelationSpec::Complement { pair } => Relation::Complement { pair },
        }
    }
}

fn unbounded() -> UpperValue {
    UpperValue::Infinite
}

fn default_label() -> String {
    "user assertion".to_string()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssertionSpec {
    pub entity: String,
    pub slot: Slot,
    #[serde(default)]
    pub lo: u64,
    #[serde(default = "unbounded")]
    pub hi: UpperValue,
    #[serde(default = "default_label")]
    pub label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequestSpec {
    pub entity: String,
    pub slot: Slot,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopySpec {
    pub left: String,
    pub right: String,
    #[serde(default)]
    pub relative: bool,
}

fn default_field() -> String {
    "q".to_string()
}

fn default_grades() -> Vec<u8> {
    vec![2]
}

fn default_max_len() -> usize {
    SearchBudget::default().max_len
}

fn default_search() -> String {
    SearchBudget::default().mode.as_str().to_string()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default = "default_grades")]
    pub grades: Vec<u8>,
    #[serde(default = "default_max_len")]
    pub max_len: usize,
    #[serde(default = "default_search")]
    pub search: String,
}

impl Default for OptionsSpec {
    fn default() -> Self {
        OptionsSpec {
            field: default_field(),
            grades: default_grades(),
            max_len: default_max_len(),
            search: default_search(),
        }
    }
}

impl OptionsSpec {
    pub fn field_value(&self) -> Result<CoefficientField, Error> {
        CoefficientField::parse(&self.field)
    }

    pub fn budget(&self) -> Result<SearchBudget, Error> {
        Ok(SearchBudget {
            max_len: self.max_len,
            mode: SearchMode::parse(&self.search)?,
        })
    }
}

/// A scenario after execution: the propagated graph plus what to report.
pub struct ScenarioOutcome {
    pub name: String,
    pub field: CoefficientField,
    pub graph: EntityGraph,
    pub requests: Vec<(String, Slot)>,
}

pub fn load_scenario(path: &Path) -> Result<Scenario, Error> {
    read_json(path)
}

/// Loads every referenced file, builds the entity graph, attaches exact
/// cohomology bounds, applies the user assertions, and propagates to the
/// fixpoint.  A contradiction surfaces as [`Error::Contradiction`].
pub fn execute_scenario(path: &Path) -> Result<ScenarioOutcome, Error> {
    let scenario = load_scenario(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let name = scenario.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "scenario".to_string())
    });
    let field = scenario.options.field_value()?;
    let budget = scenario.options.budget()?;

    let mut graph = EntityGraph::new();
    for rel in &scenario.complexes {
        let file: ComplexFile = read_json(&resolve(base, rel))?;
        graph.add_complex(file.into_complex()?)?;
    }
    for rel in &scenario.maps {
        let file: MapFile = read_json(&resolve(base, rel))?;
        graph.add_simplicial_map(file.into_map())?;
    }

    for spec in &scenario.entities {
        match spec.kind {
            EntityKindSpec::Space => {
                graph.add_space(&spec.name, spec.complex.as_deref())?;
            }
            EntityKindSpec::Pair => {
                let data = match (&spec.complex, &spec.subcomplex) {
                    (Some(c), Some(s)) => Some((c.as_str(), s.as_str())),
                    (None, None) => None,
                    _ => {
                        return Err(Error::Argument(format!(
                            "pair `{}` must give both `complex` and `subcomplex` or neither",
                            spec.name
                        )))
                    }
                };
                graph.add_pair(&spec.name, data)?;
            }
            EntityKindSpec::Map => {
                let source = spec.source.as_deref().ok_or_else(|| {
                    Error::Argument(format!("map `{}` is missing `source`", spec.name))
                })?;
                let target = spec.target.as_deref().ok_or_else(|| {
                    Error::Argument(format!("map `{}` is missing `target`", spec.name))
                })?;
                graph.add_map(&spec.name, source, target, spec.map.as_deref())?;
            }
        }
    }
    // Relations in a second pass, so they may reference any entity.
    for spec in &scenario.entities {
        if let Some(relation) = &spec.relation {
            graph.set_relation(&spec.name, relation.clone().into_relation())?;
        }
    }
    for h in &scenario.homotopies {
        graph.declare_homotopy(&h.left, &h.right, h.relative)?;
    }

    graph.attach_cohomology_bounds(field, &scenario.options.grades, &budget)?;
    for a in &scenario.assertions {
        graph.assert_fact(&a.entity, a.slot, Interval::new(a.lo, a.hi), &a.label)?;
    }
    let mut requests = Vec::new();
    for r in &scenario.requests {
        graph.ensure_fact(&r.entity, r.slot)?;
        requests.push((r.entity.clone(), r.slot));
    }
    graph.propagate()?;

    Ok(ScenarioOutcome { name, field, graph, requests })
}

fn resolve(base: &Path, relative: &str) -> PathBuf {
    let p = Path::new(relative);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn options_default_and_parse() {
        let o = OptionsSpec::default();
        assert_eq!(o.field_value().unwrap(), CoefficientField::Rationals);
        let b = o.budget().unwrap();
        assert_eq!(b, SearchBudget::default());
        assert_eq!(o.grades, vec![2]);
    }

    #[test]
    fn scenario_json_parses_with_defaults() {
        let text = r#"{
            "entities": [
                {"name": "X", "kind": "space"},
                {"name": "Y", "kind": "space"},
                {"name": "f", "kind": "map", "source": "X", "target": "Y"}
            ],
            "assertions": [
                {"entity": "X", "slot": "cat", "lo": 1, "hi": 1},
                {"entity": "Y", "slot": "cat", "lo": 2}
            ],
            "requests": [{"entity": "f", "slot": "TC_2"}]
        }"#;
        let s: Scenario = serde_json::from_str(text).unwrap();
        assert_eq!(s.options.field, "q");
        assert_eq!(s.assertions[0].label, "user assertion");
        assert_eq!(s.assertions[0].hi, UpperValue::Finite(1));
        assert_eq!(s.assertions[1].hi, UpperValue::Infinite);
        assert_eq!(s.requests[0].slot, Slot::Tc(2));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{
            "entities": [],
            "requests": [],
            "typo_field": 3
        }"#;
        assert!(serde_json::from_str::<Scenario>(text).is_err());
    }

    #[test]
    fn infinite_upper_bounds_parse() {
        let text = r#"{"entity": "X", "slot": "cat", "lo": 2, "hi": "inf"}"#;
        let a: AssertionSpec = serde_json::from_str(text).unwrap();
        assert_eq!(a.hi, UpperValue::Infinite);
        assert_eq!(a.lo, 2);
    }
}
