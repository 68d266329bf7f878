//! Interval bookkeeping for category-type invariants.
//!
//! An [`EntityGraph`] holds spaces, pairs and maps — optionally backed by
//! simplicial data, optionally linked by relations such as "this map is the
//! composition of those two" — together with one interval fact per
//! (entity, invariant) pair.  Facts start at `[0, ∞)` and are narrowed by
//! user assertions, by exact cohomology computations, and by a table of
//! inequality rules applied to a fixpoint.  Every narrowing carries a
//! [`Certificate`] recording the rule and its premises, so a stored interval
//! can be re-derived from the leaves.

mod audit;
mod rules;

pub use audit::{replay, replay_all};
pub use rules::{Rule, CANONICAL_RULE_ORDER};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    cup_length, map_zcl, nil_image, nil_ker_g, zcl, NilOutcome, NilWitness, SearchBudget,
};
use crate::cohomology::{build_ring, induced_map, CohomologyRing, RingMap};
use crate::error::Error;
use crate::field::CoefficientField;
use crate::simplicial::{
    connected_components, validate_complex, validate_map, SimplicialComplex, SimplicialMap,
};

/// Smallest grade `n` for which `TC_n`/`wTC_n` slots exist.
pub const MIN_GRADE: u8 = 2;
/// Largest supported grade.
pub const MAX_GRADE: u8 = 9;

/// One invariant slot an interval fact can attach to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Slot {
    /// Category of a space or of an (absolute) map.
    Cat,
    /// Category of a pair `(X, A)`.
    CatPair,
    /// Relative category of a pair map.
    Relcat,
    Qscat,
    Srelcat,
    /// Weak category of a space; user-asserted only.
    Wcat,
    /// Higher topological complexity of grade `n`.
    Tc(u8),
    /// Weak higher topological complexity of grade `n`.
    Wtc(u8),
}

fn check_grade(n: u8) -> Result<(), Error> {
    if (MIN_GRADE..=MAX_GRADE).contains(&n) {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "grade {n} out of range ({MIN_GRADE}..={MAX_GRADE})"
        )))
    }
}

impl Slot {
    pub fn tc(n: u8) -> Result<Slot, Error> {
        check_grade(n)?;
        Ok(Slot::Tc(n))
    }

    pub fn wtc(n: u8) -> Result<Slot, Error> {
        check_grade(n)?;
        Ok(Slot::Wtc(n))
    }

    pub fn grade(&self) -> Option<u8> {
        match self {
            Slot::Tc(n) | Slot::Wtc(n) => Some(*n),
            _ => None,
        }
    }

    pub fn parse(text: &str) -> Result<Slot, Error> {
        match text {
            "cat" => Ok(Slot::Cat),
            "catPair" => Ok(Slot::CatPair),
            "relcat" => Ok(Slot::Relcat),
            "qscat" => Ok(Slot::Qscat),
            "srelcat" => Ok(Slot::Srelcat),
            "wcat" => Ok(Slot::Wcat),
            other => {
                let (constructor, rest): (fn(u8) -> Result<Slot, Error>, &str) =
                    if let Some(rest) = other.strip_prefix("wTC_") {
                        (Slot::wtc, rest)
                    } else if let Some(rest) = other.strip_prefix("TC_") {
                        (Slot::tc, rest)
                    } else {
                        return Err(Error::Argument(format!("unknown invariant slot '{other}'")));
                    };
                let n: u8 = rest
                    .parse()
                    .map_err(|_| Error::Argument(format!("bad grade in slot '{other}'")))?;
                constructor(n)
            }
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Cat => write!(f, "cat"),
            Slot::CatPair => write!(f, "catPair"),
            Slot::Relcat => write!(f, "relcat"),
            Slot::Qscat => write!(f, "qscat"),
            Slot::Srelcat => write!(f, "srelcat"),
            Slot::Wcat => write!(f, "wcat"),
            Slot::Tc(n) => write!(f, "TC_{n}"),
            Slot::Wtc(n) => write!(f, "wTC_{n}"),
        }
    }
}

impl From<Slot> for String {
    fn from(slot: Slot) -> String {
        slot.to_string()
    }
}

impl TryFrom<String> for Slot {
    type Error = Error;

    fn try_from(text: String) -> Result<Slot, Error> {
        Slot::parse(&text)
    }
}

/// An upper bound: a non-negative integer or ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UpperValue {
    Finite(u64),
    Infinite,
}

impl UpperValue {
    pub fn as_finite(self) -> Option<u64> {
        match self {
            UpperValue::Finite(v) => Some(v),
            UpperValue::Infinite => None,
        }
    }

    pub fn plus(self, k: u64) -> UpperValue {
        match self {
            UpperValue::Finite(v) => UpperValue::Finite(v.saturating_add(k)),
            UpperValue::Infinite => UpperValue::Infinite,
        }
    }

    pub fn times(self, k: u64) -> UpperValue {
        match self {
            UpperValue::Finite(v) => UpperValue::Finite(v.saturating_mul(k)),
            UpperValue::Infinite => UpperValue::Infinite,
        }
    }
}

impl fmt::Display for UpperValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperValue::Finite(v) => write!(f, "{v}"),
            UpperValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for UpperValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            UpperValue::Finite(v) => serializer.serialize_u64(*v),
            UpperValue::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for UpperValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(u64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Number(v) => Ok(UpperValue::Finite(v)),
            Repr::Text(t) if t == "inf" || t == "∞" => Ok(UpperValue::Infinite),
            Repr::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got \"{t}\""
            ))),
        }
    }
}

/// A closed interval of admissible values, `lo` finite and `hi` possibly ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: u64,
    pub hi: UpperValue,
}

impl Interval {
    pub fn unbounded() -> Interval {
        Interval { lo: 0, hi: UpperValue::Infinite }
    }

    pub fn exact(v: u64) -> Interval {
        Interval { lo: v, hi: UpperValue::Finite(v) }
    }

    pub fn at_least(v: u64) -> Interval {
        Interval { lo: v, hi: UpperValue::Infinite }
    }

    pub fn at_most(v: u64) -> Interval {
        Interval { lo: 0, hi: UpperValue::Finite(v) }
    }

    pub fn new(lo: u64, hi: UpperValue) -> Interval {
        Interval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.hi, UpperValue::Finite(h) if self.lo > h)
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.min(other.hi),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            UpperValue::Finite(h) => write!(f, "[{}, {}]", self.lo, h),
            UpperValue::Infinite => write!(f, "[{}, ∞)", self.lo),
        }
    }
}

/// Identifies the rule that produced a certificate node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleId {
    R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, R12, R13, R14, R15, R16,
    R17, R18, R19, R20, R21,
    #[serde(rename = "USER-FACT")]
    UserFact,
    /// An exact cohomology computation anchored to a stated inequality.
    #[serde(rename = "COHOMOLOGY")]
    Cohomology,
    /// A sound bound assembled here rather than quoted from a single stated
    /// inequality.
    #[serde(rename = "DERIVED-RULE")]
    DerivedRule,
    /// A classical fact outside the rule table proper.
    #[serde(rename = "CLASSICAL-RULE")]
    ClassicalRule,
    #[serde(rename = "HOMOTOPY")]
    Homotopy,
    /// Root node combining the lower and upper certificates of one fact.
    #[serde(rename = "COMBINE")]
    Combine,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::UserFact => write!(f, "USER-FACT"),
            RuleId::Cohomology => write!(f, "COHOMOLOGY"),
            RuleId::DerivedRule => write!(f, "DERIVED-RULE"),
            RuleId::ClassicalRule => write!(f, "CLASSICAL-RULE"),
            RuleId::Homotopy => write!(f, "HOMOTOPY"),
            RuleId::Combine => write!(f, "COMBINE"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// What a certificate claims about one (entity, slot).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BoundKind {
    #[serde(rename = "atLeast")]
    AtLeast { value: u64 },
    #[serde(rename = "atMost")]
    AtMost { value: UpperValue },
    #[serde(rename = "within")]
    Within { lo: u64, hi: UpperValue },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub entity: String,
    pub slot: Slot,
    #[serde(flatten)]
    pub bound: BoundKind,
}

/// Records which exact computation produced a cohomology leaf, so the
/// witness can be re-verified in the right ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyEvidence {
    /// `cup_length`, `nil_image`, `zcl`, `nil_ker_g` or `map_zcl`.
    pub operation: String,
    /// Coefficient field key as accepted by the field parser (`q`, `f2`, ...).
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grade: Option<u8>,
    /// Whether the search proved the reported index maximal.
    pub exhaustive: bool,
}

/// A replayable derivation node: the conclusion, the rule that produced it,
/// the premise certificates it consumed, and an optional cohomology witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub conclusion: Conclusion,
    pub rule: RuleId,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<NilWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<CohomologyEvidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    pub fn leaf(entity: &str, slot: Slot, bound: BoundKind, rule: RuleId) -> Certificate {
        Certificate {
            conclusion: Conclusion { entity: entity.to_string(), slot, bound },
            rule,
            premises: Vec::new(),
            witness: None,
            evidence: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Certificate {
        self.note = Some(note.into());
        self
    }

    pub fn with_premises(mut self, premises: Vec<Certificate>) -> Certificate {
        self.premises = premises;
        self
    }

    /// Pretty-prints the derivation tree, one node per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        for _ in 0..depth {
            out.push_str("  ");
        }
        let bound = match &self.conclusion.bound {
            BoundKind::AtLeast { value } => format!(">= {value}"),
            BoundKind::AtMost { value } => format!("<= {value}"),
            BoundKind::Within { lo, hi } => format!("in [{lo}, {hi}]"),
        };
        out.push_str(&format!(
            "{}({}) {bound}  [{}]",
            self.conclusion.slot, self.conclusion.entity, self.rule
        ));
        if let Some(note) = &self.note {
            out.push_str(&format!("  — {note}"));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("  — witness of length {}", w.length));
        }
        out.push('\n');
        for premise in &self.premises {
            premise.render_into(out, depth + 1);
        }
    }
}

/// The kinds of node an entity graph holds.  Simplicial references are
/// optional: purely symbolic entities support rule reasoning without data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntityKind {
    Space { complex: Option<String> },
    Pair { complex: Option<String>, subcomplex: Option<String> },
    /// `source`/`target` name other entities (two spaces or two pairs).
    Map { source: String, target: String, map: Option<String> },
}

/// Declared structural link from an entity to the entities it is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// This map is `outer ∘ inner`.
    Composition { outer: String, inner: String },
    /// This map (or space) is the product `left × right`.
    Product { left: String, right: String },
    /// This space is the `n`-fold power of `base`.
    Power { base: String, n: u8 },
    /// This pair map is the induced power-pair map of `map` at grade `n`
    /// (source and target must be pair entities).
    PairOfPowers { map: String, n: u8 },
    /// This space is (homotopy equivalent to) the complement `X − A` of the
    /// named pair.
    Complement { pair: String },
}

#[derive(Clone, Debug)]
pub struct Entity {
    pub name: String,
    pub kind: EntityKind,
    pub relation: Option<Relation>,
}

/// A declared homotopy between two parallel map entities; `relative` means
/// the homotopy is through pair maps, which additionally merges `srelcat`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub left: String,
    pub right: String,
    pub relative: bool,
}

/// An interval fact plus the certificates for its two endpoints (absent
/// while an endpoint still has its default value).
#[derive(Clone, Debug, Default)]
pub struct BoundFact {
    interval: Option<Interval>,
    pub lo_certificate: Option<Certificate>,
    pub hi_certificate: Option<Certificate>,
}

impl BoundFact {
    pub fn interval(&self) -> Interval {
        self.interval.unwrap_or_else(Interval::unbounded)
    }
}

/// The entity graph: entities, simplicial stores, declared homotopies, and
/// one optional fact per (entity, slot).
#[derive(Clone, Debug, Default)]
pub struct EntityGraph {
    entities: IndexMap<String, Entity>,
    complexes: BTreeMap<String, SimplicialComplex>,
    simplicial_maps: BTreeMap<String, SimplicialMap>,
    facts: BTreeMap<(String, Slot), BoundFact>,
    homotopies: Vec<Homotopy>,
}

impl EntityGraph {
    pub fn new() -> EntityGraph {
        EntityGraph::default()
    }

    pub fn add_complex(&mut self, complex: SimplicialComplex) -> Result<(), Error> {
        let report = validate_complex(&complex);
        if !report.is_valid() {
            return Err(Error::InvalidInput {
                name: complex.name().to_string(),
                report: report.to_string(),
            });
        }
        if self.complexes.contains_key(complex.name()) {
            return Err(Error::Argument(format!(
                "complex `{}` is already registered",
                complex.name()
            )));
        }
        self.complexes.insert(complex.name().to_string(), complex);
        Ok(())
    }

    pub fn add_simplicial_map(&mut self, map: SimplicialMap) -> Result<(), Error> {
        let source = self.complexes.get(&map.source).ok_or_else(|| {
            Error::Argument(format!("map `{}` names unregistered complex `{}`", map.name, map.source))
        })?;
        let target = self.complexes.get(&map.target).ok_or_else(|| {
            Error::Argument(format!("map `{}` names unregistered complex `{}`", map.name, map.target))
        })?;
        let report = validate_map(&map, source, target);
        if !report.is_valid() {
            return Err(Error::InvalidInput {
                name: map.name.clone(),
                report: report.to_string(),
            });
        }
        if self.simplicial_maps.contains_key(&map.name) {
            return Err(Error::Argument(format!("map `{}` is already registered", map.name)));
        }
        self.simplicial_maps.insert(map.name.clone(), map);
        Ok(())
    }

    fn insert_entity(&mut self, entity: Entity) -> Result<(), Error> {
        if self.entities.contains_key(&entity.name) {
            return Err(Error::Argument(format!("entity `{}` already exists", entity.name)));
        }
        self.entities.insert(entity.name.clone(), entity);
        Ok(())
    }

    pub fn add_space(&mut self, name: &str, complex: Option<&str>) -> Result<(), Error> {
        if let Some(c) = complex {
            if !self.complexes.contains_key(c) {
                return Err(Error::Argument(format!(
                    "space `{name}` references unregistered complex `{c}`"
                )));
            }
        }
        self.insert_entity(Entity {
            name: name.to_string(),
            kind: EntityKind::Space { complex: complex.map(str::to_string) },
            relation: None,
        })
    }

    pub fn add_pair(&mut self, name: &str, data: Option<(&str, &str)>) -> Result<(), Error> {
        if let Some((complex, subcomplex)) = data {
            let stored = self.complexes.get(complex).ok_or_else(|| {
                Error::Argument(format!("pair `{name}` references unregistered complex `{complex}`"))
            })?;
            stored.checked_subcomplex(subcomplex)?;
        }
        self.insert_entity(Entity {
            name: name.to_string(),
            kind: EntityKind::Pair {
                complex: data.map(|(c, _)| c.to_string()),
                subcomplex: data.map(|(_, s)| s.to_string()),
            },
            relation: None,
        })
    }

    pub fn add_map(
        &mut self,
        name: &str,
        source: &str,
        target: &str,
        map: Option<&str>,
    ) -> Result<(), Error> {
        let source_kind = self.require_entity(source)?.kind.clone();
        let target_kind = self.require_entity(target)?.kind.clone();
        let pairwise = match (&source_kind, &target_kind) {
            (EntityKind::Space { .. }, EntityKind::Space { .. }) => false,
            (EntityKind::Pair { .. }, EntityKind::Pair { .. }) => true,
            _ => {
                return Err(Error::Argument(format!(
                    "map `{name}` must go space→space or pair→pair"
                )))
            }
        };
        if let Some(m) = map {
            let stored = self
                .simplicial_maps
                .get(m)
                .ok_or_else(|| Error::Argument(format!("map `{name}` references unregistered map `{m}`")))?;
            if stored.source_pair.is_some() != pairwise {
                return Err(Error::Argument(format!(
                    "map `{name}`: simplicial map `{m}` and the endpoint entities disagree about being a pair map"
                )));
            }
            let check_space = |entity: &str, kind: &EntityKind, complex_name: &str| -> Result<(), Error> {
                match kind {
                    EntityKind::Space { complex: Some(c) } if c == complex_name => Ok(()),
                    EntityKind::Space { complex: None } => Err(Error::Argument(format!(
                        "map `{name}`: entity `{entity}` is symbolic but the map carries data"
                    ))),
                    EntityKind::Space { complex: Some(c) } => Err(Error::DomainMismatch(format!(
                        "map `{name}`: entity `{entity}` lives on `{c}` but the map expects `{complex_name}`"
                    ))),
                    _ => unreachable!("kind checked above"),
                }
            };
            let check_pair = |entity: &str,
                              kind: &EntityKind,
                              complex_name: &str,
                              sub: &Option<String>|
             -> Result<(), Error> {
                match kind {
                    EntityKind::Pair { complex: Some(c), subcomplex } => {
                        if c == complex_name && subcomplex == sub {
                            Ok(())
                        } else {
                            Err(Error::DomainMismatch(format!(
                                "map `{name}`: entity `{entity}` does not match the map's pair data"
                            )))
                        }
                    }
                    EntityKind::Pair { complex: None, .. } => Err(Error::Argument(format!(
                        "map `{name}`: entity `{entity}` is symbolic but the map carries data"
                    ))),
                    _ => unreachable!("kind checked above"),
                }
            };
            if pairwise {
                check_pair(source, &source_kind, &stored.source, &stored.source_pair)?;
                check_pair(target, &target_kind, &stored.target, &stored.target_pair)?;
            } else {
                check_space(source, &source_kind, &stored.source)?;
                check_space(target, &target_kind, &stored.target)?;
            }
        }
        self.insert_entity(Entity {
            name: name.to_string(),
            kind: EntityKind::Map {
                source: source.to_string(),
                target: target.to_string(),
                map: map.map(str::to_string),
            },
            relation: None,
        })
    }

    pub fn set_relation(&mut self, name: &str, relation: Relation) -> Result<(), Error> {
        let kind = self.require_entity(name)?.kind.clone();
        let expect_kind = |arg: &str, want_map: bool| -> Result<(), Error> {
            let e = self
                .entities
                .get(arg)
                .ok_or_else(|| Error::Argument(format!("relation on `{name}` references unknown entity `{arg}`")))?;
            let is_map = matches!(e.kind, EntityKind::Map { .. });
            if is_map != want_map {
                return Err(Error::Argument(format!(
                    "relation on `{name}`: entity `{arg}` has the wrong kind"
                )));
            }
            Ok(())
        };
        match &relation {
            Relation::Composition { outer, inner } => {
                if !matches!(kind, EntityKind::Map { .. }) {
                    return Err(Error::Argument(format!("composition relation needs `{name}` to be a map")));
                }
                expect_kind(outer, true)?;
                expect_kind(inner, true)?;
            }
            Relation::Product { left, right } => {
                let want_map = matches!(kind, EntityKind::Map { .. });
                if matches!(kind, EntityKind::Pair { .. }) {
                    return Err(Error::Argument(format!(
                        "product relation on `{name}`: declare it on a space or map entity"
                    )));
                }
                expect_kind(left, want_map)?;
                expect_kind(right, want_map)?;
            }
            Relation::Power { base, n } => {
                check_grade(*n)?;
                if !matches!(kind, EntityKind::Space { .. }) {
                    return Err(Error::Argument(format!("power relation needs `{name}` to be a space")));
                }
                expect_kind(base, false)?;
            }
            Relation::PairOfPowers { map, n } => {
                check_grade(*n)?;
                match &kind {
                    EntityKind::Map { source, target, .. } => {
                        let source_is_pair =
                            matches!(self.require_entity(source)?.kind, EntityKind::Pair { .. });
                        let target_is_pair =
                            matches!(self.require_entity(target)?.kind, EntityKind::Pair { .. });
                        if !source_is_pair || !target_is_pair {
                            return Err(Error::Argument(format!(
                                "pair-of-powers relation needs `{name}` to be a pair map"
                            )));
                        }
                    }
                    _ => {
                        return Err(Error::Argument(format!(
                            "pair-of-powers relation needs `{name}` to be a map"
                        )))
                    }
                }
                expect_kind(map, true)?;
                if let EntityKind::Map { source, target, .. } = &self.require_entity(map)?.kind {
                    let both_spaces = matches!(self.require_entity(source)?.kind, EntityKind::Space { .. })
                        && matches!(self.require_entity(target)?.kind, EntityKind::Space { .. });
                    if !both_spaces {
                        return Err(Error::Argument(format!(
                            "pair-of-powers relation on `{name}`: `{map}` must be an absolute map"
                        )));
                    }
                }
            }
            Relation::Complement { pair } => {
                if !matches!(kind, EntityKind::Space { .. }) {
                    return Err(Error::Argument(format!("complement relation needs `{name}` to be a space")));
                }
                let e = self
                    .entities
                    .get(pair)
                    .ok_or_else(|| Error::Argument(format!("relation on `{name}` references unknown entity `{pair}`")))?;
                if !matches!(e.kind, EntityKind::Pair { .. }) {
                    return Err(Error::Argument(format!(
                        "complement relation on `{name}`: `{pair}` must be a pair"
                    )));
                }
            }
        }
        self.entities
            .get_mut(name)
            .expect("checked above")
            .relation = Some(relation);
        Ok(())
    }

    pub fn declare_homotopy(&mut self, left: &str, right: &str, relative: bool) -> Result<(), Error> {
        let l = self.require_entity(left)?.kind.clone();
        let r = self.require_entity(right)?.kind.clone();
        match (&l, &r) {
            (
                EntityKind::Map { source: ls, target: lt, .. },
                EntityKind::Map { source: rs, target: rt, .. },
            ) => {
                if ls != rs || lt != rt {
                    return Err(Error::Argument(format!(
                        "homotopy between `{left}` and `{right}` needs parallel maps"
                    )));
                }
            }
            _ => {
                return Err(Error::Argument(format!(
                    "homotopy between `{left}` and `{right}` needs two map entities"
                )))
            }
        }
        self.homotopies.push(Homotopy {
            left: left.to_string(),
            right: right.to_string(),
            relative,
        });
        Ok(())
    }

    pub fn entity(&self, name: &str) -> Option<&Entity> {
        self.entities.get(name)
    }

    fn require_entity(&self, name: &str) -> Result<&Entity, Error> {
        self.entities
            .get(name)
            .ok_or_else(|| Error::Argument(format!("unknown entity `{name}`")))
    }

    pub fn entities(&self) -> impl Iterator<Item = &Entity> {
        self.entities.values()
    }

    pub fn complex(&self, name: &str) -> Option<&SimplicialComplex> {
        self.complexes.get(name)
    }

    pub fn simplicial_map(&self, name: &str) -> Option<&SimplicialMap> {
        self.simplicial_maps.get(name)
    }

    pub fn homotopies(&self) -> &[Homotopy] {
        &self.homotopies
    }

    /// All recorded facts in deterministic order.
    pub fn facts(&self) -> impl Iterator<Item = (&str, Slot, &BoundFact)> {
        self.facts.iter().map(|((e, s), f)| (e.as_str(), *s, f))
    }

    /// Checks the slot attaches to this entity kind and applies the one
    /// normalisation: `relcat` of a pair is recorded as `catPair` (the
    /// relative category of the identity is the category of the pair).
    fn resolve_slot(&self, entity: &str, slot: Slot) -> Result<Slot, Error> {
        let e = self.require_entity(entity)?;
        let resolved = match (&e.kind, slot) {
            (EntityKind::Pair { .. }, Slot::Relcat) => Slot::CatPair,
            _ => slot,
        };
        let ok = match &e.kind {
            EntityKind::Space { .. } => {
                matches!(resolved, Slot::Cat | Slot::Wcat | Slot::Tc(_) | Slot::Wtc(_))
            }
            EntityKind::Pair { .. } => {
                matches!(resolved, Slot::CatPair | Slot::Qscat | Slot::Srelcat)
            }
            EntityKind::Map { source, .. } => {
                let pairwise = matches!(self.require_entity(source)?.kind, EntityKind::Pair { .. });
                if pairwise {
                    matches!(resolved, Slot::Relcat | Slot::Qscat | Slot::Srelcat)
                } else {
                    matches!(resolved, Slot::Cat | Slot::Tc(_) | Slot::Wtc(_))
                }
            }
        };
        if ok {
            Ok(resolved)
        } else {
            Err(Error::Argument(format!(
                "slot {slot} does not attach to entity `{entity}`"
            )))
        }
    }

    /// Current interval for a slot, `[0, ∞)` if nothing narrowed it yet.
    pub fn interval(&self, entity: &str, slot: Slot) -> Result<Interval, Error> {
        let slot = self.resolve_slot(entity, slot)?;
        Ok(self
            .facts
            .get(&(entity.to_string(), slot))
            .map(BoundFact::interval)
            .unwrap_or_else(Interval::unbounded))
    }

    /// Materialises a fact entry (at `[0, ∞)`) so reports and grade-indexed
    /// rules know the slot is of interest.
    pub fn ensure_fact(&mut self, entity: &str, slot: Slot) -> Result<(), Error> {
        let slot = self.resolve_slot(entity, slot)?;
        self.facts.entry((entity.to_string(), slot)).or_default();
        Ok(())
    }

    /// Intersects a user-asserted interval into a fact, recording USER-FACT
    /// certificates for the endpoints it narrows.
    pub fn assert_fact(
        &mut self,
        entity: &str,
        slot: Slot,
        interval: Interval,
        label: &str,
    ) -> Result<(), Error> {
        let slot = self.resolve_slot(entity, slot)?;
        if interval.is_empty() {
            let lo_cert = Certificate::leaf(
                entity,
                slot,
                BoundKind::AtLeast { value: interval.lo },
                RuleId::UserFact,
            )
            .with_note(label);
            let hi_cert = Certificate::leaf(
                entity,
                slot,
                BoundKind::AtMost { value: interval.hi },
                RuleId::UserFact,
            )
            .with_note(label);
            return Err(Error::Contradiction {
                entity: entity.to_string(),
                slot: slot.to_string(),
                lo: interval.lo,
                hi: interval.hi.as_finite().expect("empty interval has finite hi"),
                lower_certificate: Box::new(lo_cert),
                upper_certificate: Box::new(hi_cert),
            });
        }
        self.ensure_fact(entity, slot)?;
        if interval.lo > 0 {
            let cert = Certificate::leaf(
                entity,
                slot,
                BoundKind::AtLeast { value: interval.lo },
                RuleId::UserFact,
            )
            .with_note(label);
            self.narrow_lo(entity, slot, interval.lo, cert)?;
        }
        if let UpperValue::Finite(hi) = interval.hi {
            let cert = Certificate::leaf(
                entity,
                slot,
                BoundKind::AtMost { value: UpperValue::Finite(hi) },
                RuleId::UserFact,
            )
            .with_note(label);
            self.narrow_hi(entity, slot, hi, cert)?;
        }
        Ok(())
    }

    /// A finite upper bound together with its certificate, if one exists.
    pub(crate) fn finite_hi(&self, entity: &str, slot: Slot) -> Option<(u64, Certificate)> {
        let fact = self.facts.get(&(entity.to_string(), slot))?;
        let hi = fact.interval().hi.as_finite()?;
        let cert = fact
            .hi_certificate
            .clone()
            .expect("finite upper bounds carry certificates");
        Some((hi, cert))
    }

    /// A positive lower bound together with its certificate, if one exists.
    pub(crate) fn positive_lo(&self, entity: &str, slot: Slot) -> Option<(u64, Certificate)> {
        let fact = self.facts.get(&(entity.to_string(), slot))?;
        let lo = fact.interval().lo;
        if lo == 0 {
            return None;
        }
        let cert = fact
            .lo_certificate
            .clone()
            .expect("positive lower bounds carry certificates");
        Some((lo, cert))
    }

    /// Grades `n` for which this entity already has a `TC_n` (or `wTC_n`)
    /// fact entry.
    pub(crate) fn present_grades(&self, entity: &str, weak: bool) -> Vec<u8> {
        self.facts
            .keys()
            .filter(|(e, _)| e == entity)
            .filter_map(|(_, s)| match (s, weak) {
                (Slot::Tc(n), false) => Some(*n),
                (Slot::Wtc(n), true) => Some(*n),
                _ => None,
            })
            .collect()
    }

    pub(crate) fn narrow_lo(
        &mut self,
        entity: &str,
        slot: Slot,
        value: u64,
        certificate: Certificate,
    ) -> Result<bool, Error> {
        let fact = self.facts.entry((entity.to_string(), slot)).or_default();
        let current = fact.interval();
        if value <= current.lo {
            return Ok(false);
        }
        if let UpperValue::Finite(hi) = current.hi {
            if value > hi {
                let upper = fact
                    .hi_certificate
                    .clone()
                    .expect("finite upper bounds carry certificates");
                return Err(Error::Contradiction {
                    entity: entity.to_string(),
                    slot: slot.to_string(),
                    lo: value,
                    hi,
                    lower_certificate: Box::new(certificate),
                    upper_certificate: Box::new(upper),
                });
            }
        }
        fact.interval = Some(Interval::new(value, current.hi));
        fact.lo_certificate = Some(certificate);
        Ok(true)
    }

    pub(crate) fn narrow_hi(
        &mut self,
        entity: &str,
        slot: Slot,
        value: u64,
        certificate: Certificate,
    ) -> Result<bool, Error> {
        let fact = self.facts.entry((entity.to_string(), slot)).or_default();
        let current = fact.interval();
        if UpperValue::Finite(value) >= current.hi {
            return Ok(false);
        }
        if value < current.lo {
            let lower = fact
                .lo_certificate
                .clone()
                .expect("positive lower bounds carry certificates");
            return Err(Error::Contradiction {
                entity: entity.to_string(),
                slot: slot.to_string(),
                lo: current.lo,
                hi: value,
                lower_certificate: Box::new(lower),
                upper_certificate: Box::new(certificate),
            });
        }
        fact.interval = Some(Interval::new(current.lo, UpperValue::Finite(value)));
        fact.hi_certificate = Some(certificate);
        Ok(true)
    }

    /// The full derivation for one fact: a COMBINE root over the endpoint
    /// certificates.
    pub fn certificate_of(&self, entity: &str, slot: Slot) -> Result<Certificate, Error> {
        let slot = self.resolve_slot(entity, slot)?;
        let fact = self
            .facts
            .get(&(entity.to_string(), slot))
            .ok_or_else(|| Error::Argument(format!("no fact recorded for {slot}({entity})")))?;
        let interval = fact.interval();
        let mut premises = Vec::new();
        if let Some(c) = &fact.lo_certificate {
            premises.push(c.clone());
        }
        if let Some(c) = &fact.hi_certificate {
            premises.push(c.clone());
        }
        Ok(Certificate {
            conclusion: Conclusion {
                entity: entity.to_string(),
                slot,
                bound: BoundKind::Within { lo: interval.lo, hi: interval.hi },
            },
            rule: RuleId::Combine,
            premises,
            witness: None,
            evidence: None,
            note: None,
        })
    }

    fn ring(&self, complex: &str, subcomplex: Option<&str>, field: CoefficientField) -> Result<Arc<CohomologyRing>, Error> {
        let stored = self
            .complexes
            .get(complex)
            .ok_or_else(|| Error::Argument(format!("unregistered complex `{complex}`")))?;
        Ok(Arc::new(build_ring(stored, subcomplex, field)?))
    }

    /// Rebuilds the induced cohomology map of a registered simplicial map.
    pub(crate) fn induced_ring_map(&self, map_name: &str, field: CoefficientField) -> Result<RingMap, Error> {
        let smap = self
            .simplicial_maps
            .get(map_name)
            .ok_or_else(|| Error::Argument(format!("unregistered map `{map_name}`")))?;
        let source = self
            .complexes
            .get(&smap.source)
            .ok_or_else(|| Error::Argument(format!("unregistered complex `{}`", smap.source)))?;
        let target = self
            .complexes
            .get(&smap.target)
            .ok_or_else(|| Error::Argument(format!("unregistered complex `{}`", smap.target)))?;
        induced_map(smap, source, target, field)
    }

    /// The identity pair map of a pair entity with data, used to measure the
    /// pair itself.
    pub(crate) fn pair_identity(&self, complex: &str, subcomplex: &str) -> Result<SimplicialMap, Error> {
        let stored = self
            .complexes
            .get(complex)
            .ok_or_else(|| Error::Argument(format!("unregistered complex `{complex}`")))?;
        let indices: Vec<usize> = (0..stored.vertex_count()).collect();
        Ok(
            SimplicialMap::from_indices(&format!("id_{complex}"), stored, stored, &indices)
                .with_pairs(subcomplex, subcomplex),
        )
    }

    /// Runs the exact cohomology computations for every entity with
    /// simplicial data and installs the resulting lower bounds.
    pub fn attach_cohomology_bounds(
        &mut self,
        field: CoefficientField,
        grades: &[u8],
        budget: &SearchBudget,
    ) -> Result<(), Error> {
        field.validate()?;
        let mut grades: Vec<u8> = grades.to_vec();
        grades.sort_unstable();
        grades.dedup();
        for &n in &grades {
            check_grade(n)?;
        }
        let names: Vec<String> = self.entities.keys().cloned().collect();
        for name in names {
            let entity = self.entities.get(&name).expect("listed above").clone();
            match &entity.kind {
                EntityKind::Space { complex: Some(complex) } => {
                    let ring = self.ring(complex, None, field)?;
                    let outcome = cup_length(&ring, budget)?;
                    self.install_lower(
                        &name,
                        Slot::Cat,
                        &outcome,
                        RuleId::ClassicalRule,
                        evidence("cup_length", field, None, &outcome),
                        format!("cup length of the positive part of H^*({complex}; {field})"),
                    )?;
                    for &n in &grades {
                        let search = zcl(ring.clone(), n as usize, budget)?;
                        self.install_lower(
                            &name,
                            Slot::Wtc(n),
                            &search.outcome,
                            RuleId::Cohomology,
                            evidence("zcl", field, Some(n), &search.outcome),
                            format!("zero-divisor cup length of {complex} at grade {n} over {field}"),
                        )?;
                        self.install_lower(
                            &name,
                            Slot::Tc(n),
                            &search.outcome,
                            RuleId::ClassicalRule,
                            evidence("zcl", field, Some(n), &search.outcome),
                            format!("zero-divisor cup length of {complex} at grade {n} over {field}"),
                        )?;
                    }
                }
                EntityKind::Pair { complex: Some(complex), subcomplex: Some(subcomplex) } => {
                    let identity = self.pair_identity(complex, subcomplex)?;
                    let source = self.complexes.get(complex).expect("checked").clone();
                    let phi = induced_map(&identity, &source, &source, field)?;
                    let outcome = nil_image(&phi, budget)?;
                    self.install_lower(
                        &name,
                        Slot::Srelcat,
                        &outcome,
                        RuleId::Cohomology,
                        evidence("nil_image", field, None, &outcome),
                        format!("nilpotency of H^+({complex}, {subcomplex}; {field})"),
                    )?;
                }
                EntityKind::Map { map: Some(map_name), source, .. } => {
                    let phi = self.induced_ring_map(map_name, field)?;
                    let pairwise = matches!(self.require_entity(source)?.kind, EntityKind::Pair { .. });
                    if pairwise {
                        let outcome = nil_image(&phi, budget)?;
                        self.install_lower(
                            &name,
                            Slot::Srelcat,
                            &outcome,
                            RuleId::Cohomology,
                            evidence("nil_image", field, None, &outcome),
                            format!("nilpotency of the image of the pullback of {map_name} over {field}"),
                        )?;
                    } else {
                        let outcome = nil_image(&phi, budget)?;
                        self.install_lower(
                            &name,
                            Slot::Cat,
                            &outcome,
                            RuleId::ClassicalRule,
                            evidence("nil_image", field, None, &outcome),
                            format!("nilpotency of the image of the pullback of {map_name} over {field}"),
                        )?;
                        for &n in &grades {
                            let search = map_zcl(&phi, n as usize, budget)?;
                            self.install_lower(
                                &name,
                                Slot::Tc(n),
                                &search.outcome,
                                RuleId::DerivedRule,
                                evidence("map_zcl", field, Some(n), &search.outcome),
                                format!(
                                    "derived bound: {} pulled-back zero-divisors of the target with \
                                     surviving product force every sectioned cover of the source power \
                                     to use more sets (grade {n}, over {field})",
                                    search.outcome.index
                                ),
                            )?;
                            let search = nil_ker_g(&phi, n as usize, budget)?;
                            self.install_lower(
                                &name,
                                Slot::Wtc(n),
                                &search.outcome,
                                RuleId::Cohomology,
                                evidence("nil_ker_g", field, Some(n), &search.outcome),
                                format!("nilpotency of ker(g_{n}^*) for {map_name} over {field}"),
                            )?;
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn install_lower(
        &mut self,
        entity: &str,
        slot: Slot,
        outcome: &NilOutcome,
        rule: RuleId,
        evidence: CohomologyEvidence,
        note: String,
    ) -> Result<(), Error> {
        if outcome.index == 0 {
            return Ok(());
        }
        let certificate = Certificate {
            conclusion: Conclusion {
                entity: entity.to_string(),
                slot,
                bound: BoundKind::AtLeast { value: outcome.index as u64 },
            },
            rule,
            premises: Vec::new(),
            witness: outcome.witness.clone(),
            evidence: Some(evidence),
            note: Some(note),
        };
        self.narrow_lo(entity, slot, outcome.index as u64, certificate)?;
        Ok(())
    }

    /// Applies the full rule table until no interval narrows.  The fixpoint
    /// is unique: every rule is a monotone narrowing.
    pub fn propagate(&mut self) -> Result<(), Error> {
        self.propagate_with_order(&CANONICAL_RULE_ORDER)
    }

    /// Like [`EntityGraph::propagate`] with an explicit rule order (the
    /// fixpoint must not depend on it).
    pub fn propagate_with_order(&mut self, order: &[Rule]) -> Result<(), Error> {
        loop {
            let mut changed = false;
            for &rule in order {
                changed |= self.apply_rule(rule)?;
            }
            if !changed {
                return Ok(());
            }
        }
    }
}

/// Field key accepted by [`CoefficientField::parse`].
pub(crate) fn field_key(field: CoefficientField) -> String {
    match field {
        CoefficientField::Rationals => "q".to_string(),
        CoefficientField::Prime(p) => format!("f{p}"),
    }
}

fn evidence(
    operation: &str,
    field: CoefficientField,
    grade: Option<u8>,
    outcome: &NilOutcome,
) -> CohomologyEvidence {
    CohomologyEvidence {
        operation: operation.to_string(),
        field: field_key(field),
        grade,
        exhaustive: outcome.exhaustive,
    }
}

/// True when the space entity's complex is connected; used by the dimension
/// rule.
pub(crate) fn connected_space(graph: &EntityGraph, complex: &str) -> bool {
    graph
        .complex(complex)
        .map(|c| connected_components(c) == 1)
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    #[test]
    fn slot_strings_round_trip() {
        let slots = [
            Slot::Cat,
            Slot::CatPair,
            Slot::Relcat,
            Slot::Qscat,
            Slot::Srelcat,
            Slot::Wcat,
            Slot::Tc(2),
            Slot::Wtc(9),
        ];
        for slot in slots {
            assert_eq!(Slot::parse(&slot.to_string()).unwrap(), slot);
        }
        assert!(Slot::parse("TC_1").is_err(), "grade below 2");
        assert!(Slot::parse("TC_10").is_err(), "grade above 9");
        assert!(Slot::parse("cat(X)").is_err());
    }

    #[test]
    fn upper_value_serde() {
        assert_eq!(serde_json::to_string(&UpperValue::Finite(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&UpperValue::Infinite).unwrap(), "\"inf\"");
        let v: UpperValue = serde_json::from_str("7").unwrap();
        assert_eq!(v, UpperValue::Finite(7));
        let v: UpperValue = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(v, UpperValue::Infinite);
    }

    #[test]
    fn interval_operations() {
        let a = Interval::at_most(4);
        let b = Interval::at_least(2);
        let c = a.intersect(&b);
        assert_eq!(c, Interval::new(2, UpperValue::Finite(4)));
        assert!(!c.is_empty());
        assert!(Interval::new(3, UpperValue::Finite(2)).is_empty());
        assert_eq!(Interval::unbounded().to_string(), "[0, ∞)");
        assert_eq!(Interval::exact(1).to_string(), "[1, 1]");
    }

    #[test]
    fn facts_intersect_and_contradict() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.assert_fact("X", Slot::Cat, Interval::at_most(5), "first").unwrap();
        g.assert_fact("X", Slot::Cat, Interval::at_least(2), "second").unwrap();
        assert_eq!(g.interval("X", Slot::Cat).unwrap(), Interval::new(2, UpperValue::Finite(5)));
        // Tightening is fine; loosening is ignored.
        g.assert_fact("X", Slot::Cat, Interval::at_most(7), "loose").unwrap();
        assert_eq!(g.interval("X", Slot::Cat).unwrap(), Interval::new(2, UpperValue::Finite(5)));

        let err = g.assert_fact("X", Slot::Cat, Interval::at_least(6), "conflict");
        match err {
            Err(Error::Contradiction { entity, slot, lo, hi, lower_certificate, upper_certificate }) => {
                assert_eq!(entity, "X");
                assert_eq!(slot, "cat");
                assert_eq!((lo, hi), (6, 5));
                assert_eq!(lower_certificate.rule, RuleId::UserFact);
                assert_eq!(lower_certificate.note.as_deref(), Some("conflict"));
                assert_eq!(upper_certificate.note.as_deref(), Some("first"));
            }
            other => panic!("expected contradiction, got {other:?}"),
        }
    }

    #[test]
    fn empty_user_interval_is_a_contradiction() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        let err = g.assert_fact("X", Slot::Cat, Interval::new(3, UpperValue::Finite(2)), "bad");
        assert!(matches!(err, Err(Error::Contradiction { .. })));
    }

    #[test]
    fn slot_compatibility_is_enforced() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_pair("P", None).unwrap();
        g.add_map("f", "X", "X", None).unwrap();
        g.add_map("h", "P", "P", None).unwrap();

        assert!(g.assert_fact("X", Slot::Srelcat, Interval::exact(1), "no").is_err());
        assert!(g.assert_fact("P", Slot::Cat, Interval::exact(1), "no").is_err());
        assert!(g.assert_fact("f", Slot::Relcat, Interval::exact(1), "no").is_err(), "absolute map");
        assert!(g.assert_fact("h", Slot::Tc(2), Interval::exact(1), "no").is_err(), "pair map");
        assert!(g.assert_fact("f", Slot::Tc(2), Interval::exact(1), "yes").is_ok());
        assert!(g.assert_fact("h", Slot::Qscat, Interval::exact(1), "yes").is_ok());
    }

    #[test]
    fn relcat_on_a_pair_is_recorded_as_cat_pair() {
        let mut g = EntityGraph::new();
        g.add_pair("P", None).unwrap();
        g.assert_fact("P", Slot::Relcat, Interval::exact(2), "pair fact").unwrap();
        assert_eq!(g.interval("P", Slot::CatPair).unwrap(), Interval::exact(2));
        assert_eq!(g.interval("P", Slot::Relcat).unwrap(), Interval::exact(2));
    }

    #[test]
    fn map_entities_check_their_simplicial_data() {
        let mut g = EntityGraph::new();
        g.add_complex(fixtures::circle(6)).unwrap();
        g.add_complex(fixtures::circle(3)).unwrap();
        let hexagon = fixtures::circle(6);
        let triangle = fixtures::circle(3);
        g.add_simplicial_map(fixtures::degree_map(&hexagon, &triangle)).unwrap();

        g.add_space("H", Some("circle6")).unwrap();
        g.add_space("T", Some("circle3")).unwrap();
        g.add_space("S", None).unwrap();

        assert!(g.add_map("f", "H", "T", Some("wind2_circle6")).is_ok());
        assert!(g.add_map("g", "T", "H", Some("wind2_circle6")).is_err(), "wrong direction");
        assert!(g.add_map("h", "S", "T", Some("wind2_circle6")).is_err(), "symbolic source");
        assert!(g.add_map("k", "H", "T", Some("missing")).is_err());
    }

    #[test]
    fn relations_are_validated() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("Y", None).unwrap();
        g.add_space("XY", None).unwrap();
        g.add_space("X2", None).unwrap();
        g.add_pair("P", None).unwrap();
        g.add_map("f", "X", "Y", None).unwrap();
        g.add_map("g", "Y", "X", None).unwrap();
        g.add_map("gf", "X", "X", None).unwrap();
        g.add_map("fbar", "P", "P", None).unwrap();

        g.set_relation("gf", Relation::Composition { outer: "g".into(), inner: "f".into() }).unwrap();
        g.set_relation("XY", Relation::Product { left: "X".into(), right: "Y".into() }).unwrap();
        g.set_relation("X2", Relation::Power { base: "X".into(), n: 2 }).unwrap();
        g.set_relation("fbar", Relation::PairOfPowers { map: "f".into(), n: 2 }).unwrap();

        let mut g2 = g.clone();
        assert!(g2.set_relation("X", Relation::Composition { outer: "g".into(), inner: "f".into() }).is_err());
        assert!(g2.set_relation("X2", Relation::Power { base: "f".into(), n: 2 }).is_err());
        assert!(g2.set_relation("fbar", Relation::PairOfPowers { map: "fbar".into(), n: 2 }).is_err(), "needs absolute map");
        assert!(g2.set_relation("X2", Relation::Power { base: "X".into(), n: 1 }).is_err(), "grade too small");
        assert!(g2.set_relation("gf", Relation::Composition { outer: "nope".into(), inner: "f".into() }).is_err());
    }

    #[test]
    fn homotopies_need_parallel_maps() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("Y", None).unwrap();
        g.add_map("f", "X", "Y", None).unwrap();
        g.add_map("g", "X", "Y", None).unwrap();
        g.add_map("h", "Y", "X", None).unwrap();
        assert!(g.declare_homotopy("f", "g", false).is_ok());
        assert!(g.declare_homotopy("f", "h", false).is_err());
        assert!(g.declare_homotopy("f", "X", false).is_err());
    }

    #[test]
    fn attach_installs_cohomology_lower_bounds() {
        let mut g = EntityGraph::new();
        g.add_complex(fixtures::torus9()).unwrap();
        g.add_complex(fixtures::disk_pair()).unwrap();
        g.add_complex(fixtures::circle(6)).unwrap();
        g.add_complex(fixtures::circle(3)).unwrap();
        let hexagon = fixtures::circle(6);
        let triangle = fixtures::circle(3);
        g.add_simplicial_map(fixtures::degree_map(&hexagon, &triangle)).unwrap();

        g.add_space("T2", Some("torus9")).unwrap();
        g.add_pair("D", Some(("disk2", "boundary"))).unwrap();
        g.add_space("H", Some("circle6")).unwrap();
        g.add_space("S1", Some("circle3")).unwrap();
        g.add_map("f", "H", "S1", Some("wind2_circle6")).unwrap();

        g.attach_cohomology_bounds(q(), &[2], &SearchBudget::default()).unwrap();

        assert_eq!(g.interval("T2", Slot::Cat).unwrap().lo, 2, "torus cup length");
        assert_eq!(g.interval("T2", Slot::Wtc(2)).unwrap().lo, 2);
        assert_eq!(g.interval("T2", Slot::Tc(2)).unwrap().lo, 2);
        assert_eq!(g.interval("D", Slot::Srelcat).unwrap().lo, 1);
        assert_eq!(g.interval("f", Slot::Cat).unwrap().lo, 1);
        assert_eq!(g.interval("f", Slot::Tc(2)).unwrap().lo, 1, "pushed zero-divisor");
        assert_eq!(g.interval("f", Slot::Wtc(2)).unwrap().lo, 1);

        // Certificates carry witnesses and evidence.
        let cert = g.certificate_of("f", Slot::Tc(2)).unwrap();
        assert_eq!(cert.rule, RuleId::Combine);
        let lower = &cert.premises[0];
        assert_eq!(lower.rule, RuleId::DerivedRule);
        assert!(lower.witness.is_some());
        assert_eq!(lower.evidence.as_ref().unwrap().operation, "map_zcl");
    }

    #[test]
    fn certificate_serialization_round_trips() {
        let mut g = EntityGraph::new();
        g.add_complex(fixtures::torus9()).unwrap();
        g.add_space("T2", Some("torus9")).unwrap();
        g.attach_cohomology_bounds(q(), &[2], &SearchBudget::default()).unwrap();
        let cert = g.certificate_of("T2", Slot::Cat).unwrap();
        let json = serde_json::to_string_pretty(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(cert, back);
        assert!(json.contains("\"CLASSICAL-RULE\""));
    }

    #[test]
    fn certificate_of_unasserted_slot_is_an_error() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        assert!(matches!(g.certificate_of("X", Slot::Cat), Err(Error::Argument(_))));
    }
}
