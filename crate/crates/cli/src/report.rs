//! Report types shared by the text and JSON output paths.
//!
//! Serialization is deterministic: struct fields emit in declaration order
//! and all interior maps are ordered, so identical inputs produce
//! byte-identical JSON.

use serde::{Deserialize, Serialize};

use catbound::error::Error;
use catbound::propagation::{Certificate, EntityGraph, Interval, Slot, UpperValue};

use crate::scenario::ScenarioOutcome;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactReport {
    pub entity: String,
    pub slot: Slot,
    pub lo: u64,
    pub hi: UpperValue,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsReport {
    pub scenario: String,
    pub field: String,
    pub facts: Vec<FactReport>,
}

/// Collects the requested facts out of a propagated graph.
pub fn bounds_report(outcome: &ScenarioOutcome) -> Result<BoundsReport, Error> {
    let mut facts = Vec::new();
    for (entity, slot) in &outcome.requests {
        facts.push(fact_report(&outcome.graph, entity, *slot)?);
    }
    Ok(BoundsReport {
        scenario: outcome.name.clone(),
        field: outcome.field.to_string(),
        facts,
    })
}

pub fn fact_report(graph: &EntityGraph, entity: &str, slot: Slot) -> Result<FactReport, Error> {
    let interval = graph.interval(entity, slot)?;
    let certificate = graph.certificate_of(entity, slot)?;
    Ok(FactReport {
        entity: entity.to_string(),
        slot,
        lo: interval.lo,
        hi: interval.hi,
        certificate,
    })
}

/// Human-readable rendering: one interval line per requested fact, with the
/// certificate tree appended when asked for.
pub fn render_text(report: &BoundsReport, certificates: bool) -> String {
    let mut out = String::new();
    out.push_str(&format!("scenario: {}\n", report.scenario));
    out.push_str(&format!("field: {}\n", report.field));
    for fact in &report.facts {
        let interval = Interval::new(fact.lo, fact.hi);
        out.push_str(&format!("{}({}) ∈ {}\n", fact.slot, fact.entity, interval));
        if certificates {
            out.push_str(&fact.certificate.render());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use catbound::propagation::{EntityGraph, Interval};

    fn tiny_outcome() -> ScenarioOutcome {
        let mut graph = EntityGraph::new();
        graph.add_space("X", None).unwrap();
        graph
            .assert_fact("X", Slot::Cat, Interval::exact(2), "given")
            .unwrap();
        graph.propagate().unwrap();
        ScenarioOutcome {
            name: "tiny".to_string(),
            field: catbound::field::CoefficientField::Rationals,
            graph,
            requests: vec![("X".to_string(), Slot::Cat)],
        }
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = bounds_report(&tiny_outcome()).unwrap();
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: BoundsReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.facts.len(), 1);
        assert_eq!(back.facts[0].lo, 2);
        assert_eq!(back.facts[0].hi, UpperValue::Finite(2));
        let again = serde_json::to_string_pretty(&back).unwrap();
        assert_eq!(text, again);
    }

    #[test]
    fn text_rendering_shows_intervals() {
        let report = bounds_report(&tiny_outcome()).unwrap();
        let plain = render_text(&report, false);
        assert!(plain.contains("cat(X) ∈ [2, 2]"));
        assert!(!plain.contains("USER-FACT"));
        let with_certs = render_text(&report, true);
        assert!(with_certs.contains("USER-FACT"));
    }

    #[test]
    fn unbounded_hi_renders_as_infinity() {
        let mut graph = EntityGraph::new();
        graph.add_space("X", None).unwrap();
        graph
            .assert_fact("X", Slot::Cat, Interval::at_least(1), "given")
            .unwrap();
        graph.propagate().unwrap();
        let outcome = ScenarioOutcome {
            name: "open".to_string(),
            field: catbound::field::CoefficientField::Rationals,
            graph,
            requests: vec![("X".to_string(), Slot::Cat)],
        };
        let report = bounds_report(&outcome).unwrap();
        let plain = render_text(&report, false);
        assert!(plain.contains("cat(X) ∈ [1, ∞)"));
    }
}
