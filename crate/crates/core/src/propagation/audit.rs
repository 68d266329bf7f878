//! Certificate replay: independently re-derives every node of a derivation
//! tree against the graph it came from.
//!
//! Rule nodes are checked structurally (the premises really license the
//! conclusion under the named rule, with the declared relations present in
//! the graph).  Cohomology leaves are checked semantically: the ambient ring
//! is rebuilt from the simplicial data, the witness product is recomputed,
//! and every factor is verified to belong to the subset the operation
//! searched (image, kernel, or pushed kernel).

use std::sync::Arc;

use crate::bounds::{replay_witness, WitnessFactor};
use crate::cohomology::{build_ring, induced_map, RingMap};
use crate::error::Error;
use crate::field::{CoefficientField, Scalar};
use crate::kunneth::{diagonal_pullback, g_pullback, map_power_pullback, power_ring};
use crate::matrix::Matrix;

use super::{
    BoundKind, Certificate, CohomologyEvidence, EntityGraph, EntityKind, Relation, RuleId, Slot,
    UpperValue, MIN_GRADE,
};

fn fail(message: impl Into<String>) -> Error {
    Error::Replay(message.into())
}

/// Re-derives `certificate` bottom-up against `graph`.  Returns an error
/// describing the first node that cannot be reproduced.
pub fn replay(graph: &EntityGraph, certificate: &Certificate) -> Result<(), Error> {
    for premise in &certificate.premises {
        replay(graph, premise)?;
    }
    check_node(graph, certificate)
}

fn upper_of(certificate: &Certificate) -> Result<u64, Error> {
    match certificate.conclusion.bound {
        BoundKind::AtMost { value: UpperValue::Finite(v) } => Ok(v),
        _ => Err(fail(format!(
            "{} node on {}({}) must conclude a finite upper bound",
            certificate.rule, certificate.conclusion.slot, certificate.conclusion.entity
        ))),
    }
}

fn lower_of(certificate: &Certificate) -> Result<u64, Error> {
    match certificate.conclusion.bound {
        BoundKind::AtLeast { value } => Ok(value),
        _ => Err(fail(format!(
            "{} node on {}({}) must conclude a lower bound",
            certificate.rule, certificate.conclusion.slot, certificate.conclusion.entity
        ))),
    }
}

fn one_premise(certificate: &Certificate) -> Result<&Certificate, Error> {
    match certificate.premises.as_slice() {
        [p] => Ok(p),
        other => Err(fail(format!(
            "{} node expects exactly one premise, found {}",
            certificate.rule,
            other.len()
        ))),
    }
}

fn two_premises(certificate: &Certificate) -> Result<(&Certificate, &Certificate), Error> {
    match certificate.premises.as_slice() {
        [a, b] => Ok((a, b)),
        other => Err(fail(format!(
            "{} node expects exactly two premises, found {}",
            certificate.rule,
            other.len()
        ))),
    }
}

fn relation_of<'a>(graph: &'a EntityGraph, name: &str) -> Result<&'a Relation, Error> {
    graph
        .entity(name)
        .and_then(|e| e.relation.as_ref())
        .ok_or_else(|| fail(format!("entity `{name}` carries no relation")))
}

/// One premise whose conclusion is an upper bound on `(entity, slot)` with
/// the same value as this node, where `entity` is drawn from `allowed`.
fn check_min_shape(
    certificate: &Certificate,
    premise_slot: Slot,
    allowed: &[&str],
) -> Result<(), Error> {
    let value = upper_of(certificate)?;
    let premise = one_premise(certificate)?;
    if premise.conclusion.slot != premise_slot {
        return Err(fail(format!(
            "{} premise must bound {premise_slot}, found {}",
            certificate.rule, premise.conclusion.slot
        )));
    }
    if !allowed.contains(&premise.conclusion.entity.as_str()) {
        return Err(fail(format!(
            "{} premise entity `{}` is not one of the admissible entities {:?}",
            certificate.rule, premise.conclusion.entity, allowed
        )));
    }
    if upper_of(premise)? != value {
        return Err(fail(format!(
            "{} conclusion must copy its premise's upper bound",
            certificate.rule
        )));
    }
    Ok(())
}

/// Two premises upper-bounding `(left, slot)` and `(right, slot)`, in either
/// order, whose values sum to this node's bound.
fn check_sum_shape(
    certificate: &Certificate,
    slot: Slot,
    left: &str,
    right: &str,
) -> Result<(), Error> {
    let value = upper_of(certificate)?;
    let (a, b) = two_premises(certificate)?;
    for p in [a, b] {
        if p.conclusion.slot != slot {
            return Err(fail(format!(
                "{} premise must bound {slot}, found {}",
                certificate.rule, p.conclusion.slot
            )));
        }
    }
    let names = (a.conclusion.entity.as_str(), b.conclusion.entity.as_str());
    if names != (left, right) && names != (right, left) {
        return Err(fail(format!(
            "{} premises must bound `{left}` and `{right}`, found {names:?}",
            certificate.rule
        )));
    }
    if upper_of(a)? + upper_of(b)? != value {
        return Err(fail(format!(
            "{} conclusion must be the sum of its premises",
            certificate.rule
        )));
    }
    Ok(())
}

/// Source and target of the map entity this certificate concludes about.
fn conclusion_ends(
    graph: &EntityGraph,
    certificate: &Certificate,
    pairwise: bool,
) -> Result<(String, String), Error> {
    let entity = &certificate.conclusion.entity;
    match graph.map_ends(entity) {
        Some((s, t, pw)) if pw == pairwise => Ok((s, t)),
        Some(_) => Err(fail(format!(
            "{} conclusion entity `{entity}` is the wrong kind of map",
            certificate.rule
        ))),
        None => Err(fail(format!(
            "{} conclusion entity `{entity}` is not a map",
            certificate.rule
        ))),
    }
}

fn composition_parts(
    graph: &EntityGraph,
    certificate: &Certificate,
) -> Result<(String, String), Error> {
    match relation_of(graph, &certificate.conclusion.entity)? {
        Relation::Composition { outer, inner } => Ok((outer.clone(), inner.clone())),
        _ => Err(fail(format!(
            "{} needs a composition relation on `{}`",
            certificate.rule, certificate.conclusion.entity
        ))),
    }
}

fn product_parts(
    graph: &EntityGraph,
    certificate: &Certificate,
) -> Result<(String, String), Error> {
    match relation_of(graph, &certificate.conclusion.entity)? {
        Relation::Product { left, right } => Ok((left.clone(), right.clone())),
        _ => Err(fail(format!(
            "{} needs a product relation on `{}`",
            certificate.rule, certificate.conclusion.entity
        ))),
    }
}

fn expect_slot(certificate: &Certificate, wanted: Slot) -> Result<(), Error> {
    if certificate.conclusion.slot == wanted {
        Ok(())
    } else {
        Err(fail(format!(
            "{} concludes about {}, expected {wanted}",
            certificate.rule, certificate.conclusion.slot
        )))
    }
}

fn check_node(graph: &EntityGraph, certificate: &Certificate) -> Result<(), Error> {
    let conclusion = &certificate.conclusion;
    match certificate.rule {
        RuleId::UserFact => {
            if certificate.premises.is_empty() {
                Ok(())
            } else {
                Err(fail("USER-FACT leaves take no premises"))
            }
        }
        RuleId::Combine => check_combine(certificate),
        RuleId::Cohomology | RuleId::DerivedRule | RuleId::ClassicalRule => {
            check_cohomology_leaf(graph, certificate)
        }
        RuleId::R1 | RuleId::R4 | RuleId::R8 => {
            let slot = match certificate.rule {
                RuleId::R1 => Slot::Relcat,
                RuleId::R4 => Slot::Qscat,
                _ => Slot::Srelcat,
            };
            expect_slot(certificate, slot)?;
            conclusion_ends(graph, certificate, true)?;
            let (outer, inner) = composition_parts(graph, certificate)?;
            check_min_shape(certificate, slot, &[&outer, &inner])
        }
        RuleId::R2 => {
            expect_slot(certificate, Slot::Relcat)?;
            let (s, t) = conclusion_ends(graph, certificate, true)?;
            check_min_shape(certificate, Slot::CatPair, &[&s, &t])
        }
        RuleId::R3 | RuleId::R6 | RuleId::R9 => {
            let slot = match certificate.rule {
                RuleId::R3 => Slot::Relcat,
                RuleId::R6 => Slot::Qscat,
                _ => Slot::Srelcat,
            };
            expect_slot(certificate, slot)?;
            conclusion_ends(graph, certificate, true)?;
            let (left, right) = product_parts(graph, certificate)?;
            check_sum_shape(certificate, slot, &left, &right)
        }
        RuleId::R5 => {
            expect_slot(certificate, Slot::CatPair)?;
            let value = upper_of(certificate)?;
            let premise = one_premise(certificate)?;
            expect_slot(premise, Slot::Cat)?;
            match relation_of(graph, &premise.conclusion.entity)? {
                Relation::Complement { pair } if *pair == conclusion.entity => {}
                _ => {
                    return Err(fail(format!(
                        "R5 premise `{}` is not a declared complement of `{}`",
                        premise.conclusion.entity, conclusion.entity
                    )))
                }
            }
            if upper_of(premise)? + 1 != value {
                return Err(fail("R5 conclusion must exceed its premise by exactly one"));
            }
            Ok(())
        }
        RuleId::R7 => {
            expect_slot(certificate, Slot::Srelcat)?;
            let (s, t) = conclusion_ends(graph, certificate, true)?;
            check_min_shape(certificate, Slot::Srelcat, &[&s, &t])
        }
        RuleId::R10 => {
            expect_slot(certificate, Slot::Qscat)?;
            check_min_shape(certificate, Slot::Srelcat, &[&conclusion.entity])
        }
        RuleId::R11 => check_power_pair_equality(graph, certificate),
        RuleId::R12 => {
            let n = match conclusion.slot {
                Slot::Tc(n) => n,
                other => return Err(fail(format!("R12 concludes about {other}, expected TC_n"))),
            };
            let premise = one_premise(certificate)?;
            if premise.conclusion.entity != conclusion.entity {
                return Err(fail("R12 premise must bound the same entity"));
            }
            match certificate.conclusion.bound {
                BoundKind::AtLeast { value } => {
                    if n == MIN_GRADE {
                        return Err(fail("R12 lower bounds cannot flow into the bottom grade"));
                    }
                    expect_slot(premise, Slot::Tc(n - 1))?;
                    if lower_of(premise)? != value {
                        return Err(fail("R12 must copy the lower bound from grade n to n+1"));
                    }
                    Ok(())
                }
                BoundKind::AtMost { value: UpperValue::Finite(value) } => {
                    expect_slot(premise, Slot::tc(n + 1).map_err(|_| {
                        fail("R12 upper bounds cannot flow from beyond the top grade")
                    })?)?;
                    if upper_of(premise)? != value {
                        return Err(fail("R12 must copy the upper bound from grade n+1 to n"));
                    }
                    Ok(())
                }
                _ => Err(fail("R12 node must conclude a finite bound")),
            }
        }
        RuleId::R13 => {
            let n = match conclusion.slot {
                Slot::Tc(n) => n,
                other => return Err(fail(format!("R13 concludes about {other}, expected TC_n"))),
            };
            let value = upper_of(certificate)?;
            let premise = one_premise(certificate)?;
            expect_slot(premise, Slot::Cat)?;
            if premise.conclusion.entity != conclusion.entity {
                return Err(fail("R13 premise must bound the same entity's category"));
            }
            if u64::from(n) * upper_of(premise)? != value {
                return Err(fail("R13 conclusion must be n times the category bound"));
            }
            Ok(())
        }
        RuleId::R14 => {
            let n = match conclusion.slot {
                Slot::Tc(n) => n,
                other => return Err(fail(format!("R14 concludes about {other}, expected TC_n"))),
            };
            let (s, t) = conclusion_ends(graph, certificate, false)?;
            check_min_shape(certificate, Slot::Tc(n), &[&s, &t])
        }
        RuleId::R15 => {
            let n = match conclusion.slot {
                Slot::Tc(n) => n,
                other => return Err(fail(format!("R15 concludes about {other}, expected TC_n"))),
            };
            let value = upper_of(certificate)?;
            let (s, t) = conclusion_ends(graph, certificate, false)?;
            let premise = one_premise(certificate)?;
            expect_slot(premise, Slot::Cat)?;
            let entity = premise.conclusion.entity.as_str();
            if entity != s && entity != t {
                return Err(fail("R15 premise must bound an endpoint's category"));
            }
            if u64::from(n) * upper_of(premise)? != value {
                return Err(fail("R15 conclusion must be n times the endpoint category"));
            }
            Ok(())
        }
        RuleId::R16 => {
            let n = match conclusion.slot {
                Slot::Tc(n) => n,
                other => return Err(fail(format!("R16 concludes about {other}, expected TC_n"))),
            };
            let premise = one_premise(certificate)?;
            expect_slot(premise, Slot::Cat)?;
            match relation_of(graph, &premise.conclusion.entity)? {
                Relation::Power { base, n: m } if *base == conclusion.entity && *m == n => {}
                _ => {
                    return Err(fail(format!(
                        "R16 premise `{}` is not the declared {n}-th power of `{}`",
                        premise.conclusion.entity, conclusion.entity
                    )))
                }
            }
            if upper_of(premise)? != upper_of(certificate)? {
                return Err(fail("R16 conclusion must copy the power's category bound"));
            }
            Ok(())
        }
        RuleId::R17 => {
            expect_slot(certificate, Slot::Cat)?;
            conclusion_ends(graph, certificate, false)?;
            if certificate.premises.len() == 1 {
                let (outer, inner) = composition_parts(graph, certificate)?;
                check_min_shape(certificate, Slot::Cat, &[&outer, &inner])
            } else {
                let (left, right) = product_parts(graph, certificate)?;
                check_sum_shape(certificate, Slot::Cat, &left, &right)
            }
        }
        RuleId::R18 => {
            expect_slot(certificate, Slot::Cat)?;
            if !certificate.premises.is_empty() {
                return Err(fail("R18 is premise-free"));
            }
            let value = upper_of(certificate)?;
            let complex = match graph.entity(&conclusion.entity).map(|e| &e.kind) {
                Some(EntityKind::Space { complex: Some(c) }) => c.clone(),
                _ => {
                    return Err(fail(format!(
                        "R18 needs `{}` to be a space with simplicial data",
                        conclusion.entity
                    )))
                }
            };
            if !super::connected_space(graph, &complex) {
                return Err(fail(format!("R18 needs `{complex}` to be connected")));
            }
            match graph.complex(&complex).and_then(|c| c.dimension()) {
                Some(d) if d as u64 == value => Ok(()),
                Some(d) => Err(fail(format!(
                    "R18 bound {value} does not match the recomputed dimension {d}"
                ))),
                None => Err(fail(format!("R18 complex `{complex}` has no dimension"))),
            }
        }
        RuleId::R19 => {
            expect_slot(certificate, Slot::Cat)?;
            if !graph.is_space(&conclusion.entity) {
                return Err(fail("R19 concludes about spaces only"));
            }
            let (left, right) = product_parts(graph, certificate)?;
            check_sum_shape(certificate, Slot::Cat, &left, &right)
        }
        RuleId::R20 => {
            let n = match conclusion.slot {
                Slot::Wtc(n) => n,
                other => return Err(fail(format!("R20 concludes about {other}, expected wTC_n"))),
            };
            let (_, target) = conclusion_ends(graph, certificate, false)?;
            let premise = one_premise(certificate)?;
            expect_slot(premise, Slot::Wcat)?;
            match relation_of(graph, &premise.conclusion.entity)? {
                Relation::Power { base, n: m } if *base == target && *m == n => {}
                _ => {
                    return Err(fail(format!(
                        "R20 premise `{}` is not the declared {n}-th power of the target `{target}`",
                        premise.conclusion.entity
                    )))
                }
            }
            if upper_of(premise)? != upper_of(certificate)? {
                return Err(fail("R20 conclusion must copy the power's wcat bound"));
            }
            Ok(())
        }
        RuleId::R21 => {
            expect_slot(certificate, Slot::Cat)?;
            let (s, t) = conclusion_ends(graph, certificate, false)?;
            check_min_shape(certificate, Slot::Cat, &[&s, &t])
        }
        RuleId::Homotopy => check_homotopy(graph, certificate),
    }
}

fn check_combine(certificate: &Certificate) -> Result<(), Error> {
    let conclusion = &certificate.conclusion;
    let (lo, hi) = match conclusion.bound {
        BoundKind::Within { lo, hi } => (lo, hi),
        _ => return Err(fail("COMBINE nodes conclude an interval")),
    };
    for premise in &certificate.premises {
        if premise.conclusion.entity != conclusion.entity
            || premise.conclusion.slot != conclusion.slot
        {
            return Err(fail("COMBINE premises must bound the same fact"));
        }
    }
    if lo > 0 {
        let found = certificate.premises.iter().any(|p| {
            matches!(p.conclusion.bound, BoundKind::AtLeast { value } if value == lo)
        });
        if !found {
            return Err(fail(format!(
                "COMBINE lower endpoint {lo} has no supporting premise"
            )));
        }
    }
    if let UpperValue::Finite(h) = hi {
        let found = certificate.premises.iter().any(|p| {
            matches!(p.conclusion.bound, BoundKind::AtMost { value: UpperValue::Finite(v) } if v == h)
        });
        if !found {
            return Err(fail(format!(
                "COMBINE upper endpoint {h} has no supporting premise"
            )));
        }
    }
    Ok(())
}

fn check_power_pair_equality(graph: &EntityGraph, certificate: &Certificate) -> Result<(), Error> {
    let conclusion = &certificate.conclusion;
    let premise = one_premise(certificate)?;
    // Establish which side is the map `f` and which the pair map, and the
    // grade, from the declared relation.
    let (map_side, pair_side, n) = match conclusion.slot {
        Slot::Tc(n) => (conclusion.entity.clone(), premise.conclusion.entity.clone(), n),
        Slot::Qscat => {
            let n = match premise.conclusion.slot {
                Slot::Tc(n) => n,
                other => {
                    return Err(fail(format!("R11 premise must bound TC_n, found {other}")))
                }
            };
            (premise.conclusion.entity.clone(), conclusion.entity.clone(), n)
        }
        other => return Err(fail(format!("R11 concludes about {other}, expected TC_n or qscat"))),
    };
    match relation_of(graph, &pair_side)? {
        Relation::PairOfPowers { map, n: m } if *map == map_side && *m == n => {}
        _ => {
            return Err(fail(format!(
                "R11 needs `{pair_side}` declared as the grade-{n} power-pair map of `{map_side}`"
            )))
        }
    }
    let expected_premise_slot = match conclusion.slot {
        Slot::Tc(_) => Slot::Qscat,
        _ => Slot::Tc(n),
    };
    expect_slot(premise, expected_premise_slot)?;
    match (&certificate.conclusion.bound, &premise.conclusion.bound) {
        (BoundKind::AtLeast { value: a }, BoundKind::AtLeast { value: b }) if a == b => Ok(()),
        (
            BoundKind::AtMost { value: UpperValue::Finite(a) },
            BoundKind::AtMost { value: UpperValue::Finite(b) },
        ) if a == b => Ok(()),
        _ => Err(fail("R11 must transfer one endpoint unchanged")),
    }
}

fn check_homotopy(graph: &EntityGraph, certificate: &Certificate) -> Result<(), Error> {
    let conclusion = &certificate.conclusion;
    let premise = one_premise(certificate)?;
    let other = premise.conclusion.entity.as_str();
    if premise.conclusion.slot != conclusion.slot {
        return Err(fail("homotopy transfer must keep the slot"));
    }
    let declared = graph.homotopies().iter().find(|h| {
        (h.left == conclusion.entity && h.right == other)
            || (h.right == conclusion.entity && h.left == other)
    });
    let Some(declared) = declared else {
        return Err(fail(format!(
            "no declared homotopy between `{}` and `{other}`",
            conclusion.entity
        )));
    };
    let allowed = match conclusion.slot {
        Slot::Relcat | Slot::Qscat | Slot::Tc(_) => true,
        Slot::Srelcat => declared.relative,
        _ => false,
    };
    if !allowed {
        return Err(fail(format!(
            "slot {} does not transfer along this homotopy",
            conclusion.slot
        )));
    }
    match (&conclusion.bound, &premise.conclusion.bound) {
        (BoundKind::AtLeast { value: a }, BoundKind::AtLeast { value: b }) if a == b => Ok(()),
        (
            BoundKind::AtMost { value: UpperValue::Finite(a) },
            BoundKind::AtMost { value: UpperValue::Finite(b) },
        ) if a == b => Ok(()),
        _ => Err(fail("homotopy transfer must copy one endpoint unchanged")),
    }
}

fn factor_coords(field: &CoefficientField, factor: &WitnessFactor) -> Result<Vec<Scalar>, Error> {
    factor
        .coords
        .iter()
        .map(|c| Scalar::parse(c, field))
        .collect()
}

/// Rebuilds the pullback ring map a cohomology certificate measured: the
/// registered simplicial map of a map entity, or the identity pair map of a
/// pair entity with data.
fn rebuild_ring_map(
    graph: &EntityGraph,
    entity: &str,
    field: CoefficientField,
) -> Result<RingMap, Error> {
    match graph.entity(entity).map(|e| e.kind.clone()) {
        Some(EntityKind::Map { map: Some(m), .. }) => graph.induced_ring_map(&m, field),
        Some(EntityKind::Pair { complex: Some(c), subcomplex: Some(s) }) => {
            let identity = graph.pair_identity(&c, &s)?;
            let stored = graph
                .complex(&c)
                .ok_or_else(|| fail(format!("unregistered complex `{c}`")))?;
            induced_map(&identity, stored, stored, field)
        }
        _ => Err(fail(format!("entity `{entity}` carries no simplicial data"))),
    }
}

fn space_complex(graph: &EntityGraph, entity: &str) -> Result<String, Error> {
    match graph.entity(entity).map(|e| e.kind.clone()) {
        Some(EntityKind::Space { complex: Some(c) }) => Ok(c),
        _ => Err(fail(format!("entity `{entity}` is not a space with simplicial data"))),
    }
}

fn required_grade(evidence: &CohomologyEvidence, slot: Slot) -> Result<usize, Error> {
    let grade = evidence
        .grade
        .ok_or_else(|| fail(format!("operation {} requires a grade", evidence.operation)))?;
    if slot.grade() != Some(grade) {
        return Err(fail(format!(
            "evidence grade {grade} disagrees with the slot {slot}"
        )));
    }
    Ok(grade as usize)
}

/// Checks a COHOMOLOGY / DERIVED-RULE / CLASSICAL-RULE leaf: the witness
/// product really is non-zero in the rebuilt ambient ring, every factor
/// belongs to the searched subset, and the witness length matches the bound.
fn check_cohomology_leaf(graph: &EntityGraph, certificate: &Certificate) -> Result<(), Error> {
    if !certificate.premises.is_empty() {
        return Err(fail("cohomology leaves take no premises"));
    }
    let conclusion = &certificate.conclusion;
    let value = lower_of(certificate)?;
    let evidence = certificate
        .evidence
        .as_ref()
        .ok_or_else(|| fail("cohomology leaf is missing its evidence record"))?;
    let witness = certificate
        .witness
        .as_ref()
        .ok_or_else(|| fail("cohomology leaf is missing its witness"))?;
    if witness.length as u64 != value {
        return Err(fail(format!(
            "witness length {} does not support the bound {value}",
            witness.length
        )));
    }
    let field = CoefficientField::parse(&evidence.field)?;

    match evidence.operation.as_str() {
        "cup_length" => {
            if conclusion.slot != Slot::Cat {
                return Err(fail("cup_length evidence bounds cat of a space"));
            }
            let complex = space_complex(graph, &conclusion.entity)?;
            let stored = graph
                .complex(&complex)
                .ok_or_else(|| fail(format!("unregistered complex `{complex}`")))?;
            let ring = build_ring(stored, None, field)?;
            replay_witness(&ring, witness)
        }
        "nil_image" => {
            if !matches!(conclusion.slot, Slot::Srelcat | Slot::Cat) {
                return Err(fail("nil_image evidence bounds srelcat or cat"));
            }
            let phi = rebuild_ring_map(graph, &conclusion.entity, field)?;
            replay_witness(phi.codomain.as_ref(), witness)?;
            for factor in &witness.factors {
                let coords = factor_coords(&field, factor)?;
                let matrix = phi.matrices.get(factor.degree).ok_or_else(|| {
                    fail(format!("no image in degree {}", factor.degree))
                })?;
                if matrix.rows != coords.len() {
                    return Err(fail("witness factor has the wrong dimension"));
                }
                if matrix.solve(&coords).is_none() {
                    return Err(fail(format!(
                        "factor `{}` is not in the image of the pullback",
                        factor.label
                    )));
                }
            }
            Ok(())
        }
        "zcl" => {
            if !matches!(conclusion.slot, Slot::Tc(_) | Slot::Wtc(_)) {
                return Err(fail("zcl evidence bounds TC_n or wTC_n of a space"));
            }
            let n = required_grade(evidence, conclusion.slot)?;
            let complex = space_complex(graph, &conclusion.entity)?;
            let stored = graph
                .complex(&complex)
                .ok_or_else(|| fail(format!("unregistered complex `{complex}`")))?;
            let base = Arc::new(build_ring(stored, None, field)?);
            let tensor = power_ring(base, n)?;
            let diagonal = diagonal_pullback(&tensor);
            replay_witness(&tensor, witness)?;
            check_kernel_factors(&field, &diagonal.matrices, &witness.factors, "diagonal")
        }
        "nil_ker_g" => {
            if !matches!(conclusion.slot, Slot::Wtc(_)) {
                return Err(fail("nil_ker_g evidence bounds wTC_n of a map"));
            }
            let n = required_grade(evidence, conclusion.slot)?;
            let phi = rebuild_ring_map(graph, &conclusion.entity, field)?;
            let g = g_pullback(&phi, n)?;
            replay_witness(g.domain.as_ref(), witness)?;
            check_kernel_factors(&field, &g.map.matrices, &witness.factors, &g.map.name)
        }
        "map_zcl" => {
            if !matches!(conclusion.slot, Slot::Tc(_)) {
                return Err(fail("map_zcl evidence bounds TC_n of a map"));
            }
            let n = required_grade(evidence, conclusion.slot)?;
            let phi = rebuild_ring_map(graph, &conclusion.entity, field)?;
            let power = map_power_pullback(&phi, n)?;
            let diagonal = diagonal_pullback(&power.domain);
            replay_witness(power.codomain.as_ref(), witness)?;
            let kernels = diagonal.kernel_per_degree();
            for factor in &witness.factors {
                let coords = factor_coords(&field, factor)?;
                let pushed: Vec<Vec<Scalar>> = kernels
                    .get(factor.degree)
                    .map(|basis| {
                        basis
                            .iter()
                            .filter_map(|k| power.map.apply(k))
                            .map(|image| image.coords)
                            .collect()
                    })
                    .unwrap_or_default();
                if pushed.iter().any(|col| col.len() != coords.len()) {
                    return Err(fail("witness factor has the wrong dimension"));
                }
                let matrix = Matrix::from_columns(field, coords.len(), &pushed);
                if matrix.solve(&coords).is_none() {
                    return Err(fail(format!(
                        "factor `{}` is not a pushed zero-divisor",
                        factor.label
                    )));
                }
            }
            Ok(())
        }
        other => Err(fail(format!("unknown evidence operation `{other}`"))),
    }
}

/// Every factor must be annihilated by the recorded graded map.
fn check_kernel_factors(
    field: &CoefficientField,
    matrices: &[Matrix],
    factors: &[WitnessFactor],
    map_name: &str,
) -> Result<(), Error> {
    for factor in factors {
        let coords = factor_coords(field, factor)?;
        let matrix = matrices
            .get(factor.degree)
            .ok_or_else(|| fail(format!("no matrix in degree {}", factor.degree)))?;
        if matrix.cols != coords.len() {
            return Err(fail("witness factor has the wrong dimension"));
        }
        let image = matrix.apply(&coords);
        if image.iter().any(|v| !field.is_zero(v)) {
            return Err(fail(format!(
                "factor `{}` is not in the kernel of {map_name}",
                factor.label
            )));
        }
    }
    Ok(())
}

/// Replays the combined certificate of every recorded fact, returning how
/// many facts were audited.
pub fn replay_all(graph: &EntityGraph) -> Result<usize, Error> {
    let slots: Vec<(String, Slot)> = graph
        .facts()
        .map(|(e, s, _)| (e.to_string(), s))
        .collect();
    let mut replayed = 0;
    for (entity, slot) in slots {
        let certificate = graph.certificate_of(&entity, slot)?;
        replay(graph, &certificate)?;
        replayed += 1;
    }
    Ok(replayed)
}
