//! The inequality rule table and its fixpoint driver.
//!
//! Every rule is a monotone interval narrowing: it may raise a lower bound
//! or lower an upper bound, justified by certificates over existing facts.
//! Rules scan the graph immutably, collect pending narrowings, then apply
//! them; `propagate` loops the whole table until nothing changes.

use super::{
    connected_space, BoundKind, Certificate, Conclusion, EntityGraph, EntityKind, Error, Relation,
    RuleId, Slot, UpperValue, MAX_GRADE, MIN_GRADE,
};

/// One rule of the propagation table.  `Homotopy` is the fact merge across
/// declared homotopies; the numbered rules are inequality transcriptions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, R12, R13, R14, R15, R16,
    R17, R18, R19, R20, R21,
    Homotopy,
}

/// Default application order; the fixpoint does not depend on it.
pub const CANONICAL_RULE_ORDER: [Rule; 22] = [
    Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6, Rule::R7,
    Rule::R8, Rule::R9, Rule::R10, Rule::R11, Rule::R12, Rule::R13, Rule::R14,
    Rule::R15, Rule::R16, Rule::R17, Rule::R18, Rule::R19, Rule::R20,
    Rule::R21, Rule::Homotopy,
];

impl Rule {
    fn id(self) -> RuleId {
        match self {
            Rule::R1 => RuleId::R1,
            Rule::R2 => RuleId::R2,
            Rule::R3 => RuleId::R3,
            Rule::R4 => RuleId::R4,
            Rule::R5 => RuleId::R5,
            Rule::R6 => RuleId::R6,
            Rule::R7 => RuleId::R7,
            Rule::R8 => RuleId::R8,
            Rule::R9 => RuleId::R9,
            Rule::R10 => RuleId::R10,
            Rule::R11 => RuleId::R11,
            Rule::R12 => RuleId::R12,
            Rule::R13 => RuleId::R13,
            Rule::R14 => RuleId::R14,
            Rule::R15 => RuleId::R15,
            Rule::R16 => RuleId::R16,
            Rule::R17 => RuleId::R17,
            Rule::R18 => RuleId::R18,
            Rule::R19 => RuleId::R19,
            Rule::R20 => RuleId::R20,
            Rule::R21 => RuleId::R21,
            Rule::Homotopy => RuleId::Homotopy,
        }
    }
}

enum Change {
    Lo(u64),
    Hi(u64),
}

struct Pending {
    entity: String,
    slot: Slot,
    change: Change,
    certificate: Certificate,
}

fn pending_hi(
    rule: Rule,
    entity: &str,
    slot: Slot,
    value: u64,
    premises: Vec<Certificate>,
    note: &str,
) -> Pending {
    Pending {
        entity: entity.to_string(),
        slot,
        change: Change::Hi(value),
        certificate: Certificate {
            conclusion: Conclusion {
                entity: entity.to_string(),
                slot,
                bound: BoundKind::AtMost { value: UpperValue::Finite(value) },
            },
            rule: rule.id(),
            premises,
            witness: None,
            evidence: None,
            note: Some(note.to_string()),
        },
    }
}

fn pending_lo(
    rule: Rule,
    entity: &str,
    slot: Slot,
    value: u64,
    premises: Vec<Certificate>,
    note: &str,
) -> Pending {
    Pending {
        entity: entity.to_string(),
        slot,
        change: Change::Lo(value),
        certificate: Certificate {
            conclusion: Conclusion {
                entity: entity.to_string(),
                slot,
                bound: BoundKind::AtLeast { value },
            },
            rule: rule.id(),
            premises,
            witness: None,
            evidence: None,
            note: Some(note.to_string()),
        },
    }
}

impl EntityGraph {
    /// Source name, target name, and whether the endpoints are pairs — for
    /// map entities only.
    pub(super) fn map_ends(&self, name: &str) -> Option<(String, String, bool)> {
        let entity = self.entity(name)?;
        match &entity.kind {
            EntityKind::Map { source, target, .. } => {
                let pairwise = matches!(self.entity(source)?.kind, EntityKind::Pair { .. });
                Some((source.clone(), target.clone(), pairwise))
            }
            _ => None,
        }
    }

    pub(super) fn is_space(&self, name: &str) -> bool {
        matches!(self.entity(name), Some(e) if matches!(e.kind, EntityKind::Space { .. }))
    }

    pub(super) fn is_pair(&self, name: &str) -> bool {
        matches!(self.entity(name), Some(e) if matches!(e.kind, EntityKind::Pair { .. }))
    }

    /// Entities in insertion order with a cloned relation, for immutable
    /// scanning.
    fn scan(&self) -> Vec<(String, Option<Relation>)> {
        self.entities()
            .map(|e| (e.name.clone(), e.relation.clone()))
            .collect()
    }

    /// Composition min-rules: each factor's upper bound caps the composite.
    fn composition_min(&self, rule: Rule, slot: Slot, pairwise: bool, note: &str) -> Vec<Pending> {
        let mut out = Vec::new();
        for (name, relation) in self.scan() {
            let Some(Relation::Composition { outer, inner }) = relation else { continue };
            let Some((_, _, pw)) = self.map_ends(&name) else { continue };
            if pw != pairwise {
                continue;
            }
            for factor in [&outer, &inner] {
                if let Some((hi, cert)) = self.finite_hi(factor, slot) {
                    out.push(pending_hi(rule, &name, slot, hi, vec![cert], note));
                }
            }
        }
        out
    }

    /// Product sum-rules: upper bounds of the factors add.
    fn product_sum(&self, rule: Rule, slot: Slot, pairwise: bool, note: &str) -> Vec<Pending> {
        let mut out = Vec::new();
        for (name, relation) in self.scan() {
            let Some(Relation::Product { left, right }) = relation else { continue };
            let Some((_, _, pw)) = self.map_ends(&name) else { continue };
            if pw != pairwise {
                continue;
            }
            if let (Some((a, ca)), Some((b, cb))) =
                (self.finite_hi(&left, slot), self.finite_hi(&right, slot))
            {
                out.push(pending_hi(rule, &name, slot, a + b, vec![ca, cb], note));
            }
        }
        out
    }

    /// Endpoint min-rules: a map is capped by a slot value at either end.
    fn endpoint_min(
        &self,
        rule: Rule,
        map_slot: Slot,
        end_slot: Slot,
        pairwise: bool,
        note: &str,
    ) -> Vec<Pending> {
        let mut out = Vec::new();
        for (name, _) in self.scan() {
            let Some((source, target, pw)) = self.map_ends(&name) else { continue };
            if pw != pairwise {
                continue;
            }
            for end in [&source, &target] {
                if let Some((hi, cert)) = self.finite_hi(end, end_slot) {
                    out.push(pending_hi(rule, &name, map_slot, hi, vec![cert], note));
                }
            }
        }
        out
    }

    /// Grades to consider for a map rule: every grade already tracked on the
    /// map or either endpoint.
    fn grade_union(&self, map: &str, source: &str, target: &str) -> Vec<u8> {
        let mut grades = self.present_grades(map, false);
        grades.extend(self.present_grades(source, false));
        grades.extend(self.present_grades(target, false));
        grades.sort_unstable();
        grades.dedup();
        grades
    }

    pub(crate) fn apply_rule(&mut self, rule: Rule) -> Result<bool, Error> {
        let pendings = self.collect(rule);
        let mut changed = false;
        for p in pendings {
            changed |= match p.change {
                Change::Lo(v) => self.narrow_lo(&p.entity, p.slot, v, p.certificate)?,
                Change::Hi(v) => self.narrow_hi(&p.entity, p.slot, v, p.certificate)?,
            };
        }
        Ok(changed)
    }

    fn collect(&self, rule: Rule) -> Vec<Pending> {
        match rule {
            Rule::R1 => self.composition_min(
                rule,
                Slot::Relcat,
                true,
                "the relative category of a composition is at most that of each factor",
            ),
            Rule::R2 => self.endpoint_min(
                rule,
                Slot::Relcat,
                Slot::CatPair,
                true,
                "the relative category of a pair map is at most the category of either pair",
            ),
            Rule::R3 => self.product_sum(
                rule,
                Slot::Relcat,
                true,
                "relative category is subadditive under products of maps",
            ),
            Rule::R4 => self.composition_min(
                rule,
                Slot::Qscat,
                true,
                "qscat of a composition is at most that of each factor",
            ),
            Rule::R5 => self.rule_complement(rule),
            Rule::R6 => self.product_sum(
                rule,
                Slot::Qscat,
                true,
                "qscat is subadditive under products of maps",
            ),
            Rule::R7 => self.endpoint_min(
                rule,
                Slot::Srelcat,
                Slot::Srelcat,
                true,
                "srelcat of a pair map is at most srelcat of either pair",
            ),
            Rule::R8 => self.composition_min(
                rule,
                Slot::Srelcat,
                true,
                "srelcat of a composition is at most that of each factor",
            ),
            Rule::R9 => self.product_sum(
                rule,
                Slot::Srelcat,
                true,
                "srelcat is subadditive under products of maps",
            ),
            Rule::R10 => self.rule_qscat_below_srelcat(rule),
            Rule::R11 => self.rule_power_pair_equality(rule),
            Rule::R12 => self.rule_grade_monotonicity(rule),
            Rule::R13 => self.rule_tc_from_own_cat(rule),
            Rule::R14 => self.rule_tc_from_endpoint_tc(rule),
            Rule::R15 => self.rule_tc_from_endpoint_cat(rule),
            Rule::R16 => self.rule_tc_from_power_cat(rule),
            Rule::R17 => {
                let mut out = self.composition_min(
                    rule,
                    Slot::Cat,
                    false,
                    "the category of a composition is at most that of each factor",
                );
                out.extend(self.product_sum(
                    rule,
                    Slot::Cat,
                    false,
                    "category is subadditive under products of maps",
                ));
                out
            }
            Rule::R18 => self.rule_dimension(rule),
            Rule::R19 => self.rule_space_product(rule),
            Rule::R20 => self.rule_weak_tc_from_power_wcat(rule),
            Rule::R21 => self.endpoint_min(
                rule,
                Slot::Cat,
                Slot::Cat,
                false,
                "the category of a map is at most the category of either end",
            ),
            Rule::Homotopy => self.rule_homotopy(rule),
        }
    }

    /// `catPair(X, A) ≤ cat(X − A) + 1`, read off a declared complement
    /// space (whose category must come from user facts).
    fn rule_complement(&self, rule: Rule) -> Vec<Pending> {
        let mut out = Vec::new();
        for (name, relation) in self.scan() {
            let Some(Relation::Complement { pair }) = relation else { continue };
            if let Some((hi, cert)) = self.finite_hi(&name, Slot::Cat) {
                out.push(pending_hi(
                    rule,
                    &pair,
                    Slot::CatPair,
                    hi + 1,
                    vec![cert],
                    "the category of a pair exceeds the category of its complement by at most one",
                ));
            }
        }
        out
    }

    /// `qscat ≤ srelcat` on pairs and pair maps.
    fn rule_qscat_below_srelcat(&self, rule: Rule) -> Vec<Pending> {
        let mut out = Vec::new();
        for (name, _) in self.scan() {
            let eligible = self.is_pair(&name)
                || matches!(self.map_ends(&name), Some((_, _, true)));
            if !eligible {
                continue;
            }
            if let Some((hi, cert)) = self.finite_hi(&name, Slot::Srelcat) {
                out.push(pending_hi(
                    rule,
                    &name,
                    Slot::Qscat,
                    hi,
                    vec![cert],
                    "qscat is bounded by srelcat",
                ));
            }
        }
        out
    }

    /// The defining equality `TC_n(f) = qscat` of the induced power-pair
    /// map: bounds transfer in both directions.
    fn rule_power_pair_equality(&self, rule: Rule) -> Vec<Pending> {
        let note = "TC_n of a map equals qscat of its induced power-pair map";
        let mut out = Vec::new();
        for (name, relation) in self.scan() {
            let Some(Relation::PairOfPowers { map, n }) = relation else { continue };
            let tc = Slot::Tc(n);
            if let Some((hi, cert)) = self.finite_hi(&name, Slot::Qscat) {
                out.push(pending_hi(rule, &map, tc, hi, vec![cert], note));
            }
            if let Some((lo, cert)) = self.positive_lo(&name, Slot::Qscat) {
                out.push(pending_lo(rule, &map, tc, lo, vec![cert], note));
            }
            if let Some((hi, cert)) = self.finite_hi(&map, tc) {
                out.push(pending_hi(rule, &name, Slot::Qscat, hi, vec![cert], note));
            }
            if let Some((lo, cert)) = self.positive_lo(&map, tc) {
                out.push(pending_lo(rule, &name, Slot::Qscat, lo, vec![cert], note));
            }
        }
        out
    }

    /// `TC_n ≤ TC_{n+1}`: lower bounds flow up in the grade, upper bounds
    /// flow down, and never the reverse.
    fn rule_grade_monotonicity(&self, rule: Rule) -> Vec<Pending> {
        let note = "TC_n is non-decreasing in the grade";
        let mut out = Vec::new();
        for (name, _) in self.scan() {
            let grades = self.present_grades(&name, false);
            for n in MIN_GRADE..MAX_GRADE {
                if !grades.contains(&n) || !grades.contains(&(n + 1)) {
                    continue;
                }
                if let Some((lo, cert)) = self.positive_lo(&name, Slot::Tc(n)) {
                    out.push(pending_lo(rule, &name, Slot::Tc(n + 1), lo, vec![cert], note));
                }
                if let Some((hi, cert)) = self.finite_hi(&name, Slot::Tc(n + 1)) {
                    out.push(pending_hi(rule, &name, Slot::Tc(n), hi, vec![cert], note));
                }
            }
        }
        out
    }

    /// `TC_n ≤ n · cat`, for maps and (through the identity convention)
    /// spaces.
    fn rule_tc_from_own_cat(&self, rule: Rule) -> Vec<Pending> {
        let note = "TC_n is at most n times the category";
        let mut out = Vec::new();
        for (name, _) in self.scan() {
            let eligible =
                self.is_space(&name) || matches!(self.map_ends(&name), Some((_, _, false)));
            if !eligible {
                continue;
            }
            let Some((cat, cert)) = self.finite_hi(&name, Slot::Cat) else { continue };
            for n in self.present_grades(&name, false) {
                out.push(pending_hi(
                    rule,
                    &name,
                    Slot::Tc(n),
                    u64::from(n) * cat,
                    vec![cert.clone()],
                    note,
                ));
            }
        }
        out
    }

    /// `TC_n(f) ≤ min(TC_n(X), TC_n(Y))`.
    fn rule_tc_from_endpoint_tc(&self, rule: Rule) -> Vec<Pending> {
        let note = "TC_n of a map is at most TC_n of either end";
        let mut out = Vec::new();
        for (name, _) in self.scan() {
            let Some((source, target, false)) = self.map_ends(&name) else { continue };
            for n in self.grade_union(&name, &source, &target) {
                for end in [&source, &target] {
                    if let Some((hi, cert)) = self.finite_hi(end, Slot::Tc(n)) {
                        out.push(pending_hi(rule, &name, Slot::Tc(n), hi, vec![cert], note));
                    }
                }
            }
        }
        out
    }

    /// `TC_n(f) ≤ min(n·cat(X), n·cat(Y))`.
    fn rule_tc_from_endpoint_cat(&self, rule: Rule) -> Vec<Pending> {
        let note = "TC_n of a map is at most n times the category of either end";
        let mut out = Vec::new();
        for (name, _) in self.scan() {
            let Some((source, target, false)) = self.map_ends(&name) else { continue };
            for n in self.grade_union(&name, &source, &target) {
                for end in [&source, &target] {
                    if let Some((cat, cert)) = self.finite_hi(end, Slot::Cat) {
                        out.push(pending_hi(
                            rule,
                            &name,
                            Slot::Tc(n),
                            u64::from(n) * cat,
                            vec![cert],
                            note,
                        ));
                    }
                }
            }
        }
        out
    }

    /// `TC_n(X) ≤ cat(X^n)`, read off a declared power space.
    fn rule_tc_from_power_cat(&self, rule: Rule) -> Vec<Pending> {
        let mut out = Vec::new();
        for (name, relation) in self.scan() {
            let Some(Relation::Power { base, n }) = relation else { continue };
            if let Some((hi, cert)) = self.finite_hi(&name, Slot::Cat) {
                out.push(pending_hi(
                    rule,
                    &base,
                    Slot::Tc(n),
                    hi,
                    vec![cert],
                    "TC_n of a space is at most the category of its n-th power",
                ));
            }
        }
        out
    }

    /// The classical dimension bound: a connected complex's category is at
    /// most its dimension.  Premise-free; replay recomputes both facts.
    fn rule_dimension(&self, rule: Rule) -> Vec<Pending> {
        let mut out = Vec::new();
        for entity in self.entities() {
            let EntityKind::Space { complex: Some(complex) } = &entity.kind else { continue };
            if !connected_space(self, complex) {
                continue;
            }
            let Some(dim) = self.complex(complex).and_then(|c| c.dimension()) else { continue };
            out.push(pending_hi(
                rule,
                &entity.name,
                Slot::Cat,
                dim as u64,
                Vec::new(),
                &format!("CLASSICAL-RULE: the connected complex `{complex}` has dimension {dim}"),
            ));
        }
        out
    }

    /// Category is subadditive under products of spaces.
    fn rule_space_product(&self, rule: Rule) -> Vec<Pending> {
        let mut out = Vec::new();
        for (name, relation) in self.scan() {
            let Some(Relation::Product { left, right }) = relation else { continue };
            if !self.is_space(&name) {
                continue;
            }
            if let (Some((a, ca)), Some((b, cb))) = (
                self.finite_hi(&left, Slot::Cat),
                self.finite_hi(&right, Slot::Cat),
            ) {
                out.push(pending_hi(
                    rule,
                    &name,
                    Slot::Cat,
                    a + b,
                    vec![ca, cb],
                    "CLASSICAL-RULE: category is subadditive under products of spaces",
                ));
            }
        }
        out
    }

    /// `wTC_n(f) ≤ wcat(Y^n)` where `Y` is the target; wcat comes from user
    /// facts only.
    fn rule_weak_tc_from_power_wcat(&self, rule: Rule) -> Vec<Pending> {
        let note = "weak TC_n of a map is at most the weak category of the target's n-th power";
        let mut out = Vec::new();
        for (name, _) in self.scan() {
            let Some((_, target, false)) = self.map_ends(&name) else { continue };
            for (power, relation) in self.scan() {
                let Some(Relation::Power { base, n }) = relation else { continue };
                if base != target {
                    continue;
                }
                if let Some((hi, cert)) = self.finite_hi(&power, Slot::Wcat) {
                    out.push(pending_hi(rule, &name, Slot::Wtc(n), hi, vec![cert], note));
                }
            }
        }
        out
    }

    /// Declared homotopies merge facts between the two maps: relcat and
    /// qscat for pair maps (srelcat only when the homotopy is relative),
    /// TC_n for absolute maps.
    fn rule_homotopy(&self, rule: Rule) -> Vec<Pending> {
        let mut out = Vec::new();
        for homotopy in self.homotopies() {
            let Some((_, _, pairwise)) = self.map_ends(&homotopy.left) else { continue };
            let mut slots: Vec<Slot> = if pairwise {
                let mut s = vec![Slot::Relcat, Slot::Qscat];
                if homotopy.relative {
                    s.push(Slot::Srelcat);
                }
                s
            } else {
                let mut grades = self.present_grades(&homotopy.left, false);
                grades.extend(self.present_grades(&homotopy.right, false));
                grades.sort_unstable();
                grades.dedup();
                grades.into_iter().map(Slot::Tc).collect()
            };
            slots.dedup();
            let note = if homotopy.relative {
                "transferred along a declared relative homotopy"
            } else {
                "transferred along a declared homotopy"
            };
            for slot in slots {
                let sides = [
                    (&homotopy.left, &homotopy.right),
                    (&homotopy.right, &homotopy.left),
                ];
                for (from, to) in sides {
                    if let Some((hi, cert)) = self.finite_hi(from, slot) {
                        out.push(pending_hi(rule, to, slot, hi, vec![cert], note));
                    }
                    if let Some((lo, cert)) = self.positive_lo(from, slot) {
                        out.push(pending_lo(rule, to, slot, lo, vec![cert], note));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{EntityGraph, Interval, Relation, RuleId, Slot, UpperValue};
    use super::*;

    fn exact(v: u64) -> Interval {
        Interval::exact(v)
    }

    /// The composite of two maps inherits the smaller upper bound.
    #[test]
    fn composition_takes_the_minimum() {
        let mut g = EntityGraph::new();
        g.add_pair("P", None).unwrap();
        g.add_pair("Q", None).unwrap();
        g.add_pair("R", None).unwrap();
        g.add_map("f", "P", "Q", None).unwrap();
        g.add_map("h", "Q", "R", None).unwrap();
        g.add_map("hf", "P", "R", None).unwrap();
        g.set_relation("hf", Relation::Composition { outer: "h".into(), inner: "f".into() })
            .unwrap();
        g.assert_fact("f", Slot::Relcat, Interval::at_most(3), "given").unwrap();
        g.assert_fact("h", Slot::Relcat, Interval::at_most(5), "given").unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("hf", Slot::Relcat).unwrap().hi, UpperValue::Finite(3));
        let cert = g.certificate_of("hf", Slot::Relcat).unwrap();
        assert_eq!(cert.premises[0].rule, RuleId::R1);
    }

    #[test]
    fn products_add_upper_bounds() {
        let mut g = EntityGraph::new();
        g.add_pair("P", None).unwrap();
        g.add_map("f", "P", "P", None).unwrap();
        g.add_map("h", "P", "P", None).unwrap();
        g.add_map("fh", "P", "P", None).unwrap();
        g.set_relation("fh", Relation::Product { left: "f".into(), right: "h".into() })
            .unwrap();
        g.assert_fact("f", Slot::Qscat, Interval::at_most(1), "given").unwrap();
        g.assert_fact("h", Slot::Qscat, Interval::at_most(2), "given").unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("fh", Slot::Qscat).unwrap().hi, UpperValue::Finite(3));
        // One-sided information does not fire a sum rule.
        let mut g2 = EntityGraph::new();
        g2.add_pair("P", None).unwrap();
        g2.add_map("f", "P", "P", None).unwrap();
        g2.add_map("h", "P", "P", None).unwrap();
        g2.add_map("fh", "P", "P", None).unwrap();
        g2.set_relation("fh", Relation::Product { left: "f".into(), right: "h".into() })
            .unwrap();
        g2.assert_fact("f", Slot::Qscat, Interval::at_most(1), "given").unwrap();
        g2.propagate().unwrap();
        assert_eq!(g2.interval("fh", Slot::Qscat).unwrap().hi, UpperValue::Infinite);
    }

    #[test]
    fn pair_map_bounded_by_its_pairs() {
        let mut g = EntityGraph::new();
        g.add_pair("XA", None).unwrap();
        g.add_pair("YB", None).unwrap();
        g.add_map("f", "XA", "YB", None).unwrap();
        g.assert_fact("XA", Slot::CatPair, Interval::at_most(4), "given").unwrap();
        g.assert_fact("YB", Slot::CatPair, Interval::at_most(2), "given").unwrap();
        g.assert_fact("XA", Slot::Srelcat, Interval::at_most(3), "given").unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("f", Slot::Relcat).unwrap().hi, UpperValue::Finite(2));
        assert_eq!(g.interval("f", Slot::Srelcat).unwrap().hi, UpperValue::Finite(3));
        // R10 then caps qscat by srelcat.
        assert_eq!(g.interval("f", Slot::Qscat).unwrap().hi, UpperValue::Finite(3));
    }

    #[test]
    fn complement_bound_adds_one() {
        let mut g = EntityGraph::new();
        g.add_pair("XA", None).unwrap();
        g.add_space("C", None).unwrap();
        g.set_relation("C", Relation::Complement { pair: "XA".into() }).unwrap();
        g.assert_fact("C", Slot::Cat, exact(2), "user category of the complement").unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("XA", Slot::CatPair).unwrap().hi, UpperValue::Finite(3));
    }

    #[test]
    fn power_pair_equality_transfers_both_directions() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("Y", None).unwrap();
        g.add_pair("DX", None).unwrap();
        g.add_pair("DY", None).unwrap();
        g.add_map("f", "X", "Y", None).unwrap();
        g.add_map("fbar", "DX", "DY", None).unwrap();
        g.set_relation("fbar", Relation::PairOfPowers { map: "f".into(), n: 2 }).unwrap();

        g.assert_fact("fbar", Slot::Qscat, Interval::at_most(4), "given").unwrap();
        g.assert_fact("f", Slot::Tc(2), Interval::at_least(2), "given").unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("f", Slot::Tc(2)).unwrap(), Interval::new(2, UpperValue::Finite(4)));
        assert_eq!(
            g.interval("fbar", Slot::Qscat).unwrap(),
            Interval::new(2, UpperValue::Finite(4)),
            "equality also pushes the lower bound back"
        );
    }

    #[test]
    fn grade_monotonicity_never_reverses() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("Y", None).unwrap();
        g.add_map("f", "X", "Y", None).unwrap();
        g.assert_fact("f", Slot::Tc(2), Interval::at_least(3), "given").unwrap();
        g.assert_fact("f", Slot::Tc(3), Interval::at_most(7), "given").unwrap();
        g.ensure_fact("f", Slot::Tc(4)).unwrap();
        g.propagate().unwrap();
        // Lower bound flowed 2 → 3 → 4; upper bound flowed 3 → 2.
        assert_eq!(g.interval("f", Slot::Tc(3)).unwrap(), Interval::new(3, UpperValue::Finite(7)));
        assert_eq!(g.interval("f", Slot::Tc(4)).unwrap().lo, 3);
        assert_eq!(g.interval("f", Slot::Tc(2)).unwrap().hi, UpperValue::Finite(7));
        // The reverse directions must not fire: no lower bound appeared at
        // grade 2 beyond the assertion, no upper bound at grade 4.
        assert_eq!(g.interval("f", Slot::Tc(2)).unwrap().lo, 3);
        assert_eq!(g.interval("f", Slot::Tc(4)).unwrap().hi, UpperValue::Infinite);
    }

    #[test]
    fn tc_bounds_from_categories() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("Y", None).unwrap();
        g.add_map("f", "X", "Y", None).unwrap();
        g.assert_fact("X", Slot::Cat, exact(2), "given").unwrap();
        g.assert_fact("Y", Slot::Cat, Interval::at_most(3), "given").unwrap();
        g.ensure_fact("f", Slot::Tc(3)).unwrap();
        g.ensure_fact("X", Slot::Tc(3)).unwrap();
        g.propagate().unwrap();
        // R21: cat(f) ≤ min(2, 3); R15: TC₃(f) ≤ 3·2; R13 via cat(f): ≤ 6.
        assert_eq!(g.interval("f", Slot::Cat).unwrap().hi, UpperValue::Finite(2));
        assert_eq!(g.interval("f", Slot::Tc(3)).unwrap().hi, UpperValue::Finite(6));
        // R13 on the space: TC₃(X) ≤ 3·cat(X).
        assert_eq!(g.interval("X", Slot::Tc(3)).unwrap().hi, UpperValue::Finite(6));
    }

    #[test]
    fn tc_of_map_capped_by_endpoint_tc() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("Y", None).unwrap();
        g.add_map("f", "X", "Y", None).unwrap();
        g.assert_fact("Y", Slot::Tc(2), Interval::at_most(4), "given").unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("f", Slot::Tc(2)).unwrap().hi, UpperValue::Finite(4));
    }

    #[test]
    fn tc_of_space_capped_by_power_category() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("X3", None).unwrap();
        g.set_relation("X3", Relation::Power { base: "X".into(), n: 3 }).unwrap();
        g.assert_fact("X3", Slot::Cat, Interval::at_most(5), "given").unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("X", Slot::Tc(3)).unwrap().hi, UpperValue::Finite(5));
    }

    #[test]
    fn dimension_rule_needs_connectivity() {
        use crate::fixtures;
        use crate::simplicial::SimplicialComplex;
        let mut g = EntityGraph::new();
        g.add_complex(fixtures::torus9()).unwrap();
        let two_points = SimplicialComplex::from_indices("two_points", 2, [vec![0], vec![1]]);
        g.add_complex(two_points).unwrap();
        g.add_space("T2", Some("torus9")).unwrap();
        g.add_space("D", Some("two_points")).unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("T2", Slot::Cat).unwrap().hi, UpperValue::Finite(2));
        assert_eq!(
            g.interval("D", Slot::Cat).unwrap().hi,
            UpperValue::Infinite,
            "disconnected complexes get no dimension bound"
        );
        let cert = g.certificate_of("T2", Slot::Cat).unwrap();
        assert_eq!(cert.premises[0].rule, RuleId::R18);
        assert!(cert.premises[0].premises.is_empty());
    }

    #[test]
    fn space_products_add_categories() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("Y", None).unwrap();
        g.add_space("XY", None).unwrap();
        g.set_relation("XY", Relation::Product { left: "X".into(), right: "Y".into() }).unwrap();
        g.assert_fact("X", Slot::Cat, exact(1), "given").unwrap();
        g.assert_fact("Y", Slot::Cat, exact(2), "given").unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("XY", Slot::Cat).unwrap().hi, UpperValue::Finite(3));
        assert_eq!(
            g.certificate_of("XY", Slot::Cat).unwrap().premises[0].rule,
            RuleId::R19
        );
    }

    #[test]
    fn weak_tc_capped_by_power_wcat() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("Y", None).unwrap();
        g.add_space("Y2", None).unwrap();
        g.add_map("f", "X", "Y", None).unwrap();
        g.set_relation("Y2", Relation::Power { base: "Y".into(), n: 2 }).unwrap();
        g.assert_fact("Y2", Slot::Wcat, Interval::at_most(3), "user weak category").unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("f", Slot::Wtc(2)).unwrap().hi, UpperValue::Finite(3));
        // wTC is never produced by the plain TC rules.
        assert_eq!(g.interval("f", Slot::Tc(2)).unwrap().hi, UpperValue::Infinite);
    }

    #[test]
    fn homotopic_maps_share_bounds() {
        let mut g = EntityGraph::new();
        g.add_pair("P", None).unwrap();
        g.add_pair("Q", None).unwrap();
        g.add_map("f", "P", "Q", None).unwrap();
        g.add_map("h", "P", "Q", None).unwrap();
        g.declare_homotopy("f", "h", false).unwrap();
        g.assert_fact("f", Slot::Relcat, Interval::at_most(2), "given").unwrap();
        g.assert_fact("f", Slot::Srelcat, Interval::at_most(1), "given").unwrap();
        g.propagate().unwrap();
        assert_eq!(g.interval("h", Slot::Relcat).unwrap().hi, UpperValue::Finite(2));
        // srelcat does not transfer along a plain homotopy…
        assert_eq!(g.interval("h", Slot::Srelcat).unwrap().hi, UpperValue::Infinite);
        // …but qscat picked up the R10 consequence on f first.
        assert_eq!(g.interval("h", Slot::Qscat).unwrap().hi, UpperValue::Finite(1));

        // A relative homotopy also carries srelcat.
        let mut g2 = EntityGraph::new();
        g2.add_pair("P", None).unwrap();
        g2.add_pair("Q", None).unwrap();
        g2.add_map("f", "P", "Q", None).unwrap();
        g2.add_map("h", "P", "Q", None).unwrap();
        g2.declare_homotopy("f", "h", true).unwrap();
        g2.assert_fact("f", Slot::Srelcat, Interval::at_most(1), "given").unwrap();
        g2.propagate().unwrap();
        assert_eq!(g2.interval("h", Slot::Srelcat).unwrap().hi, UpperValue::Finite(1));

        // TC_n transfers between homotopic absolute maps.
        let mut g3 = EntityGraph::new();
        g3.add_space("X", None).unwrap();
        g3.add_space("Y", None).unwrap();
        g3.add_map("f", "X", "Y", None).unwrap();
        g3.add_map("h", "X", "Y", None).unwrap();
        g3.declare_homotopy("f", "h", false).unwrap();
        g3.assert_fact("f", Slot::Tc(2), exact(3), "given").unwrap();
        g3.propagate().unwrap();
        assert_eq!(g3.interval("h", Slot::Tc(2)).unwrap(), exact(3));
    }

    #[test]
    fn fixpoint_is_idempotent_and_order_independent() {
        let build = || {
            let mut g = EntityGraph::new();
            g.add_space("X", None).unwrap();
            g.add_space("Y", None).unwrap();
            g.add_space("Y2", None).unwrap();
            g.add_pair("DX", None).unwrap();
            g.add_pair("DY", None).unwrap();
            g.add_map("f", "X", "Y", None).unwrap();
            g.add_map("fbar", "DX", "DY", None).unwrap();
            g.set_relation("fbar", Relation::PairOfPowers { map: "f".into(), n: 2 }).unwrap();
            g.set_relation("Y2", Relation::Power { base: "Y".into(), n: 2 }).unwrap();
            g.assert_fact("DY", Slot::Srelcat, exact(1), "given").unwrap();
            g.assert_fact("X", Slot::Cat, exact(1), "given").unwrap();
            g.assert_fact("Y", Slot::Cat, exact(1), "given").unwrap();
            g.ensure_fact("f", Slot::Tc(2)).unwrap();
            g.ensure_fact("f", Slot::Tc(3)).unwrap();
            g
        };
        let snapshot = |g: &EntityGraph| -> Vec<(String, Slot, Interval)> {
            g.facts().map(|(e, s, f)| (e.to_string(), s, f.interval())).collect()
        };

        let mut reference = build();
        reference.propagate().unwrap();
        let first = snapshot(&reference);
        reference.propagate().unwrap();
        assert_eq!(first, snapshot(&reference), "propagate is idempotent at the fixpoint");

        let mut reversed: Vec<Rule> = CANONICAL_RULE_ORDER.to_vec();
        reversed.reverse();
        let mut g2 = build();
        g2.propagate_with_order(&reversed).unwrap();
        assert_eq!(first, snapshot(&g2), "fixpoint is independent of rule order");

        let rotated: Vec<Rule> = CANONICAL_RULE_ORDER
            .iter()
            .cycle()
            .skip(7)
            .take(CANONICAL_RULE_ORDER.len())
            .copied()
            .collect();
        let mut g3 = build();
        g3.propagate_with_order(&rotated).unwrap();
        assert_eq!(first, snapshot(&g3));
    }

    /// The flagship symbolic derivation: a user fact about the diagonal pair
    /// plus the power-pair equality pin TC₂ of the map to [1, 1] once a
    /// cohomology lower bound arrives.
    #[test]
    fn symbolic_chain_pins_tc2() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("Y", None).unwrap();
        g.add_pair("diag", None).unwrap();
        g.add_map("f", "X", "Y", None).unwrap();
        g.add_map("fbar", "diag", "diag", None).unwrap();
        g.set_relation("fbar", Relation::PairOfPowers { map: "f".into(), n: 2 }).unwrap();
        g.assert_fact("diag", Slot::Srelcat, exact(1), "user fact about the diagonal pair")
            .unwrap();
        g.assert_fact("f", Slot::Tc(2), Interval::at_least(1), "exact cohomology lower bound")
            .unwrap();
        g.propagate().unwrap();

        assert_eq!(g.interval("f", Slot::Tc(2)).unwrap(), exact(1));
        let cert = g.certificate_of("f", Slot::Tc(2)).unwrap();
        let rendered = format!("{:?}", cert);
        for needle in ["R11", "R7", "UserFact"] {
            assert!(rendered.contains(needle), "chain should mention {needle}: {rendered}");
        }
    }

    #[test]
    fn contradiction_names_both_certificates() {
        let mut g = EntityGraph::new();
        g.add_space("X", None).unwrap();
        g.add_space("Y", None).unwrap();
        g.add_pair("diag", None).unwrap();
        g.add_map("f", "X", "Y", None).unwrap();
        g.add_map("fbar", "diag", "diag", None).unwrap();
        g.set_relation("fbar", Relation::PairOfPowers { map: "f".into(), n: 2 }).unwrap();
        g.assert_fact("diag", Slot::Srelcat, Interval::at_most(1), "pair bound").unwrap();
        g.assert_fact("f", Slot::Tc(2), Interval::at_least(2), "user lower bound").unwrap();
        let err = g.propagate().unwrap_err();
        match err {
            Error::Contradiction { entity, slot, lo, hi, lower_certificate, upper_certificate } => {
                assert_eq!(entity, "f");
                assert_eq!(slot, "TC_2");
                assert_eq!((lo, hi), (2, 1));
                assert_eq!(lower_certificate.rule, RuleId::UserFact);
                assert_eq!(upper_certificate.rule, RuleId::R11);
            }
            other => panic!("expected a contradiction, got {other:?}"),
        }
    }
}
