//! Nilpotency searches over graded rings and the cohomological lower bounds
//! built on them: cup length, nilpotency of an induced image, zero-divisor
//! cup length of a space, and the two map-level variants.
//!
//! Everything here reports a `NilOutcome`: the largest length `k` for which a
//! non-zero product of `k` candidates was found, a replayable witness for
//! that product, and whether the search proved that no longer product exists
//! (as opposed to merely running out of budget).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cohomology::{CohomologyRing, GradedRing, RingElement, RingMap};
use crate::error::Error;
use crate::field::{CoefficientField, Scalar};
use crate::kunneth::{diagonal_pullback, g_pullback, map_power_pullback, power_ring, TensorPowerRing};

/// How candidate factors are generated from the given spanning set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    /// Products of the given elements only.  Because products are
    /// multilinear, the maximal length of a non-zero product is the same as
    /// for the full subring they span, so this already computes the right
    /// index; only the witness shape is affected by richer modes.
    #[serde(rename = "basis")]
    BasisProducts,
    /// Adds pairwise sums and differences of same-degree elements, which
    /// often produces shorter, more readable witnesses.
    #[serde(rename = "combo")]
    Combinations,
    /// Enumerates the whole span of the elements degree by degree, one
    /// representative per scalar line.  Only allowed over F2 and F3 on rings
    /// of total dimension at most 12.
    #[serde(rename = "exhaustive")]
    Exhaustive,
}

impl SearchMode {
    pub fn parse(text: &str) -> Result<Self, Error> {
        match text {
            "basis" => Ok(SearchMode::BasisProducts),
            "combo" | "combinations" => Ok(SearchMode::Combinations),
            "exhaustive" => Ok(SearchMode::Exhaustive),
            other => Err(Error::Argument(format!(
                "unknown search mode '{other}' (expected basis, combo or exhaustive)"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SearchMode::BasisProducts => "basis",
            SearchMode::Combinations => "combo",
            SearchMode::Exhaustive => "exhaustive",
        }
    }
}

/// Limits for a nilpotency search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Longest product length that will be attempted.
    pub max_len: usize,
    pub mode: SearchMode,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_len: 8, mode: SearchMode::Combinations }
    }
}

/// A graded vector with coordinates rendered as exact scalar strings, so the
/// witness serializes without loss and can be parsed back for replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessVector {
    pub degree: usize,
    pub coords: Vec<String>,
}

/// One factor of a witness product: where it came from plus its coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFactor {
    pub label: String,
    pub degree: usize,
    pub coords: Vec<String>,
}

/// A replayable non-zero product of `length` candidate factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilWitness {
    pub length: usize,
    pub factors: Vec<WitnessFactor>,
    pub product: WitnessVector,
}

/// Result of a nilpotency search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilOutcome {
    /// Largest length of a non-zero product found.
    pub index: usize,
    /// True when products of length `index + 1` provably all vanish (either
    /// the next level was searched and found empty, or degree reasons force
    /// it); false when the search merely hit `max_len`.
    pub exhaustive: bool,
    pub witness: Option<NilWitness>,
}

/// A search outcome whose witness lives in a tensor power ring; the ring is
/// returned so callers can describe or replay the witness.
pub struct TensorSearch {
    pub outcome: NilOutcome,
    pub tensor: Arc<TensorPowerRing>,
}

pub fn witness_vector(element: &RingElement) -> WitnessVector {
    WitnessVector {
        degree: element.degree,
        coords: element.coords.iter().map(Scalar::render).collect(),
    }
}

pub fn parse_vector(field: &CoefficientField, vector: &WitnessVector) -> Result<RingElement, Error> {
    let coords = vector
        .coords
        .iter()
        .map(|c| Scalar::parse(c, field))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RingElement { degree: vector.degree, coords })
}

/// Renders an element as a readable linear combination of named basis
/// classes, e.g. `h1_0⊗h0_0 - h0_0⊗h1_0`.
pub fn render_element(ring: &dyn GradedRing, element: &RingElement) -> String {
    let field = ring.field();
    let mut out = String::new();
    for (i, coeff) in element.coords.iter().enumerate() {
        if field.is_zero(coeff) {
            continue;
        }
        let name = ring.describe_basis_element(element.degree, i);
        let rendered = coeff.render();
        let (negative, magnitude) = match rendered.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, rendered),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if magnitude == "1" {
            out.push_str(&name);
        } else {
            out.push_str(&magnitude);
            out.push('·');
            out.push_str(&name);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

struct Node {
    element: RingElement,
    factors: Vec<usize>,
}

/// Level-set search for the largest `k` such that some product of `k`
/// candidates is non-zero.  Candidates must be homogeneous of positive
/// degree; zero generators are skipped.
pub fn nil_index(
    ring: &dyn GradedRing,
    generators: &[(String, RingElement)],
    budget: &SearchBudget,
) -> Result<NilOutcome, Error> {
    if budget.max_len == 0 {
        return Err(Error::Argument("search budget must allow length at least 1".to_string()));
    }
    let field = ring.field();
    for (label, g) in generators {
        if g.degree == 0 && !g.is_zero(&field) {
            return Err(Error::Argument(format!(
                "generator '{label}' has degree 0; nilpotency searches need positive degrees"
            )));
        }
    }
    let candidates = build_candidates(ring, generators, budget.mode)?;
    if candidates.is_empty() {
        return Ok(NilOutcome { index: 0, exhaustive: true, witness: None });
    }
    let top = ring.top_degree();
    let cap = budget.max_len.min(top.max(1));

    let mut level: Vec<Node> = Vec::new();
    let mut seen: BTreeSet<(usize, String)> = BTreeSet::new();
    for (i, (_, element)) in candidates.iter().enumerate() {
        let key = (element.degree, element.render_coords());
        if seen.insert(key) {
            level.push(Node { element: element.clone(), factors: vec![i] });
        }
    }
    let mut best = level[0].factors.clone();
    let mut best_product = level[0].element.clone();
    let mut length = 1usize;
    let exhaustive = loop {
        if length == cap {
            // Out of budget; if the cap came from the top degree, any longer
            // product would land above it and vanish for degree reasons.
            break cap == top;
        }
        let mut next: Vec<Node> = Vec::new();
        let mut next_seen: BTreeSet<(usize, String)> = BTreeSet::new();
        for node in &level {
            for (i, (_, candidate)) in candidates.iter().enumerate() {
                if node.element.degree + candidate.degree > top {
                    continue;
                }
                let product = ring.multiply(&node.element, candidate);
                if product.is_zero(&field) {
                    continue;
                }
                let key = (product.degree, product.render_coords());
                if next_seen.insert(key) {
                    let mut factors = node.factors.clone();
                    factors.push(i);
                    next.push(Node { element: product, factors });
                }
            }
        }
        if next.is_empty() {
            break true;
        }
        length += 1;
        best = next[0].factors.clone();
        best_product = next[0].element.clone();
        level = next;
        seen.clear();
    };

    let witness = NilWitness {
        length,
        factors: best
            .iter()
            .map(|&i| {
                let (label, element) = &candidates[i];
                WitnessFactor {
                    label: label.clone(),
                    degree: element.degree,
                    coords: element.coords.iter().map(Scalar::render).collect(),
                }
            })
            .collect(),
        product: witness_vector(&best_product),
    };
    Ok(NilOutcome { index: length, exhaustive, witness: Some(witness) })
}

fn build_candidates(
    ring: &dyn GradedRing,
    generators: &[(String, RingElement)],
    mode: SearchMode,
) -> Result<Vec<(String, RingElement)>, Error> {
    let field = ring.field();
    let nonzero: Vec<(String, RingElement)> = generators
        .iter()
        .filter(|(_, g)| !g.is_zero(&field))
        .cloned()
        .collect();
    match mode {
        SearchMode::BasisProducts => Ok(nonzero),
        SearchMode::Combinations => {
            let mut out = nonzero.clone();
            for i in 0..nonzero.len() {
                for j in (i + 1)..nonzero.len() {
                    let (la, a) = &nonzero[i];
                    let (lb, b) = &nonzero[j];
                    if a.degree != b.degree {
                        continue;
                    }
                    let sum = a.add(b, &field);
                    if !sum.is_zero(&field) {
                        out.push((format!("{la} + {lb}"), sum));
                    }
                    let diff = a.sub(b, &field);
                    if !diff.is_zero(&field) {
                        out.push((format!("{la} - {lb}"), diff));
                    }
                }
            }
            Ok(out)
        }
        SearchMode::Exhaustive => span_candidates(ring, &nonzero),
    }
}

/// Enumerates the span of the generators degree by degree, one representative
/// per scalar line (first non-zero coefficient normalised to 1).
fn span_candidates(
    ring: &dyn GradedRing,
    generators: &[(String, RingElement)],
) -> Result<Vec<(String, RingElement)>, Error> {
    let field = ring.field();
    let p = field.characteristic();
    if p != 2 && p != 3 {
        return Err(Error::Argument(format!(
            "exhaustive search is limited to F2 and F3, not {field}"
        )));
    }
    if ring.total_dimension() > 12 {
        return Err(Error::Argument(format!(
            "exhaustive search is limited to rings of total dimension 12, got {}",
            ring.total_dimension()
        )));
    }
    let mut by_degree: BTreeMap<usize, Vec<&(String, RingElement)>> = BTreeMap::new();
    for pair in generators {
        by_degree.entry(pair.1.degree).or_default().push(pair);
    }
    let mut out = Vec::new();
    for (&degree, gens) in &by_degree {
        // Keep an independent subset so each span element appears once.
        let columns: Vec<Vec<Scalar>> = gens.iter().map(|(_, g)| g.coords.clone()).collect();
        let matrix = crate::matrix::Matrix::from_columns(field, ring.dimension(degree), &columns);
        let profile = matrix.column_rank_profile();
        let chosen: Vec<&(String, RingElement)> = profile.iter().map(|&c| gens[c]).collect();
        let mut coeffs = vec![0u64; chosen.len()];
        loop {
            // Advance the base-p counter.
            let mut pos = chosen.len();
            while pos > 0 {
                pos -= 1;
                coeffs[pos] += 1;
                if coeffs[pos] < p {
                    break;
                }
                coeffs[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX || chosen.is_empty() {
                break;
            }
            if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            let mut element = ring.zero_element(degree);
            let mut label = String::new();
            for (c, (gl, g)) in coeffs.iter().zip(&chosen) {
                if *c == 0 {
                    continue;
                }
                let scalar = field.from_i64(*c as i64);
                element = element.add(&g.scale(&scalar, &field), &field);
                if !label.is_empty() {
                    label.push_str(" + ");
                }
                if *c != 1 {
                    label.push_str(&format!("{c}·"));
                }
                label.push_str(gl);
            }
            if !element.is_zero(&field) {
                out.push((label, element));
            }
        }
    }
    Ok(out)
}

/// Verifies a stored witness against the ring it was computed in: factors are
/// positive-degree, their ordered product equals the recorded product, and
/// that product is non-zero.
pub fn replay_witness(ring: &dyn GradedRing, witness: &NilWitness) -> Result<(), Error> {
    let field = ring.field();
    if witness.factors.len() != witness.length {
        return Err(Error::Replay(format!(
            "witness claims length {} but lists {} factors",
            witness.length,
            witness.factors.len()
        )));
    }
    if witness.factors.is_empty() {
        return Err(Error::Replay("witness has no factors".to_string()));
    }
    let mut product: Option<RingElement> = None;
    for factor in &witness.factors {
        if factor.degree == 0 {
            return Err(Error::Replay(format!(
                "witness factor '{}' has degree 0",
                factor.label
            )));
        }
        let vector = WitnessVector { degree: factor.degree, coords: factor.coords.clone() };
        let element = parse_vector(&field, &vector)?;
        if element.coords.len() != ring.dimension(element.degree) {
            return Err(Error::Replay(format!(
                "witness factor '{}' has {} coordinates but degree {} has dimension {}",
                factor.label,
                element.coords.len(),
                element.degree,
                ring.dimension(element.degree)
            )));
        }
        product = Some(match product {
            None => element,
            Some(acc) => ring.multiply(&acc, &element),
        });
    }
    let product = product.expect("at least one factor");
    let recorded = parse_vector(&field, &witness.product)?;
    if product != recorded {
        return Err(Error::Replay(
            "witness product does not match the product of its factors".to_string(),
        ));
    }
    if product.is_zero(&field) {
        return Err(Error::Replay("witness product is zero".to_string()));
    }
    Ok(())
}

/// Cup length: the largest number of positive-degree classes of `ring` with
/// non-zero product.
pub fn cup_length(ring: &CohomologyRing, budget: &SearchBudget) -> Result<NilOutcome, Error> {
    let generators = positive_basis(ring);
    nil_index(ring, &generators, budget)
}

fn positive_basis(ring: &dyn GradedRing) -> Vec<(String, RingElement)> {
    let mut generators = Vec::new();
    for degree in 1..=ring.top_degree() {
        for i in 0..ring.dimension(degree) {
            generators.push((
                ring.describe_basis_element(degree, i),
                ring.basis_element(degree, i),
            ));
        }
    }
    generators
}

/// Nilpotency of the image of an induced map: the largest `k` such that some
/// product of `k` pulled-back positive-degree classes is non-zero.
pub fn nil_image(phi: &RingMap, budget: &SearchBudget) -> Result<NilOutcome, Error> {
    let mut generators = Vec::new();
    for degree in 1..=phi.domain.top_degree() {
        for i in 0..phi.domain.dimension(degree) {
            let image = phi.apply(&phi.domain.basis_element(degree, i));
            let label = format!("{}^*({})", phi.name, phi.domain.describe_basis_element(degree, i));
            generators.push((label, image));
        }
    }
    nil_index(&*phi.codomain, &generators, budget)
}

fn kernel_generators(
    tensor: &TensorPowerRing,
    kernels: &[Vec<RingElement>],
) -> Vec<(String, RingElement)> {
    let mut generators = Vec::new();
    for (degree, elements) in kernels.iter().enumerate() {
        if degree == 0 {
            continue;
        }
        for element in elements {
            generators.push((render_element(tensor, element), element.clone()));
        }
    }
    generators
}

/// Zero-divisor cup length of a space: the nilpotency of the kernel of the
/// diagonal pullback `Δ_n^* : H^{⊗n} -> H`.
pub fn zcl(base: Arc<CohomologyRing>, n: usize, budget: &SearchBudget) -> Result<TensorSearch, Error> {
    let tensor = Arc::new(power_ring(base, n)?);
    let diag = diagonal_pullback(&tensor);
    let generators = kernel_generators(&tensor, &diag.kernel_per_degree());
    let outcome = nil_index(&*tensor, &generators, budget)?;
    Ok(TensorSearch { outcome, tensor })
}

/// Nilpotency of the kernel of `g_n^* = Δ_n^* ∘ (f^*)^{⊗n}`, with products
/// formed inside the tensor power of the map's target cohomology.
pub fn nil_ker_g(phi: &RingMap, n: usize, budget: &SearchBudget) -> Result<TensorSearch, Error> {
    let g = g_pullback(phi, n)?;
    let generators = kernel_generators(&g.domain, &g.map.kernel_per_degree());
    let outcome = nil_index(&*g.domain, &generators, budget)?;
    Ok(TensorSearch { outcome, tensor: g.domain })
}

/// Zero-divisor cup length of a map: zero-divisors of the target space are
/// pushed through `(f^*)^{⊗n}` and multiplied in the source tensor power.
/// Because the pullback is a ring map, a non-zero product of `k` pushed
/// zero-divisors is exactly a product of `k` zero-divisors whose image
/// survives.
pub fn map_zcl(phi: &RingMap, n: usize, budget: &SearchBudget) -> Result<TensorSearch, Error> {
    let power = map_power_pullback(phi, n)?;
    let diag = diagonal_pullback(&power.domain);
    let mut generators = Vec::new();
    for (degree, elements) in diag.kernel_per_degree().iter().enumerate() {
        if degree == 0 {
            continue;
        }
        for element in elements {
            let image = power
                .map
                .apply(element)
                .expect("power pullback covers every domain degree");
            let label = format!(
                "({})({})",
                power.map.name,
                render_element(&*power.domain, element)
            );
            generators.push((label, image));
        }
    }
    let outcome = nil_index(&*power.codomain, &generators, budget)?;
    Ok(TensorSearch { outcome, tensor: power.codomain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{build_ring, induced_map};
    use crate::fixtures;
    use itertools::Itertools;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    fn ring_of(complex: &crate::simplicial::SimplicialComplex, field: CoefficientField) -> Arc<CohomologyRing> {
        Arc::new(build_ring(complex, None, field).unwrap())
    }

    /// Independent oracle: tries every product of every length, no pruning,
    /// no deduplication.
    fn brute_force_nil(ring: &dyn GradedRing, gens: &[RingElement], max_len: usize) -> usize {
        let field = ring.field();
        let mut best = 0;
        for len in 1..=max_len {
            let mut found = false;
            for combo in (0..len).map(|_| 0..gens.len()).multi_cartesian_product() {
                let mut acc = gens[combo[0]].clone();
                for &i in &combo[1..] {
                    acc = ring.multiply(&acc, &gens[i]);
                }
                if !acc.is_zero(&field) {
                    found = true;
                    break;
                }
            }
            if found {
                best = len;
            } else {
                break;
            }
        }
        best
    }

    fn bare(gens: &[(String, RingElement)]) -> Vec<RingElement> {
        gens.iter().map(|(_, g)| g.clone()).collect()
    }

    #[test]
    fn zero_divisor_cup_length_of_circle_squared() {
        let circle = ring_of(&fixtures::circle(3), q());
        let search = zcl(circle, 2, &SearchBudget::default()).unwrap();
        assert_eq!(search.outcome.index, 1);
        assert!(search.outcome.exhaustive);
        let witness = search.outcome.witness.unwrap();
        assert_eq!(witness.length, 1);
        replay_witness(&*search.tensor, &witness).unwrap();
    }

    #[test]
    fn zero_divisor_cup_length_of_sphere_squared_depends_on_field() {
        let over_q = zcl(ring_of(&fixtures::sphere2(), q()), 2, &SearchBudget::default()).unwrap();
        assert_eq!(over_q.outcome.index, 2);
        assert!(over_q.outcome.exhaustive);
        // The witness is (a⊗1 - 1⊗a)² = -2·a⊗a, which dies mod 2.
        let witness = over_q.outcome.witness.unwrap();
        assert_eq!(witness.length, 2);
        assert_eq!(witness.factors[0], witness.factors[1]);
        assert_eq!(witness.product.coords, vec!["-2".to_string()]);
        replay_witness(&*over_q.tensor, &witness).unwrap();

        let f2 = CoefficientField::Prime(2);
        let over_f2 = zcl(ring_of(&fixtures::sphere2(), f2), 2, &SearchBudget::default()).unwrap();
        assert_eq!(over_f2.outcome.index, 1);
        assert!(over_f2.outcome.exhaustive);
    }

    #[test]
    fn zero_divisor_cup_length_of_circle_cubed() {
        let circle = ring_of(&fixtures::circle(3), q());
        let search = zcl(circle, 3, &SearchBudget::default()).unwrap();
        assert_eq!(search.outcome.index, 2);
        assert!(search.outcome.exhaustive);
        replay_witness(&*search.tensor, &search.outcome.witness.unwrap()).unwrap();
    }

    #[test]
    fn searches_match_brute_force_oracle() {
        // Circle squared, zero-divisors.
        let circle = ring_of(&fixtures::circle(3), q());
        let tensor = Arc::new(power_ring(circle.clone(), 2).unwrap());
        let diag = diagonal_pullback(&tensor);
        let gens = kernel_generators(&tensor, &diag.kernel_per_degree());
        let budget = SearchBudget { max_len: 4, mode: SearchMode::BasisProducts };
        let outcome = nil_index(&*tensor, &gens, &budget).unwrap();
        assert_eq!(outcome.index, brute_force_nil(&*tensor, &bare(&gens), 4));

        // Sphere squared over Q and F2.
        for field in [q(), CoefficientField::Prime(2)] {
            let sphere = ring_of(&fixtures::sphere2(), field);
            let tensor = Arc::new(power_ring(sphere, 2).unwrap());
            let diag = diagonal_pullback(&tensor);
            let gens = kernel_generators(&tensor, &diag.kernel_per_degree());
            let outcome = nil_index(&*tensor, &gens, &budget).unwrap();
            assert_eq!(outcome.index, brute_force_nil(&*tensor, &bare(&gens), 4), "{field}");
        }

        // Circle cubed.
        let cube = Arc::new(power_ring(circle, 3).unwrap());
        let diag = diagonal_pullback(&cube);
        let gens = kernel_generators(&cube, &diag.kernel_per_degree());
        let outcome = nil_index(&*cube, &gens, &budget).unwrap();
        assert_eq!(outcome.index, brute_force_nil(&*cube, &bare(&gens), 4));

        // Torus, full positive basis (cup length).
        let torus = ring_of(&fixtures::torus9(), q());
        let gens = positive_basis(&*torus);
        let outcome = nil_index(&*torus, &gens, &budget).unwrap();
        assert_eq!(outcome.index, 2);
        assert_eq!(outcome.index, brute_force_nil(&*torus, &bare(&gens), 4));
    }

    #[test]
    fn cup_length_of_fixtures() {
        let budget = SearchBudget::default();
        let torus = ring_of(&fixtures::torus9(), q());
        let outcome = cup_length(&torus, &budget).unwrap();
        assert_eq!(outcome.index, 2);
        assert!(outcome.exhaustive);
        replay_witness(&*torus, &outcome.witness.unwrap()).unwrap();

        let circle = ring_of(&fixtures::circle(4), q());
        let outcome = cup_length(&circle, &budget).unwrap();
        assert_eq!(outcome.index, 1);
        assert!(outcome.exhaustive);

        let point = ring_of(&fixtures::point(), q());
        let outcome = cup_length(&point, &budget).unwrap();
        assert_eq!(outcome.index, 0);
        assert!(outcome.exhaustive);
        assert!(outcome.witness.is_none());
    }

    #[test]
    fn nil_image_of_pair_identities() {
        let budget = SearchBudget::default();

        let disk = fixtures::disk_pair();
        let id = fixtures::identity_map_on_pair(&disk, "boundary");
        let phi = induced_map(&id, &disk, &disk, q()).unwrap();
        let outcome = nil_image(&phi, &budget).unwrap();
        assert_eq!(outcome.index, 1);
        assert!(outcome.exhaustive);

        let torus = fixtures::torus9();
        let id = fixtures::identity_map_on_pair(&torus, "diag");
        let phi = induced_map(&id, &torus, &torus, q()).unwrap();
        let outcome = nil_image(&phi, &budget).unwrap();
        assert_eq!(outcome.index, 1, "the square of the relative torus class vanishes");
        assert!(outcome.exhaustive);
    }

    #[test]
    fn nil_image_of_absolute_maps() {
        let budget = SearchBudget::default();
        let torus = fixtures::torus9();
        let id = fixtures::identity_map(&torus);
        let phi = induced_map(&id, &torus, &torus, q()).unwrap();
        let outcome = nil_image(&phi, &budget).unwrap();
        assert_eq!(outcome.index, 2, "identity keeps the full cup length");

        let triangle = fixtures::circle(3);
        let constant = fixtures::constant_map(&triangle, &triangle, 0);
        let phi = induced_map(&constant, &triangle, &triangle, q()).unwrap();
        let outcome = nil_image(&phi, &budget).unwrap();
        assert_eq!(outcome.index, 0, "a constant map pulls every positive class to zero");
        assert!(outcome.witness.is_none());
    }

    #[test]
    fn nil_ker_g_of_constant_map() {
        let triangle = fixtures::circle(3);
        let constant = fixtures::constant_map(&triangle, &triangle, 0);
        let phi = induced_map(&constant, &triangle, &triangle, q()).unwrap();
        let search = nil_ker_g(&phi, 2, &SearchBudget::default()).unwrap();
        // The kernel is everything positive: (a⊗1)(1⊗a) = a⊗a survives.
        assert_eq!(search.outcome.index, 2);
        assert!(search.outcome.exhaustive);
        let witness = search.outcome.witness.unwrap();
        assert_eq!(witness.length, 2);
        replay_witness(&*search.tensor, &witness).unwrap();

        // Brute-force cross-check.
        let g = g_pullback(&phi, 2).unwrap();
        let gens = kernel_generators(&g.domain, &g.map.kernel_per_degree());
        assert_eq!(brute_force_nil(&*g.domain, &bare(&gens), 4), 2);
    }

    #[test]
    fn nil_ker_g_of_identity_matches_zcl() {
        let triangle = fixtures::circle(3);
        let id = fixtures::identity_map(&triangle);
        let phi = induced_map(&id, &triangle, &triangle, q()).unwrap();
        let search = nil_ker_g(&phi, 2, &SearchBudget::default()).unwrap();
        assert_eq!(search.outcome.index, 1, "for the identity this is the zero-divisor cup length");
    }

    #[test]
    fn map_zcl_of_winding_map() {
        let hexagon = fixtures::circle(6);
        let triangle = fixtures::circle(3);
        let wind = fixtures::degree_map(&hexagon, &triangle);
        let phi = induced_map(&wind, &hexagon, &triangle, q()).unwrap();
        let search = map_zcl(&phi, 2, &SearchBudget::default()).unwrap();
        assert_eq!(search.outcome.index, 1);
        assert!(search.outcome.exhaustive);
        let witness = search.outcome.witness.unwrap();
        replay_witness(&*search.tensor, &witness).unwrap();

        // Oracle: push the kernel generators by hand and brute-force.
        let power = map_power_pullback(&phi, 2).unwrap();
        let diag = diagonal_pullback(&power.domain);
        let pushed: Vec<RingElement> = diag
            .kernel_per_degree()
            .iter()
            .enumerate()
            .filter(|(degree, _)| *degree > 0)
            .flat_map(|(_, elems)| elems.iter().map(|e| power.map.apply(e).unwrap()))
            .collect();
        assert_eq!(brute_force_nil(&*power.codomain, &pushed, 4), 1);
    }

    #[test]
    fn map_zcl_of_identity_matches_zcl() {
        let sphere = fixtures::sphere2();
        let id = fixtures::identity_map(&sphere);
        let phi = induced_map(&id, &sphere, &sphere, q()).unwrap();
        let search = map_zcl(&phi, 2, &SearchBudget::default()).unwrap();
        assert_eq!(search.outcome.index, 2);
    }

    #[test]
    fn budget_caps_the_search_and_clears_the_exhaustive_flag() {
        let sphere = ring_of(&fixtures::sphere2(), q());
        let capped = SearchBudget { max_len: 1, mode: SearchMode::BasisProducts };
        let search = zcl(sphere.clone(), 2, &capped).unwrap();
        assert_eq!(search.outcome.index, 1);
        assert!(!search.outcome.exhaustive, "budget exhausted before the top degree");

        let enough = SearchBudget { max_len: 8, mode: SearchMode::BasisProducts };
        let search = zcl(sphere, 2, &enough).unwrap();
        assert_eq!(search.outcome.index, 2);
        assert!(search.outcome.exhaustive);
    }

    #[test]
    fn search_modes_agree_on_the_index() {
        let torus = ring_of(&fixtures::torus9(), q());
        let basis = cup_length(&torus, &SearchBudget { max_len: 8, mode: SearchMode::BasisProducts }).unwrap();
        let combo = cup_length(&torus, &SearchBudget { max_len: 8, mode: SearchMode::Combinations }).unwrap();
        assert_eq!(basis.index, combo.index);

        let f2 = CoefficientField::Prime(2);
        let circle_f2 = ring_of(&fixtures::circle(3), f2);
        for mode in [SearchMode::BasisProducts, SearchMode::Combinations, SearchMode::Exhaustive] {
            let search = zcl(circle_f2.clone(), 2, &SearchBudget { max_len: 8, mode }).unwrap();
            assert_eq!(search.outcome.index, 1, "{:?}", mode);
        }
    }

    #[test]
    fn exhaustive_mode_guards() {
        let circle_q = ring_of(&fixtures::circle(3), q());
        let budget = SearchBudget { max_len: 8, mode: SearchMode::Exhaustive };
        assert!(matches!(zcl(circle_q, 2, &budget), Err(Error::Argument(_))), "rationals rejected");

        let torus_f2 = ring_of(&fixtures::torus9(), CoefficientField::Prime(2));
        assert!(
            matches!(zcl(torus_f2, 2, &budget), Err(Error::Argument(_))),
            "total dimension 16 exceeds the cap"
        );
    }

    #[test]
    fn degree_zero_generators_are_rejected() {
        let torus = ring_of(&fixtures::torus9(), q());
        let unit = torus.unit().unwrap().clone();
        let gens = vec![("one".to_string(), unit)];
        assert!(matches!(
            nil_index(&*torus, &gens, &SearchBudget::default()),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn replay_rejects_tampered_witnesses() {
        let torus = ring_of(&fixtures::torus9(), q());
        let outcome = cup_length(&torus, &SearchBudget::default()).unwrap();
        let witness = outcome.witness.unwrap();
        replay_witness(&*torus, &witness).unwrap();

        let mut wrong_product = witness.clone();
        wrong_product.product.coords = vec!["0".to_string()];
        assert!(replay_witness(&*torus, &wrong_product).is_err());

        let mut wrong_length = witness.clone();
        wrong_length.length += 1;
        assert!(replay_witness(&*torus, &wrong_length).is_err());

        let mut wrong_factor = witness;
        wrong_factor.factors[0].coords = vec!["0".to_string(), "0".to_string()];
        assert!(replay_witness(&*torus, &wrong_factor).is_err());
    }

    #[test]
    fn witness_serialization_round_trips() {
        let torus = ring_of(&fixtures::torus9(), q());
        let outcome = cup_length(&torus, &SearchBudget::default()).unwrap();
        let witness = outcome.witness.unwrap();
        let json = serde_json::to_string(&witness).unwrap();
        let back: NilWitness = serde_json::from_str(&json).unwrap();
        assert_eq!(witness, back);
        replay_witness(&*torus, &back).unwrap();
    }
}
