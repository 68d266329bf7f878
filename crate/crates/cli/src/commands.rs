//! Command implementations.  Each returns rendered output (text or JSON)
//! and leaves process/exit concerns to the binary.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use catbound::bounds::{
    self, NilOutcome, NilWitness, SearchBudget, SearchMode, WitnessFactor, WitnessVector,
};
use catbound::cohomology::{build_ring, induced_map, GradedRing, RingElement, RingMap};
use catbound::error::Error;
use catbound::field::CoefficientField;
use catbound::simplicial::{
    validate_complex, validate_map, ComplexFile, MapFile, SimplicialComplex, SimplicialMap,
};

use crate::read_json;
use crate::report::{bounds_report, render_text, BoundsReport};
use crate::scenario::execute_scenario;

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

/// Validates complex and map files.  Returns the rendered report plus a flag
/// telling whether everything passed.  Unreadable files are hard errors;
/// structural problems are collected per subject.
pub fn cmd_validate(files: &[PathBuf]) -> Result<(String, bool), Error> {
    enum Loaded {
        Complex(SimplicialComplex),
        /// The file parsed as JSON but could not be resolved into a complex
        /// (unknown vertex label, duplicate vertex, ...).
        Unresolvable { name: String, detail: String },
        Map(SimplicialMap),
    }

    let mut loaded = Vec::new();
    let mut complexes: BTreeMap<String, SimplicialComplex> = BTreeMap::new();
    for path in files {
        let value: serde_json::Value = read_json(path)?;
        if value.get("map").is_some() {
            let file: MapFile = serde_json::from_value(value)
                .map_err(|e| Error::Argument(format!("cannot parse `{}`: {e}", path.display())))?;
            loaded.push(Loaded::Map(file.into_map()));
        } else {
            let file: ComplexFile = serde_json::from_value(value)
                .map_err(|e| Error::Argument(format!("cannot parse `{}`: {e}", path.display())))?;
            let name = file.name.clone();
            match file.into_complex() {
                Ok(complex) => {
                    complexes.insert(complex.name().to_string(), complex.clone());
                    loaded.push(Loaded::Complex(complex));
                }
                Err(e) => loaded.push(Loaded::Unresolvable { name, detail: e.to_string() }),
            }
        }
    }

    let mut out = String::new();
    let mut all_valid = true;
    for item in &loaded {
        let report = match item {
            Loaded::Complex(complex) => validate_complex(complex),
            Loaded::Unresolvable { name, detail } => {
                let mut r = catbound::simplicial::ValidationReport::new(name);
                r.violations.push(detail.clone());
                r
            }
            Loaded::Map(map) => match (complexes.get(&map.source), complexes.get(&map.target)) {
                (Some(s), Some(t)) => validate_map(map, s, t),
                (s, t) => {
                    let mut r = catbound::simplicial::ValidationReport::new(&map.name);
                    if s.is_none() {
                        r.violations
                            .push(format!("source complex `{}` was not supplied", map.source));
                    }
                    if t.is_none() {
                        r.violations
                            .push(format!("target complex `{}` was not supplied", map.target));
                    }
                    r
                }
            },
        };
        all_valid &= report.is_valid();
        out.push_str(&report.to_string());
        if report.is_valid() {
            out.push('\n');
        }
    }
    Ok((out, all_valid))
}

// ---------------------------------------------------------------------------
// ring
// ---------------------------------------------------------------------------

pub fn cmd_ring(
    complex_path: &Path,
    pair: Option<&str>,
    field: &str,
    json: bool,
) -> Result<String, Error> {
    let field = CoefficientField::parse(field)?;
    let file: ComplexFile = read_json(complex_path)?;
    let complex = file.into_complex()?;
    let ring = build_ring(&complex, pair, field)?;
    let summary = ring.summary(&complex);
    if json {
        return Ok(to_pretty_json(&summary)?);
    }

    let mut out = String::new();
    let subject = match &summary.pair {
        Some(p) => format!("H^*({}, {}; {})", summary.complex, p, summary.field),
        None => format!("H^*({}; {})", summary.complex, summary.field),
    };
    out.push_str(&format!("{subject}\n"));
    out.push_str(&format!(
        "betti: ({})\n",
        summary
            .betti
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    if !summary.classes.is_empty() {
        out.push_str("classes:\n");
        for class in &summary.classes {
            out.push_str(&format!(
                "  {} (degree {}) = {}\n",
                class.name,
                class.degree,
                render_combination(&class.cocycle)
            ));
        }
    }
    if !summary.products.is_empty() {
        out.push_str("products (positive degrees):\n");
        for p in &summary.products {
            out.push_str(&format!(
                "  {} ⌣ {} = {}\n",
                p.left,
                p.right,
                render_combination(&p.result)
            ));
        }
    }
    Ok(out)
}

/// Renders `[(name, coeff)]` as `coeff·name + ...`, or `0` when empty.
fn render_combination(terms: &[(String, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (name, coeff) in terms {
        let (negative, magnitude) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, coeff.as_str()),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if magnitude == "1" {
            out.push_str(name);
        } else {
            out.push_str(magnitude);
            out.push('·');
            out.push_str(name);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// induced
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct InducedReport {
    pub map: String,
    pub source: String,
    pub target: String,
    pub field: String,
    /// One entry per basis class of the target's cohomology: its image under
    /// the pullback, written in the source's basis.
    pub entries: Vec<InducedEntry>,
}

#[derive(Serialize, Deserialize)]
pub struct InducedEntry {
    pub degree: usize,
    pub from: String,
    pub to: String,
}

pub fn cmd_induced(
    map_path: &Path,
    complex_paths: &[PathBuf],
    field: &str,
    json: bool,
) -> Result<String, Error> {
    let field = CoefficientField::parse(field)?;
    let map = load_map(map_path)?;
    let complexes = load_complexes(complex_paths)?;
    let source = find_complex(&complexes, &map.source)?;
    let target = find_complex(&complexes, &map.target)?;
    let phi = induced_map(&map, source, target, field)?;
    let report = induced_report(&phi, field);
    if json {
        return Ok(to_pretty_json(&report)?);
    }
    let mut out = String::new();
    out.push_str(&format!(
        "{}^*: H^*({}; {}) → H^*({}; {})\n",
        report.map, report.target, report.field, report.source, report.field
    ));
    for e in &report.entries {
        out.push_str(&format!("  degree {}: {} ↦ {}\n", e.degree, e.from, e.to));
    }
    Ok(out)
}

fn induced_report(phi: &RingMap, field: CoefficientField) -> InducedReport {
    let mut entries = Vec::new();
    for (degree, matrix) in phi.matrices.iter().enumerate() {
        for i in 0..phi.domain.dimension(degree) {
            let image = RingElement { degree, coords: matrix.column(i) };
            entries.push(InducedEntry {
                degree,
                from: phi.domain.describe_basis_element(degree, i),
                to: bounds::render_element(&*phi.codomain, &image),
            });
        }
    }
    InducedReport {
        map: phi.name.clone(),
        source: phi.codomain.cochains.complex_name.clone(),
        target: phi.domain.cochains.complex_name.clone(),
        field: field.to_string(),
        entries,
    }
}

// ---------------------------------------------------------------------------
// nil-image
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct SearchReport {
    pub operation: String,
    pub subject: String,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grade: Option<u8>,
    pub index: usize,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<NilWitness>,
}

/// `nil-image` has two forms: an explicit simplicial map (with its endpoint
/// complexes), or the identity map of a pair `(complex, subcomplex)`.
pub fn cmd_nil_image(
    map_path: Option<&Path>,
    complex_paths: &[PathBuf],
    pair: Option<&str>,
    field: &str,
    budget: &SearchBudget,
    json: bool,
) -> Result<String, Error> {
    let field = CoefficientField::parse(field)?;
    let complexes = load_complexes(complex_paths)?;
    let (phi, subject) = match (map_path, pair) {
        (Some(path), None) => {
            let map = load_map(path)?;
            let source = find_complex(&complexes, &map.source)?;
            let target = find_complex(&complexes, &map.target)?;
            let name = map.name.clone();
            (induced_map(&map, source, target, field)?, name)
        }
        (None, Some(pair)) => {
            if complexes.len() != 1 {
                return Err(Error::Argument(
                    "the identity form of nil-image takes exactly one --complex".to_string(),
                ));
            }
            let complex = &complexes[0];
            let map = identity_pair_map(complex, pair)?;
            let subject = format!("id_({}, {})", complex.name(), pair);
            (induced_map(&map, complex, complex, field)?, subject)
        }
        _ => {
            return Err(Error::Argument(
                "nil-image needs either --map with its --complex files, or --complex with --pair"
                    .to_string(),
            ))
        }
    };
    let outcome = bounds::nil_image(&phi, budget)?;
    let report = SearchReport {
        operation: "nil_image".to_string(),
        subject,
        field: field.to_string(),
        grade: None,
        index: outcome.index,
        exhaustive: outcome.exhaustive,
        witness: outcome.witness.clone(),
    };
    if json {
        return Ok(to_pretty_json(&report)?);
    }
    let mut out = format!(
        "nil(Im {}^*) over {} = {}{}\n",
        report.subject,
        report.field,
        report.index,
        exhaustive_tag(&outcome)
    );
    out.push_str(&render_witness(&*phi.codomain, &outcome)?);
    Ok(out)
}

fn identity_pair_map(complex: &SimplicialComplex, pair: &str) -> Result<SimplicialMap, Error> {
    complex.checked_subcomplex(pair)?;
    let image: Vec<usize> = (0..complex.vertex_count()).collect();
    let name = format!("id_{}", complex.name());
    Ok(SimplicialMap::from_indices(&name, complex, complex, &image).with_pairs(pair, pair))
}

// ---------------------------------------------------------------------------
// zcl
// ---------------------------------------------------------------------------

pub fn cmd_zcl(
    complex_path: &Path,
    grade: u8,
    field: &str,
    budget: &SearchBudget,
    json: bool,
) -> Result<String, Error> {
    if grade < 2 {
        return Err(Error::Argument(format!(
            "zcl grade must be at least 2, got {grade}"
        )));
    }
    let field = CoefficientField::parse(field)?;
    let file: ComplexFile = read_json(complex_path)?;
    let complex = file.into_complex()?;
    let ring = Arc::new(build_ring(&complex, None, field)?);
    let search = bounds::zcl(ring, grade as usize, budget)?;
    let report = SearchReport {
        operation: "zcl".to_string(),
        subject: complex.name().to_string(),
        field: field.to_string(),
        grade: Some(grade),
        index: search.outcome.index,
        exhaustive: search.outcome.exhaustive,
        witness: search.outcome.witness.clone(),
    };
    if json {
        return Ok(to_pretty_json(&report)?);
    }
    let mut out = format!(
        "zcl_{}({}; {}) = {}{}\n",
        grade,
        report.subject,
        report.field,
        report.index,
        exhaustive_tag(&search.outcome)
    );
    out.push_str(&render_witness(&*search.tensor, &search.outcome)?);
    Ok(out)
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

pub fn cmd_bounds(scenario_path: &Path, json: bool, certificates: bool) -> Result<String, Error> {
    let outcome = execute_scenario(scenario_path)?;
    let report: BoundsReport = bounds_report(&outcome)?;
    if json {
        Ok(to_pretty_json(&report)?)
    } else {
        Ok(render_text(&report, certificates))
    }
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

pub fn budget_from_flags(max_len: usize, search: &str) -> Result<SearchBudget, Error> {
    Ok(SearchBudget { max_len, mode: SearchMode::parse(search)? })
}

fn to_pretty_json<T: Serialize>(value: &T) -> Result<String, Error> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn load_map(path: &Path) -> Result<SimplicialMap, Error> {
    let file: MapFile = read_json(path)?;
    Ok(file.into_map())
}

fn load_complexes(paths: &[PathBuf]) -> Result<Vec<SimplicialComplex>, Error> {
    paths
        .iter()
        .map(|p| read_json::<ComplexFile>(p)?.into_complex())
        .collect()
}

fn find_complex<'a>(
    complexes: &'a [SimplicialComplex],
    name: &str,
) -> Result<&'a SimplicialComplex, Error> {
    complexes
        .iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| Error::Argument(format!("no --complex file provides complex `{name}`")))
}

fn exhaustive_tag(outcome: &NilOutcome) -> &'static str {
    if outcome.exhaustive {
        " (exhaustive)"
    } else {
        " (search-budget limited)"
    }
}

fn factor_element(field: &CoefficientField, factor: &WitnessFactor) -> Result<RingElement, Error> {
    bounds::parse_vector(
        field,
        &WitnessVector { degree: factor.degree, coords: factor.coords.clone() },
    )
}

/// Renders the witness product in its ambient ring, one factor per line.
fn render_witness(ring: &dyn GradedRing, outcome: &NilOutcome) -> Result<String, Error> {
    let Some(witness) = &outcome.witness else {
        return Ok("no non-zero product of positive length exists\n".to_string());
    };
    let field = ring.field();
    let mut out = format!("witness (non-zero product of length {}):\n", witness.length);
    for (i, factor) in witness.factors.iter().enumerate() {
        let element = factor_element(&field, factor)?;
        out.push_str(&format!(
            "  factor {} [{}], degree {}: {}\n",
            i + 1,
            factor.label,
            factor.degree,
            bounds::render_element(ring, &element)
        ));
    }
    let product = bounds::parse_vector(&field, &witness.product)?;
    out.push_str(&format!(
        "  product, degree {}: {}\n",
        witness.product.degree,
        bounds::render_element(ring, &product)
    ));
    Ok(out)
}
