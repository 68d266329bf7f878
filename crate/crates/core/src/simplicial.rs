//! Finite simplicial complexes, subcomplex pairs and simplicial maps.
//!
//! A complex stores its simplices as sorted vertex-index vectors in a
//! canonical order (dimension first, then lexicographic), which fixes the
//! orientation convention used by the cochain machinery: every simplex is
//! `[v_0 < v_1 < ... < v_k]`.
//!
//! Validation never throws on bad user data; it accumulates a
//! [`ValidationReport`] naming each violation so the CLI can print all of
//! them at once.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A simplex as a sorted vector of vertex indices into its complex.
pub type Simplex = Vec<usize>;

/// All codimension-one faces of a simplex, in the order "drop vertex i".
pub fn faces(simplex: &Simplex) -> Vec<Simplex> {
    (0..simplex.len())
        .map(|i| {
            let mut face = simplex.clone();
            face.remove(i);
            face
        })
        .collect()
}

/// A finite simplicial complex with named subcomplexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    name: String,
    vertex_labels: Vec<String>,
    /// Canonically ordered: by dimension, then lexicographically.
    simplices: Vec<Simplex>,
    simplex_set: BTreeSet<Simplex>,
    subcomplexes: BTreeMap<String, BTreeSet<Simplex>>,
}

impl SimplicialComplex {
    /// Builds a complex from vertex labels and simplices given as label sets.
    ///
    /// Structural garbage (unknown labels, a repeated vertex inside one
    /// simplex) is rejected here because it cannot be represented; everything
    /// else — missing faces, vertices without their 0-simplex — is left for
    /// [`validate_complex`] to report.
    pub fn from_parts(
        name: &str,
        vertex_labels: Vec<String>,
        simplices: Vec<Vec<String>>,
        subcomplexes: BTreeMap<String, Vec<Vec<String>>>,
    ) -> Result<Self, Error> {
        let index: BTreeMap<&str, usize> = vertex_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != vertex_labels.len() {
            return Err(Error::Argument(format!(
                "complex `{name}` lists a duplicate vertex label"
            )));
        }
        let resolve = |labels: &[String]| -> Result<Simplex, Error> {
            let mut simplex = Vec::with_capacity(labels.len());
            for l in labels {
                let &i = index.get(l.as_str()).ok_or_else(|| {
                    Error::Argument(format!("complex `{name}` uses unknown vertex `{l}`"))
                })?;
                simplex.push(i);
            }
            simplex.sort_unstable();
            if simplex.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Argument(format!(
                    "complex `{name}` lists a simplex with a repeated vertex: {labels:?}"
                )));
            }
            Ok(simplex)
        };
        let mut simplex_set = BTreeSet::new();
        for labels in &simplices {
            simplex_set.insert(resolve(labels)?);
        }
        let mut subs = BTreeMap::new();
        for (sub_name, sub_simplices) in subcomplexes {
            let mut set = BTreeSet::new();
            for labels in &sub_simplices {
                set.insert(resolve(labels)?);
            }
            subs.insert(sub_name, set);
        }
        Ok(Self::from_index_sets(name, vertex_labels, simplex_set, subs))
    }

    /// Builds a complex directly from vertex-index simplices (for fixtures
    /// and tests).  Vertices are labelled `v0, v1, ...`.
    pub fn from_indices(
        name: &str,
        vertex_count: usize,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Self {
        let labels = (0..vertex_count).map(|i| format!("v{i}")).collect();
        let set: BTreeSet<Simplex> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        Self::from_index_sets(name, labels, set, BTreeMap::new())
    }

    /// Builds the face closure of the given maximal simplices, including all
    /// vertices as 0-simplices.
    pub fn from_maximal(
        name: &str,
        vertex_count: usize,
        maximal: impl IntoIterator<Item = Simplex>,
    ) -> Self {
        let mut closed: BTreeSet<Simplex> = (0..vertex_count).map(|v| vec![v]).collect();
        let mut stack: Vec<Simplex> = maximal
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        while let Some(s) = stack.pop() {
            if closed.insert(s.clone()) && s.len() > 1 {
                stack.extend(faces(&s));
            }
        }
        let labels = (0..vertex_count).map(|i| format!("v{i}")).collect();
        Self::from_index_sets(name, labels, closed, BTreeMap::new())
    }

    fn from_index_sets(
        name: &str,
        vertex_labels: Vec<String>,
        simplex_set: BTreeSet<Simplex>,
        subcomplexes: BTreeMap<String, BTreeSet<Simplex>>,
    ) -> Self {
        let mut simplices: Vec<Simplex> = simplex_set.iter().cloned().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        SimplicialComplex {
            name: name.to_string(),
            vertex_labels,
            simplices,
            simplex_set,
            subcomplexes,
        }
    }

    /// Registers a named subcomplex given by vertex-index simplices.
    pub fn add_subcomplex(&mut self, name: &str, simplices: impl IntoIterator<Item = Simplex>) {
        let set = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        self.subcomplexes.insert(name.to_string(), set);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_label(&self, i: usize) -> &str {
        &self.vertex_labels[i]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    /// All simplices in canonical order (dimension, then lexicographic).
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn contains(&self, simplex: &Simplex) -> bool {
        self.simplex_set.contains(simplex)
    }

    /// The simplices of dimension `k`, in lexicographic order.
    pub fn simplices_of_dim(&self, k: usize) -> Vec<&Simplex> {
        self.simplices.iter().filter(|s| s.len() == k + 1).collect()
    }

    pub fn subcomplex(&self, name: &str) -> Option<&BTreeSet<Simplex>> {
        self.subcomplexes.get(name)
    }

    pub fn subcomplex_names(&self) -> impl Iterator<Item = &str> {
        self.subcomplexes.keys().map(|s| s.as_str())
    }

    /// Dimension of the complex; `None` when it has no simplices at all.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    /// Verifies that the named subcomplex exists, is contained in the complex
    /// and is itself face-closed.
    pub fn checked_subcomplex(&self, name: &str) -> Result<&BTreeSet<Simplex>, Error> {
        let sub = self.subcomplex(name).ok_or_else(|| Error::NotASubcomplex {
            complex: self.name.clone(),
            subcomplex: name.to_string(),
            detail: "no subcomplex of that name".to_string(),
        })?;
        for s in sub {
            if !self.contains(s) {
                return Err(Error::NotASubcomplex {
                    complex: self.name.clone(),
                    subcomplex: name.to_string(),
                    detail: format!("simplex {} is not in the complex", self.render_simplex(s)),
                });
            }
            for face in faces(s) {
                if !face.is_empty() && !sub.contains(&face) {
                    return Err(Error::NotASubcomplex {
                        complex: self.name.clone(),
                        subcomplex: name.to_string(),
                        detail: format!(
                            "face {} of {} is missing from the subcomplex",
                            self.render_simplex(&face),
                            self.render_simplex(s)
                        ),
                    });
                }
            }
        }
        Ok(sub)
    }

    /// Renders a simplex with its vertex labels, e.g. `{v0, v3}`.
    pub fn render_simplex(&self, simplex: &Simplex) -> String {
        let labels: Vec<&str> = simplex
            .iter()
            .map(|&v| {
                self.vertex_labels
                    .get(v)
                    .map(|l| l.as_str())
                    .unwrap_or("<out of range>")
            })
            .collect();
        format!("{{{}}}", labels.join(", "))
    }
}

/// Collected validation violations for one complex or map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub subject: String,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn new(subject: &str) -> Self {
        ValidationReport {
            subject: subject.to_string(),
            violations: Vec::new(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, violation: String) {
        self.violations.push(violation);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "{}: ok", self.subject)
        } else {
            writeln!(f, "{}: {} violation(s)", self.subject, self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  - {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks face-closure, non-emptiness, vertex coverage and the containment
/// and closure of every named subcomplex.
pub fn validate_complex(complex: &SimplicialComplex) -> ValidationReport {
    let mut report = ValidationReport::new(complex.name());
    if complex.vertex_count() == 0 {
        report.push("complex has no vertices".to_string());
    }
    if complex.simplices.is_empty() && complex.vertex_count() > 0 {
        report.push("complex lists no simplices".to_string());
    }
    for v in 0..complex.vertex_count() {
        if !complex.contains(&vec![v]) {
            report.push(format!(
                "vertex `{}` is not listed as a 0-simplex",
                complex.vertex_label(v)
            ));
        }
    }
    for s in &complex.simplices {
        if let Some(&v) = s.iter().find(|&&v| v >= complex.vertex_count()) {
            report.push(format!("simplex references vertex index {v} out of range"));
            continue;
        }
        for face in faces(s) {
            if !face.is_empty() && !complex.contains(&face) {
                report.push(format!(
                    "face {} of {} is missing (complex is not face-closed)",
                    complex.render_simplex(&face),
                    complex.render_simplex(s)
                ));
            }
        }
    }
    for (name, sub) in &complex.subcomplexes {
        for s in sub {
            if !complex.contains(s) {
                report.push(format!(
                    "subcomplex `{name}` lists {} which is not a simplex of the complex",
                    complex.render_simplex(s)
                ));
            }
            for face in faces(s) {
                if !face.is_empty() && !sub.contains(&face) {
                    report.push(format!(
                        "subcomplex `{name}` is not face-closed: missing face {} of {}",
                        complex.render_simplex(&face),
                        complex.render_simplex(s)
                    ));
                }
            }
        }
    }
    report
}

/// Number of connected components (union-find over the 1-skeleton).
pub fn connected_components(complex: &SimplicialComplex) -> usize {
    let n = complex.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for s in &complex.simplices {
        for w in s.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..n)
        .filter(|&v| find(&mut parent, v) == v)
        .count()
}

/// A simplicial map of (pairs of) complexes, stored by vertex labels so that
/// an invalid map is still representable and reportable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub name: String,
    pub source: String,
    pub target: String,
    pub source_pair: Option<String>,
    pub target_pair: Option<String>,
    pub vertex_image: BTreeMap<String, String>,
}

impl SimplicialMap {
    /// Builds a map from vertex-index assignments (for fixtures and tests).
    pub fn from_indices(
        name: &str,
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        image: &[usize],
    ) -> Self {
        assert_eq!(image.len(), source.vertex_count(), "one image per vertex");
        let vertex_image = image
            .iter()
            .enumerate()
            .map(|(v, &w)| {
                (
                    source.vertex_label(v).to_string(),
                    target.vertex_label(w).to_string(),
                )
            })
            .collect();
        SimplicialMap {
            name: name.to_string(),
            source: source.name().to_string(),
            target: target.name().to_string(),
            source_pair: None,
            target_pair: None,
            vertex_image,
        }
    }

    pub fn with_pairs(mut self, source_pair: &str, target_pair: &str) -> Self {
        self.source_pair = Some(source_pair.to_string());
        self.target_pair = Some(target_pair.to_string());
        self
    }

    /// Resolves the label-level vertex assignment into an index vector.
    /// Callers should run [`validate_map`] first; this errs on anything a
    /// valid map cannot contain.
    pub fn resolved_image(
        &self,
        source: &SimplicialComplex,
        target: &SimplicialComplex,
    ) -> Result<Vec<usize>, Error> {
        let mut image = Vec::with_capacity(source.vertex_count());
        for v in 0..source.vertex_count() {
            let label = source.vertex_label(v);
            let target_label = self.vertex_image.get(label).ok_or_else(|| {
                Error::Argument(format!("map `{}` does not assign vertex `{label}`", self.name))
            })?;
            let w = target.vertex_index(target_label).ok_or_else(|| {
                Error::Argument(format!(
                    "map `{}` sends `{label}` to unknown vertex `{target_label}`",
                    self.name
                ))
            })?;
            image.push(w);
        }
        Ok(image)
    }
}

/// Image of a simplex under a resolved vertex map: `None` when the image is
/// degenerate (two vertices collapse), otherwise the sorted image simplex and
/// the sign of the permutation that sorted it.
pub fn image_simplex(simplex: &Simplex, vertex_image: &[usize]) -> Option<(Simplex, i64)> {
    let mut image: Vec<usize> = simplex.iter().map(|&v| vertex_image[v]).collect();
    // Count inversions while sorting to track the permutation sign.
    let mut sign = 1i64;
    for i in 1..image.len() {
        let mut j = i;
        while j > 0 && image[j - 1] > image[j] {
            image.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if image.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((image, sign))
    }
}

/// Checks that a map is simplicial: every vertex has an image, every simplex
/// lands on a simplex, and declared pairs satisfy `f(C) ⊆ A`.
pub fn validate_map(
    map: &SimplicialMap,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
) -> ValidationReport {
    let mut report = ValidationReport::new(&map.name);
    if map.source != source.name() || map.target != target.name() {
        report.push(format!(
            "map declares source `{}` and target `{}`, got complexes `{}` and `{}`",
            map.source,
            map.target,
            source.name(),
            target.name()
        ));
        return report;
    }
    let mut resolved: Vec<Option<usize>> = vec![None; source.vertex_count()];
    for v in 0..source.vertex_count() {
        let label = source.vertex_label(v);
        match map.vertex_image.get(label) {
            None => report.push(format!("vertex `{label}` has no image")),
            Some(target_label) => match target.vertex_index(target_label) {
                None => report.push(format!(
                    "vertex `{label}` is sent to `{target_label}`, which is not a vertex of `{}`",
                    target.name()
                )),
                Some(w) => resolved[v] = Some(w),
            },
        }
    }
    for label in map.vertex_image.keys() {
        if source.vertex_index(label).is_none() {
            report.push(format!(
                "vertex_image mentions `{label}`, which is not a vertex of `{}`",
                source.name()
            ));
        }
    }
    // Simplex images only make sense once every vertex resolves.
    if resolved.iter().all(|r| r.is_some()) {
        let image: Vec<usize> = resolved.into_iter().map(|r| r.unwrap()).collect();
        for s in source.simplices() {
            if let Some((img, _)) = image_simplex(s, &image) {
                if !target.contains(&img) {
                    report.push(format!(
                        "simplex {} maps to {}, which is not a simplex of `{}`",
                        source.render_simplex(s),
                        target.render_simplex(&img),
                        target.name()
                    ));
                }
            }
            // A degenerate image is fine: the simplex collapses.
        }
        match (&map.source_pair, &map.target_pair) {
            (None, None) => {}
            (Some(_), None) | (None, Some(_)) => {
                report.push("pair structure requires both source_pair and target_pair".to_string());
            }
            (Some(sp), Some(tp)) => match (source.subcomplex(sp), target.subcomplex(tp)) {
                (None, _) => report.push(format!(
                    "source pair `{sp}` is not a subcomplex of `{}`",
                    source.name()
                )),
                (_, None) => report.push(format!(
                    "target pair `{tp}` is not a subcomplex of `{}`",
                    target.name()
                )),
                (Some(sub_c), Some(sub_a)) => {
                    for s in sub_c {
                        if let Some((img, _)) = image_simplex(s, &image) {
                            if !sub_a.contains(&img) {
                                report.push(format!(
                                    "pair condition fails: {} in `{sp}` maps to {} outside `{tp}`",
                                    source.render_simplex(s),
                                    target.render_simplex(&img)
                                ));
                            }
                        }
                    }
                }
            },
        }
    }
    report
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

/// On-disk form of a complex.
#[derive(Serialize, Deserialize)]
pub struct ComplexFile {
    pub name: String,
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subcomplexes: BTreeMap<String, Vec<Vec<String>>>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<SimplicialComplex, Error> {
        SimplicialComplex::from_parts(&self.name, self.vertices, self.simplices, self.subcomplexes)
    }

    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        let render = |s: &Simplex| -> Vec<String> {
            s.iter()
                .map(|&v| complex.vertex_label(v).to_string())
                .collect()
        };
        ComplexFile {
            name: complex.name().to_string(),
            vertices: complex.vertex_labels.clone(),
            simplices: complex.simplices().iter().map(render).collect(),
            subcomplexes: complex
                .subcomplexes
                .iter()
                .map(|(name, set)| {
                    let mut listed: Vec<&Simplex> = set.iter().collect();
                    listed.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                    (name.clone(), listed.into_iter().map(render).collect())
                })
                .collect(),
        }
    }
}

/// On-disk form of a map: `{"map": {...}}`.
#[derive(Serialize, Deserialize)]
pub struct MapFile {
    pub map: MapFileBody,
}

#[derive(Serialize, Deserialize)]
pub struct MapFileBody {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_pair: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_pair: Option<String>,
    pub vertex_image: BTreeMap<String, String>,
}

impl MapFile {
    pub fn into_map(self) -> SimplicialMap {
        let body = self.map;
        let name = body
            .name
            .unwrap_or_else(|| format!("{}->{}", body.source, body.target));
        SimplicialMap {
            name,
            source: body.source,
            target: body.target,
            source_pair: body.source_pair,
            target_pair: body.target_pair,
            vertex_image: body.vertex_image,
        }
    }

    pub fn from_map(map: &SimplicialMap) -> Self {
        MapFile {
            map: MapFileBody {
                name: Some(map.name.clone()),
                source: map.source.clone(),
                target: map.target.clone(),
                source_pair: map.source_pair.clone(),
                target_pair: map.target_pair.clone(),
                vertex_image: map.vertex_image.clone(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn triangle_boundary_is_valid() {
        let c = fixtures::circle(3);
        let report = validate_complex(&c);
        assert!(report.is_valid(), "unexpected violations: {report}");
        assert_eq!(c.dimension(), Some(1));
        assert_eq!(connected_components(&c), 1);
    }

    #[test]
    fn missing_face_is_reported_by_name() {
        let c = SimplicialComplex::from_indices(
            "broken",
            3,
            vec![vec![0], vec![1], vec![2], vec![0, 1, 2]],
        );
        let report = validate_complex(&c);
        assert!(!report.is_valid());
        assert!(
            report.violations.iter().any(|v| v.contains("{v0, v1}")),
            "the missing edge should be named: {report}"
        );
    }

    #[test]
    fn vertex_without_zero_simplex_is_reported() {
        let c = SimplicialComplex::from_indices("lonely", 2, vec![vec![0]]);
        let report = validate_complex(&c);
        assert!(report.violations.iter().any(|v| v.contains("v1")));
    }

    #[test]
    fn empty_complex_is_reported() {
        let c = SimplicialComplex::from_indices("empty", 0, Vec::<Simplex>::new());
        assert!(!validate_complex(&c).is_valid());
    }

    #[test]
    fn subcomplex_closure_checked() {
        let mut c = fixtures::circle(3);
        c.add_subcomplex("bad", vec![vec![0, 1]]); // edge without its vertices
        let report = validate_complex(&c);
        assert!(report.violations.iter().any(|v| v.contains("bad")));
        assert!(c.checked_subcomplex("bad").is_err());
        assert!(matches!(
            c.checked_subcomplex("nonexistent"),
            Err(Error::NotASubcomplex { .. })
        ));
    }

    #[test]
    fn degree_two_map_validates() {
        let hexagon = fixtures::circle(6);
        let triangle = fixtures::circle(3);
        let f = fixtures::degree_map(&hexagon, &triangle);
        let report = validate_map(&f, &hexagon, &triangle);
        assert!(report.is_valid(), "unexpected violations: {report}");
    }

    #[test]
    fn non_simplicial_map_names_the_edge() {
        // Send the two endpoints of edge {v0, v1} to non-adjacent vertices of
        // a square circle: v0 -> v0 and v1 -> v2.
        let edge = SimplicialComplex::from_maximal("edge", 2, vec![vec![0, 1]]);
        let square = fixtures::circle(4);
        let f = SimplicialMap::from_indices("bad", &edge, &square, &[0, 2]);
        let report = validate_map(&f, &edge, &square);
        assert!(!report.is_valid());
        assert!(
            report.violations.iter().any(|v| v.contains("{v0, v1}")),
            "the offending edge should be named: {report}"
        );
    }

    #[test]
    fn pair_condition_checked() {
        let disk = fixtures::disk_pair();
        let id_ok = fixtures::identity_map(&disk).with_pairs("boundary", "boundary");
        assert!(validate_map(&id_ok, &disk, &disk).is_valid());

        // Collapsing everything to vertex v0 sends the boundary inside the
        // disk but v0 stays in the boundary subcomplex, so the pair condition
        // holds; instead map into a pair that does not exist.
        let bad_pair = fixtures::identity_map(&disk).with_pairs("boundary", "nonexistent");
        let report = validate_map(&bad_pair, &disk, &disk);
        assert!(report.violations.iter().any(|v| v.contains("nonexistent")));
    }

    #[test]
    fn image_simplex_signs() {
        // Identity keeps orientation.
        assert_eq!(image_simplex(&vec![0, 1], &[0, 1]), Some((vec![0, 1], 1)));
        // Swapping two vertices flips the sign.
        assert_eq!(image_simplex(&vec![0, 1], &[1, 0]), Some((vec![0, 1], -1)));
        // A collapse is degenerate.
        assert_eq!(image_simplex(&vec![0, 1], &[0, 0]), None);
        // A 3-cycle has even parity.
        assert_eq!(
            image_simplex(&vec![0, 1, 2], &[1, 2, 0]),
            Some((vec![0, 1, 2], 1))
        );
    }

    #[test]
    fn components_of_disjoint_union() {
        let two_edges = SimplicialComplex::from_maximal("two-edges", 4, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(connected_components(&two_edges), 2);
    }

    #[test]
    fn complex_json_round_trip() {
        let torus = fixtures::torus9();
        let file = ComplexFile::from_complex(&torus);
        let text = serde_json::to_string_pretty(&file).unwrap();
        let parsed: ComplexFile = serde_json::from_str(&text).unwrap();
        let back = parsed.into_complex().unwrap();
        assert_eq!(back, torus);
    }

    #[test]
    fn map_json_round_trip() {
        let hexagon = fixtures::circle(6);
        let triangle = fixtures::circle(3);
        let f = fixtures::degree_map(&hexagon, &triangle);
        let file = MapFile::from_map(&f);
        let text = serde_json::to_string_pretty(&file).unwrap();
        let parsed: MapFile = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.into_map(), f);
    }
}
