//! Simplicial cochain complexes and cup-product cohomology rings, absolute
//! (`H^*(X)`) and relative (`H^*(X, A)`), over an exact coefficient field.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * Simplices are sorted vertex lists `[v_0 < ... < v_k]`; a k-cochain is a
//!   coordinate vector over the canonical list of k-simplices (omitting the
//!   simplices of `A` in the relative case — relative cochains vanish on `A`).
//! * The coboundary is `(δφ)(τ) = Σ_i (-1)^i φ(τ with vertex i dropped)`.
//! * The cup product is front-face/back-face:
//!   `(α ⌣ β)(v_0..v_{p+q}) = α(v_0..v_p) · β(v_p..v_{p+q})`.
//!
//! Cohomology bases are chosen deterministically: representatives are the
//! first kernel vectors (in reduced-echelon order) that are independent
//! modulo coboundaries, so identical inputs give identical bases, signs and
//! structure constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::{CoefficientField, Scalar};
use crate::matrix::Matrix;
use crate::simplicial::{
    image_simplex, validate_map, Simplex, SimplicialComplex, SimplicialMap,
};

/// The (relative) simplicial cochain complex of a pair, with explicit
/// coboundary matrices.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub field: CoefficientField,
    pub complex_name: String,
    pub subcomplex_name: Option<String>,
    /// `bases[k]` lists the k-simplices indexing `C^k`, in lexicographic order.
    pub bases: Vec<Vec<Simplex>>,
    basis_index: Vec<BTreeMap<Simplex, usize>>,
    /// `coboundaries[k] : C^k -> C^{k+1}`; the last one maps into a
    /// zero-dimensional space.
    pub coboundaries: Vec<Matrix>,
}

/// Builds the cochain complex of `(X, A)`; pass `None` for the absolute case.
pub fn build_cochain_complex(
    complex: &SimplicialComplex,
    subcomplex: Option<&str>,
    field: CoefficientField,
) -> Result<CochainComplex, Error> {
    field.validate()?;
    let excluded = match subcomplex {
        Some(name) => Some(complex.checked_subcomplex(name)?),
        None => None,
    };
    let top = complex.dimension().ok_or_else(|| {
        Error::Argument(format!("complex `{}` has no simplices", complex.name()))
    })?;
    let mut bases: Vec<Vec<Simplex>> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let basis: Vec<Simplex> = complex
            .simplices_of_dim(k)
            .into_iter()
            .filter(|s| excluded.map_or(true, |a| !a.contains(*s)))
            .cloned()
            .collect();
        bases.push(basis);
    }
    let basis_index: Vec<BTreeMap<Simplex, usize>> = bases
        .iter()
        .map(|basis| {
            basis
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect()
        })
        .collect();
    let mut coboundaries = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let rows = if k + 1 <= top { bases[k + 1].len() } else { 0 };
        let mut delta = Matrix::zeros(field, rows, bases[k].len());
        if k + 1 <= top {
            for (row, tau) in bases[k + 1].iter().enumerate() {
                for i in 0..tau.len() {
                    let mut face = tau.clone();
                    face.remove(i);
                    // Faces inside A are not part of the relative basis; the
                    // cochain vanishes there, so they contribute nothing.
                    if let Some(&col) = basis_index[k].get(&face) {
                        let sign = field.from_i64(if i % 2 == 0 { 1 } else { -1 });
                        let entry = field.add(delta.get(row, col), &sign);
                        delta.set(row, col, entry);
                    }
                }
            }
        }
        coboundaries.push(delta);
    }
    Ok(CochainComplex {
        field,
        complex_name: complex.name().to_string(),
        subcomplex_name: subcomplex.map(|s| s.to_string()),
        bases,
        basis_index,
        coboundaries,
    })
}

impl CochainComplex {
    pub fn top_dimension(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim_cochains(&self, k: usize) -> usize {
        self.bases.get(k).map_or(0, |b| b.len())
    }

    /// Index of a simplex in the degree-k basis (`None` when it lies in `A`
    /// or outside the complex).
    pub fn index_of(&self, k: usize, simplex: &Simplex) -> Option<usize> {
        self.basis_index.get(k)?.get(simplex).copied()
    }

    /// Front-face/back-face cup product of cochains of degrees `p` and `q`.
    pub fn cup_cochains(&self, p: usize, alpha: &[Scalar], q: usize, beta: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        assert_eq!(alpha.len(), self.dim_cochains(p), "degree-p cochain length");
        assert_eq!(beta.len(), self.dim_cochains(q), "degree-q cochain length");
        let n = self.dim_cochains(p + q);
        let mut out = vec![f.zero(); n];
        if n == 0 {
            return out;
        }
        for (row, sigma) in self.bases[p + q].iter().enumerate() {
            let front: Simplex = sigma[..=p].to_vec();
            let back: Simplex = sigma[p..].to_vec();
            let a = self.index_of(p, &front).map(|i| &alpha[i]);
            let b = self.index_of(q, &back).map(|j| &beta[j]);
            if let (Some(a), Some(b)) = (a, b) {
                out[row] = f.mul(a, b);
            }
        }
        out
    }
}

/// A homogeneous element of a graded ring, as coordinates over the chosen
/// class basis of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub degree: usize,
    pub coords: Vec<Scalar>,
}

impl RingElement {
    pub fn zero(degree: usize, dim: usize, field: &CoefficientField) -> Self {
        RingElement {
            degree,
            coords: vec![field.zero(); dim],
        }
    }

    pub fn basis(degree: usize, dim: usize, index: usize, field: &CoefficientField) -> Self {
        let mut e = Self::zero(degree, dim, field);
        e.coords[index] = field.one();
        e
    }

    pub fn is_zero(&self, field: &CoefficientField) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }

    pub fn add(&self, other: &RingElement, field: &CoefficientField) -> Self {
        assert_eq!(self.degree, other.degree, "can only add within one degree");
        RingElement {
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &RingElement, field: &CoefficientField) -> Self {
        assert_eq!(self.degree, other.degree, "can only subtract within one degree");
        RingElement {
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| field.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar, field: &CoefficientField) -> Self {
        RingElement {
            degree: self.degree,
            coords: self.coords.iter().map(|c| field.mul(c, factor)).collect(),
        }
    }

    /// Renders coordinates in the report format, e.g. `[1, -1, 0]`.
    pub fn render_coords(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.render()).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// The interface the witness search works against: both cohomology rings and
/// their tensor powers expose graded dimensions and an exact product.
pub trait GradedRing {
    fn field(&self) -> CoefficientField;
    /// Dimension of the degree-`k` piece (0 beyond the top degree).
    fn dimension(&self, degree: usize) -> usize;
    /// The largest degree with a non-zero piece (0 for the zero ring).
    fn top_degree(&self) -> usize;
    fn multiply(&self, a: &RingElement, b: &RingElement) -> RingElement;
    /// Human-readable name of a basis class, e.g. `h1_0` or `h1_0⊗h0_0`.
    fn describe_basis_element(&self, degree: usize, index: usize) -> String;

    fn total_dimension(&self) -> usize {
        (0..=self.top_degree()).map(|k| self.dimension(k)).sum()
    }

    fn basis_element(&self, degree: usize, index: usize) -> RingElement {
        RingElement::basis(degree, self.dimension(degree), index, &self.field())
    }

    fn zero_element(&self, degree: usize) -> RingElement {
        RingElement::zero(degree, self.dimension(degree), &self.field())
    }
}

/// The cohomology ring of a pair: chosen representative cocycles per degree
/// plus the full table of structure constants.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    pub cochains: CochainComplex,
    /// `reps[k][i]` = representative cocycle of the i-th degree-k class.
    reps: Vec<Vec<Vec<Scalar>>>,
    /// Per degree the matrix `[coboundary columns | representatives]` used to
    /// express an arbitrary cocycle in class coordinates.
    express: Vec<Matrix>,
    boundary_col_count: Vec<usize>,
    /// `(p, i, q, j) -> coordinates of (basis p,i) ⌣ (basis q,j)` in degree `p+q`.
    products: BTreeMap<(usize, usize, usize, usize), Vec<Scalar>>,
    /// Class of the constant-1 cocycle; `None` for relative rings.
    unit: Option<RingElement>,
}

/// Computes the cohomology ring of `(X, A)` with chosen representatives and
/// all pairwise structure constants.
pub fn build_ring(
    complex: &SimplicialComplex,
    subcomplex: Option<&str>,
    field: CoefficientField,
) -> Result<CohomologyRing, Error> {
    let cochains = build_cochain_complex(complex, subcomplex, field)?;
    let top = cochains.top_dimension();
    let mut reps: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(top + 1);
    let mut express = Vec::with_capacity(top + 1);
    let mut boundary_col_count = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let dim = cochains.dim_cochains(k);
        let cocycles = cochains.coboundaries[k].kernel_basis();
        let mut columns: Vec<Vec<Scalar>> = if k == 0 {
            Vec::new()
        } else {
            (0..cochains.coboundaries[k - 1].cols)
                .map(|j| cochains.coboundaries[k - 1].column(j))
                .collect()
        };
        boundary_col_count.push(columns.len());
        columns.extend(cocycles.iter().cloned());
        let candidate_matrix = Matrix::from_columns(field, dim, &columns);
        let profile = candidate_matrix.column_rank_profile();
        let chosen: Vec<Vec<Scalar>> = profile
            .iter()
            .filter(|&&c| c >= boundary_col_count[k])
            .map(|&c| columns[c].clone())
            .collect();
        // Solve against [coboundaries | representatives]: the representative
        // coordinates of a cocycle are unique because the representatives are
        // independent modulo coboundaries.
        let mut express_cols: Vec<Vec<Scalar>> = columns[..boundary_col_count[k]].to_vec();
        express_cols.extend(chosen.iter().cloned());
        express.push(Matrix::from_columns(field, dim, &express_cols));
        reps.push(chosen);
    }
    let mut ring = CohomologyRing {
        cochains,
        reps,
        express,
        boundary_col_count,
        products: BTreeMap::new(),
        unit: None,
    };
    ring.fill_structure_constants();
    if subcomplex.is_none() {
        let ones = vec![field.one(); ring.cochains.dim_cochains(0)];
        let unit = ring.express_cocycle(0, &ones)?;
        ring.unit = Some(unit);
    }
    Ok(ring)
}

impl CohomologyRing {
    pub fn field_value(&self) -> CoefficientField {
        self.cochains.field
    }

    pub fn is_relative(&self) -> bool {
        self.cochains.subcomplex_name.is_some()
    }

    /// Betti numbers `dim H^k` for `k = 0..=top`.
    pub fn betti(&self) -> Vec<usize> {
        self.reps.iter().map(|r| r.len()).collect()
    }

    pub fn class_count(&self, degree: usize) -> usize {
        self.reps.get(degree).map_or(0, |r| r.len())
    }

    /// The representative cocycle of a basis class.
    pub fn representative(&self, degree: usize, index: usize) -> &[Scalar] {
        &self.reps[degree][index]
    }

    /// The class of the constant-1 cocycle (absolute rings only).
    pub fn unit(&self) -> Option<&RingElement> {
        self.unit.as_ref()
    }

    /// Writes a cocycle in class coordinates, reducing modulo coboundaries.
    /// Errs if the cochain is not a cocycle of this complex.
    pub fn express_cocycle(&self, degree: usize, cochain: &[Scalar]) -> Result<RingElement, Error> {
        let dim = self.cochains.dim_cochains(degree);
        if cochain.len() != dim {
            return Err(Error::DomainMismatch(format!(
                "cochain has {} coordinates, degree-{degree} basis has {dim}",
                cochain.len()
            )));
        }
        if degree > self.cochains.top_dimension() {
            return Ok(self.zero_element(degree)); // nothing lives up there
        }
        if self.class_count(degree) == 0 {
            // Still check the cochain really is a coboundary (zero class).
            self.express[degree].solve(cochain).ok_or_else(|| {
                Error::Argument(format!("cochain is not a cocycle in degree {degree}"))
            })?;
            return Ok(self.zero_element(degree));
        }
        let x = self.express[degree].solve(cochain).ok_or_else(|| {
            Error::Argument(format!("cochain is not a cocycle in degree {degree}"))
        })?;
        Ok(RingElement {
            degree,
            coords: x[self.boundary_col_count[degree]..].to_vec(),
        })
    }

    /// The cochain representative of a class element (linear combination of
    /// the chosen representative cocycles).
    pub fn cocycle_of(&self, element: &RingElement) -> Vec<Scalar> {
        let f = self.field_value();
        let dim = self.cochains.dim_cochains(element.degree);
        let mut out = vec![f.zero(); dim];
        for (i, coeff) in element.coords.iter().enumerate() {
            if f.is_zero(coeff) {
                continue;
            }
            for (row, v) in self.reps[element.degree][i].iter().enumerate() {
                out[row] = f.add(&out[row], &f.mul(v, coeff));
            }
        }
        out
    }

    fn fill_structure_constants(&mut self) {
        let top = self.cochains.top_dimension();
        for p in 0..=top {
            for q in 0..=(top - p) {
                for i in 0..self.class_count(p) {
                    for j in 0..self.class_count(q) {
                        let cochain = self.cochains.cup_cochains(
                            p,
                            &self.reps[p][i],
                            q,
                            &self.reps[q][j],
                        );
                        let class = self
                            .express_cocycle(p + q, &cochain)
                            .expect("cup product of cocycles is a cocycle");
                        self.products.insert((p, i, q, j), class.coords);
                    }
                }
            }
        }
    }

    /// The structure-constant coordinates of `(p,i) ⌣ (q,j)`, if within range.
    pub fn structure_constants(&self, p: usize, i: usize, q: usize, j: usize) -> Option<&[Scalar]> {
        self.products.get(&(p, i, q, j)).map(|v| v.as_slice())
    }
}

impl GradedRing for CohomologyRing {
    fn field(&self) -> CoefficientField {
        self.cochains.field
    }

    fn dimension(&self, degree: usize) -> usize {
        self.class_count(degree)
    }

    fn top_degree(&self) -> usize {
        (0..=self.cochains.top_dimension())
            .rev()
            .find(|&k| self.class_count(k) > 0)
            .unwrap_or(0)
    }

    fn multiply(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = self.field();
        let degree = a.degree + b.degree;
        let mut out = self.zero_element(degree);
        if self.dimension(degree) == 0 {
            return out;
        }
        for (i, x) in a.coords.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let sc = self
                    .structure_constants(a.degree, i, b.degree, j)
                    .expect("structure constants cover all basis pairs");
                let factor = f.mul(x, y);
                for (row, c) in sc.iter().enumerate() {
                    out.coords[row] = f.add(&out.coords[row], &f.mul(c, &factor));
                }
            }
        }
        out
    }

    fn describe_basis_element(&self, degree: usize, index: usize) -> String {
        format!("h{degree}_{index}")
    }
}

/// Cup product of two classes of one ring (the public spelling of
/// [`GradedRing::multiply`]).
pub fn cup(ring: &CohomologyRing, a: &RingElement, b: &RingElement) -> RingElement {
    ring.multiply(a, b)
}

/// Cup product `H^p(X, A) ⊗ H^q(X) -> H^{p+q}(X, A)`: a relative class cupped
/// with an absolute one stays relative, because a front face inside `A`
/// already kills the product there.
pub fn cup_relative_absolute(
    relative: &CohomologyRing,
    absolute: &CohomologyRing,
    a: &RingElement,
    b: &RingElement,
) -> Result<RingElement, Error> {
    if relative.cochains.complex_name != absolute.cochains.complex_name {
        return Err(Error::DomainMismatch(
            "mixed cup product needs both rings over the same complex".to_string(),
        ));
    }
    if !relative.is_relative() || absolute.is_relative() {
        return Err(Error::DomainMismatch(
            "mixed cup product takes a relative class and an absolute class".to_string(),
        ));
    }
    if relative.field_value() != absolute.field_value() {
        return Err(Error::DomainMismatch("coefficient fields differ".to_string()));
    }
    let f = relative.field_value();
    let p = a.degree;
    let q = b.degree;
    let alpha = relative.cocycle_of(a);
    let beta = absolute.cocycle_of(b);
    let n = relative.cochains.dim_cochains(p + q);
    let mut cochain = vec![f.zero(); n];
    for (row, sigma) in relative
        .cochains
        .bases
        .get(p + q)
        .map(|b| b.as_slice())
        .unwrap_or(&[])
        .iter()
        .enumerate()
    {
        let front: Simplex = sigma[..=p].to_vec();
        let back: Simplex = sigma[p..].to_vec();
        let x = relative.cochains.index_of(p, &front).map(|i| &alpha[i]);
        let y = absolute.cochains.index_of(q, &back).map(|j| &beta[j]);
        if let (Some(x), Some(y)) = (x, y) {
            cochain[row] = f.mul(x, y);
        }
    }
    relative.express_cocycle(p + q, &cochain)
}

/// The contravariant ring map `f^* : H^*(Y, B) -> H^*(X, A)` induced by a
/// simplicial map `f : (X, A) -> (Y, B)`.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub name: String,
    /// `H^*` of the map's target (pair).
    pub domain: Arc<CohomologyRing>,
    /// `H^*` of the map's source (pair).
    pub codomain: Arc<CohomologyRing>,
    /// `matrices[k]`: codomain class coordinates of the pullback of each
    /// domain basis class.
    pub matrices: Vec<Matrix>,
}

/// Builds the induced ring map of a (pair) map, constructing both rings.
pub fn induced_map(
    map: &SimplicialMap,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    field: CoefficientField,
) -> Result<RingMap, Error> {
    let domain = Arc::new(build_ring(target, map.target_pair.as_deref(), field)?);
    let codomain = Arc::new(build_ring(source, map.source_pair.as_deref(), field)?);
    induced_map_between(map, source, target, domain, codomain)
}

/// Like [`induced_map`], but reusing already-built rings (they must match the
/// map's pairs and share one field).
pub fn induced_map_between(
    map: &SimplicialMap,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    domain: Arc<CohomologyRing>,
    codomain: Arc<CohomologyRing>,
) -> Result<RingMap, Error> {
    let report = validate_map(map, source, target);
    if !report.is_valid() {
        return Err(Error::InvalidInput {
            name: map.name.clone(),
            report: report.to_string(),
        });
    }
    if domain.cochains.complex_name != map.target
        || domain.cochains.subcomplex_name.as_deref() != map.target_pair.as_deref()
    {
        return Err(Error::DomainMismatch(format!(
            "domain ring is over ({}, {:?}), map targets ({}, {:?})",
            domain.cochains.complex_name,
            domain.cochains.subcomplex_name,
            map.target,
            map.target_pair
        )));
    }
    if codomain.cochains.complex_name != map.source
        || codomain.cochains.subcomplex_name.as_deref() != map.source_pair.as_deref()
    {
        return Err(Error::DomainMismatch(format!(
            "codomain ring is over ({}, {:?}), map starts at ({}, {:?})",
            codomain.cochains.complex_name,
            codomain.cochains.subcomplex_name,
            map.source,
            map.source_pair
        )));
    }
    if domain.field_value() != codomain.field_value() {
        return Err(Error::DomainMismatch("coefficient fields differ".to_string()));
    }
    let field = domain.field_value();
    let vertex_image = map.resolved_image(source, target)?;
    let top = codomain.cochains.top_dimension();
    let mut matrices = Vec::new();
    for k in 0..=domain.cochains.top_dimension() {
        let rows = codomain.class_count(k);
        let cols = domain.class_count(k);
        let mut m = Matrix::zeros(field, rows, cols);
        if cols == 0 {
            matrices.push(m);
            continue;
        }
        for j in 0..cols {
            if k > top {
                continue; // source complex has no simplices up there
            }
            let phi = domain.representative(k, j);
            // Pull the cocycle back along f: (f^# φ)(σ) = sign(σ) · φ(f(σ)).
            let dim = codomain.cochains.dim_cochains(k);
            let mut pulled = vec![field.zero(); dim];
            for (row, sigma) in codomain.cochains.bases[k].iter().enumerate() {
                if let Some((image, sign)) = image_simplex(sigma, &vertex_image) {
                    if let Some(col) = domain.cochains.index_of(k, &image) {
                        pulled[row] = field.mul(&phi[col], &field.from_i64(sign));
                    }
                }
            }
            let class = codomain
                .express_cocycle(k, &pulled)
                .expect("pullback of a cocycle along a chain map is a cocycle");
            for (row, c) in class.coords.iter().enumerate() {
                m.set(row, j, c.clone());
            }
        }
        matrices.push(m);
    }
    Ok(RingMap {
        name: map.name.clone(),
        domain,
        codomain,
        matrices,
    })
}

impl RingMap {
    /// Applies the pullback to a domain class.
    pub fn apply(&self, element: &RingElement) -> RingElement {
        let k = element.degree;
        match self.matrices.get(k) {
            Some(m) => RingElement {
                degree: k,
                coords: m.apply(&element.coords),
            },
            None => self.codomain.zero_element(k),
        }
    }

    /// Composition `self ∘ inner` (apply `inner` first).  For simplicial maps
    /// this realises contravariance: `(g ∘ f)^* = f^* ∘ g^*`.
    pub fn compose_after(&self, inner: &RingMap) -> Result<RingMap, Error> {
        if inner.codomain.cochains.complex_name != self.domain.cochains.complex_name
            || inner.codomain.cochains.subcomplex_name != self.domain.cochains.subcomplex_name
        {
            return Err(Error::DomainMismatch(
                "ring maps do not compose: inner codomain differs from outer domain".to_string(),
            ));
        }
        let mut matrices = Vec::new();
        for k in 0..=inner.domain.cochains.top_dimension() {
            let inner_m = &inner.matrices[k];
            match self.matrices.get(k) {
                Some(outer_m) => matrices.push(outer_m.mul(inner_m)),
                None => matrices.push(Matrix::zeros(
                    self.codomain.field_value(),
                    self.codomain.class_count(k),
                    inner_m.cols,
                )),
            }
        }
        Ok(RingMap {
            name: format!("{}∘{}", self.name, inner.name),
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrices,
        })
    }

    /// Checks multiplicativity `f^*(x ⌣ y) = f^*(x) ⌣ f^*(y)` on every basis
    /// pair whose product degree is within range.
    pub fn multiplicative_on_basis(&self) -> bool {
        let top = self.domain.cochains.top_dimension();
        for p in 0..=top {
            for q in 0..=(top - p) {
                for i in 0..self.domain.class_count(p) {
                    for j in 0..self.domain.class_count(q) {
                        let x = self.domain.basis_element(p, i);
                        let y = self.domain.basis_element(q, j);
                        let lhs = self.apply(&self.domain.multiply(&x, &y));
                        let rhs = self.codomain.multiply(&self.apply(&x), &self.apply(&y));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Serialisable ring summary (for the CLI `ring` command)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct RingSummary {
    pub complex: String,
    pub pair: Option<String>,
    pub field: String,
    pub betti: Vec<usize>,
    pub classes: Vec<ClassSummary>,
    pub products: Vec<ProductSummary>,
}

#[derive(Serialize, Deserialize)]
pub struct ClassSummary {
    pub name: String,
    pub degree: usize,
    /// The representative cocycle as `simplex -> coefficient`, non-zero
    /// entries only.
    pub cocycle: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
pub struct ProductSummary {
    pub left: String,
    pub right: String,
    /// Non-zero coordinates of the product, as `class name -> coefficient`.
    pub result: Vec<(String, String)>,
}

impl CohomologyRing {
    /// Serialisable summary; needs the complex for vertex labels.
    pub fn summary(&self, complex: &SimplicialComplex) -> RingSummary {
        let f = self.field_value();
        let mut classes = Vec::new();
        for k in 0..=self.cochains.top_dimension() {
            for i in 0..self.class_count(k) {
                let cocycle = self.reps[k][i]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !f.is_zero(v))
                    .map(|(row, v)| {
                        (
                            complex.render_simplex(&self.cochains.bases[k][row]),
                            v.render(),
                        )
                    })
                    .collect();
                classes.push(ClassSummary {
                    name: self.describe_basis_element(k, i),
                    degree: k,
                    cocycle,
                });
            }
        }
        let mut products = Vec::new();
        for ((p, i, q, j), coords) in &self.products {
            if *p == 0 || *q == 0 {
                continue; // unit products are implied
            }
            let result: Vec<(String, String)> = coords
                .iter()
                .enumerate()
                .filter(|(_, v)| !f.is_zero(v))
                .map(|(row, v)| (self.describe_basis_element(p + q, row), v.render()))
                .collect();
            products.push(ProductSummary {
                left: self.describe_basis_element(*p, *i),
                right: self.describe_basis_element(*q, *j),
                result,
            });
        }
        RingSummary {
            complex: self.cochains.complex_name.clone(),
            pair: self.cochains.subcomplex_name.clone(),
            field: f.to_string(),
            betti: self.betti(),
            classes,
            products,
        }
    }
}
