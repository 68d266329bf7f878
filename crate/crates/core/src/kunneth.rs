//! Tensor powers `H^*(X)^{⊗n}` with Koszul signs, the diagonal pullback
//! `Δ_n^* : H^*(X)^{⊗n} -> H^*(X)` (slotwise cup product) and the map power
//! pullback `(f^n)^* = (f^*)^{⊗n}`.
//!
//! Over a field the Künneth map is an isomorphism, so the tensor power *is*
//! the cohomology of the n-fold product; its basis is the set of n-tuples of
//! base classes ordered lexicographically by (degree vector, index vector).
//! Products carry the Koszul sign: moving `x_i` past `y_j` for `i > j` costs
//! `(-1)^{|x_i||y_j|}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cohomology::{CohomologyRing, GradedRing, RingElement, RingMap};
use crate::error::Error;
use crate::field::{CoefficientField, Scalar};
use crate::matrix::Matrix;

/// One tensor basis element: per slot the `(degree, index)` of a base class.
pub type TensorTuple = Vec<(usize, usize)>;

/// The n-fold tensor power of an absolute cohomology ring.
#[derive(Clone, Debug)]
pub struct TensorPowerRing {
    pub base: Arc<CohomologyRing>,
    pub n: usize,
    /// `basis[k]` lists the tuples of total degree `k` in canonical order.
    basis: Vec<Vec<TensorTuple>>,
    index: BTreeMap<TensorTuple, (usize, usize)>,
}

/// Builds `H^{⊗n}` for `n >= 2`; the base ring must be absolute (unital).
pub fn power_ring(base: Arc<CohomologyRing>, n: usize) -> Result<TensorPowerRing, Error> {
    if n < 2 {
        return Err(Error::Argument(format!("tensor power needs n >= 2, got {n}")));
    }
    if base.unit().is_none() {
        return Err(Error::DomainMismatch(
            "tensor powers are defined for absolute (unital) rings only".to_string(),
        ));
    }
    let top = base.cochains.top_dimension();
    let active: Vec<usize> = (0..=top).filter(|&k| base.class_count(k) > 0).collect();
    let mut all: Vec<TensorTuple> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for tuple in &all {
            for &d in &active {
                for i in 0..base.class_count(d) {
                    let mut extended = tuple.clone();
                    extended.push((d, i));
                    next.push(extended);
                }
            }
        }
        all = next;
    }
    let top_total = n * top;
    let mut basis: Vec<Vec<TensorTuple>> = vec![Vec::new(); top_total + 1];
    for tuple in all {
        let total: usize = tuple.iter().map(|(d, _)| d).sum();
        basis[total].push(tuple);
    }
    for degree_basis in &mut basis {
        degree_basis.sort_by(|a, b| {
            let da: Vec<usize> = a.iter().map(|(d, _)| *d).collect();
            let db: Vec<usize> = b.iter().map(|(d, _)| *d).collect();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
    }
    let mut index = BTreeMap::new();
    for (k, degree_basis) in basis.iter().enumerate() {
        for (pos, tuple) in degree_basis.iter().enumerate() {
            index.insert(tuple.clone(), (k, pos));
        }
    }
    Ok(TensorPowerRing { base, n, basis, index })
}

impl TensorPowerRing {
    pub fn tuples(&self, degree: usize) -> &[TensorTuple] {
        self.basis.get(degree).map_or(&[], |b| b.as_slice())
    }

    pub fn position(&self, tuple: &TensorTuple) -> Option<(usize, usize)> {
        self.index.get(tuple).copied()
    }

    /// The element `x ⊗ 1 ⊗ ... ⊗ 1` with `x` in the given slot (the
    /// splitting inclusion of the base ring).
    pub fn include_in_slot(&self, x: &RingElement, slot: usize) -> RingElement {
        assert!(slot < self.n, "slot out of range");
        let f = self.field();
        let unit = self.base.unit().expect("power rings are built over unital rings");
        let mut out = self.zero_element(x.degree);
        for (i, coeff) in x.coords.iter().enumerate() {
            if f.is_zero(coeff) {
                continue;
            }
            // Expand 1 ⊗ ... ⊗ x_i ⊗ ... ⊗ 1 over unit coordinates.
            let mut partial: Vec<(TensorTuple, Scalar)> = vec![(Vec::new(), coeff.clone())];
            for s in 0..self.n {
                let mut next = Vec::new();
                for (tuple, c) in &partial {
                    if s == slot {
                        let mut extended = tuple.clone();
                        extended.push((x.degree, i));
                        next.push((extended, c.clone()));
                    } else {
                        for (u, uc) in unit.coords.iter().enumerate() {
                            if f.is_zero(uc) {
                                continue;
                            }
                            let mut extended = tuple.clone();
                            extended.push((0, u));
                            next.push((extended, f.mul(c, uc)));
                        }
                    }
                }
                partial = next;
            }
            for (tuple, c) in partial {
                let (k, pos) = self.position(&tuple).expect("tuple enumerated at build time");
                debug_assert_eq!(k, x.degree);
                out.coords[pos] = f.add(&out.coords[pos], &c);
            }
        }
        out
    }

    /// The unit `1 ⊗ ... ⊗ 1`.
    pub fn unit(&self) -> RingElement {
        let one = self.base.unit().expect("power rings are built over unital rings");
        self.include_in_slot(one, 0)
    }
}

impl GradedRing for TensorPowerRing {
    fn field(&self) -> CoefficientField {
        self.base.field_value()
    }

    fn dimension(&self, degree: usize) -> usize {
        self.basis.get(degree).map_or(0, |b| b.len())
    }

    fn top_degree(&self) -> usize {
        (0..self.basis.len())
            .rev()
            .find(|&k| !self.basis[k].is_empty())
            .unwrap_or(0)
    }

    fn multiply(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = self.field();
        let degree = a.degree + b.degree;
        let mut out = self.zero_element(degree);
        if self.dimension(degree) == 0 {
            return out;
        }
        for (sp, sc) in a.coords.iter().enumerate() {
            if f.is_zero(sc) {
                continue;
            }
            let s = &self.basis[a.degree][sp];
            for (tp, tc) in b.coords.iter().enumerate() {
                if f.is_zero(tc) {
                    continue;
                }
                let t = &self.basis[b.degree][tp];
                // Koszul sign: each x_i (slot i of s) moves past every y_j
                // (slot j of t) with j < i.
                let mut crossings = 0usize;
                for i in 1..self.n {
                    for j in 0..i {
                        crossings += s[i].0 * t[j].0;
                    }
                }
                let sign = if crossings % 2 == 0 { 1 } else { -1 };
                let mut coeff = f.mul(sc, tc);
                coeff = f.mul(&coeff, &f.from_i64(sign));
                // Slotwise base products, expanded multilinearly.
                let mut partial: Vec<(TensorTuple, Scalar)> = vec![(Vec::new(), coeff)];
                for slot in 0..self.n {
                    let x = self.base.basis_element(s[slot].0, s[slot].1);
                    let y = self.base.basis_element(t[slot].0, t[slot].1);
                    let product = self.base.multiply(&x, &y);
                    let mut next = Vec::new();
                    for (tuple, c) in &partial {
                        for (idx, v) in product.coords.iter().enumerate() {
                            if f.is_zero(v) {
                                continue;
                            }
                            let mut extended = tuple.clone();
                            extended.push((product.degree, idx));
                            next.push((extended, f.mul(c, v)));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (tuple, c) in partial {
                    if let Some((k, pos)) = self.position(&tuple) {
                        debug_assert_eq!(k, degree);
                        out.coords[pos] = f.add(&out.coords[pos], &c);
                    }
                }
            }
        }
        out
    }

    fn describe_basis_element(&self, degree: usize, index: usize) -> String {
        let tuple = &self.basis[degree][index];
        tuple
            .iter()
            .map(|&(d, i)| self.base.describe_basis_element(d, i))
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

/// A degree-preserving linear map between graded vector spaces, stored as one
/// matrix per degree (`matrices[k]: target_dim(k) x source_dim(k)`).
#[derive(Clone, Debug)]
pub struct GradedLinearMap {
    pub name: String,
    pub field: CoefficientField,
    pub matrices: Vec<Matrix>,
}

impl GradedLinearMap {
    pub fn source_dimension(&self, degree: usize) -> usize {
        self.matrices.get(degree).map_or(0, |m| m.cols)
    }

    pub fn apply(&self, element: &RingElement) -> Option<RingElement> {
        let m = self.matrices.get(element.degree)?;
        Some(RingElement {
            degree: element.degree,
            coords: m.apply(&element.coords),
        })
    }

    /// Kernel bases per degree, as source-side ring elements.
    pub fn kernel_per_degree(&self) -> Vec<Vec<RingElement>> {
        self.matrices
            .iter()
            .enumerate()
            .map(|(k, m)| {
                m.kernel_basis()
                    .into_iter()
                    .map(|coords| RingElement { degree: k, coords })
                    .collect()
            })
            .collect()
    }
}

/// The diagonal pullback `Δ_n^* : H^{⊗n} -> H`, sending a basis tensor to the
/// left-to-right cup product of its slots.
pub fn diagonal_pullback(tensor: &TensorPowerRing) -> GradedLinearMap {
    let field = tensor.field();
    let base = &tensor.base;
    let top_total = tensor.top_degree();
    let mut matrices = Vec::with_capacity(top_total + 1);
    for k in 0..=top_total {
        let rows = base.class_count(k);
        let cols = tensor.dimension(k);
        let mut m = Matrix::zeros(field, rows, cols);
        for (col, tuple) in tensor.tuples(k).iter().enumerate() {
            let mut acc = base.basis_element(tuple[0].0, tuple[0].1);
            for &(d, i) in &tuple[1..] {
                acc = base.multiply(&acc, &base.basis_element(d, i));
            }
            debug_assert_eq!(acc.degree, k);
            for (row, v) in acc.coords.iter().enumerate() {
                m.set(row, col, v.clone());
            }
        }
        matrices.push(m);
    }
    GradedLinearMap {
        name: format!("Δ_{}^* on {}", tensor.n, base.cochains.complex_name),
        field,
        matrices,
    }
}

/// The tensor power of a ring map: `φ^{⊗n} : domain^{⊗n} -> codomain^{⊗n}`.
/// No Koszul signs appear because `φ` preserves degrees.
pub struct PowerPullback {
    /// `H^*(Y)^{⊗n}`, the tensor power of the ring map's domain.
    pub domain: Arc<TensorPowerRing>,
    /// `H^*(X)^{⊗n}`, the tensor power of the ring map's codomain.
    pub codomain: Arc<TensorPowerRing>,
    pub map: GradedLinearMap,
}

pub fn map_power_pullback(phi: &RingMap, n: usize) -> Result<PowerPullback, Error> {
    let domain = Arc::new(power_ring(phi.domain.clone(), n)?);
    let codomain = Arc::new(power_ring(phi.codomain.clone(), n)?);
    let map = power_pullback_between(phi, &domain, &codomain)?;
    Ok(PowerPullback { domain, codomain, map })
}

/// Like [`map_power_pullback`] with caller-supplied tensor rings.
pub fn power_pullback_between(
    phi: &RingMap,
    domain: &TensorPowerRing,
    codomain: &TensorPowerRing,
) -> Result<GradedLinearMap, Error> {
    if domain.n != codomain.n {
        return Err(Error::DomainMismatch("tensor powers have different n".to_string()));
    }
    let n = domain.n;
    let field = phi.domain.field_value();
    let top_total = domain.top_degree();
    let mut matrices = Vec::with_capacity(top_total + 1);
    for k in 0..=top_total {
        let rows = codomain.dimension(k);
        let cols = domain.dimension(k);
        let mut m = Matrix::zeros(field, rows, cols);
        for (col, tuple) in domain.tuples(k).iter().enumerate() {
            let mut partial: Vec<(TensorTuple, Scalar)> = vec![(Vec::new(), field.one())];
            for slot in 0..n {
                let (d, i) = tuple[slot];
                let image = phi.apply(&phi.domain.basis_element(d, i));
                let mut next = Vec::new();
                for (prefix, c) in &partial {
                    for (idx, v) in image.coords.iter().enumerate() {
                        if field.is_zero(v) {
                            continue;
                        }
                        let mut extended = prefix.clone();
                        extended.push((d, idx));
                        next.push((extended, field.mul(c, v)));
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for (target_tuple, c) in partial {
                if let Some((deg, pos)) = codomain.position(&target_tuple) {
                    debug_assert_eq!(deg, k);
                    let entry = field.add(m.get(pos, col), &c);
                    m.set(pos, col, entry);
                }
            }
        }
        matrices.push(m);
    }
    Ok(GradedLinearMap {
        name: format!("({})^⊗{n}", phi.name),
        field,
        matrices,
    })
}

/// The pullback of `g_n = f^n ∘ Δ_n : X -> Y^n`, namely
/// `g_n^* = Δ_n^* ∘ (f^*)^{⊗n} : H^*(Y)^{⊗n} -> H^*(X)`.
pub struct GPullback {
    /// `H^*(Y)^{⊗n}` — the ring the kernel lives in.
    pub domain: Arc<TensorPowerRing>,
    /// `H^*(X)`.
    pub codomain: Arc<CohomologyRing>,
    pub map: GradedLinearMap,
}

pub fn g_pullback(phi: &RingMap, n: usize) -> Result<GPullback, Error> {
    let power = map_power_pullback(phi, n)?;
    let diagonal = diagonal_pullback(&power.codomain);
    let top_total = power.domain.top_degree();
    let field = power.map.field;
    let mut matrices = Vec::with_capacity(top_total + 1);
    for k in 0..=top_total {
        let pow_m = &power.map.matrices[k];
        match diagonal.matrices.get(k) {
            Some(diag_m) => matrices.push(diag_m.mul(pow_m)),
            None => matrices.push(Matrix::zeros(field, 0, pow_m.cols)),
        }
    }
    Ok(GPullback {
        domain: power.domain,
        codomain: phi.codomain.clone(),
        map: GradedLinearMap {
            name: format!("g_{n}^* of {}", phi.name),
            field,
            matrices,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{build_ring, induced_map};
    use crate::fixtures;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    fn ring_of(complex: &crate::simplicial::SimplicialComplex) -> Arc<CohomologyRing> {
        Arc::new(build_ring(complex, None, q()).unwrap())
    }

    fn dims(ring: &dyn GradedRing) -> Vec<usize> {
        (0..=ring.top_degree()).map(|k| ring.dimension(k)).collect()
    }

    #[test]
    fn tensor_dimensions_are_convolutions() {
        let circle = ring_of(&fixtures::circle(3));
        let square = power_ring(circle.clone(), 2).unwrap();
        assert_eq!(dims(&square), vec![1, 2, 1]);
        let cube = power_ring(circle.clone(), 3).unwrap();
        assert_eq!(dims(&cube), vec![1, 3, 3, 1]);

        let torus = ring_of(&fixtures::torus9());
        let torus_sq = power_ring(torus, 2).unwrap();
        assert_eq!(dims(&torus_sq), vec![1, 4, 6, 4, 1]);

        let sphere = ring_of(&fixtures::sphere2());
        let sphere_sq = power_ring(sphere, 2).unwrap();
        assert_eq!(dims(&sphere_sq), vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn basis_order_is_degree_vector_then_indices() {
        let circle = ring_of(&fixtures::circle(3));
        let square = power_ring(circle, 2).unwrap();
        // Total degree 1: (0,1) before (1,0), i.e. 1⊗a before a⊗1.
        let names: Vec<String> = (0..square.dimension(1))
            .map(|i| square.describe_basis_element(1, i))
            .collect();
        assert_eq!(names, vec!["h0_0⊗h1_0", "h1_0⊗h0_0"]);
    }

    #[test]
    fn koszul_sign_on_odd_classes() {
        // On the circle, (a⊗1)(1⊗a) = a⊗a but (1⊗a)(a⊗1) = -a⊗a.
        let circle = ring_of(&fixtures::circle(3));
        let square = power_ring(circle, 2).unwrap();
        let f = square.field();
        let one_a = square.basis_element(1, 0); // 1⊗a
        let a_one = square.basis_element(1, 1); // a⊗1
        let left = square.multiply(&a_one, &one_a);
        let right = square.multiply(&one_a, &a_one);
        assert!(!left.is_zero(&f));
        assert_eq!(left, right.scale(&f.from_i64(-1), &f), "odd classes anticommute");
        assert!(square.multiply(&a_one, &a_one).is_zero(&f), "a² = 0 in the first slot");
    }

    #[test]
    fn tensor_unit_is_a_unit() {
        let torus = ring_of(&fixtures::torus9());
        let square = power_ring(torus, 2).unwrap();
        let unit = square.unit();
        for k in 0..=square.top_degree() {
            for i in 0..square.dimension(k) {
                let x = square.basis_element(k, i);
                assert_eq!(square.multiply(&unit, &x), x);
                assert_eq!(square.multiply(&x, &unit), x);
            }
        }
    }

    #[test]
    fn tensor_ring_graded_commutativity_sampled() {
        let torus = ring_of(&fixtures::torus9());
        let square = power_ring(torus, 2).unwrap();
        let f = square.field();
        for p in 0..=2usize {
            for q_deg in 0..=2usize {
                for i in 0..square.dimension(p) {
                    for j in 0..square.dimension(q_deg) {
                        let x = square.basis_element(p, i);
                        let y = square.basis_element(q_deg, j);
                        let xy = square.multiply(&x, &y);
                        let yx = square.multiply(&y, &x);
                        let sign = if (p * q_deg) % 2 == 0 { 1 } else { -1 };
                        assert_eq!(xy, yx.scale(&f.from_i64(sign), &f));
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_realises_cup_products() {
        let torus = Arc::new(build_ring(&fixtures::torus9(), None, q()).unwrap());
        let square = power_ring(torus.clone(), 2).unwrap();
        let diag = diagonal_pullback(&square);
        let f = square.field();
        // Δ^*(x ⊗ 1) = x for every base class (splitting identity, slot 0).
        for k in 0..=torus.cochains.top_dimension() {
            for i in 0..torus.class_count(k) {
                let x = torus.basis_element(k, i);
                let included = square.include_in_slot(&x, 0);
                let back = diag.apply(&included).unwrap();
                assert_eq!(back, x, "Δ^* splits the slot inclusion");
            }
        }
        // Δ^*(a⊗b) = a ⌣ b ≠ 0.
        let a = torus.basis_element(1, 0);
        let b = torus.basis_element(1, 1);
        let a0 = square.include_in_slot(&a, 0);
        let b1 = square.include_in_slot(&b, 1);
        let ab_tensor = square.multiply(&a0, &b1);
        let pulled = diag.apply(&ab_tensor).unwrap();
        assert_eq!(pulled, torus.multiply(&a, &b));
        assert!(!pulled.is_zero(&f));
    }

    #[test]
    fn diagonal_kernel_dimensions_on_circle() {
        let circle = ring_of(&fixtures::circle(3));
        let square = power_ring(circle, 2).unwrap();
        let diag = diagonal_pullback(&square);
        let kernel = diag.kernel_per_degree();
        // Degree 1: span of a⊗1 − 1⊗a; degree 2: a⊗a.
        assert_eq!(kernel[0].len(), 0);
        assert_eq!(kernel[1].len(), 1);
        assert_eq!(kernel[2].len(), 1);
    }

    #[test]
    fn power_of_identity_is_identity() {
        let torus = fixtures::torus9();
        let id = fixtures::identity_map(&torus);
        let phi = induced_map(&id, &torus, &torus, q()).unwrap();
        let power = map_power_pullback(&phi, 2).unwrap();
        for (k, m) in power.map.matrices.iter().enumerate() {
            assert_eq!(*m, Matrix::identity(q(), power.domain.dimension(k)), "degree {k}");
        }
    }

    #[test]
    fn power_of_winding_map_scales_by_powers_of_two() {
        let hexagon = fixtures::circle(6);
        let triangle = fixtures::circle(3);
        let f = fixtures::degree_map(&hexagon, &triangle);
        let phi = induced_map(&f, &hexagon, &triangle, q()).unwrap();
        let power = map_power_pullback(&phi, 2).unwrap();
        let field = q();
        // Degree 1 scales by ±2 slotwise; degree 2 (a⊗a) by (±2)² = 4.
        let top = power.map.matrices[2].clone();
        assert_eq!((top.rows, top.cols), (1, 1));
        assert_eq!(*top.get(0, 0), field.from_i64(4), "winding number squares on a⊗a");
    }

    #[test]
    fn g_pullback_of_identity_matches_diagonal() {
        let circle = fixtures::circle(3);
        let id = fixtures::identity_map(&circle);
        let phi = induced_map(&id, &circle, &circle, q()).unwrap();
        let g = g_pullback(&phi, 2).unwrap();
        let square = power_ring(phi.domain.clone(), 2).unwrap();
        let diag = diagonal_pullback(&square);
        assert_eq!(g.map.matrices.len(), diag.matrices.len());
        for (k, m) in g.map.matrices.iter().enumerate() {
            assert_eq!(*m, diag.matrices[k], "degree {k}");
        }
    }

    #[test]
    fn g_pullback_of_constant_kills_positive_degrees() {
        let triangle = fixtures::circle(3);
        let c = fixtures::constant_map(&triangle, &triangle, 0);
        let phi = induced_map(&c, &triangle, &triangle, q()).unwrap();
        let g = g_pullback(&phi, 2).unwrap();
        for k in 1..g.map.matrices.len() {
            assert!(g.map.matrices[k].is_zero(), "positive degree {k} must die");
        }
        // Degree 0 is the unit slot and survives.
        assert!(!g.map.matrices[0].is_zero());
    }

    #[test]
    fn power_ring_rejects_bad_inputs() {
        let circle = ring_of(&fixtures::circle(3));
        assert!(power_ring(circle, 1).is_err(), "n must be at least 2");
        let relative = Arc::new(
            build_ring(&fixtures::disk_pair(), Some("boundary"), q()).unwrap(),
        );
        assert!(power_ring(relative, 2).is_err(), "relative rings have no unit");
    }
}
