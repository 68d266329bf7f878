//! Bundled example complexes, pairs and maps used by tests and shipped as
//! JSON next to the CLI.
//!
//! The torus is the standard 9-vertex triangulation on a 3x3 grid with both
//! coordinates mod 3: vertex `v(i,j)` is index `3i + j`, and each grid square
//! carries two triangles.  Its diagonal circle `{v(0,0), v(1,1), v(2,2)}`
//! consists of actual simplices (the squares' diagonal edges), so the
//! diagonal is a genuine subcomplex and `(torus, diag)` is a usable pair.

use crate::simplicial::{faces, Simplex, SimplicialComplex, SimplicialMap};

/// A single point.
pub fn point() -> SimplicialComplex {
    SimplicialComplex::from_maximal("point", 1, vec![vec![0]])
}

/// A circle triangulated as a `k`-gon (`k >= 3`), named `circle{k}`.
pub fn circle(k: usize) -> SimplicialComplex {
    assert!(k >= 3, "a simplicial circle needs at least 3 vertices");
    let edges = (0..k).map(|i| vec![i, (i + 1) % k]);
    SimplicialComplex::from_maximal(&format!("circle{k}"), k, edges)
}

/// The 2-sphere as the boundary of a 3-simplex.
pub fn sphere2() -> SimplicialComplex {
    let triangles = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    SimplicialComplex::from_maximal("sphere2", 4, triangles)
}

/// The full 2-simplex with its boundary circle as subcomplex `boundary`.
pub fn disk_pair() -> SimplicialComplex {
    let mut disk = SimplicialComplex::from_maximal("disk2", 3, vec![vec![0, 1, 2]]);
    disk.add_subcomplex(
        "boundary",
        closure(vec![vec![0, 1], vec![0, 2], vec![1, 2]]),
    );
    disk
}

/// The 9-vertex torus with its diagonal circle as subcomplex `diag`.
pub fn torus9() -> SimplicialComplex {
    let v = |i: usize, j: usize| 3 * (i % 3) + (j % 3);
    let mut triangles = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            triangles.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            triangles.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    let mut torus = SimplicialComplex::from_maximal("torus9", 9, triangles);
    torus.add_subcomplex(
        "diag",
        closure(vec![vec![v(0, 0), v(1, 1)], vec![v(1, 1), v(2, 2)], vec![v(2, 2), v(0, 0)]]),
    );
    torus
}

/// The identity map of a complex.
pub fn identity_map(complex: &SimplicialComplex) -> SimplicialMap {
    let image: Vec<usize> = (0..complex.vertex_count()).collect();
    SimplicialMap::from_indices(
        &format!("id_{}", complex.name()),
        complex,
        complex,
        &image,
    )
}

/// The identity of a pair `(X, A)`: the identity map of `X` carrying the
/// named subcomplex on both sides.
pub fn identity_map_on_pair(complex: &SimplicialComplex, subcomplex: &str) -> SimplicialMap {
    identity_map(complex).with_pairs(subcomplex, subcomplex)
}

/// The degree-`k/m` circle map from a `k`-gon onto an `m`-gon, `i -> i mod m`.
/// Requires `m` to divide `k` so that the last edge stays simplicial.
pub fn degree_map(source: &SimplicialComplex, target: &SimplicialComplex) -> SimplicialMap {
    let k = source.vertex_count();
    let m = target.vertex_count();
    assert!(m >= 3 && k % m == 0, "winding map needs m | k");
    let image: Vec<usize> = (0..k).map(|i| i % m).collect();
    SimplicialMap::from_indices(
        &format!("wind{}_{}", k / m, source.name()),
        source,
        target,
        &image,
    )
}

/// The constant map collapsing everything to one target vertex.
pub fn constant_map(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    vertex: usize,
) -> SimplicialMap {
    let image = vec![vertex; source.vertex_count()];
    SimplicialMap::from_indices(
        &format!("const_{}_{}", source.name(), target.name()),
        source,
        target,
        &image,
    )
}

fn closure(maximal: Vec<Simplex>) -> Vec<Simplex> {
    let mut out = std::collections::BTreeSet::new();
    let mut stack = maximal;
    while let Some(s) = stack.pop() {
        if out.insert(s.clone()) && s.len() > 1 {
            stack.extend(faces(&s));
        }
    }
    out.into_iter().collect()
}
