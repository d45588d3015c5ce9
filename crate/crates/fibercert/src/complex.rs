//! Flag (clique) complexes of graphs up to dimension 3, their face vectors,
//! and oriented integer boundary matrices.
//!
//! Faces are stored as vertex tuples in increasing order, listed
//! lexicographically; the global vertex order fixes all orientations.

use crate::graph::{Graph, VertexSet};
use crate::homology::IntMatrix;

/// Face counts `(e0, e1, e2, e3)` of a complex of dimension at most 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceVector {
    pub counts: [usize; 4],
}

impl FaceVector {
    pub fn new(e0: usize, e1: usize, e2: usize, e3: usize) -> FaceVector {
        FaceVector {
            counts: [e0, e1, e2, e3],
        }
    }

    pub fn count(&self, dim: usize) -> usize {
        self.counts[dim]
    }

    /// Alternating sum `e0 - e1 + e2 - e3`.
    pub fn euler_characteristic(&self) -> i64 {
        let [e0, e1, e2, e3] = self.counts.map(|c| c as i64);
        e0 - e1 + e2 - e3
    }
}

/// All cliques of a graph (or an induced subgraph) up to `max_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagComplex {
    max_dim: usize,
    vertices: Vec<u8>,
    edges: Vec<[u8; 2]>,
    triangles: Vec<[u8; 3]>,
    tetrahedra: Vec<[u8; 4]>,
}

/// Flag complex of the whole graph, up to dimension `max_dim <= 3`.
pub fn flag_complex(g: &Graph, max_dim: usize) -> FlagComplex {
    full_subcomplex(g, g.vertex_set(), max_dim)
}

/// Flag complex of the subgraph induced by `s`: every clique of `g` whose
/// vertices all lie in `s`.
pub fn full_subcomplex(g: &Graph, s: VertexSet, max_dim: usize) -> FlagComplex {
    assert!(max_dim <= 3, "complexes are capped at dimension 3");
    let vertices: Vec<u8> = s.iter().map(|v| v as u8).collect();
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    let mut tetrahedra = Vec::new();
    if max_dim >= 1 {
        for &u in &vertices {
            let above: VertexSet = g
                .neighbors(u as usize)
                .intersection(s)
                .iter()
                .filter(|&v| v > u as usize)
                .collect();
            for v in above.iter() {
                edges.push([u, v as u8]);
                if max_dim >= 2 {
                    let common = g
                        .neighbors(u as usize)
                        .intersection(g.neighbors(v))
                        .intersection(s);
                    for w in common.iter().filter(|&w| w > v) {
                        triangles.push([u, v as u8, w as u8]);
                        if max_dim >= 3 {
                            let deeper = common.intersection(g.neighbors(w));
                            for x in deeper.iter().filter(|&x| x > w) {
                                tetrahedra.push([u, v as u8, w as u8, x as u8]);
                            }
                        }
                    }
                }
            }
        }
    }
    let k = FlagComplex {
        max_dim,
        vertices,
        edges,
        triangles,
        tetrahedra,
    };
    k.assert_closed();
    k
}

impl FlagComplex {
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn face_count(&self, dim: usize) -> usize {
        match dim {
            0 => self.vertices.len(),
            1 => self.edges.len(),
            2 => self.triangles.len(),
            3 => self.tetrahedra.len(),
            _ => 0,
        }
    }

    pub fn face_vector(&self) -> FaceVector {
        FaceVector {
            counts: [
                self.vertices.len(),
                self.edges.len(),
                self.triangles.len(),
                self.tetrahedra.len(),
            ],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[u8] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[u8; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[u8; 3]] {
        &self.triangles
    }

    pub fn tetrahedra(&self) -> &[[u8; 4]] {
        &self.tetrahedra
    }

    /// `dim`-faces as sorted vertex tuples, lexicographic order.
    pub fn faces(&self, dim: usize) -> Vec<Vec<usize>> {
        match dim {
            0 => self.vertices.iter().map(|&v| vec![v as usize]).collect(),
            1 => self
                .edges
                .iter()
                .map(|e| e.iter().map(|&v| v as usize).collect())
                .collect(),
            2 => self
                .triangles
                .iter()
                .map(|t| t.iter().map(|&v| v as usize).collect())
                .collect(),
            3 => self
                .tetrahedra
                .iter()
                .map(|t| t.iter().map(|&v| v as usize).collect())
                .collect(),
            _ => Vec::new(),
        }
    }

    /// The vertex set spanned by the complex.
    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().map(|&v| v as usize).collect()
    }

    /// Oriented boundary operator from `dim`-chains to `(dim-1)`-chains:
    /// rows are `(dim-1)`-faces, columns are `dim`-faces, and deleting the
    /// `i`-th vertex of a column's tuple contributes `(-1)^i`.
    pub fn boundary_matrix(&self, dim: usize) -> IntMatrix {
        assert!((1..=3).contains(&dim) && dim <= self.max_dim);
        let rows = self.face_count(dim - 1);
        let cols = self.face_count(dim);
        let mut m = IntMatrix::zeros(rows, cols);
        for col in 0..cols {
            match dim {
                1 => {
                    let [u, v] = self.edges[col];
                    m.set(self.vertex_index(u), col, -1);
                    m.set(self.vertex_index(v), col, 1);
                }
                2 => {
                    let [u, v, w] = self.triangles[col];
                    m.set(self.edge_index([v, w]), col, 1);
                    m.set(self.edge_index([u, w]), col, -1);
                    m.set(self.edge_index([u, v]), col, 1);
                }
                3 => {
                    let [u, v, w, x] = self.tetrahedra[col];
                    m.set(self.triangle_index([v, w, x]), col, 1);
                    m.set(self.triangle_index([u, w, x]), col, -1);
                    m.set(self.triangle_index([u, v, x]), col, 1);
                    m.set(self.triangle_index([u, v, w]), col, -1);
                }
                _ => unreachable!(),
            }
        }
        m
    }

    fn vertex_index(&self, v: u8) -> usize {
        self.vertices
            .binary_search(&v)
            .expect("closure: vertex face missing")
    }

    fn edge_index(&self, e: [u8; 2]) -> usize {
        self.edges
            .binary_search(&e)
            .expect("closure: edge face missing")
    }

    fn triangle_index(&self, t: [u8; 3]) -> usize {
        self.triangles
            .binary_search(&t)
            .expect("closure: triangle face missing")
    }

    /// Every codimension-1 subface of every face must itself be a face.
    fn assert_closed(&self) {
        for e in &self.edges {
            for v in e {
                debug_assert!(self.vertices.binary_search(v).is_ok());
            }
        }
        for t in &self.triangles {
            for i in 0..3 {
                let mut e = [0u8; 2];
                let mut k = 0;
                for (j, &v) in t.iter().enumerate() {
                    if j != i {
                        e[k] = v;
                        k += 1;
                    }
                }
                debug_assert!(self.edges.binary_search(&e).is_ok());
            }
        }
        for q in &self.tetrahedra {
            for i in 0..4 {
                let mut t = [0u8; 3];
                let mut k = 0;
                for (j, &v) in q.iter().enumerate() {
                    if j != i {
                        t[k] = v;
                        k += 1;
                    }
                }
                debug_assert!(self.triangles.binary_search(&t).is_ok());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    fn vs(members: &[usize]) -> VertexSet {
        members.iter().copied().collect()
    }

    #[test]
    fn triangle_fills_in() {
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let k = flag_complex(&k3, 2);
        assert_eq!(k.face_vector(), FaceVector::new(3, 3, 1, 0));
        assert_eq!(k.face_vector().euler_characteristic(), 1);
    }

    #[test]
    fn four_cycle_stays_hollow() {
        let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let k = flag_complex(&c4, 3);
        assert_eq!(k.face_vector(), FaceVector::new(4, 4, 0, 0));
    }

    #[test]
    fn complete_graph_has_tetrahedron() {
        let k4 = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            flag_complex(&k4, 3).face_vector(),
            FaceVector::new(4, 6, 4, 1)
        );
        // The dimension cap really caps.
        assert_eq!(
            flag_complex(&k4, 2).face_vector(),
            FaceVector::new(4, 6, 4, 0)
        );
    }

    #[test]
    fn empty_subcomplex() {
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let k = full_subcomplex(&k3, VertexSet::EMPTY, 3);
        assert!(k.is_empty());
        assert_eq!(k.face_vector(), FaceVector::new(0, 0, 0, 0));
    }

    #[test]
    fn single_edge_boundary_has_fixed_signs() {
        let g = Graph::build(2, &[(0, 1)]).unwrap();
        let k = flag_complex(&g, 1);
        let d1 = k.boundary_matrix(1);
        assert_eq!((d1.rows(), d1.cols()), (2, 1));
        assert_eq!(d1.get(0, 0), -1);
        assert_eq!(d1.get(1, 0), 1);
    }

    #[test]
    fn boundary_squared_is_zero() {
        let k4 = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let k = flag_complex(&k4, 3);
        for d in 2..=3 {
            let a = k.boundary_matrix(d - 1);
            let b = k.boundary_matrix(d);
            assert!(a.multiply(&b).is_zero(), "d{} . d{} != 0", d - 1, d);
        }
    }

    /// Brute-force restriction oracle: filter the ambient complex's faces by
    /// membership in `s`.
    fn restricted_faces(k: &FlagComplex, s: VertexSet, dim: usize) -> Vec<Vec<usize>> {
        k.faces(dim)
            .into_iter()
            .filter(|face| face.iter().all(|&v| s.contains(v)))
            .collect()
    }

    #[test]
    fn full_subcomplex_matches_restriction_oracle() {
        let mut rng = StdRng::seed_from_u64(97);
        for _ in 0..200 {
            let n = rng.random_range(1..=15usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::build(n, &edges).unwrap();
            let ambient = flag_complex(&g, 3);
            let s = VertexSet::from_bits(rng.random::<u128>() & g.vertex_set().bits());
            let sub = full_subcomplex(&g, s, 3);
            for dim in 0..=3 {
                assert_eq!(sub.faces(dim), restricted_faces(&ambient, s, dim));
            }
        }
    }

    #[test]
    fn faces_are_sorted_lexicographically() {
        let g = Graph::build(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let k = flag_complex(&g, 2);
        let mut edges = k.edges().to_vec();
        edges.sort_unstable();
        assert_eq!(edges, k.edges());
        let mut tris = k.triangles().to_vec();
        tris.sort_unstable();
        assert_eq!(tris, k.triangles());
        assert_eq!(k.faces(2), vec![vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn subcomplex_example_on_path() {
        let p3 = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let k = full_subcomplex(&p3, vs(&[0, 2]), 2);
        assert_eq!(k.face_vector(), FaceVector::new(2, 0, 0, 0));
    }
}
