//! Simplicial graphs on at most 128 vertices, with the vertex-subset
//! operations everything else is built from.
//!
//! A [`VertexSet`] is a dense bitset over the ambient vertex range; it doubles
//! as a state and as a group element under symmetric difference. [`Graph`] is
//! immutable after construction and stores adjacency as one `VertexSet` per
//! vertex.

use std::fmt;

use thiserror::Error;

/// Largest supported ambient vertex count: a set fits in one `u128`.
pub const MAX_VERTICES: usize = 128;

/// A subset of `{0, …, n-1}` for some ambient vertex count `n <= 128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    bits: u128,
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { bits: 0 };

    /// The full set `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet { bits: u128::MAX }
        } else {
            VertexSet {
                bits: (1u128 << n) - 1,
            }
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet { bits: 1u128 << v }
    }

    pub fn from_bits(bits: u128) -> Self {
        VertexSet { bits }
    }

    pub fn bits(self) -> u128 {
        self.bits
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.bits >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.bits |= 1u128 << v;
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.bits &= !(1u128 << v);
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet {
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet {
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet {
            bits: self.bits & !other.bits,
        }
    }

    /// Symmetric difference; this is the group operation of `Z_2^n`.
    pub fn sym_diff(self, other: VertexSet) -> VertexSet {
        VertexSet {
            bits: self.bits ^ other.bits,
        }
    }

    /// Complement inside the ambient set `{0, …, n-1}`.
    pub fn complement(self, n: usize) -> VertexSet {
        VertexSet {
            bits: !self.bits & Self::full(n).bits,
        }
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Smallest member, if any.
    pub fn min_element(self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// Iterate members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Errors from graph construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0} is not allowed in a simplicial graph")]
    LoopEdge(usize),
    #[error("graph on {0} vertices exceeds the supported maximum of 128")]
    TooManyVertices(usize),
}

/// An immutable simplicial graph: symmetric, irreflexive adjacency over
/// `{0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Build a graph from an edge list. Duplicate edges (in either order)
    /// collapse to one.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let g = Graph {
            n,
            adj,
            labels: None,
        };
        g.assert_simplicial();
        Ok(g)
    }

    /// Attach per-vertex display names. `labels.len()` must equal `n`.
    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    fn assert_simplicial(&self) {
        for v in 0..self.n {
            debug_assert!(!self.adj[v].contains(v), "loop at {v}");
            debug_assert!(
                self.adj[v].is_subset_of(VertexSet::full(self.n)),
                "adjacency of {v} leaves the ambient range"
            );
            for u in self.adj[v].iter() {
                debug_assert!(self.adj[u].contains(v), "asymmetric edge {{{u},{v}}}");
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Neighbourhood of `v` as a set.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// All vertices as a set.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True iff `s` is nonempty and induces a connected subgraph.
    ///
    /// The empty set is *not* connected here: legality of a state requires
    /// both sides to be nonempty, and this convention folds that requirement
    /// into the connectivity test.
    pub fn is_connected_induced(&self, s: VertexSet) -> bool {
        let Some(start) = s.min_element() else {
            return false;
        };
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adj[v].intersection(s));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen == s
    }

    /// Number of connected components of the subgraph induced by `s`.
    pub fn component_count_induced(&self, s: VertexSet) -> usize {
        let mut remaining = s;
        let mut count = 0;
        while let Some(start) = remaining.min_element() {
            count += 1;
            let mut seen = VertexSet::singleton(start);
            let mut frontier = seen;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adj[v].intersection(remaining));
                }
                frontier = next.difference(seen);
                seen = seen.union(next);
            }
            remaining = remaining.difference(seen);
        }
        count
    }

    /// Two-colour the graph, or exhibit an odd cycle.
    ///
    /// Disconnected graphs get a deterministic colouring with every
    /// component's smallest vertex in class 0.
    pub fn bipartition_classes(&self) -> Bipartition {
        let mut color = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut class0 = VertexSet::EMPTY;
        let mut class1 = VertexSet::EMPTY;
        for root in 0..self.n {
            if color[root] != usize::MAX {
                continue;
            }
            color[root] = 0;
            class0.insert(root);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in self.adj[u].iter() {
                    if color[v] == usize::MAX {
                        color[v] = color[u] ^ 1;
                        parent[v] = u;
                        if color[v] == 0 {
                            class0.insert(v);
                        } else {
                            class1.insert(v);
                        }
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return Bipartition::OddCycle(odd_cycle(&parent, u, v));
                    }
                }
            }
        }
        Bipartition::Classes(class0, class1)
    }

    /// Search for a graph isomorphism onto `other`.
    ///
    /// Backtracking over a BFS vertex order with iterated neighbourhood
    /// invariants for pruning; any returned bijection has been re-verified
    /// edge by edge.
    pub fn is_isomorphic(&self, other: &Graph) -> Option<Vec<usize>> {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return None;
        }
        let inv_a = refinement_invariants(self);
        let inv_b = refinement_invariants(other);
        let mut sorted_a = inv_a.clone();
        let mut sorted_b = inv_b.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return None;
        }

        let order = bfs_order(self);
        let mut mapping = vec![usize::MAX; self.n];
        let mut used = VertexSet::EMPTY;
        if !extend_mapping(
            self,
            other,
            &inv_a,
            &inv_b,
            &order,
            0,
            &mut mapping,
            &mut used,
        ) {
            return None;
        }
        // Independent final check before handing the bijection out.
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                assert_eq!(
                    self.has_edge(u, v),
                    other.has_edge(mapping[u], mapping[v]),
                    "isomorphism search returned a non-isomorphism"
                );
            }
        }
        Some(mapping)
    }
}

/// Outcome of [`Graph::bipartition_classes`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// The two colour classes; class 0 contains each component's smallest
    /// vertex.
    Classes(VertexSet, VertexSet),
    /// An odd cycle witnessing non-bipartiteness, as a vertex sequence.
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn classes(&self) -> Option<(VertexSet, VertexSet)> {
        match self {
            Bipartition::Classes(a, b) => Some((*a, *b)),
            Bipartition::OddCycle(_) => None,
        }
    }
}

/// Reconstruct the odd cycle closed by the conflicting edge `{u, v}`.
fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut path = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    // Drop the common tail above the lowest common ancestor.
    let mut iu = pu.len();
    let mut iv = pv.len();
    while iu > 0 && iv > 0 && pu[iu - 1] == pv[iv - 1] {
        iu -= 1;
        iv -= 1;
    }
    let mut cycle: Vec<usize> = pu[..=iu].to_vec();
    cycle.extend(pv[..iv].iter().rev());
    debug_assert!(cycle.len() % 2 == 1);
    cycle
}

/// Iterated neighbourhood refinement: start from (degree, triangle count)
/// and re-hash each vertex with the sorted multiset of its neighbours'
/// values until the partition stabilises.
fn refinement_invariants(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut inv: Vec<u64> = (0..n)
        .map(|v| {
            let deg = g.degree(v) as u64;
            let tri: u64 = g
                .neighbors(v)
                .iter()
                .map(|u| g.neighbors(u).intersection(g.neighbors(v)).len() as u64)
                .sum();
            deg << 32 | tri
        })
        .collect();
    let mut classes = distinct_count(&inv);
    for _ in 0..n {
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut nbr: Vec<u64> = g.neighbors(v).iter().map(|u| inv[u]).collect();
                nbr.sort_unstable();
                let mut h = inv[v];
                for x in nbr {
                    h = h.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(x);
                }
                h
            })
            .collect();
        let next_classes = distinct_count(&next);
        inv = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    inv
}

fn distinct_count(values: &[u64]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Visit order that keeps every new vertex adjacent to an already-mapped one
/// whenever the graph is connected.
fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = VertexSet::EMPTY;
    for root in 0..n {
        if seen.contains(root) {
            continue;
        }
        seen.insert(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in g.adj[u].iter() {
                if !seen.contains(v) {
                    seen.insert(v);
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend_mapping(
    a: &Graph,
    b: &Graph,
    inv_a: &[u64],
    inv_b: &[u64],
    order: &[usize],
    depth: usize,
    mapping: &mut Vec<usize>,
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    // Images of v's already-mapped neighbours: any candidate must be adjacent
    // to exactly these among the used images.
    let mut required = VertexSet::EMPTY;
    let mut mapped = VertexSet::EMPTY;
    for &w in &order[..depth] {
        mapped.insert(mapping[w]);
        if a.has_edge(v, w) {
            required.insert(mapping[w]);
        }
    }
    for cand in VertexSet::full(b.vertex_count()).difference(*used).iter() {
        if inv_b[cand] != inv_a[v] {
            continue;
        }
        if b.neighbors(cand).intersection(mapped) != required {
            continue;
        }
        mapping[v] = cand;
        used.insert(cand);
        if extend_mapping(a, b, inv_a, inv_b, order, depth + 1, mapping, used) {
            return true;
        }
        used.remove(cand);
        mapping[v] = usize::MAX;
    }
    false
}
