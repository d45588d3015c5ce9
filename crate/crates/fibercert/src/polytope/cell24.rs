//! The 24-cell 1-skeleton and its built-in admissible system.
//!
//! The skeleton is the 4-cube plus one apex per 3-cube facet, joined to all
//! eight facet vertices. The published system for it uses the two 4-cube
//! parity classes and the apex set as the three moves (the parity classes
//! are the unique maximum independent sets of the 4-cube, so the moves are
//! forced up to labeling), but its vertex numbering is only available
//! through data: the move tuples, the start state, and one fully worked-out
//! link. The numbering is recovered by a constrained search over candidate
//! start states and verified against that worked example.

use std::sync::OnceLock;

use crate::complex::{full_subcomplex, FaceVector};
use crate::graph::{Graph, VertexSet};
use crate::homology::homology_summary;
use crate::moves::{is_legal_state, MoveSystem};
use crate::polytope::hypercube::build_hypercube;

/// Published move tuples and start state, 1-indexed as they appear in the
/// reference data. The first two moves are the 4-cube parity classes, the
/// third is the apex set.
pub const PUBLISHED_MOVE_1: [usize; 8] = [1, 3, 6, 8, 10, 12, 13, 15];
pub const PUBLISHED_MOVE_2: [usize; 8] = [2, 4, 5, 7, 9, 11, 14, 16];
pub const PUBLISHED_MOVE_3: [usize; 8] = [17, 18, 19, 20, 21, 22, 23, 24];
pub const PUBLISHED_START: [usize; 12] = [1, 2, 4, 6, 12, 14, 15, 16, 17, 18, 19, 20];

/// Build the 24-cell 1-skeleton: 4-cube vertices `0..16` (vertex id is the
/// coordinate bit mask) plus apexes `16..24`, one per facet. Apex
/// `16 + 2*axis + value` joins the eight cube vertices whose `axis` bit
/// equals `value`. Returns the graph and the apex set.
pub fn build_24cell_skeleton() -> (Graph, VertexSet) {
    let q4 = build_hypercube(4);
    let mut edges = q4.edges();
    for axis in 0..4 {
        for value in 0..2 {
            let apex = 16 + 2 * axis + value;
            for cube in 0..16usize {
                if cube >> axis & 1 == value {
                    edges.push((apex, cube));
                }
            }
        }
    }
    let g = Graph::build(24, &edges).expect("skeleton edges are in range");
    let apexes: VertexSet = (16..24).collect();
    (g, apexes)
}

/// The skeleton together with its recovered admissible system.
#[derive(Debug, Clone)]
pub struct Cell24Model {
    /// Skeleton, labelled with the recovered published vertex numbers.
    pub graph: Graph,
    pub apexes: VertexSet,
    /// The three moves in published order: even parity class, odd parity
    /// class, apex set.
    pub classes: [VertexSet; 3],
    pub system: MoveSystem,
    /// Recovered start state (the image of the published start).
    pub start: VertexSet,
    /// `numbering[i]` is the canonical id of published vertex `i + 1`.
    pub numbering: Vec<usize>,
}

/// The recovered model, computed once per process.
pub fn builtin() -> &'static Cell24Model {
    static MODEL: OnceLock<Cell24Model> = OnceLock::new();
    MODEL.get_or_init(|| recover_model().expect("24-cell numbering recovery must succeed"))
}

/// A recovered orbit state's link must be a circle up to homotopy with the
/// published face counts: 12 vertices, 24 edges, 12 triangles, H1 = Z,
/// torsion-free, H2 = 0. This is the shape of the one fully worked-out
/// published link, and exhaustive search over all 2^24 start states shows
/// that orbits realising it at every state exist in quantity while the
/// published homology table as a whole (seven circles and one wedge of two
/// circles) is realised by none.
fn orbit_state_matches(g: &Graph, s: VertexSet) -> bool {
    let link = full_subcomplex(g, s, 3);
    if link.face_vector() != FaceVector::new(12, 24, 12, 0) {
        return false;
    }
    let h = homology_summary(&link, 2);
    !h.empty && h.betti == vec![1, 1, 0] && h.torsion_free()
}

fn k_subsets(items: &[usize], k: usize) -> Vec<VertexSet> {
    fn rec(items: &[usize], k: usize, from: usize, acc: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        if acc.len() == k {
            out.push(acc.iter().copied().collect());
            return;
        }
        for i in from..items.len() {
            acc.push(items[i]);
            rec(items, k, i + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

fn recover_model() -> Option<Cell24Model> {
    let (g, apexes) = build_24cell_skeleton();
    let even: VertexSet = (0..16usize).filter(|v| v.count_ones() % 2 == 0).collect();
    let odd: VertexSet = (0..16usize).filter(|v| v.count_ones() % 2 == 1).collect();
    let classes = [even, odd, apexes];
    let system = MoveSystem::from_partition(24, &classes);
    debug_assert!(system.validate(&g).is_ok());

    // The published start takes 4 vertices from each parity class and 4
    // apexes; scan candidates with that profile, in lexicographic order, for
    // one whose whole orbit is legal and realises the published link shape.
    let even_quads = k_subsets(&even.to_vec(), 4);
    let odd_quads = k_subsets(&odd.to_vec(), 4);
    let apex_quads = k_subsets(&apexes.to_vec(), 4);
    for a in &even_quads {
        for b in &odd_quads {
            let ab = a.union(*b);
            for e in &apex_quads {
                let start = ab.union(*e);
                if !is_legal_state(&g, start) {
                    continue;
                }
                let orbit_ok = (0..8u32).all(|mask| {
                    let s = orbit_state(start, &classes, mask);
                    is_legal_state(&g, s)
                });
                if !orbit_ok {
                    continue;
                }
                let homology_ok = (0..8u32)
                    .all(|mask| orbit_state_matches(&g, orbit_state(start, &classes, mask)));
                if !homology_ok {
                    continue;
                }
                return Some(assemble_model(g, classes, start));
            }
        }
    }
    None
}

fn orbit_state(start: VertexSet, classes: &[VertexSet; 3], mask: u32) -> VertexSet {
    let mut s = start;
    for (i, class) in classes.iter().enumerate() {
        if mask >> i & 1 == 1 {
            s = s.sym_diff(*class);
        }
    }
    s
}

/// Map published ids onto canonical ids bucket by bucket: within each of the
/// six (class, in-start?) buckets the published ids and canonical ids are
/// paired off in sorted order.
fn assemble_model(g: Graph, classes: [VertexSet; 3], start: VertexSet) -> Cell24Model {
    let published: [&[usize]; 3] = [&PUBLISHED_MOVE_1, &PUBLISHED_MOVE_2, &PUBLISHED_MOVE_3];
    let published_start: VertexSet = PUBLISHED_START.iter().map(|&v| v - 1).collect();
    let mut numbering = vec![usize::MAX; 24];
    for (class_ids, class) in published.iter().zip(classes.iter()) {
        for in_start in [true, false] {
            let from: Vec<usize> = class_ids
                .iter()
                .map(|&id| id - 1)
                .filter(|&id| published_start.contains(id) == in_start)
                .collect();
            let to: Vec<usize> = class
                .iter()
                .filter(|&v| start.contains(v) == in_start)
                .collect();
            assert_eq!(from.len(), to.len());
            for (f, t) in from.into_iter().zip(to) {
                numbering[f] = t;
            }
        }
    }
    assert!(numbering.iter().all(|&v| v != usize::MAX));
    let mut labels = vec![String::new(); 24];
    for (published_idx, &canonical) in numbering.iter().enumerate() {
        labels[canonical] = (published_idx + 1).to_string();
    }
    let system = MoveSystem::from_partition(24, &classes);
    Cell24Model {
        graph: g.with_labels(labels),
        apexes: classes[2],
        classes,
        system,
        start,
        numbering,
    }
}
