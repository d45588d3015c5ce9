//! Two independent constructions of the 600-cell 1-skeleton, the torus-grid
//! labeling that defines its 20-move system, and the oracle that admits a
//! grid variant only if it really is the 600-cell.
//!
//! The coordinate model is ground truth: 120 exact golden-ratio points with
//! edges at minimal squared distance. The grid model (a 10x10 torus plus two
//! decagons of hovering vertices) is how the move system is described, but
//! its edge families are ambiguous in places, so every reading is carried as
//! a variant and [`verify_600cell`] decides which ones are the real thing.

use std::fmt;
use std::sync::OnceLock;

use crate::complex::{flag_complex, full_subcomplex, FaceVector};
use crate::golden::{squared_distance, GoldenInt, GoldenPoint};
use crate::graph::{Graph, VertexSet};
use crate::homology::homology_summary;
use crate::moves::MoveSystem;

/// Squared edge length of the 600-cell at circumradius 2: `8 - 4*phi`.
const EDGE_SQUARED: GoldenInt = GoldenInt::new(8, -4);

/// The 120 vertices as exact points at circumradius 2: the 8 axis points
/// `(+-2, 0, 0, 0)`, the 16 points `(+-1, +-1, +-1, +-1)`, and 96 even
/// permutations of `(+-phi, +-1, +-(phi-1), 0)`.
pub fn coordinate_vertices() -> Vec<GoldenPoint> {
    let zero = GoldenInt::ZERO;
    let one = GoldenInt::ONE;
    let two = GoldenInt::new(2, 0);
    let phi = GoldenInt::PHI;
    let inv_phi = GoldenInt::new(-1, 1);

    let mut points: Vec<GoldenPoint> = Vec::with_capacity(120);
    for axis in 0..4 {
        for sign in [1i64, -1] {
            let mut p = [zero; 4];
            p[axis] = if sign > 0 { two } else { -two };
            points.push(p);
        }
    }
    for mask in 0..16u32 {
        let mut p = [one; 4];
        for (i, c) in p.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *c = -*c;
            }
        }
        points.push(p);
    }
    let values = [phi, one, inv_phi, zero];
    for perm in even_permutations() {
        for signs in 0..8u32 {
            let mut p = [zero; 4];
            for (slot, &source) in perm.iter().enumerate() {
                let mut v = values[source];
                if source < 3 && signs >> source & 1 == 1 {
                    v = -v;
                }
                p[slot] = v;
            }
            points.push(p);
        }
    }
    debug_assert_eq!(points.len(), 120);
    points
}

fn even_permutations() -> Vec<[usize; 4]> {
    let mut perms = Vec::with_capacity(24);
    let mut items = [0usize, 1, 2, 3];
    permute(&mut items, 0, &mut perms);
    perms.retain(|p| {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    });
    debug_assert_eq!(perms.len(), 12);
    perms
}

fn permute(items: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == 4 {
        out.push(*items);
        return;
    }
    for i in k..4 {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Ground-truth 600-cell skeleton: vertices from [`coordinate_vertices`],
/// edges between pairs at the minimal nonzero squared distance. Panics if
/// the result is not 12-regular, which would mean the coordinates are wrong.
pub fn build_600cell_coordinate() -> Graph {
    let points = coordinate_vertices();
    let n = points.len();
    let mut edges = Vec::with_capacity(720);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = squared_distance(&points[i], &points[j]);
            assert!(
                !d.is_zero(),
                "coordinate model has duplicate vertices {i} and {j}"
            );
            assert!(
                d >= EDGE_SQUARED,
                "pair ({i},{j}) closer than the edge length"
            );
            if d == EDGE_SQUARED {
                edges.push((i, j));
            }
        }
    }
    let g = Graph::build(n, &edges).expect("edge list is in range");
    for v in 0..n {
        assert_eq!(g.degree(v), 12, "coordinate model must be 12-regular");
    }
    g
}

/// Which same-parity skip edges run vertically and which horizontally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipOrientation {
    /// Even vertices skip two rows within a column; odd vertices skip two
    /// columns within a row.
    EvenVerticalOddHorizontal,
    EvenHorizontalOddVertical,
}

/// How many diagonals each grid square receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalRule {
    /// Both diagonals in every square (200 edges).
    BothPerSquare,
    /// One diagonal per square, main direction on even squares (100 edges).
    CheckerboardMain,
    /// One diagonal per square, anti direction on even squares (100 edges).
    CheckerboardAnti,
}

/// One reading of the grid construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridVariant {
    /// A vertex `(r, c)` is even iff `(r + c + parity) % 2 == 0`.
    pub parity: usize,
    pub skips: SkipOrientation,
    pub diagonals: DiagonalRule,
}

impl GridVariant {
    pub const DEFAULT: GridVariant = GridVariant {
        parity: 0,
        skips: SkipOrientation::EvenVerticalOddHorizontal,
        diagonals: DiagonalRule::BothPerSquare,
    };

    /// All 12 readings, default first.
    pub fn all() -> Vec<GridVariant> {
        let mut out = Vec::with_capacity(12);
        for parity in 0..2 {
            for skips in [
                SkipOrientation::EvenVerticalOddHorizontal,
                SkipOrientation::EvenHorizontalOddVertical,
            ] {
                for diagonals in [
                    DiagonalRule::BothPerSquare,
                    DiagonalRule::CheckerboardMain,
                    DiagonalRule::CheckerboardAnti,
                ] {
                    out.push(GridVariant {
                        parity,
                        skips,
                        diagonals,
                    });
                }
            }
        }
        out
    }

    pub fn from_index(index: usize) -> Option<GridVariant> {
        Self::all().get(index).copied()
    }

    pub fn index(&self) -> usize {
        Self::all()
            .iter()
            .position(|v| v == self)
            .expect("variant is one of all()")
    }

    fn is_even(&self, r: usize, c: usize) -> bool {
        (r + c + self.parity).is_multiple_of(2)
    }
}

/// Vertex ids of the torus grid and the two hovering decagons.
///
/// Ordinary vertex `(r, c)` has id `10r + c`; even hovering vertex `k`
/// (between columns `k` and `k+1`) has id `100 + k`; odd hovering vertex `k`
/// (between rows `k` and `k+1`) has id `110 + k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GridLayout;

impl GridLayout {
    pub fn ordinary(&self, r: usize, c: usize) -> usize {
        debug_assert!(r < 10 && c < 10);
        10 * r + c
    }

    pub fn even_hovering(&self, k: usize) -> usize {
        debug_assert!(k < 10);
        100 + k
    }

    pub fn odd_hovering(&self, k: usize) -> usize {
        debug_assert!(k < 10);
        110 + k
    }

    pub fn is_ordinary(&self, v: usize) -> bool {
        v < 100
    }

    pub fn row_col(&self, v: usize) -> Option<(usize, usize)> {
        self.is_ordinary(v).then_some((v / 10, v % 10))
    }
}

/// Build the grid model of the 600-cell under one variant. Validation is
/// [`verify_600cell`]'s job, not this constructor's.
pub fn build_600cell_grid(variant: GridVariant) -> (Graph, GridLayout) {
    let layout = GridLayout;
    let mut edges = Vec::with_capacity(720);
    // 200 torus grid edges.
    for r in 0..10 {
        for c in 0..10 {
            edges.push((layout.ordinary(r, c), layout.ordinary(r, (c + 1) % 10)));
            edges.push((layout.ordinary(r, c), layout.ordinary((r + 1) % 10, c)));
        }
    }
    // Diagonals of each square, by rule.
    for r in 0..10 {
        for c in 0..10 {
            let main = (
                layout.ordinary(r, c),
                layout.ordinary((r + 1) % 10, (c + 1) % 10),
            );
            let anti = (
                layout.ordinary((r + 1) % 10, c),
                layout.ordinary(r, (c + 1) % 10),
            );
            match variant.diagonals {
                DiagonalRule::BothPerSquare => {
                    edges.push(main);
                    edges.push(anti);
                }
                DiagonalRule::CheckerboardMain => {
                    edges.push(if variant.is_even(r, c) { main } else { anti });
                }
                DiagonalRule::CheckerboardAnti => {
                    edges.push(if variant.is_even(r, c) { anti } else { main });
                }
            }
        }
    }
    // 100 same-parity skip edges.
    for r in 0..10 {
        for c in 0..10 {
            let vertical = (layout.ordinary(r, c), layout.ordinary((r + 2) % 10, c));
            let horizontal = (layout.ordinary(r, c), layout.ordinary(r, (c + 2) % 10));
            let even = variant.is_even(r, c);
            let edge = match variant.skips {
                SkipOrientation::EvenVerticalOddHorizontal => {
                    if even {
                        vertical
                    } else {
                        horizontal
                    }
                }
                SkipOrientation::EvenHorizontalOddVertical => {
                    if even {
                        horizontal
                    } else {
                        vertical
                    }
                }
            };
            edges.push(edge);
        }
    }
    // 200 hovering-to-ordinary edges: even hovering k sees the ten even
    // vertices of columns k and k+1; odd hovering k the ten odd vertices of
    // rows k and k+1.
    for k in 0..10 {
        for r in 0..10 {
            for c in [k, (k + 1) % 10] {
                if variant.is_even(r, c) {
                    edges.push((layout.even_hovering(k), layout.ordinary(r, c)));
                }
            }
        }
        for r in [k, (k + 1) % 10] {
            for c in 0..10 {
                if !variant.is_even(r, c) {
                    edges.push((layout.odd_hovering(k), layout.ordinary(r, c)));
                }
            }
        }
    }
    // 20 hovering cycle edges.
    for k in 0..10 {
        edges.push((layout.even_hovering(k), layout.even_hovering((k + 1) % 10)));
        edges.push((layout.odd_hovering(k), layout.odd_hovering((k + 1) % 10)));
    }
    let mut labels = vec![String::new(); 120];
    for r in 0..10 {
        for c in 0..10 {
            labels[layout.ordinary(r, c)] = format!("r{r}c{c}");
        }
    }
    for k in 0..10 {
        labels[layout.even_hovering(k)] = format!("h{k}");
        labels[layout.odd_hovering(k)] = format!("g{k}");
    }
    let g = Graph::build(120, &edges)
        .expect("grid edges are in range")
        .with_labels(labels);
    (g, layout)
}

/// Names of the 20 label classes: `0..=9` for ordinary labels, `0'..=9'`
/// for hovering labels (class index 10 + j).
pub fn class_name(class: usize) -> String {
    if class < 10 {
        class.to_string()
    } else {
        format!("{}'", class - 10)
    }
}

/// A class that is not an independent set, with one offending edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelViolation {
    pub class: usize,
    pub u: usize,
    pub v: usize,
}

impl fmt::Display for LabelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "label class {} contains adjacent vertices {} and {}",
            class_name(self.class),
            self.u,
            self.v
        )
    }
}

/// Per-vertex label classes for the grid model.
#[derive(Debug, Clone)]
pub struct GridLabeling {
    /// Ordinary label formula multiplier: label of `(r, c)` is
    /// `(c + k*r) mod 10`.
    pub multiplier: usize,
    /// `label[v]` is the class index of vertex `v` (0..20).
    pub label: Vec<usize>,
    /// `classes[i]` is the vertex set of class `i`.
    pub classes: Vec<VertexSet>,
}

/// Label the grid: ordinary vertex `(r, c)` gets `(c + k*r) mod 10`; the
/// even hovering cycle is labelled `0', 2', 4', 6', 8'` twice around, the
/// odd one `1', 3', 5', 7', 9'` twice around (antipodal pairs share a
/// class). Returns every non-independent class as a violation.
pub fn assign_labels(
    g: &Graph,
    layout: &GridLayout,
    k: usize,
) -> Result<GridLabeling, Vec<LabelViolation>> {
    assert!(k < 10);
    let mut label = vec![0usize; 120];
    for r in 0..10 {
        for c in 0..10 {
            label[layout.ordinary(r, c)] = (c + k * r) % 10;
        }
    }
    for j in 0..10 {
        label[layout.even_hovering(j)] = 10 + (2 * j) % 10;
        label[layout.odd_hovering(j)] = 10 + (2 * j + 1) % 10;
    }
    let mut classes = vec![VertexSet::EMPTY; 20];
    for (v, &class) in label.iter().enumerate() {
        classes[class].insert(v);
    }
    let mut violations = Vec::new();
    for (class, &members) in classes.iter().enumerate() {
        for u in members.iter() {
            for v in g.neighbors(u).intersection(members).iter() {
                if v > u {
                    violations.push(LabelViolation { class, u, v });
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(GridLabeling {
            multiplier: k,
            label,
            classes,
        })
    } else {
        Err(violations)
    }
}

/// Multipliers whose label classes are all independent, scanned rather than
/// assumed.
pub fn valid_label_multipliers(g: &Graph, layout: &GridLayout) -> Vec<usize> {
    (0..10)
        .filter(|&k| assign_labels(g, layout, k).is_ok())
        .collect()
}

/// One failed check from [`verify_600cell`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell600Defect {
    WrongVertexCount {
        got: usize,
    },
    WrongEdgeCount {
        got: usize,
    },
    NotRegular {
        vertex: usize,
        degree: usize,
    },
    WrongFaceVector {
        got: FaceVector,
    },
    BadVertexLink {
        vertex: usize,
        face_vector: FaceVector,
        connected: bool,
    },
    WrongHomology {
        betti: Vec<usize>,
        torsion_free: bool,
    },
    NotIsomorphicToCoordinateModel,
}

impl fmt::Display for Cell600Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell600Defect::WrongVertexCount { got } => {
                write!(f, "expected 120 vertices, got {got}")
            }
            Cell600Defect::WrongEdgeCount { got } => write!(f, "expected 720 edges, got {got}"),
            Cell600Defect::NotRegular { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree}, expected 12")
            }
            Cell600Defect::WrongFaceVector { got } => write!(
                f,
                "flag complex face vector {:?}, expected (120, 720, 1200, 600)",
                got.counts
            ),
            Cell600Defect::BadVertexLink { vertex, face_vector, connected } => write!(
                f,
                "link of vertex {vertex} has face vector {:?} (connected: {connected}), expected icosahedron (12, 30, 20)",
                face_vector.counts
            ),
            Cell600Defect::WrongHomology { betti, torsion_free } => write!(
                f,
                "flag complex homology betti {betti:?} torsion-free {torsion_free}, expected (1, 0, 0, 1) torsion-free"
            ),
            Cell600Defect::NotIsomorphicToCoordinateModel => {
                write!(f, "graph is not isomorphic to the coordinate model")
            }
        }
    }
}

/// Accept a graph as the 600-cell 1-skeleton: counts, regularity, flag face
/// vector, icosahedral vertex links, 3-sphere homology, and an isomorphism
/// onto the coordinate model. The expensive checks run only once the cheap
/// structural ones pass, since their output on a wrong graph is noise.
pub fn verify_600cell(g: &Graph) -> Result<(), Vec<Cell600Defect>> {
    let mut defects = Vec::new();
    if g.vertex_count() != 120 {
        defects.push(Cell600Defect::WrongVertexCount {
            got: g.vertex_count(),
        });
    }
    if g.edge_count() != 720 {
        defects.push(Cell600Defect::WrongEdgeCount {
            got: g.edge_count(),
        });
    }
    for v in 0..g.vertex_count() {
        if g.degree(v) != 12 {
            defects.push(Cell600Defect::NotRegular {
                vertex: v,
                degree: g.degree(v),
            });
        }
    }
    if defects.is_empty() {
        let k = flag_complex(g, 3);
        if k.face_vector() != FaceVector::new(120, 720, 1200, 600) {
            defects.push(Cell600Defect::WrongFaceVector {
                got: k.face_vector(),
            });
        }
        for v in 0..g.vertex_count() {
            let link = full_subcomplex(g, g.neighbors(v), 3);
            let connected = g.is_connected_induced(g.neighbors(v));
            if link.face_vector() != FaceVector::new(12, 30, 20, 0) || !connected {
                defects.push(Cell600Defect::BadVertexLink {
                    vertex: v,
                    face_vector: link.face_vector(),
                    connected,
                });
            }
        }
        if defects.is_empty() {
            let h = homology_summary(&k, 3);
            if h.betti != vec![1, 0, 0, 1] || !h.torsion_free() {
                defects.push(Cell600Defect::WrongHomology {
                    betti: h.betti.clone(),
                    torsion_free: h.torsion_free(),
                });
            }
            if g.is_isomorphic(&build_600cell_coordinate()).is_none() {
                defects.push(Cell600Defect::NotIsomorphicToCoordinateModel);
            }
        }
    }
    if defects.is_empty() {
        Ok(())
    } else {
        Err(defects)
    }
}

/// Default ordinary-label multiplier. Of the multipliers with independent
/// classes ({2, 3, 4, 6, 7, 8}), exactly 3 and its mirror 7 make every one
/// of the 2^20 orbit states legal; the others strand thousands of states.
/// The acceptance suite re-proves this exhaustively on every run.
pub const DEFAULT_LABEL_MULTIPLIER: usize = 3;

/// The grid model with its admitted variant, labeling, 20-move system, and
/// starting state.
#[derive(Debug, Clone)]
pub struct Cell600Model {
    pub variant: GridVariant,
    pub graph: Graph,
    pub layout: GridLayout,
    pub labeling: GridLabeling,
    pub system: MoveSystem,
    pub start: VertexSet,
}

/// Starting state: the 50 vertices of the five even rows, plus alternate
/// vertices of each hovering decagon (one per hovering class).
pub fn start_state(layout: &GridLayout) -> VertexSet {
    let mut s = VertexSet::EMPTY;
    for r in (0..10).step_by(2) {
        for c in 0..10 {
            s.insert(layout.ordinary(r, c));
        }
    }
    for j in (0..10).step_by(2) {
        s.insert(layout.even_hovering(j));
        s.insert(layout.odd_hovering(j));
    }
    s
}

/// The eight phase choices for the starting state: alternate rows times
/// alternate even-hovering times alternate odd-hovering. They all lie in
/// one orbit, so any admissible one certifies them all.
pub fn start_state_phases(layout: &GridLayout) -> Vec<VertexSet> {
    let mut out = Vec::with_capacity(8);
    for row_phase in 0..2 {
        for even_phase in 0..2 {
            for odd_phase in 0..2 {
                let mut s = VertexSet::EMPTY;
                for r in (row_phase..10).step_by(2) {
                    for c in 0..10 {
                        s.insert(layout.ordinary(r, c));
                    }
                }
                for j in (even_phase..10).step_by(2) {
                    s.insert(layout.even_hovering(j));
                }
                for j in (odd_phase..10).step_by(2) {
                    s.insert(layout.odd_hovering(j));
                }
                out.push(s);
            }
        }
    }
    out
}

/// The default 600-cell model, computed once per process.
pub fn builtin() -> &'static Cell600Model {
    static MODEL: OnceLock<Cell600Model> = OnceLock::new();
    MODEL.get_or_init(|| {
        let variant = GridVariant::DEFAULT;
        let (graph, layout) = build_600cell_grid(variant);
        let labeling = assign_labels(&graph, &layout, DEFAULT_LABEL_MULTIPLIER)
            .expect("default multiplier has independent classes");
        let system = MoveSystem::from_partition(120, &labeling.classes);
        debug_assert!(system.validate(&graph).is_ok());
        let start = start_state(&layout);
        Cell600Model {
            variant,
            graph,
            layout,
            labeling,
            system,
            start,
        }
    })
}
