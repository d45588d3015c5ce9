//! States, moves, move systems, and orbits under the generated `Z_2` group.
//!
//! A state is a vertex subset; a move at `v` is a subset that contains `v`
//! and avoids the neighbourhood of `v`. Moves act on states by symmetric
//! difference. The orbit of a starting state is indexed by coordinate
//! vectors over an independent basis of the distinct moves, and a system is
//! admissible when every orbit state is legal.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Hard ceiling on enumerable orbit sizes (2^24 states).
pub const ORBIT_RANK_CAP: u32 = 24;

/// True iff both `s` and its complement induce nonempty connected subgraphs.
pub fn is_legal_state(g: &Graph, s: VertexSet) -> bool {
    g.is_connected_induced(s) && g.is_connected_induced(s.complement(g.vertex_count()))
}

/// Direction a Morse 1-cube takes at a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeDirection {
    Outgoing,
    Incoming,
}

/// A 1-cube labelled by vertex `v` points away from a state `s` exactly when
/// `v` lies in `s`.
pub fn edge_direction(s: VertexSet, v: usize) -> EdgeDirection {
    if s.contains(v) {
        EdgeDirection::Outgoing
    } else {
        EdgeDirection::Incoming
    }
}

/// One broken move-system requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveViolation {
    /// `moves[vertex]` does not contain `vertex`.
    MissingSelf { vertex: usize },
    /// `moves[vertex]` contains a neighbour `witness` of `vertex`.
    HitsNeighbor { vertex: usize, witness: usize },
}

/// A choice of move for every vertex, with the deduplicated generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSystem {
    n: usize,
    moves: Vec<VertexSet>,
    distinct: Vec<VertexSet>,
}

impl MoveSystem {
    /// Build from one move per vertex. Distinct moves are kept in order of
    /// first appearance.
    pub fn new(moves: Vec<VertexSet>) -> MoveSystem {
        let n = moves.len();
        let mut distinct: Vec<VertexSet> = Vec::new();
        for &m in &moves {
            if !distinct.contains(&m) {
                distinct.push(m);
            }
        }
        MoveSystem { n, moves, distinct }
    }

    /// Build a label-class system: the classes must partition `{0, …, n-1}`
    /// and each vertex's move is its own class.
    pub fn from_partition(n: usize, classes: &[VertexSet]) -> MoveSystem {
        let mut moves = vec![VertexSet::EMPTY; n];
        let mut covered = VertexSet::EMPTY;
        for &class in classes {
            assert!(
                class.intersection(covered).is_empty(),
                "label classes must be disjoint"
            );
            covered = covered.union(class);
            for v in class.iter() {
                moves[v] = class;
            }
        }
        assert_eq!(
            covered,
            VertexSet::full(n),
            "label classes must cover every vertex"
        );
        MoveSystem::new(moves)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn move_at(&self, v: usize) -> VertexSet {
        self.moves[v]
    }

    pub fn moves(&self) -> &[VertexSet] {
        &self.moves
    }

    /// The deduplicated generators, in order of first appearance.
    pub fn distinct_moves(&self) -> &[VertexSet] {
        &self.distinct
    }

    /// Check the two move properties at every vertex; all violations are
    /// reported, not just the first.
    pub fn validate(&self, g: &Graph) -> Result<(), Vec<MoveViolation>> {
        assert_eq!(g.vertex_count(), self.n);
        let mut violations = Vec::new();
        for v in 0..self.n {
            if !self.moves[v].contains(v) {
                violations.push(MoveViolation::MissingSelf { vertex: v });
            }
            for witness in self.moves[v].intersection(g.neighbors(v)).iter() {
                violations.push(MoveViolation::HitsNeighbor { vertex: v, witness });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrbitError {
    #[error("orbit rank {rank} exceeds the cap of {ORBIT_RANK_CAP} (2^{ORBIT_RANK_CAP} states)")]
    TooLarge { rank: u32 },
}

/// Coordinates of an orbit state: one bit per basis generator.
///
/// Bit `j` of the bitstring (leftmost character first) is the coefficient of
/// generator `j`; the packed index stores bit `j` at position `rank - 1 - j`,
/// so ascending index order is ascending lexicographic order of bitstrings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitCoords {
    pub index: u64,
    pub rank: u32,
}

impl OrbitCoords {
    pub fn bit(&self, generator: u32) -> bool {
        debug_assert!(generator < self.rank);
        self.index >> (self.rank - 1 - generator) & 1 == 1
    }

    pub fn bitstring(&self) -> String {
        (0..self.rank)
            .map(|j| if self.bit(j) { '1' } else { '0' })
            .collect()
    }

    pub fn parse(s: &str) -> Option<OrbitCoords> {
        if s.is_empty() || s.len() > 64 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return None;
        }
        let index = u64::from_str_radix(s, 2).ok()?;
        Some(OrbitCoords {
            index,
            rank: s.len() as u32,
        })
    }
}

impl fmt::Display for OrbitCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bitstring())
    }
}

/// The orbit of a starting state under the group generated by a move system.
///
/// States are recomputed from coordinates on demand rather than stored.
#[derive(Debug, Clone)]
pub struct Orbit {
    start: VertexSet,
    generators: Vec<VertexSet>,
    basis: Vec<VertexSet>,
    /// Echelon rows paired with the generator combination producing them,
    /// for solving membership queries over F2.
    echelon: Vec<(u128, u64)>,
}

impl Orbit {
    pub fn start(&self) -> VertexSet {
        self.start
    }

    /// Distinct moves of the generating system.
    pub fn generators(&self) -> &[VertexSet] {
        &self.generators
    }

    /// Independent generator subset actually indexing the orbit.
    pub fn basis(&self) -> &[VertexSet] {
        &self.basis
    }

    pub fn rank(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn len(&self) -> u64 {
        1u64 << self.rank()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coords(&self, index: u64) -> OrbitCoords {
        debug_assert!(index < self.len());
        OrbitCoords {
            index,
            rank: self.rank(),
        }
    }

    /// State at the given coordinate index: the start state xor every basis
    /// generator whose coordinate bit is set.
    pub fn state_at(&self, index: u64) -> VertexSet {
        let rank = self.rank();
        let mut s = self.start;
        for j in 0..rank {
            if index >> (rank - 1 - j) & 1 == 1 {
                s = s.sym_diff(self.basis[j as usize]);
            }
        }
        s
    }

    /// Coordinates of an arbitrary set, if it lies in the orbit.
    pub fn coords_of(&self, state: VertexSet) -> Option<OrbitCoords> {
        let mut diff = state.sym_diff(self.start).bits();
        let mut combo = 0u64;
        for &(row, c) in &self.echelon {
            let lead = 127 - row.leading_zeros();
            if diff >> lead & 1 == 1 {
                diff ^= row;
                combo ^= c;
            }
        }
        if diff != 0 {
            return None;
        }
        let rank = self.rank();
        let mut index = 0u64;
        for j in 0..rank {
            if combo >> j & 1 == 1 {
                index |= 1 << (rank - 1 - j);
            }
        }
        Some(OrbitCoords { index, rank })
    }

    /// Iterate `(coords, state)` in Gray-code order: consecutive states
    /// differ by exactly one generator toggle.
    pub fn states(&self) -> impl Iterator<Item = (OrbitCoords, VertexSet)> + '_ {
        let total = self.len();
        let rank = self.rank();
        let mut state = self.start;
        let mut prev_gray = 0u64;
        (0..total).map(move |k| {
            let gray = k ^ (k >> 1);
            let flipped = gray ^ prev_gray;
            if flipped != 0 {
                let bit = flipped.trailing_zeros();
                state = state.sym_diff(self.basis[(rank - 1 - bit) as usize]);
            }
            prev_gray = gray;
            (OrbitCoords { index: gray, rank }, state)
        })
    }
}

/// Enumerate the orbit of `start` under the distinct moves of `ms`.
///
/// The rank is computed by Gaussian elimination over F2; orbits larger than
/// 2^24 states are refused outright.
pub fn enumerate_orbit(ms: &MoveSystem, start: VertexSet) -> Result<Orbit, OrbitError> {
    let mut echelon: Vec<(u128, u64)> = Vec::new();
    let mut basis: Vec<VertexSet> = Vec::new();
    for &m in ms.distinct_moves() {
        let mut x = m.bits();
        let mut combo = 0u64;
        for &(row, c) in &echelon {
            let lead = 127 - row.leading_zeros();
            if x >> lead & 1 == 1 {
                x ^= row;
                combo ^= c;
            }
        }
        if x != 0 {
            if basis.len() as u32 >= ORBIT_RANK_CAP {
                return Err(OrbitError::TooLarge {
                    rank: basis.len() as u32 + 1,
                });
            }
            combo ^= 1 << basis.len();
            basis.push(m);
            echelon.push((x, combo));
            echelon.sort_by_key(|&(row, _)| std::cmp::Reverse(row.leading_zeros()));
        }
    }
    // Re-reduce rows so each leading bit appears in exactly one row; keeps
    // coords_of a single forward pass.
    for i in 0..echelon.len() {
        for j in 0..echelon.len() {
            if i != j {
                let (row_j, c_j) = echelon[j];
                let lead = 127 - row_j.leading_zeros();
                if echelon[i].0 >> lead & 1 == 1 {
                    echelon[i].0 ^= row_j;
                    echelon[i].1 ^= c_j;
                }
            }
        }
    }
    echelon.sort_by_key(|&(row, _)| row.leading_zeros());
    Ok(Orbit {
        start,
        generators: ms.distinct_moves().to_vec(),
        basis,
        echelon,
    })
}

/// Outcome of an admissibility check over a whole orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub orbit_size: u64,
    pub legal_count: u64,
    /// Lexicographically least coordinates of an illegal state, when any.
    pub first_illegal: Option<OrbitCoords>,
}

/// Check that every state in the orbit of `start` is legal.
///
/// The coordinate space is scanned in parallel; the reported witness is the
/// least illegal index regardless of scheduling.
pub fn is_admissible(
    g: &Graph,
    ms: &MoveSystem,
    start: VertexSet,
) -> Result<AdmissibilityReport, OrbitError> {
    let orbit = enumerate_orbit(ms, start)?;
    let total = orbit.len();
    let chunk = 1u64 << orbit.rank().min(12);
    let results: Vec<(u64, Option<u64>)> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = (lo + chunk).min(total);
            let mut legal = 0u64;
            let mut first_illegal = None;
            for i in lo..hi {
                if is_legal_state(g, orbit.state_at(i)) {
                    legal += 1;
                } else if first_illegal.is_none() {
                    first_illegal = Some(i);
                }
            }
            (legal, first_illegal)
        })
        .collect();
    let legal_count: u64 = results.iter().map(|(l, _)| l).sum();
    let first_illegal = results
        .iter()
        .filter_map(|(_, w)| *w)
        .min()
        .map(|index| orbit.coords(index));
    Ok(AdmissibilityReport {
        admissible: legal_count == total,
        orbit_size: total,
        legal_count,
        first_illegal,
    })
}

/// Filter candidate starting states down to those whose whole orbit is
/// legal, preserving generation order.
pub fn search_starting_states(
    g: &Graph,
    ms: &MoveSystem,
    candidates: impl Iterator<Item = VertexSet>,
) -> Result<Vec<VertexSet>, OrbitError> {
    let mut found = Vec::new();
    for s0 in candidates {
        if !is_legal_state(g, s0) {
            continue;
        }
        if is_admissible(g, ms, s0)?.admissible {
            found.push(s0);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    fn path(n: usize) -> Graph {
        Graph::build(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    fn vs(members: &[usize]) -> VertexSet {
        members.iter().copied().collect()
    }

    #[test]
    fn legality_on_path() {
        let p3 = path(3);
        assert!(is_legal_state(&p3, vs(&[0])));
        assert!(!is_legal_state(&p3, vs(&[0, 2])));
        assert!(!is_legal_state(&p3, VertexSet::EMPTY));
        assert!(!is_legal_state(&p3, p3.vertex_set()));
    }

    #[test]
    fn validate_accepts_partition_system() {
        let p3 = path(3);
        let ms = MoveSystem::from_partition(3, &[vs(&[0, 2]), vs(&[1])]);
        assert!(ms.validate(&p3).is_ok());
        assert_eq!(ms.distinct_moves().len(), 2);
    }

    #[test]
    fn validate_reports_neighbor_violation() {
        let p3 = path(3);
        let ms = MoveSystem::new(vec![vs(&[0]), vs(&[0, 1]), vs(&[2])]);
        let violations = ms.validate(&p3).unwrap_err();
        assert_eq!(
            violations,
            vec![MoveViolation::HitsNeighbor {
                vertex: 1,
                witness: 0
            }]
        );
    }

    #[test]
    fn validate_reports_missing_self() {
        let p3 = path(3);
        let ms = MoveSystem::new(vec![vs(&[0]), vs(&[1]), vs(&[0])]);
        let violations = ms.validate(&p3).unwrap_err();
        assert!(violations.contains(&MoveViolation::MissingSelf { vertex: 2 }));
    }

    #[test]
    fn orbit_of_full_move_is_complement_pair() {
        let g = path(4);
        let full = g.vertex_set();
        let ms = MoveSystem::new(vec![full; 4]);
        let s0 = vs(&[0, 1]);
        let orbit = enumerate_orbit(&ms, s0).unwrap();
        assert_eq!(orbit.rank(), 1);
        assert_eq!(orbit.len(), 2);
        assert_eq!(orbit.state_at(0), s0);
        assert_eq!(orbit.state_at(1), s0.complement(4));
    }

    #[test]
    fn gray_enumeration_toggles_one_generator() {
        let ms = MoveSystem::from_partition(6, &[vs(&[0, 3]), vs(&[1, 4]), vs(&[2, 5])]);
        let orbit = enumerate_orbit(&ms, vs(&[0, 1])).unwrap();
        let states: Vec<_> = orbit.states().collect();
        assert_eq!(states.len(), 8);
        for w in states.windows(2) {
            let diff = w[0].1.sym_diff(w[1].1);
            assert!(
                orbit.basis().contains(&diff),
                "gray step must be one generator"
            );
        }
        // Every coordinate appears exactly once.
        let mut seen: Vec<u64> = states.iter().map(|(c, _)| c.index).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn orbit_closure_and_coords_roundtrip() {
        let ms = MoveSystem::from_partition(6, &[vs(&[0, 3]), vs(&[1, 4]), vs(&[2, 5])]);
        let orbit = enumerate_orbit(&ms, vs(&[0, 1])).unwrap();
        for i in 0..orbit.len() {
            let s = orbit.state_at(i);
            assert_eq!(orbit.coords_of(s), Some(orbit.coords(i)));
            for &m in orbit.generators() {
                assert!(
                    orbit.coords_of(s.sym_diff(m)).is_some(),
                    "orbit must be closed"
                );
            }
        }
        assert_eq!(orbit.coords_of(vs(&[0])), None);
    }

    #[test]
    fn dependent_moves_do_not_inflate_rank() {
        // Third generator is the sym-diff of the first two.
        let ms = MoveSystem::new(vec![vs(&[0, 1]), vs(&[1, 2]), vs(&[0, 2])]);
        let g = Graph::build(3, &[]).unwrap();
        assert!(ms.validate(&g).is_ok());
        let orbit = enumerate_orbit(&ms, VertexSet::EMPTY).unwrap();
        assert_eq!(orbit.generators().len(), 3);
        assert_eq!(orbit.rank(), 2);
    }

    #[test]
    fn admissibility_on_path4_fails_at_start() {
        let p4 = path(4);
        let moves: Vec<VertexSet> = (0..4).map(VertexSet::singleton).collect();
        let ms = MoveSystem::new(moves);
        assert!(ms.validate(&p4).is_ok());
        let report = is_admissible(&p4, &ms, vs(&[0, 2])).unwrap();
        assert!(!report.admissible);
        assert_eq!(report.first_illegal.unwrap().index, 0);
    }

    #[test]
    fn admissible_system_on_path3() {
        let p3 = path(3);
        let ms = MoveSystem::from_partition(3, &[vs(&[0, 2]), vs(&[1])]);
        let report = is_admissible(&p3, &ms, vs(&[0])).unwrap();
        assert!(report.admissible);
        assert_eq!(report.orbit_size, 4);
        assert_eq!(report.legal_count, 4);
    }

    #[test]
    fn admissibility_is_orbit_invariant() {
        let p3 = path(3);
        let ms = MoveSystem::from_partition(3, &[vs(&[0, 2]), vs(&[1])]);
        let orbit = enumerate_orbit(&ms, vs(&[0])).unwrap();
        let verdict = is_admissible(&p3, &ms, vs(&[0])).unwrap().admissible;
        for i in 0..orbit.len() {
            assert_eq!(
                is_admissible(&p3, &ms, orbit.state_at(i))
                    .unwrap()
                    .admissible,
                verdict
            );
        }
    }

    #[test]
    fn singleton_moves_on_path3_admit_no_start() {
        // The generated group is all of 2^V, so every orbit hits the empty
        // state and no candidate survives.
        let p3 = path(3);
        let ms = MoveSystem::new((0..3).map(VertexSet::singleton).collect());
        let candidates = (0u128..8).map(VertexSet::from_bits);
        let found = search_starting_states(&p3, &ms, candidates).unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn search_finds_admissible_starts() {
        let p3 = path(3);
        let ms = MoveSystem::from_partition(3, &[vs(&[0, 2]), vs(&[1])]);
        let found = search_starting_states(&p3, &ms, (0u128..8).map(VertexSet::from_bits)).unwrap();
        // Exactly the four legal states of the single legal orbit.
        assert_eq!(found.len(), 4);
        for s in found {
            assert!(is_legal_state(&p3, s));
        }
    }

    #[test]
    fn orbit_cap_is_enforced() {
        let n = 26;
        let ms = MoveSystem::new((0..n).map(VertexSet::singleton).collect());
        let err = enumerate_orbit(&ms, VertexSet::EMPTY).unwrap_err();
        assert_eq!(err, OrbitError::TooLarge { rank: 25 });
    }

    #[test]
    fn edge_direction_flips_with_membership() {
        let s = vs(&[1, 4]);
        assert_eq!(edge_direction(s, 1), EdgeDirection::Outgoing);
        assert_eq!(edge_direction(s, 2), EdgeDirection::Incoming);
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let s = VertexSet::from_bits(rng.random::<u128>());
            let v = rng.random_range(0..128usize);
            let toggled = s.sym_diff(VertexSet::singleton(v));
            assert_ne!(edge_direction(s, v), edge_direction(toggled, v));
        }
    }

    #[test]
    fn two_cube_consistency_holds_on_random_systems() {
        // For any edge {u, v} and state s, toggling the move at v never
        // changes membership of u: moves avoid neighbourhoods.
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..50 {
            let n = rng.random_range(4..12usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::build(n, &edges).unwrap();
            let moves: Vec<VertexSet> = (0..n)
                .map(|v| {
                    let mut m = VertexSet::singleton(v);
                    for u in 0..n {
                        if u != v && !g.has_edge(u, v) && rng.random_bool(0.3) {
                            m.insert(u);
                        }
                    }
                    m
                })
                .collect();
            let ms = MoveSystem::new(moves);
            assert!(ms.validate(&g).is_ok());
            for _ in 0..50 {
                let s = VertexSet::from_bits(rng.random::<u128>() & g.vertex_set().bits());
                for (u, v) in g.edges() {
                    assert_eq!(s.contains(u), s.sym_diff(ms.move_at(v)).contains(u));
                }
            }
        }
    }

    #[test]
    fn coords_render_and_parse() {
        let c = OrbitCoords { index: 6, rank: 3 };
        assert_eq!(c.bitstring(), "110");
        assert_eq!(OrbitCoords::parse("110"), Some(c));
        assert!(c.bit(0) && c.bit(1) && !c.bit(2));
        assert_eq!(OrbitCoords::parse("10x"), None);
        assert_eq!(OrbitCoords::parse(""), None);
    }
}
