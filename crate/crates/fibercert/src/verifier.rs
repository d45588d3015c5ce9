//! Per-state link analysis, fibration certificates, and the exhaustive
//! parallel orbit sweep.
//!
//! For every orbit state the full subcomplex on the state (the descending
//! side) and on its complement (the ascending side) are analysed through
//! dimension 2, or 3 when tetrahedra appear. The sweep partitions the
//! coordinate space over a thread pool, streams one evidence line per state
//! to an append-only JSONL cache, and folds a certificate deterministically
//! in coordinate order, so certificates and evidence files are byte-stable
//! across worker counts and interrupted runs resume from the cache.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::full_subcomplex;
use crate::graph::{Graph, VertexSet};
use crate::homology::{component_count, homology_summary};
use crate::io::{graph_digest, system_digest};
use crate::moves::{
    enumerate_orbit, AdmissibilityReport, MoveSystem, MoveViolation, Orbit, OrbitError,
};

/// Homology summary of one link, compact enough to hold 2^20 of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSummary {
    /// Face counts e0..e3.
    #[serde(rename = "f")]
    pub faces: [u16; 4],
    /// Betti numbers b0..b2 (b3 is checked internally and is always 0 for
    /// proper subcomplexes of the ambient nerves).
    pub betti: [u16; 3],
    /// Torsion coefficients of H1 and H2.
    pub torsion: [Vec<u64>; 2],
}

impl LinkSummary {
    pub fn is_empty(&self) -> bool {
        self.faces[0] == 0
    }

    /// Nonempty and connected, i.e. reduced H0 vanishes.
    pub fn connected(&self) -> bool {
        !self.is_empty() && self.betti[0] == 1
    }

    pub fn h1_is_zero(&self) -> bool {
        self.betti[1] == 0 && self.torsion[0].is_empty()
    }

    pub fn h2_is_zero(&self) -> bool {
        self.betti[2] == 0 && self.torsion[1].is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let [e0, e1, e2, e3] = self.faces.map(i64::from);
        e0 - e1 + e2 - e3
    }
}

/// Analyse the full subcomplex on `s`: face vector, Betti numbers, torsion.
///
/// Two cross-checks run on every call: Betti-0 against a union-find
/// component count, and Euler characteristic from faces against the
/// alternating Betti sum.
pub fn analyze_link(g: &Graph, s: VertexSet) -> LinkSummary {
    let k = full_subcomplex(g, s, 3);
    let fv = k.face_vector();
    let through_dim = if fv.count(3) > 0 { 3 } else { 2 };
    let h = homology_summary(&k, through_dim);
    let components = component_count(&k);
    assert_eq!(
        if h.empty { 0 } else { h.betti[0] },
        components,
        "SNF Betti-0 disagrees with component count on {s:?}"
    );
    assert_eq!(
        fv.euler_characteristic(),
        h.euler_characteristic(),
        "face-count Euler characteristic disagrees with Betti sum on {s:?}"
    );
    LinkSummary {
        faces: fv.counts.map(|c| c as u16),
        betti: [h.betti[0] as u16, h.betti[1] as u16, h.betti[2] as u16],
        torsion: [h.torsion[1].clone(), h.torsion[2].clone()],
    }
}

/// Links of one orbit state: the subcomplex on the state (descending) and
/// on its complement (ascending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkReport {
    pub coords: String,
    pub legal: bool,
    pub desc: LinkSummary,
    pub asc: LinkSummary,
}

/// Analyse the state at `index` in the orbit.
pub fn analyze_state(g: &Graph, orbit: &Orbit, index: u64) -> LinkReport {
    let s = orbit.state_at(index);
    let desc = analyze_link(g, s);
    let asc = analyze_link(g, s.complement(g.vertex_count()));
    let legal = desc.connected() && asc.connected();
    LinkReport {
        coords: orbit.coords(index).bitstring(),
        legal,
        desc,
        asc,
    }
}

/// One histogram bucket of the evidence digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramEntry {
    pub faces: [u16; 4],
    pub betti: [u16; 3],
    pub torsion_free: bool,
    pub count: u64,
}

/// The machine-checked verdicts for one system, plus the evidence digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub system_id: String,
    pub tool_version: String,
    pub graph_digest: String,
    pub system_digest: String,
    pub orbit_rank: u32,
    pub orbit_size: u64,
    /// Every orbit state is legal.
    pub admissible: bool,
    /// The verified hypothesis for an algebraic fibration with finitely
    /// generated kernel; equal to `admissible` by construction.
    pub f1_fibering: bool,
    pub all_links_connected: bool,
    pub all_links_h2_zero: bool,
    /// Number of orbit states whose descending link has nonzero H1.
    pub h1_nonzero_count: u64,
    /// Every ascending and descending link is connected with H2 = 0 and
    /// H1 != 0.
    pub lemma31_holds: bool,
    /// Every link is connected with H2 = 0, and at least one descending
    /// link has H1 != 0.
    pub conditions_ab_hold: bool,
    /// Lexicographically least illegal coordinates, when any.
    pub first_illegal: Option<String>,
    /// Histogram of (face vector, Betti vector) over descending links, in
    /// key order.
    pub histogram: Vec<HistogramEntry>,
}

/// Which not-FP2 predicate a verification run enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotFp2Mode {
    /// Every ascending and descending link must have nonzero H1.
    Lemma31,
    /// All links connected and H2-free; at least one descending link with
    /// nonzero H1.
    ConditionsAb,
}

impl Certificate {
    pub fn holds_for(&self, mode: NotFp2Mode) -> bool {
        self.f1_fibering
            && match mode {
                NotFp2Mode::Lemma31 => self.lemma31_holds,
                NotFp2Mode::ConditionsAb => self.conditions_ab_hold,
            }
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("move system is invalid: {0:?}")]
    InvalidMoveSystem(Vec<MoveViolation>),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error("cache {path}: {source}")]
    CacheIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache {path} is corrupt at line {line}: {reason}")]
    CacheCorrupt {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

/// Sweep configuration. `workers` caps the thread pool; `cache` points at
/// the JSONL evidence file, which is created, extended, or reused as its
/// completeness dictates.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub system_id: String,
    pub workers: usize,
    pub cache: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(system_id: impl Into<String>) -> SweepConfig {
        SweepConfig {
            system_id: system_id.into(),
            workers: 1,
            cache: None,
        }
    }

    pub fn workers(mut self, workers: usize) -> SweepConfig {
        assert!(workers >= 1);
        self.workers = workers;
        self
    }

    pub fn cache(mut self, path: impl Into<PathBuf>) -> SweepConfig {
        self.cache = Some(path.into());
        self
    }
}

/// What a sweep did and concluded.
#[derive(Debug)]
pub struct SweepOutcome {
    pub certificate: Certificate,
    /// States analysed in this run.
    pub computed_states: u64,
    /// States reused from the cache.
    pub cached_states: u64,
}

/// First line of an evidence cache; binds the file to its inputs.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct CacheHeader {
    graph: String,
    system: String,
    rank: u32,
}

/// Check that every orbit state is legal, without homology. The cheap
/// certificate-fragment path.
pub fn verify_f1(
    g: &Graph,
    ms: &MoveSystem,
    start: VertexSet,
) -> Result<AdmissibilityReport, SweepError> {
    ms.validate(g).map_err(SweepError::InvalidMoveSystem)?;
    Ok(crate::moves::is_admissible(g, ms, start)?)
}

/// Run the full sweep and test the requested predicate.
pub fn verify_not_fp2(
    g: &Graph,
    ms: &MoveSystem,
    start: VertexSet,
    mode: NotFp2Mode,
    config: SweepConfig,
) -> Result<(SweepOutcome, bool), SweepError> {
    let outcome = sweep(g, ms, start, config)?;
    let holds = outcome.certificate.holds_for(mode);
    Ok((outcome, holds))
}

/// Analyse every orbit state and fold the certificate.
///
/// Descending summaries are computed per state; when the ambient vertex set
/// lies in the move span (true whenever the moves partition the vertices)
/// each state's ascending link is the descending link of its complement
/// state, so it is joined by coordinate arithmetic instead of recomputation.
pub fn sweep(
    g: &Graph,
    ms: &MoveSystem,
    start: VertexSet,
    config: SweepConfig,
) -> Result<SweepOutcome, SweepError> {
    ms.validate(g).map_err(SweepError::InvalidMoveSystem)?;
    let orbit = enumerate_orbit(ms, start)?;
    let total = orbit.len();
    let n = g.vertex_count();
    let complement_xor: Option<u64> = orbit.coords_of(start.complement(n)).map(|c| c.index);

    let header = CacheHeader {
        graph: graph_digest(g),
        system: system_digest(ms, start),
        rank: orbit.rank(),
    };

    // Load whatever prefix of the evidence already exists.
    let mut desc: Vec<Option<LinkSummary>> = vec![None; total as usize];
    let mut asc_cached: Vec<Option<LinkSummary>> = Vec::new();
    if complement_xor.is_none() {
        asc_cached = vec![None; total as usize];
    }
    let mut cached_states = 0u64;
    if let Some(path) = &config.cache {
        cached_states = load_cache(
            path,
            &header,
            &orbit,
            &mut desc,
            complement_xor.is_none().then_some(&mut asc_cached),
        )?;
    }

    // Compute the remainder in parallel over contiguous coordinate ranges.
    let missing: Vec<u64> = (cached_states..total).collect();
    let computed_states = missing.len() as u64;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .expect("thread pool construction cannot fail");
    let chunk = (missing.len() / (config.workers * 8).max(1)).max(1);
    let computed: Vec<(u64, LinkSummary, Option<LinkSummary>)> = pool.install(|| {
        missing
            .par_chunks(chunk)
            .flat_map_iter(|indices| {
                indices.iter().map(|&i| {
                    let s = orbit.state_at(i);
                    let d = analyze_link(g, s);
                    let a = if complement_xor.is_none() {
                        Some(analyze_link(g, s.complement(n)))
                    } else {
                        None
                    };
                    (i, d, a)
                })
            })
            .collect()
    });
    for (i, d, a) in computed {
        desc[i as usize] = Some(d);
        if let (Some(asc), Some(a)) = (complement_xor.is_none().then_some(&mut asc_cached), a) {
            asc[i as usize] = Some(a);
        }
    }
    let desc: Vec<LinkSummary> = desc
        .into_iter()
        .map(|d| d.expect("all states analysed"))
        .collect();
    let asc_at = |i: u64| -> &LinkSummary {
        match complement_xor {
            Some(x) => &desc[(i ^ x) as usize],
            None => asc_cached[i as usize]
                .as_ref()
                .expect("all states analysed"),
        }
    };

    // Append the newly computed evidence lines, in coordinate order.
    if let Some(path) = &config.cache {
        let io_err = |source| SweepError::CacheIo {
            path: path.clone(),
            source,
        };
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io_err)?;
        let mut out = BufWriter::new(file);
        let mut write = |line: &str| -> Result<(), SweepError> {
            out.write_all(line.as_bytes()).map_err(io_err)?;
            out.write_all(b"\n").map_err(io_err)
        };
        if cached_states == 0 {
            write(&serde_json::to_string(&header).expect("header serialises"))?;
        }
        for i in cached_states..total {
            let report = LinkReport {
                coords: orbit.coords(i).bitstring(),
                legal: desc[i as usize].connected() && asc_at(i).connected(),
                desc: desc[i as usize].clone(),
                asc: asc_at(i).clone(),
            };
            write(&serde_json::to_string(&report).expect("report serialises"))?;
        }
        out.flush().map_err(io_err)?;
    }

    // Deterministic fold in coordinate order.
    let mut all_connected = true;
    let mut all_h2_zero = true;
    let mut h1_nonzero_count = 0u64;
    let mut every_h1_nonzero = true;
    let mut first_illegal: Option<u64> = None;
    let mut histogram: BTreeMap<([u16; 4], [u16; 3], bool), u64> = BTreeMap::new();
    for i in 0..total {
        let d = &desc[i as usize];
        let a = asc_at(i);
        let legal = d.connected() && a.connected();
        if !legal && first_illegal.is_none() {
            first_illegal = Some(i);
        }
        all_connected &= d.connected() && a.connected();
        all_h2_zero &= d.h2_is_zero() && a.h2_is_zero();
        if !d.h1_is_zero() {
            h1_nonzero_count += 1;
        }
        every_h1_nonzero &= !d.h1_is_zero() && !a.h1_is_zero();
        let key = (
            d.faces,
            d.betti,
            d.torsion[0].is_empty() && d.torsion[1].is_empty(),
        );
        *histogram.entry(key).or_insert(0) += 1;
    }
    let admissible = first_illegal.is_none();
    let certificate = Certificate {
        system_id: config.system_id.clone(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        graph_digest: header.graph,
        system_digest: header.system,
        orbit_rank: orbit.rank(),
        orbit_size: total,
        admissible,
        f1_fibering: admissible,
        all_links_connected: all_connected,
        all_links_h2_zero: all_h2_zero,
        h1_nonzero_count,
        lemma31_holds: all_connected && all_h2_zero && every_h1_nonzero,
        conditions_ab_hold: all_connected && all_h2_zero && h1_nonzero_count >= 1,
        first_illegal: first_illegal.map(|i| orbit.coords(i).bitstring()),
        histogram: histogram
            .into_iter()
            .map(|((faces, betti, torsion_free), count)| HistogramEntry {
                faces,
                betti,
                torsion_free,
                count,
            })
            .collect(),
    };
    debug_assert!(!certificate.lemma31_holds || certificate.conditions_ab_hold);
    Ok(SweepOutcome {
        certificate,
        computed_states,
        cached_states,
    })
}

/// Parse an existing cache prefix. Returns how many leading states it
/// provided; fails loudly on a malformed line, an out-of-order coordinate,
/// or a header that does not match the inputs.
fn load_cache(
    path: &Path,
    header: &CacheHeader,
    orbit: &Orbit,
    desc: &mut [Option<LinkSummary>],
    mut asc: Option<&mut Vec<Option<LinkSummary>>>,
) -> Result<u64, SweepError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(source) => {
            return Err(SweepError::CacheIo {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    let corrupt = |line: usize, reason: String| SweepError::CacheCorrupt {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let reader = BufReader::new(file);
    let mut next_index = 0u64;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| SweepError::CacheIo {
            path: path.to_path_buf(),
            source,
        })?;
        if line.is_empty() {
            continue;
        }
        if lineno == 0 {
            let found: CacheHeader =
                serde_json::from_str(&line).map_err(|e| corrupt(1, format!("bad header: {e}")))?;
            if &found != header {
                return Err(corrupt(
                    1,
                    "cache was built from different inputs".to_string(),
                ));
            }
            continue;
        }
        if next_index >= orbit.len() {
            return Err(corrupt(
                lineno + 1,
                "more lines than orbit states".to_string(),
            ));
        }
        let report: LinkReport =
            serde_json::from_str(&line).map_err(|e| corrupt(lineno + 1, e.to_string()))?;
        let expected = orbit.coords(next_index).bitstring();
        if report.coords != expected {
            return Err(corrupt(
                lineno + 1,
                format!("expected coords {expected}, found {}", report.coords),
            ));
        }
        desc[next_index as usize] = Some(report.desc);
        if let Some(asc) = asc.as_deref_mut() {
            asc[next_index as usize] = Some(report.asc);
        }
        next_index += 1;
    }
    Ok(next_index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FaceVector;
    use crate::polytope::{cell24, cell600};
    use rand::prelude::*;

    #[test]
    fn worked_example_state() {
        let model = cell24::builtin();
        let orbit = enumerate_orbit(&model.system, model.start).unwrap();
        // coords "110" toggles the two parity classes.
        let index = crate::moves::OrbitCoords::parse("110").unwrap().index;
        let report = analyze_state(&model.graph, &orbit, index);
        assert!(report.legal);
        assert_eq!(report.desc.faces, [12, 24, 12, 0]);
        assert_eq!(report.desc.betti, [1, 1, 0]);
        assert_eq!(report.desc.torsion, [Vec::<u64>::new(), Vec::new()]);
    }

    #[test]
    fn start_state_of_600cell() {
        let model = cell600::builtin();
        let orbit = enumerate_orbit(&model.system, model.start).unwrap();
        let report = analyze_state(&model.graph, &orbit, 0);
        assert!(report.legal);
        assert_eq!(report.desc.faces, [60, 150, 75, 0]);
        assert_eq!(report.desc.euler_characteristic(), -15);
        assert_eq!(report.desc.betti, [1, 16, 0]);
        assert_eq!(report.desc.torsion, [Vec::<u64>::new(), Vec::new()]);
    }

    #[test]
    fn f1_runs_on_valid_systems_and_rejects_bad_moves() {
        let model = cell24::builtin();
        let report = verify_f1(&model.graph, &model.system, model.start).unwrap();
        assert!(report.admissible);
        assert_eq!(report.orbit_size, 8);

        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let ms = MoveSystem::new((0..4).map(VertexSet::singleton).collect());
        let report = verify_f1(&p4, &ms, [0usize, 2].into_iter().collect()).unwrap();
        assert!(!report.admissible);
        assert_eq!(report.first_illegal.unwrap().bitstring(), "0000");

        let bad = MoveSystem::new(vec![
            [0usize, 1].into_iter().collect(),
            VertexSet::singleton(1),
            VertexSet::singleton(2),
            VertexSet::singleton(3),
        ]);
        assert!(matches!(
            verify_f1(&p4, &bad, VertexSet::singleton(0)),
            Err(SweepError::InvalidMoveSystem(_))
        ));
    }

    #[test]
    fn cell24_sweep_certificate() {
        let model = cell24::builtin();
        let outcome = sweep(
            &model.graph,
            &model.system,
            model.start,
            SweepConfig::new("cell24").workers(2),
        )
        .unwrap();
        let cert = &outcome.certificate;
        assert_eq!(outcome.computed_states, 8);
        assert_eq!(cert.orbit_size, 8);
        assert!(cert.admissible && cert.f1_fibering);
        assert!(cert.all_links_connected && cert.all_links_h2_zero);
        assert_eq!(cert.h1_nonzero_count, 8);
        assert!(cert.lemma31_holds && cert.conditions_ab_hold);
        assert!(cert.holds_for(NotFp2Mode::Lemma31));
        // One bucket: every link is the same circle shape.
        assert_eq!(cert.histogram.len(), 1);
        assert_eq!(cert.histogram[0].faces, [12, 24, 12, 0]);
        assert_eq!(cert.histogram[0].betti, [1, 1, 0]);
        assert_eq!(cert.histogram[0].count, 8);
    }

    #[test]
    fn complement_duality_exhaustive_on_cell24() {
        let model = cell24::builtin();
        let orbit = enumerate_orbit(&model.system, model.start).unwrap();
        let n = model.graph.vertex_count();
        for i in 0..orbit.len() {
            let s = orbit.state_at(i);
            let complement = s.complement(n);
            let pair = orbit
                .coords_of(complement)
                .expect("complement stays in orbit");
            let report = analyze_state(&model.graph, &orbit, i);
            let dual = analyze_state(&model.graph, &orbit, pair.index);
            assert_eq!(report.asc, dual.desc);
            assert_eq!(report.desc, dual.asc);
        }
    }

    #[test]
    fn sweep_is_deterministic_across_worker_counts() {
        let model = cell24::builtin();
        let run = |workers| {
            let outcome = sweep(
                &model.graph,
                &model.system,
                model.start,
                SweepConfig::new("cell24").workers(workers),
            )
            .unwrap();
            serde_json::to_vec(&outcome.certificate).unwrap()
        };
        let one = run(1);
        assert_eq!(one, run(2));
        assert_eq!(one, run(5));
    }

    #[test]
    fn sweep_cache_resume_and_idempotence() {
        let model = cell24::builtin();
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("evidence.jsonl");
        let config = || SweepConfig::new("cell24").workers(2).cache(&cache);

        let first = sweep(&model.graph, &model.system, model.start, config()).unwrap();
        assert_eq!((first.computed_states, first.cached_states), (8, 0));
        let bytes = std::fs::read(&cache).unwrap();

        // Re-running over a complete cache recomputes nothing and leaves the
        // evidence untouched.
        let second = sweep(&model.graph, &model.system, model.start, config()).unwrap();
        assert_eq!((second.computed_states, second.cached_states), (0, 8));
        assert_eq!(first.certificate, second.certificate);
        assert_eq!(bytes, std::fs::read(&cache).unwrap());

        // Truncating to a prefix resumes and reproduces identical bytes.
        let text = String::from_utf8(bytes.clone()).unwrap();
        let prefix: String = text.lines().take(4).map(|l| format!("{l}\n")).collect();
        std::fs::write(&cache, prefix).unwrap();
        let third = sweep(&model.graph, &model.system, model.start, config()).unwrap();
        assert_eq!((third.computed_states, third.cached_states), (5, 3));
        assert_eq!(first.certificate, third.certificate);
        assert_eq!(bytes, std::fs::read(&cache).unwrap());
    }

    #[test]
    fn corrupt_cache_lines_are_rejected_with_position() {
        let model = cell24::builtin();
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("evidence.jsonl");
        let config = || SweepConfig::new("cell24").workers(1).cache(&cache);
        sweep(&model.graph, &model.system, model.start, config()).unwrap();

        let text = std::fs::read_to_string(&cache).unwrap();
        let mut lines: Vec<&str> = text.lines().collect();
        lines[2] = "{not json";
        std::fs::write(&cache, lines.join("\n")).unwrap();
        match sweep(&model.graph, &model.system, model.start, config()) {
            Err(SweepError::CacheCorrupt { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected corruption error, got {other:?}"),
        }
    }

    #[test]
    fn cache_from_other_inputs_is_refused() {
        let model = cell24::builtin();
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("evidence.jsonl");
        sweep(
            &model.graph,
            &model.system,
            model.start,
            SweepConfig::new("cell24").cache(&cache),
        )
        .unwrap();
        // Same cache, different starting state: header mismatch.
        let other_start = model.start.sym_diff(model.classes[0]);
        match sweep(
            &model.graph,
            &model.system,
            other_start,
            SweepConfig::new("cell24").cache(&cache),
        ) {
            Err(SweepError::CacheCorrupt { line: 1, .. }) => {}
            other => panic!("expected header mismatch, got {other:?}"),
        }
    }

    #[test]
    fn orbit_size_constancy_of_state_cardinality() {
        // Moves partition the vertex set, so every orbit state keeps the
        // start's per-class intersection pattern.
        let model = cell24::builtin();
        let orbit = enumerate_orbit(&model.system, model.start).unwrap();
        for i in 0..orbit.len() {
            assert_eq!(orbit.state_at(i).len(), 12);
        }
        let model600 = cell600::builtin();
        let orbit = enumerate_orbit(&model600.system, model600.start).unwrap();
        let mut rng = StdRng::seed_from_u64(0x600);
        for _ in 0..10_000 {
            let i = rng.random_range(0..orbit.len());
            assert_eq!(orbit.state_at(i).len(), 60);
        }
    }

    #[test]
    fn sampled_complement_duality_on_600cell() {
        let model = cell600::builtin();
        let orbit = enumerate_orbit(&model.system, model.start).unwrap();
        let n = model.graph.vertex_count();
        let mut rng = StdRng::seed_from_u64(0xa5c);
        for _ in 0..100 {
            let i = rng.random_range(0..orbit.len());
            let s = orbit.state_at(i);
            let pair = orbit
                .coords_of(s.complement(n))
                .expect("complement in orbit");
            let report = analyze_state(&model.graph, &orbit, i);
            let dual = analyze_state(&model.graph, &orbit, pair.index);
            assert_eq!(report.asc, dual.desc);
        }
    }

    #[test]
    fn face_vector_type_round_trips_into_summary() {
        let g = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let summary = analyze_link(&g, g.vertex_set());
        assert_eq!(summary.faces, [3, 3, 1, 0]);
        assert_eq!(
            FaceVector::new(3, 3, 1, 0).euler_characteristic(),
            summary.euler_characteristic()
        );
    }
}
