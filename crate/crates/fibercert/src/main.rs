//! Command-line front end: build the built-in models, verify fibration
//! certificates, inspect links, dump orbits, export DOT.
//!
//! Exit codes: 0 when the requested certificate holds, 1 when it fails
//! (with a witness), 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fibercert::graph::{Graph, VertexSet};
use fibercert::io;
use fibercert::moves::{enumerate_orbit, is_legal_state, MoveSystem, OrbitCoords};
use fibercert::polytope::{cell24, cell600, hypercube};
use fibercert::verifier::{self, Certificate, LinkSummary, NotFp2Mode, SweepConfig};

#[derive(Parser)]
#[command(
    name = "fibercert",
    version,
    about = "Certify algebraic fibrations of right-angled Coxeter groups by exhaustive link homology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a built-in model as graph (and system/labeling) JSON.
    Build {
        target: BuildTarget,
        /// Directory the files are written into.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Grid variant index (0..12) for cell600-grid.
        #[arg(long)]
        variant: Option<usize>,
        /// Ordinary-label multiplier (0..10) for cell600-grid.
        #[arg(long)]
        label_k: Option<usize>,
    },
    /// Run the certificate checks for a built-in or file-based system.
    Verify {
        /// `cell24`, `cell600`, or a system JSON path.
        system: String,
        /// Graph JSON path; required for file-based systems.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::ConditionsAb)]
        mode: ModeArg,
        /// Worker threads for the sweep.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = default_workers())]
        workers: u64,
        /// Evidence cache (JSONL); reused and extended across runs.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Certificate output path (default `<system>.certificate.json`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print face vectors and homology of one state's links.
    Link {
        /// `cell24`, `cell600`, or a system JSON path.
        system: String,
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Orbit coordinates as a bitstring, e.g. `110`.
        #[arg(long)]
        coords: Option<String>,
        /// `start` or an explicit comma-separated vertex list.
        #[arg(long)]
        state: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Dump every orbit state as JSONL.
    Orbit {
        /// `cell24`, `cell600`, or a system JSON path.
        system: String,
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a graph in DOT format.
    ExportDot {
        /// `fourcube`, `cell24`, `cell600-coord`, `cell600-grid`, or a graph
        /// JSON path.
        target: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildTarget {
    Fourcube,
    Cell24,
    Cell600Coord,
    Cell600Grid,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Lemma31,
    ConditionsAb,
}

impl From<ModeArg> for NotFp2Mode {
    fn from(m: ModeArg) -> NotFp2Mode {
        match m {
            ModeArg::Lemma31 => NotFp2Mode::Lemma31,
            ModeArg::ConditionsAb => NotFp2Mode::ConditionsAb,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

fn default_workers() -> u64 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u64)
}

/// Input errors exit 2; certificate failures exit 1.
enum CmdError {
    Input(String),
    CertificateFailed(String),
}

impl CmdError {
    fn input(msg: impl Into<String>) -> CmdError {
        CmdError::Input(msg.into())
    }
}

type CmdResult = Result<(), CmdError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build {
            target,
            out_dir,
            variant,
            label_k,
        } => cmd_build(target, &out_dir, variant, label_k),
        Command::Verify {
            system,
            graph,
            mode,
            workers,
            cache,
            format,
            out,
        } => cmd_verify(
            &system,
            graph.as_deref(),
            mode.into(),
            workers as usize,
            cache,
            format,
            out,
        ),
        Command::Link {
            system,
            graph,
            coords,
            state,
            format,
        } => cmd_link(
            &system,
            graph.as_deref(),
            coords.as_deref(),
            state.as_deref(),
            format,
        ),
        Command::Orbit { system, graph, out } => cmd_orbit(&system, graph.as_deref(), out),
        Command::ExportDot { target, out } => cmd_export_dot(&target, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::CertificateFailed(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    std::fs::write(path, contents)
        .map_err(|e| CmdError::input(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_build(
    target: BuildTarget,
    out_dir: &Path,
    variant: Option<usize>,
    label_k: Option<usize>,
) -> CmdResult {
    match target {
        BuildTarget::Fourcube => {
            let g = hypercube::build_hypercube(4);
            write_file(&out_dir.join("fourcube.graph.json"), &io::graph_to_json(&g))
        }
        BuildTarget::Cell24 => {
            let model = cell24::builtin();
            write_file(
                &out_dir.join("cell24.graph.json"),
                &io::graph_to_json(&model.graph),
            )?;
            write_file(
                &out_dir.join("cell24.system.json"),
                &io::system_to_json(&model.system, model.start),
            )
        }
        BuildTarget::Cell600Coord => {
            let g = cell600::build_600cell_coordinate();
            write_file(
                &out_dir.join("cell600-coord.graph.json"),
                &io::graph_to_json(&g),
            )
        }
        BuildTarget::Cell600Grid => {
            let variant = match variant {
                None => cell600::GridVariant::DEFAULT,
                Some(i) => cell600::GridVariant::from_index(i)
                    .ok_or_else(|| CmdError::input(format!("variant index {i} out of 0..12")))?,
            };
            let k = label_k.unwrap_or(cell600::DEFAULT_LABEL_MULTIPLIER);
            if k >= 10 {
                return Err(CmdError::input(format!(
                    "label multiplier {k} out of 0..10"
                )));
            }
            let (g, layout) = cell600::build_600cell_grid(variant);
            if let Err(defects) = cell600::verify_600cell(&g) {
                let mut msg = format!("grid variant {} is not the 600-cell:", variant.index());
                for d in &defects {
                    msg.push_str(&format!("\n  {d}"));
                }
                return Err(CmdError::CertificateFailed(msg));
            }
            let labeling = cell600::assign_labels(&g, &layout, k).map_err(|violations| {
                let mut msg = format!("label multiplier {k} has dependent classes:");
                for v in violations.iter().take(5) {
                    msg.push_str(&format!("\n  {v}"));
                }
                CmdError::CertificateFailed(msg)
            })?;
            let system = MoveSystem::from_partition(120, &labeling.classes);
            let start = cell600::start_state(&layout);
            write_file(
                &out_dir.join("cell600-grid.graph.json"),
                &io::graph_to_json(&g),
            )?;
            write_file(
                &out_dir.join("cell600-grid.system.json"),
                &io::system_to_json(&system, start),
            )?;
            let labeling_json = io::LabelingJson::new(&layout, &labeling);
            write_file(
                &out_dir.join("cell600-grid.labeling.json"),
                &serde_json::to_string_pretty(&labeling_json).expect("labeling serialises"),
            )
        }
    }
}

/// Resolve `cell24` / `cell600` / a system JSON path into inputs.
fn load_system(
    system: &str,
    graph: Option<&Path>,
) -> Result<(String, Graph, MoveSystem, VertexSet), CmdError> {
    match system {
        "cell24" => {
            let model = cell24::builtin();
            Ok((
                "cell24".into(),
                model.graph.clone(),
                model.system.clone(),
                model.start,
            ))
        }
        "cell600" => {
            let model = cell600::builtin();
            Ok((
                "cell600".into(),
                model.graph.clone(),
                model.system.clone(),
                model.start,
            ))
        }
        path => {
            let graph_path = graph
                .ok_or_else(|| CmdError::input("file-based systems need --graph <GRAPH.json>"))?;
            let graph_text = std::fs::read_to_string(graph_path).map_err(|e| {
                CmdError::input(format!("cannot read {}: {e}", graph_path.display()))
            })?;
            let g = io::graph_from_json(&graph_text)
                .map_err(|e| CmdError::input(format!("{}: {e}", graph_path.display())))?;
            let system_text = std::fs::read_to_string(path)
                .map_err(|e| CmdError::input(format!("cannot read {path}: {e}")))?;
            let (ms, start) = io::system_from_json(&system_text)
                .map_err(|e| CmdError::input(format!("{path}: {e}")))?;
            if ms.vertex_count() != g.vertex_count() {
                return Err(CmdError::input(format!(
                    "system is on {} vertices but graph has {}",
                    ms.vertex_count(),
                    g.vertex_count()
                )));
            }
            let id = Path::new(path)
                .file_stem()
                .map_or_else(|| path.to_string(), |s| s.to_string_lossy().into_owned());
            Ok((id, g, ms, start))
        }
    }
}

fn cmd_verify(
    system: &str,
    graph: Option<&Path>,
    mode: NotFp2Mode,
    workers: usize,
    cache: Option<PathBuf>,
    format: FormatArg,
    out: Option<PathBuf>,
) -> CmdResult {
    let (id, g, ms, start) = load_system(system, graph)?;
    if let Err(violations) = ms.validate(&g) {
        let mut msg = format!("move system for {id} is invalid:");
        for v in violations.iter().take(10) {
            msg.push_str(&format!("\n  {v:?}"));
        }
        return Err(CmdError::CertificateFailed(msg));
    }
    let mut config = SweepConfig::new(id.clone()).workers(workers);
    if let Some(cache) = cache {
        config = config.cache(cache);
    }
    let (outcome, holds) = verifier::verify_not_fp2(&g, &ms, start, mode, config)
        .map_err(|e| CmdError::input(e.to_string()))?;
    let cert = &outcome.certificate;
    let cert_path = out.unwrap_or_else(|| PathBuf::from(format!("{id}.certificate.json")));
    let cert_json = serde_json::to_string_pretty(cert).expect("certificate serialises");
    std::fs::write(&cert_path, &cert_json)
        .map_err(|e| CmdError::input(format!("cannot write {}: {e}", cert_path.display())))?;
    match format {
        FormatArg::Text => print_certificate_text(cert, &outcome, mode, &cert_path),
        FormatArg::Json => println!("{cert_json}"),
        FormatArg::Csv => print_histogram_csv(cert),
    }
    if holds {
        Ok(())
    } else {
        let witness = match (&cert.first_illegal, cert.admissible) {
            (Some(w), _) => format!("first illegal state at coords {w}"),
            (None, true) => "orbit is legal but the homology predicate fails".to_string(),
            (None, false) => "inadmissible orbit".to_string(),
        };
        Err(CmdError::CertificateFailed(format!(
            "certificate for {id} does not hold in mode {}: {witness}",
            mode_name(mode)
        )))
    }
}

fn mode_name(mode: NotFp2Mode) -> &'static str {
    match mode {
        NotFp2Mode::Lemma31 => "lemma31",
        NotFp2Mode::ConditionsAb => "conditions-ab",
    }
}

fn print_certificate_text(
    cert: &Certificate,
    outcome: &verifier::SweepOutcome,
    mode: NotFp2Mode,
    cert_path: &Path,
) {
    println!("system: {}", cert.system_id);
    println!(
        "orbit: rank {}, {} states ({} computed, {} from cache)",
        cert.orbit_rank, cert.orbit_size, outcome.computed_states, outcome.cached_states
    );
    println!("admissible (all states legal): {}", cert.admissible);
    println!("f1 fibering hypothesis verified: {}", cert.f1_fibering);
    println!("all links connected: {}", cert.all_links_connected);
    println!("all links H2 = 0: {}", cert.all_links_h2_zero);
    println!(
        "descending links with H1 != 0: {}/{}",
        cert.h1_nonzero_count, cert.orbit_size
    );
    println!("lemma31 (every link H1 != 0): {}", cert.lemma31_holds);
    println!("conditions (a)+(b): {}", cert.conditions_ab_hold);
    if let Some(ref witness) = cert.first_illegal {
        println!("first illegal state: coords {witness}");
    }
    println!("descending-link histogram (faces, betti, count):");
    for entry in &cert.histogram {
        println!(
            "  faces {:?} betti {:?}{} x{}",
            entry.faces,
            entry.betti,
            if entry.torsion_free {
                ""
            } else {
                " with torsion"
            },
            entry.count
        );
    }
    println!("certificate: {}", cert_path.display());
    println!(
        "verdict (mode {}): {}",
        mode_name(mode),
        if cert.holds_for(mode) { "PASS" } else { "FAIL" }
    );
}

fn print_histogram_csv(cert: &Certificate) {
    println!("e0,e1,e2,e3,b0,b1,b2,torsion_free,count");
    for e in &cert.histogram {
        println!(
            "{},{},{},{},{},{},{},{},{}",
            e.faces[0],
            e.faces[1],
            e.faces[2],
            e.faces[3],
            e.betti[0],
            e.betti[1],
            e.betti[2],
            e.torsion_free,
            e.count
        );
    }
}

fn cmd_link(
    system: &str,
    graph: Option<&Path>,
    coords: Option<&str>,
    state: Option<&str>,
    format: FormatArg,
) -> CmdResult {
    let (id, g, ms, start) = load_system(system, graph)?;
    let s = match (coords, state) {
        (Some(bits), None) => {
            let orbit = enumerate_orbit(&ms, start).map_err(|e| CmdError::input(e.to_string()))?;
            let coords = OrbitCoords::parse(bits)
                .ok_or_else(|| CmdError::input(format!("malformed coords bitstring {bits:?}")))?;
            if coords.rank != orbit.rank() {
                return Err(CmdError::input(format!(
                    "coords {bits} has {} bits but the orbit rank is {}",
                    coords.rank,
                    orbit.rank()
                )));
            }
            orbit.state_at(coords.index)
        }
        (None, Some("start")) => start,
        (None, Some(list)) => parse_state_list(list, g.vertex_count())?,
        _ => {
            return Err(CmdError::input(
                "select a state with exactly one of --coords BITS or --state start|v1,v2,...",
            ))
        }
    };
    let desc = verifier::analyze_link(&g, s);
    let asc = verifier::analyze_link(&g, s.complement(g.vertex_count()));
    let legal = is_legal_state(&g, s);
    match format {
        FormatArg::Text => {
            println!("system: {id}");
            println!("state ({} vertices): {:?}", s.len(), s.to_vec());
            println!("legal: {legal}");
            print_link_text("descending", &desc);
            print_link_text("ascending", &asc);
        }
        FormatArg::Json => {
            let value = serde_json::json!({
                "system": id,
                "state": s.to_vec(),
                "legal": legal,
                "desc": desc,
                "asc": asc,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("link serialises")
            );
        }
        FormatArg::Csv => {
            println!("side,e0,e1,e2,e3,chi,b0,b1,b2,torsion_free");
            for (side, l) in [("desc", &desc), ("asc", &asc)] {
                println!(
                    "{side},{},{},{},{},{},{},{},{},{}",
                    l.faces[0],
                    l.faces[1],
                    l.faces[2],
                    l.faces[3],
                    l.euler_characteristic(),
                    l.betti[0],
                    l.betti[1],
                    l.betti[2],
                    l.torsion[0].is_empty() && l.torsion[1].is_empty()
                );
            }
        }
    }
    Ok(())
}

fn print_link_text(side: &str, link: &LinkSummary) {
    println!(
        "{side}: faces {:?}, chi {}, betti {:?}, torsion H1 {:?} H2 {:?}",
        link.faces,
        link.euler_characteristic(),
        link.betti,
        link.torsion[0],
        link.torsion[1]
    );
}

fn parse_state_list(list: &str, n: usize) -> Result<VertexSet, CmdError> {
    let mut s = VertexSet::EMPTY;
    for part in list.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| CmdError::input(format!("malformed state entry {part:?}")))?;
        if v >= n {
            return Err(CmdError::input(format!(
                "state vertex {v} out of range 0..{n}"
            )));
        }
        s.insert(v);
    }
    Ok(s)
}

fn cmd_orbit(system: &str, graph: Option<&Path>, out: Option<PathBuf>) -> CmdResult {
    let (_, g, ms, start) = load_system(system, graph)?;
    let orbit = enumerate_orbit(&ms, start).map_err(|e| CmdError::input(e.to_string()))?;
    let mut lines = String::new();
    for i in 0..orbit.len() {
        let s = orbit.state_at(i);
        let line = io::OrbitLine {
            coords: orbit.coords(i).bitstring(),
            state: s.to_vec(),
            legal: is_legal_state(&g, s),
        };
        lines.push_str(&serde_json::to_string(&line).expect("orbit line serialises"));
        lines.push('\n');
    }
    match out {
        Some(path) => write_file(&path, &lines),
        None => {
            print!("{lines}");
            Ok(())
        }
    }
}

fn cmd_export_dot(target: &str, out: Option<PathBuf>) -> CmdResult {
    let g = match target {
        "fourcube" => hypercube::build_hypercube(4),
        "cell24" => cell24::builtin().graph.clone(),
        "cell600-coord" => cell600::build_600cell_coordinate(),
        "cell600-grid" => cell600::builtin().graph.clone(),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CmdError::input(format!("cannot read {path}: {e}")))?;
            io::graph_from_json(&text).map_err(|e| CmdError::input(format!("{path}: {e}")))?
        }
    };
    let dot = io::graph_to_dot(&g);
    match out {
        Some(path) => write_file(&path, &dot),
        None => {
            print!("{dot}");
            Ok(())
        }
    }
}
