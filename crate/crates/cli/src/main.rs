//! Command-line front end: secondary-fan chamber reports, per-character
//! quotient data, the projective-line chamber correspondence, and the
//! brute-force oracles, all emitted as JSON with an embedded run
//! manifest (or as plain tables with `--format table`).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gitfan_core::arrangement::arrangement_chambers;
use gitfan_core::json as gj;
use gitfan_core::oracle::{brute_force_ss_supports, sample_chamber_count, SampleConfig};
use gitfan_core::pgl2::{
    hm_classify, pgl2_chambers_in_halfspace, set_partitions, verify_chamber_bijection,
    CoincidenceProfile, Linearization, Pgl2Error, Stability,
};
use gitfan_core::scalar::Int;
use gitfan_core::toric::{ChamberData, ToricError, TorusChamber, WeightConfiguration};
use gitfan_core::vector::IntVec;

const EXIT_INTERNAL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_REGIME: u8 = 4;
const EXIT_EMPTY: u8 = 5;

#[derive(Parser)]
#[command(name = "gitfan", version, about = "exact chamber decompositions for torus quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here as well as to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for per-chamber evaluation (default: GITFAN_JOBS or 1).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed recorded in the manifest and used by sampling commands.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Secondary-fan chambers of a torus action with per-chamber data.
    Gkz {
        /// Weight matrix file: first line "n r", then n rows of r integers.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Inline weight matrix: rows separated by ';', entries by spaces or commas.
        #[arg(long, allow_hyphen_values = true)]
        inline: Option<String>,
        /// Fail (exit 4) unless all weights are nonzero and the weight cone is strongly convex.
        #[arg(long)]
        require_projective: bool,
    },
    /// Quotient data for one character.
    Quotient {
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        inline: Option<String>,
        /// Comma-separated integer character.
        #[arg(long, allow_hyphen_values = true)]
        character: String,
    },
    /// Chamber combinatorics for the projective-line product.
    Pgl2 {
        #[arg(long)]
        n: usize,
        /// Two 1-based indices "i,j" marking the half-space subset.
        #[arg(long)]
        pair: Option<String>,
        #[command(subcommand)]
        action: Pgl2Action,
    },
    /// Brute-force verifiers.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Subcommand)]
enum Pgl2Action {
    /// Enumerate the chambers inside the half-space.
    Chambers,
    /// Compare against the lifted torus action and search for the wall map.
    Verify,
    /// Classify every coincidence profile under the given weights.
    Hm {
        /// Comma-separated positive integer weights.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    /// Count chambers by deterministic rational sampling.
    SampleChambers {
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        inline: Option<String>,
        #[arg(long, default_value_t = 800)]
        samples: usize,
        #[arg(long, default_value_t = 25)]
        denominator_bound: u32,
    },
    /// Exhaustive semistable supports of a character.
    SsSupports {
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        inline: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        character: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

fn parse_failure(msg: impl Into<String>) -> Failure {
    Failure::new(EXIT_PARSE, msg)
}

fn toric_failure(e: ToricError) -> Failure {
    let code = match e {
        ToricError::NotSurjective => EXIT_INVALID,
        ToricError::EmptySemistableLocus | ToricError::DegeneratePolyhedron => EXIT_EMPTY,
        ToricError::InconsistentChamberIdentity => EXIT_INTERNAL,
    };
    Failure::new(code, e.to_string())
}

fn pgl2_failure(e: Pgl2Error) -> Failure {
    let code = match e {
        Pgl2Error::NonpositiveWeight | Pgl2Error::NTooSmall | Pgl2Error::BadSubsetSize => {
            EXIT_INVALID
        }
        Pgl2Error::CountMismatch { .. } => EXIT_INTERNAL,
    };
    Failure::new(code, e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn jobs_of(cli: &Cli) -> usize {
    cli.jobs
        .or_else(|| std::env::var("GITFAN_JOBS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1)
}

fn manifest(cli: &Cli, command: &str, inputs: Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "output": cli.out.as_ref().map(|p| p.display().to_string()),
        "seed": cli.seed,
        "jobs": jobs_of(cli),
        "version": env!("CARGO_PKG_VERSION"),
    })
}

fn emit(cli: &Cli, report: Value, table: Option<String>) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable report") + "\n",
        Format::Table => table
            .unwrap_or_else(|| serde_json::to_string_pretty(&report).expect("serializable") + "\n"),
    };
    print!("{text}");
    if let Some(path) = &cli.out {
        let json_text = serde_json::to_string_pretty(&report).expect("serializable report") + "\n";
        std::fs::write(path, json_text).map_err(|e| {
            Failure::new(EXIT_INTERNAL, format!("cannot write {}: {e}", path.display()))
        })?;
    }
    Ok(())
}

/// Weight input: a file with header "n r" and n rows of r integers, or
/// an inline string of ';'-separated rows. Columns are the weights.
fn load_weights(
    weights: &Option<PathBuf>,
    inline: &Option<String>,
) -> Result<(WeightConfiguration<Int>, Value), Failure> {
    let (rows, source): (Vec<Vec<Int>>, Value) = match (weights, inline) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| parse_failure(format!("cannot read {}: {e}", path.display())))?;
            (parse_weight_file(&text)?, json!({"weights_file": path.display().to_string()}))
        }
        (None, Some(text)) => (parse_inline(text)?, json!({"inline": text})),
        _ => return Err(parse_failure("give exactly one of --weights or --inline")),
    };
    if rows.is_empty() || rows[0].is_empty() {
        return Err(parse_failure("empty weight matrix"));
    }
    let r = rows[0].len();
    if rows.iter().any(|row| row.len() != r) {
        return Err(parse_failure("ragged weight matrix"));
    }
    let cols: Vec<IntVec<Int>> = (0..r)
        .map(|j| IntVec::new(rows.iter().map(|row| row[j].clone()).collect()))
        .collect();
    let w = WeightConfiguration::new(cols).map_err(toric_failure)?;
    Ok((w, source))
}

fn parse_weight_file(text: &str) -> Result<Vec<Vec<Int>>, Failure> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| parse_failure("empty weights file"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_failure(format!("bad header {header:?}"))))
        .collect::<Result<_, _>>()?;
    let [n, r] = dims[..] else {
        return Err(parse_failure("header must be \"n r\""));
    };
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines.next().ok_or_else(|| parse_failure("missing matrix rows"))?;
        let row = parse_int_row(line)?;
        if row.len() != r {
            return Err(parse_failure(format!(
                "expected {r} entries per row, got {}",
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn parse_inline(text: &str) -> Result<Vec<Vec<Int>>, Failure> {
    text.split([';', '\n'])
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_int_row)
        .collect()
}

fn parse_int_row(line: &str) -> Result<Vec<Int>, Failure> {
    line.split([' ', '\t', ','])
        .filter(|t| !t.trim().is_empty())
        .map(|t| gj::parse_int::<Int>(t).map_err(parse_failure))
        .collect()
}

fn parse_int_list(text: &str) -> Result<IntVec<Int>, Failure> {
    let coords = parse_int_row(text)?;
    if coords.is_empty() {
        return Err(parse_failure("empty integer list"));
    }
    Ok(IntVec::new(coords))
}

fn parse_pair(text: &Option<String>, n: usize) -> Result<(usize, usize), Failure> {
    let text = text.as_ref().ok_or_else(|| parse_failure("--pair i,j is required"))?;
    let parts: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| parse_failure(format!("bad pair {text:?}"))))
        .collect::<Result<_, _>>()?;
    let [i, j] = parts[..] else {
        return Err(parse_failure("pair must be two indices i,j"));
    };
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(parse_failure(format!(
            "pair must be two distinct 1-based indices <= {n}"
        )));
    }
    Ok((i - 1, j - 1))
}

/// Map an indexed computation over 0..len on up to `jobs` scoped
/// threads, collecting results in index order.
fn par_map<T, F>(len: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if jobs <= 1 || len <= 1 {
        return (0..len).map(f).collect();
    }
    let results: Vec<std::sync::Mutex<Option<T>>> = (0..len).map(|_| std::sync::Mutex::new(None)).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(len) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= len {
                    break;
                }
                let value = f(i);
                *results[i].lock().unwrap() = Some(value);
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("worker filled slot"))
        .collect()
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Gkz { weights, inline, require_projective } => {
            let (w, source) = load_weights(weights, inline)?;
            if *require_projective && !w.is_projective_regime() {
                return Err(Failure::new(
                    EXIT_REGIME,
                    "not in the projective regime (zero weight or weight cone not strongly convex)",
                ));
            }
            let walls = w.secondary_fan_walls();
            let cells =
                arrangement_chambers(&walls, w.c_beta()).expect("weight cone is full-dimensional");
            let jobs = jobs_of(cli);
            let data: Vec<Result<ChamberData<Int>, ToricError>> =
                par_map(cells.len(), jobs, |i| w.chamber_data(&cells[i].representative_int()));
            let mut chambers = Vec::with_capacity(cells.len());
            for (cell, d) in cells.into_iter().zip(data) {
                let chi = cell.representative_int();
                let data = d.map_err(toric_failure)?;
                chambers.push(TorusChamber { cell, chi, data });
            }
            let report = json!({
                "manifest": manifest(cli, "gkz", source),
                "weights": gj::weights_to_json(&w),
                "walls": walls.iter().map(gj::intvec_to_json).collect::<Vec<_>>(),
                "chambers": chambers.iter().map(gj::torus_chamber_to_json).collect::<Vec<_>>(),
            });
            emit(cli, report, Some(gkz_table(&w, &chambers)))
        }
        Command::Quotient { weights, inline, character } => {
            let (w, source) = load_weights(weights, inline)?;
            let chi = parse_int_list(character)?;
            if chi.dim() != w.torus_rank() {
                return Err(parse_failure(format!(
                    "character has {} coordinates, torus rank is {}",
                    chi.dim(),
                    w.torus_rank()
                )));
            }
            let data = w.chamber_data(&chi).map_err(toric_failure)?;
            let report = json!({
                "manifest": manifest(cli, "quotient", json!({
                    "source": source,
                    "character": gj::intvec_to_json(&chi),
                })),
                "weights": gj::weights_to_json(&w),
                "chamber": gj::chamber_data_to_json(&data),
            });
            emit(cli, report, Some(quotient_table(&data)))
        }
        Command::Pgl2 { n, pair, action } => match action {
            Pgl2Action::Chambers => {
                let pair = parse_pair(pair, *n)?;
                let ch = pgl2_chambers_in_halfspace::<Int>(*n, pair).map_err(pgl2_failure)?;
                let report = json!({
                    "manifest": manifest(cli, "pgl2 chambers", json!({"n": n, "pair": [pair.0 + 1, pair.1 + 1]})),
                    "report": gj::pgl2_chambers_to_json(&ch),
                });
                let table = pgl2_chambers_table(&ch);
                emit(cli, report, Some(table))
            }
            Pgl2Action::Verify => {
                let pair = parse_pair(pair, *n)?;
                let r = verify_chamber_bijection::<Int>(*n, pair).map_err(pgl2_failure)?;
                let report = json!({
                    "manifest": manifest(cli, "pgl2 verify", json!({"n": n, "pair": [pair.0 + 1, pair.1 + 1]})),
                    "report": gj::bijection_report_to_json(&r),
                });
                let table = verify_table(&r);
                emit(cli, report, Some(table))
            }
            Pgl2Action::Hm { weights } => {
                let a = parse_int_list(weights)?;
                if a.dim() != *n {
                    return Err(parse_failure(format!("need {n} weights, got {}", a.dim())));
                }
                let lin = Linearization::new(a);
                if !lin.parity_ok {
                    return Err(Failure::new(
                        EXIT_INVALID,
                        "weight sum must be even to carry a linearization",
                    ));
                }
                let profiles = set_partitions(*n);
                let mut rows = Vec::with_capacity(profiles.len());
                for p in &profiles {
                    let class = hm_classify(&lin, p).map_err(pgl2_failure)?;
                    rows.push((p.clone(), class));
                }
                let report = json!({
                    "manifest": manifest(cli, "pgl2 hm", json!({"n": n, "weights": gj::intvec_to_json(&lin.a)})),
                    "weights": gj::intvec_to_json(&lin.a),
                    "profiles": rows.iter().map(|(p, c)| json!({
                        "blocks": p.blocks.iter()
                            .map(|b| b.iter().map(|i| i + 1).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "class": c.as_str(),
                    })).collect::<Vec<_>>(),
                });
                emit(cli, report, Some(hm_table(&rows)))
            }
        },
        Command::Oracle { action } => match action {
            OracleAction::SampleChambers { weights, inline, samples, denominator_bound } => {
                let (w, source) = load_weights(weights, inline)?;
                let walls = w.secondary_fan_walls();
                let cfg = SampleConfig {
                    seed: cli.seed,
                    samples_per_cell: *samples,
                    denominator_bound: *denominator_bound,
                };
                let count = sample_chamber_count(&walls, w.c_beta(), &cfg);
                let report = json!({
                    "manifest": manifest(cli, "oracle sample-chambers", source),
                    "walls": walls.iter().map(gj::intvec_to_json).collect::<Vec<_>>(),
                    "chamber_count": count,
                });
                emit(cli, report, Some(format!("sampled chamber count: {count}\n")))
            }
            OracleAction::SsSupports { weights, inline, character } => {
                let (w, source) = load_weights(weights, inline)?;
                let chi = parse_int_list(character)?;
                if chi.dim() != w.torus_rank() {
                    return Err(parse_failure("character dimension mismatch"));
                }
                let supports = brute_force_ss_supports(&w, &chi)
                    .map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
                let report = json!({
                    "manifest": manifest(cli, "oracle ss-supports", json!({
                        "source": source,
                        "character": gj::intvec_to_json(&chi),
                    })),
                    "supports": supports.iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
                });
                let table = format!(
                    "{} semistable supports of {} coordinates\n",
                    supports.len(),
                    w.affine_dim()
                );
                emit(cli, report, Some(table))
            }
        },
    }
}

fn sign_string(signs: &[gitfan_core::vector::Sign]) -> String {
    signs.iter().map(|s| s.as_str()).collect()
}

fn gkz_table(w: &WeightConfiguration<Int>, chambers: &[TorusChamber<Int>]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "torus rank {}, affine dimension {}, projective regime: {}\n",
        w.torus_rank(),
        w.affine_dim(),
        w.is_projective_regime()
    ));
    out.push_str(&format!("{} chambers\n", chambers.len()));
    out.push_str("signs | representative | i_empty | ideal generators | fan rays\n");
    for c in chambers {
        let ideal: Vec<String> = c
            .data
            .ideal
            .generators()
            .iter()
            .map(|g| {
                format!("{{{}}}", g.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
            })
            .collect();
        out.push_str(&format!(
            "{:5} | {:?} | {:?} | {} | {}\n",
            sign_string(c.sign_vector()),
            c.chi,
            c.data.i_empty,
            ideal.join(" "),
            c.data.fan.rays().len(),
        ));
    }
    out
}

fn quotient_table(d: &ChamberData<Int>) -> String {
    let ideal: Vec<String> = d
        .ideal
        .generators()
        .iter()
        .map(|g| format!("{{{}}}", g.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!(
        "character {:?} lift {:?}\nvertices: {:?}\nfan: {} rays, {} max cones\ni_empty: {:?}\nideal: {}\nstable==semistable: {}\n",
        d.character.chi,
        d.character.lift,
        d.polyhedron.vertices(),
        d.fan.rays().len(),
        d.fan.max_cones().len(),
        d.i_empty,
        ideal.join(" "),
        d.flags.stable_equals_semistable,
    )
}

fn pgl2_chambers_table(ch: &gitfan_core::pgl2::Pgl2Chambers<Int>) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "n = {}, pair = ({}, {}), {} walls, {} chambers\n",
        ch.n,
        ch.pair.0 + 1,
        ch.pair.1 + 1,
        ch.walls.len(),
        ch.cells.len()
    ));
    for w in &ch.walls {
        let subset: Vec<String> = w.subset.iter().map(|i| (i + 1).to_string()).collect();
        out.push_str(&format!("wall subset {{{}}} normal {:?}\n", subset.join(","), w.normal));
    }
    for (cell, rep) in ch.cells.iter().zip(&ch.representatives) {
        out.push_str(&format!("{} rep {:?}\n", sign_string(&cell.sign_vector), rep.a));
    }
    out
}

fn verify_table(r: &gitfan_core::pgl2::BijectionReport<Int>) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "n = {}: {} projective-line chambers vs {} torus chambers -> counts match: {}\n",
        r.n,
        r.pgl2.cells.len(),
        r.gkz.len(),
        r.counts_match
    ));
    match &r.matching {
        Some(m) => {
            out.push_str(&format!(
                "wall matching found; transport map: {}, literal pushforward: {}, representatives map into weight cone: {}\n",
                m.pullback_rows.is_some(),
                m.pushforward_rows.is_some(),
                m.reps_land_in_weight_cone
            ));
            for &(p, g, s) in &m.wall_pairs {
                out.push_str(&format!("  pgl2 wall {p} <-> gkz wall {g} (sign {s})\n"));
            }
        }
        None => out.push_str("no wall matching found (counts still agree)\n"),
    }
    out
}

fn hm_table(rows: &[(CoincidenceProfile, Stability)]) -> String {
    let mut out = String::new();
    for (p, c) in rows {
        let blocks: Vec<String> = p
            .blocks
            .iter()
            .map(|b| {
                format!("{{{}}}", b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
            })
            .collect();
        out.push_str(&format!("{:<30} {}\n", blocks.join(""), c.as_str()));
    }
    out
}
