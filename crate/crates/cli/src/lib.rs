//! Command-line front end: parse `.stg` files, run pipeline stages and print
//! text or JSON.
//!
//! Exit codes: 0 success, 1 a negative answer (not source-sink, not planar,
//! invalid graph for `validate`, disagreement for `check`), 2 bad input.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use stargenus::chords::surgery;
use stargenus::fixtures;
use stargenus::genus::{
    analyze, enumerate_permissible_partitions, genus_of_partition, is_planar_of, min_genus_of,
};
use stargenus::graph::{
    double_cover, find_source_sink_orientation, parse_stg, to_stg, validate, StarGraph,
};
use stargenus::oracle::{
    all_coloring_genera, coloring_of_partition, oracle_min_genus, DEFAULT_CAP,
};
use stargenus::{Analysis, Error, PermissiblePartition, Planarity, Side};

pub const CAP_ENV: &str = "STARGENUS_ORACLE_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "stargenus",
    version,
    about = "Minimal checkerboard genus of *-graphs"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for the exhaustive scans (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Input {
    /// A `.stg` file.
    pub path: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the *-graph invariants.
    Validate(Input),
    /// Find the source-sink orientation.
    Orient(Input),
    /// Write the source-sink double cover.
    Cover {
        #[command(flatten)]
        input: Input,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a rotating-splitting Euler circuit and vertex classes.
    Circuit(Input),
    /// Print the *-chord diagram of the circuit.
    Diagram(Input),
    /// Minimal genus over all permissible partitions.
    Genus(Input),
    /// Quadratic planarity test.
    Planar(Input),
    /// Minimal genus by tracing every atom coloring.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Refuse graphs with more vertices than this.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Compare the matrix pipeline with the oracle.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Compare every partition, not just the minima.
        #[arg(long)]
        all_partitions: bool,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Print a named fixture as `.stg`.
    Fixture {
        /// g8, gx, ghopf, gt3f, gt3c, chain(k), random(seed, n4, n6) or
        /// random-ss(seed, n4, n6).
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Outcome of a command: exit code plus what to print.
struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn negative(stdout: String) -> Self {
        Self {
            code: 1,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn load(path: &Path) -> Result<StarGraph, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))?;
    parse_stg(&text).map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<StarGraph, Outcome> {
    let g = load(path)?;
    let violations = validate(&g);
    if violations.is_empty() {
        Ok(g)
    } else {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Err(Outcome::input_error(format!(
            "{}: invalid star graph: {}",
            path.display(),
            list.join("; ")
        )))
    }
}

const NOT_SOURCE_SINK: &str = "not source-sink; run `cover`";

#[derive(Serialize)]
struct NotSourceSinkJson {
    source_sink: bool,
    error: &'static str,
}

fn not_source_sink(json: bool) -> Outcome {
    if json {
        Outcome::negative(json_line(&NotSourceSinkJson {
            source_sink: false,
            error: NOT_SOURCE_SINK,
        }))
    } else {
        Outcome::negative(format!("{NOT_SOURCE_SINK}\n"))
    }
}

fn analyzed(path: &Path, json: bool) -> Result<(StarGraph, Analysis), Outcome> {
    let g = load_valid(path)?;
    match analyze(&g) {
        Ok(a) => Ok((g, a)),
        Err(Error::NotSourceSink) => Err(not_source_sink(json)),
        Err(e) => Err(Outcome::input_error(e)),
    }
}

fn witness_map(p: &PermissiblePartition) -> BTreeMap<u64, &'static str> {
    p.sides().iter().map(|(&v, s)| (v, s.letter())).collect()
}

fn witness_text(w: &BTreeMap<u64, &'static str>) -> String {
    w.iter()
        .map(|(v, s)| format!("{v}={s}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn oracle_cap(flag: Option<usize>) -> Result<usize, Outcome> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Outcome::input_error(format!(
                "{CAP_ENV} must be a non-negative integer, found `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn cmd_validate(path: &Path, json: bool) -> Result<Outcome, Outcome> {
    let g = load(path)?;
    let violations: Vec<String> = validate(&g).iter().map(|v| v.to_string()).collect();
    let valid = violations.is_empty();
    let stdout = if json {
        #[derive(Serialize)]
        struct J {
            valid: bool,
            n_vertices: usize,
            n_edges: usize,
            violations: Vec<String>,
        }
        json_line(&J {
            valid,
            n_vertices: g.vertex_count(),
            n_edges: g.edge_count(),
            violations,
        })
    } else if valid {
        format!(
            "ok: {} vertices, {} edges\n",
            g.vertex_count(),
            g.edge_count()
        )
    } else {
        let mut s = String::from("invalid\n");
        for v in &violations {
            s.push_str(&format!("  {v}\n"));
        }
        s
    };
    Ok(if valid {
        Outcome::ok(stdout)
    } else {
        Outcome::negative(stdout)
    })
}

fn cmd_orient(path: &Path, json: bool) -> Result<Outcome, Outcome> {
    let g = load_valid(path)?;
    let o = match find_source_sink_orientation(&g) {
        Ok(o) => o,
        Err(Error::NotSourceSink) => return Ok(not_source_sink(json)),
        Err(e) => return Err(Outcome::input_error(e)),
    };
    if json {
        #[derive(Serialize)]
        struct J {
            source_sink: bool,
            outgoing_parity: BTreeMap<u64, &'static str>,
            directions: BTreeMap<u64, [String; 2]>,
        }
        let outgoing_parity = g
            .vertices()
            .map(|(v, _)| {
                (
                    v,
                    if o.phase(v) == Some(true) {
                        "odd"
                    } else {
                        "even"
                    },
                )
            })
            .collect();
        let directions = o
            .directions()
            .map(|(e, t, h)| (e, [t.to_string(), h.to_string()]))
            .collect();
        return Ok(Outcome::ok(json_line(&J {
            source_sink: true,
            outgoing_parity,
            directions,
        })));
    }
    let mut s = String::from("source-sink\n");
    for (v, _) in g.vertices() {
        let parity = if o.phase(v) == Some(true) {
            "odd"
        } else {
            "even"
        };
        s.push_str(&format!("vertex {v} outgoing {parity}\n"));
    }
    for (e, t, h) in o.directions() {
        s.push_str(&format!("edge {e} {t} -> {h}\n"));
    }
    Ok(Outcome::ok(s))
}

fn cmd_cover(path: &Path, output: Option<&Path>, json: bool) -> Result<Outcome, Outcome> {
    let g = load_valid(path)?;
    let cover = double_cover(&g).map_err(Outcome::input_error)?;
    let text = to_stg(&cover);
    if let Some(out) = output {
        fs::write(out, &text)
            .map_err(|e| Outcome::input_error(format!("{}: {e}", out.display())))?;
    }
    let components = stargenus::graph::components(&cover).len();
    if json {
        #[derive(Serialize)]
        struct J {
            n_vertices: usize,
            n_edges: usize,
            components: usize,
            stg: Option<String>,
        }
        let stg = output.is_none().then_some(text);
        return Ok(Outcome::ok(json_line(&J {
            n_vertices: cover.vertex_count(),
            n_edges: cover.edge_count(),
            components,
            stg,
        })));
    }
    Ok(Outcome::ok(match output {
        Some(out) => format!(
            "wrote {}: {} vertices, {} edges, {components} component(s)\n",
            out.display(),
            cover.vertex_count(),
            cover.edge_count()
        ),
        None => text,
    }))
}

fn cmd_circuit(path: &Path, json: bool) -> Result<Outcome, Outcome> {
    let (_, a) = analyzed(path, json)?;
    if json {
        #[derive(Serialize)]
        struct J {
            source_sink: bool,
            circuit: Vec<u64>,
            classes: BTreeMap<u64, String>,
        }
        let classes = a.classes.iter().map(|(&v, c)| (v, c.to_string())).collect();
        return Ok(Outcome::ok(json_line(&J {
            source_sink: true,
            circuit: a.circuit.edges().to_vec(),
            classes,
        })));
    }
    let edges: Vec<String> = a.circuit.edges().iter().map(|e| format!("e{e}")).collect();
    let mut s = format!("circuit: {}\n", edges.join(" "));
    for (v, c) in &a.classes {
        s.push_str(&format!("class: {v} {c}\n"));
    }
    Ok(Outcome::ok(s))
}

fn cmd_diagram(path: &Path, json: bool) -> Result<Outcome, Outcome> {
    let (_, a) = analyzed(path, json)?;
    if json {
        #[derive(Serialize)]
        struct J {
            source_sink: bool,
            circle: usize,
            attachments: Vec<String>,
            chords: Vec<[usize; 2]>,
            matrix: Vec<Vec<u8>>,
            surgery_circles: usize,
        }
        return Ok(Outcome::ok(json_line(&J {
            source_sink: true,
            circle: a.star.len(),
            attachments: a.star.attachments().iter().map(|x| x.to_string()).collect(),
            chords: a
                .diagram
                .chords()
                .iter()
                .map(|c| [c.ends.0, c.ends.1])
                .collect(),
            matrix: a.matrix.to_rows(),
            surgery_circles: surgery(&a.diagram),
        })));
    }
    let mut s = format!("circle: {}\n", a.star.len());
    for x in a.star.attachments() {
        s.push_str(&format!("{x}\n"));
    }
    Ok(Outcome::ok(s))
}

#[derive(Serialize)]
struct GenusJson {
    source_sink: bool,
    n_vertices: usize,
    n_chords: usize,
    min_genus: usize,
    ranks: [usize; 2],
    witness: BTreeMap<u64, &'static str>,
}

fn cmd_genus(path: &Path, json: bool) -> Result<Outcome, Outcome> {
    let (g, a) = analyzed(path, json)?;
    let r = min_genus_of(&a).map_err(Outcome::input_error)?;
    let out = GenusJson {
        source_sink: true,
        n_vertices: g.vertex_count(),
        n_chords: a.diagram.len(),
        min_genus: r.min_genus,
        ranks: [r.ranks.0, r.ranks.1],
        witness: witness_map(&r.witness),
    };
    if json {
        return Ok(Outcome::ok(json_line(&out)));
    }
    Ok(Outcome::ok(format!(
        "min_genus: {}\nranks: {} {}\nwitness: {}\n",
        out.min_genus,
        out.ranks[0],
        out.ranks[1],
        witness_text(&out.witness)
    )))
}

fn cmd_planar(path: &Path, json: bool) -> Result<Outcome, Outcome> {
    let (_, a) = analyzed(path, json)?;
    match is_planar_of(&a) {
        Planarity::Planar { witness } => {
            let w = witness_map(&witness);
            if json {
                #[derive(Serialize)]
                struct J {
                    planar: bool,
                    witness: BTreeMap<u64, &'static str>,
                }
                return Ok(Outcome::ok(json_line(&J {
                    planar: true,
                    witness: w,
                })));
            }
            Ok(Outcome::ok(format!(
                "planar\nwitness: {}\n",
                witness_text(&w)
            )))
        }
        Planarity::NonPlanar { conflict } => {
            if json {
                #[derive(Serialize)]
                struct J {
                    planar: bool,
                    conflict: Vec<usize>,
                }
                return Ok(Outcome::negative(json_line(&J {
                    planar: false,
                    conflict,
                })));
            }
            let ids: Vec<String> = conflict.iter().map(|c| c.to_string()).collect();
            Ok(Outcome::negative(format!(
                "not planar\nconflict: {}\n",
                ids.join(" ")
            )))
        }
    }
}

fn chord_count(g: &StarGraph) -> usize {
    g.vertices().map(|(_, d)| if d == 4 { 1 } else { 2 }).sum()
}

fn cmd_oracle(path: &Path, cap: Option<usize>, json: bool) -> Result<Outcome, Outcome> {
    let cap = oracle_cap(cap)?;
    let g = load_valid(path)?;
    let r = match oracle_min_genus(&g, cap) {
        Ok(r) => r,
        Err(Error::NotSourceSink) => return Ok(not_source_sink(json)),
        Err(e @ Error::TooManyVertices { .. }) => {
            return Err(Outcome::input_error(format!("oracle cap exceeded: {e}")))
        }
        Err(e) => return Err(Outcome::input_error(e)),
    };
    // bit 0 (angle (0,1) white) is written W
    let witness: BTreeMap<u64, &'static str> = r
        .witness
        .choice()
        .iter()
        .map(|(&v, &b)| (v, Side::from_bit(b).letter()))
        .collect();
    if json {
        #[derive(Serialize)]
        struct J {
            source_sink: bool,
            n_vertices: usize,
            n_chords: usize,
            min_genus: usize,
            faces: [usize; 2],
            witness: BTreeMap<u64, &'static str>,
            method: &'static str,
        }
        return Ok(Outcome::ok(json_line(&J {
            source_sink: true,
            n_vertices: g.vertex_count(),
            n_chords: chord_count(&g),
            min_genus: r.min_genus,
            faces: [r.faces.white, r.faces.black],
            witness,
            method: "bruteforce",
        })));
    }
    Ok(Outcome::ok(format!(
        "min_genus: {}\nfaces: {} {}\nwitness: {}\nmethod: bruteforce\n",
        r.min_genus,
        r.faces.white,
        r.faces.black,
        witness_text(&witness)
    )))
}

#[derive(Serialize)]
struct CheckJson {
    path: String,
    double_cover: bool,
    genus: usize,
    oracle: usize,
    partitions_checked: Option<usize>,
    partitions_agreeing: Option<usize>,
    agree: bool,
}

fn check_one(path: &Path, all_partitions: bool, cap: usize) -> Result<CheckJson, Outcome> {
    let mut g = load_valid(path)?;
    let covered = find_source_sink_orientation(&g).is_err();
    if covered {
        g = double_cover(&g).map_err(Outcome::input_error)?;
    }
    let fail = |e: Error| Outcome::input_error(format!("{}: {e}", path.display()));
    let a = analyze(&g).map_err(fail)?;
    let genus = min_genus_of(&a).map_err(fail)?.min_genus;
    let oracle = oracle_min_genus(&g, cap).map_err(fail)?.min_genus;
    let mut agree = genus == oracle;
    let (mut checked, mut agreeing) = (None, None);
    if all_partitions {
        let traced = all_coloring_genera(&g, cap).map_err(fail)?;
        let (mut c, mut ok) = (0, 0);
        for p in enumerate_permissible_partitions(&a.diagram).map_err(fail)? {
            let by_rank = genus_of_partition(&a.matrix, &a.diagram, &p).map_err(fail)?;
            let coloring = coloring_of_partition(&a, &p).map_err(fail)?;
            c += 1;
            ok += (by_rank == traced[coloring.mask() as usize]) as usize;
        }
        agree &= c == ok;
        checked = Some(c);
        agreeing = Some(ok);
    }
    Ok(CheckJson {
        path: path.display().to_string(),
        double_cover: covered,
        genus,
        oracle,
        partitions_checked: checked,
        partitions_agreeing: agreeing,
        agree,
    })
}

fn cmd_check(
    paths: &[PathBuf],
    all_partitions: bool,
    cap: Option<usize>,
    json: bool,
) -> Result<Outcome, Outcome> {
    let cap = oracle_cap(cap)?;
    let mut reports = Vec::new();
    for p in paths {
        reports.push(check_one(p, all_partitions, cap)?);
    }
    let all_agree = reports.iter().all(|r| r.agree);
    let stdout = if json {
        #[derive(Serialize)]
        struct J {
            agree: bool,
            graphs: Vec<CheckJson>,
        }
        json_line(&J {
            agree: all_agree,
            graphs: reports,
        })
    } else {
        let mut s = String::new();
        for r in &reports {
            let cover = if r.double_cover {
                " (double cover)"
            } else {
                ""
            };
            let parts = match (r.partitions_checked, r.partitions_agreeing) {
                (Some(c), Some(ok)) => format!(" partitions {ok}/{c}"),
                _ => String::new(),
            };
            let verdict = if r.agree { "agree" } else { "DISAGREE" };
            s.push_str(&format!(
                "{}{cover}: genus {} oracle {}{parts} {verdict}\n",
                r.path, r.genus, r.oracle
            ));
        }
        s
    };
    Ok(if all_agree {
        Outcome::ok(stdout)
    } else {
        Outcome::negative(stdout)
    })
}

fn cmd_fixture(name: &str, output: Option<&Path>) -> Result<Outcome, Outcome> {
    let g = fixtures::by_name(name).map_err(Outcome::input_error)?;
    let text = to_stg(&g);
    match output {
        Some(out) => {
            fs::write(out, &text)
                .map_err(|e| Outcome::input_error(format!("{}: {e}", out.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let json = cli.json;
    let result = match &cli.command {
        Command::Validate(i) => cmd_validate(&i.path, json),
        Command::Orient(i) => cmd_orient(&i.path, json),
        Command::Cover { input, output } => cmd_cover(&input.path, output.as_deref(), json),
        Command::Circuit(i) => cmd_circuit(&i.path, json),
        Command::Diagram(i) => cmd_diagram(&i.path, json),
        Command::Genus(i) => cmd_genus(&i.path, json),
        Command::Planar(i) => cmd_planar(&i.path, json),
        Command::Oracle { input, cap } => cmd_oracle(&input.path, *cap, json),
        Command::Check {
            paths,
            all_partitions,
            cap,
        } => cmd_check(paths, *all_partitions, *cap, json),
        Command::Fixture { name, output } => cmd_fixture(name, output.as_deref()),
    };
    result.unwrap_or_else(|e| e)
}

/// Parses `args` (program name first), runs the command and writes its
/// output. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Outcome::input_error(format!("cannot start {n} threads: {e}")),
        },
        None => dispatch(&cli),
    };
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    outcome.code
}
