//! Command-line front end. [`run`] takes the argument list and the output
//! streams so the binary and the tests drive the same code.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::catalog::{generate_gk, is_accelerator, NamedGraph};
use crate::error::{Error, Result};
use crate::extension::{build_extension, characterization_certificate, Flavor};
use crate::forcing::{min_propagation_floor, propagate_deterministic, HopSemantics, Propagation, Rule};
use crate::graph::{emit_graph6, parse_edge_list, parse_graph6, Graph, VertexSet};
use crate::harness::{max_spectral_graphs, spectral_radius, verify, Corpus, TheoremId, VerifyParams};
use crate::throttle::throttling_number;

#[derive(Parser, Debug)]
#[command(name = "zfthrottle", version, about = "Zero forcing throttling: compute, certify and verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Default)]
#[group(required = false, multiple = false)]
struct Input {
    /// Inline graph6 string.
    #[arg(long)]
    g6: Option<String>,
    /// File with one graph6 string per line.
    #[arg(long, value_name = "FILE")]
    g6_file: Option<PathBuf>,
    /// Edge-list file: `n m` on the first line, then `u v` pairs.
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
    /// Built-in graph (P4, C4, C5, bowtie, house, double_diamond, K2bar,
    /// K3bar, twoK2, K2xP3, K2xP4).
    #[arg(long)]
    builtin: Option<String>,
}

impl Input {
    fn given(&self) -> bool {
        self.g6.is_some() || self.g6_file.is_some() || self.edges.is_some() || self.builtin.is_some()
    }

    fn graphs(&self) -> Result<Vec<Graph>> {
        if let Some(s) = &self.g6 {
            return Ok(vec![parse_graph6(s.trim())?]);
        }
        if let Some(p) = &self.g6_file {
            let text = read(p)?;
            return text.lines().map(str::trim).filter(|l| !l.is_empty()).map(parse_graph6).collect();
        }
        if let Some(p) = &self.edges {
            return Ok(vec![parse_edge_list(&read(p)?)?]);
        }
        if let Some(name) = &self.builtin {
            return Ok(vec![name.parse::<NamedGraph>()?.graph()]);
        }
        Err(Error::Usage("an input is required: --g6, --g6-file, --edges or --builtin".into()))
    }
}

fn read(p: &PathBuf) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

fn parse_rule(s: &str) -> std::result::Result<Rule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_flavor(s: &str) -> std::result::Result<Flavor, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| format!("{p:?} is not a nonnegative integer")))
        .collect()
}

fn parse_set(s: &str) -> std::result::Result<VertexSet, String> {
    let items = parse_list(s)?;
    if let Some(v) = items.iter().find(|&&v| v >= 32) {
        return Err(format!("vertex {v} is out of range"));
    }
    Ok(items.into_iter().collect())
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    match parse_list(s)?.as_slice() {
        [n, m] => Ok((*n, *m)),
        _ => Err(format!("expected n,m (got {s:?})")),
    }
}

fn parse_theorem(s: &str) -> std::result::Result<TheoremId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Semantics {
    PerLineage,
    Global,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Throttling number with an optimal initial set and schedule.
    Th {
        #[arg(long, value_parser = parse_rule)]
        rule: Rule,
        #[command(flatten)]
        input: Input,
    },
    /// Propagation time of a given initial set.
    Pt {
        #[arg(long, value_parser = parse_rule)]
        rule: Rule,
        /// Comma-separated 0-based vertices.
        #[arg(long, value_parser = parse_set, allow_hyphen_values = true)]
        blue: VertexSet,
        #[command(flatten)]
        input: Input,
    },
    /// The PSD extension of a Z+ propagation from `--blue`.
    Extend {
        #[arg(long, value_parser = parse_set)]
        blue: VertexSet,
        #[command(flatten)]
        input: Input,
    },
    /// A contraction/deletion script from K_a x T_(k,b) with a + b = t.
    Charcert {
        #[arg(long)]
        t: usize,
        #[arg(long, value_parser = parse_flavor, default_value = "psd")]
        flavor: Flavor,
        #[command(flatten)]
        input: Input,
    },
    /// The accelerator family for k (k <= 1).
    Catalog {
        #[arg(long)]
        k: usize,
        /// Drop members containing a smaller member.
        #[arg(long)]
        reduced: bool,
        /// Write `{composition, decomposition}` per member to this file.
        #[arg(long, value_name = "FILE")]
        sidecar: Option<PathBuf>,
    },
    /// Decomposes a graph as an accelerator for a composition.
    Accel {
        /// Comma-separated parts, e.g. `1,2`.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1)]
        composition: Vec<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Checks a theorem over enumerated connected graphs or a graph6 file.
    Verify {
        #[arg(long, value_parser = parse_theorem)]
        theorem: TheoremId,
        #[arg(long, default_value_t = 2)]
        nmin: usize,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Corpus file (graph6 lines) instead of the enumerator.
        #[arg(long, value_name = "FILE")]
        g6_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        kmax: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Semantics::PerLineage)]
        semantics: Semantics,
        /// Write the JSON-lines report here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Spectral radius of a graph, or the extremal graphs for `--max n,m`.
    Spectral {
        #[arg(long, value_parser = parse_pair)]
        max: Option<(usize, usize)>,
        #[command(flatten)]
        input: Input,
    },
}

/// Exit status for an error: 2 for bad invocations and unreadable input,
/// 1 for everything the computation itself rejects.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parse { .. } | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match cli.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build() {
            Ok(pool) => {
                // the caller's writer need not be Send, so buffer inside the pool
                let mut buf = Vec::new();
                let r = pool.install(|| execute(&cli, &mut buf));
                let _ = out.write_all(&buf);
                r
            }
            Err(e) => Err(Error::Internal(format!("worker pool: {e}"))),
        },
        None => execute(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn print_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("values serialize")).map_err(io)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Th { rule, input } => {
            for g in input.graphs()? {
                let cert = throttling_number(*rule, &g)?;
                if json {
                    let mut v = serde_json::to_value(&cert).expect("certificate serializes");
                    v["g6"] = json!(emit_graph6(&g));
                    print_json(out, &v)?;
                } else {
                    writeln!(out, "{} = {}, B = {}, pt = {}", rule.th_symbol(), cert.th, cert.initial(), cert.pt)
                        .map_err(io)?;
                    writeln!(out, "layers = {}", layers(&cert.schedule.layers)).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Pt { rule, blue, input } => {
            for g in input.graphs()? {
                let schedule = if rule.is_floor() {
                    min_propagation_floor(*rule, &g, *blue)?
                } else {
                    match propagate_deterministic(*rule, &g, *blue)? {
                        Propagation::Complete(s) => Some(s),
                        Propagation::Stalled { .. } => None,
                    }
                };
                match (&schedule, json) {
                    (Some(s), true) => print_json(out, &json!({ "g6": emit_graph6(&g), "pt": s.pt(), "schedule": s }))?,
                    (None, true) => print_json(out, &json!({ "g6": emit_graph6(&g), "pt": null }))?,
                    (Some(s), false) => {
                        writeln!(out, "{} = {}", rule.pt_symbol(), s.pt()).map_err(io)?;
                        writeln!(out, "layers = {}", layers(&s.layers)).map_err(io)?;
                    }
                    (None, false) => writeln!(out, "{} = none ({} is not a forcing set)", rule.pt_symbol(), blue)
                        .map_err(io)?,
                }
            }
            Ok(0)
        }
        Command::Extend { blue, input } => {
            for g in input.graphs()? {
                let schedule = propagate_deterministic(Rule::ZPlus, &g, *blue)?
                    .into_complete()
                    .ok_or_else(|| Error::Domain(format!("{blue} is not a PSD forcing set")))?;
                let ext = build_extension(&g, &schedule)?;
                let h = ext.to_graph()?;
                let labels: Vec<usize> = (0..h.n())
                    .map(|i| h.label(i).and_then(|l| l.parse().ok()).expect("extension vertices are labelled"))
                    .collect();
                if json {
                    print_json(out, &json!({ "g6": emit_graph6(&h), "labels": labels, "extension": ext }))?;
                } else {
                    writeln!(out, "{}", emit_graph6(&h)).map_err(io)?;
                    let map: Vec<String> = labels.iter().enumerate().map(|(i, l)| format!("{i}:{l}")).collect();
                    writeln!(out, "labels = {}", map.join(" ")).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Charcert { t, flavor, input } => {
            for g in input.graphs()? {
                match characterization_certificate(&g, *t, *flavor)? {
                    Some(s) => print_json(out, &serde_json::to_value(&s).expect("script serializes"))?,
                    None if json => print_json(out, &serde_json::Value::Null)?,
                    None => writeln!(out, "none").map_err(io)?,
                }
            }
            Ok(0)
        }
        Command::Catalog { k, reduced, sidecar } => {
            let members = generate_gk(*k, *reduced)?;
            if let Some(path) = sidecar {
                let mut text = String::new();
                for m in &members {
                    text.push_str(
                        &serde_json::to_string(&json!({ "composition": m.composition, "decomposition": m.decomposition }))
                            .expect("sidecar serializes"),
                    );
                    text.push('\n');
                }
                fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            for m in &members {
                if json {
                    print_json(out, &serde_json::to_value(m).expect("member serializes"))?;
                } else {
                    writeln!(out, "{}", emit_graph6(&m.graph)).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Accel { composition, input } => {
            for g in input.graphs()? {
                match is_accelerator(&g, composition) {
                    Some(d) if json => print_json(out, &serde_json::to_value(&d).expect("decomposition serializes"))?,
                    Some(d) => {
                        for (i, ((s, t), m)) in d.s.iter().zip(&d.t).zip(&d.matching).enumerate() {
                            let pairs: Vec<String> = m.iter().map(|(x, y)| format!("{x}-{y}")).collect();
                            writeln!(
                                out,
                                "S{} = {}, T{} = {}, M{} = {}",
                                i + 1,
                                s.iter().copied().collect::<VertexSet>(),
                                i + 1,
                                t.iter().copied().collect::<VertexSet>(),
                                i + 1,
                                pairs.join(" ")
                            )
                            .map_err(io)?;
                        }
                    }
                    None if json => print_json(out, &serde_json::Value::Null)?,
                    None => writeln!(out, "none").map_err(io)?,
                }
            }
            Ok(0)
        }
        Command::Verify { theorem, nmin, nmax, g6_file, kmax, trials, seed, semantics, out: path } => {
            let corpus = match g6_file {
                Some(p) => {
                    let graphs = Input { g6_file: Some(p.clone()), ..Input::default() }.graphs()?;
                    Corpus::from_graphs(p.display().to_string(), graphs)
                }
                None => Corpus::connected(*nmin, *nmax)?,
            };
            let params = VerifyParams {
                kmax: *kmax,
                trials: *trials,
                seed: *seed,
                semantics: match semantics {
                    Semantics::PerLineage => HopSemantics::PerLineage,
                    Semantics::Global => HopSemantics::Global,
                },
                workers: cli.workers,
            };
            let report = verify(*theorem, &corpus, &params)?;
            let lines = report.to_json_lines(true);
            if let Some(p) = path {
                fs::write(p, &lines).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            }
            if json {
                if path.is_none() {
                    write!(out, "{lines}").map_err(io)?;
                } else {
                    print_json(out, &report.summary(true))?;
                }
            } else {
                writeln!(out, "{}", report.summary_line()).map_err(io)?;
                for c in &report.counterexamples {
                    writeln!(out, "counterexample {}", c.g6).map_err(io)?;
                }
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Spectral { max, input } => {
            if let Some((n, m)) = max {
                let graphs = max_spectral_graphs(*n, *m)?;
                for g in graphs {
                    let r = spectral_radius(&g);
                    if json {
                        print_json(out, &json!({ "g6": emit_graph6(&g), "spectral_radius": r }))?;
                    } else {
                        writeln!(out, "{} {:.9}", emit_graph6(&g), r).map_err(io)?;
                    }
                }
                return Ok(0);
            }
            if !input.given() {
                return Err(Error::Usage("spectral needs an input graph or --max n,m".into()));
            }
            for g in input.graphs()? {
                if g.n() == 0 {
                    return Err(Error::Domain("the spectral radius needs a nonempty graph".into()));
                }
                let r = spectral_radius(&g);
                if json {
                    print_json(out, &json!({ "g6": emit_graph6(&g), "spectral_radius": r }))?;
                } else {
                    writeln!(out, "rho = {r:.9}").map_err(io)?;
                }
            }
            Ok(0)
        }
    }
}

fn layers(ls: &[VertexSet]) -> String {
    let parts: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
