//! `oddarc` command-line front end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use oddarc::census::{self, Verdict, SCHEMA};
use oddarc::graphs::{self, coset_graph, CosetGraphSpec, Family};
use oddarc::perm::{GroupSpecFile, GroupTag, Permutation};
use oddarc::two_adic::parity_records;
use oddarc::{Caps, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "oddarc", version, about = "Odd-order 2-arc-transitive graph census tools")]
struct Cli {
    #[command(flatten)]
    caps: CapArgs,
    /// Output format for the summary on standard output.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
struct CapArgs {
    #[arg(long, global = true, default_value_t = Caps::default().max_order)]
    max_order: u64,
    #[arg(long, global = true, default_value_t = Caps::default().backtrack_budget)]
    backtrack_budget: u64,
    #[arg(long, global = true, default_value_t = Caps::default().max_index)]
    max_index: u64,
    #[arg(long, global = true, default_value_t = Caps::default().tuple_cap)]
    tuple_cap: u64,
    #[arg(long, global = true, default_value_t = Caps::default().enumeration_limit)]
    enumeration_limit: u64,
    #[arg(long, global = true, default_value_t = Caps::default().seed)]
    seed: u64,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            max_order: self.max_order,
            backtrack_budget: self.backtrack_budget,
            max_index: self.max_index,
            tuple_cap: self.tuple_cap,
            enumeration_limit: self.enumeration_limit,
            seed: self.seed,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parity of the odd graph orders C(2m+1, m).
    Parity {
        #[arg(long, value_parser = parse_range)]
        m_range: (u64, u64),
        #[arg(long)]
        json: bool,
    },
    /// Build standard graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Build a coset graph from group-spec files and an arc element.
    CosetGraph(CosetArgs),
    /// Local action at a vertex of a coset graph.
    Local {
        #[command(flatten)]
        coset: CosetArgs,
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
    /// Odd-index subgroup classes of A_n, S_n or a degree-6-socle group.
    Subgroups {
        #[arg(long)]
        group: String,
        /// Accepted for clarity; only odd-index classes are enumerated.
        #[arg(long)]
        odd_index: bool,
        /// Only the lattice-maximal classes.
        #[arg(long)]
        maximal: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive checks of the classification statements.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    /// The odd graph O_m.
    Odd {
        #[arg(long)]
        m: usize,
        /// Check that S_{2m+1} acts 2-arc-transitively.
        #[arg(long)]
        check_2at: bool,
        #[arg(long)]
        json: bool,
    },
    /// The complete graph K_n.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Clone)]
struct CosetArgs {
    #[arg(long)]
    group_file: PathBuf,
    #[arg(long)]
    subgroup_file: PathBuf,
    /// Arc element in cycle notation.
    #[arg(long)]
    arc: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Families of odd-order 2-arc-transitive coset graphs.
    #[command(name = "thm1")]
    GraphFamilies {
        #[arg(long, value_parser = parse_usize_range, default_value = "5..8")]
        degrees: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Insoluble composition factors of odd-index subgroups.
    #[command(name = "thm2")]
    InsolubleFactors {
        #[arg(long, value_parser = parse_usize_range, default_value = "5..10")]
        degrees: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// PGL(2,9), M10 and PGammaL(2,9) have no insoluble proper odd-index subgroup.
    Degree6Exceptionals {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shapes of the maximal odd-index subgroups.
    MaximalShapes {
        #[arg(long, value_parser = parse_usize_range, default_value = "5..9")]
        degrees: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: u64 = a.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

fn parse_usize_range(s: &str) -> Result<(usize, usize), String> {
    parse_range(s).map(|(a, b)| (a as usize, b as usize))
}

/// Everything a report needs to be reproduced.
#[derive(Serialize, Debug)]
struct RunConfig {
    subcommand: String,
    degrees: Option<(usize, usize)>,
    caps: Caps,
    seed: u64,
    output: Option<PathBuf>,
    format: Format,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    schema: &'static str,
    config: &'a RunConfig,
    result: &'a T,
}

enum Outcome {
    Verdict(Verdict),
    Error(Error),
}

fn exit_code(outcome: Outcome) -> ExitCode {
    match outcome {
        Outcome::Verdict(Verdict::Pass) => ExitCode::SUCCESS,
        Outcome::Verdict(Verdict::Fail) => ExitCode::from(EXIT_FAIL),
        Outcome::Verdict(Verdict::Undecided) => ExitCode::from(EXIT_UNDECIDED),
        Outcome::Error(Error::Undecided(msg)) => {
            eprintln!("undecided: {msg}");
            ExitCode::from(EXIT_UNDECIDED)
        }
        Outcome::Error(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

/// Writes the enveloped report to `path` or, in JSON format, to stdout.
fn emit<T: Serialize>(config: &RunConfig, result: &T, summary: &str) -> Result<(), Error> {
    let envelope = Envelope {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        schema: SCHEMA,
        config,
        result,
    };
    let text = to_json(&envelope);
    if let Some(path) = &config.output {
        write_file(path, &text)?;
    }
    match config.format {
        Format::Json if config.output.is_none() => print!("{text}"),
        _ => print!("{summary}"),
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn read_group(path: &Path) -> Result<oddarc::perm::PermGroup, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    GroupSpecFile::from_json(&text)?.to_group()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    exit_code(run(cli))
}

fn run(cli: Cli) -> Outcome {
    let caps = cli.caps.caps();
    if let Err(e) = caps.validate() {
        return Outcome::Error(e);
    }
    match dispatch(cli.command, caps, cli.format) {
        Ok(v) => Outcome::Verdict(v),
        Err(e) => Outcome::Error(e),
    }
}

fn config(name: &str, degrees: Option<(usize, usize)>, caps: &Caps, output: Option<PathBuf>, format: Format) -> RunConfig {
    RunConfig {
        subcommand: name.into(),
        degrees,
        caps: caps.clone(),
        seed: caps.seed,
        output,
        format,
    }
}

fn dispatch(command: Command, caps: Caps, format: Format) -> Result<Verdict, Error> {
    match command {
        Command::Parity { m_range, json } => {
            let records = parity_records(m_range.0.max(1)..=m_range.1)?;
            if json || format == Format::Json {
                print!("{}", to_json(&records));
            } else {
                for r in &records {
                    println!("m={} order_parity={} m_plus_1_pow2={}", r.m, r.order_parity, r.m_plus_1_pow2);
                }
            }
            Ok(Verdict::Pass)
        }
        Command::Graph(GraphCommand::Odd { m, check_2at, json }) => {
            let odd = graphs::odd_graph(m)?;
            let mut verdict = Verdict::Pass;
            let mut two_arc = None;
            if check_2at {
                let action = odd.symmetric_action()?;
                let ok = graphs::is_s_arc_transitive(&action, &odd.graph, 2, &caps)?;
                two_arc = Some(ok);
                if !ok {
                    verdict = Verdict::Fail;
                }
            }
            let family = Family::Odd(m);
            if json || format == Format::Json {
                #[derive(Serialize)]
                struct Out {
                    #[serde(flatten)]
                    graph: graphs::GraphJson,
                    two_arc_transitive: Option<bool>,
                }
                print!("{}", to_json(&Out { graph: odd.graph.to_json(&family), two_arc_transitive: two_arc }));
            } else {
                println!(
                    "{family}: {} vertices, valency {}",
                    odd.graph.vertex_count(),
                    odd.graph.valency().unwrap_or(0)
                );
                if let Some(ok) = two_arc {
                    println!("S_{} acts 2-arc-transitively: {ok}", 2 * m + 1);
                }
            }
            Ok(verdict)
        }
        Command::Graph(GraphCommand::Complete { n, json }) => {
            let g = graphs::complete_graph(n)?;
            let family = Family::Complete(n);
            if json || format == Format::Json {
                print!("{}", to_json(&g.to_json(&family)));
            } else {
                println!("{family}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
            }
            Ok(Verdict::Pass)
        }
        Command::CosetGraph(args) => {
            let (cg, _) = build_coset_graph(&args, &caps)?;
            let family = graphs::identify_family(&cg.graph, census::IDENTIFY_BUDGET)?;
            let two_arc = graphs::is_s_arc_transitive(&cg.action, &cg.graph, 2, &caps)?;
            #[derive(Serialize)]
            struct Out {
                #[serde(flatten)]
                graph: graphs::GraphJson,
                two_arc_transitive: bool,
            }
            let out = Out {
                graph: cg.graph.to_json(&family),
                two_arc_transitive: two_arc,
            };
            let cfg = config("coset-graph", None, &caps, args.report.clone(), format);
            let summary = format!(
                "{family}: {} vertices, valency {}, 2-arc-transitive: {two_arc}\n",
                cg.graph.vertex_count(),
                cg.graph.valency().map_or("irregular".into(), |k| k.to_string())
            );
            emit(&cfg, &out, &summary)?;
            Ok(Verdict::Pass)
        }
        Command::Local { coset, vertex } => {
            let (cg, _) = build_coset_graph(&coset, &caps)?;
            let local = graphs::local_action(&cg.action, &cg.graph, vertex)?;
            let r = &local.report;
            let cfg = config("local", None, &caps, coset.report.clone(), format);
            let summary = format!(
                "vertex {}: |G_a| = {} = {} x {}, local degree {}, 2-transitive: {}, double-star kernel order {}\n",
                r.vertex, r.stabilizer_order, r.local_group_order, r.kernel_order, r.local_degree,
                r.local_2transitive, r.double_star_kernel_order
            );
            emit(&cfg, r, &summary)?;
            Ok(if r.double_star_prime_power { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Subgroups { group, odd_index: _, maximal, out } => {
            let tag: GroupTag = group.parse()?;
            let mut census = census::odd_index_subgroups(tag, &caps)?;
            if maximal {
                census.classes.retain(|c| c.is_maximal_in_lattice);
            }
            let mut summary = format!("{}: {} classes\n", census.group, census.classes.len());
            for c in &census.classes {
                let factors: Vec<String> = c.factors.iter().map(|f| f.to_string()).collect();
                summary += &format!(
                    "  #{} order {} index {} orbits {:?} factors [{}]{}\n",
                    c.conjugacy_class_id,
                    c.order,
                    c.index,
                    c.orbit_signature,
                    factors.join(", "),
                    c.shape.as_ref().map_or(String::new(), |s| format!(" shape {s:?}"))
                );
            }
            let cfg = config("subgroups", None, &caps, out, format);
            let incomplete = census.incomplete;
            emit(&cfg, &census, &summary)?;
            Ok(if incomplete { Verdict::Undecided } else { Verdict::Pass })
        }
        Command::Verify(v) => verify(v, caps, format),
    }
}

fn build_coset_graph(args: &CosetArgs, caps: &Caps) -> Result<(graphs::CosetGraph, CosetGraphSpec), Error> {
    let group = read_group(&args.group_file)?;
    let subgroup = read_group(&args.subgroup_file)?;
    if subgroup.degree() != group.degree() {
        return Err(Error::DegreeMismatch {
            expected: group.degree(),
            found: subgroup.degree(),
        });
    }
    let arc = Permutation::parse_cycles(group.degree(), &args.arc)?;
    let spec = CosetGraphSpec {
        group,
        subgroup,
        arc_element: arc,
    };
    Ok((coset_graph(&spec, caps.max_index)?, spec))
}

fn range(d: (usize, usize)) -> Vec<usize> {
    (d.0..=d.1).collect()
}

fn verify(command: VerifyCommand, caps: Caps, format: Format) -> Result<Verdict, Error> {
    match command {
        VerifyCommand::GraphFamilies { degrees, out } => {
            let report = census::verify_graph_families(&range(degrees), &caps)?;
            let mut summary = String::new();
            for d in &report.degrees {
                let names = |fs: &[Family]| fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ");
                summary += &format!(
                    "n={}: found [{}] expected [{}] {}\n",
                    d.degree,
                    names(&d.found),
                    names(&d.expected),
                    if d.consistent { "ok" } else { "MISMATCH" }
                );
            }
            summary += &format!("verdict: {:?}\n", report.verdict);
            let cfg = config("verify thm1", Some(degrees), &caps, out, format);
            emit(&cfg, &report, &summary)?;
            Ok(report.verdict)
        }
        VerifyCommand::InsolubleFactors { degrees, out } => {
            let report = census::verify_insoluble_factors(&range(degrees), &caps)?;
            let mut summary = format!("insoluble classes checked: {}\n", report.insoluble_classes_checked);
            for e in &report.exceptions_found {
                summary += &format!("exception: {} order {} index {}\n", e.group, e.order, e.index);
            }
            summary += &format!("theorem_1_2_consistent: {}\nverdict: {:?}\n", report.consistent, report.verdict);
            let cfg = config("verify thm2", Some(degrees), &caps, out, format);
            emit(&cfg, &report, &summary)?;
            Ok(report.verdict)
        }
        VerifyCommand::Degree6Exceptionals { out } => {
            let report = census::verify_exceptional_degree6(&caps)?;
            let mut summary = String::new();
            for g in &report.groups {
                summary += &format!(
                    "{}: order {}, {} odd-index classes, {} insoluble\n",
                    g.group, g.order, g.odd_index_classes, g.insoluble_proper_classes
                );
            }
            summary += &format!("verdict: {:?}\n", report.verdict);
            let cfg = config("verify degree6-exceptionals", None, &caps, out, format);
            emit(&cfg, &report, &summary)?;
            Ok(report.verdict)
        }
        VerifyCommand::MaximalShapes { degrees, out } => {
            let report = census::verify_maximal_shapes(&range(degrees), &caps)?;
            let mut summary = String::new();
            for e in &report.maximal_classes {
                summary += &format!("{} order {} index {}: {:?}\n", e.group, e.order, e.index, e.shape);
            }
            summary += &format!("unmatched: {}\nverdict: {:?}\n", report.unmatched, report.verdict);
            let cfg = config("verify maximal-shapes", Some(degrees), &caps, out, format);
            emit(&cfg, &report, &summary)?;
            Ok(report.verdict)
        }
    }
}
