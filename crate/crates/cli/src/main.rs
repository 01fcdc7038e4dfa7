//! `ordtree`: exact combinatorics of rooted ordered trees on the command
//! line.
//!
//! Literals can be passed as arguments or, when omitted, read one per line
//! from standard input (batch mode). Identical inputs always produce
//! byte-identical outputs.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 class-membership error.

use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use ordtree::counts;
use ordtree::path::{DyckPath, LatticePath};
use ordtree::phi_map::PhiMapError;
use ordtree::tree::{enumerate_trees, total_vertex_count, MarkedTree, Tree};
use ordtree::verify::VerificationReport;
use ordtree::Class;

mod table;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MEMBERSHIP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ordtree",
    version,
    about = "Exact counts, encodings, and bijections for rooted ordered trees",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one closed-form count
    Count {
        #[arg(long, value_enum)]
        formula: CountFormula,
        /// Edge count n
        #[arg(short = 'n', long = "edges")]
        edges: u32,
        #[arg(short)]
        k: Option<u32>,
        #[arg(short)]
        l: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a (k, l) table of a formula, or the full brute-force tally
    Table {
        #[arg(long, value_enum)]
        formula: TableFormula,
        /// Edge count n
        #[arg(short = 'n', long = "edges")]
        edges: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List every tree with n edges in lexicographic order
    Enumerate {
        /// Edge count n
        #[arg(short = 'n', long = "edges")]
        edges: u32,
    },
    /// Encode a tree literal as a Dyck path
    Encode {
        #[arg(long, value_enum)]
        codec: Codec,
        /// Balanced-parenthesis literal; read from stdin when omitted
        literal: Option<String>,
    },
    /// Decode a Dyck path literal back to a tree
    Decode {
        #[arg(long, value_enum)]
        codec: Codec,
        /// Path literal over U/D; read from stdin when omitted
        literal: Option<String>,
    },
    /// Apply a class-to-class marked-vertex map, e.g. `map A-D -k 2 -l 1 "((()))@1"`
    Map {
        /// Class pair FROM-TO, e.g. A-D
        pair: String,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        l: u32,
        /// Apply the inverse map (TO-FROM)
        #[arg(long)]
        inverse: bool,
        /// Marked-tree literal `<word>@<index>`; read from stdin when omitted
        literal: Option<String>,
    },
    /// Map a marked vertex with outdegree >= k at level >= l to its lattice path
    PhiMap {
        #[arg(short)]
        k: u32,
        #[arg(short)]
        l: u32,
        /// Apply the inverse map (path literal to marked tree); requires -n
        #[arg(long)]
        inverse: bool,
        /// Edge count n (inverse direction only)
        #[arg(short = 'n', long = "edges")]
        edges: Option<u32>,
        /// Marked-tree literal, or path literal with --inverse
        literal: Option<String>,
    },
    /// Run the brute-force verification suites
    Verify {
        /// Closed-form counts against exhaustive tallies (default bound n = 10)
        #[arg(long)]
        counts: bool,
        /// Class bijections round trips and image sets (default bound n = 8)
        #[arg(long)]
        bijections: bool,
        /// Marked-vertex-to-path map (default bound n = 7)
        #[arg(long)]
        phi: bool,
        /// All three suites
        #[arg(long)]
        all: bool,
        /// Override every selected suite's bound
        #[arg(short = 'n', long = "edges", visible_alias = "bound")]
        edges: Option<u32>,
        /// Also write the reports as JSON to FILE
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountFormula {
    Catalan,
    TotalVertices,
    HalfVertices,
    Class,
    Cumulative,
    OutdegLevel,
    ByDegree,
    ByLevel,
}

impl CountFormula {
    fn name(self) -> &'static str {
        match self {
            CountFormula::Catalan => "catalan",
            CountFormula::TotalVertices => "total_vertices",
            CountFormula::HalfVertices => "half_vertices",
            CountFormula::Class => "class",
            CountFormula::Cumulative => "cumulative",
            CountFormula::OutdegLevel => "outdeg_level",
            CountFormula::ByDegree => "by_degree",
            CountFormula::ByLevel => "by_level",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormula {
    Class,
    Cumulative,
    OutdegLevel,
    ByDegree,
    ByLevel,
    /// Full brute-force tally of every statistic
    Tally,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Codec {
    Phi,
    Psi,
}

/// An error with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn membership(message: impl Into<String>) -> Self {
        Failure { code: EXIT_MEMBERSHIP, message: message.into() }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("ordtree: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Count { formula, edges, k, l, format } => {
            let count = eval_count(formula, edges, k, l)?;
            match format {
                Format::Text => println!("{count}"),
                Format::Csv | Format::Json => {
                    let rows = [table::Row {
                        n: edges,
                        k,
                        l,
                        statistic: formula.name(),
                        count,
                    }];
                    let rendered = match format {
                        Format::Csv => table::render_csv(&rows),
                        _ => table::render_json(&rows),
                    };
                    print!("{rendered}");
                }
            }
            Ok(0)
        }
        Command::Table { formula, edges, format } => {
            let rows = table::build_rows(formula, edges)?;
            let rendered = match format {
                Format::Text => table::render_text(formula, edges, &rows),
                Format::Csv => table::render_csv(&rows),
                Format::Json => table::render_json(&rows),
            };
            print!("{rendered}");
            Ok(0)
        }
        Command::Enumerate { edges } => {
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            for tree in enumerate_trees(edges) {
                writeln!(out, "{tree}").expect("write to stdout");
            }
            out.flush().expect("flush stdout");
            Ok(0)
        }
        Command::Encode { codec, literal } => for_each_literal(literal, |input| {
            let tree = parse_tree(input)?;
            let path = match codec {
                Codec::Phi => ordtree::phi(&tree),
                Codec::Psi => ordtree::psi(&tree),
            };
            Ok(path.to_string())
        }),
        Command::Decode { codec, literal } => for_each_literal(literal, |input| {
            let path = parse_path(input)?;
            let dyck = DyckPath::try_from(path)
                .map_err(|e| Failure::usage(format!("invalid path literal {input:?}: {e}")))?;
            let tree = match codec {
                Codec::Phi => ordtree::phi_inv(&dyck),
                Codec::Psi => ordtree::psi_inv(&dyck),
            };
            Ok(tree.to_string())
        }),
        Command::Map { pair, k, l, inverse, literal } => {
            let (mut from, mut to) = parse_class_pair(&pair)?;
            if inverse {
                std::mem::swap(&mut from, &mut to);
            }
            for_each_literal(literal, move |input| {
                let marked = parse_marked(input)?;
                let image = ordtree::map_between(&marked, from, to, k, l)
                    .map_err(|e| Failure::membership(e.to_string()))?;
                Ok(image.to_string())
            })
        }
        Command::PhiMap { k, l, inverse, edges, literal } => {
            if inverse {
                let n = edges.ok_or_else(|| {
                    Failure::usage("--inverse requires the edge count (-n/--edges)")
                })?;
                for_each_literal(literal, move |input| {
                    let path = parse_path(input)?;
                    let marked = ordtree::phi_map_inv(&path, n, k, l).map_err(phi_map_failure)?;
                    Ok(marked.to_string())
                })
            } else {
                for_each_literal(literal, move |input| {
                    let marked = parse_marked(input)?;
                    let path = ordtree::phi_map(&marked, k, l).map_err(phi_map_failure)?;
                    Ok(path.to_string())
                })
            }
        }
        Command::Verify { counts, bijections, phi, all, edges, json } => {
            run_verify(counts, bijections, phi, all, edges, json)
        }
    }
}

fn eval_count(
    formula: CountFormula,
    n: u32,
    k: Option<u32>,
    l: Option<u32>,
) -> Result<BigUint, Failure> {
    use CountFormula::*;
    let takes_k = matches!(formula, Class | Cumulative | OutdegLevel | ByDegree);
    let takes_l = matches!(formula, Class | Cumulative | OutdegLevel | ByLevel);
    if !takes_k && k.is_some() {
        return Err(Failure::usage("this formula does not take -k"));
    }
    if !takes_l && l.is_some() {
        return Err(Failure::usage("this formula does not take -l"));
    }
    let need_k = || k.ok_or_else(|| Failure::usage("this formula requires -k"));
    let need_l = || l.ok_or_else(|| Failure::usage("this formula requires -l"));
    let need_n1 = || {
        if n >= 1 {
            Ok(())
        } else {
            Err(Failure::usage("this formula requires n >= 1"))
        }
    };
    let at_least_1 = |value: u32, name: &str| {
        if value >= 1 {
            Ok(value)
        } else {
            Err(Failure::usage(format!("this formula requires {name} >= 1")))
        }
    };
    match formula {
        Catalan => Ok(counts::catalan(n)),
        TotalVertices => Ok(total_vertex_count(n)),
        HalfVertices => {
            need_n1()?;
            Ok(counts::half_vertices(n))
        }
        Class => {
            need_n1()?;
            let k = at_least_1(need_k()?, "k")?;
            let l = at_least_1(need_l()?, "l")?;
            Ok(counts::count_class(n, k, l))
        }
        Cumulative => {
            need_n1()?;
            Ok(counts::count_cumulative(n, need_k()?, need_l()?))
        }
        OutdegLevel => {
            need_n1()?;
            Ok(counts::count_outdeg_level(n, need_k()?, need_l()?))
        }
        ByDegree => {
            need_n1()?;
            let k = at_least_1(need_k()?, "k")?;
            Ok(counts::count_by_degree(n, k))
        }
        ByLevel => {
            need_n1()?;
            let l = at_least_1(need_l()?, "l")?;
            Ok(counts::count_by_level(n, l))
        }
    }
}

/// Applies `apply` to the given literal, or to every stdin line in batch
/// mode. The first failing line aborts with its exit code.
fn for_each_literal(
    literal: Option<String>,
    apply: impl Fn(&str) -> Result<String, Failure>,
) -> Result<u8, Failure> {
    match literal {
        Some(input) => {
            println!("{}", apply(&input)?);
            Ok(0)
        }
        None => {
            let stdin = std::io::stdin();
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            for line in stdin.lock().lines() {
                let line = line.map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
                let output = apply(&line)?;
                writeln!(out, "{output}").expect("write to stdout");
            }
            out.flush().expect("flush stdout");
            Ok(0)
        }
    }
}

fn parse_tree(input: &str) -> Result<Tree, Failure> {
    input
        .parse()
        .map_err(|e| Failure::usage(format!("invalid tree literal {input:?}: {e}")))
}

fn parse_marked(input: &str) -> Result<MarkedTree, Failure> {
    input
        .parse()
        .map_err(|e| Failure::usage(format!("invalid marked-tree literal {input:?}: {e}")))
}

fn parse_path(input: &str) -> Result<LatticePath, Failure> {
    input
        .parse()
        .map_err(|e| Failure::usage(format!("invalid path literal {input:?}: {e}")))
}

fn parse_class_pair(pair: &str) -> Result<(Class, Class), Failure> {
    let bad = || Failure::usage(format!("class pair must look like A-D, got {pair:?}"));
    let (from, to) = pair.split_once('-').ok_or_else(bad)?;
    Ok((from.parse().map_err(|_| bad())?, to.parse().map_err(|_| bad())?))
}

fn phi_map_failure(error: PhiMapError) -> Failure {
    match error {
        PhiMapError::NotInDomain { .. } => Failure::membership(error.to_string()),
        PhiMapError::PathOutsideSet { .. } => Failure::membership(error.to_string()),
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    suite: &'a str,
    scope: &'a str,
    checks: u64,
    failures: Vec<FailureJson<'a>>,
}

#[derive(Serialize)]
struct FailureJson<'a> {
    check: &'a str,
    witness: &'a str,
    expected: &'a str,
    actual: &'a str,
}

fn run_verify(
    counts: bool,
    bijections: bool,
    phi: bool,
    all: bool,
    edges: Option<u32>,
    json: Option<PathBuf>,
) -> Result<u8, Failure> {
    if let Some(n) = edges {
        if n < 1 {
            return Err(Failure::usage("verification bounds must be at least 1"));
        }
    }
    let everything = all || !(counts || bijections || phi);
    type Suite = fn(u32) -> VerificationReport;
    // Default bounds keep the full run within a few minutes on a laptop.
    let mut suites: Vec<(Suite, u32)> = Vec::new();
    if counts || everything {
        suites.push((ordtree::verify_counts, edges.unwrap_or(10)));
    }
    if bijections || everything {
        suites.push((ordtree::verify_bijections, edges.unwrap_or(8)));
    }
    if phi || everything {
        suites.push((ordtree::verify_phi, edges.unwrap_or(7)));
    }

    let mut reports = Vec::with_capacity(suites.len());
    for (suite, bound) in suites {
        let started = Instant::now();
        let mut report = suite(bound);
        report.elapsed = Some(started.elapsed());
        reports.push(report);
    }

    let mut all_passed = true;
    for (i, report) in reports.iter().enumerate() {
        if i > 0 {
            println!();
        }
        print!("{}", report.render_text());
        // Timing goes to stderr so stdout stays byte-identical across runs.
        if let Some(elapsed) = report.elapsed {
            eprintln!("ordtree: suite {}: {} checks in {:.3}s", report.suite, report.checks, elapsed.as_secs_f64());
        }
        all_passed &= report.passed();
    }

    if let Some(path) = json {
        let dto: Vec<ReportJson> = reports
            .iter()
            .map(|r| ReportJson {
                suite: &r.suite,
                scope: &r.scope,
                checks: r.checks,
                failures: r
                    .failures
                    .iter()
                    .map(|f| FailureJson {
                        check: &f.check,
                        witness: &f.witness,
                        expected: &f.expected,
                        actual: &f.actual,
                    })
                    .collect(),
            })
            .collect();
        let mut body = serde_json::to_string_pretty(&dto).expect("reports serialize");
        body.push('\n');
        std::fs::write(&path, body)
            .map_err(|e| Failure::usage(format!("writing {}: {e}", path.display())))?;
    }

    Ok(if all_passed { 0 } else { EXIT_VERIFICATION })
}
