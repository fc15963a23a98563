//! Command-line front end: walk distance matrices, per-length expansions,
//! spectral data, and the verification suite, over a simple graph text
//! format.
//!
//! Exit codes: 0 success, 2 usage, 3 unreadable or unparsable input,
//! 4 numeric range / guard / unsupported size, 5 verification failure.

use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use walkdist::circuits::WalkBudget;
use walkdist::matrix::DenseMatrix;
use walkdist::metric::{p_metric, walk_distances, walk_weights};
use walkdist::routes::{distance_expansion, jump_digraph, FigureCollection};
use walkdist::verify::{verify_corpus, verify_graph, CheckStatus, VerifyOptions};
use walkdist::{Error, VertexId, WeightedMultigraph, DEFAULT_WALK_BUDGET};

#[derive(Parser)]
#[command(
    name = "walkdist",
    version,
    about = "Walk distances on connected weighted multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Walk distance matrix of a graph file
    Dist(DistArgs),
    /// Per-length signed figure expansion of one pairwise distance
    Expand(ExpandArgs),
    /// Cross-check suite on a graph file or a seeded random corpus
    Verify(VerifyArgs),
    /// Spectral radius, the valid parameter interval, and the jump radius
    Spectral(SpectralArgs),
}

#[derive(Args)]
struct DistArgs {
    /// Graph file (see README for the format)
    input: PathBuf,
    /// Walk parameter, decimal or a rational like 1/3
    #[arg(long = "t", value_name = "T", value_parser = parse_parameter, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Scale factor applied to the distances
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Also emit the bounded metric derived from the walk weights
    #[arg(long)]
    pmetric: bool,
    /// Also emit the walk weight matrix R
    #[arg(long = "walk-weights")]
    walk_weights: bool,
    /// Output format
    #[arg(long, default_value = "tsv")]
    format: Format,
    /// Print the parsed graph back out and exit
    #[arg(long = "dump-graph")]
    dump_graph: bool,
}

#[derive(Args)]
struct ExpandArgs {
    /// Graph file
    input: PathBuf,
    /// Walk parameter, decimal or a rational like 1/3
    #[arg(long = "t", value_name = "T", value_parser = parse_parameter, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Vertex pair to expand
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pair: Option<Vec<usize>>,
    /// Truncation depth of the expansion
    #[arg(long = "max-len", value_name = "K", default_value_t = 8)]
    max_len: usize,
    /// Output format
    #[arg(long, default_value = "tsv")]
    format: Format,
    /// Print the parsed graph back out and exit
    #[arg(long = "dump-graph")]
    dump_graph: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file; omit to verify a seeded random corpus instead
    input: Option<PathBuf>,
    /// Walk parameter (default: half the critical value)
    #[arg(long = "t", value_name = "T", value_parser = parse_parameter, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Seed for the random corpus (used when no file is given)
    #[arg(long)]
    seed: Option<u64>,
    /// Enumeration depth for bijection and trace checks
    #[arg(long = "max-len", value_name = "K", default_value_t = 4)]
    max_len: usize,
    /// Relative tolerance for float comparisons
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Output format
    #[arg(long, default_value = "tsv")]
    format: Format,
    /// Print the parsed graph back out and exit
    #[arg(long = "dump-graph")]
    dump_graph: bool,
}

#[derive(Args)]
struct SpectralArgs {
    /// Graph file
    input: PathBuf,
    /// Walk parameter, needed together with --pair for the jump radius
    #[arg(long = "t", value_name = "T", value_parser = parse_parameter, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Vertex pair for the jump digraph radius
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pair: Option<Vec<usize>>,
    /// Output format
    #[arg(long, default_value = "tsv")]
    format: Format,
    /// Print the parsed graph back out and exit
    #[arg(long = "dump-graph")]
    dump_graph: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Tsv,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

fn failure(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn domain_failure(e: Error) -> Failure {
    failure(4, e.to_string())
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dist(args) => run_dist(args),
        Command::Expand(args) => run_expand(args),
        Command::Verify(args) => run_verify(args),
        Command::Spectral(args) => run_spectral(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Accepts a decimal or a `p/q` rational.
fn parse_parameter(s: &str) -> Result<f64, String> {
    if let Some((p, q)) = s.split_once('/') {
        let p: f64 = p
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: f64 = q
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if q == 0.0 {
            return Err("denominator must be nonzero".into());
        }
        Ok(p / q)
    } else {
        s.parse()
            .map_err(|_| format!("{s:?} is neither a decimal nor p/q"))
    }
}

fn walk_budget() -> Result<usize, Failure> {
    match std::env::var("WALKDIST_GUARD") {
        Ok(raw) => raw
            .parse()
            .map_err(|_| failure(2, format!("WALKDIST_GUARD={raw:?} is not a walk count"))),
        Err(_) => Ok(DEFAULT_WALK_BUDGET),
    }
}

fn load_graph(path: &Path) -> Result<WeightedMultigraph<f64>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| failure(3, format!("cannot read {}: {}", path.display(), e)))?;
    WeightedMultigraph::parse_text(&text)
        .map_err(|e| failure(3, format!("{}: {}", path.display(), e)))
}

/// 17 significant digits; the one rendering both TSV and JSON use.
fn fmt17(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.16e}", x)
}

fn require_t(t: Option<f64>) -> Result<f64, Failure> {
    t.ok_or_else(|| failure(2, "--t is required (decimal or p/q)"))
}

fn require_pair(pair: Option<Vec<usize>>) -> Result<(VertexId, VertexId), Failure> {
    match pair.as_deref() {
        Some([i, j]) => Ok((VertexId(*i), VertexId(*j))),
        _ => Err(failure(2, "--pair I J is required")),
    }
}

fn tsv_matrix(out: &mut String, label: &str, m: &DenseMatrix<f64>) {
    out.push_str(&format!("# {}\n", label));
    for r in 0..m.row_count() {
        let row: Vec<String> = (0..m.col_count()).map(|c| fmt17(*m.get(r, c))).collect();
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
}

fn json_matrix(m: &DenseMatrix<f64>) -> String {
    let rows: Vec<String> = (0..m.row_count())
        .map(|r| {
            let row: Vec<String> = (0..m.col_count()).map(|c| fmt17(*m.get(r, c))).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn run_dist(args: DistArgs) -> CliResult {
    let g = load_graph(&args.input)?;
    if args.dump_graph {
        print!("{}", g.to_text());
        return Ok(());
    }
    let t = require_t(args.t)?;
    let rho = g
        .adjacency()
        .spectral_radius_default()
        .map_err(domain_failure)?;
    let w = walk_weights(&g, &t).map_err(domain_failure)?;
    let d = walk_distances(&w, args.lambda).map_err(domain_failure)?;
    let r = w.matrix().to_f64();
    let p = p_metric(&w);
    match args.format {
        Format::Tsv => {
            let mut out = String::new();
            out.push_str(&format!("# n\t{}\n", g.vertex_count()));
            out.push_str(&format!("# t\t{}\n", fmt17(t)));
            out.push_str(&format!("# rho\t{}\n", fmt17(rho)));
            out.push_str(&format!("# lambda\t{}\n", fmt17(args.lambda)));
            tsv_matrix(&mut out, "D", d.matrix());
            if args.walk_weights {
                tsv_matrix(&mut out, "R", &r);
            }
            if args.pmetric {
                tsv_matrix(&mut out, "P", &p);
            }
            print!("{}", out);
        }
        Format::Json => {
            let vertices: Vec<String> = g.vertices().iter().map(|v| v.0.to_string()).collect();
            let mut fields = vec![
                format!("\"n\": {}", g.vertex_count()),
                format!("\"vertices\": [{}]", vertices.join(", ")),
                format!("\"t\": {}", fmt17(t)),
                format!("\"rho\": {}", fmt17(rho)),
                format!("\"lambda\": {}", fmt17(args.lambda)),
                format!("\"distances\": {}", json_matrix(d.matrix())),
            ];
            if args.walk_weights {
                fields.push(format!("\"walk_weights\": {}", json_matrix(&r)));
            }
            if args.pmetric {
                fields.push(format!("\"pmetric\": {}", json_matrix(&p)));
            }
            println!("{{{}}}", fields.join(", "));
        }
    }
    Ok(())
}

fn join_figures(figures: &[FigureCollection]) -> String {
    if figures.is_empty() {
        return "-".into();
    }
    figures
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn json_figures(figures: &[FigureCollection]) -> String {
    let items: Vec<String> = figures.iter().map(|f| format!("\"{}\"", f)).collect();
    format!("[{}]", items.join(", "))
}

fn run_expand(args: ExpandArgs) -> CliResult {
    let g = load_graph(&args.input)?;
    if args.dump_graph {
        print!("{}", g.to_text());
        return Ok(());
    }
    let t = require_t(args.t)?;
    let (i, j) = require_pair(args.pair)?;
    if args.max_len == 0 {
        return Err(failure(2, "--max-len must be at least 1"));
    }
    let mut budget = WalkBudget::new(walk_budget()?);
    let exp =
        distance_expansion(&g, &t, i, j, args.max_len, &mut budget).map_err(domain_failure)?;
    match args.format {
        Format::Tsv => {
            let mut out = String::new();
            out.push_str(&format!("# n\t{}\n", g.vertex_count()));
            out.push_str(&format!("# pair\t{}\t{}\n", i.0, j.0));
            out.push_str(&format!("# t\t{}\n", fmt17(t)));
            out.push_str(&format!("# rho_jump\t{}\n", fmt17(exp.rho_jump)));
            out.push_str("# k\tsigned\tcumulative\tcircuits\tclosed_routes\topen_routes\n");
            for row in &exp.rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    row.length,
                    fmt17(row.signed_sum),
                    fmt17(row.cumulative),
                    join_figures(&row.circuit_figures),
                    join_figures(&row.closed_route_figures),
                    join_figures(&row.open_route_figures),
                ));
            }
            out.push_str(&format!("# exact\t{}\n", fmt17(exp.exact)));
            out.push_str(&format!("# residual\t{}\n", fmt17(exp.residual)));
            print!("{}", out);
        }
        Format::Json => {
            let rows: Vec<String> = exp
                .rows
                .iter()
                .map(|row| {
                    format!(
                        "{{\"k\": {}, \"signed\": {}, \"cumulative\": {}, \"circuits\": {}, \"closed_routes\": {}, \"open_routes\": {}}}",
                        row.length,
                        fmt17(row.signed_sum),
                        fmt17(row.cumulative),
                        json_figures(&row.circuit_figures),
                        json_figures(&row.closed_route_figures),
                        json_figures(&row.open_route_figures),
                    )
                })
                .collect();
            println!(
                "{{\"n\": {}, \"pair\": [{}, {}], \"t\": {}, \"rho_jump\": {}, \"rows\": [{}], \"exact\": {}, \"residual\": {}}}",
                g.vertex_count(),
                i.0,
                j.0,
                fmt17(t),
                fmt17(exp.rho_jump),
                rows.join(", "),
                fmt17(exp.exact),
                fmt17(exp.residual),
            );
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> CliResult {
    let opts = VerifyOptions {
        depth: args.max_len.max(1),
        budget: walk_budget()?,
        tol: args.tol,
    };
    if let Some(path) = &args.input {
        let g = load_graph(path)?;
        if args.dump_graph {
            print!("{}", g.to_text());
            return Ok(());
        }
        let t = match args.t {
            Some(t) => t,
            None => {
                let rho = g
                    .adjacency()
                    .spectral_radius_default()
                    .map_err(domain_failure)?;
                if rho > 0.0 {
                    0.5 / rho
                } else {
                    0.5
                }
            }
        };
        let report = verify_graph(&g, t, &opts);
        match args.format {
            Format::Tsv => print_report_lines(&report),
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&report)
                    .map_err(|e| failure(4, format!("cannot serialize report: {e}")))?
            ),
        }
        if report.ok {
            Ok(())
        } else {
            Err(failure(5, "verification failed"))
        }
    } else {
        let seed = args
            .seed
            .ok_or_else(|| failure(2, "give a graph file or --seed for a random corpus"))?;
        let report = verify_corpus(seed, 12, &opts).map_err(domain_failure)?;
        match args.format {
            Format::Tsv => {
                for r in &report.reports {
                    print_report_lines(r);
                }
                println!("RESULT\t{}", if report.ok { "ok" } else { "FAILED" });
            }
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&report)
                    .map_err(|e| failure(4, format!("cannot serialize report: {e}")))?
            ),
        }
        if report.ok {
            Ok(())
        } else {
            Err(failure(5, "verification failed"))
        }
    }
}

fn print_report_lines(report: &walkdist::verify::VerificationReport) {
    println!("== {}", report.description);
    for check in &report.checks {
        let status = match check.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        println!("{}\t{}\t{}", status, check.name, check.detail);
    }
    println!("RESULT\t{}", if report.ok { "ok" } else { "FAILED" });
}

fn run_spectral(args: SpectralArgs) -> CliResult {
    let g = load_graph(&args.input)?;
    if args.dump_graph {
        print!("{}", g.to_text());
        return Ok(());
    }
    let rho = g
        .adjacency()
        .spectral_radius_default()
        .map_err(domain_failure)?;
    let t_max = if rho > 0.0 {
        Some(1.0 / rho)
    } else {
        None
    };
    let rho_jump = match args.pair {
        Some(pair) => {
            let (i, j) = require_pair(Some(pair))?;
            let t = args
                .t
                .ok_or_else(|| failure(2, "--pair needs --t to build the jump digraph"))?;
            Some(
                jump_digraph(&g, &t, i, j)
                    .map_err(domain_failure)?
                    .rho(),
            )
        }
        None => None,
    };
    match args.format {
        Format::Tsv => {
            println!("rho\t{}", fmt17(rho));
            match t_max {
                Some(b) => {
                    println!("t_max\t{}", fmt17(b));
                    println!("t_interval\t(0, {})", fmt17(b));
                }
                None => {
                    println!("t_max\tinf");
                    println!("t_interval\t(0, inf)");
                }
            }
            if let Some(r) = rho_jump {
                println!("rho_jump\t{}", fmt17(r));
            }
        }
        Format::Json => {
            let mut fields = vec![format!("\"rho\": {}", fmt17(rho))];
            match t_max {
                Some(b) => {
                    fields.push(format!("\"t_max\": {}", fmt17(b)));
                    fields.push(format!("\"t_interval\": \"(0, {})\"", fmt17(b)));
                }
                None => {
                    fields.push("\"t_max\": \"inf\"".to_string());
                    fields.push("\"t_interval\": \"(0, inf)\"".to_string());
                }
            }
            if let Some(r) = rho_jump {
                fields.push(format!("\"rho_jump\": {}", fmt17(r)));
            }
            println!("{{{}}}", fields.join(", "));
        }
    }
    Ok(())
}
