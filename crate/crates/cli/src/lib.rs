//! The `homkit` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 cell cap exceeded,
//! 3 verification finding (a claim below its bound, a failed free-face
//! check, or an internal inconsistency).

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use homkit::collapse::collapse_to_delta_prime;
use homkit::covering::chi_dot;
use homkit::graph::{parse_graph, Format, Graph, VertexSet};
use homkit::hom::{build_hom, CellComplex, DEFAULT_CELL_CAP};
use homkit::homology::{
    complex_homology, homological_connectivity, order_complex_oracle, unreduced_h0, ConnectivityVerdict,
    HomologyGroup, HomologyReport,
};
use homkit::nerve::{check_nerve_hypotheses, finding_artifacts, nerve_cover, verify_theorem, Depth, GraphSummary};
use homkit::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_FINDING: i32 = 3;

pub const CELL_CAP_ENV: &str = "HOMKIT_CELL_CAP";

#[derive(Debug, Parser)]
#[command(name = "homkit", version, about = "Graph coloring complexes Hom(G, K_n) and their connectivity")]
struct Cli {
    /// Input format; detected from the first line when omitted
    #[arg(long, global = true, value_enum)]
    format: Option<InputFormat>,

    /// Maximum number of cells to build (default: $HOMKIT_CELL_CAP or 200000)
    #[arg(long, global = true)]
    cell_cap: Option<usize>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputFormat {
    EdgeList,
    Graph6,
}

#[derive(Debug, Args)]
struct Input {
    /// Graph file, or '-' for stdin
    input: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The covering number chi_dot and a witness covering
    ChiDot(Input),
    /// Cell census of Hom(G, K_n) per dimension
    Hom {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        n: u32,
    },
    /// Integral homology of Hom(G, K_n)
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        n: u32,
        /// Cross-check against the homology of the order complex
        #[arg(long)]
        oracle: bool,
    },
    /// Collapse Δ_I onto Hom(G \ (I \ I'), K_n) restricted by I'
    Collapse {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        n: u32,
        /// Independent set I, comma-separated labels or indices
        #[arg(long = "set")]
        set: String,
        /// Subset I' of I that keeps color n
        #[arg(long, default_value = "")]
        keep: String,
    },
    /// The cover by the Δ_I and the nerve hypotheses at level m
    Nerve {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        n: u32,
        /// Connectivity level to check (default n - chi_dot - 1)
        #[arg(short, allow_negative_numbers = true)]
        m: Option<i64>,
    },
    /// Check connectivity against n - chi_dot - 1 and n - d - 2
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        n: u32,
        /// Replay the cover argument piece by piece
        #[arg(long)]
        inductive: bool,
        /// Nerve level for --inductive (default n - chi_dot - 1)
        #[arg(short, allow_negative_numbers = true)]
        m: Option<i64>,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Finding { message: String, artifacts: Option<serde_json::Value> },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs one command line (including the program name) against the given
/// streams and returns the exit code.
pub fn run_cli<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run(&cli, stdin, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                Error::FreeFaceViolation { .. } | Error::Inconsistency(_) => EXIT_FINDING,
                _ => EXIT_USAGE,
            }
        }
        Err(Failure::Finding { message, artifacts }) => {
            let _ = writeln!(err, "FINDING: {message}");
            if let Some(a) = artifacts {
                let _ = writeln!(err, "{}", serde_json::to_string_pretty(&a).unwrap_or_default());
            }
            EXIT_FINDING
        }
    }
}

fn cell_cap(cli: &Cli) -> Result<usize, Failure> {
    let cap = match cli.cell_cap {
        Some(c) => c,
        None => match std::env::var(CELL_CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{CELL_CAP_ENV}={v:?} is not a number")))?,
            Err(_) => DEFAULT_CELL_CAP,
        },
    };
    if cap == 0 {
        return Err(Failure::Usage("cell cap must be at least 1".into()));
    }
    Ok(cap)
}

fn read_graph(cli: &Cli, input: &Input, stdin: &mut dyn Read) -> Result<Graph, Failure> {
    let text = if input.input == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.input).map_err(|e| Failure::Usage(format!("{}: {e}", input.input)))?
    };
    let format = match cli.format {
        Some(InputFormat::EdgeList) => Format::EdgeList,
        Some(InputFormat::Graph6) => Format::Graph6,
        None => Format::detect(&text),
    };
    Ok(parse_graph(&text, format)?)
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(value).expect("report serializes");
    writeln!(out, "{s}").map_err(|e| Failure::Usage(format!("writing output: {e}")))
}

fn say(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Usage(format!("writing output: {e}")))
}

fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), Failure> {
    let cap = cell_cap(cli)?;
    match &cli.command {
        Command::ChiDot(input) => {
            let g = read_graph(cli, input, stdin)?;
            let r = chi_dot(&g)?;
            if cli.json {
                emit(
                    out,
                    &serde_json::json!({
                        "command": "chi-dot",
                        "graph": GraphSummary::of(&g),
                        "chi_dot": r.value,
                        "witness": r.witness_labels(&g),
                    }),
                )
            } else {
                say(out, &format!("chi_dot = {}; witness: {}", r.value, r.witness.display(&g)))
            }
        }
        Command::Hom { input, n } => {
            let g = read_graph(cli, input, stdin)?;
            let c = build_hom(&g, *n, cap)?;
            if cli.json {
                emit(
                    out,
                    &serde_json::json!({
                        "command": "hom",
                        "graph": GraphSummary::of(&g),
                        "n": n,
                        "cells": c.len(),
                        "census": c.census(),
                        "euler_characteristic": c.euler_characteristic(),
                    }),
                )
            } else {
                let mut text = format!("Hom(G, K_{n}): {} cells", c.len());
                for (k, count) in c.census().iter().enumerate() {
                    text.push_str(&format!("\ndim {k}: {count}"));
                }
                say(out, &text)
            }
        }
        Command::Homology { input, n, oracle } => {
            let g = read_graph(cli, input, stdin)?;
            let c = build_hom(&g, *n, cap)?;
            homology_command(cli, &g, *n, &c, *oracle, out)
        }
        Command::Collapse { input, n, set, keep } => {
            let g = read_graph(cli, input, stdin)?;
            let i = g.resolve_set(set)?;
            let i_prime = g.resolve_set(keep)?;
            collapse_command(cli, &g, *n, i, i_prime, cap, out)
        }
        Command::Nerve { input, n, m } => {
            let g = read_graph(cli, input, stdin)?;
            let m = match m {
                Some(m) => *m,
                None => *n as i64 - chi_dot(&g)?.value as i64 - 1,
            };
            let cover = nerve_cover(&g, *n, cap)?;
            let check = check_nerve_hypotheses(&cover, m)?;
            if cli.json {
                emit(
                    out,
                    &serde_json::json!({
                        "command": "nerve",
                        "graph": GraphSummary::of(&g),
                        "n": n,
                        "cells": cover.whole.len(),
                        "members": cover.family.len(),
                        "distinct_intersections": cover.intersections.len(),
                        "check": check,
                    }),
                )
            } else {
                let mut text = format!(
                    "{} maximal independent sets, {} distinct intersections; m = {m}",
                    cover.family.len(),
                    cover.intersections.len()
                );
                for p in &check.pieces {
                    text.push_str(&format!(
                        "\n{:<12} [{}]: {} cells, level {} (need {}) {}",
                        format!("{:?}", p.kind).to_lowercase(),
                        p.set.join(" "),
                        p.cells,
                        p.verdict.level,
                        p.required_level,
                        if p.ok { "ok" } else { "FAIL" }
                    ));
                }
                text.push_str(&format!(
                    "\nnerve hypotheses {}",
                    if check.satisfied { "hold" } else { "fail" }
                ));
                say(out, &text)
            }
        }
        Command::Verify { input, n, inductive, m } => {
            let g = read_graph(cli, input, stdin)?;
            let depth = if *inductive { Depth::Inductive } else { Depth::Direct };
            let report = verify_theorem(&g, *n, depth, cap, *m)?;
            if cli.json {
                emit(out, &report)?;
            } else {
                let mut text = format!(
                    "chi_dot = {}, max degree = {}\nclaimed level n - chi_dot - 1 = {}\ncorollary level n - d - 2 = {}\nhomological connectivity of Hom(G, K_{n}) ({} cells) = {}",
                    report.chi_dot,
                    report.max_degree,
                    report.claimed_level,
                    report.corollary_level,
                    report.cells,
                    report.verdict.level
                );
                for p in &report.pieces {
                    text.push_str(&format!(
                        "\n{:<12} [{}]: {} cells, level {} (need {}); Hom(G \\ J, K_{}) {} cells, level {}; collapse {} steps {}",
                        format!("{:?}", p.kind).to_lowercase(),
                        p.set.join(" "),
                        p.cells,
                        p.verdict.level,
                        p.required_level,
                        n - 1,
                        p.reduced_graph_cells,
                        p.reduced_graph_verdict.level,
                        p.collapse_steps,
                        if p.collapse_matches && p.homology_matches { "ok" } else { "MISMATCH" }
                    ));
                }
                if let Some(ok) = report.nerve_hypotheses_satisfied {
                    text.push_str(&format!("\nnerve hypotheses {}", if ok { "hold" } else { "fail" }));
                }
                text.push_str(if report.passed() { "\nverified" } else { "\nNOT verified" });
                say(out, &text)?;
            }
            if !report.passed() {
                return Err(Failure::Finding {
                    message: report.findings.join("; "),
                    artifacts: Some(finding_artifacts(&g, *n, cap)?),
                });
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct OracleJson {
    agrees: bool,
    homology: HomologyReport,
}

#[derive(Serialize)]
struct HomologyJson<'a> {
    command: &'static str,
    graph: GraphSummary,
    n: u32,
    cells: usize,
    unreduced_h0: HomologyGroup,
    reduced: &'a HomologyReport,
    connectivity: ConnectivityVerdict,
    oracle: Option<OracleJson>,
}

fn homology_text(r: &HomologyReport, nonempty: bool) -> String {
    if !nonempty {
        return "empty complex".to_string();
    }
    r.groups
        .iter()
        .enumerate()
        .map(|(k, grp)| {
            if k == 0 {
                format!("dim 0: {} (reduced: {grp})", unreduced_h0(r, nonempty))
            } else {
                format!("dim {k}: {grp}")
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn homology_command(
    cli: &Cli,
    g: &Graph,
    n: u32,
    c: &CellComplex,
    oracle: bool,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let r = complex_homology(c)?;
    let nonempty = !c.is_empty();
    let oracle = if oracle {
        let o = order_complex_oracle(c)?;
        Some(OracleJson {
            agrees: o.same_homology(&r),
            homology: o,
        })
    } else {
        None
    };
    let disagreement = oracle.as_ref().is_some_and(|o| !o.agrees);
    if cli.json {
        emit(
            out,
            &HomologyJson {
                command: "homology",
                graph: GraphSummary::of(g),
                n,
                cells: c.len(),
                unreduced_h0: unreduced_h0(&r, nonempty),
                reduced: &r,
                connectivity: homological_connectivity(&r, nonempty),
                oracle,
            },
        )?;
    } else {
        let mut text = homology_text(&r, nonempty);
        if let Some(o) = &oracle {
            text.push_str(&format!(
                "\norder complex: {}",
                if o.agrees { "agrees".to_string() } else { format!("DISAGREES ({})", homology_text(&o.homology, nonempty)) }
            ));
        }
        say(out, &text)?;
    }
    if disagreement {
        return Err(Failure::Finding {
            message: "cellular and order-complex homology disagree".into(),
            artifacts: Some(c.to_json()),
        });
    }
    Ok(())
}

fn collapse_command(
    cli: &Cli,
    g: &Graph,
    n: u32,
    i: VertexSet,
    i_prime: VertexSet,
    cap: usize,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let outcome = collapse_to_delta_prime(g, n, i, i_prime, cap)?;
    let trace = &outcome.trace;
    let before = complex_homology(&trace.start)?;
    let after = complex_homology(&trace.end)?;
    let homology_preserved = before.same_homology(&after);
    let removed = i.difference(i_prime);
    let matches_reduced_hom = if i_prime.is_empty() {
        let target = build_hom(&g.remove(removed)?, n - 1, cap)?;
        Some(outcome.delta_prime.forget_top_color().is_ok_and(|c| c == target))
    } else {
        None
    };
    let labels = |s: VertexSet| s.iter().map(|v| g.label(v).to_string()).collect::<Vec<_>>();
    if cli.json {
        emit(
            out,
            &serde_json::json!({
                "command": "collapse",
                "graph": GraphSummary::of(g),
                "n": n,
                "set": labels(i),
                "keep": labels(i_prime),
                "start_cells": trace.start.len(),
                "end_cells": trace.end.len(),
                "restricted_cells": outcome.delta_prime.len(),
                "homology_preserved": homology_preserved,
                "matches_reduced_hom": matches_reduced_hom,
                "steps": trace.to_json(),
            }),
        )?;
    } else {
        let mut text = String::new();
        for (k, step) in trace.steps.iter().enumerate() {
            text.push_str(&format!(
                "step {} at {}: remove {} with {}\n",
                k + 1,
                g.label(step.vertex),
                step.free.labelled(g),
                step.cofree.labelled(g)
            ));
        }
        text.push_str(&format!(
            "{} cells, {} verified free-face steps, {} cells left; restricted to G \\ {}: {} cells",
            trace.start.len(),
            trace.steps.len(),
            trace.end.len(),
            g.format_set(removed),
            outcome.delta_prime.len()
        ));
        text.push_str(&format!(
            "\nhomology {}",
            if homology_preserved { "preserved" } else { "CHANGED" }
        ));
        if let Some(ok) = matches_reduced_hom {
            text.push_str(&format!(
                "\nequals Hom(G \\ {}, K_{}): {}",
                g.format_set(removed),
                n - 1,
                if ok { "yes" } else { "NO" }
            ));
        }
        say(out, &text)?;
    }
    if !homology_preserved || matches_reduced_hom == Some(false) {
        return Err(Failure::Finding {
            message: "collapse did not preserve homology or missed its target".into(),
            artifacts: Some(trace.start.to_json()),
        });
    }
    Ok(())
}
