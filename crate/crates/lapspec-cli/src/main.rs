use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use lapspec::{
    check_conjectures, construct, expr, integer_spectrum, laplacian_char_poly,
    reproduce_appendix_tables, spanning_tree_count, targets, CensusCache, Error, Graph, Searcher,
    SpecTarget,
};

const EXIT_OK: u8 = 0;
const EXIT_UNVERIFIED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lapspec",
    version,
    about = "Exact-arithmetic toolkit for Laplacian-integral graphs"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Census cache directory
    #[arg(long, global = true, env = "LAPSPEC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Upper bound on orders touched by search-backed subcommands
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Permit long-running enumerations (order 10 census, order 9 conjecture sweep)
    #[arg(long, global = true)]
    allow_long_runs: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exact spectrum report for a graph6 string or composition expression ("-" reads stdin)
    Spectrum { input: String },
    /// Construct a verified witness for a target such as "S{1,4}_6^6" or "S_3,6"
    Construct { target: String },
    /// List every realizer of a target by exhaustive census search
    Search { target: String },
    /// Connected and Laplacian-integral census at one order
    Census { n: usize },
    /// Re-derive the published order 4..7 realization tables
    Tables,
    /// Desk-check the conjectures up to an order (default 8)
    Conjectures,
}

/// One subcommand outcome: a JSON document, its text rendering, and the exit code.
struct Report {
    json: serde_json::Value,
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let searcher = {
        let mut s = Searcher::new().with_long_runs(cli.allow_long_runs);
        if let Some(dir) = &cli.cache_dir {
            s = s.with_cache(CensusCache::new(dir));
        }
        s
    };
    let result = match &cli.command {
        Command::Spectrum { input } => cmd_spectrum(input),
        Command::Construct { target } => cmd_construct(target),
        Command::Search { target } => cmd_search(&cli, &searcher, target),
        Command::Census { n } => cmd_census(&cli, &searcher, *n),
        Command::Tables => cmd_tables(&searcher),
        Command::Conjectures => cmd_conjectures(&cli, &searcher),
    };
    let report = result.unwrap_or_else(error_report);
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.json).expect("reports serialize")
        ),
        Format::Text => print!("{}", report.text),
    }
    ExitCode::from(report.code)
}

fn error_report(e: Error) -> Report {
    let code = match &e {
        Error::NotRealizable { .. } | Error::ConjectureDependent { .. } | Error::Unclassified { .. } => {
            EXIT_UNVERIFIED
        }
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    };
    let kind = match &e {
        Error::OrderLimit(_) => "order_limit",
        Error::InvalidFamily { .. } => "invalid_family",
        Error::Graph6 { .. } => "graph6",
        Error::InvalidSpectrum(_) => "invalid_spectrum",
        Error::InvalidTarget(_) => "invalid_target",
        Error::Parse { .. } => "parse",
        Error::NotRealizable { .. } => "not_realizable",
        Error::ConjectureDependent { .. } => "conjecture_dependent",
        Error::Unclassified { .. } => "unclassified",
        Error::EnumerationCap(..) => "enumeration_cap",
        Error::Io { .. } => "io",
    };
    Report {
        json: json!({ "status": "error", "kind": kind, "message": e.to_string() }),
        text: format!("error: {e}\n"),
        code,
    }
}

fn read_graph(input: &str) -> Result<(String, Graph), Error> {
    let mut text = input.to_string();
    if text == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| Error::Io {
            path: "<stdin>".to_string(),
            source: e,
        })?;
        text = buf.trim().to_string();
    }
    // graph6 bytes never include digits, expressions always do, so the two
    // input languages are disjoint
    match expr::parse(&text) {
        Ok(e) => Ok((text.clone(), e.eval()?)),
        Err(expr_err) => match Graph::from_graph6(&text) {
            Ok(g) => Ok((text, g)),
            Err(_) => Err(expr_err),
        },
    }
}

fn cmd_spectrum(input: &str) -> Result<Report, Error> {
    let (input, graph) = read_graph(input)?;
    let poly = laplacian_char_poly(&graph);
    let spectrum = integer_spectrum(&graph);
    let target = spectrum.as_ref().and_then(SpecTarget::from_spectrum);
    let trees = spanning_tree_count(&graph);
    let coefficients: Vec<String> = poly.coefficients().iter().map(|c| c.to_string()).collect();

    let mut text = String::new();
    text.push_str(&format!("input: {input}\n"));
    text.push_str(&format!("graph6: {}\n", graph.to_graph6()));
    text.push_str(&format!("order: {}\n", graph.order()));
    text.push_str(&format!("edges: {}\n", graph.edge_count()));
    text.push_str(&format!("connected: {}\n", graph.is_connected()));
    text.push_str(&format!("char poly: {}\n", poly.to_string_pretty()));
    match &spectrum {
        Some(s) => text.push_str(&format!("spectrum: {s}\n")),
        None => text.push_str("spectrum: NOT_INTEGRAL\n"),
    }
    text.push_str(&format!("spanning trees: {trees}\n"));
    if let Some(t) = &target {
        text.push_str(&format!("target: {}\n", t.label()));
    }

    Ok(Report {
        json: json!({
            "status": "ok",
            "input": input,
            "graph6": graph.to_graph6(),
            "order": graph.order(),
            "edges": graph.edge_count(),
            "connected": graph.is_connected(),
            "char_poly": poly.to_string_pretty(),
            "char_poly_coefficients": coefficients,
            "integral": spectrum.is_some(),
            "spectrum": spectrum.as_ref().map(|s| s.to_string()),
            "spanning_trees": trees.to_string(),
            "target": target.as_ref().map(|t| t.label()),
        }),
        text,
        code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct TraceStepOut {
    rule: String,
    target: String,
    expression: String,
}

fn cmd_construct(target: &str) -> Result<Report, Error> {
    let t = SpecTarget::parse(target)?;
    let built = match construct(&t) {
        Ok(built) => built,
        Err(Error::NotRealizable { target, reasons }) => {
            let tags: Vec<String> = targets::all_obstructions(&t)
                .iter()
                .map(|o| o.to_string())
                .collect();
            return Ok(Report {
                json: json!({
                    "status": "obstructed",
                    "target": target,
                    "obstructions": tags,
                    "message": reasons,
                }),
                text: format!(
                    "target: {target}\nverdict: OBSTRUCTED\nobstructions: {}\n",
                    if tags.is_empty() { reasons } else { tags.join(", ") }
                ),
                code: EXIT_UNVERIFIED,
            });
        }
        Err(e @ (Error::ConjectureDependent { .. } | Error::Unclassified { .. })) => {
            return Ok(Report {
                json: json!({
                    "status": "unknown",
                    "target": t.label(),
                    "message": e.to_string(),
                    "suggestion": format!("lapspec search \"{}\"", t.label()),
                }),
                text: format!(
                    "target: {}\nverdict: UNKNOWN\n{e}\ntry: lapspec search \"{}\"\n",
                    t.label(),
                    t.label()
                ),
                code: EXIT_UNVERIFIED,
            });
        }
        Err(e) => return Err(e),
    };
    let steps: Vec<TraceStepOut> = built
        .trace
        .steps
        .iter()
        .map(|s| TraceStepOut {
            rule: s.rule.clone(),
            target: s.target.clone(),
            expression: s.expression.clone(),
        })
        .collect();
    let mut text = String::new();
    text.push_str(&format!("target: {}\n", built.target.label()));
    text.push_str(&format!("witness: {}\n", built.graph.to_graph6()));
    text.push_str(&format!("expression: {}\n", built.trace.expression));
    text.push_str("trace:\n");
    for (k, s) in steps.iter().enumerate() {
        text.push_str(&format!("  {}. [{}] {} := {}\n", k + 1, s.rule, s.target, s.expression));
    }
    text.push_str("spectrum OK\n");
    Ok(Report {
        json: json!({
            "status": "ok",
            "target": built.target.label(),
            "witness_graph6": built.graph.to_graph6(),
            "expression": built.trace.expression.to_string(),
            "spectrum": built.target.expand().to_string(),
            "trace": steps,
            "verified": true,
        }),
        text,
        code: EXIT_OK,
    })
}

fn check_max_n(cli: &Cli, n: usize) -> Result<(), Error> {
    if let Some(cap) = cli.max_n {
        if n > cap {
            return Err(Error::EnumerationCap(n, cap));
        }
    }
    Ok(())
}

fn cmd_search(cli: &Cli, searcher: &Searcher, target: &str) -> Result<Report, Error> {
    let t = SpecTarget::parse(target)?;
    check_max_n(cli, t.order())?;
    let witnesses = searcher.find_realizations(&t)?;
    let g6: Vec<String> = witnesses.iter().map(Graph::to_graph6).collect();
    let mut text = String::new();
    text.push_str(&format!("target: {}\n", t.label()));
    text.push_str(&format!("spectrum: {}\n", t.expand()));
    text.push_str(&format!("witnesses: {}\n", g6.len()));
    for w in &g6 {
        text.push_str(&format!("{w}\n"));
    }
    Ok(Report {
        json: json!({
            "status": "ok",
            "target": t.label(),
            "spectrum": t.expand().to_string(),
            "count": g6.len(),
            "witnesses": g6,
        }),
        text,
        code: EXIT_OK,
    })
}

fn cmd_census(cli: &Cli, searcher: &Searcher, n: usize) -> Result<Report, Error> {
    check_max_n(cli, n)?;
    let record = searcher.census(n)?;
    let mut text = format!(
        "connected={} integral={}\n",
        record.total_connected, record.laplacian_integral
    );
    for (spectrum, list) in &record.by_spectrum {
        text.push_str(&format!("{spectrum}: {}\n", list.join(" ")));
    }
    Ok(Report {
        json: json!({
            "status": "ok",
            "order": record.order,
            "connected": record.total_connected,
            "integral": record.laplacian_integral,
            "by_spectrum": record.by_spectrum,
        }),
        text,
        code: EXIT_OK,
    })
}

fn cmd_tables(searcher: &Searcher) -> Result<Report, Error> {
    let report = reproduce_appendix_tables(searcher)?;
    let all_pass = report.all_pass();
    let mut text = String::new();
    for row in &report.rows {
        let status = if row.pass { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "{status} table {} {:30} {:22} {}\n",
            row.table, row.expression, row.spectrum, row.label
        ));
        if !row.pass {
            text.push_str(&format!("     {}\n", row.detail));
        }
    }
    text.push_str(&format!(
        "{} of {} rows pass\n",
        report.rows.iter().filter(|r| r.pass).count(),
        report.rows.len()
    ));
    Ok(Report {
        json: json!({
            "status": if all_pass { "ok" } else { "fail" },
            "all_pass": all_pass,
            "rows": report.rows,
        }),
        text,
        code: if all_pass { EXIT_OK } else { EXIT_UNVERIFIED },
    })
}

fn cmd_conjectures(cli: &Cli, searcher: &Searcher) -> Result<Report, Error> {
    let max_n = cli.max_n.unwrap_or(8);
    let checks = check_conjectures(searcher, max_n)?;
    let all_hold = checks.iter().all(|c| c.holds());
    let mut text = String::new();
    for check in &checks {
        text.push_str(&format!("{:?}:\n", check.id));
        for order in &check.orders {
            let verdict = match &order.verdict {
                lapspec::ConjectureVerdict::Holds => "holds".to_string(),
                lapspec::ConjectureVerdict::Violated { detail } => format!("VIOLATED: {detail}"),
            };
            if order.found.is_empty() {
                text.push_str(&format!("  n={}: {verdict}\n", order.order));
            } else {
                text.push_str(&format!(
                    "  n={}: {verdict} [{}]\n",
                    order.order,
                    order.found.join(", ")
                ));
            }
        }
    }
    text.push_str(if all_hold { "all checks hold\n" } else { "VIOLATIONS FOUND\n" });
    Ok(Report {
        json: json!({
            "status": if all_hold { "ok" } else { "fail" },
            "max_n": max_n,
            "all_hold": all_hold,
            "checks": checks,
        }),
        text,
        code: if all_hold { EXIT_OK } else { EXIT_UNVERIFIED },
    })
}
