//! `myciel` command-line front end.
//!
//! Exit codes: 0 success, 1 input or processing error, 2 verification
//! failure or precondition violation.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};

use clap::parser::ValueSource;
use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{audit, AuditRecord};
use crate::formats::{stream_graphs, write_graph6, Format, Record};
use crate::graph::{generate, Family, Graph, Target};
use crate::laws::{verify_structure, LawReport};
use crate::metrics::{index_report, IndexReport, MetricsError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_FAILED: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "myciel",
    version,
    about = "Topological indices of Mycielskian graphs and their complements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute n, m, diameter, Wiener, Zagreb, degree distance and Gutman indices
    Compute {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
        /// Skip disconnected graphs instead of failing with exit code 2
        #[arg(long)]
        skip_disconnected: bool,
    },
    /// Apply Mycielskian and complement transforms, left to right as given
    Transform {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, action = clap::ArgAction::Count)]
        mycielskian: u8,
        #[arg(long, action = clap::ArgAction::Count)]
        complement: u8,
    },
    /// Check predicted degrees and distances against the constructed graphs
    Verify {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value_t = TargetArg::Both)]
        target: TargetArg,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Compare closed-form Gutman indices with brute force
    Audit {
        #[command(flatten)]
        io: InputArgs,
        /// 5 audits the Mycielskian formula, 6 the complement formula
        #[arg(long, value_parser = ["5", "6", "both"], default_value = "both")]
        theorem: String,
        #[arg(long, value_enum, default_value_t = Output::Csv)]
        output: Output,
    },
    /// Emit generated graphs in graph6
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Edge probability (random family)
        #[arg(long)]
        p: Option<f64>,
        /// 64-bit seed (random family)
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random graphs, from seeds seed, seed+1, ...
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(short = 'o', long = "out", default_value = "-")]
        out: String,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file, or '-' for standard input
    #[arg(default_value = "-")]
    input: String,
    #[arg(long, default_value = "graph6", value_parser = parse_format)]
    format: Format,
    /// Output file, or '-' for standard output
    #[arg(short = 'o', long = "out", default_value = "-")]
    out: String,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Output {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TargetArg {
    Mu,
    #[value(name = "mu_bar", alias = "mu-bar")]
    MuBar,
    Both,
}

impl TargetArg {
    fn targets(self) -> &'static [Target] {
        match self {
            TargetArg::Mu => &[Target::Mu],
            TargetArg::MuBar => &[Target::MuBar],
            TargetArg::Both => &[Target::Mu, Target::MuBar],
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Path,
    Cycle,
    Star,
    Complete,
    Random,
}

#[derive(Debug, Clone, Copy)]
enum Transform {
    Mycielskian,
    Complement,
}

/// Standard streams, swappable for tests.
pub struct Streams<'a> {
    pub stdin: &'a mut dyn BufRead,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Runs the binary's entry point against the process streams.
pub fn main() -> std::process::ExitCode {
    let stdin = io::stdin();
    let mut stdin = stdin.lock();
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    let mut stderr = io::stderr();
    let code = run(
        std::env::args_os(),
        Streams {
            stdin: &mut stdin,
            stdout: &mut stdout,
            stderr: &mut stderr,
        },
    );
    std::process::ExitCode::from(code)
}

pub fn run<I, T>(args: I, streams: Streams<'_>) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let _ = write!(streams.stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let cli = Cli::from_arg_matches(&matches).expect("matches come from the same command");
    let Streams {
        stdin,
        stdout,
        stderr,
    } = streams;
    let result = match cli.command {
        Command::Generate {
            family,
            n,
            p,
            seed,
            count,
            out,
        } => with_output(&out, stdout, |w| {
            run_generate(family, n, p, seed, count, w, stderr)
        }),
        Command::Compute {
            io,
            output,
            skip_disconnected,
        } => with_io(&io, stdin, stdout, stderr, |records, w, e| {
            run_compute(records, output, skip_disconnected, w, e)
        }),
        Command::Transform { io, .. } => {
            let sub = matches.subcommand_matches("transform").expect("transform");
            let steps = transform_steps(sub);
            with_io(&io, stdin, stdout, stderr, |records, w, e| {
                run_transform(records, &steps, w, e)
            })
        }
        Command::Verify { io, target, output } => {
            with_io(&io, stdin, stdout, stderr, |records, w, e| {
                run_verify(records, target.targets(), output, w, e)
            })
        }
        Command::Audit {
            io,
            theorem,
            output,
        } => {
            let targets: &[Target] = match theorem.as_str() {
                "5" => &[Target::Mu],
                "6" => &[Target::MuBar],
                _ => &[Target::Mu, Target::MuBar],
            };
            with_io(&io, stdin, stdout, stderr, |records, w, e| {
                run_audit(records, targets, output, w, e)
            })
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn transform_steps(sub: &ArgMatches) -> Vec<Transform> {
    let mut steps: Vec<(usize, Transform)> = Vec::new();
    for (id, step) in [
        ("mycielskian", Transform::Mycielskian),
        ("complement", Transform::Complement),
    ] {
        if sub.value_source(id) != Some(ValueSource::CommandLine) {
            continue;
        }
        if let Some(idx) = sub.indices_of(id) {
            steps.extend(idx.map(|i| (i, step)));
        }
    }
    steps.sort_by_key(|&(i, _)| i);
    steps.into_iter().map(|(_, s)| s).collect()
}

fn with_output(
    out: &str,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<u8>,
) -> io::Result<u8> {
    if out == "-" {
        let code = body(stdout)?;
        stdout.flush()?;
        Ok(code)
    } else {
        let mut file = io::BufWriter::new(File::create(out)?);
        let code = body(&mut file)?;
        file.flush()?;
        Ok(code)
    }
}

fn with_io(
    args: &InputArgs,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    body: impl FnOnce(Vec<Record>, &mut dyn Write, &mut dyn Write) -> io::Result<u8>,
) -> io::Result<u8> {
    let records: Vec<Record> = if args.input == "-" {
        stream_graphs(stdin, args.format).collect()
    } else {
        let file = File::open(&args.input)
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", args.input)))?;
        stream_graphs(BufReader::new(file), args.format).collect()
    };
    with_output(&args.out, stdout, |w| body(records, w, stderr))
}

fn report_parse_error(stderr: &mut dyn Write, rec: &Record) -> io::Result<()> {
    if let Err(e) = &rec.graph {
        writeln!(stderr, "line {}: record {}: {e}", rec.line, rec.index)?;
    }
    Ok(())
}

/// Applies `work` to every parsed graph in parallel, keeping input order.
fn process<T: Send>(records: &[Record], work: impl Fn(&Graph) -> T + Sync) -> Vec<Option<T>> {
    records
        .par_iter()
        .map(|rec| rec.graph.as_ref().ok().map(&work))
        .collect()
}

fn render_table(w: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (width, cell) in widths.iter_mut().zip(row) {
            *width = (*width).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &wd)| format!("{c:>wd$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(w, "{}", line(header.to_vec()))?;
    for row in rows {
        writeln!(w, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn write_rows(
    w: &mut dyn Write,
    output: Output,
    header: &[&str],
    rows: &[Vec<String>],
) -> io::Result<()> {
    match output {
        Output::Table => render_table(w, header, rows),
        _ => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(header)?;
            for row in rows {
                csv.write_record(row)?;
            }
            csv.flush()
        }
    }
}

fn write_json_line(w: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *w, value)?;
    writeln!(w)
}

#[derive(Serialize)]
struct ComputeRow<'a> {
    id: &'a str,
    #[serde(flatten)]
    report: IndexReport,
}

const COMPUTE_HEADER: [&str; 9] = [
    "id", "n", "m", "diameter", "wiener", "m1", "m2", "dd", "gutman",
];

fn run_compute(
    records: Vec<Record>,
    output: Output,
    skip_disconnected: bool,
    w: &mut dyn Write,
    stderr: &mut dyn Write,
) -> io::Result<u8> {
    let results = process(&records, |g| (write_graph6(g), index_report(g)));
    let mut code = EXIT_OK;
    let mut rows = Vec::new();
    for (rec, result) in records.iter().zip(results) {
        let Some((id, report)) = result else {
            report_parse_error(stderr, rec)?;
            code = EXIT_INPUT;
            continue;
        };
        let report = match report {
            Ok(r) => r,
            Err(MetricsError::Disconnected { u, v }) => {
                writeln!(
                    stderr,
                    "line {}: record {}: graph is disconnected (no path {u}-{v}){}",
                    rec.line,
                    rec.index,
                    if skip_disconnected { ", skipped" } else { "" }
                )?;
                if !skip_disconnected && code == EXIT_OK {
                    code = EXIT_FAILED;
                }
                continue;
            }
            Err(e) => {
                writeln!(stderr, "line {}: record {}: {e}", rec.line, rec.index)?;
                code = EXIT_INPUT;
                continue;
            }
        };
        if output == Output::Json {
            write_json_line(w, &ComputeRow { id: &id, report })?;
        } else {
            let r = report;
            rows.push(vec![
                id,
                r.n.to_string(),
                r.m.to_string(),
                r.diameter.to_string(),
                r.wiener.to_string(),
                r.m1.to_string(),
                r.m2.to_string(),
                r.dd.to_string(),
                r.gutman.to_string(),
            ]);
        }
    }
    if output != Output::Json {
        write_rows(w, output, &COMPUTE_HEADER, &rows)?;
    }
    Ok(code)
}

fn run_transform(
    records: Vec<Record>,
    steps: &[Transform],
    w: &mut dyn Write,
    stderr: &mut dyn Write,
) -> io::Result<u8> {
    let results = process(&records, |g| {
        let out = steps.iter().fold(g.clone(), |acc, step| match step {
            Transform::Mycielskian => acc.mycielskian(),
            Transform::Complement => acc.complement(),
        });
        write_graph6(&out)
    });
    let mut code = EXIT_OK;
    for (rec, result) in records.iter().zip(results) {
        match result {
            Some(line) => writeln!(w, "{line}")?,
            None => {
                report_parse_error(stderr, rec)?;
                code = EXIT_INPUT;
            }
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct VerifyFailure<'a> {
    index: usize,
    graph_id: &'a str,
    target: Target,
    error: String,
}

fn run_verify(
    records: Vec<Record>,
    targets: &[Target],
    output: Output,
    w: &mut dyn Write,
    stderr: &mut dyn Write,
) -> io::Result<u8> {
    let results = process(&records, |g| {
        let reports: Vec<_> = targets
            .iter()
            .map(|&t| (t, verify_structure(g, t)))
            .collect();
        (write_graph6(g), reports)
    });
    let mut code = EXIT_OK;
    let mut rows = Vec::new();
    for (rec, result) in records.iter().zip(results) {
        let Some((id, reports)) = result else {
            report_parse_error(stderr, rec)?;
            code = EXIT_INPUT;
            continue;
        };
        for (target, report) in reports {
            let row = match report {
                Ok(report) => {
                    if !report.holds() && code == EXIT_OK {
                        code = EXIT_FAILED;
                    }
                    if output == Output::Json {
                        write_json_line(w, &report)?;
                    }
                    law_row(&report)
                }
                Err(e) => {
                    writeln!(stderr, "line {}: record {}: {e}", rec.line, rec.index)?;
                    if code == EXIT_OK {
                        code = EXIT_FAILED;
                    }
                    let failure = VerifyFailure {
                        index: rec.index,
                        graph_id: &id,
                        target,
                        error: e.to_string(),
                    };
                    if output == Output::Json {
                        write_json_line(w, &failure)?;
                    }
                    vec![
                        id.clone(),
                        target.to_string(),
                        "error".into(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ]
                }
            };
            rows.push(row);
        }
    }
    if output != Output::Json {
        write_rows(
            w,
            output,
            &[
                "id",
                "target",
                "status",
                "checked",
                "degree_mismatches",
                "distance_mismatches",
            ],
            &rows,
        )?;
    }
    Ok(code)
}

fn law_row(r: &LawReport) -> Vec<String> {
    vec![
        r.graph_id.clone(),
        r.target.to_string(),
        if r.holds() { "ok" } else { "mismatch" }.to_string(),
        r.checked_pairs.to_string(),
        r.degree_mismatches.len().to_string(),
        r.distance_mismatches.len().to_string(),
    ]
}

pub const AUDIT_HEADER: [&str; 14] = [
    "id",
    "target",
    "n",
    "m",
    "diameter_ok",
    "brute_force",
    "printed_theorem",
    "delta",
    "case1_delta",
    "case2_delta",
    "case3_delta",
    "case4_delta",
    "case5_delta",
    "case6_delta",
];

fn audit_row(a: &AuditRecord) -> Vec<String> {
    let mut row = vec![
        a.graph_id.clone(),
        a.target.to_string(),
        a.params.n.to_string(),
        a.params.m.to_string(),
        a.diameter_ok.to_string(),
        a.brute_force.to_string(),
        a.printed_theorem.to_string(),
        a.delta.to_string(),
    ];
    row.extend(a.case_deltas.iter().map(i128::to_string));
    row
}

fn run_audit(
    records: Vec<Record>,
    targets: &[Target],
    output: Output,
    w: &mut dyn Write,
    stderr: &mut dyn Write,
) -> io::Result<u8> {
    let results = process(&records, |g| {
        targets.iter().map(|&t| audit(g, t)).collect::<Vec<_>>()
    });
    let mut code = EXIT_OK;
    let mut rows = Vec::new();
    for (rec, result) in records.iter().zip(results) {
        let Some(audits) = result else {
            report_parse_error(stderr, rec)?;
            code = EXIT_INPUT;
            continue;
        };
        for a in audits {
            match a {
                Ok(a) if output == Output::Json => write_json_line(w, &a)?,
                Ok(a) => rows.push(audit_row(&a)),
                Err(e) => {
                    writeln!(stderr, "line {}: record {}: {e}", rec.line, rec.index)?;
                    code = EXIT_INPUT;
                }
            }
        }
    }
    if output != Output::Json {
        write_rows(w, output, &AUDIT_HEADER, &rows)?;
    }
    Ok(code)
}

fn run_generate(
    family: FamilyArg,
    n: usize,
    p: Option<f64>,
    seed: Option<u64>,
    count: usize,
    w: &mut dyn Write,
    stderr: &mut dyn Write,
) -> io::Result<u8> {
    let fixed = match family {
        FamilyArg::Path => Some(Family::Path),
        FamilyArg::Cycle => Some(Family::Cycle),
        FamilyArg::Star => Some(Family::Star),
        FamilyArg::Complete => Some(Family::Complete),
        FamilyArg::Random => None,
    };
    let families: Vec<Family> = match (fixed, p, seed) {
        (Some(f), _, _) if count == 1 => vec![f],
        (Some(_), _, _) => {
            writeln!(stderr, "error: --count applies to the random family only")?;
            return Ok(EXIT_INPUT);
        }
        (None, Some(p), Some(seed)) => (0..count as u64)
            .map(|k| Family::Random {
                p,
                seed: seed.wrapping_add(k),
            })
            .collect(),
        (None, _, _) => {
            writeln!(stderr, "error: the random family requires --p and --seed")?;
            return Ok(EXIT_INPUT);
        }
    };
    for family in families {
        match generate(family, n) {
            Ok(g) => writeln!(w, "{}", write_graph6(&g))?,
            Err(e) => {
                writeln!(stderr, "error: {e}")?;
                return Ok(EXIT_INPUT);
            }
        }
    }
    Ok(EXIT_OK)
}
