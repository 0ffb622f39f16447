//! Command-line front end.
//!
//! Exit codes: 0 success (graphical), 1 not graphical, 2 invalid input.

use std::fs;
use std::io::{self, Read, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constrained::cg_test;
use crate::enumeration::{
    count_parallel, count_realizations, count_with_budget, enumerate_parallel,
};
use crate::error::{Error, Result};
use crate::format::{graph_to_json, parse_forbid, parse_sequences, write_graph};
use crate::graphicality::{erdos_gallai_test, havel_hakimi_construct, NodeSelectionPolicy};
use crate::model::{
    sort_input_sequence, validate_input_sequence, ForbiddenSet, LabeledGraph, ValidatedSequence,
};
use crate::oracle::{oracle_count, oracle_enumerate, oracle_exists, OracleQuery};
use crate::sampling::{
    estimate_count_threads, molloy_reed_batch, sample_weighted_batch, MrConfig, DEFAULT_STUB_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_GRAPHICAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Adjacency sets visited before `estimate` reports the exact count as unknown.
const EXACT_COUNT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "graphreal",
    version,
    about = "Realize, enumerate, count and sample simple graphs with a given degree sequence"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide graphicality, optionally with forbidden edges at one node.
    Test {
        #[command(flatten)]
        common: CommonArgs,
        /// Forbidden star `i:j1,j2,...` in input labels.
        #[arg(long)]
        forbid: Option<String>,
    },
    /// Print one Havel–Hakimi realization.
    Construct {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Policy::Max)]
        policy: Policy,
    },
    /// Stream every labeled realization.
    Enumerate {
        #[command(flatten)]
        common: CommonArgs,
        /// Stop after this many graphs per sequence.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Exact number of labeled realizations.
    Count {
        #[command(flatten)]
        common: CommonArgs,
        /// Disable the multiset-keyed memo table.
        #[arg(long)]
        no_memo: bool,
    },
    /// Draw random realizations.
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Method::Weighted)]
        method: Method,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        /// Stub matching only: abandon attempts the star test proves hopeless.
        #[arg(long)]
        early_reject: bool,
        /// Stub matching only: stub connections allowed per sample.
        #[arg(long, default_value_t = DEFAULT_STUB_BUDGET)]
        budget: u64,
    },
    /// Importance-sampling estimate of the realization count.
    Estimate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// File with one sequence per line; standard input when absent.
    pub input: Option<PathBuf>,
    /// Inline sequence, e.g. "3 3 2 2".
    #[arg(long = "seq", conflicts_with = "input")]
    pub inline: Option<String>,
    #[arg(long, env = "GRAPHREAL_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    /// Keep single-threaded output order when running on several threads.
    #[arg(long)]
    pub ordered: bool,
    /// Answer with the brute-force oracle (small inputs only).
    #[arg(long, hide = true)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonlines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Weighted,
    Mr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Max,
    Min,
    Fixed,
}

impl From<Policy> for NodeSelectionPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Max => NodeSelectionPolicy::MaxResidual,
            Policy::Min => NodeSelectionPolicy::MinResidual,
            Policy::Fixed => NodeSelectionPolicy::FixedLabelOrder,
        }
    }
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Test { common, .. }
            | Command::Construct { common, .. }
            | Command::Enumerate { common, .. }
            | Command::Count { common, .. }
            | Command::Sample { common, .. }
            | Command::Estimate { common, .. } => common,
        }
    }
}

enum Failure {
    Invalid(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

/// Parses `args` (program name first) and runs.
pub fn run_from_args<I, T>(
    args: I,
    input: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(config) => run(&config, input, out, err),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}

pub fn run(
    config: &CliConfig,
    input: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut buffered = io::BufWriter::new(out);
    let result = execute(config, input, &mut buffered).and_then(|code| {
        buffered.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(Failure::Invalid(message)) => {
            let _ = buffered.flush();
            let _ = writeln!(err, "error: {message}");
            EXIT_INVALID
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn read_sequences(
    common: &CommonArgs,
    input: &mut dyn Read,
) -> std::result::Result<Vec<ValidatedSequence>, Failure> {
    let text = match (&common.inline, &common.input) {
        (Some(inline), _) => inline.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?,
        (None, None) => {
            let mut text = String::new();
            input.read_to_string(&mut text)?;
            text
        }
    };
    let raw = parse_sequences(&text)?;
    if raw.is_empty() {
        return Err(Failure::Invalid("no degree sequence given".into()));
    }
    raw.into_iter()
        .map(|(line, seq)| {
            // an oversized degree is a well-formed but non-graphical input
            match validate_input_sequence(&seq) {
                Err(Error::DegreeTooLarge { .. }) => sort_input_sequence(&seq),
                other => other,
            }
            .map_err(|e| Failure::Invalid(format!("line {line}: {e}")))
        })
        .collect()
}

fn emit_graph(
    out: &mut dyn Write,
    format: Format,
    g: &LabeledGraph,
    first: &mut bool,
) -> io::Result<()> {
    match format {
        Format::Text => {
            if !*first {
                writeln!(out)?;
            }
            write_graph(out, g)?;
        }
        Format::Jsonlines => writeln!(out, "{}", graph_to_json(g))?,
    }
    *first = false;
    Ok(())
}

fn verdict(out: &mut dyn Write, graphical: bool) -> io::Result<i32> {
    if graphical {
        writeln!(out, "graphical")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "not-graphical")?;
        Ok(EXIT_NOT_GRAPHICAL)
    }
}

fn worst(a: i32, b: i32) -> i32 {
    a.max(b)
}

fn execute(
    config: &CliConfig,
    input: &mut dyn Read,
    out: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let common = config.command.common();
    let sequences = read_sequences(common, input)?;
    let threads = common.threads as usize;
    let mut code = EXIT_OK;
    let mut first = true;

    for v in &sequences {
        let d = &v.sequence;
        match &config.command {
            Command::Test { forbid, .. } => {
                let graphical = match forbid {
                    None if common.oracle => oracle_exists(&OracleQuery::new(d))?,
                    None => erdos_gallai_test(d).graphical,
                    Some(arg) => forbidden_verdict(v, arg, common.oracle)?,
                };
                code = worst(code, verdict(out, graphical)?);
            }
            Command::Construct { policy, .. } => {
                match havel_hakimi_construct(d, (*policy).into()) {
                    Ok(g) => emit_graph(out, common.format, &v.to_original(&g), &mut first)?,
                    Err(Error::NotGraphical) => code = worst(code, verdict(out, false)?),
                    Err(e) => return Err(e.into()),
                }
            }
            Command::Enumerate { limit, .. } => {
                let limit = limit.unwrap_or(u64::MAX);
                let mut emitted = 0u64;
                let mut io_error = None;
                if common.oracle {
                    for g in oracle_enumerate(&OracleQuery::new(d))?.into_iter() {
                        if emitted == limit {
                            break;
                        }
                        emit_graph(out, common.format, &v.to_original(&g), &mut first)?;
                        emitted += 1;
                    }
                } else if limit > 0 {
                    enumerate_parallel(d, threads, common.ordered || threads == 1, |g| {
                        if let Err(e) =
                            emit_graph(out, common.format, &v.to_original(&g), &mut first)
                        {
                            io_error = Some(e);
                            return ControlFlow::Break(());
                        }
                        emitted += 1;
                        if emitted >= limit {
                            ControlFlow::Break(())
                        } else {
                            ControlFlow::Continue(())
                        }
                    });
                }
                if let Some(e) = io_error {
                    return Err(e.into());
                }
                if !erdos_gallai_test(d).graphical {
                    code = worst(code, EXIT_NOT_GRAPHICAL);
                }
            }
            Command::Count { no_memo, .. } => {
                let (count, entries) = if common.oracle {
                    (oracle_count(&OracleQuery::new(d))?.to_string(), 0)
                } else {
                    let r = if *no_memo {
                        count_realizations(d, false)
                    } else if threads > 1 {
                        count_parallel(d, threads)
                    } else {
                        count_realizations(d, true)
                    };
                    (r.count.to_string(), r.memo_entries)
                };
                writeln!(out, "count={count} memo_entries={entries}")?;
                if count == "0" {
                    code = worst(code, EXIT_NOT_GRAPHICAL);
                }
            }
            Command::Sample {
                method,
                samples,
                early_reject,
                budget,
                ..
            } => {
                if !erdos_gallai_test(d).graphical {
                    code = worst(code, verdict(out, false)?);
                    continue;
                }
                let count = *samples as usize;
                match method {
                    Method::Weighted => {
                        for s in sample_weighted_batch(d, count, common.seed, threads)? {
                            let g = v.to_original(&s.graph);
                            let p = format!("{}/{}", s.probability.numer(), s.probability.denom());
                            write_sample(
                                out,
                                common.format,
                                &g,
                                &mut first,
                                &format!("p={p}"),
                                json!({ "p": p }),
                            )?;
                        }
                    }
                    Method::Mr => {
                        let config = MrConfig {
                            early_reject: *early_reject,
                            budget: *budget,
                        };
                        for (g, stats) in molloy_reed_batch(d, count, common.seed, config, threads)?
                        {
                            let g = v.to_original(&g);
                            let line = format!(
                                "restarts={} cg_rejects={}",
                                stats.restarts, stats.cg_rejects
                            );
                            let extra = json!({ "restarts": stats.restarts, "cg_rejects": stats.cg_rejects });
                            write_sample(out, common.format, &g, &mut first, &line, extra)?;
                        }
                    }
                }
            }
            Command::Estimate { samples, .. } => {
                if !erdos_gallai_test(d).graphical {
                    writeln!(out, "estimate=0 stderr=0 exact=0")?;
                    code = worst(code, EXIT_NOT_GRAPHICAL);
                    continue;
                }
                let e = estimate_count_threads(d, *samples as usize, common.seed, threads)?;
                let exact = match count_with_budget(d, true, Some(EXACT_COUNT_BUDGET)) {
                    Ok(r) => r.count.to_string(),
                    Err(_) => "unknown".to_string(),
                };
                writeln!(
                    out,
                    "estimate={} stderr={} exact={exact}",
                    e.value(),
                    e.stderr
                )?;
            }
        }
    }
    Ok(code)
}

fn write_sample(
    out: &mut dyn Write,
    format: Format,
    g: &LabeledGraph,
    first: &mut bool,
    stats_line: &str,
    extra: serde_json::Value,
) -> io::Result<()> {
    match format {
        Format::Text => {
            if !*first {
                writeln!(out)?;
            }
            write_graph(out, g)?;
            writeln!(out, "{stats_line}")?;
        }
        Format::Jsonlines => {
            let mut record = json!({
                "n": g.node_count(),
                "edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
            });
            if let (Some(map), Some(more)) = (record.as_object_mut(), extra.as_object()) {
                map.extend(more.clone());
            }
            writeln!(out, "{record}")?;
        }
    }
    *first = false;
    Ok(())
}

/// Verdict for `--forbid` given in input labels. Stripped zero-degree nodes
/// take part in no edge, so they drop out of the star.
fn forbidden_verdict(v: &ValidatedSequence, arg: &str, use_oracle: bool) -> Result<bool> {
    let (focal, members) = parse_forbid(arg)?;
    let d = &v.sequence;
    for &m in &members {
        if m == focal {
            return Err(Error::InvalidSet(format!(
                "node {focal} cannot forbid itself"
            )));
        }
        v.sorted_label(m)?;
    }
    let Some(focal) = v.sorted_label(focal)? else {
        return Ok(erdos_gallai_test(d).graphical);
    };
    let mut star = Vec::new();
    for &m in &members {
        if let Some(label) = v.sorted_label(m)? {
            star.push(label);
        }
    }
    let star = ForbiddenSet::new(focal, star)?;
    if use_oracle {
        return oracle_exists(&OracleQuery::new(d).forbidding(star));
    }
    match cg_test(d, focal, &star) {
        Ok(answer) => Ok(answer),
        // fewer allowed neighbours than stubs: no realization avoids the star
        Err(Error::TooManyForbidden { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}
