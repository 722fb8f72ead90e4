//! Command-line frontend: extract a source tree, run ranked queries, print
//! comparison records, benchmark the models, and report file metrics.
//!
//! Exit codes: 0 success, 1 usage, 2 query-syntax error, 3 I/O error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::corpus::{self, CorpusStore, Model, RankedResult};
use crate::error::Error;
use crate::extractor;
use crate::simcore::{QuerySequence, TfIdfModel};
use crate::token::parse_term;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_QUERY: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser)]
#[command(
    name = "struct-seek",
    version,
    about = "Statement-sequence retrieval over Java source code",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract method structures from a source tree into a structures file.
    Extract {
        /// Source directory to walk.
        #[arg(long)]
        src: PathBuf,
        /// Output structures file.
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated list of file extensions to include.
        #[arg(long, default_value = "java")]
        ext: String,
    },
    /// Rank methods against a statement-sequence query.
    Query {
        #[arg(long)]
        structures: PathBuf,
        /// Retrieval model: dsrm, dice, or vsm.
        #[arg(long)]
        model: String,
        /// Query text, e.g. "if{ -> addParameter -> }".
        #[arg(long)]
        sequence: String,
        /// Keep at most this many rows.
        #[arg(long)]
        top: Option<usize>,
        /// Keep rows with similarity at or above this value.
        #[arg(long = "min-sim", default_value_t = 0.0)]
        min_sim: f64,
        /// Output format.
        #[arg(long, default_value = "tsv", value_parser = ["tsv", "json"])]
        format: String,
    },
    /// Print retrieved-method counts and improvement percentages for a query.
    Compare {
        #[arg(long)]
        structures: PathBuf,
        #[arg(long)]
        sequence: String,
    },
    /// Time each model over a file of queries.
    Bench {
        #[arg(long)]
        structures: PathBuf,
        /// File with one query per line; blank lines and # comments skipped.
        #[arg(long)]
        queries: PathBuf,
        /// Timed repetitions per query and model (median reported).
        #[arg(long, default_value_t = 5)]
        repeat: usize,
    },
    /// Print file metrics for a source tree.
    Stats {
        #[arg(long)]
        src: PathBuf,
    },
}

/// Parses a query text: terms separated by "->" or "→", whitespace ignored.
pub fn parse_query(raw: &str) -> Result<QuerySequence, Error> {
    let normalized = raw.replace('→', "->");
    let mut terms = Vec::new();
    for part in normalized.split("->") {
        terms.push(parse_term(part)?);
    }
    QuerySequence::new(terms)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::QuerySyntax(_) | Error::EmptyQuery => EXIT_QUERY,
        Error::UnknownModel(_) => EXIT_USAGE,
        Error::ArityOutOfRange { .. } => EXIT_USAGE,
        Error::Io { .. } | Error::MalformedRecord { .. } | Error::VersionMismatch { .. } => EXIT_IO,
        Error::EmptyStore => EXIT_IO,
    }
}

/// Runs the CLI on the given arguments (the first being the program name)
/// and returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    EXIT_OK
                }
                _ => {
                    eprint!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Extract { src, out, ext } => cmd_extract(&src, &out, &ext),
        Command::Query {
            structures,
            model,
            sequence,
            top,
            min_sim,
            format,
        } => cmd_query(&structures, &model, &sequence, top, min_sim, &format),
        Command::Compare {
            structures,
            sequence,
        } => cmd_compare(&structures, &sequence),
        Command::Bench {
            structures,
            queries,
            repeat,
        } => cmd_bench(&structures, &queries, repeat),
        Command::Stats { src } => cmd_stats(&src),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_extract(src: &Path, out: &Path, ext: &str) -> Result<i32, Error> {
    let extensions: Vec<String> = ext
        .split(',')
        .map(|e| e.trim().trim_start_matches('.').to_string())
        .collect();
    let (units, walk_diags) = extractor::collect_units(src, &extensions)?;
    for d in &walk_diags {
        eprintln!("{d}");
    }
    let extraction = extractor::extract_units(&units);
    for d in &extraction.diagnostics {
        eprintln!("{d}");
    }
    let store = CorpusStore::new(
        extraction.methods,
        src.display().to_string(),
        chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    );
    corpus::save(&store, out)?;
    println!(
        "Extracted {} methods from {} files ({} distinct terms).",
        store.len(),
        units.len(),
        store.distinct_terms()
    );
    println!("Wrote structures to {}.", out.display());
    if store.is_empty() {
        eprintln!("WARN {}:0: no methods extracted", src.display());
    }
    Ok(EXIT_OK)
}

fn sanitize(field: &str) -> String {
    field.replace(['\t', '\n', '\r'], " ")
}

fn format_rows_tsv(rows: &[RankedResult]) -> String {
    let mut out = String::from("rank\tmethod_id\tsimilarity\texact\tpartial\tcode_lines\n");
    for r in rows {
        let exact = r.exact.map(|v| v.to_string()).unwrap_or_default();
        let partial = r.partial.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{}\t{}\t{:.3}\t{}\t{}\t{}\n",
            r.rank,
            sanitize(&r.method_id),
            r.similarity,
            exact,
            partial,
            r.code_lines
        ));
    }
    out
}

fn format_rows_json(rows: &[RankedResult]) -> String {
    let items: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "rank": r.rank,
                "method_id": r.method_id,
                "similarity": (r.similarity * 1000.0).round() / 1000.0,
                "exact": r.exact,
                "partial": r.partial,
                "code_lines": r.code_lines,
            })
        })
        .collect();
    serde_json::to_string_pretty(&items).expect("rows serialize")
}

fn load_with_tfidf(
    structures: &Path,
    model: Model,
) -> Result<(CorpusStore, Option<TfIdfModel>), Error> {
    let store = corpus::load(structures)?;
    let tfidf = if model == Model::Vsm {
        Some(corpus::build_tfidf(&store)?)
    } else {
        None
    };
    Ok((store, tfidf))
}

fn cmd_query(
    structures: &Path,
    model: &str,
    sequence: &str,
    top: Option<usize>,
    min_sim: f64,
    format: &str,
) -> Result<i32, Error> {
    let model: Model = model.parse()?;
    let query = parse_query(sequence)?;
    let (store, tfidf) = load_with_tfidf(structures, model)?;
    let rows = corpus::rank(
        &store,
        model,
        &query,
        top.unwrap_or(usize::MAX),
        min_sim,
        tfidf.as_ref(),
    );
    if format == "json" {
        println!("{}", format_rows_json(&rows));
    } else {
        print!("{}", format_rows_tsv(&rows));
    }
    Ok(EXIT_OK)
}

fn percent_or_na(value: Option<f64>) -> String {
    match value {
        Some(p) => format!("{p:.1}%"),
        None => "n/a".to_string(),
    }
}

fn cmd_compare(structures: &Path, sequence: &str) -> Result<i32, Error> {
    let query = parse_query(sequence)?;
    let store = corpus::load(structures)?;
    let tfidf = corpus::build_tfidf(&store)?;
    let report = corpus::compare(&store, &tfidf, &query)?;
    println!(
        "query\tn_dsrm\tn_dice\tn_vsm\timprovement_vs_dice\timprovement_vs_vsm\tboundary_cosine"
    );
    let boundary = match report.boundary_cosine {
        Some(b) => format!("{b:.3}"),
        None => "n/a".to_string(),
    };
    println!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        sanitize(sequence.trim()),
        report.n_dsrm,
        report.n_dice,
        report.n_vsm,
        percent_or_na(report.improvement_vs_dice),
        percent_or_na(report.improvement_vs_vsm),
        boundary
    );
    Ok(EXIT_OK)
}

fn median_millis(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len();
    if n == 0 {
        return 0.0;
    }
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2.0
    }
}

fn cmd_bench(structures: &Path, queries: &Path, repeat: usize) -> Result<i32, Error> {
    let store = corpus::load(structures)?;
    let tfidf = corpus::build_tfidf(&store)?;
    let text = std::fs::read_to_string(queries).map_err(|e| Error::io(queries, e))?;
    let mut parsed = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        parsed.push((line.to_string(), parse_query(line)?));
    }
    println!("query\tmodel\tpasses\tmedian_ms");
    let repeat = repeat.max(1);
    for (raw, query) in &parsed {
        for model in Model::ALL {
            let tfidf_ref = (model == Model::Vsm).then_some(&tfidf);
            let mut samples = Vec::with_capacity(repeat);
            for _ in 0..repeat {
                let start = Instant::now();
                let rows = corpus::rank(&store, model, query, usize::MAX, 0.0, tfidf_ref);
                let elapsed = start.elapsed();
                std::hint::black_box(rows.len());
                samples.push(elapsed.as_secs_f64() * 1000.0);
            }
            println!(
                "{}\t{}\t{}\t{:.3}",
                sanitize(raw),
                model,
                model.pass_count(query.len()),
                median_millis(samples.clone())
            );
        }
    }
    Ok(EXIT_OK)
}

fn cmd_stats(src: &Path) -> Result<i32, Error> {
    let (units, walk_diags) = extractor::collect_units(src, &["java".to_string()])?;
    for d in &walk_diags {
        eprintln!("{d}");
    }
    let metrics = extractor::compute_metrics(&units);
    println!("Java Files\t{}", metrics.files);
    println!("Classes\t{}", metrics.classes);
    println!("Methods\t{}", metrics.methods);
    println!("Lines of Code\t{}", metrics.lines_of_code);
    println!("Comment Lines\t{}", metrics.comment_lines);
    println!("Total Lines\t{}", metrics.total_lines);
    Ok(EXIT_OK)
}
