//! Command-line front end: count, score, grade, evaluate, reproduce.
//!
//! The pipeline is file-mediated so any stage's input can be swapped out:
//! `count` writes a counts file, `score` turns it into a CSV of mi/t
//! scores, `grade` appends fuzzy relevance grades, `evaluate` measures
//! precision/recall against a gold list. `reproduce` runs the shipped
//! fixtures through the whole chain and checks the published numbers.
//!
//! Diagnostics go to standard error; data goes to the declared outputs.

use std::error::Error;
use std::fs::File;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use colloc::counts_io::{load_counts, save_counts};
use colloc::fis_io::load_fis_config;
use colloc::fixture::{
    load_fixture, load_fixture_path, load_gold, load_gold_path, T_CRITICAL,
};
use colloc::report::{
    render_mismatches, render_report_text, render_text, reproduce, write_report_csv,
    GRADE_THRESHOLDS, MI_THRESHOLDS,
};
use colloc::scores_io::{load_scored_any, load_scores, save_graded, save_scores};
use colloc::{
    count_corpus, default_ce_fis, infer_grade, precision_recall, rank_pairs, score_bigrams,
    EvalMethod, EvalReport, FisConfig, GradedBigram, WordPair,
};

#[derive(Parser)]
#[command(
    name = "colloc",
    version,
    about = "Collocation extraction: bigram statistics and fuzzy relevance grading"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count unigrams and adjacent bigrams in UTF-8 text files.
    ///
    /// Files are read as given; directories are scanned recursively for
    /// .txt files. Bigrams never span file boundaries. Corpus totals are
    /// printed to standard error.
    Count {
        /// Input files or directories.
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Counts file to write.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Score counted bigrams with mutual information and the t-statistic.
    Score {
        /// Counts file produced by `count`.
        counts: PathBuf,
        /// Corpus size override; defaults to the counts file's token total.
        #[arg(long)]
        n: Option<u64>,
        /// Skip pairs occurring fewer than this many times.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        min_count: u64,
        /// Scores CSV to write.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Grade scored bigrams with a fuzzy inference system.
    Grade {
        /// Scores CSV produced by `score`.
        scores: PathBuf,
        /// Inference config JSON; defaults to the built-in config.
        #[arg(long)]
        fis: Option<PathBuf>,
        /// Graded CSV to write, ordered by descending grade.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Measure precision/recall of a scored CSV against a gold list.
    Evaluate {
        /// Scores CSV, with or without a grade column.
        scored: PathBuf,
        /// Gold list: one "w1 w2" pair per line.
        #[arg(long)]
        gold: PathBuf,
        /// Which column to threshold (t uses |t|).
        #[arg(long, value_enum)]
        method: Method,
        /// Thresholds to sweep; repeatable. Defaults per method.
        #[arg(long = "threshold")]
        thresholds: Vec<f64>,
        /// Also write the report as CSV.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-run the published 70-pair evaluation from the shipped fixtures.
    ///
    /// Exits nonzero if any report row deviates from the published
    /// precision/recall percentages; deviations are listed on standard
    /// error.
    Reproduce {
        /// Fixture table override (defaults to the embedded copy).
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Gold list override.
        #[arg(long)]
        gold: Option<PathBuf>,
        /// Inference config override.
        #[arg(long)]
        fis: Option<PathBuf>,
        /// Also write the report as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Mi,
    T,
    Grade,
}

impl From<Method> for EvalMethod {
    fn from(method: Method) -> EvalMethod {
        match method {
            Method::Mi => EvalMethod::Mi,
            Method::T => EvalMethod::T,
            Method::Grade => EvalMethod::Grade,
        }
    }
}

type CmdResult = Result<ExitCode, Box<dyn Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let mut source = err.source();
            while let Some(cause) = source {
                eprintln!("  caused by: {cause}");
                source = cause.source();
            }
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Count { paths, output } => cmd_count(&paths, &output),
        Command::Score {
            counts,
            n,
            min_count,
            output,
        } => cmd_score(&counts, n, min_count, &output),
        Command::Grade {
            scores,
            fis,
            output,
        } => cmd_grade(&scores, fis.as_deref(), &output),
        Command::Evaluate {
            scored,
            gold,
            method,
            thresholds,
            output,
        } => cmd_evaluate(&scored, &gold, method.into(), thresholds, output.as_deref()),
        Command::Reproduce {
            fixture,
            gold,
            fis,
            csv,
        } => cmd_reproduce(
            fixture.as_deref(),
            gold.as_deref(),
            fis.as_deref(),
            csv.as_deref(),
        ),
    }
}

fn load_fis(path: Option<&Path>) -> Result<FisConfig, Box<dyn Error>> {
    match path {
        Some(path) => Ok(load_fis_config(path)?),
        None => Ok(default_ce_fis()),
    }
}

fn create_output(path: &Path) -> Result<File, Box<dyn Error>> {
    File::create(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn cmd_count(paths: &[PathBuf], output: &Path) -> CmdResult {
    let documents = colloc::ingest::collect_documents(paths)?;
    let counts = count_corpus(&documents);
    save_counts(&counts, output)?;
    eprintln!(
        "{} tokens, {} distinct unigrams, {} distinct bigrams",
        counts.total_tokens(),
        counts.unigrams().len(),
        counts.bigrams().len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_score(counts_path: &Path, n: Option<u64>, min_count: u64, output: &Path) -> CmdResult {
    let counts = load_counts(counts_path)?;
    let n_used = n.unwrap_or_else(|| counts.total_tokens());
    let rows = score_bigrams(&counts, n, min_count)?;
    save_scores(&rows, output)?;
    eprintln!("scored {} pairs with n = {n_used}", rows.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_grade(scores_path: &Path, fis_path: Option<&Path>, output: &Path) -> CmdResult {
    let fis = load_fis(fis_path)?;
    let rows = load_scores(scores_path)?;
    let mut graded = Vec::with_capacity(rows.len());
    for stats in rows {
        let grade = infer_grade(stats.mi, stats.t, &fis)?;
        graded.push(GradedBigram { stats, grade });
    }
    let graded = rank_pairs(graded);
    save_graded(&graded, output)?;
    eprintln!("graded {} pairs", graded.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_evaluate(
    scored_path: &Path,
    gold_path: &Path,
    method: EvalMethod,
    thresholds: Vec<f64>,
    output: Option<&Path>,
) -> CmdResult {
    let rows = load_scored_any(scored_path)?;
    let gold = load_gold_path(gold_path)?;
    let mut scored: Vec<(WordPair, f64)> = Vec::with_capacity(rows.len());
    for (stats, grade) in rows {
        let score = match method {
            EvalMethod::Mi => stats.mi,
            EvalMethod::T => stats.t.abs(),
            EvalMethod::Grade => grade.ok_or_else(|| {
                format!(
                    "{}: no grade column; run `colloc grade` first",
                    scored_path.display()
                )
            })?,
        };
        scored.push(((stats.w1, stats.w2), score));
    }
    let thresholds = if thresholds.is_empty() {
        match method {
            EvalMethod::Mi => MI_THRESHOLDS.to_vec(),
            EvalMethod::Grade => GRADE_THRESHOLDS.to_vec(),
            EvalMethod::T => vec![T_CRITICAL],
        }
    } else {
        thresholds
    };
    let mut report_rows = Vec::with_capacity(thresholds.len());
    for threshold in thresholds {
        report_rows.push(precision_recall(&scored, &gold, method, threshold)?);
    }
    let report = EvalReport {
        rows: report_rows,
        gold_size: gold.len(),
        fixture_size: scored.len(),
    };
    print!("{}", render_report_text(&report));
    if let Some(path) = output {
        write_report_csv(&report, create_output(path)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_reproduce(
    fixture_path: Option<&Path>,
    gold_path: Option<&Path>,
    fis_path: Option<&Path>,
    csv_path: Option<&Path>,
) -> CmdResult {
    let fixture = match fixture_path {
        Some(path) => load_fixture_path(path)?,
        None => load_fixture()?,
    };
    let gold = match gold_path {
        Some(path) => load_gold_path(path)?,
        None => load_gold()?,
    };
    let fis = load_fis(fis_path)?;
    let reproduction = reproduce(&fixture, &gold, &fis)?;
    print!("{}", render_text(&reproduction));
    if let Some(path) = csv_path {
        write_report_csv(&reproduction.report, create_output(path)?)?;
    }
    if reproduction.all_match() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprint!("{}", render_mismatches(&reproduction));
        Ok(ExitCode::FAILURE)
    }
}
