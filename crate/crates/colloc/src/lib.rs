//! File formats, shipped fixtures, and corpus ingestion around
//! [`colloc_core`], plus the one-shot reproduction of the published
//! evaluation. The `colloc` binary wires these into a CLI.

pub mod counts_io;
pub mod fis_io;
pub mod fixture;
pub mod ingest;
pub mod report;
pub mod scores_io;

pub use colloc_core::{
    count_corpus, default_ce_fis, infer_grade, merge_counts, mutual_information, precision_recall,
    rank_pairs, score_bigrams, t_decision, t_score, tokenize, AssocError, BigramStats,
    CorpusCounts, CorpusError, Document, EvalError, EvalMethod, EvalReport, EvalRow, FisConfig,
    FisError, GoldSet, GradedBigram, TDecision, WordPair,
};
