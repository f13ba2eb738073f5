//! Collocation extraction primitives: bigram counting, association scores,
//! and a Mamdani fuzzy inference system that grades candidate pairs.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only switches the float math from `libm` to the standard library.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod assoc;
pub mod corpus;
pub mod eval;
pub mod fis;

mod math;

pub use assoc::{
    mutual_information, score_bigrams, t_decision, t_score, AssocError, BigramStats, TDecision,
};
pub use corpus::{
    count_corpus, merge_counts, tokenize, CorpusCounts, CorpusError, Document, WordPair,
};
pub use eval::{
    precision_recall, rank_pairs, to_percent, EvalError, EvalMethod, EvalReport, EvalRow, GoldSet,
    GradedBigram,
};
pub use fis::{
    aggregate_and_defuzzify, default_ce_fis, fire_rule, infer, infer_grade, pi_membership,
    DefuzzResult, FisConfig, FisError, FuzzySet, LinguisticVariable, PiParams, Rule, RuleTerm,
};
