//! Precision/recall evaluation of scored pairs against a gold set, and the
//! deterministic presentation ordering for graded bigrams.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::assoc::BigramStats;
use crate::corpus::WordPair;
use crate::math;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// Precision/recall need a non-empty gold set.
    EmptyGold,
    /// Every score must be finite.
    NonFiniteScore { w1: alloc::string::String, w2: alloc::string::String },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::EmptyGold => write!(f, "gold set is empty"),
            EvalError::NonFiniteScore { w1, w2 } => {
                write!(f, "pair ({w1}, {w2}) has a non-finite score")
            }
        }
    }
}

impl core::error::Error for EvalError {}

/// Word pairs judged to be true collocations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldSet {
    pairs: BTreeSet<WordPair>,
}

impl GoldSet {
    pub fn from_pairs(pairs: impl IntoIterator<Item = WordPair>) -> Self {
        GoldSet {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn contains(&self, pair: &WordPair) -> bool {
        self.pairs.contains(pair)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &WordPair> {
        self.pairs.iter()
    }
}

/// Which score a threshold applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    Mi,
    T,
    Grade,
}

impl fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalMethod::Mi => "mi",
            EvalMethod::T => "t",
            EvalMethod::Grade => "grade",
        })
    }
}

/// One precision/recall measurement. `precision` is None when nothing was
/// retrieved (undefined, deliberately distinct from 0).
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRow {
    pub method: EvalMethod,
    pub threshold: f64,
    pub retrieved: usize,
    pub true_positive: usize,
    pub precision: Option<f64>,
    pub recall: f64,
}

impl EvalRow {
    /// Precision as a half-up rounded integer percentage.
    pub fn precision_percent(&self) -> Option<u32> {
        self.precision.map(to_percent)
    }

    /// Recall as a half-up rounded integer percentage.
    pub fn recall_percent(&self) -> u32 {
        to_percent(self.recall)
    }
}

/// Rounds a fraction in [0, 1] to an integer percent, halves upward.
pub fn to_percent(fraction: f64) -> u32 {
    math::round(fraction * 100.0) as u32
}

/// Rows for one or more methods over a fixture, with the sizes that anchor
/// the denominators.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub rows: Vec<EvalRow>,
    pub gold_size: usize,
    pub fixture_size: usize,
}

/// Counts pairs scoring at or above the threshold (retrieval is "equal to
/// or more than") and how many of those are gold.
pub fn precision_recall(
    scored: &[(WordPair, f64)],
    gold: &GoldSet,
    method: EvalMethod,
    threshold: f64,
) -> Result<EvalRow, EvalError> {
    if gold.is_empty() {
        return Err(EvalError::EmptyGold);
    }
    let mut retrieved = 0usize;
    let mut true_positive = 0usize;
    for (pair, score) in scored {
        if !score.is_finite() {
            return Err(EvalError::NonFiniteScore {
                w1: pair.0.clone(),
                w2: pair.1.clone(),
            });
        }
        if *score >= threshold {
            retrieved += 1;
            if gold.contains(pair) {
                true_positive += 1;
            }
        }
    }
    let precision = (retrieved > 0).then(|| true_positive as f64 / retrieved as f64);
    let recall = true_positive as f64 / gold.len() as f64;
    Ok(EvalRow {
        method,
        threshold,
        retrieved,
        true_positive,
        precision,
        recall,
    })
}

/// A scored bigram with its fuzzy relevance grade.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedBigram {
    pub stats: BigramStats,
    pub grade: f64,
}

/// Presentation order: grade descending, then mi descending, then (w1, w2).
/// Deterministic for any input permutation.
pub fn rank_pairs(mut rows: Vec<GradedBigram>) -> Vec<GradedBigram> {
    rows.sort_by(|x, y| {
        y.grade
            .total_cmp(&x.grade)
            .then_with(|| y.stats.mi.total_cmp(&x.stats.mi))
            .then_with(|| (&x.stats.w1, &x.stats.w2).cmp(&(&y.stats.w1, &y.stats.w2)))
    });
    rows
}
