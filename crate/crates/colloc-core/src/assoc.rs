//! Association scores for bigrams: pointwise mutual information in bits and
//! a t-statistic under a Bernoulli occurrence model, plus the classical
//! accept/reject decision at a critical value.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::corpus::CorpusCounts;
use crate::math;

#[derive(Debug, Clone, PartialEq)]
pub enum AssocError {
    /// f12 = 0: MI is undefined for an unseen pair.
    UnseenPair,
    /// n = 0.
    ZeroCorpus,
    /// f12 = 0 or f12 = n: the Bernoulli sample variance vanishes.
    ZeroVariance,
    /// Frequencies violate 1 <= f12 <= min(f1, f2) or exceed n.
    InvalidFrequencies { f1: u64, f2: u64, f12: u64, n: u64 },
    /// A counted bigram references a word absent from the unigram table.
    MissingWord { w1: String, w2: String, word: String },
    /// A stored score is NaN or infinite.
    NonFiniteScore { w1: String, w2: String },
}

impl fmt::Display for AssocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssocError::UnseenPair => write!(f, "undefined MI for unseen pair"),
            AssocError::ZeroCorpus => write!(f, "corpus size n must be positive"),
            AssocError::ZeroVariance => write!(f, "zero sample variance"),
            AssocError::InvalidFrequencies { f1, f2, f12, n } => write!(
                f,
                "invalid frequencies f1={f1} f2={f2} f12={f12} n={n}"
            ),
            AssocError::MissingWord { w1, w2, word } => write!(
                f,
                "bigram ({w1}, {w2}): word {word:?} missing from unigram table"
            ),
            AssocError::NonFiniteScore { w1, w2 } => {
                write!(f, "bigram ({w1}, {w2}): non-finite score")
            }
        }
    }
}

impl core::error::Error for AssocError {}

/// Pointwise mutual information in bits: log2((f12 * n) / (f1 * f2)).
///
/// The ratio is formed from exact 128-bit integer products before the single
/// rounding to f64, so the result is exactly 0 when f12 * n == f1 * f2 and
/// its sign always matches the exact integer comparison.
pub fn mutual_information(f1: u64, f2: u64, f12: u64, n: u64) -> Result<f64, AssocError> {
    if f12 == 0 {
        return Err(AssocError::UnseenPair);
    }
    if n == 0 {
        return Err(AssocError::ZeroCorpus);
    }
    if f1 < f12 || f2 < f12 {
        return Err(AssocError::InvalidFrequencies { f1, f2, f12, n });
    }
    let joint = (f12 as u128 * n as u128) as f64;
    let independent = (f1 as u128 * f2 as u128) as f64;
    Ok(math::log2(joint / independent))
}

/// t-statistic of the observed pair probability against independence:
/// (p12 - p1*p2) / sqrt(p12 * (1 - p12) / n) with p = f / n.
pub fn t_score(f1: u64, f2: u64, f12: u64, n: u64) -> Result<f64, AssocError> {
    if n == 0 {
        return Err(AssocError::ZeroCorpus);
    }
    if f12 == 0 || f12 >= n {
        return Err(AssocError::ZeroVariance);
    }
    if f1 < f12 || f2 < f12 {
        return Err(AssocError::InvalidFrequencies { f1, f2, f12, n });
    }
    let nf = n as f64;
    let p1 = f1 as f64 / nf;
    let p2 = f2 as f64 / nf;
    let p12 = f12 as f64 / nf;
    Ok((p12 - p1 * p2) / math::sqrt(p12 * (1.0 - p12) / nf))
}

/// Outcome of testing a t value against a critical threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TDecision {
    pub t_value: f64,
    pub threshold: f64,
    pub accepted: bool,
}

/// Classical significance decision: accepted iff |t| >= threshold.
/// The boundary |t| == threshold counts as accepted.
pub fn t_decision(t_value: f64, threshold: f64) -> TDecision {
    TDecision {
        t_value,
        threshold,
        accepted: t_value.abs() >= threshold,
    }
}

/// One bigram's frequencies and its two association scores.
#[derive(Debug, Clone, PartialEq)]
pub struct BigramStats {
    pub w1: String,
    pub w2: String,
    pub f1: u64,
    pub f2: u64,
    pub f12: u64,
    pub n: u64,
    pub mi: f64,
    pub t: f64,
}

impl BigramStats {
    /// Computes both scores from frequencies, validating
    /// 1 <= f12 <= min(f1, f2) and f1, f2 <= n, f12 < n.
    pub fn compute(
        w1: impl Into<String>,
        w2: impl Into<String>,
        f1: u64,
        f2: u64,
        f12: u64,
        n: u64,
    ) -> Result<Self, AssocError> {
        if f1 > n || f2 > n {
            return Err(AssocError::InvalidFrequencies { f1, f2, f12, n });
        }
        let mi = mutual_information(f1, f2, f12, n)?;
        let t = t_score(f1, f2, f12, n)?;
        Ok(BigramStats {
            w1: w1.into(),
            w2: w2.into(),
            f1,
            f2,
            f12,
            n,
            mi,
            t,
        })
    }

    /// Rebuilds a record whose scores were already computed (e.g. read back
    /// from a file), validating the count invariants and score finiteness.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        w1: impl Into<String>,
        w2: impl Into<String>,
        f1: u64,
        f2: u64,
        f12: u64,
        n: u64,
        mi: f64,
        t: f64,
    ) -> Result<Self, AssocError> {
        let (w1, w2) = (w1.into(), w2.into());
        if f12 == 0 {
            return Err(AssocError::UnseenPair);
        }
        if n == 0 {
            return Err(AssocError::ZeroCorpus);
        }
        if f1 < f12 || f2 < f12 || f1 > n || f2 > n || f12 > n {
            return Err(AssocError::InvalidFrequencies { f1, f2, f12, n });
        }
        if !mi.is_finite() || !t.is_finite() {
            return Err(AssocError::NonFiniteScore { w1, w2 });
        }
        Ok(BigramStats { w1, w2, f1, f2, f12, n, mi, t })
    }
}

/// Scores every bigram with f12 >= min_pair_count. n defaults to the table's
/// total token count; n_override replaces it (must be positive). Output is
/// sorted by descending mi, ties broken by (w1, w2).
pub fn score_bigrams(
    counts: &CorpusCounts,
    n_override: Option<u64>,
    min_pair_count: u64,
) -> Result<Vec<BigramStats>, AssocError> {
    let n = match n_override {
        Some(0) => return Err(AssocError::ZeroCorpus),
        Some(n) => n,
        None => counts.total_tokens(),
    };
    let mut rows = Vec::new();
    for ((w1, w2), &f12) in counts.bigrams() {
        if f12 < min_pair_count {
            continue;
        }
        // CorpusCounts construction guarantees unigram entries for every
        // bigram word; this guard survives as a data-integrity backstop.
        let f1 = counts.unigram(w1);
        let f2 = counts.unigram(w2);
        for (word, f) in [(w1, f1), (w2, f2)] {
            if f == 0 {
                return Err(AssocError::MissingWord {
                    w1: w1.clone(),
                    w2: w2.clone(),
                    word: word.clone(),
                });
            }
        }
        rows.push(BigramStats::compute(w1.clone(), w2.clone(), f1, f2, f12, n)?);
    }
    rows.sort_by(|x, y| {
        y.mi
            .total_cmp(&x.mi)
            .then_with(|| (&x.w1, &x.w2).cmp(&(&y.w1, &y.w2)))
    });
    Ok(rows)
}
