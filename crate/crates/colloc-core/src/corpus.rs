//! Corpus tokenization and frequency tables.
//!
//! Counting is per-document: bigrams never span a document boundary, so the
//! invariant `total_bigrams == total_tokens - number_of_nonempty_documents`
//! holds for any corpus.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// An ordered pair of adjacent words. Also the bigram table key.
pub type WordPair = (String, String);

/// A unit of text to count. Bigrams are only formed inside one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusError {
    /// A merged count exceeded u64::MAX.
    CountOverflow,
    /// Unigram counts do not sum to the stated token total.
    TokenTotalMismatch { stated: u64, summed: u64 },
    /// Bigram counts do not sum to the stated bigram total.
    BigramTotalMismatch { stated: u64, summed: u64 },
    /// A bigram references a word missing from the unigram table.
    UnknownBigramWord { word: String },
    /// A frequency table entry carries a zero count.
    ZeroCount { key: String },
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::CountOverflow => write!(f, "count overflow while merging tables"),
            CorpusError::TokenTotalMismatch { stated, summed } => write!(
                f,
                "token total {stated} does not match unigram sum {summed}"
            ),
            CorpusError::BigramTotalMismatch { stated, summed } => write!(
                f,
                "bigram total {stated} does not match bigram sum {summed}"
            ),
            CorpusError::UnknownBigramWord { word } => {
                write!(f, "bigram word {word:?} has no unigram entry")
            }
            CorpusError::ZeroCount { key } => write!(f, "zero count recorded for {key}"),
        }
    }
}

impl core::error::Error for CorpusError {}

/// Unigram and bigram frequency tables with their totals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusCounts {
    unigrams: BTreeMap<String, u64>,
    bigrams: BTreeMap<WordPair, u64>,
    total_tokens: u64,
    total_bigrams: u64,
}

impl CorpusCounts {
    pub fn new() -> Self {
        CorpusCounts::default()
    }

    /// Builds a table from pre-computed parts, validating every invariant:
    /// totals match the sums, no zero counts, and every bigram word has a
    /// unigram entry.
    pub fn from_parts(
        unigrams: BTreeMap<String, u64>,
        bigrams: BTreeMap<WordPair, u64>,
        total_tokens: u64,
        total_bigrams: u64,
    ) -> Result<Self, CorpusError> {
        let mut summed: u64 = 0;
        for (word, &count) in &unigrams {
            if count == 0 {
                return Err(CorpusError::ZeroCount { key: word.clone() });
            }
            summed = summed.checked_add(count).ok_or(CorpusError::CountOverflow)?;
        }
        if summed != total_tokens {
            return Err(CorpusError::TokenTotalMismatch {
                stated: total_tokens,
                summed,
            });
        }

        let mut summed: u64 = 0;
        for ((w1, w2), &count) in &bigrams {
            if count == 0 {
                let mut key = w1.clone();
                key.push(' ');
                key.push_str(w2);
                return Err(CorpusError::ZeroCount { key });
            }
            for word in [w1, w2] {
                if !unigrams.contains_key(word) {
                    return Err(CorpusError::UnknownBigramWord { word: word.clone() });
                }
            }
            summed = summed.checked_add(count).ok_or(CorpusError::CountOverflow)?;
        }
        if summed != total_bigrams {
            return Err(CorpusError::BigramTotalMismatch {
                stated: total_bigrams,
                summed,
            });
        }

        Ok(CorpusCounts {
            unigrams,
            bigrams,
            total_tokens,
            total_bigrams,
        })
    }

    pub fn unigrams(&self) -> &BTreeMap<String, u64> {
        &self.unigrams
    }

    pub fn bigrams(&self) -> &BTreeMap<WordPair, u64> {
        &self.bigrams
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn total_bigrams(&self) -> u64 {
        self.total_bigrams
    }

    /// Count of a single word, zero if unseen.
    pub fn unigram(&self, word: &str) -> u64 {
        self.unigrams.get(word).copied().unwrap_or(0)
    }

    /// Count of an adjacent pair, zero if unseen.
    pub fn bigram(&self, w1: &str, w2: &str) -> u64 {
        self.bigrams
            .get(&(w1.to_string(), w2.to_string()))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.total_tokens == 0
    }

    fn add_token(&mut self, token: String) {
        *self.unigrams.entry(token).or_insert(0) += 1;
        self.total_tokens += 1;
    }

    fn add_pair(&mut self, w1: String, w2: String) {
        *self.bigrams.entry((w1, w2)).or_insert(0) += 1;
        self.total_bigrams += 1;
    }
}

/// Splits text into lowercase word tokens.
///
/// A token is a maximal run of alphanumeric characters and apostrophes with
/// any leading or trailing apostrophes stripped ("don't" survives intact,
/// "'tis" becomes "tis"). Every other character separates tokens. Only the
/// ASCII apostrophe is recognized; typographic quotes separate.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            for lower in ch.to_lowercase() {
                current.push(lower);
            }
        } else if ch == '\'' {
            current.push('\'');
        } else {
            flush_token(&mut current, &mut tokens);
        }
    }
    flush_token(&mut current, &mut tokens);
    tokens
}

fn flush_token(current: &mut String, tokens: &mut Vec<String>) {
    if !current.is_empty() {
        let trimmed = current.trim_matches('\'');
        if !trimmed.is_empty() {
            tokens.push(trimmed.to_string());
        }
        current.clear();
    }
}

/// Tokenizes every document and accumulates unigram and adjacent-bigram
/// counts. Total counting, never fails: empty documents contribute nothing.
pub fn count_corpus(documents: &[Document]) -> CorpusCounts {
    let mut counts = CorpusCounts::new();
    for doc in documents {
        let tokens = tokenize(&doc.text);
        for pair in tokens.windows(2) {
            counts.add_pair(pair[0].clone(), pair[1].clone());
        }
        for token in tokens {
            counts.add_token(token);
        }
    }
    counts
}

/// Adds two frequency tables entry-wise. Commutative and associative, with
/// the empty table as identity; errors only if a combined count overflows.
pub fn merge_counts(a: &CorpusCounts, b: &CorpusCounts) -> Result<CorpusCounts, CorpusError> {
    let mut merged = a.clone();
    for (word, &count) in &b.unigrams {
        let slot = merged.unigrams.entry(word.clone()).or_insert(0);
        *slot = slot.checked_add(count).ok_or(CorpusError::CountOverflow)?;
    }
    for (pair, &count) in &b.bigrams {
        let slot = merged.bigrams.entry(pair.clone()).or_insert(0);
        *slot = slot.checked_add(count).ok_or(CorpusError::CountOverflow)?;
    }
    merged.total_tokens = merged
        .total_tokens
        .checked_add(b.total_tokens)
        .ok_or(CorpusError::CountOverflow)?;
    merged.total_bigrams = merged
        .total_bigrams
        .checked_add(b.total_bigrams)
        .ok_or(CorpusError::CountOverflow)?;
    Ok(merged)
}
