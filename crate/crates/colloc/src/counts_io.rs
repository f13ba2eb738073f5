//! On-disk frequency tables.
//!
//! Format: a `#tokens <total>` header line, then one record per line, tab
//! separated: `1<TAB>word<TAB>count` for unigrams, `2<TAB>w1<TAB>w2<TAB>count`
//! for bigrams. The writer emits unigrams then bigrams, each kind sorted
//! lexicographically, so save/load round-trips are bit-exact. The reader
//! accepts records in any order; the bigram total is the sum of bigram
//! records, and the header must equal the unigram sum.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use colloc_core::{CorpusCounts, CorpusError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CountsIoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("word {word:?} cannot be written (contains tab or newline)")]
    UnwritableWord { word: String },
    #[error(transparent)]
    Invalid(#[from] CorpusError),
}

fn writable(word: &str) -> Result<&str, CountsIoError> {
    if word.contains('\t') || word.contains('\n') || word.contains('\r') {
        return Err(CountsIoError::UnwritableWord {
            word: word.to_string(),
        });
    }
    Ok(word)
}

/// Writes the counts format to any sink.
pub fn write_counts(counts: &CorpusCounts, mut w: impl Write) -> Result<(), CountsIoError> {
    let io_err = |source| CountsIoError::Io {
        path: PathBuf::from("<writer>"),
        source,
    };
    writeln!(w, "#tokens {}", counts.total_tokens()).map_err(io_err)?;
    for (word, count) in counts.unigrams() {
        writeln!(w, "1\t{}\t{}", writable(word)?, count).map_err(io_err)?;
    }
    for ((w1, w2), count) in counts.bigrams() {
        writeln!(w, "2\t{}\t{}\t{}", writable(w1)?, writable(w2)?, count).map_err(io_err)?;
    }
    Ok(())
}

pub fn save_counts(counts: &CorpusCounts, path: impl AsRef<Path>) -> Result<(), CountsIoError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|source| CountsIoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    write_counts(counts, &mut writer)?;
    writer.flush().map_err(|source| CountsIoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses the counts format from any source. Errors name the 1-based line.
pub fn read_counts(r: impl BufRead) -> Result<CorpusCounts, CountsIoError> {
    let parse = |line: usize, reason: &str| CountsIoError::Parse {
        line,
        reason: reason.to_string(),
    };
    let mut lines = r.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| parse(1, "empty file, expected '#tokens <total>' header"))?;
    let header = header.map_err(|source| CountsIoError::Io {
        path: PathBuf::from("<reader>"),
        source,
    })?;
    let total_tokens: u64 = header
        .strip_prefix("#tokens ")
        .ok_or_else(|| parse(1, "expected '#tokens <total>' header"))?
        .parse()
        .map_err(|_| parse(1, "header total is not a non-negative integer"))?;

    let mut unigrams = std::collections::BTreeMap::new();
    let mut bigrams = std::collections::BTreeMap::new();
    let mut total_bigrams: u64 = 0;
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.map_err(|source| CountsIoError::Io {
            path: PathBuf::from("<reader>"),
            source,
        })?;
        if line.is_empty() {
            return Err(parse(lineno, "blank line"));
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            ["1", word, count] => {
                let count: u64 = count
                    .parse()
                    .map_err(|_| parse(lineno, "unigram count is not an integer"))?;
                if count == 0 {
                    return Err(parse(lineno, "zero unigram count"));
                }
                if unigrams.insert(word.to_string(), count).is_some() {
                    return Err(parse(lineno, &format!("duplicate unigram {word:?}")));
                }
            }
            ["2", w1, w2, count] => {
                let count: u64 = count
                    .parse()
                    .map_err(|_| parse(lineno, "bigram count is not an integer"))?;
                if count == 0 {
                    return Err(parse(lineno, "zero bigram count"));
                }
                if bigrams
                    .insert((w1.to_string(), w2.to_string()), count)
                    .is_some()
                {
                    return Err(parse(lineno, &format!("duplicate bigram ({w1:?}, {w2:?})")));
                }
                total_bigrams = total_bigrams
                    .checked_add(count)
                    .ok_or_else(|| parse(lineno, "bigram total overflows"))?;
            }
            _ => return Err(parse(lineno, "expected '1<TAB>word<TAB>count' or '2<TAB>w1<TAB>w2<TAB>count'")),
        }
    }
    Ok(CorpusCounts::from_parts(
        unigrams,
        bigrams,
        total_tokens,
        total_bigrams,
    )?)
}

pub fn load_counts(path: impl AsRef<Path>) -> Result<CorpusCounts, CountsIoError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| CountsIoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_counts(BufReader::new(file))
}
