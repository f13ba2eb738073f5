//! CSV serialization of scored and graded bigrams.
//!
//! Scores: header `w1,w2,f1,f2,f12,n,mi,t`, mi and t at 4 decimal places.
//! Graded files append a `grade` column (also 4 decimals).

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use colloc_core::{AssocError, BigramStats, GradedBigram};
use thiserror::Error;

const SCORE_HEADER: [&str; 8] = ["w1", "w2", "f1", "f2", "f12", "n", "mi", "t"];

#[derive(Debug, Error)]
pub enum ScoresIoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("line {line}: {reason}")]
    Parse { line: u64, reason: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: u64,
        #[source]
        source: AssocError,
    },
}

fn io_error(path: &Path) -> impl Fn(io::Error) -> ScoresIoError + '_ {
    move |source| ScoresIoError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_scores(rows: &[BigramStats], w: impl Write) -> Result<(), ScoresIoError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SCORE_HEADER)?;
    for row in rows {
        out.write_record(score_fields(row))?;
    }
    out.flush().map_err(io_error(Path::new("<writer>")))?;
    Ok(())
}

pub fn write_graded(rows: &[GradedBigram], w: impl Write) -> Result<(), ScoresIoError> {
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<&str> = SCORE_HEADER.to_vec();
    header.push("grade");
    out.write_record(&header)?;
    for row in rows {
        let mut fields = score_fields(&row.stats);
        fields.push(format!("{:.4}", row.grade));
        out.write_record(&fields)?;
    }
    out.flush().map_err(io_error(Path::new("<writer>")))?;
    Ok(())
}

fn score_fields(stats: &BigramStats) -> Vec<String> {
    vec![
        stats.w1.clone(),
        stats.w2.clone(),
        stats.f1.to_string(),
        stats.f2.to_string(),
        stats.f12.to_string(),
        stats.n.to_string(),
        format!("{:.4}", stats.mi),
        format!("{:.4}", stats.t),
    ]
}

/// Reads a scores CSV (exactly the 8 score columns).
pub fn read_scores(r: impl Read) -> Result<Vec<BigramStats>, ScoresIoError> {
    let rows = read_scored_any(r)?;
    Ok(rows.into_iter().map(|(stats, _)| stats).collect())
}

/// Reads a graded CSV (the 8 score columns plus `grade`).
pub fn read_graded(r: impl Read) -> Result<Vec<GradedBigram>, ScoresIoError> {
    let rows = read_scored_any(r)?;
    rows.into_iter()
        .map(|(stats, grade)| match grade {
            Some(grade) => Ok(GradedBigram { stats, grade }),
            None => Err(ScoresIoError::Parse {
                line: 1,
                reason: "missing grade column".to_string(),
            }),
        })
        .collect()
}

/// Reads either format; the grade is present when the file carries the
/// optional ninth column.
pub fn read_scored_any(r: impl Read) -> Result<Vec<(BigramStats, Option<f64>)>, ScoresIoError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let header = reader.headers()?.clone();
    let base: Vec<&str> = header.iter().take(8).collect();
    let graded = match (base == SCORE_HEADER, header.len()) {
        (true, 8) => false,
        (true, 9) if &header[8] == "grade" => true,
        _ => {
            return Err(ScoresIoError::Parse {
                line: 1,
                reason: format!(
                    "unexpected header {:?}, want w1,w2,f1,f2,f12,n,mi,t[,grade]",
                    header.iter().collect::<Vec<_>>().join(",")
                ),
            })
        }
    };

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let parse = |reason: String| ScoresIoError::Parse { line, reason };
        if record.len() != header.len() {
            return Err(parse(format!("expected {} fields", header.len())));
        }
        let int = |i: usize, name: &str| -> Result<u64, ScoresIoError> {
            record[i]
                .parse()
                .map_err(|_| parse(format!("{name} is not a non-negative integer")))
        };
        let real = |i: usize, name: &str| -> Result<f64, ScoresIoError> {
            record[i]
                .parse()
                .map_err(|_| parse(format!("{name} is not a number")))
        };
        let stats = BigramStats::from_parts(
            &record[0],
            &record[1],
            int(2, "f1")?,
            int(3, "f2")?,
            int(4, "f12")?,
            int(5, "n")?,
            real(6, "mi")?,
            real(7, "t")?,
        )
        .map_err(|source| ScoresIoError::Invalid { line, source })?;
        let grade = if graded { Some(real(8, "grade")?) } else { None };
        rows.push((stats, grade));
    }
    Ok(rows)
}

pub fn save_scores(rows: &[BigramStats], path: impl AsRef<Path>) -> Result<(), ScoresIoError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(io_error(path))?;
    write_scores(rows, file)
}

pub fn load_scores(path: impl AsRef<Path>) -> Result<Vec<BigramStats>, ScoresIoError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(io_error(path))?;
    read_scores(file)
}

pub fn save_graded(rows: &[GradedBigram], path: impl AsRef<Path>) -> Result<(), ScoresIoError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(io_error(path))?;
    write_graded(rows, file)
}

pub fn load_graded(path: impl AsRef<Path>) -> Result<Vec<GradedBigram>, ScoresIoError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(io_error(path))?;
    read_graded(file)
}

pub fn load_scored_any(
    path: impl AsRef<Path>,
) -> Result<Vec<(BigramStats, Option<f64>)>, ScoresIoError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(io_error(path))?;
    read_scored_any(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<BigramStats> {
        vec![
            BigramStats::compute("christmas", "eve", 72, 33, 9, 1_050_000).unwrap(),
            BigramStats::compute("young", "man", 741, 2138, 147, 1_050_000).unwrap(),
        ]
    }

    #[test]
    fn header_and_formatting() {
        let mut buf = Vec::new();
        write_scores(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("w1,w2,f1,f2,f12,n,mi,t"));
        let first = lines.next().unwrap();
        assert!(first.starts_with("christmas,eve,72,33,9,1050000,"), "{first}");
        // Four decimals on both scores.
        assert_eq!(first.split(',').nth(6).unwrap().split('.').nth(1).unwrap().len(), 4);
    }

    #[test]
    fn read_back_values_are_the_printed_values() {
        let mut buf = Vec::new();
        write_scores(&sample(), &mut buf).unwrap();
        let rows = read_scores(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), 2);
        for (read, orig) in rows.iter().zip(sample()) {
            assert_eq!(read.w1, orig.w1);
            assert_eq!(read.f12, orig.f12);
            assert!((read.mi - orig.mi).abs() <= 5e-5);
            assert!((read.t - orig.t).abs() <= 5e-5);
        }
    }

    #[test]
    fn second_write_is_bit_identical() {
        let mut first = Vec::new();
        write_scores(&sample(), &mut first).unwrap();
        let rows = read_scores(first.as_slice()).unwrap();
        let mut second = Vec::new();
        write_scores(&rows, &mut second).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn graded_roundtrip() {
        let graded: Vec<GradedBigram> = sample()
            .into_iter()
            .zip([0.82, 0.77])
            .map(|(stats, grade)| GradedBigram { stats, grade })
            .collect();
        let mut buf = Vec::new();
        write_graded(&graded, &mut buf).unwrap();
        let rows = read_graded(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].grade, 0.82);
        assert_eq!(rows[1].grade, 0.77);
    }

    #[test]
    fn scores_file_has_no_grade_column() {
        let mut buf = Vec::new();
        write_scores(&sample(), &mut buf).unwrap();
        let err = read_graded(buf.as_slice()).unwrap_err();
        assert!(err.to_string().contains("grade"));
        let any = {
            let mut buf2 = Vec::new();
            write_scores(&sample(), &mut buf2).unwrap();
            read_scored_any(buf2.as_slice()).unwrap()
        };
        assert!(any.iter().all(|(_, g)| g.is_none()));
    }

    #[test]
    fn alien_header_is_rejected() {
        let err = read_scores("a,b,c\n1,2,3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ScoresIoError::Parse { line: 1, .. }));
    }

    #[test]
    fn bad_field_names_its_line() {
        let text = "w1,w2,f1,f2,f12,n,mi,t\na,b,5,5,2,100,1.0,oops\n";
        let err = read_scores(text.as_bytes()).unwrap_err();
        assert!(matches!(err, ScoresIoError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn invalid_frequencies_name_their_line() {
        let text = "w1,w2,f1,f2,f12,n,mi,t\na,b,1,1,5,100,1.0,1.0\n";
        let err = read_scores(text.as_bytes()).unwrap_err();
        assert!(matches!(err, ScoresIoError::Invalid { line: 2, .. }), "{err}");
    }

    #[test]
    fn empty_body_is_fine() {
        let rows = read_scores("w1,w2,f1,f2,f12,n,mi,t\n".as_bytes()).unwrap();
        assert!(rows.is_empty());
    }
}
