//! Reading corpora from disk: explicit files, or directories scanned
//! recursively for *.txt files.

use std::io;
use std::path::{Path, PathBuf};

use colloc_core::Document;
use thiserror::Error;
use walkdir::WalkDir;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: not valid UTF-8")]
    NotUtf8 { path: PathBuf },
}

fn read_document(path: &Path) -> Result<Document, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|source| match source.kind() {
        io::ErrorKind::InvalidData => IngestError::NotUtf8 {
            path: path.to_path_buf(),
        },
        _ => IngestError::Io {
            path: path.to_path_buf(),
            source,
        },
    })?;
    Ok(Document::new(path.display().to_string(), text))
}

/// Collects documents from the given paths. A file is read as one document
/// whatever its extension; a directory contributes every *.txt file beneath
/// it. Document order is deterministic: inputs in argument order, directory
/// contents sorted by path.
pub fn collect_documents(paths: &[PathBuf]) -> Result<Vec<Document>, IngestError> {
    let mut documents = Vec::new();
    for path in paths {
        let meta = std::fs::metadata(path).map_err(|source| IngestError::Io {
            path: path.clone(),
            source,
        })?;
        if meta.is_dir() {
            let mut files = Vec::new();
            for entry in WalkDir::new(path) {
                let entry = entry.map_err(|e| {
                    let at = e.path().unwrap_or(path).to_path_buf();
                    match e.into_io_error() {
                        Some(source) => IngestError::Io { path: at, source },
                        None => IngestError::Io {
                            path: at,
                            source: io::Error::other("walk error"),
                        },
                    }
                })?;
                if entry.file_type().is_file() && has_txt_extension(entry.path()) {
                    files.push(entry.into_path());
                }
            }
            files.sort();
            for file in files {
                documents.push(read_document(&file)?);
            }
        } else {
            documents.push(read_document(path)?);
        }
    }
    Ok(documents)
}

fn has_txt_extension(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("txt"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn reads_explicit_files_in_argument_order() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.md");
        let b = dir.path().join("b.md");
        fs::write(&a, "alpha").unwrap();
        fs::write(&b, "beta").unwrap();
        let docs = collect_documents(&[b.clone(), a.clone()]).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].text, "beta");
        assert_eq!(docs[1].text, "alpha");
    }

    #[test]
    fn scans_directories_recursively_for_txt_only() {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir(dir.path().join("sub")).unwrap();
        fs::write(dir.path().join("one.txt"), "one").unwrap();
        fs::write(dir.path().join("sub/two.TXT"), "two").unwrap();
        fs::write(dir.path().join("skip.csv"), "skip").unwrap();
        let docs = collect_documents(&[dir.path().to_path_buf()]).unwrap();
        let texts: Vec<&str> = docs.iter().map(|d| d.text.as_str()).collect();
        assert_eq!(texts, vec!["one", "two"]);
    }

    #[test]
    fn empty_directory_yields_no_documents() {
        let dir = tempfile::tempdir().unwrap();
        assert!(collect_documents(&[dir.path().to_path_buf()]).unwrap().is_empty());
    }

    #[test]
    fn missing_path_is_named_in_the_error() {
        let err = collect_documents(&[PathBuf::from("/nonexistent/corpus")]).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/corpus"));
    }

    #[test]
    fn non_utf8_file_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        fs::write(&path, [0xff, 0xfe, 0x00]).unwrap();
        let err = collect_documents(&[path]).unwrap_err();
        assert!(matches!(err, IngestError::NotUtf8 { .. }));
    }
}
