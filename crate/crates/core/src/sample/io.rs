use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Sample, SampleError};
use crate::formula::{Symbol, SymbolError, Word};

#[derive(Debug, Error)]
pub enum SampleIoError {
    #[error("cannot read or write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed sample JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Text { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] SampleError),
}

#[derive(Serialize, Deserialize)]
struct RawSample {
    alphabet: Vec<Symbol>,
    positive: Vec<Word>,
    negative: Vec<Word>,
}

/// Reads a sample in JSON or in the line-based text format, chosen by the
/// first non-blank character (`{` means JSON).
pub fn load_sample(path: impl AsRef<Path>) -> Result<Sample, SampleIoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| SampleIoError::Io { path: path.display().to_string(), source })?;
    if text.trim_start().starts_with('{') {
        let raw: RawSample = serde_json::from_str(&text)?;
        Ok(Sample::new(raw.alphabet, raw.positive, raw.negative)?)
    } else {
        parse_sample_text(&text)
    }
}

/// Writes the JSON format.
pub fn save_sample(sample: &Sample, path: impl AsRef<Path>) -> Result<(), SampleIoError> {
    let path = path.as_ref();
    let json = serde_json::to_string_pretty(sample)?;
    fs::write(path, json + "\n").map_err(|source| SampleIoError::Io { path: path.display().to_string(), source })
}

/// Text format: an optional `alphabet: a b c` line, then words (letters
/// separated by spaces) under `+` and `-` section lines. `#` starts a
/// comment. Without an alphabet line the alphabet is the set of letters used.
///
/// ```text
/// alphabet: a b
/// +
/// a b
/// a
/// -
/// b a
/// ```
pub fn parse_sample_text(text: &str) -> Result<Sample, SampleIoError> {
    let mut alphabet: Option<Vec<Symbol>> = None;
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    let mut section: Option<bool> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |e: SymbolError| SampleIoError::Text { line: line_no, message: e.to_string() };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabet:") {
            let letters = rest.split_whitespace().map(Symbol::new).collect::<Result<Vec<_>, _>>().map_err(err)?;
            alphabet = Some(letters);
            continue;
        }
        match line {
            "+" => section = Some(true),
            "-" => section = Some(false),
            _ => {
                let w = Word::from_tokens(line).map_err(err)?;
                match section {
                    Some(true) => positive.push(w),
                    Some(false) => negative.push(w),
                    None => {
                        return Err(SampleIoError::Text {
                            line: line_no,
                            message: "word before any '+' or '-' section".into(),
                        })
                    }
                }
            }
        }
    }
    Ok(match alphabet {
        Some(a) => Sample::new(a, positive, negative)?,
        None => Sample::from_words(positive, negative)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.json");
        let s = Sample::from_strs(&["ab", "a"], &["ba"]);
        save_sample(&s, &path).unwrap();
        assert_eq!(load_sample(&path).unwrap(), s);
    }

    #[test]
    fn json_layout() {
        let s: RawSample =
            serde_json::from_str(r#"{"alphabet": ["a","b"], "positive": [["a","b"],["a"]], "negative": [["b","a"]]}"#)
                .unwrap();
        let s = Sample::new(s.alphabet, s.positive, s.negative).unwrap();
        assert_eq!(s, Sample::from_strs(&["ab", "a"], &["ba"]));
    }

    #[test]
    fn foreign_letter_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.json");
        fs::write(&path, r#"{"alphabet": ["a"], "positive": [["a","b"]], "negative": []}"#).unwrap();
        assert!(matches!(load_sample(&path), Err(SampleIoError::Invalid(SampleError::ForeignLetter { .. }))));
    }

    #[test]
    fn text_format() {
        let s = parse_sample_text("# demo\nalphabet: a b c\n+\na b\n-\nb a  # trailing\n").unwrap();
        assert_eq!(s.alphabet().len(), 3);
        assert_eq!(s.positive(), &[Word::from_chars("ab")]);
        assert_eq!(s.negative(), &[Word::from_chars("ba")]);
        assert!(parse_sample_text("a b\n").is_err());
        assert!(parse_sample_text("+\na\n-\na\n").is_err());
    }

    #[test]
    fn empty_positive_list_is_valid() {
        let s = parse_sample_text("alphabet: a\n-\na\n").unwrap();
        assert!(s.positive().is_empty());
    }
}
