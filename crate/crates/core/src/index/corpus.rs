//! Corpus readers: JSON lines (`{"id": ..., "text": ...}`) or a directory of
//! `.txt` files named by doc_id.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use super::IndexError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorpusFormat {
    #[default]
    JsonLines,
    TextDir,
}

impl FromStr for CorpusFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" | "json-lines" => Ok(CorpusFormat::JsonLines),
            "txt" | "txtdir" | "dir" => Ok(CorpusFormat::TextDir),
            other => Err(format!("unknown corpus format `{other}` (expected jsonl or txtdir)")),
        }
    }
}

#[derive(Deserialize)]
struct JsonDoc {
    id: serde_json::Value,
    text: String,
}

pub fn read_corpus(path: &Path, format: CorpusFormat) -> Result<Vec<(String, String)>, IndexError> {
    match format {
        CorpusFormat::JsonLines => read_jsonl(path),
        CorpusFormat::TextDir => read_txt_dir(path),
    }
}

pub fn read_jsonl(path: &Path) -> Result<Vec<(String, String)>, IndexError> {
    let text = fs::read_to_string(path).map_err(|e| IndexError::io(path, e))?;
    let mut docs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| IndexError::CorpusFormat {
            path: path.display().to_string(),
            line: i + 1,
            message,
        };
        let doc: JsonDoc = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        let id = match doc.id {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(err(format!("`id` must be a string, got {other}"))),
        };
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(err(format!("invalid doc id {id:?}")));
        }
        docs.push((id, doc.text));
    }
    Ok(docs)
}

pub fn read_txt_dir(path: &Path) -> Result<Vec<(String, String)>, IndexError> {
    let entries = fs::read_dir(path).map_err(|e| IndexError::io(path, e))?;
    let mut docs = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| IndexError::io(path, e))?;
        let file = entry.path();
        if file.extension().and_then(|e| e.to_str()) != Some("txt") || !file.is_file() {
            continue;
        }
        let Some(id) = file.file_stem().and_then(|s| s.to_str()) else {
            continue;
        };
        let text = fs::read_to_string(&file).map_err(|e| IndexError::io(&file, e))?;
        docs.push((id.to_string(), text));
    }
    docs.sort();
    Ok(docs)
}
