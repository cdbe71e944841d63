use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{EvalError, Qrels, Run};
use crate::retrieval::Hit;
use crate::scalar::Real;

fn read(path: &Path) -> Result<String, EvalError> {
    std::fs::read_to_string(path).map_err(|source| EvalError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

/// Parses `topic iteration docid rel` lines; `rel > 0` means relevant.
pub fn parse_qrels_str(text: &str) -> Result<Qrels, EvalError> {
    let mut qrels = Qrels::default();
    for (i, line) in text.lines().enumerate() {
        if is_skippable(line) {
            continue;
        }
        let err = |message: &str| EvalError::QrelsFormat {
            line: i + 1,
            message: message.to_string(),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [topic, _iteration, doc, rel] = fields[..] else {
            return Err(err("expected `topic 0 docid rel`"));
        };
        let rel: i64 = rel.parse().map_err(|_| err("relevance is not an integer"))?;
        qrels.insert(topic, doc, rel > 0);
    }
    Ok(qrels)
}

pub fn parse_qrels(path: impl AsRef<Path>) -> Result<Qrels, EvalError> {
    parse_qrels_str(&read(path.as_ref())?)
}

/// `topic Q0 docid rank score tag` lines; topics without results are omitted.
pub fn format_run<T: Real>(run: &Run<T>) -> String {
    let mut out = String::new();
    for (topic, hits) in &run.results {
        for (rank, hit) in hits.iter().enumerate() {
            writeln!(out, "{topic} Q0 {} {} {:.6} {}", hit.doc_id, rank + 1, hit.score.as_f64(), run.tag).unwrap();
        }
    }
    out
}

pub fn write_run<T: Real>(run: &Run<T>, path: impl AsRef<Path>) -> Result<(), EvalError> {
    let path = path.as_ref();
    std::fs::write(path, format_run(run)).map_err(|source| EvalError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses a run; each topic's hits are ordered by the rank column.
pub fn parse_run_str<T: Real>(text: &str) -> Result<Run<T>, EvalError> {
    let mut run = Run::new("");
    let mut ranked: std::collections::BTreeMap<String, Vec<(usize, Hit<T>)>> = Default::default();
    let mut seen: HashSet<(String, String)> = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        if is_skippable(line) {
            continue;
        }
        let err = |message: &str| EvalError::RunFormat {
            line: i + 1,
            message: message.to_string(),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [topic, _q0, doc, rank, score, tag] = fields[..] else {
            return Err(err("expected `topic Q0 docid rank score tag`"));
        };
        let rank: usize = rank.parse().map_err(|_| err("rank is not a non-negative integer"))?;
        let score: f64 = score.parse().map_err(|_| err("score is not a number"))?;
        if !score.is_finite() {
            return Err(err("score is not finite"));
        }
        if !seen.insert((topic.to_string(), doc.to_string())) {
            return Err(EvalError::DuplicateRunEntry {
                line: i + 1,
                topic: topic.to_string(),
                doc: doc.to_string(),
            });
        }
        if run.tag.is_empty() {
            run.tag = tag.to_string();
        }
        ranked.entry(topic.to_string()).or_default().push((
            rank,
            Hit {
                doc_id: doc.to_string(),
                score: T::of_f64(score),
            },
        ));
    }
    for (topic, mut hits) in ranked {
        hits.sort_by_key(|(rank, _)| *rank);
        run.results.insert(topic, hits.into_iter().map(|(_, h)| h).collect());
    }
    Ok(run)
}

pub fn parse_run<T: Real>(path: impl AsRef<Path>) -> Result<Run<T>, EvalError> {
    parse_run_str(&read(path.as_ref())?)
}
