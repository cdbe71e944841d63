//! TREC-style evaluation: qrels and run files, MAP, GMAP, P@X and
//! R-Precision.

mod metrics;
mod report;
mod trec;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::retrieval::{Hit, Ranking};
use crate::scalar::Real;

pub use metrics::{average_precision, evaluate, precision_at, r_precision, GMAP_EPSILON};
pub use report::{format_summary_csv, format_table, format_topics_csv, percent_change};
pub use trec::{format_run, parse_qrels, parse_qrels_str, parse_run, parse_run_str, write_run};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("qrels line {line}: {message}")]
    QrelsFormat { line: usize, message: String },
    #[error("run line {line}: {message}")]
    RunFormat { line: usize, message: String },
    #[error("run line {line}: document `{doc}` listed twice for topic {topic}")]
    DuplicateRunEntry { line: usize, topic: String, doc: String },
    #[error("no topic has relevant documents; nothing to evaluate")]
    NoJudgedTopics,
}

/// Binary relevance judgments. Topics whose judgments are all non-relevant
/// are kept with an empty set so they can be reported as skipped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Qrels {
    pub judgments: BTreeMap<String, BTreeSet<String>>,
}

impl Qrels {
    pub fn relevant(&self, topic: &str) -> Option<&BTreeSet<String>> {
        self.judgments.get(topic)
    }

    pub fn insert(&mut self, topic: &str, doc: &str, relevant: bool) {
        let set = self.judgments.entry(topic.to_string()).or_default();
        if relevant {
            set.insert(doc.to_string());
        }
    }
}

/// Ranked results per topic, each list in rank order.
#[derive(Debug, Clone, PartialEq)]
pub struct Run<T> {
    pub tag: String,
    pub results: BTreeMap<String, Vec<Hit<T>>>,
}

impl<T: Real> Run<T> {
    pub fn new(tag: impl Into<String>) -> Self {
        Run {
            tag: tag.into(),
            results: BTreeMap::new(),
        }
    }

    pub fn from_rankings<I: IntoIterator<Item = Ranking<T>>>(tag: impl Into<String>, rankings: I) -> Self {
        let mut run = Run::new(tag);
        for r in rankings {
            run.results.insert(r.topic_id, r.hits);
        }
        run
    }

    pub fn doc_ids(&self, topic: &str) -> Vec<&str> {
        self.results
            .get(topic)
            .map(|hits| hits.iter().map(|h| h.doc_id.as_str()).collect())
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopicEval<T> {
    pub ap: T,
    pub r_prec: T,
    pub p_at: BTreeMap<usize, T>,
    pub relevant: usize,
    pub retrieved: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate<T> {
    pub map: T,
    pub gmap: T,
    pub r_prec: T,
    pub p_at: BTreeMap<usize, T>,
    pub topics: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport<T> {
    pub p_points: Vec<usize>,
    pub per_topic: BTreeMap<String, TopicEval<T>>,
    pub aggregate: Aggregate<T>,
    /// Topics without relevant documents, or run topics without judgments.
    pub skipped_topics: Vec<String>,
}

impl<T: Real> EvalReport<T> {
    /// `(name, value)` pairs for the aggregate measures in report order.
    pub fn measures(&self) -> Vec<(String, T)> {
        let a = &self.aggregate;
        let mut out = vec![
            ("MAP".to_string(), a.map),
            ("GMAP".to_string(), a.gmap),
            ("R-PREC".to_string(), a.r_prec),
        ];
        for (x, v) in &a.p_at {
            out.push((format!("P@{x}"), *v));
        }
        out
    }
}
