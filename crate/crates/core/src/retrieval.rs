//! Weighted queries and vector-space ranked retrieval.
//!
//! `score(d, q) = Σ w_q(t) · (1 + log2 tf(t,d)) · idf(t) / ‖d‖` with
//! `idf(t) = log2(1 + N/df(t))` and `‖d‖` the Euclidean norm of the
//! document's `(1 + log2 tf) · idf` vector. The query vector is not
//! normalized since that cannot change the order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::expansion::Method;
use crate::index::{DocNum, InvertedIndex};
use crate::scalar::Real;
use crate::textkit::{Analyzer, Term};

#[derive(Debug, Error)]
pub enum RetrievalError {
    #[error("topic {0}: query has no terms after analysis")]
    EmptyQuery(String),
    #[error("retrieval depth must be at least 1")]
    ZeroDepth,
    #[error("topic {topic}: duplicate query term `{term}`")]
    DuplicateTerm { topic: String, term: String },
    #[error("topic {topic}: weight of `{term}` is negative or not finite")]
    InvalidWeight { topic: String, term: String },
    #[error("{path}:{line}: {message}")]
    TopicsFormat {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Original,
    Expanded(Method),
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryTerm<T> {
    pub term: Term,
    pub weight: T,
    /// Frequency in the topic title; 0 for terms added by expansion.
    pub qtf: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedQuery<T> {
    pub topic_id: String,
    terms: Vec<QueryTerm<T>>,
    pub origin: Origin,
}

impl<T: Real> WeightedQuery<T> {
    pub fn new(topic_id: impl Into<String>, terms: Vec<QueryTerm<T>>, origin: Origin) -> Result<Self, RetrievalError> {
        let topic_id = topic_id.into();
        if terms.is_empty() {
            return Err(RetrievalError::EmptyQuery(topic_id));
        }
        let mut seen = std::collections::HashSet::new();
        for qt in &terms {
            if !seen.insert(qt.term.as_str()) {
                return Err(RetrievalError::DuplicateTerm {
                    topic: topic_id,
                    term: qt.term.to_string(),
                });
            }
            if !(qt.weight >= T::zero()) || !qt.weight.is_finite() {
                return Err(RetrievalError::InvalidWeight {
                    topic: topic_id,
                    term: qt.term.to_string(),
                });
            }
        }
        Ok(WeightedQuery { topic_id, terms, origin })
    }

    pub fn terms(&self) -> &[QueryTerm<T>] {
        &self.terms
    }

    /// Terms that came from the topic title (qtf > 0).
    pub fn original_terms(&self) -> impl Iterator<Item = &QueryTerm<T>> + '_ {
        self.terms.iter().filter(|qt| qt.qtf > 0)
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.iter().any(|qt| qt.term.as_str() == term)
    }

    pub fn weight_of(&self, term: &str) -> Option<T> {
        self.terms.iter().find(|qt| qt.term.as_str() == term).map(|qt| qt.weight)
    }

    pub fn qtf_max(&self) -> u32 {
        self.terms.iter().map(|qt| qt.qtf).max().unwrap_or(0)
    }

    /// Copy with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        let mut out = self.clone();
        for qt in &mut out.terms {
            qt.weight *= factor;
        }
        out
    }
}

/// Analyzes a topic title into a query weighted by raw term frequency.
pub fn parse_query<T: Real>(topic_id: &str, title: &str, analyzer: &Analyzer) -> Result<WeightedQuery<T>, RetrievalError> {
    let mut order: Vec<Term> = Vec::new();
    let mut counts: HashMap<Term, u32> = HashMap::new();
    for t in analyzer.analyze(title) {
        let c = counts.entry(t.clone()).or_insert(0);
        if *c == 0 {
            order.push(t);
        }
        *c += 1;
    }
    let terms = order
        .into_iter()
        .map(|term| {
            let qtf = counts[&term];
            QueryTerm {
                term,
                weight: T::of_count(u64::from(qtf)),
                qtf,
            }
        })
        .collect();
    WeightedQuery::new(topic_id, terms, Origin::Original)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hit<T> {
    pub doc_id: String,
    pub score: T,
}

/// Hits in descending score order, ties by ascending doc_id.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking<T> {
    pub topic_id: String,
    pub hits: Vec<Hit<T>>,
}

impl<T: Real> Ranking<T> {
    pub fn len(&self) -> usize {
        self.hits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hits.is_empty()
    }

    pub fn doc_ids(&self) -> impl Iterator<Item = &str> + '_ {
        self.hits.iter().map(|h| h.doc_id.as_str())
    }
}

fn rank_order<T: Real>(a: &(DocNum, T), b: &(DocNum, T)) -> Ordering {
    b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then(a.0.cmp(&b.0))
}

/// Ranks documents for `query`, returning at most `k` hits with positive score.
pub fn search<T: Real>(index: &InvertedIndex, query: &WeightedQuery<T>, k: usize) -> Result<Ranking<T>, RetrievalError> {
    if k == 0 {
        return Err(RetrievalError::ZeroDepth);
    }
    if query.terms.is_empty() {
        return Err(RetrievalError::EmptyQuery(query.topic_id.clone()));
    }
    let n_docs = T::of_count(index.n_docs());
    let mut acc: HashMap<DocNum, T> = HashMap::new();
    for qt in &query.terms {
        if qt.weight <= T::zero() {
            continue;
        }
        let Some(id) = index.term_id(&qt.term) else {
            continue;
        };
        let df = T::of_count(u64::from(index.stats_of(id).df));
        let idf = (T::one() + n_docs / df).log2();
        for p in index.postings(id) {
            let tf = T::one() + T::of_count(u64::from(p.tf)).log2();
            *acc.entry(p.doc).or_insert_with(T::zero) += qt.weight * tf * idf;
        }
    }

    let mut scored: Vec<(DocNum, T)> = acc
        .into_iter()
        .map(|(doc, dot)| (doc, dot / T::of_f64(index.doc_norm(doc))))
        .filter(|(_, s)| *s > T::zero())
        .collect();
    if scored.len() > k {
        scored.select_nth_unstable_by(k - 1, rank_order);
        scored.truncate(k);
    }
    scored.sort_unstable_by(rank_order);

    Ok(Ranking {
        topic_id: query.topic_id.clone(),
        hits: scored
            .into_iter()
            .map(|(doc, score)| Hit {
                doc_id: index.doc(doc).doc_id.clone(),
                score,
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topic {
    pub id: String,
    pub title: String,
}

impl fmt::Display for Topic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.id, self.title)
    }
}

/// Parses `topic_id<TAB>title` lines; blank and `#` lines are skipped.
pub fn parse_topics(text: &str, path: &str) -> Result<Vec<Topic>, RetrievalError> {
    let mut topics: Vec<Topic> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| RetrievalError::TopicsFormat {
            path: path.to_string(),
            line: i + 1,
            message: message.to_string(),
        };
        let (id, title) = line.split_once('\t').ok_or_else(|| err("expected `topic_id<TAB>title`"))?;
        let id = id.trim();
        if id.is_empty() {
            return Err(err("empty topic id"));
        }
        if topics.iter().any(|t| t.id == id) {
            return Err(err("duplicate topic id"));
        }
        topics.push(Topic {
            id: id.to_string(),
            title: title.trim().to_string(),
        });
    }
    Ok(topics)
}

pub fn read_topics(path: impl AsRef<Path>) -> Result<Vec<Topic>, RetrievalError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| RetrievalError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_topics(&text, &path.display().to_string())
}
