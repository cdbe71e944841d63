//! Inverted index with the collection statistics used by retrieval and
//! expansion scoring.
//!
//! Documents are numbered in ascending `doc_id` order and terms in ascending
//! lexicographic order when the index is committed, so the committed content
//! does not depend on the order in which the corpus was read.

mod corpus;
mod persist;

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::textkit::{Analyzer, AnalyzerConfig, Fingerprint, Term};

pub use corpus::{read_corpus, read_jsonl, read_txt_dir, CorpusFormat};
pub use persist::{load_index, load_index_for, save_index, FORMAT_VERSION, MAGIC};

/// Dense document number; equals the rank of the doc_id in sorted order.
pub type DocNum = u32;
/// Dense term number; equals the rank of the term in sorted order.
pub type TermId = u32;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("duplicate doc_id `{0}`")]
    DuplicateDocId(String),
    #[error("{path}: not found")]
    NotFound { path: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    CorpusFormat {
        path: String,
        line: usize,
        message: String,
    },
    #[error("not an index file (bad magic bytes)")]
    BadMagic,
    #[error("index format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("index checksum mismatch: file is corrupted")]
    ChecksumMismatch,
    #[error("index was built with analyzer {found}, but analyzer {expected} was requested")]
    FingerprintMismatch {
        expected: Fingerprint,
        found: Fingerprint,
    },
    #[error("malformed index: {0}")]
    Corrupt(String),
}

impl IndexError {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        let path = path.display().to_string();
        if source.kind() == std::io::ErrorKind::NotFound {
            IndexError::NotFound { path }
        } else {
            IndexError::Io { path, source }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Posting {
    pub doc: DocNum,
    pub tf: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocRecord {
    pub doc_id: String,
    /// (term, tf) pairs sorted by term id; every tf is at least 1.
    pub terms: Vec<(TermId, u32)>,
    /// Number of analyzed tokens; equals the sum of the tfs.
    pub length: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TermStats {
    pub df: u32,
    pub cf: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionStats {
    pub n_docs: u64,
    pub total_tokens: u64,
    /// Indexed by [`TermId`].
    pub terms: Vec<TermStats>,
}

#[derive(Debug, Clone)]
pub struct InvertedIndex {
    analyzer: AnalyzerConfig,
    fingerprint: Fingerprint,
    vocab: Vec<Term>,
    lookup: HashMap<Term, TermId>,
    postings: Vec<Vec<Posting>>,
    docs: Vec<DocRecord>,
    stats: CollectionStats,
    doc_norms: Vec<f64>,
}

/// Document id, term frequencies and token count.
type AnalyzedDoc = (String, Vec<(Term, u32)>, u64);

/// Builds an index from `(doc_id, text)` pairs.
///
/// Analysis runs in parallel; the result is identical for any permutation
/// of the input and any number of worker threads.
pub fn build_index<I>(corpus: I, config: &AnalyzerConfig) -> Result<InvertedIndex, IndexError>
where
    I: IntoIterator<Item = (String, String)>,
{
    let mut raw: Vec<(String, String)> = corpus.into_iter().collect();
    if raw.is_empty() {
        return Err(IndexError::EmptyCorpus);
    }
    raw.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    if let Some(w) = raw.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(IndexError::DuplicateDocId(w[0].0.clone()));
    }

    let analyzer = Analyzer::new(config.clone());
    let analyzed: Vec<AnalyzedDoc> = raw
        .into_par_iter()
        .map(|(id, text)| {
            let tokens = analyzer.analyze(&text);
            let length = tokens.len() as u64;
            let mut counts: HashMap<Term, u32> = HashMap::new();
            for t in tokens {
                *counts.entry(t).or_insert(0) += 1;
            }
            let mut counts: Vec<(Term, u32)> = counts.into_iter().collect();
            counts.sort_unstable();
            (id, counts, length)
        })
        .collect();

    let mut vocab: Vec<Term> = analyzed
        .iter()
        .flat_map(|(_, counts, _)| counts.iter().map(|(t, _)| t.clone()))
        .collect();
    vocab.par_sort_unstable();
    vocab.dedup();
    let lookup: HashMap<Term, TermId> = vocab
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i as TermId))
        .collect();

    let docs: Vec<DocRecord> = analyzed
        .into_iter()
        .map(|(doc_id, counts, length)| DocRecord {
            doc_id,
            // counts are sorted by term, and term ids follow term order
            terms: counts.into_iter().map(|(t, tf)| (lookup[&t], tf)).collect(),
            length,
        })
        .collect();

    Ok(InvertedIndex::from_docs(config.clone(), vocab, docs))
}

impl InvertedIndex {
    /// Commits documents (sorted by doc_id, terms sorted by id) into an index.
    pub(crate) fn from_docs(analyzer: AnalyzerConfig, vocab: Vec<Term>, docs: Vec<DocRecord>) -> Self {
        let mut postings: Vec<Vec<Posting>> = vec![Vec::new(); vocab.len()];
        let mut terms = vec![TermStats::default(); vocab.len()];
        let mut total_tokens = 0u64;
        for (doc, record) in docs.iter().enumerate() {
            total_tokens += record.length;
            for &(t, tf) in &record.terms {
                postings[t as usize].push(Posting {
                    doc: doc as DocNum,
                    tf,
                });
                terms[t as usize].df += 1;
                terms[t as usize].cf += u64::from(tf);
            }
        }
        let stats = CollectionStats {
            n_docs: docs.len() as u64,
            total_tokens,
            terms,
        };
        let lookup = vocab
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as TermId))
            .collect();
        let doc_norms = docs
            .par_iter()
            .map(|d| {
                d.terms
                    .iter()
                    .map(|&(t, tf)| {
                        let w = log_tf(tf) * idf(stats.n_docs, stats.terms[t as usize].df);
                        w * w
                    })
                    .sum::<f64>()
                    .sqrt()
            })
            .collect();
        InvertedIndex {
            fingerprint: analyzer.fingerprint(),
            analyzer,
            vocab,
            lookup,
            postings,
            docs,
            stats,
            doc_norms,
        }
    }

    pub fn analyzer(&self) -> &AnalyzerConfig {
        &self.analyzer
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.fingerprint
    }

    pub fn stats(&self) -> &CollectionStats {
        &self.stats
    }

    pub fn n_docs(&self) -> u64 {
        self.stats.n_docs
    }

    pub fn total_tokens(&self) -> u64 {
        self.stats.total_tokens
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    pub fn vocab(&self) -> &[Term] {
        &self.vocab
    }

    pub fn term_id(&self, term: &str) -> Option<TermId> {
        self.lookup.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.vocab[id as usize]
    }

    /// `(df, cf)` for a term; `(0, 0)` if the term is not indexed.
    pub fn term_stats(&self, term: &str) -> TermStats {
        self.term_id(term)
            .map(|id| self.stats.terms[id as usize])
            .unwrap_or_default()
    }

    pub fn stats_of(&self, id: TermId) -> TermStats {
        self.stats.terms[id as usize]
    }

    pub fn postings(&self, id: TermId) -> &[Posting] {
        &self.postings[id as usize]
    }

    pub fn docs(&self) -> &[DocRecord] {
        &self.docs
    }

    pub fn doc(&self, doc: DocNum) -> &DocRecord {
        &self.docs[doc as usize]
    }

    pub fn doc_num(&self, doc_id: &str) -> Option<DocNum> {
        self.docs
            .binary_search_by(|d| d.doc_id.as_str().cmp(doc_id))
            .ok()
            .map(|i| i as DocNum)
    }

    /// Cosine normalizer of the document's log-tf·idf vector.
    pub fn doc_norm(&self, doc: DocNum) -> f64 {
        self.doc_norms[doc as usize]
    }

    /// Every `(term, doc_id, tf)` triple in term then doc order.
    pub fn triples(&self) -> impl Iterator<Item = (&Term, &str, u32)> + '_ {
        self.postings.iter().enumerate().flat_map(move |(t, list)| {
            list.iter()
                .map(move |p| (&self.vocab[t], self.docs[p.doc as usize].doc_id.as_str(), p.tf))
        })
    }
}

/// `1 + log2(tf)` for `tf >= 1`.
pub(crate) fn log_tf(tf: u32) -> f64 {
    1.0 + f64::from(tf).log2()
}

/// `log2(1 + N/df)`.
pub(crate) fn idf(n_docs: u64, df: u32) -> f64 {
    (1.0 + n_docs as f64 / f64::from(df)).log2()
}
