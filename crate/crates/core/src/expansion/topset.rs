use std::collections::BTreeMap;

use super::ExpansionError;
use crate::index::{DocNum, InvertedIndex, TermId};
use crate::retrieval::Ranking;
use crate::scalar::Real;
use crate::textkit::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopTerm {
    pub id: TermId,
    /// Feedback documents containing the term.
    pub doc_count: u32,
    /// Occurrences summed over the feedback documents.
    pub tf_sum: u64,
}

/// Term statistics of the R top-ranked feedback documents.
#[derive(Debug, Clone, PartialEq)]
pub struct TopSet {
    pub topic_id: String,
    pub doc_ids: Vec<String>,
    docs: Vec<DocNum>,
    /// Sorted term ids of each feedback document.
    doc_terms: Vec<Vec<TermId>>,
    terms: BTreeMap<Term, TopTerm>,
    pub total_tokens: u64,
}

/// Collects feedback statistics from the first `min(r_docs, |ranking|)` hits.
pub fn build_topset<T: Real>(index: &InvertedIndex, ranking: &Ranking<T>, r_docs: usize) -> Result<TopSet, ExpansionError> {
    if ranking.is_empty() || r_docs == 0 {
        return Err(ExpansionError::EmptyRanking(ranking.topic_id.clone()));
    }
    let mut set = TopSet {
        topic_id: ranking.topic_id.clone(),
        doc_ids: Vec::new(),
        docs: Vec::new(),
        doc_terms: Vec::new(),
        terms: BTreeMap::new(),
        total_tokens: 0,
    };
    for hit in ranking.hits.iter().take(r_docs) {
        let doc = index
            .doc_num(&hit.doc_id)
            .ok_or_else(|| ExpansionError::UnknownDocument(hit.doc_id.clone()))?;
        let record = index.doc(doc);
        for &(id, tf) in &record.terms {
            let entry = set.terms.entry(index.term(id).clone()).or_insert(TopTerm {
                id,
                doc_count: 0,
                tf_sum: 0,
            });
            entry.doc_count += 1;
            entry.tf_sum += u64::from(tf);
        }
        set.total_tokens += record.length;
        set.doc_ids.push(hit.doc_id.clone());
        set.docs.push(doc);
        set.doc_terms.push(record.terms.iter().map(|&(id, _)| id).collect());
    }
    Ok(set)
}

impl TopSet {
    /// Number of feedback documents actually used (R).
    pub fn r_docs(&self) -> usize {
        self.docs.len()
    }

    pub fn docs(&self) -> &[DocNum] {
        &self.docs
    }

    /// Terms occurring in the feedback documents, in term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Term, &TopTerm)> + '_ {
        self.terms.iter()
    }

    pub fn get(&self, term: &str) -> Option<&TopTerm> {
        self.terms.get(term)
    }

    pub fn doc_count(&self, term: &str) -> u32 {
        self.get(term).map_or(0, |t| t.doc_count)
    }

    pub fn tf_sum(&self, term: &str) -> u64 {
        self.get(term).map_or(0, |t| t.tf_sum)
    }

    /// Feedback documents containing both terms.
    pub fn pair_doc_count(&self, a: &str, b: &str) -> u32 {
        match (self.get(a), self.get(b)) {
            (Some(a), Some(b)) => self.pair_doc_count_ids(a.id, b.id),
            _ => 0,
        }
    }

    pub(crate) fn pair_doc_count_ids(&self, a: TermId, b: TermId) -> u32 {
        self.doc_terms
            .iter()
            .filter(|terms| terms.binary_search(&a).is_ok() && terms.binary_search(&b).is_ok())
            .count() as u32
    }
}
