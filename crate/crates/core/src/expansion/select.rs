use std::collections::HashSet;

use super::scoring::{bo1_score, cc_coefficient, kld_score};
use super::{candidate_order, Candidate, CandidateList, Coefficient, CooccurrenceScope, Divergence, ExpansionConfig, ExpansionError, Method, TopSet};
use crate::index::InvertedIndex;
use crate::retrieval::WeightedQuery;
use crate::scalar::Real;

/// Source of document counts for cooccurrence coefficients.
pub trait CooccurrenceCounts {
    /// Documents containing `term`.
    fn count(&self, term: &str) -> u64;
    /// Documents containing both terms.
    fn joint(&self, a: &str, b: &str) -> u64;
}

impl CooccurrenceCounts for TopSet {
    fn count(&self, term: &str) -> u64 {
        u64::from(self.doc_count(term))
    }

    fn joint(&self, a: &str, b: &str) -> u64 {
        u64::from(self.pair_doc_count(a, b))
    }
}

/// Counts over the whole collection (df and posting-list intersections).
pub struct CollectionCounts<'a>(pub &'a InvertedIndex);

impl CooccurrenceCounts for CollectionCounts<'_> {
    fn count(&self, term: &str) -> u64 {
        u64::from(self.0.term_stats(term).df)
    }

    fn joint(&self, a: &str, b: &str) -> u64 {
        let (Some(a), Some(b)) = (self.0.term_id(a), self.0.term_id(b)) else {
            return 0;
        };
        let (mut x, mut y) = (self.0.postings(a).iter().peekable(), self.0.postings(b).iter().peekable());
        let mut n = 0;
        while let (Some(p), Some(q)) = (x.peek(), y.peek()) {
            match p.doc.cmp(&q.doc) {
                std::cmp::Ordering::Less => {
                    x.next();
                }
                std::cmp::Ordering::Greater => {
                    y.next();
                }
                std::cmp::Ordering::Equal => {
                    n += 1;
                    x.next();
                    y.next();
                }
            }
        }
        n
    }
}

/// `rel(q, e) = Σ q_i · CC(t_i, e)` over the original query terms, with
/// counts taken from the feedback documents.
pub fn rel_score<T: Real>(query: &WeightedQuery<T>, candidate: &str, topset: &TopSet, kind: Coefficient) -> Result<T, ExpansionError> {
    rel_score_with(query, candidate, topset, kind)
}

/// [`rel_score`] over an arbitrary count source. Query terms that never
/// occur in the source contribute nothing.
pub fn rel_score_with<T: Real, C: CooccurrenceCounts + ?Sized>(
    query: &WeightedQuery<T>,
    candidate: &str,
    counts: &C,
    kind: Coefficient,
) -> Result<T, ExpansionError> {
    let c_e = counts.count(candidate);
    if c_e == 0 {
        return Ok(T::zero());
    }
    let mut rel = T::zero();
    for qt in query.original_terms() {
        let c_i = counts.count(&qt.term);
        if c_i == 0 {
            continue;
        }
        let c_ie = counts.joint(&qt.term, candidate);
        rel += qt.weight * cc_coefficient::<T>(kind, c_i, c_e, c_ie)?;
    }
    Ok(rel)
}

/// Scores every feedback-set term that is not already in the query with a
/// single (non-combined) method and keeps the best `limit`.
pub fn select_candidates<T: Real>(
    query: &WeightedQuery<T>,
    topset: &TopSet,
    index: &InvertedIndex,
    method: Method,
    limit: usize,
    scope: CooccurrenceScope,
) -> Result<CandidateList<T>, ExpansionError> {
    let collection = CollectionCounts(index);
    let counts: &dyn CooccurrenceCounts = match scope {
        CooccurrenceScope::TopSet => topset,
        CooccurrenceScope::Collection => &collection,
    };
    let total_r = T::of_count(topset.total_tokens);
    let total_c = T::of_count(index.total_tokens());

    let mut entries = Vec::new();
    for (term, top) in topset.terms() {
        if query.contains(term) {
            continue;
        }
        let score = match method {
            Method::Cooccurrence(kind) => rel_score_with(query, term, counts, kind)?,
            Method::Kld => {
                let p_r = T::of_count(top.tf_sum) / total_r;
                let p_c = T::of_count(index.stats_of(top.id).cf) / total_c;
                kld_score(p_r, p_c)
            }
            Method::Bo1 => bo1_score(top.tf_sum, index.stats_of(top.id).cf, index.n_docs()),
            Method::Combined(..) => {
                return Err(ExpansionError::InvalidConfig(
                    "combined methods select through combine_candidates".into(),
                ))
            }
        };
        entries.push(Candidate {
            term: term.clone(),
            score,
        });
    }
    entries.sort_unstable_by(candidate_order);
    entries.truncate(limit);
    Ok(CandidateList {
        topic_id: topset.topic_id.clone(),
        method,
        entries,
        r_docs: topset.r_docs(),
        limit,
    })
}

/// Candidate list for a cooccurrence, KLD or Bo1 configuration, truncated to
/// `config.n_terms`.
pub fn extract_candidates<T: Real>(
    query: &WeightedQuery<T>,
    topset: &TopSet,
    index: &InvertedIndex,
    config: &ExpansionConfig<T>,
) -> Result<CandidateList<T>, ExpansionError> {
    select_candidates(query, topset, index, config.method, config.n_terms, config.scope)
}

/// Terms present in both lists, in `cooccurrence`'s order, truncated to
/// `n_terms`.
pub fn combine_candidates<T: Real>(
    cooccurrence: &CandidateList<T>,
    divergence: &CandidateList<T>,
    n_terms: usize,
) -> Result<CandidateList<T>, ExpansionError> {
    if cooccurrence.topic_id != divergence.topic_id {
        return Err(ExpansionError::TopicMismatch(
            cooccurrence.topic_id.clone(),
            divergence.topic_id.clone(),
        ));
    }
    let method = match (cooccurrence.method, divergence.method) {
        (Method::Cooccurrence(c), Method::Kld) => Method::Combined(c, Divergence::Kld),
        (Method::Cooccurrence(c), Method::Bo1) => Method::Combined(c, Divergence::Bo1),
        (a, b) => {
            return Err(ExpansionError::InvalidConfig(format!(
                "cannot combine {a} with {b}; expected a cooccurrence list and a kld or bo1 list"
            )))
        }
    };
    let other: HashSet<&str> = divergence.terms().map(|t| t.as_str()).collect();
    let entries = cooccurrence
        .entries
        .iter()
        .filter(|c| other.contains(c.term.as_str()))
        .take(n_terms)
        .cloned()
        .collect();
    Ok(CandidateList {
        topic_id: cooccurrence.topic_id.clone(),
        method,
        entries,
        r_docs: cooccurrence.r_docs,
        limit: n_terms,
    })
}
