use std::collections::{BTreeMap, BTreeSet};

use super::{Aggregate, EvalError, EvalReport, Qrels, Run, TopicEval};
use crate::scalar::Real;

/// Floor applied to each AP before taking logs for GMAP.
pub const GMAP_EPSILON: f64 = 1e-5;

/// Mean of the precision values at the rank of each relevant document;
/// relevant documents never retrieved contribute 0.
pub fn average_precision<T: Real, S: AsRef<str>>(hits: &[S], relevant: &BTreeSet<String>) -> T {
    if relevant.is_empty() {
        return T::zero();
    }
    let mut found = 0u64;
    let mut sum = T::zero();
    for (i, doc) in hits.iter().enumerate() {
        if relevant.contains(doc.as_ref()) {
            found += 1;
            sum += T::of_count(found) / T::of_count(i as u64 + 1);
        }
    }
    sum / T::of_count(relevant.len() as u64)
}

/// Relevant documents among the first `x` hits, divided by `x` even when
/// fewer than `x` documents were retrieved.
pub fn precision_at<T: Real, S: AsRef<str>>(hits: &[S], relevant: &BTreeSet<String>, x: usize) -> T {
    if x == 0 {
        return T::zero();
    }
    let found = hits.iter().take(x).filter(|d| relevant.contains(d.as_ref())).count();
    T::of_count(found as u64) / T::of_count(x as u64)
}

/// Precision at rank R = |relevant|.
pub fn r_precision<T: Real, S: AsRef<str>>(hits: &[S], relevant: &BTreeSet<String>) -> T {
    precision_at(hits, relevant, relevant.len())
}

fn mean<T: Real>(values: impl Iterator<Item = T>) -> T {
    let (sum, n) = values.fold((T::zero(), 0u64), |(s, n), v| (s + v, n + 1));
    sum / T::of_count(n)
}

/// Evaluates every judged topic with at least one relevant document. Judged
/// topics missing from the run score 0; run topics without judgments are
/// skipped.
pub fn evaluate<T: Real>(run: &Run<T>, qrels: &Qrels, p_points: &[usize]) -> Result<EvalReport<T>, EvalError> {
    let mut per_topic = BTreeMap::new();
    let mut skipped = BTreeSet::new();
    for (topic, relevant) in &qrels.judgments {
        if relevant.is_empty() {
            skipped.insert(topic.clone());
            continue;
        }
        let hits = run.doc_ids(topic);
        per_topic.insert(
            topic.clone(),
            TopicEval {
                ap: average_precision(&hits, relevant),
                r_prec: r_precision(&hits, relevant),
                p_at: p_points.iter().map(|&x| (x, precision_at(&hits, relevant, x))).collect(),
                relevant: relevant.len(),
                retrieved: hits.len(),
            },
        );
    }
    for topic in run.results.keys() {
        if !qrels.judgments.contains_key(topic) {
            skipped.insert(topic.clone());
        }
    }
    if per_topic.is_empty() {
        return Err(EvalError::NoJudgedTopics);
    }

    let eps = T::of_f64(GMAP_EPSILON);
    let topics: Vec<&TopicEval<T>> = per_topic.values().collect();
    let aggregate = Aggregate {
        map: mean(topics.iter().map(|t| t.ap)),
        gmap: mean(topics.iter().map(|t| t.ap.max(eps).ln())).exp(),
        r_prec: mean(topics.iter().map(|t| t.r_prec)),
        p_at: p_points
            .iter()
            .map(|&x| (x, mean(topics.iter().map(|t| t.p_at[&x]))))
            .collect(),
        topics: topics.len(),
    };
    Ok(EvalReport {
        p_points: p_points.to_vec(),
        per_topic,
        aggregate,
        skipped_topics: skipped.into_iter().collect(),
    })
}
