//! Final query weights for original and expansion terms.
//!
//! Every scheme keeps the original terms first (in query order) followed by
//! the expansion terms in candidate order. An empty candidate list leaves the
//! query unchanged apart from its origin tag.

use super::{CandidateList, ExpansionError, Method, Reweighting};
use crate::retrieval::{Origin, QueryTerm, WeightedQuery};
use crate::scalar::Real;

fn unchanged<T: Real>(query: &WeightedQuery<T>, method: Method) -> WeightedQuery<T> {
    let mut out = query.clone();
    out.origin = Origin::Expanded(method);
    out
}

fn assemble<T: Real>(
    query: &WeightedQuery<T>,
    candidates: &CandidateList<T>,
    original: impl Fn(&QueryTerm<T>) -> T,
    expansion: impl Fn(T) -> T,
) -> Result<WeightedQuery<T>, ExpansionError> {
    let mut terms: Vec<QueryTerm<T>> = query
        .terms()
        .iter()
        .map(|qt| QueryTerm {
            term: qt.term.clone(),
            weight: original(qt),
            qtf: qt.qtf,
        })
        .collect();
    for c in &candidates.entries {
        if query.contains(&c.term) {
            continue;
        }
        terms.push(QueryTerm {
            term: c.term.clone(),
            weight: expansion(c.score),
            qtf: 0,
        });
    }
    Ok(WeightedQuery::new(
        query.topic_id.clone(),
        terms,
        Origin::Expanded(candidates.method),
    )?)
}

/// Rocchio-β: `qtw = qtf / qtf_max + β · w(t) / w_max`, where `w` is the
/// candidate score (0 for terms outside the list). Negative candidate scores
/// are floored at 0.
pub fn reweight_rocchio<T: Real>(query: &WeightedQuery<T>, candidates: &CandidateList<T>, beta: T) -> Result<WeightedQuery<T>, ExpansionError> {
    if candidates.is_empty() {
        return Ok(unchanged(query, candidates.method));
    }
    let w_max = candidates
        .entries
        .iter()
        .map(|c| c.score)
        .fold(T::neg_infinity(), T::max);
    if !(w_max > T::zero()) {
        return Err(ExpansionError::NonPositiveScores("rocchio"));
    }
    let qtf_max = T::of_count(u64::from(query.qtf_max().max(1)));
    let feedback = |w: T| (beta * w / w_max).max(T::zero());
    assemble(
        query,
        candidates,
        |qt| {
            let w = candidates.score_of(&qt.term).unwrap_or_else(T::zero);
            T::of_count(u64::from(qt.qtf)) / qtf_max + feedback(w)
        },
        feedback,
    )
}

/// SumCC: expansion weight `rel(q, e) / Σ q_i`; original weights kept.
pub fn reweight_sumcc<T: Real>(query: &WeightedQuery<T>, candidates: &CandidateList<T>) -> Result<WeightedQuery<T>, ExpansionError> {
    if !matches!(candidates.method, Method::Cooccurrence(_)) {
        return Err(ExpansionError::MethodMismatch {
            reweighting: "sumcc",
            method: candidates.method,
        });
    }
    if candidates.is_empty() {
        return Ok(unchanged(query, candidates.method));
    }
    let total: T = query.original_terms().map(|qt| qt.weight).sum();
    if !(total > T::zero()) {
        return Err(ExpansionError::NonPositiveScores("sumcc"));
    }
    assemble(query, candidates, |qt| qt.weight, |rel| (rel / total).max(T::zero()))
}

/// kld: expansion weight is the KLD score floored at 0; original weights kept.
pub fn reweight_kld<T: Real>(query: &WeightedQuery<T>, candidates: &CandidateList<T>) -> Result<WeightedQuery<T>, ExpansionError> {
    if candidates.method != Method::Kld {
        return Err(ExpansionError::MethodMismatch {
            reweighting: "kld",
            method: candidates.method,
        });
    }
    if candidates.is_empty() {
        return Ok(unchanged(query, candidates.method));
    }
    assemble(query, candidates, |qt| qt.weight, |kld| kld.max(T::zero()))
}

/// BoNorm: expansion weight `Bo(t) / Σ Bo` over the list; original weights kept.
pub fn reweight_bonorm<T: Real>(query: &WeightedQuery<T>, candidates: &CandidateList<T>) -> Result<WeightedQuery<T>, ExpansionError> {
    if candidates.method != Method::Bo1 {
        return Err(ExpansionError::MethodMismatch {
            reweighting: "bonorm",
            method: candidates.method,
        });
    }
    if candidates.is_empty() {
        return Ok(unchanged(query, candidates.method));
    }
    if candidates.entries.iter().any(|c| !(c.score > T::zero())) {
        return Err(ExpansionError::NonPositiveScores("bonorm"));
    }
    let total: T = candidates.entries.iter().map(|c| c.score).sum();
    assemble(query, candidates, |qt| qt.weight, |bo| bo / total)
}

pub fn reweight<T: Real>(query: &WeightedQuery<T>, candidates: &CandidateList<T>, scheme: Reweighting<T>) -> Result<WeightedQuery<T>, ExpansionError> {
    match scheme {
        Reweighting::Rocchio { beta } => reweight_rocchio(query, candidates, beta),
        Reweighting::SumCc => reweight_sumcc(query, candidates),
        Reweighting::Kld => reweight_kld(query, candidates),
        Reweighting::BoNorm => reweight_bonorm(query, candidates),
    }
}
