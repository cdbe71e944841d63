use super::{
    build_topset, combine_candidates, reweight, select_candidates, CandidateList, Divergence, ExpansionConfig, ExpansionError, Method,
};
use crate::index::InvertedIndex;
use crate::retrieval::{search, WeightedQuery};
use crate::scalar::Real;
use crate::textkit::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionNote {
    /// The first pass retrieved nothing; the original query is returned.
    NoFeedbackDocuments,
    /// No candidate survived selection; the query is returned unchanged.
    NoCandidates,
}

#[derive(Debug, Clone)]
pub struct Expansion<T> {
    pub query: WeightedQuery<T>,
    /// Final candidate list (the intersection for combined methods).
    pub candidates: Option<CandidateList<T>>,
    /// Parent lists of a combined method: (cooccurrence, divergence).
    pub base_lists: Option<(CandidateList<T>, CandidateList<T>)>,
    pub note: Option<ExpansionNote>,
}

/// First pass with `k = r_docs`, feedback statistics, candidate selection
/// (two selections and an intersection for combined methods), reweighting.
pub fn expand_query<T: Real>(
    index: &InvertedIndex,
    query: &WeightedQuery<T>,
    config: &ExpansionConfig<T>,
) -> Result<Expansion<T>, ExpansionError> {
    config.validate()?;
    let first = search(index, query, config.r_docs)?;
    if first.is_empty() {
        return Ok(Expansion {
            query: query.clone(),
            candidates: None,
            base_lists: None,
            note: Some(ExpansionNote::NoFeedbackDocuments),
        });
    }
    let topset = build_topset(index, &first, config.r_docs)?;

    let (candidates, base_lists) = match config.method {
        Method::Combined(coefficient, divergence) => {
            let size = config.base_list_size;
            let coo = select_candidates(query, &topset, index, Method::Cooccurrence(coefficient), size, config.scope)?;
            let other = match divergence {
                Divergence::Kld => Method::Kld,
                Divergence::Bo1 => Method::Bo1,
            };
            let div = select_candidates(query, &topset, index, other, size, config.scope)?;
            (combine_candidates(&coo, &div, config.n_terms)?, Some((coo, div)))
        }
        method => (
            select_candidates(query, &topset, index, method, config.n_terms, config.scope)?,
            None,
        ),
    };

    let note = candidates.is_empty().then_some(ExpansionNote::NoCandidates);
    let expanded = reweight(query, &candidates, config.reweighting)?;
    Ok(Expansion {
        query: expanded,
        candidates: Some(candidates),
        base_lists,
        note,
    })
}

/// `topic_id<TAB>term:weight<TAB>...` with six-decimal weights.
pub fn format_expanded_query<T: Real>(query: &WeightedQuery<T>) -> String {
    let mut line = query.topic_id.clone();
    for qt in query.terms() {
        line.push('\t');
        line.push_str(&format!("{}:{:.6}", qt.term, qt.weight.as_f64()));
    }
    line
}

pub fn parse_expanded_query(line: &str) -> Result<(String, Vec<(Term, f64)>), String> {
    let mut fields = line.split('\t');
    let topic = fields.next().filter(|t| !t.is_empty()).ok_or("missing topic id")?;
    let mut terms = Vec::new();
    for field in fields {
        let (term, weight) = field.rsplit_once(':').ok_or_else(|| format!("expected term:weight, got `{field}`"))?;
        let term = Term::new(term).map_err(|e| e.to_string())?;
        let weight: f64 = weight.parse().map_err(|_| format!("bad weight in `{field}`"))?;
        terms.push((term, weight));
    }
    Ok((topic.to_string(), terms))
}
