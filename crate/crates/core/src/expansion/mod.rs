//! Pseudo-relevance-feedback query expansion.
//!
//! Candidate terms are mined from the R top-ranked documents of a first pass,
//! scored either by cooccurrence with the query terms (Tanimoto, Dice,
//! Cosine) or by how their distribution in the feedback set diverges from the
//! collection (KLD, Bo1). The two families can be intersected, and the
//! selected terms are reweighted (Rocchio-β, SumCC, kld, BoNorm) before the
//! second pass.

mod pipeline;
mod reweight;
mod scoring;
mod select;
mod topset;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::retrieval::RetrievalError;
use crate::scalar::Real;
use crate::textkit::Term;

pub use pipeline::{
    expand_query, format_expanded_query, parse_expanded_query, Expansion, ExpansionNote,
};
pub use reweight::{reweight, reweight_bonorm, reweight_kld, reweight_rocchio, reweight_sumcc};
pub use scoring::{bo1_score, cc_coefficient, kld_score};
pub use select::{
    combine_candidates, extract_candidates, rel_score, rel_score_with, select_candidates,
    CollectionCounts, CooccurrenceCounts,
};
pub use topset::{build_topset, TopSet};

#[derive(Debug, Error)]
pub enum ExpansionError {
    #[error("first-pass ranking for topic {0} is empty; no feedback documents")]
    EmptyRanking(String),
    #[error("ranked document `{0}` is not in the index")]
    UnknownDocument(String),
    #[error("invalid cooccurrence counts c_i={c_i} c_j={c_j} c_ij={c_ij}")]
    InvalidCounts { c_i: u64, c_j: u64, c_ij: u64 },
    #[error("{reweighting} reweighting cannot be applied to {method} candidates")]
    MethodMismatch { reweighting: &'static str, method: Method },
    #[error("{0} reweighting needs positive candidate scores")]
    NonPositiveScores(&'static str),
    #[error("candidate lists belong to different topics ({0} vs {1})")]
    TopicMismatch(String, String),
    #[error("invalid expansion config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Retrieval(#[from] RetrievalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Coefficient {
    #[default]
    Tanimoto,
    Dice,
    Cosine,
}

impl Coefficient {
    pub const ALL: [Coefficient; 3] = [Coefficient::Tanimoto, Coefficient::Dice, Coefficient::Cosine];

    pub fn name(self) -> &'static str {
        match self {
            Coefficient::Tanimoto => "tanimoto",
            Coefficient::Dice => "dice",
            Coefficient::Cosine => "cosine",
        }
    }
}

impl FromStr for Coefficient {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Coefficient::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown coefficient `{s}` (expected tanimoto, dice or cosine)"))
    }
}

/// Distribution-based selector paired with cooccurrence in combined methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Divergence {
    Kld,
    Bo1,
}

/// Candidate selection method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Cooccurrence(Coefficient),
    Kld,
    Bo1,
    /// Intersection of a cooccurrence list and a divergence list, ranked by
    /// the cooccurrence scores.
    Combined(Coefficient, Divergence),
}

impl Method {
    /// Short names used on the command line: `coo`, `kld`, `bo1`, `boco`, `kldco`.
    pub fn name(self) -> &'static str {
        match self {
            Method::Cooccurrence(_) => "coo",
            Method::Kld => "kld",
            Method::Bo1 => "bo1",
            Method::Combined(_, Divergence::Bo1) => "boco",
            Method::Combined(_, Divergence::Kld) => "kldco",
        }
    }

    pub fn parse(name: &str, coefficient: Coefficient) -> Result<Method, String> {
        match name {
            "coo" => Ok(Method::Cooccurrence(coefficient)),
            "kld" => Ok(Method::Kld),
            "bo1" | "bo" => Ok(Method::Bo1),
            "boco" => Ok(Method::Combined(coefficient, Divergence::Bo1)),
            "kldco" => Ok(Method::Combined(coefficient, Divergence::Kld)),
            other => Err(format!("unknown method `{other}` (expected coo, kld, bo1, boco or kldco)")),
        }
    }

    pub fn with_coefficient(self, coefficient: Coefficient) -> Method {
        match self {
            Method::Cooccurrence(_) => Method::Cooccurrence(coefficient),
            Method::Combined(_, d) => Method::Combined(coefficient, d),
            other => other,
        }
    }

    pub fn is_combined(self) -> bool {
        matches!(self, Method::Combined(..))
    }

    /// Number of expansion terms found best for each method family.
    pub fn default_n_terms(self) -> usize {
        match self {
            Method::Cooccurrence(_) => 25,
            Method::Kld | Method::Bo1 => 40,
            Method::Combined(..) => 75,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Cooccurrence(c) => write!(f, "coo({})", c.name()),
            Method::Combined(c, _) => write!(f, "{}({})", self.name(), c.name()),
            _ => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reweighting<T> {
    Rocchio { beta: T },
    SumCc,
    Kld,
    BoNorm,
}

impl<T: Real> Reweighting<T> {
    pub const DEFAULT_BETA: f64 = 0.1;

    pub fn name(&self) -> &'static str {
        match self {
            Reweighting::Rocchio { .. } => "rocchio",
            Reweighting::SumCc => "sumcc",
            Reweighting::Kld => "kld",
            Reweighting::BoNorm => "bonorm",
        }
    }

    pub fn parse(name: &str, beta: T) -> Result<Self, String> {
        match name {
            "rocchio" => Ok(Reweighting::Rocchio { beta }),
            "sumcc" | "sumass" => Ok(Reweighting::SumCc),
            "kld" => Ok(Reweighting::Kld),
            "bonorm" => Ok(Reweighting::BoNorm),
            other => Err(format!("unknown reweighting `{other}` (expected rocchio, sumcc, kld or bonorm)")),
        }
    }

    /// Best-performing scheme per method: the method's own scheme for the
    /// distributional selectors, Rocchio for cooccurrence and combined.
    pub fn default_for(method: Method) -> Self {
        match method {
            Method::Kld => Reweighting::Kld,
            Method::Bo1 => Reweighting::BoNorm,
            Method::Cooccurrence(_) | Method::Combined(..) => Reweighting::Rocchio {
                beta: T::of_f64(Self::DEFAULT_BETA),
            },
        }
    }
}

/// Where cooccurrence document counts are taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CooccurrenceScope {
    /// Counts over the feedback documents only.
    #[default]
    TopSet,
    /// Counts over the whole collection.
    Collection,
}

impl FromStr for CooccurrenceScope {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "topset" | "local" => Ok(CooccurrenceScope::TopSet),
            "collection" | "global" => Ok(CooccurrenceScope::Collection),
            other => Err(format!("unknown cooccurrence scope `{other}` (expected topset or collection)")),
        }
    }
}

impl CooccurrenceScope {
    pub fn name(self) -> &'static str {
        match self {
            CooccurrenceScope::TopSet => "topset",
            CooccurrenceScope::Collection => "collection",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionConfig<T> {
    pub method: Method,
    pub reweighting: Reweighting<T>,
    /// Feedback documents (R).
    pub r_docs: usize,
    /// Expansion terms kept (L).
    pub n_terms: usize,
    /// Per-parent list size before intersection (combined methods only).
    pub base_list_size: usize,
    pub scope: CooccurrenceScope,
}

impl<T: Real> ExpansionConfig<T> {
    pub const DEFAULT_R_DOCS: usize = 10;

    pub fn defaults_for(method: Method) -> Self {
        let n_terms = method.default_n_terms();
        ExpansionConfig {
            method,
            reweighting: Reweighting::default_for(method),
            r_docs: Self::DEFAULT_R_DOCS,
            n_terms,
            base_list_size: 3 * n_terms,
            scope: CooccurrenceScope::TopSet,
        }
    }

    pub fn validate(&self) -> Result<(), ExpansionError> {
        let bad = |m: String| Err(ExpansionError::InvalidConfig(m));
        if let Reweighting::Rocchio { beta } = self.reweighting {
            if !(beta >= T::zero()) || !beta.is_finite() {
                return bad(format!("beta must be a finite value >= 0, got {beta}"));
            }
        }
        let compatible = match self.reweighting {
            Reweighting::Rocchio { .. } => true,
            Reweighting::SumCc => matches!(self.method, Method::Cooccurrence(_)),
            Reweighting::Kld => self.method == Method::Kld,
            Reweighting::BoNorm => self.method == Method::Bo1,
        };
        if !compatible {
            return Err(ExpansionError::MethodMismatch {
                reweighting: self.reweighting.name(),
                method: self.method,
            });
        }
        if self.r_docs == 0 {
            return bad("r_docs must be at least 1".into());
        }
        if self.n_terms == 0 {
            return bad("n_terms must be at least 1".into());
        }
        if self.method.is_combined() && self.base_list_size < self.n_terms {
            return bad(format!(
                "base_list_size ({}) must be at least n_terms ({})",
                self.base_list_size, self.n_terms
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<T> {
    pub term: Term,
    pub score: T,
}

/// Ranked expansion candidates, ordered by score descending then term.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateList<T> {
    pub topic_id: String,
    pub method: Method,
    pub entries: Vec<Candidate<T>>,
    /// Feedback documents actually used.
    pub r_docs: usize,
    /// Requested list length.
    pub limit: usize,
}

impl<T: Real> CandidateList<T> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> + '_ {
        self.entries.iter().map(|c| &c.term)
    }

    pub fn score_of(&self, term: &str) -> Option<T> {
        self.entries.iter().find(|c| c.term.as_str() == term).map(|c| c.score)
    }
}

pub(crate) fn candidate_order<T: Real>(a: &Candidate<T>, b: &Candidate<T>) -> std::cmp::Ordering {
    b.score
        .partial_cmp(&a.score)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then_with(|| a.term.cmp(&b.term))
}
