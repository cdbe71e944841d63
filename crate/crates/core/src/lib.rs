//! Pseudo-relevance feedback query expansion over a small vector-space
//! retrieval engine.
//!
//! Text analysis ([`textkit`]) feeds an inverted index ([`index`]) that
//! backs ranked retrieval ([`retrieval`]). [`expansion`] mines the top-ranked
//! documents of a first pass for new query terms using cooccurrence
//! coefficients, KLD or Bo1 scores, and [`evalkit`] scores runs against
//! relevance judgments.
//!
//! Scoring code is generic over [`Real`]; the aliases below fix it to `f64`
//! or `f32`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod evalkit;
pub mod expansion;
pub mod index;
pub mod retrieval;
mod scalar;
pub mod textkit;

pub use scalar::Real;

pub use evalkit::{evaluate, parse_qrels, parse_run, write_run, EvalError, EvalReport, Qrels, Run};
pub use expansion::{
    expand_query, extract_candidates, CandidateList, Coefficient, CooccurrenceScope, Divergence, Expansion, ExpansionConfig,
    ExpansionError, Method, Reweighting,
};
pub use index::{build_index, load_index, save_index, IndexError, InvertedIndex};
pub use retrieval::{parse_query, search, Hit, Ranking, RetrievalError, WeightedQuery};
pub use textkit::{analyze, Analyzer, AnalyzerConfig, Language, StemmerKind, Term};

pub type WeightedQueryF64 = WeightedQuery<f64>;
pub type RankingF64 = Ranking<f64>;
pub type RunF64 = Run<f64>;
pub type EvalReportF64 = EvalReport<f64>;
pub type ExpansionConfigF64 = ExpansionConfig<f64>;
pub type CandidateListF64 = CandidateList<f64>;

pub type WeightedQueryF32 = WeightedQuery<f32>;
pub type RankingF32 = Ranking<f32>;
pub type RunF32 = Run<f32>;
pub type EvalReportF32 = EvalReport<f32>;
pub type ExpansionConfigF32 = ExpansionConfig<f32>;
pub type CandidateListF32 = CandidateList<f32>;
