#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use prf_core::{analyze, AnalyzerConfig};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const WORDS: &[&str] = &[
    "river", "bank", "money", "loan", "fish", "water", "stone", "bridge", "market", "trade", "boat", "rate",
];

/// Random small corpus over a fixed vocabulary with skewed word choice.
pub fn random_corpus(rng: &mut ChaCha8Rng, max_docs: usize, max_len: usize) -> Vec<(String, String)> {
    let n = rng.gen_range(1..=max_docs);
    (0..n)
        .map(|i| {
            let len = rng.gen_range(1..=max_len);
            let words: Vec<&str> = (0..len)
                .map(|_| {
                    let a = rng.gen_range(0..WORDS.len());
                    let b = rng.gen_range(0..WORDS.len());
                    WORDS[a.min(b)]
                })
                .collect();
            (format!("doc{i:03}"), words.join(" "))
        })
        .collect()
}

/// Term frequencies of each document, computed straight from the text.
pub fn term_counts(corpus: &[(String, String)], config: &AnalyzerConfig) -> BTreeMap<String, BTreeMap<String, u32>> {
    corpus
        .iter()
        .map(|(id, text)| {
            let mut tf = BTreeMap::new();
            for t in analyze(text, config) {
                *tf.entry(t.into_string()).or_insert(0) += 1;
            }
            (id.clone(), tf)
        })
        .collect()
}

/// Vector-space scores recomputed from raw counts; only positive scores.
pub fn brute_scores(
    docs: &BTreeMap<String, BTreeMap<String, u32>>,
    query: &[(String, f64)],
) -> BTreeMap<String, f64> {
    let n = docs.len() as f64;
    let mut df: BTreeMap<&str, f64> = BTreeMap::new();
    for tf in docs.values() {
        for t in tf.keys() {
            *df.entry(t).or_insert(0.0) += 1.0;
        }
    }
    let idf = |t: &str| (1.0 + n / df[t]).log2();
    let mut out = BTreeMap::new();
    for (id, tf) in docs {
        let norm = tf
            .iter()
            .map(|(t, &f)| ((1.0 + f64::from(f).log2()) * idf(t)).powi(2))
            .sum::<f64>()
            .sqrt();
        let mut dot = 0.0;
        for (t, w) in query {
            if let Some(&f) = tf.get(t) {
                dot += w * (1.0 + f64::from(f).log2()) * idf(t);
            }
        }
        if norm > 0.0 && dot / norm > 0.0 {
            out.insert(id.clone(), dot / norm);
        }
    }
    out
}

pub fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}
