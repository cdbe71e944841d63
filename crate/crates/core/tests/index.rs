mod common;

use common::{random_corpus, term_counts};
use prf_core::index::{load_index, load_index_for, save_index, IndexError};
use prf_core::textkit::Language;
use prf_core::{build_index, AnalyzerConfig, InvertedIndex, StemmerKind};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn triples(index: &InvertedIndex) -> Vec<(String, String, u32)> {
    index.triples().map(|(t, d, tf)| (t.to_string(), d.to_string(), tf)).collect()
}

#[test]
fn statistics_add_up() {
    let config = AnalyzerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let corpus = random_corpus(&mut rng, 20, 15);
        let index = build_index(corpus.clone(), &config).unwrap();
        let counts = term_counts(&corpus, &config);
        let stats = index.stats();
        let df_sum: u64 = stats.terms.iter().map(|s| u64::from(s.df)).sum();
        let distinct: u64 = counts.values().map(|tf| tf.len() as u64).sum();
        assert_eq!(df_sum, distinct);
        let cf_sum: u64 = stats.terms.iter().map(|s| s.cf).sum();
        assert_eq!(cf_sum, index.total_tokens());
        assert_eq!(index.total_tokens(), counts.values().flat_map(|tf| tf.values()).map(|&f| u64::from(f)).sum::<u64>());
        assert_eq!(index.n_docs(), corpus.len() as u64);
        for (term, doc, tf) in index.triples() {
            assert_eq!(counts[doc][term.as_str()], tf);
        }
    }
}

#[test]
fn ingestion_order_does_not_matter() {
    let config = AnalyzerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..50 {
        let corpus = random_corpus(&mut rng, 20, 15);
        let a = build_index(corpus.clone(), &config).unwrap();
        let mut shuffled = corpus;
        shuffled.shuffle(&mut rng);
        let b = build_index(shuffled, &config).unwrap();
        assert_eq!(triples(&a), triples(&b));
        assert_eq!(a.stats(), b.stats());
        assert_eq!(a.fingerprint(), b.fingerprint());
    }
}

#[test]
fn thread_count_does_not_matter() {
    let config = AnalyzerConfig::default().with_stemmer(StemmerKind::Snowball(Language::English));
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let corpus = random_corpus(&mut rng, 20, 40);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
    let a = one.install(|| build_index(corpus.clone(), &config).unwrap());
    let b = many.install(|| build_index(corpus.clone(), &config).unwrap());
    let dir = tempfile::tempdir().unwrap();
    save_index(&a, dir.path().join("a.idx")).unwrap();
    save_index(&b, dir.path().join("b.idx")).unwrap();
    assert_eq!(
        std::fs::read(dir.path().join("a.idx")).unwrap(),
        std::fs::read(dir.path().join("b.idx")).unwrap()
    );
}

#[test]
fn round_trip_on_random_corpora() {
    let config = AnalyzerConfig::default().with_stopwords(["bank"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.idx");
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..30 {
        let index = build_index(random_corpus(&mut rng, 20, 15), &config).unwrap();
        save_index(&index, &path).unwrap();
        let back = load_index(&path).unwrap();
        assert_eq!(triples(&index), triples(&back));
        assert_eq!(index.stats(), back.stats());
        assert_eq!(index.analyzer(), back.analyzer());
        for d in 0..index.n_docs() as u32 {
            assert_eq!(index.doc_norm(d).to_bits(), back.doc_norm(d).to_bits());
        }
        let other = AnalyzerConfig::default();
        assert!(matches!(load_index_for(&path, &other), Err(IndexError::FingerprintMismatch { .. })));
    }
}
