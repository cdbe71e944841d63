//! Seeded synthetic test collection: topics with planted vocabulary, some
//! relevant documents that share no word with the topic title, and
//! Zipf-distributed background text.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2007;
pub const N_DOCS: usize = 200;
pub const N_TOPICS: usize = 10;
const TOPIC_WORDS: usize = 10;
const RELEVANT_PER_TOPIC: usize = 8;
const BACKGROUND_WORDS: usize = 300;
pub const STOPWORDS: &[&str] = &["the", "of", "and", "a", "in", "to", "for", "on", "with", "is"];

pub struct Fixture {
    pub corpus: Vec<(String, String)>,
    pub topics: Vec<(String, String)>,
    /// (topic, doc, relevance)
    pub qrels: Vec<(String, String, u8)>,
}

fn pseudo_word(rng: &mut ChaCha8Rng) -> String {
    const ONSETS: &[&str] = &["b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "tr", "pl"];
    const VOWELS: &[&str] = &["a", "e", "i", "o", "u"];
    let syllables = rng.gen_range(2..=3);
    let mut w = String::new();
    for _ in 0..syllables {
        w.push_str(ONSETS.choose(rng).unwrap());
        w.push_str(VOWELS.choose(rng).unwrap());
    }
    if rng.gen_bool(0.5) {
        w.push(['n', 's', 'r', 'l'][rng.gen_range(0..4)]);
    }
    w
}

fn vocabulary(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let mut seen: BTreeSet<String> = STOPWORDS.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let w = pseudo_word(rng);
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    out
}

fn repeat(words: &mut Vec<String>, word: &str, times: usize) {
    words.extend(std::iter::repeat_n(word.to_string(), times));
}

pub fn generate() -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let vocab = vocabulary(&mut rng, N_TOPICS * TOPIC_WORDS + BACKGROUND_WORDS);
    let (topical, background) = vocab.split_at(N_TOPICS * TOPIC_WORDS);
    let topic_words: Vec<&[String]> = topical.chunks(TOPIC_WORDS).collect();
    let zipf = WeightedIndex::new((1..=background.len()).map(|r| 1.0 / r as f64)).unwrap();

    let mut slots: Vec<usize> = (1..=N_DOCS).collect();
    slots.shuffle(&mut rng);
    let doc_id = |slot: usize| format!("D{slot:03}");

    let mut docs: Vec<(String, Vec<String>)> = Vec::new();
    let mut qrels = Vec::new();
    let fill = |rng: &mut ChaCha8Rng, words: &mut Vec<String>, len: usize| {
        while words.len() < len {
            if rng.gen_bool(0.2) {
                words.push(STOPWORDS.choose(rng).unwrap().to_string());
            } else {
                words.push(background[zipf.sample(rng)].clone());
            }
        }
    };

    let mut next = 0;
    for (t, vocab) in topic_words.iter().enumerate() {
        let topic = format!("{}", 101 + t);
        for r in 0..RELEVANT_PER_TOPIC {
            let mut words = Vec::new();
            // the first few always mention the title; later ones only sometimes
            if r < 3 || rng.gen_bool(0.35) {
                let q = rng.gen_range(0..2);
                repeat(&mut words, &vocab[q], rng.gen_range(1..=3));
                if rng.gen_bool(0.5) {
                    repeat(&mut words, &vocab[1 - q], rng.gen_range(1..=2));
                }
            }
            let mut others: Vec<&String> = vocab[2..].iter().collect();
            others.shuffle(&mut rng);
            for w in others.iter().take(rng.gen_range(4..=7)) {
                repeat(&mut words, w, rng.gen_range(1..=3));
            }
            let len = words.len() + rng.gen_range(30..=60);
            fill(&mut rng, &mut words, len);
            words.shuffle(&mut rng);
            let id = doc_id(slots[next]);
            next += 1;
            qrels.push((topic.clone(), id.clone(), 1));
            docs.push((id, words));
        }
    }
    while next < N_DOCS {
        let mut words = Vec::new();
        let mut judged = None;
        if rng.gen_bool(0.3) {
            let t = rng.gen_range(0..N_TOPICS);
            repeat(&mut words, &topic_words[t][rng.gen_range(0..2)], rng.gen_range(1..=2));
            judged = Some(t);
        }
        if rng.gen_bool(0.15) {
            let t = rng.gen_range(0..N_TOPICS);
            repeat(&mut words, &topic_words[t][rng.gen_range(2..TOPIC_WORDS)], 1);
        }
        let len = words.len() + rng.gen_range(40..=80);
        fill(&mut rng, &mut words, len);
        words.shuffle(&mut rng);
        let id = doc_id(slots[next]);
        next += 1;
        if let Some(t) = judged {
            qrels.push((format!("{}", 101 + t), id.clone(), 0));
        }
        docs.push((id, words));
    }

    let topics = topic_words
        .iter()
        .enumerate()
        .map(|(t, vocab)| (format!("{}", 101 + t), format!("the {} of {}", vocab[0], vocab[1])))
        .collect();
    docs.sort();
    qrels.sort();
    Fixture {
        corpus: docs.into_iter().map(|(id, words)| (id, words.join(" "))).collect(),
        topics,
        qrels,
    }
}

/// File name and contents of every fixture file.
pub fn render(fixture: &Fixture) -> Vec<(&'static str, String)> {
    let mut corpus = String::new();
    for (id, text) in &fixture.corpus {
        writeln!(corpus, "{}", serde_json_line(id, text)).unwrap();
    }
    let mut topics = String::new();
    for (id, title) in &fixture.topics {
        writeln!(topics, "{id}\t{title}").unwrap();
    }
    let mut qrels = String::new();
    for (t, d, r) in &fixture.qrels {
        writeln!(qrels, "{t} 0 {d} {r}").unwrap();
    }
    let stopwords = STOPWORDS.iter().map(|w| format!("{w}\n")).collect();
    let config = "# synthetic fixture; paths are relative to this file\n\
                  corpus = corpus.jsonl\n\
                  topics = topics.tsv\n\
                  qrels = qrels.txt\n\
                  stopwords = stopwords.txt\n"
        .to_string();
    vec![
        ("corpus.jsonl", corpus),
        ("topics.tsv", topics),
        ("qrels.txt", qrels),
        ("stopwords.txt", stopwords),
        ("prf.conf", config),
    ]
}

// ids and texts are plain ASCII words, so no escaping is needed
fn serde_json_line(id: &str, text: &str) -> String {
    format!("{{\"id\": \"{id}\", \"text\": \"{text}\"}}")
}

pub fn write(dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, contents) in render(&generate()) {
        std::fs::write(dir.join(name), contents)?;
    }
    Ok(())
}
