//! Single-file index format.
//!
//! ```text
//! magic      8 bytes  "PRFINDEX"
//! version    u32
//! fingerprint u64     analyzer fingerprint
//! analyzer   str      canonical analyzer config
//! n_docs     u64
//! total      u64
//! n_terms    u32
//! docs       n_docs × (str doc_id, u64 length)
//! terms      n_terms × (str term, u32 df, u64 cf, df × (u32 doc, u32 tf))
//! checksum   32 bytes SHA-256 of everything above
//! ```
//!
//! Integers are little endian; `str` is a u32 byte length followed by UTF-8.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::{DocNum, DocRecord, IndexError, InvertedIndex, TermId};
use crate::textkit::{AnalyzerConfig, Fingerprint, Term};

pub const MAGIC: &[u8; 8] = b"PRFINDEX";
pub const FORMAT_VERSION: u32 = 1;
const CHECKSUM_LEN: usize = 32;

struct Writer(Vec<u8>);

impl Writer {
    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn str(&mut self, s: &str) {
        self.u32(s.len() as u32);
        self.0.extend_from_slice(s.as_bytes());
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], IndexError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| IndexError::Corrupt("unexpected end of data".into()))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }
    fn u32(&mut self) -> Result<u32, IndexError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64, IndexError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn str(&mut self) -> Result<&'a str, IndexError> {
        let len = self.u32()? as usize;
        std::str::from_utf8(self.take(len)?).map_err(|_| IndexError::Corrupt("invalid UTF-8".into()))
    }
}

fn encode(index: &InvertedIndex) -> Vec<u8> {
    let mut w = Writer(Vec::new());
    w.0.extend_from_slice(MAGIC);
    w.u32(FORMAT_VERSION);
    w.u64(index.fingerprint.0);
    w.str(&index.analyzer.canonical());
    w.u64(index.stats.n_docs);
    w.u64(index.stats.total_tokens);
    w.u32(index.vocab.len() as u32);
    for d in &index.docs {
        w.str(&d.doc_id);
        w.u64(d.length);
    }
    for (t, term) in index.vocab.iter().enumerate() {
        let stats = index.stats.terms[t];
        w.str(term);
        w.u32(stats.df);
        w.u64(stats.cf);
        for p in &index.postings[t] {
            w.u32(p.doc);
            w.u32(p.tf);
        }
    }
    let checksum = Sha256::digest(&w.0);
    w.0.extend_from_slice(&checksum);
    w.0
}

pub fn save_index(index: &InvertedIndex, path: impl AsRef<Path>) -> Result<(), IndexError> {
    let path = path.as_ref();
    fs::write(path, encode(index)).map_err(|e| IndexError::io(path, e))
}

pub fn load_index(path: impl AsRef<Path>) -> Result<InvertedIndex, IndexError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| IndexError::io(path, e))?;
    decode(&bytes)
}

/// Loads an index and checks it was built with `expected`'s analyzer.
pub fn load_index_for(path: impl AsRef<Path>, expected: &AnalyzerConfig) -> Result<InvertedIndex, IndexError> {
    let index = load_index(path)?;
    let expected = expected.fingerprint();
    if index.fingerprint != expected {
        return Err(IndexError::FingerprintMismatch {
            expected,
            found: index.fingerprint,
        });
    }
    Ok(index)
}

fn decode(bytes: &[u8]) -> Result<InvertedIndex, IndexError> {
    if bytes.len() < MAGIC.len() || &bytes[..MAGIC.len()] != MAGIC {
        return Err(IndexError::BadMagic);
    }
    let mut header = Reader {
        buf: bytes,
        pos: MAGIC.len(),
    };
    let version = header.u32()?;
    if version != FORMAT_VERSION {
        return Err(IndexError::VersionMismatch {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    if bytes.len() < header.pos + CHECKSUM_LEN {
        return Err(IndexError::ChecksumMismatch);
    }
    let (body, checksum) = bytes.split_at(bytes.len() - CHECKSUM_LEN);
    if Sha256::digest(body).as_slice() != checksum {
        return Err(IndexError::ChecksumMismatch);
    }

    let mut r = Reader {
        buf: body,
        pos: header.pos,
    };
    let fingerprint = Fingerprint(r.u64()?);
    let analyzer = AnalyzerConfig::parse_canonical(r.str()?)
        .ok_or_else(|| IndexError::Corrupt("unreadable analyzer config".into()))?;
    if analyzer.fingerprint() != fingerprint {
        return Err(IndexError::Corrupt("analyzer fingerprint does not match its config".into()));
    }
    let n_docs = r.u64()?;
    let total_tokens = r.u64()?;
    let n_terms = r.u32()?;

    let mut docs = Vec::with_capacity(n_docs.min(1 << 24) as usize);
    for _ in 0..n_docs {
        let doc_id = r.str()?.to_string();
        let length = r.u64()?;
        if docs.last().is_some_and(|d: &DocRecord| d.doc_id >= doc_id) {
            return Err(IndexError::Corrupt("doc ids out of order".into()));
        }
        docs.push(DocRecord {
            doc_id,
            terms: Vec::new(),
            length,
        });
    }

    let mut vocab: Vec<Term> = Vec::with_capacity(n_terms.min(1 << 24) as usize);
    for t in 0..n_terms {
        let term = Term::new(r.str()?).map_err(|e| IndexError::Corrupt(e.to_string()))?;
        if vocab.last().is_some_and(|prev| *prev >= term) {
            return Err(IndexError::Corrupt("terms out of order".into()));
        }
        vocab.push(term);
        let df = r.u32()?;
        let cf = r.u64()?;
        let mut prev: Option<DocNum> = None;
        let mut cf_seen = 0u64;
        for _ in 0..df {
            let doc = r.u32()?;
            let tf = r.u32()?;
            if u64::from(doc) >= n_docs || prev.is_some_and(|p| p >= doc) || tf == 0 {
                return Err(IndexError::Corrupt("invalid posting".into()));
            }
            prev = Some(doc);
            cf_seen += u64::from(tf);
            docs[doc as usize].terms.push((t as TermId, tf));
        }
        if cf_seen != cf {
            return Err(IndexError::Corrupt("collection frequency mismatch".into()));
        }
    }
    if r.pos != body.len() {
        return Err(IndexError::Corrupt("trailing bytes".into()));
    }
    if docs.iter().any(|d| d.terms.iter().map(|&(_, tf)| u64::from(tf)).sum::<u64>() != d.length) {
        return Err(IndexError::Corrupt("document length mismatch".into()));
    }

    let index = InvertedIndex::from_docs(analyzer, vocab, docs);
    if index.stats.total_tokens != total_tokens {
        return Err(IndexError::Corrupt("token total mismatch".into()));
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::build_index;
    use crate::textkit::{Language, StemmerKind};

    fn fixture() -> InvertedIndex {
        let config = AnalyzerConfig::default()
            .with_stopwords(["the"])
            .with_stemmer(StemmerKind::Snowball(Language::English));
        build_index(
            vec![
                ("d1".to_string(), "a b the cars".to_string()),
                ("d2".to_string(), "b c car".to_string()),
            ],
            &config,
        )
        .unwrap()
    }

    #[test]
    fn round_trip_preserves_everything() {
        let index = fixture();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("i.idx");
        save_index(&index, &path).unwrap();
        let back = load_index(&path).unwrap();
        assert_eq!(back.analyzer(), index.analyzer());
        assert_eq!(back.fingerprint(), index.fingerprint());
        assert_eq!(back.stats(), index.stats());
        assert_eq!(back.docs(), index.docs());
        assert!(back.triples().eq(index.triples()));
        for t in index.vocab() {
            assert_eq!(back.term_stats(t), index.term_stats(t));
        }
        assert_eq!(encode(&back), encode(&index));
    }

    #[test]
    fn corruption_is_detected() {
        let index = fixture();
        let mut bytes = encode(&index);
        let mid = bytes.len() / 2;
        bytes[mid] ^= 0x40;
        assert!(matches!(decode(&bytes), Err(IndexError::ChecksumMismatch)));
        bytes.truncate(20);
        assert!(matches!(decode(&bytes), Err(IndexError::ChecksumMismatch)));
    }

    #[test]
    fn header_errors_are_distinct() {
        let mut bytes = encode(&fixture());
        bytes[8] = 9;
        assert!(matches!(
            decode(&bytes),
            Err(IndexError::VersionMismatch { found: 9, expected: 1 })
        ));
        bytes[0] = b'X';
        assert!(matches!(decode(&bytes), Err(IndexError::BadMagic)));
    }

    #[test]
    fn missing_file_and_wrong_analyzer() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            load_index(dir.path().join("nope.idx")),
            Err(IndexError::NotFound { .. })
        ));
        let path = dir.path().join("i.idx");
        save_index(&fixture(), &path).unwrap();
        assert!(matches!(
            load_index_for(&path, &AnalyzerConfig::default()),
            Err(IndexError::FingerprintMismatch { .. })
        ));
        assert!(load_index_for(&path, fixture().analyzer()).is_ok());
    }
}
