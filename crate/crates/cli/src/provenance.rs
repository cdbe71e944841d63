//! Comment-line headers identifying how an output file was produced.

use sha2::{Digest, Sha256};

use crate::config::Settings;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn short_hex(bytes: &[u8]) -> String {
    bytes[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Hash of the command and its non-path settings.
pub fn config_hash(command: &str, settings: &Settings) -> String {
    let mut hasher = Sha256::new();
    hasher.update(command.as_bytes());
    hasher.update(b"\n");
    hasher.update(settings.semantic_lines().as_bytes());
    short_hex(&hasher.finalize())
}

pub fn file_digest(bytes: &[u8]) -> String {
    short_hex(&Sha256::digest(bytes))
}

/// Identity of the index an output was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexIdentity {
    /// Analyzer fingerprint stored in the index.
    pub fingerprint: String,
    /// Digest of the index file contents.
    pub digest: String,
}

impl IndexIdentity {
    fn line(&self) -> String {
        format!("index: fingerprint={} digest={}", self.fingerprint, self.digest)
    }

    /// Recovers the identity from the header of an earlier output.
    pub fn from_header(text: &str) -> Option<IndexIdentity> {
        let line = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .find_map(|l| l.strip_prefix("# index: "))?;
        let mut fingerprint = None;
        let mut digest = None;
        for part in line.split_whitespace() {
            match part.split_once('=') {
                Some(("fingerprint", v)) => fingerprint = Some(v.to_string()),
                Some(("digest", v)) => digest = Some(v.to_string()),
                _ => {}
            }
        }
        Some(IndexIdentity {
            fingerprint: fingerprint?,
            digest: digest?,
        })
    }
}

pub fn header(command: &str, settings: &Settings, index: Option<&IndexIdentity>) -> String {
    let mut out = format!("# prf {VERSION}\n# command: {command}\n# config: {}\n", config_hash(command, settings));
    match index {
        Some(id) => out.push_str(&format!("# {}\n", id.line())),
        None => out.push_str("# index: unknown\n"),
    }
    out
}
