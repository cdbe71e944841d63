//! Experiment settings: a flat `key = value` file overridden by command-line
//! flags.
//!
//! Keys match the long flag names with `-` replaced by `_`:
//!
//! | key | value |
//! |-----|-------|
//! | `corpus`, `index`, `topics`, `qrels`, `out`, `stopwords`, `run`, `baseline` | paths |
//! | `corpus_format` | `jsonl` or `txtdir` |
//! | `lowercase` | `true` or `false` |
//! | `stemmer` | `none`, a language code (`es`, `en`, ...) or name |
//! | `mode` | `baseline` or `expanded` |
//! | `method` | `coo`, `kld`, `bo1`, `boco`, `kldco` |
//! | `methods` | comma list of methods (sweeps) |
//! | `coefficient` | `tanimoto`, `dice`, `cosine` |
//! | `reweight` | `rocchio`, `sumcc`, `kld`, `bonorm` |
//! | `beta` | Rocchio β |
//! | `r_docs`, `n_terms`, `base_list_size`, `k` | positive integers |
//! | `scope` | `topset` or `collection` |
//! | `p_points` | comma list of cutoffs |
//! | `terms_grid`, `docs_grid` | comma lists of positive integers |
//! | `tag` | run name |

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use prf_core::index::CorpusFormat;
use prf_core::textkit::load_stopwords;
use prf_core::{AnalyzerConfig, Coefficient, CooccurrenceScope, ExpansionConfig, Method, Reweighting, StemmerKind};

pub const KEYS: &[&str] = &[
    "corpus",
    "corpus_format",
    "index",
    "topics",
    "qrels",
    "out",
    "stopwords",
    "run",
    "baseline",
    "lowercase",
    "stemmer",
    "mode",
    "method",
    "methods",
    "coefficient",
    "reweight",
    "beta",
    "r_docs",
    "n_terms",
    "base_list_size",
    "k",
    "scope",
    "p_points",
    "terms_grid",
    "docs_grid",
    "tag",
];

const PATH_KEYS: &[&str] = &["corpus", "index", "topics", "qrels", "out", "stopwords", "run", "baseline"];

pub const DEFAULT_K: usize = 1000;
pub const DEFAULT_BETA: f64 = 0.1;
pub const DEFAULT_P_POINTS: &[usize] = &[5, 10];
pub const DEFAULT_TERMS_GRID: &[usize] = &[5, 10, 15, 20, 25, 30, 40, 50, 75, 100];
pub const DEFAULT_DOCS_GRID: &[usize] = &[1, 2, 5, 10, 15, 20, 25, 30];
pub const DEFAULT_METHODS: &[&str] = &["coo", "kld", "bo1", "boco", "kldco"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Baseline,
    Expanded,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "baseline" => Ok(Mode::Baseline),
            "expanded" => Ok(Mode::Expanded),
            other => Err(format!("unknown mode `{other}` (expected baseline or expanded)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Baseline => "baseline",
            Mode::Expanded => "expanded",
        })
    }
}

/// Raw settings in key order; later sources override earlier ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

fn normalize_key(key: &str) -> String {
    key.trim().replace('-', "_")
}

impl Settings {
    pub fn parse(text: &str, origin: &str) -> Result<Settings> {
        let mut settings = Settings::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("{origin}:{}: expected `key = value`", i + 1))?;
            let key = normalize_key(key);
            if !KEYS.contains(&key.as_str()) {
                bail!("{origin}:{}: unknown key `{key}`", i + 1);
            }
            settings.values.insert(key, value.trim().to_string());
        }
        Ok(settings)
    }

    pub fn load(path: &Path) -> Result<Settings> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let mut settings = Settings::parse(&text, &path.display().to_string())?;
        // relative paths in a config file are relative to the file
        let base = path.parent().unwrap_or(Path::new(""));
        for key in PATH_KEYS {
            if let Some(v) = settings.values.get_mut(*key) {
                if Path::new(v.as_str()).is_relative() {
                    *v = base.join(v.as_str()).display().to_string();
                }
            }
        }
        Ok(settings)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        let key = normalize_key(key);
        debug_assert!(KEYS.contains(&key.as_str()), "{key}");
        self.values.insert(key, value.into());
    }

    pub fn merge(&mut self, other: &Settings) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn is_set(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    fn parsed<V: FromStr>(&self, key: &str) -> Result<Option<V>>
    where
        V::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| v.parse::<V>().map_err(|e| anyhow!("{key} = {v}: {e}")))
            .transpose()
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(PathBuf::from)
    }

    pub fn require_path(&self, key: &str) -> Result<PathBuf> {
        self.path(key)
            .ok_or_else(|| anyhow!("missing --{} (or `{key}` in the config file)", key.replace('_', "-")))
    }

    pub fn corpus_format(&self) -> Result<CorpusFormat> {
        Ok(self.parsed("corpus_format")?.unwrap_or_default())
    }

    pub fn mode(&self) -> Result<Mode> {
        Ok(self.parsed("mode")?.unwrap_or(Mode::Baseline))
    }

    fn positive(&self, key: &str) -> Result<Option<usize>> {
        match self.parsed::<usize>(key)? {
            Some(0) => bail!("{key} must be at least 1"),
            v => Ok(v),
        }
    }

    pub fn k(&self) -> Result<usize> {
        Ok(self.positive("k")?.unwrap_or(DEFAULT_K))
    }

    fn list(&self, key: &str, default: &[usize]) -> Result<Vec<usize>> {
        let Some(raw) = self.get(key) else {
            return Ok(default.to_vec());
        };
        let values = raw
            .split(',')
            .map(|v| {
                let v = v.trim();
                match v.parse::<usize>() {
                    Ok(0) | Err(_) => Err(anyhow!("{key}: `{v}` is not a positive integer")),
                    Ok(n) => Ok(n),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            bail!("{key} is empty");
        }
        Ok(values)
    }

    pub fn p_points(&self) -> Result<Vec<usize>> {
        self.list("p_points", DEFAULT_P_POINTS)
    }

    pub fn terms_grid(&self) -> Result<Vec<usize>> {
        self.list("terms_grid", DEFAULT_TERMS_GRID)
    }

    pub fn docs_grid(&self) -> Result<Vec<usize>> {
        self.list("docs_grid", DEFAULT_DOCS_GRID)
    }

    /// Analyzer from the settings, or `None` when no analyzer key is set.
    pub fn analyzer(&self) -> Result<Option<AnalyzerConfig>> {
        if !["lowercase", "stemmer", "stopwords"].iter().any(|k| self.is_set(k)) {
            return Ok(None);
        }
        let mut config = AnalyzerConfig::default();
        if let Some(lowercase) = self.parsed::<bool>("lowercase")? {
            config.lowercase = lowercase;
        }
        if let Some(stemmer) = self.parsed::<StemmerKind>("stemmer")? {
            config = config.with_stemmer(stemmer);
        }
        if let Some(path) = self.path("stopwords") {
            config = config.with_stopwords(load_stopwords(&path)?);
        }
        Ok(Some(config))
    }

    pub fn coefficient(&self) -> Result<Coefficient> {
        Ok(self.parsed("coefficient")?.unwrap_or(Coefficient::Tanimoto))
    }

    pub fn method(&self) -> Result<Method> {
        let name = self.get("method").unwrap_or("coo");
        Method::parse(name, self.coefficient()?).map_err(|e| anyhow!(e))
    }

    pub fn methods(&self) -> Result<Vec<Method>> {
        let coefficient = self.coefficient()?;
        let names: Vec<&str> = match self.get("methods") {
            Some(raw) => raw.split(',').map(str::trim).collect(),
            None if self.is_set("method") => vec![self.get("method").unwrap()],
            None => DEFAULT_METHODS.to_vec(),
        };
        names
            .into_iter()
            .map(|n| Method::parse(n, coefficient).map_err(|e| anyhow!(e)))
            .collect()
    }

    /// Expansion settings for `method`: method defaults, then any explicit
    /// keys. `base_list_size` follows `n_terms` unless set.
    pub fn expansion(&self, method: Method) -> Result<ExpansionConfig<f64>> {
        let mut config = ExpansionConfig::defaults_for(method);
        let beta = self.parsed::<f64>("beta")?.unwrap_or(DEFAULT_BETA);
        config.reweighting = match self.get("reweight") {
            Some(name) => Reweighting::parse(name, beta).map_err(|e| anyhow!(e))?,
            None => match config.reweighting {
                Reweighting::Rocchio { .. } => Reweighting::Rocchio { beta },
                other => other,
            },
        };
        if let Some(r) = self.positive("r_docs")? {
            config.r_docs = r;
        }
        if let Some(n) = self.positive("n_terms")? {
            config.n_terms = n;
            config.base_list_size = 3 * n;
        }
        if let Some(b) = self.positive("base_list_size")? {
            config.base_list_size = b;
        }
        if let Some(scope) = self.parsed::<CooccurrenceScope>("scope")? {
            config.scope = scope;
        }
        Ok(config)
    }

    /// Non-path settings as `key=value` lines; the basis of the config hash.
    pub fn semantic_lines(&self) -> String {
        self.values
            .iter()
            .filter(|(k, _)| !PATH_KEYS.contains(&k.as_str()))
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }
}

/// Default tag of an expanded run, e.g. `boco-tanimoto-rocchio`.
pub fn expanded_tag(config: &ExpansionConfig<f64>) -> String {
    match config.method {
        Method::Cooccurrence(c) | Method::Combined(c, _) => {
            format!("{}-{}-{}", config.method.name(), c.name(), config.reweighting.name())
        }
        m => format!("{}-{}", m.name(), config.reweighting.name()),
    }
}
