//! Command-line driver for pseudo-relevance feedback experiments: index
//! building, baseline and expanded runs, evaluation and parameter sweeps.

pub mod commands;
pub mod config;
pub mod provenance;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};

use commands::Sweep;
use config::Settings;

#[derive(Debug, Parser)]
#[command(name = "prf", version, about = "Pseudo-relevance feedback query expansion experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an index from a corpus and save it.
    Index(Options),
    /// Retrieve every topic and write a TREC run file.
    Run(Options),
    /// Evaluate a run file against relevance judgments.
    Eval(Options),
    /// MAP and R-Precision over a grid of expansion-term counts.
    SweepTerms(Options),
    /// MAP and R-Precision over a grid of feedback-document counts.
    SweepDocs(Options),
}

/// Settings shared by all commands; flags override the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Flat `key = value` settings file.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Corpus: JSON lines with `id` and `text`, or a directory of .txt files.
    #[arg(long, value_name = "PATH")]
    pub corpus: Option<String>,
    /// jsonl or txtdir.
    #[arg(long, value_name = "FORMAT")]
    pub corpus_format: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub index: Option<String>,
    /// Topics file: `topic_id<TAB>title` per line.
    #[arg(long, value_name = "PATH")]
    pub topics: Option<String>,
    /// Relevance judgments: `topic 0 docid rel` per line.
    #[arg(long, value_name = "PATH")]
    pub qrels: Option<String>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: Option<String>,
    /// Stopword file, one word per line.
    #[arg(long, value_name = "PATH")]
    pub stopwords: Option<String>,
    /// none, or a Snowball language code or name (es, spanish, en, ...).
    #[arg(long)]
    pub stemmer: Option<String>,
    /// true or false.
    #[arg(long)]
    pub lowercase: Option<String>,
    /// Run file to evaluate.
    #[arg(long, value_name = "PATH")]
    pub run: Option<String>,
    /// Run file to compare against.
    #[arg(long, value_name = "PATH")]
    pub baseline: Option<String>,
    /// baseline or expanded.
    #[arg(long)]
    pub mode: Option<String>,
    /// coo, kld, bo1, boco or kldco.
    #[arg(long)]
    pub method: Option<String>,
    /// Comma-separated methods for sweeps (default: all five).
    #[arg(long)]
    pub methods: Option<String>,
    /// tanimoto, dice or cosine.
    #[arg(long)]
    pub coefficient: Option<String>,
    /// rocchio, sumcc, kld or bonorm (default: best scheme for the method).
    #[arg(long)]
    pub reweight: Option<String>,
    /// Rocchio feedback weight [default: 0.1].
    #[arg(long)]
    pub beta: Option<String>,
    /// Feedback documents [default: 10].
    #[arg(long)]
    pub r_docs: Option<String>,
    /// Expansion terms [default: 25 coo, 40 kld/bo1, 75 combined].
    #[arg(long)]
    pub n_terms: Option<String>,
    /// Size of each parent list of a combined method [default: 3 x n-terms].
    #[arg(long)]
    pub base_list_size: Option<String>,
    /// Where cooccurrence counts come from: topset or collection.
    #[arg(long)]
    pub scope: Option<String>,
    /// Retrieval depth [default: 1000].
    #[arg(long)]
    pub k: Option<String>,
    /// Precision cutoffs [default: 5,10].
    #[arg(long)]
    pub p_points: Option<String>,
    /// Expansion-term counts for sweep-terms.
    #[arg(long)]
    pub terms_grid: Option<String>,
    /// Feedback-document counts for sweep-docs.
    #[arg(long)]
    pub docs_grid: Option<String>,
    /// Run name used in output files.
    #[arg(long)]
    pub tag: Option<String>,
}

impl Options {
    pub fn settings(&self) -> Result<Settings> {
        let mut settings = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        let flags = [
            ("corpus", &self.corpus),
            ("corpus_format", &self.corpus_format),
            ("index", &self.index),
            ("topics", &self.topics),
            ("qrels", &self.qrels),
            ("out", &self.out),
            ("stopwords", &self.stopwords),
            ("stemmer", &self.stemmer),
            ("lowercase", &self.lowercase),
            ("run", &self.run),
            ("baseline", &self.baseline),
            ("mode", &self.mode),
            ("method", &self.method),
            ("methods", &self.methods),
            ("coefficient", &self.coefficient),
            ("reweight", &self.reweight),
            ("beta", &self.beta),
            ("r_docs", &self.r_docs),
            ("n_terms", &self.n_terms),
            ("base_list_size", &self.base_list_size),
            ("scope", &self.scope),
            ("k", &self.k),
            ("p_points", &self.p_points),
            ("terms_grid", &self.terms_grid),
            ("docs_grid", &self.docs_grid),
            ("tag", &self.tag),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                settings.set(key, v.clone());
            }
        }
        Ok(settings)
    }
}

/// Runs one command, writing its report to `stdout`.
pub fn execute(command: &Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Index(o) => commands::cmd_index(&o.settings()?, stdout),
        Command::Run(o) => commands::cmd_run(&o.settings()?, stdout),
        Command::Eval(o) => commands::cmd_eval(&o.settings()?, stdout),
        Command::SweepTerms(o) => sweep(o, Sweep::Terms, stdout),
        Command::SweepDocs(o) => sweep(o, Sweep::Docs, stdout),
    }
}

fn sweep(options: &Options, kind: Sweep, stdout: &mut dyn Write) -> Result<()> {
    let failures = commands::cmd_sweep(&options.settings()?, kind, stdout)?;
    if failures > 0 {
        bail!("{failures} grid point(s) failed");
    }
    Ok(())
}

/// Worker count from `PRF_THREADS`, if set.
pub fn thread_limit() -> Result<Option<usize>> {
    match std::env::var("PRF_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => bail!("PRF_THREADS must be a positive integer, got `{v}`"),
            Ok(n) => Ok(Some(n)),
        },
        Err(_) => Ok(None),
    }
}
