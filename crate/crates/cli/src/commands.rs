use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use prf_core::evalkit::{format_run, format_summary_csv, format_table, format_topics_csv, parse_qrels, parse_run_str, Qrels};
use prf_core::expansion::{format_expanded_query, ExpansionNote};
use prf_core::index::{load_index, load_index_for, read_corpus};
use prf_core::retrieval::read_topics;
use prf_core::{
    build_index, evaluate, expand_query, parse_query, save_index, search, Analyzer, ExpansionConfig, InvertedIndex,
    Method, Ranking, Run, WeightedQuery,
};
use rayon::prelude::*;

use crate::config::{expanded_tag, Mode, Settings};
use crate::provenance::{file_digest, header, IndexIdentity};

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn cmd_index(settings: &Settings, stdout: &mut dyn Write) -> Result<()> {
    let corpus_path = settings.require_path("corpus")?;
    let index_path = settings.require_path("index")?;
    let analyzer = settings.analyzer()?.unwrap_or_default();
    let corpus = read_corpus(&corpus_path, settings.corpus_format()?)?;
    let index = build_index(corpus, &analyzer)?;
    if let Some(dir) = index_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    save_index(&index, &index_path)?;
    writeln!(
        stdout,
        "N={} vocabulary={} tokens={} fingerprint={}",
        index.n_docs(),
        index.vocab_size(),
        index.total_tokens(),
        index.fingerprint()
    )?;
    Ok(())
}

/// Index, its identity and the queries of every usable topic.
struct Workload {
    index: InvertedIndex,
    identity: IndexIdentity,
    queries: Vec<WeightedQuery<f64>>,
}

fn load_workload(settings: &Settings) -> Result<Workload> {
    let path = settings.require_path("index")?;
    let bytes = fs::read(&path).with_context(|| format!("reading index {}", path.display()))?;
    let index = match settings.analyzer()? {
        Some(config) => load_index_for(&path, &config)?,
        None => load_index(&path)?,
    };
    let identity = IndexIdentity {
        fingerprint: index.fingerprint().to_string(),
        digest: file_digest(&bytes),
    };
    let topics = read_topics(settings.require_path("topics")?)?;
    let analyzer = Analyzer::new(index.analyzer().clone());
    let mut queries = Vec::new();
    for topic in topics {
        match parse_query(&topic.id, &topic.title, &analyzer) {
            Ok(q) => queries.push(q),
            Err(e) => eprintln!("warning: {e}; topic skipped"),
        }
    }
    if queries.is_empty() {
        bail!("no topic produced a usable query");
    }
    Ok(Workload {
        index,
        identity,
        queries,
    })
}

/// Expanded query for one topic, falling back to the original query when
/// expansion fails.
fn expand_or_fallback(index: &InvertedIndex, query: &WeightedQuery<f64>, config: &ExpansionConfig<f64>) -> (WeightedQuery<f64>, Option<String>) {
    match expand_query(index, query, config) {
        Ok(out) => {
            let warning = match out.note {
                Some(ExpansionNote::NoFeedbackDocuments) => {
                    Some(format!("topic {}: first pass retrieved nothing; original query kept", query.topic_id))
                }
                _ => None,
            };
            (out.query, warning)
        }
        Err(e) => (
            query.clone(),
            Some(format!("topic {}: expansion failed ({e}); original query used", query.topic_id)),
        ),
    }
}

struct TopicResult {
    ranking: Ranking<f64>,
    expanded: Option<WeightedQuery<f64>>,
    warning: Option<String>,
}

fn retrieve_all(work: &Workload, k: usize, expansion: Option<&ExpansionConfig<f64>>) -> Result<Vec<TopicResult>> {
    work.queries
        .par_iter()
        .map(|q| {
            let (query, warning) = match expansion {
                Some(config) => {
                    let (e, w) = expand_or_fallback(&work.index, q, config);
                    (Some(e), w)
                }
                None => (None, None),
            };
            let ranking = search(&work.index, query.as_ref().unwrap_or(q), k)?;
            Ok(TopicResult {
                ranking,
                expanded: query,
                warning,
            })
        })
        .collect()
}

pub fn cmd_run(settings: &Settings, stdout: &mut dyn Write) -> Result<()> {
    let out_dir = settings.require_path("out")?;
    let mode = settings.mode()?;
    let k = settings.k()?;
    let expansion = match mode {
        Mode::Baseline => None,
        Mode::Expanded => {
            let config = settings.expansion(settings.method()?)?;
            config.validate()?;
            Some(config)
        }
    };
    let tag = match (settings.get("tag"), &expansion) {
        (Some(tag), _) => tag.to_string(),
        (None, Some(config)) => expanded_tag(config),
        (None, None) => "baseline".to_string(),
    };
    if tag.is_empty() || tag.contains(char::is_whitespace) {
        bail!("tag `{tag}` must be non-empty without whitespace");
    }

    let work = load_workload(settings)?;
    let results = retrieve_all(&work, k, expansion.as_ref())?;
    for r in &results {
        if let Some(w) = &r.warning {
            eprintln!("warning: {w}");
        }
    }

    let command = format!("run --mode {mode}");
    let head = header(&command, settings, Some(&work.identity));
    let mut queries: Vec<&WeightedQuery<f64>> = results.iter().filter_map(|r| r.expanded.as_ref()).collect();
    let run = Run::from_rankings(tag.clone(), results.iter().map(|r| r.ranking.clone()));
    let run_path = out_dir.join(format!("{tag}.run"));
    write_file(&run_path, &format!("{head}{}", format_run(&run)))?;
    writeln!(stdout, "wrote {} ({} topics)", run_path.display(), run.results.values().filter(|h| !h.is_empty()).count())?;

    if expansion.is_some() {
        queries.sort_by(|a, b| a.topic_id.cmp(&b.topic_id));
        let mut text = head;
        for q in queries {
            text.push_str(&format_expanded_query(q));
            text.push('\n');
        }
        let path = out_dir.join(format!("{tag}.queries"));
        write_file(&path, &text)?;
        writeln!(stdout, "wrote {}", path.display())?;
    }
    Ok(())
}

fn read_run(path: &Path) -> Result<(Run<f64>, Option<IndexIdentity>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading run {}", path.display()))?;
    let run = parse_run_str(&text).with_context(|| format!("parsing run {}", path.display()))?;
    Ok((run, IndexIdentity::from_header(&text)))
}

pub fn cmd_eval(settings: &Settings, stdout: &mut dyn Write) -> Result<()> {
    let run_path = settings.require_path("run")?;
    let qrels: Qrels = parse_qrels(settings.require_path("qrels")?)?;
    let p_points = settings.p_points()?;
    let (run, identity) = read_run(&run_path)?;
    let report = evaluate(&run, &qrels, &p_points)?;
    let baseline = match settings.path("baseline") {
        Some(path) => Some(evaluate(&read_run(&path)?.0, &qrels, &p_points)?),
        None => None,
    };

    let table = format_table(&report, baseline.as_ref());
    let topics_csv = format_topics_csv(&report);
    write!(stdout, "{table}\n{topics_csv}")?;

    if let Some(out_dir) = settings.path("out") {
        let tag = match settings.get("tag") {
            Some(tag) => tag.to_string(),
            None if !run.tag.is_empty() => run.tag.clone(),
            None => run_path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "run".into()),
        };
        let head = header("eval", settings, identity.as_ref());
        let topics_path = out_dir.join(format!("{tag}.eval.csv"));
        let summary_path = out_dir.join(format!("{tag}.summary.csv"));
        write_file(&topics_path, &format!("{head}{topics_csv}"))?;
        write_file(&summary_path, &format!("{head}{}", format_summary_csv(&report, baseline.as_ref())))?;
        writeln!(stdout, "wrote {} and {}", topics_path.display(), summary_path.display())?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    /// Varies the number of expansion terms.
    Terms,
    /// Varies the number of feedback documents.
    Docs,
}

impl Sweep {
    pub fn name(self) -> &'static str {
        match self {
            Sweep::Terms => "sweep-terms",
            Sweep::Docs => "sweep-docs",
        }
    }
}

/// Expansion settings for one grid point.
pub fn grid_config(settings: &Settings, sweep: Sweep, method: Method, param: usize) -> Result<ExpansionConfig<f64>> {
    let mut config = settings.expansion(method)?;
    match sweep {
        Sweep::Terms => {
            config.n_terms = param;
            if !settings.is_set("base_list_size") {
                config.base_list_size = 3 * param;
            }
        }
        Sweep::Docs => config.r_docs = param,
    }
    config.validate()?;
    Ok(config)
}

fn sweep_point(work: &Workload, qrels: &Qrels, settings: &Settings, sweep: Sweep, method: Method, param: usize) -> Result<(f64, f64)> {
    let config = grid_config(settings, sweep, method, param)?;
    let results = retrieve_all(work, settings.k()?, Some(&config))?;
    let run = Run::from_rankings(method.name(), results.into_iter().map(|r| r.ranking));
    let report = evaluate(&run, qrels, &settings.p_points()?)?;
    Ok((report.aggregate.map, report.aggregate.r_prec))
}

/// Returns the number of failed grid points.
pub fn cmd_sweep(settings: &Settings, sweep: Sweep, stdout: &mut dyn Write) -> Result<usize> {
    let grid = match sweep {
        Sweep::Terms => settings.terms_grid()?,
        Sweep::Docs => settings.docs_grid()?,
    };
    let methods = settings.methods()?;
    let qrels = parse_qrels(settings.require_path("qrels")?)?;
    let work = load_workload(settings)?;

    let points: Vec<(Method, usize)> = methods
        .iter()
        .flat_map(|&m| grid.iter().map(move |&p| (m, p)))
        .collect();
    let results: Vec<Result<(f64, f64)>> = points
        .par_iter()
        .map(|&(m, p)| sweep_point(&work, &qrels, settings, sweep, m, p))
        .collect();

    let mut csv = header(sweep.name(), settings, Some(&work.identity));
    csv.push_str("method,param,map,r_prec\n");
    let mut failures = 0;
    for ((method, param), result) in points.iter().zip(&results) {
        match result {
            Ok((map, r_prec)) => csv.push_str(&format!("{},{param},{map},{r_prec}\n", method.name())),
            Err(e) => {
                failures += 1;
                eprintln!("error: {} at {param}: {e:#}", method.name());
                csv.push_str(&format!("{},{param},error,error\n", method.name()));
            }
        }
    }
    match settings.path("out") {
        Some(dir) => {
            let path: PathBuf = dir.join(format!("{}.csv", sweep.name()));
            write_file(&path, &csv)?;
            writeln!(stdout, "wrote {} ({} rows)", path.display(), points.len())?;
        }
        None => stdout.write_all(csv.as_bytes())?,
    }
    Ok(failures)
}

