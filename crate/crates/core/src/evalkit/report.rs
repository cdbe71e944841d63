use std::fmt::Write as _;

use super::EvalReport;
use crate::scalar::Real;

/// Relative change formatted as `+19.29%`; `n/a` when the base is 0.
pub fn percent_change<T: Real>(value: T, base: T) -> String {
    let (value, base) = (value.as_f64(), base.as_f64());
    if base == 0.0 {
        return "n/a".to_string();
    }
    let pct = (value - base) / base * 100.0;
    let rounded = (pct * 100.0).round() / 100.0;
    // avoid printing -0.00%
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded:+.2}%")
}

fn baseline_value<T: Real>(baseline: Option<&EvalReport<T>>, name: &str) -> Option<T> {
    baseline?.measures().into_iter().find(|(n, _)| n == name).map(|(_, v)| v)
}

/// Aggregate measures at 4 decimals, with a comparison column when a
/// baseline report is given.
pub fn format_table<T: Real>(report: &EvalReport<T>, baseline: Option<&EvalReport<T>>) -> String {
    let mut out = String::new();
    if baseline.is_some() {
        writeln!(out, "{:<8} {:>8} {:>8} {:>9}", "measure", "run", "baseline", "change").unwrap();
    } else {
        writeln!(out, "{:<8} {:>8}", "measure", "run").unwrap();
    }
    for (name, value) in report.measures() {
        match baseline_value(baseline, &name) {
            Some(base) => writeln!(
                out,
                "{:<8} {:>8.4} {:>8.4} {:>9}",
                name,
                value.as_f64(),
                base.as_f64(),
                percent_change(value, base)
            )
            .unwrap(),
            None if baseline.is_some() => {
                writeln!(out, "{:<8} {:>8.4} {:>8} {:>9}", name, value.as_f64(), "-", "-").unwrap()
            }
            None => writeln!(out, "{:<8} {:>8.4}", name, value.as_f64()).unwrap(),
        }
    }
    writeln!(out, "topics   {}", report.aggregate.topics).unwrap();
    if !report.skipped_topics.is_empty() {
        writeln!(out, "skipped  {}", report.skipped_topics.join(" ")).unwrap();
    }
    out
}

/// `topic,ap,r_prec,p@X...` with one row per evaluated topic.
pub fn format_topics_csv<T: Real>(report: &EvalReport<T>) -> String {
    let mut out = String::from("topic,ap,r_prec");
    for x in &report.p_points {
        write!(out, ",p@{x}").unwrap();
    }
    out.push('\n');
    for (topic, eval) in &report.per_topic {
        write!(out, "{topic},{},{}", eval.ap.as_f64(), eval.r_prec.as_f64()).unwrap();
        for x in &report.p_points {
            write!(out, ",{}", eval.p_at[x].as_f64()).unwrap();
        }
        out.push('\n');
    }
    out
}

/// `measure,value,baseline,change`; the last two columns are empty without a
/// baseline.
pub fn format_summary_csv<T: Real>(report: &EvalReport<T>, baseline: Option<&EvalReport<T>>) -> String {
    let mut out = String::from("measure,value,baseline,change\n");
    for (name, value) in report.measures() {
        match baseline_value(baseline, &name) {
            Some(base) => writeln!(
                out,
                "{name},{},{},{}",
                value.as_f64(),
                base.as_f64(),
                percent_change(value, base)
            )
            .unwrap(),
            None => writeln!(out, "{name},{},,", value.as_f64()).unwrap(),
        }
    }
    out
}
