//! File-level analysis pipeline: trace directories in, tables and JSON out.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chartlens_core::analysis::{
    density_grid, descriptives, dtw, mean_path, pairwise_permanova_holm, permanova, resample,
    sus_score, DistanceMatrix, PairwiseResult, PermanovaResult, ResampledPath,
};
use chartlens_core::geom::Point;
use chartlens_core::trace::{EventKind, PointerTrace, TraceId};
use rayon::prelude::*;
use serde_json::{json, Value};
use walkdir::WalkDir;

use crate::bundle::Issue;
use crate::error::{self, Error, Result};
use crate::formats::layout::round6;
use crate::formats::trace::{read_trace, TRACE_EXTENSION};

/// Which traces enter an analysis.
#[derive(Debug, Clone, Default)]
pub struct TraceFilter {
    /// Drop traces whose question was skipped.
    pub exclude_skipped: bool,
    /// Keep only this question.
    pub question: Option<String>,
}

impl TraceFilter {
    pub fn accepts(&self, trace: &PointerTrace) -> bool {
        !(self.exclude_skipped && trace.has_event(EventKind::Skip))
            && self
                .question
                .as_ref()
                .is_none_or(|q| *q == trace.id.question_id)
    }
}

/// Trace files under `dir`, sorted by path.
pub fn trace_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(dir).to_path_buf();
            Error::io(path, e.into())
        })?;
        if entry.file_type().is_file()
            && entry
                .path()
                .extension()
                .is_some_and(|x| x == TRACE_EXTENSION)
        {
            out.push(entry.into_path());
        }
    }
    Ok(out)
}

/// Loads every accepted trace under `dir`. Unreadable or malformed files
/// become issues and are skipped.
pub fn load_traces(dir: &Path, filter: &TraceFilter) -> Result<(Vec<PointerTrace>, Vec<Issue>)> {
    let mut traces = Vec::new();
    let mut issues = Vec::new();
    for path in trace_files(dir)? {
        let file = path.display().to_string();
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let Some(id) = TraceId::parse(&stem) else {
            issues.push(Issue {
                file,
                message: "file name is not P{pid}_{condition}_{variant}_{qid}.trace".into(),
            });
            continue;
        };
        let text = String::from_utf8_lossy(&error::read(&path)?).into_owned();
        match read_trace(id, &text) {
            Ok(t) if filter.accepts(&t) => traces.push(t),
            Ok(_) => {}
            Err(e) => issues.push(Issue {
                file,
                message: e.to_string(),
            }),
        }
    }
    traces.sort_by(|a, b| a.id.cmp(&b.id));
    Ok((traces, issues))
}

/// Resamples each trace; traces with fewer than 2 samples become issues.
pub fn resample_all(
    traces: &[PointerTrace],
    steps: usize,
) -> (Vec<ResampledPath>, Vec<(TraceId, Issue)>) {
    let mut paths = Vec::new();
    let mut skipped = Vec::new();
    for t in traces {
        match resample(t, steps) {
            Ok(p) => paths.push(p),
            Err(e) => skipped.push((
                t.id.clone(),
                Issue {
                    file: t.id.to_string(),
                    message: e.to_string(),
                },
            )),
        }
    }
    (paths, skipped)
}

/// Pairwise DTW in parallel. Each pair is computed independently, so the
/// matrix does not depend on scheduling.
pub fn dtw_matrix(paths: &[ResampledPath], labels: Vec<String>) -> DistanceMatrix {
    let n = paths.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let upper: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| dtw(&paths[i], &paths[j]))
        .collect();
    DistanceMatrix::from_upper(labels, &upper).expect("DTW distances are finite and nonnegative")
}

/// Global test plus pairwise tests when there are at least 3 groups.
#[derive(Debug, Clone, PartialEq)]
pub struct PermanovaTable {
    pub global: PermanovaResult,
    pub pairwise: Vec<PairwiseResult<String>>,
}

pub fn permanova_table(
    d: &DistanceMatrix,
    groups: &[String],
    n_perm: u32,
    seed: u64,
) -> Result<PermanovaTable> {
    let invalid = |e: chartlens_core::analysis::AnalysisError| Error::format("permanova", e);
    let global = permanova(d, groups, n_perm, seed).map_err(invalid)?;
    let distinct = groups
        .iter()
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    let pairwise = if distinct >= 3 {
        pairwise_permanova_holm(d, groups, n_perm, seed).map_err(invalid)?
    } else {
        Vec::new()
    };
    Ok(PermanovaTable { global, pairwise })
}

fn num(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v:.6}")
    }
}

impl PermanovaTable {
    /// ANOVA-style table, then pairwise rows if any.
    pub fn to_tsv(&self) -> String {
        let g = &self.global;
        let mut out = String::new();
        writeln!(
            out,
            "# PERMANOVA, {} permutations, seed {}",
            g.n_perm, g.seed
        )
        .unwrap();
        out.push_str("term\tdf\tss\tF\tp\n");
        writeln!(
            out,
            "group\t{}\t{}\t{}\t{}",
            g.df_between,
            num(g.ss_between),
            num(g.f),
            num(g.p)
        )
        .unwrap();
        writeln!(out, "residual\t{}\t{}\t\t", g.df_within, num(g.ss_within)).unwrap();
        writeln!(
            out,
            "total\t{}\t{}\t\t",
            g.df_between + g.df_within,
            num(g.ss_total)
        )
        .unwrap();
        if g.degenerate {
            out.push_str("# degenerate: within-group sum of squares is zero\n");
        }
        if !self.pairwise.is_empty() {
            out.push_str("pair\tF\tp_raw\tp_holm\n");
            for r in &self.pairwise {
                writeln!(
                    out,
                    "{} vs {}\t{}\t{}\t{}",
                    r.a,
                    r.b,
                    num(r.f),
                    num(r.p_raw),
                    num(r.p_adjusted)
                )
                .unwrap();
            }
        }
        out
    }
}

/// Matches matrix rows to `id<TAB>group` labels.
pub fn groups_for(d: &DistanceMatrix, labels: &[(String, String)]) -> Result<Vec<String>> {
    let map: BTreeMap<&str, &str> = labels
        .iter()
        .map(|(i, g)| (i.as_str(), g.as_str()))
        .collect();
    d.labels()
        .iter()
        .map(|id| {
            map.get(id.as_str())
                .map(|g| g.to_string())
                .ok_or_else(|| Error::format("labels", format!("no group for `{id}`")))
        })
        .collect()
}

fn group_key(id: &TraceId) -> String {
    id.condition.to_string()
}

/// Density grid per condition, plus all conditions pooled, as JSON.
pub fn density_document(traces: &[PointerTrace], bins: usize) -> Result<Value> {
    let mut groups: BTreeMap<String, Vec<&PointerTrace>> = BTreeMap::new();
    for t in traces {
        groups.entry(group_key(&t.id)).or_default().push(t);
        groups.entry("all".into()).or_default().push(t);
    }
    let mut out = serde_json::Map::new();
    let mut zone = None;
    for (name, ts) in groups {
        let points = ts
            .iter()
            .flat_map(|t| t.samples().iter().map(|s| Point::new(s.x, s.y)));
        let g = density_grid(points, bins).map_err(|e| Error::format("density", e))?;
        zone.get_or_insert(g.inner_zone);
        let rows: Vec<&[u64]> = g.counts.chunks(bins).collect();
        out.insert(
            name,
            json!({
                "traces": ts.len(),
                "total": g.total,
                "inner_count": g.inner_count,
                "inner_fraction": g.inner_fraction().map(round6),
                "counts": rows,
            }),
        );
    }
    let zone = match zone {
        Some(z) => z,
        None => {
            density_grid(std::iter::empty(), bins)
                .map_err(|e| Error::format("density", e))?
                .inner_zone
        }
    };
    Ok(json!({
        "bins": bins,
        "inner_zone": [round6(zone.x0), round6(zone.y0), round6(zone.x1), round6(zone.y1)],
        "groups": out,
    }))
}

/// Mean resampled path per (question, condition), as JSON.
pub fn mean_path_document(paths: &[(TraceId, ResampledPath)]) -> Result<Value> {
    let mut groups: BTreeMap<(String, String), Vec<ResampledPath>> = BTreeMap::new();
    for (id, p) in paths {
        groups
            .entry((id.question_id.clone(), group_key(id)))
            .or_default()
            .push(p.clone());
    }
    let mut out = Vec::new();
    for ((question, condition), ps) in groups {
        let m = mean_path(&ps).map_err(|e| Error::format("mean-path", e))?;
        out.push(json!({
            "question_id": question,
            "condition": condition,
            "traces": ps.len(),
            "points": m.points.iter().map(|p| [round6(p.x), round6(p.y)]).collect::<Vec<_>>(),
        }));
    }
    Ok(Value::Array(out))
}

/// Per-respondent SUS scores followed by their mean and standard deviation.
pub fn sus_table(responses: &[(String, Vec<u8>)]) -> Result<String> {
    let mut out = String::from("id\tsus\n");
    let mut scores = Vec::new();
    for (id, items) in responses {
        let s = sus_score(items).map_err(|e| Error::format(format!("responses ({id})"), e))?;
        writeln!(out, "{id}\t{s}").unwrap();
        scores.push(s);
    }
    match descriptives(&scores) {
        Ok((m, sd)) => writeln!(out, "# mean\t{m:.2}\n# sd\t{sd:.2}").unwrap(),
        Err(_) => out.push_str("# fewer than 2 responses: no mean/sd\n"),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sus_table_summary() {
        let t = sus_table(&[
            ("a".into(), vec![5, 1, 5, 1, 5, 1, 5, 1, 5, 1]),
            ("b".into(), vec![3; 10]),
        ])
        .unwrap();
        assert_eq!(t, "id\tsus\na\t100\nb\t50\n# mean\t75.00\n# sd\t35.36\n");
        assert!(sus_table(&[("a".into(), vec![3; 9])]).is_err());
    }

    #[test]
    fn pairwise_only_with_three_groups() {
        let xs = [0.0f64, 0.1, 0.2, 1.0, 1.1, 1.2];
        let d = DistanceMatrix::from_fn((0..6).map(|i| i.to_string()).collect(), |i, j| {
            (xs[i] - xs[j]).abs()
        })
        .unwrap();
        let two: Vec<String> = ["a", "a", "a", "b", "b", "b"].map(String::from).to_vec();
        assert!(permanova_table(&d, &two, 99, 1)
            .unwrap()
            .pairwise
            .is_empty());
        let three: Vec<String> = ["a", "a", "b", "b", "c", "c"].map(String::from).to_vec();
        let t = permanova_table(&d, &three, 99, 1).unwrap();
        assert_eq!(t.pairwise.len(), 3);
        assert!(t.to_tsv().contains("a vs b\t"));
    }
}
