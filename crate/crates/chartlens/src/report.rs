//! Summary tables over a directory of session logs and traces.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chartlens_core::analysis::{descriptives, DEFAULT_STEPS};
use chartlens_core::quiz::{test_duration, QuizSession, Variant};
use chartlens_core::Condition;
use walkdir::WalkDir;

use crate::analyze::{dtw_matrix, load_traces, permanova_table, resample_all, TraceFilter};
use crate::bundle::Issue;
use crate::error::{self, Error, Result};
use crate::formats::session::load_session;

#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// Append the trajectory PERMANOVA over all traces in the directory.
    pub analysis: bool,
    pub seed: u64,
    pub perms: u32,
    pub steps: usize,
    pub filter: TraceFilter,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            analysis: false,
            seed: 0,
            perms: 999,
            steps: DEFAULT_STEPS,
            filter: TraceFilter::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    /// Tab-separated sections, each introduced by a `#` line.
    pub text: String,
    pub warnings: Vec<Issue>,
}

#[derive(Debug, Clone)]
struct Row {
    participant: String,
    condition: Condition,
    variant: Variant,
    score: chartlens_core::quiz::Score,
    duration: f64,
    tallies: [usize; 4],
}

fn session_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(dir).to_path_buf();
            Error::io(path, e.into())
        })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "json") {
            out.push(entry.into_path());
        }
    }
    Ok(out)
}

fn fmt_opt(v: Option<f64>, places: usize) -> String {
    v.map_or_else(|| "NA".into(), |v| format!("{v:.places$}"))
}

/// Per-session scores, durations and outcome tallies, then means per
/// (condition, variant), then optionally the trajectory statistics.
///
/// Output depends only on file contents and options, never on directory
/// iteration order or timing.
pub fn cmd_report(dir: &Path, options: &ReportOptions) -> Result<Report> {
    if !dir.is_dir() {
        return Err(Error::io(
            dir,
            std::io::Error::new(std::io::ErrorKind::NotFound, "not a directory"),
        ));
    }
    let mut warnings = Vec::new();
    let mut rows = Vec::new();
    for path in session_files(dir)? {
        let file = path.display().to_string();
        let session: QuizSession = match load_session(&error::read(&path)?) {
            Ok(s) => s,
            Err(e) => {
                warnings.push(Issue {
                    file,
                    message: e.to_string(),
                });
                continue;
            }
        };
        match (session.score(), test_duration(&session)) {
            (Ok(score), Ok(duration)) => rows.push(Row {
                participant: session.participant_id.clone(),
                condition: session.condition,
                variant: session.variant_tag,
                score,
                duration,
                tallies: session.tallies(),
            }),
            (Err(e), _) | (_, Err(e)) => warnings.push(Issue {
                file,
                message: e.to_string(),
            }),
        }
    }
    if rows.is_empty() {
        warnings.push(Issue {
            file: dir.display().to_string(),
            message: "no session logs found".into(),
        });
    }
    rows.sort_by(|a, b| {
        (a.condition, a.variant, &a.participant).cmp(&(b.condition, b.variant, &b.participant))
    });

    let mut text = String::from("# sessions\nparticipant\tcondition\tvariant\tscore\tduration_s\tcorrect\tincorrect\ttimeout\tskip\n");
    for r in &rows {
        let [c, i, t, s] = r.tallies;
        writeln!(
            text,
            "{}\t{}\t{}\t{}\t{:.3}\t{c}\t{i}\t{t}\t{s}",
            r.participant, r.condition, r.variant, r.score, r.duration
        )
        .unwrap();
    }

    text.push_str("# groups\ncondition\tvariant\tn\tscore_mean\tscore_sd\tduration_mean\tduration_sd\tcorrect\tincorrect\ttimeout\tskip\n");
    let mut groups: BTreeMap<(Condition, Variant), Vec<&Row>> = BTreeMap::new();
    for r in &rows {
        groups.entry((r.condition, r.variant)).or_default().push(r);
    }
    for ((condition, variant), rs) in &groups {
        let scores: Vec<f64> = rs.iter().map(|r| r.score.to_f64()).collect();
        let durations: Vec<f64> = rs.iter().map(|r| r.duration).collect();
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let sd = |v: &[f64]| descriptives(v).ok().map(|d| d.1);
        let mut tallies = [0usize; 4];
        for r in rs {
            for (t, v) in tallies.iter_mut().zip(r.tallies) {
                *t += v;
            }
        }
        writeln!(
            text,
            "{condition}\t{variant}\t{}\t{:.4}\t{}\t{:.3}\t{}\t{}\t{}\t{}\t{}",
            rs.len(),
            mean(&scores),
            fmt_opt(sd(&scores), 4),
            mean(&durations),
            fmt_opt(sd(&durations), 3),
            tallies[0],
            tallies[1],
            tallies[2],
            tallies[3]
        )
        .unwrap();
    }

    if options.analysis {
        text.push_str(&trajectory_section(dir, options, &mut warnings)?);
    }
    Ok(Report { text, warnings })
}

fn trajectory_section(
    dir: &Path,
    options: &ReportOptions,
    warnings: &mut Vec<Issue>,
) -> Result<String> {
    let (traces, issues) = load_traces(dir, &options.filter)?;
    warnings.extend(issues);
    let (paths, skipped) = resample_all(&traces, options.steps);
    let skipped_ids: std::collections::BTreeSet<_> =
        skipped.iter().map(|(id, _)| id.clone()).collect();
    warnings.extend(skipped.into_iter().map(|(_, i)| i));
    let kept: Vec<_> = traces
        .iter()
        .filter(|t| !skipped_ids.contains(&t.id))
        .collect();
    let ids: Vec<String> = kept.iter().map(|t| t.id.to_string()).collect();
    let groups: Vec<String> = kept.iter().map(|t| t.id.condition.to_string()).collect();
    let mut out = String::from("# trajectories\n");
    let distinct = groups
        .iter()
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    if distinct < 2 || paths.len() <= distinct {
        writeln!(
            out,
            "# skipped: {} usable traces in {distinct} condition(s); need at least 2 conditions and more traces than conditions",
            paths.len()
        )
        .unwrap();
        return Ok(out);
    }
    let d = dtw_matrix(&paths, ids);
    out.push_str(&permanova_table(&d, &groups, options.perms, options.seed)?.to_tsv());
    Ok(out)
}
