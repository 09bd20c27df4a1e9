//! Command-line interface. Every command is a thin composition of library
//! calls; `run` returns the process exit code.

use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use chartlens_core::analysis::DEFAULT_STEPS;
use chartlens_core::quiz::{assign_order, test_duration};
use chartlens_core::{Condition, Point, Rect};
use clap::{Args, Parser, Subcommand};

use crate::analyze::{
    density_document, dtw_matrix, groups_for, load_traces, mean_path_document, permanova_table,
    resample_all, sus_table, TraceFilter,
};
use crate::bundle::{Bundle, QUESTIONS_DIR};
use crate::error::{self, Error, Result};
use crate::formats::layout::layout_json;
use crate::formats::session::load_session;
use crate::formats::settings::load_settings;
use crate::formats::table::{
    labels_to_tsv, matrix_to_tsv, parse_labels_tsv, parse_matrix_tsv, parse_responses_tsv,
};
use crate::formats::to_json;
use crate::report::{cmd_report, ReportOptions};
use crate::server::{serve, AppState};

/// Environment variable naming the default bundle root.
pub const BUNDLE_ENV: &str = "CHARTLENS_BUNDLE";

#[derive(Debug, Parser)]
#[command(
    name = "chartlens",
    version,
    about = "Pointer-anchored chart context: bundles, layout service, scoring and trajectory analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every annotation, bitmap and question set of a bundle.
    Validate {
        #[arg(long, env = BUNDLE_ENV)]
        bundle: PathBuf,
        /// Also write the bundle manifest with SHA-256 digests here.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Check only the question sets of a bundle for variant coverage.
    VariantCheck { bundle: PathBuf },
    /// Serve charts, layouts and session/trace ingestion over HTTP.
    Serve {
        #[arg(long, env = BUNDLE_ENV)]
        bundle: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Directory receiving `sessions/` and `traces/`.
        #[arg(long, default_value = "data")]
        out: PathBuf,
    },
    /// Resolve one overlay frame and print its layout document.
    Layout {
        #[arg(long, env = BUNDLE_ENV)]
        bundle: PathBuf,
        #[arg(long)]
        chart: String,
        /// Pointer x in viewport units.
        #[arg(long)]
        x: f64,
        /// Pointer y in viewport units.
        #[arg(long)]
        y: f64,
        /// Settings document; defaults apply when absent.
        #[arg(long)]
        settings: Option<PathBuf>,
        /// Overrides the settings document's method.
        #[arg(long, value_parser = parse_condition)]
        method: Option<Condition>,
        /// Where the chart is shown, as x0,y0,x1,y1 in viewport units.
        #[arg(long, value_parser = parse_rect)]
        chart_rect: Option<Rect>,
    },
    /// Score one session log.
    Score { session: PathBuf },
    /// Print the condition order for a participant (numbered from 1).
    Assign {
        #[arg(long)]
        participant: usize,
    },
    /// Per-participant, per-condition summary of a directory of sessions.
    Report {
        dir: PathBuf,
        /// Append the trajectory PERMANOVA.
        #[arg(long)]
        analysis: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 999)]
        perms: u32,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        #[arg(long)]
        exclude_skipped: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trajectory and questionnaire statistics.
    #[command(subcommand)]
    Analyze(Analyze),
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    /// Directory searched recursively for trace files.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Leave out traces of skipped questions.
    #[arg(long)]
    pub exclude_skipped: bool,
    /// Only this question id.
    #[arg(long)]
    pub question: Option<String>,
}

impl TraceArgs {
    fn filter(&self) -> TraceFilter {
        TraceFilter {
            exclude_skipped: self.exclude_skipped,
            question: self.question.clone(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Analyze {
    /// Pairwise DTW distances between resampled traces.
    Dtw {
        #[command(flatten)]
        traces: TraceArgs,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        /// Condition of each matrix row, for `analyze permanova`.
        #[arg(long)]
        labels_out: Option<PathBuf>,
    },
    /// PERMANOVA on a distance matrix, with Holm-corrected pairwise tests.
    Permanova {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value_t = 999)]
        perms: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pointer density grids per condition.
    Density {
        #[command(flatten)]
        traces: TraceArgs,
        #[arg(long, default_value_t = 64)]
        bins: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean trajectory per question and condition.
    MeanPath {
        #[command(flatten)]
        traces: TraceArgs,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SUS scores from `id<TAB>r1..r10` rows.
    Sus {
        responses: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_condition(s: &str) -> std::result::Result<Condition, String> {
    Condition::parse(s).ok_or_else(|| {
        format!(
            "expected one of {}",
            Condition::ALL.map(|c| c.as_str()).join(", ")
        )
    })
}

fn parse_rect(s: &str) -> std::result::Result<Rect, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match v.as_slice() {
        &[x0, y0, x1, y1] => Ok(Rect::new(x0, y0, x1, y1)),
        _ => Err("expected x0,y0,x1,y1".into()),
    }
}

/// Writes to `path`, or to `stdout` when there is none.
fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => error::write(p, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn print(stdout: &mut dyn Write, text: impl AsRef<str>) -> Result<()> {
    writeln!(stdout, "{}", text.as_ref()).map_err(|e| Error::io("<stdout>", e))
}

/// Runs one command, printing results to `stdout` and diagnostics to
/// `stderr`. Returns the exit code: 0 ok, 1 validation failure, 2 I/O.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn warn_all(stderr: &mut dyn Write, issues: &[crate::bundle::Issue]) {
    for i in issues {
        let _ = writeln!(stderr, "warning: {i}");
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    match command {
        Command::Validate { bundle, manifest } => {
            let b = Bundle::load(&bundle)?;
            if let Some(path) = manifest {
                error::write(&path, to_json(&b.manifest()?))?;
            }
            if b.is_valid() {
                let (charts, variants) = b.shape();
                print(stdout, format!("OK, {charts} charts × {variants} variants"))?;
                Ok(0)
            } else {
                for i in &b.issues {
                    print(stdout, i.to_string())?;
                }
                print(stdout, format!("{} problem(s)", b.issues.len()))?;
                Ok(1)
            }
        }
        Command::VariantCheck { bundle } => {
            let b = Bundle::load(&bundle)?;
            let issues: Vec<_> = b
                .issues
                .iter()
                .filter(|i| i.file.starts_with(QUESTIONS_DIR))
                .collect();
            if issues.is_empty() {
                let (charts, variants) = b.shape();
                print(stdout, format!("OK, {charts} charts × {variants} variants"))?;
                Ok(0)
            } else {
                for i in &issues {
                    print(stdout, i.to_string())?;
                }
                Ok(1)
            }
        }
        Command::Serve {
            bundle,
            port,
            host,
            out,
        } => {
            let b = Bundle::load(&bundle)?;
            if !b.is_valid() {
                warn_all(stderr, &b.issues);
                return Err(Error::Invalid {
                    count: b.issues.len(),
                });
            }
            let state = AppState::new(b, out);
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Error::io("<runtime>", e))?;
            let addr = SocketAddr::new(host, port);
            runtime
                .block_on(serve(state, addr))
                .map_err(|e| Error::io(addr.to_string(), e))?;
            Ok(0)
        }
        Command::Layout {
            bundle,
            chart,
            x,
            y,
            settings,
            method,
            chart_rect,
        } => {
            let b = Bundle::load(&bundle)?;
            let entry = b
                .charts
                .get(&chart)
                .ok_or_else(|| Error::format(&bundle, format!("no chart `{chart}`")))?;
            let mut state = match settings {
                Some(p) => load_settings(&error::read(&p)?).map_err(|e| Error::format(&p, e))?,
                None => Default::default(),
            };
            if let Some(m) = method {
                state.method = m;
            }
            let frame = state.layout(
                Point::new(x, y),
                &entry.annotation,
                &chart_rect.unwrap_or(Rect::UNIT),
            );
            stdout
                .write_all(layout_json(&frame).as_bytes())
                .map_err(|e| Error::io("<stdout>", e))?;
            Ok(0)
        }
        Command::Score { session } => {
            let s =
                load_session(&error::read(&session)?).map_err(|e| Error::format(&session, e))?;
            let score = s.score().map_err(|e| Error::format(&session, e))?;
            let duration = test_duration(&s).map_err(|e| Error::format(&session, e))?;
            let [c, i, t, k] = s.tallies();
            print(
                stdout,
                format!(
                    "participant\t{}\ncondition\t{}\nvariant\t{}\nscore\t{score}\nduration_s\t{duration:.3}\ncorrect\t{c}\nincorrect\t{i}\ntimeout\t{t}\nskip\t{k}",
                    s.participant_id, s.condition, s.variant_tag
                ),
            )?;
            Ok(0)
        }
        Command::Assign { participant } => {
            if participant == 0 {
                return Err(Error::format(
                    "--participant",
                    "participants are numbered from 1",
                ));
            }
            let a = assign_order(participant - 1);
            let mut text = format!("participant\t{participant}\norder\t{}\n", a.order_index + 1);
            for (k, (c, v)) in a.sequence.iter().enumerate() {
                text.push_str(&format!("task{}\t{c}\t{v}\n", k + 1));
            }
            emit(None, &text, stdout)?;
            Ok(0)
        }
        Command::Report {
            dir,
            analysis,
            seed,
            perms,
            steps,
            exclude_skipped,
            out,
        } => {
            let options = ReportOptions {
                analysis,
                seed,
                perms,
                steps,
                filter: TraceFilter {
                    exclude_skipped,
                    question: None,
                },
            };
            let report = cmd_report(&dir, &options)?;
            warn_all(stderr, &report.warnings);
            emit(out.as_deref(), &report.text, stdout)?;
            Ok(0)
        }
        Command::Analyze(a) => analyze(a, stdout, stderr),
    }
}

fn analyze(command: Analyze, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    match command {
        Analyze::Dtw {
            traces,
            steps,
            out,
            labels_out,
        } => {
            let (ts, issues) = load_traces(&traces.input, &traces.filter())?;
            warn_all(stderr, &issues);
            let (paths, skipped) = resample_all(&ts, steps);
            let skipped_ids: Vec<_> = skipped.iter().map(|(id, _)| id.clone()).collect();
            warn_all(
                stderr,
                &skipped.into_iter().map(|(_, i)| i).collect::<Vec<_>>(),
            );
            let kept: Vec<_> = ts.iter().filter(|t| !skipped_ids.contains(&t.id)).collect();
            let ids: Vec<String> = kept.iter().map(|t| t.id.to_string()).collect();
            let d = dtw_matrix(&paths, ids.clone());
            error::write(&out, matrix_to_tsv(&d))?;
            if let Some(path) = labels_out {
                let conditions: Vec<String> =
                    kept.iter().map(|t| t.id.condition.to_string()).collect();
                error::write(
                    &path,
                    labels_to_tsv(
                        ids.iter()
                            .map(String::as_str)
                            .zip(conditions.iter().map(String::as_str)),
                    ),
                )?;
            }
            let _ = writeln!(
                stderr,
                "{} traces, {} pairs",
                d.len(),
                d.len() * d.len().saturating_sub(1) / 2
            );
            Ok(0)
        }
        Analyze::Permanova {
            matrix,
            labels,
            perms,
            seed,
            out,
        } => {
            let text = String::from_utf8_lossy(&error::read(&matrix)?).into_owned();
            let d = parse_matrix_tsv(&text).map_err(|e| Error::format(&matrix, e))?;
            let ltext = String::from_utf8_lossy(&error::read(&labels)?).into_owned();
            let pairs = parse_labels_tsv(&ltext).map_err(|e| Error::format(&labels, e))?;
            let groups = groups_for(&d, &pairs)?;
            let table = permanova_table(&d, &groups, perms, seed)?;
            emit(out.as_deref(), &table.to_tsv(), stdout)?;
            Ok(0)
        }
        Analyze::Density { traces, bins, out } => {
            let (ts, issues) = load_traces(&traces.input, &traces.filter())?;
            warn_all(stderr, &issues);
            emit(
                out.as_deref(),
                &to_json(&density_document(&ts, bins)?),
                stdout,
            )?;
            Ok(0)
        }
        Analyze::MeanPath { traces, steps, out } => {
            let (ts, issues) = load_traces(&traces.input, &traces.filter())?;
            warn_all(stderr, &issues);
            let (paths, skipped) = resample_all(&ts, steps);
            let skipped_ids: Vec<_> = skipped.iter().map(|(id, _)| id.clone()).collect();
            warn_all(
                stderr,
                &skipped.into_iter().map(|(_, i)| i).collect::<Vec<_>>(),
            );
            let ids = ts
                .iter()
                .map(|t| t.id.clone())
                .filter(|id| !skipped_ids.contains(id));
            let pairs: Vec<_> = ids.zip(paths).collect();
            emit(
                out.as_deref(),
                &to_json(&mean_path_document(&pairs)?),
                stdout,
            )?;
            Ok(0)
        }
        Analyze::Sus { responses, out } => {
            let text = String::from_utf8_lossy(&error::read(&responses)?).into_owned();
            let rows = parse_responses_tsv(&text).map_err(|e| Error::format(&responses, e))?;
            emit(out.as_deref(), &sus_table(&rows)?, stdout)?;
            Ok(0)
        }
    }
}
