//! Chart bundles on disk.
//!
//! ```text
//! <root>/charts/<chart_id>.json   annotation
//! <root>/charts/<chart_id>.png    bitmap
//! <root>/questions/v0.json        question sets v0, v1, v2 and tutorial
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use chartlens_core::quiz::{check_variant_coverage, QuestionBundle, QuestionSet};
use chartlens_core::ChartAnnotation;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{self, Error, Result};
use crate::formats::annotation::{load_annotation, AnnotationError};
use crate::formats::questions::load_question_bundle;

pub const CHARTS_DIR: &str = "charts";
pub const QUESTIONS_DIR: &str = "questions";
pub const QUESTION_SETS: [QuestionSet; 4] = [
    QuestionSet::V0,
    QuestionSet::V1,
    QuestionSet::V2,
    QuestionSet::Tutorial,
];

/// One problem found while loading a bundle, located by file and, where
/// possible, field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    /// Path relative to the bundle root.
    pub file: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.file, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct ChartEntry {
    pub annotation: ChartAnnotation,
    pub annotation_path: PathBuf,
    pub bitmap_path: PathBuf,
}

/// A loaded bundle plus everything wrong with it. Charts and question sets
/// that failed to load are absent; their problems are in `issues`.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub root: PathBuf,
    pub charts: BTreeMap<String, ChartEntry>,
    pub question_sets: Vec<QuestionBundle>,
    pub issues: Vec<Issue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifestChart {
    pub chart_id: String,
    pub annotation: String,
    pub bitmap: String,
    pub annotation_sha256: String,
    pub bitmap_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifestQuestionSet {
    pub set: QuestionSet,
    pub path: String,
    pub questions: usize,
    pub sha256: String,
}

/// Inventory of a bundle with content digests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleManifest {
    pub root: String,
    pub charts: Vec<ManifestChart>,
    pub question_sets: Vec<ManifestQuestionSet>,
}

fn relative(root: &Path, path: &Path) -> String {
    path.strip_prefix(root)
        .unwrap_or(path)
        .components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

fn sha256_file(path: &Path) -> Result<String> {
    Ok(hex::encode(Sha256::digest(error::read(path)?)))
}

fn png_size(path: &Path) -> std::result::Result<(u32, u32), String> {
    let file = File::open(path).map_err(|e| e.to_string())?;
    let reader = png::Decoder::new(BufReader::new(file))
        .read_info()
        .map_err(|e| format!("not a PNG: {e}"))?;
    let info = reader.info();
    Ok((info.width, info.height))
}

impl Bundle {
    /// Loads and cross-checks a bundle. Only an unreadable root or charts
    /// directory is an error; every other problem is collected as an issue.
    pub fn load(root: impl AsRef<Path>) -> Result<Bundle> {
        let root = root.as_ref().to_path_buf();
        let mut bundle = Bundle {
            root: root.clone(),
            charts: BTreeMap::new(),
            question_sets: Vec::new(),
            issues: Vec::new(),
        };
        let charts_dir = root.join(CHARTS_DIR);
        let mut annotation_files: Vec<PathBuf> = std::fs::read_dir(&charts_dir)
            .map_err(|e| Error::io(&charts_dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        annotation_files.sort();
        for path in annotation_files {
            bundle.load_chart(&path)?;
        }
        for set in QUESTION_SETS {
            bundle.load_question_set(set)?;
        }
        bundle.check_questions();
        Ok(bundle)
    }

    fn issue(&mut self, path: &Path, message: impl Into<String>) {
        self.issues.push(Issue {
            file: relative(&self.root, path),
            message: message.into(),
        });
    }

    fn load_chart(&mut self, path: &Path) -> Result<()> {
        let bytes = error::read(path)?;
        let annotation = match load_annotation(&bytes) {
            Ok(a) => a,
            Err(AnnotationError::Invalid(violations)) => {
                for v in violations {
                    self.issue(path, v.to_string());
                }
                return Ok(());
            }
            Err(e) => {
                self.issue(path, e.to_string());
                return Ok(());
            }
        };
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        if annotation.chart_id != stem {
            self.issue(
                path,
                format!(
                    "chart_id `{}` does not match the file name",
                    annotation.chart_id
                ),
            );
            return Ok(());
        }
        let bitmap_path = path.with_extension("png");
        match png_size(&bitmap_path) {
            Ok((w, h)) if (w, h) != (annotation.image_width, annotation.image_height) => self
                .issue(
                    &bitmap_path,
                    format!(
                        "bitmap is {w}×{h} but the annotation declares {}×{}",
                        annotation.image_width, annotation.image_height
                    ),
                ),
            Ok(_) => {}
            Err(e) => self.issue(&bitmap_path, e),
        }
        self.charts.insert(
            stem,
            ChartEntry {
                annotation,
                annotation_path: path.to_path_buf(),
                bitmap_path,
            },
        );
        Ok(())
    }

    fn load_question_set(&mut self, set: QuestionSet) -> Result<()> {
        let path = self.question_set_path(set);
        if !path.exists() {
            // Reported by the coverage check.
            return Ok(());
        }
        match load_question_bundle(&error::read(&path)?) {
            Ok(b) if b.set != set => {
                self.issue(&path, format!("declares set `{}`", b.set.as_str()))
            }
            Ok(b) => self.question_sets.push(b),
            Err(e) => self.issue(&path, e.to_string()),
        }
        Ok(())
    }

    fn check_questions(&mut self) {
        for v in check_variant_coverage(&self.question_sets) {
            self.issues.push(Issue {
                file: QUESTIONS_DIR.into(),
                message: v.to_string(),
            });
        }
        let mut unresolved = Vec::new();
        for b in &self.question_sets {
            for q in &b.questions {
                let file = format!("{QUESTIONS_DIR}/{}.json", b.set.as_str());
                match self.charts.get(&q.chart_id) {
                    None => unresolved.push(Issue {
                        file,
                        message: format!(
                            "{}: chart `{}` is not in the bundle",
                            q.question_id, q.chart_id
                        ),
                    }),
                    Some(c) if c.annotation.chart_type != q.chart_type => unresolved.push(Issue {
                        file,
                        message: format!(
                            "{}: chart `{}` is a {} chart, question expects {}",
                            q.question_id,
                            q.chart_id,
                            c.annotation.chart_type.as_str(),
                            q.chart_type.as_str()
                        ),
                    }),
                    Some(_) => {}
                }
            }
        }
        self.issues.extend(unresolved);
    }

    pub fn question_set_path(&self, set: QuestionSet) -> PathBuf {
        self.root
            .join(QUESTIONS_DIR)
            .join(format!("{}.json", set.as_str()))
    }

    pub fn question_set(&self, set: QuestionSet) -> Option<&QuestionBundle> {
        self.question_sets.iter().find(|b| b.set == set)
    }

    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    /// Number of scored question sets and questions per set, for the summary
    /// line of a valid bundle.
    pub fn shape(&self) -> (usize, usize) {
        let scored: Vec<&QuestionBundle> = self
            .question_sets
            .iter()
            .filter(|b| b.set.variant().is_some())
            .collect();
        (
            scored.first().map_or(0, |b| b.questions.len()),
            scored.len(),
        )
    }

    pub fn manifest(&self) -> Result<BundleManifest> {
        let charts = self
            .charts
            .iter()
            .map(|(id, c)| {
                Ok(ManifestChart {
                    chart_id: id.clone(),
                    annotation: relative(&self.root, &c.annotation_path),
                    bitmap: relative(&self.root, &c.bitmap_path),
                    annotation_sha256: sha256_file(&c.annotation_path)?,
                    bitmap_sha256: sha256_file(&c.bitmap_path)?,
                })
            })
            .collect::<Result<_>>()?;
        let question_sets = self
            .question_sets
            .iter()
            .map(|b| {
                let path = self.question_set_path(b.set);
                Ok(ManifestQuestionSet {
                    set: b.set,
                    path: relative(&self.root, &path),
                    questions: b.questions.len(),
                    sha256: sha256_file(&path)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(BundleManifest {
            root: self.root.display().to_string(),
            charts,
            question_sets,
        })
    }
}
