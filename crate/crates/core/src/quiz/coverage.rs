use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::question::{Question, Variant};
use crate::annotation::ChartType;

/// Which set a question bundle belongs to. The tutorial set is shared by all
/// conditions and never scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuestionSet {
    V0,
    V1,
    V2,
    Tutorial,
}

impl QuestionSet {
    pub fn variant(self) -> Option<Variant> {
        match self {
            QuestionSet::V0 => Some(Variant::V0),
            QuestionSet::V1 => Some(Variant::V1),
            QuestionSet::V2 => Some(Variant::V2),
            QuestionSet::Tutorial => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            QuestionSet::V0 => "v0",
            QuestionSet::V1 => "v1",
            QuestionSet::V2 => "v2",
            QuestionSet::Tutorial => "tutorial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionBundle {
    pub set: QuestionSet,
    pub questions: Vec<Question>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageViolation {
    /// Set and, when applicable, question the violation concerns.
    pub location: String,
    pub message: String,
}

impl fmt::Display for CoverageViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// Checks that v0, v1 and v2 are each present once with one question for
/// every Mini-VLAT chart type, and that every question is well formed.
pub fn check_variant_coverage(bundles: &[QuestionBundle]) -> Vec<CoverageViolation> {
    let mut out = Vec::new();
    let mut push =
        |location: String, message: String| out.push(CoverageViolation { location, message });

    for variant in Variant::ALL {
        let n = bundles
            .iter()
            .filter(|b| b.set.variant() == Some(variant))
            .count();
        match n {
            0 => push(variant.as_str().into(), "question set missing".into()),
            1 => {}
            _ => push(
                variant.as_str().into(),
                format!("question set appears {n} times"),
            ),
        }
    }

    let mut ids = BTreeSet::new();
    for bundle in bundles {
        let set = bundle.set.as_str();
        for q in &bundle.questions {
            let loc = format!("{set}/{}", q.question_id);
            if !ids.insert(q.question_id.as_str()) {
                push(loc.clone(), "duplicate question_id".into());
            }
            if q.n_op() < 2 {
                push(
                    loc.clone(),
                    format!("needs at least 2 options, has {}", q.n_op()),
                );
            } else if !matches!(q.n_op(), 2 | 4) {
                push(
                    loc.clone(),
                    format!("has {} options; expected 2 or 4", q.n_op()),
                );
            }
            if q.correct_index >= q.n_op() {
                push(
                    loc.clone(),
                    format!(
                        "correct_index {} out of range for {} options",
                        q.correct_index,
                        q.n_op()
                    ),
                );
            }
            if let Some(v) = bundle.set.variant() {
                if q.variant_tag != v {
                    push(
                        loc.clone(),
                        format!("variant_tag {} in set {set}", q.variant_tag),
                    );
                }
            }
        }

        if bundle.set.variant().is_none() {
            if bundle.questions.is_empty() {
                push(set.into(), "tutorial set is empty".into());
            }
            continue;
        }
        for ty in ChartType::ALL {
            let n = bundle
                .questions
                .iter()
                .filter(|q| q.chart_type == ty)
                .count();
            match n {
                0 => push(set.into(), format!("missing {ty} question")),
                1 => {}
                _ => push(set.into(), format!("{n} {ty} questions; expected 1")),
            }
        }
    }
    out
}
