use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::annotation::ChartType;

/// Question-set variant: `v0` is the original Mini-VLAT set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    V0,
    V1,
    V2,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::V0, Variant::V1, Variant::V2];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::V0 => "v0",
            Variant::V1 => "v1",
            Variant::V2 => "v2",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.as_str() == s)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a variant question departs from the original. Question edits are
/// human-authored text; data edits record which transform built the chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modification {
    #[serde(rename = "topic")]
    Topic,
    #[serde(rename = "orientation")]
    Orientation,
    #[serde(rename = "data:permutation")]
    DataPermutation,
    #[serde(rename = "data:noise")]
    DataNoise,
    #[serde(rename = "data:magnitude")]
    DataMagnitude,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Question {
    pub question_id: String,
    pub chart_id: String,
    pub prompt: String,
    pub options: Vec<String>,
    pub correct_index: usize,
    pub variant_tag: Variant,
    pub chart_type: ChartType,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modifications: Vec<Modification>,
}

impl Question {
    /// Number of answer options.
    pub fn n_op(&self) -> usize {
        self.options.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutcomeKind {
    Correct,
    Incorrect,
    Timeout,
    Skip,
}

impl OutcomeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeKind::Correct => "correct",
            OutcomeKind::Incorrect => "incorrect",
            OutcomeKind::Timeout => "timeout",
            OutcomeKind::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub kind: OutcomeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub answer_index: Option<usize>,
    /// Seconds from question shown to the answer, skip or timeout.
    pub elapsed: f64,
}
