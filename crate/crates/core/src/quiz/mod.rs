//! Mini-VLAT style sessions: questions, outcomes, scoring, counterbalanced
//! condition orders and the data transforms behind question variants.

mod coverage;
mod order;
mod question;
mod scoring;
mod session;
mod transform;

pub use coverage::{check_variant_coverage, CoverageViolation, QuestionBundle, QuestionSet};
pub use order::{assign_order, ConditionAssignment, COUNTERBALANCING};
pub use question::{Modification, Outcome, OutcomeKind, Question, Variant};
pub use scoring::{score_test, test_duration, time_limit, Score, ScoreError};
pub use session::{Clock, QuestionRecord, QuizSession, SessionError, SessionRunner};
pub use transform::{
    inverse_permutation, transform_magnitude, transform_noise, transform_permute, TransformError,
};

pub use crate::condition::Condition;
