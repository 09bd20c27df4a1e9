use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::question::{Outcome, OutcomeKind, Question, Variant};
use super::scoring::{score_test, Score, ScoreError};
use crate::condition::Condition;
use crate::overlay::OverlayState;

/// Monotonic millisecond clock, injected so sessions can run on fake time.
pub trait Clock {
    fn now_ms(&self) -> u64;
}

impl<C: Clock + ?Sized> Clock for &C {
    fn now_ms(&self) -> u64 {
        (**self).now_ms()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionRecord {
    pub question: Question,
    pub outcome: Outcome,
}

/// One participant taking one question set under one condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuizSession {
    pub participant_id: String,
    pub condition: Condition,
    pub variant_tag: Variant,
    /// Per-question limit in whole seconds.
    pub time_limit: u32,
    /// Seed of the question-order shuffle.
    pub seed: u64,
    pub records: Vec<QuestionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub settings: Option<OverlayState>,
}

impl QuizSession {
    pub fn score(&self) -> Result<Score, ScoreError> {
        score_test(
            self.records
                .iter()
                .map(|r| (r.outcome.kind, r.question.n_op())),
        )
    }

    /// Counts of correct, incorrect, timeout and skip outcomes.
    pub fn tallies(&self) -> [usize; 4] {
        let mut t = [0; 4];
        for r in &self.records {
            t[match r.outcome.kind {
                OutcomeKind::Correct => 0,
                OutcomeKind::Incorrect => 1,
                OutcomeKind::Timeout => 2,
                OutcomeKind::Skip => 3,
            }] += 1;
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("no question is being shown")]
    NoActiveQuestion,
    #[error("a question is already being shown")]
    QuestionActive,
    #[error("answer {index} out of range for {n_op} options")]
    AnswerOutOfRange { index: usize, n_op: usize },
}

/// Drives a session one question at a time.
///
/// Elapsed time runs from `show_next` to the answer or skip. Anything that
/// arrives at or past the limit is recorded as a timeout with the elapsed time
/// pinned to the limit.
pub struct SessionRunner<C: Clock> {
    clock: C,
    session: QuizSession,
    queue: Vec<Question>,
    active: Option<(Question, u64)>,
}

impl<C: Clock> SessionRunner<C> {
    /// Questions are shuffled with `seed`; the seed is kept in the log.
    pub fn new(
        participant_id: impl Into<String>,
        condition: Condition,
        variant_tag: Variant,
        mut questions: Vec<Question>,
        time_limit: u32,
        seed: u64,
        clock: C,
    ) -> Self {
        questions.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        // Popped from the back.
        questions.reverse();
        Self {
            clock,
            session: QuizSession {
                participant_id: participant_id.into(),
                condition,
                variant_tag,
                time_limit,
                seed,
                records: Vec::new(),
                settings: None,
            },
            queue: questions,
            active: None,
        }
    }

    pub fn with_settings(mut self, settings: OverlayState) -> Self {
        self.session.settings = Some(settings);
        self
    }

    pub fn remaining(&self) -> usize {
        self.queue.len() + usize::from(self.active.is_some())
    }

    pub fn current(&self) -> Option<&Question> {
        self.active.as_ref().map(|(q, _)| q)
    }

    /// Shows the next question; `None` once all have been answered.
    pub fn show_next(&mut self) -> Result<Option<&Question>, SessionError> {
        if self.active.is_some() {
            return Err(SessionError::QuestionActive);
        }
        let Some(q) = self.queue.pop() else {
            return Ok(None);
        };
        self.active = Some((q, self.clock.now_ms()));
        Ok(self.current())
    }

    fn limit_ms(&self) -> u64 {
        u64::from(self.session.time_limit) * 1000
    }

    fn elapsed_ms(&self) -> Result<u64, SessionError> {
        let (_, shown) = self.active.as_ref().ok_or(SessionError::NoActiveQuestion)?;
        Ok(self.clock.now_ms().saturating_sub(*shown))
    }

    fn close(
        &mut self,
        kind: OutcomeKind,
        answer_index: Option<usize>,
        elapsed_ms: u64,
    ) -> Outcome {
        let (question, _) = self.active.take().expect("checked by caller");
        let limit = self.limit_ms();
        let outcome = if elapsed_ms >= limit {
            Outcome {
                kind: OutcomeKind::Timeout,
                answer_index: None,
                elapsed: limit as f64 / 1000.0,
            }
        } else {
            Outcome {
                kind,
                answer_index,
                elapsed: elapsed_ms as f64 / 1000.0,
            }
        };
        self.session.records.push(QuestionRecord {
            question,
            outcome: outcome.clone(),
        });
        outcome
    }

    pub fn answer(&mut self, index: usize) -> Result<Outcome, SessionError> {
        let elapsed = self.elapsed_ms()?;
        let q = self.current().expect("active");
        if index >= q.n_op() {
            return Err(SessionError::AnswerOutOfRange {
                index,
                n_op: q.n_op(),
            });
        }
        let kind = if index == q.correct_index {
            OutcomeKind::Correct
        } else {
            OutcomeKind::Incorrect
        };
        Ok(self.close(kind, Some(index), elapsed))
    }

    pub fn skip(&mut self) -> Result<Outcome, SessionError> {
        let elapsed = self.elapsed_ms()?;
        Ok(self.close(OutcomeKind::Skip, None, elapsed))
    }

    /// Records a timeout if the active question has run out of time.
    pub fn poll(&mut self) -> Option<Outcome> {
        let elapsed = self.elapsed_ms().ok()?;
        (elapsed >= self.limit_ms()).then(|| self.close(OutcomeKind::Timeout, None, elapsed))
    }

    pub fn session(&self) -> &QuizSession {
        &self.session
    }

    pub fn finish(self) -> QuizSession {
        self.session
    }
}
