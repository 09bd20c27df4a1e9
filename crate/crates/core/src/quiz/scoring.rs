use core::fmt;

use num_rational::Ratio;
use thiserror::Error;

use super::question::{Outcome, OutcomeKind};
use super::session::QuizSession;

/// Extended limit for a question: 150% of the base limit, rounded up to whole
/// seconds (25 s becomes 38 s).
pub fn time_limit(base_seconds: u32) -> u32 {
    // ceil(3b / 2) in integers.
    let tripled = 3 * u64::from(base_seconds);
    tripled.div_ceil(2) as u32
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("cannot score an empty test")]
    Empty,
    #[error("record {index} has no answer options")]
    NoOptions { index: usize },
}

/// Exact test score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Score(pub Ratio<i64>);

impl Score {
    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    pub fn from_integer(v: i64) -> Self {
        Score(Ratio::from_integer(v))
    }
}

impl fmt::Display for Score {
    /// Exact decimal when the expansion terminates, otherwise 6 places.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = (*self.0.numer(), *self.0.denom());
        let mut d = den;
        while d % 2 == 0 {
            d /= 2;
        }
        while d % 5 == 0 {
            d /= 5;
        }
        if d != 1 {
            return write!(f, "{:.6}", self.to_f64());
        }
        let sign = if num < 0 { "-" } else { "" };
        let (whole, mut rem) = (
            num.unsigned_abs() / den as u64,
            num.unsigned_abs() % den as u64,
        );
        write!(f, "{sign}{whole}")?;
        if rem != 0 {
            f.write_str(".")?;
            while rem != 0 {
                rem *= 10;
                write!(f, "{}", rem / den as u64)?;
                rem %= den as u64;
            }
        }
        Ok(())
    }
}

/// Sums +1 per correct answer, 0 per timeout or skip and `-1 / n_op` per
/// incorrect answer, where `n_op` is that question's option count.
pub fn score_test<I>(records: I) -> Result<Score, ScoreError>
where
    I: IntoIterator<Item = (OutcomeKind, usize)>,
{
    let mut total = Ratio::from_integer(0i64);
    let mut seen = 0usize;
    for (index, (kind, n_op)) in records.into_iter().enumerate() {
        seen += 1;
        if n_op == 0 {
            return Err(ScoreError::NoOptions { index });
        }
        total += match kind {
            OutcomeKind::Correct => Ratio::from_integer(1),
            OutcomeKind::Incorrect => Ratio::new(-1, n_op as i64),
            OutcomeKind::Timeout | OutcomeKind::Skip => Ratio::from_integer(0),
        };
    }
    if seen == 0 {
        return Err(ScoreError::Empty);
    }
    Ok(Score(total))
}

/// Seconds spent answering, each question capped at the session limit.
pub fn test_duration(session: &QuizSession) -> Result<f64, ScoreError> {
    if session.records.is_empty() {
        return Err(ScoreError::Empty);
    }
    let cap = f64::from(session.time_limit);
    Ok(session
        .records
        .iter()
        .map(|r| capped(&r.outcome, cap))
        .sum())
}

fn capped(o: &Outcome, cap: f64) -> f64 {
    o.elapsed.clamp(0.0, cap)
}
