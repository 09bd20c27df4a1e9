//! Pointer samples and interaction events recorded during a session.
//!
//! Positions are normalized to the chart stimulus viewport, timestamps are
//! milliseconds since the question was shown.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::condition::Condition;
use crate::quiz::Variant;

/// Nominal recording cadence.
pub const SAMPLE_RATE_HZ: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointerSample {
    pub x: f64,
    pub y: f64,
    pub t: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    Click,
    SettingChange,
    QuestionShown,
    Answer,
    Skip,
    Timeout,
}

impl EventKind {
    pub const ALL: [EventKind; 6] = [
        EventKind::Click,
        EventKind::SettingChange,
        EventKind::QuestionShown,
        EventKind::Answer,
        EventKind::Skip,
        EventKind::Timeout,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Click => "click",
            EventKind::SettingChange => "setting-change",
            EventKind::QuestionShown => "question-shown",
            EventKind::Answer => "answer",
            EventKind::Skip => "skip",
            EventKind::Timeout => "timeout",
        }
    }

    pub fn parse(s: &str) -> Option<EventKind> {
        EventKind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub t: u64,
    pub kind: EventKind,
    #[serde(default)]
    pub payload: BTreeMap<String, String>,
}

/// Identifies the trace of one participant answering one question.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TraceId {
    pub participant_id: String,
    pub condition: Condition,
    pub variant_tag: Variant,
    pub question_id: String,
}

impl fmt::Display for TraceId {
    /// `P{pid}_{condition}_{variant}_{qid}`, the trace file stem.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P{}_{}_{}_{}",
            self.participant_id, self.condition, self.variant_tag, self.question_id
        )
    }
}

impl TraceId {
    /// Parses a file stem written by [`TraceId`]'s `Display`.
    pub fn parse(stem: &str) -> Option<TraceId> {
        let mut parts = stem.strip_prefix('P')?.splitn(4, '_');
        let participant_id = parts.next().filter(|s| !s.is_empty())?.into();
        let condition = Condition::parse(parts.next()?)?;
        let variant_tag = Variant::parse(parts.next()?)?;
        let question_id = parts.next().filter(|s| !s.is_empty())?.into();
        Some(TraceId {
            participant_id,
            condition,
            variant_tag,
            question_id,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceError {
    #[error("sample at t={t} ms is not after the previous sample at t={last} ms")]
    NonMonotone { t: u64, last: u64 },
    #[error("event at t={t} ms precedes the previous event at t={last} ms")]
    EventOutOfOrder { t: u64, last: u64 },
    #[error("sample coordinates must be finite")]
    NonFinite,
}

/// Append-only record of pointer samples and events for one question.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointerTrace {
    pub id: TraceId,
    samples: Vec<PointerSample>,
    events: Vec<EventRecord>,
}

impl PointerTrace {
    pub fn new(id: TraceId) -> Self {
        Self {
            id,
            samples: Vec::new(),
            events: Vec::new(),
        }
    }

    /// Builds a trace from samples, enforcing the same rules as
    /// [`PointerTrace::append_sample`].
    pub fn from_samples(
        id: TraceId,
        samples: impl IntoIterator<Item = PointerSample>,
    ) -> Result<Self, TraceError> {
        let mut trace = Self::new(id);
        for s in samples {
            trace.append_sample(s)?;
        }
        Ok(trace)
    }

    pub fn samples(&self) -> &[PointerSample] {
        &self.samples
    }

    pub fn events(&self) -> &[EventRecord] {
        &self.events
    }

    /// Appends a sample with coordinates clamped to `[0, 1]`. Timestamps must
    /// strictly increase; no cadence is enforced.
    pub fn append_sample(&mut self, sample: PointerSample) -> Result<(), TraceError> {
        if !(sample.x.is_finite() && sample.y.is_finite()) {
            return Err(TraceError::NonFinite);
        }
        if let Some(last) = self.samples.last() {
            if sample.t <= last.t {
                return Err(TraceError::NonMonotone {
                    t: sample.t,
                    last: last.t,
                });
            }
        }
        self.samples.push(PointerSample {
            x: sample.x.clamp(0.0, 1.0),
            y: sample.y.clamp(0.0, 1.0),
            t: sample.t,
        });
        Ok(())
    }

    /// Appends an event; events may share a timestamp but never go back.
    pub fn push_event(&mut self, event: EventRecord) -> Result<(), TraceError> {
        if let Some(last) = self.events.last() {
            if event.t < last.t {
                return Err(TraceError::EventOutOfOrder {
                    t: event.t,
                    last: last.t,
                });
            }
        }
        self.events.push(event);
        Ok(())
    }

    pub fn has_event(&self, kind: EventKind) -> bool {
        self.events.iter().any(|e| e.kind == kind)
    }

    /// Copy of this trace keeping at most one sample per `1/hz` window.
    pub fn downsample_to_cadence(&self, hz: f64) -> PointerTrace {
        PointerTrace {
            id: self.id.clone(),
            samples: downsample_to_cadence(&self.samples, hz),
            events: self.events.clone(),
        }
    }
}

/// Keeps the latest sample in each `1/hz` window.
///
/// Windows are anchored at question start (`t = 0`). Timestamps carry
/// millisecond quantization, so a sample less than 1 ms before a window
/// boundary counts toward the next window; this keeps an input already at the
/// target cadence intact. Input must be time-ordered.
pub fn downsample_to_cadence(samples: &[PointerSample], hz: f64) -> Vec<PointerSample> {
    assert!(hz > 0.0 && hz.is_finite(), "cadence must be positive");
    let window = |t: u64| libm::floor((t as f64 + 1.0) * hz / 1000.0) as u64;
    let mut out: Vec<PointerSample> = Vec::with_capacity(samples.len());
    let mut last_window = None;
    for s in samples {
        let w = window(s.t);
        if last_window == Some(w) {
            *out.last_mut().expect("window seen") = *s;
        } else {
            out.push(*s);
            last_window = Some(w);
        }
    }
    out
}

/// Fixed-capacity FIFO that drops its oldest entry when full and counts the
/// drops. Used to hand records from the input thread to a writer without
/// ever blocking the producer.
#[derive(Debug, Clone)]
pub struct BoundedBuffer<T> {
    items: VecDeque<T>,
    capacity: usize,
    dropped: u64,
}

impl<T> BoundedBuffer<T> {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "capacity must be positive");
        Self {
            items: VecDeque::with_capacity(capacity),
            capacity,
            dropped: 0,
        }
    }

    pub fn push(&mut self, item: T) {
        if self.items.len() == self.capacity {
            self.items.pop_front();
            self.dropped += 1;
        }
        self.items.push_back(item);
    }

    pub fn drain(&mut self) -> Vec<T> {
        self.items.drain(..).collect()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Entries lost to overflow since creation.
    pub fn dropped(&self) -> u64 {
        self.dropped
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn id() -> TraceId {
        TraceId {
            participant_id: "4".into(),
            condition: Condition::MiniMap,
            variant_tag: Variant::V2,
            question_id: "Q3".into(),
        }
    }

    fn at(t: u64) -> PointerSample {
        PointerSample { x: 0.5, y: 0.5, t }
    }

    #[test]
    fn append_to_empty() {
        let mut tr = PointerTrace::new(id());
        tr.append_sample(at(33)).unwrap();
        assert_eq!(tr.samples().len(), 1);
    }

    #[test]
    fn equal_timestamp_is_rejected() {
        let mut tr = PointerTrace::new(id());
        tr.append_sample(at(33)).unwrap();
        assert_eq!(
            tr.append_sample(at(33)),
            Err(TraceError::NonMonotone { t: 33, last: 33 })
        );
        assert_eq!(tr.samples().len(), 1);
    }

    #[test]
    fn coordinates_are_clamped() {
        let mut tr = PointerTrace::new(id());
        tr.append_sample(PointerSample {
            x: -0.2,
            y: 1.4,
            t: 0,
        })
        .unwrap();
        assert_eq!(
            tr.samples()[0],
            PointerSample {
                x: 0.0,
                y: 1.0,
                t: 0
            }
        );
        assert_eq!(
            tr.append_sample(PointerSample {
                x: f64::NAN,
                y: 0.0,
                t: 5
            }),
            Err(TraceError::NonFinite)
        );
    }

    #[test]
    fn one_second_at_thirty_hertz() {
        let samples = (0..30u64).map(|k| at((k * 1000 + 15) / 30));
        let tr = PointerTrace::from_samples(id(), samples).unwrap();
        assert_eq!(tr.samples().len(), 30);
        assert_eq!(tr.downsample_to_cadence(30.0).samples().len(), 30);
    }

    #[test]
    fn floor_quantized_thirty_hertz_is_kept() {
        let samples: Vec<_> = (0..90u64).map(|k| at(k * 1000 / 30)).collect();
        assert_eq!(downsample_to_cadence(&samples, 30.0).len(), 90);
    }

    #[test]
    fn faster_input_is_thinned_keeping_latest() {
        let samples: Vec<_> = (0..120u64).map(|k| at((k * 1000 + 60) / 120)).collect();
        let out = downsample_to_cadence(&samples, 30.0);
        assert!(out.len() <= 30, "{}", out.len());
        assert_eq!(out.last(), samples.last());
    }

    #[test]
    fn empty_stays_empty() {
        assert!(downsample_to_cadence(&[], 30.0).is_empty());
    }

    #[test]
    fn trace_id_round_trips_through_stem() {
        let stem = id().to_string();
        assert_eq!(stem, "P4_mini-map_v2_Q3");
        assert_eq!(TraceId::parse(&stem), Some(id()));
        assert_eq!(TraceId::parse("P4_zoom_v2_Q3"), None);
        let odd = TraceId {
            question_id: "Q_11".into(),
            ..id()
        };
        assert_eq!(TraceId::parse(&odd.to_string()), Some(odd));
    }

    #[test]
    fn bounded_buffer_drops_oldest() {
        let mut b = BoundedBuffer::new(3);
        for i in 0..5 {
            b.push(i);
        }
        assert_eq!(b.dropped(), 2);
        assert_eq!(b.drain(), vec![2, 3, 4]);
        assert!(b.is_empty());
    }

    #[test]
    fn events_must_not_go_back() {
        let mut tr = PointerTrace::new(id());
        let ev = |t| EventRecord {
            t,
            kind: EventKind::Click,
            payload: BTreeMap::new(),
        };
        tr.push_event(ev(10)).unwrap();
        tr.push_event(ev(10)).unwrap();
        assert!(tr.push_event(ev(9)).is_err());
        assert!(tr.has_event(EventKind::Click));
        assert!(!tr.has_event(EventKind::Skip));
    }
}
