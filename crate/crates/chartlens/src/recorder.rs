//! Non-blocking trace recording.
//!
//! The input side pushes raw samples and events into a bounded queue that
//! drops its oldest entry when full. A writer drains it periodically,
//! reduces samples to the logging cadence and appends trace lines.

use std::sync::Mutex;

use chartlens_core::trace::{
    downsample_to_cadence, BoundedBuffer, EventRecord, PointerSample, SAMPLE_RATE_HZ,
};

use crate::formats::trace::{format_line, TraceLine};

pub struct TraceRecorder {
    queue: Mutex<BoundedBuffer<TraceLine>>,
    /// Writer-side state; only touched by `flush` and `finish`.
    writer: Mutex<WriterState>,
    hz: f64,
}

#[derive(Default)]
struct WriterState {
    /// Latest sample seen, held back because a later sample in the same
    /// cadence window would replace it.
    pending: Option<PointerSample>,
    last_written: Option<u64>,
}

impl TraceRecorder {
    pub fn new(capacity: usize) -> Self {
        Self::with_cadence(capacity, SAMPLE_RATE_HZ)
    }

    pub fn with_cadence(capacity: usize, hz: f64) -> Self {
        Self {
            queue: Mutex::new(BoundedBuffer::new(capacity)),
            writer: Mutex::new(WriterState::default()),
            hz,
        }
    }

    pub fn record_sample(&self, sample: PointerSample) {
        self.queue
            .lock()
            .expect("recorder queue poisoned")
            .push(TraceLine::Sample(sample));
    }

    pub fn record_event(&self, event: EventRecord) {
        self.queue
            .lock()
            .expect("recorder queue poisoned")
            .push(TraceLine::Event(event));
    }

    /// Entries lost to overflow so far.
    pub fn dropped(&self) -> u64 {
        self.queue
            .lock()
            .expect("recorder queue poisoned")
            .dropped()
    }

    /// Drains the queue and returns finished trace lines, newline-terminated.
    /// The most recent sample is kept back until its window closes.
    pub fn flush(&self) -> String {
        self.drain(false)
    }

    /// Like [`TraceRecorder::flush`] but also emits the held-back sample.
    pub fn finish(&self) -> String {
        self.drain(true)
    }

    fn drain(&self, last: bool) -> String {
        let lines = self.queue.lock().expect("recorder queue poisoned").drain();
        let mut w = self.writer.lock().expect("recorder writer poisoned");
        let mut samples: Vec<PointerSample> = w.pending.take().into_iter().collect();
        let mut events = Vec::new();
        for l in lines {
            match l {
                TraceLine::Sample(s) if samples.last().is_none_or(|p| s.t > p.t) => samples.push(s),
                TraceLine::Sample(_) => {}
                TraceLine::Event(e) => events.push(TraceLine::Event(e)),
            }
        }
        let mut kept = downsample_to_cadence(&samples, self.hz);
        if !last {
            w.pending = kept.pop();
        }
        let floor = w.last_written;
        let mut out: Vec<TraceLine> = kept
            .into_iter()
            .filter(|s| floor.is_none_or(|f| s.t > f))
            .map(TraceLine::Sample)
            .collect();
        if let Some(TraceLine::Sample(s)) = out.last() {
            w.last_written = Some(s.t);
        }
        out.extend(events);
        out.sort_by_key(TraceLine::t);
        let mut text = String::new();
        for l in &out {
            text.push_str(&format_line(l));
            text.push('\n');
        }
        text
    }
}
