//! Trace files: one line per sample (`t,x,y`) or event
//! (`t,EVENT,kind,payload`), in time order.
//!
//! `t` is integer milliseconds since the question was shown and `x`, `y`
//! carry 6 decimals. An event payload is `key=value` pairs joined by `;`
//! with `%`, `,`, `;`, `=`, CR and LF percent-encoded.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use chartlens_core::trace::{
    EventKind, EventRecord, PointerSample, PointerTrace, TraceError, TraceId,
};
use thiserror::Error;

pub const TRACE_EXTENSION: &str = "trace";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceFormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Order { line: usize, source: TraceError },
}

/// One record of a trace file.
#[derive(Debug, Clone, PartialEq)]
pub enum TraceLine {
    Sample(PointerSample),
    Event(EventRecord),
}

impl TraceLine {
    pub fn t(&self) -> u64 {
        match self {
            TraceLine::Sample(s) => s.t,
            TraceLine::Event(e) => e.t,
        }
    }
}

fn escape(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '%' | ',' | ';' | '=' | '\n' | '\r' => {
                write!(out, "%{:02X}", c as u32).expect("writing to a String")
            }
            c => out.push(c),
        }
    }
}

fn unescape(s: &str) -> Option<String> {
    let bytes = s.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' {
            let hex = s.get(i + 1..i + 3)?;
            out.push(u8::from_str_radix(hex, 16).ok()?);
            i += 3;
        } else {
            out.push(bytes[i]);
            i += 1;
        }
    }
    String::from_utf8(out).ok()
}

pub fn format_payload(payload: &BTreeMap<String, String>) -> String {
    let mut out = String::new();
    for (i, (k, v)) in payload.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        escape(k, &mut out);
        out.push('=');
        escape(v, &mut out);
    }
    out
}

pub fn parse_payload(s: &str) -> Option<BTreeMap<String, String>> {
    if s.is_empty() {
        return Some(BTreeMap::new());
    }
    s.split(';')
        .map(|pair| {
            let (k, v) = pair.split_once('=')?;
            Some((unescape(k)?, unescape(v)?))
        })
        .collect()
}

/// The line without its terminator.
pub fn format_line(line: &TraceLine) -> String {
    match line {
        TraceLine::Sample(s) => format!("{},{:.6},{:.6}", s.t, s.x, s.y),
        TraceLine::Event(e) => format!(
            "{},EVENT,{},{}",
            e.t,
            e.kind.as_str(),
            format_payload(&e.payload)
        ),
    }
}

/// Parses one line; `line_no` is only used in errors.
pub fn parse_line(text: &str, line_no: usize) -> Result<TraceLine, TraceFormatError> {
    let syntax = |message: String| TraceFormatError::Syntax {
        line: line_no,
        message,
    };
    let fields: Vec<&str> = text.splitn(4, ',').collect();
    let t = fields[0]
        .parse::<u64>()
        .map_err(|_| syntax(format!("bad timestamp `{}`", fields[0])))?;
    match fields.as_slice() {
        [_, "EVENT", kind, payload] => {
            let kind = EventKind::parse(kind)
                .ok_or_else(|| syntax(format!("unknown event kind `{kind}`")))?;
            let payload =
                parse_payload(payload).ok_or_else(|| syntax(format!("bad payload `{payload}`")))?;
            Ok(TraceLine::Event(EventRecord { t, kind, payload }))
        }
        [_, x, y] => {
            let coord = |v: &str| {
                v.parse::<f64>()
                    .ok()
                    .filter(|c| c.is_finite())
                    .ok_or_else(|| syntax(format!("bad coordinate `{v}`")))
            };
            Ok(TraceLine::Sample(PointerSample {
                x: coord(x)?,
                y: coord(y)?,
                t,
            }))
        }
        _ => Err(syntax(format!(
            "expected `t,x,y` or `t,EVENT,kind,payload`, got `{text}`"
        ))),
    }
}

/// Parses every non-blank line of `text`, numbering from `first_line`.
pub fn parse_lines(text: &str, first_line: usize) -> Result<Vec<TraceLine>, TraceFormatError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (first_line + i, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| parse_line(l, n))
        .collect()
}

/// Reads a whole trace file.
pub fn read_trace(id: TraceId, text: &str) -> Result<PointerTrace, TraceFormatError> {
    let mut trace = PointerTrace::new(id);
    for (i, l) in text.lines().enumerate() {
        let l = l.trim_end_matches('\r');
        if l.trim().is_empty() {
            continue;
        }
        let line = i + 1;
        let order = |source| TraceFormatError::Order { line, source };
        match parse_line(l, line)? {
            TraceLine::Sample(s) => trace.append_sample(s).map_err(order)?,
            TraceLine::Event(e) => trace.push_event(e).map_err(order)?,
        }
    }
    Ok(trace)
}

/// Samples and events merged by time; at equal times samples come first.
pub fn trace_lines(trace: &PointerTrace) -> Vec<TraceLine> {
    let mut out: Vec<TraceLine> = trace
        .samples()
        .iter()
        .map(|s| TraceLine::Sample(*s))
        .chain(trace.events().iter().cloned().map(TraceLine::Event))
        .collect();
    // Stable: preserves samples-before-events and each kind's own order.
    out.sort_by_key(TraceLine::t);
    out
}

pub fn write_trace(trace: &PointerTrace) -> String {
    let mut out = String::new();
    for line in trace_lines(trace) {
        out.push_str(&format_line(&line));
        out.push('\n');
    }
    out
}

/// `P{pid}_{condition}_{variant}_{qid}.trace`.
pub fn trace_file_name(id: &TraceId) -> String {
    format!("{id}.{TRACE_EXTENSION}")
}
