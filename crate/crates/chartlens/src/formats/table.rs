//! Tab-separated tables: distance matrices, group labels and questionnaire
//! responses. Blank lines and lines starting with `#` are ignored on read.

use std::fmt::Write as _;

use chartlens_core::analysis::DistanceMatrix;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TableError {
    /// 1-based line number.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> TableError {
    TableError {
        line,
        message: message.into(),
    }
}

fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split('\t').collect()))
}

/// Header `id` followed by the row ids, then one row per id. Values use the
/// shortest representation that reads back to the same `f64`.
pub fn matrix_to_tsv(d: &DistanceMatrix) -> String {
    let mut out = String::from("id");
    for id in d.labels() {
        out.push('\t');
        out.push_str(id);
    }
    out.push('\n');
    for (i, id) in d.labels().iter().enumerate() {
        out.push_str(id);
        for v in d.row(i) {
            write!(out, "\t{v}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

pub fn parse_matrix_tsv(text: &str) -> Result<DistanceMatrix, TableError> {
    let mut it = rows(text);
    let (hline, header) = it.next().ok_or_else(|| err(1, "empty matrix"))?;
    if header.first() != Some(&"id") {
        return Err(err(hline, "header must start with `id`"));
    }
    let ids: Vec<String> = header[1..].iter().map(|s| s.to_string()).collect();
    let n = ids.len();
    let mut data = Vec::with_capacity(n * n);
    let mut seen = 0;
    for (line, cells) in it {
        if seen == n {
            return Err(err(line, "more rows than header columns"));
        }
        if cells.len() != n + 1 {
            return Err(err(
                line,
                format!("expected {} cells, found {}", n + 1, cells.len()),
            ));
        }
        if cells[0] != ids[seen] {
            return Err(err(
                line,
                format!("row `{}` where `{}` was expected", cells[0], ids[seen]),
            ));
        }
        for c in &cells[1..] {
            data.push(
                c.parse::<f64>()
                    .map_err(|_| err(line, format!("not a number: `{c}`")))?,
            );
        }
        seen += 1;
    }
    if seen != n {
        return Err(err(
            text.lines().count(),
            format!("{seen} rows for {n} columns"),
        ));
    }
    DistanceMatrix::from_rows(ids, data).map_err(|e| err(1, e.to_string()))
}

/// `id<TAB>group` per row with an `id group` header.
pub fn labels_to_tsv<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> String {
    let mut out = String::from("id\tgroup\n");
    for (id, group) in pairs {
        writeln!(out, "{id}\t{group}").expect("writing to a String");
    }
    out
}

/// Reads `id<TAB>group` rows; a first row reading `id group` is a header.
pub fn parse_labels_tsv(text: &str) -> Result<Vec<(String, String)>, TableError> {
    let mut out = Vec::new();
    for (line, cells) in rows(text) {
        if out.is_empty() && cells == ["id", "group"] {
            continue;
        }
        match cells.as_slice() {
            [id, group] => out.push((id.to_string(), group.to_string())),
            _ => return Err(err(line, "expected `id<TAB>group`")),
        }
    }
    Ok(out)
}

/// Reads `id<TAB>r1 ... r10` rows of SUS responses; a first row starting
/// with `id` is a header. Range checks are left to the scorer.
pub fn parse_responses_tsv(text: &str) -> Result<Vec<(String, Vec<u8>)>, TableError> {
    let mut out = Vec::new();
    for (line, cells) in rows(text) {
        if out.is_empty() && cells.first() == Some(&"id") {
            continue;
        }
        let (id, items) = cells.split_first().ok_or_else(|| err(line, "empty row"))?;
        let items = items
            .iter()
            .map(|c| {
                c.trim()
                    .parse::<u8>()
                    .map_err(|_| err(line, format!("not a response: `{c}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push((id.to_string(), items));
    }
    Ok(out)
}
