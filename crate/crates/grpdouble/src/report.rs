//! The structured-text report format and its csv/table renderings.
//!
//! A document is an ordered list of named sections, each an ordered list of
//! `key = value` entries. Emission is canonical: section header, one entry
//! per line, one blank line between sections, trailing newline. Parsing an
//! emitted document and emitting it again reproduces the bytes exactly.
//! Rationals are always written `p/q`.

use anyhow::{bail, Context, Result};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

impl Section {
    pub fn new(name: &str) -> Section {
        Section { name: name.to_string(), entries: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        debug_assert!(is_clean(key) && !key.contains('='), "bad key {key:?}");
        debug_assert!(is_clean(&value), "bad value {value:?}");
        self.entries.push((key.to_string(), value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub sections: Vec<Section>,
}

fn is_clean(text: &str) -> bool {
    !text.contains('\n') && text.trim() == text
}

impl Document {
    pub fn new() -> Document {
        Document::default()
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    /// Canonical structured-text bytes.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "[{}]", section.name);
            for (k, v) in &section.entries {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        out
    }

    /// Parses structured text. Blank lines separate sections; `#` lines are
    /// comments. Inverse of [`Document::emit`] on emitted documents.
    pub fn parse(text: &str) -> Result<Document> {
        let mut doc = Document::new();
        let mut current: Option<Section> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .with_context(|| format!("line {}: unterminated section header", lineno + 1))?;
                if name.is_empty() {
                    bail!("line {}: empty section name", lineno + 1);
                }
                if let Some(done) = current.take() {
                    doc.push(done);
                }
                current = Some(Section::new(name));
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key = value", lineno + 1))?;
            let section = current
                .as_mut()
                .with_context(|| format!("line {}: entry before any section", lineno + 1))?;
            section
                .entries
                .push((key.trim().to_string(), value.trim().to_string()));
        }
        if let Some(done) = current.take() {
            doc.push(done);
        }
        Ok(doc)
    }

    /// Generic csv rendering: one `section,key,value` line per entry.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "key", "value"])?;
        for section in &self.sections {
            for (k, v) in &section.entries {
                w.write_record([section.name.as_str(), k, v])?;
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// Aligned three-column table. Fails on documents with no entries.
    pub fn to_table(&self) -> Result<String> {
        let rows: Vec<(&str, &str, &str)> = self
            .sections
            .iter()
            .flat_map(|s| {
                s.entries
                    .iter()
                    .map(move |(k, v)| (s.name.as_str(), k.as_str(), v.as_str()))
            })
            .collect();
        if rows.is_empty() {
            bail!("table output needs at least one row");
        }
        render_table(
            &["section", "key", "value"],
            rows.iter().map(|(a, b, c)| vec![*a, *b, *c]),
        )
    }
}

/// Pads columns to their widest cell; header then one line per row.
pub fn render_table<'a>(
    header: &[&str],
    rows: impl Iterator<Item = Vec<&'a str>> + Clone,
) -> Result<String> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    let mut count = 0usize;
    for row in rows.clone() {
        if row.len() != header.len() {
            bail!("table row with {} cells under {} columns", row.len(), header.len());
        }
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
        count += 1;
    }
    if count == 0 {
        bail!("table output needs at least one row");
    }
    let mut out = String::new();
    let line = |cells: &[&str], out: &mut String| {
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            let _ = write!(out, "{cell:<width$}", width = widths[i]);
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    line(header, &mut out);
    for row in rows {
        line(&row, &mut out);
    }
    Ok(out)
}
