//! Group resolution for the CLI: the core builder grammar plus `file:<path>`
//! Cayley-table documents.

use anyhow::{bail, Context, Result};
use grpdouble_core::{build_group, Group};
use serde::Deserialize;
use std::path::Path;
use std::sync::Arc;

/// On-disk Cayley table: order, identity index, and the row-major table,
/// either flat (n*n integers) or nested (n rows of n).
#[derive(Deserialize)]
struct TableFile {
    order: usize,
    identity: usize,
    table: TableEntries,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableEntries {
    Flat(Vec<usize>),
    Nested(Vec<Vec<usize>>),
}

fn load_table(path: &Path) -> Result<Group> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading group table {}", path.display()))?;
    let parsed: TableFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing group table {}", path.display()))?;
    let entries: Vec<usize> = match parsed.table {
        TableEntries::Flat(v) => v,
        TableEntries::Nested(rows) => {
            for row in &rows {
                if row.len() != parsed.order {
                    bail!(
                        "table row of length {} in an order-{} group",
                        row.len(),
                        parsed.order
                    );
                }
            }
            rows.into_iter().flatten().collect()
        }
    };
    if entries.len() != parsed.order * parsed.order {
        bail!(
            "table has {} entries, expected {}",
            entries.len(),
            parsed.order * parsed.order
        );
    }
    let label = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("file-group");
    Ok(Group::from_table(
        parsed.order,
        parsed.identity,
        &entries,
        label,
    )?)
}

/// Builds a group from a CLI spec, adding `file:<path>` to the core grammar.
pub fn resolve_group(spec: &str) -> Result<Arc<Group>> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix("file:") {
        return Ok(Arc::new(load_table(Path::new(path))?));
    }
    Ok(Arc::new(build_group(spec).with_context(|| {
        format!("building group from spec {spec:?}")
    })?))
}
