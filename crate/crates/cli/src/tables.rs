//! Bundled expected values and their regeneration.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use singer_core::action::{invariants, Group};
use singer_core::gf2::intersect_subspaces;
use singer_core::hit::kameko_kernel;
use singer_core::{qp_basis, Error, Result};

pub const NAMES: [&str; 5] = ["mdd41", "mdd42", "mdd43", "md421", "qp3"];

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Entry {
    pub label: String,
    pub quantity: String,
    pub k: usize,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    pub expected: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Table {
    pub name: String,
    pub title: String,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    #[serde(flatten)]
    pub entry: Entry,
    pub computed: usize,
    pub ok: bool,
}

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "mdd41" => include_str!("../tables/mdd41.json"),
        "mdd42" => include_str!("../tables/mdd42.json"),
        "mdd43" => include_str!("../tables/mdd43.json"),
        "md421" => include_str!("../tables/md421.json"),
        "qp3" => include_str!("../tables/qp3.json"),
        _ => return None,
    })
}

/// The bundled table called `name`, if there is one.
pub fn load(name: &str) -> Option<Table> {
    let text = source(name)?;
    Some(serde_json::from_str(text).expect("bundled table is valid JSON"))
}

/// A table in the bundled format from a file.
pub fn read(path: &Path) -> Result<Table> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Computes one quantity named in a table entry.
pub fn compute(quantity: &str, k: usize, d: u32) -> Result<usize> {
    match quantity {
        "qp_dim" => Ok(qp_basis(k, d)?.dim()),
        "gl_invariants_dim" => Ok(invariants(&qp_basis(k, d)?, Group::Gl)?.len()),
        "kameko_kernel_dim" => Ok(kameko_kernel(k, d)?.len()),
        "kameko_kernel_gl_invariants_dim" => {
            let inv = invariants(&qp_basis(k, d)?, Group::Gl)?;
            let ker = kameko_kernel(k, d)?;
            Ok(intersect_subspaces(&[ker, inv]).len())
        }
        other => Err(Error::InvalidArgument(format!(
            "unknown table quantity {other:?}"
        ))),
    }
}

/// Regenerates every entry, spreading entries over `threads` workers.
/// Rows come back in table order whatever the thread count.
pub fn regenerate(table: &Table, threads: usize) -> Result<Vec<Row>> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<usize>>>> = Mutex::new(table.entries.iter().map(|_| None).collect());
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some(e) = table.entries.get(i) else { break };
        eprintln!("[table {}] {} k={} degree={}", table.name, e.quantity, e.k, e.degree);
        let value = compute(&e.quantity, e.k, e.degree);
        slots.lock().expect("slot lock poisoned")[i] = Some(value);
    };
    std::thread::scope(|scope| {
        for _ in 1..threads.max(1) {
            scope.spawn(worker);
        }
        worker();
    });
    let values = slots.into_inner().expect("slot lock poisoned");
    table
        .entries
        .iter()
        .zip(values)
        .map(|(e, v)| {
            let computed = v.expect("every entry visited")?;
            Ok(Row {
                entry: e.clone(),
                computed,
                ok: computed == e.expected,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_table_parses() {
        for name in NAMES {
            let t = load(name).unwrap();
            assert_eq!(t.name, name);
            assert!(!t.entries.is_empty());
        }
        assert!(load("nope").is_none());
    }

    #[test]
    fn small_table_regenerates_in_order() {
        let t = load("md421").unwrap();
        let one = regenerate(&t, 1).unwrap();
        let three = regenerate(&t, 3).unwrap();
        assert!(one.iter().all(|r| r.ok));
        let degrees = |rows: &[Row]| rows.iter().map(|r| r.entry.degree).collect::<Vec<_>>();
        assert_eq!(degrees(&one), degrees(&three));
    }
}
