//! Optional on-disk cache of hit-space echelon forms.
//!
//! One file per `(k, d, order)`. Layout, all integers little-endian:
//!
//! ```text
//! magic    8 bytes  "SQHITEF\0"
//! version  u32
//! k        u32
//! d        u32
//! order    u32      monomial-order tag
//! cols     u64
//! rank     u64
//! pivots   rank × u32
//! rows     rank × ceil(cols / 64) × u64
//! ```
//!
//! A file whose header disagrees with the request is ignored and rebuilt.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, EchelonForm};
use crate::hit::MonomialOrder;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"SQHITEF\0";

static CACHE_DIR: RwLock<Option<PathBuf>> = RwLock::new(None);

/// Directory for cached echelon forms; `None` disables the cache.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *CACHE_DIR.write().expect("cache lock poisoned") = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    CACHE_DIR.read().expect("cache lock poisoned").clone()
}

pub fn file_name(k: usize, d: u32, order: MonomialOrder) -> String {
    format!("hit-k{k}-d{d}-o{}.v{FORMAT_VERSION}.bin", order.tag())
}

pub(crate) fn load(k: usize, d: u32, order: MonomialOrder) -> Result<Option<EchelonForm>> {
    let Some(dir) = cache_dir() else {
        return Ok(None);
    };
    let path = dir.join(file_name(k, d, order));
    if !path.exists() {
        return Ok(None);
    }
    let bytes = fs::read(&path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    Ok(decode(&bytes, k, d, order))
}

pub(crate) fn store(k: usize, d: u32, order: MonomialOrder, e: &EchelonForm) -> Result<()> {
    let Some(dir) = cache_dir() else {
        return Ok(());
    };
    fs::create_dir_all(&dir).map_err(|err| Error::Cache(format!("{}: {err}", dir.display())))?;
    write_atomically(&dir.join(file_name(k, d, order)), |w| encode(w, k, d, order, e))
}

fn write_atomically<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let run = || -> std::io::Result<()> {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        body(&mut w)?;
        w.flush()?;
        drop(w);
        fs::rename(&tmp, path)
    };
    run().map_err(|err| {
        let _ = fs::remove_file(&tmp);
        Error::Cache(format!("{}: {err}", path.display()))
    })
}

pub fn encode(
    w: &mut dyn Write,
    k: usize,
    d: u32,
    order: MonomialOrder,
    e: &EchelonForm,
) -> std::io::Result<()> {
    w.write_all(MAGIC)?;
    for x in [FORMAT_VERSION, k as u32, d, order.tag()] {
        w.write_all(&x.to_le_bytes())?;
    }
    w.write_all(&(e.cols() as u64).to_le_bytes())?;
    w.write_all(&(e.rank() as u64).to_le_bytes())?;
    for &p in e.pivot_cols() {
        w.write_all(&(p as u32).to_le_bytes())?;
    }
    for i in 0..e.rank() {
        for word in e.matrix().row_words(i) {
            w.write_all(&word.to_le_bytes())?;
        }
    }
    Ok(())
}

/// Parses a cache file, returning `None` if it is malformed or was written
/// for a different key.
pub fn decode(bytes: &[u8], k: usize, d: u32, order: MonomialOrder) -> Option<EchelonForm> {
    let mut r = bytes;
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).ok()?;
    if &magic != MAGIC {
        return None;
    }
    let header = [read_u32(&mut r)?, read_u32(&mut r)?, read_u32(&mut r)?, read_u32(&mut r)?];
    if header != [FORMAT_VERSION, k as u32, d, order.tag()] {
        return None;
    }
    let cols = usize::try_from(read_u64(&mut r)?).ok()?;
    let rank = usize::try_from(read_u64(&mut r)?).ok()?;
    let stride = cols.div_ceil(64);
    let expected = rank.checked_mul(4)?.checked_add(rank.checked_mul(stride)?.checked_mul(8)?)?;
    if r.len() != expected || rank > cols {
        return None;
    }
    let mut pivots = Vec::with_capacity(rank);
    for _ in 0..rank {
        let p = read_u32(&mut r)? as usize;
        if p >= cols || pivots.last().is_some_and(|&q| q >= p) {
            return None;
        }
        pivots.push(p);
    }
    let mut matrix = BitMatrix::zeros(rank, cols);
    for (i, &p) in pivots.iter().enumerate() {
        let row = matrix.row_words_mut(i);
        for word in row.iter_mut() {
            *word = read_u64(&mut r)?;
        }
        if matrix.row(i).first_one() != Some(p) {
            return None;
        }
    }
    Some(EchelonForm::from_reduced_parts(matrix, pivots))
}

fn read_u32(r: &mut &[u8]) -> Option<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).ok()?;
    Some(u32::from_le_bytes(b))
}

fn read_u64(r: &mut &[u8]) -> Option<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).ok()?;
    Some(u64::from_le_bytes(b))
}
