//! On-disk cache of pattern database tables.
//!
//! One file per (pattern, action set, numbering version). Layout, all
//! integers little-endian:
//!
//! ```text
//! magic      6 bytes  "RCPDB\0"
//! format     u16      FORMAT_VERSION
//! numbering  u16      NUMBERING_VERSION (cubie/slot numbering of the tables)
//! actions    u8       12 or 18
//! corners    u8 count, then that many corner ids
//! edges      u8 count, then that many edge ids
//! entries    u64
//! body       `entries` bytes, one distance per abstract state (255 = unreachable)
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rcplan_core::cube::ActionSet;
use rcplan_core::heuristics::{
    Blind, Ff, GoalCount, Heuristic, HeuristicConfig, HeuristicKind, MaxPdb, Pattern, PatternDb,
};

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 6] = b"RCPDB\0";
pub const FORMAT_VERSION: u16 = 1;
pub const NUMBERING_VERSION: u16 = 1;
pub const CACHE_ENV: &str = "RCPLAN_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".rcplan-cache";

/// `$RCPLAN_CACHE_DIR`, or `.rcplan-cache` in the working directory.
pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

pub fn file_name(pattern: &Pattern, action_set: ActionSet) -> String {
    let ids = |v: &[u8]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("-");
    format!(
        "a{}_c{}_e{}_n{}.pdb",
        action_set.size(),
        ids(&pattern.corners),
        ids(&pattern.edges),
        NUMBERING_VERSION
    )
}

pub fn encode(db: &PatternDb) -> Vec<u8> {
    let p = db.pattern();
    let mut out = Vec::with_capacity(32 + db.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&NUMBERING_VERSION.to_le_bytes());
    out.push(db.action_set().size());
    out.push(p.corners.len() as u8);
    out.extend_from_slice(&p.corners);
    out.push(p.edges.len() as u8);
    out.extend_from_slice(&p.edges);
    out.extend_from_slice(&(db.len() as u64).to_le_bytes());
    out.extend_from_slice(db.table());
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let s = self.bytes.get(self.pos..self.pos.checked_add(n)?)?;
        self.pos += n;
        Some(s)
    }

    fn u8(&mut self) -> Option<u8> {
        self.take(1).map(|b| b[0])
    }

    fn u16(&mut self) -> Option<u16> {
        self.take(2).map(|b| u16::from_le_bytes([b[0], b[1]]))
    }

    fn u64(&mut self) -> Option<u64> {
        self.take(8).map(|b| u64::from_le_bytes(b.try_into().unwrap()))
    }
}

pub fn decode(bytes: &[u8]) -> std::result::Result<PatternDb, String> {
    let mut r = Reader { bytes, pos: 0 };
    let short = || "truncated file".to_string();
    if r.take(6).ok_or_else(short)? != MAGIC {
        return Err("not a PDB cache file".into());
    }
    let format = r.u16().ok_or_else(short)?;
    if format != FORMAT_VERSION {
        return Err(format!("format version {format}, expected {FORMAT_VERSION}"));
    }
    let numbering = r.u16().ok_or_else(short)?;
    if numbering != NUMBERING_VERSION {
        return Err(format!("numbering version {numbering}, expected {NUMBERING_VERSION}"));
    }
    let actions = r.u8().ok_or_else(short)?;
    let action_set = ActionSet::from_size(actions as u32).ok_or_else(|| format!("action set size {actions}"))?;
    let nc = r.u8().ok_or_else(short)? as usize;
    let corners = r.take(nc).ok_or_else(short)?.to_vec();
    let ne = r.u8().ok_or_else(short)? as usize;
    let edges = r.take(ne).ok_or_else(short)?.to_vec();
    let pattern = Pattern::new(corners, edges).map_err(|e| e.to_string())?;
    let entries = r.u64().ok_or_else(short)?;
    let body = r.take(entries as usize).ok_or_else(short)?;
    if r.pos != bytes.len() {
        return Err("trailing bytes".into());
    }
    PatternDb::from_table(pattern, action_set, body.to_vec()).map_err(|e| e.to_string())
}

pub fn write_pdb(path: &Path, db: &PatternDb) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    // Write to a sibling and rename, so concurrent readers never see a
    // half-written table.
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(&encode(db)).map_err(|e| Error::io(&tmp, e))?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn read_pdb(path: &Path) -> Result<PatternDb> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes).map_err(|message| Error::PdbCache { path: path.into(), message })
}

/// Cached table for `pattern`, building and storing it when missing or
/// unreadable.
pub fn load_or_build(dir: &Path, pattern: &Pattern, action_set: ActionSet, cap: u64) -> Result<PatternDb> {
    let path = dir.join(file_name(pattern, action_set));
    if let Ok(db) = read_pdb(&path) {
        if db.pattern() == pattern && db.action_set() == action_set {
            return Ok(db);
        }
    }
    let db = PatternDb::build(pattern.clone(), action_set, cap)?;
    write_pdb(&path, &db)?;
    Ok(db)
}

/// Max-PDB heuristic for a collection, tables built in parallel. With no
/// cache directory everything is built in memory.
pub fn load_max_pdb(
    name: &str,
    patterns: &[Pattern],
    action_set: ActionSet,
    cache: Option<&Path>,
    cap: u64,
) -> Result<MaxPdb> {
    let pdbs = patterns
        .par_iter()
        .map(|p| match cache {
            Some(dir) => load_or_build(dir, p, action_set, cap),
            None => Ok(PatternDb::build(p.clone(), action_set, cap)?),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MaxPdb::new(name, action_set, pdbs))
}

/// Builds any heuristic, taking PDB tables from the cache when given.
pub fn build_heuristic(config: &HeuristicConfig, cache: Option<&Path>, cap: u64) -> Result<Box<dyn Heuristic>> {
    Ok(match config.kind {
        HeuristicKind::Blind => Box::new(Blind),
        HeuristicKind::GoalCount => Box::new(GoalCount),
        HeuristicKind::Ff => Box::new(Ff::new(config.action_set)),
        kind => {
            let patterns = kind.patterns().expect("pdb kind")?;
            Box::new(load_max_pdb(&kind.label(), &patterns, config.action_set, cache, cap)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rcplan_core::heuristics::DEFAULT_PDB_CAP;

    #[test]
    fn encode_decode_round_trip_and_corruption() {
        let p = Pattern::new(vec![1, 5], vec![3]).unwrap();
        let db = PatternDb::build(p, ActionSet::Quarter12, DEFAULT_PDB_CAP).unwrap();
        let bytes = encode(&db);
        assert_eq!(decode(&bytes).unwrap(), db);
        assert!(decode(&bytes[..bytes.len() - 1]).is_err());
        let mut wrong = bytes.clone();
        wrong[8] = 9;
        assert!(decode(&wrong).unwrap_err().contains("numbering"));
        assert!(decode(b"hello").is_err());
    }

    #[test]
    fn cache_files_are_reused() {
        let dir = tempfile::tempdir().unwrap();
        let p = Pattern::new(vec![0], vec![0, 1]).unwrap();
        let a = load_or_build(dir.path(), &p, ActionSet::Full18, DEFAULT_PDB_CAP).unwrap();
        let path = dir.path().join(file_name(&p, ActionSet::Full18));
        assert!(path.exists());
        assert_eq!(read_pdb(&path).unwrap(), a);
        fs::write(&path, b"garbage").unwrap();
        let b = load_or_build(dir.path(), &p, ActionSet::Full18, DEFAULT_PDB_CAP).unwrap();
        assert_eq!(a, b);
        assert_eq!(read_pdb(&path).unwrap(), a);
    }
}
