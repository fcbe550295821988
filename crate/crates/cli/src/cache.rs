//! On-disk JSON cache of Macdonald tables, one file per degree.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use macsym::coeffring::RationalFunction;
use macsym::macdonald::{build_table, cached_table, install_table, MacdonaldError, MacdonaldTable};
use macsym::partitions::{enumerate, Partition};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub format_version: u32,
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub kostka: Vec<Vec<String>>,
    pub kostka_inv: Vec<Vec<String>>,
    pub norms: Vec<String>,
}

#[derive(Debug)]
pub enum LoadOutcome {
    Loaded(MacdonaldTable),
    Missing,
    Stale(u32),
    Corrupt(String),
}

pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("macdonald-{n}.json"))
}

fn strings(m: &[Vec<RationalFunction>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
}

impl CacheFile {
    pub fn from_table(t: &MacdonaldTable) -> Self {
        CacheFile {
            format_version: FORMAT_VERSION,
            n: t.n,
            partitions: t.partitions.clone(),
            kostka: strings(&t.kostka),
            kostka_inv: strings(&t.kostka_inv),
            norms: t.norms.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn into_table(self) -> Result<MacdonaldTable, String> {
        if self.partitions != enumerate(self.n) {
            return Err("partition order differs".into());
        }
        let len = self.partitions.len();
        let parse_matrix = |m: Vec<Vec<String>>| -> Result<Vec<Vec<RationalFunction>>, String> {
            if m.len() != len || m.iter().any(|r| r.len() != len) {
                return Err("matrix has the wrong shape".into());
            }
            m.iter()
                .map(|row| row.iter().map(|s| RationalFunction::parse(s).map_err(|e| e.to_string())).collect())
                .collect()
        };
        let kostka = parse_matrix(self.kostka)?;
        let kostka_inv = parse_matrix(self.kostka_inv)?;
        if self.norms.len() != len {
            return Err("wrong number of norms".into());
        }
        let norms = self
            .norms
            .iter()
            .map(|s| RationalFunction::parse(s).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        MacdonaldTable::from_parts(self.n, kostka, kostka_inv, norms).map_err(|e| e.to_string())
    }
}

/// Writes the table through a temporary file renamed into place.
pub fn save(dir: &Path, t: &MacdonaldTable) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, &CacheFile::from_table(t))?;
    tmp.flush()?;
    tmp.persist(cache_path(dir, t.n)).map_err(|e| e.error)?;
    Ok(())
}

pub fn load(dir: &Path, n: usize) -> LoadOutcome {
    let text = match fs::read_to_string(cache_path(dir, n)) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return LoadOutcome::Missing,
        Err(e) => return LoadOutcome::Corrupt(e.to_string()),
    };
    let file: CacheFile = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => {
            // A readable version field from another format still counts as stale.
            if let Some(v) = serde_json::from_str::<serde_json::Value>(&text)
                .ok()
                .and_then(|v| v.get("format_version")?.as_u64())
                .filter(|&v| v != FORMAT_VERSION as u64)
            {
                return LoadOutcome::Stale(v as u32);
            }
            return LoadOutcome::Corrupt(e.to_string());
        }
    };
    if file.format_version != FORMAT_VERSION {
        return LoadOutcome::Stale(file.format_version);
    }
    if file.n != n {
        return LoadOutcome::Corrupt(format!("file holds degree {}", file.n));
    }
    match file.into_table() {
        Ok(t) => LoadOutcome::Loaded(t),
        Err(e) => LoadOutcome::Corrupt(e),
    }
}

/// The degree-n table: in memory, else from `dir`, else built (and saved to `dir`).
pub fn obtain_table(dir: Option<&Path>, n: usize) -> Result<Arc<MacdonaldTable>, MacdonaldError> {
    if let Some(t) = cached_table(n) {
        return Ok(t);
    }
    let Some(dir) = dir else {
        return macsym::macdonald::table(n);
    };
    match load(dir, n) {
        LoadOutcome::Loaded(t) => return Ok(install_table(t)),
        LoadOutcome::Missing => {}
        LoadOutcome::Stale(v) => eprintln!("warning: ignoring degree-{n} cache with format version {v}"),
        LoadOutcome::Corrupt(e) => eprintln!("warning: rebuilding corrupt degree-{n} cache: {e}"),
    }
    let t = install_table(build_table(n)?);
    if let Err(e) = save(dir, &t) {
        eprintln!("warning: could not write cache for degree {n}: {e}");
    }
    Ok(t)
}
