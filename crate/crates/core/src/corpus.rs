//! The reference corpus of rings used by the verification suite.

use std::path::{Path, PathBuf};

use crate::families::{FamilyError, FamilySpec};
use crate::ring::{FusionRing, RingError};

/// Environment variable naming a directory of `*.json` ring files that
/// replaces the built-in corpus.
pub const CORPUS_ENV: &str = "FUSKIT_CORPUS";

/// Shorthand specs of the built-in corpus.
pub const BUILTIN: &[&str] = &[
    "fibonacci",
    "tambara_yamagami(Z2)",
    "tambara_yamagami(Z4)",
    "tambara_yamagami(Z8)",
    "tambara_yamagami(Z2xZ2)",
    "near_group(Z2,1)",
    "near_group(Z3,2)",
    "gty(Z4,2,0)",
    "gty(Z4,2,1)",
    "gty(Z6,3,1)",
    "gty(Z2xZ2,(1,0),(0,1))",
    "gty(Z8,4,1)",
    "gty(Z2xZ4,(1,0),(0,1))",
    "gty(Z4xZ4,(2,0)+(0,2),(1,1))",
    "psu2_6",
    "su2_level(1)",
    "su2_level(2)",
    "su2_level(3)",
    "su2_level(4)",
    "su2_level(5)",
    "su2_level(6)",
    "adjoint(su2_level(2))",
    "adjoint(su2_level(3))",
    "adjoint(su2_level(4))",
    "adjoint(su2_level(5))",
    "adjoint(su2_level(6))",
    "fib_extension(Z2)",
    "fib_extension(Z3)",
    "fib_extension(Z4)",
    "fib_extension(Z2xZ2)",
    "fib_extension(Z6)",
    "fib_extension(S3)",
    "n_ising(1)",
    "n_ising(2)",
    "n_ising(3)",
    "n_ising(4)",
    "n_ising(5)",
    "pointed(Z5)",
    "pointed(S3)",
    "product(fibonacci,pointed(Z5))",
    "product(psu2_6,pointed(Z3))",
    "product(fibonacci,fibonacci)",
];

/// One corpus member, or the reason it could not be loaded.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub ring: Result<FusionRing, String>,
}

pub fn builtin() -> Result<Vec<FusionRing>, FamilyError> {
    BUILTIN.iter().map(|s| FamilySpec::parse(s)?.build()).collect()
}

/// File name used for a ring in a corpus directory.
pub fn file_name(ring_name: &str) -> String {
    let stem: String = ring_name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '-' }).collect();
    format!("{}.json", stem.trim_matches('-'))
}

/// Every `*.json` file of a directory, by file name. Entries are named after
/// the ring they contain; unreadable or malformed files keep their file stem
/// and carry the error.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>, std::io::Error> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let ring = std::fs::read_to_string(&p)
                .map_err(|e| e.to_string())
                .and_then(|text| FusionRing::from_json(&text).map_err(|e: RingError| e.to_string()));
            let name = ring.as_ref().map(|r| r.name().to_string()).unwrap_or(name);
            CorpusEntry { name, ring }
        })
        .collect())
}

/// Writes the built-in corpus into `dir`, one canonical JSON file per ring.
pub fn write_dir(dir: &Path) -> Result<Vec<PathBuf>, Box<dyn std::error::Error>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for ring in builtin()? {
        let path = dir.join(file_name(ring.name()));
        std::fs::write(&path, ring.to_json())?;
        written.push(path);
    }
    Ok(written)
}

/// The corpus in effect: the directory named by [`CORPUS_ENV`] if set, else the built-in list.
pub fn active() -> Result<(String, Vec<CorpusEntry>), Box<dyn std::error::Error>> {
    match std::env::var_os(CORPUS_ENV) {
        Some(dir) => {
            let dir = PathBuf::from(dir);
            let entries = load_dir(&dir)?;
            Ok((dir.display().to_string(), entries))
        }
        None => Ok(("builtin".to_string(), builtin_entries())),
    }
}

pub fn builtin_entries() -> Vec<CorpusEntry> {
    BUILTIN
        .iter()
        .map(|s| CorpusEntry {
            name: s.to_string(),
            ring: FamilySpec::parse(s).and_then(|spec| spec.build()).map_err(|e| e.to_string()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_rings_build() {
        let rings = builtin().unwrap();
        assert_eq!(rings.len(), BUILTIN.len());
        for (r, s) in rings.iter().zip(BUILTIN) {
            assert_eq!(r.name(), *s);
        }
    }

    #[test]
    fn file_names_are_plain() {
        assert_eq!(file_name("fib_extension(Z2xZ2)"), "fib_extension-Z2xZ2.json");
        assert_eq!(file_name("gty(Z2xZ4,(1,0),(0,1))"), "gty-Z2xZ4--1-0---0-1.json");
    }
}
